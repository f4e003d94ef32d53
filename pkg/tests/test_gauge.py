from fractions import Fraction

import pytest

from bvcalc import (EVEN, Scalar, berezin_integrate,
                    exact_boundary_integrals, exp_delta,
                    gauge_independence_experiment, gaussian_expectation,
                    lagrangian_integral, restrict_to_lagrangian,
                    standard_damping)
from bvcalc.gauge import (ExpElement, GaugeFermion, NonNormalizedDamping,
                          NotDeltaClosed)
from bvcalc.randgen import random_poly


@pytest.fixture
def fermions(bvs_1_1):
    ctx = bvs_1_1.ctx
    return [GaugeFermion(bvs_1_1, ctx.monomial(a, {"x": 1}, ["th"]))
            for a in (0, 1, 2, -3)]


def element(bvs, poly, exponent=None):
    return ExpElement(bvs, [(poly, standard_damping(bvs) if exponent is None
                             else exponent)])


class TestExpDelta:
    def test_antifield_free_closed(self, bvs_1_1):
        assert exp_delta(element(bvs_1_1, bvs_1_1.ctx.one())).is_zero

    def test_quantum_master_coefficient(self, bvs_2_2, rng):
        # delta of exp((i/hbar) S) carries (i/hbar) delta S - 1/(2 hbar^2){S,S}
        ctx = bvs_2_2.ctx
        i_over_h = Scalar.i() * Scalar.hbar(-1)
        for _ in range(10):
            s = random_poly(rng, ctx, 3, 3, parity=EVEN)
            t = i_over_h * s
            out = exp_delta(ExpElement(bvs_2_2, [(ctx.one(), t)]))
            expected = (i_over_h * bvs_2_2.delta(s)
                        - Scalar.hbar(-2) * Fraction(1, 2) * bvs_2_2.bracket(s, s))
            assert out == ExpElement(bvs_2_2, [(expected, t)])

    def test_pair_with_zero_exponent_is_plain_delta(self, bvs_2_2, rng):
        ctx = bvs_2_2.ctx
        for _ in range(20):
            p = random_poly(rng, ctx, 4, 3)
            lhs = exp_delta(ExpElement(bvs_2_2, [(p, ctx.zero())]))
            assert lhs == ExpElement(bvs_2_2, [(bvs_2_2.delta(p), ctx.zero())])

    def test_leibniz_expansion_example(self, bvs_1_1):
        # delta((xp th) exp(-x^2/2)) = -(x th) exp(-x^2/2)
        ctx = bvs_1_1.ctx
        xi = element(bvs_1_1, ctx.gen("xp") * ctx.gen("th"))
        out = exp_delta(xi)
        expected = element(bvs_1_1, -(ctx.gen("x") * ctx.gen("th")))
        assert out == expected

    def test_squares_to_zero(self, bvs_1_1, rng):
        for _ in range(40):
            p = random_poly(rng, bvs_1_1.ctx, 4, 3)
            t = standard_damping(bvs_1_1) + random_poly(
                rng, bvs_1_1.ctx, 3, 2, parity=EVEN)
            xi = ExpElement(bvs_1_1, [(p, t)])
            assert exp_delta(exp_delta(xi)).is_zero

    def test_exponent_must_be_even(self, bvs_1_1):
        with pytest.raises(ValueError, match="even"):
            ExpElement(bvs_1_1, [(bvs_1_1.ctx.one(), bvs_1_1.ctx.gen("th"))])


class TestRestriction:
    def test_zero_fermion_kills_antifields(self, bvs_1_1, fermions):
        ctx = bvs_1_1.ctx
        phi = ctx.gen("xp") + ctx.gen("x") * ctx.gen("thp")
        assert restrict_to_lagrangian(phi, fermions[0]).is_zero

    def test_graph_substitution(self, bvs_1_1):
        # F = th*x: the even field's antifield goes to the th-derivative,
        # the odd field's antifield picks up the right-derivative sign
        ctx = bvs_1_1.ctx
        F = GaugeFermion(bvs_1_1, ctx.monomial(1, {"x": 1}, ["th"]))
        assert restrict_to_lagrangian(ctx.gen("xp"), F) == ctx.gen("th")
        assert restrict_to_lagrangian(ctx.gen("thp"), F) == -ctx.gen("x")

    def test_is_algebra_morphism(self, bvs_1_1, fermions, rng):
        F = fermions[2]
        for _ in range(40):
            a = random_poly(rng, bvs_1_1.ctx, 3, 3)
            b = random_poly(rng, bvs_1_1.ctx, 3, 3)
            assert restrict_to_lagrangian(a * b, F) == \
                restrict_to_lagrangian(a, F) * restrict_to_lagrangian(b, F)

    def test_commutes_with_forming_elements(self, bvs_1_1, fermions, rng):
        F = fermions[3]
        for _ in range(15):
            p = random_poly(rng, bvs_1_1.ctx, 3, 3)
            t = standard_damping(bvs_1_1) + random_poly(rng, bvs_1_1.ctx, 2, 2,
                                                        parity=EVEN)
            restricted = restrict_to_lagrangian(ExpElement(bvs_1_1, [(p, t)]), F)
            rebuilt = ExpElement(bvs_1_1, [(restrict_to_lagrangian(p, F),
                                            restrict_to_lagrangian(t, F))])
            assert restricted == rebuilt

    def test_result_antifield_free(self, bvs_1_1, fermions, rng):
        for _ in range(20):
            p = random_poly(rng, bvs_1_1.ctx, 4, 4)
            out = restrict_to_lagrangian(p, fermions[1])
            assert all(out.mono_antifield_degree(m) == 0 for m in out.terms)

    def test_fermion_validation(self, bvs_1_1):
        ctx = bvs_1_1.ctx
        with pytest.raises(ValueError, match="odd"):
            GaugeFermion(bvs_1_1, ctx.gen("x"))
        with pytest.raises(ValueError, match="antifield"):
            GaugeFermion(bvs_1_1, ctx.gen("xp"))


class TestBerezin:
    def test_single_variable(self, bvs_1_1):
        ctx = bvs_1_1.ctx
        a_plus_b_th = ctx.gen("x") + 2 * ctx.gen("th")
        assert berezin_integrate(a_plus_b_th, ["th"]) == ctx.scalar(2)
        assert berezin_integrate(ctx.one(), ["th"]).is_zero

    def test_iterated_orderings(self, bvs_2_2):
        ctx = bvs_2_2.ctx
        top = ctx.gen("t1") * ctx.gen("t2")
        # declaration order extracts the top coefficient with sign +1
        assert berezin_integrate(top, ["t1", "t2"]) == ctx.one()
        # the reversed ordering is one transposition away
        assert berezin_integrate(top, ["t2", "t1"]) == -ctx.one()
        # and matches doing the two single integrals by hand
        inner = berezin_integrate(top, ["t1"])
        assert berezin_integrate(inner, ["t2"]) == -ctx.one()

    def test_unknown_generator(self, bvs_1_1):
        with pytest.raises(ValueError):
            berezin_integrate(bvs_1_1.ctx.one(), ["zz"])
        with pytest.raises(ValueError, match="not odd"):
            berezin_integrate(bvs_1_1.ctx.one(), ["x"])


class TestGaussian:
    @pytest.mark.parametrize("power, moment", [(0, 1), (2, 1), (4, 3), (6, 15)])
    def test_even_moments(self, bvs_1_1, power, moment):
        p = bvs_1_1.ctx.monomial(1, {"x": power}) if power else bvs_1_1.ctx.one()
        assert gaussian_expectation(p) == Scalar.of(moment)

    def test_odd_moment_vanishes(self, bvs_1_1):
        assert gaussian_expectation(bvs_1_1.ctx.gen("x")).is_zero

    def test_odd_generator_rejected(self, bvs_1_1):
        with pytest.raises(ValueError, match="odd"):
            gaussian_expectation(bvs_1_1.ctx.gen("th"))

    def test_stein_identity(self, bvs_1_1, rng):
        # E[x g(x)] = E[g'(x)] pins the moments against differentiation
        ctx = bvs_1_1.ctx
        x = ctx.gen("x")
        for _ in range(30):
            g = ctx.zero()
            for k in range(rng.randint(1, 5)):
                g = g + ctx.monomial(Fraction(rng.randint(-4, 4)), {"x": k})
            assert gaussian_expectation(x * g) == gaussian_expectation(g.left_deriv("x"))


class TestLagrangianIntegral:
    def test_plain_odd_coordinate(self, bvs_1_1, fermions):
        phi = element(bvs_1_1, bvs_1_1.ctx.gen("th"))
        for F in fermions:
            assert lagrangian_integral(phi, F) == Scalar.one()

    def test_theta_free_integrand_vanishes(self, bvs_1_1, fermions):
        phi = element(bvs_1_1, bvs_1_1.ctx.one())
        assert lagrangian_integral(phi, fermions[0]).is_zero

    def test_boundary_vanishes(self, bvs_1_1, fermions):
        ctx = bvs_1_1.ctx
        xi = element(bvs_1_1, ctx.gen("xp") * ctx.gen("th"))
        boundary = exp_delta(xi)
        for F in fermions:
            assert lagrangian_integral(boundary, F).is_zero

    def test_damping_must_be_standard(self, bvs_1_1, fermions):
        ctx = bvs_1_1.ctx
        bad = ExpElement(bvs_1_1, [(ctx.gen("th"), ctx.monomial(-1, {"x": 2}))])
        with pytest.raises(NonNormalizedDamping):
            lagrangian_integral(bad, fermions[0])

    def test_nilpotent_exponent_expansion(self, bvs_2_2):
        # exp(N) with N = t1 t2 g(x) truncates after the linear term
        ctx = bvs_2_2.ctx
        n = ctx.gen("t1") * ctx.gen("t2") * ctx.gen("x1")
        t = standard_damping(bvs_2_2) + n
        phi = ExpElement(bvs_2_2, [(ctx.gen("x1"), t)])
        F0 = GaugeFermion(bvs_2_2, ctx.zero())
        # integrand becomes x1 * (1 + t1 t2 x1): Berezin picks x1^2 -> 1
        assert lagrangian_integral(phi, F0) == Scalar.one()


class TestGaugeIndependence:
    def test_closed_with_antifields(self, bvs_1_1, fermions):
        ctx = bvs_1_1.ctx
        base = element(bvs_1_1, ctx.gen("th"))
        xi = element(bvs_1_1, ctx.gen("th") * ctx.gen("xp") * ctx.gen("thp"))
        phi = base + exp_delta(xi)
        assert phi.has_antifields()
        report = gauge_independence_experiment(phi, fermions)
        assert report.all_equal
        assert report.values[0][1] == Scalar.one()

    def test_refusal(self, bvs_1_1, fermions):
        bad = element(bvs_1_1, bvs_1_1.ctx.gen("xp"))
        with pytest.raises(NotDeltaClosed) as err:
            gauge_independence_experiment(bad, fermions)
        assert not err.value.residual.is_zero

    def test_boundary_mode(self, bvs_1_1, fermions, rng):
        for _ in range(10):
            p = random_poly(rng, bvs_1_1.ctx, 4, 3)
            xi = element(bvs_1_1, p)
            report = exact_boundary_integrals(xi, fermions)
            assert report.all_equal
            assert all(v.is_zero for _, v in report.values)

    def test_two_by_two_space_inhomogeneous_fermions(self, bvs_2_2, rng):
        # the Stokes property is not special to the 1|1 space or to gauge
        # fermions linear in the even fields
        ctx = bvs_2_2.ctx
        g = ctx.gen
        fermions = [
            GaugeFermion(bvs_2_2, ctx.zero()),
            GaugeFermion(bvs_2_2, g("t1") * g("x1")),
            GaugeFermion(bvs_2_2, 2 * g("t1") * g("x1") + g("t2") * g("x2") * g("x2")),
            GaugeFermion(bvs_2_2, g("t1") * g("x2") - 3 * g("t2") * g("x1") * g("x1")),
        ]
        T = standard_damping(bvs_2_2)
        for _ in range(15):
            xi = ExpElement(bvs_2_2, [(random_poly(rng, ctx, 4, 3), T)])
            for F in fermions:
                assert lagrangian_integral(exp_delta(xi), F).is_zero

        base = ExpElement(bvs_2_2, [(g("t1") * g("t2"), T)])
        correction = exp_delta(ExpElement(
            bvs_2_2, [(g("t1") * g("t2") * g("x1p") * g("t1p"), T)]))
        report = gauge_independence_experiment(base + correction, fermions)
        assert report.all_equal
        assert report.values[0][1] == Scalar.one()
