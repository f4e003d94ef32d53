import pytest

from bvcalc import EVEN, ODD, Scalar, grade_decompose
from bvcalc.randgen import random_homogeneous, random_poly
from bvcalc.superalgebra import Context


def brute_merge_sign(left, right):
    """Independent Koszul-sign oracle: bubble-sort the concatenated index
    lists and count the swaps."""
    seq = list(left) + list(right)
    if len(set(seq)) != len(seq):
        return None
    swaps = 0
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                swaps += 1
    return -1 if swaps % 2 else 1


class TestProducts:
    def test_grassmann_basics(self, ctx_mixed):
        t1, t2 = ctx_mixed.gen("t1"), ctx_mixed.gen("t2")
        assert t1 * t2 == ctx_mixed.monomial(1, odd=["t1", "t2"])
        assert t2 * t1 == -(t1 * t2)
        assert (t1 * t1).is_zero

    def test_difference_of_squares(self, ctx_mixed):
        x = ctx_mixed.gen("x")
        tt = ctx_mixed.gen("t1") * ctx_mixed.gen("t2")
        assert (x + tt) * (x - tt) == x * x

    def test_sign_against_bubble_sort_oracle(self, rng):
        ctx = Context.plain([(f"t{i}", ODD) for i in range(6)])
        for _ in range(300):
            left = sorted(rng.sample(range(6), rng.randint(0, 3)))
            right = sorted(rng.sample(range(6), rng.randint(0, 3)))
            expected = brute_merge_sign(left, right)
            product = (ctx.monomial(1, odd=[f"t{i}" for i in left])
                       * ctx.monomial(1, odd=[f"t{i}" for i in right]))
            if expected is None:
                assert product.is_zero
            else:
                combined = [f"t{i}" for i in sorted(left + right)]
                assert product == ctx.monomial(expected, odd=combined)

    def test_graded_commutativity_random(self, ctx_mixed, rng):
        for _ in range(120):
            pa, a = random_homogeneous(rng, ctx_mixed, 4, 3)
            pb, b = random_homogeneous(rng, ctx_mixed, 4, 3)
            sign = -1 if pa and pb else 1
            assert a * b == sign * (b * a)

    def test_associativity_random(self, ctx_mixed, rng):
        for _ in range(100):
            a = random_poly(rng, ctx_mixed, 3, 3)
            b = random_poly(rng, ctx_mixed, 3, 3)
            c = random_poly(rng, ctx_mixed, 3, 3)
            assert (a * b) * c == a * (b * c)

    def test_context_mismatch_rejected(self, ctx_mixed):
        other = Context.plain([("x", EVEN)])
        with pytest.raises(ValueError, match="context"):
            ctx_mixed.gen("x") * other.gen("x")


class TestDerivatives:
    def test_left_deriv_examples(self, ctx_mixed):
        t1t2 = ctx_mixed.gen("t1") * ctx_mixed.gen("t2")
        assert t1t2.left_deriv("t1") == ctx_mixed.gen("t2")
        assert t1t2.left_deriv("t2") == -ctx_mixed.gen("t1")
        x2t = ctx_mixed.monomial(1, {"x": 2}, ["t1"])
        assert x2t.left_deriv("x") == ctx_mixed.monomial(2, {"x": 1}, ["t1"])

    def test_right_deriv_sign_convention(self, ctx_mixed):
        # The convention makes the right derivative of an odd generator by
        # itself equal -1 (not +1).
        t1 = ctx_mixed.gen("t1")
        assert t1.right_deriv("t1") == ctx_mixed.scalar(-1)
        t1t2 = t1 * ctx_mixed.gen("t2")
        assert t1t2.right_deriv("t1") == ctx_mixed.gen("t2")
        x = ctx_mixed.gen("x")
        assert (x * x).right_deriv("x") == 2 * x

    def test_leibniz_random(self, ctx_mixed, rng):
        for _ in range(100):
            pa, a = random_homogeneous(rng, ctx_mixed, 3, 3)
            b = random_poly(rng, ctx_mixed, 3, 3)
            for v in ("x", "t1"):
                sign = -1 if ctx_mixed.parity_of(v) and pa else 1
                lhs = (a * b).left_deriv(v)
                rhs = a.left_deriv(v) * b + sign * a * b.left_deriv(v)
                assert lhs == rhs

    def test_odd_derivative_squares_to_zero(self, ctx_mixed, rng):
        for _ in range(60):
            p = random_poly(rng, ctx_mixed, 4, 4)
            assert p.left_deriv("t1").left_deriv("t1").is_zero

    def test_derivative_commutation(self, ctx_mixed, rng):
        for u, v in (("x", "y"), ("t1", "t2"), ("x", "t1")):
            sign = -1 if ctx_mixed.parity_of(u) and ctx_mixed.parity_of(v) else 1
            for _ in range(40):
                p = random_poly(rng, ctx_mixed, 4, 4)
                assert p.left_deriv(u).left_deriv(v) == sign * p.left_deriv(v).left_deriv(u)

    def test_unknown_generator(self, ctx_mixed):
        with pytest.raises(ValueError, match="unknown"):
            ctx_mixed.gen("x").left_deriv("zz")


class TestSubstitution:
    def test_simple(self, ctx_mixed):
        x, t1 = ctx_mixed.gen("x"), ctx_mixed.gen("t1")
        assert (x * t1).substitute({"x": x * x}) == x * x * t1
        assert (x * x).substitute({"x": ctx_mixed.scalar(0)}).is_zero

    def test_swap_recanonicalizes(self, ctx_mixed):
        t1, t2 = ctx_mixed.gen("t1"), ctx_mixed.gen("t2")
        swapped = (t1 * t2).substitute({"t1": t2, "t2": t1})
        assert swapped == -(t1 * t2)

    def test_parity_mismatch_rejected(self, ctx_mixed):
        with pytest.raises(ValueError, match="parity"):
            ctx_mixed.gen("x").substitute({"x": ctx_mixed.gen("t1")})

    def test_morphism_random(self, ctx_mixed, rng):
        images = {"x": ctx_mixed.gen("y") * ctx_mixed.gen("y"),
                  "t1": ctx_mixed.gen("t2"),
                  "t2": ctx_mixed.gen("t1") + ctx_mixed.gen("y") * ctx_mixed.gen("t2")}
        for _ in range(80):
            a = random_poly(rng, ctx_mixed, 3, 3)
            b = random_poly(rng, ctx_mixed, 3, 3)
            assert (a * b).substitute(images) == a.substitute(images) * b.substitute(images)
            assert (a + b).substitute(images) == a.substitute(images) + b.substitute(images)


class TestGrading:
    def test_hbar_split(self, bvs_1_1):
        ctx = bvs_1_1.ctx
        phi = ctx.gen("x") + Scalar.hbar() * (ctx.gen("xp") * ctx.gen("x"))
        parts = grade_decompose(phi, "hbar")
        assert parts == [(0, ctx.gen("x")), (1, ctx.gen("xp") * ctx.gen("x"))]

    def test_antifield_split(self, bvs_1_1):
        ctx = bvs_1_1.ctx
        phi = ctx.gen("x") + ctx.gen("xp") * ctx.gen("x")
        parts = grade_decompose(phi, "antifield")
        assert parts == [(0, ctx.gen("x")), (1, ctx.gen("xp") * ctx.gen("x"))]

    def test_zero_decomposes_empty(self, bvs_1_1):
        assert grade_decompose(bvs_1_1.ctx.zero(), "hbar") == []
        assert grade_decompose(bvs_1_1.ctx.zero(), "antifield") == []

    def test_mixed_scalar_splits_across_components(self, bvs_1_1):
        ctx = bvs_1_1.ctx
        phi = (Scalar.of(1) + Scalar.hbar()) * ctx.gen("x")
        assert grade_decompose(phi, "hbar") == [(0, ctx.gen("x")), (1, ctx.gen("x"))]


def test_transport_tracks_reordering_signs(rng):
    src = Context.plain([("a", ODD), ("b", ODD), ("u", EVEN)])
    dst = Context.plain([("u", EVEN), ("b", ODD), ("a", ODD)])
    ab = src.gen("a") * src.gen("b")
    assert src.transport(ab, dst) == -(dst.gen("b") * dst.gen("a"))
    for _ in range(40):
        p = random_poly(rng, src, 4, 4, hbar_max=1)
        assert dst.transport(src.transport(p, dst), src) == p


def test_canonical_form_idempotent(ctx_mixed, rng):
    from bvcalc.superalgebra import Poly
    for _ in range(60):
        p = random_poly(rng, ctx_mixed, 4, 4, hbar_max=2)
        assert Poly(ctx_mixed, dict(p.terms)) == p


def test_context_validation():
    from bvcalc.superalgebra import Generator
    with pytest.raises(ValueError, match="unique"):
        Context.plain([("x", EVEN), ("x", ODD)])
    with pytest.raises(ValueError, match="opposite parity"):
        Context([Generator("x", EVEN, "field"),
                 Generator("xp", EVEN, "antifield", "x")])
    with pytest.raises(ValueError, match="two antifields"):
        Context([Generator("x", EVEN, "field"),
                 Generator("a", ODD, "antifield", "x"),
                 Generator("b", ODD, "antifield", "x")])
