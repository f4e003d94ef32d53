"""Exact integration of exponential elements over graph Lagrangians.

An ExpElement is a finite sum of pairs P * exp(T) with T even.  Restriction
to the Lagrangian of a gauge fermion F substitutes every antifield by the
right derivative of F with respect to its field; integration is Berezin over
the odd field directions followed by normalized Gaussian moments over the
even ones.  Everything stays in exact scalars, so gauge comparisons are
equality checks rather than tolerance checks.
"""

from __future__ import annotations

from fractions import Fraction

from .bv import BVSpace
from .scalars import Scalar
from .superalgebra import EVEN, FIELD, ODD, Poly


class NotDeltaClosed(Exception):
    """Raised when a gauge experiment is asked to integrate a non-closed element."""

    def __init__(self, residual: "ExpElement"):
        super().__init__("integrand is not delta-closed")
        self.residual = residual


class NonNormalizedDamping(Exception):
    """Raised when the even quadratic body of an exponent is not the
    standard damping -1/2 sum of squared even fields."""


class GaugeFermion:
    """An odd polynomial in the field generators only."""

    __slots__ = ("bvs", "poly")

    def __init__(self, bvs: BVSpace, poly: Poly):
        if poly.ctx != bvs.ctx:
            raise ValueError("context mismatch")
        if any(poly.mono_antifield_degree(m) for m in poly.terms):
            raise ValueError("gauge fermion depends on antifields")
        if not poly.is_zero and poly.parity() != ODD:
            raise ValueError("gauge fermion must be odd")
        self.bvs = bvs
        self.poly = poly

    def antifield_images(self):
        """{antifield: right derivative of F by its field}.

        The right derivative (an extra sign on odd fields) is what makes the
        exact Stokes property of the integral hold; see the gauge tests.
        """
        return {a: self.poly.right_deriv(f) for f, a in self.bvs.pairs}

    def __repr__(self):
        return f"GaugeFermion({self.poly})"


class ExpElement:
    """Finite sum of P * exp(T) pairs over a BVSpace, with each T even."""

    __slots__ = ("bvs", "pairs")

    def __init__(self, bvs: BVSpace, pairs):
        merged = {}
        keep = {}
        for p, t in pairs:
            if p.ctx != bvs.ctx or t.ctx != bvs.ctx:
                raise ValueError("context mismatch")
            if not t.is_zero and t.parity() != EVEN:
                raise ValueError("exponent must be even")
            k = t.key()
            merged[k] = merged[k] + p if k in merged else p
            keep[k] = t
        self.bvs = bvs
        self.pairs = tuple(sorted(((merged[k], keep[k]) for k in merged
                                   if not merged[k].is_zero),
                                  key=lambda pt: pt[1].key()))

    @property
    def is_zero(self) -> bool:
        return not self.pairs

    def __add__(self, other: "ExpElement") -> "ExpElement":
        if other.bvs is not self.bvs and other.bvs.ctx != self.bvs.ctx:
            raise ValueError("context mismatch")
        return ExpElement(self.bvs, list(self.pairs) + list(other.pairs))

    def __neg__(self) -> "ExpElement":
        return ExpElement(self.bvs, [(-p, t) for p, t in self.pairs])

    def __sub__(self, other: "ExpElement") -> "ExpElement":
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, ExpElement) and self.bvs.ctx == other.bvs.ctx
                and (self - other).is_zero)

    def has_antifields(self) -> bool:
        return any(p.mono_antifield_degree(m) for p, _ in self.pairs for m in p.terms) \
            or any(t.mono_antifield_degree(m) for _, t in self.pairs for m in t.terms)

    def __str__(self):
        return " + ".join(f"({p})*exp({t})" for p, t in self.pairs) or "0"

    def __repr__(self):
        return f"ExpElement({self})"


def exp_delta(element: ExpElement) -> ExpElement:
    """delta of a sum of P*exp(T):

    per parity-homogeneous P the coefficient of exp(T) becomes
    delta(P) + (-1)^p(P) {P, T} + (-1)^p(P) P (delta(T) + 1/2 {T, T}).
    """
    bvs = element.bvs
    half = Fraction(1, 2)
    out = []
    for p, t in element.pairs:
        curvature = bvs.delta(t) + half * bvs.bracket(t, t)
        for p_h, par in zip(p.parity_split(), (EVEN, ODD)):
            if p_h.is_zero:
                continue
            coeff = bvs.bracket(p_h, t) + p_h * curvature
            if par:
                coeff = -coeff
            out.append((bvs.delta(p_h) + coeff, t))
    return ExpElement(bvs, out)


def restrict_to_lagrangian(obj, fermion: GaugeFermion):
    """Substitute every antifield by the gauge-fermion derivative of its field."""
    images = fermion.antifield_images()
    if isinstance(obj, Poly):
        return obj.substitute(images)
    return ExpElement(obj.bvs, [(p.substitute(images), t.substitute(images))
                                for p, t in obj.pairs])


def berezin_integrate(poly: Poly, odd_names) -> Poly:
    """Iterated single-variable Berezin integrals, innermost = last listed.

    A single integral extracts the coefficient with the variable moved to the
    rightmost position of the odd part, so integrating in declaration order
    picks out the top monomial coefficient with sign +1.
    """
    out = poly
    for name in reversed(list(odd_names)):
        parity, s = poly.ctx.slot(name)
        if parity != ODD:
            raise ValueError(f"{name} is not odd")
        bit = 1 << s
        terms = {}
        for (exps, mask), c in out.terms.items():
            if not mask & bit:
                continue
            behind = (mask >> (s + 1)).bit_count()
            c2 = -c if behind & 1 else c
            mono = (exps, mask ^ bit)
            terms[mono] = terms[mono] + c2 if mono in terms else c2
        out = Poly(out.ctx, terms)
    return out


def gaussian_expectation(poly: Poly) -> Scalar:
    """Moments of the product weight exp(-1/2 sum x^2), normalized to 1.

    Each even-field power 2k contributes (2k-1)!! and odd powers kill the
    monomial; any odd generator or non-field variable is an error.
    """
    ctx = poly.ctx
    total = Scalar.zero()
    for (exps, mask), c in poly.terms.items():
        if mask:
            raise ValueError("odd generator present in a Gaussian moment")
        weight = Fraction(1)
        dead = False
        for s, k in enumerate(exps):
            if not k:
                continue
            if ctx.role_of(ctx.even_names[s]) != FIELD:
                raise ValueError(f"{ctx.even_names[s]} is not an even field")
            if k % 2:
                dead = True
                break
            weight *= _double_factorial(k - 1)
        if not dead:
            total = total + c * weight
    return total


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def standard_damping(bvs: BVSpace) -> Poly:
    """-1/2 sum over even fields of the squared coordinate."""
    ctx = bvs.ctx
    out = ctx.zero()
    half = Fraction(-1, 2)
    for f, _ in bvs.pairs:
        if ctx.parity_of(f) == EVEN:
            out = out + ctx.monomial(half, even={f: 2})
    return out


def lagrangian_integral(element: ExpElement, fermion: GaugeFermion) -> Scalar:
    """Exact integral over the graph Lagrangian of the gauge fermion.

    After restriction each exponent must be the standard damping plus a
    nilpotent part N whose monomials all contain an odd generator; exp(N) is
    then a finite sum, the odd field directions are Berezin-integrated in
    declaration order and the even ones averaged against the normalized
    Gaussian weight.
    """
    bvs = element.bvs
    ctx = bvs.ctx
    restricted = restrict_to_lagrangian(element, fermion)
    damping = standard_damping(bvs)
    odd_fields = [f for f, _ in bvs.pairs if ctx.parity_of(f) == ODD]
    total = Scalar.zero()
    for p, t in restricted.pairs:
        nil = t - damping
        if any(not mask for (_, mask) in nil.terms):
            raise NonNormalizedDamping(
                f"exponent body {t} is not the standard damping")
        integrand = p * _exp_nilpotent(nil)
        body = berezin_integrate(integrand, odd_fields)
        total = total + gaussian_expectation(body)
    return total


def _exp_nilpotent(nil: Poly) -> Poly:
    out = nil.ctx.one()
    power = nil.ctx.one()
    k = 1
    while True:
        power = power * nil
        if power.is_zero:
            return out
        out = out + Fraction(1, _factorial(k)) * power
        k += 1


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def gauge_independence_experiment(element: ExpElement, fermions):
    """Integrate a delta-closed element over every gauge; refuse otherwise.

    Returns a GaugeReport with the exact per-gauge values and whether they
    all coincide.
    """
    residual = exp_delta(element)
    if not residual.is_zero:
        raise NotDeltaClosed(residual)
    values = [(fermion, lagrangian_integral(element, fermion))
              for fermion in fermions]
    all_equal = len({v.key() for _, v in values}) <= 1
    return GaugeReport(values, all_equal)


def exact_boundary_integrals(element: ExpElement, fermions):
    """Companion check: integrals of delta(element) per gauge, all zero by
    the Stokes property."""
    boundary = exp_delta(element)
    values = [(fermion, lagrangian_integral(boundary, fermion))
              for fermion in fermions]
    return GaugeReport(values, all(v.is_zero for _, v in values))


class GaugeReport:
    __slots__ = ("values", "all_equal")

    def __init__(self, values, all_equal):
        self.values = values
        self.all_equal = all_equal

    def __repr__(self):
        vals = ", ".join(str(v) for _, v in self.values)
        return f"GaugeReport([{vals}], all_equal={self.all_equal})"
