"""Odd Laplacian and antibracket on a space of paired fields and antifields.

Sign conventions (chosen once; every identity test depends on them):

* delta applies the field derivative first, then the antifield derivative,
  summed over the pairs.  The opposite order differs by signs that would
  break the divergence cross-check against the structure-constant trace.
* the bracket of parity-homogeneous Phi, Psi is
      sum_i (-1)^(p(x+_i) p(Phi))          dPhi/dx+_i * dPsi/dx^i
          - (-1)^((p(Phi)+1)(p(Psi)+1) + p(x+_i) p(Psi)) dPsi/dx+_i * dPhi/dx^i
  with left derivatives throughout; non-homogeneous inputs are split by
  parity and recombined linearly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .derivations import Derivation
from .scalars import Scalar
from .superalgebra import ANTIFIELD, Context, EVEN, FIELD, Generator, ODD, Poly


class BVSpace:
    """A Context in which every field generator has a paired antifield."""

    __slots__ = ("ctx", "field_ctx", "pairs")

    def __init__(self, ctx: Context):
        fields = [g for g in ctx.generators if g.role == FIELD]
        antifields = [g for g in ctx.generators if g.role == ANTIFIELD]
        if not fields or len(ctx.pairs) != len(fields) or len(antifields) != len(fields):
            raise ValueError("context lacks a perfect field/antifield pairing")
        self.ctx = ctx
        self.pairs = ctx.pairs
        self.field_ctx = Context(Generator(g.name, g.parity, FIELD) for g in fields)

    @classmethod
    def over_fields(cls, specs, antifield_suffix: str = "p") -> "BVSpace":
        """Build the paired context from (name, parity) field specs.

        Fields keep their declaration order; antifields follow in the same
        order, named by suffixing, with flipped parity.
        """
        gens = [Generator(name, parity, FIELD) for name, parity in specs]
        gens += [Generator(name + antifield_suffix, 1 - parity, ANTIFIELD, name)
                 for name, parity in specs]
        return cls(Context(gens))

    def antifield_of(self, field_name: str) -> str:
        for f, a in self.pairs:
            if f == field_name:
                return a
        raise ValueError(f"{field_name} is not a field here")

    # -- Laplacian and bracket -------------------------------------------

    def delta(self, phi: Poly) -> Poly:
        """Sum over pairs of the antifield derivative of the field derivative."""
        if phi.ctx != self.ctx:
            raise ValueError("context mismatch")
        out = self.ctx.zero()
        for f, a in self.pairs:
            out = out + phi.left_deriv(f).left_deriv(a)
        return out

    def bracket(self, phi: Poly, psi: Poly) -> Poly:
        if phi.ctx != self.ctx or psi.ctx != self.ctx:
            raise ValueError("context mismatch")
        out = self.ctx.zero()
        for phi_h, p_phi in zip(phi.parity_split(), (EVEN, ODD)):
            if phi_h.is_zero:
                continue
            for psi_h, p_psi in zip(psi.parity_split(), (EVEN, ODD)):
                if psi_h.is_zero:
                    continue
                out = out + self._bracket_h(phi_h, p_phi, psi_h, p_psi)
        return out

    def _bracket_h(self, phi, p_phi, psi, p_psi):
        out = self.ctx.zero()
        for f, a in self.pairs:
            p_a = self.ctx.parity_of(a)
            t1 = phi.left_deriv(a) * psi.left_deriv(f)
            if p_a and p_phi:
                t1 = -t1
            t2 = psi.left_deriv(a) * phi.left_deriv(f)
            if ((p_phi + 1) * (p_psi + 1) + p_a * p_psi) % 2 == 0:
                t2 = -t2
            out = out + t1 + t2
        return out

    def bracket_via_defect(self, phi: Poly, psi: Poly) -> Poly:
        """The bracket recovered from delta and the product alone:
        (-1)^p(Phi) delta(Phi Psi) + (-1)^(p(Phi)+1) delta(Phi) Psi - Phi delta(Psi).
        """
        out = self.ctx.zero()
        for phi_h, p_phi in zip(phi.parity_split(), (EVEN, ODD)):
            if phi_h.is_zero:
                continue
            term = (self.delta(phi_h * psi) - self.delta(phi_h) * psi)
            if p_phi:
                term = -term
            out = out + term - phi_h * self.delta(psi)
        return out

    # -- lifts between field derivations and quadratic actions -------------

    def lift(self, derivation: Derivation) -> Derivation:
        """A field-context derivation viewed on the full space."""
        if derivation.ctx == self.ctx:
            return derivation
        return derivation.transport(self.ctx)

    def s1_of(self, derivation: Derivation) -> Poly:
        """sum_i antifield_i * D(field_i); even whenever D is odd."""
        D = self.lift(derivation)
        out = self.ctx.zero()
        for f, a in self.pairs:
            img = D.image(f)
            if any(img.mono_antifield_degree(m) for m in img.terms):
                raise ValueError("derivation touches antifields")
            out = out + self.ctx.gen(a) * img
        for g in self.ctx.generators:
            if g.role == ANTIFIELD and not D.image(g.name).is_zero:
                raise ValueError("derivation touches antifields")
        return out

    def extract_derivation(self, s1: Poly) -> Derivation:
        """Field-space derivation with image bracket(s1, field); inverse of s1_of."""
        if any(s1.mono_antifield_degree(m) != 1 for m in s1.terms):
            raise ValueError("antifield degree must be exactly 1")
        parity = (s1.parity() + 1) % 2
        images = {}
        for f, _ in self.pairs:
            img = self.bracket(s1, self.ctx.gen(f))
            if not img.is_zero:
                images[f] = self.ctx.transport(img, self.field_ctx)
        return Derivation(self.field_ctx, parity, images)

    # -- master equations ---------------------------------------------------

    def check_action(self, s: Poly) -> Poly:
        if s.ctx != self.ctx:
            raise ValueError("context mismatch")
        if not s.is_zero and s.parity() != EVEN:
            raise ValueError("an action must be even")
        return s

    def classical_master_residual(self, s: Poly) -> Poly:
        """{S, S}; zero iff S solves the classical master equation."""
        s = self.check_action(s)
        return self.bracket(s, s)

    def quantum_master_residual(self, s: Poly) -> Poly:
        """{S, S} - 2 i hbar delta(S); zero iff exp(iS/hbar) is delta-closed."""
        s = self.check_action(s)
        two_i_hbar = Scalar.hbar(1, 1) * Scalar.i() * 2
        return self.bracket(s, s) - two_i_hbar * self.delta(s)

    def hbar_equations(self, s: Poly):
        """Residuals R_k with S = sum hbar^k S_k:

        R_k = sum_{a+b=k} {S_a, S_b} - 2 i delta(S_{k-1}),
        so that sum hbar^k R_k is exactly the quantum master residual.
        """
        s = self.check_action(s)
        parts = dict(s.hbar_decompose())
        if not parts:
            return []
        lo, hi = min(parts), max(parts)
        two_i = Scalar.i() * 2
        out = []
        for k in range(min(2 * lo, lo + 1), max(2 * hi, hi + 1) + 1):
            r = self.ctx.zero()
            for a in range(lo, hi + 1):
                b = k - a
                if b in parts and a in parts:
                    r = r + self.bracket(parts[a], parts[b])
            if (k - 1) in parts:
                r = r - two_i * self.delta(parts[k - 1])
            if not r.is_zero:
                out.append((k, r))
        return out

    def omega_apply(self, s: Poly, psi: Poly) -> Poly:
        """The quantum BRST operator: -i hbar delta(psi) + {S, psi}."""
        s = self.check_action(s)
        i_hbar = Scalar.hbar(1, 1) * Scalar.i()
        return -(i_hbar * self.delta(psi)) + self.bracket(s, psi)

    # -- antifield-degree analysis -------------------------------------------

    def evaluate_even_fields(self, poly: Poly, point) -> Poly:
        """Substitute rational values for even fields; odd coordinates and
        antifields stay symbolic.  The result is zero iff every odd-monomial
        coefficient vanishes at the point."""
        assignments = {}
        for name, value in point.items():
            if self.ctx.parity_of(name) != EVEN or self.ctx.role_of(name) != FIELD:
                raise ValueError(f"{name} is not an even field coordinate")
            assignments[name] = self.ctx.scalar(Fraction(value))
        for f, _ in self.pairs:
            if self.ctx.parity_of(f) == EVEN and f not in assignments:
                assignments[f] = self.ctx.scalar(0)
        return poly.substitute(assignments)

    def antifield_report(self, s: Poly, points=()) -> "AntifieldReport":
        s = self.check_action(s)
        parts = {k: p for k, p in s.antifield_decompose()}
        s0 = parts.get(0, self.ctx.zero())
        s1 = parts.get(1, self.ctx.zero())
        s2 = parts.get(2, self.ctx.zero())
        res_a = self.bracket(s0, s1)
        res_b = self.bracket(s1, s1) + 2 * self.bracket(s0, s2)
        gradient = {f: s0.left_deriv(f) for f, _ in self.pairs}
        point_results = []
        for point in points:
            bad = {f: value for f, g in gradient.items()
                   if not (value := self.evaluate_even_fields(g, point)).is_zero}
            if bad:
                point_results.append(PointResult(dict(point), False, bad, None))
                continue
            onshell = self.evaluate_even_fields(res_b, point)
            point_results.append(PointResult(dict(point), True, {}, onshell))
        return AntifieldReport(parts, res_a, res_b, point_results)


@dataclass
class PointResult:
    point: dict
    is_critical: bool
    gradient_failures: dict
    onshell_residual: Poly | None

    @property
    def onshell_ok(self) -> bool:
        return self.is_critical and self.onshell_residual.is_zero


@dataclass
class AntifieldReport:
    components: dict
    bracket_s0_s1: Poly
    offshell_residual: Poly          # {S1,S1} + 2{S0,S2}
    points: list

    @property
    def first_order_consistent(self) -> bool:
        return self.bracket_s0_s1.is_zero and self.offshell_residual.is_zero
