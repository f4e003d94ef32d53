"""Parity-homogeneous derivations given by their images on generators.

A derivation is extended to the whole algebra by the graded Leibniz rule;
composition and squares are realized by repeated application, never by
symbolic operator algebra.  The degree-n rows of the square reproduce the
quadratic relations of a strong homotopy structure.
"""

from __future__ import annotations

from .scalars import Scalar
from .superalgebra import Context, EVEN, ODD, Poly, _mask_bits


class Derivation:
    """Derivation of fixed parity, stored as generator -> image Poly."""

    __slots__ = ("ctx", "parity", "images")

    def __init__(self, ctx: Context, parity: int, images):
        if parity not in (EVEN, ODD):
            raise ValueError("derivation parity must be 0 or 1")
        clean = {}
        for name, img in images.items():
            gen_parity = ctx.parity_of(name)
            if not isinstance(img, Poly):
                img = ctx.scalar(img)
            if img.ctx != ctx:
                raise ValueError("context mismatch in derivation image")
            if img.is_zero:
                continue
            if img.parity() != (gen_parity + parity) % 2:
                raise ValueError(
                    f"image of {name} has the wrong parity for a "
                    f"{'odd' if parity else 'even'} derivation")
            clean[name] = img
        self.ctx = ctx
        self.parity = parity
        self.images = clean

    def image(self, name: str) -> Poly:
        self.ctx.slot(name)
        return self.images.get(name, self.ctx.zero())

    @property
    def is_zero(self) -> bool:
        return not self.images

    def __call__(self, poly: Poly) -> Poly:
        return self.apply(poly)

    def apply(self, poly: Poly) -> Poly:
        """Graded Leibniz rule: sign (-1)^(parity(D)*parity(prefix)) per factor."""
        if poly.ctx != self.ctx:
            raise ValueError("context mismatch")
        ctx = self.ctx
        zero_exps = (0,) * ctx.n_even
        out = ctx.zero()
        for (exps, mask), coeff in poly.terms.items():
            # even factors sit in front of the odd part and carry parity 0,
            # so they contribute the plain exponent rule with no sign
            for s, k in enumerate(exps):
                if not k:
                    continue
                img = self.images.get(ctx.even_names[s])
                if img is None:
                    continue
                e = list(exps)
                e[s] = k - 1
                out = out + _splice(ctx, (tuple(e), 0), img, (zero_exps, mask),
                                    coeff * k)
            # odd factor at position t among the odd part: prefix parity is t
            bits = _mask_bits(mask)
            for t, s in enumerate(bits):
                img = self.images.get(ctx.odd_names[s])
                if img is None:
                    continue
                c = -coeff if self.parity and t & 1 else coeff
                out = out + _splice(ctx, (exps, _bits_mask(bits[:t])), img,
                                    (zero_exps, _bits_mask(bits[t + 1:])), c)
        return out

    def square_residual(self):
        """{generator: D(D(generator))}; all zero iff D squares to zero."""
        return {g.name: self.apply(self.image(g.name))
                for g in self.ctx.generators}

    def homogeneous_components(self):
        """D = sum of D_n where D_n(v) is the total-degree-n part of D(v)."""
        degrees = sorted({img.mono_degree(m)
                          for img in self.images.values() for m in img.terms})
        return [(n, Derivation(self.ctx, self.parity,
                               {v: img.degree_part(n) for v, img in self.images.items()}))
                for n in degrees]

    def linf_relations(self, n_max: int):
        """[(n, {generator: degree-n part of D(D(generator))})] for n = 0..n_max.

        The n = 1, 2, 3 rows are the first quadratic relations of the homotopy
        ladder; all rows vanish iff the square does.
        """
        if n_max < 1:
            raise ValueError("n_max must be at least 1")
        square = self.square_residual()
        return [(n, {v: p.degree_part(n) for v, p in square.items()})
                for n in range(0, n_max + 1)]

    def commutator(self, other: "Derivation") -> "Derivation":
        """Graded commutator [D,E] = DE - (-1)^(parity D * parity E) ED."""
        if other.ctx != self.ctx:
            raise ValueError("context mismatch")
        sign = -1 if self.parity and other.parity else 1
        images = {}
        for g in self.ctx.generators:
            img = self.apply(other.image(g.name)) - sign * other.apply(self.image(g.name))
            if not img.is_zero:
                images[g.name] = img
        return Derivation(self.ctx, (self.parity + other.parity) % 2, images)

    def transport(self, target: Context) -> "Derivation":
        images = {name: self.ctx.transport(img, target)
                  for name, img in self.images.items()}
        return Derivation(target, self.parity, images)

    def __repr__(self):
        imgs = ", ".join(f"{v} -> {img}" for v, img in sorted(self.images.items()))
        return f"Derivation({'odd' if self.parity else 'even'}; {imgs})"


def _bits_mask(bits):
    mask = 0
    for b in bits:
        mask |= 1 << b
    return mask


def _splice(ctx, prefix_mono, image, suffix_mono, coeff):
    """coeff * prefix * image * suffix, the affixes being single monomials."""
    left = Poly(ctx, {prefix_mono: Scalar.of(coeff)})
    right = Poly(ctx, {suffix_mono: Scalar.one()})
    return left * image * right
