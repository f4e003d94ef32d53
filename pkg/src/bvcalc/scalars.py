"""Exact scalar coefficients: Gaussian rationals with Laurent powers of hbar.

A scalar is a finite sum ``sum_k (a_k + b_k*i) * hbar**k`` with a_k, b_k
exact rationals of unbounded precision and k ranging over a finite set of
(possibly negative) integers.  Nothing in this module ever rounds.
"""

from __future__ import annotations

from fractions import Fraction


class Scalar:
    """Immutable element of Q(i)[hbar, hbar^-1], stored sparsely by hbar power."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, (re, im) in terms.items():
                re, im = Fraction(re), Fraction(im)
                if re or im:
                    clean[int(k)] = (re, im)
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def of(cls, value) -> "Scalar":
        """Coerce an int, Fraction or Scalar into a Scalar."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls({0: (value, 0)})
        raise TypeError(f"cannot make a Scalar out of {value!r}")

    @classmethod
    def zero(cls) -> "Scalar":
        return cls()

    @classmethod
    def one(cls) -> "Scalar":
        return cls({0: (1, 0)})

    @classmethod
    def i(cls) -> "Scalar":
        return cls({0: (0, 1)})

    @classmethod
    def hbar(cls, power: int = 1, coeff=1) -> "Scalar":
        return cls({power: (coeff, 0)})

    # -- queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def hbar_powers(self):
        return sorted(self._terms)

    def component(self, k: int) -> "Scalar":
        """The (a_k + b_k*i) piece, with the hbar power stripped off."""
        if k in self._terms:
            return Scalar({0: self._terms[k]})
        return Scalar()

    def split_hbar(self):
        """[(k, hbar-free Scalar)] with k ascending; sums back to self*hbar^k."""
        return [(k, Scalar({0: self._terms[k]})) for k in sorted(self._terms)]

    def as_fraction(self) -> Fraction:
        """The value as an exact rational; raises if i or hbar is present."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) != {0}:
            raise ValueError(f"scalar {self} carries hbar, not a plain rational")
        re, im = self._terms[0]
        if im:
            raise ValueError(f"scalar {self} has an imaginary part")
        return re

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.of(other)
        terms = dict(self._terms)
        for k, (re, im) in other._terms.items():
            re0, im0 = terms.get(k, (Fraction(0), Fraction(0)))
            terms[k] = (re0 + re, im0 + im)
        return Scalar(terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({k: (-re, -im) for k, (re, im) in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self + (-Scalar.of(other))

    def __rsub__(self, other):
        return Scalar.of(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.of(other)
        terms = {}
        for k1, (a, b) in self._terms.items():
            for k2, (c, d) in other._terms.items():
                k = k1 + k2
                re0, im0 = terms.get(k, (Fraction(0), Fraction(0)))
                terms[k] = (re0 + a * c - b * d, im0 + a * d + b * c)
        return Scalar(terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self.key())

    def key(self):
        """Canonical hashable form (used for deterministic ordering)."""
        return tuple((k, re, im) for k, (re, im) in sorted(self._terms.items()))

    # -- rendering ----------------------------------------------------

    def atoms(self):
        """List of (sign, magnitude_text) pieces in canonical order.

        Magnitude texts are grammar-compatible factors like ``1/2``, ``2*i``,
        ``hbar^2`` or ``3*i*hbar``; the sign is +1 or -1.
        """
        out = []
        for k in sorted(self._terms):
            re, im = self._terms[k]
            if re:
                out.append(_atom(re, k, imag=False))
            if im:
                out.append(_atom(im, k, imag=True))
        return out

    def __str__(self):
        atoms = self.atoms()
        if not atoms:
            return "0"
        parts = []
        for n, (sign, text) in enumerate(atoms):
            if n == 0:
                parts.append(_signed(sign, text) if sign < 0 else text)
            else:
                parts.append(" - " + _guard(text) if sign < 0 else " + " + text)
        return "".join(parts)

    def __repr__(self):
        return f"Scalar({self})"


def _atom(coeff: Fraction, power: int, imag: bool):
    sign = 1 if coeff > 0 else -1
    mag = abs(coeff)
    parts = []
    if mag != 1 or (not imag and power == 0):
        parts.append(str(mag))
    if imag:
        parts.append("i")
    if power:
        parts.append("hbar" if power == 1 else f"hbar^{power}")
    return sign, "*".join(parts) if parts else "1"


def _guard(text: str) -> str:
    # The expression grammar has no unary minus, so a negative factor must
    # start with a signed rational: "-i" is illegal, "-1*i" is fine.
    return text if text[0].isdigit() else "1*" + text


def _signed(sign: int, text: str) -> str:
    return "-" + _guard(text) if sign < 0 else text


ZERO = Scalar.zero()
ONE = Scalar.one()
I = Scalar.i()
