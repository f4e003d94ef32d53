"""Exact arithmetic in the free graded-commutative algebra on declared generators.

A Context fixes an ordered list of named generators, each even or odd, with
optional field/antifield roles.  Polynomials are sparse maps from canonical
monomials to exact Scalars.  A monomial stores a vector of exponents over the
even generators and a strictly increasing set of odd generators (as a bitmask);
odd squares vanish, and every product sign is the parity of the number of
transpositions needed to merge the odd factor lists.

All values here are immutable after construction and every operation is
pure, so they can be shared freely between threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import Scalar

EVEN = 0
ODD = 1

FIELD = "field"
ANTIFIELD = "antifield"
PLAIN = "plain"


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int
    role: str = PLAIN
    partner: str | None = None  # for antifields: the paired field's name


class Context:
    """Ordered generator table; declaration order is the canonical odd order."""

    __slots__ = ("generators", "_slot", "even_names", "odd_names",
                 "antifield_even_slots", "antifield_odd_mask", "pairs")

    def __init__(self, generators):
        generators = tuple(generators)
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        slot = {}
        even_names, odd_names = [], []
        for g in generators:
            if g.parity not in (EVEN, ODD):
                raise ValueError(f"bad parity for generator {g.name}")
            if g.role not in (FIELD, ANTIFIELD, PLAIN):
                raise ValueError(f"bad role for generator {g.name}")
            if g.parity == EVEN:
                slot[g.name] = (EVEN, len(even_names))
                even_names.append(g.name)
            else:
                slot[g.name] = (ODD, len(odd_names))
                odd_names.append(g.name)
        self.generators = generators
        self._slot = slot
        self.even_names = tuple(even_names)
        self.odd_names = tuple(odd_names)

        by_name = {g.name: g for g in generators}
        pairs = []
        claimed = {}
        for g in generators:
            if g.role == ANTIFIELD:
                f = by_name.get(g.partner)
                if f is None or f.role != FIELD:
                    raise ValueError(f"antifield {g.name} is not paired with a field")
                if f.parity == g.parity:
                    raise ValueError(f"antifield {g.name} must have opposite parity to {f.name}")
                if f.name in claimed:
                    raise ValueError(f"field {f.name} has two antifields")
                claimed[f.name] = g.name
        for g in generators:
            if g.role == FIELD and g.name in claimed:
                pairs.append((g.name, claimed[g.name]))
        self.pairs = tuple(pairs)

        af_even, af_mask = set(), 0
        for g in generators:
            if g.role == ANTIFIELD:
                p, s = slot[g.name]
                if p == EVEN:
                    af_even.add(s)
                else:
                    af_mask |= 1 << s
        self.antifield_even_slots = frozenset(af_even)
        self.antifield_odd_mask = af_mask

    # -- construction helpers ------------------------------------------

    @classmethod
    def plain(cls, specs) -> "Context":
        """Context from (name, parity) pairs, all with role 'plain'."""
        return cls(Generator(name, parity) for name, parity in specs)

    def slot(self, name: str):
        try:
            return self._slot[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def parity_of(self, name: str) -> int:
        return self.slot(name)[0]

    def role_of(self, name: str) -> str:
        for g in self.generators:
            if g.name == name:
                return g.role
        raise ValueError(f"unknown generator {name!r}")

    @property
    def n_even(self) -> int:
        return len(self.even_names)

    @property
    def n_odd(self) -> int:
        return len(self.odd_names)

    def zero_mono(self):
        return ((0,) * self.n_even, 0)

    # -- polynomial constructors ----------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def scalar(self, value) -> "Poly":
        s = Scalar.of(value)
        if s.is_zero:
            return self.zero()
        return Poly(self, {self.zero_mono(): s})

    def one(self) -> "Poly":
        return self.scalar(1)

    def gen(self, name: str) -> "Poly":
        parity, s = self.slot(name)
        exps = [0] * self.n_even
        mask = 0
        if parity == EVEN:
            exps[s] = 1
        else:
            mask = 1 << s
        return Poly(self, {(tuple(exps), mask): Scalar.one()})

    def monomial(self, coeff=1, even=None, odd=()) -> "Poly":
        """Monomial from {even name: exponent} and an odd name sequence.

        The odd names may come in any order; reordering to canonical form
        contributes the usual sign, and a repeated odd name gives zero.
        """
        exps = [0] * self.n_even
        for name, k in (even or {}).items():
            parity, s = self.slot(name)
            if parity != EVEN:
                raise ValueError(f"{name} is odd; pass it in the odd sequence")
            exps[s] += int(k)
        p = Poly(self, {(tuple(exps), 0): Scalar.of(coeff)})
        for name in odd:
            p = p * self.gen(name)
        return p

    def transport(self, poly: "Poly", target: "Context") -> "Poly":
        """Rebuild a Poly by generator names inside another context."""
        out = target.zero()
        for (exps, mask), coeff in poly.terms.items():
            even = {}
            for s, k in enumerate(exps):
                if k:
                    name = self.even_names[s]
                    if target.parity_of(name) != EVEN:
                        raise ValueError(f"generator {name} changes parity")
                    even[name] = k
            odd = [self.odd_names[s] for s in _mask_bits(mask)]
            out = out + target.monomial(coeff, even, odd)
        return out

    def __eq__(self, other):
        return isinstance(other, Context) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        gens = ",".join(g.name for g in self.generators)
        return f"Context({gens})"


# -- monomial helpers ----------------------------------------------------

def _mask_bits(mask: int):
    bits = []
    while mask:
        low = mask & -mask
        bits.append(low.bit_length() - 1)
        mask ^= low
    return bits


def _merge_sign(a: int, b: int):
    """Koszul sign for placing odd set b to the right of odd set a.

    Returns None when the sets overlap (an odd square), otherwise +1/-1 from
    the parity of transpositions needed to merge-sort the concatenation.
    """
    if a & b:
        return None
    inv = 0
    m = b
    while m:
        low = m & -m
        j = low.bit_length() - 1
        inv += (a >> (j + 1)).bit_count()
        m ^= low
    return -1 if inv & 1 else 1


class Poly:
    """Sparse exact superpolynomial attached to a Context."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms):
        self.ctx = ctx
        self.terms = {m: c for m, c in terms.items() if not c.is_zero}

    # -- ring structure -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError("context mismatch")
            return other
        return self.ctx.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return Poly(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for (e1, m1), c1 in self.terms.items():
            for (e2, m2), c2 in other.terms.items():
                sign = _merge_sign(m1, m2)
                if sign is None:
                    continue
                mono = (tuple(a + b for a, b in zip(e1, e2)), m1 | m2)
                c = c1 * c2
                if sign < 0:
                    c = -c
                terms[mono] = terms[mono] + c if mono in terms else c
        return Poly(self.ctx, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = self.ctx.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.ctx.scalar(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    @property
    def is_zero(self) -> bool:
        return not self.terms

    # -- parity ----------------------------------------------------------

    def parity(self) -> int:
        """Parity of a homogeneous Poly (0 for the zero Poly); raises if mixed."""
        parities = {m[1].bit_count() & 1 for m in self.terms}
        if len(parities) > 1:
            raise ValueError("polynomial is not parity-homogeneous")
        return parities.pop() if parities else 0

    def is_homogeneous(self) -> bool:
        return len({m[1].bit_count() & 1 for m in self.terms}) <= 1

    def parity_split(self):
        """(even part, odd part)."""
        even, odd = {}, {}
        for m, c in self.terms.items():
            (even if m[1].bit_count() & 1 == 0 else odd)[m] = c
        return Poly(self.ctx, even), Poly(self.ctx, odd)

    # -- derivatives -------------------------------------------------------

    def left_deriv(self, name: str) -> "Poly":
        parity, s = self.ctx.slot(name)
        terms = {}
        if parity == EVEN:
            for (exps, mask), c in self.terms.items():
                k = exps[s]
                if not k:
                    continue
                e = list(exps)
                e[s] = k - 1
                mono = (tuple(e), mask)
                c2 = c * k
                terms[mono] = terms[mono] + c2 if mono in terms else c2
        else:
            bit = 1 << s
            for (exps, mask), c in self.terms.items():
                if not mask & bit:
                    continue
                # sign: odd generators preceding this one inside the monomial
                before = (mask & (bit - 1)).bit_count()
                c2 = -c if before & 1 else c
                mono = (exps, mask ^ bit)
                terms[mono] = terms[mono] + c2 if mono in terms else c2
        return Poly(self.ctx, terms)

    def right_deriv(self, name: str) -> "Poly":
        """(-1)^(parity(v)*parity(component)) * left derivative, per component."""
        v_par = self.ctx.parity_of(name)
        out = self.ctx.zero()
        for part, par in zip(self.parity_split(), (EVEN, ODD)):
            d = part.left_deriv(name)
            if v_par and par:
                d = -d
            out = out + d
        return out

    # -- substitution ------------------------------------------------------

    def substitute(self, assignments) -> "Poly":
        """Algebra morphism sending each assigned generator to its image.

        Every image must be parity-homogeneous of the generator's own parity
        (zero always qualifies); unassigned generators map to themselves.
        """
        images = {}
        for name, img in assignments.items():
            parity, _ = self.ctx.slot(name)
            img = img if isinstance(img, Poly) else self.ctx.scalar(img)
            if img.ctx != self.ctx:
                raise ValueError("context mismatch in substitution")
            if not img.is_zero and img.parity() != parity:
                raise ValueError(f"substitution for {name} changes parity")
            images[name] = img
        powers: dict[str, list[Poly]] = {}

        def power(name, k):
            cache = powers.setdefault(name, [self.ctx.one()])
            base = images.get(name, self.ctx.gen(name))
            while len(cache) <= k:
                cache.append(cache[-1] * base)
            return cache[k]

        out = self.ctx.zero()
        for (exps, mask), c in self.terms.items():
            term = self.ctx.scalar(c)
            for s, k in enumerate(exps):
                if k:
                    term = term * power(self.ctx.even_names[s], k)
            for s in _mask_bits(mask):
                name = self.ctx.odd_names[s]
                term = term * images.get(name, self.ctx.gen(name))
            out = out + term
        return out

    # -- gradings -----------------------------------------------------------

    def mono_degree(self, mono) -> int:
        exps, mask = mono
        return sum(exps) + mask.bit_count()

    def mono_antifield_degree(self, mono) -> int:
        exps, mask = mono
        deg = sum(exps[s] for s in self.ctx.antifield_even_slots)
        deg += (mask & self.ctx.antifield_odd_mask).bit_count()
        return deg

    def max_degree(self) -> int:
        return max((self.mono_degree(m) for m in self.terms), default=0)

    def degree_part(self, n: int) -> "Poly":
        return Poly(self.ctx, {m: c for m, c in self.terms.items()
                               if self.mono_degree(m) == n})

    def hbar_decompose(self):
        """[(k, Poly)] with the hbar powers stripped out of the coefficients."""
        buckets: dict[int, dict] = {}
        for m, c in self.terms.items():
            for k, piece in c.split_hbar():
                buckets.setdefault(k, {})[m] = piece
        return [(k, Poly(self.ctx, buckets[k])) for k in sorted(buckets)]

    def antifield_decompose(self):
        buckets: dict[int, dict] = {}
        for m, c in self.terms.items():
            buckets.setdefault(self.mono_antifield_degree(m), {})[m] = c
        return [(k, Poly(self.ctx, buckets[k])) for k in sorted(buckets)]

    def antifield_part(self, n: int) -> "Poly":
        return Poly(self.ctx, {m: c for m, c in self.terms.items()
                               if self.mono_antifield_degree(m) == n})

    def coefficient(self, even=None, odd=()) -> Scalar:
        """Coefficient of the canonical monomial with the given factors."""
        exps = [0] * self.ctx.n_even
        for name, k in (even or {}).items():
            _, s = self.ctx.slot(name)
            exps[s] = int(k)
        mask = 0
        for name in odd:
            _, s = self.ctx.slot(name)
            mask |= 1 << s
        return self.terms.get((tuple(exps), mask), Scalar.zero())

    # -- rendering -----------------------------------------------------------

    def _mono_text(self, mono) -> str:
        exps, mask = mono
        parts = []
        for g in self.ctx.generators:
            parity, s = self.ctx._slot[g.name]
            if parity == EVEN:
                k = exps[s]
                if k == 1:
                    parts.append(g.name)
                elif k > 1:
                    parts.append(f"{g.name}^{k}")
            elif mask >> s & 1:
                parts.append(g.name)
        return "*".join(parts)

    def sorted_monos(self):
        return sorted(self.terms, key=lambda m: (self.mono_degree(m), m[0], m[1]))

    def __str__(self):
        if not self.terms:
            return "0"
        rendered = []
        for mono in self.sorted_monos():
            coeff = self.terms[mono]
            atoms = coeff.atoms()
            mtext = self._mono_text(mono)
            if len(atoms) == 1:
                sign, text = atoms[0]
            else:
                sign, text = 1, "(" + str(coeff) + ")"
            if mtext:
                full = mtext if text == "1" else f"{text}*{mtext}"
            else:
                full = text
            rendered.append((sign, full))
        parts = []
        for n, (sign, full) in enumerate(rendered):
            if sign < 0 and not full[0].isdigit():
                full = "1*" + full
            if n == 0:
                parts.append("-" + full if sign < 0 else full)
            else:
                parts.append((" - " if sign < 0 else " + ") + full)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self})"

    def key(self):
        """Canonical hashable form; equal Polys have equal keys."""
        return tuple((m, self.terms[m].key()) for m in self.sorted_monos())


def grade_decompose(poly: Poly, grading: str):
    """Split a Poly by 'hbar' power or by 'antifield' degree."""
    if grading == "hbar":
        return poly.hbar_decompose()
    if grading == "antifield":
        return poly.antifield_decompose()
    raise ValueError(f"unknown grading {grading!r}")
