"""Line-oriented model files: generator tables, Lie data and named expressions.

A model file has sections introduced by bracketed headers:

    [lie]          basis = h e f          (required for Lie models)
                   module = vh ve vf      (optional module coordinate names)
    [brackets]     [h,e] = 2*e            (one bracket per line, j < k)
    [rep]          h.ve = ve              (action of a basis vector on a
                                           module coordinate, linear)
    [generators]   x even field           (explicit superspace models)
                   xp odd antifield x
    [exprs]        S0 = vh^2 + 4*ve*vf    (parsed on the full BV context)

Exactly one of [lie] / [generators] must be present.  Ghost coordinates of a
Lie model are named c1..cm and every field gets an antifield named by
suffixing 'p'.  All diagnostics carry the offending line number.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bv import BVSpace
from .lie import LieModel
from .parser import ParseError, parse_expression
from .superalgebra import ANTIFIELD, Context, EVEN, FIELD, Generator, ODD, PLAIN, Poly


class ModelError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"{message}" + (f" (line {line})" if line else ""))
        self.line = line


@dataclass
class Model:
    path: str
    bvs: BVSpace
    lie: LieModel | None
    module_names: tuple
    ghost_names: tuple
    exprs: dict

    @property
    def ctx(self) -> Context:
        return self.bvs.ctx

    def expr(self, name: str) -> Poly:
        if name not in self.exprs:
            raise ModelError(f"model has no expression named {name!r}")
        return self.exprs[name]


_SECTIONS = ("lie", "brackets", "rep", "generators", "exprs")


def load_model(path: str) -> Model:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_model(text, path)


def parse_model(text: str, path: str = "<string>") -> Model:
    sections: dict[str, list] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]") and "," not in line:
            name = line[1:-1].strip()
            if name not in _SECTIONS:
                raise ModelError(f"unknown section [{name}]", lineno)
            if name in sections:
                raise ModelError(f"duplicate section [{name}]", lineno)
            current = sections.setdefault(name, [])
            continue
        if current is None:
            raise ModelError("content before the first section header", lineno)
        current.append((lineno, line))

    if ("lie" in sections) == ("generators" in sections):
        raise ModelError("a model needs exactly one of [lie] or [generators]")

    if "lie" in sections:
        model, bvs, module_names, ghost_names = _build_lie(sections)
    else:
        for forbidden in ("brackets", "rep"):
            if forbidden in sections:
                line = sections[forbidden][0][0] if sections[forbidden] else None
                raise ModelError(f"[{forbidden}] requires a [lie] section", line)
        model = None
        module_names, ghost_names = (), ()
        bvs = _build_generators(sections["generators"])

    exprs = {}
    for lineno, line in sections.get("exprs", []):
        name, _, src = line.partition("=")
        name, src = name.strip(), src.strip()
        if not name or not src:
            raise ModelError("expression lines look like 'name = expr'", lineno)
        if not name.isidentifier():
            raise ModelError(f"bad expression name {name!r}", lineno)
        if name in exprs:
            raise ModelError(f"duplicate expression {name!r}", lineno)
        try:
            exprs[name] = parse_expression(src, bvs.ctx, line=lineno)
        except ParseError as exc:
            raise ModelError(f"in expression {name!r}: {exc}", lineno) from exc

    return Model(path, bvs, model, module_names, ghost_names, exprs)


def _keyvalue(lines, key):
    for lineno, line in lines:
        k, _, v = line.partition("=")
        if k.strip() == key:
            return lineno, v.strip()
    return None, None


def _build_lie(sections):
    lie_lines = sections["lie"]
    for lineno, line in lie_lines:
        key = line.partition("=")[0].strip()
        if key not in ("basis", "module"):
            raise ModelError(f"unknown [lie] entry {key!r}", lineno)
    _, basis_text = _keyvalue(lie_lines, "basis")
    if basis_text is None:
        raise ModelError("[lie] needs a 'basis = name...' line",
                         lie_lines[0][0] if lie_lines else None)
    basis = basis_text.split()
    _, module_text = _keyvalue(lie_lines, "module")
    module = module_text.split() if module_text else []
    m, n = len(basis), len(module)
    if len(set(basis)) != m or not all(b.isidentifier() for b in basis):
        raise ModelError("basis names must be distinct identifiers")
    if len(set(module)) != n or not all(v.isidentifier() for v in module):
        raise ModelError("module names must be distinct identifiers")
    for name in (*basis, *module):
        if name in ("i", "hbar"):
            raise ModelError(f"{name!r} is reserved in expressions")

    basis_index = {b: i for i, b in enumerate(basis)}
    module_index = {v: i for i, v in enumerate(module)}
    basis_ctx = Context.plain((b, EVEN) for b in basis)
    module_ctx = Context.plain((v, EVEN) for v in module) if module else None

    brackets = {}
    for lineno, line in sections.get("brackets", []):
        lhs, _, rhs = line.partition("=")
        lhs, rhs = lhs.strip(), rhs.strip()
        if not (lhs.startswith("[") and lhs.endswith("]") and "," in lhs):
            raise ModelError("bracket lines look like '[a,b] = expr'", lineno)
        a, _, b = lhs[1:-1].partition(",")
        a, b = a.strip(), b.strip()
        for name in (a, b):
            if name not in basis_index:
                raise ModelError(f"unknown basis vector {name!r}", lineno)
        j, k = basis_index[a], basis_index[b]
        try:
            value = parse_expression(rhs, basis_ctx, line=lineno)
        except ParseError as exc:
            raise ModelError(f"in bracket [{a},{b}]: {exc}", lineno) from exc
        for (exps, mask), coeff in value.terms.items():
            if mask or sum(exps) != 1:
                raise ModelError(f"bracket [{a},{b}] must be linear in the basis", lineno)
            i = exps.index(1)
            brackets[(i, j, k)] = coeff.as_fraction()

    rho = {}
    for lineno, line in sections.get("rep", []):
        lhs, _, rhs = line.partition("=")
        lhs, rhs = lhs.strip(), rhs.strip()
        g, _, v = lhs.partition(".")
        g, v = g.strip(), v.strip()
        if g not in basis_index:
            raise ModelError(f"unknown basis vector {g!r}", lineno)
        if v not in module_index:
            raise ModelError(f"unknown module coordinate {v!r}", lineno)
        k, j = basis_index[g], module_index[v]
        try:
            value = parse_expression(rhs, module_ctx, line=lineno)
        except ParseError as exc:
            raise ModelError(f"in rep entry {g}.{v}: {exc}", lineno) from exc
        for (exps, mask), coeff in value.terms.items():
            if mask or sum(exps) > 1:
                raise ModelError(f"rep entry {g}.{v} must be linear", lineno)
            if sum(exps) == 0:
                if not coeff.is_zero:
                    raise ModelError(f"rep entry {g}.{v} has a constant part", lineno)
                continue
            i = exps.index(1)
            rho[(i, j, k)] = coeff.as_fraction()

    try:
        lie = LieModel.build(m, brackets, n, rho)
    except ValueError as exc:
        raise ModelError(str(exc)) from exc

    ghost_names = tuple(f"c{i + 1}" for i in range(m))
    fields = [(v, EVEN) for v in module] + [(c, ODD) for c in ghost_names]
    try:
        bvs = BVSpace.over_fields(fields)
    except ValueError as exc:
        raise ModelError(str(exc)) from exc
    return lie, bvs, tuple(module), ghost_names


def _build_generators(lines):
    gens = []
    for lineno, line in lines:
        parts = line.split()
        if len(parts) not in (3, 4):
            raise ModelError("generator lines look like 'name parity role [field]'",
                             lineno)
        name, parity_text, role = parts[:3]
        if not name.isidentifier() or name in ("i", "hbar"):
            raise ModelError(f"bad generator name {name!r}", lineno)
        if parity_text not in ("even", "odd"):
            raise ModelError(f"parity must be 'even' or 'odd', not {parity_text!r}",
                             lineno)
        if role not in (FIELD, ANTIFIELD, PLAIN):
            raise ModelError(f"role must be field, antifield or plain", lineno)
        partner = None
        if role == ANTIFIELD:
            if len(parts) != 4:
                raise ModelError("antifield lines name their field: "
                                 "'name parity antifield fieldname'", lineno)
            partner = parts[3]
        elif len(parts) == 4:
            raise ModelError(f"unexpected trailing word {parts[3]!r}", lineno)
        parity = EVEN if parity_text == "even" else ODD
        gens.append(Generator(name, parity, role, partner))
    try:
        return BVSpace(Context(gens))
    except ValueError as exc:
        raise ModelError(str(exc)) from exc
