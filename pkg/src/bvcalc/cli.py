"""Command-line verifier: loads a model file, runs a check, prints a report.

Exit codes: 0 when the requested check passes, 1 when it ran and failed,
2 on refusals (bad model, parse error, unmet precondition).  Reports are
deterministic for a fixed (model, flags, seed) triple.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import gauge, identities, lie
from .modelfile import Model, ModelError, load_model
from .parser import ParseError
from .randgen import random_poly
from .scalars import Scalar
from .superalgebra import Poly

PASS, FAIL, REFUSED = "pass", "fail", "refused"
_EXIT = {PASS: 0, FAIL: 1, REFUSED: 2}


class Report:
    def __init__(self, command: str, model: str, status: str, details=()):
        self.command = command
        self.model = model
        self.status = status
        self.details = list(details)

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"model: {self.model}",
                 f"status: {self.status}"]
        lines += [f"{key}: {value}" for key, value in self.details]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {"command": self.command, "model": self.model,
                   "status": self.status,
                   "details": [[k, str(v)] for k, v in self.details]}
        return json.dumps(payload, sort_keys=True) + "\n"

    @property
    def exit_code(self) -> int:
        return _EXIT[self.status]


class Refusal(Exception):
    def __init__(self, message: str, details=()):
        super().__init__(message)
        self.details = list(details)


def _require_lie(model: Model) -> lie.LieModel:
    if model.lie is None:
        raise Refusal("this command needs a [lie] model")
    return model.lie


def _brst_derivation(model: Model):
    lm = _require_lie(model)
    if lm.module_dim:
        return lie.brst_rep(lm, model.module_names, model.ghost_names)
    return lie.brst_lie(lm, model.ghost_names)


def _action(model: Model, name: str | None) -> Poly:
    """Named expression, or for Lie models the assembled S0 + hbar*S1."""
    if name:
        return model.expr(name)
    if model.lie is not None:
        s0 = model.exprs.get("S0", model.ctx.zero())
        s1 = model.bvs.s1_of(_brst_derivation(model))
        return s0 + Scalar.hbar() * s1
    if "S" in model.exprs:
        return model.exprs["S"]
    raise Refusal("no action: give --action or name an expression 'S'")


def _parse_point(text: str) -> dict:
    point = {}
    for piece in text.split(","):
        name, _, value = piece.partition("=")
        name, value = name.strip(), value.strip()
        if not name or not value:
            raise Refusal(f"bad point syntax {text!r}; use 'x=0,y=1/2'")
        try:
            point[name] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise Refusal(f"bad rational {value!r} in point") from None
    return point


# -- command handlers ------------------------------------------------------

def _cmd_check_lie(model: Model, args):
    violations = lie.jacobi_check(_require_lie(model))
    details = [("violations", len(violations))]
    for (j, k, m), residual in violations:
        vec = "[" + ", ".join(str(x) for x in residual) + "]"
        details.append((f"triple ({j + 1},{k + 1},{m + 1})", vec))
    return PASS if not violations else FAIL, details


def _cmd_check_rep(model: Model, args):
    lm = _require_lie(model)
    if not lm.module_dim:
        raise Refusal("model has no module, nothing to check")
    violations = lie.rep_check(lm)
    details = [("violations", len(violations))]
    for (j, k), residual in violations:
        rows = "[" + "; ".join("[" + ", ".join(str(x) for x in row) + "]"
                               for row in residual.rows) + "]"
        details.append((f"pair ({j + 1},{k + 1})", rows))
    return PASS if not violations else FAIL, details


def _cmd_brst(model: Model, args):
    D = _brst_derivation(model)
    details = [(f"delta({g.name})", D.image(g.name)) for g in D.ctx.generators]
    return PASS, details


def _cmd_linf(model: Model, args):
    D = _brst_derivation(model)
    square = D.square_residual()
    square_zero = all(p.is_zero for p in square.values())
    n_max = args.nmax
    if n_max is None:
        # always show the first three quadratic-relation rows
        n_max = max([3] + [p.max_degree() for p in square.values()
                           if not p.is_zero])
    rows = D.linf_relations(n_max)
    details = []
    for n, row in rows:
        nonzero = {v: p for v, p in row.items() if not p.is_zero}
        if not nonzero:
            details.append((f"row {n}", "0"))
        else:
            for v in sorted(nonzero):
                details.append((f"row {n} ({v})", nonzero[v]))
    details.append(("square_zero", str(square_zero).lower()))
    return (PASS if square_zero else FAIL), details


def _cmd_ce_cohomology(model: Model, args):
    lm = _require_lie(model)
    try:
        dims = lie.ce_cohomology_dims(lm, args.p)
    except ValueError as exc:
        raise Refusal(str(exc)) from None
    details = [("dims", "(" + ", ".join(str(d) for d in dims) + ")")]
    details += [(f"H^{q}", d) for q, d in enumerate(dims)]
    return PASS, details


def _cmd_bv_identities(model: Model, args):
    fails = identities.bv_identity_suite(model.bvs, args.seed, args.count)
    details = [("seed", args.seed), ("triples", args.count)]
    ok = True
    for name in identities.IDENTITY_NAMES:
        n = fails[name]
        ok = ok and n == 0
        details.append((name, "ok" if n == 0 else f"{n} failures"))
    return (PASS if ok else FAIL), details


def _cmd_master(model: Model, args):
    residual = model.bvs.classical_master_residual(_action(model, args.action))
    return (PASS if residual.is_zero else FAIL), [("residual", residual)]


def _cmd_qme(model: Model, args):
    residual = model.bvs.quantum_master_residual(_action(model, args.action))
    return (PASS if residual.is_zero else FAIL), [("residual", residual)]


def _cmd_hbar_seq(model: Model, args):
    rows = model.bvs.hbar_equations(_action(model, args.action))
    details = [(f"R_{k}", r) for k, r in rows] or [("residuals", "all zero")]
    return (PASS if not rows else FAIL), details


def _cmd_onshell(model: Model, args):
    points = [_parse_point(text) for text in args.point or []]
    report = model.bvs.antifield_report(_action(model, args.action), points)
    details = [("bracket(S0,S1)", report.bracket_s0_s1),
               ("offshell {S1,S1}+2{S0,S2}", report.offshell_residual)]
    if not points:
        ok = report.first_order_consistent
    else:
        ok = True
        for pr in report.points:
            label = ",".join(f"{k}={v}" for k, v in sorted(pr.point.items()))
            if not pr.is_critical:
                ok = False
                bad = "; ".join(f"d/d{f} = {v}" for f, v in sorted(pr.gradient_failures.items()))
                details.append((f"point {label}", f"not critical: {bad}"))
            else:
                zero = pr.onshell_residual.is_zero
                ok = ok and zero
                details.append((f"point {label}",
                                "onshell residual 0" if zero
                                else f"onshell residual {pr.onshell_residual}"))
    return (PASS if ok else FAIL), details


def _cmd_omega_square(model: Model, args):
    s = _action(model, args.action)
    bvs = model.bvs
    residual = bvs.quantum_master_residual(s)
    rng = random.Random(args.seed)
    half = Fraction(1, 2)
    bad = 0
    for _ in range(args.count):
        psi = random_poly(rng, bvs.ctx, max_degree=3, terms=3)
        lhs = bvs.omega_apply(s, bvs.omega_apply(s, psi))
        if lhs != half * bvs.bracket(residual, psi):
            bad += 1
    details = [("seed", args.seed), ("samples", args.count),
               ("identity", "ok" if bad == 0 else f"{bad} failures"),
               ("qme_residual", residual)]
    return (PASS if bad == 0 else FAIL), details


def _cmd_gauge_exp(model: Model, args):
    bvs = model.bvs
    p = model.expr(args.p)
    t = model.expr(args.t) if args.t else gauge.standard_damping(bvs)
    element = gauge.ExpElement(bvs, [(p, t)])
    fermions = []
    for name in args.gauge:
        try:
            fermions.append(gauge.GaugeFermion(bvs, model.expr(name)))
        except ValueError as exc:
            raise Refusal(f"gauge {name!r}: {exc}") from None
    if not fermions:
        raise Refusal("give at least one --gauge expression name")
    if args.boundary:
        report = gauge.exact_boundary_integrals(element, fermions)
        details = [(f"integral of delta [{name}]", value)
                   for name, (_, value) in zip(args.gauge, report.values)]
        details.append(("all_zero", str(report.all_equal).lower()))
        return (PASS if report.all_equal else FAIL), details
    try:
        report = gauge.gauge_independence_experiment(element, fermions)
    except gauge.NotDeltaClosed as exc:
        raise Refusal("integrand is not delta-closed",
                      [("residual", exc.residual)]) from None
    details = [(f"integral [{name}]", value)
               for name, (_, value) in zip(args.gauge, report.values)]
    details.append(("all_equal", str(report.all_equal).lower()))
    return (PASS if report.all_equal else FAIL), details


def _cmd_trace_cond(model: Model, args):
    lm = _require_lie(model)
    trace = lie.trace_condition(lm, model.module_names, model.ghost_names)
    return (PASS if trace.is_zero else FAIL), [("trace", trace)]


_COMMANDS = {
    "check-lie": _cmd_check_lie,
    "check-rep": _cmd_check_rep,
    "brst": _cmd_brst,
    "linf": _cmd_linf,
    "ce-cohomology": _cmd_ce_cohomology,
    "bv-identities": _cmd_bv_identities,
    "master": _cmd_master,
    "qme": _cmd_qme,
    "hbar-seq": _cmd_hbar_seq,
    "onshell": _cmd_onshell,
    "omega-square": _cmd_omega_square,
    "gauge-exp": _cmd_gauge_exp,
    "trace-cond": _cmd_trace_cond,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bvcalc",
                                     description="exact checks on model files")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name):
        p = sub.add_parser(name)
        p.add_argument("model", help="path to the model file")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        return p

    add("check-lie")
    add("check-rep")
    add("brst")
    p = add("linf")
    p.add_argument("--nmax", type=int, default=None)
    p = add("ce-cohomology")
    p.add_argument("--p", type=int, choices=(0, 1), default=0)
    p = add("bv-identities")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=60)
    for name in ("master", "qme", "hbar-seq"):
        p = add(name)
        p.add_argument("--action", default=None)
    p = add("onshell")
    p.add_argument("--action", default=None)
    p.add_argument("--point", action="append", default=[])
    p = add("omega-square")
    p.add_argument("--action", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=40)
    p = add("gauge-exp")
    p.add_argument("--p", required=True, help="expression name for the prefactor")
    p.add_argument("--t", default=None, help="expression name for the exponent")
    p.add_argument("--gauge", action="append", default=[],
                   help="gauge fermion expression name (repeatable)")
    p.add_argument("--boundary", action="store_true",
                   help="integrate delta of the element and expect zeros")
    add("trace-cond")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command
    try:
        model = load_model(args.model)
    except (ModelError, ParseError, OSError) as exc:
        report = Report(command, args.model, REFUSED, [("error", exc)])
        _emit(report, getattr(args, "json", False))
        return report.exit_code
    try:
        status, details = _COMMANDS[command](model, args)
        report = Report(command, args.model, status, details)
    except Refusal as exc:
        report = Report(command, args.model, REFUSED,
                        [("error", exc)] + exc.details)
    except (ModelError, ParseError, gauge.NonNormalizedDamping, ValueError) as exc:
        report = Report(command, args.model, REFUSED, [("error", exc)])
    _emit(report, args.json)
    return report.exit_code


def _emit(report: Report, as_json: bool):
    sys.stdout.write(report.to_json() if as_json else report.to_text())


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
