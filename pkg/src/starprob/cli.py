"""Command-line front end.

Subcommands mirror the library layers: ``validate`` (structure axioms),
``lattice`` (subspace algebra), ``sim`` (similarity), ``sigma`` (event
fields), ``prob`` (measures), ``rv`` (random variables) and ``suite``
(seeded law suites).

Exit codes: 0 all checks passed (or a value was computed), 1 at least one
check failed with a witness, 2 bad usage or malformed input, 3 nothing
failed but some result rests on sampling and could not be certified.

``--json`` reports are deterministic: sorted keys, two-space indent, no
timestamps or timings, so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import io as spio
from . import lattice as lat
from . import measures as meas
from . import randomvars as rv_mod
from . import sigma as sig
from . import similarity as sim
from . import structures as core
from .axioms import SAMPLED_PASS, ValidationBudget, validate_sp_axioms
from .errors import ClosureCapExceeded, FormatError, SPError, ValueUndefinedAtPoint
from .suites import SUITE_IDS, DEFAULT_SCALE, run_property_suite

OK = 0
CHECK_FAILED = 1
USAGE = 2
UNCERTIFIED = 3


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return OK if not exc.code else USAGE
    try:
        return args.handler(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except ClosureCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except SPError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return USAGE


def run_command(argv) -> int:
    """Programmatic entry point used by the tests."""
    return main(list(argv))


def _emit(args, payload: dict, lines, code: int) -> int:
    if getattr(args, "json", False):
        payload["report_version"] = 1
        print(spio.dump_json(payload))
    else:
        for line in lines:
            print(line)
    return code


def _literal(raw: str):
    """Inline JSON if it parses, otherwise the raw string (a point label)."""
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def _point(st, raw: str):
    return spio.parse_point(st, _literal(raw))


def _subspace(st, raw: str):
    lit = _literal(raw)
    if isinstance(lit, str):
        lit = [lit]
    return spio.parse_subspace(st, lit)


def _sampler(args) -> sim.SamplerConfig:
    return sim.SamplerConfig(samples=args.samples, refine_top=args.refine_top,
                             seed=args.seed)


def _add_sampler_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=20_000,
                   help="vantage samples for sampled similarities")
    p.add_argument("--refine-top", type=int, default=50,
                   help="candidates polished by local descent")
    p.add_argument("--seed", type=int, default=0, help="sampler seed")


def _add_json_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true",
                   help="emit a deterministic JSON report")


# ---------------------------------------------------------------------------
# validate


def _cmd_validate(args) -> int:
    st = spio.load_structure(args.structure)
    budget = ValidationBudget(samples=args.samples, seed=args.seed,
                              sample_large_explicit=args.sample_large)
    report = validate_sp_axioms(st, budget)
    payload = {"command": "validate",
               "structure": spio.structure_to_dict(st),
               "report": report.as_dict()}
    lines = []
    for name, verdict in report.verdicts.items():
        lines.append(f"{name}: {verdict.status}")
        if verdict.witness is not None:
            lines.append(f"  witness: {json.dumps(verdict.witness, sort_keys=True)}")
    lines.append(f"overall: {report.overall}")
    if report.overall == "fail":
        code = CHECK_FAILED
    elif report.overall == SAMPLED_PASS:
        code = UNCERTIFIED
    else:
        code = OK
    return _emit(args, payload, lines, code)


# ---------------------------------------------------------------------------
# lattice


def _cmd_lattice(args) -> int:
    st = spio.load_structure(args.structure)
    operands = [_subspace(st, raw) for raw in args.subspace]
    op = args.op
    if op == "sum":
        result = lat.join(*operands)
    elif op == "meet":
        result = lat.meet(*operands)
    elif op == "complement":
        result = lat.ortho_complement(operands[0])
    elif op == "orthomodular":
        inner, outer = operands
        nested = lat.is_subset(inner, outer)
        holds = lat.check_orthomodular(inner, outer)
        payload = {"command": "lattice", "op": op, "nested": nested,
                   "holds": holds}
        lines = [f"nested: {str(nested).lower()}",
                 f"orthomodular: {'pass' if holds else 'fail'}"]
        return _emit(args, payload, lines, OK if holds else CHECK_FAILED)
    else:  # demorgan
        holds = lat.check_de_morgan(operands[0], operands[1])
        payload = {"command": "lattice", "op": op, "holds": holds}
        lines = [f"de-morgan: {'pass' if holds else 'fail'}"]
        return _emit(args, payload, lines, OK if holds else CHECK_FAILED)
    payload = {"command": "lattice", "op": op, "dim": result.dim,
               "subspace": result.to_literal()}
    lines = [f"dim: {result.dim}", f"subspace: {json.dumps(result.to_literal())}"]
    return _emit(args, payload, lines, OK)


# ---------------------------------------------------------------------------
# sim


def _cmd_sim_tau(args) -> int:
    st = spio.load_structure(args.structure)
    x = _point(st, args.point)
    a = _subspace(st, args.a)
    b = _subspace(st, args.b)
    value = sim.tau(x, a, b)
    payload = {"command": "sim.tau", "value": value}
    return _emit(args, payload, [f"tau: {value!r}"], OK)


def _cmd_sim_subspace(args) -> int:
    st = spio.load_structure(args.structure)
    a = _subspace(st, args.a)
    b = _subspace(st, args.b)
    est = sim.subspace_similarity(a, b, _sampler(args))
    payload = {"command": "sim.subspace", "estimate": est.as_dict()}
    lines = [f"similarity: {est.value!r} ({est.certainty})"]
    if est.witness is not None:
        lines.append(f"witness: {json.dumps(est.witness)}")
    return _emit(args, payload, lines, OK)


def _cmd_sim_continuity(args) -> int:
    st = spio.load_structure(args.structure)
    x = _point(st, args.x)
    y = _point(st, args.y)
    z = _point(st, args.z)
    residual = sim.check_point_continuity(st, x, y, z)
    holds = residual >= -core.TOL_EQ
    payload = {"command": "sim.continuity", "residual": residual,
               "holds": holds}
    lines = [f"residual: {residual!r}",
             f"continuity: {'pass' if holds else 'fail'}"]
    return _emit(args, payload, lines, OK if holds else CHECK_FAILED)


# ---------------------------------------------------------------------------
# sigma


def _cmd_sigma(args) -> int:
    st = spio.load_structure(args.structure)
    fld = spio.load_field(st, args.field, cap=args.cap)
    op = args.op
    if op == "generate":
        payload = {"command": "sigma.generate", "size": len(fld.events),
                   "field": spio.field_to_dict(fld),
                   "rounds": fld.closure_meta.get("rounds")}
        lines = [f"events: {len(fld.events)}"]
        lines += [f"  {json.dumps(e)}" for e in fld.to_literals()]
        return _emit(args, payload, lines, OK)
    if op == "validate":
        report = sig.validate_sigma_star(fld)
        payload = {"command": "sigma.validate", "size": len(fld.events),
                   "report": report.as_dict()}
        lines = [f"{c.name}: {'pass' if c.ok else 'fail'}"
                 for c in report.checks]
        lines.append(f"overall: {'pass' if report.ok else 'fail'}")
        return _emit(args, payload, lines, OK if report.ok else CHECK_FAILED)
    if op == "atoms":
        ats = sig.atoms(fld)
        decomp = {}
        all_found = True
        for i, event in enumerate(fld.events):
            d = sig.atomic_decomposition(fld, event, ats)
            decomp[str(i)] = d
            all_found = all_found and d is not None
        payload = {"command": "sigma.atoms",
                   "atoms": [a.to_literal() for a in ats],
                   "decompositions": decomp}
        lines = [f"atoms: {len(ats)}"]
        lines += [f"  {json.dumps(a.to_literal())}" for a in ats]
        lines.append(f"decompositions: {'complete' if all_found else 'incomplete'}")
        return _emit(args, payload, lines, OK if all_found else CHECK_FAILED)
    # boolean
    witness = sig.distributivity_witness(fld)
    payload = {"command": "sigma.boolean", "boolean": witness is None,
               "witness": list(witness) if witness else None}
    lines = [f"boolean: {str(witness is None).lower()}"]
    if witness is not None:
        lines.append(f"witness triple: {list(witness)}")
    return _emit(args, payload, lines, OK)


# ---------------------------------------------------------------------------
# prob


def _cmd_prob(args) -> int:
    st = spio.load_structure(args.structure)
    op = args.op
    if op == "pure":
        p = meas.pure_state(st, _point(st, args.point))
        event = _subspace(st, args.event)
        value = meas.evaluate(p, event)
        payload = {"command": "prob.pure", "value": value}
        return _emit(args, payload, [f"probability: {value!r}"], OK)
    if op == "evaluate":
        p = spio.load_measure(st, args.measure)
        event = _subspace(st, args.event)
        value = meas.evaluate(p, event)
        payload = {"command": "prob.evaluate", "value": value,
                   "measure": p.describe()}
        return _emit(args, payload, [f"probability: {value!r}"], OK)
    if op == "mix":
        parts = []
        for w, path in args.component:
            parts.append((float(w), spio.load_measure(st, path)))
        p = meas.mix(parts)
        payload = {"command": "prob.mix", "measure": p.describe()}
        return _emit(args, payload,
                     [json.dumps(p.describe(), sort_keys=True)], OK)
    if op == "validate":
        p = spio.load_measure(st, args.measure)
        fld = spio.load_field(st, args.field) if args.field else None
        report = meas.validate_measure(p, fld, _sampler(args),
                                       event_samples=args.event_samples)
        payload = {"command": "prob.validate", "report": report.as_dict(),
                   "measure": p.describe()}
        lines = []
        for c in report.checks:
            lines.append(f"{c.name}: {c.status}")
            if c.witness is not None:
                lines.append(f"  witness: {json.dumps(c.witness, sort_keys=True, default=str)}")
        lines.append(f"overall: {report.overall}")
        if report.overall == sim.FAIL_CERTIFIED:
            code = CHECK_FAILED
        elif report.overall == sim.INCONCLUSIVE:
            code = UNCERTIFIED
        else:
            code = OK
        return _emit(args, payload, lines, code)
    # equal
    p = spio.load_measure(st, args.measure)
    q = spio.load_measure(st, args.other)
    fld = spio.load_field(st, args.field) if args.field else None
    same = meas.measures_equal(p, q, fld, samples=args.event_samples,
                               seed=args.seed)
    payload = {"command": "prob.equal", "equal": same}
    lines = [f"equal: {str(same).lower()}"]
    return _emit(args, payload, lines, OK if same else CHECK_FAILED)


# ---------------------------------------------------------------------------
# rv


def _cmd_rv(args) -> int:
    st = spio.load_structure(args.structure)
    op = args.op
    x_rv = spio.load_rv(st, args.rv)
    if op == "make":
        payload = {"command": "rv.make",
                   "values": list(x_rv.values),
                   "events": [e.to_literal() for e in x_rv.events]}
        lines = [f"outcomes: {len(x_rv.outcomes)}"]
        lines += [f"  {v!r} on {json.dumps(e.to_literal())}"
                  for v, e in x_rv.outcomes]
        return _emit(args, payload, lines, OK)
    if op == "eval":
        x = _point(st, args.point)
        try:
            value = rv_mod.eval_at_point(x_rv, x)
            payload = {"command": "rv.eval", "defined": True, "value": value}
            lines = [f"value: {value!r}"]
        except ValueUndefinedAtPoint:
            payload = {"command": "rv.eval", "defined": False, "value": None}
            lines = ["value: undefined at this point"]
        return _emit(args, payload, lines, OK)
    if op == "preimage":
        wanted = [float(v) for v in args.values.split(",")] if args.values else []
        result = rv_mod.preimage(x_rv, wanted)
        payload = {"command": "rv.preimage", "dim": result.dim,
                   "subspace": result.to_literal()}
        lines = [f"dim: {result.dim}",
                 f"subspace: {json.dumps(result.to_literal())}"]
        return _emit(args, payload, lines, OK)
    if op == "expect":
        p = spio.load_measure(st, args.measure)
        exp = rv_mod.expectation(x_rv, p)
        payload = {"command": "rv.expect", "value": exp.value,
                   "contributions": [[v, pr] for v, pr in exp.contributions]}
        lines = [f"expectation: {exp.value!r}"]
        return _emit(args, payload, lines, OK)
    if op == "theorem":
        x = _point(st, args.point)
        residual = rv_mod.check_expect_theorem(x_rv, x)
        holds = abs(residual) <= core.TOL_EQ
        payload = {"command": "rv.theorem", "residual": residual,
                   "holds": holds}
        lines = [f"residual: {residual!r}",
                 f"expectation identity: {'pass' if holds else 'fail'}"]
        return _emit(args, payload, lines, OK if holds else CHECK_FAILED)
    # compatible
    y_rv = spio.load_rv(st, args.other)
    same = rv_mod.compatible(x_rv, y_rv)
    payload = {"command": "rv.compatible", "compatible": same}
    return _emit(args, payload, [f"compatible: {str(same).lower()}"], OK)


# ---------------------------------------------------------------------------
# suite


def _cmd_suite(args) -> int:
    report = run_property_suite(args.suite, seed=args.seed, scale=args.scale)
    payload = {"command": "suite", "report": report.as_dict()}
    lines = []
    for check in report.checks:
        lines.append(
            f"{check.law}: {check.status} "
            f"(trials={check.trials}, failures={check.failures}, "
            f"max_residual={check.max_residual:.3e})")
        for w in check.witnesses:
            lines.append(f"  witness: {json.dumps(w, sort_keys=True, default=str)}")
    lines.append(f"overall: {report.overall}")
    lines.append(f"wall time: {report.wall_time:.2f}s")
    if report.overall == "fail":
        code = CHECK_FAILED
    elif report.overall == "inconclusive":
        code = UNCERTIFIED
    else:
        code = OK
    return _emit(args, payload, lines, code)


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starprob",
        description="Similarity-projection sample spaces: validation, "
                    "subspace algebra, similarity, event fields, measures, "
                    "random variables.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="check the similarity axioms")
    p.add_argument("structure", help="structure JSON file")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample-large", action="store_true",
                   help="sample tabulated models too large to enumerate")
    _add_json_flag(p)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("lattice", help="subspace algebra")
    p.add_argument("op", choices=["sum", "meet", "complement",
                                  "orthomodular", "demorgan"])
    p.add_argument("structure")
    p.add_argument("subspace", nargs="+", help="subspace literals (JSON)")
    _add_json_flag(p)
    p.set_defaults(handler=_cmd_lattice)

    p = sub.add_parser("sim", help="similarity between points and subspaces")
    sim_sub = p.add_subparsers(dest="sim_op", required=True)
    q = sim_sub.add_parser("tau", help="single-vantage comparison")
    q.add_argument("structure")
    q.add_argument("point")
    q.add_argument("a")
    q.add_argument("b")
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_sim_tau)
    q = sim_sub.add_parser("subspace", help="similarity of two subspaces")
    q.add_argument("structure")
    q.add_argument("a")
    q.add_argument("b")
    _add_sampler_flags(q)
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_sim_subspace)
    q = sim_sub.add_parser("continuity", help="pointwise continuity bound")
    q.add_argument("structure")
    q.add_argument("x")
    q.add_argument("y")
    q.add_argument("z")
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_sim_continuity)

    p = sub.add_parser("sigma", help="event fields")
    p.add_argument("op", choices=["generate", "validate", "atoms", "boolean"])
    p.add_argument("structure")
    p.add_argument("field", help="field JSON file (generators)")
    p.add_argument("--cap", type=int, default=None,
                   help="closure size cap (default 4096)")
    _add_json_flag(p)
    p.set_defaults(handler=_cmd_sigma)

    p = sub.add_parser("prob", help="probability measures")
    prob_sub = p.add_subparsers(dest="op", required=True)
    q = prob_sub.add_parser("pure", help="evaluate a point state")
    q.add_argument("structure")
    q.add_argument("point")
    q.add_argument("event")
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_prob, op="pure")
    q = prob_sub.add_parser("evaluate", help="evaluate a measure file")
    q.add_argument("structure")
    q.add_argument("measure")
    q.add_argument("event")
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_prob, op="evaluate")
    q = prob_sub.add_parser("mix", help="convex mixture of measures")
    q.add_argument("structure")
    q.add_argument("--component", nargs=2, metavar=("WEIGHT", "MEASURE"),
                   action="append", required=True)
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_prob, op="mix")
    q = prob_sub.add_parser("validate", help="check the measure axioms")
    q.add_argument("structure")
    q.add_argument("measure")
    q.add_argument("--field", default=None)
    q.add_argument("--event-samples", type=int, default=200)
    _add_sampler_flags(q)
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_prob, op="validate")
    q = prob_sub.add_parser("equal", help="compare two measures")
    q.add_argument("structure")
    q.add_argument("measure")
    q.add_argument("other")
    q.add_argument("--field", default=None)
    q.add_argument("--event-samples", type=int, default=200)
    q.add_argument("--seed", type=int, default=0)
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_prob, op="equal")

    p = sub.add_parser("rv", help="partial real random variables")
    rv_sub = p.add_subparsers(dest="op", required=True)
    q = rv_sub.add_parser("make", help="load and echo a random variable")
    q.add_argument("structure")
    q.add_argument("rv")
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_rv, op="make")
    q = rv_sub.add_parser("eval", help="evaluate at a point (may be undefined)")
    q.add_argument("structure")
    q.add_argument("rv")
    q.add_argument("point")
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_rv, op="eval")
    q = rv_sub.add_parser("preimage", help="event of a value set")
    q.add_argument("structure")
    q.add_argument("rv")
    q.add_argument("--values", default="", help="comma-separated values")
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_rv, op="preimage")
    q = rv_sub.add_parser("expect", help="expectation under a measure")
    q.add_argument("structure")
    q.add_argument("rv")
    q.add_argument("measure")
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_rv, op="expect")
    q = rv_sub.add_parser("theorem", help="expectation identity at a point")
    q.add_argument("structure")
    q.add_argument("rv")
    q.add_argument("point")
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_rv, op="theorem")
    q = rv_sub.add_parser("compatible", help="joint refinement test")
    q.add_argument("structure")
    q.add_argument("rv")
    q.add_argument("other")
    _add_json_flag(q)
    q.set_defaults(handler=_cmd_rv, op="compatible")

    p = sub.add_parser("suite", help="seeded property suites")
    p.add_argument("suite", choices=list(SUITE_IDS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=int, default=DEFAULT_SCALE)
    _add_json_flag(p)
    p.set_defaults(handler=_cmd_suite)

    return parser


if __name__ == "__main__":
    sys.exit(main())
