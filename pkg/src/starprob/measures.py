"""Probability measures on subspace events.

A measure assigns 0 to the empty subspace, 1 to the whole space, adds over
orthogonal sums, and respects the continuity bound

    p(A) <= p(B) + sqrt(1 - s(A,B))/2 + (1 - s(A,B))

which replaces monotonicity in this non-distributive setting.  Three
backings are supported: an explicit value table over a field, a pure state
``B -> s(x, B)`` induced by a single point, and a convex mixture of points.
Pure and mixed measures are defined on every subspace; tables only on their
field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import lattice as lat
from . import similarity as sim
from . import structures as core
from .errors import EventNotInField, FormatError, WeightsNotConvex
from .lattice import Subspace, similarity_to_subspace
from .sigma import SigmaStarField
from .similarity import (
    FAIL_CERTIFIED,
    INCONCLUSIVE,
    PASS,
    SamplerConfig,
    SimilarityEstimate,
    continuity_rhs,
    subspace_similarity,
)
from .structures import TOL_EQ, TOL_UNIT, Point, SPStructure, as_point, ensure_same_structure

TABLE = "table"
PURE = "pure"
MIXED = "mixed"


@dataclass
class ProbabilityMeasure:
    """One measure.  Build with :func:`pure_state`, :func:`mix` or :func:`table_measure`."""

    structure: SPStructure
    kind: str
    field: SigmaStarField | None = None
    values: tuple[float, ...] | None = None
    point: Point | None = None
    components: tuple[tuple[float, Point], ...] | None = None

    def describe(self) -> dict:
        if self.kind == TABLE:
            return {"kind": TABLE, "values": list(self.values)}
        if self.kind == PURE:
            return {"kind": PURE, "point": _point_literal(self.structure, self.point)}
        return {"kind": MIXED,
                "components": [[w, _point_literal(self.structure, x)]
                               for w, x in self.components]}


def _point_literal(st: SPStructure, x: Point):
    if st.kind == core.RAY:
        return [float(v) for v in x]
    return st.labels[int(x)]


def pure_state(st: SPStructure, x, field: SigmaStarField | None = None) -> ProbabilityMeasure:
    """The measure induced by one point: ``p(B) = s(x, B)``."""
    return ProbabilityMeasure(structure=st, kind=PURE, field=field,
                              point=as_point(st, x))


def table_measure(fld: SigmaStarField, values) -> ProbabilityMeasure:
    """A measure given by explicit per-event values over a field.

    Enforces only the pointwise constraints (range, empty -> 0, full -> 1);
    additivity and continuity are :func:`validate_measure`'s business.
    """
    st = fld.structure
    if len(values) != len(fld.events):
        raise FormatError(
            f"need one value per event ({len(fld.events)}), got {len(values)}")
    vals = tuple(float(v) for v in values)
    for i, v in enumerate(vals):
        if not -TOL_EQ <= v <= 1.0 + TOL_EQ:
            raise FormatError(f"value {v} for event {i} is outside [0, 1]")
    empty_i = fld.index_of(lat.empty(st))
    full_i = fld.index_of(lat.full(st))
    if abs(vals[empty_i]) > TOL_EQ:
        raise FormatError("the empty event must carry probability 0")
    if abs(vals[full_i] - 1.0) > TOL_EQ:
        raise FormatError("the whole space must carry probability 1")
    return ProbabilityMeasure(structure=st, kind=TABLE, field=fld, values=vals)


def mix(components) -> ProbabilityMeasure:
    """Convex combination of measures.

    Point-backed inputs flatten into one mixed measure; any table input
    forces evaluation over its field and yields a table.  A single component
    with weight one comes back unchanged.
    """
    comps = [(float(w), p) for w, p in components]
    if not comps:
        raise WeightsNotConvex("a mixture needs at least one component")
    total = sum(w for w, _ in comps)
    if any(w < -TOL_UNIT for w, _ in comps) or abs(total - 1.0) > TOL_UNIT:
        raise WeightsNotConvex(
            f"weights must be non-negative and sum to 1 (got {total!r})")
    st = comps[0][1].structure
    for _, p in comps[1:]:
        ensure_same_structure(st, p.structure)
    if len(comps) == 1:
        return comps[0][1]
    if all(p.kind in (PURE, MIXED) for _, p in comps):
        flat: list[tuple[float, Point]] = []
        for w, p in comps:
            if p.kind == PURE:
                flat.append((w, p.point))
            else:
                flat.extend((w * wi, xi) for wi, xi in p.components)
        fld = next((p.field for _, p in comps if p.field is not None), None)
        return ProbabilityMeasure(structure=st, kind=MIXED, field=fld,
                                  components=tuple(flat))
    fld = next(p.field for _, p in comps if p.kind == TABLE)
    for _, p in comps:
        if p.kind == TABLE and p.field is not fld and p.field != fld:
            raise FormatError("table components must share one field")
    vals = [sum(w * evaluate(p, event) for w, p in comps)
            for event in fld.events]
    return ProbabilityMeasure(structure=st, kind=TABLE, field=fld,
                              values=tuple(vals))


def evaluate(p: ProbabilityMeasure, event: Subspace) -> float:
    """``p(event)``; table measures require the event to be in their field."""
    ensure_same_structure(p.structure, event.structure)
    if p.kind == TABLE:
        return p.values[p.field.index_of(event)]
    if p.kind == PURE:
        return similarity_to_subspace(p.point, event)
    return sum(w * similarity_to_subspace(x, event) for w, x in p.components)


# ---------------------------------------------------------------------------
# validation


@dataclass
class MeasureCheck:
    name: str
    status: str
    witness: dict | None = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    @property
    def ok(self) -> bool:
        return self.status == PASS


@dataclass
class MeasureReport:
    checks: list[MeasureCheck]

    @property
    def overall(self) -> str:
        statuses = [c.status for c in self.checks]
        if FAIL_CERTIFIED in statuses:
            return FAIL_CERTIFIED
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    def as_dict(self) -> dict:
        return {"checks": [c.as_dict() for c in self.checks],
                "overall": self.overall}


def validate_measure(p: ProbabilityMeasure,
                     fld: SigmaStarField | None = None,
                     cfg: SamplerConfig | None = None,
                     event_samples: int = 200) -> MeasureReport:
    """Check the four measure axioms over a field (or a sampled domain).

    Normalization and the empty event are exact checks; additivity runs over
    every orthogonal pair plus greedily-extended maximal orthogonal
    families; continuity runs over every event pair with direction-aware
    verdicts, so a sampled subspace similarity can never certify a spurious
    failure.
    """
    cfg = cfg or SamplerConfig()
    st = p.structure
    fld = fld or p.field
    if fld is not None:
        events = list(fld.events)
    else:
        events = _sampled_events(st, cfg, event_samples)
    checks: list[MeasureCheck] = []

    v_empty = evaluate(p, lat.empty(st))
    checks.append(MeasureCheck(
        "empty_event_zero",
        PASS if abs(v_empty) <= TOL_EQ else FAIL_CERTIFIED,
        None if abs(v_empty) <= TOL_EQ else {"value": v_empty}))

    v_full = evaluate(p, lat.full(st))
    checks.append(MeasureCheck(
        "full_event_one",
        PASS if abs(v_full - 1.0) <= TOL_EQ else FAIL_CERTIFIED,
        None if abs(v_full - 1.0) <= TOL_EQ else {"value": v_full}))

    checks.append(_additivity_check(p, events))
    checks.append(_continuity_check(p, events, cfg))
    return MeasureReport(checks)


def _sampled_events(st: SPStructure, cfg: SamplerConfig,
                    count: int) -> list[Subspace]:
    rng = np.random.default_rng(cfg.seed)
    events = [lat.empty(st), lat.full(st)]
    if st.kind == core.RAY:
        for _ in range(count):
            k = int(rng.integers(0, st.d + 1))
            events.append(lat.from_span(
                st, core.random_frame(st.d, k, rng).T))
    else:
        for _ in range(count):
            size = int(rng.integers(0, st.n + 1))
            pts = sorted(rng.permutation(st.n)[:size].tolist())
            try:
                events.append(lat.from_points(st, pts))
            except core.FormatError:  # pragma: no cover
                continue
    return events


def _additivity_check(p: ProbabilityMeasure, events: list[Subspace]) -> MeasureCheck:
    worst = 0.0
    witness = None
    nonzero = [e for e in events if not e.is_empty]
    for i, a in enumerate(nonzero):
        for b in nonzero[i + 1:]:
            if not lat.is_orthogonal(a, b):
                continue
            try:
                combined = evaluate(p, lat.join(a, b))
            except EventNotInField:  # sampled domains may step outside
                continue
            res = abs(combined - (evaluate(p, a) + evaluate(p, b)))
            if res > worst:
                worst = res
                witness = {"events": [a.to_literal(), b.to_literal()],
                           "residual": res}
    # maximal orthogonal families via greedy extension from each start
    seen: set = set()
    for start in range(len(nonzero)):
        picked = [start]
        for j, cand in enumerate(nonzero):
            if j != start and all(lat.is_orthogonal(cand, nonzero[k])
                                  for k in picked):
                picked.append(j)
        key = tuple(sorted(picked))
        if key in seen or len(picked) < 2:
            continue
        seen.add(key)
        family = [nonzero[k] for k in picked]
        try:
            total = evaluate(p, lat.join(*family))
        except EventNotInField:
            continue
        res = abs(total - sum(evaluate(p, m) for m in family))
        if res > worst:
            worst = res
            witness = {"family_size": len(family), "residual": res}
    ok = worst <= TOL_EQ
    return MeasureCheck("orthogonal_additivity",
                        PASS if ok else FAIL_CERTIFIED,
                        witness if not ok else None)


def _continuity_check(p: ProbabilityMeasure, events: list[Subspace],
                      cfg: SamplerConfig) -> MeasureCheck:
    status = PASS
    witness = None
    for a in events:
        pa = evaluate(p, a)
        for b in events:
            if a is b:
                continue
            s_ab = subspace_similarity(a, b, cfg)
            lo, hi = continuity_rhs(evaluate(p, b), s_ab)
            if pa <= lo + TOL_EQ:
                continue
            if s_ab.is_exact:
                status = FAIL_CERTIFIED
                witness = {"events": [a.to_literal(), b.to_literal()],
                           "p_A": pa, "p_B": evaluate(p, b),
                           "similarity": s_ab.value,
                           "bound": lo}
                return MeasureCheck("continuity_bound", status, witness)
            if status == PASS:
                status = INCONCLUSIVE
                witness = {"events": [a.to_literal(), b.to_literal()],
                           "note": "sampled similarity cannot certify"}
    return MeasureCheck("continuity_bound", status,
                        witness if status != PASS else None)


def measures_equal(p: ProbabilityMeasure, q: ProbabilityMeasure,
                   fld: SigmaStarField | None = None,
                   samples: int = 1000, seed: int = 0,
                   tol: float = TOL_UNIT) -> bool:
    """Agreement within ``tol`` on a field (or on seeded subspaces)."""
    ensure_same_structure(p.structure, q.structure)
    st = p.structure
    if fld is not None:
        events = list(fld.events)
    else:
        events = _sampled_events(st, SamplerConfig(seed=seed), samples)
    return all(abs(evaluate(p, e) - evaluate(q, e)) <= tol for e in events)
