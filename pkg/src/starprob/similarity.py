"""Similarity between subspaces.

From a vantage point ``x`` two subspaces compare as

* ``s(t(x,A), t(x,B))`` when ``x`` is orthogonal to neither,
* ``1 - s(x, B)`` when ``x`` is orthogonal to ``A`` only (and symmetrically),
* ``1`` when ``x`` is orthogonal to both,

and the subspace similarity ``s(A, B)`` is the infimum over all vantage
points.  Discrete models take the exact minimum over their finite point set.
The ray model has exact values in every case that admits one (equal
subspaces, an empty or full side, orthogonal operands, one side meeting the
other's complement, and pairs of lines, where the value is the squared
cosine of the angle); everything else falls back to a seeded sampler whose
estimate is an upper bound on the true infimum.

Because sampled values only ever bound the infimum from above, inequality
checks report ``pass`` / ``fail-certified`` / ``inconclusive`` by interval
reasoning instead of comparing point estimates blindly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import structures as core
from .lattice import (
    Subspace,
    is_orthogonal,
    meet,
    ortho_complement,
    project,
    similarity_to_subspace,
)
from .structures import TOL_EQ, Point, SPStructure, as_point, ensure_same_structure, similarity

EXACT = "exact"
SAMPLED = "upper-bound-sampled"

PASS = "pass"
FAIL_CERTIFIED = "fail-certified"
INCONCLUSIVE = "inconclusive"

_REFINE_ITERS = 200
_REFINE_DECAY = 0.7
_REFINE_TOL = 1e-12
_REFINE_STEP0 = 0.25

# Orthogonality cutoff for *sampled* vantage points, on the squared projection
# mass.  This must be far tighter than the 1e-9 point-equality tolerance: a
# cutoff of 1e-9 declares every vantage with component ~3e-5 "orthogonal" and
# the fallback 1 - s(x, B) dips below the generic value by ~6e-5 inside that
# band, which the refiner then happily descends into.  At 1e-24 the band is
# ~1e-12 wide and every value inside it sits within 2e-12 of a true vantage
# value, keeping sampled estimates upper bounds up to rounding.
_ORTH_EPS = 1e-24


@dataclass(frozen=True)
class SamplerConfig:
    """Budget for the vantage-point sampler (all fields pin determinism)."""

    samples: int = 20_000
    refine_top: int = 50
    seed: int = 0


@dataclass(frozen=True)
class SimilarityEstimate:
    """A subspace-similarity value plus how much to trust it.

    ``certainty`` is ``"exact"`` or ``"upper-bound-sampled"``; a sampled
    value never undershoots the true infimum by more than rounding noise.
    """

    value: float
    certainty: str
    samples: int = 0
    seed: int | None = None
    witness: list | None = None

    @property
    def is_exact(self) -> bool:
        return self.certainty == EXACT

    def interval(self) -> tuple[float, float]:
        """Bounds on the true value implied by this estimate."""
        if self.is_exact:
            return (self.value, self.value)
        return (0.0, self.value)

    def as_dict(self) -> dict:
        out = {"value": self.value, "certainty": self.certainty}
        if not self.is_exact:
            out["samples"] = self.samples
            out["seed"] = self.seed
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def exact(value: float, witness=None) -> SimilarityEstimate:
    return SimilarityEstimate(value=float(value), certainty=EXACT, witness=witness)


# ---------------------------------------------------------------------------
# vantage comparison


def tau(x: Point, a: Subspace, b: Subspace) -> float:
    """Compare ``a`` and ``b`` from the single vantage point ``x``."""
    ensure_same_structure(a.structure, b.structure)
    st = a.structure
    sxa = similarity_to_subspace(x, a)
    sxb = similarity_to_subspace(x, b)
    orth_a = sxa <= TOL_EQ
    orth_b = sxb <= TOL_EQ
    if orth_a and orth_b:
        return 1.0
    if orth_a:
        return 1.0 - sxb
    if orth_b:
        return 1.0 - sxa
    ta = project(x, a)
    tb = project(x, b)
    return similarity(st, ta, tb)


# ---------------------------------------------------------------------------
# subspace similarity


def subspace_similarity(a: Subspace, b: Subspace,
                        cfg: SamplerConfig | None = None) -> SimilarityEstimate:
    """``s(A, B)``: the infimum of the vantage comparison over all points.

    Exact whenever the models allow; otherwise a seeded upper-bound sample.
    Symmetric in its arguments, 1 exactly when ``A = B``.
    """
    ensure_same_structure(a.structure, b.structure)
    st = a.structure
    if a == b:
        return exact(1.0)
    if st.kind in (core.CLASSICAL, core.EXPLICIT):
        return _discrete_similarity(st, a, b)
    if a.is_empty or b.is_empty:
        # one side empty, the other not: any point of the other side gives 0
        return exact(0.0)
    if a.is_full or b.is_full:
        other = b if a.is_full else a
        wit = ortho_complement(other).basis_points()[0]
        return exact(0.0, witness=np.asarray(wit).tolist())
    if is_orthogonal(a, b):
        return exact(0.0, witness=np.asarray(a.basis_points()[0]).tolist())
    cross_a = meet(ortho_complement(a), b)
    if not cross_a.is_empty:
        return exact(0.0, witness=np.asarray(cross_a.basis_points()[0]).tolist())
    cross_b = meet(ortho_complement(b), a)
    if not cross_b.is_empty:
        return exact(0.0, witness=np.asarray(cross_b.basis_points()[0]).tolist())
    if a.dim == 1 and b.dim == 1:
        dot = float(np.dot(a.frame[:, 0], b.frame[:, 0]))
        return exact(min(1.0, dot * dot))
    return sampled_similarity(a, b, cfg or SamplerConfig())


def _discrete_similarity(st: SPStructure, a: Subspace, b: Subspace) -> SimilarityEstimate:
    best = None
    arg = None
    for x in range(st.n):
        v = tau(x, a, b)
        if best is None or v < best:
            best, arg = v, x
    return exact(best, witness=st.labels[arg])


def sampled_similarity(a: Subspace, b: Subspace,
                       cfg: SamplerConfig | None = None) -> SimilarityEstimate:
    """Upper-bound estimate of ``s(A, B)`` for the ray model.

    Draws a prefix-stable stream of uniform sphere points (so a larger
    budget with the same seed can only lower the estimate), always includes
    the frame columns of both operands as vantage candidates, then polishes
    the best few candidates by projected coordinate descent on the sphere.
    """
    cfg = cfg or SamplerConfig()
    st = a.structure
    d = st.d
    rng = np.random.default_rng(cfg.seed)
    xs = rng.standard_normal((cfg.samples, d))
    norms = np.linalg.norm(xs, axis=1)
    keep = norms > 1e-12
    xs = xs[keep] / norms[keep, None]

    anchors = [a.frame[:, i] for i in range(a.dim)]
    anchors += [b.frame[:, i] for i in range(b.dim)]
    xs = np.vstack([np.stack(anchors), xs])

    values = _tau_batch(xs, a.frame, b.frame)
    order = np.argsort(values, kind="stable")
    best_value = float(values[order[0]])
    best_x = xs[order[0]]

    for idx in order[: max(1, cfg.refine_top)]:
        v, x = _refine(xs[idx], float(values[idx]), a.frame, b.frame)
        if v < best_value:
            best_value, best_x = v, x

    return SimilarityEstimate(
        value=float(min(1.0, max(0.0, best_value))),
        certainty=SAMPLED,
        samples=cfg.samples,
        seed=cfg.seed,
        witness=as_point(st, best_x).tolist(),
    )


def _tau_batch(xs: np.ndarray, fa: np.ndarray, fb: np.ndarray) -> np.ndarray:
    """Vectorized vantage comparison for rows of ``xs`` (unit vectors)."""
    ca = xs @ fa  # components in A
    cb = xs @ fb
    sa = np.sum(ca ** 2, axis=1)
    sb = np.sum(cb ** 2, axis=1)
    orth_a = sa <= _ORTH_EPS
    orth_b = sb <= _ORTH_EPS
    generic = ~(orth_a | orth_b)

    out = np.ones(len(xs))
    out[orth_a & ~orth_b] = 1.0 - sb[orth_a & ~orth_b]
    out[orth_b & ~orth_a] = 1.0 - sa[orth_b & ~orth_a]
    if np.any(generic):
        pa = ca[generic] @ fa.T  # projections onto A
        pb = cb[generic] @ fb.T
        na = np.linalg.norm(pa, axis=1)
        nb = np.linalg.norm(pb, axis=1)
        dots = np.sum(pa * pb, axis=1) / (na * nb)
        out[generic] = dots ** 2
    return out


def _tau_single(x: np.ndarray, fa: np.ndarray, fb: np.ndarray) -> float:
    ca = x @ fa
    cb = x @ fb
    sa = float(np.sum(ca ** 2))
    sb = float(np.sum(cb ** 2))
    if sa <= _ORTH_EPS and sb <= _ORTH_EPS:
        return 1.0
    if sa <= _ORTH_EPS:
        return 1.0 - sb
    if sb <= _ORTH_EPS:
        return 1.0 - sa
    pa = fa @ ca
    pb = fb @ cb
    dot = float(np.dot(pa, pb) / (np.linalg.norm(pa) * np.linalg.norm(pb)))
    return dot * dot


def _refine(x0: np.ndarray, v0: float, fa: np.ndarray,
            fb: np.ndarray) -> tuple[float, np.ndarray]:
    """Coordinate descent on the sphere; deterministic, only ever improves."""
    x = x0.copy()
    best = v0
    step = _REFINE_STEP0
    d = len(x)
    for _ in range(_REFINE_ITERS):
        gained = 0.0
        for j in range(d):
            for sign in (1.0, -1.0):
                cand = x.copy()
                cand[j] += sign * step
                norm = float(np.linalg.norm(cand))
                if norm < 1e-12:
                    continue
                cand /= norm
                v = _tau_single(cand, fa, fb)
                if v < best:
                    gained += best - v
                    best, x = v, cand
        if gained < _REFINE_TOL:
            break
        step *= _REFINE_DECAY
    return best, x


# ---------------------------------------------------------------------------
# inequality checking with direction-aware certainty


def compare_leq(lhs: SimilarityEstimate | float,
                rhs: SimilarityEstimate | float,
                tol: float = TOL_EQ) -> str:
    """Verdict for ``lhs <= rhs`` given what each side's interval allows."""
    llo, lhi = _interval(lhs)
    rlo, rhi = _interval(rhs)
    if lhi <= rlo + tol:
        return PASS
    if llo > rhi + tol:
        return FAIL_CERTIFIED
    # exact-vs-exact comparisons never stay undecided
    if _is_exact(lhs) and _is_exact(rhs):
        return PASS if llo <= rhi + tol else FAIL_CERTIFIED
    return INCONCLUSIVE


def _interval(v) -> tuple[float, float]:
    if isinstance(v, SimilarityEstimate):
        return v.interval()
    return (float(v), float(v))


def _is_exact(v) -> bool:
    return not isinstance(v, SimilarityEstimate) or v.is_exact


def continuity_rhs(base: float, link: SimilarityEstimate | float) -> tuple[float, float]:
    """Interval for ``base + sqrt(1 - s)/2 + (1 - s)`` over the link interval.

    The bound loosens as the link similarity drops, so the lower end of the
    result uses the upper end of the link and vice versa.
    """
    lo, hi = _interval(link)
    lo_val = base + 0.5 * math.sqrt(max(0.0, 1.0 - hi)) + (1.0 - hi)
    hi_val = base + 0.5 * math.sqrt(max(0.0, 1.0 - lo)) + (1.0 - lo)
    return (lo_val, hi_val)


# ---------------------------------------------------------------------------
# theorem checks


@dataclass
class TheoremCheck:
    law: str
    status: str
    detail: dict

    def as_dict(self) -> dict:
        return {"law": self.law, "status": self.status, "detail": self.detail}


@dataclass
class SimilarityTheoremsReport:
    entries: list[TheoremCheck]

    @property
    def overall(self) -> str:
        statuses = [e.status for e in self.entries]
        if FAIL_CERTIFIED in statuses:
            return FAIL_CERTIFIED
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    def as_dict(self) -> dict:
        return {"entries": [e.as_dict() for e in self.entries],
                "overall": self.overall}


def check_similarity_theorems(a: Subspace, b: Subspace, c: Subspace,
                              cfg: SamplerConfig | None = None) -> SimilarityTheoremsReport:
    """Exercise the subspace-similarity laws on one triple.

    Checks, with direction-aware verdicts: the vantage bound (a member of
    ``A`` can only over-estimate ``s(A, B)``), the identity characterization
    (``s(A, B) = 1`` exactly for equal subspaces), and the triangle-like
    continuity bound ``s(A,B) <= s(A,C) + sqrt(1 - s(B,C))/2 + (1 - s(B,C))``.
    """
    cfg = cfg or SamplerConfig()
    entries: list[TheoremCheck] = []

    s_ab = subspace_similarity(a, b, cfg)
    s_ac = subspace_similarity(a, c, cfg)
    s_bc = subspace_similarity(b, c, cfg)

    # membership vantage bound
    worst = PASS
    detail: dict = {"pairs": []}
    for x in a.basis_points():
        sxb = similarity_to_subspace(x, b)
        verdict = compare_leq(s_ab, sxb)
        detail["pairs"].append({"s_xB": sxb, "verdict": verdict})
        worst = _worse(worst, verdict)
    entries.append(TheoremCheck("similarity.vantage_bound", worst, detail))

    # identity characterization
    equal = a == b
    lo, hi = s_ab.interval()
    if equal:
        status = PASS if abs(s_ab.value - 1.0) <= TOL_EQ else FAIL_CERTIFIED
    elif hi < 1.0 - TOL_EQ:
        status = PASS
    elif s_ab.is_exact:
        status = FAIL_CERTIFIED  # distinct subspaces with similarity 1
    else:
        status = INCONCLUSIVE
    entries.append(TheoremCheck(
        "similarity.identity_iff_equal", status,
        {"equal": equal, "value": s_ab.value, "certainty": s_ab.certainty}))

    # triangle-like bound through C
    rhs = continuity_rhs(s_ac.interval()[0], s_bc)
    rhs_hi = continuity_rhs(s_ac.interval()[1], s_bc)[1]
    llo, lhi = s_ab.interval()
    if lhi <= rhs[0] + TOL_EQ:
        status = PASS
    elif llo > rhs_hi + TOL_EQ:
        status = FAIL_CERTIFIED
    elif s_ab.is_exact and s_ac.is_exact and s_bc.is_exact:
        status = PASS if s_ab.value <= rhs_hi + TOL_EQ else FAIL_CERTIFIED
    else:
        status = INCONCLUSIVE
    entries.append(TheoremCheck(
        "similarity.triangle_bound", status,
        {"s_AB": s_ab.value, "s_AC": s_ac.value, "s_BC": s_bc.value,
         "rhs_interval": list(rhs)}))

    return SimilarityTheoremsReport(entries)


def _worse(a: str, b: str) -> str:
    rank = {PASS: 0, INCONCLUSIVE: 1, FAIL_CERTIFIED: 2}
    return a if rank[a] >= rank[b] else b


# ---------------------------------------------------------------------------
# pointwise continuity


def check_point_continuity(st: SPStructure, x: Point, y: Point, z: Point) -> float:
    """Residual of the pointwise continuity bound; non-negative when it holds.

    The bound says an observer ``z`` rates ``x`` at most as far as it rates
    ``y`` plus a penalty that vanishes as ``x`` and ``y`` merge:
    ``s(z,x) <= s(z,y) + sqrt(1 - s(x,y))/2 + (1 - s(x,y))``.
    """
    sxy = similarity(st, x, y)
    lhs = similarity(st, z, x)
    rhs = similarity(st, z, y) + 0.5 * math.sqrt(max(0.0, 1.0 - sxy)) + (1.0 - sxy)
    return rhs - lhs
