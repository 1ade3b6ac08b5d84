"""The complete orthocomplemented lattice of subspaces.

A subspace is the closure of a pairwise-orthogonal point set: everything
with total similarity one against the set.  Discrete models carry subspaces
as point sets; the ray model carries them as canonical orthonormal frames
(column-pivoted, largest-residual-first, sign-canonical), so equal subspaces
have byte-identical canonical forms after rounding to 12 decimal places.
Equality is additionally backed by projector comparison.

The lattice operations are sum (least upper bound), intersection (greatest
lower bound) and orthocomplement.  The lattice is orthomodular but not
distributive; ``check_orthomodular`` and ``distributes`` exercise both laws.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from . import structures as core
from .errors import EmptySubspace, MixedStructures, NotASubspace
from .structures import (
    CANON_DECIMALS,
    SV_RTOL,
    TOL_EQ,
    Point,
    SPStructure,
    as_point,
    ensure_same_structure,
    explicit_lattice,
)


class Subspace:
    """A closed subspace of one sample space.

    Immutable.  Use :func:`from_points`, :func:`from_span`,
    :func:`from_basis`, :func:`empty` or :func:`full` to build one.
    """

    __slots__ = ("structure", "points", "basis", "frame")

    def __init__(self, structure: SPStructure, *, points=None, basis=None,
                 frame=None):
        self.structure = structure
        self.points: frozenset | None = points
        self.basis: tuple[int, ...] | None = basis
        self.frame: np.ndarray | None = frame
        if frame is not None:
            frame.flags.writeable = False

    # -- geometry ----------------------------------------------------------

    @property
    def dim(self) -> int:
        if self.frame is not None:
            return self.frame.shape[1]
        return len(self.basis)

    @property
    def is_empty(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        st = self.structure
        if st.kind == core.RAY:
            return self.dim == st.d
        return len(self.points) == st.n

    def basis_points(self) -> tuple[Point, ...]:
        """One orthogonal basis of the subspace, canonical per subspace."""
        if self.frame is not None:
            return tuple(as_point(self.structure, self.frame[:, i])
                         for i in range(self.frame.shape[1]))
        return self.basis

    def projector(self) -> np.ndarray:
        return self.frame @ self.frame.T

    # -- identity ----------------------------------------------------------

    def sort_key(self):
        if self.frame is not None:
            return (self.dim, tuple(np.round(self.frame, CANON_DECIMALS).ravel()))
        return (self.dim, tuple(sorted(self.points)))

    def canonical_key(self):
        """Hashable dedup key; ties are broken by projector comparison."""
        return self.sort_key()

    def to_literal(self):
        """JSON-ready form: point labels for discrete models, frame columns for rays."""
        st = self.structure
        if st.kind == core.CLASSICAL:
            return sorted(int(p) for p in self.points)
        if st.kind == core.EXPLICIT:
            return [st.labels[p] for p in sorted(self.points)]
        return [[float(v) for v in self.frame[:, i]]
                for i in range(self.frame.shape[1])]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if not core.same_structure(self.structure, other.structure):
            return False
        if self.points is not None:
            return self.points == other.points
        if self.dim != other.dim:
            return False
        diff = self.projector() - other.projector()
        return float(np.max(np.abs(diff))) <= TOL_EQ if diff.size else True

    __hash__ = None  # tolerance-based equality does not hash

    def __repr__(self) -> str:
        st = self.structure
        if st.kind == core.RAY:
            return f"Subspace(ray d={st.d}, dim={self.dim})"
        names = ",".join(st.labels[p] for p in sorted(self.points))
        return f"Subspace({st.kind}, {{{names}}})"


# ---------------------------------------------------------------------------
# constructors


def empty(st: SPStructure) -> Subspace:
    if st.kind == core.RAY:
        return Subspace(st, frame=np.zeros((st.d, 0)))
    return Subspace(st, points=frozenset(), basis=())


def full(st: SPStructure) -> Subspace:
    if st.kind == core.RAY:
        return Subspace(st, frame=np.eye(st.d))
    if st.kind == core.CLASSICAL:
        return Subspace(st, points=frozenset(range(st.n)),
                        basis=tuple(range(st.n)))
    return _explicit_from_carrier(st, frozenset(range(st.n)))


def from_basis(st: SPStructure, ortho) -> Subspace:
    """The closure of a pairwise-orthogonal point set."""
    pts = core.ensure_ortho_set(st, ortho)
    if st.kind == core.RAY:
        if not pts:
            return empty(st)
        return _ray_from_projector(st, sum(np.outer(p, p) for p in pts), len(pts))
    carrier = core.closure_of_ortho_set(st, pts)
    if st.kind == core.CLASSICAL:
        return Subspace(st, points=carrier, basis=tuple(sorted(carrier)))
    return _explicit_from_carrier(st, carrier)


def from_points(st: SPStructure, points: Iterable) -> Subspace:
    """The least subspace containing the given points (discrete models)."""
    if st.kind == core.RAY:
        return from_span(st, points)
    pts = frozenset(as_point(st, p) for p in points)
    if st.kind == core.CLASSICAL:
        return Subspace(st, points=pts, basis=tuple(sorted(pts)))
    lattice = explicit_lattice(st)
    carriers = [c for c in lattice["carrier_list"] if pts <= c]
    if not carriers:
        raise NotASubspace("no subspace contains the given points")
    meet_carrier = reduce(frozenset.__and__, carriers)
    return _explicit_from_carrier(st, meet_carrier)


def from_span(st: SPStructure, vectors) -> Subspace:
    """The span of arbitrary vectors (ray model); rank decided by SVD."""
    if st.kind != core.RAY:
        return from_points(st, vectors)
    rows = [np.asarray(v, dtype=float) for v in vectors]
    if not rows:
        return empty(st)
    m = np.stack(rows, axis=1)  # d x m
    if m.shape[0] != st.d:
        raise core.InvalidPoint(f"vectors must have length {st.d}")
    u, sv, _ = np.linalg.svd(m, full_matrices=False)
    if sv.size == 0 or sv[0] < core.TOL_UNIT:
        return empty(st)
    rank = int(np.sum(sv > SV_RTOL * sv[0]))
    basis = u[:, :rank]
    return _ray_from_projector(st, basis @ basis.T, rank)


def _explicit_from_carrier(st: SPStructure, carrier: frozenset) -> Subspace:
    lattice = explicit_lattice(st)
    basis = lattice["carriers"].get(carrier)
    if basis is None:
        raise NotASubspace(
            f"point set {sorted(carrier)} is not the closure of any "
            "orthogonal set")
    return Subspace(st, points=carrier, basis=basis)


def _ray_from_projector(st: SPStructure, proj: np.ndarray, rank: int) -> Subspace:
    return Subspace(st, frame=_canonical_frame(proj, rank))


def _canonical_frame(proj: np.ndarray, rank: int) -> np.ndarray:
    """Deterministic orthonormal frame of a projector.

    Picks, at each step, the standard-basis column with the largest residual
    after removing the columns already chosen, normalizes it, and fixes the
    sign so the first component above 1e-12 is positive.  The outcome depends
    only on the projector, so every construction route for the same subspace
    lands on the same frame.
    """
    d = proj.shape[0]
    cols: list[np.ndarray] = []
    for _ in range(rank):
        residual = proj.copy()
        for c in cols:
            residual -= np.outer(c, c)
        norms = np.linalg.norm(residual, axis=0)
        # round before the argmax so exact ties (axis-aligned subspaces)
        # resolve to the lowest column index instead of to float noise
        pick = int(np.argmax(np.round(norms, CANON_DECIMALS)))
        v = residual[:, pick]
        v = v / float(np.linalg.norm(v))
        for c in cols:  # one more sweep for tight orthonormality
            v = v - np.dot(c, v) * c
        v = v / float(np.linalg.norm(v))
        cols.append(core._canonical_sign(v))
    if not cols:
        return np.zeros((d, 0))
    return np.stack(cols, axis=1)


# ---------------------------------------------------------------------------
# lattice operations


def ortho_complement(a: Subspace) -> Subspace:
    """Everything orthogonal to the subspace; an involution."""
    st = a.structure
    if st.kind == core.RAY:
        proj = np.eye(st.d) - a.projector()
        return _ray_from_projector(st, proj, st.d - a.dim)
    if st.kind == core.CLASSICAL:
        rest = frozenset(range(st.n)) - a.points
        return Subspace(st, points=rest, basis=tuple(sorted(rest)))
    rest = frozenset(
        p for p in range(st.n)
        if all(st.matrix[p, q] <= TOL_EQ for q in a.points))
    return _explicit_from_carrier(st, rest)


def join(first: Subspace, *rest: Subspace) -> Subspace:
    """Sum of subspaces: the least subspace containing every operand."""
    subs = (first,) + rest
    st = first.structure
    for s in subs[1:]:
        ensure_same_structure(st, s.structure)
    if st.kind == core.RAY:
        frames = [s.frame for s in subs if s.dim]
        if not frames:
            return empty(st)
        return from_span(st, np.concatenate(frames, axis=1).T)
    union = frozenset().union(*(s.points for s in subs))
    if st.kind == core.CLASSICAL:
        return Subspace(st, points=union, basis=tuple(sorted(union)))
    lattice = explicit_lattice(st)
    carriers = [c for c in lattice["carrier_list"] if union <= c]
    if not carriers:
        raise NotASubspace("no subspace contains the union")
    return _explicit_from_carrier(st, reduce(frozenset.__and__, carriers))


def meet(first: Subspace, *rest: Subspace) -> Subspace:
    """Intersection of subspaces: the greatest subspace inside every operand."""
    subs = (first,) + rest
    st = first.structure
    for s in subs[1:]:
        ensure_same_structure(st, s.structure)
    if st.kind == core.RAY:
        # complement of the sum of complements
        return ortho_complement(join(*[ortho_complement(s) for s in subs]))
    inter = reduce(frozenset.__and__, (s.points for s in subs))
    if st.kind == core.CLASSICAL:
        return Subspace(st, points=inter, basis=tuple(sorted(inter)))
    return _explicit_from_carrier(st, inter)


def is_orthogonal(a: Subspace, b: Subspace) -> bool:
    """Every point of one orthogonal to every point of the other."""
    ensure_same_structure(a.structure, b.structure)
    st = a.structure
    if st.kind == core.RAY:
        if a.is_empty or b.is_empty:
            return True
        cross = (a.frame.T @ b.frame) ** 2
        return float(np.max(cross)) <= TOL_EQ
    return all(st.matrix[p, q] <= TOL_EQ if st.kind == core.EXPLICIT else p != q
               for p in a.points for q in b.points)


def is_subset(a: Subspace, b: Subspace) -> bool:
    ensure_same_structure(a.structure, b.structure)
    if a.points is not None:
        return a.points <= b.points
    if a.is_empty:
        return True
    residual = b.projector() @ a.frame - a.frame
    return float(np.max(np.abs(residual))) <= TOL_EQ


def similarity_to_subspace(x: Point, b: Subspace) -> float:
    """``s(x, B)`` computed through any basis of ``B`` (basis-independent)."""
    return core.similarity_to_ortho_set(b.structure, x, b.basis_points())


def project(x: Point, b: Subspace) -> Point:
    """The projection ``t(x, B)``; undefined when ``x`` is orthogonal to ``B``."""
    if b.is_empty:
        raise EmptySubspace("cannot project onto the empty subspace")
    return core.project_point(b.structure, x, b.basis_points(),
                              carrier=b.points)


# ---------------------------------------------------------------------------
# law checkers


def check_orthomodular(a: Subspace, c: Subspace) -> bool:
    """The orthomodular law ``C = A + (A' & C)`` for a nested pair ``A <= C``.

    Vacuously true when the pair is not nested; callers can screen with
    :func:`is_subset`.
    """
    if not is_subset(a, c):
        return True
    return join(a, meet(ortho_complement(a), c)) == c


def check_de_morgan(a: Subspace, b: Subspace) -> bool:
    """Both De Morgan identities, with the intersection recomputed independently.

    For the ray model the intersection on the checking side comes from the
    common-nullspace construction rather than the complement route used by
    :func:`meet`, so the two sides cannot share a wrong answer.
    """
    ensure_same_structure(a.structure, b.structure)
    st = a.structure
    if st.kind == core.RAY:
        inter_ab = _nullspace_meet(a, b)
        inter_comp = _nullspace_meet(ortho_complement(a), ortho_complement(b))
    else:
        inter_ab = meet(a, b)
        inter_comp = meet(ortho_complement(a), ortho_complement(b))
    first = ortho_complement(inter_ab) == join(ortho_complement(a),
                                               ortho_complement(b))
    second = ortho_complement(join(a, b)) == inter_comp
    return first and second


def _nullspace_meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection as the common nullspace of the two residual maps."""
    st = a.structure
    d = st.d
    stacked = np.vstack([np.eye(d) - a.projector(), np.eye(d) - b.projector()])
    _, sv, vt = np.linalg.svd(stacked)
    cutoff = max(SV_RTOL * (sv[0] if sv.size else 0.0), core.TOL_UNIT)
    null_rows = [vt[i] for i in range(d) if (i >= sv.size or sv[i] <= cutoff)]
    if not null_rows:
        return empty(st)
    return from_span(st, null_rows)


def distributes(a: Subspace, b: Subspace, c: Subspace) -> bool:
    """Whether ``a & (b + c) == (a & b) + (a & c)`` for this triple."""
    return meet(a, join(b, c)) == join(meet(a, b), meet(a, c))
