"""Subspace similarity: the vantage comparison, its infimum, and the bounds.

The headline facts pinned here:

* line pairs have the closed form s = cos^2(angle), and the sampler must
  reproduce it to 1e-3 while never undercutting it (estimates are upper
  bounds of an infimum);
* the similarity of a subspace pair is 1 exactly when they are equal;
* on discrete structures the triangle-style bound and the pointwise
  continuity bound hold exhaustively;
* on ray structures the HALF-coefficient pointwise bound

      s(z,x) <= s(z,y) + (1/2)sqrt(1 - s(x,y)) + (1 - s(x,y))

  is false.  The extremal vantage gap between two lines at angle g is
  exactly sin(g) = sqrt(1 - s(x,y)), so the bound fails whenever
  sin(g) < 1/2, by as much as 1/16.  The unit-coefficient variant
  (replace 1/2 by 1) is tight and does hold.  ``check_point_continuity``
  keeps the half-coefficient form on purpose and these tests document,
  with a pinned triple, that its residual goes negative.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hs

from starprob import (
    SPStructure,
    check_point_continuity,
    check_similarity_theorems,
    compare_leq,
    from_basis,
    from_points,
    from_span,
    ortho_complement,
    subspace_similarity,
    tau,
)
from starprob.similarity import EXACT, SAMPLED, SamplerConfig, continuity_rhs
from starprob.structures import as_point, similarity as point_sim


def ray_line(st, angle):
    return from_basis(st, [as_point(st, [math.cos(angle), math.sin(angle)])])


# ---------------------------------------------------------------------------
# the vantage comparison tau


class TestVantage:
    def test_projections_compared_when_both_defined(self, ray3):
        a = from_span(ray3, [[1.0, 0.0, 0.0]])
        b = from_span(ray3, [[0.0, 1.0, 0.0]])
        x = as_point(ray3, [1.0, 1.0, 0.0])
        # x projects to e1 in a and to e2 in b; those are orthogonal
        assert tau(x, a, b) == 0.0

    def test_orthogonal_to_one_side(self, ray3):
        a = from_span(ray3, [[1.0, 0.0, 0.0]])
        b = from_span(ray3, [[0.0, 1.0, 0.0]])
        x = as_point(ray3, [0.0, 1.0, 0.0])  # inside b, orthogonal to a
        assert tau(x, a, b) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_to_both_sides(self, ray3):
        a = from_span(ray3, [[1.0, 0.0, 0.0]])
        b = from_span(ray3, [[0.0, 1.0, 0.0]])
        x = as_point(ray3, [0.0, 0.0, 1.0])  # sees neither subspace
        assert tau(x, a, b) == 1.0

    def test_classical_vantage(self, classical4):
        a = from_points(classical4, [0, 1])
        b = from_points(classical4, [1, 2])
        assert tau(1, a, b) == 1.0  # projects to itself on both sides
        assert tau(0, a, b) == 0.0  # projects to 0 in a, orthogonal image in b


# ---------------------------------------------------------------------------
# exact shortcuts of the subspace similarity


class TestExactValues:
    def test_equal_subspaces(self, ray3):
        a = from_span(ray3, [[1.0, 2.0, 0.0], [0.0, 0.0, 1.0]])
        e = subspace_similarity(a, a)
        assert e.value == 1.0 and e.certainty == EXACT

    def test_orthogonal_subspaces(self, ray3):
        a = from_span(ray3, [[1.0, 0.0, 0.0]])
        b = from_span(ray3, [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        e = subspace_similarity(a, b)
        assert e.value == 0.0 and e.certainty == EXACT

    def test_empty_and_full(self, ray2):
        st = ray2
        a = ray_line(st, 0.3)
        from starprob import empty, full

        assert subspace_similarity(empty(st), a).value == 0.0
        assert subspace_similarity(full(st), a).value == 0.0
        assert subspace_similarity(empty(st), empty(st)).value == 1.0

    def test_line_pair_closed_form(self, ray2):
        for deg in (10.0, 30.0, 45.0, 60.0, 80.0):
            g = math.radians(deg)
            e = subspace_similarity(ray_line(ray2, 0.0), ray_line(ray2, g))
            assert e.certainty == EXACT
            assert e.value == pytest.approx(math.cos(g) ** 2, abs=1e-12)

    def test_complement_crossing_pair_is_zero(self, ray3):
        # b contains a direction orthogonal to all of a: similarity 0 exactly
        a = from_span(ray3, [[1.0, 0.0, 0.0]])
        b = from_span(ray3, [[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        e = subspace_similarity(a, b)
        assert e.value == 0.0 and e.certainty == EXACT

    def test_wheel_table(self, wheel):
        # singleton subspaces reduce to the point table
        expected = {
            ("r0", "r45"): 0.5,
            ("r0", "r90"): 0.0,
            ("r0", "r135"): 0.5,
            ("r45", "r135"): 0.0,
        }
        for (la, lb), want in expected.items():
            e = subspace_similarity(from_points(wheel, [la]), from_points(wheel, [lb]))
            assert e.certainty == EXACT
            assert e.value == want

    def test_classical_subset_pairs_enumerate(self, classical4):
        a = from_points(classical4, [0, 1])
        b = from_points(classical4, [1, 2])
        e = subspace_similarity(a, b)
        # vantage from 3 (outside both) sees both subspaces as invisible
        # only after projecting: the worst case is s = 0 from point 0
        assert e.certainty == EXACT
        assert e.value == 0.0
        assert subspace_similarity(a, a).value == 1.0


# ---------------------------------------------------------------------------
# sampled estimates


class TestSampledEstimates:
    def _planes(self):
        st = SPStructure.ray(4)
        a = from_span(st, [[1, 0, 0, 0], [0, 1, 0, 0]])
        b = from_span(st, [[1, 0, 1, 0], [0, 1, 0, 1]])
        return st, a, b

    def test_certainty_and_upper_bound(self):
        _, a, b = self._planes()
        e = subspace_similarity(a, b)
        assert e.certainty == SAMPLED
        # the true infimum here is 0 (vantage points orthogonal to the
        # shared directions exist); the estimate must stay above it
        assert 0.0 <= e.value <= 1e-6
        lo, hi = e.interval()
        assert lo == 0.0 and hi == e.value

    def test_deterministic_given_config(self):
        _, a, b = self._planes()
        e1 = subspace_similarity(a, b)
        e2 = subspace_similarity(a, b)
        assert e1.value == e2.value
        assert e1.witness == e2.witness

    def test_more_samples_never_hurt(self):
        _, a, b = self._planes()
        cfg_small = SamplerConfig(samples=2000, refine_top=10, seed=5)
        cfg_big = SamplerConfig(samples=8000, refine_top=10, seed=5)
        lo = subspace_similarity(a, b, cfg_big)
        hi = subspace_similarity(a, b, cfg_small)
        # prefix-stable sampling: the big run minimizes over a superset
        assert lo.value <= hi.value + 1e-12

    def test_symmetry_of_estimates(self):
        _, a, b = self._planes()
        assert subspace_similarity(a, b).value == pytest.approx(
            subspace_similarity(b, a).value, abs=1e-9
        )

    def test_vantage_bound_at_basis_points(self):
        st, a, b = self._planes()
        e = subspace_similarity(a, b)
        for sub in (a, b):
            for x in sub.basis_points():
                assert e.value <= tau(x, a, b) + 1e-9


# ---------------------------------------------------------------------------
# interval comparison verdicts


def test_compare_leq_verdicts():
    assert compare_leq(0.3, 0.5) == "pass"
    assert compare_leq(0.5, 0.3) == "fail-certified"
    assert compare_leq(0.5, 0.5) == "pass"


def test_compare_leq_with_estimates():
    st = SPStructure.ray(4)
    a = from_span(st, [[1, 0, 0, 0], [0, 1, 0, 0]])
    b = from_span(st, [[1, 0, 1, 0], [0, 1, 0, 1]])
    e = subspace_similarity(a, b)  # interval [0, tiny]
    assert compare_leq(e, 1.0) == "pass"
    assert compare_leq(1.0, e) == "fail-certified"
    # "is the estimate below zero" cannot be settled from an upper bound
    assert compare_leq(e, 0.0) == "inconclusive"


# ---------------------------------------------------------------------------
# theorem checks as a bundle


def test_theorem_report_on_pinned_triple():
    st = SPStructure.ray(4)
    a = from_span(st, [[1, 0, 0, 0], [0, 1, 0, 0]])
    b = from_span(st, [[1, 0, 1, 0], [0, 1, 0, 1]])
    c = from_span(st, [[0, 0, 1, 0], [0, 1, 0, 0]])
    report = check_similarity_theorems(a, b, c)
    by_law = {e.law: e.status for e in report.entries}
    assert by_law == {
        "similarity.vantage_bound": "pass",
        "similarity.identity_iff_equal": "pass",
        "similarity.triangle_bound": "pass",
    }


def test_identity_detects_equal_subspaces(ray3):
    a = from_span(ray3, [[1.0, 1.0, 0.0]])
    b = from_span(ray3, [[-2.0, -2.0, 0.0]])
    report = check_similarity_theorems(a, b, ortho_complement(a))
    entry = {e.law: e for e in report.entries}["similarity.identity_iff_equal"]
    assert entry.status == "pass"
    assert entry.detail["equal"] is True
    assert entry.detail["value"] == 1.0


# ---------------------------------------------------------------------------
# the pointwise continuity bound and its failure on rays


class TestPointContinuity:
    def test_classical_exhaustive(self, classical4):
        for x in range(4):
            for y in range(4):
                for z in range(4):
                    assert check_point_continuity(classical4, x, y, z) >= -1e-12

    def test_wheel_exhaustive(self, wheel):
        for x in range(4):
            for y in range(4):
                for z in range(4):
                    assert check_point_continuity(wheel, x, y, z) >= -1e-12

    def test_rhs_interval_is_exact_for_floats(self):
        lo, hi = continuity_rhs(0.375, 0.9375)
        assert lo == hi == 0.5625

    def test_pinned_ray_counterexample(self, ray2):
        """Two lines 14.48 degrees apart defeat the half-coefficient bound.

        With x at angle 0, y at angle g where sin(g) = 1/4, and the vantage
        z at g/2 - 45 degrees (the bisector rotated a quarter turn, which
        maximizes s(z,x) - s(z,y)):

            s(x,y) = 1 - sin^2(g) = 0.9375
            s(z,x) = 0.625,  s(z,y) = 0.375
            rhs    = 0.375 + 0.5*0.25 + 0.0625 = 0.5625 < 0.625

        so the residual is exactly -1/16, the worst case over all line
        pairs.  The maximal vantage gap equals sqrt(1 - s(x,y)) = sin(g),
        hence the failure whenever sin(g) < 1/2.
        """
        g = math.asin(0.25)
        x = as_point(ray2, [1.0, 0.0])
        y = as_point(ray2, [math.cos(g), math.sin(g)])
        z_angle = g / 2.0 - math.pi / 4.0
        z = as_point(ray2, [math.cos(z_angle), math.sin(z_angle)])

        assert point_sim(ray2, x, y) == pytest.approx(0.9375, abs=1e-12)
        assert point_sim(ray2, z, x) == pytest.approx(0.625, abs=1e-12)
        assert point_sim(ray2, z, y) == pytest.approx(0.375, abs=1e-12)
        assert check_point_continuity(ray2, x, y, z) == pytest.approx(-0.0625, abs=1e-12)

    def test_extremal_gap_matches_sine(self, ray2):
        # sup_z [s(z,x) - s(z,y)] = sin(g) for lines at angle g: check the
        # witness value at several angles against the closed form
        for deg in (5.0, 10.0, 20.0, 40.0):
            g = math.radians(deg)
            x = as_point(ray2, [1.0, 0.0])
            y = as_point(ray2, [math.cos(g), math.sin(g)])
            z_angle = g / 2.0 - math.pi / 4.0
            z = as_point(ray2, [math.cos(z_angle), math.sin(z_angle)])
            gap = point_sim(ray2, z, x) - point_sim(ray2, z, y)
            assert gap == pytest.approx(math.sin(g), abs=1e-12)

    def test_half_coefficient_safe_above_thirty_degrees(self, ray2):
        # sin(g) >= 1/2 makes rhs - lhs >= 0 for every vantage: spot-check
        # the extremal vantage at the 30-degree boundary and beyond
        for deg in (30.0, 45.0, 60.0, 90.0):
            g = math.radians(deg)
            x = as_point(ray2, [1.0, 0.0])
            y = as_point(ray2, [math.cos(g), math.sin(g)])
            z_angle = g / 2.0 - math.pi / 4.0
            z = as_point(ray2, [math.cos(z_angle), math.sin(z_angle)])
            assert check_point_continuity(ray2, x, y, z) >= -1e-12


@given(hs.integers(min_value=0, max_value=2 ** 32 - 1), hs.integers(min_value=2, max_value=3))
def test_unit_coefficient_bound_holds_on_rays(seed, d):
    """The repaired inequality s(z,x) <= s(z,y) + sqrt(1 - s(x,y)).

    This is the tight version of the pointwise continuity statement on ray
    structures; random triples never violate it.
    """
    rng = np.random.default_rng(seed)
    st = SPStructure.ray(d)
    x, y, z = (as_point(st, rng.standard_normal(d)) for _ in range(3))
    lhs = point_sim(st, z, x)
    rhs = point_sim(st, z, y) + math.sqrt(max(0.0, 1.0 - point_sim(st, x, y)))
    assert lhs <= rhs + 1e-9


@given(hs.integers(min_value=0, max_value=2 ** 32 - 1))
def test_line_similarity_symmetric_and_bounded(seed):
    rng = np.random.default_rng(seed)
    st = SPStructure.ray(3)
    a = from_basis(st, [as_point(st, rng.standard_normal(3))])
    b = from_basis(st, [as_point(st, rng.standard_normal(3))])
    e_ab = subspace_similarity(a, b)
    e_ba = subspace_similarity(b, a)
    assert e_ab.value == pytest.approx(e_ba.value, abs=1e-9)
    assert -1e-12 <= e_ab.value <= 1.0 + 1e-12
