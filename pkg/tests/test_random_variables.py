"""Partial random variables: defined on one basis, silent elsewhere."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hs

from starprob import (
    SPStructure,
    check_expect_theorem,
    compatible,
    eval_at_point,
    expectation,
    from_basis,
    from_points,
    from_span,
    generate_sigma_star,
    make_rv,
    mix,
    preimage,
    pure_state,
)
from starprob.errors import (
    DomainNotTotalOnBasis,
    DuplicateValue,
    EventsNotOrthogonal,
    ValueUndefinedAtPoint,
)
from starprob.io import load_rv
from starprob.structures import as_point, random_frame


@pytest.fixture()
def pm45(ray2, fixture_dir):
    return load_rv(ray2, fixture_dir / "rv_pm45.json")


# ---------------------------------------------------------------------------
# construction rules


def test_duplicate_values_rejected(ray2):
    with pytest.raises(DuplicateValue):
        make_rv(ray2, [(1.0, from_span(ray2, [[1.0, 0.0]])),
                       (1.0, from_span(ray2, [[0.0, 1.0]]))])


def test_non_orthogonal_events_rejected(ray2):
    with pytest.raises(EventsNotOrthogonal):
        make_rv(ray2, [(1.0, from_span(ray2, [[1.0, 0.0]])),
                       (2.0, from_span(ray2, [[1.0, 1.0]]))])


def test_events_must_exhaust_the_space(ray2):
    with pytest.raises(DomainNotTotalOnBasis):
        make_rv(ray2, [(1.0, from_span(ray2, [[1.0, 0.0]]))])


def test_multidimensional_eigen_events_allowed():
    st = SPStructure.ray(3)
    plane = from_span(st, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    axis = from_span(st, [[0.0, 0.0, 1.0]])
    rv = make_rv(st, [(0.0, plane), (5.0, axis)])
    assert rv.values == (0.0, 5.0)


# ---------------------------------------------------------------------------
# partiality: defined exactly on the eigen-events


def test_defined_on_own_basis(pm45, ray2):
    plus = as_point(ray2, [1.0, 1.0])
    minus = as_point(ray2, [1.0, -1.0])
    assert eval_at_point(pm45, plus) == 1.0
    assert eval_at_point(pm45, minus) == -1.0


def test_undefined_between_eigen_events(pm45, ray2):
    """A point seeing two eigen-events partially has no value at all."""
    for raw in ([1.0, 0.0], [0.0, 1.0], [2.0, 1.0]):
        with pytest.raises(ValueUndefinedAtPoint):
            eval_at_point(pm45, as_point(ray2, raw))


def test_classical_rv_is_total(classical6, fixture_dir):
    die = load_rv(classical6, fixture_dir / "rv_die6.json")
    for i in range(6):
        assert eval_at_point(die, i) == float(i + 1)


# ---------------------------------------------------------------------------
# preimages


def test_preimage_of_single_value(pm45, ray2):
    ev = preimage(pm45, [1.0])
    assert ev.dim == 1
    inv2 = 1.0 / math.sqrt(2.0)
    np.testing.assert_allclose(np.abs(ev.frame[:, 0]), [inv2, inv2], atol=1e-12)


def test_preimage_edge_cases(pm45):
    assert preimage(pm45, [1.0, -1.0]).is_full
    assert preimage(pm45, []).is_empty
    assert preimage(pm45, [42.0]).is_empty  # value never taken


def test_preimages_of_distinct_values_are_orthogonal():
    st = SPStructure.ray(3)
    frame = random_frame(3, 3, np.random.default_rng(11))
    rv = make_rv(st, [(float(k), from_basis(st, [frame[:, k]])) for k in range(3)])
    from starprob import is_orthogonal

    for i in range(3):
        for j in range(i + 1, 3):
            assert is_orthogonal(preimage(rv, [float(i)]), preimage(rv, [float(j)]))


def test_preimage_accepts_predicate(pm45):
    ev = preimage(pm45, lambda v: v > 0)
    assert ev.dim == 1


# ---------------------------------------------------------------------------
# expectation


def test_expectation_of_pm45_under_axis_state(pm45, ray2):
    fld = generate_sigma_star(ray2, [[[1.0, 1.0]]])
    p = pure_state(ray2, [1.0, 0.0], fld)
    ex = expectation(pm45, p)
    assert ex.value == 0.0
    assert [v for v, _ in ex.contributions] == [1.0, -1.0]
    assert [w for _, w in ex.contributions] == pytest.approx([0.5, 0.5], abs=1e-12)


def test_die_expectation_is_three_and_a_half(classical6, fixture_dir):
    die = load_rv(classical6, fixture_dir / "rv_die6.json")
    fld = generate_sigma_star(classical6, [[i] for i in range(6)])
    weights = [1.0 / 6.0] * 5
    weights.append(1.0 - sum(weights))
    m = mix([(w, pure_state(classical6, i, fld)) for i, w in enumerate(weights)])
    ex = expectation(die, m)
    oracle = sum((i + 1) * w for i, w in enumerate(weights))
    assert ex.value == pytest.approx(3.5, abs=1e-15)
    assert ex.value == oracle


def test_expectation_is_affine_in_the_state(pm45, ray2):
    fld = generate_sigma_star(ray2, [[[1.0, 1.0]]])
    p = pure_state(ray2, [1.0, 0.0], fld)
    q = pure_state(ray2, [1.0, 1.0], fld)
    m = mix([(0.3, p), (0.7, q)])
    lhs = expectation(pm45, m).value
    rhs = 0.3 * expectation(pm45, p).value + 0.7 * expectation(pm45, q).value
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_pointwise_expectation_identity(ray3):
    """E under a pure state equals the similarity-weighted value sum.

    For any point x the pure-state expectation must agree with
    sum_k value_k * s(x, event_k); the residual is numerical only.
    """
    rng = np.random.default_rng(23)
    frame = random_frame(3, 3, rng)
    rv = make_rv(ray3, [
        (2.0, from_basis(ray3, [frame[:, 0], frame[:, 1]])),
        (-1.0, from_basis(ray3, [frame[:, 2]])),
    ])
    for _ in range(25):
        x = as_point(ray3, rng.standard_normal(3))
        assert abs(check_expect_theorem(rv, x)) <= 1e-9


@given(hs.integers(min_value=0, max_value=2 ** 32 - 1))
def test_expectation_identity_random_frames(seed):
    rng = np.random.default_rng(seed)
    st = SPStructure.ray(2)
    frame = random_frame(2, 2, rng)
    rv = make_rv(st, [(3.0, from_basis(st, [frame[:, 0]])),
                      (7.0, from_basis(st, [frame[:, 1]]))])
    x = as_point(st, rng.standard_normal(2))
    assert abs(check_expect_theorem(rv, x)) <= 1e-9


# ---------------------------------------------------------------------------
# compatibility


def test_compatibility(pm45, ray2, fixture_dir):
    axis_rv = load_rv(ray2, fixture_dir / "rv_axis.json")
    assert compatible(pm45, pm45)
    assert not compatible(pm45, axis_rv)  # rotated eigen-bases


def test_classical_rvs_always_compatible(classical6, fixture_dir):
    die = load_rv(classical6, fixture_dir / "rv_die6.json")
    parity = make_rv(
        classical6,
        [(0.0, from_points(classical6, [0, 2, 4])), (1.0, from_points(classical6, [1, 3, 5]))],
    )
    assert compatible(die, parity)
