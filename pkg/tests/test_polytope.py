"""Polyhedral kernel: elimination, pruning, containment, vertices."""

import itertools
import random

import pytest

from dicregion.errors import InfeasibleRegionError, UnboundedDirectionError
from dicregion.polytope import (
    LinearInequality,
    Region,
    canonicalize,
    contains_point,
    fm_eliminate,
    is_subset,
    load_region,
    nonneg_inequalities,
    prune_redundant,
    region_from_dict,
    region_to_dict,
    regions_equal,
    save_region,
    support_value,
    vertices,
)


def R(dim, rows, labels=()):
    return Region(dim, tuple(LinearInequality(tuple(c), r) for c, r in rows), labels)


UNIT_SIMPLEX = R(2, [((1, 1), 1.0), ((-1, 0), 0.0), ((0, -1), 0.0)])
UNIT_SQUARE = R(2, [((1, 0), 1.0), ((0, 1), 1.0), ((-1, 0), 0.0), ((0, -1), 0.0)])


def test_eliminate_single_pair():
    region = R(2, [((1, 1), 3.0), ((0, -1), 0.0), ((0, 1), 2.0)])
    out = fm_eliminate(region, 1)
    assert out.dim == 1
    assert [(q.coeffs, q.rhs) for q in out.inequalities] == [((1,), 3.0)]


def test_eliminate_carries_unrelated_rows():
    region = R(2, [((1, 0), 1.0)])
    out = fm_eliminate(region, 1)
    assert [(q.coeffs, q.rhs) for q in out.inequalities] == [((1,), 1.0)]


def test_eliminate_detects_infeasibility():
    region = R(1, [((1,), -1.0), ((-1,), 0.0)])  # x <= -1 and x >= 0
    with pytest.raises(InfeasibleRegionError):
        fm_eliminate(region, 0)


def test_eliminate_by_label():
    region = R(2, [((1, 1), 3.0), ((0, -1), 0.0)], labels=("u", "v"))
    out = fm_eliminate(region, "v")
    assert out.labels == ("u",)


def test_prune_dominated_single_bounds():
    region = R(
        2,
        [((1, 0), 1.0), ((0, 1), 1.0), ((1, 1), 1.0), ((-1, 0), 0.0), ((0, -1), 0.0)],
    )
    pruned = prune_redundant(region)
    kept = {(q.coeffs, q.rhs) for q in pruned.inequalities}
    assert kept == {((1, 1), 1.0), ((-1, 0), 0.0), ((0, -1), 0.0)}


def test_prune_same_lhs_keeps_tightest():
    region = R(1, [((1,), 1.0), ((1,), 2.0), ((-1,), 0.0)])
    pruned = prune_redundant(region)
    assert {(q.coeffs, q.rhs) for q in pruned.inequalities} == {((1,), 1.0), ((-1,), 0.0)}


def test_prune_preserves_feasible_set():
    rng = random.Random(3)
    for _ in range(20):
        dim = rng.randint(1, 3)
        rows = [
            (tuple(rng.randint(-2, 3) for _ in range(dim)), float(rng.randint(0, 6)))
            for _ in range(rng.randint(2, 8))
        ]
        rows += [(q.coeffs, q.rhs) for q in nonneg_inequalities(dim)]
        region = R(dim, rows)
        pruned = prune_redundant(region)
        assert regions_equal(region, pruned, 1e-9)
        assert len(pruned.inequalities) <= len(region.inequalities)


def test_is_subset_examples():
    assert is_subset(UNIT_SIMPLEX, UNIT_SIMPLEX)
    assert is_subset(UNIT_SIMPLEX, UNIT_SQUARE)
    assert not is_subset(UNIT_SQUARE, UNIT_SIMPLEX)  # witness (1, 1)


def test_regions_equal_examples():
    assert regions_equal(UNIT_SIMPLEX, UNIT_SIMPLEX)
    redundant = R(
        2,
        [((1, 1), 1.0), ((2, 2), 2.0), ((1, 0), 1.0), ((-1, 0), 0.0), ((0, -1), 0.0)],
    )
    assert regions_equal(UNIT_SIMPLEX, redundant)
    assert not regions_equal(UNIT_SIMPLEX, UNIT_SQUARE)


def test_support_values_on_simplex():
    assert support_value(UNIT_SIMPLEX, (1.0, 1.0)) == pytest.approx(1.0, abs=1e-9)
    assert support_value(UNIT_SIMPLEX, (1.0, 0.0)) == pytest.approx(1.0, abs=1e-9)
    assert support_value(UNIT_SIMPLEX, (0.0, 0.0)) == pytest.approx(0.0, abs=1e-9)


def test_support_value_unbounded_signaled():
    halfplane = R(2, [((-1, 0), 0.0), ((0, -1), 0.0)])
    with pytest.raises(UnboundedDirectionError):
        support_value(halfplane, (1.0, 0.0))


def assert_points(actual, expected, tol=1e-9):
    assert len(actual) == len(expected)
    for p, q in zip(actual, expected):
        assert max(abs(a - b) for a, b in zip(p, q)) <= tol, (actual, expected)


def test_vertices_simplex():
    assert_points(vertices(UNIT_SIMPLEX), [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)])


def test_vertices_square():
    assert_points(
        vertices(UNIT_SQUARE), [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
    )


def test_vertices_unbounded_names_direction():
    region = R(2, [((1, 0), 1.0), ((-1, 0), 0.0), ((0, -1), 0.0)], labels=("R1", "R2"))
    with pytest.raises(UnboundedDirectionError, match=r"\+R2"):
        vertices(region)


def test_vertices_dim_guard():
    region = R(4, [(q.coeffs, q.rhs) for q in nonneg_inequalities(4)])
    with pytest.raises(ValueError, match="dim <= 3"):
        vertices(region)


def test_vertices_degenerate_point():
    point = R(2, [((1, 0), 0.0), ((-1, 0), 0.0), ((0, 1), 0.0), ((0, -1), 0.0)])
    assert vertices(point) == [(0.0, 0.0)]


def interval_feasible(region, idx, partial, tol=1e-9):
    """Oracle: is there a value t such that (partial with t at idx) is feasible?

    Exact for a single eliminated variable: each inequality bounds t by an
    interval; feasibility is a nonempty intersection.
    """
    lo, hi = -float("inf"), float("inf")
    for ineq in region.inequalities:
        a = ineq.coeffs[idx]
        rest = sum(c * x for k, (c, x) in enumerate(zip(ineq.coeffs, partial)) if k != idx)
        slack = ineq.rhs - rest
        if a > 0:
            hi = min(hi, slack / a)
        elif a < 0:
            lo = max(lo, slack / a)
        elif slack < -tol:
            return False
    return lo <= hi + tol


def test_projection_soundness_against_interval_oracle():
    rng = random.Random(4)
    for _ in range(40):
        dim = rng.randint(2, 4)
        rows = [
            (tuple(rng.randint(-3, 3) for _ in range(dim)), float(rng.randint(-5, 10)))
            for _ in range(rng.randint(2, 8))
        ]
        region = R(dim, rows)
        idx = rng.randrange(dim)
        try:
            projected = fm_eliminate(region, idx)
        except InfeasibleRegionError:
            # Oracle agrees: no partial point can be lifted.
            grid = itertools.product(range(-3, 4), repeat=dim - 1)
            assert not any(
                interval_feasible(region, idx, _insert(p, idx, 0.0)) for p in grid
            )
            continue
        for _ in range(30):
            p = tuple(rng.uniform(-4, 4) for _ in range(dim - 1))
            inside = contains_point(projected, p, 1e-9)
            liftable = interval_feasible(region, idx, _insert(p, idx, 0.0))
            assert inside == liftable, (rows, idx, p)


def _insert(partial, idx, value):
    out = list(partial)
    out.insert(idx, value)
    return tuple(out)


def test_elimination_order_does_not_change_set():
    rng = random.Random(5)
    for _ in range(15):
        dim = 3
        rows = [
            (tuple(rng.randint(-2, 3) for _ in range(dim)), float(rng.randint(0, 8)))
            for _ in range(rng.randint(3, 7))
        ]
        rows += [(q.coeffs, q.rhs) for q in nonneg_inequalities(dim)]
        region = R(dim, rows)
        a = fm_eliminate(fm_eliminate(region, 2), 1)  # drop x3 then x2
        b = fm_eliminate(fm_eliminate(region, 1), 1)  # drop x2 then x3 (shifted index)
        assert regions_equal(a, b, 1e-9)


def test_vertex_hull_round_trip():
    rng = random.Random(6)
    for region in (UNIT_SIMPLEX, UNIT_SQUARE):
        verts = vertices(region)
        for _ in range(100):
            direction = tuple(rng.uniform(-1, 1) for _ in range(region.dim))
            hull_val = max(sum(d * v for d, v in zip(direction, vert)) for vert in verts)
            assert support_value(region, direction) == pytest.approx(hull_val, abs=1e-8)


def test_canonicalize_scales_and_sorts():
    region = R(2, [((2, 2), 2.0), ((-3, 0), 0.0), ((0, -1), 0.0)])
    canon = canonicalize(region)
    assert [(q.coeffs, q.rhs) for q in canon.inequalities] == [
        ((-1, 0), 0.0),
        ((0, -1), 0.0),
        ((1, 1), 1.0),
    ]


def test_integer_coefficients_enforced():
    with pytest.raises(ValueError, match="integer"):
        LinearInequality((0.5, 1), 1.0)
    LinearInequality((2.0, 1), 1.0)  # exact integers in float form are fine


def test_region_json_round_trip(tmp_path):
    path = tmp_path / "region.json"
    save_region(UNIT_SIMPLEX, path)
    again = load_region(path)
    assert again == UNIT_SIMPLEX
    assert region_from_dict(region_to_dict(UNIT_SQUARE)) == UNIT_SQUARE
