"""Rate-splitting achievable region and its aggregate-rate projection.

The 2K-dimensional region lives in coordinates
(R_1p, R_1c, ..., R_Kp, R_Kc): a private and a common rate per user.  For
every receiver i and every user subset M (all 2^K of them) it contains

    R_ip + sum_{k in M} R_kc  <=  H(Y_i | V_{complement of M}),

plus nonnegativity for every coordinate.  Redundant subset choices are
harmless; the projection pipeline prunes them.

Aggregate rates are R_i = R_ip + R_ic.  Projection appends the aggregate
variables, encodes each defining equality as an inequality pair, and
eliminates the split variables (common rate then private rate, user by
user) with redundancy pruning after every elimination so the intermediate
systems stay small.
"""

from __future__ import annotations

from .channel import ChannelSpec
from .entropy import EntropyTable
from .polytope import (
    LinearInequality,
    Region,
    canonicalize,
    fm_eliminate,
    nonneg_inequalities,
    prune_redundant,
)

__all__ = [
    "aggregate_projection_matrix",
    "split_labels",
    "aggregate_labels",
    "build_A1",
    "project_to_aggregate",
]


def aggregate_projection_matrix(K: int) -> tuple[tuple[int, ...], ...]:
    """K x 2K 0/1 matrix mapping split rates to aggregate rates.

    Row i has ones exactly in the two columns of user i's private and
    common rate, so (matrix @ split_vector)_i = R_ip + R_ic.
    """
    rows = []
    for i in range(K):
        row = [0] * (2 * K)
        row[2 * i] = 1
        row[2 * i + 1] = 1
        rows.append(tuple(row))
    return tuple(rows)


def split_labels(K: int) -> tuple[str, ...]:
    out = []
    for i in range(1, K + 1):
        out.append(f"R{i}p")
        out.append(f"R{i}c")
    return tuple(out)


def aggregate_labels(K: int) -> tuple[str, ...]:
    return tuple(f"R{i}" for i in range(1, K + 1))


def build_A1(spec: ChannelSpec, table: EntropyTable) -> Region:
    """Rate-splitting region over (R_1p, R_1c, ..., R_Kp, R_Kc)."""
    if table.K != spec.K:
        raise ValueError(f"entropy table is for {table.K} users, channel has {spec.K}")
    K = spec.K
    full = frozenset(range(1, K + 1))
    rows = []
    for i in range(1, K + 1):
        for bits in range(1 << K):
            M = frozenset(j for j in range(1, K + 1) if bits & (1 << (j - 1)))
            coeffs = [0] * (2 * K)
            coeffs[2 * (i - 1)] += 1  # receiver's private rate
            for k in M:
                coeffs[2 * (k - 1) + 1] += 1  # common rates decoded jointly
            rows.append(LinearInequality(tuple(coeffs), table.h_y_given_v(i, full - M)))
    rows.extend(nonneg_inequalities(2 * K))
    return Region(2 * K, tuple(rows), split_labels(K))


def project_to_aggregate(a1: Region, tol: float = 1e-9) -> Region:
    """Project the rate-splitting region onto aggregate rates (R_1, ..., R_K).

    Prunes after each variable elimination; the result is an irredundant
    description over labels R1..RK with explicit nonnegativity.
    """
    if a1.dim % 2 != 0:
        raise ValueError(f"split region must have even dimension, got {a1.dim}")
    K = a1.dim // 2
    expected = split_labels(K)
    if a1.labels != expected:
        raise ValueError(f"split region labels {a1.labels} != expected {expected}")

    labels = expected + aggregate_labels(K)
    rows = [
        LinearInequality(ineq.coeffs + (0,) * K, ineq.rhs) for ineq in a1.inequalities
    ]
    for i in range(K):
        coeffs = [0] * (3 * K)
        coeffs[2 * i] = 1
        coeffs[2 * i + 1] = 1
        coeffs[2 * K + i] = -1
        rows.append(LinearInequality(tuple(coeffs), 0.0))  # R_ip + R_ic <= R_i
        rows.append(LinearInequality(tuple(-c for c in coeffs), 0.0))  # and >=
    work = Region(3 * K, tuple(rows), labels)

    for i in range(1, K + 1):
        for name in (f"R{i}c", f"R{i}p"):
            work = fm_eliminate(work, name, tol=tol)
            work = prune_redundant(work, tol=tol)

    rows = list(work.inequalities) + nonneg_inequalities(K)
    work = Region(K, tuple(rows), aggregate_labels(K))
    return canonicalize(prune_redundant(work, tol=tol), tol=tol)
