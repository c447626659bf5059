"""Half-space regions, Fourier-Motzkin projection, and LP-backed pruning.

A region is a finite list of inequalities coeffs . x <= rhs with exact
integer coefficients and real right-hand sides.  Variable elimination uses
integer cross-multiplication, so left-hand sides never accumulate floating
error; only the right-hand sides (entropy values downstream) are floats.

Elimination keeps raw combined rows (no per-row rescaling) so that callers
can recognize specific integer combinations verbatim; `canonicalize` divides
rows by their gcd for presentation-quality output.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import lp
from .errors import InfeasibleRegionError, UnboundedDirectionError

__all__ = [
    "LinearInequality",
    "Region",
    "nonneg_inequalities",
    "fm_eliminate",
    "prune_redundant",
    "is_subset",
    "find_subset_violation",
    "regions_equal",
    "support_value",
    "vertices",
    "contains_point",
    "canonicalize",
    "load_region",
    "save_region",
    "region_from_dict",
    "region_to_dict",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearInequality:
    """coeffs . x <= rhs with integer coefficients."""

    coeffs: tuple[int, ...]
    rhs: float

    def __post_init__(self):
        coerced = []
        for c in self.coeffs:
            ic = int(c)
            if ic != c:
                raise ValueError(f"coefficient {c!r} is not an exact integer")
            coerced.append(ic)
        object.__setattr__(self, "coeffs", tuple(coerced))
        object.__setattr__(self, "rhs", float(self.rhs))

    def drop_var(self, var: int) -> "LinearInequality":
        return LinearInequality(self.coeffs[:var] + self.coeffs[var + 1 :], self.rhs)

    def primitive(self) -> "LinearInequality":
        """Divide through by the gcd of the coefficients (no-op on zero rows)."""
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, abs(c))
        if g <= 1:
            return self
        return LinearInequality(tuple(c // g for c in self.coeffs), self.rhs / g)


@dataclass(frozen=True)
class Region:
    """Polyhedron {x : coeffs . x <= rhs for every inequality}."""

    dim: int
    inequalities: tuple[LinearInequality, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{i+1}" for i in range(self.dim)))
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != self.dim:
            raise ValueError(f"{len(self.labels)} labels for dimension {self.dim}")
        for ineq in self.inequalities:
            if len(ineq.coeffs) != self.dim:
                raise ValueError(
                    f"inequality arity {len(ineq.coeffs)} does not match dim {self.dim}"
                )

    def matrix(self):
        """(A, b) as float arrays."""
        if not self.inequalities:
            return np.zeros((0, self.dim)), np.zeros(0)
        A = np.array([ineq.coeffs for ineq in self.inequalities], dtype=float)
        b = np.array([ineq.rhs for ineq in self.inequalities], dtype=float)
        return A, b

    def var_index(self, var) -> int:
        if isinstance(var, str):
            try:
                return self.labels.index(var)
            except ValueError:
                raise ValueError(f"no variable labeled {var!r}") from None
        idx = int(var)
        if not 0 <= idx < self.dim:
            raise ValueError(f"variable index {idx} out of range for dim {self.dim}")
        return idx


def nonneg_inequalities(dim: int) -> list[LinearInequality]:
    """-x_i <= 0 for every variable."""
    rows = []
    for i in range(dim):
        coeffs = [0] * dim
        coeffs[i] = -1
        rows.append(LinearInequality(tuple(coeffs), 0.0))
    return rows


def _is_nonneg_row(ineq: LinearInequality) -> bool:
    return (
        ineq.rhs == 0.0
        and sum(1 for c in ineq.coeffs if c != 0) == 1
        and min(ineq.coeffs) == -1
    )


def _dedup_min_rhs(ineqs) -> list[LinearInequality]:
    """Collapse identical left-hand sides, keeping the tightest rhs."""
    best: dict[tuple[int, ...], float] = {}
    order: list[tuple[int, ...]] = []
    for ineq in ineqs:
        key = ineq.coeffs
        if key not in best:
            best[key] = ineq.rhs
            order.append(key)
        elif ineq.rhs < best[key]:
            best[key] = ineq.rhs
    return [LinearInequality(key, best[key]) for key in order]


def fm_eliminate(region: Region, var, tol: float = 1e-9) -> Region:
    """Project out one variable by Fourier-Motzkin elimination.

    Every (positive, negative) coefficient pair is combined with exact
    integer cross-multiplication; rows not mentioning the variable carry
    over.  Trivially true rows (zero left-hand side, rhs >= -tol) are
    dropped; a zero row with rhs < -tol proves the region empty and raises
    InfeasibleRegionError.

    `var` may be a column index or a variable label.
    """
    idx = region.var_index(var)
    pos, neg, zero = [], [], []
    for ineq in region.inequalities:
        c = ineq.coeffs[idx]
        (pos if c > 0 else neg if c < 0 else zero).append(ineq)

    out: list[LinearInequality] = []

    def _emit(coeffs: tuple[int, ...], rhs: float):
        if any(coeffs):
            out.append(LinearInequality(coeffs, rhs))
        elif rhs < -tol:
            raise InfeasibleRegionError(f"elimination produced 0 <= {rhs}")

    for ineq in zero:
        _emit(ineq.drop_var(idx).coeffs, ineq.rhs)
    for p in pos:
        a = p.coeffs[idx]
        for q in neg:
            bmul = -q.coeffs[idx]
            coeffs = tuple(
                bmul * pc + a * qc
                for k, (pc, qc) in enumerate(zip(p.coeffs, q.coeffs))
                if k != idx
            )
            _emit(coeffs, bmul * p.rhs + a * q.rhs)

    labels = region.labels[:idx] + region.labels[idx + 1 :]
    return Region(region.dim - 1, tuple(_dedup_min_rhs(out)), labels)


def prune_redundant(region: Region, tol: float = 1e-9) -> Region:
    """Drop inequalities implied by the rest of the system.

    Each removal is certified by an LP: the maximum of the candidate's
    left-hand side over the remaining system is <= rhs + tol.  Unit
    nonnegativity rows (-x_i <= 0) are always kept so rate regions retain
    their explicit nonnegativity constraints.
    """
    ineqs = _dedup_min_rhs(region.inequalities)
    # Test busy combination rows first so that simple facets survive.
    test_order = sorted(
        range(len(ineqs)),
        key=lambda k: (
            -sum(1 for c in ineqs[k].coeffs if c != 0),
            -sum(abs(c) for c in ineqs[k].coeffs),
            ineqs[k].coeffs,
        ),
    )
    alive = [True] * len(ineqs)
    for k in test_order:
        cand = ineqs[k]
        if _is_nonneg_row(cand):
            continue
        others = [ineqs[j] for j in range(len(ineqs)) if alive[j] and j != k]
        A = [o.coeffs for o in others]
        b = [o.rhs for o in others]
        res = lp.maximize(cand.coeffs, A, b, tol=tol)
        if res.status == lp.UNBOUNDED:
            continue
        if res.status == lp.INFEASIBLE:
            logger.debug("prune_redundant: remaining system infeasible; dropping row")
            alive[k] = False
            continue
        if res.value <= cand.rhs + tol:
            alive[k] = False
    kept = [ineqs[j] for j in range(len(ineqs)) if alive[j]]
    return Region(region.dim, tuple(kept), region.labels)


def find_subset_violation(a: Region, b: Region, tol: float = 1e-9):
    """First inequality of `b` that `a` can exceed, or None if a is a subset.

    Returns (inequality, attained_value) where attained_value is None when
    the direction is unbounded over `a`.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    A, rhs = a.matrix()
    for ineq in b.inequalities:
        res = lp.maximize(ineq.coeffs, A, rhs, tol=tol)
        if res.status == lp.INFEASIBLE:
            logger.warning("find_subset_violation: left region is infeasible; subset holds vacuously")
            return None
        if res.status == lp.UNBOUNDED:
            return (ineq, None)
        if res.value > ineq.rhs + tol:
            return (ineq, res.value)
    return None


def is_subset(a: Region, b: Region, tol: float = 1e-9) -> bool:
    """True iff every point of `a` satisfies every inequality of `b`."""
    return find_subset_violation(a, b, tol) is None


def regions_equal(a: Region, b: Region, tol: float = 1e-9) -> bool:
    """Mutual containment under the shared tolerance."""
    return is_subset(a, b, tol) and is_subset(b, a, tol)


def support_value(region: Region, direction, tol: float = 1e-9) -> float:
    """max direction . x over the region.

    Raises UnboundedDirectionError when the objective is unbounded and
    InfeasibleRegionError when the region is empty.
    """
    A, b = region.matrix()
    res = lp.maximize(np.asarray(direction, dtype=float), A, b, tol=tol)
    if res.status == lp.UNBOUNDED:
        raise UnboundedDirectionError(direction)
    if res.status == lp.INFEASIBLE:
        raise InfeasibleRegionError("support value of an empty region")
    return res.value


def contains_point(region: Region, point, tol: float = 1e-9) -> bool:
    for ineq in region.inequalities:
        if sum(c * x for c, x in zip(ineq.coeffs, point)) > ineq.rhs + tol:
            return False
    return True


def vertices(region: Region, tol: float = 1e-9) -> list[tuple[float, ...]]:
    """All vertices of a bounded region of dimension <= 3.

    Candidate points come from every dim-subset of inequality boundaries;
    points are kept when they satisfy the full system within tol and are
    deduplicated at tol, keeping the lexicographically smallest
    representative of each cluster.
    """
    if region.dim > 3:
        raise ValueError(f"vertex enumeration supports dim <= 3, got {region.dim}")
    for i in range(region.dim):
        for orient, name in ((1.0, "+"), (-1.0, "-")):
            direction = [0.0] * region.dim
            direction[i] = orient
            try:
                support_value(region, direction, tol=tol)
            except UnboundedDirectionError:
                raise UnboundedDirectionError(
                    direction, f"region is unbounded in direction {name}{region.labels[i]}"
                ) from None

    A, b = region.matrix()
    candidates: list[tuple[float, ...]] = []
    for rows in combinations(range(len(region.inequalities)), region.dim):
        sub = A[list(rows), :]
        rhs = b[list(rows)]
        try:
            x = np.linalg.solve(sub, rhs)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(x)) or np.max(np.abs(sub @ x - rhs)) > 1e-7:
            continue
        if np.all(A @ x <= b + tol):
            candidates.append(tuple(float(v) for v in x))

    candidates.sort()
    result: list[tuple[float, ...]] = []
    for p in candidates:
        if all(max(abs(pi - qi) for pi, qi in zip(p, q)) > tol for q in result):
            result.append(p)
    return result


def canonicalize(region: Region, tol: float = 1e-9) -> Region:
    """Presentation cleanup: primitive rows, tightest rhs per row, sorted."""
    rows = []
    for ineq in region.inequalities:
        if not any(ineq.coeffs):
            if ineq.rhs < -tol:
                raise InfeasibleRegionError(f"region contains 0 <= {ineq.rhs}")
            continue
        rows.append(ineq.primitive())
    rows = _dedup_min_rhs(rows)
    rows.sort(key=lambda q: (q.coeffs, q.rhs))
    return Region(region.dim, tuple(rows), region.labels)


def region_to_dict(region: Region) -> dict:
    return {
        "dim": region.dim,
        "labels": list(region.labels),
        "inequalities": [
            {"coeffs": list(ineq.coeffs), "rhs": ineq.rhs} for ineq in region.inequalities
        ],
    }


def region_from_dict(data: dict) -> Region:
    try:
        ineqs = tuple(
            LinearInequality(tuple(item["coeffs"]), item["rhs"])
            for item in data["inequalities"]
        )
        return Region(data["dim"], ineqs, tuple(data.get("labels") or ()))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed region document: {exc}") from exc


def load_region(path) -> Region:
    with open(path, "r", encoding="utf-8") as fh:
        return region_from_dict(json.load(fh))


def save_region(region: Region, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(region_to_dict(region), fh, indent=1)
        fh.write("\n")
