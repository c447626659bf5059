"""Direct construction of the aggregate capacity region by facet enumeration.

A facet choice is an integer weight vector a = (a_1..a_K) together with a_i
user subsets per receiver i, subject to the counting constraint: across all
chosen subsets, user m must appear exactly a_m times.  Each valid choice
yields the inequality

    sum_i a_i R_i  <=  sum_i sum_j H(Y_i | V_{complement of S_ij}),

and the region is the intersection over all choices (plus nonnegativity).
Enumerating weights up to a cap reproduces the region; built-in presets give
the known irredundant facet families for K=2 (7 rows) and K=3 (28 rows).

Facet choices convert losslessly to and from coefficient schemes: the
multiplicity of subset M at receiver i becomes the scheme weight, and a
balanced scheme unrolls back into a facet choice with a_i = d_i.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

from .channel import ChannelSpec
from .coeff_scheme import CoefficientScheme, de_of, subset_rank
from .entropy import EntropyTable
from .errors import EnumerationOverflowError
from .polytope import (
    LinearInequality,
    Region,
    canonicalize,
    nonneg_inequalities,
    prune_redundant,
)

__all__ = [
    "FacetSpec",
    "facet_inequality",
    "enumerate_facet_specs",
    "enumerate_facets",
    "default_a_max",
    "presets",
    "preset_closure",
    "relabel_facet",
    "scheme_to_facet",
    "facet_to_scheme",
    "converse_complement_check",
    "load_facets",
    "save_facets",
    "facet_from_dict",
    "facet_to_dict",
]

DEFAULT_FACET_GUARD = 10**6


@dataclass(frozen=True)
class FacetSpec:
    """One facet choice: weights a plus a_i subsets per receiver.

    Subset lists are canonicalized within each receiver (sorted by binary
    rank) so equal multisets compare equal.
    """

    a: tuple[int, ...]
    S: tuple[tuple[frozenset, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        K = len(self.a)
        if len(self.S) != K:
            raise ValueError(f"{len(self.S)} subset lists for {K} receivers")
        canon = []
        for i, (count, subsets) in enumerate(zip(self.a, self.S), start=1):
            if count < 0:
                raise ValueError(f"receiver {i}: negative weight {count}")
            subsets = tuple(sorted((frozenset(M) for M in subsets), key=subset_rank))
            if len(subsets) != count:
                raise ValueError(
                    f"receiver {i}: {len(subsets)} subsets for weight {count}"
                )
            for M in subsets:
                if any(not 1 <= m <= K for m in M):
                    raise ValueError(f"receiver {i}: subset {sorted(M)} not within 1..{K}")
            canon.append(subsets)
        object.__setattr__(self, "S", tuple(canon))

    @property
    def K(self) -> int:
        return len(self.a)

    def counting_ok(self) -> bool:
        """Does user m appear exactly a_m times across all chosen subsets?"""
        counts = [0] * self.K
        for subsets in self.S:
            for M in subsets:
                for m in M:
                    counts[m - 1] += 1
        return tuple(counts) == self.a


def facet_inequality(fs: FacetSpec, table: EntropyTable) -> LinearInequality:
    """Region inequality of one facet choice (aggregate-rate coordinates)."""
    if table.K != fs.K:
        raise ValueError(f"entropy table is for {table.K} users, facet has {fs.K}")
    if not fs.counting_ok():
        raise ValueError("facet choice violates its counting constraint")
    full = frozenset(range(1, fs.K + 1))
    rhs = math.fsum(
        table.h_y_given_v(i, full - M)
        for i, subsets in enumerate(fs.S, start=1)
        for M in subsets
    )
    return LinearInequality(fs.a, rhs)


class _FacetBudget:
    """Counts complete facet choices visited before pruning."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self):
        self.used += 1
        if self.used > self.limit:
            raise EnumerationOverflowError(
                f"facet enumeration exceeded the size guard of {self.limit} "
                f"facets; raise the guard to continue"
            )


def _assignments(K, a, budget, term=None, best=None, min_term=None):
    """Yield all subset assignments for weight vector `a`.

    Each assignment is a tuple of per-receiver subset tuples, canonical
    (non-decreasing rank within a receiver), satisfying the counting
    constraint exactly.  When `term`/`best`/`min_term` are supplied the
    search is branch-and-bound on the accumulated right-hand side: within a
    receiver, subsets are visited cheapest entropy term first, so once the
    optimistic bound crosses best[0] the rest of the loop is cut; only
    improving assignments are yielded (best[0] is updated by the caller).
    """
    masks = list(range(1 << K))
    members = [tuple(m for m in range(1, K + 1) if mask & (1 << (m - 1))) for mask in masks]
    # Any fixed per-receiver total order enumerates each multiset once; sort
    # by cost when bounding, by rank otherwise.
    if term is None:
        order = [masks] * K
    else:
        order = [sorted(masks, key=lambda mask: (term[i][mask], mask)) for i in range(K)]
    slots_after = [0] * (K + 1)
    for i in range(K - 1, -1, -1):
        slots_after[i] = slots_after[i + 1] + a[i]
    tail_min = [0.0] * (K + 1)
    if min_term is not None:
        for i in range(K - 1, -1, -1):
            tail_min[i] = tail_min[i + 1] + a[i] * min_term[i]

    remaining = list(a)
    chosen: list[list[int]] = [[] for _ in range(K)]

    def recurse(i, slot, min_pos, partial):
        if i == K:
            if all(r == 0 for r in remaining):
                budget.spend()
                yield tuple(
                    tuple(frozenset(members[mask]) for mask in chosen[j]) for j in range(K)
                )
            return
        # Coverage prune: a slot covers each user at most once.
        slots_left = slots_after[i] - slot
        if any(r > slots_left for r in remaining):
            return
        if slot == a[i]:
            yield from recurse(i + 1, 0, 0, partial)
            return
        slots_left_here = a[i] - slot
        for pos in range(min_pos, 1 << K):
            mask = order[i][pos]
            new_partial = partial
            if term is not None:
                new_partial = partial + term[i][mask]
                bound = new_partial + (slots_left_here - 1) * min_term[i] + tail_min[i + 1]
                if bound >= best[0] - 1e-15:
                    break  # later positions only cost more
            ok = True
            for m in members[mask]:
                if remaining[m - 1] == 0:
                    ok = False
                    break
            if not ok:
                continue
            for m in members[mask]:
                remaining[m - 1] -= 1
            chosen[i].append(mask)
            yield from recurse(i, slot + 1, pos, new_partial)
            chosen[i].pop()
            for m in members[mask]:
                remaining[m - 1] += 1

    yield from recurse(0, 0, 0, 0.0)


def enumerate_facet_specs(K: int, a_max: int, max_facets: int = DEFAULT_FACET_GUARD):
    """All valid facet choices with 0 <= a_i <= a_max, a not all zero.

    Raises EnumerationOverflowError when more than `max_facets` valid
    choices are produced (nothing is silently truncated).
    """
    if a_max < 1:
        raise ValueError(f"a_max must be >= 1, got {a_max}")
    budget = _FacetBudget(max_facets)
    for a in itertools.product(range(a_max + 1), repeat=K):
        if not any(a):
            continue
        for assignment in _assignments(K, a, budget):
            yield FacetSpec(a, assignment)


def default_a_max(K: int) -> int:
    """Weight cap that reproduces the projection region on the tested sizes."""
    return {2: 2, 3: 4}.get(K, K + 1)


def enumerate_facets(
    spec: ChannelSpec,
    table: EntropyTable,
    a_max: int | None = None,
    max_facets: int = DEFAULT_FACET_GUARD,
    tol: float = 1e-9,
) -> Region:
    """Aggregate region from facet enumeration, pruned to an irredundant form.

    For a fixed weight vector `a` every assignment shares the left-hand side
    sum_i a_i R_i, so only the smallest right-hand side binds; the search
    keeps that minimum per `a` (branch-and-bound on the partial sum) instead
    of materializing dominated facets.
    """
    if table.K != spec.K:
        raise ValueError(f"entropy table is for {table.K} users, channel has {spec.K}")
    K = spec.K
    if a_max is None:
        a_max = default_a_max(K)
    if a_max < 1:
        raise ValueError(f"a_max must be >= 1, got {a_max}")

    full = frozenset(range(1, K + 1))
    term = [
        [
            table.h_y_given_v(i, full - frozenset(m for m in range(1, K + 1) if mask & (1 << (m - 1))))
            for mask in range(1 << K)
        ]
        for i in range(1, K + 1)
    ]
    min_term = [min(row) for row in term]

    budget = _FacetBudget(max_facets)
    rows = []
    for a in itertools.product(range(a_max + 1), repeat=K):
        if not any(a):
            continue
        best = [math.inf]
        for assignment in _assignments(K, a, budget, term=term, best=best, min_term=min_term):
            rhs = math.fsum(
                term[i][subset_rank(M)] for i in range(K) for M in assignment[i]
            )
            if rhs < best[0]:
                best[0] = rhs
        if best[0] < math.inf:
            rows.append(LinearInequality(a, best[0]))

    rows.extend(nonneg_inequalities(K))
    region = Region(K, tuple(rows), tuple(f"R{i}" for i in range(1, K + 1)))
    return canonicalize(prune_redundant(region, tol=tol), tol=tol)


def presets(K: int) -> list[FacetSpec]:
    """Built-in irredundant facet families (7 rows for K=2, 28 for K=3)."""
    if K == 2:
        raw = _PRESETS_K2
    elif K == 3:
        raw = _PRESETS_K3
    else:
        raise ValueError(f"presets exist only for K=2 and K=3, got K={K}")
    return [FacetSpec(a, S) for a, S in raw]


_PRESETS_K2 = [
    ((1, 0), (({1},), ())),
    ((0, 1), ((), ({2},))),
    ((1, 1), ((frozenset(),), ({1, 2},))),
    ((1, 1), (({1, 2},), (frozenset(),))),
    ((1, 1), (({2},), ({1},))),
    ((2, 1), (({1, 2}, frozenset()), ({1},))),
    ((1, 2), (({2},), ({1, 2}, frozenset()))),
]

_PRESETS_K3 = [
    ((1, 0, 0), (({1},), (), ())),
    ((1, 1, 0), ((frozenset(),), ({1, 2},), ())),
    ((1, 1, 0), (({2},), ({1},), ())),
    ((2, 1, 0), (({1, 2}, frozenset()), ({1},), ())),
    ((1, 1, 1), (({2, 3},), ({1},), (frozenset(),))),
    ((1, 1, 1), (({2},), ({3},), ({1},))),
    ((1, 1, 1), ((frozenset(),), ({2, 3},), ({1},))),
    ((1, 1, 1), ((frozenset(),), (frozenset(),), ({1, 2, 3},))),
    ((2, 1, 1), (({1, 2, 3}, frozenset()), ({1},), (frozenset(),))),
    ((2, 1, 1), (({2, 3}, frozenset()), ({1},), ({1},))),
    ((2, 1, 1), (({2}, {1, 3}), (frozenset(),), ({1},))),
    ((2, 1, 1), ((frozenset(), {1, 2}), ({3},), ({1},))),
    ((2, 1, 1), ((frozenset(), {1, 2}), ({1, 3},), (frozenset(),))),
    ((2, 1, 1), ((frozenset(), {3}), ({1},), ({1, 2},))),
    ((2, 1, 1), ((frozenset(), frozenset()), ({1, 2, 3},), ({1},))),
    ((2, 1, 1), ((frozenset(), frozenset()), ({1, 3},), ({1, 2},))),
    ((3, 1, 1), ((frozenset(), frozenset(), {1, 2, 3}), ({1},), ({1},))),
    ((3, 1, 1), ((frozenset(), frozenset(), {1, 3}), ({1},), ({1, 2},))),
    ((2, 2, 1), (({1, 2, 3}, {2}), (frozenset(), frozenset()), ({1},))),
    ((2, 2, 1), (({1, 2, 3}, frozenset()), (frozenset(), {1}), ({2},))),
    ((2, 2, 1), (({1, 2, 3}, frozenset()), (frozenset(), frozenset()), ({1, 2},))),
    ((2, 2, 1), (({2, 3}, frozenset()), (frozenset(), {1}), ({1, 2},))),
    ((2, 2, 1), (({2}, {2}), (frozenset(), {1, 3}), ({1},))),
    ((3, 2, 1), ((frozenset(), frozenset(), {1, 2, 3}), (frozenset(), {1}), ({1, 2},))),
    ((3, 2, 1), ((frozenset(), frozenset(), {1, 2, 3}), ({1}, {1}), ({2},))),
    ((3, 2, 1), ((frozenset(), frozenset(), {2, 3}), ({1}, {1}), ({1, 2},))),
    ((3, 2, 1), ((frozenset(), frozenset(), frozenset()), ({1}, {1, 2, 3}), ({1, 2},))),
    ((4, 2, 1), ((frozenset(), frozenset(), frozenset(), {1, 2, 3}), ({1}, {1}), ({1, 2},))),
]


def relabel_facet(fs: FacetSpec, perm) -> FacetSpec:
    """Apply a user relabeling; perm[i-1] is the new name of user i."""
    K = fs.K
    if sorted(perm) != list(range(1, K + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{K}")
    a = [0] * K
    S: list = [None] * K
    for i in range(1, K + 1):
        ni = perm[i - 1]
        a[ni - 1] = fs.a[i - 1]
        S[ni - 1] = tuple(frozenset(perm[m - 1] for m in M) for M in fs.S[i - 1])
    return FacetSpec(tuple(a), tuple(S))


def preset_closure(K: int) -> list[FacetSpec]:
    """Presets closed under user relabeling.

    The built-in K=3 table lists one representative per relabeling class
    (only user 1 gets a single-user row, for instance); the closure supplies
    the variants for the other users.  For generic channels it is the
    closure, not the bare table, that reproduces the enumerated region.
    The K=2 table is already closed, so its closure is the table itself.
    """
    out = {}
    for fs in presets(K):
        for perm in itertools.permutations(range(1, K + 1)):
            variant = relabel_facet(fs, perm)
            out[(variant.a, variant.S)] = variant
    return sorted(out.values(), key=lambda fs: (fs.a, [[subset_rank(M) for M in s] for s in fs.S]))


def scheme_to_facet(scheme: CoefficientScheme) -> FacetSpec:
    """Unroll a balanced scheme into a facet choice (a_i = d_i = e_i).

    Raises ValueError when the scheme's totals are unbalanced.
    """
    de = de_of(scheme)
    if not de.balanced():
        raise ValueError(f"scheme is not balanced: d={de.d}, e={de.e}")
    S = []
    for i in range(1, scheme.K + 1):
        subsets = []
        for j, M, w in scheme.entries:
            if j == i:
                subsets.extend([M] * w)
        S.append(tuple(subsets))
    return FacetSpec(de.d, tuple(S))


def facet_to_scheme(fs: FacetSpec) -> CoefficientScheme:
    """Multiplicity counts of a facet choice as a coefficient scheme."""
    weights: dict = {}
    for i, subsets in enumerate(fs.S, start=1):
        for M in subsets:
            weights[(i, M)] = weights.get((i, M), 0) + 1
    return CoefficientScheme.from_weights(fs.K, weights)


def converse_complement_check(fs: FacetSpec) -> bool:
    """Complement form of the counting constraint.

    With L = sum_i a_i, replacing each chosen subset by its complement must
    leave user m with exactly L - a_m appearances; this is the bookkeeping
    identity on which the matching outer bound rests, and it holds for every
    valid facet choice.
    """
    if not fs.counting_ok():
        raise ValueError("facet choice violates its counting constraint")
    K = fs.K
    L = sum(fs.a)
    full = frozenset(range(1, K + 1))
    counts = [0] * K
    for subsets in fs.S:
        for M in subsets:
            for m in full - M:
                counts[m - 1] += 1
    return all(counts[m - 1] == L - fs.a[m - 1] for m in range(1, K + 1))


def facet_to_dict(fs: FacetSpec) -> dict:
    return {"a": list(fs.a), "S": [[sorted(M) for M in subsets] for subsets in fs.S]}


def facet_from_dict(data: dict) -> FacetSpec:
    try:
        return FacetSpec(
            tuple(data["a"]),
            tuple(tuple(frozenset(M) for M in subsets) for subsets in data["S"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed facet document: {exc}") from exc


def load_facets(path) -> list[FacetSpec]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = [data]
    return [facet_from_dict(item) for item in data]


def save_facets(specs, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([facet_to_dict(fs) for fs in specs], fh, indent=1)
        fh.write("\n")
