"""Exact entropy computation for a channel under a product input distribution.

All quantities come from full enumeration of the joint input pmf (cost is
the product of the input alphabet sizes, comfortably small at the intended
scale of K <= 4, |X| <= 8).  Entropies are in bits, double precision, with
0*log(0) taken as 0.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

from .channel import ChannelSpec, encode_v_tuple

__all__ = [
    "InputDistribution",
    "EntropyTable",
    "build_entropy_table",
    "check_injectivity_identity",
    "load_distribution",
    "save_distribution",
]

_SUM_TOL = 1e-12


@dataclass(frozen=True)
class InputDistribution:
    """Product input distribution: probs[i-1][x] = p_i(x).

    Each per-user vector must be nonnegative and sum to 1 within 1e-12.
    """

    probs: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(tuple(map(float, row)) for row in self.probs))
        for i, row in enumerate(self.probs, start=1):
            if any(p < 0 for p in row):
                raise ValueError(f"user {i}: negative probability entry")
            total = math.fsum(row)
            if abs(total - 1.0) > _SUM_TOL:
                raise ValueError(f"user {i}: probabilities sum to {total}, not 1")

    @property
    def K(self) -> int:
        return len(self.probs)

    @classmethod
    def uniform(cls, spec: ChannelSpec) -> "InputDistribution":
        return cls(tuple(tuple(1.0 / n for _ in range(n)) for n in spec.x_alphabet_sizes))

    @classmethod
    def point_mass(cls, spec: ChannelSpec, symbols=None) -> "InputDistribution":
        """All mass on one input tuple (defaults to the all-zero tuple)."""
        if symbols is None:
            symbols = (0,) * spec.K
        rows = []
        for n, s in zip(spec.x_alphabet_sizes, symbols):
            rows.append(tuple(1.0 if x == s else 0.0 for x in range(n)))
        return cls(tuple(rows))


@dataclass(frozen=True)
class EntropyTable:
    """All conditional entropies the region formulas need.

    cond[(i, T)] = H(Y_i | V_T) for receiver i and any subset T of users
    (T given as a frozenset of 1-based user indices, possibly containing i).
    v_marginals[j-1] = H(V_j).
    """

    K: int
    cond: dict
    v_marginals: tuple[float, ...]
    # H(Y_i | X_i), used by the injectivity identity check.
    y_given_own_input: tuple[float, ...] = field(repr=False)

    def h_y_given_v(self, i: int, T) -> float:
        return self.cond[(i, frozenset(T))]

    def h_v(self, j: int) -> float:
        return self.v_marginals[j - 1]


def _entropy_bits(weights) -> float:
    """Shannon entropy in bits of an unnormalized-but-normalized pmf given as
    an iterable of probabilities; zero entries contribute nothing."""
    acc = 0.0
    for p in weights:
        if p > 0.0:
            acc -= p * math.log2(p)
    return acc


def build_entropy_table(spec: ChannelSpec, dist: InputDistribution) -> EntropyTable:
    """Enumerate the joint pmf and fill the complete conditional-entropy table.

    Raises ValueError if the distribution dimensions do not match the channel
    alphabets.
    """
    if dist.K != spec.K:
        raise ValueError(f"distribution has {dist.K} users, channel has {spec.K}")
    for i, (n, row) in enumerate(zip(spec.x_alphabet_sizes, dist.probs), start=1):
        if len(row) != n:
            raise ValueError(
                f"user {i}: distribution over {len(row)} symbols, alphabet size {n}"
            )

    K = spec.K
    users = range(1, K + 1)

    # One pass over the joint input pmf accumulates, per receiver, the pmf of
    # (v_1..v_K, y_i) and of (x_i, y_i), plus each V marginal.
    v_marginal = [dict() for _ in users]
    joint_vy = [dict() for _ in users]
    pair_xy = [dict() for _ in users]

    for x_tuple in itertools.product(*(range(n) for n in spec.x_alphabet_sizes)):
        p = 1.0
        for j, x in enumerate(x_tuple):
            p *= dist.probs[j][x]
        if p == 0.0:
            continue
        v_full = tuple(spec.g_tables[j][x] for j, x in enumerate(x_tuple))
        for j, v in enumerate(v_full):
            v_marginal[j][v] = v_marginal[j].get(v, 0.0) + p
        for i in users:
            others = spec.other_users(i)
            v_others = tuple(v_full[j - 1] for j in others)
            r = encode_v_tuple(spec, i, v_others)
            y = spec.f_tables[i - 1][x_tuple[i - 1]][r]
            tbl = joint_vy[i - 1]
            tbl[(v_full, y)] = tbl.get((v_full, y), 0.0) + p
            pair = pair_xy[i - 1]
            pair[(x_tuple[i - 1], y)] = pair.get((x_tuple[i - 1], y), 0.0) + p

    # H(Y_i | X_i) = H(X_i, Y_i) - H(X_i)
    h_y_given_x = []
    for i in users:
        h_pair = _entropy_bits(pair_xy[i - 1].values())
        h_x = _entropy_bits(dist.probs[i - 1])
        h_y_given_x.append(max(h_pair - h_x, 0.0))

    cond = {}
    for i in users:
        for bits in range(1 << K):
            T = frozenset(j for j in users if bits & (1 << (j - 1)))
            # H(Y_i | V_T) = H(V_T, Y_i) - H(V_T), both by marginalization.
            joint_ty = dict()
            marg_t = dict()
            for (v_full, y), p in joint_vy[i - 1].items():
                v_t = tuple(v_full[j - 1] for j in sorted(T))
                joint_ty[(v_t, y)] = joint_ty.get((v_t, y), 0.0) + p
                marg_t[v_t] = marg_t.get(v_t, 0.0) + p
            h = _entropy_bits(joint_ty.values()) - _entropy_bits(marg_t.values())
            cond[(i, T)] = max(h, 0.0)

    marginals = tuple(_entropy_bits(m.values()) for m in v_marginal)
    return EntropyTable(
        K=K, cond=cond, v_marginals=marginals, y_given_own_input=tuple(h_y_given_x)
    )


def check_injectivity_identity(spec: ChannelSpec, dist: InputDistribution, tol: float = 1e-9) -> bool:
    """Entropy form of the injectivity condition.

    True iff |H(Y_i|X_i) - sum_{j != i} H(V_j)| <= tol for every receiver i.
    For an injective channel this holds under any product distribution; a
    failure under a full-support distribution exhibits a non-injective
    receiver map.
    """
    table = build_entropy_table(spec, dist)
    for i in range(1, spec.K + 1):
        rhs = math.fsum(table.h_v(j) for j in spec.other_users(i))
        if abs(table.y_given_own_input[i - 1] - rhs) > tol:
            return False
    return True


def load_distribution(path) -> InputDistribution:
    """Read a distribution JSON file {"p": [[...], ...]}."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        return InputDistribution(tuple(tuple(row) for row in data["p"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed distribution document: {exc}") from exc


def save_distribution(dist: InputDistribution, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"p": [list(row) for row in dist.probs]}, fh, indent=1)
        fh.write("\n")
