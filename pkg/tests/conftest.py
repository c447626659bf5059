"""Shared channels, distributions, and random generators for the test suite."""

import random

import pytest

from dicregion.channel import ChannelSpec
from dicregion.coeff_scheme import CoefficientScheme
from dicregion.entropy import InputDistribution


def xor_channel() -> ChannelSpec:
    """K=2 binary channel, g identity, output = own input XOR interference."""
    return ChannelSpec(
        K=2,
        x_alphabet_sizes=(2, 2),
        g_tables=((0, 1), (0, 1)),
        f_tables=(((0, 1), (1, 0)), ((0, 1), (1, 0))),
    )


def product_channel() -> ChannelSpec:
    """K=2 binary channel whose output encodes the pair (own input, interference)."""
    f = tuple(tuple(2 * x + v for v in (0, 1)) for x in (0, 1))
    return ChannelSpec(
        K=2, x_alphabet_sizes=(2, 2), g_tables=((0, 1), (0, 1)), f_tables=(f, f)
    )


def parity3_channel() -> ChannelSpec:
    """K=3 binary channel, output = XOR of all three signals; not injective."""
    rows = []
    for x in (0, 1):
        rows.append(tuple(x ^ (r >> 1) ^ (r & 1) for r in range(4)))
    f = tuple(rows)
    return ChannelSpec(
        K=3,
        x_alphabet_sizes=(2, 2, 2),
        g_tables=((0, 1), (0, 1), (0, 1)),
        f_tables=(f, f, f),
    )


def random_injective_channel(rng: random.Random, K: int, max_x: int) -> ChannelSpec:
    """Random channel that is injective by construction.

    Interference maps are arbitrary; each receiver's output row is a random
    permutation of the attainable interference-tuple indices, so the map is
    one-to-one for every own input.
    """
    sizes = [rng.randint(2, max_x) for _ in range(K)]
    g = []
    for n in sizes:
        vals = [rng.randrange(n) for _ in range(n)]
        if len(set(vals)) == 1 and n > 1:
            vals[0] = (vals[0] + 1) % n  # at least two interference symbols
        g.append(tuple(vals))
    images = [sorted(set(row)) for row in g]
    f = []
    for i in range(K):
        n_v = 1
        for j in range(K):
            if j != i:
                n_v *= len(images[j])
        rows = []
        for _ in range(sizes[i]):
            perm = list(range(n_v))
            rng.shuffle(perm)
            rows.append(tuple(perm))
        f.append(tuple(rows))
    return ChannelSpec(
        K=K, x_alphabet_sizes=tuple(sizes), g_tables=tuple(g), f_tables=tuple(f)
    )


def random_full_support(rng: random.Random, spec: ChannelSpec) -> InputDistribution:
    rows = []
    for n in spec.x_alphabet_sizes:
        w = [rng.random() + 0.05 for _ in range(n)]
        s = sum(w)
        rows.append(tuple(v / s for v in w))
    return InputDistribution(tuple(rows))


def random_scheme(rng: random.Random, K: int, wmax: int = 3, density: float = 0.35) -> CoefficientScheme:
    entries = []
    for i in range(1, K + 1):
        for bits in range(1 << K):
            if rng.random() < density:
                M = frozenset(j for j in range(1, K + 1) if bits & (1 << (j - 1)))
                entries.append((i, M, rng.randint(1, wmax)))
    return CoefficientScheme(K, tuple(entries))


@pytest.fixture
def xor():
    return xor_channel()


@pytest.fixture
def product():
    return product_channel()


@pytest.fixture
def parity3():
    return parity3_channel()
