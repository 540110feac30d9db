"""Random instance generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from ftsdist.metric import DistanceMatrix
from ftsdist.model import FTS, FuzzySubset

QUARTERS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
HALVES = (Fraction(0), Fraction(1, 2), Fraction(1))


def random_subset(rng: random.Random, n: int, values=QUARTERS, max_support: int = 3,
                  height=None) -> FuzzySubset:
    """Random fuzzy subset; ``height`` forces the largest degree."""
    positive = [v for v in values if v > 0]
    k = rng.randint(0 if height is None else 1, min(max_support, n))
    support = rng.sample(range(n), k)
    degrees = {s: rng.choice(positive) for s in support}
    if height is not None:
        degrees = {s: min(v, height) for s, v in degrees.items()}
        degrees[support[0]] = height
    return FuzzySubset.from_dict(degrees)


def random_ultrametric(rng: random.Random, n: int, values=QUARTERS) -> DistanceMatrix:
    """Random pseudo-ultrametric built from a random dendrogram.

    Clusters are merged one at a time at nondecreasing heights; two points
    are at the height of the merge that first joins them.
    """
    clusters = [[i] for i in range(n)]
    rows = [[Fraction(0)] * n for _ in range(n)]
    level = 0
    while len(clusters) > 1:
        level = rng.randint(level, len(values) - 1)
        i, j = sorted(rng.sample(range(len(clusters)), 2))
        a, b = clusters[i], clusters.pop(j)
        for s in a:
            for t in b:
                rows[s][t] = rows[t][s] = values[level]
        a.extend(b)
    return DistanceMatrix(rows)


def random_model(rng: random.Random, n_states: int, n_labels: int = 1, max_dists: int = 2,
                 values=QUARTERS, max_support: int = 3, p_enabled: float = 0.75,
                 height=None, heights=None) -> FTS:
    """Random FTS. ``height`` fixes the height of every distribution;
    ``heights`` instead draws each distribution's height from a list."""
    delta = {}
    for s in range(n_states):
        for a in range(n_labels):
            if rng.random() >= p_enabled:
                continue
            dists = {
                random_subset(rng, n_states, values, max_support,
                              height=rng.choice(heights) if heights else height)
                for _ in range(rng.randint(1, max_dists))
            }
            delta[(s, a)] = tuple(sorted(dists, key=lambda mu: mu.entries))
    return FTS(
        tuple(f"s{i}" for i in range(n_states)),
        tuple(f"a{i}" for i in range(n_labels)),
        delta,
    )


def random_lift_instance(rng: random.Random, n: int = 5, values=QUARTERS):
    """(d, mu, eta) with supports of size <= 3; heights agree most of the time."""
    d = random_ultrametric(rng, n, values)
    mu = random_subset(rng, n, values)
    if rng.random() < 0.85:
        h = mu.height if mu.entries else rng.choice(values[1:])
        if not mu.entries:
            mu = random_subset(rng, n, values, height=h)
        eta = random_subset(rng, n, values, height=h)
    else:
        eta = random_subset(rng, n, values)
    return d, mu, eta
