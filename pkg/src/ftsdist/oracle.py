"""Exhaustive reference implementations for validating the fast paths.

Everything here is exponential and meant for small models only. None of it
shares code with the lifting, metric or bisimulation algorithms beyond the
data types.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Optional

from .bisim import Partition
from .metric import DistanceMatrix
from .model import FTS, FuzzySubset
from .numerics import ONE, ZERO

MAX_LIFT_VARIABLES = 9
MAX_BISIM_STATES = 6


class InstanceTooLarge(ValueError):
    pass


def lift_bruteforce(d, mu: FuzzySubset, eta: FuzzySubset) -> Fraction:
    """Optimum of the lifting program by exhaustive search over a finite grid.

    Variables exist only for pairs in ``Supp(mu) x Supp(eta)``; any other
    ``x[s, t]`` is at most ``mu(s) = 0`` or ``eta(t) = 0``.

    Each variable ranges over the grid ``V = {0} u mu-values u eta-values u
    d-values`` below ``min(mu(s), eta(t))``. Restricting to ``V`` loses
    nothing: rounding a feasible assignment down entrywise to ``V`` keeps
    every row and column supremum (each is attained at an entry equal to a
    member of ``V``, which rounding leaves alone, and every other entry stays
    below it) and cannot raise ``min(d, x)`` anywhere.
    """
    if mu.height != eta.height:
        return ONE
    rows = list(mu)
    cols = list(eta)
    n_vars = len(rows) * len(cols)
    if n_vars > MAX_LIFT_VARIABLES:
        raise InstanceTooLarge(f"{n_vars} variables exceed the limit of {MAX_LIFT_VARIABLES}")
    if not n_vars:
        return ZERO

    grid = {ZERO}
    grid.update(v for _, v in rows)
    grid.update(v for _, v in cols)
    grid.update(d[s][t] for s, _ in rows for t, _ in cols)
    grid = sorted(grid)

    cells = [(i, j) for i in range(len(rows)) for j in range(len(cols))]
    domains = [
        [v for v in grid if v <= min(rows[i][1], cols[j][1])] for i, j in cells
    ]
    dist = [d[rows[i][0]][cols[j][0]] for i, j in cells]
    width = len(cols)
    assignment: list[Fraction] = [ZERO] * n_vars
    best: list[Optional[Fraction]] = [None]

    def search(k: int, objective: Fraction) -> None:
        if best[0] is not None and objective >= best[0]:
            return
        if k == n_vars:
            for j, (_, target) in enumerate(cols):
                if max(assignment[i * width + j] for i in range(len(rows))) != target:
                    return
            best[0] = objective
            return
        for v in domains[k]:
            assignment[k] = v
            if k % width == width - 1:
                i = k // width
                if max(assignment[i * width : (i + 1) * width]) != rows[i][1]:
                    continue
            search(k + 1, max(objective, min(dist[k], v)))

    search(0, ZERO)
    if best[0] is None:
        raise AssertionError("lifting program infeasible despite equal heights")
    return best[0]


def _hausdorff_by_definition(dhat, ys, zs) -> Fraction:
    if not ys and not zs:
        return ZERO

    def to_set(x, others):
        if not others:
            return ONE
        return min(dhat(x, o) for o in others)

    forward = max((to_set(y, zs) for y in ys), default=ZERO)
    backward = max((to_set(z, ys) for z in zs), default=ZERO)
    return max(forward, backward)


def delta_bruteforce(model: FTS, d) -> DistanceMatrix:
    """Undiscounted one-step functional, every ordered pair evaluated separately."""
    n = model.n_states
    dhat = lambda mu, eta: lift_bruteforce(d, mu, eta)  # noqa: E731
    rows = []
    for s in range(n):
        row = []
        for t in range(n):
            acts_s = {a for a in range(len(model.labels)) if model.successors(s, a)}
            acts_t = {a for a in range(len(model.labels)) if model.successors(t, a)}
            if acts_s != acts_t:
                row.append(ONE)
                continue
            value = ZERO
            for a in range(len(model.labels)):
                value = max(
                    value,
                    _hausdorff_by_definition(dhat, model.successors(s, a), model.successors(t, a)),
                )
            row.append(value)
        rows.append(row)
    return DistanceMatrix(rows)


def fixpoint_bruteforce(model: FTS, gamma: Fraction = ONE, iterations: Optional[int] = None) -> DistanceMatrix:
    """Iterate ``gamma * delta_bruteforce`` from the zero matrix.

    With ``iterations=None`` and ``gamma == 1`` iterates until nothing
    changes.
    """
    d = DistanceMatrix.bottom(model.n_states)
    if iterations is None:
        if gamma != ONE:
            raise ValueError("an iteration count is required when gamma < 1")
        while True:
            nxt = delta_bruteforce(model, d)
            if nxt == d:
                return d
            d = nxt
    for _ in range(iterations):
        d = delta_bruteforce(model, d).scaled(gamma)
    return d


def set_partitions(n: int) -> Iterator[Partition]:
    """All partitions of ``range(n)`` via restricted growth strings."""
    labels = [0] * n

    def rec(k: int, top: int):
        if k == n:
            yield Partition.from_labels(labels)
            return
        for b in range(top + 2):
            labels[k] = b
            yield from rec(k + 1, max(top, b))

    if n == 0:
        yield Partition(())
        return
    yield from rec(1, 0)


def is_bisimulation(model: FTS, part: Partition) -> bool:
    """Every transition of s is matched by one of t that agrees on every class."""
    blocks = part.blocks
    owner = part.block_of
    for s in range(model.n_states):
        for t in range(model.n_states):
            if s == t or owner[s] != owner[t]:
                continue
            for a in range(len(model.labels)):
                for mu in model.successors(s, a):
                    want = [max((mu(x) for x in b), default=ZERO) for b in blocks]
                    if not any(
                        [max((eta(x) for x in b), default=ZERO) for b in blocks] == want
                        for eta in model.successors(t, a)
                    ):
                        return False
    return True


def bisim_bruteforce(model: FTS) -> Partition:
    """Coarsest bisimulation by enumerating every equivalence relation."""
    n = model.n_states
    if n > MAX_BISIM_STATES:
        raise InstanceTooLarge(f"{n} states exceed the limit of {MAX_BISIM_STATES}")
    found = [p for p in set_partitions(n) if is_bisimulation(model, p)]
    coarsest = min(found, key=len)
    if not all(p.refines(coarsest) for p in found):
        raise AssertionError("bisimulations have no common coarsening")
    return coarsest
