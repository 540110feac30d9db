"""Behavioural distances: Hausdorff lifting, the one-step functional and
the fixpoint drivers (exact non-discounted, approximate and exact discounted).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .lifting import lift
from .model import FTS, FuzzySubset, theta
from .numerics import ONE, ZERO, smallest_denominator_in, unit


class FixpointBoundError(RuntimeError):
    """The non-discounted iteration overran its theoretical step bound."""


class RecoveryError(ArithmeticError):
    """Exact discounted recovery produced a matrix that is not a fixpoint."""


class DistanceMatrix:
    """Square matrix of exact distances in [0, 1], immutable.

    ``d[s]`` gives a row, ``d[s, t]`` a single entry.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[Fraction]]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ValueError("distance matrix must be square")
            for v in r:
                if not isinstance(v, Fraction) or not 0 <= v <= 1:
                    raise ValueError(f"entry {v!r} is not a rational in [0, 1]")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("DistanceMatrix is immutable")

    @classmethod
    def bottom(cls, n: int) -> "DistanceMatrix":
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def discrete(cls, n: int) -> "DistanceMatrix":
        return cls([[ZERO if i == j else ONE for j in range(n)] for i in range(n)])

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int], Fraction]) -> "DistanceMatrix":
        return cls([[unit(f(i, j)) for j in range(n)] for i in range(n)])

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, key):
        if isinstance(key, tuple):
            s, t = key
            return self.rows[s][t]
        return self.rows[key]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if isinstance(other, DistanceMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows)
        return f"DistanceMatrix([{body}])"

    def scaled(self, gamma: Fraction) -> "DistanceMatrix":
        return DistanceMatrix([[gamma * v for v in r] for r in self.rows])

    def distance(self, other: "DistanceMatrix") -> Fraction:
        """Sup-norm of the difference."""
        return max(
            (abs(a - b) for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2)),
            default=ZERO,
        )

    def dominated_by(self, other: "DistanceMatrix") -> bool:
        return all(a <= b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))

    def values(self) -> set[Fraction]:
        return {v for r in self.rows for v in r}

    def violation(self) -> Optional[tuple[str, tuple[int, ...]]]:
        """First violated pseudo-ultrametric axiom with a witness, or None."""
        d, n = self.rows, len(self.rows)
        for s in range(n):
            if d[s][s] != 0:
                return "reflexivity", (s,)
        for s in range(n):
            for t in range(s + 1, n):
                if d[s][t] != d[t][s]:
                    return "symmetry", (s, t)
        for s in range(n):
            ds = d[s]
            for t in range(n):
                dst = ds[t]
                dt = d[t]
                for u in range(n):
                    if ds[u] > dst and ds[u] > dt[u]:
                        return "strong triangle inequality", (s, t, u)
        return None

    def is_pseudo_ultrametric(self) -> bool:
        return self.violation() is None


def point_to_set(dhat, x, ys: Sequence) -> Fraction:
    """Distance from a point to a set: the least distance, or 1 for no points."""
    if not ys:
        return ONE
    return min(dhat(x, y) for y in ys)


def hausdorff(dhat, ys: Sequence, zs: Sequence) -> Fraction:
    """Two-sided Hausdorff distance between finite sets.

    ``dhat`` must be symmetric; each pairwise value is computed once and used
    for both directions.
    """
    if not ys and not zs:
        return ZERO
    if not ys or not zs:
        return ONE
    table = [[dhat(y, z) for z in zs] for y in ys]
    forward = max(min(row) for row in table)
    if forward == ONE:
        return ONE
    backward = max(min(row[j] for row in table) for j in range(len(zs)))
    return max(forward, backward)


def delta_entry(model: FTS, d: DistanceMatrix, s: int, t: int) -> Fraction:
    """One-step distance between s and t under ``d``, undiscounted."""
    acts = model.enabled_actions(s)
    if acts != model.enabled_actions(t):
        return ONE
    dhat = lambda mu, eta: lift(d, mu, eta)  # noqa: E731
    best = ZERO
    for a in sorted(acts):
        h = hausdorff(dhat, model.successors(s, a), model.successors(t, a))
        if h > best:
            best = h
            if best == ONE:
                break
    return best


def delta_core(model: FTS, d: DistanceMatrix, *, frozen_at: Optional[Fraction] = None) -> DistanceMatrix:
    """Apply the undiscounted one-step functional to ``d``.

    ``d`` must be a pseudo-ultrametric on the model's states: each unordered
    pair is evaluated once and mirrored. Entries of ``d`` equal to
    ``frozen_at`` are copied instead of recomputed; drivers use this for
    entries already at the top of their range, which a monotone iteration
    can no longer change.
    """
    n = model.n_states
    if len(d) != n:
        raise ValueError(f"matrix has dimension {len(d)}, model has {n} states")
    rows = [[ZERO] * n for _ in range(n)]
    for s in range(n):
        for t in range(s + 1, n):
            if frozen_at is not None and d.rows[s][t] == frozen_at:
                v = frozen_at
            else:
                v = delta_entry(model, d, s, t)
            rows[s][t] = rows[t][s] = v
    return DistanceMatrix(rows)


def kleene_iterates(model: FTS, gamma: Fraction = ONE) -> Iterator[DistanceMatrix]:
    """Yield gamma * Delta(bottom), gamma * Delta(previous), ... forever."""
    d = DistanceMatrix.bottom(model.n_states)
    while True:
        # iterates only grow, so an entry at gamma (the top) is settled
        step = delta_core(model, d, frozen_at=ONE if gamma == ONE else None)
        d = step if gamma == ONE else step.scaled(gamma)
        yield d


@dataclass(frozen=True)
class FixpointReport:
    distances: DistanceMatrix
    iterations: int
    converged: bool


def iteration_bound(model: FTS) -> int:
    return len(theta(model)) * model.n_states ** 2


def fixpoint_undiscounted(model: FTS, on_iterate=None) -> FixpointReport:
    """Least fixpoint of the undiscounted functional by Kleene iteration.

    Counts every application of the functional, including the final one
    that confirms stability. ``on_iterate`` (if given) is called with each
    iterate.
    """
    bound = max(iteration_bound(model), 1)
    prev = DistanceMatrix.bottom(model.n_states)
    for n, d in enumerate(kleene_iterates(model), start=1):
        if on_iterate is not None:
            on_iterate(d)
        if d == prev:
            return FixpointReport(d, n, True)
        if n >= bound:
            raise FixpointBoundError(
                f"no fixpoint after {n} iterations (bound {bound})"
            )
        prev = d
    raise AssertionError("unreachable")


def iterations_needed(gamma: Fraction, epsilon: Fraction) -> int:
    """Smallest N with gamma**N <= epsilon, i.e. ceil(log eps / log gamma)."""
    n, power = 0, ONE
    while power > epsilon:
        power *= gamma
        n += 1
    return n


def _check_open_unit(name: str, value: Fraction) -> Fraction:
    value = Fraction(value)
    if not 0 < value < 1:
        raise ValueError(f"{name} must lie strictly between 0 and 1, got {value}")
    return value


def fixpoint_discounted_approx(model: FTS, gamma: Fraction, epsilon: Fraction,
                               on_iterate=None) -> FixpointReport:
    """Run exactly ceil(log eps / log gamma) discounted iterations from bottom.

    The result is within ``epsilon`` of the discounted distance in the sup
    norm. ``converged`` reports whether the last step left the matrix
    unchanged.
    """
    gamma = _check_open_unit("gamma", gamma)
    epsilon = _check_open_unit("epsilon", epsilon)
    budget = iterations_needed(gamma, epsilon)
    prev = d = DistanceMatrix.bottom(model.n_states)
    iterates = kleene_iterates(model, gamma)
    for _ in range(budget):
        prev, d = d, next(iterates)
        if on_iterate is not None:
            on_iterate(d)
    return FixpointReport(d, budget, d == prev)


def recovery_epsilon(denominator_bound: int) -> Fraction:
    """A tolerance below 1/(2 D^2): rationals with denominators <= D are
    at least 1/D^2 apart, so a window of this radius isolates one of them."""
    if denominator_bound < 1:
        raise ValueError("denominator bound must be a positive integer")
    return Fraction(1, 2 * denominator_bound ** 2 + 1)


def fixpoint_discounted_exact(model: FTS, gamma: Fraction, denominator_bound: int) -> DistanceMatrix:
    """Exact discounted distance, assuming its denominators are at most ``denominator_bound``.

    Approximates to within ``recovery_epsilon``, snaps every entry to the
    simplest rational nearby and checks the result against the fixpoint
    equation. Raises :class:`RecoveryError` if the check fails.
    """
    gamma = _check_open_unit("gamma", gamma)
    eps = recovery_epsilon(denominator_bound)
    approx = fixpoint_discounted_approx(model, gamma, eps).distances
    snapped = DistanceMatrix(
        [
            [smallest_denominator_in(max(ZERO, v - eps), min(ONE, v + eps)) for v in row]
            for row in approx
        ]
    )
    if snapped.violation() is not None or delta_core(model, snapped).scaled(gamma) != snapped:
        raise RecoveryError(
            f"verification failed: denominator bound {denominator_bound} too small"
        )
    return snapped


def is_fixpoint(model: FTS, d: DistanceMatrix, gamma: Fraction = ONE) -> bool:
    step = delta_core(model, d)
    return (step if gamma == ONE else step.scaled(gamma)) == d
