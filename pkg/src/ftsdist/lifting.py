"""Lifting a state distance to a distance between possibility distributions.

The lifted value is the optimum of a max-min program over coupling
variables ``x[s, t]``::

    minimise   max_{s,t} min(d(s,t), x[s,t])
    subject to max_t x[s,t] = mu(s)    for every s
               max_s x[s,t] = eta(t)   for every t

and it is computed by testing candidate objective values in ascending order.
For a candidate ``c`` the question "is the objective at most c?" becomes a
system of sup-equations (one per row, one per column) together with a
threshold constraint ``max{x[s,t] : d(s,t) > c} <= c``. Such a system is
solvable exactly when its canonical valuation, where every variable takes the
least right-hand side among the constraints mentioning it, solves it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import FuzzySubset
from .numerics import ONE, ZERO


class LiftingInvariantError(RuntimeError):
    """No candidate value was feasible; indicates a bug or a bad input metric."""


@dataclass(frozen=True)
class Equation:
    """``max(x[v] for v in variables) = rhs``.

    With ``upper_bound=True`` the constraint only requires ``<= rhs``. An
    empty variable set has supremum 0.
    """

    variables: frozenset[int]
    rhs: Fraction
    upper_bound: bool = False

    def holds(self, valuation: Sequence[Fraction]) -> bool:
        value = max((valuation[v] for v in self.variables), default=ZERO)
        return value <= self.rhs if self.upper_bound else value == self.rhs


@dataclass(frozen=True)
class EquationSystem:
    """A conjunction of sup-equations over variables ``0 .. n_vars - 1``.

    Systems produced by :func:`build_system` carry ``pairs``, the ``(s, t)``
    state pair behind each variable, and order their equations as: the
    threshold constraint, one row equation per state, one column equation
    per state.
    """

    n_vars: int
    equations: tuple[Equation, ...]
    pairs: Optional[tuple[tuple[int, int], ...]] = None

    @property
    def special(self) -> Equation:
        return self.equations[0]

    def rows(self, n_states: int) -> tuple[Equation, ...]:
        return self.equations[1 : 1 + n_states]

    def columns(self, n_states: int) -> tuple[Equation, ...]:
        return self.equations[1 + n_states : 1 + 2 * n_states]

    def var(self, s: int, t: int) -> Optional[int]:
        """Variable index of pair (s, t), or None if the pair was pruned."""
        if self.pairs is None:
            raise ValueError("system has no pair labelling")
        try:
            return self.pairs.index((s, t))
        except ValueError:
            return None


def build_system(d, mu: FuzzySubset, eta: FuzzySubset, c: Fraction,
                 n_states: Optional[int] = None) -> EquationSystem:
    """Equation system asking whether the lifted objective can be at most ``c``.

    Only pairs in ``Supp(mu) x Supp(eta)`` get variables; every other pair
    sits under a zero row or column and is forced to 0. Row and column
    equations are emitted for all ``n_states`` states (default: ``len(d)``),
    so rows outside the support appear with an empty variable set and rhs 0.
    """
    if n_states is None:
        n_states = len(d)
    pairs = tuple((s, t) for s in mu.support for t in eta.support)
    index = {p: i for i, p in enumerate(pairs)}
    special = Equation(
        frozenset(i for (s, t), i in index.items() if d[s][t] > c), c, upper_bound=True
    )
    rows = tuple(
        Equation(frozenset(index[s, t] for t in eta.support if (s, t) in index), mu(s))
        for s in range(n_states)
    )
    cols = tuple(
        Equation(frozenset(index[s, t] for s in mu.support if (s, t) in index), eta(t))
        for t in range(n_states)
    )
    return EquationSystem(len(pairs), (special,) + rows + cols, pairs)


def canonical_valuation(system: EquationSystem) -> tuple[Fraction, ...]:
    """Each variable gets the least rhs among the equations it occurs in."""
    values: list[Optional[Fraction]] = [None] * system.n_vars
    for eq in system.equations:
        for v in eq.variables:
            if values[v] is None or eq.rhs < values[v]:
                values[v] = eq.rhs
    missing = [v for v, x in enumerate(values) if x is None]
    if missing:
        raise ValueError(f"variables {missing} occur in no equation")
    return tuple(values)


def is_feasible(system: EquationSystem) -> bool:
    valuation = canonical_valuation(system)
    return all(eq.holds(valuation) for eq in system.equations)


def candidates(d, mu: FuzzySubset, eta: FuzzySubset) -> list[Fraction]:
    """Ascending candidate objective values for the pair (mu, eta).

    Distances are only collected over ``Supp(mu) x Supp(eta)``: pairs outside
    carry a forced-zero variable and never reach the objective.
    """
    values = {ZERO}
    values.update(v for _, v in mu)
    values.update(v for _, v in eta)
    for s in mu.support:
        row = d[s]
        values.update(row[t] for t in eta.support)
    return sorted(values)


class _Instance:
    """Support-restricted view of one lifting problem, for repeated checks."""

    __slots__ = ("mu_vals", "eta_vals", "dist")

    def __init__(self, d, mu: FuzzySubset, eta: FuzzySubset):
        self.mu_vals = [v for _, v in mu]
        self.eta_vals = [v for _, v in eta]
        self.dist = [[d[s][t] for t in eta.support] for s in mu.support]

    def feasible(self, c: Fraction) -> bool:
        # canonical valuation: x[i][j] = min(mu_i, eta_j), further capped at c
        # when dist[i][j] > c; row i holds iff some cell reaches mu_i exactly
        mu_vals, eta_vals, dist = self.mu_vals, self.eta_vals, self.dist
        for i, m in enumerate(mu_vals):
            if m <= c:
                continue  # the cell under the largest eta_j reaches m
            row = dist[i]
            if not any(e >= m and row[j] <= c for j, e in enumerate(eta_vals)):
                return False
        for j, e in enumerate(eta_vals):
            if e <= c:
                continue
            if not any(m >= e and dist[i][j] <= c for i, m in enumerate(mu_vals)):
                return False
        return True


def lift(d, mu: FuzzySubset, eta: FuzzySubset) -> Fraction:
    """Distance between two possibility distributions induced by ``d``.

    Returns 1 when the heights ``mu(S)`` and ``eta(S)`` differ. Otherwise
    returns the least candidate value whose equation system is feasible.
    Feasibility is monotone in the candidate (a larger ``c`` only relaxes the
    threshold constraint), so the least feasible one is found by bisection.
    """
    if mu.height != eta.height:
        return ONE
    if not mu.entries:
        return ZERO
    cands = candidates(d, mu, eta)
    inst = _Instance(d, mu, eta)
    lo, hi = 0, len(cands) - 1
    if not inst.feasible(cands[hi]):
        raise LiftingInvariantError(
            f"no feasible candidate for heights {mu.height} = {eta.height}"
        )
    while lo < hi:
        mid = (lo + hi) // 2
        if inst.feasible(cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]


def lift_scan(d, mu: FuzzySubset, eta: FuzzySubset) -> Fraction:
    """Reference form of :func:`lift`: linear ascending scan, explicit systems.

    Slow; kept for cross-checking the fast path.
    """
    if mu.height != eta.height:
        return ONE
    for c in candidates(d, mu, eta):
        if is_feasible(build_system(d, mu, eta, c)):
            return c
    raise LiftingInvariantError("no feasible candidate")

