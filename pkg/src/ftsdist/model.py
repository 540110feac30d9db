"""Fuzzy transition systems: data model, JSON format and size measures."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .numerics import (
    ONE,
    ZERO,
    RationalSyntaxError,
    bit_size,
    format_rational,
    parse_literal,
)


class ModelError(ValueError):
    """Raised for any malformed model document."""


@dataclass(frozen=True)
class FuzzySubset:
    """A possibility distribution with explicit finite support.

    ``entries`` holds ``(state index, degree)`` pairs sorted by state index,
    every degree strictly positive. ``literals`` optionally remembers the
    ``(numerator, denominator)`` of each degree as it was written in the
    source file; it takes no part in equality.
    """

    entries: tuple[tuple[int, Fraction], ...]
    literals: Optional[tuple[tuple[int, int], ...]] = field(
        default=None, compare=False, repr=False
    )
    _lookup: dict = field(default_factory=dict, init=False, compare=False, repr=False)
    _height: Fraction = field(default=ZERO, init=False, compare=False, repr=False)

    def __post_init__(self):
        prev = -1
        for s, v in self.entries:
            if not isinstance(v, Fraction):
                raise TypeError(f"degree for state {s} must be a Fraction")
            if s <= prev:
                raise ValueError("entries must be sorted by state index without repeats")
            if not 0 < v <= 1:
                raise ValueError(f"degree {v} for state {s} is outside (0, 1]")
            prev = s
        self._lookup.update(self.entries)
        object.__setattr__(self, "_height", max((v for _, v in self.entries), default=ZERO))

    @classmethod
    def from_dict(cls, degrees: Mapping[int, Fraction]) -> "FuzzySubset":
        """Build from a state→degree mapping; zero degrees are dropped."""
        return cls(tuple(sorted((s, Fraction(v)) for s, v in degrees.items() if v)))

    def __call__(self, s: int) -> Fraction:
        return self._lookup.get(s, ZERO)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.entries)

    @property
    def height(self) -> Fraction:
        """mu(S), the largest degree (0 for the empty fuzzy set)."""
        return self._height

    def sup_over(self, states: Iterable[int]) -> Fraction:
        return sup_over_set(self, states)

    def entry_bits(self) -> int:
        """Bits needed to write down the support, using literals when known.

        Every entry costs at least one bit, so a degree written as ``1``
        is not free.
        """
        if self.literals is not None:
            sizes = (bit_size(lit) for lit in self.literals)
        else:
            sizes = (bit_size(v) for _, v in self.entries)
        return sum(max(1, b) for b in sizes)

    def __hash__(self):
        return hash(self.entries)


def sup_over_set(mu: FuzzySubset, states: Iterable[int]) -> Fraction:
    """Supremum of ``mu`` over a set of states; 0 for an empty set."""
    return max((mu(s) for s in states), default=ZERO)


@dataclass(frozen=True)
class FTS:
    """A finite fuzzy transition system (S, A, delta).

    States and labels are addressed by index; ``states[i]`` and
    ``labels[a]`` hold display names. ``delta`` maps ``(state, label)`` to a
    tuple of distinct distributions and omits empty entries.
    """

    states: tuple[str, ...]
    labels: tuple[str, ...]
    delta: Mapping[tuple[int, int], tuple[FuzzySubset, ...]]
    _enabled: tuple = field(default=(), init=False, repr=False)

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise ModelError("duplicate state names")
        if len(set(self.labels)) != len(self.labels):
            raise ModelError("duplicate label names")
        n, k = len(self.states), len(self.labels)
        cleaned = {}
        for (s, a), dists in self.delta.items():
            if not (0 <= s < n and 0 <= a < k):
                raise ModelError(f"transition key {(s, a)} out of range")
            dists = tuple(dists)
            if len(set(dists)) != len(dists):
                raise ModelError(
                    f"duplicate distribution for ({self.states[s]}, {self.labels[a]})"
                )
            for mu in dists:
                if mu.entries and mu.entries[-1][0] >= n:
                    raise ModelError(f"distribution refers to unknown state {mu.entries[-1][0]}")
            if dists:
                cleaned[(s, a)] = dists
        object.__setattr__(self, "delta", dict(sorted(cleaned.items())))
        enabled = [set() for _ in range(n)]
        for s, a in cleaned:
            enabled[s].add(a)
        object.__setattr__(self, "_enabled", tuple(frozenset(e) for e in enabled))

    @property
    def n_states(self) -> int:
        return len(self.states)

    def state_index(self, name: str) -> int:
        try:
            return self.states.index(name)
        except ValueError:
            raise ModelError(f"unknown state {name!r}") from None

    def successors(self, s: int, a: int) -> tuple[FuzzySubset, ...]:
        return self.delta.get((s, a), ())

    def enabled_actions(self, s: int) -> frozenset[int]:
        return self._enabled[s]

    def distributions(self) -> Iterable[FuzzySubset]:
        for dists in self.delta.values():
            yield from dists

    def __eq__(self, other):
        if not isinstance(other, FTS):
            return NotImplemented
        return (
            self.states == other.states
            and self.labels == other.labels
            and {k: frozenset(v) for k, v in self.delta.items()}
            == {k: frozenset(v) for k, v in other.delta.items()}
        )

    __hash__ = None


def enabled_actions(model: FTS, s: int) -> frozenset[int]:
    return model.enabled_actions(s)


def size_arith(model: FTS) -> int:
    """|M|: number of states plus the total support size of all transitions."""
    return model.n_states + sum(len(mu) for mu in model.distributions())


def size_bits(model: FTS) -> int:
    """||M||: number of states plus the bit size of every support entry."""
    return model.n_states + sum(mu.entry_bits() for mu in model.distributions())


def theta(model: FTS) -> list[Fraction]:
    """All membership degrees occurring in the model, plus 0 and 1, ascending."""
    values = {ZERO, ONE}
    for mu in model.distributions():
        values.update(v for _, v in mu)
    return sorted(values)


# ---------------------------------------------------------------------------
# JSON format

_TOP_KEYS = {"states", "labels", "transitions"}
_TRANSITION_KEYS = {"from", "label", "distribution"}


def parse_distribution(
    raw: object, state_names: Sequence[str], where: str = "distribution"
) -> FuzzySubset:
    """Parse a ``{"state": "literal", ...}`` object into a FuzzySubset."""
    if not isinstance(raw, dict):
        raise ModelError(f"{where}: expected an object mapping states to degrees")
    index = {name: i for i, name in enumerate(state_names)}
    items = []
    for name, literal in raw.items():
        if name not in index:
            raise ModelError(f"{where}: unknown state {name!r}")
        try:
            num, den = parse_literal(literal)
        except RationalSyntaxError as exc:
            raise ModelError(f"{where}: {exc}") from None
        value = Fraction(num, den)
        if not 0 < value <= 1:
            raise ModelError(
                f"{where}: membership {literal!r} for {name!r} must lie in (0, 1]"
            )
        items.append((index[name], value, (num, den)))
    items.sort()
    return FuzzySubset(
        tuple((s, v) for s, v, _ in items), literals=tuple(lit for _, _, lit in items)
    )


def _name_list(doc: dict, key: str) -> tuple[str, ...]:
    names = doc.get(key)
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise ModelError(f"{key!r} must be a list of strings")
    if len(set(names)) != len(names):
        raise ModelError(f"duplicate entry in {key!r}")
    return tuple(names)


def from_document(doc: object) -> FTS:
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ModelError(f"unknown top-level key(s): {', '.join(sorted(unknown))}")
    missing = {"states", "labels"} - set(doc)
    if missing:
        raise ModelError(f"missing key(s): {', '.join(sorted(missing))}")
    states = _name_list(doc, "states")
    labels = _name_list(doc, "labels")
    transitions = doc.get("transitions", [])
    if not isinstance(transitions, list):
        raise ModelError("'transitions' must be a list")

    label_index = {name: i for i, name in enumerate(labels)}
    state_index = {name: i for i, name in enumerate(states)}
    delta: dict[tuple[int, int], list[FuzzySubset]] = {}
    for pos, tr in enumerate(transitions):
        where = f"transitions[{pos}]"
        if not isinstance(tr, dict):
            raise ModelError(f"{where}: expected an object")
        extra = set(tr) - _TRANSITION_KEYS
        if extra or not _TRANSITION_KEYS <= set(tr):
            raise ModelError(f"{where}: keys must be exactly {sorted(_TRANSITION_KEYS)}")
        if tr["from"] not in state_index:
            raise ModelError(f"{where}: unknown state {tr['from']!r}")
        if tr["label"] not in label_index:
            raise ModelError(f"{where}: unknown label {tr['label']!r}")
        mu = parse_distribution(tr["distribution"], states, where)
        key = (state_index[tr["from"]], label_index[tr["label"]])
        bucket = delta.setdefault(key, [])
        if mu in bucket:
            raise ModelError(f"{where}: duplicate transition entry")
        bucket.append(mu)
    return FTS(states, labels, {k: tuple(v) for k, v in delta.items()})


def parse(text: str | bytes) -> FTS:
    """Parse a JSON model document."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ModelError(f"model is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(
            f"JSON syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return from_document(doc)


def load(path) -> FTS:
    with open(path, "rb") as fh:
        return parse(fh.read())


def _literal_text(mu: FuzzySubset, i: int) -> str:
    if mu.literals is not None:
        num, den = mu.literals[i]
        return f"{num}/{den}"
    return format_rational(mu.entries[i][1])


def to_document(model: FTS) -> dict:
    transitions = []
    for (s, a), dists in model.delta.items():
        for mu in dists:
            transitions.append(
                {
                    "from": model.states[s],
                    "label": model.labels[a],
                    "distribution": {
                        model.states[t]: _literal_text(mu, i)
                        for i, (t, _) in enumerate(mu.entries)
                    },
                }
            )
    return {
        "states": list(model.states),
        "labels": list(model.labels),
        "transitions": transitions,
    }


def serialize(model: FTS) -> str:
    return json.dumps(to_document(model), indent=2)


def build(
    states: Sequence[str],
    labels: Sequence[str],
    transitions: Iterable[tuple[str, str, Mapping[str, object]]],
) -> FTS:
    """Convenience constructor from ``(from, label, {state: degree})`` triples.

    Degrees may be Fractions, ints or rational literal strings.
    """
    doc = {
        "states": list(states),
        "labels": list(labels),
        "transitions": [
            {
                "from": src,
                "label": lab,
                "distribution": {
                    k: v if isinstance(v, str) else format_rational(Fraction(v))
                    for k, v in dist.items()
                },
            }
            for src, lab, dist in transitions
        ],
    }
    return from_document(doc)
