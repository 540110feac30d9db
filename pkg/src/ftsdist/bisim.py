"""Bisimulation quotient by signature-based partition refinement."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import FTS, sup_over_set


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering ``0 .. n - 1``, in canonical order.

    Blocks are sorted tuples, ordered by their smallest member.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else -1)
        if any(not b for b in blocks):
            raise ValueError("partition blocks must be nonempty")
        members = [s for b in blocks for s in b]
        if sorted(members) != list(range(len(members))):
            raise ValueError("blocks must be disjoint and cover 0..n-1")
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls((tuple(range(n)),) if n else ())

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple((s,) for s in range(n)))

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """Group indices by equal label value."""
        groups: dict = {}
        for s, key in enumerate(labels):
            groups.setdefault(key, []).append(s)
        return cls(tuple(tuple(g) for g in groups.values()))

    @property
    def block_of(self) -> dict[int, int]:
        return {s: i for i, b in enumerate(self.blocks) for s in b}

    def __len__(self):
        return len(self.blocks)

    def same_block(self, s: int, t: int) -> bool:
        owner = self.block_of
        return owner[s] == owner[t]

    def refines(self, other: "Partition") -> bool:
        """True if every block of self lies inside a block of other."""
        owner = other.block_of
        return all(len({owner[s] for s in b}) == 1 for b in self.blocks)

    def names(self, state_names: Sequence[str]) -> list[list[str]]:
        return [[state_names[s] for s in b] for b in self.blocks]


Signature = tuple[frozenset[tuple[Fraction, ...]], ...]


def signature(model: FTS, s: int, part: Partition) -> Signature:
    """Per label, the set of block-mass vectors of the successors of ``s``."""
    return tuple(
        frozenset(
            tuple(sup_over_set(mu, block) for block in part.blocks)
            for mu in model.successors(s, a)
        )
        for a in range(len(model.labels))
    )


def refine_once(model: FTS, part: Partition) -> Partition:
    """Split every block into classes of states with equal signatures."""
    new_blocks = []
    for block in part.blocks:
        groups: dict[Signature, list[int]] = {}
        for s in block:
            groups.setdefault(signature(model, s, part), []).append(s)
        new_blocks.extend(tuple(g) for g in groups.values())
    return Partition(tuple(new_blocks))


def quotient(model: FTS) -> Partition:
    """Coarsest bisimulation, refined from the one-block partition."""
    part = Partition.trivial(model.n_states)
    while True:
        finer = refine_once(model, part)
        if len(finer) == len(part):
            return part
        part = finer


def bisimilar(model: FTS, s: int, t: int, part: Partition | None = None) -> bool:
    if part is None:
        part = quotient(model)
    return part.same_block(s, t)

