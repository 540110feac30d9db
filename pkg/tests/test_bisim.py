import random
from fractions import Fraction

import pytest

from ftsdist.bisim import Partition, bisimilar, quotient, refine_once, signature
from ftsdist.metric import fixpoint_undiscounted
from ftsdist.model import build
from ftsdist.oracle import bisim_bruteforce, is_bisimulation

from generators import HALVES, random_model

F = Fraction


def test_partition_is_canonical():
    p = Partition(((3, 1), (2,), (0,)))
    assert p.blocks == ((0,), (1, 3), (2,))
    assert p.block_of == {0: 0, 1: 1, 3: 1, 2: 2}
    assert Partition.from_labels("abab") == Partition(((0, 2), (1, 3)))
    assert Partition.discrete(3).refines(Partition.trivial(3))
    assert not Partition.trivial(3).refines(Partition.discrete(3))
    assert p.names(["w", "x", "y", "z"]) == [["w"], ["x", "z"], ["y"]]


def test_partition_rejects_overlap_and_gaps():
    with pytest.raises(ValueError):
        Partition(((0, 1), (1,)))
    with pytest.raises(ValueError):
        Partition(((0,), (2,)))


def test_signature_examples(sample):
    part = Partition(((0, 1, 2), (3,)))
    assert signature(sample, 3, part) == (frozenset(),)
    assert signature(sample, 2, part) == (frozenset({(F(0), F(9, 10))}),)
    assert signature(sample, 0, part) == (frozenset({(F(9, 10), F(4, 5))}),)
    assert signature(sample, 1, part) == (frozenset({(F(3, 5), F(9, 10))}),)


def test_refine_once_examples(sample):
    first = refine_once(sample, Partition.trivial(4))
    assert first == Partition(((0, 1, 2), (3,)))
    assert refine_once(sample, first) == Partition.discrete(4)
    assert refine_once(sample, Partition.discrete(4)) == Partition.discrete(4)


def test_quotient_examples(sample):
    assert quotient(sample) == Partition.discrete(4) == bisim_bruteforce(sample)
    assert not bisimilar(sample, 0, 1)
    assert bisimilar(sample, 2, 2)
    empty = build(["x", "y", "z"], ["a"], [])
    assert quotient(empty) == Partition.trivial(3)
    same = build(["x", "y"], ["a"], [("x", "a", {"x": "1/2"}), ("y", "a", {"x": "1/2"})])
    assert quotient(same) == Partition.trivial(2)


def test_duplicated_state_is_bisimilar_to_its_copy():
    m = build(
        ["s1", "s2", "s3", "s4", "c"],
        ["a"],
        [
            ("s1", "a", {"s3": "0.9", "s4": "8/10"}),
            ("c", "a", {"s3": "0.9", "s4": "8/10"}),
            ("s2", "a", {"s3": "0.6", "s4": "0.9"}),
            ("s3", "a", {"s4": "0.9"}),
        ],
    )
    assert bisimilar(m, 0, 4)
    assert not bisimilar(m, 0, 1)
    assert quotient(m) == bisim_bruteforce(m)


def test_whole_vectors_are_compared():
    # per-block value sets agree ({1/2, 1/4} and {1/4, 3/4}) but the
    # vectors pair them up differently, so s and t are not bisimilar
    m = build(
        ["s", "t", "x", "y"],
        ["a"],
        [
            ("s", "a", {"x": "1/2", "y": "1/4"}),
            ("s", "a", {"x": "1/4", "y": "3/4"}),
            ("t", "a", {"x": "1/2", "y": "3/4"}),
            ("t", "a", {"x": "1/4", "y": "1/4"}),
        ],
    )
    assert not bisimilar(m, 0, 1)
    assert quotient(m) == bisim_bruteforce(m)
    assert fixpoint_undiscounted(m).distances[0, 1] > 0


def test_quotient_matches_oracle_and_distance_zero():
    rng = random.Random(17)
    for _ in range(200):
        m = random_model(rng, rng.randint(1, 4), rng.randint(1, 2), values=HALVES)
        part = quotient(m)
        assert part == bisim_bruteforce(m)
        assert is_bisimulation(m, part)
        d = fixpoint_undiscounted(m).distances
        for s in range(m.n_states):
            for t in range(m.n_states):
                assert part.same_block(s, t) == (d[s, t] == 0)


def test_final_blocks_have_equal_signatures():
    rng = random.Random(23)
    for _ in range(100):
        m = random_model(rng, rng.randint(1, 6), 2)
        part = quotient(m)
        for block in part.blocks:
            assert len({signature(m, s, part) for s in block}) == 1
        assert refine_once(m, part) == part
