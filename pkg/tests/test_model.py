import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ftsdist import model
from ftsdist.model import FuzzySubset, ModelError, sup_over_set

from generators import random_model

F = Fraction


def doc(transitions, states=("s1", "s2", "s3", "s4"), labels=("a",)):
    return json.dumps({"states": list(states), "labels": list(labels), "transitions": transitions})


def test_parse_sample(sample, sample_dists):
    assert sample.states == ("s1", "s2", "s3", "s4")
    assert sample.labels == ("a",)
    assert sum(1 for _ in sample.distributions()) == 3
    mu, eta, nu = sample_dists
    assert mu.entries == ((2, F(9, 10)), (3, F(4, 5)))
    assert eta.entries == ((2, F(3, 5)), (3, F(9, 10)))
    assert nu.entries == ((3, F(9, 10)),)
    assert sample.successors(3, 0) == ()


def test_parse_empty_transitions():
    m = model.parse(doc([]))
    assert m.delta == {}
    assert all(not m.successors(s, 0) for s in range(4))
    assert model.parse(json.dumps({"states": ["x"], "labels": []})).n_states == 1


@pytest.mark.parametrize(
    "transitions, message",
    [
        ([{"from": "s1", "label": "a", "distribution": {"s5": "1/2"}}], "unknown state"),
        ([{"from": "s9", "label": "a", "distribution": {"s1": "1/2"}}], "unknown state"),
        ([{"from": "s1", "label": "b", "distribution": {"s1": "1/2"}}], "unknown label"),
        ([{"from": "s1", "label": "a", "distribution": {"s1": "0"}}], "(0, 1]"),
        ([{"from": "s1", "label": "a", "distribution": {"s1": "3/2"}}], "(0, 1]"),
        ([{"from": "s1", "label": "a", "distribution": {"s1": "half"}}], "not a rational"),
        ([{"from": "s1", "label": "a", "distribution": {"s1": 0.5}}], "must be a string"),
        ([{"from": "s1", "label": "a", "distribution": {"s1": "1/2"}},
          {"from": "s1", "label": "a", "distribution": {"s1": "0.5"}}], "duplicate"),
        ([{"from": "s1", "label": "a"}], "keys"),
    ],
)
def test_parse_errors(transitions, message):
    with pytest.raises(ModelError, match=message.replace("(", r"\(").replace("]", r"\]")):
        model.parse(doc(transitions))


def test_syntax_error_reports_position():
    with pytest.raises(ModelError, match=r"line 2, column"):
        model.parse('{"states": [],\n oops}')


def test_unknown_top_level_key():
    with pytest.raises(ModelError, match="unknown top-level"):
        model.parse(json.dumps({"states": [], "labels": [], "initial": []}))


def test_zero_membership_object_rejected():
    with pytest.raises(ValueError):
        FuzzySubset(((0, F(0)),))


def test_size_arith(sample):
    assert model.size_arith(sample) == 9
    no_nu = model.parse(doc(model.to_document(sample)["transitions"][:2]))
    assert model.size_arith(no_nu) == 4 + 2 + 2
    assert model.size_arith(model.parse(doc([]))) == 4


def test_size_bits(sample, sample_dists):
    mu, eta, nu = sample_dists
    assert mu.entry_bits() == 15
    # 0.6 -> 6/10: 3 + 4, 0.9 -> 9/10: 4 + 4
    assert eta.entry_bits() == 7 + 8
    assert nu.entry_bits() == 8
    assert model.size_bits(sample) == 4 + 15 + 15 + 8
    assert model.size_bits(model.parse(doc([]))) == 4


def test_theta(sample):
    assert model.theta(sample) == [F(0), F(3, 5), F(4, 5), F(9, 10), F(1)]
    assert model.theta(model.parse(doc([]))) == [F(0), F(1)]
    ones = model.build(["x", "y"], ["a"], [("x", "a", {"x": 1, "y": 1})])
    assert model.theta(ones) == [F(0), F(1)]


def test_sup_over_set(sample_dists):
    mu, eta, nu = sample_dists
    assert sup_over_set(mu, {2, 3}) == F(9, 10)
    assert sup_over_set(mu, set()) == 0
    assert sup_over_set(nu, {0, 1}) == 0
    assert mu(0) == 0 and mu(3) == F(4, 5)


def test_enabled_actions(sample):
    assert model.enabled_actions(sample, 0) == {0}
    assert model.enabled_actions(sample, 3) == frozenset()
    assert model.enabled_actions(model.parse(doc([])), 1) == frozenset()


def test_round_trip_sample_keeps_literals(sample):
    again = model.parse(model.serialize(sample))
    assert again == sample
    assert model.size_bits(again) == model.size_bits(sample)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 6), k=st.integers(1, 3))
def test_round_trip_random(seed, n, k):
    m = random_model(random.Random(seed), n, k, max_dists=3)
    assert model.parse(model.serialize(m)) == m


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 6))
def test_size_and_theta_properties(seed, n):
    m = random_model(random.Random(seed), n, 2)
    assert model.size_arith(m) <= model.size_bits(m)
    th = model.theta(m)
    assert th[0] == 0 and th[-1] == 1
    assert all(a < b for a, b in zip(th, th[1:]))
