import pytest
from hypothesis import given, settings, strategies as st

from raag.alphabet import (
    IndependenceAlphabet,
    Letter,
    build_alphabet,
    connected_components,
    dependence_order,
    is_connected_subset,
    is_independent,
    parse_letter,
    parse_word,
)
from raag.errors import ValidationError

from helpers import EXAMPLE


def test_example_dependence_pairs():
    dep = {frozenset(p) for p in EXAMPLE.dependent_pairs(diagonal=False)}
    assert dep == {frozenset(p) for p in ["ab", "bc", "be", "cd", "ce"]}
    assert all(frozenset(x) in EXAMPLE.dependent_pairs() for x in "abcde")


def test_single_letter_alphabet():
    a = build_alphabet(["a"], [])
    assert a.dependent_pairs() == {frozenset("a")}


def test_reflexive_pair_rejected():
    with pytest.raises(ValidationError):
        build_alphabet(["a", "b"], [("a", "a")])


def test_unknown_token_rejected():
    with pytest.raises(ValidationError):
        build_alphabet(["a"], [("a", "z")])
    with pytest.raises(ValidationError):
        build_alphabet(["A"], [])
    with pytest.raises(ValidationError):
        build_alphabet(["a", "a"], [])


def test_letter_parsing_and_inverse():
    x = parse_letter("a^-1")
    assert x == Letter("a", -1) and str(x) == "a^-1"
    assert x.inverse().inverse() == x
    assert parse_word("a b^-1") == [Letter("a"), Letter("b", -1)]
    with pytest.raises(ValidationError):
        parse_letter("a^-2")


def test_is_independent_signs_ignored():
    assert is_independent(EXAMPLE, Letter("a", -1), Letter("d"))
    assert not is_independent(EXAMPLE, Letter("a"), Letter("a", -1))
    assert not is_independent(EXAMPLE, "b", "e")
    with pytest.raises(ValidationError):
        is_independent(EXAMPLE, "a", "z")


def test_connected_subsets():
    assert is_connected_subset(EXAMPLE, "abcd")
    assert not is_connected_subset(EXAMPLE, "ac")
    assert is_connected_subset(EXAMPLE, "a")
    assert is_connected_subset(EXAMPLE, "")
    with pytest.raises(ValidationError):
        is_connected_subset(EXAMPLE, "az")
    assert [[str(x) for x in c] for c in connected_components(EXAMPLE, "ace")] == [["a"], ["c", "e"]]


def test_dependence_order_examples():
    order = dependence_order(EXAMPLE, "abc", seed=("b", "c"), letters="abcd")
    assert [str(x) for x in order] == ["b", "c", "a", "d"]
    one = build_alphabet(["a"])
    assert [str(x) for x in dependence_order(one, "a")] == ["a"]
    with pytest.raises(ValidationError, match="not connected"):
        dependence_order(EXAMPLE, "ac", letters="abcd")


def test_dependence_order_names_component():
    alpha = build_alphabet(["a", "b", "c"], [("a", "c"), ("b", "c")])
    with pytest.raises(ValidationError, match="c"):
        dependence_order(alpha, "a")


@st.composite
def alphabets(draw):
    n = draw(st.integers(1, 6))
    letters = [chr(97 + i) for i in range(n)]
    pairs = [(x, y) for i, x in enumerate(letters) for y in letters[i + 1:] if draw(st.booleans())]
    return IndependenceAlphabet(letters, pairs)


@settings(max_examples=200, deadline=None)
@given(alphabets(), st.data())
def test_dependence_order_property(alpha, data):
    letters = alpha.positive_letters()
    comps = connected_components(alpha, letters)
    comp = data.draw(st.sampled_from(comps))
    prio = comp[: data.draw(st.integers(1, len(comp)))]
    if not is_connected_subset(alpha, prio):
        with pytest.raises(ValidationError):
            dependence_order(alpha, prio, letters=comp)
        return
    order = dependence_order(alpha, prio, letters=comp)
    assert sorted(order) == sorted(comp)
    assert set(order[: len(prio)]) == set(prio)
    for i in range(1, len(order)):
        assert any(alpha.is_dependent(order[i], y) for y in order[:i])


@settings(max_examples=100, deadline=None)
@given(alphabets(), st.data())
def test_independence_symmetric(alpha, data):
    x = data.draw(st.sampled_from(alpha.signed_letters()))
    y = data.draw(st.sampled_from(alpha.signed_letters()))
    assert alpha.is_independent(x, y) == alpha.is_independent(y, x)
    assert not alpha.is_independent(x, x.inverse())
