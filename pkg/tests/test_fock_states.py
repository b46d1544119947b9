import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pfva.fock_states import (
    LevelParams,
    Monomial,
    State,
    combine,
    enumerate_monomials,
    grade,
    level,
    monomial_key,
)


def M(hs=(), es=(), fs=()):
    return Monomial.make(hs, es, fs)


def brute_force_monomials(n, charge):
    """All sorted (h, e, f) blocks built from letters of index <= n, filtered by grade."""
    letters = [(g, s) for g in range(3) for s in range(1, n + 1)]
    found = set()
    for length in range(n + 1):
        for word in itertools.combinations_with_replacement(letters, length):
            blocks = [sorted((s for g, s in word if g == b), reverse=True) for b in range(3)]
            m = Monomial(*(tuple(b) for b in blocks))
            if m.weight == n and m.charge == charge:
                found.add(m)
    return found


def generating_function_coeffs(cutoff):
    """Coefficients of prod_{i>=1} (1 - q^i)^(-3) by repeated series multiplication."""
    coeffs = [1] + [0] * cutoff
    for i in range(1, cutoff + 1):
        for _ in range(3):
            # multiply by 1/(1 - q^i) = 1 + q^i + q^2i + ...
            for n in range(i, cutoff + 1):
                coeffs[n] += coeffs[n - i]
    return coeffs


def test_grade_examples():
    assert grade(Monomial()) == (0, 0)
    assert grade(M(es=[1], fs=[1])) == (2, 0)
    assert grade(M(hs=[2, 1], es=[3])) == (6, 2)


def test_monomial_make_sorts_blocks():
    assert M(hs=[1, 2]) == Monomial((2, 1), (), ())
    with pytest.raises(ValueError):
        M(hs=[0])


def test_level_params_validation():
    assert level(3) == 3
    assert level(LevelParams(2)) == 2
    with pytest.raises(ValueError):
        LevelParams(1)
    with pytest.raises(TypeError):
        LevelParams(2.0)


def test_combine_examples():
    u = State({M(hs=[2]): 3, M(es=[1], fs=[1]): Fraction(1, 2)})
    assert combine(1, u, -1, u) == State.zero()
    assert combine(2, State.vacuum(), 3, State.vacuum()) == 5 * State.vacuum()
    mixed = combine(1, State.basis(M(hs=[1])), 1, State.basis(M(es=[1])))
    assert len(mixed) == 2
    assert not mixed.is_homogeneous()


def test_state_prunes_zero_and_rejects_floats():
    assert State({M(hs=[1]): 0}).is_zero()
    with pytest.raises(TypeError):
        State({M(hs=[1]): 0.5})


@pytest.mark.parametrize(
    "n, charge, expected",
    [
        (0, 0, {Monomial()}),
        (2, 0, {M(hs=[2]), M(hs=[1, 1]), M(es=[1], fs=[1])}),
        (3, 0, {M(hs=[3]), M(hs=[2, 1]), M(hs=[1, 1, 1]), M(es=[2], fs=[1]), M(es=[1], fs=[2]),
                M(hs=[1], es=[1], fs=[1])}),
    ],
)
def test_enumerate_examples(n, charge, expected):
    got = enumerate_monomials(n, charge)
    assert len(got) == len(expected)
    assert set(got) == expected


@pytest.mark.parametrize("n", range(0, 6))
def test_enumerate_matches_brute_force(n):
    for charge in range(-2 * n - 2, 2 * n + 3, 2):
        got = enumerate_monomials(n, charge)
        assert len(set(got)) == len(got)
        assert set(got) == brute_force_monomials(n, charge)


def test_enumeration_order_is_the_sort_key():
    got = enumerate_monomials(5, 0)
    assert got == sorted(got, key=monomial_key)
    assert enumerate_monomials(5, 0) == got


def test_generating_function_cross_check():
    cutoff = 9
    coeffs = generating_function_coeffs(cutoff)
    for n in range(cutoff + 1):
        total = sum(len(enumerate_monomials(n, c)) for c in range(-2 * n, 2 * n + 1, 2))
        assert total == coeffs[n]
    assert coeffs[:7] == [1, 3, 9, 22, 51, 108, 221]


def test_enumerate_rejects_odd_charge():
    with pytest.raises(ValueError):
        enumerate_monomials(2, 1)


monomials = st.builds(
    lambda hs, es, fs: Monomial.make(hs, es, fs),
    st.lists(st.integers(1, 4), max_size=3),
    st.lists(st.integers(1, 4), max_size=2),
    st.lists(st.integers(1, 4), max_size=2),
)
fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
states = st.dictionaries(monomials, fractions, max_size=5).map(State)


@settings(max_examples=60, deadline=None)
@given(states, states, states, fractions, fractions)
def test_combine_is_bilinear_associative_commutative(u, v, w, a, b):
    assert combine(a, u, b, v) == combine(b, v, a, u)
    assert (u + v) + w == u + (v + w)
    assert a * (u + v) == a * u + a * v
    assert (a + b) * u == a * u + b * u
    assert all(c != 0 for _, c in combine(a, u, b, v).items())


@settings(max_examples=60, deadline=None)
@given(states)
def test_state_json_round_trip(u):
    text = u.dumps()
    back = State.loads(text)
    assert back == u
    assert back.dumps() == text
    data = json.loads(text)
    assert all("/" in t["coeff"] for t in data["terms"])


def test_json_layout():
    u = State({M(hs=[2], es=[1]): Fraction(-3, 4)})
    assert u.to_json() == {"terms": [{"h": [2], "e": [1], "f": [], "coeff": "-3/4"}]}
