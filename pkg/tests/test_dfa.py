import random

import numpy as np
import pytest

from periodfa import (
    Dfa,
    build_eventually_periodic_automaton,
    build_mismatch_automaton,
    build_mod_automaton,
    complete,
    is_by_value,
    minimize,
    repr_of,
    trim_accessible,
    value_membership,
    value_state_table,
    PeriodicParameter,
)
from conftest import random_complete_dfa, random_proper_remainders


def test_validation():
    with pytest.raises(ValueError):
        Dfa(1, [[0]], 0, set())
    with pytest.raises(ValueError):
        Dfa(2, [[0, 2]], 0, set())  # target out of range
    with pytest.raises(ValueError):
        Dfa(2, [[0, 0]], 1, set())  # initial out of range
    with pytest.raises(ValueError):
        Dfa(2, [[0, 0]], 0, {3})  # final out of range
    with pytest.raises(ValueError):
        Dfa(2, np.empty((0, 2), dtype=np.int32), 0, set())


def test_immutability():
    a = Dfa(2, [[0, 0]], 0, set())
    with pytest.raises(AttributeError):
        a.initial = 1
    with pytest.raises(ValueError):
        a.delta[0, 0] = 1


def test_complete_idempotent():
    a = build_mod_automaton(4, {0}, 2)
    assert complete(a) is a
    partial = Dfa(2, [[0, -1]], 0, {0})
    filled = complete(partial)
    assert filled.num_states == 2
    assert filled.is_complete()
    assert complete(filled) is filled


def test_complete_mismatch_automaton_unchanged():
    b = build_mismatch_automaton({1, 6}, 2)
    assert complete(b) is b
    assert b.num_states == 8


def test_complete_preserves_language(rng):
    for _ in range(20):
        n, b = rng.randint(1, 12), rng.choice([2, 3])
        delta = [
            [rng.randrange(n) if rng.random() < 0.7 else -1 for _ in range(b)]
            for _ in range(n)
        ]
        finals = {q for q in range(n) if rng.random() < 0.5}
        partial = Dfa(b, delta, 0, finals)
        filled = complete(partial)
        for _ in range(200):
            word = [rng.randrange(b) for _ in range(rng.randint(0, 8))]
            assert partial.accepts(word) == filled.accepts(word)


def test_trim_drops_unreachable():
    # state 2 unreachable
    a = Dfa(2, [[0, 1], [1, 0], [2, 2]], 0, {1, 2})
    t = trim_accessible(a)
    assert t.num_states == 2
    assert t.finals == frozenset({1})
    assert trim_accessible(t) is t


def test_trim_renumbers_breadth_first():
    # reachable order from 3: 3, then 0 (digit0), 2 (digit1), then 1
    a = Dfa(2, [[1, 1], [1, 1], [0, 1], [0, 2]], 3, {2})
    t = trim_accessible(a)
    assert t.num_states == 4
    assert t.initial == 0
    # 3->0, 0->1, 2->2, 1->3
    assert t.finals == frozenset({2})
    assert t.delta.tolist() == [[1, 2], [3, 3], [1, 2], [3, 3]]


def test_is_by_value_examples():
    a, _ = minimize(build_mod_automaton(4, {0, 1}, 2))
    assert is_by_value(a)
    # the language {"1"} exactly: rejects "01" although the value matches
    only_one = complete(Dfa(2, [[-1, 1], [-1, -1]], 0, {1}))
    m, _ = minimize(trim_accessible(only_one))
    assert not is_by_value(m)


def test_is_by_value_random_products(rng):
    for _ in range(50):
        p, rems = random_proper_remainders(rng, 30)
        base = rng.choice([2, 3, 4])
        mism = frozenset(v for v in range(12) if rng.random() < 0.3) or frozenset({1})
        dfa = build_eventually_periodic_automaton(PeriodicParameter(p, rems, mism), base)
        m, _ = minimize(trim_accessible(dfa))
        assert is_by_value(m)


def test_is_by_value_iff_leading_zero_invariance(rng):
    words = [[], [0], [1]]
    for length in range(2, 7):
        words += [[rng.randrange(2) for _ in range(length)] for _ in range(8)]
    words += [[rng.randrange(2) for _ in range(rng.randint(7, 12))] for _ in range(200)]
    for _ in range(60):
        dfa = random_complete_dfa(rng, max_states=5, bases=(2,))
        m, _ = minimize(trim_accessible(dfa))
        agree = all(m.accepts(w) == m.accepts([0] + w) for w in words)
        assert agree == is_by_value(m)


def test_value_state_table_matches_runs(rng):
    for _ in range(10):
        dfa = random_complete_dfa(rng, max_states=30, bases=(2, 3))
        table = value_state_table(dfa, 300)
        member = value_membership(dfa, 300)
        for v in range(300):
            state = dfa.run(repr_of(v, dfa.base))
            assert table[v] == state
            assert member[v] == (state in dfa.finals)


def test_value_state_table_requires_complete():
    with pytest.raises(ValueError):
        value_state_table(Dfa(2, [[0, -1]], 0, set()), 10)
