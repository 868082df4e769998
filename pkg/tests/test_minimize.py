import numpy as np
import pytest

from periodfa import (
    Dfa,
    build_mod_automaton,
    complete,
    isomorphic,
    minimize,
    trim_accessible,
    value_membership,
)
from periodfa.minimize import nerode_partition
from conftest import brute_nerode_classes, random_complete_dfa


def _prepared(dfa):
    return trim_accessible(complete(dfa))


def test_minimize_idempotent_and_smaller(rng):
    for _ in range(30):
        dfa = _prepared(random_complete_dfa(rng, max_states=60))
        minimal, phi = minimize(dfa)
        assert minimal.num_states <= dfa.num_states
        assert phi.shape == (dfa.num_states,)
        again, _ = minimize(minimal)
        assert isomorphic(minimal, again)
        assert again == minimal  # canonical numbering makes it literal


def test_minimize_preserves_language(rng):
    for _ in range(20):
        dfa = _prepared(random_complete_dfa(rng, max_states=40))
        minimal, _ = minimize(dfa)
        assert np.array_equal(
            value_membership(dfa, 10**4), value_membership(minimal, 10**4)
        )


def test_minimize_phi_is_nerode(rng):
    for _ in range(20):
        dfa = _prepared(random_complete_dfa(rng, max_states=25))
        _, phi = minimize(dfa)
        brute = brute_nerode_classes(dfa)
        n = dfa.num_states
        for s in range(n):
            for t in range(n):
                assert (phi[s] == phi[t]) == (brute[s] == brute[t])


def test_methods_agree(rng):
    for _ in range(30):
        dfa = _prepared(random_complete_dfa(rng, max_states=80))
        by_rounds, _ = minimize(dfa, method="rounds")
        by_hopcroft, _ = minimize(dfa, method="hopcroft")
        by_auto, _ = minimize(dfa, method="auto")
        assert by_rounds == by_hopcroft == by_auto


def test_nerode_partition_counts_match(rng):
    for _ in range(20):
        dfa = _prepared(random_complete_dfa(rng, max_states=120))
        _, num_r = nerode_partition(dfa, "rounds")
        _, num_h = nerode_partition(dfa, "hopcroft")
        assert num_r == num_h


def test_hopcroft_handles_chain():
    # long chain: worst case for round-based refinement
    n = 300
    delta = [[min(s + 1, n - 1), min(s + 1, n - 1)] for s in range(n)]
    dfa = Dfa(2, delta, 0, {n - 1})
    minimal, _ = minimize(dfa, method="hopcroft")
    by_auto, _ = minimize(dfa, method="auto")
    assert minimal == by_auto
    assert minimal.num_states == n  # every chain position is distinct


def test_minimal_mod_automaton_zero_circuits():
    from periodfa import decompose, zero_circuit_states

    minimal, _ = minimize(build_mod_automaton(12, {5, 7}, 2))
    assert len(zero_circuit_states(minimal)) == decompose(12, 2).coprime_part


def test_equal_languages_minimize_isomorphic():
    left, _ = minimize(build_mod_automaton(4, {0, 2}, 2))
    right, _ = minimize(build_mod_automaton(2, {0}, 2))
    assert isomorphic(left, right)


def test_isomorphic_basic():
    a, _ = minimize(build_mod_automaton(12, {5, 7}, 2))
    assert isomorphic(a, a)
    # renumber states by a permutation
    n = a.num_states
    perm = np.roll(np.arange(n), 1)
    inv = np.empty(n, dtype=np.int64)
    inv[perm] = np.arange(n)
    delta = inv[a.delta[perm]]
    shuffled = Dfa(a.base, delta, int(inv[a.initial]), {int(inv[q]) for q in a.finals})
    assert isomorphic(a, shuffled)


def test_isomorphic_distinguishes_languages():
    left, _ = minimize(build_mod_automaton(12, {5, 7}, 2))
    right, _ = minimize(build_mod_automaton(12, {5}, 2))
    # value 7 separates the languages, so the minimal automata differ
    assert left.accepts_value(7) and not right.accepts_value(7)
    assert not isomorphic(left, right)


def test_minimize_preconditions():
    with pytest.raises(ValueError):
        minimize(Dfa(2, [[0, -1]], 0, set()))
    unreachable = Dfa(2, [[0, 0], [1, 1]], 0, {1})
    with pytest.raises(ValueError):
        minimize(unreachable)
    with pytest.raises(ValueError):
        minimize(build_mod_automaton(4, {0}, 2), method="nonsense")
