import random

import pytest

from periodfa import Dfa, PeriodicParameter


def random_complete_dfa(rng: random.Random, max_states: int = 200, bases=(2, 3)) -> Dfa:
    n = rng.randint(1, max_states)
    b = rng.choice(bases)
    delta = [[rng.randrange(n) for _ in range(b)] for _ in range(n)]
    finals = {q for q in range(n) if rng.random() < 0.5}
    return Dfa(b, delta, rng.randrange(n), finals)


def random_proper_remainders(rng: random.Random, max_period: int) -> tuple[int, frozenset[int]]:
    """A period and remainder set admitting no smaller period."""
    while True:
        p = rng.randint(1, max_period)
        if p == 1:
            return 1, frozenset() if rng.random() < 0.5 else frozenset({0})
        rems = frozenset(r for r in range(p) if rng.random() < 0.4)
        if PeriodicParameter(p, rems).is_proper():
            return p, rems


def powers_of_base_automaton(base: int) -> Dfa:
    """Accepts 0*10*, i.e. exactly the powers of the base (by value)."""
    dead = 2
    delta = [
        [0, 1] + [dead] * (base - 2),
        [1] + [dead] * (base - 1),
        [dead] * base,
    ]
    return Dfa(base, delta, 0, {1})


def brute_nerode_classes(dfa: Dfa) -> list[int]:
    """Table-filling equivalence, independent of the package minimiser."""
    n, b = dfa.num_states, dfa.base
    rows = dfa.delta.tolist()
    finals = dfa.finals
    dist = set()
    for s in range(n):
        for t in range(s + 1, n):
            if (s in finals) != (t in finals):
                dist.add((s, t))
    changed = True
    while changed:
        changed = False
        for s in range(n):
            for t in range(s + 1, n):
                if (s, t) in dist:
                    continue
                for a in range(b):
                    x, y = rows[s][a], rows[t][a]
                    if x > y:
                        x, y = y, x
                    if x != y and (x, y) in dist:
                        dist.add((s, t))
                        changed = True
                        break
    cls = list(range(n))
    for s in range(n):
        for t in range(s + 1, n):
            if (s, t) not in dist and cls[t] == t:
                cls[t] = cls[s]
    return cls


def brute_ult_index(dfa: Dfa, s: int, t: int, cap: int) -> int | None:
    """Least m such that every length-m word sends s and t to one state.

    Checked by expanding the frontier of reachable state pairs; equality
    at one length persists at all greater lengths.  None when no m up to
    ``cap`` works.
    """
    rows = dfa.delta.tolist()
    frontier = {(s, t)}
    for m in range(cap + 1):
        if all(x == y for x, y in frontier):
            return m
        frontier = {
            (rows[x][a], rows[y][a]) for x, y in frontier for a in range(dfa.base)
        }
    return None


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
