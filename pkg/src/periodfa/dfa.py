"""Core automaton type over the digit alphabet {0, ..., base-1}.

States are dense integers 0..n-1 and the transition table is an n x base
array, which keeps every analysis a linear scan.  A missing transition
is stored as -1; :func:`complete` reroutes missing transitions to a
fresh non-final sink.  Words are read most significant digit first and
acceptance "by value" means that leading zeros never change the verdict.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

Word = Sequence[int]


class ResourceLimitError(RuntimeError):
    """An operation refused to run because it would exceed a size guard."""


class ContractError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""


class Dfa:
    """Deterministic automaton reading base-b digits, most significant first.

    Immutable after construction: the transition table is frozen and the
    final set is a frozenset, so instances are safe to share across
    threads.
    """

    __slots__ = ("base", "delta", "initial", "finals", "finals_unset", "_final_mask")

    def __init__(
        self,
        base: int,
        delta: np.ndarray | Sequence[Sequence[int]],
        initial: int,
        finals: Iterable[int],
        finals_unset: bool = False,
    ):
        if base < 2:
            raise ValueError(f"base must be at least 2, got {base}")
        delta = np.ascontiguousarray(delta, dtype=np.int32)
        if delta.ndim != 2 or delta.shape[1] != base:
            raise ValueError(f"transition table must have shape (n, {base})")
        n = delta.shape[0]
        if n < 1:
            raise ValueError("automaton needs at least one state")
        if delta.max(initial=-1) >= n or delta.min(initial=0) < -1:
            raise ValueError("transition targets out of range")
        if not 0 <= initial < n:
            raise ValueError(f"initial state {initial} out of range")
        finals = frozenset(int(q) for q in finals)
        if finals and (min(finals) < 0 or max(finals) >= n):
            raise ValueError("final states out of range")

        delta.setflags(write=False)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "initial", int(initial))
        object.__setattr__(self, "finals", finals)
        object.__setattr__(self, "finals_unset", bool(finals_unset))
        object.__setattr__(self, "_final_mask", None)

    def __setattr__(self, name, value):
        raise AttributeError("Dfa is immutable")

    @property
    def num_states(self) -> int:
        return self.delta.shape[0]

    @property
    def final_mask(self) -> np.ndarray:
        mask = self._final_mask
        if mask is None:
            mask = np.zeros(self.num_states, dtype=bool)
            if self.finals:
                mask[sorted(self.finals)] = True
            mask.setflags(write=False)
            object.__setattr__(self, "_final_mask", mask)
        return mask

    def is_complete(self) -> bool:
        return bool((self.delta >= 0).all())

    def step(self, state: int, digit: int) -> int:
        """Successor of ``state`` on ``digit``; -1 when undefined."""
        if not 0 <= digit < self.base:
            raise ValueError(f"digit {digit} out of range for base {self.base}")
        return int(self.delta[state, digit])

    def run(self, word: Word, start: int | None = None) -> int:
        """State reached from ``start`` (default: initial); -1 if the run dies."""
        state = self.initial if start is None else start
        for digit in word:
            if not 0 <= digit < self.base:
                raise ValueError(f"digit {digit} out of range for base {self.base}")
            state = int(self.delta[state, digit])
            if state < 0:
                return -1
        return state

    def accepts(self, word: Word) -> bool:
        state = self.run(word)
        return state >= 0 and state in self.finals

    def accepts_value(self, value: int) -> bool:
        """Whether the shortest representation of ``value`` is accepted."""
        return self.accepts(repr_of(value, self.base))

    def __repr__(self) -> str:
        tag = ", finals unset" if self.finals_unset else f", {len(self.finals)} final"
        return f"Dfa(base={self.base}, states={self.num_states}{tag})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dfa):
            return NotImplemented
        return (
            self.base == other.base
            and self.initial == other.initial
            and self.finals == other.finals
            and np.array_equal(self.delta, other.delta)
        )

    def __hash__(self):
        return hash((self.base, self.initial, self.finals, self.delta.tobytes()))


def value_of(word: Word, base: int) -> int:
    """Integer value of a digit word, leftmost digit most significant."""
    if base < 2:
        raise ValueError(f"base must be at least 2, got {base}")
    value = 0
    for digit in word:
        if not 0 <= digit < base:
            raise ValueError(f"digit {digit} out of range for base {base}")
        value = value * base + digit
    return value


def repr_of(value: int, base: int) -> tuple[int, ...]:
    """Shortest digit word for ``value``; the empty word represents 0."""
    if base < 2:
        raise ValueError(f"base must be at least 2, got {base}")
    if value < 0:
        raise ValueError(f"expected a nonnegative integer, got {value}")
    digits = []
    while value > 0:
        value, digit = divmod(value, base)
        digits.append(digit)
    return tuple(reversed(digits))


def complete(dfa: Dfa) -> Dfa:
    """Route missing transitions to a fresh non-final sink.

    Already-complete automata are returned unchanged, so the operation
    is idempotent and never grows a complete automaton.
    """
    if dfa.is_complete():
        return dfa
    n, b = dfa.num_states, dfa.base
    delta = np.empty((n + 1, b), dtype=np.int32)
    delta[:n] = dfa.delta
    delta[n] = n
    delta[delta < 0] = n
    return Dfa(b, delta, dfa.initial, dfa.finals, dfa.finals_unset)


def breadth_first_order(dfa: Dfa) -> np.ndarray:
    """States reachable from the initial state, in BFS discovery order.

    Within a layer, discovery follows source order then digit order, so
    the result is deterministic and serves as the canonical numbering.
    """
    n = dfa.num_states
    seen = np.zeros(n, dtype=bool)
    seen[dfa.initial] = True
    order = [dfa.initial]
    frontier = np.array([dfa.initial], dtype=np.int64)
    while frontier.size:
        cand = dfa.delta[frontier].ravel()
        cand = cand[cand >= 0]
        # first-occurrence dedup keeps breadth-first order deterministic
        uniq, first = np.unique(cand, return_index=True)
        mask = ~seen[uniq]
        fresh = uniq[mask]
        if fresh.size == 0:
            break
        fresh = fresh[np.argsort(first[mask], kind="stable")]
        seen[fresh] = True
        order.extend(int(s) for s in fresh)
        frontier = fresh
    return np.array(order, dtype=np.int64)


def trim_accessible(dfa: Dfa) -> Dfa:
    """Drop states unreachable from the initial state.

    Surviving states are renumbered in breadth-first discovery order
    (digit-ascending), which is the canonical numbering used by the text
    format.  Completeness is preserved.
    """
    n = dfa.num_states
    order = breadth_first_order(dfa)
    if order.size == n and bool((order == np.arange(n)).all()):
        return dfa
    renum = np.full(n, -1, dtype=np.int32)
    renum[order] = np.arange(order.size, dtype=np.int32)
    delta = dfa.delta[order]
    missing = delta < 0
    delta = renum[delta]
    delta[missing] = -1
    finals = [int(renum[q]) for q in dfa.finals if renum[q] >= 0]
    return Dfa(dfa.base, delta, 0, finals, dfa.finals_unset)


def is_by_value(dfa: Dfa) -> bool:
    """Whether acceptance depends only on the value of the input.

    On a minimal complete automaton this is exactly a digit-0 self-loop
    on the initial state, i.e. the language is closed under leading
    zeros.
    """
    return int(dfa.delta[dfa.initial, 0]) == dfa.initial


def value_state_table(dfa: Dfa, limit: int) -> np.ndarray:
    """States reached by the shortest representations of 0..limit-1.

    Shares prefixes: entry v is one step from entry v // base, so the
    whole table costs O(limit).  Requires a complete automaton.
    """
    if not dfa.is_complete():
        raise ValueError("value_state_table requires a complete automaton")
    if limit < 1:
        return np.empty(0, dtype=np.int32)
    b = dfa.base
    flat = dfa.delta.ravel().astype(np.int64)
    table = np.empty(limit, dtype=np.int32)
    table[0] = dfa.initial
    lo = 1
    while lo < limit:
        hi = min(lo * b, limit) if lo > 1 else min(b, limit)
        v = np.arange(lo, hi, dtype=np.int64)
        table[lo:hi] = flat[table[v // b].astype(np.int64) * b + v % b]
        lo = hi
    return table


def value_membership(dfa: Dfa, limit: int) -> np.ndarray:
    """Boolean table: entry v says whether ``dfa`` accepts value v."""
    return dfa.final_mask[value_state_table(dfa, limit)]
