"""Canonical automata for periodic sets of integers.

Three constructions cover every eventually periodic set:

* the modulo automaton tracks the value of the input modulo a period,
  state n stepping to n*b + digit;
* the mismatch automaton accepts a fixed finite set of values, with one
  state per value up to the maximum and an absorbing reject state;
* their exclusive disjunction accepts values in exactly one of the two.

Builders never minimise; decision procedures do that explicitly.
Product states are laid out row major (left id * |right| + right id) so
renderings of the product match the factor layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import AbstractSet, Iterable

import numpy as np

from .dfa import Dfa
from .modular import PERIOD_CAP


@dataclass(frozen=True)
class PeriodicParameter:
    """An eventually periodic set written as (remainders + period*N) xor mismatches.

    ``remainders`` lives in {0..period-1} and ``mismatches`` is a finite
    set of values; a value belongs to the set when it matches the
    remainder pattern or is a mismatch, but not both.  Purely periodic
    sets are exactly those with no mismatches.  ``None`` entries mark a
    parameter whose remainder and mismatch sets were left implicit
    because they are astronomically large (see the decision module).
    """

    period: int
    remainders: frozenset[int] | None
    mismatches: frozenset[int] | None = field(default=frozenset())

    def __post_init__(self):
        if self.period < 1:
            raise ValueError(f"period must be positive, got {self.period}")
        if self.remainders is not None:
            object.__setattr__(self, "remainders", frozenset(int(r) for r in self.remainders))
            if any(not 0 <= r < self.period for r in self.remainders):
                raise ValueError("remainders must lie below the period")
        if self.mismatches is not None:
            object.__setattr__(self, "mismatches", frozenset(int(v) for v in self.mismatches))
            if any(v < 0 for v in self.mismatches):
                raise ValueError("mismatches must be nonnegative")

    @property
    def symbolic(self) -> bool:
        return self.remainders is None

    def member(self, value: int) -> bool:
        """Whether ``value`` belongs to the described set."""
        if self.symbolic:
            raise ValueError("membership is not available for a symbolic parameter")
        return (value % self.period in self.remainders) != (value in self.mismatches)

    def membership_table(self, limit: int) -> np.ndarray:
        """Boolean table of :meth:`member` over 0..limit-1."""
        if self.symbolic:
            raise ValueError("membership is not available for a symbolic parameter")
        pattern = np.zeros(self.period, dtype=bool)
        if self.remainders:
            pattern[sorted(self.remainders)] = True
        table = pattern[np.arange(limit, dtype=np.int64) % self.period]
        for v in self.mismatches:
            if v < limit:
                table[v] = not table[v]
        return table

    def is_proper(self) -> bool:
        """Whether no smaller period realises the same set.

        The remainder pattern determines the answer: the set has a
        smaller eventual period exactly when the pattern is invariant
        under a cyclic shift by period/q for some prime q.
        """
        if self.symbolic:
            raise ValueError("properness is not defined for a symbolic parameter")
        p = self.period
        q = 2
        rem = p
        while q * q <= rem:
            if rem % q == 0:
                if self._shift_invariant(p // q):
                    return False
                while rem % q == 0:
                    rem //= q
            q += 1
        if rem > 1 and self._shift_invariant(p // rem):
            return False
        return True

    def _shift_invariant(self, shift: int) -> bool:
        return all((r + shift) % self.period in self.remainders for r in self.remainders)


def build_mod_automaton(period: int, remainders: AbstractSet[int] | None, base: int) -> Dfa:
    """Automaton whose state after reading u is value(u) modulo ``period``.

    States are the residues, the initial state is 0 and reading digit a
    moves n to n*base + a.  With ``remainders`` as finals it accepts the
    values congruent to one of them; pass ``None`` to leave the final
    set unset (transitions only).
    """
    if period < 1:
        raise ValueError(f"period must be positive, got {period}")
    if period > PERIOD_CAP:
        raise ValueError(f"period {period} exceeds the supported cap {PERIOD_CAP}")
    if base < 2:
        raise ValueError(f"base must be at least 2, got {base}")
    finals_unset = remainders is None
    finals: Iterable[int] = () if finals_unset else remainders
    if not finals_unset and any(not 0 <= r < period for r in remainders):
        raise ValueError("remainders must lie below the period")
    states = np.arange(period, dtype=np.int64)
    delta = np.empty((period, base), dtype=np.int32)
    for a in range(base):
        delta[:, a] = (states * base + a) % period
    return Dfa(base, delta, 0, finals, finals_unset)


def build_mismatch_automaton(values: AbstractSet[int], base: int) -> Dfa:
    """Automaton accepting exactly the finite nonempty set of ``values``.

    One state per integer up to the maximum, reached only by the word of
    that value, plus an absorbing reject state for everything larger.
    """
    if not values:
        raise ValueError("the mismatch set must be nonempty")
    if any(v < 0 for v in values):
        raise ValueError("mismatch values must be nonnegative")
    if base < 2:
        raise ValueError(f"base must be at least 2, got {base}")
    top = max(values)
    reject = top + 1
    states = np.arange(top + 1, dtype=np.int64)
    delta = np.empty((top + 2, base), dtype=np.int32)
    for a in range(base):
        step = states * base + a
        delta[: top + 1, a] = np.where(step <= top, step, reject)
    delta[reject] = reject
    return Dfa(base, delta, 0, values)


def xor_product(left: Dfa, right: Dfa) -> Dfa:
    """Product automaton accepting words accepted by exactly one factor."""
    if left.base != right.base:
        raise ValueError(f"base mismatch: {left.base} vs {right.base}")
    if not (left.is_complete() and right.is_complete()):
        raise ValueError("exclusive disjunction requires complete automata")
    nl, nr = left.num_states, right.num_states
    b = left.base
    delta = (
        left.delta[:, None, :].astype(np.int64) * nr + right.delta[None, :, :]
    ).reshape(nl * nr, b)
    final = (left.final_mask[:, None] ^ right.final_mask[None, :]).ravel()
    return Dfa(b, delta, left.initial * nr + right.initial, np.flatnonzero(final))


def build_eventually_periodic_automaton(param: PeriodicParameter, base: int) -> Dfa:
    """Automaton accepting by value the set described by ``param``."""
    if param.symbolic:
        raise ValueError("cannot build an automaton from a symbolic parameter")
    mod = build_mod_automaton(param.period, param.remainders, base)
    if not param.mismatches:
        return mod
    return xor_product(mod, build_mismatch_automaton(param.mismatches, base))
