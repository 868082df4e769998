"""Brute-force reference implementations for testing.

Everything here works on an explicit membership bitmap and never touches
the decision pipeline, so it can serve as an independent check of it.
The period search is a semi-decision: a negative answer only certifies
the searched box.
"""

from __future__ import annotations

from dataclasses import dataclass

from .builders import PeriodicParameter
from .dfa import Dfa, ResourceLimitError

MAX_TABLE_VALUES = 10**7
DEFAULT_MAX_PERIOD = 256
DEFAULT_MAX_THRESHOLD = 10**4
DEFAULT_VALUES = 10**5


@dataclass(frozen=True)
class ValueTable:
    """Membership bitmap: ``bits[v]`` is 1 when the automaton accepts value v."""

    bits: bytes

    @property
    def max_value(self) -> int:
        return len(self.bits) - 1

    def member(self, value: int) -> bool:
        return self.bits[value] == 1


def enumerate_membership(dfa: Dfa, max_value: int) -> ValueTable:
    """Run every shortest representation up to ``max_value`` through ``dfa``.

    Representations share prefixes: the state for v is one step past the
    state for v // base, so the scan is linear in the table size.
    """
    if max_value < 0:
        raise ValueError("max_value must be nonnegative")
    if max_value > MAX_TABLE_VALUES:
        raise ResourceLimitError(
            f"membership table of {max_value} values exceeds the {MAX_TABLE_VALUES} guard"
        )
    if not dfa.is_complete():
        raise ValueError("membership enumeration requires a complete automaton")
    b = dfa.base
    rows = dfa.delta.tolist()
    is_final = [1 if q in dfa.finals else 0 for q in range(dfa.num_states)]
    size = max_value + 1
    state_of = [0] * size
    state_of[0] = dfa.initial
    bits = bytearray(size)
    bits[0] = is_final[dfa.initial]
    for v in range(1, size):
        st = rows[state_of[v // b]][v % b]
        state_of[v] = st
        bits[v] = is_final[st]
    return ValueTable(bytes(bits))


def find_eventual_period(
    table: ValueTable,
    max_period: int = DEFAULT_MAX_PERIOD,
    max_threshold: int = DEFAULT_MAX_THRESHOLD,
) -> tuple[int, int] | None:
    """Smallest period and threshold visible in the table, or None.

    Searches periods p <= max_period and thresholds N <= max_threshold
    such that membership of v and v + p agree for every v >= N covered
    by the table.  The table must extend at least 2 * max_period values
    past the threshold so a period has room to show.
    """
    if max_period < 1 or max_threshold < 0:
        raise ValueError("search box must be nonnegative")
    size = len(table.bits)
    if size < max_threshold + 2 * max_period:
        raise ValueError(
            f"table of {size} values is too short for the requested box "
            f"(needs {max_threshold + 2 * max_period})"
        )
    buf = table.bits
    for p in range(1, max_period + 1):
        if buf[max_threshold : size - p] != buf[max_threshold + p :]:
            continue
        threshold = 0
        for v in range(max_threshold - 1, -1, -1):
            if buf[v] != buf[v + p]:
                threshold = v + 1
                break
        return p, threshold
    return None


def proper_parameter_oracle(
    table: ValueTable,
    max_period: int = DEFAULT_MAX_PERIOD,
    max_threshold: int = DEFAULT_MAX_THRESHOLD,
) -> PeriodicParameter:
    """Exhaustive smallest-period parameter extraction from a bitmap.

    The smallest period found by scanning is the proper one because the
    minimal eventual period divides every other; remainders are read
    beyond the threshold and mismatches collected below it.
    """
    found = find_eventual_period(table, max_period, max_threshold)
    if found is None:
        raise ValueError("table is not eventually periodic within the search box")
    period, threshold = found
    buf = table.bits
    remainders = frozenset(
        r for r in range(period) if buf[threshold + ((r - threshold) % period)]
    )
    mismatches = frozenset(
        v for v in range(threshold) if bool(buf[v]) != (v % period in remainders)
    )
    return PeriodicParameter(period, remainders, mismatches)
