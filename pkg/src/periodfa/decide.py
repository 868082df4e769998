"""Deciding whether an automaton accepts an eventually periodic set.

The test for purely periodic sets runs on the minimal automaton:

1. count the states on 0-circuits;
2. reject immediately if that count shares a factor with the base
   (for a positive instance it equals the coprime part of the proper
   period, so it must be coprime with the base);
3. build the counting automaton with that many residue states and look
   for a pseudo-morphism onto it;
4. require the pseudo-morphism's fibres to sit inside single
   ultimate-equivalence classes.

The impure variant writes the 0-circuit count as (modulus + 1), demands
that the initial state carry the digit-0 self-loop and no other incoming
transition, and exempts the initial state from the fibre condition.
Exactly one of the two tests accepts on any eventually periodic input.

On success the accepted set has eventual period modulus * base**depth
with every irregularity below base**depth, where depth is the largest
stabilisation index over fibres; the proper parameter follows by a
divisor search over the remainder pattern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .builders import PeriodicParameter, build_mod_automaton
from .dfa import (
    ContractError,
    Dfa,
    complete,
    is_by_value,
    trim_accessible,
    value_membership,
)
from .minimize import minimize
from .modular import divisors_ascending
from .structure import (
    PseudoMorphism,
    find_pseudo_morphism,
    refinement_bound,
    sccs,
    zero_circuit_states,
)


class Classification(str, Enum):
    PURELY_PERIODIC = "PurelyPeriodic"
    IMPURELY_PERIODIC = "ImpurelyPeriodic"
    NOT_EVENTUALLY_PERIODIC = "NotEventuallyPeriodic"
    NOT_BY_VALUE = "NotByValue"


REASON_NOT_BY_VALUE = "not-by-value"
REASON_INITIAL_STATE_SHAPE = "initial-state-shape"
REASON_ZERO_CIRCUIT_COUNT = "zero-circuit-count-not-coprime"
REASON_NO_PSEUDO_MORPHISM = "no-pseudo-morphism"
REASON_REFINEMENT_FAILS = "refinement-fails"

# pipeline stage per reason; a later stage is the more informative diagnosis
_REASON_STAGE = {
    REASON_NOT_BY_VALUE: 0,
    REASON_INITIAL_STATE_SHAPE: 1,
    REASON_ZERO_CIRCUIT_COUNT: 2,
    REASON_NO_PSEUDO_MORPHISM: 3,
    REASON_REFINEMENT_FAILS: 4,
}

# beyond this many tabulated values, parameter extraction goes structural
DEFAULT_TABLE_LIMIT = 1 << 23


@dataclass(frozen=True)
class Decision:
    """Outcome of the periodicity decision.

    ``zero_circuit_count`` is the statistic the accepting (or last
    attempted) test used and ``stabilisation_bound`` the largest
    stabilisation index over pseudo-morphism fibres, 0 when the pipeline
    stopped before computing it.
    """

    classification: Classification
    parameter: PeriodicParameter | None
    zero_circuit_count: int
    stabilisation_bound: int
    reason: str | None = None

    @property
    def periodic(self) -> bool:
        return self.classification in (
            Classification.PURELY_PERIODIC,
            Classification.IMPURELY_PERIODIC,
        )

    def to_json_dict(self) -> dict:
        """Report with a stable field order."""
        param = self.parameter
        return {
            "by_value": self.classification is not Classification.NOT_BY_VALUE,
            "classification": self.classification.value,
            "period": None if param is None else param.period,
            "remainders": _sorted_or_none(param and param.remainders),
            "mismatches": _sorted_or_none(param and param.mismatches),
            "ell": self.zero_circuit_count,
            "m": self.stabilisation_bound,
            "reason": self.reason,
        }


def _sorted_or_none(values) -> list[int] | None:
    if values is None or values is False:
        return None
    return sorted(values)


def _negative(reason: str, count: int) -> Decision:
    return Decision(Classification.NOT_EVENTUALLY_PERIODIC, None, count, 0, reason)


def decide_purely_periodic(
    minimal: Dfa, table_limit: int = DEFAULT_TABLE_LIMIT
) -> Decision:
    """Test a minimal by-value automaton for purely periodic acceptance.

    A negative decision only means "not purely periodic"; run the impure
    test before concluding anything stronger.
    """
    if not minimal.is_complete():
        raise ValueError("the purely periodic test requires a complete automaton")
    if not is_by_value(minimal):
        raise ValueError(
            "the purely periodic test requires a digit-0 self-loop on the initial state"
        )
    count = len(zero_circuit_states(minimal))
    if math.gcd(count, minimal.base) != 1:
        return _negative(REASON_ZERO_CIRCUIT_COUNT, count)
    counter = build_mod_automaton(count, None, minimal.base)
    morphism = find_pseudo_morphism(minimal, counter)
    if morphism is None:
        return _negative(REASON_NO_PSEUDO_MORPHISM, count)
    refines, depth = refinement_bound(minimal, morphism.mapping)
    if not refines:
        return _negative(REASON_REFINEMENT_FAILS, count)
    param = extract_parameter(
        minimal, count, morphism, depth, initial_excluded=False, table_limit=table_limit
    )
    if param.mismatches is not None and param.mismatches:
        raise ContractError("purely periodic extraction produced mismatches")
    return Decision(Classification.PURELY_PERIODIC, param, count, depth)


def decide_impurely_periodic(
    minimal: Dfa, table_limit: int = DEFAULT_TABLE_LIMIT
) -> Decision:
    """Test a minimal automaton for impurely periodic acceptance."""
    if not minimal.is_complete():
        raise ValueError("the impurely periodic test requires a complete automaton")
    total = len(zero_circuit_states(minimal))
    if total < 2:
        # with the initial-state shape below, completeness forces a second
        # 0-circuit among the other states, so this is the same failure
        return _negative(REASON_INITIAL_STATE_SHAPE, total)
    count = total - 1
    init = minimal.initial
    has_loop = int(minimal.delta[init, 0]) == init
    if not has_loop or int((minimal.delta == init).sum()) != 1:
        return _negative(REASON_INITIAL_STATE_SHAPE, count)
    counter = build_mod_automaton(count, None, minimal.base)
    morphism = find_pseudo_morphism(minimal, counter)
    if morphism is None:
        return _negative(REASON_NO_PSEUDO_MORPHISM, count)
    refines, depth = refinement_bound(minimal, morphism.mapping, skip=init)
    if not refines:
        return _negative(REASON_REFINEMENT_FAILS, count)
    param = extract_parameter(
        minimal, count, morphism, depth, initial_excluded=True, table_limit=table_limit
    )
    if param.mismatches is not None and not param.mismatches:
        raise ContractError("impurely periodic extraction produced no mismatches")
    return Decision(Classification.IMPURELY_PERIODIC, param, count, depth)


def decide(dfa: Dfa, table_limit: int = DEFAULT_TABLE_LIMIT) -> Decision:
    """Classify the set of values accepted by an arbitrary automaton.

    Completes, trims and minimises, then runs the purely periodic test
    followed, on failure, by the impurely periodic one.  Total on every
    valid automaton.
    """
    minimal, _ = minimize(trim_accessible(complete(dfa)))
    count = len(zero_circuit_states(minimal))
    if not is_by_value(minimal):
        return Decision(
            Classification.NOT_BY_VALUE, None, count, 0, REASON_NOT_BY_VALUE
        )
    pure = decide_purely_periodic(minimal, table_limit)
    if pure.periodic:
        return pure
    impure = decide_impurely_periodic(minimal, table_limit)
    if impure.periodic:
        return impure
    reason = max(pure.reason, impure.reason, key=_REASON_STAGE.__getitem__)
    return _negative(reason, count)


def extract_parameter(
    minimal: Dfa,
    modulus: int,
    morphism: PseudoMorphism,
    depth: int,
    *,
    initial_excluded: bool,
    table_limit: int = DEFAULT_TABLE_LIMIT,
) -> PeriodicParameter:
    """Proper parameter of the accepted set after a successful test.

    The characterisation guarantees eventual period modulus*base**depth
    with all irregularities below base**depth, so tabulating membership
    up to four coarse periods suffices.  When that table would be too
    large the extraction switches to the structural search, which
    reports the period with implicit remainder and mismatch sets.
    """
    base = minimal.base
    coarse = modulus * base**depth
    bound = 2 * coarse
    need = bound + 2 * coarse
    if need > table_limit:
        return _symbolic_parameter(minimal, morphism, modulus, depth)
    bits = value_membership(minimal, need)
    return reduce_to_proper(coarse, bits, bound)


def reduce_to_proper(
    period: int,
    membership: np.ndarray | Sequence[bool] | Callable[[int], bool],
    bound: int,
) -> PeriodicParameter:
    """Reduce a known eventual period to the proper parameter.

    ``membership`` must be ``period``-periodic from some threshold not
    exceeding ``bound`` (as a table it has to cover bound + 2*period
    values; a callable is tabulated first).  The minimal eventual period
    divides every eventual period, so it is found among the divisors of
    ``period``, smallest first; a candidate is good exactly when the
    remainder pattern is invariant under a cyclic shift by it.
    """
    if period < 1 or bound < 0:
        raise ValueError("period must be positive and bound nonnegative")
    need = bound + 2 * period
    if callable(membership):
        bits = np.fromiter((bool(membership(v)) for v in range(need)), dtype=bool)
    else:
        bits = np.asarray(membership, dtype=bool)
        if bits.shape[0] < need:
            raise ValueError(
                f"membership table of {bits.shape[0]} values is too short "
                f"(needs {need})"
            )
    if not np.array_equal(
        bits[bound : bound + period], bits[bound + period : bound + 2 * period]
    ):
        raise ContractError("membership is not periodic with the stated period")

    # remainder pattern indexed by residue, read beyond the bound
    residues = np.arange(period, dtype=np.int64)
    pattern = bits[bound + ((residues - bound) % period)]
    for p in divisors_ascending(period):
        if np.array_equal(pattern, np.roll(pattern, -p)):
            break
    remainders = frozenset(np.flatnonzero(pattern[:p]).tolist())
    expected = pattern[:p][np.arange(bound, dtype=np.int64) % p]
    mismatches = frozenset(np.flatnonzero(bits[:bound] != expected).tolist())
    return PeriodicParameter(p, remainders, mismatches)


# ---------------------------------------------------------------------------
# structural extraction for out-of-table coarse periods


def _recurrent_by_value(dfa: Dfa) -> np.ndarray:
    """States reached by the representations of arbitrarily many values.

    A state qualifies exactly when it is reachable from a cycle that a
    word with nonzero leading digit reaches: large values have long
    representations, and long runs must traverse a cycle.
    """
    n, b = dfa.num_states, dfa.base
    rows = dfa.delta.tolist()
    seeds = {rows[dfa.initial][a] for a in range(1, b)}

    def closure(starts) -> np.ndarray:
        seen = np.zeros(n, dtype=bool)
        stack = [s for s in starts]
        for s in stack:
            seen[s] = True
        while stack:
            for t in rows[stack.pop()]:
                if t >= 0 and not seen[t]:
                    seen[t] = True
                    stack.append(t)
        return seen

    nonzero_reach = closure(seeds)
    cycle_states = [
        s
        for members, nontrivial in sccs(dfa)
        if nontrivial
        for s in members
        if nonzero_reach[s]
    ]
    return closure(cycle_states)


def _symbolic_parameter(
    dfa: Dfa, morphism: PseudoMorphism, modulus: int, depth: int
) -> PeriodicParameter:
    """Structural period search when the coarse period cannot be tabulated.

    modulus * base**r is an eventual period exactly when any two
    recurrent states in the same morphism fibre give equal verdicts on
    every word of length exactly r; the least such r yields the smallest
    period of this shape.  For a prime base that is the proper period;
    for a composite base it is a (possibly non-minimal) eventual period,
    since only powers of the base are searched.  Remainders and
    mismatches are astronomically large here and stay implicit.
    """
    n, b = dfa.num_states, dfa.base
    keep = np.flatnonzero(_recurrent_by_value(dfa))
    if keep.size == 0:
        raise ContractError("a complete automaton must have recurrent states")
    groups = morphism.mapping[keep]
    gids, first_pos = np.unique(groups, return_index=True)
    rep_of = np.empty(int(gids.max()) + 1, dtype=np.int64)
    rep_of[gids] = first_pos
    rep_slot = rep_of[groups]

    # round r groups states by their verdicts on words of length exactly r
    cls = dfa.final_mask.astype(np.int64)
    delta = dfa.delta
    for r in range(depth + 1):
        if r > 0:
            num = int(cls.max()) + 1
            key = cls[delta[:, 0]]
            for a in range(1, b):
                key = key * num + cls[delta[:, a]]
                _, key = np.unique(key, return_inverse=True)
                key = key.astype(np.int64)
            cls = key
        sub = cls[keep]
        if np.array_equal(sub, sub[rep_slot]):
            return PeriodicParameter(modulus * b**r, None, None)
    raise ContractError("structural search exceeded the stabilisation bound")
