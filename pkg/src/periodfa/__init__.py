"""Finite automata over base-b digits and the eventual-periodicity decision.

The package decides, in quasi-linear time, whether a deterministic
automaton reading integers most significant digit first accepts an
eventually periodic set, and if so extracts the proper parameter
(period, remainder set, mismatch set).
"""

from .builders import (
    PeriodicParameter,
    build_eventually_periodic_automaton,
    build_mismatch_automaton,
    build_mod_automaton,
    xor_product,
)
from .decide import (
    Classification,
    Decision,
    decide,
    decide_impurely_periodic,
    decide_purely_periodic,
    extract_parameter,
    reduce_to_proper,
)
from .dfa import (
    ContractError,
    Dfa,
    ResourceLimitError,
    complete,
    is_by_value,
    repr_of,
    trim_accessible,
    value_membership,
    value_of,
    value_state_table,
)
from .minimize import isomorphic, minimize
from .modular import Decomposition, crt_pair, decompose
from .oracle import (
    ValueTable,
    enumerate_membership,
    find_eventual_period,
    proper_parameter_oracle,
)
from .structure import (
    PseudoMorphism,
    UltEqPartition,
    find_pseudo_morphism,
    sccs,
    ult_eq_merge,
    ult_eq_pairgraph,
    ult_index,
    zero_circuit_states,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "ContractError",
    "Decision",
    "Decomposition",
    "Dfa",
    "PeriodicParameter",
    "PseudoMorphism",
    "ResourceLimitError",
    "UltEqPartition",
    "ValueTable",
    "build_eventually_periodic_automaton",
    "build_mismatch_automaton",
    "build_mod_automaton",
    "complete",
    "crt_pair",
    "decide",
    "decide_impurely_periodic",
    "decide_purely_periodic",
    "decompose",
    "enumerate_membership",
    "extract_parameter",
    "find_eventual_period",
    "find_pseudo_morphism",
    "is_by_value",
    "isomorphic",
    "minimize",
    "proper_parameter_oracle",
    "reduce_to_proper",
    "repr_of",
    "sccs",
    "trim_accessible",
    "ult_eq_merge",
    "ult_eq_pairgraph",
    "ult_index",
    "value_membership",
    "value_of",
    "value_state_table",
    "xor_product",
    "zero_circuit_states",
]
