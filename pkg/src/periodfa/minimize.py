"""Minimisation by partition refinement, and isomorphism of minimal automata.

Two refinement engines compute the same coarsest congruence:

* ``rounds``: vectorised signature grouping.  Each round regroups states
  by (own class, classes of successors) until stable.  A round is
  O(bn log n) and the number of rounds equals the automaton's
  distinguishing depth, which is logarithmic for the automata this
  package produces but linear for chain-shaped adversaries.
* ``hopcroft``: classic smaller-half worklist refinement, O(bn log n)
  unconditionally.

The default runs rounds with a logarithmic cap and falls back to
Hopcroft if the cap is hit, so the worst case stays O(bn log n) while
the common case is array-speed.
"""

from __future__ import annotations

import numpy as np

from .dfa import Dfa, breadth_first_order


def _regroup(key: np.ndarray) -> tuple[np.ndarray, int]:
    """Dense class ids for equal key values."""
    _, inverse = np.unique(key, return_inverse=True)
    return inverse.astype(np.int64, copy=False), int(inverse.max()) + 1


def _nerode_rounds(delta: np.ndarray, final_mask: np.ndarray, max_rounds: int):
    """Moore-style refinement; returns (class_of, num) or None if capped."""
    n, b = delta.shape
    cls, num = _regroup(final_mask.astype(np.int64))
    if num == 1:
        return cls, num
    for _ in range(max_rounds):
        key = cls
        knum = num
        for a in range(b):
            key = key * num + cls[delta[:, a]]
            key, knum = _regroup(key)
        if knum == num:
            return cls, num
        cls, num = key, knum
    return None


def _nerode_hopcroft(delta: np.ndarray, final_mask: np.ndarray):
    """Smaller-half worklist refinement; returns (class_of, num)."""
    n, b = delta.shape
    succ = [delta[:, a].tolist() for a in range(b)]
    preds: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(b)]
    for a in range(b):
        pa = preds[a]
        for s, t in enumerate(succ[a]):
            pa[t].append(s)

    finals = np.flatnonzero(final_mask).tolist()
    others = np.flatnonzero(~final_mask).tolist()
    blocks: list[set[int]] = []
    block_of = [0] * n
    for members in (finals, others):
        if members:
            bid = len(blocks)
            blocks.append(set(members))
            for s in members:
                block_of[s] = bid
    if len(blocks) == 1:
        return np.zeros(n, dtype=np.int64), 1

    smaller = 0 if len(blocks[0]) <= len(blocks[1]) else 1
    work = {(smaller, a) for a in range(b)}
    while work:
        bid, a = work.pop()
        splitter = list(blocks[bid])
        pa = preds[a]
        touched: dict[int, list[int]] = {}
        for t in splitter:
            for s in pa[t]:
                touched.setdefault(block_of[s], []).append(s)
        for blk, hits in touched.items():
            members = blocks[blk]
            if len(hits) == len(members):
                continue
            hitset = set(hits)
            rest = members - hitset
            new_id = len(blocks)
            blocks.append(hitset)
            blocks[blk] = rest
            for s in hitset:
                block_of[s] = new_id
            for aa in range(b):
                if (blk, aa) in work:
                    work.add((new_id, aa))
                else:
                    work.add((new_id, aa) if len(hitset) <= len(rest) else (blk, aa))
    return np.array(block_of, dtype=np.int64), len(blocks)


def nerode_partition(dfa: Dfa, method: str = "auto") -> tuple[np.ndarray, int]:
    """Class array and class count of the Nerode congruence.

    ``method`` is one of ``auto`` (capped rounds, Hopcroft fallback),
    ``rounds`` or ``hopcroft``.
    """
    if not dfa.is_complete():
        raise ValueError("minimisation requires a complete automaton")
    if method not in ("auto", "rounds", "hopcroft"):
        raise ValueError(f"unknown minimisation method {method!r}")
    delta = dfa.delta
    mask = dfa.final_mask
    n = dfa.num_states
    if method == "hopcroft":
        return _nerode_hopcroft(delta, mask)
    cap = n if method == "rounds" else max(48, 4 * int(np.log2(max(n, 2))) + 16)
    got = _nerode_rounds(delta, mask, cap)
    if got is None:
        # refinement always converges within n rounds
        assert method == "auto"
        return _nerode_hopcroft(delta, mask)
    return got


def minimize(dfa: Dfa, method: str = "auto") -> tuple[Dfa, np.ndarray]:
    """Minimal complete automaton for the same language, plus the state map.

    Requires a complete, accessible automaton.  The returned array sends
    each input state to its state in the minimal automaton; two states
    map together exactly when no word separates their acceptance.  The
    result is renumbered canonically (breadth first from the initial
    state), so minimising twice is the identity.
    """
    if not dfa.is_complete():
        raise ValueError("minimisation requires a complete automaton")
    if breadth_first_order(dfa).size != dfa.num_states:
        raise ValueError("minimisation requires an accessible automaton; trim first")

    cls, num = nerode_partition(dfa, method)
    reps = np.unique(cls, return_index=True)[1]
    qdelta = cls[dfa.delta[reps]].astype(np.int32)
    qfinals = np.flatnonzero(dfa.final_mask[reps])
    quotient = Dfa(dfa.base, qdelta, int(cls[dfa.initial]), qfinals, dfa.finals_unset)

    order = breadth_first_order(quotient)
    renum = np.empty(num, dtype=np.int64)
    renum[order] = np.arange(num, dtype=np.int64)
    delta = renum[quotient.delta[order]].astype(np.int32)
    finals = [int(renum[q]) for q in quotient.finals]
    canonical = Dfa(dfa.base, delta, 0, finals, dfa.finals_unset)
    return canonical, renum[cls]


def isomorphic(left: Dfa, right: Dfa) -> bool:
    """Whether a transition- and finality-preserving bijection exists.

    Both automata must be complete and accessible; for minimal automata
    this decides language equality.  Computed by a parallel traversal
    from the initial states.
    """
    if left.base != right.base:
        return False
    if left.num_states != right.num_states:
        return False
    if len(left.finals) != len(right.finals):
        return False
    n, b = left.num_states, left.base
    image = np.full(n, -1, dtype=np.int64)
    image[left.initial] = right.initial
    stack = [left.initial]
    lmask, rmask = left.final_mask, right.final_mask
    while stack:
        s = stack.pop()
        t = image[s]
        if bool(lmask[s]) != bool(rmask[t]):
            return False
        for a in range(b):
            s2 = int(left.delta[s, a])
            t2 = int(right.delta[t, a])
            if s2 < 0 or t2 < 0:
                if (s2 < 0) != (t2 < 0):
                    return False
                continue
            if image[s2] < 0:
                image[s2] = t2
                stack.append(s2)
            elif image[s2] != t2:
                return False
    if (image < 0).any():
        raise ValueError("isomorphism test requires accessible automata")
    # a total map with equal state counts whose image is transition-closed
    # and contains the initial state is onto, hence bijective
    return True
