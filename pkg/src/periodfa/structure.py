"""Structural analyses: components, 0-circuits, ultimate equivalence.

Two states are ultimately equivalent when their runs coincide on every
sufficiently long word; the stabilisation index of a pair is the least
length from which the runs agree.  The relation is computed here by two
independent algorithms:

* :func:`ult_eq_merge` iterates coarsening rounds.  Round m groups
  states whose runs agree on every word of length at least m; round m+1
  derives from round m by grouping on successor classes, and rounds only
  ever merge, so the sequence stabilises in at most n rounds at the
  ultimate-equivalence partition.  Each round is O(bn log n).
* :func:`ult_eq_pairgraph` is the quadratic reference: on the graph of
  state pairs stepping synchronously, a pair is NOT ultimately
  equivalent exactly when it can reach a cycle.

Both return per-class stabilisation indices; the pair-graph variant is
kept as a permanent test oracle and refuses large inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .dfa import Dfa, ResourceLimitError

PAIRGRAPH_MAX_STATES = 4000


# ---------------------------------------------------------------------------
# strongly connected components and 0-circuits


def sccs(dfa: Dfa) -> list[tuple[tuple[int, ...], bool]]:
    """Strongly connected components, each flagged nontrivial if it has a cycle.

    Tarjan's algorithm, iterative.  Components are listed in completion
    order (every component precedes the components that reach it) with
    sorted members; a singleton is nontrivial only if it carries a
    self-loop.
    """
    n, b = dfa.num_states, dfa.base
    rows = dfa.delta.tolist()
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    out: list[tuple[tuple[int, ...], bool]] = []
    counter = 0

    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, ai = work[-1]
            if ai == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            advanced = False
            while ai < b:
                w = rows[v][ai]
                ai += 1
                if w < 0:
                    continue
                if index[w] < 0:
                    work[-1] = (v, ai)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    members.append(w)
                    if w == v:
                        break
                members.sort()
                nontrivial = len(members) > 1 or any(
                    rows[v][a] == v for a in range(b)
                )
                out.append((tuple(members), nontrivial))
    return out


def zero_circuit_states(dfa: Dfa) -> frozenset[int]:
    """States lying on a cycle labelled entirely by the digit 0.

    The digit-0 successor map of a complete automaton is a function, so
    these are the recurrent states of a functional graph, found by
    peeling in-degree-zero states.
    """
    zero_succ = dfa.delta[:, 0]
    if (zero_succ < 0).any():
        raise ValueError("0-circuit analysis requires every state to have a 0-successor")
    n = dfa.num_states
    indeg = np.bincount(zero_succ, minlength=n).tolist()
    succ = zero_succ.tolist()
    stack = [s for s in range(n) if indeg[s] == 0]
    while stack:
        t = succ[stack.pop()]
        indeg[t] -= 1
        if indeg[t] == 0:
            stack.append(t)
    return frozenset(s for s in range(n) if indeg[s] > 0)


# ---------------------------------------------------------------------------
# ultimate equivalence, merge-rounds algorithm


@dataclass(frozen=True)
class UltEqPartition:
    """Ultimate-equivalence classes plus per-class stabilisation indices.

    ``class_of`` maps states to class ids numbered by smallest member;
    ``index_of_class`` gives, per class, the least m such that all
    members agree on every word of length at least m (0 for singletons).
    """

    class_of: np.ndarray
    num_classes: int
    index_of_class: np.ndarray

    def __post_init__(self):
        self.class_of.setflags(write=False)
        self.index_of_class.setflags(write=False)

    def classes(self) -> list[list[int]]:
        members: list[list[int]] = [[] for _ in range(self.num_classes)]
        for s, c in enumerate(self.class_of.tolist()):
            members[c].append(s)
        return members

    def same_class(self, s: int, t: int) -> bool:
        return int(self.class_of[s]) == int(self.class_of[t])


def _regroup(key: np.ndarray) -> tuple[np.ndarray, int]:
    _, inverse = np.unique(key, return_inverse=True)
    return inverse.astype(np.int64, copy=False), int(inverse.max()) + 1


def merge_rounds(delta: np.ndarray) -> Iterator[tuple[int, np.ndarray, int]]:
    """Yield (round, class_of, num_classes) for the coarsening sequence.

    Round 0 is the discrete partition.  Iteration stops after the last
    strictly coarser round, i.e. the final yield is the fixpoint: the
    ultimate-equivalence partition.
    """
    n, b = delta.shape
    cls = np.arange(n, dtype=np.int64)
    num = n
    yield 0, cls, num
    m = 0
    while num > 1:
        m += 1
        key = cls[delta[:, 0]]
        new_num = num
        for a in range(1, b):
            key = key * num + cls[delta[:, a]]
            key, new_num = _regroup(key)
        if new_num == num:
            return
        cls, num = key, new_num
        yield m, cls, num


def _canonical_classes(cls: np.ndarray, num: int, index: np.ndarray) -> UltEqPartition:
    """Renumber classes by smallest member for deterministic output."""
    _, first_occ = np.unique(cls, return_index=True)
    order = np.argsort(first_occ, kind="stable")
    remap = np.empty(num, dtype=np.int64)
    remap[order] = np.arange(num, dtype=np.int64)
    return UltEqPartition(remap[cls], num, index[order].astype(np.int64))


def ult_eq_merge(dfa: Dfa) -> UltEqPartition:
    """Ultimate-equivalence partition by iterated merging.

    Quasi-linear per round; the number of rounds is the largest
    stabilisation index plus one.
    """
    if not dfa.is_complete():
        raise ValueError("ultimate equivalence requires a complete automaton")
    n = dfa.num_states
    assembled = np.zeros(n, dtype=np.int64)
    prev_cls = np.arange(n, dtype=np.int64)
    prev_num = n
    for m, cls, num in merge_rounds(dfa.delta):
        if m == 0:
            continue
        combo = cls * prev_num + prev_cls
        parts = np.unique(combo)
        new_of = parts // prev_num
        old_of = parts % prev_num
        counts = np.bincount(new_of, minlength=num)
        first_pos = np.unique(new_of, return_index=True)[1]
        assembled = np.where(counts > 1, m, assembled[old_of[first_pos]])
        prev_cls, prev_num = cls, num
    return _canonical_classes(prev_cls, prev_num, assembled)


def refinement_bound(
    dfa: Dfa, grouping: np.ndarray, skip: int | None = None
) -> tuple[bool, int | None]:
    """Least round at which every group sits inside one equivalence class.

    ``grouping`` assigns each state a group id (for the decision
    procedure: its image under a pseudo-morphism); ``skip`` optionally
    leaves one state out of every group.  Returns (True, m) for the
    earliest coarsening round m uniting all groups, which is exactly the
    largest per-group stabilisation index, or (False, None) when the
    relation never refines, i.e. some group still straddles two classes
    at the fixpoint.
    """
    n = dfa.num_states
    keep = np.ones(n, dtype=bool)
    if skip is not None:
        keep[skip] = False
    idx = np.flatnonzero(keep)
    if idx.size == 0:
        return True, 0
    groups = np.asarray(grouping, dtype=np.int64)[idx]
    gids, first_pos = np.unique(groups, return_index=True)
    rep_of = np.empty(int(gids.max()) + 1, dtype=np.int64)
    rep_of[gids] = first_pos
    rep_slot = rep_of[groups]
    for m, cls, _num in merge_rounds(dfa.delta):
        sub = cls[idx]
        if np.array_equal(sub, sub[rep_slot]):
            return True, m
    return False, None


# ---------------------------------------------------------------------------
# ultimate equivalence, pair-graph reference algorithm


def _pair_successors(rows: list[list[int]], s: int, t: int) -> list[tuple[int, int]]:
    out = []
    for x, y in zip(rows[s], rows[t]):
        out.append((x, y) if x <= y else (y, x))
    return out


def _pair_tarjan(rows, start_pairs):
    """Tarjan over the synchronous pair graph, restricted to what
    ``start_pairs`` reaches.  Diagonal pairs are sinks.

    Returns (order, bad) where ``order`` lists non-diagonal pairs in
    completion order (successors first) and ``bad`` is the set of pairs
    that lie on or reach a cycle, i.e. the non-ultimately-equivalent
    pairs among those explored.
    """
    index: dict[tuple[int, int], int] = {}
    low: dict[tuple[int, int], int] = {}
    on_stack: set[tuple[int, int]] = set()
    stack: list[tuple[int, int]] = []
    order: list[tuple[int, int]] = []
    cyclic: set[tuple[int, int]] = set()
    counter = 0

    for root in start_pairs:
        if root[0] == root[1] or root in index:
            continue
        work = [(root, 0)]
        while work:
            v, ai = work[-1]
            if ai == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            succ = _pair_successors(rows, *v)
            advanced = False
            while ai < len(succ):
                w = succ[ai]
                ai += 1
                if w[0] == w[1]:
                    continue
                if w not in index:
                    work[-1] = (v, ai)
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    members.append(w)
                    order.append(w)
                    if w == v:
                        break
                if len(members) > 1 or v in _pair_successors(rows, *v):
                    cyclic.update(members)

    # a pair is bad when it reaches a cyclic pair; completion order has
    # successors first, so one forward sweep settles everything
    bad = set(cyclic)
    for v in order:
        if v in bad:
            continue
        for w in _pair_successors(rows, *v):
            if w[0] != w[1] and w in bad:
                bad.add(v)
                break
    return order, bad


def _pair_indices(rows, order, bad) -> dict[tuple[int, int], int]:
    """Stabilisation index for every explored good pair.

    Good pairs form a DAG ending in diagonal pairs, so indices follow
    the recurrence index(p) = 1 + max over digits of index(successor),
    with diagonal successors contributing 0; completion order makes a
    single forward sweep sufficient.
    """
    e: dict[tuple[int, int], int] = {}
    for v in order:
        if v in bad:
            continue
        best = 0
        for w in _pair_successors(rows, *v):
            if w[0] != w[1]:
                best = max(best, e[w])
        e[v] = best + 1
    return e


def ult_eq_pairgraph(dfa: Dfa) -> UltEqPartition:
    """Ultimate-equivalence partition via the synchronous pair graph.

    Quadratic reference implementation used as a test oracle; refuses
    automata above ``PAIRGRAPH_MAX_STATES`` states.
    """
    if not dfa.is_complete():
        raise ValueError("ultimate equivalence requires a complete automaton")
    n = dfa.num_states
    if n > PAIRGRAPH_MAX_STATES:
        raise ResourceLimitError(
            f"pair-graph analysis refuses n={n} > {PAIRGRAPH_MAX_STATES} states"
        )
    rows = dfa.delta.tolist()
    all_pairs = [(s, t) for s in range(n) for t in range(s + 1, n)]
    order, bad = _pair_tarjan(rows, all_pairs)
    e = _pair_indices(rows, order, bad)

    # union-find over states; good pairs are exactly the equivalent ones
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (s, t) in all_pairs:
        if (s, t) not in bad:
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[max(rs, rt)] = min(rs, rt)

    cls = np.array([find(s) for s in range(n)], dtype=np.int64)
    roots, cls_dense = np.unique(cls, return_inverse=True)
    num = roots.size
    index = np.zeros(num, dtype=np.int64)
    for (s, t) in all_pairs:
        if (s, t) not in bad:
            c = cls_dense[s]
            if e[(s, t)] > index[c]:
                index[c] = e[(s, t)]
    return _canonical_classes(cls_dense.astype(np.int64), num, index)


def ult_index(dfa: Dfa, s: int, t: int) -> int | float:
    """Least m from which the runs of ``s`` and ``t`` agree on all words.

    Returns ``math.inf`` when the pair can reach a cycle of the pair
    graph, i.e. when the states are not ultimately equivalent.  Only the
    pairs reachable from (s, t) are explored.
    """
    if not dfa.is_complete():
        raise ValueError("stabilisation indices require a complete automaton")
    n = dfa.num_states
    if not (0 <= s < n and 0 <= t < n):
        raise ValueError("state out of range")
    if s == t:
        return 0
    start = (s, t) if s <= t else (t, s)
    rows = dfa.delta.tolist()
    order, bad = _pair_tarjan(rows, [start])
    if start in bad:
        return math.inf
    e = _pair_indices(rows, order, bad)
    return e[start]


# ---------------------------------------------------------------------------
# pseudo-morphisms


@dataclass(frozen=True)
class PseudoMorphism:
    """Total state map preserving the initial state and transitions.

    Finality is deliberately unconstrained.  ``mapping[s]`` is the image
    state; the map is unique when it exists, because the image of the
    state reached by a word is forced to be the state the target reaches
    on that word.
    """

    mapping: np.ndarray

    def __post_init__(self):
        self.mapping.setflags(write=False)

    def __call__(self, state: int) -> int:
        return int(self.mapping[state])


def find_pseudo_morphism(source: Dfa, target: Dfa) -> PseudoMorphism | None:
    """The unique transition-preserving map source -> target, or None.

    Breadth-first traversal of the source carrying the synchronised
    target state: the image of a state is fixed at first visit and any
    later contradiction disproves existence.  Both automata must be
    complete; the source must be accessible.
    """
    if source.base != target.base:
        raise ValueError(f"base mismatch: {source.base} vs {target.base}")
    if not (source.is_complete() and target.is_complete()):
        raise ValueError("pseudo-morphism search requires complete automata")
    n, b = source.num_states, source.base
    srows = source.delta.tolist()
    trows = target.delta.tolist()
    mapping = [-1] * n
    mapping[source.initial] = target.initial
    queue = [source.initial]
    head = 0
    while head < len(queue):
        sq = queue[head]
        head += 1
        img_row = trows[mapping[sq]]
        src_row = srows[sq]
        for a in range(b):
            s2 = src_row[a]
            m2 = img_row[a]
            sofar = mapping[s2]
            if sofar < 0:
                mapping[s2] = m2
                queue.append(s2)
            elif sofar != m2:
                return None
    if head != n:
        raise ValueError("pseudo-morphism search requires an accessible source")
    return PseudoMorphism(np.array(mapping, dtype=np.int64))
