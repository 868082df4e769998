"""Text format and DOT export for automata.

The text format is line oriented and whitespace separated, with '#'
starting a comment anywhere on a line:

    base 2
    states 12
    initial 0
    finals 5 7
    0 0 0      # source digit destination
    0 1 1
    ...

The ``finals`` line may list nothing.  Missing transitions are permitted
and are routed to a fresh sink when the file is loaded.
"""

from __future__ import annotations

import numpy as np

from .dfa import Dfa, complete
from .structure import zero_circuit_states


class FormatError(ValueError):
    """A malformed automaton file; carries the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_text(text: str, autocomplete: bool = True) -> Dfa:
    """Parse the text format; completes the automaton unless told not to."""
    header: dict[str, tuple[int, list[str]]] = {}
    transitions: list[tuple[int, int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0]
        if key in ("base", "states", "initial", "finals"):
            if key in header:
                raise FormatError(lineno, f"duplicate '{key}' line")
            header[key] = (lineno, tokens[1:])
            continue
        if len(tokens) != 3:
            raise FormatError(
                lineno, f"expected 'source digit destination', got {raw.strip()!r}"
            )
        try:
            src, digit, dst = (int(t) for t in tokens)
        except ValueError:
            raise FormatError(lineno, f"non-integer transition {raw.strip()!r}") from None
        transitions.append((lineno, src, digit, dst))

    for key in ("base", "states", "initial", "finals"):
        if key not in header:
            raise FormatError(0, f"missing '{key}' line")

    def one_int(key: str) -> int:
        lineno, args = header[key]
        if len(args) != 1:
            raise FormatError(lineno, f"'{key}' expects exactly one integer")
        try:
            return int(args[0])
        except ValueError:
            raise FormatError(lineno, f"'{key}' expects an integer") from None

    base = one_int("base")
    num_states = one_int("states")
    initial = one_int("initial")
    if base < 2:
        raise FormatError(header["base"][0], f"base must be at least 2, got {base}")
    if num_states < 1:
        raise FormatError(header["states"][0], "automaton needs at least one state")
    if not 0 <= initial < num_states:
        raise FormatError(header["initial"][0], f"initial state {initial} out of range")

    finals_line, finals_args = header["finals"]
    try:
        finals = [int(t) for t in finals_args]
    except ValueError:
        raise FormatError(finals_line, "'finals' expects integers") from None
    for q in finals:
        if not 0 <= q < num_states:
            raise FormatError(finals_line, f"final state {q} out of range")

    delta = np.full((num_states, base), -1, dtype=np.int32)
    for lineno, src, digit, dst in transitions:
        if not 0 <= src < num_states:
            raise FormatError(lineno, f"source state {src} out of range")
        if not 0 <= digit < base:
            raise FormatError(lineno, f"digit {digit} out of range for base {base}")
        if not 0 <= dst < num_states:
            raise FormatError(lineno, f"destination state {dst} out of range")
        if delta[src, digit] >= 0:
            raise FormatError(lineno, f"duplicate transition for state {src} digit {digit}")
        delta[src, digit] = dst

    dfa = Dfa(base, delta, initial, finals)
    return complete(dfa) if autocomplete else dfa


def emit_text(dfa: Dfa) -> str:
    """Serialise to the text format; inverse of :func:`parse_text` on
    complete automata."""
    lines = [
        f"base {dfa.base}",
        f"states {dfa.num_states}",
        f"initial {dfa.initial}",
        "finals" + "".join(f" {q}" for q in sorted(dfa.finals)),
    ]
    delta = dfa.delta
    for src in range(dfa.num_states):
        for digit in range(dfa.base):
            dst = int(delta[src, digit])
            if dst >= 0:
                lines.append(f"{src} {digit} {dst}")
    return "\n".join(lines) + "\n"


def load_file(path) -> Dfa:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_text(handle.read())


def save_file(dfa: Dfa, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(emit_text(dfa))


def to_dot(dfa: Dfa, highlight_zero_circuits: bool = True) -> str:
    """GraphViz rendering.

    Final states get a double circle, the initial state an arrow from a
    phantom node; digit-0 edges are drawn thin and other digits bold,
    and states on 0-circuits are filled.
    """
    on_cycle: frozenset[int] = frozenset()
    if highlight_zero_circuits and not (dfa.delta[:, 0] < 0).any():
        on_cycle = zero_circuit_states(dfa)

    lines = ["digraph automaton {", "  rankdir=LR;", '  __init [shape=point, label=""];']
    for q in range(dfa.num_states):
        attrs = ["shape=doublecircle" if q in dfa.finals else "shape=circle"]
        if q in on_cycle:
            attrs.append('style=filled, fillcolor="lightsteelblue"')
        lines.append(f"  {q} [{', '.join(attrs)}];")
    lines.append(f"  __init -> {dfa.initial};")

    # one edge per (source, destination, thin/bold class), digits merged
    grouped: dict[tuple[int, int, bool], list[int]] = {}
    for src in range(dfa.num_states):
        for digit in range(dfa.base):
            dst = int(dfa.delta[src, digit])
            if dst >= 0:
                grouped.setdefault((src, dst, digit == 0), []).append(digit)
    for (src, dst, thin), digits in sorted(grouped.items()):
        label = ",".join(str(d) for d in digits)
        style = "penwidth=1" if thin else "penwidth=2, style=bold"
        lines.append(f'  {src} -> {dst} [label="{label}", {style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
