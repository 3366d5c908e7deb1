"""Zero-forcing colorability test for full-rank pattern classes.

A wide pattern matrix (rows <= cols) induces a directed graph on its
column indices: column j points at row i whenever entry (i, j) is a
nonzero symbol, with the edge marked "sure" for ``*`` and "maybe" for
``?``.  Repeatedly blackening the unique white out-neighbor reached by a
sure edge either blackens every row node or stalls; it blackens them all
exactly when every member of the pattern class has full row rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .patterns import PatternMatrix, Symbol, pattern_transpose


@dataclass(frozen=True)
class ColorStep:
    """One application of the color change rule."""

    round: int
    forcing: int
    forced: int


@dataclass(frozen=True)
class StructGraph:
    """Directed two-relation graph of a pattern matrix.

    Nodes are 1..node_count (one per pattern column); only nodes
    1..row_count can ever be forced black, since edge targets are row
    indices.  Edge (j, i) reads "column j sees row i".
    """

    node_count: int
    row_count: int
    edges_star: frozenset = field(default_factory=frozenset)
    edges_question: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.row_count > self.node_count:
            raise ValueError("row_count cannot exceed node_count")
        if self.edges_star & self.edges_question:
            raise ValueError("an edge cannot be both sure and maybe")
        for src, dst in self.edges_star | self.edges_question:
            if not (1 <= src <= self.node_count and 1 <= dst <= self.row_count):
                raise ValueError(f"edge ({src}, {dst}) out of range")

    def out_neighbors(self):
        """Adjacency map: node -> sorted list of edge targets."""
        adjacency = {node: [] for node in range(1, self.node_count + 1)}
        for src, dst in self.edges_star | self.edges_question:
            adjacency[src].append(dst)
        for targets in adjacency.values():
            targets.sort()
        return adjacency


@dataclass(frozen=True)
class ColoringState:
    """Fixpoint of the color change rule with its derivation."""

    black: frozenset
    derivation: tuple

    def trace_jsonable(self):
        return [{"round": s.round, "forcing_node": s.forcing,
                 "forced_node": s.forced} for s in self.derivation]


def build_graph(pattern: PatternMatrix) -> StructGraph:
    """Build the forcing graph of a wide pattern matrix.

    Rejects patterns with more rows than columns; full row rank is
    dimensionally impossible there and the graph is not defined
    (transpose first to ask about column rank).
    """
    if pattern.rows > pattern.cols:
        raise ValueError(
            f"forcing graph needs rows <= cols, got {pattern.shape}; "
            "transpose the pattern to test column rank")
    stars = set()
    questions = set()
    entries = pattern.to_array()
    for i in range(pattern.rows):
        for j in range(pattern.cols):
            if entries[i, j] == Symbol.STAR:
                stars.add((j + 1, i + 1))
            elif entries[i, j] == Symbol.QUESTION:
                questions.add((j + 1, i + 1))
    return StructGraph(node_count=pattern.cols, row_count=pattern.rows,
                       edges_star=frozenset(stars),
                       edges_question=frozenset(questions))


def color_closure(graph: StructGraph, scan_order=None) -> ColoringState:
    """Run the color change rule to a fixpoint.

    Starting all white, any node with exactly one white out-neighbor
    reached by a sure edge blackens that neighbor.  Nodes are scanned in
    ``scan_order`` (default ascending) and forcings apply immediately;
    the final black set does not depend on the order, only the recorded
    derivation does.
    """
    if scan_order is None:
        scan_order = range(1, graph.node_count + 1)
    else:
        scan_order = list(scan_order)
        if sorted(scan_order) != list(range(1, graph.node_count + 1)):
            raise ValueError("scan_order must be a permutation of the nodes")
    adjacency = graph.out_neighbors()
    black = set()
    steps = []
    round_no = 0
    changed = True
    while changed:
        changed = False
        round_no += 1
        for node in scan_order:
            white = [t for t in adjacency[node] if t not in black]
            if len(white) == 1 and (node, white[0]) in graph.edges_star:
                black.add(white[0])
                steps.append(ColorStep(round_no, node, white[0]))
                changed = True
    return ColoringState(black=frozenset(black), derivation=tuple(steps))


def is_colorable(graph: StructGraph) -> bool:
    """True when the rule blackens every row node 1..row_count."""
    closure = color_closure(graph)
    return all(node in closure.black for node in range(1, graph.row_count + 1))


def pattern_full_row_rank(pattern: PatternMatrix) -> bool:
    """Whether every member of the pattern class has full row rank."""
    if pattern.rows > pattern.cols:
        return False
    return is_colorable(build_graph(pattern))


def pattern_full_col_rank(pattern: PatternMatrix) -> bool:
    """Whether every member of the pattern class has full column rank."""
    if pattern.cols > pattern.rows:
        return False
    return pattern_full_row_rank(pattern_transpose(pattern))
