"""Proper 3-edge-coloring with colors from the nonzero Klein four-group.

The three colors are the nonzero elements of Z2 x Z2 written as two-bit
values 01, 10, 11.  They XOR to zero, so at a degree-3 vertex any two
distinct colors force the third; the solver gets this propagation for free
from per-vertex used-color bitmasks.  Degree-1 and degree-2 vertices (from
dangling edges or edge deletions) only impose pairwise distinctness.

Any loop makes its vertex uncolorable, so graphs containing loops are
rejected outright.  Connected components are solved independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional

from .multigraph import DANGLING, CubicGraph, GraphError


class KleinColor(IntEnum):
    """Nonzero elements of Z2 x Z2; the XOR of all three is zero."""

    C01 = 1
    C10 = 2
    C11 = 3


KLEIN_COLORS = (KleinColor.C01, KleinColor.C10, KleinColor.C11)


def klein_sum(a: int, b: int) -> int:
    return a ^ b


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    """A color for every non-loop edge of ``graph``, dangling edges included."""

    graph: CubicGraph
    assignment: dict[int, KleinColor]

    def color(self, edge_id: int) -> KleinColor:
        return self.assignment[edge_id]

    def is_proper(self) -> bool:
        """Check the defining constraints directly against the graph.

        Proper means: every non-loop edge has a nonzero color, no loops
        exist, and the colors meeting at any vertex are pairwise distinct.
        """
        non_loop = [e for e in self.graph.edges if not e.is_loop]
        if len(non_loop) != len(self.graph.edges):
            return False
        if set(self.assignment) != {e.id for e in non_loop}:
            return False
        if any(c not in (1, 2, 3) for c in self.assignment.values()):
            return False
        for v in self.graph.vertices:
            colors = [self.assignment[e.id] for e in self.graph.incident_edges(v)]
            if len(set(colors)) != len(colors):
                return False
        return True

    def permuted(self, mapping: dict[int, int]) -> "EdgeColoring":
        """Apply a permutation of the three colors."""
        if sorted(mapping) != [1, 2, 3] or sorted(mapping.values()) != [1, 2, 3]:
            raise GraphError("mapping must permute the colors 1, 2, 3")
        return EdgeColoring(
            self.graph,
            {eid: KleinColor(mapping[int(c)]) for eid, c in self.assignment.items()},
        )


def three_edge_colorable(graph: CubicGraph) -> Optional[EdgeColoring]:
    """Find a proper 3-edge-coloring, or None if there is none.

    Vertices of degree above three are an input error.  The search runs per
    component, visiting edges in DFS order from a maximum-degree vertex;
    the start vertex's edges are pinned to fixed colors, which quotients
    away the six color permutations.
    """
    for v in graph.vertices:
        if graph.degree(v) > 3:
            raise GraphError(f"vertex {v} has degree {graph.degree(v)} > 3")
    if any(e.is_loop for e in graph.edges):
        return None

    assignment: dict[int, KleinColor] = {}
    for e in graph.free_edges():
        assignment[e.id] = KleinColor.C01  # no vertex constrains a free edge
    for comp in graph.components():
        part = _color_component(graph, comp)
        if part is None:
            return None
        assignment.update(part)
    return EdgeColoring(graph, assignment)


def chromatic_index_is_4(graph: CubicGraph) -> bool:
    """True iff the graph has no proper 3-edge-coloring."""
    return three_edge_colorable(graph) is None


def coloring_as_flow(coloring: EdgeColoring):
    """Reinterpret a proper coloring as a Z2 x Z2 flow on the same graph.

    The edge values are unchanged; orientation is immaterial because every
    Klein element is self-inverse.  Conservation holds at every vertex of
    degree three (the three distinct nonzero elements XOR to zero); at
    vertices of lower degree it generally does not.
    """
    from .flows import KLEIN, FlowAssignment

    orientation = {e.id: e.b for e in coloring.graph.edges if e.id in coloring.assignment}
    values = {eid: int(c) for eid, c in coloring.assignment.items()}
    return FlowAssignment(coloring.graph, KLEIN, orientation, values)


# ----------------------------------------------------------------------
# solver internals


def _edge_order(graph: CubicGraph, comp: frozenset[int]) -> tuple[list, int]:
    """DFS edge order over one component, starting at a max-degree vertex.

    Returns the ordered edge list and the number of leading edges incident
    with the start vertex (those get pinned colors).
    """
    start = min(comp, key=lambda v: (-graph.degree(v), v))
    order = []
    listed = set()
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for e in sorted(graph.incident_edges(v), key=lambda e: e.id):
            if e.id not in listed:
                listed.add(e.id)
                order.append(e)
            w = e.other_endpoint(v)
            if w is not DANGLING and w not in seen:
                seen.add(w)
                stack.append(w)
    pinned = len(graph.incident_edges(start))
    return order, pinned


def _color_component(graph: CubicGraph, comp: frozenset[int]) -> Optional[dict[int, KleinColor]]:
    order, pinned = _edge_order(graph, comp)
    m = len(order)
    if m == 0:
        return {}

    index = {v: i for i, v in enumerate(sorted(comp))}
    end_a = [index[e.a] if e.a is not DANGLING else -1 for e in order]
    end_b = [index[e.b] if e.b is not DANGLING else -1 for e in order]
    # pinned edges get a single fixed candidate; the rest try all three colors
    candidates = [
        ((i + 1,) if i < pinned else (1, 2, 3)) for i in range(m)
    ]

    used = [0] * len(index)
    color = [0] * m
    trial = [0] * m
    pos = 0
    while 0 <= pos < m:
        cands = candidates[pos]
        a, b = end_a[pos], end_b[pos]
        t = trial[pos]
        placed = False
        while t < len(cands):
            c = cands[t]
            t += 1
            bit = 1 << c
            if (a >= 0 and used[a] & bit) or (b >= 0 and used[b] & bit):
                continue
            color[pos] = c
            if a >= 0:
                used[a] |= bit
            if b >= 0:
                used[b] |= bit
            trial[pos] = t
            placed = True
            break
        if placed:
            pos += 1
            if pos < m:
                trial[pos] = 0
        else:
            trial[pos] = 0
            pos -= 1
            if pos >= 0:
                bit = 1 << color[pos]
                a, b = end_a[pos], end_b[pos]
                if a >= 0:
                    used[a] &= ~bit
                if b >= 0:
                    used[b] &= ~bit
    if pos < 0:
        return None
    return {order[i].id: KleinColor(color[i]) for i in range(m)}
