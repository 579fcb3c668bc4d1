"""Nowhere-zero group flows on multigraphs, valued in Z4 or Z2 x Z2.

A flow assignment fixes a reference orientation (the stored endpoint order
of each edge, so dangling edges point outward) and gives every edge a
nonzero group element such that conservation holds at each vertex: the sum
of incoming values equals the sum of outgoing ones.  A loop contributes
once in and once out, hence nothing; a dangling edge contributes only at
its attached vertex.

The search works per component over a spanning tree: values on cotree
edges, loops, and dangling edges are the free variables, and tree-edge
values are forced bottom-up by the conservation law at their deeper
endpoint.  A forced identity value prunes the branch, so bridges of
dangling-free graphs fail immediately.  Group arithmetic is table-driven,
which keeps the solver generic over the two groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .multigraph import (
    DANGLING,
    CubicGraph,
    Endpoint,
    GraphError,
    VertexPair,
    identify_vertices,
)


@dataclass(frozen=True)
class FlowGroup:
    """A small abelian group given by value tables over ``0 .. order-1``."""

    name: str
    add_table: tuple[tuple[int, ...], ...]
    neg_table: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.neg_table)

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def nonzero(self) -> tuple[int, ...]:
        return tuple(range(1, self.order))

    def __repr__(self) -> str:
        return f"FlowGroup({self.name})"


Z4 = FlowGroup(
    "Z4",
    tuple(tuple((x + y) % 4 for y in range(4)) for x in range(4)),
    tuple((4 - x) % 4 for x in range(4)),
)

KLEIN = FlowGroup(
    "Z2xZ2",
    tuple(tuple(x ^ y for y in range(4)) for x in range(4)),
    tuple(range(4)),  # every element is self-inverse
)

GROUPS = {g.name: g for g in (Z4, KLEIN)}


@dataclass(frozen=True, eq=False)
class FlowAssignment:
    """Orientation plus nonzero group values, one per edge of ``graph``."""

    graph: CubicGraph
    group: FlowGroup
    orientation: dict[int, Endpoint]  # edge id -> head endpoint
    values: dict[int, int]

    def value(self, edge_id: int) -> int:
        return self.values[edge_id]

    def is_nowhere_zero(self) -> bool:
        return all(v != 0 for v in self.values.values())

    def with_edge_reversed(self, edge_id: int) -> "FlowAssignment":
        """Flip one edge's orientation and negate its value."""
        e = self.graph.edge(edge_id)
        head = self.orientation[edge_id]
        new_head = e.a if head == e.b else e.b
        orientation = dict(self.orientation)
        orientation[edge_id] = new_head
        values = dict(self.values)
        values[edge_id] = self.group.neg(values[edge_id])
        return FlowAssignment(self.graph, self.group, orientation, values)


def verify_kirchhoff(graph: CubicGraph, flow: FlowAssignment) -> bool:
    """True iff conservation holds at every vertex of ``graph``.

    The flow must assign an orientation and a group value to every edge;
    anything missing or out of range is an input error.  Only conservation
    is checked here, not the nowhere-zero condition.
    """
    group = flow.group
    sums = {v: 0 for v in graph.vertices}
    for e in graph.edges:
        if e.id not in flow.values or e.id not in flow.orientation:
            raise GraphError(f"flow does not cover edge {e.id}")
        val = flow.values[e.id]
        if not 0 <= val < group.order:
            raise GraphError(f"value {val} on edge {e.id} is outside the group")
        head = flow.orientation[e.id]
        if not (head == e.a or head == e.b):
            raise GraphError(f"head of edge {e.id} is not one of its endpoints")
        if e.is_loop:
            continue  # once in, once out
        for x in e.real_endpoints():
            contribution = val if head == x else group.neg(val)
            sums[x] = group.add(sums[x], contribution)
    return all(s == 0 for s in sums.values())


def nowhere_zero_flow(graph: CubicGraph, group: FlowGroup) -> Optional[FlowAssignment]:
    """Find a nowhere-zero flow in the given group, or None if there is none.

    Components are solved independently.  Loops and free edges take the
    first nonzero element; dangling edges are free variables constrained
    only at their attached vertex, oriented outward.
    """
    values: dict[int, int] = {}
    orientation = {e.id: e.b for e in graph.edges}
    for e in graph.edges:
        if e.is_loop or e.is_free:
            values[e.id] = group.nonzero()[0]
    for comp in graph.components():
        part = _flow_component(graph, comp, group)
        if part is None:
            return None
        values.update(part)
    return FlowAssignment(graph, group, orientation, values)


def flow_on_identification(
    graph: CubicGraph, pair: VertexPair, group: FlowGroup
) -> Optional[FlowAssignment]:
    """Decide a nowhere-zero flow on the graph with the pair identified.

    The witness, when present, lives on the identified graph.
    """
    return nowhere_zero_flow(identify_vertices(graph, pair), group)


# ----------------------------------------------------------------------
# solver internals

_DECIDE, _FORCE, _CHECK = 0, 1, 2


def _flow_component(
    graph: CubicGraph, comp: frozenset[int], group: FlowGroup
) -> Optional[dict[int, int]]:
    index = {v: i for i, v in enumerate(sorted(comp))}
    root = min(comp)

    # spanning tree by BFS over real non-loop edges
    parent_edge: dict[int, int] = {}
    discovery = [root]
    seen = {root}
    qi = 0
    while qi < len(discovery):
        v = discovery[qi]
        qi += 1
        for e in sorted(graph.incident_edges(v), key=lambda e: e.id):
            w = e.other_endpoint(v)
            if w is DANGLING or e.is_loop or w in seen:
                continue
            seen.add(w)
            parent_edge[w] = e.id
            discovery.append(w)

    # schedule: deepest vertices first; decide the free edges seen at each
    # vertex, then force its tree edge, finally check balance at the root
    edges_local: list[tuple[int, int, int]] = []  # (edge id, tail local, head local)
    local_of: dict[int, int] = {}

    def local_edge(e) -> int:
        if e.id not in local_of:
            ta = index.get(e.a, -1) if e.a is not DANGLING else -1
            hb = index.get(e.b, -1) if e.b is not DANGLING else -1
            local_of[e.id] = len(edges_local)
            edges_local.append((e.id, ta, hb))
        return local_of[e.id]

    plan: list[tuple[int, int, int]] = []  # (kind, edge local or -1, vertex local)
    scheduled: set[int] = set()
    for v in reversed(discovery):
        pe = parent_edge.get(v)
        for e in sorted(graph.incident_edges(v), key=lambda e: e.id):
            if e.is_loop or e.id == pe or e.id in scheduled:
                continue
            scheduled.add(e.id)
            plan.append((_DECIDE, local_edge(e), -1))
        if v == root:
            plan.append((_CHECK, -1, index[v]))
        else:
            scheduled.add(pe)
            plan.append((_FORCE, local_edge(graph.edge(pe)), index[v]))

    return _run_plan(plan, edges_local, len(index), group)


def _run_plan(plan, edges_local, n_vertices, group) -> Optional[dict[int, int]]:
    add_t = group.add_table
    neg_t = group.neg_table
    nonzero = group.nonzero()
    n = len(plan)
    sums = [0] * n_vertices
    trial = [0] * n
    applied: list = [None] * n  # (edge local, value) once applied
    out: dict[int, int] = {}

    def apply(ei: int, val: int) -> None:
        _, tail, head = edges_local[ei]
        if head >= 0:
            sums[head] = add_t[sums[head]][val]
        if tail >= 0:
            sums[tail] = add_t[sums[tail]][neg_t[val]]

    def undo(ei: int, val: int) -> None:
        _, tail, head = edges_local[ei]
        if head >= 0:
            sums[head] = add_t[sums[head]][neg_t[val]]
        if tail >= 0:
            sums[tail] = add_t[sums[tail]][val]

    pos = 0
    while 0 <= pos < n:
        kind, ei, vi = plan[pos]
        ok = False
        if kind == _DECIDE:
            t = trial[pos]
            if t < len(nonzero):
                val = nonzero[t]
                trial[pos] = t + 1
                apply(ei, val)
                applied[pos] = (ei, val)
                ok = True
        elif kind == _FORCE:
            if trial[pos] == 0:
                trial[pos] = 1
                _, tail, head = edges_local[ei]
                # the forced value zeroes the balance at vi
                val = neg_t[sums[vi]] if head == vi else sums[vi]
                if val != 0:
                    apply(ei, val)
                    applied[pos] = (ei, val)
                    ok = True
        else:  # _CHECK
            if trial[pos] == 0:
                trial[pos] = 1
                if sums[vi] == 0:
                    applied[pos] = ()
                    ok = True
        if ok:
            pos += 1
        else:
            trial[pos] = 0
            pos -= 1
            if pos >= 0 and applied[pos] is not None:
                if applied[pos]:
                    undo(*applied[pos])
                applied[pos] = None
    if pos < 0:
        return None
    for slot, entry in zip(plan, applied):
        if entry:
            ei, val = entry
            out[edges_local[ei][0]] = val
    return out
