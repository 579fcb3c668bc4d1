"""Structural diagnostics: girth, bridges, cyclic edge-connectivity.

Cyclic edge-connectivity is the smallest number of edges whose removal
leaves at least two components that each contain a cycle; it is undefined
for graphs without two vertex-disjoint cycles.  The computation pairs up
chordless cycles (loops count as 1-cycles, parallel pairs as 2-cycles) and
takes the minimum edge cut separating any vertex-disjoint pair, found by
augmenting paths on the graph with both cycles contracted.  Every
cycle-containing side of a cut contains a chordless cycle, so scanning all
chordless-cycle pairs is exact; an exhaustive cut enumeration backs this
up as a test oracle on small instances.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .multigraph import DANGLING, CubicGraph, GraphError


@dataclass(frozen=True)
class StructureProfile:
    connected: bool
    bridge_count: int
    girth: Union[int, float]  # math.inf for forests
    cyclic_edge_connectivity: Optional[int]  # None when undefined or not computed


def structure_profile(graph: CubicGraph) -> StructureProfile:
    """Collect the diagnostics; cyclic connectivity only where it is defined.

    For non-cubic or disconnected input the cyclic-connectivity slot is None
    (the dedicated function refuses such graphs loudly instead).
    """
    cec: Optional[int] = None
    if graph.is_cubic and graph.is_connected and not graph.has_dangling:
        cec = cyclic_edge_connectivity(graph)
    return StructureProfile(
        connected=graph.is_connected,
        bridge_count=len(find_bridges(graph)),
        girth=girth(graph),
        cyclic_edge_connectivity=cec,
    )


def girth(graph: CubicGraph) -> Union[int, float]:
    """Length of a shortest cycle: a loop is 1, a parallel pair 2, forests inf."""
    if any(e.is_loop for e in graph.edges):
        return 1
    seen_pairs = set()
    for e in graph.edges:
        reals = e.real_endpoints()
        if len(reals) == 2:
            key = frozenset(reals)
            if key in seen_pairs:
                return 2
            seen_pairs.add(key)
    # simple at this point: BFS from every vertex, shortest cycle through edges
    adj: dict[int, list[int]] = {v: [] for v in graph.vertices}
    for e in graph.edges:
        reals = e.real_endpoints()
        if len(reals) == 2:
            adj[reals[0]].append(reals[1])
            adj[reals[1]].append(reals[0])
    best = math.inf
    for s in graph.vertices:
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if dist[x] * 2 >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def find_bridges(graph: CubicGraph) -> tuple[int, ...]:
    """Ids of all cut-edges; loops, parallels, and dangling edges never qualify."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: list[int] = []
    counter = 0
    inc = {
        v: [
            (e.id, e.other_endpoint(v))
            for e in graph.incident_edges(v)
            if not e.is_loop and e.other_endpoint(v) is not DANGLING
        ]
        for v in graph.vertices
    }
    for root in sorted(graph.vertices):
        if root in disc:
            continue
        # iterative DFS; entering edge ids distinguish parallel companions
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        disc[root] = low[root] = counter
        counter += 1
        while stack:
            v, via, i = stack.pop()
            if i < len(inc[v]):
                stack.append((v, via, i + 1))
                eid, w = inc[v][i]
                if eid == via:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, 0))
                else:
                    low[v] = min(low[v], disc[w])
            elif via != -1:
                # leaving v: fold its low value into the parent
                e = graph.edge(via)
                p = e.other_endpoint(v)
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    bridges.append(via)
    return tuple(sorted(bridges))


def cyclic_edge_connectivity(graph: CubicGraph) -> Optional[int]:
    """Minimum cyclic edge cut size for a connected cubic graph, or None.

    None means no two vertex-disjoint cycles exist, so no cut can separate
    two cycle-containing parts.  Non-cubic input is refused.
    """
    if not graph.is_cubic or graph.has_dangling:
        raise GraphError("cyclic edge-connectivity is computed for cubic graphs only")
    if not graph.is_connected:
        raise GraphError("cyclic edge-connectivity needs a connected graph")

    cycles = chordless_cycles(graph)
    cycles.sort(key=len)
    best: Union[int, float] = math.inf
    found_pair = False
    for i in range(len(cycles)):
        ci = cycles[i]
        for j in range(i + 1, len(cycles)):
            cj = cycles[j]
            if ci & cj:
                continue
            found_pair = True
            cap = best if best is not math.inf else None
            cut = _min_cut_between(graph, ci, cj, cap)
            if cut < best:
                best = cut
    if not found_pair:
        return None
    return int(best)


def chordless_cycles(graph: CubicGraph) -> list[frozenset[int]]:
    """Vertex sets of all chordless cycles; loops and parallel pairs included."""
    out: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for e in graph.edges:
        if e.is_loop:
            key = frozenset((e.a,))
            if key not in seen:
                seen.add(key)
                out.append(key)
    pair_mult: dict[frozenset[int], int] = {}
    for e in graph.edges:
        reals = e.real_endpoints()
        if len(reals) == 2 and reals[0] != reals[1]:
            key = frozenset(reals)
            pair_mult[key] = pair_mult.get(key, 0) + 1
    for key, mult in pair_mult.items():
        if mult >= 2 and key not in seen:
            seen.add(key)
            out.append(key)

    adj: dict[int, set[int]] = {v: set() for v in graph.vertices}
    for key in pair_mult:
        x, y = tuple(key)
        adj[x].add(y)
        adj[y].add(x)

    # simple chordless cycles of length >= 3, anchored at their smallest vertex
    for s in sorted(graph.vertices):
        firsts = sorted(x for x in adj[s] if x > s)
        for first in firsts:
            stack = [[s, first]]
            while stack:
                path = stack.pop()
                last = path[-1]
                interior = path[1:-1]
                for u in sorted(adj[last]):
                    if u <= s or u in path:
                        continue
                    # a chord to the interior rules u out entirely
                    if any(u in adj[w] for w in interior):
                        continue
                    if s in adj[u]:
                        if len(path) >= 2 and path[1] < u:
                            cyc = frozenset(path + [u])
                            if cyc not in seen:
                                seen.add(cyc)
                                out.append(cyc)
                        continue  # extending past u would leave a chord to s
                    stack.append(path + [u])
    return out


def _min_cut_between(
    graph: CubicGraph,
    side_a: frozenset[int],
    side_b: frozenset[int],
    cap: Optional[Union[int, float]],
) -> int:
    """Minimum edge cut separating two disjoint vertex sets.

    Both sets are contracted to single terminals and unit edge capacities
    are accumulated over parallel edges.  Augmentation stops early once the
    flow reaches ``cap``, at which point the pair cannot improve the best
    cut seen so far.
    """
    S, T = -1, -2

    def node(x: int) -> int:
        if x in side_a:
            return S
        if x in side_b:
            return T
        return x

    capacity: dict[int, dict[int, int]] = {}
    for e in graph.edges:
        reals = e.real_endpoints()
        if len(reals) != 2:
            continue
        x, y = node(reals[0]), node(reals[1])
        if x == y:
            continue
        capacity.setdefault(x, {})[y] = capacity.get(x, {}).get(y, 0) + 1
        capacity.setdefault(y, {})[x] = capacity.get(y, {}).get(x, 0) + 1

    flow = 0
    while cap is None or flow < cap:
        # BFS for an augmenting path in the residual graph
        prev = {S: S}
        queue = deque([S])
        while queue and T not in prev:
            x = queue.popleft()
            for y, c in capacity.get(x, {}).items():
                if c > 0 and y not in prev:
                    prev[y] = x
                    queue.append(y)
        if T not in prev:
            break
        y = T
        while y != S:
            x = prev[y]
            capacity[x][y] -= 1
            capacity[y][x] = capacity.get(y, {}).get(x, 0) + 1
            y = x
        flow += 1
    return flow
