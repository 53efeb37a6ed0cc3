"""Attention-graph analysis: components, condensation, path labels.

Everything here is deterministic: strongly connected components are
reported sorted by their smallest member, and derived orders follow
agent index order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import GuardError
from .model import Instance


class GraphKind(enum.Enum):
    ACYCLIC = "acyclic"
    STRONGLY_CONNECTED = "strongly-connected"
    GENERAL = "general"


@dataclass(frozen=True)
class Condensation:
    components: tuple[tuple[int, ...], ...]  # sorted members, comps by min member
    component_of: tuple[int, ...]            # agent -> component index
    arcs: frozenset[tuple[int, int]]         # arcs between distinct components

    def in_degree(self, comp: int) -> int:
        return sum(1 for a, b in self.arcs if b == comp)


@dataclass(frozen=True)
class GraphClass:
    kind: GraphKind
    max_out_degree: int
    sources: tuple[int, ...]  # in-degree 0
    sinks: tuple[int, ...]    # out-degree 0
    inner: tuple[int, ...]    # everything else


def _adjacency(n: int, arcs) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in arcs:
        adj[int(a)].append(int(b))
    return adj


def scc_condensation(inst: Instance) -> Condensation:
    """Tarjan's algorithm, iterative so very large graphs do not hit the
    interpreter recursion limit."""
    n = inst.n
    adj = _adjacency(n, inst.arcs)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp_of = [-1] * n
    comps: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            while pi < len(adj[v]):
                w = adj[v][pi]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

    comps.sort(key=lambda c: c[0])
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    carcs = set()
    for a, b in inst.arc_pairs():
        ca, cb = comp_of[a], comp_of[b]
        if ca != cb:
            carcs.add((ca, cb))
    return Condensation(tuple(tuple(c) for c in comps), tuple(comp_of), frozenset(carcs))


def classify_graph(inst: Instance) -> GraphClass:
    cond = scc_condensation(inst)
    n = inst.n
    out_deg = [0] * n
    in_deg = [0] * n
    for a, b in inst.arc_pairs():
        out_deg[a] += 1
        in_deg[b] += 1
    if all(len(c) == 1 for c in cond.components):
        kind = GraphKind.ACYCLIC
    elif len(cond.components) == 1:
        kind = GraphKind.STRONGLY_CONNECTED
    else:
        kind = GraphKind.GENERAL
    sources = tuple(v for v in range(n) if in_deg[v] == 0)
    sinks = tuple(v for v in range(n) if out_deg[v] == 0)
    inner = tuple(v for v in range(n) if in_deg[v] > 0 and out_deg[v] > 0)
    return GraphClass(kind, max(out_deg, default=0), sources, sinks, inner)


def is_acyclic(inst: Instance) -> bool:
    return classify_graph(inst).kind is GraphKind.ACYCLIC


def topological_order(inst: Instance) -> list[int]:
    """Lexicographically smallest topological order (Kahn with a min choice)."""
    import heapq

    n = inst.n
    adj = _adjacency(n, inst.arcs)
    in_deg = [0] * n
    for a, b in inst.arc_pairs():
        in_deg[b] += 1
    heap = [v for v in range(n) if in_deg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in adj[v]:
            in_deg[w] -= 1
            if in_deg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != n:
        raise GuardError("graph has a cycle; no topological order")
    return order


def longest_path_labels(inst: Instance) -> list[int]:
    """Minimum bundle-size labels for the strict notion on an acyclic graph.

    Reverse all arcs, add a virtual super-source with an arc to every agent
    that has no outgoing arc in the original graph, and label each agent with
    (longest path from the super-source) - 1.  A label is then the number of
    agents on the longest original path starting at that agent, minus one.
    """
    order = topological_order(inst)  # also rejects cyclic graphs
    adj = _adjacency(inst.n, inst.arcs)
    label = [0] * inst.n
    # longest path in the reversed graph = DP over reversed topological order
    for v in reversed(order):
        label[v] = max((label[w] + 1 for w in adj[v]), default=0)
    return label


def reachable_from(inst: Instance, starts) -> set[int]:
    adj = _adjacency(inst.n, inst.arcs)
    seen = set(int(s) for s in starts)
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen
