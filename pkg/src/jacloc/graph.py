"""Multigraph model for dual graphs of nodal curves.

Loops and parallel edges are allowed.  Each edge carries a reference
orientation ``source -> target``; orientations, circuits and circulations
are all expressed relative to it (+1 forward, -1 backward).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

FORWARD = 1
BACKWARD = -1

VertexId = Hashable
EdgeId = Hashable


@dataclass(frozen=True)
class Edge:
    id: EdgeId
    source: VertexId
    target: VertexId

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


class MultiGraph:
    """Finite multigraph with ordered vertices and ordered edges.

    ``edges`` may be given as :class:`Edge` objects or ``(id, source, target)``
    triples.  The object is treated as immutable once built.
    """

    __slots__ = ("vertices", "edges", "_vindex", "_eindex")

    def __init__(self, vertices: Iterable[VertexId], edges: Iterable = ()):
        self.vertices: tuple = tuple(vertices)
        self.edges: tuple[Edge, ...] = tuple(
            e if isinstance(e, Edge) else Edge(*e) for e in edges
        )
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self._eindex = {e.id: i for i, e in enumerate(self.edges)}
        if len(self._vindex) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        if len(self._eindex) != len(self.edges):
            raise ValueError("duplicate edge id")
        for e in self.edges:
            if e.source not in self._vindex or e.target not in self._vindex:
                raise ValueError(f"edge {e.id!r} has an undeclared endpoint")

    def __repr__(self) -> str:
        body = ", ".join(f"{e.id}:{e.source}->{e.target}" for e in self.edges)
        return f"MultiGraph(V={list(self.vertices)}, E=[{body}])"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    @property
    def edge_ids(self) -> tuple:
        return tuple(e.id for e in self.edges)

    def edge(self, eid: EdgeId) -> Edge:
        return self.edges[self._eindex[eid]]

    def edge_index(self, eid: EdgeId) -> int:
        return self._eindex[eid]

    def vertex_index(self, v: VertexId) -> int:
        return self._vindex[v]

    def has_edge(self, eid: EdgeId) -> bool:
        return eid in self._eindex

    def valence(self, v: VertexId) -> int:
        """Number of edge ends at ``v``; a loop counts twice."""
        return sum((e.source == v) + (e.target == v) for e in self.edges)

    def components(self, edge_ids: Iterable[EdgeId] | None = None) -> list[frozenset]:
        """Connected components, optionally using only the given edges."""
        edges = self.edges if edge_ids is None else [self.edge(i) for i in edge_ids]
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in edges:
            a, b = find(e.source), find(e.target)
            if a != b:
                parent[b] = a
        groups: dict = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return [frozenset(vs) for vs in groups.values()]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def without_edges(self, drop: Iterable[EdgeId]) -> "MultiGraph":
        drop = set(drop)
        return MultiGraph(self.vertices, [e for e in self.edges if e.id not in drop])


def b1(g: MultiGraph) -> int:
    """First Betti number ``#E - #V + #components``."""
    return len(g.edges) - len(g.vertices) + len(g.components())


def separating_edges(g: MultiGraph) -> frozenset:
    """Bridges of ``g``: edges whose deletion increases the component count."""
    base = len(g.components())
    bridges = set()
    for e in g.edges:
        if e.is_loop:
            continue
        rest = [f.id for f in g.edges if f.id != e.id]
        if len(g.components(rest)) > base:
            bridges.add(e.id)
    return frozenset(bridges)


def contract_edges(g: MultiGraph, keep: Iterable[EdgeId]) -> tuple[MultiGraph, dict]:
    """Contract every edge not in ``keep``.

    Returns the contracted graph and the vertex map ``V(g) -> V(result)``.
    Each merged class is named after its first vertex in ``g.vertices``.
    Kept edges retain their ids and reference orientation (mapped endpoints).
    """
    keep = set(keep)
    unknown = keep - set(g.edge_ids)
    if unknown:
        raise ValueError(f"unknown edge ids: {sorted(map(str, unknown))}")
    contracted = [e.id for e in g.edges if e.id not in keep]
    vmap = {}
    for comp in g.components(contracted):
        rep = min(comp, key=g.vertex_index)
        for v in comp:
            vmap[v] = rep
    new_vertices = [v for v in g.vertices if vmap[v] == v]
    new_edges = [
        Edge(e.id, vmap[e.source], vmap[e.target]) for e in g.edges if e.id in keep
    ]
    return MultiGraph(new_vertices, new_edges), vmap


@dataclass(frozen=True)
class Orientation:
    """Total assignment edge id -> FORWARD/BACKWARD, in graph edge order."""

    assignment: tuple  # ((edge id, direction), ...)

    def __getitem__(self, eid: EdgeId) -> int:
        for k, d in self.assignment:
            if k == eid:
                return d
        raise KeyError(eid)

    def as_dict(self) -> dict:
        return dict(self.assignment)

    def reversed(self) -> "Orientation":
        return Orientation(tuple((k, -d) for k, d in self.assignment))


def _directed_arcs(g: MultiGraph, directions: Sequence[int]) -> list[tuple]:
    arcs = []
    for e, d in zip(g.edges, directions):
        arcs.append((e.source, e.target) if d == FORWARD else (e.target, e.source))
    return arcs


def _reach(start, succ: Mapping) -> set:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in succ.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def is_totally_cyclic(g: MultiGraph, orientation: Orientation | Mapping) -> bool:
    """Every edge lies on a directed cycle of the oriented graph."""
    o = orientation.as_dict() if isinstance(orientation, Orientation) else orientation
    directions = [o[e.id] for e in g.edges]
    arcs = _directed_arcs(g, directions)
    succ: dict = {}
    for a, b in arcs:
        succ.setdefault(a, []).append(b)
    # an arc a->b is on a directed cycle iff a is reachable from b
    reach_cache: dict = {}
    for a, b in arcs:
        if b not in reach_cache:
            reach_cache[b] = _reach(b, succ)
        if a not in reach_cache[b]:
            return False
    return True


def _strongly_connected_components_ok(g: MultiGraph, directions: Sequence[int],
                                      comps: list[frozenset]) -> bool:
    succ: dict = {v: [] for v in g.vertices}
    pred: dict = {v: [] for v in g.vertices}
    for a, b in _directed_arcs(g, directions):
        succ[a].append(b)
        pred[b].append(a)
    for comp in comps:
        root = next(iter(comp))
        if _reach(root, succ) != comp or _reach(root, pred) != comp:
            return False
    return True


def totally_cyclic_orientations(g: MultiGraph) -> list[Orientation]:
    """All orientations in which every edge lies on a directed cycle.

    Brute force over ``2**#E`` assignments, one strong-connectivity test per
    component.  The edgeless graph has exactly one (empty) orientation.
    """
    if separating_edges(g):
        return []
    comps = g.components()
    ids = g.edge_ids
    out = []
    for directions in product((FORWARD, BACKWARD), repeat=len(ids)):
        if _strongly_connected_components_ok(g, directions, comps):
            out.append(Orientation(tuple(zip(ids, directions))))
    return out


@dataclass(frozen=True)
class OrientedCircuit:
    """Simple directed cycle as a cyclic sequence of ``(edge id, direction)``."""

    steps: tuple

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a circuit has at least one edge")

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def support(self) -> frozenset:
        return frozenset(k for k, _ in self.steps)

    def reversed(self) -> "OrientedCircuit":
        return OrientedCircuit(tuple((k, -d) for k, d in reversed(self.steps)))

    def vertex_sequence(self, g: MultiGraph) -> list:
        out = []
        for eid, d in self.steps:
            e = g.edge(eid)
            out.append(e.source if d == FORWARD else e.target)
        return out

    def canonical(self, g: MultiGraph) -> "OrientedCircuit":
        """Rotation starting at the step with smallest edge index."""
        i = min(range(len(self.steps)), key=lambda j: g.edge_index(self.steps[j][0]))
        return OrientedCircuit(self.steps[i:] + self.steps[:i])

    def sort_key(self, g: MultiGraph) -> tuple:
        pairs = sorted((g.edge_index(k), d) for k, d in self.steps)
        return (tuple(i for i, _ in pairs), tuple(-d for _, d in pairs))


def oriented_circuits(g: MultiGraph) -> list[OrientedCircuit]:
    """All simple directed cycles; every undirected circuit appears twice.

    Backtracking from each start vertex ``s`` through vertices of larger
    index only, so each directed cycle is produced exactly once (rooted at
    its smallest vertex).
    """
    n = len(g.vertices)
    incident: list[list[tuple]] = [[] for _ in range(n)]
    for e in g.edges:
        si, ti = g.vertex_index(e.source), g.vertex_index(e.target)
        if si == ti:
            incident[si].append((e.id, FORWARD, si))
            incident[si].append((e.id, BACKWARD, si))
        else:
            incident[si].append((e.id, FORWARD, ti))
            incident[ti].append((e.id, BACKWARD, si))

    found: list[OrientedCircuit] = []
    for s in range(n):
        path: list[tuple] = []
        used_edges: set = set()
        on_path = {s}

        def extend(x: int) -> None:
            for eid, d, y in incident[x]:
                if eid in used_edges:
                    continue
                if y == s:
                    if x == s and path:
                        continue  # loop at s in the middle of a longer walk
                    found.append(OrientedCircuit(tuple(path + [(eid, d)])))
                    continue
                if y < s or y in on_path:
                    continue
                path.append((eid, d))
                used_edges.add(eid)
                on_path.add(y)
                extend(y)
                on_path.discard(y)
                used_edges.discard(eid)
                path.pop()

        extend(s)

    found = [c.canonical(g) for c in found]
    found.sort(key=lambda c: c.sort_key(g))
    return found


@dataclass(frozen=True, eq=False)
class Circulation:
    """Integer edge flow with zero boundary, stored as its nonzero entries.

    ``flow`` is a tuple of ``(edge id, value)`` pairs, normally in graph
    edge order; equality ignores the order.  The zero-boundary condition is
    checked by :func:`boundary`, not here, since the object does not hold a
    reference to its graph.
    """

    flow: tuple

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circulation):
            return NotImplemented
        return frozenset(self.flow) == frozenset(other.flow)

    def __hash__(self) -> int:
        return hash(frozenset(self.flow))

    @classmethod
    def from_mapping(cls, g: MultiGraph, values: Mapping) -> "Circulation":
        pairs = [(e.id, int(values.get(e.id, 0))) for e in g.edges]
        return cls(tuple((k, v) for k, v in pairs if v))

    @classmethod
    def from_vector(cls, g: MultiGraph, vector: Sequence[int]) -> "Circulation":
        return cls(tuple((e.id, int(v)) for e, v in zip(g.edges, vector) if v))

    def __getitem__(self, eid: EdgeId) -> int:
        for k, v in self.flow:
            if k == eid:
                return v
        return 0

    def as_dict(self) -> dict:
        return dict(self.flow)

    def vector(self, g: MultiGraph) -> tuple:
        d = self.as_dict()
        return tuple(d.get(e.id, 0) for e in g.edges)

    @property
    def support(self) -> frozenset:
        return frozenset(k for k, _ in self.flow)

    @property
    def degree(self) -> int:
        return sum(abs(v) for _, v in self.flow)

    def __neg__(self) -> "Circulation":
        return Circulation(tuple((k, -v) for k, v in self.flow))


def boundary(g: MultiGraph, flow: Circulation | Mapping) -> dict:
    """Net outflow at every vertex (loops contribute nothing)."""
    values = flow.as_dict() if isinstance(flow, Circulation) else flow
    out = {v: 0 for v in g.vertices}
    for e in g.edges:
        x = values.get(e.id, 0)
        out[e.source] += x
        out[e.target] -= x
    return out


def circuit_to_circulation(c: OrientedCircuit, g: MultiGraph) -> Circulation:
    """Signed indicator flow of an oriented circuit."""
    values = {}
    for eid, d in c.steps:
        if not g.has_edge(eid):
            raise ValueError(f"circuit edge {eid!r} not in graph")
        values[eid] = d
    return Circulation.from_mapping(g, values)


def canonical_form(g: MultiGraph, max_permutations: int = 40320) -> tuple:
    """Isomorphism-invariant key of the underlying undirected multigraph.

    Brute force over relabelings that preserve the (valence, loop count)
    vertex classes.  Returns a labeled (non-canonical) key when the search
    would exceed ``max_permutations``; callers use this only for caching.
    """
    idx = {v: i for i, v in enumerate(g.vertices)}
    pairs = [(idx[e.source], idx[e.target]) for e in g.edges]
    n = len(g.vertices)
    loops = [0] * n
    val = [0] * n
    for a, b in pairs:
        val[a] += 1
        val[b] += 1
        if a == b:
            loops[a] += 1
    classes: dict = {}
    for i in range(n):
        classes.setdefault((val[i], loops[i]), []).append(i)
    ordered = sorted(classes.items())
    count = 1
    for _, members in ordered:
        count *= factorial(len(members))
    if count > max_permutations:
        return ("labeled", n, tuple(sorted(tuple(sorted(p)) for p in pairs)))

    best = None
    for choice in _class_permutations([m for _, m in ordered]):
        relabel = {old: new for new, old in enumerate(choice)}
        key = tuple(sorted(tuple(sorted((relabel[a], relabel[b]))) for a, b in pairs))
        if best is None or key < best:
            best = key
    return ("canonical", n, tuple(k for k, _ in ordered), best)


def _class_permutations(classes: list[list[int]]) -> Iterator[list[int]]:
    if not classes:
        yield []
        return
    head, rest = classes[0], classes[1:]
    for p in permutations(head):
        for tail in _class_permutations(rest):
            yield list(p) + tail
