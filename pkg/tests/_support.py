"""Shared test helpers: small graph families and independent oracles."""

from __future__ import annotations

import itertools
from functools import lru_cache

from jacloc.curve import CurveGraph
from jacloc.graph import MultiGraph
from jacloc.graph import canonical_form


def _extend(g: MultiGraph) -> list[MultiGraph]:
    eid = f"e{len(g.edges) + 1}"
    base = [(e.id, e.source, e.target) for e in g.edges]
    vs = list(g.vertices)
    out = []
    for i, a in enumerate(vs):
        for b in vs[i:]:
            out.append(MultiGraph(vs, base + [(eid, a, b)]))
        new = f"v{len(vs) + 1}"
        out.append(MultiGraph(vs + [new], base + [(eid, a, new)]))
    return out


@lru_cache(maxsize=None)
def connected_multigraphs(max_edges: int) -> tuple[MultiGraph, ...]:
    """Connected multigraphs (loops allowed) with at most ``max_edges`` edges, up to isomorphism."""
    layer = [MultiGraph(["v1"], [])]
    found = list(layer)
    for _ in range(max_edges):
        seen, nxt = set(), []
        for g in layer:
            for h in _extend(g):
                key = canonical_form(h)
                if key not in seen:
                    seen.add(key)
                    nxt.append(h)
        found += nxt
        layer = nxt
    return tuple(found)


def subsets(items) -> list[frozenset]:
    items = list(items)
    return [frozenset(c) for r in range(len(items) + 1)
            for c in itertools.combinations(items, r)]


def curve_on(g: MultiGraph, genus: int = 0) -> CurveGraph:
    return CurveGraph(g, {v: genus for v in g.vertices})


def banana(n: int) -> MultiGraph:
    return MultiGraph(["v1", "v2"], [(f"e{i}", "v1", "v2") for i in range(1, n + 1)])


def random_curve(rnd, max_vertices: int = 4, max_edges: int = 6, max_genus: int = 2) -> CurveGraph:
    """Connected curve: a random spanning tree plus random extra edges (loops allowed)."""
    n = rnd.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(1, n):
        edges.append((vs[rnd.randrange(i)], vs[i]))
    for _ in range(rnd.randint(0 if n > 1 else 1, max(0, max_edges - len(edges)))):
        edges.append((rnd.choice(vs), rnd.choice(vs)))
    rnd.shuffle(edges)
    g = MultiGraph(vs, [(f"e{i}", a, b) for i, (a, b) in enumerate(edges, 1)])
    return CurveGraph(g, {v: rnd.randint(0, max_genus) for v in vs})


def random_sheaf(rnd, c: CurveGraph, spread: int = 2):
    from jacloc.curve import SheafDatum

    nonfree = [e.id for e in c.edges if rnd.random() < 0.4]
    return SheafDatum({v: rnd.randint(-spread, spread) for v in c.vertices}, nonfree)


def random_line_bundle(rnd, c: CurveGraph, total: int):
    """Random multidegree with the given total."""
    from jacloc.curve import LineBundleDatum

    vs = list(c.vertices)
    degs = {v: rnd.randint(-3, 3) for v in vs}
    degs[vs[0]] += total - sum(degs.values())
    return LineBundleDatum(degs)


def near_semistable_sheaf(rnd, c: CurveGraph, L, d: int):
    """Random sheaf of degree ``d`` drawn from the slope-semistable ones when any exist.

    Candidates range over a box around the balanced multidegree, so a good
    share of draws lands on walls (strictly semistable, sometimes polystable).
    """
    from math import ceil, floor

    from jacloc.curve import SheafDatum
    from jacloc.stability import slope_semistable, slope_to_phi

    nonfree = [e.id for e in c.edges if rnd.random() < 0.5]
    phi = slope_to_phi(c, L, None, d)
    vs = list(c.vertices)
    ranges = [range(ceil(phi.value[v] - c.graph.valence(v)) - 1, floor(phi.value[v]) + 2) for v in vs]
    target = d - len(nonfree)
    candidates = []
    for head in itertools.product(*ranges[:-1]):
        degs = dict(zip(vs, head + (target - sum(head),)))
        s = SheafDatum(degs, nonfree)
        if slope_semistable(c, s, L).semistable:
            candidates.append(s)
    if not candidates:
        return SheafDatum(dict(zip(vs, [0] * (len(vs) - 1) + [target])), nonfree)
    return rnd.choice(candidates)
