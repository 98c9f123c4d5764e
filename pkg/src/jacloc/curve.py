"""Numerical data of nodal curves and rank-1 torsion-free sheaves.

A curve is its dual graph plus the geometric genus of each component.
A sheaf is recorded by its multidegree together with the set of nodes
where it fails to be locally free.  Subcurves are nonempty proper vertex
subsets, connected or not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .graph import Edge, MultiGraph, b1, contract_edges


def _frozen(mapping: Mapping) -> Mapping:
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True)
class CurveGraph:
    graph: MultiGraph
    genus_of: Mapping

    def __post_init__(self):
        genera = dict(self.genus_of)
        if set(genera) != set(self.graph.vertices):
            raise ValueError("genus_of must be keyed by exactly the graph's vertices")
        if any(int(x) != x or x < 0 for x in genera.values()):
            raise ValueError("component genera must be nonnegative integers")
        if not self.graph.is_connected():
            raise ValueError("the dual graph of a curve must be connected")
        object.__setattr__(self, "genus_of", _frozen(genera))

    def __hash__(self) -> int:
        return hash((self.graph, tuple(sorted(self.genus_of.items(), key=repr))))

    @property
    def vertices(self) -> tuple:
        return self.graph.vertices

    @property
    def edges(self) -> tuple:
        return self.graph.edges


@dataclass(frozen=True)
class SheafDatum:
    component_degree: Mapping
    nonfree: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "component_degree", _frozen(self.component_degree))
        object.__setattr__(self, "nonfree", frozenset(self.nonfree))

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.component_degree.items(), key=repr)), self.nonfree))

    @property
    def total_degree(self) -> int:
        return sum(self.component_degree.values()) + len(self.nonfree)

    def check_on(self, c: CurveGraph) -> None:
        if set(self.component_degree) != set(c.vertices):
            raise ValueError("sheaf multidegree must be keyed by the curve's vertices")
        missing = [e for e in self.nonfree if not c.graph.has_edge(e)]
        if missing:
            raise ValueError(f"nonfree nodes not on the curve: {missing}")


@dataclass(frozen=True)
class LineBundleDatum:
    component_degree: Mapping

    def __post_init__(self):
        object.__setattr__(self, "component_degree", _frozen(self.component_degree))

    @property
    def total_degree(self) -> int:
        return sum(self.component_degree.values())

    def __neg__(self) -> "LineBundleDatum":
        return LineBundleDatum({v: -d for v, d in self.component_degree.items()})


@dataclass(frozen=True)
class Polarization(LineBundleDatum):
    """Multidegree of an ample line bundle: every entry is positive."""

    def __post_init__(self):
        super().__post_init__()
        if any(d <= 0 for d in self.component_degree.values()):
            raise ValueError("an ample line bundle has positive degree on every component")


def as_subcurve(c: CurveGraph, Y: Iterable) -> frozenset:
    Y = frozenset(Y)
    if not Y:
        raise ValueError("a subcurve is nonempty")
    if not Y <= set(c.vertices):
        raise ValueError("subcurve vertices must belong to the curve")
    return Y


def subcurves(c: CurveGraph) -> Iterator[frozenset]:
    """All nonempty proper vertex subsets, by size then vertex order."""
    vs = c.vertices
    for k in range(1, len(vs)):
        for combo in combinations(vs, k):
            yield frozenset(combo)


def arithmetic_genus(c: CurveGraph) -> int:
    return sum(c.genus_of.values()) + b1(c.graph)


def omega_degree(c: CurveGraph, Y: Iterable | None = None) -> int:
    """Degree of the dualizing sheaf on ``Y`` (whole curve when ``None``)."""
    Y = set(c.vertices) if Y is None else as_subcurve(c, Y)
    return sum(2 * c.genus_of[v] - 2 + c.graph.valence(v) for v in Y)


def cut_edges(c: CurveGraph, Y: Iterable) -> frozenset:
    """Nodes joining ``Y`` to its complement."""
    Y = as_subcurve(c, Y)
    return frozenset(e.id for e in c.edges if (e.source in Y) != (e.target in Y))


def _internal_edges(c: CurveGraph, Y: frozenset) -> Iterator[Edge]:
    return (e for e in c.edges if e.source in Y and e.target in Y)


def restricted_degree(c: CurveGraph, s: SheafDatum, Y: Iterable) -> int:
    """Degree of the torsion-free restriction of the sheaf to ``Y``."""
    Y = as_subcurve(c, Y)
    internal = sum(1 for e in _internal_edges(c, Y) if e.id in s.nonfree)
    return sum(s.component_degree[v] for v in Y) + internal


def degree_complement_identity_check(c: CurveGraph, s: SheafDatum, Y: Iterable) -> bool:
    """deg(I_Y) + deg(I_{Y^c}) + #(nonfree nodes on the cut) == deg(I)."""
    Y = as_subcurve(c, Y)
    rest = frozenset(c.vertices) - Y
    crossing = len(cut_edges(c, Y) & s.nonfree)
    lhs = restricted_degree(c, s, Y) + crossing
    if rest:
        lhs += restricted_degree(c, s, rest)
    return lhs == s.total_degree


def aut_torus_rank(c: CurveGraph, s: SheafDatum) -> int:
    """Rank of the automorphism torus of the sheaf.

    Components joined by a locally free node must carry the same scalar, so
    the rank is the number of components of the graph with the nonfree
    edges deleted.
    """
    free = [e.id for e in c.edges if e.id not in s.nonfree]
    return len(c.graph.components(free))


def gamma_graph(c: CurveGraph, nonfree: Iterable) -> tuple[MultiGraph, dict]:
    """Dual graph after smoothing every node not in ``nonfree``."""
    return contract_edges(c.graph, nonfree)


# Small named families used throughout the tests and demos.

def one_node_curve(g: int) -> CurveGraph:
    """Irreducible curve of arithmetic genus ``g`` with a single node."""
    if g < 1:
        raise ValueError("a one-node irreducible curve has genus at least 1")
    return CurveGraph(MultiGraph(["v"], [("e", "v", "v")]), {"v": g - 1})


def two_component_curve(n: int, genera: tuple[int, int] = (0, 0)) -> CurveGraph:
    """Two components meeting in ``n`` nodes, all oriented ``v1 -> v2``."""
    edges = [(f"e{i}", "v1", "v2") for i in range(1, n + 1)]
    return CurveGraph(MultiGraph(["v1", "v2"], edges), {"v1": genera[0], "v2": genera[1]})


def dollar_sign_curve() -> CurveGraph:
    """Genus-2 curve: two rational components meeting in three nodes."""
    return two_component_curve(3)
