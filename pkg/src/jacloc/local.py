"""Ring presentations and local invariants at a point of a compactified Jacobian.

The inputs are purely combinatorial: a curve, a sheaf datum, and a choice
between the compactified Jacobian of the fixed curve (``"jacobian"``) and
the universal compactified Jacobian (``"universal"``).  Whether the sheaf is
poly-stable is the caller's business; see :mod:`jacloc.stability`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve import CurveGraph, SheafDatum, arithmetic_genus, aut_torus_rank
from .errors import NegativeVariableCount
from .graph import MultiGraph, b1, contract_edges, oriented_circuits, separating_edges
from .toric import (
    MonomialAB,
    circuit_generators,
    local_component_count,
    monoid_rank,
    multiplicity,
)

RING_NAMES = (
    "A_hat", "B_hat", "S1", "S2", "R_I", "R_XI", "InvariantRing_R_I", "InvariantRing_R_XI",
)
MODES = ("jacobian", "universal")
ASSERTED_PROPERTIES = ("Gorenstein", "slc", "seminormal")


@dataclass(frozen=True)
class Variable:
    symbol: str
    kind: str  # X_e, Y_e, T_e, W_i, u, v, t
    ref: object = None  # edge id, W index, or local-branch label


@dataclass(frozen=True)
class Relation:
    lhs: str
    rhs: str  # "0" for monomial relations

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass
class RingPresentation:
    name: str
    variables: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    torus_weights: dict = field(default_factory=dict)
    generators: list | None = None
    generator_circulations: list | None = None

    def count(self, kind: str) -> int:
        return sum(1 for v in self.variables if v.kind == kind)

    def symbols(self) -> set:
        return {v.symbol for v in self.variables}


@dataclass(frozen=True)
class LocalReport:
    mode: str
    smooth: bool
    local_dimension: int
    embedding_dimension: int
    multiplicity: int
    component_count: int
    invariant_ring_dimension: int
    g_sigma: int
    aut_torus_rank: int
    asserted_properties: tuple = ASSERTED_PROPERTIES
    experimental: bool = False


def gamma_of(c: CurveGraph, s: SheafDatum) -> MultiGraph:
    """Dual graph after smoothing the nodes where the sheaf is locally free."""
    return contract_edges(c.graph, s.nonfree)[0]


def w_count(c: CurveGraph, s: SheafDatum, which: str) -> int:
    """Number of torus-fixed power-series variables ``W_i``."""
    gamma = gamma_of(c, s)
    g = arithmetic_genus(c)
    if which in ("R_I", "InvariantRing_R_I"):
        m = g - b1(gamma)
    elif which in ("R_XI", "InvariantRing_R_XI"):
        m = 4 * g - 3 - b1(gamma) - len(gamma.edges)
    else:
        return 0
    if m < 0:
        raise NegativeVariableCount(f"{which} would need {m} W variables")
    return m


def _edge_weight(gamma: MultiGraph, eid, sign: int) -> dict:
    e = gamma.edge(eid)
    w = {v: 0 for v in gamma.vertices}
    w[e.source] += sign
    w[e.target] -= sign
    return w


def _zero_weight(gamma: MultiGraph) -> dict:
    return {v: 0 for v in gamma.vertices}


def _edge_part(p: RingPresentation, gamma: MultiGraph, with_t: bool) -> None:
    for e in gamma.edges:
        x, y = f"X_{e.id}", f"Y_{e.id}"
        p.variables += [Variable(x, "X_e", e.id), Variable(y, "Y_e", e.id)]
        p.torus_weights[x] = _edge_weight(gamma, e.id, +1)
        p.torus_weights[y] = _edge_weight(gamma, e.id, -1)
        if with_t:
            t = f"T_{e.id}"
            p.variables.append(Variable(t, "T_e", e.id))
            p.torus_weights[t] = _zero_weight(gamma)
            p.relations.append(Relation(f"{x}*{y}", t))
        else:
            p.relations.append(Relation(f"{x}*{y}", "0"))


def _w_part(p: RingPresentation, gamma: MultiGraph, m: int) -> None:
    for i in range(1, m + 1):
        p.variables.append(Variable(f"W_{i}", "W_i", i))
        p.torus_weights[f"W_{i}"] = _zero_weight(gamma)


def _local_model(which: str) -> RingPresentation:
    # a, b: scalars of an automorphism on the two branches at the node
    p = RingPresentation(which)
    p.variables = [Variable("u", "u"), Variable("v", "v")]
    p.torus_weights = {"u": {"a": 1, "b": -1}, "v": {"a": -1, "b": 1}}
    if which == "S1":
        p.relations = [Relation("u*v", "0")]
    else:
        p.variables.append(Variable("t", "t"))
        p.torus_weights["t"] = {"a": 0, "b": 0}
        p.relations = [Relation("u*v", "t")]
    return p


def presentation(c: CurveGraph, s: SheafDatum, which: str) -> RingPresentation:
    """Explicit presentation of one of the rings in :data:`RING_NAMES`."""
    if which not in RING_NAMES:
        raise ValueError(f"unknown ring {which!r}; expected one of {RING_NAMES}")
    if which in ("S1", "S2"):
        return _local_model(which)
    s.check_on(c)
    gamma = gamma_of(c, s)
    universal = which in ("B_hat", "R_XI", "InvariantRing_R_XI")
    p = RingPresentation(which)
    _edge_part(p, gamma, with_t=universal)
    _w_part(p, gamma, w_count(c, s, which))
    if which.startswith("InvariantRing"):
        circs = circuit_generators(gamma)
        gens = [MonomialAB.from_circulation(gamma, cc).to_string(gamma) for cc in circs]
        if universal:
            # T_e of a loop equals X_e*Y_e; listed anyway, dropped from edim
            gens += [f"T_{e.id}" for e in gamma.edges]
        gens += [v.symbol for v in p.variables if v.kind == "W_i"]
        p.generators = gens
        p.generator_circulations = circs
    return p


def deformation_ring_local_pieces(s: SheafDatum, gamma: MultiGraph | None = None,
                                  universal: bool = False) -> list[RingPresentation]:
    """One labeled copy of S1 (S2 when ``universal``) per nonfree node.

    ``U[e:l]`` and ``U[e:r]`` correspond to the two orientations of ``e``.
    When ``gamma`` is given their torus weights are those of ``X_e`` and
    ``Y_e`` on it.
    """
    pieces = []
    edge_order = (lambda e: gamma.edge_index(e)) if gamma is not None else repr
    for eid in sorted(s.nonfree, key=edge_order):
        p = RingPresentation("S2" if universal else "S1")
        ul, ur = f"U[{eid}:l]", f"U[{eid}:r]"
        p.variables = [Variable(ul, "u", (eid, "l")), Variable(ur, "v", (eid, "r"))]
        if gamma is not None:
            p.torus_weights[ul] = _edge_weight(gamma, eid, +1)
            p.torus_weights[ur] = _edge_weight(gamma, eid, -1)
        if universal:
            t = f"T[{eid}]"
            p.variables.append(Variable(t, "t", eid))
            p.relations = [Relation(f"{ul}*{ur}", t)]
            if gamma is not None:
                p.torus_weights[t] = _zero_weight(gamma)
        else:
            p.relations = [Relation(f"{ul}*{ur}", "0")]
        pieces.append(p)
    return pieces


def _check(report: LocalReport) -> LocalReport:
    r = report
    conditions = (
        r.smooth,
        r.multiplicity == 1,
        r.embedding_dimension == r.local_dimension,
        r.component_count == 1 and r.multiplicity == 1,
    )
    if len(set(conditions)) != 1:
        raise AssertionError(f"inconsistent local report: {r}")
    if r.embedding_dimension < r.local_dimension:
        raise AssertionError(f"embedding dimension below dimension: {r}")
    return r


def local_report(c: CurveGraph, s: SheafDatum, mode: str = "jacobian",
                 t_max: int | None = None) -> LocalReport:
    """Smoothness, dimensions, multiplicity and branch count at the point of ``s``."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    s.check_on(c)
    gamma = gamma_of(c, s)
    g = arithmetic_genus(c)
    circuits = len(oriented_circuits(gamma))
    rank = aut_torus_rank(c, s)
    if rank != len(gamma.vertices):
        raise AssertionError("automorphism torus rank differs from #V(gamma)")
    g_sigma = g - b1(gamma)

    if mode == "jacobian":
        report = LocalReport(
            mode=mode,
            smooth=s.nonfree <= separating_edges(c.graph),
            local_dimension=g,
            embedding_dimension=circuits + g_sigma,
            multiplicity=multiplicity(gamma, t_max=t_max, mode="A"),
            component_count=local_component_count(gamma),
            invariant_ring_dimension=monoid_rank(gamma, "A"),
            g_sigma=g_sigma,
            aut_torus_rank=rank,
        )
        return _check(report)

    m = w_count(c, s, "R_XI")
    mult = multiplicity(gamma, t_max=t_max, mode="B")
    non_loops = sum(1 for e in gamma.edges if not e.is_loop)
    report = LocalReport(
        mode=mode,
        smooth=mult == 1,
        local_dimension=4 * g - 3,
        embedding_dimension=circuits + non_loops + m,
        multiplicity=mult,
        component_count=1,
        invariant_ring_dimension=monoid_rank(gamma, "B"),
        g_sigma=g_sigma,
        aut_torus_rank=rank,
        experimental=True,
    )
    return _check(report)
