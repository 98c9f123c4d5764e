"""Slope and phi-(semi/poly)-stability of rank-1 torsion-free sheaves.

Every decision is made with :class:`fractions.Fraction`; wall cases such as
half-integral phi are decided exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor, lcm
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .curve import (
    CurveGraph,
    LineBundleDatum,
    Polarization,
    SheafDatum,
    arithmetic_genus,
    as_subcurve,
    cut_edges,
    omega_degree,
    restricted_degree,
    subcurves,
)
from .errors import DegreeMismatch, MDegreeMismatch, NonRationalPhi


def _exact(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, Rational):
        raise NonRationalPhi(f"not an exact rational: {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class PhiParameter:
    value: Mapping
    target_sum: int

    def __post_init__(self):
        vals = {v: _exact(x) for v, x in dict(self.value).items()}
        if sum(vals.values(), Fraction(0)) != self.target_sum:
            raise ValueError("phi entries must sum exactly to target_sum")
        object.__setattr__(self, "value", MappingProxyType(vals))

    @classmethod
    def of(cls, values: Mapping) -> "PhiParameter":
        total = sum((_exact(x) for x in values.values()), Fraction(0))
        if total.denominator != 1:
            raise ValueError(f"phi entries sum to the non-integer {total}")
        return cls(values, int(total))

    def on(self, Y: Iterable) -> Fraction:
        return sum((self.value[v] for v in Y), Fraction(0))


@dataclass(frozen=True)
class HilbertPolynomial:
    leading: int
    constant: Fraction

    @property
    def slope(self) -> Fraction:
        return Fraction(self.constant) / self.leading

    def __call__(self, t) -> Fraction:
        return self.leading * t + self.constant


class Status(str, enum.Enum):
    STABLE = "Stable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    witnesses: tuple = ()

    @property
    def semistable(self) -> bool:
        return self.status is not Status.UNSTABLE

    @property
    def stable(self) -> bool:
        return self.status is Status.STABLE


@dataclass(frozen=True)
class PolystabilityCertificate:
    polystable: bool
    partition: tuple | None = None  # tuple of frozensets when polystable

    def __bool__(self) -> bool:
        return self.polystable


def _verdict(margins: Iterator[tuple[frozenset, Fraction]]) -> StabilityVerdict:
    """Classify from ``(Y, lhs - rhs)`` margins of ``lhs >= rhs`` inequalities."""
    bad, tight = [], []
    for Y, m in margins:
        if m < 0:
            bad.append(Y)
        elif m == 0:
            tight.append(Y)
    if bad:
        return StabilityVerdict(Status.UNSTABLE, tuple(bad))
    if tight:
        return StabilityVerdict(Status.STRICTLY_SEMISTABLE, tuple(tight))
    return StabilityVerdict(Status.STABLE)


def hilbert_polynomial(c: CurveGraph, s: SheafDatum, L: Polarization,
                       Y: Iterable | None = None) -> HilbertPolynomial:
    """Hilbert polynomial of the sheaf, or of its restriction pushed forward from ``Y``."""
    if Y is None:
        return HilbertPolynomial(L.total_degree,
                                 Fraction(s.total_degree + 1 - arithmetic_genus(c)))
    Y = as_subcurve(c, Y)
    constant = (restricted_degree(c, s, Y)
                - Fraction(omega_degree(c, Y), 2)
                + Fraction(len(cut_edges(c, Y)), 2))
    return HilbertPolynomial(sum(L.component_degree[v] for v in Y), constant)


def slope_bound(c: CurveGraph, s: SheafDatum, L: Polarization, Y: frozenset) -> Fraction:
    """Lower bound on deg(I_Y) for slope semistability."""
    g = arithmetic_genus(c)
    LY = sum(L.component_degree[v] for v in Y)
    return (Fraction(LY, L.total_degree) * (s.total_degree - (g - 1))
            + Fraction(omega_degree(c, Y), 2) - Fraction(len(cut_edges(c, Y)), 2))


def slope_semistable(c: CurveGraph, s: SheafDatum, L: Polarization) -> StabilityVerdict:
    s.check_on(c)
    return _verdict(
        (Y, restricted_degree(c, s, Y) - slope_bound(c, s, L, Y)) for Y in subcurves(c)
    )


def phi_bound(c: CurveGraph, phi: PhiParameter, Y: frozenset) -> Fraction:
    """phi_Y - #(Y cap Y^c)/2, the lower bound on deg(I_Y)."""
    return phi.on(Y) - Fraction(len(cut_edges(c, Y)), 2)


def _check_degree(s: SheafDatum, phi: PhiParameter) -> None:
    if s.total_degree != phi.target_sum:
        raise DegreeMismatch(
            f"sheaf has degree {s.total_degree} but phi sums to {phi.target_sum}"
        )


def _phi_upper_verdict(c: CurveGraph, s: SheafDatum, phi: PhiParameter) -> StabilityVerdict:
    # upper-bound form; its margin at Y equals the lower-bound margin at Y^c
    margins = []
    for Y in subcurves(c):
        cut = cut_edges(c, Y)
        upper = phi.on(Y) + Fraction(len(cut), 2) - len(cut & s.nonfree)
        margins.append((Y, upper - restricted_degree(c, s, Y)))
    return _verdict(iter(margins))


def phi_semistable(c: CurveGraph, s: SheafDatum, phi: PhiParameter,
                   check_upper: bool = __debug__) -> StabilityVerdict:
    """phi-semistability via deg(I_Y) >= phi_Y - #(Y cap Y^c)/2 for all subcurves.

    With ``check_upper`` the equivalent upper-bound form is evaluated as
    well and must yield the same status.
    """
    s.check_on(c)
    _check_degree(s, phi)
    verdict = _verdict(
        (Y, restricted_degree(c, s, Y) - phi_bound(c, phi, Y)) for Y in subcurves(c)
    )
    if check_upper:
        upper = _phi_upper_verdict(c, s, phi)
        if upper.status != verdict.status:
            raise AssertionError("upper and lower phi-bounds disagree")
    return verdict


def set_partitions(items: list) -> Iterator[list[list]]:
    """All set partitions of ``items`` (restricted-growth order)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _proper_nonempty_subsets(W: list) -> Iterator[frozenset]:
    n = len(W)
    for mask in range(1, (1 << n) - 1):
        yield frozenset(W[i] for i in range(n) if mask >> i & 1)


def _splits_along_nonfree(c: CurveGraph, s: SheafDatum, blocks: list[frozenset]) -> bool:
    where = {v: i for i, W in enumerate(blocks) for v in W}
    return all(e.id in s.nonfree for e in c.edges if where[e.source] != where[e.target])


def _ordered_partitions(c: CurveGraph) -> Iterator[list[frozenset]]:
    for part in set_partitions(list(c.vertices)):
        if len(part) >= 2:
            yield [frozenset(W) for W in part]


def phi_polystable(c: CurveGraph, s: SheafDatum, phi: PhiParameter) -> PolystabilityCertificate:
    """Decide phi-polystability and return a witnessing decomposition.

    The sheaf is polystable when it is semistable and splits, along nonfree
    nodes only, into pieces that are phi-stable on their supports: for a
    piece on ``W`` every nonempty proper ``Y`` inside ``W`` satisfies the
    bound strictly.  The bound keeps the cut of ``Y`` in the whole curve,
    which is what the piece's own slope condition reduces to.
    """
    verdict = phi_semistable(c, s, phi)
    if verdict.stable:
        return PolystabilityCertificate(True, (frozenset(c.vertices),))
    if not verdict.semistable:
        return PolystabilityCertificate(False)
    for blocks in _ordered_partitions(c):
        if not _splits_along_nonfree(c, s, blocks):
            continue
        if any(restricted_degree(c, s, W) != phi_bound(c, phi, W) for W in blocks):
            continue
        if all(restricted_degree(c, s, Y) > phi_bound(c, phi, Y)
               for W in blocks for Y in _proper_nonempty_subsets(sorted(W, key=c.graph.vertex_index))):
            return PolystabilityCertificate(True, tuple(blocks))
    return PolystabilityCertificate(False)


def slope_polystable(c: CurveGraph, s: SheafDatum, L: Polarization) -> PolystabilityCertificate:
    """Slope polystability, decided from Hilbert-polynomial slopes alone.

    A decomposition is accepted when the pieces meet only at nonfree nodes,
    each piece has the slope of the whole sheaf, and every proper quotient
    of a piece has strictly larger slope.
    """
    verdict = slope_semistable(c, s, L)
    if verdict.stable:
        return PolystabilityCertificate(True, (frozenset(c.vertices),))
    if not verdict.semistable:
        return PolystabilityCertificate(False)
    mu = hilbert_polynomial(c, s, L).slope
    for blocks in _ordered_partitions(c):
        if not _splits_along_nonfree(c, s, blocks):
            continue
        if any(hilbert_polynomial(c, s, L, W).slope != mu for W in blocks):
            continue
        if all(hilbert_polynomial(c, s, L, Y).slope > mu
               for W in blocks for Y in _proper_nonempty_subsets(sorted(W, key=c.graph.vertex_index))):
            return PolystabilityCertificate(True, tuple(blocks))
    return PolystabilityCertificate(False)


def twist(s: SheafDatum, M: LineBundleDatum) -> SheafDatum:
    """Tensor with a line bundle: shift the multidegree, keep the nonfree nodes."""
    degrees = {v: d + M.component_degree.get(v, 0) for v, d in s.component_degree.items()}
    return SheafDatum(degrees, s.nonfree)


def slope_to_phi(c: CurveGraph, L: Polarization, M: LineBundleDatum | None = None,
                 d: int = 0) -> PhiParameter:
    """phi(L, M) for sheaves of degree ``d``.

    phi_i = deg M_i + omega_i/2 + (d - omega/2) * L_i / deg L.  With ``M``
    given it must have degree ``-d`` and phi sums to 0.  Without ``M`` the
    trivial bundle is used and phi sums to ``d``.
    """
    if M is not None and M.total_degree != -d:
        raise MDegreeMismatch(f"M has degree {M.total_degree}, expected {-d}")
    g = arithmetic_genus(c)
    shift = d - (g - 1)
    values = {}
    for v in c.vertices:
        m = M.component_degree.get(v, 0) if M is not None else 0
        values[v] = (m + Fraction(omega_degree(c, [v]), 2)
                     + shift * Fraction(L.component_degree[v], L.total_degree))
    return PhiParameter(values, d + (M.total_degree if M is not None else 0))


def phi_to_polarization(c: CurveGraph, phi: PhiParameter) -> tuple[Polarization, LineBundleDatum, int]:
    """Find ``(L, M, d)`` with ``slope_to_phi(c, L, M, d) == phi``.

    M is chosen so that a_i = phi_i - deg M_i - omega_i/2 lies in (0, 1];
    then d = -deg M automatically exceeds g - 1 since the a_i sum to
    d - g + 1.  L is the smallest integral multiple of a / (d - g + 1).
    """
    for x in phi.value.values():
        _exact(x)
    if phi.target_sum != 0:
        raise DegreeMismatch("phi_to_polarization needs phi summing to 0")
    g = arithmetic_genus(c)
    M, a = {}, {}
    for v in c.vertices:
        base = phi.value[v] - Fraction(omega_degree(c, [v]), 2)
        M[v] = ceil(base) - 1
        a[v] = base - M[v]
    d = -sum(M.values())
    denom = d - g + 1
    ratios = {v: a[v] / denom for v in c.vertices}
    e = lcm(*(r.denominator for r in ratios.values()))
    L = {v: int(ratios[v] * e) for v in c.vertices}
    return Polarization(L), LineBundleDatum(M), d


def multidegree_box(c: CurveGraph, phi: PhiParameter) -> dict:
    """Per-vertex ranges allowed for a semistable line bundle."""
    box = {}
    for v in c.vertices:
        if len(c.vertices) == 1:
            box[v] = range(phi.target_sum, phi.target_sum + 1)
            continue
        half = Fraction(len(cut_edges(c, [v])), 2)
        box[v] = range(ceil(phi.value[v] - half), floor(phi.value[v] + half) + 1)
    return box


def count_stable_line_multidegrees(c: CurveGraph, phi: PhiParameter) -> tuple[list, list]:
    """Stable and strictly semistable line-bundle multidegrees of degree ``phi.target_sum``.

    Same verdicts as :func:`phi_semistable` on each multidegree, with the
    subcurve bounds computed once.
    """
    box = multidegree_box(c, phi)
    vs = c.vertices
    index = {v: i for i, v in enumerate(vs)}
    bounds = [([index[v] for v in Y], phi_bound(c, phi, Y)) for Y in subcurves(c)]
    last = box[vs[-1]]
    stable, semistable = [], []
    for head in product(*(box[v] for v in vs[:-1])):
        tail = phi.target_sum - sum(head)
        if tail not in last:
            continue
        degs = head + (tail,)
        margins = [sum(degs[i] for i in Y) - bound for Y, bound in bounds]
        if min(margins, default=1) < 0:
            continue
        target = stable if all(m > 0 for m in margins) else semistable
        target.append(dict(zip(vs, degs)))
    return stable, semistable
