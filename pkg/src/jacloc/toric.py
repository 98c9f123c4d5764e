"""Torus-invariant monomials of the local rings and their monoid.

The torus ``prod_v G_m`` scales ``X_e`` by ``lambda_s / lambda_t`` and
``Y_e`` by ``lambda_t / lambda_s``; ``T_e`` is fixed.  A monomial of the
ring ``k[[X, Y]]/(X_e Y_e)`` is invariant exactly when its signed exponent
vector ``x - y`` is a circulation, and two such monomials multiply to zero
when they have opposite signs on a common edge.

Two monoids are handled:

* mode ``"A"``: circulations with sign-compatible addition (product zero
  otherwise);
* mode ``"B"``: pairs ``(x, y)`` of exponent vectors with ``x - y`` a
  circulation and plain addition.  Here ``X_e Y_e`` is rewritten as
  ``T_e``, so the ring has no zero divisors.

Degree is the total exponent, with ``T_e`` of degree 2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import NonStabilized
from .graph import (
    Circulation,
    MultiGraph,
    b1,
    canonical_form,
    circuit_to_circulation,
    oriented_circuits,
    separating_edges,
    totally_cyclic_orientations,
)

log = logging.getLogger(__name__)

MODES = ("A", "B")


@dataclass(frozen=True)
class MonomialAB:
    """Exponents of ``X_e``, ``Y_e`` (and ``T_e`` in mode B), aligned with graph edge order."""

    x_exp: tuple
    y_exp: tuple
    t_exp: tuple | None = None

    @property
    def degree(self) -> int:
        t = 2 * sum(self.t_exp) if self.t_exp is not None else 0
        return sum(self.x_exp) + sum(self.y_exp) + t

    @property
    def is_normal(self) -> bool:
        return all(min(a, b) == 0 for a, b in zip(self.x_exp, self.y_exp))

    @property
    def signed(self) -> tuple:
        return tuple(a - b for a, b in zip(self.x_exp, self.y_exp))

    def to_string(self, g: MultiGraph) -> str:
        factors = []
        for name, exps in (("X", self.x_exp), ("Y", self.y_exp), ("T", self.t_exp or ())):
            for e, k in zip(g.edges, exps):
                if k:
                    factors.append(f"{name}_{e.id}" + (f"^{k}" if k > 1 else ""))
        return "*".join(factors) if factors else "1"

    @classmethod
    def from_circulation(cls, g: MultiGraph, c: Circulation, t_exp: Sequence[int] | None = None):
        v = c.vector(g)
        return cls(tuple(max(x, 0) for x in v), tuple(max(-x, 0) for x in v),
                   None if t_exp is None else tuple(t_exp))


def weight_of(m: MonomialAB, g: MultiGraph) -> dict:
    """Exponent of each ``lambda_v`` in the torus character of ``m``."""
    w = {v: 0 for v in g.vertices}
    for e, a, b in zip(g.edges, m.x_exp, m.y_exp):
        w[e.source] += a - b
        w[e.target] -= a - b
    return w


def _signed_vectors(n: int, bound: int):
    """Integer vectors of length ``n`` with l1-norm at most ``bound``."""
    if n == 0:
        yield ()
        return
    for head in range(-bound, bound + 1):
        for tail in _signed_vectors(n - 1, bound - abs(head)):
            yield (head,) + tail


def _nonneg_vectors(n: int, bound: int):
    if n == 0:
        yield ()
        return
    for head in range(bound + 1):
        for tail in _nonneg_vectors(n - 1, bound - head):
            yield (head,) + tail


def invariant_monomials_upto(g: MultiGraph, D: int, mode: str = "A") -> list[MonomialAB]:
    """Brute-force list of nonzero invariant monomials of degree at most ``D``.

    Every normal-form monomial in the bound is generated and kept when its
    torus weight vanishes; no circulation theory is used.
    """
    if D < 0:
        raise ValueError("degree bound must be nonnegative")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    n = len(g.edges)
    out = []
    for signed in _signed_vectors(n, D):
        x = tuple(max(s, 0) for s in signed)
        y = tuple(max(-s, 0) for s in signed)
        base = MonomialAB(x, y, (0,) * n if mode == "B" else None)
        if any(weight_of(base, g).values()):
            continue
        if mode == "A":
            out.append(base)
            continue
        room = (D - base.degree) // 2
        for t in _nonneg_vectors(n, room):
            out.append(MonomialAB(x, y, t))
    out.sort(key=lambda m: (m.degree, m.x_exp, m.y_exp, m.t_exp or ()))
    return out


def circuit_generators(g: MultiGraph) -> list[Circulation]:
    """Circulations of all oriented circuits of ``g``."""
    return [circuit_to_circulation(c, g) for c in oriented_circuits(g)]


def sign_compatible(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x * y >= 0 for x, y in zip(a, b))


def monoid_product(a: Circulation, b: Circulation) -> Circulation | None:
    """Product in the mode-A monoid; ``None`` stands for the zero element."""
    da, db = a.as_dict(), b.as_dict()
    if any(da[k] * db[k] < 0 for k in da.keys() & db.keys()):
        return None
    total = dict(da)
    for k, v in db.items():
        total[k] = total.get(k, 0) + v
    return Circulation(tuple((k, v) for k, v in total.items() if v))


def monoid_generators(g: MultiGraph, mode: str = "A") -> list[tuple]:
    """Minimal generators of the invariant monoid as integer vectors.

    Mode A: circuit circulations (length ``#E``).  Mode B: ``x ++ y``
    vectors (length ``2 #E``) of the circuits, plus ``T_e = X_e Y_e`` for
    every non-loop edge; for a loop, ``T_e`` is already the product of the
    two loop circuits.
    """
    circuits = [c.vector(g) for c in circuit_generators(g)]
    if mode == "A":
        return circuits
    n = len(g.edges)
    gens = [tuple(max(x, 0) for x in c) + tuple(max(-x, 0) for x in c) for c in circuits]
    for i, e in enumerate(g.edges):
        if not e.is_loop:
            unit = tuple(1 if j == i else 0 for j in range(n))
            gens.append(unit + unit)
    return gens


def _below(gen: tuple, u: tuple, mode: str) -> bool:
    if mode == "A":
        return all(x == 0 or (x * y > 0 and abs(x) <= abs(y)) for x, y in zip(gen, u))
    return all(x <= y for x, y in zip(gen, u))


def _add(u: tuple, v: tuple, mode: str) -> tuple | None:
    if mode == "A" and not sign_compatible(u, v):
        return None
    return tuple(x + y for x, y in zip(u, v))


def _degree(u: tuple) -> int:
    return sum(abs(x) for x in u)


def _keys(rows: np.ndarray) -> np.ndarray:
    """Row-wise byte keys, so rows can be sorted, deduplicated and looked up."""
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    _, idx = np.unique(_keys(rows), return_index=True)
    return rows[np.sort(idx)]


def _step(frontier: np.ndarray, gens: np.ndarray, mode: str) -> np.ndarray:
    """All products ``u * g`` (nonzero) for ``u`` in the frontier."""
    parts = []
    for gvec in gens:
        cand = frontier + gvec
        if mode == "A":
            cand = cand[((frontier * gvec) >= 0).all(axis=1)]
        parts.append(cand)
    return _unique_rows(np.concatenate(parts)) if parts else frontier[:0]


def _layers(gens: np.ndarray, dim: int, t: int, mode: str, graded: bool) -> list[np.ndarray]:
    """Elements grouped by shortest factorization length ``0..t``."""
    layers = [np.zeros((1, dim), dtype=_DTYPE)]
    seen = _keys(layers[0])
    for _ in range(t):
        nxt = _step(layers[-1], gens, mode)
        if not graded and len(nxt):
            # with uniform generator degree, a new layer cannot meet an old one
            nxt = nxt[~np.isin(_keys(nxt), seen)]
            seen = np.concatenate([seen, _keys(nxt)])
        layers.append(nxt)
    return layers


def _longest_factorizations(gens: np.ndarray, elements: np.ndarray, cap: int,
                            mode: str) -> np.ndarray:
    """Longest factorization length, truncated at ``cap``, of every element."""
    degree = np.abs(elements).sum(axis=1)
    order = np.argsort(degree, kind="stable")
    elements, degree = elements[order], degree[order]
    keys = _keys(elements)
    sorter = np.argsort(keys)
    sorted_keys = keys[sorter]
    longest = np.zeros(len(elements), dtype=np.int64)
    bounds = np.flatnonzero(np.diff(degree)) + 1
    for lo, hi in zip(np.r_[0, bounds], np.r_[bounds, len(elements)]):
        if degree[lo] == 0:
            continue
        block = elements[lo:hi]
        best = np.zeros(hi - lo, dtype=np.int64)
        for gvec in gens:
            if mode == "A":
                ok = ((gvec == 0) | ((gvec * block > 0) & (np.abs(gvec) <= np.abs(block)))).all(axis=1)
            else:
                ok = (gvec <= block).all(axis=1)
            if not ok.any():
                continue
            rest = np.ascontiguousarray(block[ok] - gvec)
            rkeys = _keys(rest)
            pos = np.searchsorted(sorted_keys, rkeys)
            pos = np.minimum(pos, len(sorted_keys) - 1)
            found = sorted_keys[pos] == rkeys
            # an unreached remainder already needs more than cap factors
            sub = np.where(found, longest[sorter[pos]], cap)
            best[ok] = np.maximum(best[ok], sub + 1)
        longest[lo:hi] = np.minimum(best, cap)
    return longest


def _hilbert_samuel_vectors(gens: list[tuple], dim: int, t_max: int, mode: str) -> list[int]:
    gen_arr = np.array(gens, dtype=_DTYPE).reshape(len(gens), dim)
    graded = len({_degree(gv) for gv in gens}) <= 1
    layers = _layers(gen_arr, dim, t_max, mode, graded)
    if graded:
        # every factorization has the same length: degree / generator degree
        counts = [len(layer) for layer in layers]
    else:
        elements = np.concatenate(layers)
        lengths = _longest_factorizations(gen_arr, elements, t_max + 1, mode)
        counts = np.bincount(lengths, minlength=t_max + 2)[: t_max + 1].tolist()
    return np.cumsum(counts).tolist()


_DTYPE = np.int16


def hilbert_samuel(g: MultiGraph, t_max: int, mode: str = "A") -> list[int]:
    """``HS(t) = length(R / m^(t+1))`` for ``t = 0..t_max``.

    ``R`` is the invariant monoid ring and ``m`` its maximal monomial
    ideal, generated by :func:`monoid_generators`.  A monomial lies outside
    ``m^(t+1)`` exactly when its longest factorization into generators has
    length at most ``t``.
    """
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    key = (canonical_form(g), t_max, mode)
    if key not in _HS_CACHE:
        if len(_HS_CACHE) >= _HS_CACHE_SIZE:
            _HS_CACHE.pop(next(iter(_HS_CACHE)))
        gens = monoid_generators(g, mode)
        dim = len(g.edges) * (1 if mode == "A" else 2)
        _HS_CACHE[key] = tuple(_hilbert_samuel_vectors(gens, dim, t_max, mode))
    return list(_HS_CACHE[key])


# HS depends only on the isomorphism class of the graph
_HS_CACHE: dict = {}
_HS_CACHE_SIZE = 512


def monoid_rank(g: MultiGraph, mode: str = "A") -> int:
    """Krull dimension of the invariant ring: ``b1`` (A) or ``b1 + #E`` (B)."""
    return b1(g) + (len(g.edges) if mode == "B" else 0)


def finite_difference(values: Sequence[int], order: int, t: int) -> int:
    return sum((-1) ** (order - k) * comb(order, k) * values[t + k] for k in range(order + 1))


def _stable_difference(hs: Sequence[int], d: int) -> int | None:
    window = d + 2
    diffs = [finite_difference(hs, d, t) for t in range(len(hs) - d)]
    for start in range(len(diffs) - window + 1):
        chunk = diffs[start:start + window]
        if len(set(chunk)) == 1:
            return chunk[0]
    return None


def multiplicity(g: MultiGraph, t_max: int | None = None, mode: str = "A",
                 t_cap: int = 40) -> int:
    """Hilbert-Samuel multiplicity of the invariant ring at its maximal ideal.

    The ``d``-th finite difference of :func:`hilbert_samuel` (``d`` the
    dimension) must be constant over ``d + 2`` consecutive arguments.  With
    ``t_max`` unset the range grows from ``2d + 1`` up to ``t_cap``.
    """
    d = monoid_rank(g, mode)
    if d == 0:
        return 1
    if t_max is not None:
        found = _stable_difference(hilbert_samuel(g, t_max, mode), d)
        if found is None:
            raise NonStabilized(f"d-th difference not constant by t_max={t_max} (d={d})")
        return found
    t = 2 * d + 1
    while True:
        found = _stable_difference(hilbert_samuel(g, t, mode), d)
        if found is not None:
            return found
        if t >= t_cap:
            raise NonStabilized(f"d-th difference not constant by t={t} (d={d})")
        log.debug("multiplicity: no stable window at t=%d, extending", t)
        t = min(t + d + 2, t_cap)


def bridgeless_part(g: MultiGraph) -> MultiGraph:
    return g.without_edges(separating_edges(g))


def local_component_count(g: MultiGraph) -> int:
    """Totally cyclic orientations of ``g`` with its bridges deleted."""
    return len(totally_cyclic_orientations(bridgeless_part(g)))


def monoid_truncation(g: MultiGraph, D: int) -> set[tuple]:
    """Signed exponent vectors of circuit-generated products of degree at most ``D``."""
    gens = [c.vector(g) for c in circuit_generators(g)]
    zero = (0,) * len(g.edges)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for u in frontier:
            for gvec in gens:
                w = _add(u, gvec, "A")
                if w is None or _degree(w) > D or w in seen:
                    continue
                seen.add(w)
                nxt.append(w)
        frontier = nxt
    return seen


def monomial_strings(g: MultiGraph, vectors: Iterable[tuple]) -> list[str]:
    out = []
    for v in vectors:
        out.append(MonomialAB(tuple(max(x, 0) for x in v), tuple(max(-x, 0) for x in v)).to_string(g))
    return out
