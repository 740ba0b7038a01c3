"""Transfer map, its inverse, the opposite map and local linearity data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    DimensionMismatch,
    NotInPolyhedronError,
    PreconditionError,
    UnboundedDirectionError,
)
from .network import Cycle, MarkedNetwork, make_cycle, opposite
from .rational import fmt, to_fraction
from .walks import _argmax_edge, inverse_forms

__all__ = [
    "as_point",
    "phi",
    "psi",
    "phi_op",
    "phi_general",
    "TightSubnetwork",
    "tight_subnetwork",
    "LinearityMatrix",
    "linearity_matrix",
    "fraction_det",
    "point_to_json",
]


def as_point(dims: Sequence[str], x: Mapping[str, object]) -> dict[str, Fraction]:
    """Exact point over ``dims``; raises on missing or extra coordinates."""
    if set(x) != set(dims):
        missing = sorted(set(dims) - set(x))
        extra = sorted(set(x) - set(dims))
        raise DimensionMismatch(f"point coordinates differ (missing {missing}, extra {extra})")
    return {v: to_fraction(x[v]) for v in dims}


def point_to_json(x: Mapping[str, object]) -> dict[str, str]:
    return {k: fmt(v) for k, v in x.items()}


def phi(net: MarkedNetwork, x: Mapping[str, object]) -> dict[str, Fraction]:
    """``phi(x)_v = x_v - max over edges v->w of (alpha*x_w + c)``.

    Defined on all of R^V; marked coordinates take their marking.
    """
    x = as_point(net.unmarked, x)
    out = {}
    for v in net.unmarked:
        e, best = _argmax_edge(net, x, v)
        if e is None:
            raise PreconditionError(f"unmarked sink {v!r}")
        out[v] = x[v] - best
    return out


def psi(net: MarkedNetwork, y: Mapping[str, object]) -> dict[str, Fraction]:
    """Inverse of :func:`phi`: ``psi(y)_v`` is the largest value at ``y`` of
    the forms of all paths and monocycles starting at ``v``.

    Requires an acyclic or gainy network with all sinks marked.
    """
    forms = inverse_forms(net)
    y = as_point(net.unmarked, y)
    return {v: max(form(y) for _, form in forms[v]) for v in net.unmarked}


def phi_op(net: MarkedNetwork, x: Mapping[str, object]) -> dict[str, Fraction]:
    """``-x_v + min over edges w->v of (x_w - c)/alpha``; needs all
    sources marked. Equal to ``phi(opposite(net), -x)``."""
    x = as_point(net.unmarked, x)
    out = {}
    for v in net.unmarked:
        incoming = net.in_edges(v)
        if not incoming:
            raise PreconditionError(f"unmarked source {v!r}")
        out[v] = -x[v] + min((net.value(x, e.src) - e.c) / e.alpha for e in incoming)
    return out


def phi_general(poly, directions: Sequence, x: Mapping[str, object]) -> list[Fraction]:
    """For each direction ``u``, the largest ``mu >= 0`` with
    ``x - mu*u`` still in ``poly``.

    ``directions`` holds vectors indexed like ``poly.dims`` (sequences or
    mappings). ``x`` must lie in ``poly``.
    """
    x = as_point(poly.dims, x)
    if not poly.contains(x):
        raise NotInPolyhedronError("point is not in the polyhedron")
    xs = [x[d] for d in poly.dims]
    result = []
    for u in directions:
        if isinstance(u, Mapping):
            u = [to_fraction(u.get(d, 0)) for d in poly.dims]
        else:
            u = [to_fraction(t) for t in u]
        if len(u) != len(poly.dims):
            raise DimensionMismatch("direction has the wrong length")
        best = None
        for row in poly.rows:
            slope = sum(a * t for a, t in zip(row.coeffs, u))
            if slope < 0:
                slack = row.rhs - sum(a * t for a, t in zip(row.coeffs, xs))
                bound = slack / -slope
                if best is None or bound < best:
                    best = bound
        if best is None:
            raise UnboundedDirectionError(f"unbounded along direction {[fmt(t) for t in u]}")
        result.append(best)
    return result


# --------------------------------------------------------------------------
# linearity data


@dataclass(frozen=True)
class TightSubnetwork:
    """Per-node maximizing edges of the transfer map at a point.

    Following the chosen edges from any node either reaches a marked node
    or enters one of ``cycles``; ``forest_edges`` are the chosen edges not on
    a cycle.
    """

    chosen: dict[str, int]
    cycles: tuple[Cycle, ...]
    forest_edges: tuple[int, ...]

    @property
    def acyclic(self) -> bool:
        return not self.cycles


def tight_subnetwork(net: MarkedNetwork, x: Mapping[str, object]) -> TightSubnetwork:
    x = as_point(net.unmarked, x)
    chosen = {}
    for v in net.unmarked:
        e, _ = _argmax_edge(net, x, v)
        if e is None:
            raise PreconditionError(f"unmarked sink {v!r}")
        chosen[v] = e.id

    # each unmarked node has out-degree one: walk forward until a marked node,
    # a node finished earlier, or a node on the current trail (a new cycle)
    state: dict[str, int] = {}
    cycles = []
    for start in net.unmarked:
        trail = []
        u = start
        while not net.is_marked(u) and u not in state:
            state[u] = 1
            trail.append(u)
            u = net.edges[chosen[u]].dst
        if not net.is_marked(u) and state[u] == 1:
            loop = trail[trail.index(u):]
            cycles.append(make_cycle(net, [chosen[w] for w in loop]))
        for w in trail:
            state[w] = 2
    cycles.sort(key=lambda cyc: (net.node_index(cyc.nodes[0]), cyc.edges))
    on_cycle = {i for cyc in cycles for i in cyc.edges}
    forest = tuple(sorted(i for i in chosen.values() if i not in on_cycle))
    return TightSubnetwork(chosen, tuple(cycles), forest)


def fraction_det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    a = [list(map(Fraction, row)) for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for k in range(col, n):
                    a[r][k] -= f * a[col][k]
    return det


@dataclass(frozen=True)
class LinearityMatrix:
    """Local affine description ``phi(z) = B z + offset`` valid near the
    point it was computed at (wherever the maximizing edges do not change).
    """

    nodes: tuple[str, ...]
    entries: tuple[tuple[Fraction, ...], ...]
    offset: tuple[Fraction, ...]
    det: Fraction
    cycle_product: Fraction
    tight: TightSubnetwork

    def apply(self, z: Mapping[str, object]) -> dict[str, Fraction]:
        zs = [to_fraction(z[v]) for v in self.nodes]
        return {
            v: sum((b * t for b, t in zip(row, zs)), Fraction(0)) + off
            for v, row, off in zip(self.nodes, self.entries, self.offset)
        }


def linearity_matrix(net: MarkedNetwork, x: Mapping[str, object]) -> LinearityMatrix:
    """Matrix of the linear part of the transfer map at ``x``.

    The determinant is computed by elimination and compared with the
    product of ``1 - weight`` over the cycles of the tight subnetwork; a
    mismatch raises ``AssertionError``.
    """
    tight = tight_subnetwork(net, x)
    index = {v: i for i, v in enumerate(net.unmarked)}
    n = len(index)
    entries = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    offset = []
    for v in net.unmarked:
        e = net.edges[tight.chosen[v]]
        if net.is_marked(e.dst):
            offset.append(-e.c - e.alpha * net.marking(e.dst))
        else:
            entries[index[v]][index[e.dst]] -= e.alpha
            offset.append(-e.c)
    det = fraction_det(entries)
    product = Fraction(1)
    for cyc in tight.cycles:
        product *= 1 - cyc.weight
    if det != product:
        raise AssertionError(f"determinant {fmt(det)} != cycle product {fmt(product)}")
    return LinearityMatrix(
        nodes=net.unmarked,
        entries=tuple(map(tuple, entries)),
        offset=tuple(offset),
        det=det,
        cycle_product=product,
        tight=tight,
    )


def phi_via_opposite(net: MarkedNetwork, x: Mapping[str, object]) -> dict[str, Fraction]:
    """``phi(opposite(net), -x)``; the definitional form of :func:`phi_op`."""
    x = as_point(net.unmarked, x)
    return phi(opposite(net), {v: -t for v, t in x.items()})
