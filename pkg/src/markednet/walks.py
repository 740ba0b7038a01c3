"""Walks (paths and monocycles) and their affine-linear forms.

A *path* runs through distinct unmarked nodes and stops at the first marked
node it reaches. A *monocycle* runs through distinct unmarked nodes and then
closes back onto one of them, repeating that cycle forever. To each walk
belongs an affine form on the unmarked coordinates, obtained by summing
``(prod of earlier alphas) * (x_node + c_edge)`` along the walk; for a
monocycle the repeated cycle contributes a geometric series which is summed
in closed form.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .errors import DivergentMonocycleError, MarkedNetworkError, PreconditionError
from .network import MarkedNetwork, classify_network
from .rational import fmt, to_fraction

__all__ = [
    "AffineForm",
    "Path",
    "Monocycle",
    "Walk",
    "walk_from_json",
    "walk_from_key",
    "walk_nodes",
    "sigma",
    "prepend_edge",
    "enumerate_mw",
    "certificate_walk",
    "partial_sigma_series",
    "unrolled_edges",
    "require_invertible",
    "DEFAULT_WALK_CAP",
]

DEFAULT_WALK_CAP = 10**6


@dataclass(frozen=True)
class AffineForm:
    """``x -> sum(coeffs[v] * x[v]) + constant`` with exact coefficients.

    Zero coefficients are dropped on construction, so two forms are equal
    exactly when they define the same function.
    """

    coeffs: Mapping[str, Fraction] = field(default_factory=dict)
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        clean = {k: to_fraction(v) for k, v in self.coeffs.items()}
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v != 0})
        object.__setattr__(self, "constant", to_fraction(self.constant))

    @classmethod
    def const(cls, value) -> "AffineForm":
        return cls({}, value)

    @classmethod
    def coordinate(cls, node: str) -> "AffineForm":
        return cls({node: Fraction(1)})

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.constant))

    def __add__(self, other):
        if not isinstance(other, AffineForm):
            return AffineForm(self.coeffs, self.constant + to_fraction(other))
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + v
        return AffineForm(coeffs, self.constant + other.constant)

    __radd__ = __add__

    def __mul__(self, scalar):
        scalar = to_fraction(scalar)
        return AffineForm({k: scalar * v for k, v in self.coeffs.items()}, scalar * self.constant)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other if isinstance(other, AffineForm) else -to_fraction(other))

    def __truediv__(self, scalar):
        return self * (1 / to_fraction(scalar))

    def __call__(self, x: Mapping[str, object]):
        """Evaluate at ``x``. Float coordinates give a float result."""
        total = self.constant
        for k, v in self.coeffs.items():
            total = total + v * x[k]
        return total

    def coefficient(self, node: str) -> Fraction:
        return self.coeffs.get(node, Fraction(0))

    def to_json(self):
        return {"coeffs": {k: fmt(v) for k, v in self.coeffs.items()}, "constant": fmt(self.constant)}

    @classmethod
    def from_json(cls, data) -> "AffineForm":
        return cls({k: to_fraction(v) for k, v in data["coeffs"].items()}, to_fraction(data["constant"]))

    def __repr__(self):
        terms = [f"{fmt(v)}*{k}" for k, v in self.coeffs.items()]
        terms.append(fmt(self.constant))
        return f"AffineForm({' + '.join(terms)})"


@dataclass(frozen=True)
class Path:
    """Finite walk from ``start`` along ``edges``; the last node is marked.

    With no edges, ``start`` itself is a marked node (the trivial walk).
    """

    start: str
    edges: tuple[int, ...] = ()

    kind = "path"

    def key(self) -> str:
        return f"P:{self.start}:{','.join(map(str, self.edges))}"

    def to_json(self):
        return {"kind": "path", "start": self.start, "path": list(self.edges), "cycle": []}


@dataclass(frozen=True)
class Monocycle:
    """Walk along ``path_edges`` and then around ``cycle_edges`` forever."""

    start: str
    path_edges: tuple[int, ...]
    cycle_edges: tuple[int, ...]

    kind = "monocycle"

    def key(self) -> str:
        return (
            f"M:{self.start}:{','.join(map(str, self.path_edges))}"
            f"|{','.join(map(str, self.cycle_edges))}"
        )

    def to_json(self):
        return {
            "kind": "monocycle",
            "start": self.start,
            "path": list(self.path_edges),
            "cycle": list(self.cycle_edges),
        }


Walk = Union[Path, Monocycle]


def walk_from_json(data) -> Walk:
    if data["kind"] == "path":
        return Path(data["start"], tuple(data["path"]))
    if data["kind"] == "monocycle":
        return Monocycle(data["start"], tuple(data["path"]), tuple(data["cycle"]))
    raise ValueError(f"unknown walk kind {data['kind']!r}")


def walk_from_key(key: str) -> Walk:
    """Inverse of ``Walk.key()``."""

    def ids(text):
        return tuple(int(t) for t in text.split(",") if t)

    kind, start, rest = key.split(":", 2)
    if kind == "P":
        return Path(start, ids(rest))
    if kind == "M":
        path, cycle = rest.split("|")
        return Monocycle(start, ids(path), ids(cycle))
    raise ValueError(f"bad walk key {key!r}")


def walk_nodes(net: MarkedNetwork, walk: Walk) -> tuple[str, ...]:
    """Nodes visited, checking the structural invariants along the way.

    For a path the marked end node is included; for a monocycle the nodes
    of the path followed by the cycle nodes (each once).
    """
    edges = walk.edges if isinstance(walk, Path) else walk.path_edges + walk.cycle_edges
    nodes = [walk.start]
    for i in edges:
        e = net.edges[i]
        if e.src != nodes[-1]:
            raise MarkedNetworkError(f"edge {i} does not start at {nodes[-1]!r}")
        nodes.append(e.dst)

    if isinstance(walk, Path):
        interior, end = nodes[:-1], nodes[-1]
        if not net.is_marked(end):
            raise MarkedNetworkError(f"path ends at unmarked node {end!r}")
        if any(net.is_marked(v) for v in interior):
            raise MarkedNetworkError("path passes through a marked node")
        if len(set(interior)) != len(interior):
            raise MarkedNetworkError("path repeats a node")
        return tuple(nodes)

    if not walk.cycle_edges:
        raise MarkedNetworkError("monocycle needs a non-empty cycle")
    visited = nodes[:-1]
    if any(net.is_marked(v) for v in visited):
        raise MarkedNetworkError("monocycle visits a marked node")
    if len(set(visited)) != len(visited):
        raise MarkedNetworkError("monocycle nodes are not pairwise distinct")
    if nodes[-1] != nodes[len(walk.path_edges)]:
        raise MarkedNetworkError("cycle does not close at the end of the path")
    return tuple(visited)


def prepend_edge(net: MarkedNetwork, edge, form: AffineForm) -> AffineForm:
    """Form of ``src --edge--> W`` given the form of ``W``:
    ``alpha * form + x_src + c``."""
    e = net.edges[edge] if isinstance(edge, int) else edge
    if net.is_marked(e.src):
        raise MarkedNetworkError(f"cannot prepend edge {e.id}: source {e.src!r} is marked")
    return form * e.alpha + AffineForm.coordinate(e.src) + e.c


def sigma(net: MarkedNetwork, walk: Walk) -> AffineForm:
    """Affine form of a path or monocycle.

    Raises :class:`DivergentMonocycleError` when the cycle of a monocycle
    has weight exactly 1.
    """
    walk_nodes(net, walk)
    if isinstance(walk, Path):
        if not walk.edges:
            return AffineForm.const(net.marking(walk.start))
        end = net.edges[walk.edges[-1]].dst
        form = AffineForm.const(net.marking(end))
        for i in reversed(walk.edges):
            form = prepend_edge(net, i, form)
        return form

    weight = Fraction(1)
    for i in walk.cycle_edges:
        weight *= net.edges[i].alpha
    if weight == 1:
        raise DivergentMonocycleError(f"cycle {list(walk.cycle_edges)} has weight 1")
    one_period = AffineForm()
    for i in reversed(walk.cycle_edges):
        one_period = prepend_edge(net, i, one_period)
    form = one_period / (1 - weight)
    for i in reversed(walk.path_edges):
        form = prepend_edge(net, i, form)
    return form


def require_invertible(net: MarkedNetwork) -> None:
    """Raise :class:`PreconditionError` unless all sinks are marked and the
    network is acyclic or gainy."""
    sinks = [v for v in net.unmarked if not net.out_edges(v)]
    if sinks:
        raise PreconditionError(f"unmarked sinks: {', '.join(sinks)}")
    cls = classify_network(net)
    if not cls.invertible:
        raise PreconditionError(f"network is {cls.kind.value}; need acyclic or gainy")


def enumerate_mw(
    net: MarkedNetwork, v: str, *, check: bool = True, cap: int = DEFAULT_WALK_CAP
) -> list[Walk]:
    """All paths and monocycles starting at the unmarked node ``v``.

    Depth-first by edge id: a path is emitted as soon as a marked node is
    reached, a monocycle as soon as an edge returns to a node already on the
    current path. ``check=False`` skips the gainy/sink preconditions (the
    enumeration itself is well defined on any network).
    """
    if check:
        require_invertible(net)
    if net.is_marked(v):
        raise MarkedNetworkError(f"{v!r} is marked")
    if v not in net.unmarked:
        raise MarkedNetworkError(f"unknown node {v!r}")

    result: list[Walk] = []
    on_path: dict[str, int] = {}
    edges: list[int] = []

    def dfs(u):
        on_path[u] = len(edges)
        for e in net.out_edges(u):
            if len(result) >= cap:
                raise MarkedNetworkError(f"more than {cap} walks from {v!r}")
            w = e.dst
            if net.is_marked(w):
                result.append(Path(v, tuple(edges) + (e.id,)))
            elif w in on_path:
                s = on_path[w]
                result.append(Monocycle(v, tuple(edges[:s]), tuple(edges[s:]) + (e.id,)))
            else:
                edges.append(e.id)
                dfs(w)
                edges.pop()
        del on_path[u]

    dfs(v)
    return result


def _argmax_edge(net: MarkedNetwork, x: Mapping[str, object], node: str):
    best = None
    best_val = None
    for e in net.out_edges(node):
        val = e.alpha * net.value(x, e.dst) + e.c
        if best is None or val > best_val:
            best, best_val = e, val
    return best, best_val


def certificate_walk(net: MarkedNetwork, x: Mapping[str, object], v: str, *, check: bool = True) -> Walk:
    """Walk from ``v`` whose form, evaluated at the transfer-map image of
    ``x``, returns exactly ``x_v``.

    Greedily follows an edge attaining the maximum of ``alpha*x_w + c``
    (smallest id on ties) until a marked node or a repeated node is hit.
    """
    if check:
        require_invertible(net)
    on_path: dict[str, int] = {}
    edges: list[int] = []
    u = v
    while True:
        on_path[u] = len(edges)
        e, _ = _argmax_edge(net, x, u)
        if e is None:
            raise PreconditionError(f"unmarked sink {u!r}")
        if net.is_marked(e.dst):
            return Path(v, tuple(edges) + (e.id,))
        if e.dst in on_path:
            s = on_path[e.dst]
            return Monocycle(v, tuple(edges[:s]), tuple(edges[s:]) + (e.id,))
        edges.append(e.id)
        u = e.dst


def unrolled_edges(walk: Walk, length: int) -> list[int]:
    """First ``length`` edges of the (possibly infinite) walk."""
    if isinstance(walk, Path):
        return list(walk.edges[:length])
    out = list(walk.path_edges[:length])
    k = 0
    while len(out) < length:
        out.append(walk.cycle_edges[k % len(walk.cycle_edges)])
        k += 1
    return out


def partial_sigma_series(net: MarkedNetwork, walk: Walk, terms: int, x: Mapping[str, object]):
    """Sum of the first ``terms`` summands of the defining series of a
    monocycle's form, evaluated at ``x``.

    Arithmetic follows the coordinates: exact for rationals, floating point
    when ``x`` holds floats.
    """
    if not isinstance(walk, Monocycle):
        raise TypeError("partial sums are defined for monocycles")
    if terms < 0:
        raise ValueError("terms must be non-negative")
    walk_nodes(net, walk)
    total = 0
    prefix = Fraction(1)
    for i in unrolled_edges(walk, terms):
        e = net.edges[i]
        total = total + prefix * (x[e.src] + e.c)
        prefix *= e.alpha
    return total


@functools.lru_cache(maxsize=256)
def inverse_forms(net: MarkedNetwork) -> dict[str, tuple[tuple[Walk, AffineForm], ...]]:
    """``{v: ((walk, form), ...)}`` over all paths and monocycles from each
    unmarked ``v``. Cached per network; the cached value must not be mutated.
    """
    require_invertible(net)
    return {v: tuple((w, sigma(net, w)) for w in enumerate_mw(net, v, check=False)) for v in net.unmarked}
