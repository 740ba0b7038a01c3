"""Marked networks: data model, text format, validation, cycles and duality.

A marked network is a loop-free directed multigraph whose nodes split into
unmarked nodes (the coordinates) and marked nodes carrying fixed rational
values. Every edge ``v -> w`` carries a positive weight ``alpha`` and an
offset ``c``; it stands for the inequality ``alpha * x_w + c <= x_v``.
"""

from __future__ import annotations

import enum
import functools
import itertools
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    CycleCapExceeded,
    InvalidNetworkError,
    NetworkParseError,
)
from .rational import RATIONAL_PATTERN, fmt, parse_rational, to_fraction

__all__ = [
    "Edge",
    "MarkedNetwork",
    "Cycle",
    "CycleKind",
    "CycleClass",
    "ValidationReport",
    "parse_network",
    "dump_network",
    "validate",
    "elementary_cycles",
    "classify_network",
    "opposite",
    "DEFAULT_CYCLE_CAP",
]

DEFAULT_CYCLE_CAP = 10**6

_IDENT_RE = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Edge:
    id: int
    src: str
    dst: str
    alpha: Fraction = Fraction(1)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_fraction(self.alpha))
        object.__setattr__(self, "c", to_fraction(self.c))


@dataclass(frozen=True)
class MarkedNetwork:
    """Immutable marked network.

    ``unmarked`` fixes the coordinate order used by every point, matrix and
    H-representation. ``marked`` is an ordered tuple of ``(name, value)``
    pairs. Edge ids must equal their position in ``edges``.

    Use :meth:`build` for a friendlier constructor.
    """

    unmarked: tuple[str, ...]
    marked: tuple[tuple[str, Fraction], ...]
    edges: tuple[Edge, ...]

    _lam: dict = field(init=False, repr=False, compare=False, hash=False)
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _out: dict = field(init=False, repr=False, compare=False, hash=False)
    _in: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        unmarked = tuple(self.unmarked)
        marked = tuple((name, to_fraction(val)) for name, val in self.marked)
        edges = tuple(self.edges)
        object.__setattr__(self, "unmarked", unmarked)
        object.__setattr__(self, "marked", marked)
        object.__setattr__(self, "edges", edges)

        names = list(unmarked) + [name for name, _ in marked]
        seen = set()
        for name in names:
            if not isinstance(name, str) or not _IDENT_RE.match(name):
                raise InvalidNetworkError(f"invalid node name {name!r}")
            if name in seen:
                raise InvalidNetworkError(f"duplicate node {name!r}")
            seen.add(name)

        out = {name: [] for name in names}
        inc = {name: [] for name in names}
        for pos, e in enumerate(edges):
            if e.id != pos:
                raise InvalidNetworkError(f"edge ids must be dense: expected {pos}, got {e.id}")
            for end in (e.src, e.dst):
                if end not in seen:
                    raise InvalidNetworkError(f"edge {e.id}: unknown endpoint {end!r}")
            if e.src == e.dst:
                raise InvalidNetworkError(f"edge {e.id}: loop at {e.src!r}")
            if e.alpha <= 0:
                raise InvalidNetworkError(f"edge {e.id}: alpha must be positive, got {fmt(e.alpha)}")
            out[e.src].append(e)
            inc[e.dst].append(e)

        object.__setattr__(self, "_lam", dict(marked))
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(names)})
        object.__setattr__(self, "_out", {k: tuple(v) for k, v in out.items()})
        object.__setattr__(self, "_in", {k: tuple(v) for k, v in inc.items()})

    @classmethod
    def build(cls, unmarked: Iterable[str], marked: Mapping[str, object], edges: Iterable) -> "MarkedNetwork":
        """Build from plain data.

        ``edges`` items are ``(src, dst)``, ``(src, dst, alpha)`` or
        ``(src, dst, alpha, c)``; ids follow iteration order.
        """
        built = []
        for i, spec in enumerate(edges):
            src, dst, *weights = spec
            built.append(Edge(i, src, dst, *weights))
        return cls(tuple(unmarked), tuple(marked.items()), tuple(built))

    @property
    def markings(self) -> Mapping[str, Fraction]:
        return dict(self._lam)

    @property
    def nodes(self) -> tuple[str, ...]:
        """All nodes: unmarked first, then marked, in declaration order."""
        return tuple(self._index)

    def is_marked(self, node: str) -> bool:
        return node in self._lam

    def marking(self, node: str) -> Fraction:
        return self._lam[node]

    def node_index(self, node: str) -> int:
        return self._index[node]

    def out_edges(self, node: str) -> tuple[Edge, ...]:
        return self._out[node]

    def in_edges(self, node: str) -> tuple[Edge, ...]:
        return self._in[node]

    def edge(self, edge_id: int) -> Edge:
        return self.edges[edge_id]

    def value(self, x: Mapping[str, object], node: str):
        """Coordinate ``x_node``, with marked nodes fixed to their marking."""
        if node in self._lam:
            return self._lam[node]
        return x[node]


# --------------------------------------------------------------------------
# text format

_NODE_RE = re.compile(r"^node\s+(\S+)$")
_MARKED_RE = re.compile(rf"^marked\s+(\S+)\s*=\s*({RATIONAL_PATTERN})$")
_EDGE_RE = re.compile(
    rf"^edge\s+(\S+)\s*->\s*(\S+?)"
    rf"(?:\s+alpha\s*=\s*({RATIONAL_PATTERN}))?"
    rf"(?:\s+c\s*=\s*({RATIONAL_PATTERN}))?$"
)


def parse_network(text: str) -> MarkedNetwork:
    """Parse the line-oriented network format.

    ::

        node v
        marked a = 2
        edge a -> v
        edge v -> w alpha = 1/2 c = -1

    ``#`` starts a comment. Omitted ``alpha`` is 1 and omitted ``c`` is 0.
    Nodes may be referenced by edges before they are declared.
    """
    unmarked: list[str] = []
    marked: dict[str, Fraction] = {}
    declared: dict[str, int] = {}
    edges: list[tuple[int, str, str, Fraction, Fraction]] = []

    def declare(name, lineno):
        if not _IDENT_RE.match(name):
            raise NetworkParseError(f"invalid identifier {name!r}", lineno)
        if name in declared:
            raise NetworkParseError(
                f"duplicate node {name!r} (first declared on line {declared[name]})", lineno
            )
        declared[name] = lineno

    def rational(token, lineno):
        try:
            return parse_rational(token)
        except ValueError as exc:
            raise NetworkParseError(str(exc), lineno) from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _NODE_RE.match(line):
            declare(m[1], lineno)
            unmarked.append(m[1])
        elif m := _MARKED_RE.match(line):
            declare(m[1], lineno)
            marked[m[1]] = rational(m[2], lineno)
        elif m := _EDGE_RE.match(line):
            src, dst = m[1], m[2]
            for name in (src, dst):
                if not _IDENT_RE.match(name):
                    raise NetworkParseError(f"invalid identifier {name!r}", lineno)
            if src == dst:
                raise NetworkParseError(f"loop edge at {src!r}", lineno)
            alpha = rational(m[3], lineno) if m[3] is not None else Fraction(1)
            c = rational(m[4], lineno) if m[4] is not None else Fraction(0)
            if alpha <= 0:
                raise NetworkParseError(f"alpha must be positive, got {fmt(alpha)}", lineno)
            edges.append((lineno, src, dst, alpha, c))
        else:
            raise NetworkParseError(f"syntax error: {line!r}", lineno)

    for lineno, src, dst, _, _ in edges:
        for name in (src, dst):
            if name not in declared:
                raise NetworkParseError(f"unknown endpoint {name!r}", lineno)

    return MarkedNetwork(
        tuple(unmarked),
        tuple(marked.items()),
        tuple(Edge(i, src, dst, alpha, c) for i, (_, src, dst, alpha, c) in enumerate(edges)),
    )


def dump_network(net: MarkedNetwork) -> str:
    """Serialize ``net`` so that ``parse_network`` reproduces it exactly."""
    lines = [f"node {v}" for v in net.unmarked]
    lines += [f"marked {a} = {fmt(lam)}" for a, lam in net.marked]
    for e in net.edges:
        line = f"edge {e.src} -> {e.dst}"
        if e.alpha != 1:
            line += f" alpha = {fmt(e.alpha)}"
        if e.c != 0:
            line += f" c = {fmt(e.c)}"
        lines.append(line)
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# cycles


class CycleKind(str, enum.Enum):
    ACYCLIC = "acyclic"
    GAINY = "gainy"
    LOSSY = "lossy"
    BREAKEVEN = "breakeven"
    MIXED = "mixed"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Cycle:
    """Elementary directed cycle, rotated to start at its smallest node."""

    edges: tuple[int, ...]
    nodes: tuple[str, ...]
    weight: Fraction

    @property
    def kind(self) -> CycleKind:
        if self.weight < 1:
            return CycleKind.GAINY
        if self.weight > 1:
            return CycleKind.LOSSY
        return CycleKind.BREAKEVEN

    def to_json(self):
        return {"edges": list(self.edges), "nodes": list(self.nodes), "weight": fmt(self.weight)}


@dataclass(frozen=True)
class CycleClass:
    kind: CycleKind
    cycles: tuple[Cycle, ...]

    @property
    def invertible(self) -> bool:
        """True for the classes on which the inverse transfer map exists."""
        return self.kind in (CycleKind.ACYCLIC, CycleKind.GAINY)

    def to_json(self):
        return {"class": self.kind.value, "cycles": [c.to_json() for c in self.cycles]}


def make_cycle(net: MarkedNetwork, edge_ids: Iterable[int]) -> Cycle:
    """Canonical :class:`Cycle` from a closed edge sequence in any rotation."""
    ids = list(edge_ids)
    if not ids:
        raise ValueError("empty cycle")
    for a, b in zip(ids, ids[1:] + ids[:1]):
        if net.edges[a].dst != net.edges[b].src:
            raise ValueError(f"edges {a} and {b} are not consecutive")
    nodes = [net.edges[i].src for i in ids]
    if len(set(nodes)) != len(nodes):
        raise ValueError("cycle is not elementary")
    start = min(range(len(ids)), key=lambda k: net.node_index(nodes[k]))
    ids = ids[start:] + ids[:start]
    nodes = nodes[start:] + nodes[:start]
    weight = Fraction(1)
    for i in ids:
        weight *= net.edges[i].alpha
    return Cycle(tuple(ids), tuple(nodes), weight)


def _node_cycles(n, succ, pred, emit):
    """Johnson's circuit enumeration on a simple digraph with nodes 0..n-1.

    Calls ``emit(node_list)`` once per elementary circuit, rotated to start
    at its smallest node.
    """

    def reach(start, adj, lo):
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w >= lo and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    for s in range(n):
        comp = reach(s, succ, s) & reach(s, pred, s)
        if len(comp) < 2:
            continue
        blocked: set[int] = set()
        block_map: dict[int, set[int]] = defaultdict(set)
        stack: list[int] = []

        def unblock(u):
            todo = [u]
            while todo:
                u = todo.pop()
                if u in blocked:
                    blocked.discard(u)
                    todo.extend(block_map.pop(u, ()))

        def circuit(v):
            found = False
            stack.append(v)
            blocked.add(v)
            for w in succ[v]:
                if w not in comp:
                    continue
                if w == s:
                    emit(list(stack))
                    found = True
                elif w not in blocked and circuit(w):
                    found = True
            if found:
                unblock(v)
            else:
                for w in succ[v]:
                    if w in comp:
                        block_map[w].add(v)
            stack.pop()
            return found

        circuit(s)


def elementary_cycles(net: MarkedNetwork, cap: int = DEFAULT_CYCLE_CAP) -> list[Cycle]:
    """All elementary directed cycles of ``net``, marked nodes included.

    Parallel edges yield distinct cycles. Each cycle is reported once,
    starting at its smallest node (declaration order, unmarked before
    marked); the list is sorted by start node, then by edge-id sequence.

    Raises :class:`CycleCapExceeded` when more than ``cap`` cycles exist.
    """
    names = net.nodes
    n = len(names)
    parallel: dict[tuple[int, int], list[int]] = defaultdict(list)
    for e in net.edges:
        parallel[net.node_index(e.src), net.node_index(e.dst)].append(e.id)
    succ = [sorted({j for (i, j) in parallel if i == u}) for u in range(n)]
    pred = [sorted({i for (i, j) in parallel if j == u}) for u in range(n)]

    found: list[Cycle] = []

    def emit(node_cycle):
        hops = [parallel[a, b] for a, b in zip(node_cycle, node_cycle[1:] + node_cycle[:1])]
        for ids in itertools.product(*hops):
            if len(found) >= cap:
                raise CycleCapExceeded(f"more than {cap} elementary cycles")
            found.append(make_cycle(net, ids))

    _node_cycles(n, succ, pred, emit)
    found.sort(key=lambda cyc: (net.node_index(cyc.nodes[0]), cyc.edges))
    return found


@functools.lru_cache(maxsize=512)
def classify_network(net: MarkedNetwork) -> CycleClass:
    """Classify ``net`` by the weights of all its elementary cycles."""
    cycles = tuple(elementary_cycles(net))
    if not cycles:
        return CycleClass(CycleKind.ACYCLIC, cycles)
    kinds = {cyc.kind for cyc in cycles}
    kind = kinds.pop() if len(kinds) == 1 else CycleKind.MIXED
    return CycleClass(kind, cycles)


# --------------------------------------------------------------------------
# validation and duality


@dataclass(frozen=True)
class ValidationReport:
    all_sinks_marked: bool
    all_sources_marked: bool
    unmarked_sinks: tuple[str, ...]
    unmarked_sources: tuple[str, ...]
    cycle_class: CycleClass

    def to_json(self):
        return {
            "all_sinks_marked": self.all_sinks_marked,
            "all_sources_marked": self.all_sources_marked,
            "unmarked_sinks": list(self.unmarked_sinks),
            "unmarked_sources": list(self.unmarked_sources),
            **self.cycle_class.to_json(),
        }


def validate(net: MarkedNetwork) -> ValidationReport:
    sinks = tuple(v for v in net.unmarked if not net.out_edges(v))
    sources = tuple(v for v in net.unmarked if not net.in_edges(v))
    return ValidationReport(
        all_sinks_marked=not sinks,
        all_sources_marked=not sources,
        unmarked_sinks=sinks,
        unmarked_sources=sources,
        cycle_class=classify_network(net),
    )


def opposite(net: MarkedNetwork) -> MarkedNetwork:
    """Reverse every edge: ``v -> w`` with ``(alpha, c)`` becomes
    ``w -> v`` with ``(1/alpha, c/alpha)``; markings are negated.

    ``Ord(opposite(net)) == -Ord(net)``.
    """
    edges = tuple(Edge(e.id, e.dst, e.src, 1 / e.alpha, e.c / e.alpha) for e in net.edges)
    return MarkedNetwork(net.unmarked, tuple((a, -lam) for a, lam in net.marked), edges)
