"""Named instances: poset networks, Cayley polytopes, lecture hall
polyhedra and three small worked examples."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionMismatch, InvalidNetworkError, MarkedNetworkError
from .network import Edge, MarkedNetwork
from .polyhedra import HPolyhedron
from .rational import to_fraction

__all__ = [
    "Poset",
    "poset_to_network",
    "cayley_network",
    "yn_hrep",
    "lecture_hall_network",
    "scale_point",
    "paper_example",
    "chain_poset",
    "antichain_poset",
    "EXAMPLE_NAMES",
]

BOTTOM = "zerohat"
TOP = "onehat"


@dataclass(frozen=True)
class Poset:
    """Finite poset given by its cover relations ``(lower, upper)``.

    ``markings`` optionally fixes values on a subset of the elements.
    """

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    markings: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "covers", tuple(tuple(c) for c in self.covers))
        marks = self.markings.items() if isinstance(self.markings, Mapping) else self.markings
        object.__setattr__(self, "markings", tuple((a, to_fraction(v)) for a, v in marks))
        known = set(self.elements)
        if len(known) != len(self.elements):
            raise InvalidNetworkError("duplicate poset element")
        for lo, hi in self.covers:
            if lo not in known or hi not in known:
                raise InvalidNetworkError(f"cover ({lo}, {hi}) uses an unknown element")
            if lo == hi:
                raise InvalidNetworkError(f"cover ({lo}, {hi}) is reflexive")
        for a, _ in self.markings:
            if a not in known:
                raise InvalidNetworkError(f"marking on unknown element {a!r}")
        above = self._strictly_above()
        for a in self.elements:
            if a in above[a]:
                raise InvalidNetworkError("cover relation has a cycle")
        for lo, hi in self.covers:
            if any(hi in above[mid] for mid in self.upper_covers(lo) if mid != hi):
                raise InvalidNetworkError(f"cover ({lo}, {hi}) is implied by other covers")

    @classmethod
    def from_relations(cls, elements: Iterable[str], relations: Iterable[tuple[str, str]], markings=()):
        """Poset generated by arbitrary ``(smaller, larger)`` pairs."""
        elements = tuple(elements)
        up = {a: set() for a in elements}
        for lo, hi in relations:
            up[lo].add(hi)
        # transitive closure
        closure = {}
        for a in elements:
            seen, stack = set(), list(up[a])
            while stack:
                b = stack.pop()
                if b not in seen:
                    seen.add(b)
                    stack.extend(up[b])
            closure[a] = seen
        if any(a in closure[a] for a in elements):
            raise InvalidNetworkError("relations contain a cycle")
        covers = tuple(
            (a, b)
            for a in elements
            for b in elements
            if b in closure[a] and not any(b in closure[m] for m in closure[a])
        )
        return cls(elements, covers, markings)

    def _strictly_above(self):
        above = {}
        for a in self.elements:
            seen, stack = set(), list(self.upper_covers(a))
            while stack:
                b = stack.pop()
                if b not in seen:
                    seen.add(b)
                    stack.extend(self.upper_covers(b))
            above[a] = seen
        return above

    def less_than(self, a: str, b: str) -> bool:
        return b in self._strictly_above()[a]

    def lower_covers(self, a: str) -> tuple[str, ...]:
        return tuple(lo for lo, hi in self.covers if hi == a)

    def upper_covers(self, a: str) -> tuple[str, ...]:
        return tuple(hi for lo, hi in self.covers if lo == a)

    def minimal(self) -> tuple[str, ...]:
        return tuple(a for a in self.elements if not self.lower_covers(a))

    def maximal(self) -> tuple[str, ...]:
        return tuple(a for a in self.elements if not self.upper_covers(a))


def chain_poset(n: int, prefix: str = "p") -> Poset:
    names = tuple(f"{prefix}{i}" for i in range(1, n + 1))
    return Poset(names, tuple(zip(names, names[1:])))


def antichain_poset(n: int, prefix: str = "p") -> Poset:
    return Poset(tuple(f"{prefix}{i}" for i in range(1, n + 1)), ())


def _hasse_edges(p: Poset, scale: Mapping[str, Fraction] | None):
    """Edges ``upper -> lower`` for each cover, plus the adjoined bottom and
    top when ``p`` is unmarked. ``scale`` gives the lecture hall weights."""

    def weight(upper, lower):
        return Fraction(1) if scale is None else scale[upper] / scale[lower]

    edges = []
    if p.markings:
        for q in p.elements:
            for lo in sorted(p.lower_covers(q), key=p.elements.index):
                edges.append((q, lo, weight(q, lo)))
        return edges
    for q in p.maximal():
        edges.append((TOP, q, weight(TOP, q)))
    for q in p.elements:
        lowers = sorted(p.lower_covers(q), key=p.elements.index)
        if not lowers:
            edges.append((q, BOTTOM, weight(q, BOTTOM)))
        for lo in lowers:
            edges.append((q, lo, weight(q, lo)))
    return edges


def poset_to_network(p: Poset) -> MarkedNetwork:
    """Hasse-diagram network: an edge ``q -> p`` for each cover ``p < q``
    with unit weights.

    An unmarked poset gets a bottom (marking 0) below its minima and a top
    (marking 1) above its maxima, so that Ord is the order polytope. A
    marked poset is used as given.
    """
    return _lecture_hall(p, None)


def _lecture_hall(p: Poset, s):
    if not p.markings and ({BOTTOM, TOP} & set(p.elements)):
        raise InvalidNetworkError(f"element names {BOTTOM!r}/{TOP!r} are reserved")
    if p.markings:
        marks = dict(p.markings)
        unmarked = tuple(a for a in p.elements if a not in marks)
        marked = tuple((a, marks[a] * (1 if s is None else s[a])) for a in p.elements if a in marks)
    else:
        unmarked = p.elements
        marked = (
            (BOTTOM, Fraction(0)),
            (TOP, Fraction(1) * (1 if s is None else s[TOP])),
        )
    edges = tuple(Edge(i, src, dst, alpha) for i, (src, dst, alpha) in enumerate(_hasse_edges(p, s)))
    return MarkedNetwork(unmarked, marked, edges)


def lecture_hall_network(p: Poset, s: Mapping[str, object]) -> MarkedNetwork:
    """Network whose Ord is ``{x : x_p/s_p <= x_q/s_q for p < q}`` with
    marked coordinates fixed to ``s_a * marking_a``.

    For an unmarked poset the adjoined bottom and top take ``s = 1`` unless
    ``s`` names them explicitly.
    """
    s = {k: to_fraction(v) for k, v in s.items()}
    if not p.markings:
        s.setdefault(BOTTOM, Fraction(1))
        s.setdefault(TOP, Fraction(1))
    missing = [a for a in p.elements if a not in s]
    if missing:
        raise MarkedNetworkError(f"no scale for {missing}")
    if any(v <= 0 for v in s.values()):
        raise MarkedNetworkError("scales must be positive")
    return _lecture_hall(p, s)


def scale_point(s: Mapping[str, object], x: Mapping[str, object]) -> dict[str, Fraction]:
    """``x_p -> s_p * x_p`` on the coordinates of ``x``."""
    missing = [k for k in x if k not in s]
    if missing:
        raise DimensionMismatch(f"no scale for {missing}")
    return {k: to_fraction(s[k]) * to_fraction(v) for k, v in x.items()}


def cayley_network(n: int) -> MarkedNetwork:
    """Network with ``Ord = {x : 1 <= x_i <= 2 x_{i-1}}``, ``x_0 = 1``."""
    if n < 1:
        raise MarkedNetworkError("n must be at least 1")
    nodes = tuple(f"v{i}" for i in range(1, n + 1))
    plan = [("two", "v1", 1, 0)]
    plan += [(a, b, Fraction(1, 2), 0) for a, b in zip(nodes, nodes[1:])]
    plan += [(v, "one", 1, 0) for v in nodes]
    return MarkedNetwork.build(nodes, {"two": 2, "one": 1}, plan)


def yn_hrep(n: int) -> HPolyhedron:
    """``y >= 0`` and ``sum_{j<=h} 2**(h-j) y_j <= 2**h - 1`` for each h.

    Coordinates are named ``v1..vn`` to line up with :func:`cayley_network`.
    """
    if n < 1:
        raise MarkedNetworkError("n must be at least 1")
    dims = tuple(f"v{i}" for i in range(1, n + 1))
    rows = [([-1 if j == i else 0 for j in range(n)], 0, f"nonneg:{dims[i]}") for i in range(n)]
    for h in range(1, n + 1):
        coeffs = [2 ** (h - j) if j <= h else 0 for j in range(1, n + 1)]
        rows.append((coeffs, 2**h - 1, f"prefix:{h}"))
    return HPolyhedron.from_rows(dims, rows)


_EXAMPLES = {
    # two nodes on a weight-4 cycle, both bounded below by 0: phi folds
    "kite": (
        ("v", "w"),
        {"a": 0},
        [("v", "w", 2, -2), ("w", "v", 2, -2), ("v", "a"), ("w", "a")],
    ),
    # gainy quadrilateral; edges e, f, g and the marking edge
    "quad": (
        ("v", "w"),
        {"a": 2},
        [("v", "w", Fraction(1, 2), 0), ("v", "w", 1, -1), ("w", "v", Fraction(1, 2), 0), ("a", "v")],
    ),
    # lossy network with an injective phi whose image is not anti-blocking
    "notab": (
        ("v", "w"),
        {"a": 3},
        [("a", "v"), ("a", "w"), ("v", "w", 2, -4), ("w", "v", 2, -4)],
    ),
}

EXAMPLE_NAMES = tuple(_EXAMPLES)


def paper_example(name: str) -> MarkedNetwork:
    """One of ``"kite"``, ``"quad"``, ``"notab"``."""
    try:
        unmarked, marked, edges = _EXAMPLES[name]
    except KeyError:
        raise MarkedNetworkError(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}") from None
    return MarkedNetwork.build(unmarked, marked, edges)
