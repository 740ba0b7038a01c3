"""H-representations of Ord and Chain, membership, lattice operations,
sampling checks, lattice-point enumeration and Monte-Carlo volume.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import BoxTooLargeError, DimensionMismatch
from .network import MarkedNetwork
from .rational import fmt, to_fraction
from .rng import substream, uniform_array
from .walks import AffineForm, inverse_forms, walk_from_key

__all__ = [
    "Row",
    "HPolyhedron",
    "LatticeBox",
    "ord_hrep",
    "chain_hrep",
    "contains",
    "meet",
    "join",
    "is_antiblocking_hrep",
    "antiblocking_upper_bounds",
    "SamplingReport",
    "sample_point",
    "check_lattice_closure",
    "check_downclosed",
    "lattice_points",
    "VolumeEstimate",
    "mc_volume",
    "walk_of_row",
    "DEFAULT_LATTICE_CAP",
]

DEFAULT_LATTICE_CAP = 2_000_000


@dataclass(frozen=True)
class Row:
    """``coeffs . x <= rhs``; ``why`` records where the row came from:
    ``edge:<id>``, ``walk:<first edge id>:<walk key>`` or ``nonneg:<node>``.
    """

    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    why: str = ""

    def to_json(self):
        return {"coeffs": [fmt(a) for a in self.coeffs], "rhs": fmt(self.rhs), "why": self.why}


@dataclass(frozen=True)
class HPolyhedron:
    dims: tuple[str, ...]
    rows: tuple[Row, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "rows", tuple(self.rows))
        for row in self.rows:
            if len(row.coeffs) != len(self.dims):
                raise DimensionMismatch(f"row {row.why!r} has {len(row.coeffs)} coefficients for {len(self.dims)} dims")

    @classmethod
    def from_rows(cls, dims, rows) -> "HPolyhedron":
        """Build from ``(coeffs, rhs)`` or ``(coeffs, rhs, why)`` tuples."""
        built = []
        for entry in rows:
            coeffs, rhs, *why = entry
            built.append(Row(tuple(to_fraction(a) for a in coeffs), to_fraction(rhs), why[0] if why else ""))
        return cls(tuple(dims), tuple(built))

    def vector(self, x) -> tuple[Fraction, ...]:
        if isinstance(x, Mapping):
            if set(x) != set(self.dims):
                raise DimensionMismatch(f"point over {sorted(x)} but polyhedron over {list(self.dims)}")
            return tuple(to_fraction(x[d]) for d in self.dims)
        if len(x) != len(self.dims):
            raise DimensionMismatch("point has the wrong length")
        return tuple(to_fraction(t) for t in x)

    def violated(self, x) -> list[Row]:
        xs = self.vector(x)
        return [r for r in self.rows if sum(a * t for a, t in zip(r.coeffs, xs)) > r.rhs]

    def contains(self, x) -> bool:
        xs = self.vector(x)
        return all(sum(a * t for a, t in zip(r.coeffs, xs)) <= r.rhs for r in self.rows)

    def to_json(self):
        return {"dims": list(self.dims), "rows": [r.to_json() for r in self.rows]}

    @classmethod
    def from_json(cls, data) -> "HPolyhedron":
        return cls.from_rows(data["dims"], [(r["coeffs"], r["rhs"], r.get("why", "")) for r in data["rows"]])


def contains(poly: HPolyhedron, x) -> bool:
    return poly.contains(x)


def _row_from_form(dims, form: AffineForm, rhs, why) -> Row:
    """Row ``form(x) <= rhs`` with the form's constant moved right."""
    return Row(tuple(form.coefficient(d) for d in dims), rhs - form.constant, why)


def ord_hrep(net: MarkedNetwork) -> HPolyhedron:
    """One row ``alpha*x_w - x_v <= -c`` per edge ``v -> w``, with marked
    coordinates substituted.

    An edge between two marked nodes gives no row when its inequality holds
    and an all-zero row with negative right-hand side (why
    ``edge:<id>:infeasible``) when it fails.
    """
    dims = net.unmarked
    rows = []
    for e in net.edges:
        form = AffineForm.const(e.c) + (
            AffineForm.const(e.alpha * net.marking(e.dst))
            if net.is_marked(e.dst)
            else AffineForm.coordinate(e.dst) * e.alpha
        )
        if net.is_marked(e.src):
            rhs = net.marking(e.src)
        else:
            form = form - AffineForm.coordinate(e.src)
            rhs = Fraction(0)
        row = _row_from_form(dims, form, rhs, f"edge:{e.id}")
        if not any(row.coeffs):
            if row.rhs >= 0:
                continue
            row = Row(row.coeffs, row.rhs, f"edge:{e.id}:infeasible")
        rows.append(row)
    return HPolyhedron(dims, tuple(rows))


def chain_hrep(net: MarkedNetwork) -> HPolyhedron:
    """Nonnegativity rows plus, for each marked ``a``, each edge ``a -> w``
    and each path or monocycle ``W`` from ``w``, the row
    ``alpha * form(W)(y) + c <= marking(a)``.

    Requires an acyclic or gainy network with all sinks marked. Edges between
    two marked nodes are handled as in :func:`ord_hrep`.
    """
    forms = inverse_forms(net)
    dims = net.unmarked
    rows = []
    for i, v in enumerate(dims):
        rows.append(Row(tuple(Fraction(-1 if j == i else 0) for j in range(len(dims))), Fraction(0), f"nonneg:{v}"))
    for a, lam in net.marked:
        for e in net.out_edges(a):
            if net.is_marked(e.dst):
                slack = lam - e.c - e.alpha * net.marking(e.dst)
                if slack < 0:
                    rows.append(Row(tuple(Fraction(0) for _ in dims), slack, f"edge:{e.id}:infeasible"))
                continue
            for walk, form in forms[e.dst]:
                rows.append(_row_from_form(dims, form * e.alpha + e.c, lam, f"walk:{e.id}:{walk.key()}"))
    return HPolyhedron(dims, tuple(rows))


def walk_of_row(row: Row):
    """``(first edge id, walk)`` for a chain row, or ``None``."""
    if not row.why.startswith("walk:"):
        return None
    _, edge_id, key = row.why.split(":", 2)
    return int(edge_id), walk_from_key(key)


def meet(x: Mapping[str, object], y: Mapping[str, object]) -> dict:
    if set(x) != set(y):
        raise DimensionMismatch("points live on different coordinates")
    return {k: min(x[k], y[k]) for k in x}


def join(x: Mapping[str, object], y: Mapping[str, object]) -> dict:
    if set(x) != set(y):
        raise DimensionMismatch("points live on different coordinates")
    return {k: max(x[k], y[k]) for k in x}


def _is_nonneg_row(row: Row):
    nonzero = [i for i, a in enumerate(row.coeffs) if a != 0]
    return len(nonzero) == 1 and row.coeffs[nonzero[0]] < 0 and row.rhs == 0, nonzero


def is_antiblocking_hrep(poly: HPolyhedron) -> bool:
    """Syntactic anti-blocking certificate.

    True when every coordinate has a row ``-k*x_i <= 0`` (``k > 0``) and
    every other row has nonnegative coefficients and right-hand side. Such
    a representation always describes an anti-blocking polyhedron; a False
    answer only says this representation is not in that form.
    """
    covered = set()
    for row in poly.rows:
        is_nonneg, nonzero = _is_nonneg_row(row)
        if is_nonneg:
            covered.add(nonzero[0])
        elif any(a < 0 for a in row.coeffs) or row.rhs < 0:
            return False
    return covered == set(range(len(poly.dims)))


def antiblocking_upper_bounds(poly: HPolyhedron) -> dict[str, Fraction]:
    """Per-coordinate upper bounds read off an anti-blocking representation.

    Raises ``ValueError`` if the representation is not anti-blocking or some
    coordinate is unbounded.
    """
    if not is_antiblocking_hrep(poly):
        raise ValueError("representation is not in anti-blocking form")
    bounds = {}
    for i, d in enumerate(poly.dims):
        candidates = [r.rhs / r.coeffs[i] for r in poly.rows if r.coeffs[i] > 0]
        if not candidates:
            raise ValueError(f"coordinate {d!r} is unbounded")
        bounds[d] = min(candidates)
    return bounds


# --------------------------------------------------------------------------
# boxes and sampling


@dataclass(frozen=True)
class LatticeBox:
    dims: tuple[str, ...]
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "lower", tuple(int(t) for t in self.lower))
        object.__setattr__(self, "upper", tuple(int(t) for t in self.upper))
        if not len(self.dims) == len(self.lower) == len(self.upper):
            raise DimensionMismatch("box bounds do not match dims")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("box lower bound exceeds upper bound")

    @classmethod
    def cube(cls, dims, lo, hi) -> "LatticeBox":
        dims = tuple(dims)
        return cls(dims, (lo,) * len(dims), (hi,) * len(dims))

    @property
    def volume(self) -> int:
        return math.prod(hi - lo for lo, hi in zip(self.lower, self.upper))

    @property
    def size(self) -> int:
        return math.prod(hi - lo + 1 for lo, hi in zip(self.lower, self.upper))


def _check_box(poly: HPolyhedron, box: LatticeBox):
    if tuple(box.dims) != tuple(poly.dims):
        raise DimensionMismatch(f"box over {list(box.dims)} but polyhedron over {list(poly.dims)}")


def sample_point(box: LatticeBox, stream) -> dict[str, Fraction]:
    """Exact random point of ``box`` on a fine dyadic grid."""
    return {
        d: lo + (hi - lo) * stream.unit_fraction()
        for d, lo, hi in zip(box.dims, box.lower, box.upper)
    }


@dataclass
class SamplingReport:
    check: str
    requested: int
    tested: int = 0
    counterexamples: list = field(default_factory=list)
    exhausted: bool = False

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self):
        return {
            "check": self.check,
            "ok": self.ok,
            "requested": self.requested,
            "tested": self.tested,
            "exhausted": self.exhausted,
            "counterexamples": [
                {k: ({c: fmt(t) for c, t in v.items()} if isinstance(v, Mapping) else v) for k, v in ce.items()}
                for ce in self.counterexamples[:10]
            ],
        }


def _rejection(poly, box, stream, attempts):
    for _ in range(attempts):
        x = sample_point(box, stream)
        if poly.contains(x):
            return x
    return None


def check_lattice_closure(
    poly: HPolyhedron, samples: int, seed: int, box: LatticeBox, attempts: int = 200
) -> SamplingReport:
    """Draw pairs of points of ``poly`` (rejection inside ``box``) and test
    that their meet and join stay in ``poly``."""
    _check_box(poly, box)
    report = SamplingReport("lattice_closure", samples)
    for i in range(samples):
        stream = substream(seed, i)
        x = _rejection(poly, box, stream, attempts)
        y = _rejection(poly, box, stream, attempts) if x is not None else None
        if y is None:
            report.exhausted = True
            continue
        report.tested += 1
        for name, z in (("meet", meet(x, y)), ("join", join(x, y))):
            if not poly.contains(z):
                report.counterexamples.append({"x": x, "y": y, "op": name, "result": z})
    return report


def check_downclosed(
    poly: HPolyhedron, samples: int, seed: int, box: LatticeBox, attempts: int = 200
) -> SamplingReport:
    """Draw ``y`` in ``poly`` and a random ``0 <= x <= y``; test ``x`` in
    ``poly``. A sampled ``y`` outside the nonnegative orthant is itself a
    counterexample."""
    _check_box(poly, box)
    report = SamplingReport("down_closure", samples)
    for i in range(samples):
        stream = substream(seed, i)
        y = _rejection(poly, box, stream, attempts)
        if y is None:
            report.exhausted = True
            continue
        report.tested += 1
        if any(t < 0 for t in y.values()):
            report.counterexamples.append({"y": y, "reason": "outside the nonnegative orthant"})
            continue
        x = {d: t * stream.unit_fraction() for d, t in y.items()}
        if not poly.contains(x):
            report.counterexamples.append({"y": y, "x": x})
    return report


def _integer_rows(poly: HPolyhedron):
    rows = []
    for r in poly.rows:
        scale = math.lcm(*(a.denominator for a in r.coeffs), r.rhs.denominator)
        rows.append((tuple(int(a * scale) for a in r.coeffs), int(r.rhs * scale)))
    return rows


def lattice_points(poly: HPolyhedron, box: LatticeBox, cap: int = DEFAULT_LATTICE_CAP) -> list[dict[str, int]]:
    """All integer points of ``box`` inside ``poly``, in lexicographic order."""
    _check_box(poly, box)
    if box.size > cap:
        raise BoxTooLargeError(f"box has {box.size} points, cap is {cap}")
    rows = _integer_rows(poly)
    ranges = [range(lo, hi + 1) for lo, hi in zip(box.lower, box.upper)]
    found = []
    for pt in itertools.product(*ranges):
        if all(sum(a * t for a, t in zip(coeffs, pt)) <= rhs for coeffs, rhs in rows):
            found.append(dict(zip(poly.dims, pt)))
    return found


@dataclass(frozen=True)
class VolumeEstimate:
    volume: float
    stderr: float
    hits: int
    samples: int


def mc_volume(poly: HPolyhedron, box: LatticeBox, samples: int, seed: int, chunk: int = 1 << 16) -> VolumeEstimate:
    """Hit-or-miss volume estimate of ``poly`` within ``box``.

    Coordinates of sample ``i`` are outputs ``i*d .. i*d+d-1`` of the
    SplitMix64 stream for ``seed`` (see :mod:`markednet.rng`). Membership is
    evaluated in floating point. The standard error is the binomial one.
    """
    _check_box(poly, box)
    if samples < 1:
        raise ValueError("samples must be positive")
    d = len(poly.dims)
    A = np.array([[float(a) for a in r.coeffs] for r in poly.rows], dtype=float).reshape(len(poly.rows), d)
    b = np.array([float(r.rhs) for r in poly.rows], dtype=float)
    lo = np.array(box.lower, dtype=float)
    width = np.array(box.upper, dtype=float) - lo
    hits = 0
    for start in range(0, samples, chunk):
        n = min(chunk, samples - start)
        u = uniform_array(seed, start * d, n * d).reshape(n, d)
        pts = lo + u * width
        inside = np.all(pts @ A.T <= b, axis=1) if len(b) else np.ones(n, dtype=bool)
        hits += int(inside.sum())
    p = hits / samples
    vol = float(box.volume)
    return VolumeEstimate(vol * p, vol * math.sqrt(p * (1 - p) / samples), hits, samples)
