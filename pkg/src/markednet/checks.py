"""Sampled invariant suite for a single network (backs ``markednet check``)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DivergentMonocycleError
from .network import MarkedNetwork, validate
from .polyhedra import (
    LatticeBox,
    antiblocking_upper_bounds,
    chain_hrep,
    check_downclosed,
    check_lattice_closure,
    ord_hrep,
    sample_point,
)
from .rational import fmt
from .rng import substream
from .transfer import linearity_matrix, phi, psi
from .walks import certificate_walk, enumerate_mw, inverse_forms, sigma

__all__ = ["CheckResult", "CheckReport", "run_checks", "default_box"]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "ok": self.ok, **self.detail}


@dataclass
class CheckReport:
    preconditions_ok: bool
    validation: dict
    results: list[CheckResult]

    @property
    def ok(self) -> bool:
        return self.preconditions_ok and all(r.ok for r in self.results)

    def to_json(self):
        return {
            "ok": self.ok,
            "preconditions_ok": self.preconditions_ok,
            "validation": self.validation,
            "checks": [r.to_json() for r in self.results],
        }


def _pt(x):
    return {k: fmt(v) for k, v in x.items()}


def default_box(net: MarkedNetwork) -> LatticeBox:
    """Cube ``[-B, B]`` with ``B`` a little above every marking and offset."""
    scale = [abs(lam) for _, lam in net.marked] + [abs(e.c) for e in net.edges] + [Fraction(1)]
    bound = 2 * math.ceil(max(scale)) + 1
    return LatticeBox.cube(net.unmarked, -bound, bound)


def _sample_points(net, box, samples, seed):
    points = [{v: Fraction(0) for v in net.unmarked}]
    for i in range(samples):
        stream = substream(seed, i)
        if i % 2:
            points.append(sample_point(box, stream))
        else:
            points.append(
                {d: Fraction(stream.randint(lo, hi)) for d, lo, hi in zip(box.dims, box.lower, box.upper)}
            )
    return points


def _formal_inverse(net, y):
    """The max-of-forms formula applied without the gainy hypothesis."""
    out = {}
    for v in net.unmarked:
        out[v] = max(sigma(net, w)(y) for w in enumerate_mw(net, v, check=False))
    return out


def run_checks(net: MarkedNetwork, samples: int = 100, seed: int = 0, box: LatticeBox | None = None) -> CheckReport:
    """Round trip, inverse bound, membership equivalence, certificate walks,
    meet/join closure of Ord, down-closure of Chain and determinant
    consistency, each on sampled points.

    On a network outside the invertible class only the checks that make
    sense there run, and the round trip is replaced by a search for a
    non-injectivity witness of the transfer map.
    """
    report = validate(net)
    invertible = report.all_sinks_marked and report.cycle_class.invertible
    results: list[CheckResult] = []
    box = box or default_box(net)
    points = _sample_points(net, box, samples, seed)
    ordp = ord_hrep(net)

    if not report.all_sinks_marked:
        return CheckReport(False, report.to_json(), results)

    if invertible:
        bad = []
        for x in points:
            y = phi(net, x)
            if psi(net, y) != x:
                bad.append({"x": _pt(x), "kind": "psi(phi(x)) != x"})
            if phi(net, psi(net, x)) != x:
                bad.append({"y": _pt(x), "kind": "phi(psi(y)) != y"})
        results.append(CheckResult("round_trip", not bad, {"tested": len(points), "counterexamples": bad[:10]}))

        forms = inverse_forms(net)
        bad = []
        for x in points:
            y = phi(net, x)
            for v in net.unmarked:
                if any(form(y) > x[v] for _, form in forms[v]):
                    bad.append({"x": _pt(x), "node": v})
        results.append(CheckResult("psi_bound", not bad, {"tested": len(points), "counterexamples": bad[:10]}))

        bad = []
        for x in points:
            y = phi(net, x)
            for v in net.unmarked:
                w = certificate_walk(net, x, v, check=False)
                if sigma(net, w)(y) != x[v]:
                    bad.append({"x": _pt(x), "node": v, "walk": w.to_json()})
        results.append(CheckResult("certificate_walks", not bad, {"tested": len(points), "counterexamples": bad[:10]}))

        chainp = chain_hrep(net)
        bad = []
        inside = 0
        for x in points:
            a = ordp.contains(x)
            inside += a
            if a != chainp.contains(phi(net, x)):
                bad.append({"x": _pt(x), "in_ord": a})
        results.append(
            CheckResult(
                "membership_equivalence",
                not bad,
                {"tested": len(points), "inside": inside, "counterexamples": bad[:10]},
            )
        )

        try:
            bounds = antiblocking_upper_bounds(chainp)
            top = max(1, math.ceil(max(bounds.values(), default=1)))
        except ValueError:
            top = box.upper[0] if box.upper else 1
        down = check_downclosed(chainp, samples, seed, LatticeBox.cube(net.unmarked, 0, top))
        results.append(CheckResult("chain_down_closed", down.ok, down.to_json()))
    else:
        try:
            witness = None
            mismatches = 0
            for x in points:
                y = phi(net, x)
                x2 = _formal_inverse(net, y)
                if x2 != x:
                    mismatches += 1
                    if witness is None and phi(net, x2) == y:
                        witness = {"x": _pt(x), "x_other": _pt(x2), "phi": _pt(y)}
            detail = {"tested": len(points), "mismatches": mismatches}
            if witness:
                detail["non_injectivity_witness"] = witness
            results.append(CheckResult("round_trip", mismatches == 0, detail))
        except DivergentMonocycleError as exc:
            results.append(CheckResult("round_trip", False, {"error": str(exc)}))

    closure = check_lattice_closure(ordp, samples, seed, box)
    results.append(CheckResult("ord_lattice_closed", closure.ok, closure.to_json()))

    bad = []
    for x in points:
        try:
            linearity_matrix(net, x)
        except AssertionError as exc:
            bad.append({"x": _pt(x), "error": str(exc)})
    results.append(CheckResult("determinant_consistency", not bad, {"tested": len(points), "counterexamples": bad[:10]}))

    return CheckReport(invertible, report.to_json(), results)
