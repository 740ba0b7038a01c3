from __future__ import annotations

import functools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from markednet import MarkedNetwork, classify_network, paper_example
from markednet.generators import random_acyclic_network, random_gainy_network
from markednet.network import Edge
from markednet.rng import SplitMix64

F = Fraction


@pytest.fixture
def quad():
    return paper_example("quad")


@pytest.fixture
def kite():
    return paper_example("kite")


@pytest.fixture
def notab():
    return paper_example("notab")


@functools.lru_cache(maxsize=None)
def gainy_networks(count=50):
    """The first ``count`` generator seeds whose network has at least one
    cycle, as ``(seed, net, anchor)``."""
    found = []
    seed = 0
    while len(found) < count:
        net, anchor = random_gainy_network(seed)
        if classify_network(net).kind.value == "gainy":
            found.append((seed, net, anchor))
        seed += 1
    return tuple(found)


@functools.lru_cache(maxsize=None)
def acyclic_networks(count=20):
    return tuple((seed, *random_acyclic_network(seed)) for seed in range(count))


def random_point(dims, rng, lo=-4, hi=4, denominators=(1, 2, 3, 5, 7)):
    return {d: rng.rational(lo, hi, denominators) for d in dims}


def random_points(dims, seed, count, **kw):
    rng = SplitMix64(seed)
    return [random_point(dims, rng, **kw) for _ in range(count)]


rationals = st.builds(
    lambda p, q: F(p, q), st.integers(-12, 12), st.sampled_from([1, 2, 3, 4, 5])
)
alphas = st.sampled_from([F(1, 3), F(1, 2), F(1), F(3, 2), F(2), F(3)])


@st.composite
def networks(draw, max_unmarked=5, max_marked=2, max_edges=10):
    """Arbitrary loop-free multigraph networks (any cycle class)."""
    n = draw(st.integers(1, max_unmarked))
    m = draw(st.integers(1, max_marked))
    unmarked = tuple(f"v{i}" for i in range(n))
    marked = tuple((f"a{i}", draw(rationals)) for i in range(m))
    names = unmarked + tuple(a for a, _ in marked)
    pairs = draw(
        st.lists(
            st.tuples(st.sampled_from(names), st.sampled_from(names)).filter(lambda p: p[0] != p[1]),
            max_size=max_edges,
        )
    )
    edges = tuple(Edge(i, u, w, draw(alphas), draw(rationals)) for i, (u, w) in enumerate(pairs))
    return MarkedNetwork(unmarked, marked, edges)


@st.composite
def sinkless_networks(draw, **kw):
    """Networks in which every unmarked node has an out-edge."""
    net = draw(networks(**kw))
    extra = []
    k = len(net.edges)
    for v in net.unmarked:
        if not net.out_edges(v):
            target = draw(st.sampled_from([a for a, _ in net.marked]))
            extra.append(Edge(k, v, target, draw(alphas), draw(rationals)))
            k += 1
    return MarkedNetwork(net.unmarked, net.marked, net.edges + tuple(extra))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            for key, value in getattr(report, "user_properties", []):
                if key == "acceptance" and report.when == "call":
                    number, title, detail = value["number"], value["title"], value["detail"]
                    verdict = "PASS" if report.passed else "FAIL"
                    lines.append((number, f"criterion {number}: {verdict}  {title}" + (f"  [{detail}]" if detail else "")))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
