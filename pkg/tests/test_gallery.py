from fractions import Fraction as F

import pytest

from conftest import random_points
from markednet import (
    CycleKind,
    DimensionMismatch,
    InvalidNetworkError,
    LatticeBox,
    Poset,
    antichain_poset,
    cayley_network,
    chain_poset,
    classify_network,
    dump_network,
    is_antiblocking_hrep,
    lattice_points,
    lecture_hall_network,
    meet,
    ord_hrep,
    paper_example,
    parse_network,
    phi,
    phi_op,
    poset_to_network,
    scale_point,
    yn_hrep,
)
from markednet.errors import MarkedNetworkError
from markednet.generators import posets_up_to_isomorphism, random_poset
from oracles import cayley_count


def rowset(poly):
    return {(r.coeffs, r.rhs) for r in poly.rows}


# --------------------------------------------------------------------------
# posets


def test_poset_validation():
    with pytest.raises(InvalidNetworkError):
        Poset(("a", "b"), (("a", "b"), ("b", "a")))
    with pytest.raises(InvalidNetworkError):
        Poset(("a", "b", "c"), (("a", "b"), ("b", "c"), ("a", "c")))
    with pytest.raises(InvalidNetworkError):
        Poset(("a",), (("a", "z"),))


def test_from_relations_reduces_to_covers():
    p = Poset.from_relations("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert set(p.covers) == {("a", "b"), ("b", "c")}
    assert p.less_than("a", "c") and not p.less_than("c", "a")
    assert p.minimal() == ("a",) and p.maximal() == ("c",)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 5), (4, 16)])
def test_poset_classes_counted(n, count):
    assert len(posets_up_to_isomorphism(n)) == count


def test_two_chain_network():
    net = poset_to_network(chain_poset(2))
    assert dict(net.marked) == {"zerohat": 0, "onehat": 1}
    assert {(e.src, e.dst) for e in net.edges} == {("onehat", "p2"), ("p2", "p1"), ("p1", "zerohat")}
    assert all(e.alpha == 1 and e.c == 0 for e in net.edges)


def test_antichain_ord_is_square():
    net = poset_to_network(antichain_poset(2))
    assert len(lattice_points(ord_hrep(net), LatticeBox.cube(net.unmarked, -2, 3))) == 4


def test_marked_poset_network():
    p = Poset.from_relations(["lo", "x", "y", "hi"], [("lo", "x"), ("x", "hi"), ("lo", "y"), ("y", "hi")],
                             {"lo": 0, "hi": 3})
    net = poset_to_network(p)
    assert net.unmarked == ("x", "y") and dict(net.marked) == {"lo": 0, "hi": 3}
    assert len(lattice_points(ord_hrep(net), LatticeBox.cube(net.unmarked, -1, 4))) == 16


def test_reserved_names():
    with pytest.raises(InvalidNetworkError):
        poset_to_network(Poset(("zerohat",), ()))


# --------------------------------------------------------------------------
# Cayley and Y_n


def test_cayley_one_is_interval():
    # x_1 <= 2 and 1 <= x_1
    assert rowset(ord_hrep(cayley_network(1))) == {((F(1),), F(2)), ((F(-1),), F(-1))}
    pts = lattice_points(ord_hrep(cayley_network(1)), LatticeBox.cube(("v1",), -3, 5))
    assert pts == [{"v1": 1}, {"v1": 2}]


def test_cayley_two_inequalities():
    poly = ord_hrep(cayley_network(2))
    for x in random_points(("v1", "v2"), 3, 200, lo=0, hi=5):
        expected = 1 <= x["v1"] <= 2 and 1 <= x["v2"] <= 2 * x["v1"]
        assert poly.contains(x) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cayley_counts(n):
    pts = lattice_points(ord_hrep(cayley_network(n)), LatticeBox.cube(cayley_network(n).unmarked, 1, 2**n))
    assert len(pts) == cayley_count(n)
    assert classify_network(cayley_network(n)).kind is CycleKind.ACYCLIC


def test_cayley_rejects_zero():
    with pytest.raises(MarkedNetworkError):
        cayley_network(0)
    with pytest.raises(MarkedNetworkError):
        yn_hrep(0)


def test_yn_rows():
    assert rowset(yn_hrep(1)) == {((F(-1),), F(0)), ((F(1),), F(1))}
    assert ((F(2), F(1)), F(3)) in rowset(yn_hrep(2))
    assert all(is_antiblocking_hrep(yn_hrep(n)) for n in range(1, 9))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cayley_maps_onto_yn(n):
    net = cayley_network(n)
    pts = lattice_points(ord_hrep(net), LatticeBox.cube(net.unmarked, 1, 2**n))
    images = [phi_op(net, x) for x in pts]
    assert all(t.denominator == 1 for y in images for t in y.values())
    target = lattice_points(yn_hrep(n), LatticeBox.cube(net.unmarked, 0, 2**n))
    as_tuples = sorted(tuple(y[v] for v in net.unmarked) for y in images)
    assert as_tuples == sorted(tuple(y[v] for v in net.unmarked) for y in target)
    assert len(set(as_tuples)) == len(as_tuples)


# --------------------------------------------------------------------------
# lecture hall


def test_lecture_hall_unit_scale_is_poset_network():
    p = random_poset(5, 4)
    assert lecture_hall_network(p, {a: 1 for a in p.elements}) == poset_to_network(p)


def test_lecture_hall_chain_example():
    p = Poset(("zerohat", "p1", "p2", "onehat"), (("zerohat", "p1"), ("p1", "p2"), ("p2", "onehat")),
              {"zerohat": 0, "onehat": 1})
    net = lecture_hall_network(p, {"zerohat": 1, "p1": 1, "p2": 2, "onehat": 2})
    assert net.marking("onehat") == 2
    assert len(lattice_points(ord_hrep(net), LatticeBox.cube(("p1", "p2"), 0, 2))) == 4


def test_lecture_hall_rejects_bad_scales():
    p = chain_poset(2)
    with pytest.raises(MarkedNetworkError):
        lecture_hall_network(p, {"p1": 1, "p2": 0})
    with pytest.raises(MarkedNetworkError):
        lecture_hall_network(p, {"p1": 1})


@pytest.mark.parametrize("seed", range(10))
def test_lecture_hall_commutes(seed):
    p = random_poset(seed, 4)
    s = {a: F(1 + (seed + i) % 3, 1 + i % 2) for i, a in enumerate(p.elements)}
    base, hall = poset_to_network(p), lecture_hall_network(p, s)
    for x in random_points(p.elements, seed, 30, lo=0, hi=1):
        assert scale_point(s, phi(base, x)) == phi(hall, scale_point(s, x))


def test_scale_point():
    assert scale_point({"a": 2, "b": 3}, {"a": F(1, 2), "b": F(1, 3)}) == {"a": 1, "b": 1}
    x = {"a": F(3, 4), "b": F(-1)}
    assert scale_point({"a": 1, "b": 1}, x) == x
    with pytest.raises(DimensionMismatch):
        scale_point({"a": 1}, x)
    s = {"a": F(5, 2), "b": F(1, 7)}
    y = {"a": F(-1), "b": F(2)}
    assert scale_point(s, meet(x, y)) == meet(scale_point(s, x), scale_point(s, y))


# --------------------------------------------------------------------------
# worked examples


def test_worked_examples():
    assert classify_network(paper_example("quad")).kind is CycleKind.GAINY
    assert classify_network(paper_example("kite")).kind is CycleKind.LOSSY
    assert classify_network(paper_example("notab")).kind is CycleKind.LOSSY
    kite = paper_example("kite")
    assert phi(kite, {"v": 0, "w": 0}) == phi(kite, {"v": 2, "w": 2})
    with pytest.raises(MarkedNetworkError):
        paper_example("nope")


@pytest.mark.parametrize("name", ["kite", "quad", "notab"])
def test_examples_round_trip_through_text(name):
    net = paper_example(name)
    assert parse_network(dump_network(net)) == net


def test_gallery_constructions_round_trip_through_text():
    for net in (cayley_network(3), poset_to_network(random_poset(2, 5))):
        assert parse_network(dump_network(net)) == net
