from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import acyclic_networks, gainy_networks, random_points
from markednet import (
    DimensionMismatch,
    HPolyhedron,
    MarkedNetwork,
    NotInPolyhedronError,
    PreconditionError,
    UnboundedDirectionError,
    cayley_network,
    elementary_cycles,
    linearity_matrix,
    ord_hrep,
    phi,
    phi_general,
    phi_op,
    poset_to_network,
    psi,
    tight_subnetwork,
)
from markednet.generators import random_poset
from markednet.transfer import fraction_det, phi_via_opposite
from oracles import stanley_transfer


def P(v, w):
    return {"v": F(v), "w": F(w)}


# --------------------------------------------------------------------------
# phi and psi on the worked examples


def test_kite_is_two_to_one(kite):
    assert phi(kite, P(0, 0)) == P(0, 0)
    assert phi(kite, P(2, 2)) == P(0, 0)


def test_quad_vertex_images(quad):
    assert phi(quad, P(0, 0)) == P(0, 0)
    assert phi(quad, P(2, 3)) == P(0, 2)
    assert phi(quad, P(2, 1)) == P(F(3, 2), 0)
    assert phi(quad, P(1, 2)) == P(0, F(3, 2))


def test_notab_is_affine_on_samples(notab):
    for x in random_points(("v", "w"), 3, 50, lo=0, hi=3):
        assert phi(notab, x) == P(x["v"] - 2 * x["w"] + 4, x["w"] - 2 * x["v"] + 4)


def test_psi_quad(quad):
    assert psi(quad, P(0, 0)) == P(0, 0)
    assert psi(quad, P(F(3, 2), 0)) == P(2, 1)


def test_psi_rejects_lossy(kite):
    with pytest.raises(PreconditionError):
        psi(kite, P(0, 0))


def test_phi_rejects_unmarked_sink():
    net = MarkedNetwork.build(["v", "w"], {"a": 1}, [("a", "v"), ("v", "w")])
    with pytest.raises(PreconditionError):
        phi(net, P(0, 0))


def test_point_dimension_checked(quad):
    with pytest.raises(DimensionMismatch):
        phi(quad, {"v": 0})
    with pytest.raises(DimensionMismatch):
        phi(quad, {"v": 0, "w": 0, "u": 0})


@pytest.mark.parametrize("seed, net, anchor", gainy_networks(15) + acyclic_networks(10))
def test_round_trip(seed, net, anchor):
    for x in random_points(net.unmarked, seed, 30):
        assert psi(net, phi(net, x)) == x
        assert phi(net, psi(net, x)) == x


@pytest.mark.parametrize("seed, net, anchor", gainy_networks(15))
def test_phi_sign_matches_edge_inequalities(seed, net, anchor):
    for x in random_points(net.unmarked, seed, 30) + [{v: anchor[v] for v in net.unmarked}]:
        y = phi(net, x)
        for v in net.unmarked:
            holds = all(e.alpha * net.value(x, e.dst) + e.c <= x[v] for e in net.out_edges(v))
            assert (y[v] >= 0) == holds


# --------------------------------------------------------------------------
# opposite map


def test_phi_op_cayley_one():
    net = cayley_network(1)
    for t in (1, F(3, 2), 2):
        assert phi_op(net, {"v1": F(t)}) == {"v1": 2 - F(t)}


def test_phi_op_cayley_two():
    net = cayley_network(2)
    assert phi_op(net, {"v1": 2, "v2": 4}) == {"v1": 0, "v2": 0}
    assert phi_op(net, {"v1": 1, "v2": 1}) == {"v1": 1, "v2": 1}


def test_phi_op_rejects_unmarked_source(quad):
    net = MarkedNetwork.build(["v", "w"], {"a": 1}, [("v", "a"), ("w", "v")])
    with pytest.raises(PreconditionError):
        phi_op(net, P(0, 0))


@pytest.mark.parametrize("seed, net, anchor", acyclic_networks(10))
def test_phi_op_is_phi_of_opposite(seed, net, anchor):
    for x in random_points(net.unmarked, seed, 30):
        assert phi_op(net, x) == phi_via_opposite(net, x)


# --------------------------------------------------------------------------
# generalized map


def _square():
    rows = [([-1, 0], 0, "a"), ([0, -1], 0, "b"), ([1, 0], 1, "c"), ([0, 1], 1, "d")]
    return HPolyhedron.from_rows(("s", "t"), rows)


def test_phi_general_unit_square():
    sq = _square()
    for x in random_points(("s", "t"), 1, 20, lo=0, hi=1):
        assert phi_general(sq, [(1, 0), (0, 1)], x) == [x["s"], x["t"]]
    assert phi_general(sq, [(1, 1)], {"s": F(1, 2), "t": F(3, 4)}) == [F(1, 2)]


def test_phi_general_errors():
    sq = _square()
    with pytest.raises(NotInPolyhedronError):
        phi_general(sq, [(1, 0)], {"s": 2, "t": 0})
    orthant = HPolyhedron.from_rows(("s", "t"), [([-1, 0], 0, "a"), ([0, -1], 0, "b")])
    with pytest.raises(UnboundedDirectionError):
        phi_general(orthant, [(-1, 0)], {"s": 0, "t": 0})
    with pytest.raises(DimensionMismatch):
        phi_general(sq, [(1, 0, 0)], {"s": 0, "t": 0})


def test_phi_general_reproduces_phi_on_ord(quad):
    ordp = ord_hrep(quad)
    inside = [x for x in random_points(("v", "w"), 11, 400, lo=0, hi=3) if ordp.contains(x)][:50]
    assert len(inside) == 50
    for x in inside:
        y = phi(quad, x)
        assert phi_general(ordp, [(1, 0), (0, 1)], x) == [y["v"], y["w"]]


# --------------------------------------------------------------------------
# linearity data


def test_tight_subnetwork_kite(kite):
    low = tight_subnetwork(kite, P(F(1, 2), F(1, 2)))
    assert low.chosen == {"v": 2, "w": 3} and low.acyclic
    high = tight_subnetwork(kite, P(2, 2))
    assert high.chosen == {"v": 0, "w": 1}
    assert [c.edges for c in high.cycles] == [(0, 1)] and high.forest_edges == ()


def test_linearity_matrix_kite(kite):
    m = linearity_matrix(kite, P(2, 2))
    assert m.entries == ((1, -2), (-2, 1))
    assert m.det == -3 == m.cycle_product
    m = linearity_matrix(kite, P(F(1, 2), F(1, 2)))
    assert m.entries == ((1, 0), (0, 1)) and m.det == 1


def test_fraction_det():
    assert fraction_det([[0, 1], [1, 0]]) == -1
    assert fraction_det([[2, 1, 0], [1, 2, 1], [0, 1, 2]]) == 4
    assert fraction_det([[1, 2], [2, 4]]) == 0
    assert fraction_det([]) == 1


@pytest.mark.parametrize("seed, net, anchor", gainy_networks(20) + acyclic_networks(10))
def test_determinant_consistency(seed, net, anchor):
    acyclic = not elementary_cycles(net)
    for x in random_points(net.unmarked, seed, 50):
        m = linearity_matrix(net, x)  # raises on a mismatch
        expected = F(1)
        for c in m.tight.cycles:
            expected *= 1 - c.weight
        assert m.det == expected
        if acyclic:
            assert m.det == 1


@pytest.mark.parametrize("seed, net, anchor", gainy_networks(20))
def test_phi_is_locally_affine(seed, net, anchor):
    for x in random_points(net.unmarked, seed, 30):
        m = linearity_matrix(net, x)
        assert m.apply(x) == phi(net, x)
        # weights are at most 2, so a shift of gap/16 keeps every strict argmax
        gaps = []
        for v in net.unmarked:
            vals = sorted((e.alpha * net.value(x, e.dst) + e.c for e in net.out_edges(v)), reverse=True)
            if len(vals) > 1 and vals[0] > vals[1]:
                gaps.append(vals[0] - vals[1])
            elif len(vals) > 1:
                break
        else:
            eps = min(gaps, default=F(1)) / 16
            z = {v: t + eps * ((-1) ** i) for i, (v, t) in enumerate(x.items())}
            assert m.apply(z) == phi(net, z)


# --------------------------------------------------------------------------
# poset specialization


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_phi_matches_stanley_map(seed, n):
    poset = random_poset(seed, n)
    net = poset_to_network(poset)
    for f in random_points(poset.elements, seed, 10, lo=0, hi=1):
        assert phi(net, f) == stanley_transfer(poset, f)
