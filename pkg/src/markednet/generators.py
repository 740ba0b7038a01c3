"""Seeded random networks and posets for property testing.

Every generator is a pure function of its seed (SplitMix64 stream).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .gallery import Poset
from .network import Edge, MarkedNetwork, elementary_cycles
from .rng import SplitMix64

__all__ = [
    "random_gainy_network",
    "random_acyclic_network",
    "random_poset",
    "posets_up_to_isomorphism",
]

DEFAULT_ALPHAS = (Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2))
SLACKS = (Fraction(1, 2), Fraction(1), Fraction(2))


def _offset(anchor, src, dst, alpha, slack):
    # makes the anchor satisfy alpha*x_dst + c <= x_src with room `slack`
    return anchor[src] - alpha * anchor[dst] - slack


def random_gainy_network(
    seed: int,
    n_unmarked: int | None = None,
    n_marked: int | None = None,
    edge_prob: float = 0.3,
    parallel_prob: float = 0.1,
    alphas=DEFAULT_ALPHAS,
    max_cycle_weight=Fraction(1, 2),
    max_unmarked: int = 6,
):
    """Random network with all sinks marked and every cycle of weight at
    most ``max_cycle_weight`` (< 1, so the network is gainy or acyclic).

    Returns ``(net, anchor)``: ``anchor`` maps every node to a value, is
    the marking on marked nodes, and its unmarked part lies in the interior
    of Ord(net). Offending cycles are repaired by halving their largest
    edge weight until none remain.
    """
    if not 0 < max_cycle_weight < 1:
        raise ValueError("max_cycle_weight must lie in (0, 1)")
    rng = SplitMix64(seed)
    n = n_unmarked if n_unmarked is not None else rng.randint(1, max_unmarked)
    m = n_marked if n_marked is not None else rng.randint(1, 2)
    unmarked = [f"v{i}" for i in range(n)]
    marked = [f"a{i}" for i in range(m)]
    anchor = {name: rng.rational(-3, 3, (1, 2)) for name in unmarked + marked}

    pairs = []
    for u, w in itertools.permutations(unmarked + marked, 2):
        if u in marked and w in marked:
            continue
        if rng.bernoulli(edge_prob):
            pairs.append((u, w))
            if rng.bernoulli(parallel_prob):
                pairs.append((u, w))
    for u in unmarked:
        if not any(src == u for src, _ in pairs):
            pairs.append((u, rng.choice(marked)))

    plan = [[u, w, rng.choice(alphas), rng.choice(SLACKS)] for u, w in pairs]

    def build():
        edges = tuple(
            Edge(i, u, w, alpha, _offset(anchor, u, w, alpha, slack))
            for i, (u, w, alpha, slack) in enumerate(plan)
        )
        return MarkedNetwork(tuple(unmarked), tuple((a, anchor[a]) for a in marked), edges)

    net = build()
    while True:
        bad = [cyc for cyc in elementary_cycles(net) if cyc.weight > max_cycle_weight]
        if not bad:
            break
        worst = max(bad[0].edges, key=lambda i: (plan[i][2], -i))
        plan[worst][2] /= 2
        net = build()
    return net, anchor


def random_acyclic_network(
    seed: int,
    n_unmarked: int | None = None,
    edge_prob: float = 0.4,
    alphas=(Fraction(1, 2), Fraction(1), Fraction(2)),
    max_unmarked: int = 4,
):
    """Random acyclic network with all sinks and all sources marked.

    Unmarked nodes ``v0..`` are topologically ordered; edges go from
    ``t*`` (marked) into unmarked nodes, forward between unmarked nodes, and
    from unmarked nodes into ``b*`` (marked). Returns ``(net, anchor)`` as
    :func:`random_gainy_network` does; the anchor is integral.
    """
    rng = SplitMix64(seed)
    n = n_unmarked if n_unmarked is not None else rng.randint(1, max_unmarked)
    unmarked = [f"v{i}" for i in range(n)]
    tops = [f"t{i}" for i in range(rng.randint(1, 2))]
    bottoms = [f"b{i}" for i in range(rng.randint(1, 2))]
    anchor = {v: Fraction(rng.randint(1, 4)) for v in unmarked}
    for t in tops:
        anchor[t] = Fraction(rng.randint(5, 8))
    for b in bottoms:
        anchor[b] = Fraction(rng.randint(-1, 0))

    pairs = []
    for t in tops:
        pairs += [(t, v) for v in unmarked if rng.bernoulli(edge_prob)]
    for i, j in itertools.combinations(range(n), 2):
        if rng.bernoulli(edge_prob):
            pairs.append((unmarked[i], unmarked[j]))
    for b in bottoms:
        pairs += [(v, b) for v in unmarked if rng.bernoulli(edge_prob)]
    for v in unmarked:
        if not any(dst == v for _, dst in pairs):
            pairs.append((rng.choice(tops), v))
        if not any(src == v for src, _ in pairs):
            pairs.append((v, rng.choice(bottoms)))

    edges = []
    for i, (u, w) in enumerate(pairs):
        alpha = rng.choice(alphas)
        slack = Fraction(rng.randint(0, 2))
        edges.append(Edge(i, u, w, alpha, _offset(anchor, u, w, alpha, slack)))
    marked = tuple((a, anchor[a]) for a in tops + bottoms)
    return MarkedNetwork(tuple(unmarked), marked, tuple(edges)), anchor


def random_poset(seed: int, n: int, density: float = 0.4, prefix: str = "p") -> Poset:
    """Random poset on ``n`` naturally labelled elements."""
    rng = SplitMix64(seed)
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    relations = [(names[i], names[j]) for i, j in itertools.combinations(range(n), 2) if rng.bernoulli(density)]
    return Poset.from_relations(names, relations)


def posets_up_to_isomorphism(n: int, prefix: str = "p") -> list[Poset]:
    """One representative of every isomorphism class of posets on ``n``
    elements.

    Every poset has a natural labelling, so it suffices to scan transitively
    closed subsets of ``{(i, j) : i < j}`` and keep one per orbit under
    relabelling.
    """
    pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    seen = set()
    result = []
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if any((a, c) not in rel for (a, b) in rel for (b2, c) in rel if b == b2):
            continue
        canon = min(tuple(sorted((p[a], p[b]) for a, b in rel)) for p in perms)
        if canon in seen:
            continue
        seen.add(canon)
        names = [f"{prefix}{i}" for i in range(1, n + 1)]
        result.append(Poset.from_relations(names, [(names[a], names[b]) for a, b in sorted(rel)]))
    return result
