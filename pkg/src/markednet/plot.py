"""SVG figures for networks with two unmarked nodes: the network, Ord and
the image of the transfer map."""

from __future__ import annotations

import math

from .errors import MarkedNetworkError
from .network import MarkedNetwork, classify_network
from .polyhedra import HPolyhedron, LatticeBox, chain_hrep, ord_hrep, sample_point
from .rational import fmt
from .rng import substream
from .transfer import phi


def clip_polygon(poly: HPolyhedron, window):
    """Polygon ``poly ∩ window`` in floats; ``window = (x0, x1, y0, y1)``."""
    x0, x1, y0, y1 = window
    pts = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    for row in poly.rows:
        a, b = float(row.coeffs[0]), float(row.coeffs[1])
        r = float(row.rhs)
        if a == 0 and b == 0:
            if r < 0:
                return []
            continue
        out = []
        for k, p in enumerate(pts):
            q = pts[(k + 1) % len(pts)]
            fp = a * p[0] + b * p[1] - r
            fq = a * q[0] + b * q[1] - r
            if fp <= 0:
                out.append(p)
            if (fp < 0 < fq) or (fq < 0 < fp):
                t = fp / (fp - fq)
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        pts = out
        if not pts:
            return []
    return pts


def _draw_network(ax, net):
    names = net.nodes
    pos = {n: (math.cos(2 * math.pi * k / len(names) + 0.5), math.sin(2 * math.pi * k / len(names) + 0.5))
           for k, n in enumerate(names)}
    for e in net.edges:
        (xa, ya), (xb, yb) = pos[e.src], pos[e.dst]
        ax.annotate("", xy=(xb, yb), xytext=(xa, ya),
                    arrowprops=dict(arrowstyle="->", shrinkA=9, shrinkB=9, connectionstyle="arc3,rad=0.15"))
        if e.alpha != 1 or e.c != 0:
            ax.text((xa + xb) / 2, (ya + yb) / 2, f"{fmt(e.alpha)}, {fmt(e.c)}", fontsize=7, color="0.3")
    for n, (x, y) in pos.items():
        marked = net.is_marked(n)
        ax.plot(x, y, "s" if marked else "o", color="tab:red" if marked else "tab:blue", ms=9)
        label = f"{n}={fmt(net.marking(n))}" if marked else n
        ax.text(x, y + 0.14, label, ha="center", fontsize=8)
    ax.set_xlim(-1.5, 1.5)
    ax.set_ylim(-1.5, 1.5)
    ax.set_aspect("equal")
    ax.axis("off")


def plot_network(net: MarkedNetwork, out, samples: int = 400, seed: int = 0, window=None):
    """Write a three-panel figure to ``out`` (any matplotlib format)."""
    if len(net.unmarked) != 2:
        raise MarkedNetworkError("plotting needs exactly two unmarked nodes")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if window is None:
        scale = max([abs(float(lam)) for _, lam in net.marked] + [abs(float(e.c)) for e in net.edges] + [1.0])
        window = (-0.5, 2 * scale + 0.5, -0.5, 2 * scale + 0.5)
    ordp = ord_hrep(net)
    box = LatticeBox(net.unmarked, [math.floor(window[0]), math.floor(window[2])],
                     [math.ceil(window[1]), math.ceil(window[3])])
    inside = []
    for i in range(samples * 20):
        x = sample_point(box, substream(seed, i))
        if ordp.contains(x):
            inside.append(x)
        if len(inside) >= samples:
            break
    images = [phi(net, x) for x in inside]

    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    _draw_network(axes[0], net)
    axes[0].set_title(f"network ({classify_network(net).kind.value})")

    v, w = net.unmarked
    ax = axes[1]
    poly = clip_polygon(ordp, window)
    if poly:
        ax.fill(*zip(*poly), color="0.92", edgecolor="black")
    if inside:
        ax.scatter([float(x[v]) for x in inside], [float(x[w]) for x in inside], s=4, color="tab:blue")
    ax.set_xlabel(v)
    ax.set_ylabel(w)
    ax.set_title("Ord")

    ax = axes[2]
    if classify_network(net).invertible:
        top = max([float(y) for im in images for y in im.values()] + [1.0])
        chain = clip_polygon(chain_hrep(net), (-0.5, 1.2 * top + 0.5, -0.5, 1.2 * top + 0.5))
        if chain:
            ax.fill(*zip(*chain), color="0.92", edgecolor="black")
    if images:
        ax.scatter([float(y[v]) for y in images], [float(y[w]) for y in images], s=4, color="tab:orange")
    ax.set_xlabel(v)
    ax.set_ylabel(w)
    ax.set_title("phi(Ord)")

    for ax in axes[1:]:
        ax.axhline(0, color="0.6", lw=0.5)
        ax.axvline(0, color="0.6", lw=0.5)
        ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
