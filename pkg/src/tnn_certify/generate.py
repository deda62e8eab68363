"""Random valid planar networks for self-tests and Monte Carlo runs."""

from __future__ import annotations

import math
from fractions import Fraction

from .network import PlanarNetwork, _on_segment, _orient, edges_conflict, redundant_edges


def circle_point(theta: float, max_den: int = 997):
    """Exact rational point on the unit circle close to angle ``theta``."""
    t = Fraction(math.tan(theta / 2)).limit_denominator(max_den)
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def random_network(rng, n: int, n_prime: int, inner: int, density: float = 0.6) -> PlanarNetwork:
    """Random straight-line planar network with edges oriented left to right.

    Terminals sit on the unit circle (sources on the left arc, sinks on the
    right arc), inner vertices strictly inside.  Candidate edges are tried
    shortest first and kept with probability ``density`` when they cross
    nothing; redundant edges and isolated inner vertices are dropped.
    """
    pos = {}
    for i in range(1, n + 1):
        base = 100 + (160 * (i - 1) / (n - 1) if n > 1 else 80)
        pos[f"s{i}"] = circle_point(math.radians(base + rng.uniform(-5, 5)))
    for j in range(1, n_prime + 1):
        base = 80 - (160 * (j - 1) / (n_prime - 1) if n_prime > 1 else 80)
        pos[f"t{j}"] = circle_point(math.radians(base + rng.uniform(-5, 5)))
    k = 0
    while k < inner:
        r = math.sqrt(rng.uniform(0, 0.55))
        a = rng.uniform(0, 2 * math.pi)
        p = (Fraction(round(r * math.cos(a) * 1000), 1000), Fraction(round(r * math.sin(a) * 1000), 1000))
        if p in pos.values():
            continue
        pos[f"v{k + 1}"] = p
        k += 1

    names = list(pos)
    sinks = {f"t{j}" for j in range(1, n_prime + 1)}
    sources = {f"s{i}" for i in range(1, n + 1)}
    cands = []
    for x in range(len(names)):
        for y in range(x + 1, len(names)):
            a, b = names[x], names[y]
            if pos[b] < pos[a]:
                a, b = b, a
            if a in sinks or b in sources:
                continue
            d = (pos[a][0] - pos[b][0]) ** 2 + (pos[a][1] - pos[b][1]) ** 2
            cands.append((float(d), a, b))
    cands.sort()
    edges = []
    for _, a, b in cands:
        if rng.random() > density:
            continue
        e = (a, b)
        if any(edges_conflict(pos, e, f) for f in edges):
            continue
        if any(v not in e and _orient(pos[a], pos[b], pos[v]) == 0 and _on_segment(pos[a], pos[b], pos[v])
               for v in names):
            continue
        edges.append(e)
    G = PlanarNetwork.build(pos, edges, [f"s{i}" for i in range(1, n + 1)],
                            [f"t{j}" for j in range(1, n_prime + 1)])
    bad = set(redundant_edges(G))
    G = G.with_edges([e for e in edges if e not in bad])
    return G
