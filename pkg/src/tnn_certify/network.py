"""Planar acyclic networks with boundary terminals.

Vertices carry exact rational coordinates and edges are straight segments,
so planarity and boundary order can be checked without floating point.
Sources ``s_1..s_n`` and sinks ``t_1..t_n'`` must appear on the convex hull
in the clockwise cyclic order ``s_n, ..., s_1, t_1, ..., t_n'``.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter

from .errors import InvalidNetworkError, NegativeWeightError


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**9)
    return Fraction(value)


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PlanarNetwork:
    vertices: tuple
    positions: dict
    edges: tuple
    sources: tuple
    sinks: tuple
    # (tail, head) pairs produced by vertex splitting; empty for ordinary networks
    split_edges: frozenset = field(default_factory=frozenset)

    @classmethod
    def build(cls, positions, edges, sources, sinks, split_edges=()):
        """Positions may be given as a dict or as ``(id, x, y)`` triples."""
        if not isinstance(positions, dict):
            positions = {v: (x, y) for v, x, y in positions}
        pos = {str(v): (to_fraction(x), to_fraction(y)) for v, (x, y) in positions.items()}
        return cls(
            vertices=tuple(pos),
            positions=pos,
            edges=tuple((str(a), str(b)) for a, b in edges),
            sources=tuple(str(s) for s in sources),
            sinks=tuple(str(t) for t in sinks),
            split_edges=frozenset((str(a), str(b)) for a, b in split_edges),
        )

    @property
    def n(self):
        return len(self.sources)

    @property
    def n_prime(self):
        return len(self.sinks)

    def index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    def out_edges(self) -> dict:
        idx = self.index()
        out = {v: [] for v in self.vertices}
        for a, b in self.edges:
            out[a].append(b)
        for v in out:
            out[v].sort(key=idx.__getitem__)
        return out

    def in_edges(self) -> dict:
        inn = {v: [] for v in self.vertices}
        for a, b in self.edges:
            inn[b].append(a)
        return inn

    def topological_order(self) -> list:
        ts = TopologicalSorter({v: [] for v in self.vertices})
        for a, b in self.edges:
            ts.add(b, a)
        return list(ts.static_order())

    def source(self, i: int) -> str:
        return self.sources[i - 1]

    def sink(self, j: int) -> str:
        return self.sinks[j - 1]

    def with_edges(self, edges, keep_vertices=None) -> "PlanarNetwork":
        """Subnetwork on the given edges; vertices default to terminals plus edge endpoints."""
        edges = tuple(edges)
        used = set(self.sources) | set(self.sinks)
        for a, b in edges:
            used.update((a, b))
        if keep_vertices is not None:
            used |= set(keep_vertices)
        pos = {v: self.positions[v] for v in self.vertices if v in used}
        split = frozenset(e for e in self.split_edges if e in set(edges))
        return PlanarNetwork(tuple(pos), pos, edges, self.sources, self.sinks, split)


# ---------------------------------------------------------------- geometry

def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _on_segment(p, q, r) -> bool:
    """r lies on the closed segment pq (collinearity assumed)."""
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segments_intersect(p1, p2, q1, q2) -> bool:
    d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    if d1 != d2 and d3 != d4 and 0 not in (d1, d2, d3, d4):
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def edges_conflict(pos, e, f) -> bool:
    """Straight edges e, f meet somewhere other than a shared endpoint."""
    shared = set(e) & set(f)
    a, b = pos[e[0]], pos[e[1]]
    c, d = pos[f[0]], pos[f[1]]
    if not shared:
        return segments_intersect(a, b, c, d)
    if len(shared) == 2:
        return True  # parallel or antiparallel copy
    s = pos[next(iter(shared))]
    x = b if a == s else a
    y = d if c == s else c
    if _orient(s, x, y) != 0:
        return False
    # collinear with a common endpoint: they overlap unless they point in opposite directions
    return (x[0] - s[0]) * (y[0] - s[0]) + (x[1] - s[1]) * (y[1] - s[1]) > 0


def convex_hull_boundary(points) -> list:
    """Points lying on the hull boundary (collinear ones included), clockwise."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        h = []
        for p in seq:
            while len(h) >= 2 and _orient(h[-2], h[-1], p) <= 0:
                h.pop()
            h.append(p)
        return h

    ccw = chain(pts)[:-1] + chain(reversed(pts))[:-1]
    if len(ccw) < 3:
        # all points collinear: the boundary is the whole segment
        return pts
    ring = []
    for i in range(len(ccw)):
        a, b = ccw[i], ccw[(i + 1) % len(ccw)]
        on = [p for p in pts if _orient(a, b, p) == 0 and _on_segment(a, b, p) and p != b]
        on.sort(key=lambda p: (p[0] - a[0]) ** 2 + (p[1] - a[1]) ** 2)
        ring.extend(on)
    ring.reverse()
    return ring


# ---------------------------------------------------------------- validation

def validate_network(G: PlanarNetwork, redundancy: bool = True) -> list:
    """List of human-readable violations; an empty list means G is valid.

    ``redundancy=False`` skips the redundant-edge check, which split networks
    fail whenever a terminal of the original network is isolated.
    """
    report = []
    vs = set(G.vertices)
    for a, b in G.edges:
        if a not in vs or b not in vs:
            report.append(f"edge {a}->{b} references an unknown vertex")
        elif a == b:
            report.append(f"loop at {a}")
    if report:
        return report
    if len(set(G.edges)) != len(G.edges):
        report.append("duplicate edges")
    terms = list(G.sources) + list(G.sinks)
    if len(set(terms)) != len(terms):
        report.append("terminals must be distinct vertices")
    if any(t not in vs for t in terms):
        report.append("terminal is not a vertex")
        return report
    if not G.sources or not G.sinks:
        report.append("network needs at least one source and one sink")

    try:
        G.topological_order()
    except CycleError as exc:
        report.append(f"directed cycle through {exc.args[1][:-1]}")

    coords = [G.positions[v] for v in G.vertices]
    if len(set(coords)) != len(coords):
        report.append("two vertices share a position")
    else:
        pos = G.positions
        box = {e: (min(pos[e[0]][0], pos[e[1]][0]), max(pos[e[0]][0], pos[e[1]][0]),
                   min(pos[e[0]][1], pos[e[1]][1]), max(pos[e[0]][1], pos[e[1]][1])) for e in G.edges}
        by_x = sorted(G.vertices, key=lambda v: pos[v][0])
        xs = [pos[v][0] for v in by_x]
        hits = []
        for a, b in G.edges:
            x0, x1, y0, y1 = box[(a, b)]
            for v in by_x[bisect_left(xs, x0):bisect_right(xs, x1)]:
                p = pos[v]
                if v not in (a, b) and y0 <= p[1] <= y1 and _orient(pos[a], pos[b], p) == 0:
                    hits.append((G.vertices.index(v), v, a, b))
        report.extend(f"vertex {v} lies on edge {a}->{b}" for _, v, a, b in sorted(hits))
        # sweep over x so that only edges with overlapping boxes are compared
        E = sorted(G.edges, key=lambda e: box[e][0])
        for i, e in enumerate(E):
            for f in E[i + 1:]:
                if box[f][0] > box[e][1]:
                    break
                if box[f][2] > box[e][3] or box[e][2] > box[f][3]:
                    continue
                if edges_conflict(pos, e, f):
                    report.append(f"edges {e[0]}->{e[1]} and {f[0]}->{f[1]} cross")
        report.extend(_terminal_order_violations(G))

    if redundancy:
        report.extend(f"redundant edge {a}->{b}" for a, b in redundant_edges(G))
    return report


def _terminal_order_violations(G: PlanarNetwork) -> list:
    ring = convex_hull_boundary(G.positions.values())
    where = {p: i for i, p in enumerate(ring)}
    expected = list(reversed(G.sources)) + list(G.sinks)
    off = [t for t in expected if G.positions[t] not in where]
    if off:
        return [f"terminal {t} is not on the boundary" for t in off]
    if len(expected) <= 2:
        return []
    seq = [where[G.positions[t]] for t in expected]
    # clockwise cyclic order: positions increase once around the ring
    descents = sum(1 for i in range(len(seq)) if seq[i] > seq[(i + 1) % len(seq)])
    if descents != 1:
        return ["terminals are not in clockwise order s_n..s_1, t_1..t_n'"]
    return []


def redundant_edges(G: PlanarNetwork) -> list:
    out, inn = G.out_edges(), G.in_edges()

    def reach(starts, nbrs):
        seen, stack = set(starts), list(starts)
        while stack:
            v = stack.pop()
            for u in nbrs[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen

    from_s = reach(G.sources, out)
    to_t = reach(G.sinks, inn)
    return [(a, b) for a, b in G.edges if a not in from_s or b not in to_t]


def require_valid(G: PlanarNetwork):
    report = validate_network(G)
    if report:
        raise InvalidNetworkError("invalid planar network: " + "; ".join(report[:5]), report)


def check_weights(G: PlanarNetwork, w) -> dict:
    """Normalize a weighting to Fractions, default 1, rejecting negatives."""
    out = {}
    for v in G.vertices:
        val = to_fraction(w.get(v, 1)) if w is not None else Fraction(1)
        if val < 0:
            raise NegativeWeightError(f"weight of {v} is negative: {val}")
        out[v] = val
    return out


# ---------------------------------------------------------------- hat transform

def split_names(v: str):
    return f"{v}#in", f"{v}#out"


def hat_source(i: int) -> str:
    return f"^s{i}"


def hat_sink(j: int) -> str:
    return f"^t{j}"


def _bisector(angles_in, angles_out):
    """Angle halfway across the arc spanned by ``angles_in`` that avoids ``angles_out``."""
    if len(angles_in) == 1:
        return angles_in[0]
    two_pi = 2 * math.pi
    if not angles_out:
        srt = sorted(a % two_pi for a in angles_in)
        gaps = [(srt[(i + 1) % len(srt)] - srt[i]) % two_pi for i in range(len(srt))]
        k = max(range(len(gaps)), key=gaps.__getitem__)
        start, end = srt[(k + 1) % len(srt)], srt[k]
    else:
        labelled = sorted([(a % two_pi, 0) for a in angles_in] + [(a % two_pi, 1) for a in angles_out])
        first_out = next(i for i, (_, lab) in enumerate(labelled) if lab == 1)
        rot = labelled[first_out + 1:] + labelled[:first_out + 1]
        run = [a for a, lab in rot if lab == 0]
        start, end = run[0], run[-1]
    return start + ((end - start) % two_pi) / 2


def _outer_offsets(G: PlanarNetwork) -> dict:
    """Exact offset direction ``u`` for every terminal, so that ``p + eps*u``
    lies on the boundary of a mitered outward offset of the hull.

    Terminals sharing a hull side move by the same vector and therefore stay
    collinear; corners move to the meeting point of the two shifted sides.
    Returns ``None`` when the points are collinear.
    """
    ring = convex_hull_boundary(G.positions.values())
    pts = list(G.positions.values())
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    if len(ring) < 3 or all(_orient(ring[0], ring[1], r) == 0 for r in ring):
        return None

    def normal(a, b):
        dx, dy = b[0] - a[0], b[1] - a[1]
        big = max(abs(dx), abs(dy))
        n = (dy / big, -dx / big)
        if n[0] * (cx - a[0]) + n[1] * (cy - a[1]) > 0:
            n = (-n[0], -n[1])
        return n

    where = {p: i for i, p in enumerate(ring)}
    out = {}
    for v in G.sources + G.sinks:
        p = G.positions[v]
        i = where[p]
        prev, nxt = ring[i - 1], ring[(i + 1) % len(ring)]
        if _orient(prev, p, nxt) == 0:
            n = normal(prev, nxt)
            out[v] = (2 * n[0], 2 * n[1])
            continue
        n1, n2 = normal(prev, p), normal(p, nxt)
        # n1.u = 2|n1|^2 and n2.u = 2|n2|^2
        r1, r2 = 2 * (n1[0] ** 2 + n1[1] ** 2), 2 * (n2[0] ** 2 + n2[1] ** 2)
        det = n1[0] * n2[1] - n1[1] * n2[0]
        out[v] = ((r1 * n2[1] - r2 * n1[1]) / det, (n1[0] * r2 - n2[0] * r1) / det)
    return out


def hat_transform(G: PlanarNetwork, shrink_tries: int = 40) -> PlanarNetwork:
    """Split every vertex ``v`` into ``v#in -> v#out`` and add outer terminals."""
    require_valid(G)
    out, inn = G.out_edges(), G.in_edges()
    pos = {v: (float(x), float(y)) for v, (x, y) in G.positions.items()}
    cx = sum(p[0] for p in pos.values()) / len(pos)
    cy = sum(p[1] for p in pos.values()) / len(pos)
    src = set(G.sources)
    offsets = _outer_offsets(G)
    if offsets is None:
        # collinear network: push terminals straight away from the centre
        offsets = {}
        for v in G.sources + G.sinks:
            x, y = G.positions[v]
            dx, dy = x - Fraction(cx).limit_denominator(10**9), y - Fraction(cy).limit_denominator(10**9)
            big = max(abs(dx), abs(dy)) or 1
            offsets[v] = (2 * dx / big, 2 * dy / big)

    def angle(p, q):
        return math.atan2(q[1] - p[1], q[0] - p[0])

    directions = {}
    for v in G.vertices:
        p = pos[v]
        ins = [angle(p, pos[u]) for u in inn[v]]
        outs = [angle(p, pos[u]) for u in out[v]]
        if v in offsets:
            outward = math.atan2(float(offsets[v][1]), float(offsets[v][0]))
            (ins if v in src else outs).append(outward)
        if not ins:
            ins = [(_bisector(outs, []) + math.pi)]
        if not outs:
            outs = [(_bisector(ins, []) + math.pi)]
        directions[v] = (_bisector(ins, outs), _bisector(outs, ins))

    dists = [math.dist(pos[a], pos[b]) for i, a in enumerate(G.vertices) for b in G.vertices[i + 1:]]
    scale = min(dists) if dists else 1.0
    eps = Fraction(scale / 8).limit_denominator(2**20) or Fraction(1, 2**20)
    last = None
    for _ in range(shrink_tries):
        H = _place_hat(G, directions, eps, offsets)
        if not validate_network(H, redundancy=False):
            return H
        last = H
        eps /= 2
    raise InvalidNetworkError("could not embed the split network without crossings",
                              validate_network(last, redundancy=False))


def _place_hat(G, directions, eps, offsets):
    def q(x):
        return Fraction(x).limit_denominator(10**12)

    positions, edges, split = {}, [], []
    for i, s in enumerate(G.sources, 1):
        (x, y), (ux, uy) = G.positions[s], offsets[s]
        positions[hat_source(i)] = (x + eps * ux, y + eps * uy)
    for j, t in enumerate(G.sinks, 1):
        (x, y), (ux, uy) = G.positions[t], offsets[t]
        positions[hat_sink(j)] = (x + eps * ux, y + eps * uy)
    e = float(eps)
    for v in G.vertices:
        x, y = G.positions[v]
        a_in, a_out = directions[v]
        vin, vout = split_names(v)
        positions[vin] = (x + q(e * math.cos(a_in)), y + q(e * math.sin(a_in)))
        positions[vout] = (x + q(e * math.cos(a_out)), y + q(e * math.sin(a_out)))
        split.append((vin, vout))
        edges.append((vin, vout))
    for a, b in G.edges:
        edges.append((split_names(a)[1], split_names(b)[0]))
    for i, s in enumerate(G.sources, 1):
        edges.append((hat_source(i), split_names(s)[0]))
    for j, t in enumerate(G.sinks, 1):
        edges.append((split_names(t)[1], hat_sink(j)))
    order = ([hat_source(i) for i in range(1, G.n + 1)] + [n for v in G.vertices for n in split_names(v)]
             + [hat_sink(j) for j in range(1, G.n_prime + 1)])
    return PlanarNetwork(
        vertices=tuple(order),
        positions={v: positions[v] for v in order},
        edges=tuple(edges),
        sources=tuple(hat_source(i) for i in range(1, G.n + 1)),
        sinks=tuple(hat_sink(j) for j in range(1, G.n_prime + 1)),
        split_edges=frozenset(split),
    )


def hat_weights(G: PlanarNetwork, w) -> dict:
    """Move vertex weights of G onto the split-edges of its hat network."""
    w = check_weights(G, w)
    return {split_names(v): w[v] for v in G.vertices}


def hat_law_violations(H: PlanarNetwork) -> list:
    """Check the degree laws of a split network; empty list when they hold."""
    report = []
    out, inn = H.out_edges(), H.in_edges()
    for s in H.sources:
        if len(out[s]) != 1 or inn[s]:
            report.append(f"source {s} must have one leaving and no entering edge")
    for t in H.sinks:
        if len(inn[t]) != 1 or out[t]:
            report.append(f"sink {t} must have one entering and no leaving edge")
    terminals = set(H.sources) | set(H.sinks)
    if not H.split_edges:
        report.append("network carries no split-edges")
        return report
    owner = {}
    for a, b in H.split_edges:
        for v in (a, b):
            if v in owner:
                report.append(f"vertex {v} lies on two split-edges")
            owner[v] = (a, b)
        if out[a] != [b]:
            report.append(f"split-edge {a}->{b} is not the only edge leaving {a}")
        if inn[b] != [a]:
            report.append(f"split-edge {a}->{b} is not the only edge entering {b}")
    for v in H.vertices:
        if v not in terminals and v not in owner:
            report.append(f"vertex {v} is on no split-edge")
    return report


# ---------------------------------------------------------------- JSON

def network_to_dict(G: PlanarNetwork, weights=None) -> dict:
    data = {
        "vertices": [{"id": v, "x": fraction_str(G.positions[v][0]), "y": fraction_str(G.positions[v][1])}
                     for v in G.vertices],
        "edges": [{"tail": a, "head": b} for a, b in G.edges],
        "sources": list(G.sources),
        "sinks": list(G.sinks),
        "weights": {},
    }
    if weights is not None:
        data["weights"] = {v: fraction_str(Fraction(weights[v])) for v in G.vertices if v in weights}
    return data


def network_from_dict(data: dict):
    """Returns ``(network, weights)``; absent weights default to 1."""
    try:
        positions = {str(v["id"]): (Fraction(str(v["x"])), Fraction(str(v["y"]))) for v in data["vertices"]}
        edges = [(str(e["tail"]), str(e["head"])) for e in data["edges"]]
        G = PlanarNetwork.build(positions, edges, data["sources"], data["sinks"])
        raw = data.get("weights") or {}
        weights = {v: Fraction(str(raw[v])) if v in raw else Fraction(1) for v in G.vertices}
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidNetworkError(f"malformed network JSON: {exc}") from exc
    return G, weights


def dump_network(G: PlanarNetwork, weights=None) -> str:
    return json.dumps(network_to_dict(G, weights), indent=2)


def load_network(text: str):
    return network_from_dict(json.loads(text))
