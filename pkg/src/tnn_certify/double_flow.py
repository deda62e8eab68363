"""Double flows on split (hat) networks: decomposition, induced matching,
and path switching."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .core import Context, Couple, Matching, ProperPair, Side, col, exchange, row
from .errors import NotSubsetError, StructureError
from .flows import Flow, iter_flows
from .network import PlanarNetwork, hat_law_violations

PATH_CLASSES = ("CCbar", "CC'", "CbarCbar'", "C'Cbar'")


@dataclass(frozen=True)
class DoubleFlow:
    ctx: Context
    pair: ProperPair
    phi: Flow
    phi_prime: Flow
    host: PlanarNetwork

    def edge_multiset(self) -> Counter:
        return Counter(self.phi.edges) + Counter(self.phi_prime.edges)

    def weight(self, split_weights) -> Fraction:
        """Product of split-edge weights over both flows, with multiplicity."""
        out = Fraction(1)
        for e, k in self.edge_multiset().items():
            if e in split_weights:
                out *= split_weights[e] ** k
        return out


@dataclass(frozen=True)
class DecompositionPath:
    edges: tuple          # (tail, head) in traversal order from `start`
    start: object         # GroundElement
    end: object
    kind: str
    from_phi: tuple       # per edge: True when it comes from phi

    @property
    def couple(self) -> Couple:
        return Couple.of(self.start, self.end)


@dataclass(frozen=True)
class Decomposition:
    circuits: tuple       # each a frozenset of edges
    paths: tuple

    def edges(self) -> list:
        out = [e for c in self.circuits for e in c]
        out.extend(e for p in self.paths for e in p.edges)
        return out


def _terminal_elements(host: PlanarNetwork) -> dict:
    tag = {s: row(i) for i, s in enumerate(host.sources, 1)}
    tag.update({t: col(j) for j, t in enumerate(host.sinks, 1)})
    return tag


def _classify(a, b, pair: ProperPair) -> str:
    def white(e):
        return e.index in (pair.C if e.side == Side.ROW else pair.C_prime)

    if a.side == b.side == Side.ROW and white(a) != white(b):
        return "CCbar"
    if a.side == b.side == Side.COL and white(a) != white(b):
        return "C'Cbar'"
    if a.side != b.side and white(a) == white(b):
        return "CC'" if white(a) else "CbarCbar'"
    raise StructureError(f"path joins {a} and {b}, which no double flow of {pair} can do")


def decompose(df: DoubleFlow) -> Decomposition:
    problems = hat_law_violations(df.host)
    if problems:
        raise StructureError("host is not a split network: " + "; ".join(problems[:3]))
    e_phi, e_psi = df.phi.edges, df.phi_prime.edges
    sym = e_phi ^ e_psi
    adj = {}
    for e in sym:
        for v in e:
            adj.setdefault(v, []).append(e)
    tag = _terminal_elements(df.host)
    for v, es in adj.items():
        if len(es) > 2 or (len(es) == 1 and v not in tag):
            raise StructureError(f"vertex {v} has degree {len(es)} in the symmetric difference")

    def walk(v, first):
        edges, flags, e = [], [], first
        while True:
            edges.append(e)
            flags.append(e in e_phi)
            v = e[1] if e[0] == v else e[0]
            nxt = [f for f in adj[v] if f != e]
            if not nxt:
                return v, edges, flags
            e = nxt[0]
            if e == first:
                return v, edges, flags

    # start from terminals in clockwise boundary order
    ring = list(reversed(df.host.sources)) + list(df.host.sinks)
    seen, paths = set(), []
    for v in ring:
        if v not in adj or adj[v][0] in seen:
            continue
        end, edges, flags = walk(v, adj[v][0])
        seen.update(edges)
        a, b = tag[v], tag[end]
        paths.append(DecompositionPath(tuple(edges), a, b, _classify(a, b, df.pair), tuple(flags)))
    circuits = []
    idx = df.host.index()
    for e in sorted(sym - seen, key=lambda e: (idx[e[0]], idx[e[1]])):
        if e in seen:
            continue
        _, edges, _ = walk(e[0], e)
        seen.update(edges)
        circuits.append(frozenset(edges))
    return Decomposition(tuple(circuits), tuple(paths))


def orientation_alternates(path: DecompositionPath, start_vertex) -> bool:
    """Phi-edges all point along the walk and phi'-edges against it, or the reverse."""
    v, signs = start_vertex, []
    for (a, b), is_phi in zip(path.edges, path.from_phi):
        forward = a == v
        v = b if forward else a
        signs.append(forward == is_phi)
    return len(set(signs)) <= 1


def matching_of(df: DoubleFlow) -> Matching:
    return Matching(frozenset(p.couple for p in decompose(df).paths))


def _flow_from_edges(host: PlanarNetwork, edges: frozenset, I, J) -> Flow:
    nxt = {}
    for a, b in edges:
        if a in nxt:
            raise StructureError(f"two edges leave {a}")
        nxt[a] = b
    paths = []
    for i in sorted(I):
        v, p = host.source(i), [host.source(i)]
        while v in nxt:
            v = nxt[v]
            p.append(v)
        paths.append(tuple(p))
    got_sinks = sorted(host.sinks.index(p[-1]) + 1 for p in paths if p[-1] in host.sinks)
    if got_sinks != sorted(J) or sum(len(p) - 1 for p in paths) != len(edges):
        raise StructureError("switched edge set is not a flow with the expected terminals")
    return Flow(tuple(paths), tuple(sorted(I)), tuple(sorted(J)))


def switch(df: DoubleFlow, M0) -> DoubleFlow:
    dec = decompose(df)
    M = Matching(frozenset(p.couple for p in dec.paths))
    M0 = frozenset(M0.couples if isinstance(M0, Matching) else M0)
    if not M0 <= M.couples:
        raise NotSubsetError("M0 is not a subset of the double flow's matching")
    e0 = frozenset(e for p in dec.paths if p.couple in M0 for e in p.edges)
    new_pair = exchange(df.ctx, df.pair, M, M0)
    bar = new_pair.complement(df.ctx)
    ctx = df.ctx
    psi = _flow_from_edges(df.host, df.phi.edges ^ e0, new_pair.rows(ctx), new_pair.cols(ctx))
    psi_prime = _flow_from_edges(df.host, df.phi_prime.edges ^ e0, bar.rows(ctx), bar.cols(ctx))
    return DoubleFlow(ctx, new_pair, psi, psi_prime, df.host)


def iter_double_flows(ctx: Context, pair: ProperPair, host: PlanarNetwork):
    bar = pair.complement(ctx)
    first = list(iter_flows(host, pair.rows(ctx), pair.cols(ctx)))
    if not first:
        return
    second = list(iter_flows(host, bar.rows(ctx), bar.cols(ctx)))
    for phi, phi_prime in product(first, second):
        yield DoubleFlow(ctx, pair, phi, phi_prime, host)
