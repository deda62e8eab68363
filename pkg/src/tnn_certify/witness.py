"""Counterexample networks for matchings that break the counting criterion.

For a matching ``M`` we need a planar network in which every proper pair
``(C, C')`` with ``M`` feasible has exactly one flow for each of its two
minors, while every other proper pair has no flow for at least one of them.
With unit weights the Lindström matrix of such a network evaluates the
quadratic form to ``#_M(A) - #_M(B)``.

Candidates are unions of a double flow whose induced matching is ``M``,
drawn at random inside a down-right grid.  Every candidate is checked by
exhaustive flow enumeration before it is returned, so the search can fail
but never return a wrong network.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Context,
    Family,
    Matching,
    check_universal,
    is_feasible,
    proper_pairs,
)
from .double_flow import DoubleFlow, decompose
from .errors import ConstructionFailure, InfeasibleMatchingError, InvalidNetworkError, IsUniversalError
from .flows import Flow, count_flows, evaluate_inequality, grid_network, lindstrom_matrix, path_sums
from .matrix import is_tnn, minor
from .network import (
    PlanarNetwork,
    _on_segment,
    _orient,
    edges_conflict,
    fraction_str,
    hat_sink,
    hat_source,
    hat_transform,
    network_from_dict,
    network_to_dict,
    require_valid,
    split_names,
)

log = logging.getLogger(__name__)


def verify_p1p2(ctx: Context, M: Matching, G: PlanarNetwork) -> bool:
    """Check both witness properties for every proper pair by enumerating flows."""
    require_valid(G)
    if (G.n, G.n_prime) != (ctx.n, ctx.n_prime):
        raise InvalidNetworkError(f"network has {G.n} sources and {G.n_prime} sinks, "
                                  f"context needs {ctx.n} and {ctx.n_prime}")
    for pair in proper_pairs(ctx):
        bar = pair.complement(ctx)
        a = count_flows(G, pair.rows(ctx), pair.cols(ctx), limit=2)
        if is_feasible(ctx, pair, M):
            if a != 1 or count_flows(G, bar.rows(ctx), bar.cols(ctx), limit=2) != 1:
                return False
        elif a and count_flows(G, bar.rows(ctx), bar.cols(ctx), limit=1):
            return False
    return True


def _screen(ctx, M, G, pairs) -> bool:
    # unit-weight minors count flows on a planar network; cheap first filter
    Q = path_sums(G, {v: Fraction(1) for v in G.vertices})
    for pair, feasible in pairs:
        bar = pair.complement(ctx)
        a = minor(Q, pair.rows(ctx), pair.cols(ctx))
        if feasible:
            if a != 1 or minor(Q, bar.rows(ctx), bar.cols(ctx)) != 1:
                return False
        elif a and minor(Q, bar.rows(ctx), bar.cols(ctx)):
            return False
    return True


def _random_flow(G, out, inn, I, J, rng, tries=50):
    I, J = sorted(I), sorted(J)
    for _ in range(tries):
        used, paths = set(), []
        for k, (i, j) in enumerate(zip(I, J)):
            s, t = G.source(i), G.sink(j)
            blocked = used | {G.source(a) for a in I[k + 1:]} | {G.sink(b) for b in J[k + 1:]}
            ok, stack = {t}, [t]
            while stack:
                v = stack.pop()
                for u in inn[v]:
                    if u not in ok and u not in blocked:
                        ok.add(u)
                        stack.append(u)
            if s not in ok:
                break
            p, v = [s], s
            while v != t:
                v = rng.choice([u for u in out[v] if u in ok])
                p.append(v)
            used.update(p)
            paths.append(tuple(p))
        else:
            return Flow(tuple(paths), tuple(I), tuple(J))
    return None


def _lift(flow: Flow) -> Flow:
    """Image of a flow of G in the split network of G."""
    paths = []
    for p, i, j in zip(flow.paths, flow.I, flow.J):
        q = [hat_source(i)]
        for v in p:
            q.extend(split_names(v))
        q.append(hat_sink(j))
        paths.append(tuple(q))
    return Flow(tuple(paths), flow.I, flow.J)


def smooth(G: PlanarNetwork) -> PlanarNetwork:
    """Bypass inner vertices with one entering and one leaving edge where geometry allows."""
    terminals = set(G.sources) | set(G.sinks)
    edges = set(G.edges)
    pos = G.positions
    changed = True
    while changed:
        changed = False
        inn, out = {}, {}
        for a, b in edges:
            out.setdefault(a, []).append(b)
            inn.setdefault(b, []).append(a)
        for v in G.vertices:
            if v in terminals or len(inn.get(v, ())) != 1 or len(out.get(v, ())) != 1:
                continue
            a, b = inn[v][0], out[v][0]
            if (a, b) in edges:
                continue
            rest = edges - {(a, v), (v, b)}
            if any(edges_conflict(pos, (a, b), f) for f in rest):
                continue
            alive = {x for e in rest for x in e} | terminals
            if any(x not in (a, b, v) and _orient(pos[a], pos[b], pos[x]) == 0
                   and _on_segment(pos[a], pos[b], pos[x]) for x in alive):
                continue
            edges = rest | {(a, b)}
            changed = True
            break
    return G.with_edges(sorted(edges, key=lambda e: (G.vertices.index(e[0]), G.vertices.index(e[1]))))


def build_witness_network(ctx: Context, M: Matching, seed: int = 0, budget: int = 20000) -> PlanarNetwork:
    """Search for a network with the witness properties for ``M``.

    Raises ``InfeasibleMatchingError`` when no proper pair admits ``M`` and
    ``ConstructionFailure`` when ``budget`` random candidates are exhausted.
    """
    pairs = [(p, is_feasible(ctx, p, M)) for p in proper_pairs(ctx)]
    good = [p for p, ok in pairs if ok]
    if not good:
        raise InfeasibleMatchingError(f"{M} is feasible for no proper pair of {ctx}")
    rng = random.Random(seed)
    limit = (ctx.n + ctx.n_prime) ** 2
    grids = [(ctx.n + d, ctx.n_prime + d) for d in range(0, 4)]
    per_grid = -(-max(budget, 0) // len(grids))
    for R, K in grids:
        G = grid_network(ctx.n, ctx.n_prime, R, K)
        H = hat_transform(G)
        out, inn = G.out_edges(), G.in_edges()
        for _ in range(per_grid):
            pair = rng.choice(good)
            bar = pair.complement(ctx)
            phi = _random_flow(G, out, inn, pair.rows(ctx), pair.cols(ctx), rng)
            phi_prime = _random_flow(G, out, inn, bar.rows(ctx), bar.cols(ctx), rng)
            if phi is None or phi_prime is None:
                continue
            dec = decompose(DoubleFlow(ctx, pair, _lift(phi), _lift(phi_prime), H))
            if dec.circuits or Matching(frozenset(p.couple for p in dec.paths)) != M:
                continue
            cand = G.with_edges(sorted(phi.edges | phi_prime.edges))
            if not _screen(ctx, M, cand, pairs):
                continue
            cand = smooth(cand)
            if len(cand.vertices) >= limit:
                log.debug("candidate with %d vertices exceeds the size bound", len(cand.vertices))
                continue
            if verify_p1p2(ctx, M, cand):
                return cand
    raise ConstructionFailure(f"no witness network for {M} within {budget} candidates")


@dataclass(frozen=True)
class WitnessCertificate:
    matching: Matching
    network: PlanarNetwork
    matrix: list
    lhs_value: Fraction
    count_a: int
    count_b: int

    def to_dict(self) -> dict:
        return {
            "matching": str(self.matching),
            "network": network_to_dict(self.network, {v: Fraction(1) for v in self.network.vertices}),
            "matrix": [[fraction_str(x) for x in r] for r in self.matrix],
            "lhsValue": fraction_str(self.lhs_value),
            "countA": self.count_a,
            "countB": self.count_b,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WitnessCertificate":
        G, _ = network_from_dict(data["network"])
        return cls(
            Matching.parse(data["matching"]),
            G,
            [[Fraction(x) for x in r] for r in data["matrix"]],
            Fraction(data["lhsValue"]),
            int(data["countA"]),
            int(data["countB"]),
        )


def build_counterexample(ctx: Context, A: Family, B: Family, seed: int = 0,
                         budget: int = 20000) -> WitnessCertificate:
    verdict = check_universal(ctx, A, B)
    if verdict.universal:
        raise IsUniversalError("the pair of families is universal; there is no counterexample")
    M = verdict.witness
    count_a, count_b = verdict.counts[M]
    G = build_witness_network(ctx, M, seed=seed, budget=budget)
    Q = lindstrom_matrix(G)
    lhs = evaluate_inequality(Q, ctx, A, B)
    if lhs != count_a - count_b or not is_tnn(Q):
        raise ConstructionFailure(f"verified network for {M} did not reproduce the expected value "
                                  f"{count_a - count_b} (got {lhs})")
    return WitnessCertificate(M, G, Q, lhs, count_a, count_b)
