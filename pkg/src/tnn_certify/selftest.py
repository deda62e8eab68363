"""Randomized self-test battery behind ``tnn-certify verify-lindstrom``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import iter_contexts, proper_pairs
from .double_flow import decompose, iter_double_flows, matching_of, switch
from .flows import count_flows, fg_function, lindstrom_matrix
from .generate import random_network
from .matrix import index_pairs, minor
from .network import dump_network, hat_law_violations, hat_transform, validate_network


@dataclass
class BatteryReport:
    networks: int = 0
    triples: int = 0
    hat_checks: int = 0
    double_flows: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {
            "networks": self.networks,
            "triplesChecked": self.triples,
            "hatChecks": self.hat_checks,
            "doubleFlowsChecked": self.double_flows,
            "failures": self.failures,
        }


def _fail(report, kind, detail, G, w=None):
    report.failures.append({"kind": kind, "detail": detail, "network": dump_network(G, w)})


def run_battery(trials: int = 50, seed: int = 0, max_vertices: int = 12,
                negative: bool = False, double_flow_cap: int = 200) -> BatteryReport:
    """Check Lindström's identity, split-network laws and double-flow laws on random networks.

    ``negative`` negates one computed minor so that the harness itself can
    be shown to notice a wrong determinant.
    """
    rng = random.Random(seed)
    report = BatteryReport()
    flipped = not negative
    while report.networks < trials:
        n = rng.randint(1, 3)
        n_prime = rng.randint(1, 3)
        if n + n_prime > max_vertices:
            continue
        G = random_network(rng, n, n_prime, rng.randint(0, max_vertices - n - n_prime))
        if validate_network(G):
            _fail(report, "generator", "; ".join(validate_network(G)), G)
            report.networks += 1
            continue
        report.networks += 1
        w = {v: Fraction(rng.randint(0, 6), rng.randint(1, 3)) for v in G.vertices}
        Q = lindstrom_matrix(G, w)
        for I, J in index_pairs(n, n_prime, 3):
            report.triples += 1
            d = minor(Q, I, J)
            if not flipped and d != 0:
                d, flipped = -d, True
            f = fg_function(G, w, I, J)
            if d != f:
                _fail(report, "lindstrom", f"minor({I}|{J}) = {d} but flow sum = {f}", G, w)

        H = hat_transform(G)
        report.hat_checks += 1
        problems = validate_network(H, redundancy=False) + hat_law_violations(H)
        if len(H.vertices) != 2 * len(G.vertices) + n + n_prime or \
                len(H.edges) != len(G.edges) + len(G.vertices) + n + n_prime:
            problems.append("vertex or edge count of the split network is off")
        for I, J in index_pairs(n, n_prime, 3):
            if count_flows(G, I, J) != count_flows(H, I, J):
                problems.append(f"flow counts differ for ({I}|{J})")
        for p in problems:
            _fail(report, "hat", p, G, w)

        contexts = list(iter_contexts(n, n_prime))
        if not contexts:
            continue
        ctx = rng.choice(contexts)
        seen = 0
        for pair in proper_pairs(ctx):
            for df in iter_double_flows(ctx, pair, H):
                seen += 1
                if seen > double_flow_cap:
                    break
                report.double_flows += 1
                dec = decompose(df)
                if len(dec.paths) != (ctx.m + ctx.m_prime) // 2:
                    _fail(report, "double-flow", f"{len(dec.paths)} paths for {pair}", G, w)
                M = matching_of(df)
                couples = sorted(M.couples)
                M0 = [c for c in couples if rng.random() < 0.5]
                back = switch(switch(df, M0), M0)
                moved = switch(df, M0)
                if moved.edge_multiset() != df.edge_multiset():
                    _fail(report, "double-flow", f"switch changed the edge multiset for {pair}", G, w)
                if (back.phi, back.phi_prime, back.pair) != (df.phi, df.phi_prime, df.pair):
                    _fail(report, "double-flow", f"switch is not an involution for {pair}", G, w)
    return report

