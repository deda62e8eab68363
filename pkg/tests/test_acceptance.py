"""Acceptance criteria 1-8.  Each test records one PASS/FAIL line, printed
at the end of the pytest run (and directly when run as a script)."""

import random
import time
from collections import defaultdict
from fractions import Fraction
from itertools import combinations

import pytest

from conftest import example_ctx, example_families, small_networks
from oracles import all_perfect_matchings, as_label_set, brute_feasible, circle_sequence, noncrossing
from tnn_certify import (
    Family,
    Matching,
    ProperPair,
    Status,
    check_universal,
    exchange,
    feasible_matchings,
    iter_contexts,
    make_context,
    proper_pairs,
)
from tnn_certify.double_flow import PATH_CLASSES, decompose, iter_double_flows, matching_of, switch
from tnn_certify.flows import evaluate_inequality, fg_function, grid_network, lindstrom_matrix, random_tnn
from tnn_certify.matrix import index_pairs, is_tnn, minor
from tnn_certify.network import hat_transform, hat_weights
from tnn_certify.errors import ConstructionFailure
from tnn_certify.witness import build_counterexample

RESULTS = []

M1 = Matching.parse("{1-4, 2-3, 3'-4', 2'-5', 5-1'}")
M2 = Matching.parse("{1-4, 2-3, 2'-3', 4'-5', 5-1'}")
M3 = Matching.parse("{1-4, 2-3, 1'-4', 2'-3', 5-5'}")


class criterion:
    """Times the body, records a PASS/FAIL line and enforces the time limit."""

    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.note = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.limit
        why = "" if ok else (f" ({exc_type.__name__}: {exc})" if exc_type else f" (over {self.limit}s)")
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {self.number}: {self.title} - {elapsed:.2f}s{self.note}{why}"
        RESULTS.append(line)
        print(line)
        if exc_type is None and not ok:
            pytest.fail(f"criterion {self.number} took {elapsed:.1f}s, limit {self.limit}s")
        return False


def test_criterion_1_golden_example():
    with criterion(1, "golden example matchings and verdict", 1.0):
        ctx = example_ctx()
        A, B = example_families()
        assert feasible_matchings(ctx, ProperPair.of([1, 2], [4, 5])) == [M1]
        assert set(feasible_matchings(ctx, ProperPair.of([1, 2], [3, 4]))) == {M2, M3}
        assert len(feasible_matchings(ctx, ProperPair.of([1, 2], [3, 4]))) == 2
        assert set(feasible_matchings(ctx, ProperPair.of([1, 2], [3, 5]))) == {M1, M2}
        assert len(feasible_matchings(ctx, ProperPair.of([1, 2], [3, 5]))) == 2
        assert check_universal(ctx, A, B).status is Status.UNIVERSAL


def test_criterion_2_swapped_refutation():
    with criterion(2, "swapped families refuted with value -1", 60.0) as c:
        ctx = example_ctx()
        A, B = example_families()
        verdict = check_universal(ctx, B, A)
        assert verdict.status is Status.NOT_UNIVERSAL and verdict.witness == M3
        try:
            cert = build_counterexample(ctx, B, A)
        except ConstructionFailure as exc:
            c.note = f" [construction failure reported: {exc}]"
            return
        assert cert.matching == M3
        assert cert.matrix == lindstrom_matrix(cert.network)
        assert is_tnn(cert.matrix)
        assert evaluate_inequality(cert.matrix, ctx, B, A) == -1
        assert cert.lhs_value == -1
        c.note = f" [{len(cert.network.vertices)}-vertex network]"


def test_criterion_3_classical_2x2():
    with criterion(3, "2x2 determinant inequality, 1000 samples", 5.0):
        ctx = make_context(2, 2, [], [1, 2], [], [1, 2])
        A = Family.of([ProperPair.of([1], [1])])
        B = Family.of([ProperPair.of([1], [2])])
        assert check_universal(ctx, A, B).universal
        for seed in range(1000):
            Q, _, _ = random_tnn(2, 2, seed)
            value = evaluate_inequality(Q, ctx, A, B)
            assert value == Q[0][0] * Q[1][1] - Q[0][1] * Q[1][0]
            assert value >= 0


def test_criterion_4_lindstrom_oracle():
    with criterion(4, "minor equals flow sum on 200 random networks", 120.0) as c:
        checked = 0
        for G, w in small_networks(200, 2024, max_vertices=12):
            assert len(G.vertices) <= 12
            Q = lindstrom_matrix(G, w)
            for I, J in index_pairs(G.n, G.n_prime, 3):
                assert minor(Q, I, J) == fg_function(G, w, I, J)
                checked += 1
        c.note = f" [{checked} (G, I, J) triples]"


def test_criterion_5_feasible_matching_oracle():
    with criterion(5, "feasible matchings equal brute-force filter, |Y|+|Y'| <= 10", 120.0) as c:
        contexts = []
        for m in range(1, 10):
            for mp in range(1, 11 - m):
                if (m - mp) % 2:
                    continue
                k = abs(m - mp) // 2
                if m >= mp:
                    contexts.append(make_context(m, mp + k, [], range(1, m + 1), range(mp + 1, mp + k + 1),
                                                 range(1, mp + 1)))
                else:
                    contexts.append(make_context(m + k, mp, range(m + 1, m + k + 1), range(1, m + 1), [],
                                                 range(1, mp + 1)))
        # non-canonical labelings: gaps and X on both sides
        for n in range(1, 5):
            for n_prime in range(1, 5):
                contexts.extend(iter_contexts(n, n_prime))
        planar_cache = {}
        pairs = 0
        for ctx in contexts:
            key = (tuple(sorted(ctx.Y)), tuple(sorted(ctx.Y_prime)))
            if key not in planar_cache:
                seq = circle_sequence(ctx.Y, ctx.Y_prime)
                planar_cache[key] = [m for m in all_perfect_matchings(seq) if noncrossing(m, seq)]
            for pair in proper_pairs(ctx):
                got = {as_label_set(M) for M in feasible_matchings(ctx, pair)}
                assert got == brute_feasible(ctx.Y, ctx.Y_prime, pair.C, pair.C_prime, planar_cache[key])
                pairs += 1
        c.note = f" [{len(contexts)} contexts, {pairs} proper pairs]"


def _double_flow_instances(count=50, seed=77):
    """Random small networks plus the dense 2x2 .. 3x3 grids."""
    nets = small_networks(count, seed, max_vertices=10)
    rng = random.Random(seed)
    for n, n_prime in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        G = grid_network(n, n_prime)
        nets.append((G, {v: Fraction(rng.randint(1, 5)) for v in G.vertices}))
    return [(G, w, hat_transform(G), list(iter_contexts(G.n, G.n_prime))) for G, w in nets]


def test_criterion_6_double_flow_laws():
    with criterion(6, "double-flow laws on 54 split networks", 120.0) as c:
        total = 0
        for G, w, H, ctxs in _double_flow_instances():
            for ctx in ctxs:
                for pair in proper_pairs(ctx):
                    feasible = set(feasible_matchings(ctx, pair))
                    for df in iter_double_flows(ctx, pair, H):
                        total += 1
                        dec = decompose(df)
                        assert len(dec.paths) == (ctx.m + ctx.m_prime) // 2
                        assert all(p.kind in PATH_CLASSES for p in dec.paths)
                        M = matching_of(df)
                        assert M in feasible
                        couples = sorted(M.couples)
                        for r in range(len(couples) + 1):
                            for M0 in combinations(couples, r):
                                moved = switch(df, M0)
                                assert moved.edge_multiset() == df.edge_multiset()
                                assert moved.pair == exchange(ctx, pair, M, M0)
                                assert switch(moved, M0) == df
        assert total > 0
        c.note = f" [{total} double flows]"


def test_criterion_7_regrouping():
    with criterion(7, "double-flow sums grouped by matching give minor products", 120.0) as c:
        pairs = 0
        for G, w, H, ctxs in _double_flow_instances():
            sw = hat_weights(G, w)
            Q = lindstrom_matrix(G, w)
            for ctx in ctxs:
                for pair in proper_pairs(ctx):
                    groups = defaultdict(Fraction)
                    for df in iter_double_flows(ctx, pair, H):
                        groups[matching_of(df)] += df.weight(sw)
                    bar = pair.complement(ctx)
                    expected = minor(Q, pair.rows(ctx), pair.cols(ctx)) * minor(Q, bar.rows(ctx), bar.cols(ctx))
                    assert sum(groups.values(), Fraction(0)) == expected
                    pairs += 1
        c.note = f" [{pairs} (network, context, pair) checks]"


def _random_instance(rng):
    """A random (ctx, A, B); about half are built to satisfy the counting criterion."""
    while True:
        m, mp = rng.randint(1, 5), rng.randint(1, 5)
        if (m + mp) % 2 == 0 and m + mp <= 8:
            break
    k = abs(m - mp) // 2
    extra = rng.randint(0, 1)
    kx, kxp = (extra, extra + k) if m >= mp else (extra + k, extra)
    ctx = make_context(m + kx, mp + kxp, range(m + 1, m + kx + 1), range(1, m + 1),
                       range(mp + 1, mp + kxp + 1), range(1, mp + 1))
    pairs = proper_pairs(ctx)
    B = Family.of([(rng.choice(pairs), rng.randint(1, 2)) for _ in range(rng.randint(1, 2))])
    if rng.random() < 0.5:
        # cover every matching of B by an exchange of the pair it came from
        entries = []
        for pair, mult in B:
            for M in feasible_matchings(ctx, pair):
                couples = sorted(M.couples)
                M0 = [c for c in couples if rng.random() < 0.5]
                entries.append((exchange(ctx, pair, M, M0), mult))
        A = Family.of(entries)
    else:
        A = Family.of([(rng.choice(pairs), 1) for _ in range(rng.randint(1, 3))])
    return ctx, A, B


def test_criterion_8_monte_carlo_sweep():
    with criterion(8, "Monte Carlo soundness sweep over 50 instances", 600.0) as c:
        rng = random.Random(8)
        universal = refuted = failures = 0
        for t in range(50):
            ctx, A, B = _random_instance(rng)
            verdict = check_universal(ctx, A, B)
            if verdict.universal:
                universal += 1
                for s in range(200):
                    Q, _, _ = random_tnn(ctx.n, ctx.n_prime, 1000 * t + s)
                    assert evaluate_inequality(Q, ctx, A, B) >= 0, f"internal bug: instance {t}, seed {s}"
            else:
                try:
                    cert = build_counterexample(ctx, A, B, seed=t)
                except ConstructionFailure:
                    failures += 1
                    continue
                refuted += 1
                assert is_tnn(cert.matrix)
                assert evaluate_inequality(cert.matrix, ctx, A, B) < 0
        c.note = f" [{universal} universal, {refuted} refuted by certificate, {failures} construction failures]"


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except BaseException:
                pass
