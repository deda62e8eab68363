import random
from collections import defaultdict
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import small_networks
from tnn_certify import Matching, ProperPair, exchange, feasible_matchings, iter_contexts, make_context, proper_pairs
from tnn_certify.double_flow import (
    PATH_CLASSES,
    DoubleFlow,
    decompose,
    iter_double_flows,
    matching_of,
    orientation_alternates,
    switch,
)
from tnn_certify.errors import NotSubsetError, StructureError
from tnn_certify.flows import grid_network, lindstrom_matrix
from tnn_certify.matrix import minor
from tnn_certify.network import hat_sink, hat_source, hat_transform, hat_weights


def mixed_setting():
    ctx = make_context(3, 2, [], [1, 2, 3], [1], [2])
    pair = ProperPair.of([1, 3], [2])
    M = Matching.parse("{2-3, 1-2'}")
    H = hat_transform(grid_network(3, 2, 3, 3))
    dfs = [df for df in iter_double_flows(ctx, pair, H) if matching_of(df) == M]
    return ctx, pair, M, dfs


def endpoint_vertex(H, e):
    return hat_source(e.index) if e.side == 0 else hat_sink(e.index)


def test_mixed_setting_decomposition():
    ctx, pair, M, dfs = mixed_setting()
    assert dfs
    for df in dfs:
        dec = decompose(df)
        kinds = sorted((str(p.couple), p.kind) for p in dec.paths)
        assert kinds == [("1-2'", "CC'"), ("2-3", "CCbar")]


def test_mixed_setting_switch():
    ctx, pair, M, dfs = mixed_setting()
    two_three = [c for c in M.couples if str(c) == "2-3"]
    for df in dfs:
        moved = switch(df, two_three)
        assert moved.pair == ProperPair.of([1, 2], [2])
        assert matching_of(moved) == M
        assert moved.edge_multiset() == df.edge_multiset()
        assert switch(df, []) == df
        assert switch(moved, two_three) == df


def test_switch_rejects_foreign_couples():
    ctx, pair, M, dfs = mixed_setting()
    other = Matching.parse("{1-2, 3-2'}")
    with pytest.raises(NotSubsetError):
        switch(dfs[0], other.couples)


def test_single_exchange_path():
    # X={2}, X'={2'} carried by both flows; one path joins 1 and 1'
    ctx = make_context(2, 2, [2], [1], [2], [1])
    H = hat_transform(grid_network(2, 2))
    dfs = list(iter_double_flows(ctx, ProperPair.of([], []), H))
    assert dfs
    for df in dfs:
        dec = decompose(df)
        assert len(dec.paths) == 1
        assert dec.paths[0].kind == "CbarCbar'"
        assert str(matching_of(df)) == "{1-1'}"


def test_decompose_needs_split_network():
    ctx, pair, M, dfs = mixed_setting()
    G = grid_network(3, 2, 3, 3)
    df = dfs[0]
    with pytest.raises(StructureError):
        decompose(DoubleFlow(df.ctx, df.pair, df.phi, df.phi_prime, G))


def check_all_laws(ctx, H):
    """Exhaustive check of the double-flow laws on one host; returns the count checked."""
    checked = 0
    for pair in proper_pairs(ctx):
        feasible = set(feasible_matchings(ctx, pair))
        for df in iter_double_flows(ctx, pair, H):
            checked += 1
            dec = decompose(df)
            assert len(dec.paths) == (ctx.m + ctx.m_prime) // 2
            assert sorted(dec.edges()) == sorted(df.phi.edges ^ df.phi_prime.edges)
            assert all(p.kind in PATH_CLASSES for p in dec.paths)
            for p in dec.paths:
                assert orientation_alternates(p, endpoint_vertex(H, p.start))
            M = matching_of(df)
            assert M in feasible
            couples = sorted(M.couples)
            for r in range(len(couples) + 1):
                for M0 in combinations(couples, r):
                    moved = switch(df, M0)
                    assert moved.edge_multiset() == df.edge_multiset()
                    assert matching_of(moved) == M
                    assert moved.pair == exchange(ctx, pair, M, M0)
                    assert switch(moved, M0) == df
    return checked


@given(st.integers(0, 10**6))
def test_double_flow_laws_random(seed):
    (G, _), = small_networks(1, seed, max_vertices=8)
    H = hat_transform(G)
    ctxs = list(iter_contexts(G.n, G.n_prime))
    if not ctxs:
        return
    ctx = random.Random(seed).choice(ctxs)
    check_all_laws(ctx, H)


@pytest.mark.parametrize("seed", range(5))
def test_regrouping_by_matching(seed):
    (G, w), = small_networks(1, 100 + seed, max_vertices=8)
    H = hat_transform(G)
    sw = hat_weights(G, w)
    Q = lindstrom_matrix(G, w)
    for ctx in iter_contexts(G.n, G.n_prime):
        for pair in proper_pairs(ctx):
            groups = defaultdict(Fraction)
            for df in iter_double_flows(ctx, pair, H):
                groups[matching_of(df)] += df.weight(sw)
            bar = pair.complement(ctx)
            expected = minor(Q, pair.rows(ctx), pair.cols(ctx)) * minor(Q, bar.rows(ctx), bar.cols(ctx))
            assert sum(groups.values(), Fraction(0)) == expected
            assert set(groups) <= set(feasible_matchings(ctx, pair))
