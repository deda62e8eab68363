import json

import pytest
from hypothesis import given, settings, strategies as st

from conftest import example_ctx, example_families
from tnn_certify import Family, is_feasible, Matching, check_universal, iter_contexts, make_context, proper_pairs
from tnn_certify.errors import InfeasibleMatchingError, InvalidNetworkError, IsUniversalError
from tnn_certify.flows import count_flows, evaluate_inequality, fg_function, lindstrom_matrix
from tnn_certify.matrix import is_tnn
from tnn_certify.network import PlanarNetwork, validate_network
from tnn_certify.witness import (
    WitnessCertificate,
    build_counterexample,
    build_witness_network,
    verify_p1p2,
)

M3 = Matching.parse("{1-4, 2-3, 1'-4', 2'-3', 5-5'}")


def test_single_edge_network_is_a_witness():
    ctx = make_context(1, 1, [], [1], [], [1])
    G = PlanarNetwork.build({"s1": (0, 0), "t1": (1, 0)}, [("s1", "t1")], ["s1"], ["t1"])
    assert verify_p1p2(ctx, Matching.parse("{1-1'}"), G)


def test_edgeless_network_fails():
    ctx = make_context(1, 1, [], [1], [], [1])
    G = PlanarNetwork.build({"s1": (0, 0), "t1": (1, 0)}, [], ["s1"], ["t1"])
    assert not verify_p1p2(ctx, Matching.parse("{1-1'}"), G)


def test_verify_checks_terminal_counts():
    ctx = make_context(2, 2, [], [1, 2], [], [1, 2])
    G = PlanarNetwork.build({"s1": (0, 0), "t1": (1, 0)}, [("s1", "t1")], ["s1"], ["t1"])
    with pytest.raises(InvalidNetworkError):
        verify_p1p2(ctx, Matching.parse("{1-1', 2-2'}"), G)


def test_four_by_four_matching():
    ctx = make_context(4, 4, [], [1, 2, 3, 4], [], [1, 2, 3, 4])
    M = Matching.parse("{1-4, 2-3, 1'-2', 3'-4'}")
    G = build_witness_network(ctx, M)
    assert validate_network(G) == []
    assert verify_p1p2(ctx, M, G)
    assert count_flows(G, [2, 4], [2, 3]) == 1
    assert count_flows(G, [1, 3], [1, 4]) == 1
    assert len(G.vertices) < 8 ** 2


def test_example_witness_network_and_unit_counts():
    ctx = example_ctx()
    G = build_witness_network(ctx, M3)
    assert len(G.vertices) < 10 ** 2
    assert verify_p1p2(ctx, M3, G)
    for pair in proper_pairs(ctx):
        bar = pair.complement(ctx)
        product = fg_function(G, None, pair.rows(ctx), pair.cols(ctx)) * \
            fg_function(G, None, bar.rows(ctx), bar.cols(ctx))
        assert product == (1 if is_feasible(ctx, pair, M3) else 0)


def test_infeasible_matching():
    ctx = make_context(3, 2, [], [1, 2, 3], [2], [1])
    with pytest.raises(InfeasibleMatchingError):
        build_witness_network(ctx, Matching.parse("{1-3, 2-1'}"))


def test_counterexample_for_swapped_example():
    ctx = example_ctx()
    A, B = example_families()
    cert = build_counterexample(ctx, B, A)
    assert cert.matching == M3
    assert (cert.count_a, cert.count_b) == (0, 1)
    assert cert.lhs_value == -1
    assert cert.matrix == lindstrom_matrix(cert.network)
    assert is_tnn(cert.matrix)
    assert evaluate_inequality(cert.matrix, ctx, B, A) == -1
    back = WitnessCertificate.from_dict(json.loads(json.dumps(cert.to_dict())))
    assert back == cert
    with pytest.raises(IsUniversalError):
        build_counterexample(ctx, A, B)


@st.composite
def refutable_instance(draw):
    n, n_prime = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    ctxs = list(iter_contexts(n, n_prime)) or list(iter_contexts(2, 2))
    ctx = draw(st.sampled_from(ctxs))
    pairs = proper_pairs(ctx)
    A = Family.of(draw(st.lists(st.sampled_from(pairs), max_size=2)))
    B = Family.of(draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=2)))
    return ctx, A, B


@settings(max_examples=25)
@given(refutable_instance(), st.integers(0, 100))
def test_certificates_are_sound(inst, seed):
    ctx, A, B = inst
    verdict = check_universal(ctx, A, B)
    if verdict.universal:
        with pytest.raises(IsUniversalError):
            build_counterexample(ctx, A, B, seed=seed)
        return
    cert = build_counterexample(ctx, A, B, seed=seed)
    assert cert.lhs_value < 0
    assert cert.lhs_value == cert.count_a - cert.count_b
    assert is_tnn(cert.matrix)
    assert evaluate_inequality(lindstrom_matrix(cert.network), ctx, A, B) == cert.lhs_value
    assert len(cert.network.vertices) < (ctx.n + ctx.n_prime) ** 2
