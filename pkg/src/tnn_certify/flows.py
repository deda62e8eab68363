"""Flows (vertex-disjoint path systems), flow-generated functions and
Lindström matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Context, Family
from .errors import DimensionError, SizeMismatchError
from .matrix import minor, shape
from .network import PlanarNetwork, check_weights, require_valid


@dataclass(frozen=True)
class Flow:
    """The k-th path runs from source ``I[k]`` to sink ``J[k]`` (both sorted)."""

    paths: tuple
    I: tuple
    J: tuple

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for p in self.paths for v in p)

    @property
    def edges(self) -> frozenset:
        return frozenset(e for p in self.paths for e in zip(p, p[1:]))

    def weight(self, w) -> Fraction:
        out = Fraction(1)
        for v in self.vertices:
            out *= w[v]
        return out


def _normalize(I, J):
    I, J = tuple(sorted(I)), tuple(sorted(J))
    if len(I) != len(J):
        raise SizeMismatchError(f"|I|={len(I)} but |J|={len(J)}")
    return I, J


def iter_flows(G: PlanarNetwork, I, J):
    """Yield the ``(I|J)``-flows of G depth first, in lexicographic vertex order."""
    I, J = _normalize(I, J)
    out, inn = G.out_edges(), G.in_edges()
    ends = [(G.source(i), G.sink(j)) for i, j in zip(I, J)]
    terminals = [v for pair in ends for v in pair]
    if len(set(terminals)) != len(terminals):
        return
    used = set()

    def reaching(t, blocked):
        seen, stack = {t}, [t]
        while stack:
            v = stack.pop()
            for u in inn[v]:
                if u not in seen and u not in blocked:
                    seen.add(u)
                    stack.append(u)
        return seen

    def paths(v, t, ok, trail):
        trail.append(v)
        if v == t:
            yield tuple(trail)
        else:
            for u in out[v]:
                if u in ok:
                    yield from paths(u, t, ok, trail)
        trail.pop()

    def extend(k, acc):
        if k == len(ends):
            yield Flow(tuple(acc), I, J)
            return
        s, t = ends[k]
        blocked = used | set(terminals[2 * k + 2:])
        ok = reaching(t, blocked)
        if s not in ok:
            return
        for p in paths(s, t, ok, []):
            used.update(p)
            acc.append(p)
            yield from extend(k + 1, acc)
            acc.pop()
            used.difference_update(p)

    yield from extend(0, [])


def enumerate_flows(G: PlanarNetwork, I, J) -> list:
    idx = G.index()
    return sorted(iter_flows(G, I, J), key=lambda f: [[idx[v] for v in p] for p in f.paths])


def count_flows(G: PlanarNetwork, I, J, limit=None) -> int:
    """Number of ``(I|J)``-flows, stopping early once ``limit`` is reached."""
    k = 0
    for _ in iter_flows(G, I, J):
        k += 1
        if limit is not None and k >= limit:
            break
    return k


def fg_function(G: PlanarNetwork, w, I, J) -> Fraction:
    """Sum over ``(I|J)``-flows of the product of vertex weights."""
    w = check_weights(G, w)
    return sum((f.weight(w) for f in iter_flows(G, I, J)), Fraction(0))


def path_sums(G: PlanarNetwork, w) -> list:
    """Matrix of weighted path sums ``s_i -> t_j`` by dynamic programming."""
    order = G.topological_order()
    inn = G.in_edges()
    Q = []
    for s in G.sources:
        acc = {v: Fraction(0) for v in G.vertices}
        for v in order:
            if v == s:
                acc[v] = w[v]
            else:
                total = sum((acc[u] for u in inn[v]), Fraction(0))
                acc[v] = total * w[v] if total else Fraction(0)
        Q.append([acc[t] for t in G.sinks])
    return Q


def lindstrom_matrix(G: PlanarNetwork, w=None) -> list:
    require_valid(G)
    return path_sums(G, check_weights(G, w))


def grid_network(n: int, n_prime: int, rows: int = None, cols: int = None) -> PlanarNetwork:
    """Down-right grid with sources on the left side and sinks on the bottom.

    The grid has ``rows x cols`` inner vertices (at least ``n x n'``); source
    ``s_i`` enters a row and sink ``t_j`` leaves a column, spread evenly with
    ``s_1`` at the top and ``t_1`` at the right.  Any ``(I|J)`` admits a flow,
    so generic weights give a totally positive matrix.
    """
    R, K = max(rows or n, n), max(cols or n_prime, n_prime)

    def spread(count, size, i):
        return size if count == 1 else size - (i - 1) * (size - 1) // (count - 1)

    src_row = {i: spread(n, R, i) for i in range(1, n + 1)}
    snk_col = {j: spread(n_prime, K, j) for j in range(1, n_prime + 1)}
    pos, edges = {}, []
    for i in range(1, n + 1):
        pos[f"s{i}"] = (0, src_row[i])
    for x in range(1, K + 1):
        for y in range(R, 0, -1):
            pos[f"g{x}_{y}"] = (x, y)
    for j in range(1, n_prime + 1):
        pos[f"t{j}"] = (snk_col[j], 0)
    for i in range(1, n + 1):
        edges.append((f"s{i}", f"g1_{src_row[i]}"))
    for x in range(1, K + 1):
        for y in range(1, R + 1):
            if x < K:
                edges.append((f"g{x}_{y}", f"g{x + 1}_{y}"))
            if y > 1:
                edges.append((f"g{x}_{y}", f"g{x}_{y - 1}"))
    for j in range(1, n_prime + 1):
        edges.append((f"g{snk_col[j]}_1", f"t{j}"))
    G = PlanarNetwork.build(pos, edges, [f"s{i}" for i in range(1, n + 1)],
                            [f"t{j}" for j in range(1, n_prime + 1)])
    return G


def staircase_network(n: int, n_prime: int) -> PlanarNetwork:
    """The ``n x n'`` grid used by :func:`random_tnn`."""
    return grid_network(n, n_prime)


def rng_for(seed: int) -> np.random.Generator:
    """Counter-based generator, so distinct seeds give independent reproducible streams."""
    return np.random.Generator(np.random.Philox(int(seed) % 2**64))


def random_tnn(n: int, n_prime: int, seed: int):
    """Random TNN matrix from integer weights in [1, 100] on the staircase network.

    Returns ``(matrix, network, weights)``.
    """
    G = staircase_network(n, n_prime)
    draws = rng_for(seed).integers(1, 101, size=len(G.vertices))
    w = {v: Fraction(int(x)) for v, x in zip(G.vertices, draws)}
    return path_sums(G, w), G, w


def evaluate_inequality(Q, ctx: Context, A: Family, B: Family) -> Fraction:
    """Positive part minus negative part of the quadratic form defined by A and B."""
    if shape(Q) != (ctx.n, ctx.n_prime):
        raise DimensionError(f"matrix is {shape(Q)[0]}x{shape(Q)[1]}, context needs {ctx.n}x{ctx.n_prime}")

    def term(fam):
        total = Fraction(0)
        for pair, mult in fam:
            bar = pair.complement(ctx)
            total += mult * minor(Q, pair.rows(ctx), pair.cols(ctx)) * minor(Q, bar.rows(ctx), bar.cols(ctx))
        return total

    return term(A) - term(B)
