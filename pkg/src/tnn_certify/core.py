"""Contexts, proper pairs, feasible matchings and the universality test.

Row indices of the exchangeable set ``Y`` sit on the lower half of a circle
in increasing order from left to right, column indices of ``Y'`` on the
upper half, also increasing from left to right.  Walking around the circle
therefore visits ``y_1 < ... < y_m`` and then ``y'_{m'} > ... > y'_1``; every
noncrossing test in this module is taken with respect to that cyclic order.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

from .errors import (
    BalanceError,
    EmptyYError,
    NotProperError,
    NotSubsetError,
    OverlapError,
    RangeError,
)


class Side(enum.IntEnum):
    ROW = 0
    COL = 1


class GroundElement(NamedTuple):
    side: Side
    index: int

    def __str__(self):
        return f"{self.index}'" if self.side == Side.COL else str(self.index)

    @property
    def circ_key(self):
        """Position key along the circle: rows ascending, then columns descending."""
        return (0, self.index) if self.side == Side.ROW else (1, -self.index)


def row(i: int) -> GroundElement:
    return GroundElement(Side.ROW, i)


def col(j: int) -> GroundElement:
    return GroundElement(Side.COL, j)


class Couple(NamedTuple):
    """Unordered pair of ground elements, stored with ``a`` first on the circle."""

    a: GroundElement
    b: GroundElement

    @classmethod
    def of(cls, p: GroundElement, q: GroundElement) -> "Couple":
        if p == q:
            raise ValueError(f"a couple needs two distinct elements, got {p} twice")
        return cls(p, q) if p.circ_key < q.circ_key else cls(q, p)

    def __str__(self):
        p, q = self.a, self.b
        if p.side == q.side:
            p, q = sorted((p, q), key=lambda e: e.index)
        elif p.side == Side.COL:
            p, q = q, p
        return f"{p}-{q}"


_ELEMENT_RE = re.compile(r"^\s*(\d+)\s*('?)\s*$")


def parse_element(text: str) -> GroundElement:
    m = _ELEMENT_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse ground element {text!r}")
    return GroundElement(Side.COL if m.group(2) else Side.ROW, int(m.group(1)))


@dataclass(frozen=True)
class Matching:
    couples: frozenset

    def __post_init__(self):
        seen = set()
        for c in self.couples:
            for e in c:
                if e in seen:
                    raise ValueError(f"element {e} appears in two couples")
                seen.add(e)

    @classmethod
    def of(cls, pairs: Iterable) -> "Matching":
        return cls(frozenset(Couple.of(p, q) for p, q in pairs))

    @classmethod
    def parse(cls, text: str) -> "Matching":
        """Parse ``"{1-4, 2-3, 3'-4', 5-1'}"`` style notation."""
        body = text.strip().strip("{}").strip()
        if not body:
            return cls(frozenset())
        pairs = []
        for chunk in body.split(","):
            left, sep, right = chunk.partition("-")
            if not sep:
                raise ValueError(f"couple {chunk.strip()!r} lacks a '-' separator")
            pairs.append((parse_element(left), parse_element(right)))
        return cls.of(pairs)

    @property
    def elements(self) -> frozenset:
        return frozenset(e for c in self.couples for e in c)

    def sort_key(self):
        return tuple(sorted((c.a.circ_key, c.b.circ_key) for c in self.couples))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __iter__(self):
        return iter(sorted(self.couples, key=lambda c: (c.a.circ_key, c.b.circ_key)))

    def __len__(self):
        return len(self.couples)

    def display_order(self) -> list:
        """Row-row couples by smaller index, column-column couples by larger
        index, then mixed couples by row index."""

        def key(c: Couple):
            sides = {c.a.side, c.b.side}
            lo, hi = sorted((c.a.index, c.b.index))
            if sides == {Side.ROW}:
                return (0, lo, hi)
            if sides == {Side.COL}:
                return (1, hi, lo)
            r = c.a if c.a.side == Side.ROW else c.b
            k = c.b if r is c.a else c.a
            return (2, r.index, k.index)

        return sorted(self.couples, key=key)

    def __str__(self):
        return "{" + ", ".join(str(c) for c in self.display_order()) + "}"


def crosses(c1: Couple, c2: Couple) -> bool:
    """True when the chords of two couples intersect inside the circle."""
    lo, hi = c1.a.circ_key, c1.b.circ_key
    inside = [lo < e.circ_key < hi for e in c2]
    return inside[0] != inside[1]


@dataclass(frozen=True)
class Context:
    n: int
    n_prime: int
    X: frozenset
    Y: frozenset
    X_prime: frozenset
    Y_prime: frozenset

    @property
    def m(self):
        return len(self.Y)

    @property
    def m_prime(self):
        return len(self.Y_prime)

    def ground(self) -> list:
        """Elements of ``Y`` and ``Y'`` in cyclic order around the circle."""
        return [row(i) for i in sorted(self.Y)] + [col(j) for j in sorted(self.Y_prime, reverse=True)]

    def __str__(self):
        def fmt(s, prime=""):
            return "{" + ",".join(f"{i}{prime}" for i in sorted(s)) + "}"

        return (f"n={self.n}, n'={self.n_prime}, X={fmt(self.X)}, Y={fmt(self.Y)}, "
                f"X'={fmt(self.X_prime, chr(39))}, Y'={fmt(self.Y_prime, chr(39))}")


def make_context(n, n_prime, X, Y, X_prime, Y_prime) -> Context:
    X, Y, X_prime, Y_prime = (frozenset(int(i) for i in s) for s in (X, Y, X_prime, Y_prime))
    if n < 1 or n_prime < 1:
        raise RangeError(f"matrix dimensions must be positive, got {n}x{n_prime}")
    if not Y or not Y_prime:
        raise EmptyYError("Y and Y' must both be nonempty")
    for name, s, bound in (("X", X, n), ("Y", Y, n), ("X'", X_prime, n_prime), ("Y'", Y_prime, n_prime)):
        bad = sorted(i for i in s if not 1 <= i <= bound)
        if bad:
            raise RangeError(f"{name} has indices outside [1, {bound}]: {bad}")
    if X & Y:
        raise OverlapError(f"X and Y share {sorted(X & Y)}")
    if X_prime & Y_prime:
        raise OverlapError(f"X' and Y' share {sorted(X_prime & Y_prime)}")
    if 2 * len(X) + len(Y) != 2 * len(X_prime) + len(Y_prime):
        raise BalanceError(
            f"2|X|+|Y| = {2 * len(X) + len(Y)} differs from 2|X'|+|Y'| = {2 * len(X_prime) + len(Y_prime)}")
    return Context(n, n_prime, X, Y, X_prime, Y_prime)


def iter_contexts(n: int, n_prime: int):
    """Every valid context for an ``n x n'`` matrix."""
    from itertools import product

    for rs in product(range(3), repeat=n):
        X = [i for i, r in enumerate(rs, 1) if r == 1]
        Y = [i for i, r in enumerate(rs, 1) if r == 2]
        if not Y:
            continue
        for cs in product(range(3), repeat=n_prime):
            Xp = [j for j, c in enumerate(cs, 1) if c == 1]
            Yp = [j for j, c in enumerate(cs, 1) if c == 2]
            if Yp and 2 * len(X) + len(Y) == 2 * len(Xp) + len(Yp):
                yield make_context(n, n_prime, X, Y, Xp, Yp)


@dataclass(frozen=True)
class ProperPair:
    C: frozenset
    C_prime: frozenset

    @classmethod
    def of(cls, C, C_prime) -> "ProperPair":
        return cls(frozenset(C), frozenset(C_prime))

    def complement(self, ctx: Context) -> "ProperPair":
        return ProperPair(ctx.Y - self.C, ctx.Y_prime - self.C_prime)

    def rows(self, ctx: Context) -> frozenset:
        """Row set ``X ∪ C`` of the first minor."""
        return ctx.X | self.C

    def cols(self, ctx: Context) -> frozenset:
        return ctx.X_prime | self.C_prime

    def white(self) -> frozenset:
        return frozenset(row(i) for i in self.C) | frozenset(col(j) for j in self.C_prime)

    def sort_key(self):
        return (len(self.C), sorted(self.C), sorted(self.C_prime))

    def __str__(self):
        c = ",".join(str(i) for i in sorted(self.C))
        cp = ",".join(f"{j}'" for j in sorted(self.C_prime))
        return f"({{{c}}}|{{{cp}}})"


def _check_subsets(ctx: Context, C, C_prime):
    if not set(C) <= ctx.Y:
        raise RangeError(f"C={sorted(C)} is not a subset of Y={sorted(ctx.Y)}")
    if not set(C_prime) <= ctx.Y_prime:
        raise RangeError(f"C'={sorted(C_prime)} is not a subset of Y'={sorted(ctx.Y_prime)}")


def is_proper(ctx: Context, C, C_prime) -> bool:
    C, C_prime = frozenset(C), frozenset(C_prime)
    _check_subsets(ctx, C, C_prime)
    first = len(ctx.X | C) == len(ctx.X_prime | C_prime)
    second = len(ctx.X | (ctx.Y - C)) == len(ctx.X_prime | (ctx.Y_prime - C_prime))
    return first and second


def proper_pairs(ctx: Context) -> list:
    """All proper pairs, ordered by ``|C|`` and then lexicographically."""
    diff, rem = divmod(len(ctx.Y) - len(ctx.Y_prime), 2)
    assert rem == 0, "balanced contexts have |Y|+|Y'| even"
    ys, yps = sorted(ctx.Y), sorted(ctx.Y_prime)
    out = []
    for k in range(len(ys) + 1):
        kp = k - diff
        if not 0 <= kp <= len(yps):
            continue
        for C in combinations(ys, k):
            for Cp in combinations(yps, kp):
                out.append(ProperPair(frozenset(C), frozenset(Cp)))
    return out


def _require_proper(ctx: Context, pair: ProperPair):
    if not is_proper(ctx, pair.C, pair.C_prime):
        raise NotProperError(f"{pair} is not proper for {ctx}")


def couple_admissible(c: Couple, white: frozenset) -> bool:
    """Color rule: two-colored couples stay in one half, one-colored couples cross halves."""
    same_color = (c.a in white) == (c.b in white)
    same_half = c.a.side == c.b.side
    return same_color != same_half


def feasible_matchings(ctx: Context, pair: ProperPair) -> list:
    _require_proper(ctx, pair)
    seq = ctx.ground()
    white = pair.white()
    assert len(seq) % 2 == 0
    memo = {}

    def solve(lo, hi):
        # noncrossing matchings of seq[lo:hi]; seq[lo] pairs with seq[j], splitting the arc in two
        if lo >= hi:
            return [()]
        if (lo, hi) in memo:
            return memo[lo, hi]
        res = []
        for j in range(lo + 1, hi, 2):
            c = Couple.of(seq[lo], seq[j])
            if not couple_admissible(c, white):
                continue
            inner = solve(lo + 1, j)
            if not inner:
                continue
            outer = solve(j + 1, hi)
            for a in inner:
                for b in outer:
                    res.append((c,) + a + b)
        memo[lo, hi] = res
        return res

    return sorted(Matching(frozenset(cs)) for cs in solve(0, len(seq)))


def is_feasible(ctx: Context, pair: ProperPair, M: Matching) -> bool:
    """Direct membership test for ``M`` in the feasible matchings of ``pair``."""
    if M.elements != frozenset(ctx.ground()) or len(M.couples) * 2 != len(ctx.ground()):
        return False
    white = pair.white()
    cs = list(M.couples)
    if not all(couple_admissible(c, white) for c in cs):
        return False
    return not any(crosses(cs[i], cs[j]) for i in range(len(cs)) for j in range(i + 1, len(cs)))


def exchange(ctx: Context, pair: ProperPair, M: Matching, M0) -> ProperPair:
    M0 = frozenset(M0.couples if isinstance(M0, Matching) else M0)
    if not M0 <= M.couples:
        raise NotSubsetError("M0 must be a subset of the matching")
    touched = frozenset(e for c in M0 for e in c)
    rows_ = frozenset(e.index for e in touched if e.side == Side.ROW)
    cols_ = frozenset(e.index for e in touched if e.side == Side.COL)
    return ProperPair(pair.C ^ rows_, pair.C_prime ^ cols_)


@dataclass(frozen=True)
class Family:
    """Multiset of proper pairs, kept as ``(pair, multiplicity)`` entries."""

    entries: tuple = ()

    @classmethod
    def of(cls, pairs: Iterable) -> "Family":
        counts = Counter()
        order = []
        for item in pairs:
            if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], ProperPair):
                p, mult = item
            else:
                p, mult = item, 1
            if mult < 1:
                raise ValueError(f"multiplicity must be positive, got {mult}")
            if p not in counts:
                order.append(p)
            counts[p] += mult
        return cls(tuple((p, counts[p]) for p in order))

    def __iter__(self) -> Iterator:
        return iter(self.entries)

    def __len__(self):
        return sum(m for _, m in self.entries)

    def expand(self) -> list:
        return [p for p, mult in self.entries for _ in range(mult)]

    def validate(self, ctx: Context):
        for p, _ in self.entries:
            _require_proper(ctx, p)

    def __add__(self, other: "Family") -> "Family":
        return Family.of(list(self.entries) + list(other.entries))


def matching_multiset(ctx: Context, fam: Family) -> Counter:
    counts = Counter()
    for pair, mult in fam:
        for M in feasible_matchings(ctx, pair):
            counts[M] += mult
    return counts


class Status(enum.Enum):
    UNIVERSAL = "Universal"
    NOT_UNIVERSAL = "NotUniversal"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Matching | None
    counts: dict = field(default_factory=dict)

    @property
    def universal(self):
        return self.status is Status.UNIVERSAL

    def table(self) -> list:
        """``(matching, count_in_A, count_in_B)`` rows in matching order."""
        return [(M, *self.counts[M]) for M in sorted(self.counts)]

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "witness": None if self.witness is None else str(self.witness),
            "counts": [{"matching": str(M), "A": a, "B": b} for M, a, b in self.table()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        witness = data.get("witness")
        return cls(
            Status(data["status"]),
            None if witness is None else Matching.parse(witness),
            {Matching.parse(r["matching"]): (int(r["A"]), int(r["B"])) for r in data["counts"]},
        )


def check_universal(ctx: Context, A: Family, B: Family) -> Verdict:
    ca, cb = matching_multiset(ctx, A), matching_multiset(ctx, B)
    counts = {M: (ca[M], cb[M]) for M in set(ca) | set(cb)}
    bad = [M for M, (a, b) in counts.items() if b > 0 and a < b]
    if not bad:
        return Verdict(Status.UNIVERSAL, None, counts)
    witness = min(bad, key=lambda M: (counts[M][0] - counts[M][1], M.sort_key()))
    return Verdict(Status.NOT_UNIVERSAL, witness, counts)


def canonicalize(ctx: Context, A: Family, B: Family):
    """Relabel ``Y``, ``Y'`` onto ``[m]``, ``[m']`` and cancel common ``X``/``X'`` mass.

    Returns ``(ctx, A, B, relabeling)`` where the relabeling maps each ground
    element of the old ``Y ⊔ Y'`` to its image.  The kept part of ``X`` (or
    ``X'``) is placed after ``Y`` (or ``Y'``).
    """
    m, mp = len(ctx.Y), len(ctx.Y_prime)
    rmap = {y: i for i, y in enumerate(sorted(ctx.Y), 1)}
    cmap = {y: j for j, y in enumerate(sorted(ctx.Y_prime), 1)}
    drop = min(len(ctx.X), len(ctx.X_prime))
    kx, kxp = len(ctx.X) - drop, len(ctx.X_prime) - drop
    new = make_context(m + kx, mp + kxp, range(m + 1, m + kx + 1), range(1, m + 1),
                       range(mp + 1, mp + kxp + 1), range(1, mp + 1))
    relabel = {row(y): row(i) for y, i in rmap.items()}
    relabel.update({col(y): col(j) for y, j in cmap.items()})

    def move(fam):
        return Family(tuple(
            (ProperPair(frozenset(rmap[i] for i in p.C), frozenset(cmap[j] for j in p.C_prime)), mult)
            for p, mult in fam))

    return new, move(A), move(B), relabel


def relabel_matching(M: Matching, relabel: dict) -> Matching:
    return Matching.of((relabel[c.a], relabel[c.b]) for c in M.couples)
