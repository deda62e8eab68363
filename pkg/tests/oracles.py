"""Independent brute-force reference implementations used by the tests."""

from fractions import Fraction
from itertools import combinations, permutations


def leibniz_det(M):
    k = len(M)
    total = Fraction(0)
    for perm in permutations(range(k)):
        inv = sum(1 for a, b in combinations(range(k), 2) if perm[a] > perm[b])
        term = Fraction(-1) ** inv
        for r, c in enumerate(perm):
            term *= M[r][c]
        total += term
    return total


def all_perfect_matchings(points):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for k, other in enumerate(rest):
        for tail in all_perfect_matchings(rest[:k] + rest[k + 1:]):
            yield [(first, other)] + tail


def circle_sequence(Y, Yp):
    """Rows increasing, then columns decreasing."""
    return [("r", y) for y in sorted(Y)] + [("c", y) for y in sorted(Yp, reverse=True)]


def noncrossing(matching, seq):
    pos = {p: k for k, p in enumerate(seq)}
    chords = [tuple(sorted((pos[a], pos[b]))) for a, b in matching]
    for (a, b), (c, d) in combinations(chords, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def color_ok(matching, C, Cp):
    def colored(p):
        return p[1] in (C if p[0] == "r" else Cp)

    for a, b in matching:
        same_half = a[0] == b[0]
        if (colored(a) != colored(b)) != same_half:
            return False
    return True


def pair_str(p):
    return f"{p[1]}" + ("'" if p[0] == "c" else "")


def brute_feasible(Y, Yp, C, Cp, planar=None):
    """Feasible matchings as sets of frozenset couples of string labels."""
    seq = circle_sequence(Y, Yp)
    if planar is None:
        planar = [m for m in all_perfect_matchings(seq) if noncrossing(m, seq)]
    return {frozenset(frozenset((pair_str(a), pair_str(b))) for a, b in m)
            for m in planar if color_ok(m, C, Cp)}


def as_label_set(M):
    return frozenset(frozenset((str(c.a), str(c.b))) for c in M.couples)
