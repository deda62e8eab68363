"""Problem files: a context plus two families of proper pairs, as JSON.

    {"n": 5, "nPrime": 5, "X": [], "Y": [1, 2, 3, 4, 5],
     "XPrime": [], "YPrime": [1, 2, 3, 4, 5],
     "A": [{"C": [1, 2], "CPrime": [4, 5]}, {"C": [1, 2], "CPrime": [3, 4]}],
     "B": [{"C": [1, 2], "CPrime": [3, 5], "multiplicity": 1}]}

``CPrime`` lists column indices without primes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import Context, Family, ProperPair, is_proper, make_context
from .errors import ValidationError


class ProblemError(ValidationError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True)
class Problem:
    ctx: Context
    A: Family
    B: Family


def _index_list(data, key, where):
    value = data.get(key, [])
    if not isinstance(value, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in value):
        raise ProblemError(f"{where}{key}", "expected an array of integers")
    if len(set(value)) != len(value):
        raise ProblemError(f"{where}{key}", "repeated index")
    return value


def parse_problem(data) -> Problem:
    if not isinstance(data, dict):
        raise ProblemError("$", "expected a JSON object")
    for key in ("n", "nPrime", "Y", "YPrime"):
        if key not in data:
            raise ProblemError(f"$.{key}", "missing field")
    for key in ("n", "nPrime"):
        if not isinstance(data[key], int) or isinstance(data[key], bool):
            raise ProblemError(f"$.{key}", "expected an integer")
    lists = {k: _index_list(data, k, "$.") for k in ("X", "Y", "XPrime", "YPrime")}
    try:
        ctx = make_context(data["n"], data["nPrime"], lists["X"], lists["Y"], lists["XPrime"], lists["YPrime"])
    except ValidationError as exc:
        raise ProblemError("$", f"{type(exc).__name__}: {exc}") from exc

    def family(key):
        raw = data.get(key, [])
        if not isinstance(raw, list):
            raise ProblemError(f"$.{key}", "expected an array")
        items = []
        for k, entry in enumerate(raw):
            where = f"$.{key}[{k}]."
            if not isinstance(entry, dict):
                raise ProblemError(where[:-1], "expected an object")
            C, Cp = _index_list(entry, "C", where), _index_list(entry, "CPrime", where)
            mult = entry.get("multiplicity", 1)
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
                raise ProblemError(f"{where}multiplicity", "expected a positive integer")
            if not set(C) <= ctx.Y:
                raise ProblemError(f"{where}C", f"{sorted(C)} is not a subset of Y")
            if not set(Cp) <= ctx.Y_prime:
                raise ProblemError(f"{where}CPrime", f"{sorted(Cp)} is not a subset of Y'")
            if not is_proper(ctx, C, Cp):
                raise ProblemError(where[:-1], "pair is not proper (cardinalities do not balance)")
            items.append((ProperPair.of(C, Cp), mult))
        return Family.of(items)

    return Problem(ctx, family("A"), family("B"))


def load_problem(path) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemError(str(path), f"cannot read file: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    return parse_problem(data)


def problem_to_dict(ctx: Context, A: Family, B: Family) -> dict:
    def fam(F):
        return [{"C": sorted(p.C), "CPrime": sorted(p.C_prime), "multiplicity": m} for p, m in F]

    return {
        "n": ctx.n, "nPrime": ctx.n_prime,
        "X": sorted(ctx.X), "Y": sorted(ctx.Y),
        "XPrime": sorted(ctx.X_prime), "YPrime": sorted(ctx.Y_prime),
        "A": fam(A), "B": fam(B),
    }
