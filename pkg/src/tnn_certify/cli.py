"""Command-line front end: ``tnn-certify check|matchings|random-test|verify-lindstrom|witness``.

Exit statuses: 0 universal / all good, 2 input error, 10 not universal,
11 witness requested for a universal instance, 20 internal-consistency
alarm, 30 witness construction failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .core import ProperPair, check_universal, feasible_matchings, make_context
from .errors import ConstructionFailure, ValidationError
from .flows import evaluate_inequality, random_tnn
from .network import fraction_str
from .problem import load_problem
from .selftest import run_battery
from .witness import build_counterexample

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_UNIVERSAL = 10
EXIT_IS_UNIVERSAL = 11
EXIT_ALARM = 20
EXIT_NO_WITNESS = 30


def worker_count() -> int:
    raw = os.environ.get("TNN_CERTIFY_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _emit(args, data, lines):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        for line in lines:
            print(line)


def _index_list(text):
    text = text.strip().strip("{}[]")
    if not text:
        return []
    try:
        return [int(t.rstrip("'")) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of indices: {text!r}")


def _size(text):
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n,n' (got {text!r})")
    return a, b


def _table_lines(verdict):
    rows = [(str(M), a, b) for M, a, b in verdict.table()]
    width = max([len(r[0]) for r in rows] + [len("matching")])
    out = [f"{'matching':<{width}}  #A  #B"]
    out += [f"{m:<{width}}  {a:>2}  {b:>2}" for m, a, b in rows]
    return out


def cmd_check(args) -> int:
    prob = load_problem(args.problem)
    verdict = check_universal(prob.ctx, prob.A, prob.B)
    data = verdict.to_dict()
    lines = [f"verdict: {verdict.status.value}"] + _table_lines(verdict)
    if not verdict.universal:
        lines.append(f"witness: {verdict.witness}")
        if args.witness:
            try:
                cert = build_counterexample(prob.ctx, prob.A, prob.B, seed=args.seed, budget=args.budget)
            except ConstructionFailure as exc:
                data["constructionFailure"] = str(exc)
                lines.append(f"construction failure: {exc}")
            else:
                data["certificate"] = cert.to_dict()
                lines.append(f"certificate: countA={cert.count_a} countB={cert.count_b} "
                             f"lhsValue={fraction_str(cert.lhs_value)} "
                             f"({len(cert.network.vertices)} vertices)")
    _emit(args, data, lines)
    return EXIT_OK if verdict.universal else EXIT_NOT_UNIVERSAL


def cmd_matchings(args) -> int:
    if args.problem:
        prob = load_problem(args.problem)
        ctx = prob.ctx
        pairs = [p for p, _ in prob.A] + [p for p, _ in prob.B]
    else:
        if args.Y is None or args.Y_prime is None:
            raise ValidationError("give a problem file or at least --Y and --Y-prime")
        X, Xp = args.X or [], args.X_prime or []
        n = args.n if args.n is not None else max(X + args.Y, default=0)
        n_prime = args.n_prime if args.n_prime is not None else max(Xp + args.Y_prime, default=0)
        ctx = make_context(n, n_prime, X, args.Y, Xp, args.Y_prime)
        pairs = []
    if args.C is not None or args.C_prime is not None:
        pairs = [ProperPair.of(args.C or [], args.C_prime or [])]
    if not pairs:
        raise ValidationError("no proper pair given (use --C/--C-prime or a problem file with families)")
    seen, report, lines = set(), [], []
    for pair in pairs:
        if pair in seen:
            continue
        seen.add(pair)
        found = feasible_matchings(ctx, pair)
        report.append({"C": sorted(pair.C), "CPrime": sorted(pair.C_prime),
                       "count": len(found), "matchings": [str(M) for M in found]})
        if len(pairs) > 1:
            lines.append(f"# {pair}")
        lines += [str(len(found))] if args.count else [str(M) for M in found]
    _emit(args, report[0] if len(report) == 1 else report, lines)
    return EXIT_OK


def cmd_random_test(args) -> int:
    prob = load_problem(args.problem)
    ctx = prob.ctx
    n, n_prime = args.size or (ctx.n, ctx.n_prime)
    if args.trials < 1:
        raise ValidationError("--trials must be positive")
    verdict = check_universal(ctx, prob.A, prob.B)

    def trial(t):
        Q, _, _ = random_tnn(n, n_prime, args.seed + t)
        return evaluate_inequality(Q, ctx, prob.A, prob.B)

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        values = list(pool.map(trial, range(args.trials)))
    low = min(values)
    worst = args.seed + values.index(low)
    negative = [args.seed + t for t, v in enumerate(values) if v < 0]
    data = {
        "status": verdict.status.value,
        "trials": args.trials,
        "seed": args.seed,
        "size": [n, n_prime],
        "minValue": fraction_str(low),
        "minSeed": worst,
        "violations": len(negative),
        "firstViolationSeed": negative[0] if negative else None,
    }
    lines = [f"verdict: {verdict.status.value}",
             f"trials: {args.trials} (seeds {args.seed}..{args.seed + args.trials - 1})",
             f"min value: {fraction_str(low)} (seed {worst})",
             f"violations: {len(negative)}"]
    if verdict.universal:
        if negative:
            lines.append(f"ALARM: universal instance violated at seed {negative[0]}; this is an implementation bug")
            _emit(args, data, lines)
            return EXIT_ALARM
        _emit(args, data, lines)
        return EXIT_OK
    lines.append("sampled matrices " + ("include a violation" if negative else "did not violate the inequality"))
    _emit(args, data, lines)
    return EXIT_NOT_UNIVERSAL


def cmd_verify_lindstrom(args) -> int:
    report = run_battery(trials=args.trials, seed=args.seed, max_vertices=args.max_vertices,
                         negative=args.self_check_negative)
    lines = [f"networks: {report.networks}",
             f"(G, I, J) triples checked: {report.triples}",
             f"split networks checked: {report.hat_checks}",
             f"double flows checked: {report.double_flows}",
             "result: " + ("PASS" if report.ok else f"FAIL ({len(report.failures)} failures)")]
    for f in report.failures[:5]:
        lines.append(f"[{f['kind']}] {f['detail']}")
        lines.append(f["network"])
    _emit(args, report.to_dict(), lines)
    return EXIT_OK if report.ok else EXIT_ALARM


def cmd_witness(args) -> int:
    prob = load_problem(args.problem)
    verdict = check_universal(prob.ctx, prob.A, prob.B)
    if verdict.universal:
        _emit(args, {"status": verdict.status.value},
              ["instance is Universal; no counterexample exists"])
        return EXIT_IS_UNIVERSAL
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ValidationError(f"{out}: cannot write output ({exc.strerror or exc})") from exc
    try:
        cert = build_counterexample(prob.ctx, prob.A, prob.B, seed=args.seed, budget=args.budget)
    except ConstructionFailure as exc:
        _emit(args, {"status": verdict.status.value, "witness": str(verdict.witness),
                     "constructionFailure": str(exc)},
              [f"witness matching: {verdict.witness}", f"construction failure: {exc}"])
        return EXIT_NO_WITNESS
    net_path, cert_path = out / "network.json", out / "certificate.json"
    try:
        payload = cert.to_dict()
        net_path.write_text(json.dumps(payload["network"], indent=2) + "\n")
        cert_path.write_text(json.dumps(payload, indent=2) + "\n")
    except OSError as exc:
        raise ValidationError(f"{out}: cannot write output ({exc.strerror or exc})") from exc
    data = dict(cert.to_dict(), files={"network": str(net_path), "certificate": str(cert_path)})
    _emit(args, data, [f"witness matching: {cert.matching}",
                       f"countA: {cert.count_a}",
                       f"countB: {cert.count_b}",
                       f"lhsValue: {fraction_str(cert.lhs_value)}",
                       f"network: {net_path} ({len(cert.network.vertices)} vertices)",
                       f"certificate: {cert_path}"])
    return EXIT_NOT_UNIVERSAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tnn-certify",
                                     description="Decide and certify quadratic minor inequalities for TNN matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "decide universality of a problem file")
    p.add_argument("problem")
    p.add_argument("--witness", action="store_true", help="also build a counterexample certificate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=20000, help="witness search candidates")

    p = add("matchings", cmd_matchings, "list feasible matchings of a proper pair")
    p.add_argument("problem", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--n-prime", type=int)
    p.add_argument("--X", type=_index_list)
    p.add_argument("--Y", type=_index_list)
    p.add_argument("--X-prime", type=_index_list)
    p.add_argument("--Y-prime", type=_index_list)
    p.add_argument("--C", type=_index_list)
    p.add_argument("--C-prime", type=_index_list)
    p.add_argument("--count", action="store_true", help="print only the number of matchings")

    p = add("random-test", cmd_random_test, "evaluate the inequality on random TNN matrices")
    p.add_argument("problem")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=_size, help="n,n' (defaults to the problem's)")

    p = add("verify-lindstrom", cmd_verify_lindstrom, "run the randomized self-test battery")
    p.add_argument("--max-vertices", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--self-check-negative", action="store_true", help=argparse.SUPPRESS)

    p = add("witness", cmd_witness, "write a counterexample network and certificate")
    p.add_argument("problem")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=20000)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
