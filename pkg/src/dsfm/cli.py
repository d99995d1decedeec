"""Command-line entry point: solve, parametric, verify, selftest.

Exit codes: 0 ok, 1 verification failed, 2 parse error, 3 invalid oracle or
penalty, 4 bad epsilon or lambda range, 5 instance too large for brute force.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io
from .flow import NetworkError
from .generators import random_instance, random_parametric_network
from .oracles import MAX_BRUTEFORCE_N, OracleError
from .parametric import RecursionStats, apx_parametric_min_cut, compare_to_exact, grid_sweep
from .penalties import PenaltyError
from .solver import solve
from .verify import alpha_grid, verify_thresholds

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_ORACLE, EXIT_RANGE, EXIT_TOO_LARGE = 0, 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _rational(text: str, what: str) -> Fraction:
    try:
        return io.parse_rational(text)
    except io.ParseError as exc:
        raise CliError(EXIT_PARSE, f"{what}: {exc}") from exc


def _grid(text: str) -> list:
    parts = text.split(":")
    if len(parts) != 3:
        raise CliError(EXIT_PARSE, f"--alpha-grid expects lo:hi:count, got {text!r}")
    try:
        count = int(parts[2])
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad grid count {parts[2]!r}") from exc
    if count < 1:
        raise CliError(EXIT_PARSE, "--alpha-grid needs at least one point")
    return alpha_grid(_rational(parts[0], "grid start"), _rational(parts[1], "grid end"), count)


def _epsilon(text: str) -> Fraction:
    eps = _rational(text, "--epsilon")
    if eps <= 0:
        raise CliError(EXIT_RANGE, "--epsilon must be positive")
    return eps


def _load_instance(path: str) -> io.Instance:
    try:
        return io.load_instance(path)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from exc
    except io.ParseError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    except (OracleError, PenaltyError) as exc:
        raise CliError(EXIT_ORACLE, str(exc)) from exc


def _solve(inst: io.Instance, eps: Fraction):
    try:
        return solve(inst.oracles, inst.penalty, eps)
    except (OracleError, PenaltyError) as exc:
        raise CliError(EXIT_ORACLE, str(exc)) from exc


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    res = _solve(inst, _epsilon(args.epsilon))
    if args.trace:
        for k, v in enumerate(res.trace):
            print(f"iter {k}: dual objective {float(v):.12g}", file=sys.stderr)
    _emit(io.result_to_dict(res), args.output)
    return EXIT_OK


def cmd_parametric(args) -> int:
    if args.network:
        try:
            net = io.load_network(args.network)
        except OSError as exc:
            raise CliError(EXIT_PARSE, f"cannot read {args.network}: {exc}") from exc
        except (io.ParseError, NetworkError) as exc:
            raise CliError(EXIT_PARSE, str(exc)) from exc
    else:
        net = random_parametric_network(args.seed)
    eps = _rational(args.eps, "--eps")
    lo = _rational(args.lambda_min, "--lambda-min")
    hi = _rational(args.lambda_max, "--lambda-max")
    stats = RecursionStats()
    try:
        cut = apx_parametric_min_cut(net, lo, hi, eps, stats)
    except ValueError as exc:
        raise CliError(EXIT_RANGE, str(exc)) from exc
    report = io.cut_to_dict(cut)
    report["maxflow_calls"] = stats.maxflow_calls
    report["depth"] = stats.depth
    if args.verify:
        ref = grid_sweep(net, lo, hi, eps / 8)
        try:
            dev = compare_to_exact(cut, ref)
            report["deviation"] = io.format_rational(dev)
            report["verified"] = True
        except ValueError as exc:
            report["verified"] = False
            report["error"] = str(exc)
    _emit(report, args.output)
    return EXIT_OK if report.get("verified", True) else EXIT_FAIL


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    if inst.n > MAX_BRUTEFORCE_N:
        raise CliError(EXIT_TOO_LARGE, f"ground set of size {inst.n} exceeds {MAX_BRUTEFORCE_N}")
    alphas = _grid(args.alpha_grid)
    if args.result:
        try:
            data = io.load_json(args.result)
            scale = int(data.get("scale", 1))
            y = [Fraction(int(v), scale) for v in data["y"]]
            delta = float(data["delta"])
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise CliError(EXIT_PARSE, f"bad result file: {exc}") from exc
        x = [inst.penalty.conjugate_derivative(u, -y[u]) for u in range(inst.n)]
    else:
        res = _solve(inst, _epsilon(args.epsilon))
        x, delta = res.x, res.delta
    report = verify_thresholds(inst.oracles, inst.penalty, x, delta, alphas)
    for c in report.checks:
        flag = "ok" if c.excess <= Fraction(delta) else "FAIL"
        print(f"alpha={io.format_rational(c.alpha):>8}  set={sorted(c.chosen)}  "
              f"excess={float(c.excess):.3g}  {flag}")
    verdict = "PASS" if report.passed else "FAIL"
    line = f"{verdict}: max excess {float(report.max_excess):.6g} vs delta {delta:.6g}"
    if not report.passed:
        line += f" (worst alpha {io.format_rational(report.worst.alpha)})"
    print(line)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_selftest(args) -> int:
    ok = True
    for k in range(args.count):
        seed = args.seed + k
        oracles, pen = random_instance(seed, n_max=6)
        res = solve(oracles, pen, Fraction(1, 1000))
        rep = verify_thresholds(oracles, pen, res.x, res.delta, alpha_grid(-5, 5, 41))
        print(f"instance seed {seed}: {'pass' if rep.passed else 'FAIL'}")
        ok &= rep.passed
        net = random_parametric_network(seed, max_vertices=10)
        cut = apx_parametric_min_cut(net, -4, 4, Fraction(1, 4))
        try:
            compare_to_exact(cut, grid_sweep(net, -4, 4, Fraction(1, 32)))
            print(f"network seed {seed}: pass")
        except ValueError as exc:
            print(f"network seed {seed}: FAIL ({exc})")
            ok = False
    print("selftest", "passed" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dsfm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance for all penalty parameters")
    s.add_argument("instance")
    s.add_argument("--epsilon", default="1/1000")
    s.add_argument("--output")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("parametric", help="parametric minimum cut of a network file")
    s.add_argument("network", nargs="?")
    s.add_argument("--eps", required=True)
    s.add_argument("--lambda-min", required=True)
    s.add_argument("--lambda-max", required=True)
    s.add_argument("--seed", type=int, default=0,
                   help="random network seed, used when no file is given")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--output")
    s.set_defaults(func=cmd_parametric)

    s = sub.add_parser("verify", help="brute-force check of thresholded solutions")
    s.add_argument("instance")
    s.add_argument("--alpha-grid", default="-5:5:41")
    s.add_argument("--epsilon", default="1/1000")
    s.add_argument("--result", help="check this result file instead of solving")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("selftest", help="quick randomized end-to-end check")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=5)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
