"""Command-line front end.

Subcommands: ``gen``, ``decode``, ``estimate``, ``optimize`` and ``table``.
Exit status: 0 success, 1 usage or validation error, 2 decoding exhausted,
3 internal cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Iterable, Sequence

from . import asymptotic, costmodel
from .decoder import decode
from .gf import prime_power
from .errors import CapExceededError, InfeasibleParametersError, ParseError
from .instance import generate, load, save
from .params import BallCollisionParams

EXIT_OK, EXIT_USAGE, EXIT_EXHAUSTED, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(message)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return f"{float(v):.12g}"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def emit(pairs: Iterable[tuple[str, object]], fmt: str, out) -> None:
    pairs = [(k, _fmt(v)) for k, v in pairs]
    if fmt == "machine":
        for k, v in pairs:
            out.write(f"{k}={v}\n")
        return
    width = max((len(k) for k, _ in pairs), default=0)
    for k, v in pairs:
        out.write(f"{k.ljust(width)}  {v}\n")


def _param_flags(p: argparse.ArgumentParser) -> None:
    for name in ("p1", "p2", "q1", "q2", "l1", "l2", "k1"):
        p.add_argument(f"--{name}", type=int, default=None)
    p.add_argument("--auto", action="store_true",
                   help="choose parameters by minimizing the concrete cost")


def _params_from(args, n: int, k: int, t: int, q: int) -> BallCollisionParams:
    given = [getattr(args, f) for f in ("p1", "p2", "q1", "q2", "l1", "l2", "k1")]
    if args.auto:
        if any(v is not None for v in given):
            raise UsageError("--auto cannot be combined with explicit parameters")
        params, _ = costmodel.optimize_concrete(n, k, t, q, clamp_multiplication=args.clamp_mult)
        return params
    p1, p2, q1, q2, l1, l2, k1 = (0 if v is None else v for v in given)
    if args.k1 is None:
        k1 = k // 2
    params = BallCollisionParams(p1, p2, q1, q2, k1, k - k1, l1, l2)
    return params.validate(n, k, t)


def _param_pairs(params: BallCollisionParams) -> list[tuple[str, object]]:
    return [(f"params.{f}", getattr(params, f))
            for f in ("p1", "p2", "q1", "q2", "k1", "k2", "l1", "l2")]


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ballcoll", description="Ball-collision decoding over F_q")
    ap.add_argument("--format", choices=("human", "machine"), default="human")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default=argparse.SUPPRESS)

    g = sub.add_parser("gen", parents=[common], help="write a random instance with a planted error")
    for name in ("q", "n", "k", "t"):
        g.add_argument(f"--{name}", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    d = sub.add_parser("decode", parents=[common], help="decode an instance file")
    d.add_argument("--in", dest="infile", required=True)
    _param_flags(d)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--max-iters", type=int, default=None)
    d.add_argument("--threads", type=int, default=1)
    d.add_argument("--clamp-mult", action="store_true")

    e = sub.add_parser("estimate", parents=[common], help="concrete cost of given parameters")
    for name in ("q", "n", "k", "t"):
        e.add_argument(f"--{name}", type=int, required=True)
    _param_flags(e)
    e.add_argument("--clamp-mult", action="store_true",
                   help="charge at least one bit operation per multiplication")

    o = sub.add_parser("optimize", parents=[common], help="optimized asymptotic exponent at one rate")
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--rate", type=float, required=True)

    t = sub.add_parser("table", parents=[common], help="worst-case exponents next to published values")
    t.add_argument("--q-list", default="2,3,4,5,7,8,11")
    return ap


def cmd_gen(args, out) -> int:
    inst = generate(args.q, args.n, args.k, args.t, args.seed)
    save(inst, args.out)
    emit([("q", inst.q), ("n", inst.n), ("k", inst.k), ("t", inst.t),
          ("seed", args.seed), ("out", args.out)], args.format, out)
    return EXIT_OK


def cmd_decode(args, out) -> int:
    inst = load(args.infile)
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    if args.max_iters is not None and args.max_iters < 1:
        raise UsageError("--max-iters must be at least 1")
    params = _params_from(args, inst.n, inst.k, inst.t, inst.q)
    res = decode(inst, params, args.seed, args.max_iters, args.threads)
    pairs: list[tuple[str, object]] = [("status", res.status), ("iterations", res.iterations)]
    pairs += _param_pairs(params)
    if res.found:
        pairs.append(("e", ",".join(str(int(v)) for v in res.e)))
        pairs.append(("verified", inst.is_solution(res.e)))
    for phase, c in res.op_counters.items():
        pairs.append((f"ops.{phase}.additions", c.additions))
        pairs.append((f"ops.{phase}.multiplications", c.multiplications))
    emit(pairs, args.format, out)
    return EXIT_OK if res.found else EXIT_EXHAUSTED


def cmd_estimate(args, out) -> int:
    n, k, t, q = args.n, args.k, args.t, args.q
    _check_q(q)
    if not (0 <= k < n and 0 <= t < n):
        raise UsageError(f"infeasible dimensions n={n}, k={k}, t={t}")
    params = _params_from(args, n, k, t, q)
    it = costmodel.iteration_cost(n, k, t, q, params, args.clamp_mult)
    prob = it.success_probability
    pairs: list[tuple[str, object]] = [("q", q), ("n", n), ("k", k), ("t", t)]
    pairs += _param_pairs(params)
    pairs.append(("success_probability", f"{prob.numerator}/{prob.denominator}"))
    pairs.append(("success_probability.float", float(prob)))
    for phase, (a, m) in it.phases.items():
        pairs.append((f"iteration.{phase}.additions", a))
        pairs.append((f"iteration.{phase}.multiplications", m))
    pairs.append(("iteration.additions", it.additions))
    pairs.append(("iteration.multiplications", it.multiplications))
    pairs.append(("iteration.bit_ops", it.bit_ops))
    pairs.append(("expected_iterations", 1 / prob))
    pairs.append(("bits.addition", costmodel.addition_bits(q)))
    pairs.append(("bits.multiplication", costmodel.multiplication_bits(q, args.clamp_mult)))
    pairs.append(("bits.multiplication_degenerate", costmodel.multiplication_cost_degenerate(q)))
    pairs.append(("expected_total_bit_ops", it.expected_total_bit_ops))
    emit(pairs, args.format, out)
    return EXIT_OK


def _check_q(q: int) -> None:
    if prime_power(q) is None:
        raise UsageError(f"unsupported field order q={q}: not a prime power")


def cmd_optimize(args, out) -> int:
    _check_q(args.q)
    if not 0 < args.rate < 1:
        raise UsageError("--rate must lie in (0, 1)")
    pt = asymptotic.optimize_F(args.q, args.rate)
    emit([("q", pt.q), ("R", pt.R), ("T", pt.T), ("F", f"{pt.D:.6f}"), ("P", pt.P),
          ("Q", pt.Q), ("L", pt.L), ("S", pt.S), ("C", pt.C)], args.format, out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    try:
        qs = [int(x) for x in args.q_list.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--q-list must be comma-separated integers: {args.q_list!r}")
    if not qs:
        raise UsageError("--q-list is empty")
    for q in qs:
        _check_q(q)
    rows = []
    for q in qs:
        R_w, pt = asymptotic.worst_case(q)
        rows.append((q, asymptotic.STERN.get(q), asymptotic.STERN_MO.get(q),
                     asymptotic.BJMM_MO.get(q), pt.D, asymptotic.BALL_COLLISION.get(q), R_w))
    if args.format == "machine":
        pairs = []
        for q, st, mo, bj, F, pub, R_w in rows:
            pairs += [(f"q{q}.stern", st if st is not None else "na"),
                      (f"q{q}.stern_mo", mo if mo is not None else "na"),
                      (f"q{q}.bjmm_mo", bj if bj is not None else "na"),
                      (f"q{q}.ball_collision", f"{F:.6f}"),
                      (f"q{q}.published", pub if pub is not None else "na"),
                      (f"q{q}.R_w", f"{R_w:.4f}")]
        emit(pairs, "machine", out)
        return EXIT_OK
    head = ("q", "q-Stern", "q-Stern-MO", "q-BJMM-MO", "q-Ball-collision", "published", "R_w")
    out.write("  ".join(f"{h:>16}" for h in head) + "\n")
    for q, st, mo, bj, F, pub, R_w in rows:
        cells = [str(q)] + [f"{v:.5f}" if v is not None else "-" for v in (st, mo, bj)]
        cells += [f"{F:.6f}", f"{pub:.6f}" if pub is not None else "-", f"{R_w:.4f}"]
        out.write("  ".join(f"{c:>16}" for c in cells) + "\n")
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "decode": cmd_decode, "estimate": cmd_estimate,
            "optimize": cmd_optimize, "table": cmd_table}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except CapExceededError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAP
    except (UsageError, InfeasibleParametersError, ParseError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
