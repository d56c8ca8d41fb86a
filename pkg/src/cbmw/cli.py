"""Command-line front end: ``gen``, ``check``, ``verify`` and ``table``.

Exit codes: 0 everything passed, 1 a mathematical check failed, 2 usage or
parse error, 3 excluded parameter configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .admissibility import (
    RHO_CHOICES,
    ExcludedConfigurationError,
    GroundRingInstance,
    check_all,
    default_neg_depth,
    default_truncation,
    eta_table_from_series,
    format_rational,
    gamma_closed_form,
    generate_instance,
    verify_equivalence,
)
from .admissibility.equivalence import SYMBOLIC_MAX_RANK
from .exact import MAX_U
from .symfun import mu_table, signed_coeffs

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_EXCLUDED = 3


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    text = str(text).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not an exact rational: {text!r}") from exc


def parse_rational_list(text: str) -> list[Fraction]:
    return [parse_rational(part) for part in text.split(",") if part.strip()]


# -- parameter files -----------------------------------------------------


def instance_to_params(inst: GroundRingInstance) -> dict:
    return {
        "r": inst.r,
        "u": [format_rational(x) for x in inst.u],
        "q": format_rational(inst.q),
        "rho": format_rational(inst.rho),
        "delta": [format_rational(x) for x in inst.delta],
        "maxA": inst.max_a,
        "negDepth": inst.neg_depth,
    }


def params_to_instance(data: dict) -> GroundRingInstance:
    """Rebuild an instance from a parameter file; negative deltas are recomputed."""
    if not isinstance(data, dict):
        raise UsageError("parameter file must hold a JSON object")
    missing = [k for k in ("r", "u", "q", "rho", "delta", "maxA", "negDepth") if k not in data]
    if missing:
        raise UsageError(f"parameter file lacks {', '.join(missing)}")
    r, max_a, depth = data["r"], data["maxA"], data["negDepth"]
    for key, val in (("r", r), ("maxA", max_a), ("negDepth", depth)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 0:
            raise UsageError(f"{key} must be a non-negative integer")
    if r < 1:
        raise UsageError("r must be >= 1")
    if not isinstance(data["u"], list) or len(data["u"]) != r:
        raise UsageError(f"u must list exactly r={r} rationals")
    if not isinstance(data["delta"], list) or len(data["delta"]) != max_a + 1:
        raise UsageError(f"delta must list delta_0..delta_maxA ({max_a + 1} entries)")
    if depth > max_a:
        raise UsageError(f"negDepth {depth} exceeds maxA {max_a}")
    u = [parse_rational(x) for x in data["u"]]
    delta = [parse_rational(x) for x in data["delta"]]
    q, rho = parse_rational(data["q"]), parse_rational(data["rho"])
    return GroundRingInstance.build(r, u, rho, q, delta, depth)


# -- subcommands -----------------------------------------------------------


def _check_rank(r: int, hi: int = MAX_U) -> None:
    if not 1 <= r <= hi:
        raise UsageError(f"r must lie in 1..{hi}, got {r}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_gen(args) -> int:
    _check_rank(args.r)
    u = parse_rational_list(args.u)
    if len(u) != args.r:
        raise UsageError(f"--u needs {args.r} comma-separated values, got {len(u)}")
    n = default_truncation(args.r) if args.max_a is None else args.max_a
    d = min(default_neg_depth(args.r), n) if args.neg_depth is None else args.neg_depth
    try:
        inst = generate_instance(
            args.r, u, parse_rational(args.q), args.rho_choice, n, d, policy="sampler"
        )
    except ExcludedConfigurationError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(json.dumps(instance_to_params(inst), indent=2), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        data = json.loads(Path(args.path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.path} is not valid JSON: {exc}") from exc
    try:
        inst = params_to_instance(data)
        if args.max_a is not None or args.neg_depth is not None:
            inst = inst.restricted(args.max_a, args.neg_depth)
    except (ExcludedConfigurationError, UsageError):
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    start = time.perf_counter()
    report = check_all(inst)
    body = report.to_dict()
    body["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    _emit(json.dumps(body, indent=2), args.out)
    if args.out:
        for key, verdict in body["verdicts"].items():
            print(f"{key}: {verdict}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    _check_rank(args.r, SYMBOLIC_MAX_RANK)
    if args.samples < 0:
        raise UsageError("--samples must be >= 0")
    start = time.perf_counter()
    rep = verify_equivalence(
        args.r, args.samples, args.max_a, args.neg_depth, args.seed, workers=args.workers
    )
    elapsed = time.perf_counter() - start
    print(f"r={rep.r} maxA={rep.max_a} negDepth={rep.neg_depth} seed={rep.seed} samples={len(rep.samples)}")
    fwd = sum(s.forward_ok for s in rep.samples)
    print(f"[{'pass' if rep.forward_ok else 'fail'}] forward (u-admissible => WY, weak, ground ring): "
          f"{fwd}/{len(rep.samples)} instances")
    total = sum(s.perturbations for s in rep.samples)
    caught = sum(s.caught_by_wy_or_ground_ring for s in rep.samples)
    print(f"[{'pass' if rep.uniqueness_ok else 'fail'}] uniqueness (perturbed deltas rejected): {caught}/{total}")
    for s in rep.samples:
        if not s.forward_ok:
            bad = ", ".join(k for k, ok in s.forward.items() if not ok)
            print(f"    sample {s.index}: forward failure in {bad}")
        if s.missed:
            print(f"    sample {s.index}: perturbations at a={list(s.missed)} not rejected")
    for fam in rep.families:
        if fam.status in ("vacuous", "skipped"):
            print(f"[{fam.status}] {fam.name}: {fam.note}")
        else:
            tail = f" ({fam.note})" if fam.note else ""
            print(f"[{fam.status}] {fam.name}: {fam.checked - fam.failed}/{fam.checked}{tail}")
    print(f"overall: {'pass' if rep.passed else 'fail'} in {elapsed:.1f}s")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_table(args) -> int:
    _check_rank(args.r)
    n = default_truncation(args.r) if args.max is None else args.max
    if n < 0:
        raise UsageError("--max must be >= 0")
    if args.what == "mu":
        mu = mu_table(args.r, n)
        rows = [(f"mu_{a}", mu[a]) for a in range(n + 1)]
    elif args.what == "xi":
        xi = eta_table_from_series(args.r, n)
        rows = [(f"xi_{a}", xi[a]) for a in range(n + 1)]
    elif args.what == "a-coeffs":
        a = signed_coeffs(args.r)
        rows = [(f"a_{j}", a[j]) for j in range(args.r + 1)]
    else:
        g = gamma_closed_form(args.r)
        rows = [(f"gamma_{j}", g[j]) for j in range(1, args.r + 1)]
    for label, value in rows:
        print(f"{label} = {value}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cbmw", description="Exact admissibility computations for cyclotomic BMW parameters.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a u-admissible parameter file")
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--u", required=True, help="comma-separated rationals, e.g. 2,3/4")
    g.add_argument("--q", required=True)
    g.add_argument("--rho-choice", choices=sorted(RHO_CHOICES), default=None)
    g.add_argument("--max-a", type=int, default=None)
    g.add_argument("--neg-depth", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="run every checker on a parameter file")
    c.add_argument("path")
    c.add_argument("--max-a", type=int, default=None)
    c.add_argument("--neg-depth", type=int, default=None)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify", help="symbolic identities plus random-instance equivalence checks")
    v.add_argument("--r", type=int, required=True)
    v.add_argument("--samples", type=int, default=10)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-a", type=int, default=None)
    v.add_argument("--neg-depth", type=int, default=None)
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="print universal sequences")
    t.add_argument("--r", type=int, required=True)
    t.add_argument("--what", choices=("mu", "xi", "gamma", "a-coeffs"), required=True)
    t.add_argument("--max", type=int, default=None)
    t.set_defaults(func=cmd_table)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cbmw {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExcludedConfigurationError as exc:
        print(f"cbmw {args.command}: excluded configuration: {exc}", file=sys.stderr)
        return EXIT_EXCLUDED


if __name__ == "__main__":
    sys.exit(main())
