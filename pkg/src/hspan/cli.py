"""The hspan command line tool.

Subcommands: gen writes random instance files, span computes the family
span, compare cross-checks the span against an independent oracle, verify
runs the identity checks. Reports are JSON, one object per input file, on
stdout; diagnostics go to stderr. Exit codes: 0 success, 1 span mismatch or
failed check, 2 input error, 3 size budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .errors import BudgetExceededError, InstanceFormatError
from .instances import (SCHEMA_VERSION, dump_instance, generate_family,
                        load_instance, matrix_to_pairs)
from .spans import (basis_product_oracle, hadamard_span, psd_hadamard_span,
                    random_sample_span)
from .subspace import ToleranceConfig, subspace_distance
from .verify import verify_all

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hspan",
        description="Spans of Hadamard-product vector families, with oracles and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance file")
    gen.add_argument("n", type=int, help="matrix size")
    gen.add_argument("k", type=int, help="number of matrices")
    gen.add_argument("--kind", choices=["general", "psd"], default="general")
    gen.add_argument("--rank-deficit", type=int, default=0, metavar="D",
                     help="zero the last D columns of each factor (psd: use n-D wide factors)")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", default=None, metavar="FILE",
                     help="write here instead of stdout")

    def common(p):
        p.add_argument("files", nargs="+", metavar="FILE")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--rank-tol", type=float, default=1e-10,
                       help="relative singular value threshold for rank decisions")
        p.add_argument("--jobs", type=int, default=1,
                       help="evaluate multiple files in parallel")

    span = sub.add_parser("span", help="compute the span of an instance")
    common(span)

    compare = sub.add_parser("compare", help="span against an independent oracle")
    common(compare)
    compare.add_argument("--mode", choices=["basis", "random"], default="basis")
    compare.add_argument("--samples", type=int, default=None,
                         help="random-mode sample count (default 2n+8)")
    compare.add_argument("--tol", type=float, default=1e-8,
                         help="largest subspace distance that still exits 0")

    verify = sub.add_parser("verify", help="run the identity checks on an instance")
    common(verify)
    verify.add_argument("--trials", type=int, default=50,
                        help="orthogonality trial count")
    verify.add_argument("--pairing-trials", type=int, default=10)
    return parser


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HSPAN_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"HSPAN_SEED must be an integer, got {env!r}")
    return 0


def _report(command: str, family, kind: str, seed: int, payload: dict, started: float) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "instance": {"n": family.n, "k": family.k, "kind": kind, "seed": seed},
    }
    out.update(payload)
    out["wall_time_ms"] = (time.perf_counter() - started) * 1000.0
    return out


def _subspace_payload(s) -> dict:
    return {"rank": s.rank, "basis": matrix_to_pairs(s.basis), "rank_cutoff": s.tol_used}


def _run_span(path, args, seed):
    started = time.perf_counter()
    family, kind = load_instance(path)
    cfg = ToleranceConfig(rank_rel_tol=args.rank_tol, seed=seed)
    span = psd_hadamard_span(family, cfg) if kind == "psd" else hadamard_span(family, cfg)
    return EXIT_OK, _report("span", family, kind, seed, _subspace_payload(span), started)


def _run_compare(path, args, seed):
    started = time.perf_counter()
    family, kind = load_instance(path)
    cfg = ToleranceConfig(rank_rel_tol=args.rank_tol, seed=seed)
    span = psd_hadamard_span(family, cfg) if kind == "psd" else hadamard_span(family, cfg)
    if args.mode == "basis":
        samples = None
        oracle = basis_product_oracle(family, cfg)
    else:
        samples = args.samples if args.samples is not None else 2 * family.n + 8
        oracle = random_sample_span(family, samples, cfg)
    distance = subspace_distance(span, oracle)
    payload = {
        "mode": args.mode,
        "samples": samples,
        "span_rank": span.rank,
        "oracle_rank": oracle.rank,
        "distance": distance,
        "tol": args.tol,
        "match": distance <= args.tol,
    }
    code = EXIT_OK if distance <= args.tol else EXIT_MISMATCH
    return code, _report("compare", family, kind, seed, payload, started)


def _run_verify(path, args, seed):
    started = time.perf_counter()
    family, kind = load_instance(path)
    cfg = ToleranceConfig(rank_rel_tol=args.rank_tol, seed=seed)
    report = verify_all(family, cfg, pairing_trials=args.pairing_trials,
                        orthogonality_trials=args.trials)
    code = EXIT_OK if report.passed else EXIT_MISMATCH
    return code, _report("verify", family, kind, seed, report.to_dict(), started)


def _run_gen(args, seed) -> int:
    try:
        family = generate_family(args.n, args.k, kind=args.kind,
                                 rank_deficit=args.rank_deficit, seed=seed)
        text = dump_instance(family, args.kind)
        if args.out is None:
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
    except (ValueError, OSError) as exc:
        print(f"hspan gen: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def _run_file(runner, path, args, seed):
    """Evaluate one file, mapping failures to (exit code, diagnostic)."""
    try:
        code, report = runner(path, args, seed)
        return code, report, None
    except InstanceFormatError as exc:
        return EXIT_INPUT, None, f"{path}: {exc}"
    except BudgetExceededError as exc:
        return EXIT_BUDGET, None, f"{path}: {exc}"
    except ValueError as exc:
        return EXIT_INPUT, None, f"{path}: {exc}"


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        seed = _resolve_seed(args)
    except ValueError as exc:
        print(f"hspan: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.command == "gen":
        return _run_gen(args, seed)

    runner = {"span": _run_span, "compare": _run_compare, "verify": _run_verify}[args.command]
    jobs = max(1, args.jobs)
    if jobs == 1 or len(args.files) == 1:
        results = [_run_file(runner, path, args, seed) for path in args.files]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_file, runner, path, args, seed) for path in args.files]
            results = [f.result() for f in futures]

    worst = EXIT_OK
    for code, report, diagnostic in results:
        if report is not None:
            sys.stdout.write(json.dumps(report) + "\n")
        if diagnostic is not None:
            print(f"hspan {args.command}: {diagnostic}", file=sys.stderr)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
