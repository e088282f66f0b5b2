"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch (or a decoding failure inside
the guaranteed radius), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .code import DistanceConfig, GeneratorMatrix, LinearCode, default_dim_limit, min_distance
from .constructions import (
    ConcatConfig,
    concatenate,
    coset_partition_eccir,
    cubic_residue_pair,
    cubic_residue_triple,
    mdsir_from_grs,
    piret_pair,
    piret_search,
    primitive_pair,
    quadratic_residue_pair,
)
from .cyclic import CyclicCodeSpec, cosets_union, generator_matrix_of
from .eccir import Eccir, compact_dumps, dbt_baseline_split, distance_profile
from .sim import run_trials
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_parts(text: str) -> list[list[int]]:
    """'1,3;5,15;7,11' -> [[1, 3], [5, 15], [7, 11]] (coset representatives per component)."""
    parts = [_int_list(p) for p in text.split(";") if p.strip()]
    if not parts or any(not p for p in parts):
        raise UsageError(f"bad --parts value {text!r}")
    return parts


def _read_json(path: str):
    try:
        with open(path) if path != "-" else sys.stdin as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as f:
            f.write(text)
            if not text.endswith("\n"):
                f.write("\n")


def _config(args) -> DistanceConfig:
    limit = args.dim_limit if getattr(args, "dim_limit", None) is not None else default_dim_limit()
    return DistanceConfig(exhaustive_dim_limit=limit, threads=max(1, getattr(args, "threads", 1) or 1))


def _inner_spec(args) -> CyclicCodeSpec:
    reps = _int_list(args.inner_cosets)
    return CyclicCodeSpec(args.inner_n, 2, tuple(sorted(cosets_union(reps, args.inner_n, 2))))


def build(args) -> Eccir:
    f = args.family
    if f == "grs-mdsir":
        return mdsir_from_grs(args.q, args.n, args.L)
    if f == "concat":
        outer = mdsir_from_grs(args.q, args.n_out, args.L)
        if args.inner:
            inner = GeneratorMatrix.from_json(_read_json(args.inner))
        else:
            inner = generator_matrix_of(_inner_spec(args))
        return concatenate(ConcatConfig(outer, inner))
    if f == "piret":
        spec = _inner_spec(args)
        if args.beta is None:
            return piret_search(spec, config=_config(args)).eccir
        return piret_pair(spec, args.beta)
    if f == "primitive-pair":
        return primitive_pair(args.m)
    if f == "qr":
        return quadratic_residue_pair(args.n)
    if f == "cr":
        return cubic_residue_pair(args.n) if args.pair else cubic_residue_triple(args.n)
    if f == "coset-partition":
        parts = [sorted(cosets_union(p, args.n, args.q)) for p in parse_parts(args.parts)]
        return coset_partition_eccir(args.n, args.q, parts, params={"reps": parse_parts(args.parts)})
    if f == "dbt-split":
        A = GeneratorMatrix.from_json(_read_json(args.matrix))
        e, _ = dbt_baseline_split(A, args.k, args.L, args.d, _config(args))
        return e
    raise UsageError(f"unknown family {f}")


def cmd_construct(args) -> int:
    _write(build(args).dumps(), args.out)
    return 0


def cmd_profile(args) -> int:
    e = Eccir.from_json(_read_json(args.input))
    p = distance_profile(e, _config(args), use_equivalences=args.equivalences)
    if args.format == "csv":
        _write(p.to_csv(), args.out)
    else:
        _write(compact_dumps({"L": p.L, "n": p.n, "q": p.q, "entries": p.to_json()}), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    checks = run_suite(args.suite, extended=args.extended, config=_config(args))
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


def cmd_simulate(args) -> int:
    e = Eccir.from_json(_read_json(args.input))
    side = _int_list(args.side_info) if args.side_info else []
    try:
        report = run_trials(e, side, args.errors, args.trials, args.seed, _config(args), args.flip_prob)
    except AssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write(compact_dumps(report.to_json()), args.out)
    return 0


def cmd_search_piret(args) -> int:
    spec = _inner_spec(args)
    res = piret_search(spec, verify=not args.no_verify, config=_config(args))
    inner_d = min_distance(LinearCode(generator_matrix_of(spec), cyclic=spec), _config(args))
    out = {
        "inner": {"n": spec.n, "k": spec.k, "d": inner_d.to_json(), "nonzeroes": list(spec.nonzeroes)},
        "beta": res.beta,
        "d_C1": res.distance,
        "d_sum": inner_d.value,
        "maximizers": len(res.maximizers),
    }
    if args.out:
        _write(res.eccir.dumps(), args.out)
    print(json.dumps(out, indent=1))
    return 0


def _add_common(p):
    p.add_argument("--dim-limit", type=int, default=None,
                   help="exhaustive enumeration limit in bits (default: ECCIR_DIM_LIMIT or 28)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="infocode", description="Error-correcting codes for informed receivers")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an ECCIR and write its JSON")
    fam = c.add_subparsers(dest="family", required=True)
    g = fam.add_parser("grs-mdsir")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--L", type=int, required=True)
    g = fam.add_parser("concat")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n-out", type=int, required=True)
    g.add_argument("--L", type=int, required=True)
    g.add_argument("--inner", help="inner generator matrix JSON file")
    g.add_argument("--inner-n", type=int, default=7)
    g.add_argument("--inner-cosets", default="1", help="coset representatives of the inner cyclic code")
    g = fam.add_parser("piret")
    g.add_argument("--inner-n", type=int, required=True)
    g.add_argument("--inner-cosets", default="1")
    g.add_argument("--beta", type=int, default=None, help="field element as integer; searched when omitted")
    g = fam.add_parser("primitive-pair")
    g.add_argument("--m", type=int, required=True)
    g = fam.add_parser("qr")
    g.add_argument("--n", type=int, required=True)
    g = fam.add_parser("cr")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--pair", action="store_true", help="keep only the first two components")
    g = fam.add_parser("coset-partition")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--q", type=int, default=2)
    g.add_argument("--parts", required=True, help='coset representatives, e.g. "1,3;5,15;7,11"')
    g = fam.add_parser("dbt-split")
    g.add_argument("--matrix", required=True, help="systematic generator [I | G] as JSON")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--L", type=int, required=True)
    g.add_argument("--d", type=int, default=None)
    for p in fam.choices.values():
        p.add_argument("--out", default=None)
        _add_common(p)
    c.set_defaults(func=cmd_construct)

    p = sub.add_parser("profile", help="distance of every subcode")
    p.add_argument("input")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--equivalences", action="store_true", help="reuse distances across recorded equivalences")
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="reproduce the reference tables")
    p.add_argument("suite", nargs="?", default="all", help=f"one of {', '.join(SUITES)} or all")
    p.add_argument("--extended", action="store_true", help="include the 2^28 enumerations")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo decoding at an informed receiver")
    p.add_argument("input")
    p.add_argument("--side-info", default="", help="known message indices, e.g. 1,2")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--errors", type=int, help="exact error weight per trial")
    mode.add_argument("--flip-prob", type=float, help="independent symbol error probability")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search-piret", help="best beta for a binary irreducible inner code")
    p.add_argument("--n", dest="inner_n", type=int, required=True)
    p.add_argument("--cosets", dest="inner_cosets", default="1")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--out", default=None, help="also write the resulting ECCIR")
    _add_common(p)
    p.set_defaults(func=cmd_search_piret)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
