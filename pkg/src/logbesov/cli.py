"""Command-line interface.

Verbs: partition-check, norm, criteria, lowerbound, exp-growth, charfun,
sandwich.  Global flags: --grid J=<J>[,dim=<d>] --out DIR --format csv|json.
Exit code 0 iff every configured assertion passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .criteria import verdict
from .errors import LogBesovError
from .experiments import RUNNERS, ExperimentConfig, Table
from .fileio import load_sfn, save_dpu
from .gallery import family_from_spec, gallery_from_spec
from .grid import INF, GridSpec
from .norms import BesovParams, DiffParams, besov_norm, diffspace_norm, dini_norm, tl_norm_inf
from .partition import build_partition
from .paraproducts import multiplier_lower_bound


def _parse_exponent(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return INF
    return float(text)


def _parse_grid(text: str) -> tuple[int, int]:
    j, dim = 14, 1
    for item in text.split(","):
        key, _, val = item.partition("=")
        key = key.strip().lower()
        if key == "j":
            j = int(val)
        elif key == "dim":
            dim = int(val)
        else:
            raise argparse.ArgumentTypeError(f"unknown grid field {key!r}")
    return j, dim


def _emit_table(table: Table, args) -> int:
    text = table.to_csv() if args.format == "csv" else table.to_json()
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        path = outdir / f"{table.name}.{args.format}"
        path.write_text(text)
        print(f"wrote {path}")
    else:
        print(text)
    for check in table.checks:
        status = "PASS" if check.passed else "FAIL"
        detail = f"  ({check.detail})" if check.detail else ""
        print(f"[{status}] {check.label}{detail}")
    return 0 if table.ok else 1


def _load_input(args, grid: GridSpec):
    if getattr(args, "input", None):
        f = load_sfn(args.input)
        return f, f.grid
    if getattr(args, "gallery", None):
        return gallery_from_spec(grid, args.gallery), grid
    raise LogBesovError("need --input file.sfn or --gallery SPEC")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="logbesov",
        description="Numerical laboratory for logarithmic Besov spaces on the torus",
    )
    parser.add_argument("--grid", type=_parse_grid, default=(14, 1), help="J=<int>[,dim=<1|2>]")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default="json")
    sub = parser.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("partition-check", help="partition-of-unity invariants")
    sp.add_argument("--kind", choices=("radial", "tensor"), default="radial")
    sp.add_argument("--export", default=None, help="also write the partition as .dpu")

    sp = sub.add_parser("norm", help="evaluate a function-space norm")
    sp.add_argument("--space", choices=("besov", "tl", "diff", "dini"), default="besov")
    sp.add_argument("--s", type=float, default=0.0)
    sp.add_argument("--b", type=float, default=0.0)
    sp.add_argument("--d", type=float, default=0.0)
    sp.add_argument("--p", type=_parse_exponent, default=INF)
    sp.add_argument("--q", type=_parse_exponent, default=INF)
    sp.add_argument("--m", type=int, default=1, help="modulus order for --space diff")
    sp.add_argument("--input", default=None)
    sp.add_argument("--gallery", default=None)

    sp = sub.add_parser("criteria", help="multiplier criterion report")
    sp.add_argument("--p", type=_parse_exponent, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--input", default=None)
    sp.add_argument("--gallery", default=None)

    sp = sub.add_parser("lowerbound", help="multiplier-norm lower bound over a family")
    sp.add_argument("--f", required=True, help="gallery spec of the multiplier")
    sp.add_argument("--family", required=True, help="family spec, e.g. packets:cases=1-5,m=8,b=0")
    sp.add_argument("--p", type=_parse_exponent, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--s", type=float, default=0.0)
    sp.add_argument("--q", type=_parse_exponent, default=INF)

    for verb in ("exp-growth", "charfun", "sandwich"):
        sp = sub.add_parser(verb, help=f"run the {verb} experiment")
        sp.add_argument("--kind", choices=("radial", "tensor"), default="radial")
        sp.add_argument("--b-list", default="-2,-1,0,0.5,1,2")
        sp.add_argument("--p-list", default="1,inf")
        sp.add_argument("--m-min", type=int, default=3)
        sp.add_argument("--m-max", type=int, default=10)
        sp.add_argument("--shape", choices=("cube", "halfspace"), default="cube")
        sp.add_argument("--seed", type=int, default=0)

    args = parser.parse_args(argv)
    j, dim = args.grid
    grid = GridSpec(dim, j)

    try:
        if args.verb == "partition-check":
            config = ExperimentConfig(name="partition-check", dim=dim, log2_samples=j, kind=args.kind)
            table = RUNNERS["partition-check"](config)
            if args.export:
                save_dpu(args.export, build_partition(grid, args.kind))
                print(f"wrote {args.export}")
            return _emit_table(table, args)

        if args.verb == "norm":
            f, grid = _load_input(args, grid)
            partition = build_partition(grid)
            if args.space == "besov":
                res = besov_norm(f, partition, BesovParams(args.s, args.b, args.p, args.q))
            elif args.space == "tl":
                res = tl_norm_inf(f, partition, args.s, args.b, args.q)
            elif args.space == "diff":
                res = diffspace_norm(f, DiffParams(args.s, args.b, args.d, args.p, args.q, args.m))
            else:
                res = dini_norm(f)
            print(json.dumps({"value": res.value, "tail": res.tail, "per_level": list(res.per_level)}))
            return 0

        if args.verb == "criteria":
            f, grid = _load_input(args, grid)
            partition = build_partition(grid)
            report = verdict(f, partition, args.p, args.b)
            text = json.dumps(report.to_dict(), indent=2)
            if args.out:
                outdir = Path(args.out)
                outdir.mkdir(parents=True, exist_ok=True)
                (outdir / "report.json").write_text(text)
                print(f"wrote {outdir / 'report.json'}")
            else:
                print(text)
            return 0

        if args.verb == "lowerbound":
            f = gallery_from_spec(grid, args.f)
            partition = build_partition(grid)
            family = family_from_spec(grid, args.family)
            bound, name = multiplier_lower_bound(
                f, partition, BesovParams(args.s, args.b, args.p, args.q), family
            )
            print(json.dumps({"lower_bound": bound, "argmax": name}))
            return 0

        # experiment verbs
        b_list = tuple(float(x) for x in args.b_list.split(","))
        p_list = tuple(_parse_exponent(x) for x in args.p_list.split(","))
        config = ExperimentConfig(
            name=args.verb,
            dim=dim,
            log2_samples=j,
            kind=args.kind,
            b_list=b_list,
            p_list=p_list,
            m_range=(args.m_min, args.m_max),
            shape=args.shape,
            seed=args.seed,
        )
        table = RUNNERS[args.verb](config)
        return _emit_table(table, args)
    except LogBesovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
