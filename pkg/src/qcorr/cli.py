"""Command-line front end.

Subcommands: compute (single point), sweep (parameter grid to CSV), figure
(regenerate the data behind the standard plots), conjecture (ensemble
sweep of gd >= negativity^2) and oracle-compare (closed forms against the
matrix-based oracle). Output is CSV or JSON with floats at 12 significant
digits; every stochastic path is seeded, so identical flags give
byte-identical output.

Exit codes: 0 success, 2 usage, 3 domain or capability error,
4 conjecture violation, 1 oracle-compare mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import closed_forms as cf
from . import oracle
from .states import (
    PseudoPureParams,
    WernerParams,
    build_isotropic,
    build_pseudo_pure,
    build_werner,
    isotropic_params,
    normalized_schmidt,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_VIOLATION = 4

ALL_MEASURES = ("discord", "cc", "mi", "gd", "negativity", "eof", "asymptote")
WERNER_MEASURES = frozenset({"discord", "cc", "mi", "eof", "asymptote"})
PP_MEASURES = frozenset({"discord", "cc", "mi", "gd", "negativity", "asymptote"})
NUMERIC_MEASURES = frozenset({"discord", "cc", "mi", "gd", "negativity"})

CSV_HEADER = "family,d,param_name,param_value,measure,value,method"


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _parse_measures(text: str) -> list[str]:
    names = [m.strip() for m in text.split(",") if m.strip()]
    if not names:
        raise argparse.ArgumentTypeError("no measures given")
    for name in names:
        if name not in ALL_MEASURES:
            raise argparse.ArgumentTypeError(
                f"unknown measure {name!r}; choose from {', '.join(ALL_MEASURES)}"
            )
    return names


def _parse_int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty integer list")
    return values


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


def _schmidt_vector(args) -> np.ndarray:
    if args.normalize:
        return normalized_schmidt(args.schmidt)
    return np.asarray(args.schmidt, dtype=float)


def _grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise ValueError("grid step must be positive")
    if start > stop:
        raise ValueError("grid start must not exceed stop")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [min(start + i * step, stop) for i in range(count)]


def _family_measures(family: str) -> frozenset[str]:
    return WERNER_MEASURES if family == "werner" else PP_MEASURES


def _check_measures(family: str, measures: list[str]) -> None:
    bad = [m for m in measures if m not in _family_measures(family)]
    if bad:
        raise ValueError(
            f"measure(s) {', '.join(bad)} have no closed form for family {family!r}"
        )


def _closed_value(family: str, measure: str, d: int, value: float, u) -> float:
    if family == "werner":
        return {
            "discord": lambda: cf.werner_discord(d, value),
            "cc": lambda: cf.werner_classical_correlations(d, value),
            "mi": lambda: cf.werner_mutual_information(d, value),
            "eof": lambda: cf.werner_eof(value),
            "asymptote": lambda: cf.werner_discord_asymptote(value),
        }[measure]()
    params = (
        isotropic_params(d, value)
        if family == "isotropic"
        else PseudoPureParams(d, value, u)
    )
    return {
        "discord": lambda: cf.pp_discord(params),
        "cc": lambda: cf.pp_classical_correlations(params),
        "mi": lambda: cf.pp_mutual_information(params),
        "gd": lambda: cf.pp_gd(params),
        "negativity": lambda: cf.pp_negativity(params),
        "asymptote": lambda: cf.pp_discord_asymptote(params.alpha, params.schmidt),
    }[measure]()


def _build_state(family: str, d: int, value: float, u):
    if family == "werner":
        return build_werner(WernerParams(d, value))
    if family == "isotropic":
        return build_isotropic(d, value)
    return build_pseudo_pure(PseudoPureParams(d, value, u))


def _numeric_value(measure: str, rho, cfg: oracle.OptimizerConfig) -> float:
    if measure == "discord":
        return oracle.discord_numeric(rho, cfg)
    if measure == "cc":
        return oracle.mutual_information_numeric(rho) - oracle.discord_numeric(rho, cfg)
    if measure == "mi":
        return oracle.mutual_information_numeric(rho)
    if measure == "gd":
        return oracle.gd_numeric(rho, cfg)
    return oracle.negativity_numeric(rho)


def _param_name(family: str) -> str:
    return "lambda" if family == "werner" else "alpha"


def _param_value(args) -> float:
    if args.family == "werner":
        if args.lam is None:
            raise ValueError("family werner requires --lambda")
        return args.lam
    if args.alpha is None:
        raise ValueError(f"family {args.family} requires --alpha")
    return args.alpha


def _require_schmidt(parser: argparse.ArgumentParser, args) -> None:
    if args.family == "pp" and args.schmidt is None:
        parser.error("family pp requires --schmidt")
    if args.family != "pp" and args.schmidt is not None:
        parser.error("--schmidt is only valid for family pp")


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)


def _records_csv(records: list[dict]) -> str:
    lines = [CSV_HEADER]
    for rec in records:
        lines.append(
            ",".join(
                [
                    rec["family"],
                    str(rec["d"]),
                    rec["param_name"],
                    _fmt(rec["param_value"]),
                    rec["measure"],
                    _fmt(rec["value"]),
                    rec["method"],
                ]
            )
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_compute(parser, args) -> int:
    _require_schmidt(parser, args)
    value = _param_value(args)
    _check_measures(args.family, args.measures)
    u = _schmidt_vector(args) if args.family == "pp" else None
    name = _param_name(args.family)
    records = []
    for measure in args.measures:
        records.append(
            {
                "family": args.family,
                "d": args.d,
                "param_name": name,
                "param_value": value,
                "measure": measure,
                "value": _closed_value(args.family, measure, args.d, value, u),
                "method": "closed",
            }
        )
    if args.numeric:
        rho = _build_state(args.family, args.d, value, u)
        cfg = oracle.OptimizerConfig(restarts=args.restarts, seed=args.seed)
        for measure in args.measures:
            if measure not in NUMERIC_MEASURES:
                continue
            records.append(
                {
                    "family": args.family,
                    "d": args.d,
                    "param_name": name,
                    "param_value": value,
                    "measure": measure,
                    "value": _numeric_value(measure, rho, cfg),
                    "method": "numeric",
                }
            )
    if args.format == "json":
        _write(json.dumps(records, indent=2) + "\n", args.out)
    else:
        _write(_records_csv(records), args.out)
    return EXIT_OK


def cmd_sweep(parser, args) -> int:
    _require_schmidt(parser, args)
    _check_measures(args.family, args.measures)
    u = _schmidt_vector(args) if args.family == "pp" else None
    name = _param_name(args.family)
    grid = _grid(args.start, args.stop, args.step)
    records = []
    for d in args.d:
        for value in grid:
            for measure in args.measures:
                records.append(
                    {
                        "family": args.family,
                        "d": d,
                        "param_name": name,
                        "param_value": value,
                        "measure": measure,
                        "value": _closed_value(args.family, measure, d, value, u),
                        "method": "closed",
                    }
                )
    _write(_records_csv(records), args.out)
    return EXIT_OK


_FIGURES = {
    "fig1": "Werner discord vs lambda per dimension",
    "fig2": "Werner classical correlations vs lambda per dimension",
    "fig3": "Werner discord and entanglement of formation vs lambda",
    "fig4": "isotropic discord vs alpha per dimension",
    "fig5": "isotropic classical correlations vs alpha per dimension",
    "fig6": "isotropic discord minus classical correlations vs alpha",
}


def _figure_table(name: str, dims: list[int]) -> tuple[list[str], list[list[float]]]:
    grid = [i / 100.0 for i in range(101)]
    rows = []
    if name in ("fig1", "fig2"):
        fn = cf.werner_discord if name == "fig1" else cf.werner_classical_correlations
        label = "discord" if name == "fig1" else "cc"
        header = ["lambda"] + [f"{label}_d{d}" for d in dims]
        for lam in grid:
            rows.append([lam] + [fn(d, lam) for d in dims])
    elif name == "fig3":
        header = ["lambda"] + [f"discord_d{d}" for d in dims] + ["eof"]
        for lam in grid:
            rows.append([lam] + [cf.werner_discord(d, lam) for d in dims] + [cf.werner_eof(lam)])
    elif name in ("fig4", "fig5"):
        fn = cf.pp_discord if name == "fig4" else cf.pp_classical_correlations
        label = "discord" if name == "fig4" else "cc"
        header = ["alpha"] + [f"{label}_d{d}" for d in dims]
        for alpha in grid:
            rows.append([alpha] + [fn(isotropic_params(d, alpha)) for d in dims])
    else:
        header = ["alpha"] + [f"diff_d{d}" for d in dims] + ["binary_entropy"]
        for alpha in grid:
            diffs = []
            for d in dims:
                params = isotropic_params(d, alpha)
                diffs.append(cf.pp_discord(params) - cf.pp_classical_correlations(params))
            rows.append([alpha] + diffs + [cf.binary_entropy(alpha)])
    return header, rows


def cmd_figure(parser, args) -> int:
    dims = args.dims
    if dims is None:
        dims = [2, 50] if args.name == "fig3" else [2, 3, 10, 50]
    header, rows = _figure_table(args.name, dims)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_conjecture(parser, args) -> int:
    report = oracle.conjecture_sweep(args.samples, (args.dmin, args.dmax), args.seed)
    payload = {
        "samples": report.samples,
        "min_gap": report.min_gap,
        "violations": report.violations,
        "worst_case": {
            "d": report.worst_case.d,
            "alpha": report.worst_case.alpha,
            "schmidt": [float(x) for x in report.worst_case.schmidt],
        },
        "checked": report.checked,
        "max_gd_gap": report.max_gd_gap,
        "max_negativity_gap": report.max_negativity_gap,
    }
    _write(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_oracle_compare(parser, args) -> int:
    _require_schmidt(parser, args)
    if args.measure not in _family_measures(args.family):
        raise ValueError(
            f"measure {args.measure!r} has no closed form for family {args.family!r}"
        )
    if args.measure not in NUMERIC_MEASURES:
        raise ValueError(f"measure {args.measure!r} has no numeric oracle")
    u = _schmidt_vector(args) if args.family == "pp" else None
    name = _param_name(args.family)
    tolerance = 1e-9 if args.measure == "negativity" else 1e-6
    cfg = oracle.OptimizerConfig(restarts=args.restarts, seed=args.seed)
    lines = ["family,d,measure,param_name,param_value,closed,numeric,abs_gap"]
    max_gap = 0.0
    for value in _grid(args.start, args.stop, args.step):
        closed = _closed_value(args.family, args.measure, args.d, value, u)
        rho = _build_state(args.family, args.d, value, u)
        numeric = _numeric_value(args.measure, rho, cfg)
        gap = abs(closed - numeric)
        max_gap = max(max_gap, gap)
        lines.append(
            ",".join(
                [
                    args.family,
                    str(args.d),
                    args.measure,
                    name,
                    _fmt(value),
                    _fmt(closed),
                    _fmt(numeric),
                    _fmt(gap),
                ]
            )
        )
    _write("\n".join(lines) + "\n", args.out)
    status = "ok" if max_gap <= tolerance else "fail"
    print(
        f"oracle-compare {args.family} d={args.d} {args.measure}: "
        f"max_gap={max_gap:.3e} tolerance={tolerance:.0e} {status}",
        file=sys.stderr,
    )
    return EXIT_OK if status == "ok" else EXIT_FAILURE


# ---------------------------------------------------------------------------
# Parser wiring
# ---------------------------------------------------------------------------

def _add_family_options(sub: argparse.ArgumentParser, sweep: bool) -> None:
    sub.add_argument("--family", required=True, choices=("werner", "pp", "isotropic"))
    if sweep:
        sub.add_argument("--d", required=True, type=_parse_int_list, metavar="D1,D2,...")
    else:
        sub.add_argument("--d", required=True, type=int)
    sub.add_argument("--schmidt", type=_parse_float_list, metavar="U1,U2,...",
                     help="Schmidt amplitudes (family pp only)")
    sub.add_argument("--normalize", action="store_true",
                     help="rescale and sort the Schmidt amplitudes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcorr",
        description="Correlation measures for Werner, pseudo-pure and isotropic states.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="closed forms at a single parameter point")
    _add_family_options(compute, sweep=False)
    compute.add_argument("--lambda", dest="lam", type=float, help="Werner mixing parameter")
    compute.add_argument("--alpha", type=float, help="pseudo-pure / isotropic mixing parameter")
    compute.add_argument("--measures", required=True, type=_parse_measures, metavar="M1,M2,...")
    compute.add_argument("--numeric", action="store_true", help="add matrix-oracle rows")
    compute.add_argument("--restarts", type=int, default=32)
    compute.add_argument("--seed", type=int, default=0)
    compute.add_argument("--format", choices=("csv", "json"), default="csv")
    compute.add_argument("--out")
    compute.set_defaults(func=cmd_compute)

    sweep = commands.add_parser("sweep", help="closed forms over a parameter grid (CSV)")
    _add_family_options(sweep, sweep=True)
    sweep.add_argument("--start", required=True, type=float)
    sweep.add_argument("--stop", required=True, type=float)
    sweep.add_argument("--step", required=True, type=float)
    sweep.add_argument("--measures", required=True, type=_parse_measures, metavar="M1,M2,...")
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out")
    sweep.set_defaults(func=cmd_sweep)

    figure = commands.add_parser("figure", help="regenerate the data behind a standard figure")
    figure.add_argument("name", choices=sorted(_FIGURES))
    figure.add_argument("--dims", type=_parse_int_list, metavar="D1,D2,...")
    figure.add_argument("--out")
    figure.set_defaults(func=cmd_figure)

    conjecture = commands.add_parser(
        "conjecture", help="ensemble check of gd >= negativity^2 on pseudo-pure states"
    )
    conjecture.add_argument("--samples", required=True, type=int)
    conjecture.add_argument("--dmin", type=int, default=2)
    conjecture.add_argument("--dmax", type=int, default=6)
    conjecture.add_argument("--seed", type=int, default=42)
    conjecture.add_argument("--out")
    conjecture.set_defaults(func=cmd_conjecture)

    compare = commands.add_parser(
        "oracle-compare", help="closed form vs matrix oracle over a grid"
    )
    _add_family_options(compare, sweep=False)
    compare.add_argument("--measure", required=True, choices=sorted(NUMERIC_MEASURES))
    compare.add_argument("--start", required=True, type=float)
    compare.add_argument("--stop", required=True, type=float)
    compare.add_argument("--step", required=True, type=float)
    compare.add_argument("--restarts", type=int, default=32)
    compare.add_argument("--seed", type=int, default=0)
    compare.add_argument("--out")
    compare.set_defaults(func=cmd_oracle_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except ValueError as exc:
        print(f"qcorr: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
