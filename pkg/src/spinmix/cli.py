"""Command-line front end.

Subcommands: rho | pmf | distinguish | urn.  All results go to stdout,
diagnostics to stderr; exit status is 0 exactly when no error occurred.
JSON encodes complex entries as [re, im] pairs, matrices as row-major
nested arrays, and floats with 17 significant digits so output is
byte-identical across reruns and parses back losslessly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .discrimination import build_report
from .ensembles import (
    CountPmf,
    ensemble_literal,
    make_urn,
    parse_ensemble,
    reduced_density_matrix,
    urn_composition,
)
from .linalg import ATOL_ALGEBRA
from .measurement import exact_count_pmf, monte_carlo_count_pmf, pmf_moments
from .spin import X_AXIS, Z_AXIS, axis_basis_matrix, axis_label, parse_axis


def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _json_text(value) -> str:
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, float):
        return _fmt_float(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        items = ", ".join(f"{json.dumps(k)}: {_json_text(v)}" for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_text(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _matrix_payload(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _pmf_values(pmf: CountPmf) -> list[float]:
    return [float(p) for p in pmf.probabilities]


def cmd_rho(args) -> str:
    if args.format != "json":
        raise ValueError("--format csv is available for pmf output only")
    spec = parse_ensemble(args.ensemble, args.n)
    rho = reduced_density_matrix(spec, args.k, atol=args.tolerance)
    payload = {
        "command": "rho",
        "ensemble": ensemble_literal(spec),
        "n": spec.n,
        "k": args.k,
        "matrix": _matrix_payload(rho.matrix),
    }
    if args.basis == "x":
        payload["matrix_x"] = _matrix_payload(axis_basis_matrix(rho, X_AXIS))
    return _json_text(payload) + "\n"


def _pmf_csv(pmf: CountPmf, empirical: CountPmf | None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["count", "probability"] + (["empirical"] if empirical is not None else [])
    writer.writerow(header)
    for m in range(pmf.n + 1):
        row = [str(m), _fmt_float(pmf.probabilities[m])]
        if empirical is not None:
            row.append(_fmt_float(empirical.probabilities[m]))
        writer.writerow(row)
    return buf.getvalue()


def _pmf_output(args, payload: dict, spec, pmf, axis) -> str:
    mean, variance = pmf_moments(pmf)
    empirical = None
    if args.trials > 0:
        empirical = monte_carlo_count_pmf(spec, axis, args.trials, args.seed, workers=args.workers)
    if args.format == "csv":
        return _pmf_csv(pmf, empirical)
    payload["exact"] = _pmf_values(pmf)
    payload["mean"] = mean
    payload["variance"] = variance
    if empirical is not None:
        payload["empirical"] = _pmf_values(empirical)
        payload["trials"] = args.trials
        payload["seed"] = args.seed
    return _json_text(payload) + "\n"


def cmd_pmf(args) -> str:
    if args.urn:
        spec = make_urn(args.n, args.black)
        pmf = urn_composition(spec)
        # Counting z+ outcomes along z is exactly counting black balls, so
        # the empirical path reuses the measurement simulation unchanged.
        axis = Z_AXIS
        payload = {
            "command": "pmf",
            "ensemble": ensemble_literal(spec),
            "n": spec.n,
            "urn": True,
            "black": args.black,
        }
    else:
        if args.black is not None:
            raise ValueError("--black requires --urn")
        spec = parse_ensemble(args.ensemble, args.n)
        axis = parse_axis(args.axis)
        pmf = exact_count_pmf(spec, axis)
        payload = {
            "command": "pmf",
            "ensemble": ensemble_literal(spec),
            "n": spec.n,
            "axis": axis_label(axis),
        }
    return _pmf_output(args, payload, spec, pmf, axis)


def cmd_urn(args) -> str:
    spec = make_urn(args.n, args.black)
    pmf = urn_composition(spec)
    payload = {
        "command": "urn",
        "ensemble": ensemble_literal(spec),
        "n": spec.n,
        "black": args.black,
    }
    return _pmf_output(args, payload, spec, pmf, Z_AXIS)


def cmd_distinguish(args) -> str:
    a = parse_ensemble(args.a, args.n)
    b = parse_ensemble(args.b, args.n)
    if a.n != b.n:
        raise ValueError(f"--a and --b differ in n: {a.n} vs {b.n}")
    axes = [parse_axis(t) for t in (args.axis or ["x", "z"])]
    report = build_report(
        a,
        b,
        labels=(args.a.strip(), args.b.strip()),
        k_max=args.kmax,
        axes=axes,
        trials=args.trials,
        master_seed=args.seed,
        workers=args.workers,
    )
    axes_payload = {}
    for fig in report.per_axis:
        entry = {
            "tv_distance": fig.tv_distance,
            "bayes_success": fig.bayes_success,
        }
        if fig.monte_carlo is not None:
            entry["monte_carlo"] = {
                "success": fig.monte_carlo.value,
                "stderr": fig.monte_carlo.stderr,
                "trials": fig.monte_carlo.trials,
            }
        axes_payload[axis_label(fig.axis)] = entry
    payload = {
        "command": "distinguish",
        "pair": list(report.pair),
        "ensembles": [ensemble_literal(a), ensemble_literal(b)],
        "n": report.n,
        "trace_distances": [{"k": k, "distance": d} for k, d in report.trace_distances],
        "axes": axes_payload,
    }
    if args.trials > 0:
        payload["seed"] = args.seed
    return _json_text(payload) + "\n"


def _add_common(sub, *, trials: bool = True) -> None:
    sub.add_argument("--format", choices=["json", "csv"], default="json", help="output format")
    if trials:
        sub.add_argument("--trials", type=int, default=0, help="Monte Carlo trials (0 = exact only)")
        sub.add_argument("--seed", type=int, default=0, help="master seed for Monte Carlo streams")
        sub.add_argument("--workers", type=int, default=1, help="threads for Monte Carlo trials")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="spinmix",
        description="Exact and sampled statistics of fixed vs randomly mixed spin-1/2 ensembles.",
        formatter_class=fmt,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rho = sub.add_parser("rho", help="k-particle reduced density matrix", formatter_class=fmt)
    rho.add_argument("--ensemble", default="S", help="preset A|B|S[:axis] or fixed:/iid: literal")
    rho.add_argument("--n", type=int, default=10, help="ensemble size")
    rho.add_argument("--k", type=int, default=2, help="number of particles kept")
    rho.add_argument("--basis", choices=["z", "x"], default="z",
                     help="x additionally prints the matrix in the x product basis")
    rho.add_argument("--format", choices=["json", "csv"], default="json", help="output format")
    rho.add_argument("--tolerance", type=float, default=ATOL_ALGEBRA,
                     help="validation tolerance for algebraic identities")
    rho.set_defaults(func=cmd_rho)

    pmf = sub.add_parser("pmf", help="exact (and sampled) +1-count distribution",
                         formatter_class=fmt)
    pmf.add_argument("--ensemble", default="S", help="preset A|B|S[:axis] or fixed:/iid: literal")
    pmf.add_argument("--n", type=int, default=10, help="ensemble size")
    pmf.add_argument("--axis", default="z", help="measurement axis: x, y, z or ux,uy,uz")
    pmf.add_argument("--urn", action="store_true", help="classical urn composition instead")
    pmf.add_argument("--black", type=int, default=None,
                     help="with --urn: exact black-ball count (omit for random mixing)")
    _add_common(pmf)
    pmf.set_defaults(func=cmd_pmf)

    urn = sub.add_parser("urn", help="black-ball count distribution of an urn",
                         formatter_class=fmt)
    urn.add_argument("--n", type=int, default=10, help="number of balls")
    urn.add_argument("--black", type=int, default=None,
                     help="exact black-ball count (omit for random mixing)")
    _add_common(urn)
    urn.set_defaults(func=cmd_urn)

    dist = sub.add_parser("distinguish", help="distinguishability report for two ensembles",
                          formatter_class=fmt)
    dist.add_argument("--a", required=True, help="first ensemble literal")
    dist.add_argument("--b", required=True, help="second ensemble literal")
    dist.add_argument("--n", type=int, default=10, help="ensemble size")
    dist.add_argument("--kmax", type=int, default=2, help="largest k for trace distances")
    dist.add_argument("--axis", action="append", default=None,
                      help="measurement axis (repeatable; default: x and z)")
    dist.add_argument("--format", choices=["json"], default="json", help="output format")
    dist.add_argument("--trials", type=int, default=0, help="Monte Carlo trials (0 = exact only)")
    dist.add_argument("--seed", type=int, default=0, help="master seed for Monte Carlo streams")
    dist.add_argument("--workers", type=int, default=1, help="threads for Monte Carlo trials")
    dist.set_defaults(func=cmd_distinguish)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
