"""Command-line front end: ``geoshape {generate,solve,energy,resample}``.

Exit codes: 0 success/converged, 1 input error (nothing written),
2 solver stopped without converging (best path so far is still written).
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import astuple, fields

import numpy as np

from . import generators, io, svg
from .curvegeom import DegenerateEdge
from .energy import total_energy
from .metrics import PRESETS, MetricCoefficients
from .optimize import SizeMismatch, SolverConfig, TraceRow, align, initial_path, solve

log = logging.getLogger("geoshape")

_INT_PARAMS = {"N", "k"}


class InputError(Exception):
    pass


def parse_shape_spec(spec: str) -> np.ndarray:
    """``kind:key=val,...``, e.g. ``star:k=5,r_in=0.5,r_out=1,N=100``; ``cx``/``cy`` set the centre."""
    kind, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq:
            raise InputError(f"bad shape parameter {item!r} (expected key=value)")
        try:
            params[key] = int(val) if key in _INT_PARAMS else float(val)
        except ValueError:
            raise InputError(f"bad value for {key}: {val!r}") from None
    if "cx" in params or "cy" in params:
        params["center"] = (params.pop("cx", 0.0), params.pop("cy", 0.0))
    try:
        return generators.generate(kind.strip(), **params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {kind}: {exc}") from None


def metric_from_args(args) -> tuple[str, MetricCoefficients]:
    if args.coeffs is not None:
        coeff = MetricCoefficients.parse(args.coeffs)
    else:
        coeff = PRESETS[args.metric or "metric1"]
    for name, preset in PRESETS.items():
        if preset == coeff:
            return name, coeff
    return "coeffs:" + ",".join(repr(float(c)) for c in coeff.as_tuple()), coeff


def _endpoint(path, spec, which):
    if (path is None) == (spec is None):
        raise InputError(f"give exactly one of --{which} FILE or --gen-{which} SPEC")
    return io.read_shape(path) if path is not None else parse_shape_spec(spec)


def write_trace(path, trace: list[TraceRow]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow([f.name for f in fields(TraceRow)])
        for row in trace:
            w.writerow([row.iter] + [repr(float(x)) for x in astuple(row)[1:]])


def cmd_generate(args) -> int:
    io.write_shape(args.out, parse_shape_spec(args.spec))
    return 0


def cmd_resample(args) -> int:
    io.write_shape(args.out, generators.resample(io.read_shape(args.input), args.n))
    return 0


def cmd_energy(args) -> int:
    slices, _, _ = io.read_path(args.path)
    _, coeff = metric_from_args(args)
    out = total_energy(slices, coeff, args.penalty_weight)
    json.dump({"objective": out.objective, "energy": out.total_energy, "penalty": out.penalty,
               "per_step": [float(x) for x in out.per_step]}, sys.stdout)
    sys.stdout.write("\n")
    return 0


def cmd_solve(args) -> int:
    c0 = _endpoint(args.from_file, args.gen_from, "from")
    c1 = _endpoint(args.to_file, args.gen_to, "to")
    name, coeff = metric_from_args(args)
    if len(c0) != len(c1):
        raise SizeMismatch(f"endpoint curves have {len(c0)} and {len(c1)} vertices; "
                           f"resample one with `geoshape resample FILE --n {len(c0)}`")
    if args.align:
        a = align(c0, c1)
        log.info("aligned target: shift %d, reversed %s", a.shift, a.reversed)
        c1 = a.curve
    config = SolverConfig(max_iters=args.max_iters, grad_tol=args.grad_tol,
                          step_tol=args.step_tol, memory=args.memory,
                          penalty_weight=args.penalty_weight)
    init = initial_path(c0, c1, args.T)
    if args.perturb:
        rng = np.random.default_rng(args.seed)
        scale = args.perturb * float(np.linalg.norm(np.diff(c0, axis=0), axis=1).mean())
        init[1:-1] += scale * rng.standard_normal(init[1:-1].shape)
    total_energy(init, coeff, config.penalty_weight)  # rejects degenerate input early

    path, report = solve(c0, c1, args.T, coeff, config, initial=init)
    log.info("%s after %d iterations: objective %.12g, energy %.12g, penalty %.3g, |g| %.3g",
             report.termination, report.iterations, report.objective, report.energy,
             report.penalty, report.grad_norm)
    if args.out:
        io.write_path(args.out, path, name, report.objective)
    if args.svg:
        svg.write_filmstrip(args.svg, path)
    if args.csv:
        write_trace(args.csv, report.trace)
    print(json.dumps({"termination": report.termination, "iterations": report.iterations,
                      "objective": report.objective, "energy": report.energy,
                      "penalty": report.penalty, "grad_norm": report.grad_norm,
                      "rejected_steps": report.n_rejected}))
    return 0 if report.converged else 2


def _add_metric(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--metric", choices=sorted(PRESETS), help="preset (default metric1)")
    g.add_argument("--coeffs", metavar="A0,A1,A2,A3,B0,B1,C0")
    p.add_argument("--penalty-weight", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geoshape", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated shape")
    p.add_argument("spec", help="kind:key=val,... with kind in circle, ellipse, star, square")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("resample", help="arclength-uniform resampling of a shape file")
    p.add_argument("input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_resample)

    p = sub.add_parser("energy", help="evaluate a path file")
    p.add_argument("--path", required=True)
    _add_metric(p)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("solve", help="compute a geodesic between two shapes")
    p.add_argument("--from", dest="from_file", metavar="FILE")
    p.add_argument("--gen-from", metavar="SPEC")
    p.add_argument("--to", dest="to_file", metavar="FILE")
    p.add_argument("--gen-to", metavar="SPEC")
    _add_metric(p)
    p.add_argument("-T", type=int, default=20, help="time steps (default 20)")
    p.add_argument("--align", action="store_true", help="relabel the target to match the source")
    p.add_argument("--out", help="PathFile output")
    p.add_argument("--svg", help="filmstrip output")
    p.add_argument("--csv", help="per-iteration trace output")
    p.add_argument("--seed", type=int, default=0, help="seed for --perturb")
    p.add_argument("--perturb", type=float, default=0.0,
                   help="random offset of the initial interior slices, in mean edge lengths")
    defaults = SolverConfig()
    p.add_argument("--max-iters", type=int, default=defaults.max_iters)
    p.add_argument("--grad-tol", type=float, default=defaults.grad_tol)
    p.add_argument("--step-tol", type=float, default=defaults.step_tol)
    p.add_argument("--memory", type=int, default=defaults.memory)
    p.set_defaults(func=cmd_solve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InputError, io.FormatError, FileNotFoundError, SizeMismatch,
            DegenerateEdge, ValueError) as exc:
        print(f"geoshape: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
