"""Command-line surface: one binary, subcommand per capability.

Exit codes: 0 success, 1 check failure, 2 usage error (argparse default).
Every run that writes an output file also writes the exact configuration
used next to it (<out>.config.json).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .bumps import build_double_pou, build_pou, make_adapted_family, verify_adapted
from .gfio import (
    FileFormatError,
    RunConfig,
    load_config,
    read_grid_function,
    write_grid_function,
)
from .grid import GridFunction
from .maximal import cz_decompose, maximal
from .multipliers import (
    apply_1d,
    apply_bilinear,
    symbol_coefficients,
    symbol_registry,
    validate_symbol,
)
from .paraproducts import ParaproductSpec, paraproduct_1p, paraproduct_2p
from .rearrange import rearrangement, zygmund_norm
from .squares import EpsilonSequence, hybrid, square_function
from .suite import run_suite

CONFIG_ENV = "TORUSHARMONICS_CONFIG"


def _add_io_arguments(parser, inputs=1):
    parser.add_argument("--in", dest="infile", required=True, help="input grid function")
    if inputs > 1:
        parser.add_argument("--in2", dest="infile2", help="second input")
    parser.add_argument("--out", dest="outfile", help="output path (JSON)")
    parser.add_argument("--format", default="json", choices=("json", "bin"))
    parser.add_argument(
        "--log-sizes",
        type=int,
        nargs="+",
        help="grid exponents (required when reading the binary format)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusharmonics",
        description="harmonic-analysis operators on the discretized torus",
    )
    parser.add_argument("--config", help="flat key = value configuration file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bumps", help="partition-of-unity diagnostics")
    p.add_argument("action", choices=("check",))
    p.add_argument("--scales", type=int, default=7)
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--out", dest="outfile")

    p = sub.add_parser("maximal", help="maximal functions")
    p.add_argument("--kind", default="hl")
    _add_io_arguments(p)

    p = sub.add_parser("cz", help="Calderon-Zygmund decomposition")
    p.add_argument("--alpha", type=float, required=True)
    _add_io_arguments(p)

    p = sub.add_parser("square", help="Littlewood-Paley square function")
    p.add_argument("--mode", default="plain", help="plain | shifted:n | sup:n")
    p.add_argument("--scales", type=int)
    _add_io_arguments(p)

    p = sub.add_parser("hybrid", help="bi-parameter hybrid operators")
    p.add_argument("--kind", default="SS", choices=("SS", "SM", "MS", "MM"))
    p.add_argument("--scales", type=int)
    _add_io_arguments(p)

    p = sub.add_parser("rearrange", help="decreasing rearrangement profile")
    p.add_argument("--emit", help="CSV output of (breakpoint, value) rows")
    _add_io_arguments(p)

    p = sub.add_parser("zygmund", help="Zygmund L(log L)^n norms")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--method", default="both", choices=("closed_form", "iterated", "both"))
    _add_io_arguments(p)

    p = sub.add_parser("multiplier", help="multiplier operators")
    action = p.add_subparsers(dest="action", required=True)
    pa = action.add_parser("apply")
    pa.add_argument("--symbol", required=True)
    _add_io_arguments(pa, inputs=2)
    pv = action.add_parser("validate")
    pv.add_argument("--symbol", required=True)
    pv.add_argument("--radius", type=int, default=32)
    pc = action.add_parser("coeffs")
    pc.add_argument("--symbol", default="hilbert")
    pc.add_argument("--scale", type=int, required=True)
    pc.add_argument("--out", dest="outfile", help="CSV of (n, |c|, (|n|+1)^p |c|)")

    p = sub.add_parser("paraproduct", help="bilinear paraproducts")
    p.add_argument("--params", type=int, default=1, choices=(1, 2))
    p.add_argument("--slots", default="3", help="mean slot per axis, e.g. 3 or 3,3")
    p.add_argument("--eps", default="seed:0", help="seed:S or constant:C")
    p.add_argument("--scales", type=int)
    _add_io_arguments(p, inputs=2)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--only", nargs="*", help="check ids to run")
    p.add_argument("--grid", type=int, help="1D grid exponent")
    p.add_argument("--grid2d", type=int, help="2D per-axis grid exponent")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", dest="out_dir")
    return parser


def _read_input(args, attr="infile"):
    path = getattr(args, attr)
    log_sizes = tuple(args.log_sizes) if getattr(args, "log_sizes", None) else None
    return read_grid_function(path, fmt=args.format, log_sizes=log_sizes)


def _write_output(f: GridFunction, args, config: RunConfig):
    if not getattr(args, "outfile", None):
        return
    write_grid_function(f, args.outfile, fmt="json")
    _write_config_sidecar(args.outfile, config)


def _write_config_sidecar(outfile, config: RunConfig):
    Path(str(outfile) + ".config.json").write_text(json.dumps(config.to_dict(), indent=2))


def _family_for(f: GridFunction, kind: str, scales=None):
    log_size = f.log_sizes[0]
    return make_adapted_family(kind, scales or (log_size - 3), log_size)


def _parse_mode(mode: str):
    if mode == "plain":
        return "plain", 0
    name, _, arg = mode.partition(":")
    if name == "shifted":
        return "shifted", int(arg or 0)
    if name == "sup":
        return "shifted_sup", int(arg or 0)
    raise FileFormatError(f"unknown mode {mode!r}")


def _parse_epsilon(text: str, k_range):
    name, _, arg = text.partition(":")
    if name == "seed":
        return EpsilonSequence.rademacher(int(arg or 0), k_range)
    if name == "constant":
        return EpsilonSequence.constant(complex(arg or 1.0), k_range)
    if name == "file":
        return _epsilon_from_file(arg, k_range)
    raise FileFormatError(f"unknown epsilon spec {text!r}")


def _epsilon_from_file(path: str, k_range):
    """JSON mapping scale -> list of scalars (floats or [re, im] pairs)."""
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"epsilon file is not valid JSON: {exc}") from exc
    scales = {}
    for k in k_range:
        if str(k) not in payload:
            raise FileFormatError(f"epsilon file missing scale {k}")
        entries = payload[str(k)]
        if len(entries) != 2**k:
            raise FileFormatError(f"scale {k} needs {2**k} scalars, got {len(entries)}")
        scales[k] = np.array(
            [complex(e[0], e[1]) if isinstance(e, list) else complex(e) for e in entries]
        )
    return EpsilonSequence(scales)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config_path = args.config or os.environ.get(CONFIG_ENV)
    overrides = {}
    for src, dst in (("grid", "log_size"), ("grid2d", "log_size_2d"),
                     ("seed", "seed"), ("out_dir", "out_dir")):
        if getattr(args, src, None) is not None:
            overrides[dst] = getattr(args, src)
    try:
        config = load_config(config_path, overrides)
        return _dispatch(args, config)
    except (FileFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args, config: RunConfig) -> int:
    if args.command == "verify":
        return run_suite(config, only=set(args.only) if args.only else None)

    if args.command == "bumps":
        report = _bumps_report(args.scales, args.grid)
        text = json.dumps(report, indent=2)
        if args.outfile:
            Path(args.outfile).write_text(text)
            _write_config_sidecar(args.outfile, config)
        else:
            print(text)
        return 0

    if args.command == "maximal":
        f = _read_input(args)
        kind, n = (args.kind, 0)
        if ":" in kind:
            kind, _, num = kind.partition(":")
            n = int(num)
        out = maximal(f, kind=kind, n=n)
        _write_output(out, args, config)
        print(f"max value {np.abs(out.values).max():.6g}")
        return 0

    if args.command == "cz":
        f = _read_input(args)
        dec = cz_decompose(f, args.alpha)
        norm1 = float(np.abs(f.values).mean())
        good_l2_sq = float(np.mean(np.abs(dec.good.values) ** 2))
        bad_checks = all(
            abs(b.mean()) <= 1e-12
            and float(np.abs(b.values).mean()) <= 4 * args.alpha * iv.length + 1e-12
            for iv, b in dec.bad_pieces
        )
        payload = {
            "alpha": args.alpha,
            "intervals": [str(iv) for iv in dec.intervals],
            "total_length": dec.total_length,
            "checks": {
                "total_length_ok": dec.total_length <= norm1 / args.alpha + 1e-12,
                "good_l2_ok": good_l2_sq <= 5 * args.alpha * norm1 + 1e-10,
                "bad_pieces_ok": bad_checks,
            },
        }
        text = json.dumps(payload, indent=2)
        if args.outfile:
            Path(args.outfile).write_text(text)
            _write_config_sidecar(args.outfile, config)
        print(text)
        return 0

    if args.command == "square":
        f = _read_input(args)
        fam = _family_for(f, "from_pou_1", args.scales)
        mode, n = _parse_mode(args.mode)
        out = square_function(f, fam, mode=mode, n=n)
        _write_output(out, args, config)
        print(f"||Sf||_2 = {np.sqrt(np.mean(np.abs(out.values)**2)):.6g} "
              f"(scale window k=1..{fam.k_max})")
        return 0

    if args.command == "hybrid":
        f = _read_input(args)
        fam1 = make_adapted_family("from_pou_1", (f.log_sizes[0] - 3), f.log_sizes[0])
        fam2 = make_adapted_family("from_pou_1", (f.log_sizes[1] - 3), f.log_sizes[1])
        out = hybrid(f, (fam1, fam2), args.kind)
        _write_output(out, args, config)
        print(f"||{args.kind}f||_2 = {np.sqrt(np.mean(np.abs(out.values)**2)):.6g} "
              f"(scale windows k=1..{fam1.k_max} x k=1..{fam2.k_max})")
        return 0

    if args.command == "rearrange":
        f = _read_input(args)
        profile = rearrangement(f)
        if args.emit:
            with open(args.emit, "w") as fh:
                fh.write("breakpoint,value\n")
                for t, v in zip(profile.breakpoints, profile.values):
                    fh.write(f"{float(t)!r},{float(v)!r}\n")
            _write_config_sidecar(args.emit, config)
        print(f"{len(profile.values)} steps, support {profile.support:.6g}")
        return 0

    if args.command == "zygmund":
        f = _read_input(args)
        out = {}
        methods = ("closed_form", "iterated") if args.method == "both" else (args.method,)
        for method in methods:
            out[method] = zygmund_norm(f, args.n, method)
        if len(out) == 2:
            a, b = out["closed_form"], out["iterated"]
            out["relative_gap"] = abs(a - b) / max(a, 1e-300)
        print(json.dumps(out, indent=2))
        return 0

    if args.command == "multiplier":
        registry = symbol_registry()
        if args.action == "validate":
            symbol = registry[args.symbol]
            report = validate_symbol(symbol, probe_radius=args.radius)
            print(json.dumps({
                "symbol": report.symbol,
                "class": report.declared_class,
                "passed": report.passed,
                "worst_constant": report.worst(),
            }, indent=2))
            return 0 if report.passed else 1
        if args.action == "coeffs":
            symbol = registry[args.symbol]
            table = symbol_coefficients(symbol, args.scale, n_max=256)
            rows = ["n,abs_c,decay_product"]
            prods = table.decay_products()
            for n, c, p in zip(table.frequencies, np.abs(table.table), prods):
                rows.append(f"{n},{float(c)!r},{float(p)!r}")
            text = "\n".join(rows)
            if args.outfile:
                Path(args.outfile).write_text(text + "\n")
                _write_config_sidecar(args.outfile, config)
            else:
                print(text)
            return 0
        symbol = registry[args.symbol]
        f = _read_input(args)
        if symbol.arity == 1:
            out = apply_1d(symbol, f)
        else:
            if not args.infile2:
                raise FileFormatError("bilinear symbols need --in2")
            g = _read_input(args, "infile2")
            out = apply_bilinear(symbol, f, g)
        _write_output(out, args, config)
        print(f"||out||_2 = {np.sqrt(np.mean(np.abs(out.values)**2)):.6g}")
        return 0

    if args.command == "paraproduct":
        f = _read_input(args)
        if not args.infile2:
            raise FileFormatError("paraproducts need --in2")
        g = _read_input(args, "infile2")
        slots = tuple(int(s) for s in args.slots.split(","))

        def family_triple(log_size, scales):
            return (
                make_adapted_family("from_pou_1", scales, log_size),
                make_adapted_family("from_pou_2", scales, log_size),
                make_adapted_family("lower_bounded", scales, log_size),
            )

        if args.params == 1:
            if f.dims != 1:
                raise FileFormatError("--params 1 takes 1D inputs")
            log_size = f.log_sizes[0]
            scales = args.scales or (log_size - 3)
            spec = ParaproductSpec(
                params=1,
                families=family_triple(log_size, scales),
                mean_slots=slots[:1],
                epsilon=_parse_epsilon(args.eps, range(1, scales + 1)),
            )
            out = paraproduct_1p(spec, f, g)
        else:
            if f.dims != 2:
                raise FileFormatError("--params 2 takes 2D inputs")
            if len(slots) != 2:
                raise FileFormatError("--params 2 needs --slots a,b")
            scales1 = args.scales or (f.log_sizes[0] - 3)
            scales2 = args.scales or (f.log_sizes[1] - 3)
            eps1 = _parse_epsilon(args.eps, range(1, scales1 + 1))
            eps2 = _parse_epsilon(args.eps, range(1, scales2 + 1))
            from .squares import EpsilonField2D

            spec = ParaproductSpec(
                params=2,
                families=(
                    family_triple(f.log_sizes[0], scales1),
                    family_triple(f.log_sizes[1], scales2),
                ),
                mean_slots=slots,
                epsilon=EpsilonField2D.separable(eps1, eps2),
            )
            out = paraproduct_2p(spec, f, g)
        _write_output(out, args, config)
        print(f"||T(f,g)||_1 = {np.mean(np.abs(out.values)):.6g}")
        return 0

    raise FileFormatError(f"unhandled command {args.command!r}")


def _bumps_report(scales: int, grid: int) -> dict:
    fam1, fam2 = build_pou(scales, grid)
    band = 2 ** (scales - 4)
    n = np.arange(-band, band + 1)
    total = np.zeros(n.shape)
    for k in range(1, scales + 1):
        total = total + fam1.hat(k, n) * fam2.hat(k, -n)
    residual = float(np.abs(total - (n != 0)).max())
    system = build_double_pou(scales, grid)
    band2 = system.identity_band
    n1, n2 = np.meshgrid(np.arange(-band2, band2 + 1), np.arange(-band2, band2 + 1))
    residual2 = float(np.abs(system.triple_sum(n1, n2) - ((n1 != 0) | (n2 != 0))).max())

    leakage = 0.0
    from .grid import fourier_coefficients

    for k in fam1.scales:
        spec = fourier_coefficients(fam1.prototypes[k])
        freq = np.abs(spec.frequencies())
        outside = (freq < 2 ** (k - 4)) | (freq > 2 ** (k - 2))
        if outside.any():
            leakage = max(leakage, float(np.abs(spec.coefficients[outside]).max()))
    constants = verify_adapted(fam1, 4)
    return {
        "grid": grid,
        "scales": scales,
        "partition_residual": residual,
        "double_partition_residual": residual2,
        "support_leakage": leakage,
        "adaptation_constants": {str(m): c for m, c in constants["C"].items()},
        "derivative_constants": {str(m): c for m, c in constants["C_prime"].items()},
    }


if __name__ == "__main__":
    sys.exit(main())
