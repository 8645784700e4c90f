"""Command-line front end: encode/decode points, render surfaces, run sweeps,
report BOM power and cost.

Exit codes are a stable contract: 0 success, 1 internal error, 2 validation
error, 3 I/O error. Report commands write a PNG figure next to each CSV
unless --no-plot is given.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import plots, reports
from .circuit import stage_surface
from .config import PRESETS, RunConfig, load_run_config, to_sweep_spec
from .errors import BomFormatError, ParameterError, RangeError
from .experiments import run_sdr_vs_csnr
from .mapping import SensorReading, decode, encode, remove_offset, s_max
from .power_cost import load_bom, make_report
from .presets import paper_bom, prototype_bom


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=sorted(PRESETS), default="paper",
                        help="built-in parameter set (default: paper)")
    common.add_argument("--config", metavar="PATH",
                        help="key=value file overriding the preset")
    common.add_argument("--seed", type=int, help="override the run seed")

    parser = argparse.ArgumentParser(prog="ajscc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_enc = sub.add_parser("encode", parents=[common],
                           help="encode one raw (v_t, v_h) reading")
    p_enc.add_argument("v_t", type=float)
    p_enc.add_argument("v_h", type=float)
    p_enc.set_defaults(func=cmd_encode)

    p_dec = sub.add_parser("decode", parents=[common],
                           help="decode one received voltage to raw sensor volts")
    p_dec.add_argument("s", type=float)
    p_dec.set_defaults(func=cmd_decode)

    p_surf = sub.add_parser("surface", parents=[common],
                            help="sample one stage's output surface to CSV (+PNG)")
    p_surf.add_argument("--stage", type=int, default=2)
    p_surf.add_argument("--t-grid", type=int, default=51)
    p_surf.add_argument("--h-grid", type=int, default=51)
    p_surf.add_argument("--out", metavar="PATH", required=True)
    p_surf.add_argument("--no-plot", action="store_true")
    p_surf.set_defaults(func=cmd_surface)

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="run the SDR-vs-CSNR sweep to CSV (+PNG)")
    p_sweep.add_argument("--out", metavar="PATH",
                         help="output CSV (default: <out_dir>/sdr_vs_csnr.csv)")
    p_sweep.add_argument("--no-plot", action="store_true")
    p_sweep.set_defaults(func=cmd_sweep)

    p_pow = sub.add_parser("power", parents=[common],
                           help="power/cost roll-up of a BOM file or preset BOM")
    p_pow.add_argument("bom", nargs="?", metavar="BOM_FILE",
                       help="BOM text file; omitted: use the preset's BOM")
    p_pow.add_argument("--out", metavar="PATH", help="also write the report as CSV")
    p_pow.set_defaults(func=cmd_power)
    return parser


def _load_run(args) -> RunConfig:
    run = PRESETS[args.preset]()
    if args.config:
        run = load_run_config(args.config, run)
    if args.seed is not None:
        if args.seed < 0:
            raise ParameterError("seed must be >= 0")
        run = replace(run, seed=args.seed, circuit=replace(run.circuit, seed=args.seed))
    return run


def cmd_encode(run: RunConfig, args) -> int:
    value = encode(remove_offset(SensorReading(args.v_t, args.v_h), run.mapping), run.mapping)
    print(f"s={value.s:.6f} level={value.level} parity={value.parity}")
    return 0


def cmd_decode(run: RunConfig, args) -> int:
    top = s_max(run.mapping)
    if not 0.0 <= args.s <= top:
        print(f"warning: s={args.s:g} outside [0, {top:.6f}]; clamped before decoding",
              file=sys.stderr)
    decoded = decode(args.s, run.mapping)
    v_t_hat = decoded.v_t0_hat + run.mapping.t_offset
    v_h_hat = decoded.v_h0_hat + run.mapping.h_offset
    flag = "true" if decoded.on_connector else "false"
    print(f"v_t_hat={v_t_hat:.6f} v_h_hat={v_h_hat:.6f} "
          f"level={decoded.level_hat} on_connector={flag}")
    return 0


def cmd_surface(run: RunConfig, args) -> int:
    surface = stage_surface(args.stage, args.t_grid, args.h_grid, run.mapping, run.circuit)
    out = reports.atomic_write_text(args.out, reports.surface_csv(surface))
    print(f"wrote {out} ({surface.output.size} data rows)")
    if not args.no_plot:
        png = plots.save_surface_figure(surface, out.with_suffix(".png"),
                                        title=f"stage {args.stage} output")
        print(f"wrote {png}")
    return 0


def cmd_sweep(run: RunConfig, args) -> int:
    records = run_sdr_vs_csnr(to_sweep_spec(run))
    out_path = Path(args.out) if args.out else Path(run.out_dir) / "sdr_vs_csnr.csv"
    out = reports.atomic_write_text(out_path, reports.sweep_csv(records))
    print(f"wrote {out} ({len(records)} records)")
    if not args.no_plot:
        png = plots.save_sweep_figure(records, out.with_suffix(".png"))
        print(f"wrote {png}")
    return 0


def cmd_power(run: RunConfig, args) -> int:
    if args.bom:
        bom = load_bom(args.bom)
    else:
        bom = prototype_bom() if args.preset == "prototype" else paper_bom()
    report = make_report(bom)
    print(reports.bom_text(report), end="")
    if args.out:
        out = reports.atomic_write_text(args.out, reports.bom_csv(report))
        print(f"wrote {out}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        run = _load_run(args)
        return args.func(run, args)
    except (RangeError, ParameterError, BomFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # defensive: unknown failure is exit code 1
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
