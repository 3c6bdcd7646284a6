"""Command-line entry point: ``fibercavity {design,simulate,analyze,fit,atom-spectrum}``.

Exit codes: 0 ok, 2 configuration or domain error, 3 I/O error,
4 insufficient data.
"""
import argparse
import json
import math
import os
import sys
from dataclasses import asdict

import numpy as np

from . import analysis, cqed, design, files, geometry, response, simulate
from .config import ConfigError, load_config, parse_length
from .exceptions import CavityDomainError, FitError, InsufficientDataError

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_DATA = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _clean(obj):
    """Replace NaN with None so reports stay strict JSON."""
    if isinstance(obj, float) and math.isnan(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _emit_json(obj, out):
    text = json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        _write_text(out, text)


def _write_text(path, text):
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from None


def _emit_csv(header, rows, out):
    if out is None:
        lines = [",".join(header)] + [",".join(files.fmt(v) for v in r) for r in rows]
        sys.stdout.write("\n".join(lines) + "\n")
        return
    try:
        files.write_csv(out, header, rows)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc.strerror}", EXIT_IO) from None


def _length_arg(text):
    try:
        return parse_length(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _config(args):
    length = getattr(args, "length", None)
    return load_config(args.config, args.preset, length)


def cmd_design(args):
    cfg = _config(args)
    if args.length_range is not None:
        lo, hi = args.length_range
        lengths = np.linspace(lo, hi, args.steps) if args.steps > 1 else np.array([lo])
    else:
        lengths = np.array([cfg.geometry.cavity_length])
    rows = design.design_sweep(cfg.geometry, cfg.plane_mirror, cfg.curved_mirror,
                               lengths, cfg.gamma)
    _emit_csv(design.DesignRow.header(), [r.values() for r in rows], args.out)


def cmd_simulate(args):
    cfg = _config(args)
    trace = simulate.simulate_scan(cfg.scan_config(seed=args.seed))
    if args.out is None:
        raise CliError("simulate: --out is required", EXIT_CONFIG)
    try:
        files.write_trace(args.out, trace)
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc.strerror}", EXIT_IO) from None
    _write_text(files.sidecar_path(args.out),
                json.dumps(files.trace_sidecar(trace), indent=2, sort_keys=True) + "\n")


def _sidecar_geometry(trace_path):
    path = files.sidecar_path(trace_path)
    if not os.path.exists(path):
        return None, None
    with open(path) as fh:
        cfg = json.load(fh).get("config", {})
    return cfg.get("cavity_length_m"), cfg.get("wavelength_m")


def cmd_analyze(args):
    try:
        trace = files.read_trace(args.trace)
    except OSError as exc:
        raise CliError(f"cannot read {args.trace}: {exc.strerror}", EXIT_IO) from None
    dips = analysis.find_dips(trace, args.prominence)
    try:
        F, C = analysis.finesse_contrast_from_trace(trace, args.prominence)
    except InsufficientDataError:
        n = sum(1 for d in dips if d.transverse_order_hint == 0 and not d.truncated)
        raise CliError(f"analyze: need at least 2 principal dips, found {n} "
                       f"({len(dips)} dips in total)", EXIT_DATA) from None
    report = {
        "schema_version": files.SCHEMA_VERSION,
        "finesse": F,
        "contrast": C,
        "dips": [asdict(d) for d in dips],
    }
    L, lam = _sidecar_geometry(args.trace)
    L = args.length if args.length is not None else L
    lam = args.wavelength if args.wavelength is not None else lam
    if L is not None and lam is not None and any(d.transverse_order_hint != 0 for d in dips):
        try:
            report["R_estimate_m"] = analysis.radius_from_scan_pair(L, trace, lam, args.prominence)
        except (InsufficientDataError, CavityDomainError):
            pass
    _emit_json(report, args.out)


def cmd_fit(args):
    cfg = _config(args)
    try:
        header, data = files.read_csv(args.series)
    except OSError as exc:
        raise CliError(f"cannot read {args.series}: {exc.strerror}", EXIT_IO) from None
    cols = {h: i for i, h in enumerate(header)}
    if "length_m" not in cols:
        raise CliError(f"{args.series}: missing column length_m", EXIT_CONFIG)
    report = {"schema_version": files.SCHEMA_VERSION}
    if "rho1" in cols:
        series = data[:, [cols["length_m"], cols["rho1"]]]
    elif "finesse" in cols and "contrast" in cols:
        points = data[:, [cols["length_m"], cols["finesse"], cols["contrast"]]]
        refl = analysis.reflectivity_series(points, cfg.geometry)
        report["reflectivities"] = [asdict(p) for p in refl]
        series = [(p.L, p.rho1) for p in refl if not p.flagged]
    else:
        raise CliError(f"{args.series}: need columns length_m,rho1 or "
                       "length_m,finesse,contrast", EXIT_CONFIG)
    if len(series) < 2:
        raise CliError(f"fit: need at least 2 usable points, found {len(series)}", EXIT_DATA)
    result = analysis.fit_intrinsic_reflectivity(series, cfg.geometry)
    report.update(asdict(result))
    _emit_json(report, args.out)


def cmd_atom_spectrum(args):
    cfg = _config(args)
    geom = cfg.geometry
    perf = design.performance(geom, cfg.plane_mirror, cfg.curved_mirror)
    F = cfg.finesse_override if cfg.finesse_override is not None else perf.finesse
    C = cfg.contrast_override if cfg.contrast_override is not None else perf.contrast
    g = args.g if args.g is not None else cfg.g_override
    if g is None:
        g = cqed.coupling_g(geom.wavelength, geometry.waist_w1(geom), geom.cavity_length,
                            cfg.gamma)
    k = cqed.kappa(geom.cavity_length, F)
    half = args.detuning_max if args.detuning_max is not None else 4 * max(g, k)
    if not half > 0:
        raise CliError("atom-spectrum: --detuning-max must be positive", EXIT_CONFIG)
    if args.points < 2:
        raise CliError("atom-spectrum: --points must be >= 2", EXIT_CONFIG)
    d = np.linspace(-half, half, args.points)
    empty = cqed.reflection_spectrum(d, C, g, k, cfg.gamma, atom_present=False)
    full = cqed.reflection_spectrum(d, C, g, k, cfg.gamma, atom_present=True)
    _emit_csv(files.SPECTRUM_COLUMNS, zip(d, empty, full), args.out)


def build_parser():
    p = argparse.ArgumentParser(prog="fibercavity",
                                description="Plano-concave fiber micro-cavity toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_config(sp, length=True):
        sp.add_argument("--config", metavar="PATH", help="JSON configuration file")
        sp.add_argument("--preset", choices=sorted(design.PRESETS))
        if length:
            sp.add_argument("--length", type=_length_arg, metavar="L",
                            help="cavity length, e.g. 150um or 1.5e-4")
        sp.add_argument("--out", metavar="PATH", help="output file (default stdout)")

    sp = sub.add_parser("design", help="figures of merit versus cavity length (CSV)")
    with_config(sp)
    sp.add_argument("--length-range", nargs=2, type=_length_arg, metavar=("LO", "HI"))
    sp.add_argument("--steps", type=int, default=1)
    sp.set_defaults(func=cmd_design)

    sp = sub.add_parser("simulate", help="synthetic scan trace (CSV + JSON sidecar)")
    with_config(sp)
    sp.add_argument("--seed", type=int, help="overrides scan.seed")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("analyze", help="finesse, contrast and radius from a trace CSV")
    sp.add_argument("trace")
    sp.add_argument("--length", type=_length_arg, help="cavity length for the radius estimate")
    sp.add_argument("--wavelength", type=_length_arg)
    sp.add_argument("--prominence", type=float)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("fit", help="fit the plane-mirror stack reflectivity to a series CSV")
    sp.add_argument("series")
    with_config(sp, length=False)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("atom-spectrum", help="reflection spectra with and without an atom (CSV)")
    with_config(sp)
    sp.add_argument("--detuning-max", type=float, metavar="D",
                    help="grid spans [-D, D] rad/s (default 4 max(g, kappa))")
    sp.add_argument("--points", type=int, default=4001, help="odd counts include zero")
    sp.add_argument("--g", type=float, help="override the coupling rate (rad/s)")
    sp.set_defaults(func=cmd_atom_spectrum)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, CavityDomainError, FitError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
