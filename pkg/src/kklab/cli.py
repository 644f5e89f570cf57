"""Batch command-line front end.

Subcommands: transform, validate, model, scharnhorst, clock. Results go to
files, diagnostics to stderr. Exit codes are a stable contract:

    0  success (validate: spectrum consistent with a unity asymptote)
    1  validate found a non-unity causality branch
    2  input error (missing/malformed file, bad flags)
    3  numerical failure (tail fit, pole collision, degenerate clock)

Outputs are deterministic byte-for-byte for identical flags and inputs:
floats are written at 17 significant digits with a dot decimal separator.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .causality import Dichotomy, audit
from .kk import (
    KkOptions,
    PoleCollisionError,
    SubtractionSpec,
    kk_im_from_re,
    kk_re_from_im,
    kk_subtracted,
    kk_subtracted_at_infinity,
)
from .models import LorentzOscillatorParams, PhysicalConstants, lorentz_index
from .pvquad import PoleLocationError, TailFitError, TailModel
from .scharnhorst import (
    DegenerateClockError,
    LightClockScenario,
    Orientation,
    format_length_scale_table,
    length_scale_table,
    light_clock_tick,
)
from .spectra import (
    FrequencyGrid,
    GridUnit,
    SpectrumFormatError,
    load_spectrum,
    save_spectrum,
)

_INPUT_ERRORS = (SpectrumFormatError, FileNotFoundError, IsADirectoryError,
                 PermissionError)
_NUMERICAL_ERRORS = (TailFitError, PoleLocationError, PoleCollisionError,
                     DegenerateClockError)


def _file_format(path: str, override: str | None) -> str:
    if override:
        return override
    return "json" if Path(path).suffix.lower() == ".json" else "csv"


def _parse_grid(spec: str) -> FrequencyGrid:
    """Parse 'log:MIN:MAX:COUNT' or 'lin:MIN:MAX:COUNT'."""
    parts = spec.split(":")
    if len(parts) != 4 or parts[0] not in ("log", "lin"):
        raise ValueError(f"bad grid spec {spec!r}; expected log:MIN:MAX:COUNT or lin:MIN:MAX:COUNT")
    lo, hi, count = float(parts[1]), float(parts[2]), int(parts[3])
    if count < 16:
        raise ValueError("synthesized grids need >= 16 nodes")
    if parts[0] == "log":
        return FrequencyGrid.log_spaced(lo, hi, count, GridUnit.NORMALIZED)
    return FrequencyGrid.linear(lo, hi, count, GridUnit.NORMALIZED)


def _constants(args: argparse.Namespace) -> PhysicalConstants:
    return PhysicalConstants(
        c=args.c_light,
        alpha=args.alpha,
        lambda_c=args.lambda_c,
        k_coeff=args.k_coeff,
    )


def _add_constants_flags(p: argparse.ArgumentParser) -> None:
    defaults = PhysicalConstants()
    p.add_argument("--c-light", type=float, default=defaults.c,
                   help="speed of light in m/s")
    p.add_argument("--alpha", type=float, default=defaults.alpha,
                   help="fine-structure constant")
    p.add_argument("--lambda-c", type=float, default=defaults.lambda_c,
                   help="Compton wavelength in m")
    p.add_argument("--k-coeff", type=float, default=defaults.k_coeff,
                   help="vacuum-shift coefficient k")


def _kk_options(args: argparse.Namespace, grid_top: float) -> KkOptions:
    tail = None
    if args.tail_exponent is not None or args.tail_amplitude is not None:
        if args.tail_exponent is None or args.tail_amplitude is None:
            raise ValueError("--tail-exponent and --tail-amplitude must be given together")
        tail = TailModel(args.tail_exponent, args.tail_amplitude, grid_top)
    return KkOptions(assume_im_odd=args.assume_im_odd, tail=tail,
                     boundedness_constant=args.k0)


def _cmd_transform(args: argparse.Namespace) -> int:
    spec = load_spectrum(args.input, _file_format(args.input, args.format))
    opts = _kk_options(args, float(spec.grid.values[-1]))
    if args.direction == "re-from-im":
        result = kk_re_from_im(spec, opts)
    elif args.direction == "im-from-re":
        result = kk_im_from_re(spec, opts)
    elif args.direction == "subtracted":
        if args.omega0 is None:
            raise ValueError("--omega0 is required for --direction subtracted")
        sub = SubtractionSpec.at_point(args.omega0, args.g0_re, args.g0_im)
        result = kk_subtracted(spec, sub, opts)
    else:  # subtracted-at-infinity
        sub = SubtractionSpec.at_infinity(args.re_inf, args.im_inf)
        result = kk_subtracted_at_infinity(spec, sub, opts)
    save_spectrum(result.spectrum, args.output, _file_format(args.output, args.format))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    spec = load_spectrum(args.input, _file_format(args.input, args.format))
    opts = _kk_options(args, float(spec.grid.values[-1]))
    report = audit(spec, opts)
    Path(args.output).write_text(report.to_json() + "\n")
    return 0 if report.dichotomy is Dichotomy.CONSISTENT_WITH_UNITY else 1


def _cmd_model(args: argparse.Namespace) -> int:
    grid = _parse_grid(args.grid)
    params = LorentzOscillatorParams(args.omega_p, args.omega_res, args.gamma)
    spec = lorentz_index(params, grid)
    save_spectrum(spec, args.output, _file_format(args.output, args.format))
    return 0


def _cmd_scharnhorst(args: argparse.Namespace) -> int:
    L_values = [float(tok) for tok in args.L.split(",") if tok]
    if not L_values:
        raise ValueError("--L needs at least one separation")
    rows = length_scale_table(L_values, _constants(args), args.lambda_probe)
    Path(args.output).write_text(format_length_scale_table(rows))
    return 0


def _cmd_clock(args: argparse.Namespace) -> int:
    scenario = LightClockScenario(
        L=args.L,
        beta=args.beta,
        orientation=Orientation(args.orientation),
        constants=_constants(args),
    )
    comparison = light_clock_tick(scenario)
    doc = {
        "schema": 1,
        "L_m": scenario.L,
        "beta": scenario.beta,
        "orientation": scenario.orientation.value,
        "tick_rest_s": comparison.tick_rest,
        "tick_moving_direct_s": comparison.tick_moving_direct,
        "tick_moving_sr_s": comparison.tick_moving_sr,
        "inconsistency": comparison.inconsistency,
    }
    Path(args.output).write_text(json.dumps(doc, indent=2) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kklab",
        description="Dispersion-relation transforms, causality audits and "
                    "boundary-vacuum calculators over sampled spectra.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, need_input=True):
        if need_input:
            p.add_argument("--in", dest="input", required=True, help="input spectrum file")
        p.add_argument("--out", dest="output", required=True, help="output file")
        p.add_argument("--format", choices=["csv", "json"], default=None,
                       help="force file format (default: by extension)")

    def add_kk_flags(p):
        p.add_argument("--assume-im-odd", action=argparse.BooleanOptionalAction,
                       default=True, help="accept the odd extension of Im n")
        p.add_argument("--tail-exponent", type=float, default=None,
                       help="override fitted tail exponent p")
        p.add_argument("--tail-amplitude", type=float, default=None,
                       help="override fitted tail amplitude A")
        p.add_argument("--k0", type=float, default=None,
                       help="boundedness constant K0 for |n|^2")

    p = sub.add_parser("transform", help="apply a dispersion transform to a spectrum")
    add_io(p)
    add_kk_flags(p)
    p.add_argument("--direction", required=True,
                   choices=["re-from-im", "im-from-re", "subtracted", "subtracted-at-infinity"])
    p.add_argument("--omega0", type=float, default=None, help="finite subtraction point")
    p.add_argument("--g0-re", type=float, default=0.0, help="Re G(omega0)")
    p.add_argument("--g0-im", type=float, default=0.0, help="Im G(omega0)")
    p.add_argument("--re-inf", type=float, default=1.0, help="Re n(inf)")
    p.add_argument("--im-inf", type=float, default=0.0, help="Im n(inf)")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("validate", help="causality audit; JSON report")
    add_io(p)
    add_kk_flags(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("model", help="synthesize an analytic model spectrum")
    p.add_argument("kind", choices=["lorentz"])
    add_io(p, need_input=False)
    p.add_argument("--omega-p", type=float, required=True, help="plasma frequency")
    p.add_argument("--omega-res", type=float, required=True, help="resonance frequency")
    p.add_argument("--gamma", type=float, required=True, help="damping rate")
    p.add_argument("--grid", required=True, help="log:MIN:MAX:COUNT or lin:MIN:MAX:COUNT")
    p.set_defaults(func=_cmd_model)

    p = sub.add_parser("scharnhorst", help="length-scale table (CSV)")
    add_io(p, need_input=False)
    p.add_argument("--L", required=True, help="comma-separated plate separations in m")
    p.add_argument("--lambda-probe", type=float, default=None,
                   help="probe wavelength in m (default: Compton wavelength)")
    _add_constants_flags(p)
    p.set_defaults(func=_cmd_scharnhorst)

    p = sub.add_parser("clock", help="light-clock frame comparison (JSON)")
    add_io(p, need_input=False)
    p.add_argument("--L", type=float, required=True, help="mirror separation in m")
    p.add_argument("--beta", type=float, required=True, help="boost as a fraction of c")
    p.add_argument("--orientation", required=True, choices=["parallel", "perpendicular"])
    _add_constants_flags(p)
    p.set_defaults(func=_cmd_clock)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _NUMERICAL_ERRORS as exc:
        print(f"kklab: numerical failure: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"kklab: input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"kklab: input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
