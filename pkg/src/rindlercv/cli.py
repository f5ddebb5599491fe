"""Command-line front end: scenario reports, parameter sweeps, figure data, selftest.

Exit codes: 0 ok, 2 usage or invalid parameters, 3 internal inconsistency,
4 I/O failure, 5 selftest failure.  All emitted data files are deterministic:
identical invocations produce byte-identical bytes, metadata lives in '#'
comment lines and floats carry 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__
from . import entanglement_analysis as ea
from . import rindler_frames as rf
from . import selftest as st
from .info_measures import InconsistencyError, contangle_from_m

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3
EXIT_IO = 4
EXIT_SELFTEST = 5

SWEEP_PARAMS = {
    "single": ("s", "r"),
    "double": ("s", "l", "n", "a"),
    "frequency": ("lam", "nu", "accel"),
}


def _fmt(value) -> str:
    """Render one cell: booleans as true/false, floats with 17 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return f"{value:.17g}"
    return str(value)


def _jsonable(value):
    """Map report values onto JSON-representable ones (inf/nan become strings)."""
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return _fmt(value)
    return value


def _dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(", ", ": "))


class _Output:
    """stdout or a file opened for writing; I/O errors surface as exit code 4."""

    def __init__(self, path: Optional[str]):
        self.path = path

    def __enter__(self):
        if self.path is None:
            return sys.stdout
        self._fh = open(self.path, "w", encoding="utf-8", newline="")
        return self._fh

    def __exit__(self, *exc):
        if self.path is not None:
            self._fh.close()
        return False


def _write_table(stream, meta: list[str], columns: list[str], rows: list[dict], fmt: str) -> None:
    for line in meta:
        stream.write(f"# {line}\n")
    if fmt == "csv":
        stream.write(",".join(columns) + "\n")
        for row in rows:
            stream.write(",".join(_fmt(row[c]) for c in columns) + "\n")
    else:  # json-lines
        for row in rows:
            stream.write(_dump_json({c: row[c] for c in columns}) + "\n")


# ---------------------------------------------------------------------------
# point
# ---------------------------------------------------------------------------

def _point_report(args) -> tuple[str, dict]:
    if args.scenario == "single":
        r = args.r
        extra = {}
        if r is None:
            if args.accel is None or args.freq is None:
                raise ValueError("point single needs --r, or --accel together with --freq")
            spec = rf.AccelSpec.from_physical(args.accel, args.freq)
            r = spec.squeezing
            extra = {"accel": args.accel, "freq": args.freq,
                     "unruh_temperature": spec.temperature}
        if args.s is None:
            raise ValueError("point single needs --s")
        rep = ea.single_observer_report(args.s, r)
        rep.validate(args.tol)
        return "single", {**rep.to_dict(), **extra}
    if args.scenario == "double":
        if args.s is None:
            raise ValueError("point double needs --s")
        if args.a is not None:
            if args.l is not None or args.n is not None:
                raise ValueError("give either --a or --l/--n, not both")
            l = n = args.a
        else:
            if args.l is None or args.n is None:
                raise ValueError("point double needs --a, or both --l and --n")
            l, n = args.l, args.n
        rep = ea.double_observer_report(args.s, l, n)
        rep.validate(args.tol)
        return "double", rep.to_dict()
    # frequency
    if args.lam is None or args.nu is None or args.accel is None:
        raise ValueError("point frequency needs --lam, --nu and --accel")
    return "frequency", _frequency_row(args.lam, args.nu, args.accel, args.s)


def _frequency_row(lam: float, nu: float, accel: float, s: Optional[float] = None) -> dict:
    l = rf.accel_to_squeezing(accel, lam)
    n = rf.accel_to_squeezing(accel, nu)
    w = 2.0 * math.pi / accel
    condition = math.exp(w * lam) + math.exp(w * nu) - math.exp(w * (lam + nu))
    margin = math.exp(-w * lam) + math.exp(-w * nu) - 1.0
    separable = ea.frequency_separability(lam, nu, accel)
    if l == 0.0 and n == 0.0:
        m_inf = math.inf
    else:
        m_inf = ea.m_ln_infinite_squeezing(l, n)
    row = {
        "lam": lam, "nu": nu, "accel": accel, "l": l, "n": n,
        "condition_value": condition, "separability_margin": margin,
        "separable": separable,
        "m_ln_infinite": m_inf,
        "tau_ln_infinite": contangle_from_m(m_inf) if math.isfinite(m_inf) else math.inf,
    }
    if s is not None:
        row["s"] = s
        row["m_l_n"] = ea.m_leo_nadia(s, l, n)
        row["tau_l_n"] = contangle_from_m(row["m_l_n"])
    return row


def _cmd_point(args) -> int:
    scenario, report = _point_report(args)
    payload = {"scenario": scenario, "report": report}
    with _Output(args.out) as stream:
        if args.format == "json":
            stream.write(_dump_json(payload) + "\n")
        elif args.format == "csv":
            cols = list(report)
            _write_table(stream, [f"rindlercv point {scenario}"], cols, [report], "csv")
        else:  # default: human text followed by the JSON payload
            stream.write(f"scenario: {scenario}\n")
            for key in report:
                stream.write(f"  {key:>24s} = {_fmt(report[key])}\n")
            stream.write(_dump_json(payload) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

@dataclass
class SweepAxis:
    name: str
    lo: float
    hi: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


def _parse_axis(text: str) -> SweepAxis:
    try:
        name, rng = text.split("=", 1)
        lo, hi, steps = rng.split(":")
        axis = SweepAxis(name.strip(), float(lo), float(hi), int(steps))
    except Exception as exc:
        raise ValueError(f"bad --sweep spec {text!r}; expected NAME=MIN:MAX:STEPS") from exc
    if axis.steps < 2:
        raise ValueError(f"sweep axis {axis.name!r} needs at least 2 steps")
    return axis


def _parse_fix(items: Sequence[str]) -> dict[str, float]:
    fixed = {}
    for item in items:
        try:
            name, value = item.split("=", 1)
            fixed[name.strip()] = float(value)
        except Exception as exc:
            raise ValueError(f"bad --fix spec {item!r}; expected NAME=VALUE") from exc
    return fixed


def _sweep_evaluator(scenario: str, params: dict) -> dict:
    if scenario == "single":
        rep = ea.single_observer_report(params["s"], params["r"])
        return rep.to_dict()
    if scenario == "double":
        if "a" in params:
            l = n = params["a"]
        else:
            l, n = params["l"], params["n"]
        return ea.double_observer_report(params["s"], l, n).to_dict()
    return _frequency_row(params["lam"], params["nu"], params["accel"], params.get("s"))


def _cmd_sweep(args) -> int:
    if args.scenario is None:
        raise ValueError("sweep needs --scenario {single,double,frequency}")
    axes = [_parse_axis(a) for a in args.sweep or []]
    if not 1 <= len(axes) <= 2:
        raise ValueError("sweep needs one or two --sweep axes")
    if len(axes) == 2 and axes[0].name == axes[1].name:
        raise ValueError(f"axis {axes[0].name!r} swept twice")
    fixed = _parse_fix(args.fix or [])
    allowed = set(SWEEP_PARAMS[args.scenario]) | ({"s"} if args.scenario == "frequency" else set())
    for name in [a.name for a in axes] + list(fixed):
        if name not in allowed:
            raise ValueError(f"parameter {name!r} not valid for scenario {args.scenario!r} "
                             f"(allowed: {sorted(allowed)})")
    swept = {a.name for a in axes}
    if swept & set(fixed):
        raise ValueError("a parameter cannot be both swept and fixed")
    if args.scenario == "double":
        have = swept | set(fixed)
        if "a" in have and ({"l", "n"} & have):
            raise ValueError("give either a, or l and n, not both")
        needed = {"s", "a"} if "a" in have else {"s", "l", "n"}
    elif args.scenario == "single":
        needed = {"s", "r"}
    else:
        needed = {"lam", "nu", "accel"}
    missing = needed - swept - set(fixed)
    if missing:
        raise ValueError(f"unswept parameters need --fix values: {sorted(missing)}")

    grids = [axis.values() for axis in axes]
    points = []
    if len(axes) == 1:
        for v in grids[0]:
            points.append({axes[0].name: float(v), **fixed})
    else:
        for v0 in grids[0]:  # outer axis major
            for v1 in grids[1]:
                points.append({axes[0].name: float(v0), axes[1].name: float(v1), **fixed})

    workers = args.threads or os.cpu_count() or 1
    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(lambda p: _sweep_evaluator(args.scenario, p), points))

    axis_cols = [a.name for a in axes]
    all_quantities = [k for k in reports[0] if k not in axis_cols]
    if args.quantities:
        wanted = [q.strip() for q in args.quantities.split(",")]
        unknown = [q for q in wanted if q not in reports[0]]
        if unknown:
            raise ValueError(f"unknown quantities {unknown}; available: {all_quantities}")
        quantities = wanted
    else:
        quantities = all_quantities
    columns = axis_cols + quantities
    rows = [{**pt, **rep} for pt, rep in zip(points, reports)]
    meta = [
        f"rindlercv sweep scenario={args.scenario}",
        "axes: " + "; ".join(f"{a.name}={_fmt(a.lo)}:{_fmt(a.hi)}:{a.steps}" for a in axes),
        "fixed: " + (", ".join(f"{k}={_fmt(v)}" for k, v in sorted(fixed.items())) or "none"),
        "columns: " + ",".join(columns),
    ]
    with _Output(args.out) as stream:
        _write_table(stream, meta, columns, rows, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# figure presets
# ---------------------------------------------------------------------------

_AXIS61 = np.linspace(0.0, 3.0, 61)
_FREQ61 = np.linspace(5.0 / 61, 5.0, 61)


@dataclass
class FigurePreset:
    preset_id: str
    description: str
    columns: list[str]
    build: Callable[[], list[dict]]
    plot: str  # gnuplot fragment; {data} is replaced with the csv filename


def _fig2_rows():
    rows = []
    for r in _AXIS61:
        m_a, m_r, m_rbar = ea.one_vs_rest_m_single(1.0, float(r))
        rows.append({"r": float(r), "m_a_vs_rest": m_a, "m_r_vs_rest": m_r,
                     "m_rbar_vs_rest": m_rbar})
    return rows


def _fig3_rows():
    rows = []
    for r in _AXIS61:
        for s in _AXIS61:
            tau = ea.contangle_ar(float(s), float(r)).contangle
            norm = tau / (4 * s * s) if s > 0 else math.nan
            rows.append({"r": float(r), "s": float(s), "tau_ar": tau,
                         "tau_ar_normalized": norm})
    return rows


def _fig4_rows():
    rows = []
    for r in _AXIS61:
        row = {"r": float(r)}
        for s in (0.25, 0.5, 1.0, 2.0):
            row[f"sqrt_tau_ar_s{_fmt(s)}"] = math.sqrt(ea.contangle_ar(s, float(r)).contangle)
        row["sqrt_tau_r_rbar"] = 2.0 * float(r)
        rows.append(row)
    return rows


def _fig5_rows():
    return [{"r": float(r), "s": float(s),
             "residual_tripartite": ea.residual_tripartite(float(s), float(r))}
            for r in _AXIS61 for s in _AXIS61]


def _fig6_rows():
    rows = []
    for lam in _FREQ61:
        for nu in _FREQ61:
            row = {"lam": float(lam), "nu": float(nu)}
            for label, accel in (("2pi", 2 * math.pi), ("10pi", 10 * math.pi)):
                w = 2.0 * math.pi / accel
                row[f"condition_value_{label}"] = (math.exp(w * lam) + math.exp(w * nu)
                                                   - math.exp(w * (lam + nu)))
                row[f"separable_{label}"] = ea.frequency_separability(lam, nu, accel)
            rows.append(row)
    return rows


def _fig7_rows():
    accel = 2 * math.pi
    rows = []
    for lam in _FREQ61:
        for nu in _FREQ61:
            row = _frequency_row(float(lam), float(nu), accel)
            rows.append({k: row[k] for k in ("lam", "nu", "l", "n", "m_ln_infinite",
                                             "tau_ln_infinite")})
    return rows


def _fig8_rows():
    return [{"s": float(s), "a": float(a),
             "residual_multipartite": ea.residual_multipartite(float(s), float(a))}
            for s in _AXIS61 for a in _AXIS61]


def _fig9_rows():
    rows = []
    for a in _AXIS61:
        for s in _AXIS61:
            m = ea.m_ln_equal_accel(float(s), float(a))
            tau = contangle_from_m(m)
            rows.append({"a": float(a), "s": float(s), "tau_ln": tau,
                         "tau_ln_normalized": tau / (4 * s * s) if s > 0 else math.nan,
                         "a_star": ea.a_star(float(s))})
    return rows


def _fig10_rows():
    return [{"a": float(a), "s": float(s),
             "deficit": ea.classical_deficit(float(a), float(s))}
            for a in _AXIS61 for s in _AXIS61]


_SURFACE_PLOT = """set datafile separator ','
set datafile commentschars '#'
set key autotitle columnhead
set dgrid3d 61,61
set hidden3d
splot '{data}' using 1:2:3 with lines
"""

_CURVES_PLOT = """set datafile separator ','
set datafile commentschars '#'
set key autotitle columnhead
plot for [col=2:{ncols}] '{data}' using 1:col with lines
"""

FIGURE_PRESETS: dict[str, FigurePreset] = {}


def _register(preset: FigurePreset) -> None:
    FIGURE_PRESETS[preset.preset_id] = preset


_register(FigurePreset("fig2", "one-vs-rest m parameters vs acceleration r at s = 1",
                       ["r", "m_a_vs_rest", "m_r_vs_rest", "m_rbar_vs_rest"], _fig2_rows,
                       _CURVES_PLOT.replace("{ncols}", "4")))
_register(FigurePreset("fig3", "Alice-Rob contangle surface over (r, s), raw and normalized to 4s^2",
                       ["r", "s", "tau_ar", "tau_ar_normalized"], _fig3_rows, _SURFACE_PLOT))
_register(FigurePreset("fig4", "sqrt contangle curves vs r for s in {0.25,0.5,1,2} plus the 2r wedge line",
                       ["r", "sqrt_tau_ar_s0.25", "sqrt_tau_ar_s0.5", "sqrt_tau_ar_s1",
                        "sqrt_tau_ar_s2", "sqrt_tau_r_rbar"], _fig4_rows,
                       _CURVES_PLOT.replace("{ncols}", "6")))
_register(FigurePreset("fig5", "residual tripartite contangle surface over (r, s)",
                       ["r", "s", "residual_tripartite"], _fig5_rows, _SURFACE_PLOT))
_register(FigurePreset("fig6", "frequency-domain separability condition at accel = 2pi and 10pi",
                       ["lam", "nu", "condition_value_2pi", "separable_2pi",
                        "condition_value_10pi", "separable_10pi"], _fig6_rows, _SURFACE_PLOT))
_register(FigurePreset("fig7", "infinite-squeezing Leo-Nadia entanglement vs mode frequencies at accel = 2pi",
                       ["lam", "nu", "l", "n", "m_ln_infinite", "tau_ln_infinite"], _fig7_rows,
                       _SURFACE_PLOT.replace("1:2:3", "1:2:6")))
_register(FigurePreset("fig8", "residual multipartite contangle surface over (s, a)",
                       ["s", "a", "residual_multipartite"], _fig8_rows, _SURFACE_PLOT))
_register(FigurePreset("fig9", "Leo-Nadia contangle surface over (a, s) with the a*(s) death line",
                       ["a", "s", "tau_ln", "tau_ln_normalized", "a_star"], _fig9_rows, _SURFACE_PLOT))
_register(FigurePreset("fig10", "classical-correlation deficit surface over (a, s)",
                       ["a", "s", "deficit"], _fig10_rows, _SURFACE_PLOT))


def _cmd_figure(args) -> int:
    preset = FIGURE_PRESETS.get(args.preset)
    if preset is None:
        raise ValueError(f"unknown preset {args.preset!r}; available: {sorted(FIGURE_PRESETS)}")
    os.makedirs(args.out_dir, exist_ok=True)
    data_name = f"{preset.preset_id}.csv"
    rows = preset.build()
    meta = [
        f"rindlercv figure {preset.preset_id}: {preset.description}",
        "axis ranges follow the source captions where stated; otherwise [0, 3] "
        "(frequencies: (0, 5]) as documented in the README",
        "columns: " + ",".join(preset.columns),
    ]
    path = os.path.join(args.out_dir, data_name)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_table(fh, meta, preset.columns, rows, "csv")
    written = [path]
    if args.plot_script:
        script_path = os.path.join(args.out_dir, f"{preset.preset_id}.gp")
        with open(script_path, "w", encoding="utf-8") as fh:
            fh.write(f"# gnuplot commands for {preset.preset_id}; data: {data_name}\n")
            fh.write(preset.plot.replace("{data}", data_name))
        written.append(script_path)
    print("\n".join(written))
    return EXIT_OK


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------

def _cmd_selftest(args) -> int:
    report = st.run(tol=args.tol, quick=args.quick)
    for suite in report.suites:
        print(suite.line())
    if report.passed:
        print(f"selftest: all {len(report.suites)} suites passed")
        return EXIT_OK
    worst = report.worst_suite()
    print(f"selftest: FAILED; worst offender {worst.name} at {worst.worst_at} "
          f"(deviation {worst.worst:.3e} > tol {worst.tol:.1e})")
    return EXIT_SELFTEST


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS,
                        help="output format for data payloads")
    parser.add_argument("--out", default=argparse.SUPPRESS, help="output file (default stdout)")
    parser.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="numerical tolerance (default 1e-9)")
    parser.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads for sweeps (default: available parallelism)")
    parser.add_argument("--quick", action="store_true", default=argparse.SUPPRESS,
                        help="coarse selftest grid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rindlercv",
        description="Continuous-variable correlations between uniformly accelerated observers")
    parser.add_argument("--version", action="version", version=f"rindlercv {__version__}")
    _common_flags(parser)
    parser.set_defaults(format=None, out=None, tol=1e-9, threads=None, quick=False)
    sub = parser.add_subparsers(dest="verb", required=True)

    p_point = sub.add_parser("point", help="full report at one parameter point")
    _common_flags(p_point)
    p_point.add_argument("scenario", choices=("single", "double", "frequency"))
    for flag in ("--s", "--r", "--l", "--n", "--a", "--lam", "--nu", "--accel", "--freq"):
        p_point.add_argument(flag, type=float)
    p_point.set_defaults(func=_cmd_point)

    p_sweep = sub.add_parser("sweep", help="tabulate report quantities over a parameter grid")
    _common_flags(p_sweep)
    p_sweep.add_argument("--scenario", choices=("single", "double", "frequency"))
    p_sweep.add_argument("--sweep", action="append", metavar="NAME=MIN:MAX:STEPS")
    p_sweep.add_argument("--fix", action="append", metavar="NAME=VALUE")
    p_sweep.add_argument("--quantities", help="comma-separated subset of report fields")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig = sub.add_parser("figure", help="write one figure preset's data (and plot script)")
    _common_flags(p_fig)
    p_fig.add_argument("preset")
    p_fig.add_argument("--out-dir", default=".")
    p_fig.add_argument("--plot-script", action="store_true",
                       help="also write a gnuplot script next to the data")
    p_fig.set_defaults(func=_cmd_figure)

    p_self = sub.add_parser("selftest", help="closed-form vs numeric consistency suite")
    _common_flags(p_self)
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None and args.verb == "sweep":
        args.format = "csv"
    try:
        return args.func(args)
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
