"""Command-line front end: sweeps, figure presets and regime reports.

Output CSV layout: one ``# {json}`` metadata line, a header row, then one
row per grid instant with floats written as shortest round-trip decimals.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import argparse
import csv
import json
import logging
import math
import os
import sys
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import __version__, kernels, qmat
from .dynamics import (
    NORMALIZATION_TOL,
    RATE_SINGULAR_G,
    ModelParams,
    Regime,
    build_trajectory,
    coupling_regime,
    g_series,
)
from .errors import ConfigError, NumericalError, QslBatteryError, SweepFailure, UsageError
from .qsl import (
    BuresVariant,
    QuadratureSpec,
    RelPurityMode,
    extrema_locator,
    g_zeros,
    gdot_zeros,
    pair_extrema,
    qsl_sweep,
)
from .thermo import power_series

log = logging.getLogger("qslbattery")

NORMALIZATION_SLACK = 1e-6
MAX_FLOOR = 1e-6
DISCHARGED = 1e-9
RECHARGED = 0.01
STANDARD_AD_WINDOW = (0.1, 10.0)
ALIGNMENT_PROMINENCE = 0.05

EXIT_OK, EXIT_CONFIG, EXIT_FAILURE = 0, 1, 2


class SweepRow(NamedTuple):
    t: float
    g: float
    gamma: float
    purity: float
    c_l1: float
    c_relent: float
    w: float
    w_i: float
    w_c: float
    p_inst: float
    p_avg: float
    tau_qsl_fisher: float
    tau_qsl_wy: float
    tau_qsl_relpurity: float
    tau_csl: float


COLUMNS = SweepRow._fields
# Columns that may legitimately hold nan: the rate diverges at zeros of G and
# the average power is undefined up to its reference time.
NAN_ALLOWED = {"gamma", "p_avg"}


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams
    tmax: float
    samples: int
    quad: QuadratureSpec
    epsilon_floor: float
    bures_variant: BuresVariant
    relpurity_mode: RelPurityMode
    avg_power_t0: float
    outputs: tuple
    out_path: str | None

    def to_flat(self):
        """The resolved configuration under its external key names."""
        m = self.model
        c_g, c_e = complex(m.c_g), complex(m.c_e)
        return {
            "omega0": m.omega0, "lambda": m.lam, "gamma0": m.gamma0,
            "temperature": m.temperature,
            "c_g_re": c_g.real, "c_g_im": c_g.imag, "c_e_re": c_e.real, "c_e_im": c_e.imag,
            "tmax": self.tmax, "samples": self.samples,
            "quad_scheme": self.quad.scheme, "quad_n": self.quad.n,
            "epsilon_floor": self.epsilon_floor,
            "bures_variant": self.bures_variant.value,
            "relpurity_mode": self.relpurity_mode.value,
            "avg_power_t0": self.avg_power_t0,
            "columns": list(self.outputs), "out_path": self.out_path,
        }


DEFAULTS = {
    "omega0": 1.0,
    "lambda": 0.5,
    "gamma0": 10.0,
    "temperature": 1.0,
    "c_g_re": math.sqrt(3.0) / 2.0,
    "c_g_im": 0.0,
    "c_e_re": 0.5,
    "c_e_im": 0.0,
    "tmax": 3.0,
    "samples": 3000,
    "quad_scheme": "simpson",
    "quad_n": None,
    "epsilon_floor": qmat.DEFAULT_FLOOR,
    "bures_variant": BuresVariant.STANDARD.value,
    "relpurity_mode": RelPurityMode.EQ6_COHERENCE.value,
    "avg_power_t0": 0.0,
    "columns": None,
    "out_path": None,
}


def _real(raw, key):
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(key, f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(key, "must be finite")
    return value


def _positive(raw, key):
    value = _real(raw, key)
    if not value > 0:
        raise ConfigError(key, f"{key} must be > 0")
    return value


def _integer(raw, key):
    value = raw[key]
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(key, f"expected an integer, got {value!r}")
    return value


def _choice(raw, key, enum_type):
    try:
        return enum_type(raw[key])
    except ValueError:
        allowed = "|".join(e.value for e in enum_type)
        raise ConfigError(key, f"expected one of {allowed}, got {raw[key]!r}") from None


def _columns(value):
    if value is None:
        return COLUMNS
    if isinstance(value, str):
        value = [c.strip() for c in value.split(",") if c.strip()]
    if not isinstance(value, list) or not all(isinstance(c, str) for c in value):
        raise ConfigError("columns", "expected a list of column names")
    unknown = [c for c in value if c not in COLUMNS]
    if unknown:
        raise ConfigError("columns", f"unknown column(s) {', '.join(unknown)}")
    # t always leads; the rest keep the canonical order.
    chosen = set(value) | {"t"}
    return tuple(c for c in COLUMNS if c in chosen)


def parse_config(source=None):
    """Build a :class:`RunConfig` from JSON text, a mapping or ``None`` (all defaults)."""
    if source is None or (isinstance(source, str) and not source.strip()):
        doc = {}
    elif isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ConfigError("", f"malformed JSON: {exc}") from None
    else:
        doc = source
    if not isinstance(doc, dict):
        raise ConfigError("", "top level must be a key/value object")
    unknown = sorted(set(doc) - set(DEFAULTS))
    if unknown:
        raise ConfigError(unknown[0], "unknown key")
    raw = {**DEFAULTS, **doc}

    omega0 = _positive(raw, "omega0")
    lam = _positive(raw, "lambda")
    gamma0 = _positive(raw, "gamma0")
    temperature = _positive(raw, "temperature")
    c_g = complex(_real(raw, "c_g_re"), _real(raw, "c_g_im"))
    c_e = complex(_real(raw, "c_e_re"), _real(raw, "c_e_im"))
    norm = abs(c_g) ** 2 + abs(c_e) ** 2
    if abs(norm - 1.0) > NORMALIZATION_SLACK:
        raise ConfigError("c_g_re", f"|c_g|^2 + |c_e|^2 = {norm!r}, expected 1")
    # Renormalize only what the model would reject; exact inputs stay bitwise.
    scale = 1.0 if abs(norm - 1.0) <= NORMALIZATION_TOL else 1.0 / math.sqrt(norm)
    model = ModelParams(omega0, lam, gamma0, temperature, c_g * scale, c_e * scale)

    tmax = _positive(raw, "tmax")
    samples = _integer(raw, "samples")
    if samples < 200 or samples % 2:
        raise ConfigError("samples", f"must be even and >= 200, got {samples}")

    scheme = raw["quad_scheme"]
    if scheme not in ("simpson", "trapezoid"):
        raise ConfigError("quad_scheme", f"expected simpson|trapezoid, got {scheme!r}")
    quad_n = samples if raw["quad_n"] is None else _integer(raw, "quad_n")
    if quad_n < samples or quad_n % samples:
        raise ConfigError("quad_n", f"must be a positive multiple of samples={samples}")
    quad = QuadratureSpec(n=quad_n, scheme=scheme)

    floor = _real(raw, "epsilon_floor")
    if not 0.0 < floor <= MAX_FLOOR:
        raise ConfigError("epsilon_floor", f"must lie in (0, {MAX_FLOOR:g}]")

    t0 = _real(raw, "avg_power_t0")
    k = t0 * samples / tmax
    if not 0.0 <= t0 < tmax or abs(k - round(k)) > 1e-9 * max(1.0, k):
        raise ConfigError("avg_power_t0", "must be a grid instant in [0, tmax)")
    t0 = round(k) * tmax / samples

    out_path = raw["out_path"]
    if out_path is not None and not isinstance(out_path, str):
        raise ConfigError("out_path", "expected a string path")

    return RunConfig(
        model=model, tmax=tmax, samples=samples, quad=quad, epsilon_floor=floor,
        bures_variant=_choice(raw, "bures_variant", BuresVariant),
        relpurity_mode=_choice(raw, "relpurity_mode", RelPurityMode),
        avg_power_t0=t0, outputs=_columns(raw["columns"]), out_path=out_path,
    )


def load_config(path):
    if path is None:
        return parse_config(None)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("", f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text)


def worker_count():
    """Worker cap from ``QSLBATTERY_THREADS`` (default: machine parallelism)."""
    available = os.cpu_count() or 1
    cap = os.environ.get("QSLBATTERY_THREADS")
    if not cap:
        return available
    try:
        return max(1, min(int(cap), available))
    except ValueError:
        raise ConfigError("QSLBATTERY_THREADS", f"expected an integer, got {cap!r}") from None


# --- sweep ------------------------------------------------------------------


def _thermo_columns(grid, config):
    a = grid.rho[:, 0, 0].real
    d = grid.rho[:, 1, 1].real
    br = grid.rho[:, 1, 0].real
    bi = grid.rho[:, 1, 0].imag
    zero = np.zeros_like(a)
    s, _ = kernels.entropy_logs(a, d, br, bi, config.epsilon_floor)
    s_d, _ = kernels.entropy_logs(a, d, zero, zero, config.epsilon_floor)
    w, w_i, w_c = kernels.ergotropy_split(a, d, br, bi, config.model.omega0)
    power = power_series(w, grid.times, config.avg_power_t0)
    singular = np.abs(grid.g) < RATE_SINGULAR_G
    gamma = np.full_like(a, np.nan)
    gamma[~singular] = -2.0 * grid.gdot[~singular] / grid.g[~singular]
    return {
        "t": grid.times,
        "g": grid.g,
        "gamma": gamma,
        "purity": a * a + d * d + 2.0 * (br * br + bi * bi),
        "c_l1": 2.0 * np.hypot(br, bi),
        "c_relent": np.maximum(s_d - s, 0.0),
        "w": w,
        "w_i": w_i,
        "w_c": w_c,
        "p_inst": power.p_inst,
        "p_avg": power.p_avg,
    }


def _qsl_columns(grid, config):
    sweep = qsl_sweep(grid, config.quad, config.bures_variant, config.relpurity_mode,
                      config.epsilon_floor)
    for flag in sorted(sweep.flags):
        log.info("qsl flag: %s", flag)
    return sorted(sweep.flags), {
        "tau_qsl_fisher": sweep.tau_qsl_fisher,
        "tau_qsl_wy": sweep.tau_qsl_wy,
        "tau_qsl_relpurity": sweep.tau_qsl_relpurity,
        "tau_csl": sweep.tau_csl,
    }


def _log_nan_reasons(table):
    reasons = {
        "gamma": "decay rate diverges at zeros of G",
        "p_avg": "average power undefined for t <= avg_power_t0",
    }
    for name, reason in reasons.items():
        bad = ~np.isfinite(table[name])
        if bad.any():
            first = float(table["t"][np.argmax(bad)])
            log.info("%s: nan at %d sample(s), first t=%r (%s)", name, int(bad.sum()), first, reason)


def _check_finite(table):
    for name in COLUMNS:
        if name in NAN_ALLOWED:
            continue
        bad = ~np.isfinite(table[name])
        if bad.any():
            raise SweepFailure(name, float(table["t"][np.argmax(bad)]))


def _sweep(config):
    grid = build_trajectory(config.model, config.tmax, config.samples)
    # Thermodynamics and QSL bounds are independent; results are merged by name.
    with ThreadPoolExecutor(max_workers=min(2, worker_count())) as pool:
        thermo = pool.submit(_thermo_columns, grid, config)
        bounds = pool.submit(_qsl_columns, grid, config)
        flags, qsl_cols = bounds.result()
        merged = {**thermo.result(), **qsl_cols}
    table = {name: merged[name] for name in COLUMNS}
    _check_finite(table)
    _log_nan_reasons(table)
    return table, flags


def sweep_table(config):
    """Column arrays of the sweep keyed by column name, in canonical order."""
    return _sweep(config)[0]


def run_sweep(config):
    table = sweep_table(config)
    columns = [table[name].tolist() for name in COLUMNS]
    return [SweepRow(*values) for values in zip(*columns)]


# --- CSV --------------------------------------------------------------------


def _fmt(x):
    return repr(float(x))


def write_csv(path, table, names, metadata):
    """Write selected columns with a metadata line and validate the file."""
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# " + json.dumps(metadata, sort_keys=True) + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(names)
        cols = [table[n] for n in names]
        for i in range(len(table["t"])):
            writer.writerow([_fmt(c[i]) for c in cols])
    validate_csv(path, names, len(table["t"]))
    return path


def validate_csv(path, names, rows_expected):
    """Re-read a written CSV and check layout, monotone ``t`` and finiteness policy."""
    with open(path, encoding="utf-8", newline="") as fh:
        meta = fh.readline()
        if not meta.startswith("# "):
            raise SweepFailure("csv metadata line", math.nan)
        json.loads(meta[2:])
        reader = csv.reader(fh)
        header = next(reader)
        if header != list(names):
            raise SweepFailure("csv header", math.nan)
        last = -math.inf
        count = 0
        for row in reader:
            values = dict(zip(header, map(float, row)))
            t = values["t"]
            if not t > last:
                raise SweepFailure("csv monotone t", t)
            for name, value in values.items():
                if not math.isfinite(value) and name not in NAN_ALLOWED:
                    raise SweepFailure(f"csv finiteness of {name}", t)
            last = t
            count += 1
    if count != rows_expected:
        raise SweepFailure("csv row count", last)


def _metadata(config, **extra):
    return {"artifact": "qslbattery", "version": __version__, "config": config.to_flat(), **extra}


def sweep_to_csv(config, out_path=None):
    out = out_path or config.out_path
    if out is None:
        raise ConfigError("out_path", "no output path given")
    table, flags = _sweep(config)
    return write_csv(out, table, config.outputs, _metadata(config, flags=flags))


# --- figure presets ---------------------------------------------------------


@dataclass(frozen=True)
class FigurePreset:
    id: int
    gamma0: float
    tmax: float
    columns: tuple
    title: str


FIGURES = {
    1: FigurePreset(1, 10.0, 3.0, ("t", "tau_qsl_fisher", "tau_qsl_wy", "tau_qsl_relpurity"),
                    "Fisher, Wigner-Yanase and relative-purity QSL times"),
    2: FigurePreset(2, 10.0, 3.0, ("t", "tau_csl", "tau_csl_x10", "w", "w_c", "p_inst", "p_avg"),
                    "Coherence speed limit against coherent ergotropy and power"),
    3: FigurePreset(3, 10.0, 3.0, ("t", "tau_qsl_relpurity", "w", "w_c", "p_inst", "p_avg"),
                    "Relative-purity QSL time against ergotropy and power"),
    4: FigurePreset(4, 0.1, 15.0, ("t", "tau_qsl_fisher", "w", "p_inst", "p_avg"),
                    "Markovian discharge"),
    5: FigurePreset(5, 10.0, 3.0, ("t", "tau_qsl_fisher", "tau_qsl_wy", "w", "p_inst", "p_avg"),
                    "Geometric QSL times over a discharge-recharge cycle"),
}


def _gnuplot_stub(preset, csv_name):
    lines = [
        f"# {preset.title}",
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set xlabel 't'",
    ]
    plots = [f"'{csv_name}' using 1:{i + 1} with lines" for i in range(1, len(preset.columns))]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


def figure_preset(fig_id, out_dir, base=None, gnuplot=True):
    """Write ``fig<id>.csv`` (and a gnuplot stub) for one figure preset.

    Model parameters, ``tmax`` and the column set come from the preset; the
    math-mode choices (Bures variant, relative-purity mode, floor,
    quadrature) come from ``base`` and are recorded in the metadata line.
    """
    if isinstance(fig_id, bool) or fig_id not in FIGURES:
        raise UsageError(f"figure id must be one of 1..5, got {fig_id!r}")
    preset = FIGURES[fig_id]
    base = base or parse_config(None)
    flat = base.to_flat()
    flat.update({
        "omega0": 1.0, "lambda": 0.5, "gamma0": preset.gamma0, "temperature": 1.0,
        "c_g_re": DEFAULTS["c_g_re"], "c_g_im": 0.0, "c_e_re": 0.5, "c_e_im": 0.0,
        "tmax": preset.tmax, "out_path": None,
        "columns": [c for c in preset.columns if c in COLUMNS],
    })
    if flat["quad_n"] % flat["samples"]:
        flat["quad_n"] = flat["samples"]
    if flat["avg_power_t0"] >= preset.tmax:
        flat["avg_power_t0"] = 0.0
    config = parse_config(flat)
    table, flags = _sweep(config)
    table["tau_csl_x10"] = 10.0 * table["tau_csl"]
    out_dir = Path(out_dir)
    csv_path = out_dir / f"fig{fig_id}.csv"
    meta = _metadata(config, flags=flags, figure=fig_id, title=preset.title,
                     note="axis range tmax is a reconstruction; captions give no ranges")
    write_csv(csv_path, table, preset.columns, meta)
    written = [csv_path]
    if gnuplot:
        stub = out_dir / f"fig{fig_id}.gp"
        stub.write_text(_gnuplot_stub(preset, csv_path.name), encoding="utf-8")
        written.append(stub)
    return written


# --- regime report ----------------------------------------------------------


def negative_rate_intervals(params, tmax):
    """Maximal intervals in ``[0, tmax]`` where ``gamma = -2 Gdot/G < 0``.

    ``gamma`` changes sign only at zeros of ``G`` or of ``Gdot``, so testing
    one interior point per piece is exact.
    """
    cuts = sorted({0.0, float(tmax), *g_zeros(params, tmax), *gdot_zeros(params, tmax)})
    intervals = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        g, gdot = g_series(np.array([0.5 * (lo + hi)]), params)
        if -2.0 * gdot[0] / g[0] < 0:
            if intervals and intervals[-1][1] == lo:
                intervals[-1][1] = hi
            else:
                intervals.append([lo, hi])
    return [tuple(iv) for iv in intervals]


def standard_ad_deviation(params, window=STANDARD_AD_WINDOW, samples=10001):
    """``max |gamma(t) - gamma0| / gamma0`` over ``window``."""
    t = np.linspace(window[0], window[1], samples)
    g, gdot = g_series(t, params)
    return float(np.max(np.abs(-2.0 * gdot / g - params.gamma0)) / params.gamma0)


def _alignment(times, ref, target, same_kind, spacings, h):
    span = float(np.ptp(ref)) if ref.size else 0.0
    ref_ext = extrema_locator(times, ref, ALIGNMENT_PROMINENCE * span)
    target_ext = extrema_locator(times, target)
    pairs = pair_extrema(ref_ext, target_ext, same_kind, spacings * h)
    return [p._asdict() for p in pairs]


def regime_report(config):
    """Human-readable report and its machine-readable summary."""
    params = config.model
    regime = coupling_regime(params)
    table = sweep_table(config)
    times = table["t"]
    h = config.tmax / config.samples
    zeros = g_zeros(params, config.tmax)
    negative = negative_rate_intervals(params, config.tmax)

    w = table["w"]
    omega0 = params.omega0
    discharged = np.nonzero(w <= DISCHARGED * omega0)[0]
    first_discharge = zeros[0] if zeros else (float(times[discharged[0]]) if discharged.size else None)
    cycles = 0
    for i, z in enumerate(zeros):
        nxt = zeros[i + 1] if i + 1 < len(zeros) else config.tmax
        stretch = (times > z) & (times <= nxt)
        if stretch.any() and np.max(w[stretch]) > RECHARGED * omega0:
            cycles += 1

    window = times >= 0.2
    t_win = times[window]
    alignment = {
        "tau_csl_vs_w_c": _alignment(t_win, table["tau_csl"][window], table["w_c"][window],
                                     True, 1, h),
        "tau_qsl_relpurity_vs_p_inst": _alignment(t_win, table["tau_qsl_relpurity"][window],
                                                  table["p_inst"][window], False, 2, h),
        "tau_qsl_fisher_vs_w": _alignment(t_win, table["tau_qsl_fisher"][window], w[window],
                                          True, 2, h),
    }
    summary = {
        "regime": regime.value,
        "markovian": regime.markovian,
        "g_zeros": zeros[:3],
        "negative_gamma_intervals": [list(iv) for iv in negative],
        "first_full_discharge": first_discharge,
        "discharge_recharge_cycles": cycles,
        "alignment": alignment,
        "standard_ad_deviation": (standard_ad_deviation(params)
                                  if regime is Regime.STANDARD_AD else None),
        "config": config.to_flat(),
    }
    return _report_text(summary), summary


def _report_text(s):
    out = [f"regime: {s['regime']}"]
    zeros = ", ".join(f"{z:.6f}" for z in s["g_zeros"]) or "none"
    out.append(f"zeros of G (first three): {zeros}")
    neg = ", ".join(f"[{a:.6f}, {b:.6f}]" for a, b in s["negative_gamma_intervals"]) or "none"
    out.append(f"gamma < 0 on: {neg}")
    fd = s["first_full_discharge"]
    out.append("first full discharge: " + (f"t = {fd:.6f}" if fd is not None else "none"))
    out.append(f"discharge-recharge cycles: {s['discharge_recharge_cycles']}")
    if s["standard_ad_deviation"] is not None:
        dev = s["standard_ad_deviation"]
        out.append(f"standard amplitude damping limit: max |gamma - gamma0|/gamma0 = {dev:.3e} "
                   f"on t in [{STANDARD_AD_WINDOW[0]}, {STANDARD_AD_WINDOW[1]}]")
    for name, rows in s["alignment"].items():
        out.append(f"extrema alignment {name}:")
        if not rows:
            out.append("  (no extrema)")
        for r in rows:
            mark = "ok" if r["matched"] else "MISS"
            out.append(f"  {r['kind']:>3} at {r['t']:.4f} -> {r['partner_kind']} at "
                       f"{r['partner_t']:.4f} (|dt| = {r['distance']:.4f}) {mark}")
    return "\n".join(out) + "\n"


# --- entry point ------------------------------------------------------------


def _parser():
    p = argparse.ArgumentParser(prog="qslbattery", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log nan reasons and progress")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", help="sweep one configuration into a CSV")
    s.add_argument("--config", help="JSON config file (defaults when omitted)")
    s.add_argument("--out", help="output CSV (overrides out_path)")

    f = sub.add_parser("figure", help="write the data behind one figure preset")
    f.add_argument("--id", required=True, help="preset id 1..5")
    f.add_argument("--out-dir", required=True)
    f.add_argument("--config", help="math-mode settings to apply (model keys are ignored)")
    f.add_argument("--no-gnuplot", action="store_true", help="skip the gnuplot stub")

    r = sub.add_parser("report", help="regime report for one configuration")
    r.add_argument("--config", help="JSON config file (defaults when omitted)")
    r.add_argument("--json", help="also write the summary as JSON to this file")
    return p


def _run(args):
    if args.command == "sweep":
        config = load_config(args.config)
        path = sweep_to_csv(config, args.out)
        log.info("wrote %s", path)
    elif args.command == "figure":
        try:
            fig_id = int(args.id)
        except ValueError:
            raise UsageError(f"figure id must be one of 1..5, got {args.id!r}") from None
        base = load_config(args.config)
        for path in figure_preset(fig_id, args.out_dir, base, gnuplot=not args.no_gnuplot):
            log.info("wrote %s", path)
    else:
        config = load_config(args.config)
        text, summary = regime_report(config)
        sys.stdout.write(text)
        if args.json:
            Path(args.json).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n",
                                       encoding="utf-8")


def main(argv=None):
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        _run(args)
    except (ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, QslBatteryError, OSError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
