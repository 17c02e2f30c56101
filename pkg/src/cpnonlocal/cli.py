"""Config files, trial-series files and the ``cpnonlocal`` command line.

Config files are INI documents; units are fixed by the key names::

    [source]     pair_rate_hz, wavelength_m
    [amplifier]  gain
    [plate]      density_kg_m3, thickness_m, radius_m, birefringence
    [geometry]   separation_m, window_s
    [readout]    alice_count_noise_std, polarimeter_angle_noise_rad   (optional)
    [run]        coast_s, interval_s, trials, seed, mode

Series files are CSV with a ``#``-prefixed header that echoes the config.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import math
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    correlation_cp,
    correlation_lagged,
    correlation_pearson,
    noise_spectra,
    normalized_differences,
)
from .errors import (
    ConfigError,
    IntegrityError,
    MalformedRowError,
    RowCountError,
    SeriesFormatError,
    VersionMismatchError,
)
from .experiment import (
    CorrelationMode,
    ExperimentConfig,
    GeometrySpec,
    ReadoutNoiseSpec,
    TrialRecord,
    TrialSeries,
    check_nonlocality_condition,
    parameter_report,
    run_experiment,
)
from .optics import AmplifierSpec, WavePlateSpec
from .source import SourceSpec

SERIES_FORMAT_VERSION = 1
SERIES_COLUMNS = ("index", "delta_n_gamma", "delta_omega_p_rad_s", "coast_angle_rad", "violation_flag")

_POSITIVE = "positive"
_NONNEG = "nonnegative"

# section -> [(key, kind)]; order is the print order
SCHEMA = {
    "source": [("pair_rate_hz", _POSITIVE), ("wavelength_m", _POSITIVE)],
    "amplifier": [("gain", _POSITIVE)],
    "plate": [
        ("density_kg_m3", _POSITIVE),
        ("thickness_m", _POSITIVE),
        ("radius_m", _POSITIVE),
        ("birefringence", _POSITIVE),
    ],
    "geometry": [("separation_m", _POSITIVE), ("window_s", _POSITIVE)],
    "readout": [("alice_count_noise_std", _NONNEG), ("polarimeter_angle_noise_rad", _NONNEG)],
    "run": [("coast_s", _NONNEG), ("interval_s", _POSITIVE), ("trials", "int"), ("seed", "int"), ("mode", "mode")],
}
_OPTIONAL_SECTIONS = {"readout"}


def _parse_value(key_path: str, raw: str, kind: str):
    raw = raw.strip()
    if kind == "mode":
        try:
            return CorrelationMode(raw.lower())
        except ValueError:
            choices = ", ".join(m.value for m in CorrelationMode)
            raise ConfigError(f"unknown mode {raw!r} (expected one of {choices})", key_path) from None
    if kind == "int":
        try:
            return int(raw, 0)
        except ValueError:
            raise ConfigError(f"expected an integer, got {raw!r}", key_path) from None
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"expected a number, got {raw!r}", key_path) from None
    if not math.isfinite(value):
        raise ConfigError(f"must be finite, got {raw!r}", key_path)
    if kind == _POSITIVE and not value > 0:
        raise ConfigError(f"must be > 0, got {raw!r}", key_path)
    if kind == _NONNEG and not value >= 0:
        raise ConfigError(f"must be >= 0, got {raw!r}", key_path)
    return value


def parse_config(text: str) -> ExperimentConfig:
    parser = configparser.ConfigParser(interpolation=None, default_section="__none__")
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"unreadable config: {exc}") from None

    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError("unknown section", section)
        allowed = {k for k, _ in SCHEMA[section]}
        for key in parser[section]:
            if key not in allowed:
                raise ConfigError("unknown key", f"{section}.{key}")

    values = {}
    for section, keys in SCHEMA.items():
        for key, kind in keys:
            path = f"{section}.{key}"
            if parser.has_option(section, key):
                values[path] = _parse_value(path, parser[section][key], kind)
            elif section not in _OPTIONAL_SECTIONS:
                raise ConfigError("missing required key", path)

    if values["run.trials"] < 1:
        raise ConfigError("must be >= 1", "run.trials")
    if not 0 <= values["run.seed"] < 2**64:
        raise ConfigError("must be a 64-bit unsigned integer", "run.seed")
    if values["run.interval_s"] < values["geometry.window_s"]:
        raise ConfigError("must be >= geometry.window_s", "run.interval_s")
    if values["amplifier.gain"] < 1:
        raise ConfigError("must be >= 1", "amplifier.gain")

    defaults = ReadoutNoiseSpec()
    readout = ReadoutNoiseSpec(
        values.get("readout.alice_count_noise_std", defaults.alice_count_noise_std),
        values.get("readout.polarimeter_angle_noise_rad", defaults.polarimeter_angle_noise_std),
    )
    try:
        return ExperimentConfig(
            source=SourceSpec(values["source.pair_rate_hz"], values["source.wavelength_m"]),
            amplifier=AmplifierSpec(values["amplifier.gain"]),
            plate=WavePlateSpec(
                values["plate.density_kg_m3"],
                values["plate.thickness_m"],
                values["plate.radius_m"],
                values["plate.birefringence"],
            ),
            geometry=GeometrySpec(values["geometry.separation_m"], values["geometry.window_s"]),
            readout=readout,
            coast_time=values["run.coast_s"],
            trial_interval=values["run.interval_s"],
            n_trials=values["run.trials"],
            seed=values["run.seed"],
            correlation_mode=values["run.mode"],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def format_config(config: ExperimentConfig) -> str:
    flat = {
        "source": {"pair_rate_hz": config.source.pair_rate, "wavelength_m": config.source.wavelength},
        "amplifier": {"gain": config.amplifier.gain},
        "plate": {
            "density_kg_m3": config.plate.mass_density,
            "thickness_m": config.plate.thickness,
            "radius_m": config.plate.radius,
            "birefringence": config.plate.birefringence,
        },
        "geometry": {"separation_m": config.geometry.separation, "window_s": config.geometry.measurement_window},
        "readout": {
            "alice_count_noise_std": config.readout.alice_count_noise_std,
            "polarimeter_angle_noise_rad": config.readout.polarimeter_angle_noise_std,
        },
        "run": {
            "coast_s": config.coast_time,
            "interval_s": config.trial_interval,
            "trials": config.n_trials,
            "seed": config.seed,
            "mode": config.correlation_mode.value,
        },
    }
    out = []
    for section, keys in SCHEMA.items():
        out.append(f"[{section}]")
        for key, _ in keys:
            value = flat[section][key]
            out.append(f"{key} = {value!r}" if isinstance(value, float) else f"{key} = {value}")
        out.append("")
    return "\n".join(out)


def format_series(series: TrialSeries) -> str:
    cfg = series.config
    buf = io.StringIO()
    buf.write("# cpnonlocal trial series\n")
    buf.write(f"# format_version = {SERIES_FORMAT_VERSION}\n")
    buf.write(f"# artifact_version = {__version__}\n")
    buf.write(f"# seed = {cfg.seed}\n")
    buf.write(f"# trials = {cfg.n_trials}\n")
    buf.write("# config.begin\n")
    for line in format_config(cfg).splitlines():
        buf.write(f"# {line}\n".replace("# \n", "#\n"))
    buf.write("# config.end\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SERIES_COLUMNS)
    for r in series.records:
        writer.writerow([r.index, repr(r.delta_n_gamma), repr(r.delta_omega_p), repr(r.coast_angle), int(r.violation)])
    return buf.getvalue()


def save_series(series: TrialSeries, path) -> None:
    Path(path).write_text(format_series(series), encoding="utf-8")


def parse_series(text: str) -> TrialSeries:
    lines = text.splitlines()
    header = {}
    config_lines: list[str] = []
    in_config = False
    body_start = None
    for n, line in enumerate(lines):
        if not line.startswith("#"):
            body_start = n
            break
        content = line[1:].strip() if not in_config else line[2:] if line.startswith("# ") else line[1:]
        if line.strip() == "# config.begin":
            in_config = True
        elif line.strip() == "# config.end":
            in_config = False
        elif in_config:
            config_lines.append(content)
        elif "=" in content:
            k, v = content.split("=", 1)
            header[k.strip()] = v.strip()
    if body_start is None:
        raise MalformedRowError("series file has no table")

    version = header.get("format_version")
    if version != str(SERIES_FORMAT_VERSION):
        raise VersionMismatchError(f"unsupported series format version {version!r}")
    try:
        config = parse_config("\n".join(config_lines))
        seed = int(header["seed"])
        trials = int(header["trials"])
    except (KeyError, ValueError) as exc:
        raise IntegrityError(f"bad series header: {exc}") from None
    if seed != config.seed or trials != config.n_trials:
        raise IntegrityError("header seed/trials disagree with the config echo")

    reader = csv.reader(lines[body_start:])
    columns = next(reader)
    if tuple(columns) != SERIES_COLUMNS:
        raise MalformedRowError(f"unexpected columns {columns}")
    expected_flag = not check_nonlocality_condition(config.geometry).satisfied
    records = []
    for lineno, row in enumerate(reader, start=body_start + 2):
        if not row:
            continue
        if len(row) != len(SERIES_COLUMNS):
            raise MalformedRowError(f"line {lineno}: expected {len(SERIES_COLUMNS)} fields, got {len(row)}")
        try:
            flag = {"0": False, "1": True}[row[4]]
            rec = TrialRecord(int(row[0]), float(row[1]), float(row[2]), float(row[3]), flag)
        except (ValueError, KeyError):
            raise MalformedRowError(f"line {lineno}: cannot parse {row}") from None
        if not all(math.isfinite(v) for v in (rec.delta_n_gamma, rec.delta_omega_p, rec.coast_angle)):
            raise MalformedRowError(f"line {lineno}: non-finite value")
        if flag != expected_flag:
            raise IntegrityError(f"line {lineno}: violation flag disagrees with the config geometry")
        records.append(rec)
    if len(records) != trials:
        raise RowCountError(f"header declares {trials} trials, file has {len(records)} rows")
    try:
        return TrialSeries(config, tuple(records))
    except ValueError as exc:
        raise IntegrityError(str(exc)) from None


def load_series(path) -> TrialSeries:
    return parse_series(Path(path).read_text(encoding="utf-8"))


def format_report(config: ExperimentConfig) -> str:
    report = parameter_report(config)
    rows = [("quantity", "value", "unit", "reference", "note")]
    for line in report.lines:
        rows.append((line.name, f"{line.value:.6g}", line.unit, line.reference or "-", line.note or "-"))
    verdict = "satisfied" if report.nonlocality.satisfied else "violated"
    rows.append(("nonlocality_condition", verdict, "-", "-", "separation > c*window"))
    rows.append(("power_discrepancy", "flagged" if report.power_mismatch else "none", "-", "-", "-"))
    return "".join("\t".join(r) + "\n" for r in rows)


def format_analysis(series: TrialSeries, max_lag: int, taper: str = "rect") -> str:
    lagged = correlation_lagged(series, max_lag)
    plus, minus = normalized_differences(series)
    spectra = noise_spectra(series, series.config.trial_interval, window=taper)
    int_s, int_a = spectra.integrated()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    buf.write("[summary]\n")
    w.writerow(("quantity", "value"))
    for name, value in [
        ("c_p", lagged.c_p),
        ("c_pearson", correlation_pearson(series)),
        ("peak_lag", lagged.peak_lag()),
        ("sum_delta_plus_sq", float(plus @ plus)),
        ("sum_delta_minus_sq", float(minus @ minus)),
        ("integrated_chi_s", int_s),
        ("integrated_chi_a", int_a),
        ("chi_s_over_chi_a", int_s / int_a),
        ("trial_interval_s", series.config.trial_interval),
        ("n_trials", len(series)),
    ]:
        w.writerow((name, repr(value)))
    buf.write("\n[lag_profile]\n")
    w.writerow(("j", "c_plus", "c_minus"))
    for j in range(-max_lag, max_lag + 1):
        w.writerow((j, repr(lagged.c_plus(j)), repr(lagged.c_minus(j))))
    buf.write("\n[spectra]\n")
    w.writerow(("omega_rad_s", "chi_s", "chi_a"))
    for f, s, a in zip(spectra.frequencies, spectra.chi_s, spectra.chi_a):
        w.writerow((repr(float(f)), repr(float(s)), repr(float(a))))
    return buf.getvalue()


def read_analysis_summary(text: str) -> dict[str, float]:
    """The ``[summary]`` block of an analysis file as a dict."""
    block = text.split("[summary]\n", 1)[1].split("\n\n", 1)[0]
    rows = list(csv.reader(block.splitlines()))[1:]
    return {k: float(v) for k, v in rows}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpnonlocal", description="Entangled-photon mechanical-detection simulator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run trials and write a series file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("analyze", help="correlations and spectra of a series file")
    p.add_argument("--series", required=True)
    p.add_argument("--max-lag", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--taper", choices=("rect", "hann"), default="rect")

    p = sub.add_parser("report", help="closed-form design estimates for a config")
    p.add_argument("--config", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "simulate":
            save_series(run_experiment(load_config(args.config)), args.out)
        elif args.command == "analyze":
            text = format_analysis(load_series(args.series), args.max_lag, args.taper)
            Path(args.out).write_text(text, encoding="utf-8")
            sys.stdout.write(text.split("\n\n", 1)[0] + "\n")
        elif args.command == "report":
            sys.stdout.write(format_report(load_config(args.config)))
    except (ConfigError, SeriesFormatError, ValueError, OSError) as exc:
        print(f"cpnonlocal {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


cli_main = main
