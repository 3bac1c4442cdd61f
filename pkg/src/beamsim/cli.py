"""``beamsim`` command-line front end.

Subcommands
-----------
beampattern   response grid |H| over frequency x angle (CSV in dB + JSON)
polar         polar slices of the response at selected frequencies
simulate      run a WAV file (or the built-in speech signal) through the
              simulated array and write the beamformer output
attenuation   spectral attenuation between source and beamformer output

Exit codes: 0 success, 2 configuration error, 3 I/O or file-format error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import __version__
from .analysis import attenuation_spectrum, band_average_attenuation
from .beampattern import compute_grid, find_lobes, polar_slice
from .exceptions import BeamsimError, FormatError
from .export import (
    ensure_dir, fmt, write_attenuation_csv, write_attenuation_json,
    write_grid_csv, write_grid_json, write_json, write_slice_csv,
)
from .geometry import (
    ArrayGeometry, ArrayKind, Medium, radius_to_spacing, spacing_to_radius,
)
from .signals import synthetic_speech
from .simulator import (
    InterpolatorSpec, beamform, check_sample_rate, propagate,
)
from .wavio import read_wav, write_capture_wav, write_wav

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

DEFAULT_SPACING = 0.06
LOW_BAND = (300.0, 600.0)
MAIN_BAND_LOW = 1000.0


class ConfigError(BeamsimError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved experiment settings; defaults reproduce the reference 8-mic experiment."""

    geometry: str | None = None
    mics: int = 8
    spacing_m: float | None = None
    radius_m: float | None = None
    steer_deg: float = 90.0
    doa_deg: float = 45.0
    sound_speed: float = 343.0
    f_min: float = 300.0
    f_max: float = 4000.0
    f_step: float = 10.0
    angle_step_deg: float = 1.0
    sample_rate: float = 16000.0
    sinc_half_width: int = 64
    input: str | None = None
    out_dir: str = "beamsim-out"
    frequencies: tuple[float, ...] = (300.0, 2000.0, 4000.0)
    write_capture: bool = False

    def validate(self) -> "ExperimentConfig":
        if self.geometry is not None and self.geometry not in ("linear",
                                                               "circular"):
            raise ConfigError(f"unknown geometry {self.geometry!r}")
        if int(self.mics) != self.mics or self.mics < 2:
            raise ConfigError(f"mics must be an integer >= 2, got {self.mics}")
        if self.spacing_m is not None and self.radius_m is not None:
            raise ConfigError("give either spacing_m or radius_m, not both")
        for name in ("spacing_m", "radius_m", "sound_speed", "f_min",
                     "f_max", "f_step", "angle_step_deg", "sample_rate"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be positive, got {value}")
        for name in ("steer_deg", "doa_deg"):
            value = getattr(self, name)
            if not 0.0 <= value < 360.0:
                raise ConfigError(f"{name} must lie in [0, 360), got {value}")
        if self.f_min > self.f_max:
            raise ConfigError("f_min must not exceed f_max")
        if self.angle_step_deg > 22.5:
            raise ConfigError("angle_step_deg must be at most 22.5")
        if int(self.sinc_half_width) != self.sinc_half_width \
                or self.sinc_half_width < 8:
            raise ConfigError("sinc_half_width must be an integer >= 8")
        if any(not (math.isfinite(f) and f > 0) for f in self.frequencies):
            raise ConfigError("frequencies must be positive")
        return self

    def kinds(self, default: tuple[str, ...]) -> tuple[str, ...]:
        return (self.geometry,) if self.geometry else default

    def array(self, kind: str) -> ArrayGeometry:
        if self.radius_m is not None:
            radius = self.radius_m
            spacing = radius_to_spacing(radius, self.mics)
        else:
            spacing = DEFAULT_SPACING if self.spacing_m is None \
                else self.spacing_m
            radius = spacing_to_radius(spacing, self.mics)
        if kind == ArrayKind.LINEAR.value:
            return ArrayGeometry.linear(self.mics, spacing)
        return ArrayGeometry.circular(self.mics, radius)

    @property
    def medium(self) -> Medium:
        return Medium(self.sound_speed)

    @property
    def interpolator(self) -> InterpolatorSpec:
        return InterpolatorSpec(half_width=int(self.sinc_half_width))

    def echo(self, kind: str) -> dict:
        """Fully resolved configuration for one geometry."""
        geom = self.array(kind)
        data = asdict(self)
        data["geometry"] = kind
        data["spacing_m"] = geom.spacing
        data["radius_m"] = spacing_to_radius(geom.spacing, self.mics)
        data["frequencies"] = list(self.frequencies)
        return data


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _coerce(key: str, raw: str):
    kind = _FIELD_TYPES[key]
    if key == "frequencies":
        return tuple(float(v) for v in raw.replace(",", " ").split())
    if key == "write_capture":
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if kind.startswith("int"):
        return int(raw)
    if kind.startswith("float"):
        return float(raw)
    return raw.strip() or None


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; '#' starts a comment."""
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELD_TYPES:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _coerce(key, raw)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}") from exc
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False,
                                     argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="key = value settings file; "
                        "command-line flags take precedence")
    common.add_argument("--defaults", action="store_true",
                        help="use the reference 8-mic setup for anything not given "
                        "(this is also the behaviour without the flag)")
    common.add_argument("--geometry", choices=["linear", "circular"])
    common.add_argument("--mics", type=int)
    common.add_argument("--spacing-m", type=float)
    common.add_argument("--radius-m", type=float)
    common.add_argument("--steer-deg", type=float)
    common.add_argument("--doa-deg", type=float)
    common.add_argument("--sound-speed", type=float)
    common.add_argument("--f-min", type=float)
    common.add_argument("--f-max", type=float)
    common.add_argument("--f-step", type=float)
    common.add_argument("--angle-step-deg", type=float)
    common.add_argument("--sample-rate", type=float)
    common.add_argument("--sinc-half-width", type=int)
    common.add_argument("--input", help="mono 16-bit PCM or float WAV")
    common.add_argument("--out-dir")

    parser = argparse.ArgumentParser(
        prog="beamsim", description="Delay-and-sum microphone array "
        "simulation for linear and circular arrays.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("beampattern", parents=[common],
                   help="frequency x angle response grid")
    polar = sub.add_parser("polar", parents=[common],
                           help="polar slices at selected frequencies")
    polar.add_argument("--frequencies", type=float, nargs="+",
                       default=argparse.SUPPRESS,
                       help="slice frequencies in Hz (default 300 2000 4000)")
    sim = sub.add_parser("simulate", parents=[common],
                         help="beamform a WAV file")
    sim.add_argument("--write-capture", action="store_true",
                     default=argparse.SUPPRESS,
                     help="also write the N-channel microphone capture")
    sub.add_parser("attenuation", parents=[common],
                   help="spectral attenuation of the beamformer output")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    values = {}
    given = vars(args)
    if "config" in given:
        values.update(read_config_file(given["config"]))
    for key, value in given.items():
        if key in _FIELD_TYPES:
            values[key] = tuple(value) if key == "frequencies" else value
    return ExperimentConfig(**values).validate()


def _grid(config: ExperimentConfig, kind: str):
    return compute_grid(config.array(kind), math.radians(config.steer_deg),
                        config.f_min, config.f_max, config.f_step,
                        math.radians(config.angle_step_deg), config.medium)


def _lobe_text(lobes) -> str:
    return " ".join(f"{math.degrees(lobe.angle):.1f}({lobe.magnitude:.3f})"
                    for lobe in lobes)


def cmd_beampattern(config: ExperimentConfig, out=None) -> list[Path]:
    out = out or sys.stdout
    out_dir = ensure_dir(config.out_dir)
    written = []
    for kind in config.kinds(("linear",)):
        grid = _grid(config, kind)
        csv_path = out_dir / f"beampattern_{kind}.csv"
        json_path = out_dir / f"beampattern_{kind}.json"
        write_grid_csv(csv_path, grid)
        write_grid_json(json_path, grid, {"config": config.echo(kind)})
        written += [csv_path, json_path]
        print(f"# {kind} array, steering {config.steer_deg:g} deg", file=out)
        for f in grid.frequencies:
            lobes = find_lobes(polar_slice(grid, f), 0.0)
            print(f"{fmt(f)} Hz: {len(lobes)} lobes  {_lobe_text(lobes)}",
                  file=out)
    return written


def cmd_polar(config: ExperimentConfig, frequencies=None,
              out=None) -> list[Path]:
    out = out or sys.stdout
    freqs = config.frequencies if frequencies is None else frequencies
    freqs = list(dict.fromkeys(float(f) for f in freqs))
    out_dir = ensure_dir(config.out_dir)
    written = []
    for kind in config.kinds(("linear", "circular")):
        grid = _grid(config, kind)
        slices = [polar_slice(grid, f) for f in freqs]
        for requested, polar in zip(freqs, slices):
            path = out_dir / f"polar_{kind}_{fmt(requested)}Hz.csv"
            write_slice_csv(path, polar)
            written.append(path)
            lobes = find_lobes(polar, 0.0)
            print(f"{kind} {fmt(polar.frequency)} Hz: {len(lobes)} lobes, "
                  f"top {_lobe_text(lobes[:1])}", file=out)
    return written


def _load_source(config: ExperimentConfig):
    if config.input is None:
        return synthetic_speech(sample_rate=config.sample_rate), \
            "synthetic-speech"
    return read_wav(config.input, config.sample_rate), str(config.input)


def _run(config: ExperimentConfig, kind: str, source):
    geom = config.array(kind)
    theta = math.radians(config.doa_deg)
    phi = math.radians(config.steer_deg)
    capture = propagate(source, geom, theta, config.medium,
                        config.interpolator)
    output = beamform(capture, phi, config.medium, config.interpolator)
    return capture, output


def cmd_simulate(config: ExperimentConfig, out=None) -> list[Path]:
    out = out or sys.stdout
    source, origin = _load_source(config)
    check_sample_rate(source.sample_rate, config.f_max)
    out_dir = ensure_dir(config.out_dir)
    written = []
    for kind in config.kinds(("linear",)):
        capture, output = _run(config, kind, source)
        wav_path = out_dir / f"simulate_{kind}.wav"
        write_wav(wav_path, output)
        written.append(wav_path)
        meta = {"source": origin, "latency_samples": output.latency,
                "latency_seconds": output.latency / output.sample_rate,
                "edge_samples": output.edge,
                "geometry": config.array(kind).to_dict(),
                "steer_deg": config.steer_deg, "doa_deg": config.doa_deg,
                "interpolator": config.interpolator.to_dict(),
                "config": config.echo(kind)}
        if config.write_capture:
            cap_path = out_dir / f"capture_{kind}.wav"
            write_capture_wav(cap_path, capture)
            written.append(cap_path)
            meta["capture_latency_samples"] = capture.latency
        json_path = out_dir / f"simulate_{kind}.json"
        write_json(json_path, meta)
        written.append(json_path)
        print(f"{kind}: wrote {wav_path} (latency {output.latency:g} "
              "samples)", file=out)
    return written


def cmd_attenuation(config: ExperimentConfig, out=None) -> list[Path]:
    out = out or sys.stdout
    source, origin = _load_source(config)
    out_dir = ensure_dir(config.out_dir)
    band = (config.f_min, config.f_max)
    written = []
    for kind in config.kinds(("linear", "circular")):
        _, output = _run(config, kind, source)
        spectrum = attenuation_spectrum(source, output, band)
        main = (max(MAIN_BAND_LOW, band[0]), band[1])
        low = (max(LOW_BAND[0], band[0]), min(LOW_BAND[1], band[1]))
        summary = {"band_average_db": band_average_attenuation(spectrum,
                                                               *main),
                   "band_average_range_hz": list(main),
                   "peak_db": spectrum.peak()}
        if low[0] < low[1]:
            summary["low_band_average_db"] = band_average_attenuation(
                spectrum, *low)
            summary["low_band_range_hz"] = list(low)
        csv_path = out_dir / f"attenuation_{kind}.csv"
        json_path = out_dir / f"attenuation_{kind}.json"
        write_attenuation_csv(csv_path, spectrum)
        write_attenuation_json(json_path, spectrum, {
            "source": origin, "summary": summary,
            "geometry": config.array(kind).to_dict(),
            "steer_deg": config.steer_deg, "doa_deg": config.doa_deg,
            "sound_speed": config.sound_speed,
            "interpolator": config.interpolator.to_dict(),
            "config": config.echo(kind)})
        written += [csv_path, json_path]
        line = (f"{kind}: mean {summary['band_average_db']:.2f} dB over "
                f"{fmt(main[0])}-{fmt(main[1])} Hz, peak "
                f"{summary['peak_db']:.2f} dB")
        if "low_band_average_db" in summary:
            line += (f", low band {fmt(low[0])}-{fmt(low[1])} Hz "
                     f"{summary['low_band_average_db']:.2f} dB")
        print(line, file=out)
    return written


COMMANDS = {
    "beampattern": cmd_beampattern,
    "polar": cmd_polar,
    "simulate": cmd_simulate,
    "attenuation": cmd_attenuation,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        COMMANDS[args.command](config)
    except FormatError as exc:
        print(f"beamsim: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"beamsim: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (BeamsimError, ValueError, TypeError) as exc:
        print(f"beamsim: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
