"""CSV and JSON writers for beam patterns and attenuation spectra.

Numbers in CSV files use 9 significant digits, '.' as decimal separator
and '\\n' line endings, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .analysis import AttenuationSpectrum
from .beampattern import BeamPatternGrid, PolarSlice


def fmt(value) -> str:
    text = f"{float(value):.9g}"
    return "0" if text == "-0" else text


def _write_rows(path, header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path, payload: dict, compact: bool = False):
    layout = {"separators": (",", ":")} if compact else {"indent": 2}
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, **layout)
        fh.write("\n")


def write_grid_csv(path, grid: BeamPatternGrid):
    """Rows are arrival angles, columns frequencies, cells ``|H|`` in dB."""
    header = ["angle_deg"] + [fmt(f) for f in grid.frequencies]
    db = grid.magnitude_db
    rows = (np.concatenate(([math.degrees(a)], db[:, j]))
            for j, a in enumerate(grid.angles))
    _write_rows(path, header, rows)


def grid_payload(grid: BeamPatternGrid, extra: dict | None = None) -> dict:
    payload = {
        "geometry": grid.geometry.to_dict(),
        "steering_angle_rad": grid.steering_angle,
        "steering_angle_deg": math.degrees(grid.steering_angle),
        "sound_speed": grid.medium.sound_speed,
        "grid": dict(grid.spec),
        "frequencies_hz": grid.frequencies.tolist(),
        "angles_rad": grid.angles.tolist(),
        # values[i][j] = [re, im] of H at frequencies[i], angles[j]
        "values": np.stack([grid.values.real, grid.values.imag],
                           axis=-1).tolist(),
    }
    if extra:
        payload.update(extra)
    return payload


def write_grid_json(path, grid: BeamPatternGrid, extra: dict | None = None):
    write_json(path, grid_payload(grid, extra), compact=True)


def write_slice_csv(path, polar: PolarSlice):
    rows = zip(np.degrees(polar.angles), polar.magnitudes)
    _write_rows(path, ["angle_deg", "magnitude_linear"], rows)


def write_attenuation_csv(path, spectrum: AttenuationSpectrum):
    rows = zip(spectrum.frequencies, spectrum.source_db, spectrum.output_db,
               spectrum.attenuation_db)
    _write_rows(path, ["frequency_hz", "source_db", "output_db",
                       "attenuation_db"], rows)


def attenuation_payload(spectrum: AttenuationSpectrum,
                        extra: dict | None = None) -> dict:
    payload = {
        "band_hz": list(spectrum.band),
        "estimator": dict(spectrum.settings),
        "frequency_hz": spectrum.frequencies.tolist(),
        "source_db": spectrum.source_db.tolist(),
        "output_db": spectrum.output_db.tolist(),
        "attenuation_db": spectrum.attenuation_db.tolist(),
    }
    if extra:
        payload.update(extra)
    return payload


def write_attenuation_json(path, spectrum: AttenuationSpectrum,
                           extra: dict | None = None):
    write_json(path, attenuation_payload(spectrum, extra))


def ensure_dir(path) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path
