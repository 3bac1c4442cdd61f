"""
Beam patterns of linear and circular 8-microphone arrays
=========================================================

Both arrays use 6 cm between neighbouring microphones and are steered to
90 degrees. The linear array answers with unit gain at 90 and at 270
degrees; the circular array keeps a single unit-gain direction.
"""

import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from beamsim import ArrayGeometry, compute_grid, find_lobes, polar_slice

linear = ArrayGeometry.linear(8, 0.06)
circular = ArrayGeometry.circular_from_spacing(8, 0.06)
print(f"circular radius for 6 cm spacing: {circular.radius * 100:.3f} cm")

grids = {name: compute_grid(geom, math.pi / 2)
         for name, geom in [("linear", linear), ("circular", circular)]}

###############################################################################
# Unit-gain directions per array, counted on every frequency row.
for name, grid in grids.items():
    unity = np.abs(grid.magnitude - 1.0) < 1e-9
    directions = sorted({round(math.degrees(a)) for a in
                         grid.angles[unity.any(axis=0)]})
    print(f"{name}: unit gain at {directions} deg")

###############################################################################
# Lobe count against frequency. Grating lobes appear in the linear array
# once the 6 cm spacing exceeds half a wavelength (about 2.9 kHz).
for f in (500, 1000, 2000, 3000, 4000):
    counts = {name: len(find_lobes(polar_slice(grid, f)))
              for name, grid in grids.items()}
    print(f"{f:5d} Hz  lobes: linear {counts['linear']:2d}, "
          f"circular {counts['circular']:2d}")

###############################################################################
# Frequency x angle maps in dB.
fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=True)
for ax, (name, grid) in zip(axes, grids.items()):
    mesh = ax.pcolormesh(np.degrees(grid.angles), grid.frequencies,
                         np.clip(grid.magnitude_db, -40, 0), shading="auto")
    ax.set_title(f"{name} array")
    ax.set_xlabel("arrival angle [deg]")
axes[0].set_ylabel("frequency [Hz]")
fig.colorbar(mesh, ax=axes, label="|H| [dB]")
fig.savefig("beam_patterns.png", dpi=120)
print("saved beam_patterns.png")
