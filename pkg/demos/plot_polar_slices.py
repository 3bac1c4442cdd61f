"""
Polar slices at 300, 2000 and 4000 Hz
=====================================

Single-frequency cuts through the beam pattern. At 300 Hz both arrays
are nearly omnidirectional; at higher frequencies the main lobe narrows.
"""

import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from beamsim import ArrayGeometry, compute_grid, find_lobes, polar_slice

arrays = {"linear": ArrayGeometry.linear(8, 0.06),
          "circular": ArrayGeometry.circular_from_spacing(8, 0.06)}
frequencies = (300, 2000, 4000)

fig, axes = plt.subplots(3, 2, subplot_kw={"projection": "polar"},
                         figsize=(7, 10))
for col, (name, geom) in enumerate(arrays.items()):
    grid = compute_grid(geom, math.pi / 2)
    for row, f in enumerate(frequencies):
        polar = polar_slice(grid, f)
        # -3 dB beam width around the steering direction
        above = np.degrees(polar.angles[polar.magnitudes >= 1 / math.sqrt(2)])
        main = above[np.abs(above - 90) < 90]
        lobes = find_lobes(polar, 0.0)
        # the linear array's 270 deg lobe is its mirror image, not a side lobe
        side = [lobe.magnitude for lobe in lobes[1:]
                if not (name == "linear"
                        and abs(math.degrees(lobe.angle) - 270) < 1)]
        side_db = f"{20 * math.log10(max(side)):6.1f} dB" if side else "  none"
        print(f"{name:8s} {f:4d} Hz: -3 dB width {main.max() - main.min():5.1f}"
              f" deg, {len(lobes):2d} lobes, strongest side lobe {side_db}")
        ax = axes[row, col]
        ax.plot(polar.angles, polar.magnitudes)
        ax.set_title(f"{name}, {f} Hz", fontsize=9)
        ax.set_rticks([0.5, 1.0])
fig.tight_layout()
fig.savefig("polar_slices.png", dpi=120)
print("saved polar_slices.png")
