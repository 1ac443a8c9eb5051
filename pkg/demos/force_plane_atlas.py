"""Map where each inverse current occurs in the (dT, dV) plane.

A coarse 81 x 81 grid at U = 40 is enough to see the shape: the particle
inversion covers a wide band of temperature differences while the energy
inversion hugs the dV axis, and the two never share a point.
"""

from qdot.presets import figure_config
from qdot.sweep import region_disjointness, sweep, zero_contour

config = figure_config("fig6", {"dT_steps": "81", "dV_steps": "81"}).config
result = sweep(config.to_grid())
regions = region_disjointness(result)

print("inverse particle points:", regions.particle_count, "bbox (dT, dV):", regions.particle_bbox)
print("inverse energy points:  ", regions.energy_count, "bbox (dT, dV):", regions.energy_bbox)
print("min entropy production: ", result.field("J_S").min())

for line in zero_contour(result, "J_rho"):
    print(f"J_rho = 0 polyline with {len(line)} vertices from {line[0].round(3)} to {line[-1].round(3)}")
