"""Electrons flowing against both the bias and the temperature gradient.

Hold the left reservoir hotter by dT = 5 and raise its chemical potential
by dV = 1. Both forces push electrons to the right, yet once the dots are
coupled strongly enough the net particle current runs to the left while
heat still flows from hot to cold.
"""

import numpy as np

from qdot import DeviceSpec, OperatingPoint, PaperSymmetric, evaluate

T, DELTA_EPS, KAPPA = 7.5, 3.0, 20.0

print(f"{'U':>5} {'J_rho':>11} {'J_u':>10}")
for U in np.arange(0, 81, 10.0):
    device = DeviceSpec.from_level_difference(DELTA_EPS, 1.0, PaperSymmetric(KAPPA, U))
    r = evaluate(device, OperatingPoint(T, dT=5.0, dV=1.0))
    note = "  <- inverse" if r.J_rho < 0 else ""
    print(f"{U:5.0f} {r.J_rho:11.4e} {r.J_u:10.4f}{note}")
