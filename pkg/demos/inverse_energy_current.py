"""Heat flowing into the hotter reservoir at small temperature difference.

With a large bias dV = 3 and a slightly warmer left lead (dT = 0.2) the
heat deposited in the right reservoir turns negative once the inter-dot
coupling exceeds roughly U = 30. The entropy balance stays positive: the
negative part carried by the heat current is outweighed by the bias
dissipation.
"""

import numpy as np

from qdot import DeviceSpec, OperatingPoint, PaperSymmetric, evaluate

print(f"{'U':>5} {'J_u':>11} {'J_S_r':>11} {'J_S_f':>10} {'J_S':>10}")
for U in np.arange(0, 101, 10.0):
    device = DeviceSpec.from_level_difference(3.0, 1.0, PaperSymmetric(20.0, U))
    r = evaluate(device, OperatingPoint(7.5, dT=0.2, dV=3.0))
    print(f"{U:5.0f} {r.J_u:11.4e} {r.J_S_r:11.4e} {r.J_S_f:10.4e} {r.J_S:10.4e}")
