"""Charging energies from a capacitance network.

The symmetric closed form and the full electrostatic solution give the same
lead-resolved offsets whenever the coupling U stays below kappa / 4. Above
that bound no physical capacitance exists and the closed form is continued
algebraically.
"""

from qdot.electrostatics import PaperSymmetric, charging_energies, lead_offsets

kappa = 20.0
for U in (0.0, 2.0, 4.0, 4.9):
    model = PaperSymmetric(kappa, U)
    net = model.to_capacitive().network
    closed = lead_offsets(model, dV=1.0)
    full = lead_offsets(model.to_capacitive(), dV=1.0)
    print(f"U={U:4.1f}  C={net.C:.5f}  max offset difference={abs(closed - full).max():.1e}")

continued = PaperSymmetric(kappa, 40.0)
print("U=40 feasible:", continued.feasible)
print("charging energies:", charging_energies(continued))
