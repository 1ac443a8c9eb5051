"""Run the randomized invariant suite, then again with a deliberate defect.

The second run negates a single tunnelling rate before the stationary solve,
and the suite should flag it on the first trial.
"""

from qdot.validation import run_validation

print(run_validation(seed=0, trials=200).summary())
print()
print(run_validation(seed=0, trials=5, fault="rate_sign").summary().splitlines()[-1])
