"""How far backward does a trajectory extend?  Tail envelopes decide.

A state carries finitely many explicit coefficients plus an analytic
envelope for the rest.  The envelope settles membership in the three
regimes: zero tails go back forever, exponential envelopes stop at their
rate (an open endpoint), power envelopes admit no backward step at all.
"""

import math

import retroflow as rf
from retroflow.errors import HorizonExceededError

spectrum = rf.make_heat_spectrum(6)

fully = rf.SpectralState.from_values(spectrum, [1.0, 0.5, 0.2, 0.1, 0.05, 0.01])
partial = rf.SpectralState.zeros(spectrum, rf.ExpTail(rate=0.3, coeff=1.0))
never = rf.SpectralState.zeros(spectrum, rf.PowerTail(power=1.0, coeff=1.0))

for name, state in [("zero tail", fully), ("exp tail (rate 0.3)", partial),
                    ("power tail", never)]:
    c = rf.classify(state)
    print(f"{name:22s} -> class {c.label.value:2s}  horizon {c.horizon.value}"
          f"{' (open)' if c.horizon.open_at_endpoint else ''}")
    print(f"{'':22s}    {c.certificate}")

# the exponential horizon is sharp: brute-force partial sums agree
print("\nbrute-force check around the rate-0.3 horizon:")
for t in (0.29, 0.31):
    total, blown = 0.0, False
    for n in range(1, 2000):
        total += math.exp(min(2 * (t - 0.3) * n * n * math.pi**2, 700.0))
        if total > 1e12:
            blown = True
            break
    print(f"  t = {t}: partial sums {'exceed 1e12' if blown else f'settle at {total:.6f}'}")

print("\nbackward steps respect the horizon:")
print("  0.2 units inside the rate-0.3 horizon:",
      rf.classify(rf.backward_evolve(partial, 0.2)).label.value)
try:
    rf.backward_evolve(partial, 0.3)
except HorizonExceededError as err:
    print("  0.3 units hits the open endpoint:", err)

# fully reversible states carry the whole integer-time seminorm family
x = rf.SpectralState.from_values(spectrum, [1e-3, 1e-5, 0.0, 0.0, 0.0, 0.0])
print("\nseminorm family of a fully reversible state (log values):")
print("  ", [round(v, 3) for v in rf.log_frechet_seminorms(x, 4)])
print("separation: every seminorm of a nonzero state is positive.")
