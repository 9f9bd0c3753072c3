"""Forward decay and backward blow-up, kept finite by log-domain storage.

Mode n of the heat flow decays like exp(-n^2 pi^2 t); run backward, it grows
by the same factor.  Mode 15 run backward one time unit already needs
exp(225 pi^2) ~ 10^964, past anything a float can hold, so coefficients live
as sign + log magnitude and never overflow.
"""

import math

import retroflow as rf

spectrum = rf.make_heat_spectrum(32)
state = rf.SpectralState.from_values(spectrum, [1.0 / n for n in range(1, 33)])

print("initial norm:", rf.norm(state))

forward = rf.evolve(state, 0.5)
print("after t = 0.5 the norm collapsed to:", rf.norm(forward))
print("mode 1 coefficient:", forward.coeff(1).to_linear())
print("mode 32 coefficient is sub-float but exactly represented:")
print("   sign", forward.coeff(32).sign, " log magnitude", forward.coeff(32).log_mag)

backward = rf.backward_evolve(state, 1.0)
print("\none backward unit amplifies mode 32 by exp(%.0f)" % rf.amplification_log(state, 1.0))
print("backward mode-32 log magnitude:", backward.log_mags[-1])
print("linear value would overflow:", backward.coeff(32).to_linear())

roundtrip = rf.evolve(backward, 1.0)
print("\nforward-after-backward recovers the state; relative gap:",
      rf.relative_gap(roundtrip, state))

# norms, inner products and linear combinations all run in the log domain
e1 = rf.SpectralState.basis(spectrum, 1)
e2 = rf.SpectralState.basis(spectrum, 2)
combo = rf.add(rf.scale(e1, 3.0), rf.scale(e2, 4.0))
print("\n|3 e1 + 4 e2| =", rf.norm(combo))
print("<3 e1 + 4 e2, 4 e1 - 3 e2> =",
      rf.inner_product(combo, rf.add(rf.scale(e1, 4.0), rf.scale(e2, -3.0))))
print("exact cancellation is detected:",
      rf.subtract(combo, combo).is_zero())

amplification = math.exp(min(rf.amplification_log(state, 0.1), 700.0))
print("\na tenth of a backward unit still amplifies mode 32 by %.3g" % amplification)
