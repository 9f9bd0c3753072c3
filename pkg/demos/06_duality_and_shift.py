"""Two bookends: functionals realized as extended classes, and the shift
counterexample that shows why backward uniqueness is assumed.

Coefficient functionals on the fully reversible set may grow exponentially;
each is realized by an extended class whose pairings against basis states
reproduce its coefficients.  The nilpotent right shift, by contrast, has
non-dense ranges, distance-to-range sqrt(t), and a unit-time map equal to
zero, so its reversible set is just the origin.
"""

import numpy as np

import retroflow as rf

spectrum = rf.make_heat_spectrum(20)

print("== functionals ==")
for rate in (0.5, -0.1):
    F = rf.Functional.from_exp_law(spectrum, rate)
    z = rf.functional_to_extended(F)
    where = "an ambient state" if z.offset == 0.0 else f"a class at offset {z.offset:.3g}"
    print(f"\nlaw exp({rate} * lambda_n): supremal square-summability shift "
          f"{rf.representable_time(F)}")
    print(f"  realized as {where}; entry infimum {rf.entry_infimum(z):.3g}")
    worst = 0.0
    for mode in (1, 4, 16):
        got = rf.log_pairing(rf.SpectralState.basis(spectrum, mode), z)
        want = F.coeff(mode)
        worst = max(worst, abs(np.expm1(got.log_mag - want.log_mag)))
    print(f"  pairing reproduces coefficients up to mode 16, worst rel err {worst:.2e}")

print("\n== the shift counterexample ==")
ones = rf.constant_grid(1.0, 1000)
print("distance from the constant function to the time-t range is sqrt(t):")
for k in (1, 10, 100, 250):
    t = k / 1000
    print(f"  t = {t:5.3f}: distance {rf.distance_to_range(ones, t):.6f} "
          f"(sqrt(t) = {np.sqrt(t):.6f})")
print("the onset of non-density is therefore 0.")

report = rf.exclusion_onset(ones, 0.4)
print(f"\nthe ball of radius 0.4 first misses a range at t = {report.onset}"
      f" (distance {report.distance_at_onset:.4f}, one grid step earlier"
      f" {report.distance_before:.4f}): the infimum is attained.")

rng = np.random.default_rng(5)
g = rf.GridFunction(rng.normal(size=8))
print("\nunit-time shift of a random function is zero:",
      not np.any(rf.shift_evolve(g, 1.0).values))
print("so backward uniqueness fails here, and the fully reversible set")
print("collapses to the origin: this flow admits no useful extension.")
