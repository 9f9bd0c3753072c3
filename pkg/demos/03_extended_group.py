"""The extended space: where the one-sided flow becomes a group.

States whose trajectories stop in the ambient space keep going as
offset-tagged classes: the pair (offset, representative) says "this point
flows into the ambient space after `offset` time units, arriving at the
representative".  On these classes the flow is invertible for every real
time, and each backward depth carries its own norm.
"""

import numpy as np

import retroflow as rf

spectrum = rf.make_heat_spectrum(16)
rng = np.random.default_rng(0)

# an irreversible state leaves the ambient space immediately...
z = rf.SpectralState.zeros(spectrum, rf.PowerTail(1.0, 1.0))
past = rf.group_evolve(rf.lift(z), -0.5)
print("half a unit into the past:", f"offset {past.offset}, representative unchanged")

# ...and comes back
again = rf.group_evolve(past, 0.5)
print("half a unit forward again: offset", again.offset,
      "equal to the start:", rf.states_equal(again, rf.lift(z)))

# composition law on random signed times
x = rf.ExtendedState(0.8, rf.SpectralState.from_values(spectrum, rng.normal(size=16)))
s, t = 1.3, -1.9
lhs = rf.group_evolve(rf.group_evolve(x, s), t)
rhs = rf.group_evolve(x, s + t)
print("\ngroup law at (s, t) = (1.3, -1.9):", rf.states_equal(lhs, rhs, 1e-9))

# on embedded states the group action is the flow, bitwise
h_state = rf.SpectralState.from_values(spectrum, rng.normal(size=16))
print("restriction to the ambient space is exact:",
      rf.group_evolve(rf.lift(h_state), 1.0) == rf.lift(rf.evolve(h_state, 1.0)))

# each backward depth has a norm; classes are normed where they reach
y = rf.ExtendedState(0.5, rf.SpectralState.from_values(spectrum, rng.normal(size=16)))
for depth in (0.5, 1.0, 2.0):
    print(f"norm at backward depth {depth}:", rf.extended_norm(y, depth))
print("entry infimum of that class:", rf.entry_infimum(y))

# the diagonal generator acts modewise and keeps the offset
gen = rf.apply_generator(rf.lift(rf.SpectralState.basis(spectrum, 1)))
print("\ngenerator on the first basis vector:", gen.rep.coeff(1).to_linear())

# canonical form absorbs offsets into the representative where legal
w = rf.ExtendedState(2.0, rf.evolve(rf.SpectralState.basis(spectrum, 1), 3.0))
c = rf.canonicalize(w)
print("canonical form of (2, flow-by-3 of e1): offset", c.offset,
      "- one net forward unit remains")
