"""
The classical side of the same coin
===================================

Poisson brackets replace commutators, pure phase-space points are
dispersion free (no uncertainty floor), and leapfrog integration follows
Hamilton's equations with bounded energy error.
"""

import numpy as np

from cstarmech import (
    ClassicalObservable,
    ClassicalState,
    PhasePoint,
    hamilton_flow,
    is_dispersion_free,
    momentum_observable,
    poisson_bracket,
)

z = PhasePoint([0.3, -1.2, 0.7], [0.5, 0.1, -0.4])

x = ClassicalObservable(lambda z: z.q[0], "X")
px = ClassicalObservable(lambda z: z.p[0], "P_X")
print("{X, P_X} =", poisson_bracket(x, px, z))

lx = momentum_observable(lambda q: np.array([0.0, -q[2], q[1]]), "L_X")
ly = momentum_observable(lambda q: np.array([q[2], 0.0, -q[0]]), "L_Y")
lz = momentum_observable(lambda q: np.array([-q[1], q[0], 0.0]), "L_Z")
print("{L_X, L_Y} - L_Z =", poisson_bracket(lx, ly, z) - lz(z))

# a single phase point has no dispersion in anything
omega = ClassicalState.pure(z)
print("dispersion free:", is_dispersion_free(omega, [x, px, lx]))

# harmonic orbit: q(t) = cos t, energy pinned to machine-level wobble
h = ClassicalObservable(
    lambda z: 0.5 * float(z.p @ z.p + z.q @ z.q),
    "H",
    gradient=lambda z: (z.q, z.p),
)
times, traj = hamilton_flow(
    h, PhasePoint(np.array([1.0]), np.array([0.0])), dt=1e-2, steps=1000
)
energies = np.array([h(pt) for pt in traj])
print(f"q({times[-1]:.1f}) = {traj[-1].q[0]:.6f}, cos = {np.cos(times[-1]):.6f}")
print("energy drift:", np.abs(energies - energies[0]).max())
