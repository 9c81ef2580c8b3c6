"""
Time evolution and bound-state spectra
======================================

A displaced Gaussian in a harmonic well swings like a classical particle
and returns to itself after one period. The same Hamiltonian matrix hands
over the textbook spectrum {n + 1/2}, and the radial hydrogen operator
reproduces the Balmer-style levels -1/(2n^2).
"""

import numpy as np

from cstarmech import (
    EvolutionConfig,
    Grid1D,
    RadialGrid,
    WaveFunction,
    build_hamiltonian,
    eigen_spectrum,
    ehrenfest_check,
    make_potential,
    radial_hydrogen_spectrum,
    run_trajectory,
)

grid = Grid1D(N=512, L=20.0)
psi0 = WaveFunction.gaussian(grid, x0=1.0, sigma=1 / np.sqrt(2))
cfg = EvolutionConfig(
    dt=1e-3, t_final=2 * np.pi, potential=make_potential("harmonic")
)
final, traj = run_trajectory(psi0, cfg)

print("norm drift      :", np.abs(traj.norm - 1.0).max())
print("energy drift    :", np.abs(traj.energy - traj.energy[0]).max())
print("<X> at t=pi     :", traj.x_mean[len(traj.times) // 2], "(expect -1)")
overlap = abs(np.vdot(psi0.samples, final.samples) * grid.dx)
print("return overlap  :", overlap, "(expect 1 after one period)")

# mean values follow the classical equations of motion
rep = ehrenfest_check(psi0, EvolutionConfig(
    dt=1e-3, t_final=0.5, potential=make_potential("harmonic")))
print(f"d<X>/dt - <P> gap: {rep.dX_dt_gap:.1e};  "
      f"d<P>/dt {'+' if rep.force_sign < 0 else '-'} <V'(X)> gap: {rep.dP_dt_gap:.1e}")

# spectra
h = build_hamiltonian(Grid1D(N=1024, L=20.0), make_potential("harmonic"))
print("harmonic levels :", np.round(eigen_spectrum(h, 5), 6))

levels = radial_hydrogen_spectrum(RadialGrid(r_max=200.0, M=4000), 3)
bohr = [-1 / (2 * n**2) for n in (1, 2, 3)]
print("hydrogen levels :", np.round(levels, 6))
print("exact -1/(2n^2) :", np.round(bohr, 6))
