"""
Weyl pairs and why [P, X] = -iI cannot hold in finite dimensions
================================================================

The exponentiated commutation relation U V = zeta V U lives happily in any
dimension; its infinitesimal version does not. On a grid the commutator of
the position and momentum matrices has trace zero, so it only *looks* like
a multiple of the identity on wave packets that stay away from the
periodic boundary.
"""

import numpy as np

from cstarmech import (
    Grid1D,
    clock_shift,
    grid_weyl_ops,
    heisenberg_obstruction_report,
)

# exact discrete relation at any n
pair = clock_shift(8)
resid = np.abs(pair.U @ pair.V - pair.zeta * pair.V @ pair.U).max()
print(f"clock-shift residual at n=8: {resid:.1e}")

# same story on a 1D periodic grid
grid = Grid1D(N=256, L=20.0)
alpha, beta = 2 * np.pi / grid.L, grid.dx
u, v = grid_weyl_ops(grid, alpha, beta)
phase = np.exp(-1j * alpha * beta)
print("grid relation residual:",
      np.linalg.norm(u @ v - phase * v @ u, 2))

# ... but the infinitesimal relation is obstructed
rep = heisenberg_obstruction_report(grid)
print(f"tr [P, X]           = {rep.trace_of_commutator:.1e}  (forced to 0)")
print(f"interior deviation  = {rep.interior_deviation:.1e}  (looks like {rep.sign}iI)")
print(f"boundary deviation  = {rep.boundary_deviation:.1e}")
print(f"full-matrix norm of C - iI: {rep.full_matrix_deviation:.1f}")
for n, floor, emp in rep.lower_bounds[:4]:
    print(f"  ||[P, X^{n}]|| / (2||X^{n-1}||) = {emp:8.2f} >= n/2 = {floor}")
print(f"||X|| ||P|| = {rep.norm_product:.1f}: the bound grows without limit,")
print("so no pair of bounded operators satisfies the relation exactly.")
