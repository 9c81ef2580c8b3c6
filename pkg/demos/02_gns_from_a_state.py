"""
From a state to a Hilbert space
===============================

The GNS construction turns (algebra, state) into (Hilbert space,
representation, cyclic vector). A pure state on the 2x2 matrices gives a
2-dimensional irreducible representation; the tracial state gives a
4-dimensional reducible one.
"""

import numpy as np

from cstarmech import (
    AbstractState,
    AlgebraElement,
    DensityState,
    generate_algebra,
    gns_construct,
    is_irreducible,
)

sx = AlgebraElement([[0, 1], [1, 0]])
sy = AlgebraElement([[0, -1j], [1j, 0]])
basis = generate_algebra([sx, sy])
print("algebra dimension:", len(basis))  # 4 = all of M2

for label, density in [
    ("pure |0><0|", DensityState(np.diag([1.0, 0.0]))),
    ("tracial I/2", DensityState.maximally_mixed(2)),
]:
    omega = AbstractState.from_density(basis, density)
    res = gns_construct(omega)
    psi = res.cyclic_vector
    recon = max(
        abs(np.vdot(psi, r @ psi) - v) for r, v in zip(res.rep, omega.values)
    )
    print(f"{label}: dim H = {res.hilbert_dim}, "
          f"irreducible = {is_irreducible(res.rep)}, "
          f"reconstruction error = {recon:.1e}")
