"""
States, observables, and the uncertainty bound
==============================================

A short tour: build observables as matrices, evaluate states on them, and
watch the product of standard deviations stay above |omega([A1, A2])| / 2.
"""

import numpy as np

from cstarmech import (
    AlgebraElement,
    DensityState,
    commutator,
    expectation,
    from_vector,
    uncertainty_check,
    variance,
)

sx = AlgebraElement([[0, 1], [1, 0]])
sy = AlgebraElement([[0, -1j], [1j, 0]])
sz = AlgebraElement([[1, 0], [0, -1]])

# a spin pointing up along z
up = from_vector([1.0, 0.0])
print("omega(sz) =", expectation(up, sz))
print("Var(sz)   =", variance(up, sz))

# sx and sy do not commute; the state saturates the bound
rep = uncertainty_check(up, sx, sy)
print(f"dA1 dA2 = {rep.lhs:.6f} >= {rep.rhs:.6f} = |omega([A1,A2])|/2")
assert rep.holds

# mixtures lose purity but stay above the bound
mixed = DensityState(np.diag([0.8, 0.2]))
rep = uncertainty_check(mixed, sx, sy)
print(f"mixed:   {rep.lhs:.6f} >= {rep.rhs:.6f}")

# the bound vanishes for commuting observables
print("[sz, sz^2] norm:", np.linalg.norm(commutator(sz, sz @ sz).entries))
rep = uncertainty_check(mixed, sz, sz @ sz)
print(f"commuting pair rhs = {rep.rhs:.1e}")
