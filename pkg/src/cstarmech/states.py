"""States as density matrices: positive, unit-trace functionals A -> tr(bA)."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraElement, classify, commutator, operator_norm
from .errors import (
    DimensionMismatchError,
    InvalidInputError,
    InvalidStateError,
    NonObservableError,
)

__all__ = [
    "DensityState",
    "UncertaintyReport",
    "expectation",
    "from_vector",
    "is_pure",
    "mix",
    "variance",
    "uncertainty_check",
    "has_definite_value",
]

_STATE_TOL = 1e-12


@dataclass(frozen=True)
class DensityState:
    """Density matrix b: self-adjoint, positive semidefinite, trace one."""

    b: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.b, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidStateError(f"density matrix must be square, got {m.shape}")
        scale = max(float(np.linalg.norm(m, 2)), 1.0)
        if np.linalg.norm(m - m.conj().T, 2) > _STATE_TOL * scale:
            raise InvalidStateError("density matrix is not self-adjoint")
        if abs(np.trace(m) - 1.0) > _STATE_TOL:
            raise InvalidStateError(f"trace must be 1, got {np.trace(m)}")
        if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -_STATE_TOL:
            raise InvalidStateError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "b", m)
        m.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.b.shape[0]

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityState":
        return cls(np.eye(dim) / dim)


def _check_dims(omega: DensityState, a: AlgebraElement):
    if omega.dim != a.dim:
        raise DimensionMismatchError(f"state dim {omega.dim} vs element dim {a.dim}")


def expectation(omega: DensityState, a: AlgebraElement) -> complex:
    """tr(b A); real (up to round-off) when A is self-adjoint."""
    _check_dims(omega, a)
    return complex(np.trace(omega.b @ a.entries))


def from_vector(psi) -> DensityState:
    """Pure state b = |psi><psi|; non-unit input is normalized with a warning."""
    v = np.asarray(psi, dtype=complex).ravel()
    nrm = np.linalg.norm(v)
    if nrm == 0.0 or not np.isfinite(nrm):
        raise InvalidInputError("cannot build a state from the zero vector")
    if abs(nrm - 1.0) > 1e-10:
        warnings.warn(f"state vector norm {nrm:.3e} != 1; normalizing", stacklevel=2)
        v = v / nrm
    else:
        v = v / nrm  # exact unit trace
    return DensityState(np.outer(v, v.conj()))


def is_pure(omega: DensityState, tol: float = 1e-10) -> bool:
    """True iff b is (numerically) a rank-one projection: tr(b^2) > 1 - tol."""
    b = omega.b
    if operator_norm(AlgebraElement(b @ b - b)) >= tol:
        return False
    return float(np.trace(b @ b).real) > 1.0 - tol


def mix(states, weights) -> DensityState:
    """Convex combination sum_i p_i b_i."""
    states = list(states)
    w = np.asarray(weights, dtype=float)
    if len(states) != w.size or len(states) == 0:
        raise InvalidInputError("need one weight per state")
    if np.any(w < -_STATE_TOL):
        raise InvalidInputError("weights must be nonnegative")
    if abs(w.sum() - 1.0) > _STATE_TOL:
        raise InvalidInputError(f"weights must sum to 1, got {w.sum()}")
    dim = states[0].dim
    if any(s.dim != dim for s in states):
        raise DimensionMismatchError("all states must share one dimension")
    return DensityState(sum(p * s.b for p, s in zip(w, states)))


def _require_observable(a: AlgebraElement, tol: float = 1e-10):
    if not classify(a, tol).selfadjoint:
        raise NonObservableError("observable must be self-adjoint")


def variance(omega: DensityState, a: AlgebraElement) -> float:
    """omega(A^2) - omega(A)^2 for self-adjoint A, clipped at zero."""
    _require_observable(a)
    _check_dims(omega, a)
    mean = expectation(omega, a).real
    second = expectation(omega, a @ a).real
    var = second - mean * mean
    if var < 0.0:
        if var < -_STATE_TOL * max(second, 1.0):
            raise InvalidStateError(f"variance {var} below round-off floor")
        var = 0.0
    return var


@dataclass(frozen=True)
class UncertaintyReport:
    lhs: float
    rhs: float
    holds: bool


def uncertainty_check(
    omega: DensityState, a1: AlgebraElement, a2: AlgebraElement
) -> UncertaintyReport:
    """Check Delta(A1) Delta(A2) >= |omega([A1, A2])| / 2."""
    lhs = np.sqrt(variance(omega, a1)) * np.sqrt(variance(omega, a2))
    rhs = abs(expectation(omega, commutator(a1, a2))) / 2.0
    return UncertaintyReport(lhs=float(lhs), rhs=float(rhs), holds=bool(lhs >= rhs - 1e-10))


def has_definite_value(omega: DensityState, a: AlgebraElement, tol: float = 1e-10) -> bool:
    """True iff A is dispersion-free in omega."""
    return variance(omega, a) < tol
