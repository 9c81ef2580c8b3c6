"""Classical baseline on flat phase space R^2n.

Observables are real functions of (q, p); the Poisson bracket is hard-coded
in canonical (Darboux) coordinates and evaluated with central differences
unless an analytic gradient is supplied. States with finite support model
pure points and mixtures; Hamiltonian flow uses leapfrog for separable
H = T(p) + V(q).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import EvaluationDomainError, InvalidInputError

__all__ = [
    "PhasePoint",
    "ClassicalObservable",
    "ClassicalState",
    "config_observable",
    "momentum_observable",
    "poisson_bracket",
    "classical_expectation",
    "is_dispersion_free",
    "hamilton_flow",
]


@dataclass(frozen=True)
class PhasePoint:
    """A point (q, p) of phase space."""

    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q = np.atleast_1d(np.asarray(self.q, dtype=float))
        p = np.atleast_1d(np.asarray(self.p, dtype=float))
        if q.shape != p.shape or q.ndim != 1:
            raise InvalidInputError("q and p must be 1D arrays of equal length")
        if not (np.all(np.isfinite(q)) and np.all(np.isfinite(p))):
            raise InvalidInputError("phase point must be finite")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return self.q.size


@dataclass(frozen=True)
class ClassicalObservable:
    """A real function of a PhasePoint, optionally with analytic gradient.

    gradient(z) must return (dA/dq, dA/dp) as arrays of length z.n.
    """

    evaluator: Callable[[PhasePoint], float]
    label: str = ""
    gradient: Optional[Callable[[PhasePoint], tuple]] = None

    def __call__(self, z: PhasePoint) -> float:
        val = float(self.evaluator(z))
        if not np.isfinite(val):
            raise EvaluationDomainError(f"observable {self.label!r} non-finite at z")
        return val


def config_observable(f: Callable, label: str = "Q(f)") -> ClassicalObservable:
    """Observable depending on position only: (q, p) -> f(q)."""
    return ClassicalObservable(lambda z: float(f(z.q)), label=label)


def momentum_observable(v: Callable, label: str = "P(v)") -> ClassicalObservable:
    """Observable p . v(q) for a vector field v on configuration space."""
    return ClassicalObservable(
        lambda z: float(np.dot(z.p, np.asarray(v(z.q), dtype=float))), label=label
    )


def _default_step(z: PhasePoint) -> float:
    scale = max(1.0, float(np.max(np.abs(z.q))), float(np.max(np.abs(z.p))))
    return 1e-5 * scale


def _gradient(a: ClassicalObservable, z: PhasePoint, h: float):
    """(dA/dq, dA/dp) at z, analytic when available, else central differences."""
    if a.gradient is not None:
        gq, gp = a.gradient(z)
        return np.asarray(gq, dtype=float), np.asarray(gp, dtype=float)
    n = z.n
    gq = np.empty(n)
    gp = np.empty(n)
    for i in range(n):
        dq = np.zeros(n)
        dq[i] = h
        gq[i] = (a(PhasePoint(z.q + dq, z.p)) - a(PhasePoint(z.q - dq, z.p))) / (2 * h)
        gp[i] = (a(PhasePoint(z.q, z.p + dq)) - a(PhasePoint(z.q, z.p - dq))) / (2 * h)
    return gq, gp


def poisson_bracket(
    a: ClassicalObservable,
    b: ClassicalObservable,
    z: PhasePoint,
    h: float | None = None,
) -> float:
    """{A, B} = sum_i dA/dq_i dB/dp_i - dA/dp_i dB/dq_i at z."""
    if h is None:
        h = _default_step(z)
    if h <= 0:
        raise InvalidInputError("finite-difference step must be positive")
    aq, ap = _gradient(a, z, h)
    bq, bp = _gradient(b, z, h)
    return float(np.dot(aq, bp) - np.dot(ap, bq))


@dataclass(frozen=True)
class ClassicalState:
    """Finitely supported probability measure on phase space."""

    atoms: tuple  # of (PhasePoint, weight)

    def __post_init__(self):
        atoms = tuple(self.atoms)
        if not atoms:
            raise InvalidInputError("state needs at least one atom")
        w = np.array([wt for _, wt in atoms], dtype=float)
        if np.any(w < 0):
            raise InvalidInputError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > 1e-12:
            raise InvalidInputError(f"weights must sum to 1, got {w.sum()}")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def pure(cls, z: PhasePoint) -> "ClassicalState":
        return cls(atoms=((z, 1.0),))


def classical_expectation(omega: ClassicalState, a: ClassicalObservable) -> float:
    """sum_i w_i A(z_i)."""
    return float(sum(w * a(z) for z, w in omega.atoms))


def is_dispersion_free(
    omega: ClassicalState, observables, tol: float = 1e-10
) -> bool:
    """True iff omega(A_i A_j) = omega(A_i) omega(A_j) for all pairs."""
    obs = list(observables)
    means = [classical_expectation(omega, a) for a in obs]
    for i, a in enumerate(obs):
        for j, b in enumerate(obs):
            prod = ClassicalObservable(lambda z, a=a, b=b: a(z) * b(z))
            if abs(classical_expectation(omega, prod) - means[i] * means[j]) >= tol:
                return False
    return True


def hamilton_flow(
    h_obs: ClassicalObservable,
    z0: PhasePoint,
    dt: float,
    steps: int,
    fd_step: float | None = None,
):
    """Leapfrog (Stoermer-Verlet) trajectory for separable H = T(p) + V(q).

    Returns (times, trajectory) with trajectory a list of steps+1
    PhasePoints. Separability is what makes the kick-drift-kick splitting
    symplectic; gradients come from h_obs.gradient when present.
    """
    if dt <= 0:
        raise InvalidInputError("dt must be positive")
    if steps < 0:
        raise InvalidInputError("steps must be nonnegative")

    def grads(z: PhasePoint):
        h = fd_step if fd_step is not None else _default_step(z)
        gq, gp = _gradient(h_obs, z, h)
        if not (np.all(np.isfinite(gq)) and np.all(np.isfinite(gp))):
            raise EvaluationDomainError("non-finite force during flow")
        return gq, gp

    traj = [z0]
    q, p = z0.q.copy(), z0.p.copy()
    for step in range(steps):
        try:
            gq, _ = grads(PhasePoint(q, p))
            p_half = p - 0.5 * dt * gq
            _, gp = grads(PhasePoint(q, p_half))
            q = q + dt * gp
            gq, _ = grads(PhasePoint(q, p_half))
            p = p_half - 0.5 * dt * gq
        except EvaluationDomainError as exc:
            raise EvaluationDomainError(f"flow failed at step {step}: {exc}") from exc
        traj.append(PhasePoint(q.copy(), p.copy()))
    times = dt * np.arange(steps + 1)
    return times, traj
