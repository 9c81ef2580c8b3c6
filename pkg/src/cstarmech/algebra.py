"""Finite-dimensional matrix *-algebras.

Elements are square complex matrices; the involution is the conjugate
transpose and the norm is the operator (largest singular value) norm.
Self-adjoint elements play the role of observables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError, NumericalError

__all__ = [
    "AlgebraElement",
    "AlgebraBasis",
    "ElementFlags",
    "adjoint",
    "operator_norm",
    "commutator",
    "classify",
    "generate_algebra",
    "is_commutative",
]

DEFAULT_TOL = 1e-10


def _as_matrix(entries) -> np.ndarray:
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("matrix entries must be finite")
    return m


@dataclass(frozen=True)
class AlgebraElement:
    """A square complex matrix regarded as an element of a *-algebra.

    Instances are immutable; arithmetic returns new elements.
    """

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _as_matrix(self.entries))
        self.entries.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "AlgebraElement":
        return cls(np.eye(dim))

    def _check_dim(self, other: "AlgebraElement"):
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )

    def __add__(self, other):
        self._check_dim(other)
        return AlgebraElement(self.entries + other.entries)

    def __sub__(self, other):
        self._check_dim(other)
        return AlgebraElement(self.entries - other.entries)

    def __mul__(self, scalar):
        return AlgebraElement(self.entries * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return AlgebraElement(-self.entries)

    def __matmul__(self, other):
        self._check_dim(other)
        return AlgebraElement(self.entries @ other.entries)


def adjoint(a: AlgebraElement) -> AlgebraElement:
    """Conjugate transpose; an exact involution."""
    return AlgebraElement(a.entries.conj().T)


def operator_norm(a) -> float:
    """Largest singular value of the matrix (the C* norm)."""
    m = a.entries if isinstance(a, AlgebraElement) else _as_matrix(a)
    try:
        return float(np.linalg.norm(m, 2))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise NumericalError(f"singular value computation failed: {exc}") from exc


def commutator(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """AB - BA."""
    a._check_dim(b)
    return AlgebraElement(a.entries @ b.entries - b.entries @ a.entries)


@dataclass(frozen=True)
class ElementFlags:
    selfadjoint: bool
    normal: bool
    unitary: bool
    positive: bool


def classify(a: AlgebraElement, tol: float = DEFAULT_TOL) -> ElementFlags:
    """Test the defining identities of self-adjoint / normal / unitary /
    positive elements, each within ``tol`` in operator norm."""
    if tol <= 0:
        raise InvalidInputError("tol must be positive")
    m = a.entries
    scale = max(operator_norm(a), 1.0)
    sa = operator_norm(AlgebraElement(m - m.conj().T)) <= tol * scale
    nrm = operator_norm(AlgebraElement(m @ m.conj().T - m.conj().T @ m)) <= tol * scale**2
    uni = operator_norm(AlgebraElement(m @ m.conj().T - np.eye(a.dim))) <= tol * scale**2
    pos = False
    if sa:
        eigs = np.linalg.eigvalsh((m + m.conj().T) / 2)
        pos = bool(eigs.min() >= -tol * scale)
    return ElementFlags(selfadjoint=sa, normal=nrm, unitary=uni, positive=pos)


@dataclass(frozen=True)
class AlgebraBasis:
    """Ordered, Frobenius-orthonormal basis of a matrix subalgebra.

    Produced by :func:`generate_algebra`; the span then contains the
    identity and is closed under adjoints and products.
    """

    dim: int
    elements: tuple
    contains_identity: bool = True
    tol: float = field(default=DEFAULT_TOL)

    def __len__(self):
        return len(self.elements)

    def matrices(self) -> np.ndarray:
        """Stack of basis matrices, shape (len, dim, dim)."""
        return np.stack([e.entries for e in self.elements])

    def coefficients(self, m: np.ndarray) -> np.ndarray:
        """Expansion coefficients of ``m`` in the (orthonormal) basis."""
        stack = self.matrices()
        return np.einsum("kij,ij->k", stack.conj(), m)

    def expand(self, coeffs: np.ndarray) -> np.ndarray:
        return np.einsum("k,kij->ij", coeffs, self.matrices())

    def projection_residual(self, m: np.ndarray) -> float:
        """Frobenius distance from ``m`` to the basis span."""
        return float(np.linalg.norm(m - self.expand(self.coefficients(m))))


def _orthonormal_rows(rows: np.ndarray, rel_tol: float) -> np.ndarray:
    """Orthonormal basis of the row space, rank cut at rel_tol * s_max."""
    _, s, vh = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return vh[:0]
    return vh[s > rel_tol * s[0]]


def generate_algebra(generators, tol: float = DEFAULT_TOL) -> AlgebraBasis:
    """Basis of the unital *-algebra generated by the given elements.

    Starts from the identity, the generators and their adjoints, then
    alternates pairwise products with rank-revealing orthonormalization
    (Frobenius inner product) until the dimension stabilizes. Terminates
    because the dimension is bounded by dim**2.
    """
    gens = list(generators)
    if not gens:
        raise InvalidInputError("need at least one generator")
    if tol <= 0:
        raise InvalidInputError("tol must be positive")
    n = gens[0].dim
    for g in gens:
        if g.dim != n:
            raise DimensionMismatchError("generators must share one dimension")

    seed = [np.eye(n)]
    for g in gens:
        seed.append(g.entries)
        seed.append(g.entries.conj().T)
    rows = np.stack([m.ravel() for m in seed])
    basis = _orthonormal_rows(rows, tol)

    while True:
        mats = basis.reshape(-1, n, n)
        prods = np.einsum("aij,bjk->abik", mats, mats).reshape(-1, n * n)
        adjs = mats.conj().transpose(0, 2, 1).reshape(-1, n * n)
        new_basis = _orthonormal_rows(np.vstack([basis, adjs, prods]), tol)
        if new_basis.shape[0] == basis.shape[0] or basis.shape[0] == n * n:
            basis = new_basis
            break
        basis = new_basis

    elements = tuple(AlgebraElement(v.reshape(n, n)) for v in basis)
    return AlgebraBasis(dim=n, elements=elements, contains_identity=True, tol=tol)


def is_commutative(basis: AlgebraBasis, tol: float = DEFAULT_TOL) -> bool:
    """True iff all pairwise commutators vanish within ``tol``."""
    elems = basis.elements
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if operator_norm(commutator(elems[i], elems[j])) >= tol:
                return False
    return True
