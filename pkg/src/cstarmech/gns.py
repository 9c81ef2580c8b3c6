"""GNS construction for states on finite-dimensional matrix *-algebras,
plus commutants, irreducibility, and intertwiner search.

The construction works on an orthonormal, multiplicatively closed
:class:`~cstarmech.algebra.AlgebraBasis` (build one with
``generate_algebra``). A state enters abstractly, as its values on the basis
elements; the Gram matrix G_jk = omega(A_j* A_k) then determines the
Hilbert space as the quotient of the coefficient space by the null space
of G.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import AlgebraBasis, AlgebraElement, operator_norm
from .errors import ClosureError, InvalidInputError, InvalidStateError
from .states import DensityState

__all__ = [
    "AbstractState",
    "GnsResult",
    "structure_tensor",
    "gns_construct",
    "commutant",
    "is_irreducible",
    "find_intertwiner",
]


def structure_tensor(basis: AlgebraBasis, tol: float = 1e-10) -> np.ndarray:
    """Coefficients P[l, j, k] of A_j A_k = sum_l P[l,j,k] A_l.

    Raises ClosureError if some product leaves the span by more than tol.
    """
    mats = basis.matrices()
    d = len(basis)
    prods = np.einsum("jab,kbc->jkac", mats, mats)
    coeffs = np.einsum("lab,jkab->ljk", mats.conj(), prods)
    recon = np.einsum("ljk,lab->jkab", coeffs, mats)
    err = float(np.sqrt((np.abs(prods - recon).reshape(d * d, -1) ** 2).sum(axis=1)).max())
    if err > max(tol, 1e-10) * 10:
        raise ClosureError(
            f"basis is not multiplicatively closed (residual {err:.2e}); "
            "run generate_algebra first"
        )
    return coeffs


@dataclass(frozen=True)
class AbstractState:
    """A state given by its values on the elements of an AlgebraBasis."""

    basis: AlgebraBasis
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (len(self.basis),):
            raise InvalidInputError("need one value per basis element")
        object.__setattr__(self, "values", v)
        ident = self.basis.coefficients(np.eye(self.basis.dim))
        val_ident = complex(ident @ v)
        if abs(val_ident - 1.0) > 1e-10:
            raise InvalidStateError(f"omega(1) = {val_ident}, expected 1")

    @classmethod
    def from_density(cls, basis: AlgebraBasis, omega: DensityState) -> "AbstractState":
        if omega.dim != basis.dim:
            raise InvalidInputError("state and basis dimensions differ")
        vals = np.einsum("ab,kba->k", omega.b, basis.matrices())
        return cls(basis=basis, values=vals)

    def gram(self, struct: np.ndarray | None = None) -> np.ndarray:
        """G_jk = omega(A_j* A_k), computed through the structure tensor."""
        basis = self.basis
        if struct is None:
            struct = structure_tensor(basis, basis.tol)
        mats = basis.matrices()
        # A_j* = sum_m s[j, m] A_m
        s = np.einsum("mab,jba->jm", mats.conj(), mats.conj())
        # omega(A_m A_k) = sum_l P[l,m,k] omega(A_l)
        prod_vals = np.einsum("lmk,l->mk", struct, self.values)
        return np.einsum("jm,mk->jk", s, prod_vals)


@dataclass(frozen=True)
class GnsResult:
    """Output of the GNS construction.

    rep[j] represents the j-th basis element on the quotient Hilbert space;
    quotient_map sends algebra coefficient vectors to Hilbert coordinates,
    and cyclic_vector is the image of the identity.
    """

    hilbert_dim: int
    rep: tuple
    cyclic_vector: np.ndarray
    quotient_map: np.ndarray
    gram_rank_tol: float

    def represent(self, coeffs: np.ndarray) -> np.ndarray:
        """Representation matrix of sum_j coeffs_j A_j."""
        return sum(c * r for c, r in zip(coeffs, self.rep))


def gns_construct(omega: AbstractState, rank_tol: float = 1e-10) -> GnsResult:
    """Run the GNS construction for a state on a closed algebra basis.

    The Hilbert space is the range of the Gram matrix above the rank
    threshold; left multiplication descends to the quotient and the class
    of the identity is the cyclic vector.
    """
    basis = omega.basis
    struct = structure_tensor(basis, basis.tol)
    g = omega.gram(struct)
    herm_err = np.linalg.norm(g - g.conj().T, 2)
    if herm_err > 1e-10 * max(np.linalg.norm(g, 2), 1.0):
        raise InvalidStateError(f"Gram matrix not Hermitian (error {herm_err:.2e})")
    g = (g + g.conj().T) / 2

    evals, evecs = np.linalg.eigh(g)
    scale = max(evals.max(), 0.0)
    threshold = max(rank_tol * scale, 1e-14)
    if evals.min() < -threshold:
        raise InvalidStateError(
            f"state is not positive: Gram eigenvalue {evals.min():.2e}"
        )
    keep = evals > threshold
    hdim = int(keep.sum())
    if hdim == 0:
        raise InvalidStateError("Gram matrix has rank zero")
    w = evecs[:, keep]
    d_half = np.sqrt(evals[keep])

    # quotient map Q: coefficient space -> Hilbert coordinates,
    # <Qc1, Qc2> = c1* G c2; pseudo-inverse lifts back.
    q = d_half[:, None] * w.conj().T
    q_pinv = w / d_half[None, :]

    rep = tuple(q @ struct[:, j, :] @ q_pinv for j in range(len(basis)))

    ident = basis.coefficients(np.eye(basis.dim))
    psi = q @ ident
    # fix the global phase: first significant coordinate real positive
    nz = np.flatnonzero(np.abs(psi) > 1e-12 * max(np.linalg.norm(psi), 1.0))
    if nz.size:
        phase = psi[nz[0]] / abs(psi[nz[0]])
        # a global phase on the quotient map leaves the rep matrices intact
        q = q / phase
        psi = psi / phase
    return GnsResult(
        hilbert_dim=hdim,
        rep=rep,
        cyclic_vector=psi,
        quotient_map=q,
        gram_rank_tol=threshold,
    )


def _sylvester_stack(rep) -> np.ndarray:
    """Stacked linear maps M -> rho_j M - M rho_j, column-major vec."""
    mats = [np.asarray(r, dtype=complex) for r in rep]
    h = mats[0].shape[0]
    eye = np.eye(h)
    blocks = [np.kron(eye, r) - np.kron(r.T, eye) for r in mats]
    return np.vstack(blocks)


def _block_restriction(mats, tol):
    """Eigenbasis of a normal rep element with the most eigenvalue clusters.

    Anything commuting with that element is block diagonal in this basis,
    so the Sylvester search can run on in-block coordinates only. Returns
    (Z, pairs) or None when no element restricts the problem.
    """
    from .spectral import _cluster  # deferred: spectral does not need gns

    h = mats[0].shape[0]
    best = None
    for m in mats:
        nrm = max(np.linalg.norm(m, 2), 1.0)
        if np.linalg.norm(m @ m.conj().T - m.conj().T @ m, 2) > 1e-12 * nrm**2:
            continue
        t, z = scipy.linalg.schur(m, output="complex")
        vals = np.diag(t)
        _, groups = _cluster(vals, max(1e-8 * nrm, 1e-12))
        if len(groups) > 1 and (best is None or len(groups) > best[2]):
            best = (z, groups, len(groups))
    if best is None:
        return None
    z, groups, _ = best
    pairs = [(a, b) for g in groups for a in g for b in g]
    if len(pairs) == h * h:
        return None
    return z, pairs


def commutant(rep, tol: float = 1e-10) -> list[np.ndarray]:
    """Frobenius-orthonormal basis of {M : M rho_j = rho_j M for all j}.

    Computed as the null space of the stacked Sylvester system; always
    contains the identity direction. When a normal rep element has a
    spread spectrum, the system is first restricted to its eigen-blocks.
    """
    mats = [np.asarray(r, dtype=complex) for r in rep]
    h = mats[0].shape[0]
    if any(m.shape != (h, h) for m in mats):
        raise InvalidInputError("representation matrices must share one shape")

    restriction = _block_restriction(mats, tol)
    if restriction is not None:
        z, pairs = restriction
        tilde = [z.conj().T @ m @ z for m in mats]
        cols = []
        for a, b in pairs:
            col = np.empty(len(mats) * h * h, dtype=complex)
            for j, m in enumerate(tilde):
                block = np.zeros((h, h), dtype=complex)
                block[:, b] += m[:, a]   # rho E_ab
                block[a, :] -= m[b, :]   # E_ab rho
                col[j * h * h : (j + 1) * h * h] = block.ravel(order="F")
            cols.append(col)
        stack = np.stack(cols, axis=1)
    else:
        stack = _sylvester_stack(mats)

    # full right singular basis is only needed when the stack is wide
    _, s, vh = np.linalg.svd(stack, full_matrices=stack.shape[0] < stack.shape[1])
    scale = max(s[0] if s.size else 0.0, 1.0)
    null_mask = np.concatenate([s <= tol * scale, np.ones(vh.shape[0] - s.size, bool)])
    null = vh[null_mask].conj()

    result = []
    for v in null:
        if restriction is not None:
            mt = np.zeros((h, h), dtype=complex)
            for c, (a, b) in zip(v, pairs):
                mt[a, b] = c
            result.append(z @ mt @ z.conj().T)
        else:
            result.append(v.reshape(h, h, order="F"))
    return result


def is_irreducible(rep, tol: float = 1e-10) -> bool:
    """True iff the commutant is trivial (dimension one)."""
    return len(commutant(rep, tol)) == 1


def find_intertwiner(rep1, rep2, tol: float = 1e-8, map_vector=None):
    """Unitary U with U rho1_j = rho2_j U for all j, or None.

    If map_vector=(v_from, v_to) is given, the constraint U v_from = v_to is
    imposed as well (the uniqueness clause for cyclic vectors) and the
    system is solved in the least-squares sense before taking the unitary
    polar factor.
    """
    m1 = [np.asarray(r, dtype=complex) for r in rep1]
    m2 = [np.asarray(r, dtype=complex) for r in rep2]
    if len(m1) != len(m2):
        raise InvalidInputError("representations must share the basis indexing")
    h1, h2 = m1[0].shape[0], m2[0].shape[0]
    if h1 != h2:
        return None
    h = h1
    eye = np.eye(h)
    # vec(U rho1 - rho2 U) = (rho1^T kron I - I kron rho2) vec U, column-major
    blocks = [np.kron(a.T, eye) - np.kron(eye, b) for a, b in zip(m1, m2)]
    sylv = np.vstack(blocks)
    scale = max(max(np.linalg.norm(m, 2) for m in m1 + m2), 1.0)

    candidates = []
    if map_vector is not None:
        v_from = np.asarray(map_vector[0], dtype=complex).ravel()
        v_to = np.asarray(map_vector[1], dtype=complex).ravel()
        row = np.kron(v_from[None, :], eye)  # vec(U v_from) = (v_from^T kron I) vec U
        a_full = np.vstack([sylv, row])
        b_full = np.concatenate([np.zeros(sylv.shape[0]), v_to])
        sol, *_ = np.linalg.lstsq(a_full, b_full, rcond=None)
        candidates.append(sol.reshape(h, h, order="F"))
    else:
        _, s, vh = np.linalg.svd(sylv, full_matrices=sylv.shape[0] < sylv.shape[1])
        smax = max(s[0] if s.size else 0.0, 1.0)
        null_mask = np.concatenate([s <= tol * smax, np.ones(vh.shape[0] - s.size, bool)])
        null = vh[null_mask].conj()
        for v in null:
            candidates.append(v.reshape(h, h, order="F"))
        if null.shape[0] > 1:
            rng = np.random.default_rng(0)
            combo = null.T @ (
                rng.standard_normal(null.shape[0])
                + 1j * rng.standard_normal(null.shape[0])
            )
            candidates.append(combo.reshape(h, h, order="F"))

    for u0 in candidates:
        sv = np.linalg.svd(u0, compute_uv=False)
        if sv[0] == 0.0 or sv[-1] <= tol * sv[0]:
            continue  # singular: not invertible, no unitary polar factor
        uu, _, vvh = np.linalg.svd(u0)
        u = uu @ vvh
        resid = max(np.linalg.norm(u @ a - b @ u, 2) for a, b in zip(m1, m2))
        if resid <= tol * scale:
            if map_vector is not None:
                v_from = np.asarray(map_vector[0], dtype=complex).ravel()
                v_to = np.asarray(map_vector[1], dtype=complex).ravel()
                if np.linalg.norm(u @ v_from - v_to) > tol * max(
                    np.linalg.norm(v_to), 1.0
                ):
                    continue
            return u
    return None
