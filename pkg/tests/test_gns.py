import numpy as np
import pytest

from cstarmech.algebra import AlgebraBasis, AlgebraElement, generate_algebra, operator_norm
from cstarmech.errors import ClosureError, InvalidStateError
from cstarmech.gns import (
    AbstractState,
    commutant,
    find_intertwiner,
    gns_construct,
    is_irreducible,
    structure_tensor,
)
from cstarmech.sampling import random_density, random_selfadjoint
from cstarmech.states import DensityState, expectation, from_vector, is_pure

from conftest import SX, SY, SZ


def full_matrix_basis(n, rng=None):
    gens = [AlgebraElement(SX), AlgebraElement(SY)] if n == 2 else None
    if gens is None:
        r = np.random.default_rng(7) if rng is None else rng
        gens = [
            AlgebraElement(
                (lambda m: (m + m.conj().T) / 2)(
                    r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
                )
            )
            for _ in range(2)
        ]
    basis = generate_algebra(gens)
    assert len(basis) == n * n
    return basis


def gns_from_density(basis, omega):
    return gns_construct(AbstractState.from_density(basis, omega))


class TestStructureTensor:
    def test_closed_basis(self):
        basis = full_matrix_basis(2)
        struct = structure_tensor(basis)
        mats = basis.matrices()
        recon = np.einsum("ljk,lab->jkab", struct, mats)
        prods = np.einsum("jab,kbc->jkac", mats, mats)
        np.testing.assert_allclose(recon, prods, atol=1e-12)

    def test_rejects_unclosed_span(self):
        # span{I, sx} is not closed under sx @ sz ... use {I, upper shift}
        e = AlgebraElement([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        basis = AlgebraBasis(
            dim=3,
            elements=(AlgebraElement.identity(3) * (1 / np.sqrt(3)), e * (1 / np.sqrt(2))),
        )
        with pytest.raises(ClosureError):
            structure_tensor(basis)


class TestAbstractState:
    def test_from_density_values(self):
        basis = full_matrix_basis(2)
        omega = DensityState(np.diag([1.0, 0.0]))
        st = AbstractState.from_density(basis, omega)
        for el, val in zip(basis.elements, st.values):
            assert val == pytest.approx(expectation(omega, el), abs=1e-12)

    def test_rejects_unnormalized(self):
        basis = full_matrix_basis(2)
        st = AbstractState.from_density(basis, DensityState.maximally_mixed(2))
        with pytest.raises(InvalidStateError):
            AbstractState(basis, 2.0 * st.values)

    def test_gram_hermitian_psd(self, rng):
        basis = full_matrix_basis(3, rng)
        st = AbstractState.from_density(basis, random_density(rng, 3))
        g = st.gram()
        np.testing.assert_allclose(g, g.conj().T, atol=1e-10)
        assert np.linalg.eigvalsh((g + g.conj().T) / 2).min() > -1e-10


class TestGnsDimensions:
    def test_pure_state_on_m2_gives_dim_2(self):
        basis = full_matrix_basis(2)
        res = gns_from_density(basis, DensityState(np.diag([1.0, 0.0])))
        assert res.hilbert_dim == 2

    def test_tracial_state_on_m2_gives_dim_4(self):
        basis = full_matrix_basis(2)
        res = gns_from_density(basis, DensityState.maximally_mixed(2))
        assert res.hilbert_dim == 4

    def test_trivial_algebra_gives_dim_1(self):
        basis = generate_algebra([AlgebraElement.identity(3)])
        assert len(basis) == 1
        res = gns_from_density(basis, DensityState.maximally_mixed(3))
        assert res.hilbert_dim == 1

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_dim_equals_n_times_rank(self, n, rng):
        basis = full_matrix_basis(n, rng)
        for rank in range(1, n + 1):
            omega = random_density(rng, n, rank=rank)
            res = gns_from_density(basis, omega)
            assert res.hilbert_dim == n * rank


class TestGnsInvariants:
    def test_reconstruction(self, rng):
        for n in (2, 3):
            basis = full_matrix_basis(n, rng)
            omega = random_density(rng, n)
            st = AbstractState.from_density(basis, omega)
            res = gns_construct(st)
            psi = res.cyclic_vector
            for j, val in enumerate(st.values):
                got = complex(psi.conj() @ res.rep[j] @ psi)
                assert got == pytest.approx(val, abs=1e-9)

    def test_cyclic_vector_unit(self, rng):
        basis = full_matrix_basis(2)
        res = gns_from_density(basis, random_density(rng, 2))
        assert np.linalg.norm(res.cyclic_vector) == pytest.approx(1.0, abs=1e-10)

    def test_rep_is_star_homomorphism(self, rng):
        basis = full_matrix_basis(2)
        res = gns_from_density(basis, random_density(rng, 2))
        struct = structure_tensor(basis)
        reps = [np.asarray(r) for r in res.rep]
        # products map correctly
        for j in range(len(basis)):
            for k in range(len(basis)):
                target = sum(struct[l, j, k] * reps[l] for l in range(len(basis)))
                np.testing.assert_allclose(reps[j] @ reps[k], target, atol=1e-9)
        # identity maps to the identity
        ident = basis.coefficients(np.eye(2))
        np.testing.assert_allclose(
            res.represent(ident), np.eye(res.hilbert_dim), atol=1e-9
        )

    def test_rep_preserves_adjoints(self, rng):
        basis = full_matrix_basis(3, rng)
        res = gns_from_density(basis, random_density(rng, 3))
        a = random_selfadjoint(rng, 3)
        mat = res.represent(basis.coefficients(a.entries))
        np.testing.assert_allclose(mat, mat.conj().T, atol=1e-9)

    def test_rep_is_norm_contraction(self, rng):
        basis = full_matrix_basis(3, rng)
        res = gns_from_density(basis, random_density(rng, 3))
        for _ in range(10):
            a = random_selfadjoint(rng, 3)
            rep_norm = operator_norm(res.represent(basis.coefficients(a.entries)))
            assert rep_norm <= operator_norm(a) + 1e-8

    def test_cyclicity(self, rng):
        basis = full_matrix_basis(2)
        res = gns_from_density(basis, DensityState.maximally_mixed(2))
        orbit = np.stack([np.asarray(r) @ res.cyclic_vector for r in res.rep], axis=1)
        assert np.linalg.matrix_rank(orbit, tol=1e-10) == res.hilbert_dim


class TestCommutant:
    def test_full_matrix_rep_trivial(self):
        assert len(commutant([SX, SY, SZ, np.eye(2)])) == 1

    def test_scalar_rep_full_commutant(self):
        assert len(commutant([np.eye(2)])) == 4

    def test_diagonal_rep(self):
        assert len(commutant([np.diag([1.0, 2.0]).astype(complex)])) == 2

    def test_members_commute(self, rng):
        rep = [np.diag([1.0, 1.0, 3.0]).astype(complex)]
        for m in commutant(rep):
            for r in rep:
                np.testing.assert_allclose(m @ r, r @ m, atol=1e-9)

    def test_clock_shift_irreducible(self):
        from cstarmech.weyl import clock_shift

        for n in (2, 3, 8):
            pair = clock_shift(n)
            assert is_irreducible([pair.U, pair.V])


class TestPurityIrreducibility:
    def test_pure_gives_irreducible(self, rng):
        basis = full_matrix_basis(2)
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        res = gns_from_density(basis, from_vector(v / np.linalg.norm(v)))
        assert is_irreducible(res.rep)

    def test_mixed_gives_reducible(self, rng):
        basis = full_matrix_basis(2)
        res = gns_from_density(basis, DensityState(np.diag([0.7, 0.3])))
        assert not is_irreducible(res.rep)

    def test_equivalence_over_random_states(self, rng):
        basis = full_matrix_basis(3, rng)
        for _ in range(10):
            rank = int(rng.integers(1, 4))
            omega = random_density(rng, 3, rank=rank)
            res = gns_from_density(basis, omega)
            assert is_irreducible(res.rep) == is_pure(omega)


class TestIntertwiner:
    def test_identity_rep_pair(self):
        rep = [SX, SY]
        u = find_intertwiner(rep, rep)
        assert u is not None
        np.testing.assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-10)

    def test_conjugated_pair(self, rng):
        from cstarmech.sampling import random_unitary

        w = random_unitary(rng, 3)
        rep1 = [random_selfadjoint(rng, 3).entries for _ in range(2)] + [np.eye(3)]
        rep2 = [w @ r @ w.conj().T for r in rep1]
        u = find_intertwiner(rep1, rep2)
        assert u is not None
        for a, b in zip(rep1, rep2):
            np.testing.assert_allclose(u @ a, b @ u, atol=1e-8)

    def test_inequivalent_reps(self):
        rep1 = [np.diag([1.0, 2.0]).astype(complex)]
        rep2 = [np.diag([1.0, 3.0]).astype(complex)]
        assert find_intertwiner(rep1, rep2) is None

    def test_dimension_mismatch(self):
        assert find_intertwiner([np.eye(2)], [np.eye(3)]) is None

    def test_gns_uniqueness_under_basis_reordering(self, rng):
        """The same state through two differently ordered generating sets
        produces unitarily equivalent GNS triples matching cyclic vectors."""
        omega = random_density(rng, 2)
        g1 = [AlgebraElement(SX), AlgebraElement(SY)]
        g2 = [AlgebraElement(SY), AlgebraElement(SZ)]
        b1, b2 = generate_algebra(g1), generate_algebra(g2)
        r1 = gns_construct(AbstractState.from_density(b1, omega))
        r2 = gns_construct(AbstractState.from_density(b2, omega))
        assert r1.hilbert_dim == r2.hilbert_dim
        # align the reps through the common concrete algebra M2
        rep1 = [np.asarray(r1.represent(b1.coefficients(m))) for m in (SX, SY, SZ)]
        rep2 = [np.asarray(r2.represent(b2.coefficients(m))) for m in (SX, SY, SZ)]
        u = find_intertwiner(
            rep1, rep2, map_vector=(r1.cyclic_vector, r2.cyclic_vector)
        )
        assert u is not None
        np.testing.assert_allclose(
            u @ r1.cyclic_vector, r2.cyclic_vector, atol=1e-8
        )
