import numpy as np
import pytest

from cliffchain.clifford import CliffordElement, dist, gamma0, hodge_star
from cliffchain.so_n import (
    adjoint_action,
    casimir_su2_pair,
    clebsch_gordan_dims,
    clifford_rep_so,
    f_element,
    f_tilde_element,
    highest_weight_check,
    isotypic_decomposition,
    pieri_dimension_check,
    so_generator,
    so_generators,
    so_n_casimir,
    spin_matrices,
    spin_projector,
    wedge_generator,
)


def test_generators_antisymmetric_exact():
    for gen in so_generators(5):
        assert np.array_equal(gen.matrix, -gen.matrix.T)


def test_commutation_closure_matrix_vs_clifford():
    # [pi(X), pi(Y)] = pi([X, Y]) for all generator pairs
    for n in range(3, 9):
        gens = so_generators(n)
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                X, Y = gens[a], gens[b]
                lhs_m = X.matrix @ Y.matrix - Y.matrix @ X.matrix
                px = clifford_rep_so(n, X.matrix)
                py = clifford_rep_so(n, Y.matrix)
                lhs = px * py - py * px
                rhs = clifford_rep_so(n, lhs_m)
                assert dist(lhs, rhs) < 1e-12


def test_spin_matrix_algebra():
    for s in (0.5, 1, 1.5, 2):
        sys = spin_matrices(s)
        Sx, Sy, Sz = sys.vector()
        eye = np.eye(sys.dim)
        assert np.abs(Sx @ Sy - Sy @ Sx - 1j * Sz).max() < 1e-12
        assert np.abs(Sy @ Sz - Sz @ Sy - 1j * Sx).max() < 1e-12
        assert np.abs(Sz @ Sx - Sx @ Sz - 1j * Sy).max() < 1e-12
        S2 = Sx @ Sx + Sy @ Sy + Sz @ Sz
        assert np.abs(S2 - s * (s + 1) * eye).max() < 1e-12
        for S in sys.vector():
            assert np.abs(S - S.conj().T).max() < 1e-12


def test_spin_half_is_half_pauli():
    sys = spin_matrices(0.5)
    assert np.abs(sys.Sx - np.array([[0, 0.5], [0.5, 0]])).max() < 1e-15
    assert np.abs(sys.Sz - np.diag([0.5, -0.5])).max() < 1e-15


def test_casimir_pair_spectra():
    C = casimir_su2_pair(0.5)
    evals = np.sort(np.linalg.eigvalsh(C))
    assert np.abs(evals - np.array([-0.75, 0.25, 0.25, 0.25])).max() < 1e-12

    C1 = casimir_su2_pair(1)
    evals = np.sort(np.linalg.eigvalsh(C1))
    expected = np.array([-2.0] + [-1.0] * 3 + [1.0] * 5)
    assert np.abs(evals - expected).max() < 1e-12

    for s in (0.5, 1, 1.5, 2, 2.5, 3):
        assert abs(np.trace(casimir_su2_pair(s))) < 1e-10


def test_spin_projectors():
    for s in (0.5, 1, 1.5):
        spins = list(range(int(round(2 * s)), -1, -1))
        projs = [spin_projector(s, mu) for mu in spins]
        total = sum(projs)
        assert np.abs(total - np.eye(total.shape[0])).max() < 1e-10
        for a, Pa in enumerate(projs):
            assert abs(np.trace(Pa).real - (2 * spins[a] + 1)) < 1e-10
            for b, Pb in enumerate(projs):
                want = Pa if a == b else 0.0
                assert np.abs(Pa @ Pb - want).max() < 1e-10
    # singlet of two spin-1/2 is the antisymmetric line
    P0 = spin_projector(0.5, 0)
    v = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)
    assert np.abs(P0 - np.outer(v, v)).max() < 1e-12
    with pytest.raises(ValueError):
        spin_projector(1, 3)


def test_clebsch_gordan_dims():
    assert clebsch_gordan_dims(0.5, 0.5) == [1.0, 0.0]
    assert clebsch_gordan_dims(2, 1) == [3.0, 2.0, 1.0]
    assert clebsch_gordan_dims(3, 0) == [3.0]
    for mu in (0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4):
        for nu in (0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4):
            spins = clebsch_gordan_dims(mu, nu)
            dims = sum(int(round(2 * k + 1)) for k in spins)
            assert dims == int(round((2 * mu + 1) * (2 * nu + 1)))


def test_casimir_defining_and_trivial():
    C = so_n_casimir(3, lambda i, j: so_generator(3, i, j))
    assert np.abs(C - 2.0 * np.eye(3)).max() < 1e-12
    C0 = so_n_casimir(4, lambda i, j: np.zeros((1, 1)))
    assert np.abs(C0).max() == 0.0


def test_casimir_commutes_with_generators():
    for n in (3, 4, 5):
        C = so_n_casimir(n, lambda i, j: so_generator(n, i, j))
        for gen in so_generators(n):
            assert np.abs(C @ gen.matrix - gen.matrix @ C).max() < 1e-10


def _pair_rep(n):
    def apply(i, j):
        L = so_generator(n, i, j)
        eye = np.eye(n)
        return np.kron(L, eye) + np.kron(eye, L)

    return apply


def test_isotypic_v_tensor_v():
    rep = isotypic_decomposition(so_n_casimir(3, _pair_rep(3)))
    assert sorted(d for _, d in rep.blocks) == [1, 3, 5]
    assert rep.total_dim == 9

    rep5 = isotypic_decomposition(so_n_casimir(5, _pair_rep(5)))
    assert sorted(d for _, d in rep5.blocks) == [1, 10, 14]
    assert rep5.total_dim == 25


def test_isotypic_on_identity():
    rep = isotypic_decomposition(np.eye(7))
    assert rep.blocks == [(1.0, 7)]


def test_pieri_dimension_examples():
    lhs, parts = pieri_dimension_check(4, 2)
    assert lhs == 24 and parts == [4, 4, 16]
    lhs, parts = pieri_dimension_check(5, 1)
    assert lhs == 25 and parts == [1, 10, 14]
    lhs, parts = pieri_dimension_check(5, 0)
    assert lhs == 5 and parts == [0, 5, 0]
    lhs, parts = pieri_dimension_check(3, 3)
    assert lhs == 3 and sum(parts) == 3


def _wedge_pair_rep(n, k):
    def apply(i, j):
        Lk = wedge_generator(n, k, i, j)
        L1 = so_generator(n, i, j)
        return np.kron(Lk, np.eye(n)) + np.kron(np.eye(len(Lk)), L1)

    return apply


@pytest.mark.parametrize("n", (3, 4, 5, 6))
def test_pieri_against_casimir_clustering(n):
    from math import comb

    for k in range(0, n + 1):
        lhs, (lo, hi, rest) = pieri_dimension_check(n, k)
        rep = isotypic_decomposition(so_n_casimir(n, _wedge_pair_rep(n, k)))
        assert rep.total_dim == lhs
        # Casimir scalars of the two wedge summands, computed on their own reps
        expected = {}
        for kk, d in ((k - 1, lo), (k + 1, hi)):
            if d == 0:
                continue
            Ck = so_n_casimir(n, lambda i, j, kk=kk: wedge_generator(n, kk, i, j))
            val = float(Ck[0, 0].real)
            assert np.abs(Ck - val * np.eye(len(Ck))).max() < 1e-10
            expected[round(val, 6)] = expected.get(round(val, 6), 0) + d
        got = {round(v, 6): d for v, d in rep.blocks}
        rest_found = 0
        for val, d in got.items():
            if val in expected:
                assert d == expected[val]
            else:
                rest_found += d
        assert rest_found == rest


def test_adjoint_action_examples():
    got = adjoint_action(4, (1, 3), CliffordElement.gamma(4, 1, 2))
    assert dist(got, CliffordElement.gamma(4, 2, 3)) < 1e-14
    zero = adjoint_action(4, (1, 2), CliffordElement.one(4))
    assert zero.is_zero()


def test_adjoint_action_preserves_grade_and_hodge():
    rng = np.random.default_rng(2)
    for n in (4, 5, 6):
        for bits in range(1, 1 << n):
            B = CliffordElement(n, {bits: 1.0})
            out = adjoint_action(n, (1, 2), B)
            assert out.grades() <= {bits.bit_count()}
        for _ in range(5):
            bits = int(rng.integers(0, 1 << n))
            B = CliffordElement(n, {bits: 1.0})
            lhs = adjoint_action(n, (2, 3), hodge_star(B))
            rhs = hodge_star(adjoint_action(n, (2, 3), B))
            assert dist(lhs, rhs) < 1e-12


def test_weight_ladder_on_f():
    # [pi(L_{2a-1,2a}), f_a] = i f_a
    for n in (4, 5, 6):
        for a in range(1, n // 2 + 1):
            fa = f_element(n, a)
            got = adjoint_action(n, (2 * a - 1, 2 * a), fa)
            assert dist(got, 1j * fa) < 1e-12


def test_highest_weight_examples():
    assert highest_weight_check(4, f_element(4, 1) * f_element(4, 2))
    assert highest_weight_check(4, f_element(4, 1) * f_tilde_element(4, 2))
    assert not highest_weight_check(4, f_tilde_element(4, 1))
    # products f_1 ... f_k are highest weight vectors of the wedge blocks
    for n in (5, 6, 7):
        B = CliffordElement.one(n)
        for a in range(1, n // 2 + 1):
            B = B * f_element(n, a)
            assert highest_weight_check(n, B)
    assert not highest_weight_check(5, f_tilde_element(5, 1))
    # gamma0 is so(n)-invariant, hence trivially highest weight
    assert highest_weight_check(6, gamma0(6))
