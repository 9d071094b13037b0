import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffchain.clifford import (
    CliffordElement,
    alpha,
    gamma0,
    hodge_star,
    matrix_rep,
    projectors_pm,
    realize,
    realized_dim,
    transpose_antiauto,
)
from cliffchain.mps import (
    MpsFamily,
    apply_E,
    coefvec,
    e_matrix,
    fcs_expectation,
    fcs_expectation_f,
    frame_operator_distance,
    frame_product_trace,
    gram_matrix,
    injectivity_rank,
    mps_vector,
    psi_minus,
    psi_plus,
    rdm_eigen_by_grade,
    rdm_entry_oracle,
    rdm_frame,
    reduced_density_matrix,
    sigma_reflect,
    transfer_eigenvalue,
    transfer_spectrum,
    two_point_correlation,
)


def g(n, *idx):
    return CliffordElement.gamma(n, *idx)


def rand_element(rng, n, nterms=6, grades=None):
    coef = {}
    for _ in range(nterms):
        bits = int(rng.integers(0, 1 << n))
        if grades is not None and bits.bit_count() % 2 != grades:
            continue
        coef[bits] = complex(rng.normal(), rng.normal())
    return CliffordElement(n, coef)


def basis_state(n, l, *sites):
    v = np.zeros(n**l, dtype=complex)
    flat = 0
    for i in sites:
        flat = flat * n + (i - 1)
    v[flat] = 1.0
    return v


def dense_rho(n, l, boundary):
    return reduced_density_matrix(n, l, boundary).matrix


# --- state vectors ---------------------------------------------------------


def test_psi_plus_two_site_example():
    n = 4
    B = g(n, 1, 2) + hodge_star(g(n, 1, 2))
    v = psi_plus(n, 2, B) / realized_dim(n)
    want = (
        basis_state(n, 2, 1, 2)
        - basis_state(n, 2, 2, 1)
        - basis_state(n, 2, 3, 4)
        + basis_state(n, 2, 4, 3)
    )
    assert np.abs(v - want).max() < 1e-14
    w = psi_minus(n, 2, B) / realized_dim(n)
    want_m = (
        -basis_state(n, 2, 1, 2)
        + basis_state(n, 2, 2, 1)
        - basis_state(n, 2, 3, 4)
        + basis_state(n, 2, 4, 3)
    )
    assert np.abs(w - want_m).max() < 1e-14


def test_psi_projector_boundary_is_isotropic_pair():
    n = 3
    P_plus, _ = projectors_pm(n)
    v = psi_plus(n, 2, P_plus)
    want = basis_state(n, 2, 1, 1) + basis_state(n, 2, 2, 2) + basis_state(n, 2, 3, 3)
    want *= v[0]
    assert abs(v[0]) > 0.1
    assert np.abs(v - want).max() < 1e-14


def test_psi_grade_parity_vanishing():
    for n in (4, 5):
        for l in (1, 2, 3):
            for grade, idx in ((1, (1,)), (2, (1, 3)), (3, (1, 2, 4))):
                v = psi_plus(n, l, g(n, *idx))
                if grade % 2 != l % 2:
                    assert np.abs(v).max() == 0.0
                elif grade <= l:
                    assert np.abs(v).max() > 0.0


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.integers(0, 15))
def test_psi_entry_is_abstract_trace(string, bits):
    n = 4
    B = CliffordElement(n, {bits: 1.0 + 0.5j})
    v = psi_plus(n, len(string), B)
    word = CliffordElement.one(n)
    for i in reversed(string):
        word = word * g(n, i)
    flat = 0
    for i in string:
        flat = flat * n + (i - 1)
    prod = B * word
    want = realized_dim(n) * prod.coef_identity
    assert abs(v[flat] - want) < 1e-12


def test_mps_vector_domain_validation():
    fam = MpsFamily(4, "p_plus_even")
    with pytest.raises(ValueError):
        mps_vector(fam, 2, g(4, 1))
    with pytest.raises(ValueError):
        MpsFamily(4, "p_plus")
    with pytest.raises(ValueError):
        MpsFamily(5, "even")
    P_plus, _ = projectors_pm(4)
    v = mps_vector(fam, 2, P_plus * g(4, 1, 2))
    assert v.shape == (16,)


# --- transfer maps ---------------------------------------------------------


def test_apply_E_identity_eigenvalues():
    for n in (3, 4, 6):
        eye = np.eye(n)
        for idx in ((), (1,), (1, 2), (1, 3, 4)):
            if idx and max(idx) > n:
                continue
            B = g(n, *idx) if idx else CliffordElement.one(n)
            out = apply_E(n, eye, B)
            lam = transfer_eigenvalue(n, len(idx))
            assert (out - lam * B).norm_max() < 1e-14


def test_e_map_examples():
    assert (apply_E(4, np.eye(4), gamma0(4)) + gamma0(4)).norm_max() < 1e-14
    out = apply_E(6, np.eye(6), g(6, 1, 2))
    assert (out - (1.0 / 3.0) * g(6, 1, 2)).norm_max() < 1e-14


def test_apply_E_matches_matrix_realization():
    rng = np.random.default_rng(3)
    for n in (3, 4, 5):
        rep = matrix_rep(n)
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        B = rand_element(rng, n)
        out = apply_E(n, A, B)
        got = realize(out, rep)
        want = sum(
            A[i, j] * rep.gammas[i] @ realize(B, rep) @ rep.gammas[j]
            for i in range(n)
            for j in range(n)
        ) / n
        assert np.abs(got - want).max() < 1e-12
        Mv = e_matrix(n, A) @ coefvec(B)
        assert np.abs(Mv - coefvec(out)).max() < 1e-12


def test_fcs_normalization():
    for n in (3, 4, 5, 6):
        for l in (1, 2, 3):
            for boundary in ("omega", "plus", "minus"):
                val = fcs_expectation(n, [np.eye(n)] * l, boundary)
                assert abs(val - 1.0) < 1e-13


def test_sigma_twist_swaps_the_two_states():
    rng = np.random.default_rng(5)
    n = 4
    for l in (2, 3):
        ops = [rng.normal(size=(n, n)) for _ in range(l)]
        twisted = [sigma_reflect(n, A) for A in ops]
        lhs = fcs_expectation(n, twisted, "plus")
        rhs = fcs_expectation(n, ops, "minus")
        assert abs(lhs - rhs) < 1e-12


def test_factorized_route_matches_even_lengths():
    rng = np.random.default_rng(7)
    n = 4
    for l in (2, 4):
        ops = [rng.normal(size=(n, n)) for _ in range(l)]
        for boundary in ("plus", "minus"):
            assert (
                abs(fcs_expectation_f(n, ops, boundary) - fcs_expectation(n, ops, boundary))
                < 1e-12
            )


def test_odd_n_boundaries_agree():
    rng = np.random.default_rng(9)
    for n, l in ((3, 2), (3, 4), (5, 2)):
        ops = [rng.normal(size=(n, n)) for _ in range(l)]
        vals = [fcs_expectation(n, ops, b) for b in ("omega", "plus", "minus")]
        assert abs(vals[0] - vals[1]) < 1e-12
        assert abs(vals[0] - vals[2]) < 1e-12


# --- spectra ---------------------------------------------------------------


def test_transfer_spectrum_class_formula():
    for n in range(3, 9):
        summary = transfer_spectrum(n, "E")
        want = {}
        top = n // 2 if n % 2 else n
        for k in range(top + 1):
            lam = transfer_eigenvalue(n, k)
            want[round(lam, 12)] = want.get(round(lam, 12), 0) + math.comb(n, k)
        got = {round(v, 12): m for v, m in summary.eigenvalues}
        assert got.keys() == want.keys()
        for v, m in want.items():
            assert got[v] == m
        for v, m in summary.eigenvalues:
            close = [k for k in range(n + 1) if abs(transfer_eigenvalue(n, k) - v) < 1e-10]
            assert close
        assert sum(m for _, m in summary.eigenvalues) == (1 << n) if n % 2 == 0 else True


def test_transfer_spectrum_leading_and_primitivity():
    for n in range(3, 9):
        summary = transfer_spectrum(n, "E")
        assert abs(summary.eigenvalues[0][0] - 1.0) < 1e-10
        assert summary.eigenvalues[0][1] == 1
        assert summary.is_primitive == (n % 2 == 1)


def test_transfer_spectrum_f_shared():
    s4 = transfer_spectrum(4, "F_shared")
    assert [(round(v, 10), m) for v, m in s4.eigenvalues] == [(1.0, 1), (0.0, 3)]
    assert s4.is_primitive
    s6 = transfer_spectrum(6, "F_shared")
    got = {round(v, 10): m for v, m in s6.eigenvalues}
    third = round(1.0 / 3.0, 10)
    assert got == {1.0: 1, third: 10, -third: 5}
    assert s6.is_primitive
    with pytest.raises(ValueError):
        transfer_spectrum(5, "F_shared")


def test_correlation_lengths():
    want = {
        3: 1.0 / math.log(3.0),
        4: 0.0,
        5: 1.0 / math.log(5.0 / 3.0),
        6: 1.0 / math.log(3.0),
        8: 1.0 / math.log(2.0),
    }
    for n, xi in want.items():
        got = transfer_spectrum(n, "E").correlation_length
        assert got == pytest.approx(xi, abs=1e-12)


# --- Gram machinery --------------------------------------------------------


def test_gram_matches_brute_overlaps():
    rng = np.random.default_rng(11)
    for n, l in ((3, 2), (3, 3), (4, 2), (4, 3)):
        elems = [rand_element(rng, n) for _ in range(5)]
        G = gram_matrix(n, l, elems)
        Psi = np.stack([psi_plus(n, l, B) for B in elems], axis=1)
        brute = Psi.conj().T @ Psi
        assert np.abs(G - brute).max() < 1e-10 * max(1.0, np.abs(brute).max())
        assert np.abs(G - G.conj().T).max() < 1e-12 * max(1.0, np.abs(G).max())


def test_frame_distance_and_product_match_dense():
    n, l = 4, 3
    ea, ca = rdm_frame(n, l, "plus")
    eb, cb = rdm_frame(n, l, "minus")
    rp, rm = dense_rho(n, l, "plus"), dense_rho(n, l, "minus")
    want = np.abs(np.linalg.eigvalsh(rp - rm)).max()
    got = frame_operator_distance(n, l, ea, ca, eb, cb)
    assert abs(got - want) < 1e-11
    want_tr = float(np.trace(rp @ rm).real)
    got_tr = frame_product_trace(n, l, ea, ca, eb, cb)
    assert abs(got_tr - want_tr) < 1e-11


# --- reduced density matrices ----------------------------------------------


def test_rdm_matches_entrywise_oracle():
    for n, l, boundary in ((3, 2, "plus"), (4, 2, "omega"), (4, 3, "plus"), (4, 3, "minus")):
        rho = dense_rho(n, l, boundary)
        strings = list(itertools.product(range(1, n + 1), repeat=l))
        for a, row in enumerate(strings):
            for b, col in enumerate(strings):
                want = rdm_entry_oracle(n, l, boundary, row, col)
                assert abs(rho[a, b] - want) < 1e-12


def test_rdm_spot_entries_n6():
    rng = np.random.default_rng(13)
    n, l = 6, 3
    rho = dense_rho(n, l, "plus")
    strings = list(itertools.product(range(1, n + 1), repeat=l))
    for _ in range(15):
        a, b = rng.integers(0, len(strings), size=2)
        want = rdm_entry_oracle(n, l, "plus", strings[a], strings[b])
        assert abs(rho[a, b] - want) < 1e-12


def test_rdm_invariants():
    for n, l in ((3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (6, 2)):
        for boundary in ("omega", "plus", "minus"):
            rho = dense_rho(n, l, boundary)
            assert np.abs(rho - rho.conj().T).max() < 1e-12
            assert abs(np.trace(rho).real - 1.0) < 1e-10
            assert np.linalg.eigvalsh(rho).min() > -1e-10


def test_rdm_odd_n_boundary_independent():
    for n, l in ((3, 2), (3, 3), (5, 2)):
        r0 = dense_rho(n, l, "omega")
        assert np.abs(r0 - dense_rho(n, l, "plus")).max() < 1e-13
        assert np.abs(r0 - dense_rho(n, l, "minus")).max() < 1e-13


def test_rdm_states_equal_below_half_chain():
    assert np.abs(dense_rho(6, 2, "plus") - dense_rho(6, 2, "minus")).max() < 1e-13
    ea, ca = rdm_frame(6, 2, "plus")
    eb, cb = rdm_frame(6, 2, "minus")
    assert frame_operator_distance(6, 2, ea, ca, eb, cb) < 1e-12


def test_rdm_cross_state_overlap_decays():
    # The two marginals never become exactly orthogonal: the identity-class
    # eigenvectors keep overlap (N_0 - N_n)/(N_0 + N_n), with N_k the number
    # of length-l generator strings multiplying to a grade-k monomial.
    # At n=4 the hand counts give Tr(rho+ rho-) = 1/256 (l=4), 1/4096 (l=6).
    rp, rm = dense_rho(4, 4, "plus"), dense_rho(4, 4, "minus")
    assert abs(np.trace(rp @ rm).real - 1.0 / 256.0) < 1e-13
    ea, ca = rdm_frame(4, 4, "plus")
    eb, cb = rdm_frame(4, 4, "minus")
    assert abs(frame_product_trace(4, 4, ea, ca, eb, cb) - 1.0 / 256.0) < 1e-13
    ea6, ca6 = rdm_frame(4, 6, "plus")
    eb6, cb6 = rdm_frame(4, 6, "minus")
    assert abs(frame_product_trace(4, 6, ea6, ca6, eb6, cb6) - 1.0 / 4096.0) < 1e-13


def test_rdm_omega_is_even_mixture():
    n, l = 4, 3
    mix = 0.5 * (dense_rho(n, l, "plus") + dense_rho(n, l, "minus"))
    assert np.abs(dense_rho(n, l, "omega") - mix).max() < 1e-13


def test_rdm_eigen_by_grade_n4():
    out = rdm_eigen_by_grade(4, 4, "plus")
    assert [(grade, round(mu, 10), m) for grade, mu, m in out] == [(0, 0.25, 1), (2, 0.25, 3)]
    dense = np.linalg.eigvalsh(dense_rho(4, 4, "plus"))
    nonzero = dense[dense > 1e-12]
    assert np.abs(nonzero - 0.25).max() < 1e-12


def test_rdm_eigen_by_grade_matches_dense():
    for n, l, boundary in ((3, 2, "plus"), (3, 3, "plus"), (4, 3, "minus"), (4, 2, "omega")):
        out = rdm_eigen_by_grade(n, l, boundary)
        got = sorted(np.repeat([mu for _, mu, _ in out], [m for _, _, m in out]))
        dense = np.linalg.eigvalsh(dense_rho(n, l, boundary))
        want = sorted(dense[dense > 1e-11])
        assert len(got) == len(want)
        assert np.abs(np.array(got) - np.array(want)).max() < 1e-10
        assert abs(sum(mu * m for _, mu, m in out) - 1.0) < 1e-10


def test_rdm_eigen_grade_multiplicities():
    for n, l in ((4, 4), (6, 4), (6, 3)):
        out = rdm_eigen_by_grade(n, l, "plus")
        by_grade = {}
        for grade, _, m in out:
            by_grade[grade] = by_grade.get(grade, 0) + m
        for grade, m in by_grade.items():
            if 2 * grade < n:
                assert m == math.comb(n, grade)
            else:
                assert m == math.comb(n, grade) // 2


# --- structure of the family ----------------------------------------------


def test_injectivity_ranks():
    assert injectivity_rank(MpsFamily(4, "even"), 2) == (7, False)
    assert not injectivity_rank(MpsFamily(4, "even"), 3)[1]
    assert injectivity_rank(MpsFamily(4, "even"), 4) == (8, True)
    assert injectivity_rank(MpsFamily(4, "p_plus_even"), 4) == (4, True)
    assert injectivity_rank(MpsFamily(3, "p_plus"), 2) == (4, True)
    assert injectivity_rank(MpsFamily(4, "full"), 1) == (4, False)


def test_bond_identities_under_conjugation_and_reversal():
    rng = np.random.default_rng(17)
    for n, l in ((3, 2), (4, 3)):
        B = rand_element(rng, n)
        v = psi_plus(n, l, B)
        assert np.abs(np.conj(v) - psi_plus(n, l, B.bar())).max() < 1e-12
        rev = v.reshape([n] * l).transpose(range(l - 1, -1, -1)).reshape(-1)
        assert np.abs(rev - psi_plus(n, l, transpose_antiauto(B))).max() < 1e-12


# --- correlations -----------------------------------------------------------


def test_two_point_decay_n6():
    n = 6
    S12 = np.zeros((n, n), dtype=complex)
    S12[0, 1], S12[1, 0] = 1.0j, -1.0j
    vals = [two_point_correlation(n, S12, S12, r, "plus") for r in range(2, 9)]
    assert abs(vals[0]) > 1e-4
    for a, b in zip(vals, vals[1:]):
        assert abs(b / a - 1.0 / 3.0) < 1e-10


def test_two_point_vanishing():
    n = 4
    S12 = np.zeros((n, n), dtype=complex)
    S12[0, 1], S12[1, 0] = 1.0j, -1.0j
    for r in range(1, 5):
        assert abs(two_point_correlation(n, S12, S12, r, "plus")) < 1e-13
    A = np.diag([1.0, -1.0, 0.0])
    for r in range(1, 4):
        assert abs(two_point_correlation(3, A, A, r, "plus")) < 1e-14
