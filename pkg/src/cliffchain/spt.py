"""Projective-representation signs, bond symmetries, and CPT diagnostics.

The half-integer index of a tensor family is read off from commutators of
bond symmetries extracted via the mixed transfer operator.  Antilinear maps
are always handled as (entrywise conjugation) followed by a unitary, and the
density-matrix checks run on Gram frames so no state vector is ever built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .checks import VerificationReport
from .clifford import (
    CliffordElement,
    dist,
    matrix_rep,
    projectors_pm,
    realize,
    transpose_antiauto,
)
from .mps import (
    frame_operator_distance,
    overlap_kernel,
    rdm_eigen_by_grade,
    rdm_frame,
)
from .so_n import spin_matrices

VERDICT_TOL = 1e-9

FIXES = "FIXES"
SWAPS = "SWAPS"
INVARIANT = "INVARIANT"
FAILED = "FAILED"


# ---------------------------------------------------------------------------
# rotations and their Clifford lifts
# ---------------------------------------------------------------------------


def rotation_matrix(n: int, theta: float, i: int, j: int) -> np.ndarray:
    """Rotation by theta in the (i, j) coordinate plane, 1-based axes."""
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got ({i}, {j}) at n={n}")
    w = np.eye(n)
    c, s = math.cos(theta), math.sin(theta)
    w[i - 1, i - 1] = c
    w[j - 1, j - 1] = c
    w[i - 1, j - 1] = s
    w[j - 1, i - 1] = -s
    return w


def spin_rep_element(n: int, theta: float, i: int, j: int) -> CliffordElement:
    """cos(theta/2) 1 + sin(theta/2) gamma_i gamma_j, the rotor for rotation_matrix."""
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got ({i}, {j}) at n={n}")
    one = CliffordElement.one(n, math.cos(theta / 2.0))
    plane = CliffordElement.gamma(n, i, j).scale(math.sin(theta / 2.0))
    return one + plane


def rotate_generator(n: int, w: np.ndarray, i: int) -> CliffordElement:
    """sum_j w_ji gamma_j, the image of gamma_i under the rotation w."""
    out = CliffordElement.zero(n)
    for j in range(1, n + 1):
        c = w[j - 1, i - 1]
        if abs(c) > 1e-15:
            out = out + CliffordElement.gamma(n, j).scale(c)
    return out


def _givens_factors(w: np.ndarray) -> list[tuple[float, int, int]]:
    """Factor w in SO(n) as a left-to-right product of plane rotations."""
    n = w.shape[0]
    if np.max(np.abs(w.T @ w - np.eye(n))) > 1e-10:
        raise ValueError("matrix is not orthogonal")
    if np.linalg.det(w) < 0:
        raise ValueError("determinant -1 rotations have no rotor lift here")
    A = np.array(w, dtype=float)
    facs = []
    for col in range(n - 1):
        for row in range(col + 1, n):
            a, b = A[col, col], A[row, col]
            if abs(b) < 1e-14:
                continue
            th = math.atan2(b, a)
            A = rotation_matrix(n, th, col + 1, row + 1) @ A
            facs.append((-th, col + 1, row + 1))
    if np.max(np.abs(A - np.eye(n))) > 1e-9:
        raise ValueError("Givens sweep did not reduce the rotation to the identity")
    return facs


def spin_lift(n: int, w: np.ndarray) -> tuple[CliffordElement, CliffordElement]:
    """Rotor Pi with Pi gamma_i Pi^-1 = sum_j w_ji gamma_j, plus its inverse.

    Defined up to a global sign; conjugation is what callers use, so the
    choice is irrelevant and not canonicalized.
    """
    facs = _givens_factors(w)
    Pi = CliffordElement.one(n)
    Pi_inv = CliffordElement.one(n)
    for th, i, j in facs:
        Pi = Pi * spin_rep_element(n, th, i, j)
    for th, i, j in reversed(facs):
        Pi_inv = Pi_inv * spin_rep_element(n, -th, i, j)
    for i in range(1, n + 1):
        image = Pi * CliffordElement.gamma(n, i) * Pi_inv
        if dist(image, rotate_generator(n, w, i)) > 1e-10:
            raise AssertionError(f"rotor lift failed the adjoint identity at axis {i}")
    return Pi, Pi_inv


@dataclass(frozen=True)
class RotationPair:
    """The two commuting pi-rotations generating the diagnostic Z2 x Z2."""

    n: int
    g1: np.ndarray = field(repr=False)
    g2: np.ndarray = field(repr=False)


def rotation_pair(n: int) -> RotationPair:
    g1 = rotation_matrix(n, math.pi, 1, 2)
    g2 = rotation_matrix(n, math.pi, 1, 3)
    for g in (g1, g2):
        if np.max(np.abs(g @ g - np.eye(n))) > 1e-12:
            raise AssertionError("pi-rotation is not an involution")
    if np.max(np.abs(g1 @ g2 - g2 @ g1)) > 1e-12:
        raise AssertionError("the two pi-rotations do not commute")
    return RotationPair(n, g1, g2)


def cocycle_sign(n: int, rep="SPIN") -> int:
    """Sign s in U1 U2 U1^-1 U2^-1 = s * 1 for the Z2 x Z2 pair.

    rep is "SPIN" (rotor lift), "DEFINING" (the rotations themselves), or an
    explicit pair of unitary matrices.
    """
    if isinstance(rep, str):
        pair = rotation_pair(n)
        if rep == "SPIN":
            U1 = realize(spin_rep_element(n, math.pi, 1, 2))
            U2 = realize(spin_rep_element(n, math.pi, 1, 3))
        elif rep == "DEFINING":
            U1, U2 = pair.g1, pair.g2
        else:
            raise ValueError(f"unknown representation tag {rep!r}")
    else:
        U1, U2 = rep
    C = U1 @ U2 @ np.linalg.inv(U1) @ np.linalg.inv(U2)
    s = complex(C[0, 0])
    if np.max(np.abs(C - s * np.eye(C.shape[0]))) > 1e-8:
        raise ValueError("commutator is not scalar; the pair is not a projective rep")
    if abs(s - 1.0) < 1e-8:
        return 1
    if abs(s + 1.0) < 1e-8:
        return -1
    raise ValueError(f"scalar commutator {s} is not a sign")


# ---------------------------------------------------------------------------
# tensor families and bond-symmetry extraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorFamily:
    """Site tensors of a translation-invariant MPS with an SO(n) label action.

    action "vector": physical label transforms by w itself; "pair": labels
    are two-site blocks transforming by w kron w.
    """

    n: int
    tensors: tuple
    action: str
    label: str

    @property
    def bond_dim(self) -> int:
        return self.tensors[0].shape[0]

    def site_action(self, w: np.ndarray) -> np.ndarray:
        if self.action == "vector":
            return w
        return np.kron(w, w)


def clifford_tensors(n: int) -> TensorFamily:
    """The gamma-matrix family; even n is blocked into two-site tensors.

    The unblocked even-n transfer operator has a -1 peripheral eigenvalue, so
    the primitive unit is the pair of sites compressed onto the range of the
    positive half projector.
    """
    rep = matrix_rep(n)
    gammas = [realize(CliffordElement.gamma(n, i), rep) for i in range(1, n + 1)]
    if n % 2 == 1:
        ts = tuple(g / math.sqrt(n) for g in gammas)
        return TensorFamily(n, ts, "vector", f"clifford(n={n})")
    P = realize(projectors_pm(n)[0], rep)
    vals, vecs = np.linalg.eigh(P)
    V = vecs[:, vals > 0.5]
    ts = tuple(
        V.conj().T @ (gammas[i] @ gammas[j]) @ V / n
        for i in range(n)
        for j in range(n)
    )
    return TensorFamily(n, ts, "pair", f"clifford(n={n}, blocked)")


def aklt_tensors() -> TensorFamily:
    """Spin-1 chain tensors sigma_i / sqrt(3) with the SO(3) label action."""
    paulis = [2.0 * S for S in spin_matrices(0.5).vector()]
    return TensorFamily(3, tuple(p / math.sqrt(3.0) for p in paulis), "vector", "aklt")


def product_tensors(n: int) -> TensorFamily:
    """Bond-dimension-1 baseline polarized along the last axis."""
    ts = tuple(np.array([[1.0 if i == n else 0.0]], dtype=complex) for i in range(1, n + 1))
    return TensorFamily(n, ts, "vector", f"product(n={n})")


@dataclass(frozen=True)
class BondSymmetry:
    w: np.ndarray = field(repr=False)
    Pi: np.ndarray = field(repr=False)
    eigenvalue: complex
    phase_convention: str


def _transfer_matrix(tensors) -> np.ndarray:
    D = tensors[0].shape[0]
    T = np.zeros((D * D, D * D), dtype=complex)
    for t in tensors:
        T += np.kron(t, t.conj())
    return T


def extract_bond_symmetry(family: TensorFamily, w: np.ndarray) -> BondSymmetry:
    """Unitary Pi with lambda Pi t_i Pi^dag = sum_j w_ji t_j, from the mixed transfer.

    Requires a primitive family: exactly one transfer eigenvalue on the unit
    circle.  A degenerate modulus-1 mixed spectrum is an error, not a
    fallback.
    """
    ts = family.tensors
    D = family.bond_dim
    T = _transfer_matrix(ts)
    t_evals = np.linalg.eigvals(T)
    if np.count_nonzero(np.abs(t_evals) > 1.0 - 1e-7) != 1:
        raise ValueError(f"family {family.label} is not primitive")

    A = family.site_action(w)
    s = [sum(A[a, b] * ts[a] for a in range(len(ts))) for b in range(len(ts))]
    M = np.zeros((D * D, D * D), dtype=complex)
    for b in range(len(ts)):
        M += np.kron(s[b], ts[b].conj())

    evals, evecs = np.linalg.eig(M)
    on_circle = np.flatnonzero(np.abs(np.abs(evals) - 1.0) < 1e-7)
    if len(on_circle) == 0:
        raise ValueError("mixed transfer operator has no modulus-1 eigenvalue")
    if len(on_circle) > 1:
        raise ValueError("mixed transfer operator has a degenerate modulus-1 spectrum")
    lam = complex(evals[on_circle[0]])
    Pi = evecs[:, on_circle[0]].reshape(D, D)

    Pi = Pi * math.sqrt(D / float(np.trace(Pi.conj().T @ Pi).real))
    unit_dev = np.max(np.abs(Pi.conj().T @ Pi - np.eye(D)))
    if unit_dev > 1e-6:
        raise ValueError(f"eigenvector does not rescale to a unitary, deviation {unit_dev:.3e}")
    top = Pi.flat[int(np.argmax(np.abs(Pi)))]
    Pi = Pi * (top.conjugate() / abs(top))

    worst = max(
        np.max(np.abs(lam * Pi @ ts[b] @ Pi.conj().T - s[b])) for b in range(len(ts))
    )
    if worst > 1e-7:
        raise ValueError(f"extracted Pi fails the intertwining relation, residual {worst:.3e}")
    return BondSymmetry(w, Pi, lam, "largest-entry-real-positive")


def mps_spt_index(family: TensorFamily) -> int:
    """Commutator sign of the bond symmetries for the diagnostic Z2 x Z2 pair."""
    pair = rotation_pair(family.n)
    b1 = extract_bond_symmetry(family, pair.g1)
    b2 = extract_bond_symmetry(family, pair.g2)
    return cocycle_sign(family.n, (b1.Pi, b2.Pi))


# ---------------------------------------------------------------------------
# CPT checks on the reduced density matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CptReport:
    n: int
    l: int
    conjugation: str
    reflection: str
    time_reversal: str
    residuals: dict


def _require_even_n(n: int) -> None:
    if n % 2 == 1:
        raise ValueError("the paired-state checks need even n")


def _frame_verdict(n: int, l: int, image_elems, kernel) -> tuple[str, float, float]:
    """Match a transformed plus-state frame against the plus and minus states."""
    elems_p, c_p = rdm_frame(n, l, "plus")
    elems_m, c_m = rdm_frame(n, l, "minus")
    r_fix = frame_operator_distance(n, l, image_elems, c_p, elems_p, c_p, kernel)
    r_swap = frame_operator_distance(n, l, image_elems, c_p, elems_m, c_m, kernel)
    fixes, swaps = r_fix < VERDICT_TOL, r_swap < VERDICT_TOL
    if fixes and swaps:
        verdict = FIXES if n % 4 == 0 else SWAPS  # degenerate rho+ = rho- regime
    elif fixes:
        verdict = FIXES
    elif swaps:
        verdict = SWAPS
    else:
        verdict = FAILED
    return verdict, r_fix, r_swap


def conjugation_check(n: int, l: int) -> tuple[str, dict]:
    """Entrywise conjugate of rho+- against rho+- (FIXES) or rho-+ (SWAPS)."""
    _require_even_n(n)
    kernel = overlap_kernel(n, l)
    elems_p, _ = rdm_frame(n, l, "plus")
    bar_elems = [B.bar() for B in elems_p]
    verdict, r_fix, r_swap = _frame_verdict(n, l, bar_elems, kernel)
    return verdict, {"conjugation_fix": r_fix, "conjugation_swap": r_swap}


def reflection_check(n: int, l: int) -> tuple[str, dict]:
    """Site-order reversal of rho+- against rho+- or rho-+; even lengths only."""
    _require_even_n(n)
    if l % 2 == 1:
        raise ValueError("reflection check is defined for even lengths")
    kernel = overlap_kernel(n, l)
    elems_p, _ = rdm_frame(n, l, "plus")
    refl_elems = [transpose_antiauto(B) for B in elems_p]
    verdict, r_fix, r_swap = _frame_verdict(n, l, refl_elems, kernel)
    return verdict, {"reflection_fix": r_fix, "reflection_swap": r_swap}


def theta_matrix(n: int) -> np.ndarray:
    """Real form of the time-reversal unitary under the spin relabeling.

    Site basis read as |m = s>, ..., |m = -s| with s = (n-1)/2; theta sends
    |m> to (-1)^(s-m) |-m>.
    """
    th = np.zeros((n, n))
    for i in range(1, n + 1):
        th[n - i, i - 1] = -1.0 if (i - 1) % 2 else 1.0
    return th


def time_reversal_check(n: int, l: int) -> tuple[str, dict]:
    """theta^(l) conj(rho+-) theta^(l)dag against rho+- and rho-+."""
    _require_even_n(n)
    th = theta_matrix(n)
    s = (n - 1) / 2.0
    flip = max(
        np.max(np.abs(th @ S.conj() @ th.T + S)) for S in spin_matrices(s).vector()
    )
    if flip > 1e-12:
        raise AssertionError(f"theta does not flip the spin, residual {flip:.3e}")
    det = float(np.linalg.det(th))

    Pi, Pi_inv = spin_lift(n, th)
    kernel = overlap_kernel(n, l)
    elems_p, _ = rdm_frame(n, l, "plus")
    tr_elems = [Pi * B.bar() * Pi_inv for B in elems_p]
    verdict, r_fix, r_swap = _frame_verdict(n, l, tr_elems, kernel)
    verdict = INVARIANT if verdict == FIXES else verdict
    return verdict, {
        "time_reversal_fix": r_fix,
        "time_reversal_swap": r_swap,
        "theta_det": det,
        "spin_flip": flip,
    }


def cpt_report(n: int, l: int) -> CptReport:
    """All three checks at once; reflection restricts this to even lengths."""
    conj_verdict, res = conjugation_check(n, l)
    refl_verdict, r = reflection_check(n, l)
    res.update(r)
    tr_verdict, r = time_reversal_check(n, l)
    res.update(r)
    return CptReport(n, l, conj_verdict, refl_verdict, tr_verdict, res)


def _flip_first_axis(B: CliffordElement) -> CliffordElement:
    """Conjugation by the determinant -1 reflection of the first coordinate."""
    return CliffordElement(B.n, {b: -c if b & 1 else c for b, c in B.coef.items()})


def on_site_breaking_check(n: int, l: int, rotations: int = 5,
                           seed: int = 0) -> VerificationReport:
    """Rotation invariance, reflection pairing, and entanglement equality.

    (a) random special rotations fix each state; (b) the determinant -1 axis
    flip maps the states to each other (to itself for odd n); (c) the two
    states have identical spectra.
    """
    rng = np.random.default_rng(seed)
    kernel = overlap_kernel(n, l)
    boundaries = ("plus", "minus") if n % 2 == 0 else ("omega",)
    frames = {b: rdm_frame(n, l, b) for b in boundaries}

    r_rot = 0.0
    for _ in range(rotations):
        A = rng.standard_normal((n, n))
        Q, R = np.linalg.qr(A)
        Q = Q * np.sign(np.diag(R))
        if np.linalg.det(Q) < 0:
            Q[:, [0, 1]] = Q[:, [1, 0]]
        Pi, Pi_inv = spin_lift(n, Q)
        for b in boundaries:
            elems, c = frames[b]
            image = [Pi * B * Pi_inv for B in elems]
            r_rot = max(r_rot, frame_operator_distance(n, l, image, c, elems, c, kernel))

    src = boundaries[0]
    dst = boundaries[-1]  # partner state for even n, the same state for odd
    elems, c = frames[src]
    flipped = [_flip_first_axis(B) for B in elems]
    elems_d, c_d = frames[dst]
    r_flip = frame_operator_distance(n, l, flipped, c, elems_d, c_d, kernel)

    spec_a = rdm_eigen_by_grade(n, l, src, kernel=kernel)
    spec_b = rdm_eigen_by_grade(n, l, dst, kernel=kernel)
    r_spec = 0.0
    spectra_match = len(spec_a) == len(spec_b)
    if spectra_match:
        for (ga, mua, ma), (gb, mub, mb) in zip(spec_a, spec_b):
            spectra_match = spectra_match and ga == gb and ma == mb
            r_spec = max(r_spec, abs(mua - mub))

    passed = r_rot < VERDICT_TOL and r_flip < VERDICT_TOL and spectra_match and r_spec < 1e-10
    numbers = {
        "rotation_residual": r_rot,
        "flip_residual": r_flip,
        "spectrum_deviation": r_spec,
        "rotations": float(rotations),
    }
    return VerificationReport(f"on_site_breaking_check(n={n}, l={l})", passed, numbers)
