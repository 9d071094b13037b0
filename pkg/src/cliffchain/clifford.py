"""Exact arithmetic in the real Clifford algebra C_n.

Generators gamma_1..gamma_n obey  gamma_i gamma_j + gamma_j gamma_i = 2 delta_ij.
Basis monomials gamma_I = gamma_{i_1}...gamma_{i_k} (i_1 < ... < i_k) are encoded
as bitmasks, so products reduce to XOR plus a sign from counting transpositions.
Elements are sparse complex combinations of monomials.  Everything here is pure
and allocation-cheap; the matrix realization exists only as an independent
cross-check and for code that genuinely needs operators on C^D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

MAX_RANK = 16
PRUNE_TOL = 1e-14


def _check_rank(n: int) -> None:
    if not 1 <= n <= MAX_RANK:
        raise ValueError(f"rank n={n} outside supported range 1..{MAX_RANK}")


def reversal_sign(k: int) -> int:
    """Sign picked up by writing gamma_{i_k}..gamma_{i_1} in ascending order."""
    return -1 if (k * (k - 1) // 2) % 2 else 1


def realized_dim(n: int) -> int:
    """Dimension D = 2^floor(n/2) of the irreducible matrix realization."""
    return 1 << (n // 2)


@dataclass(frozen=True)
class GammaIndex:
    """One basis monomial gamma_I, I a subset of {1..n} stored as a bitmask."""

    n: int
    bits: int

    def __post_init__(self):
        _check_rank(self.n)
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits {self.bits:#x} out of range for n={self.n}")

    @classmethod
    def from_indices(cls, n: int, indices) -> "GammaIndex":
        bits = 0
        for i in indices:
            if not 1 <= i <= n:
                raise ValueError(f"generator index {i} out of range 1..{n}")
            if bits & (1 << (i - 1)):
                raise ValueError(f"repeated generator index {i}")
            bits |= 1 << (i - 1)
        return cls(n, bits)

    @property
    def grade(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)


def _merge_sign(ibits: int, jbits: int) -> int:
    """Sign of gamma_I gamma_J = sign * gamma_{I xor J}.

    Each generator j in J moves left past the generators of I above it;
    repeated generators then cancel via gamma_j^2 = 1 with no extra sign.
    """
    s = 0
    rest = jbits
    while rest:
        j = rest & -rest
        s += (ibits >> j.bit_length()).bit_count()
        rest ^= j
    return -1 if s & 1 else 1


def gamma_mul(I: GammaIndex, J: GammaIndex) -> tuple[int, GammaIndex]:
    """Product of two basis monomials: gamma_I gamma_J = sign * gamma_K."""
    if I.n != J.n:
        raise ValueError("rank mismatch")
    return _merge_sign(I.bits, J.bits), GammaIndex(I.n, I.bits ^ J.bits)


def trace_pair(I: GammaIndex, J: GammaIndex) -> float:
    """Trace of gamma_I gamma_J: zero unless I = J, else +-D by grade mod 4."""
    if I.n != J.n:
        raise ValueError("rank mismatch")
    if I.bits != J.bits:
        return 0.0
    return float(reversal_sign(I.grade) * realized_dim(I.n))


@dataclass(frozen=True, eq=False)
class CliffordElement:
    """Sparse element of C_n: map bitmask -> complex coefficient.

    Treated as immutable; all operations return new elements with
    coefficients below PRUNE_TOL dropped.
    """

    n: int
    coef: dict = field(default_factory=dict)

    def __post_init__(self):
        _check_rank(self.n)
        pruned = {b: complex(c) for b, c in self.coef.items() if abs(c) > PRUNE_TOL}
        object.__setattr__(self, "coef", pruned)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "CliffordElement":
        return cls(n, {})

    @classmethod
    def one(cls, n: int, c: complex = 1.0) -> "CliffordElement":
        return cls(n, {0: c})

    @classmethod
    def gamma(cls, n: int, *indices) -> "CliffordElement":
        return cls(n, {GammaIndex.from_indices(n, indices).bits: 1.0})

    @classmethod
    def from_index(cls, idx: GammaIndex, c: complex = 1.0) -> "CliffordElement":
        return cls(idx.n, {idx.bits: c})

    # -- linear structure ---------------------------------------------

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        if self.n != other.n:
            raise ValueError("rank mismatch")
        out = dict(self.coef)
        for b, c in other.coef.items():
            out[b] = out.get(b, 0.0) + c
        return CliffordElement(self.n, out)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.n, {b: -c for b, c in self.coef.items()})

    def scale(self, c: complex) -> "CliffordElement":
        return CliffordElement(self.n, {b: c * v for b, v in self.coef.items()})

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            if self.n != other.n:
                raise ValueError("rank mismatch")
            out: dict = {}
            for bi, ci in self.coef.items():
                for bj, cj in other.coef.items():
                    s = _merge_sign(bi, bj)
                    k = bi ^ bj
                    out[k] = out.get(k, 0.0) + s * ci * cj
            return CliffordElement(self.n, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1.0 / c)

    # -- involutions ----------------------------------------------------

    def bar(self) -> "CliffordElement":
        """Complex conjugation of coefficients (algebra automorphism)."""
        return CliffordElement(self.n, {b: c.conjugate() for b, c in self.coef.items()})

    def star(self) -> "CliffordElement":
        """Adjoint: conjugate coefficients and reverse each monomial."""
        return CliffordElement(
            self.n,
            {b: c.conjugate() * reversal_sign(b.bit_count()) for b, c in self.coef.items()},
        )

    # -- inspection -----------------------------------------------------

    @property
    def coef_identity(self) -> complex:
        return self.coef.get(0, 0.0 + 0.0j)

    def grades(self) -> set:
        return {b.bit_count() for b in self.coef}

    def restrict_grades(self, keep) -> "CliffordElement":
        keep = set(keep)
        return CliffordElement(
            self.n, {b: c for b, c in self.coef.items() if b.bit_count() in keep}
        )

    def norm_max(self) -> float:
        return max((abs(c) for c in self.coef.values()), default=0.0)

    def hs_norm(self) -> float:
        """Frobenius norm of the realization: sqrt(D * sum |c_I|^2)."""
        return math.sqrt(realized_dim(self.n) * sum(abs(c) ** 2 for c in self.coef.values()))

    def is_zero(self, tol: float = PRUNE_TOL) -> bool:
        return self.norm_max() <= tol

    def __repr__(self):
        if not self.coef:
            return f"CliffordElement({self.n}, 0)"
        parts = []
        for b in sorted(self.coef):
            label = "1" if b == 0 else "g" + "".join(str(i + 1) for i in range(self.n) if b >> i & 1)
            parts.append(f"{self.coef[b]:+.6g}*{label}")
        return f"CliffordElement({self.n}, {' '.join(parts)})"


def trace(B: CliffordElement) -> complex:
    """Algebra trace, normalized so trace(1) = D = 2^floor(n/2)."""
    return realized_dim(B.n) * B.coef_identity


def hs_inner(A: CliffordElement, B: CliffordElement) -> complex:
    """Hilbert-Schmidt pairing trace(A* B)."""
    return trace(A.star() * B)


def dist(A: CliffordElement, B: CliffordElement) -> float:
    return (A - B).norm_max()


def gamma0(n: int) -> CliffordElement:
    """Normalized top monomial: gamma_1..gamma_n times a phase so gamma0^2 = 1.

    The phase is 1 for n = 0,1 (mod 4) and i for n = 2,3 (mod 4).
    """
    _check_rank(n)
    phase = 1.0 if n % 4 in (0, 1) else 1.0j
    return CliffordElement(n, {(1 << n) - 1: phase})


def projectors_pm(n: int) -> tuple[CliffordElement, CliffordElement]:
    """P_+- = (1 +- gamma0)/2."""
    g0 = gamma0(n)
    one = CliffordElement.one(n)
    return (one + g0).scale(0.5), (one - g0).scale(0.5)


def hodge_star(B: CliffordElement) -> CliffordElement:
    """Left multiplication by gamma0; exchanges grades k <-> n-k."""
    return gamma0(B.n) * B


def alpha(B: CliffordElement) -> CliffordElement:
    """Conjugation by gamma_1.  Inner automorphism of order two."""
    g1 = CliffordElement.gamma(B.n, 1)
    return g1 * B * g1


def transpose_antiauto(B: CliffordElement) -> CliffordElement:
    """Linear antiautomorphism t reversing monomials: t(gamma_I) = +-gamma_I."""
    return CliffordElement(
        B.n, {b: c * reversal_sign(b.bit_count()) for b, c in B.coef.items()}
    )


# ---------------------------------------------------------------------------
# matrix realization
# ---------------------------------------------------------------------------

_PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@dataclass(frozen=True)
class MatrixRealization:
    """Hermitian anticommuting unitaries realizing gamma_1..gamma_n on C^D."""

    n: int
    dim: int
    gammas: tuple

    def monomial(self, bits: int) -> np.ndarray:
        """Realized gamma_I, factors multiplied in ascending index order."""
        out = np.eye(self.dim, dtype=complex)
        for i in range(self.n):
            if bits >> i & 1:
                out = out @ self.gammas[i]
        return out


def _pauli_string(m: int, k: int, op: np.ndarray) -> np.ndarray:
    """Z x ... x Z (k times) x op x 1 x ... on m qubit factors."""
    out = np.ones((1, 1), dtype=complex)
    for q in range(m):
        if q < k:
            f = _PAULI_Z
        elif q == k:
            f = op
        else:
            f = np.eye(2, dtype=complex)
        out = np.kron(out, f)
    return out


def matrix_rep(n: int) -> MatrixRealization:
    """Jordan-Wigner style realization.

    Even n = 2m: alternating X/Y with Z strings on m qubits.
    Odd n = 2m+1: the even-2m set plus gamma_n proportional to the product
    gamma_1..gamma_2m, signed so that the realized gamma0 is +1 (this picks
    the P_+ sector of C_n).
    """
    if not 2 <= n <= MAX_RANK:
        raise ValueError(f"matrix realization supports 2 <= n <= {MAX_RANK}")
    m = n // 2
    gammas = []
    for k in range(m):
        gammas.append(_pauli_string(m, k, _PAULI_X))
        gammas.append(_pauli_string(m, k, _PAULI_Y))
    if n % 2:
        top = np.eye(1 << m, dtype=complex)
        for g in gammas:
            top = top @ g
        cand = (1.0j**m) * top
        # fix the sign so the full product gamma_1..gamma_n realizes gamma0 -> +1
        phase = 1.0 if n % 4 == 1 else 1.0j
        full = phase * top @ cand
        s = full[0, 0].real
        if abs(abs(s) - 1.0) > 1e-12:
            raise AssertionError("realization sanity: gamma0 image not a sign")
        if s < 0:
            cand = -cand
        gammas.append(cand)
    return MatrixRealization(n, 1 << m, tuple(gammas))


def realize(B: CliffordElement, rep: MatrixRealization | None = None) -> np.ndarray:
    """Image of B under the matrix realization (odd n: the P_+ sector)."""
    if rep is None:
        rep = matrix_rep(B.n)
    if rep.n != B.n:
        raise ValueError("rank mismatch")
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for b, c in B.coef.items():
        out += c * rep.monomial(b)
    return out
