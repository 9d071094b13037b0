"""Dimension bookkeeping for so(n) and su(2) representations.

Clebsch-Gordan dimension sums, Casimir-based isotypic decompositions of
V tensor V, and the branching of wedge powers hit with another vector
factor, cross-checked between counting and spectra.
"""

import numpy as np

from cliffchain import (
    clebsch_gordan_dims,
    isotypic_decomposition,
    pieri_dimension_check,
    so_generator,
    so_n_casimir,
)

# su(2): spins mu x nu decompose into |mu-nu| .. mu+nu
for mu, nu in ((0.5, 0.5), (1.0, 1.0), (1.5, 2.0)):
    spins = clebsch_gordan_dims(mu, nu)
    total = sum(int(2 * j + 1) for j in spins)
    print(f"{mu} x {nu} -> {spins}, dims sum {total}")


def pair_rep(n):
    def apply(i, j):
        L = so_generator(n, i, j)
        return np.kron(L, np.eye(n)) + np.kron(np.eye(n), L)

    return apply


# so(n) on V x V: trivial + adjoint + traceless symmetric
for n in (3, 5):
    rep = isotypic_decomposition(so_n_casimir(n, pair_rep(n)))
    print(f"so({n}) V x V blocks:", sorted(d for _, d in rep.blocks))

# wedge^k V x V dimension bookkeeping
for n, k in ((4, 2), (5, 1), (6, 3)):
    lhs, parts = pieri_dimension_check(n, k)
    print(f"n={n} k={k}: {lhs} = {parts[0]} + {parts[1]} + {parts[2]}")
