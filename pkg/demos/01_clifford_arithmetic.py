"""Gamma-word arithmetic and its matrix model.

Walks through the sparse bitmask representation of Clifford algebra
elements: products and signs, the trace functional, the top element
gamma_0 and the induced projectors, and the check that the abstract
product agrees with the 2^(n/2)-dimensional matrix realization.
"""

import numpy as np

from cliffchain import (
    CliffordElement,
    dist,
    gamma0,
    projectors_pm,
    realize,
    trace,
)

n = 5

# words multiply by xor on bitmasks, the sign comes from counting swaps
a = CliffordElement.gamma(n, 1, 2)
b = CliffordElement.gamma(n, 2, 3)
print("g12 * g23 =", a * b)
print("g12 * g12 =", a * a)

# the trace kills every word except the identity component
x = CliffordElement.one(n, 0.5) + CliffordElement.gamma(n, 1, 4).scale(2.0)
print("trace(x) =", trace(x))

# gamma_0 squares to one and commutes or anticommutes by grade
g0 = gamma0(n)
print("gamma_0^2 - 1 =", dist(g0 * g0, CliffordElement.one(n)))

P_plus, P_minus = projectors_pm(n)
print("P+ idempotency:", dist(P_plus * P_plus, P_plus))
print("P+ P- :", dist(P_plus * P_minus, CliffordElement.zero(n)))

# the matrix model reproduces products entry by entry
left = realize(a * b)
right = realize(a) @ realize(b)
print("matrix model dev:", np.abs(left - right).max())

# anticommutation relations of the generators, realized
for i in (1, 3):
    gi = realize(CliffordElement.gamma(n, i))
    gj = realize(CliffordElement.gamma(n, i + 1))
    anti = gi @ gj + gj @ gi
    print(f"{{g{i}, g{i+1}}} max entry:", np.abs(anti).max())
