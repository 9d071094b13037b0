"""Frustration-free chains and the parent property.

Assembles two-site interactions into sparse open chains, certifies
kernel bases, and checks that the chain kernel is exactly the span of
the boundary-element states (dimension 2^(n-1)). Also runs the two
standard su(2) reference models.
"""

from cliffchain import (
    aklt_su2,
    chain_hamiltonian,
    frustration_free_check,
    kernel_basis,
    majumdar_ghosh,
    mps_ground_space,
    parent_check,
    so_n_aklt,
)

# parent property: chain kernel == state space, dimension 2^(n-1)
for n, l in ((3, 4), (4, 4), (4, 5)):
    report = parent_check(n, l)
    print(report.summary())

# the kernel dimension is length-independent once l is past n
G = mps_ground_space(4, 6)
print("n=4 l=6 state space dim:", G.shape[1])

# frustration-freeness certificate: chain ground energy is exactly the
# sum of per-term minima, kernel equals intersection of embedded kernels
report = frustration_free_check(so_n_aklt(3), 4)
print(report.summary())

# spin-1 chain: four ground states on four sites
H = chain_hamiltonian(aklt_su2(), 4)
print("spin-1 chain l=4 kernel dim:", kernel_basis(H.matrix).dim)

# dimer chain: kernel dimension alternates 5, 4, 5, 4
for l in (4, 5, 6, 7):
    H = chain_hamiltonian(majumdar_ghosh(), l)
    print(f"dimer chain l={l} kernel dim:", kernel_basis(H.matrix).dim)
