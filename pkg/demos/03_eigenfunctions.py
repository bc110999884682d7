"""Eigenfunctions: exponentials, polynomial-weighted families, zero spaces.

Three constructions, each checked against the operator matrix:
exp-type eigenfunctions built from zero-free symbols, the z^m families
where the adjoint acts with an index shift, and the finite-dimensional
kernels pinned to the zeros of f.
"""

import math

import numpy as np

from hardyliou import (
    TaylorPolynomial,
    adjoint_matrix,
    exp_eigenfunction,
    flow_check,
    hk_eigenfunction,
    integrate_ode,
    liouville_matrix,
    zero_eigenspace,
)

N = 48

# For constant f = 1 the eigenfunction at lambda is exp(lambda z).
phi = exp_eigenfunction(TaylorPolynomial([1.0]), 0.7, N)
expected = [0.7 ** n / math.factorial(n) for n in range(5)]
print("exp eigenfunction leading coefficients:", np.round(phi.coeffs[:5], 10))
print("lambda^n / n!                         :", np.round(expected, 10))

A = liouville_matrix(TaylorPolynomial([1.0]), N)
applied = A.entries @ phi.coeffs
print("||A phi - 0.7 phi|| below the truncation row:",
      np.linalg.norm((applied - 0.7 * phi.coeffs)[:-1]))

# z^m symbols: the adjoint shifts indices, giving explicit eigenfunctions.
h = hk_eigenfunction(2, 1, 1.0 + 1.0j, N)
A2s = adjoint_matrix(liouville_matrix(TaylorPolynomial([0.0, 0.0, 1.0]), N))
res = np.linalg.norm(A2s.apply(h).coeffs[: N - 1]
                     - ((1.0 + 1.0j) * h.coeffs)[: N - 1])
print("z^2 family adjoint residual:", res)

# Each zero of f of multiplicity m contributes m independent functions
# annihilated by A; here f = (z - 1/2)^2.
basis = zero_eigenspace([(0.5, 2)], 40)
Astar = adjoint_matrix(liouville_matrix(TaylorPolynomial([0.25, -1.0, 1.0]), 40))
for k, b in enumerate(basis):
    rel = np.linalg.norm(Astar.entries @ b.coeffs) / np.linalg.norm(b.coeffs)
    print(f"adjoint annihilation of zero-space function {k}:", rel)

# The flow relation ties eigenpairs to actual trajectories:
# phi(gamma(t)) = phi(gamma(0)) exp(lambda t) along orbits of f.
f = TaylorPolynomial([1.0])
traj = integrate_ode(f, -0.5, 1.0, 1e-3)
drift = flow_check(f, exp_eigenfunction(f, 0.7, N), 0.7, traj)
print("flow relation drift along an orbit of f = 1:", drift)
