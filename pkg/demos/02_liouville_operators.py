"""The multiply-then-differentiate operator and its adjoint.

A g = f * g' acts on truncated series as a small dense matrix. For affine
f the matrix is upper bidiagonal and its spectrum is exactly {a1 * n}.
The adjoint can be formed two independent ways; they agree to near machine
precision, which is the package's main internal cross-check.
"""

import numpy as np

from hardyliou import (
    TaylorPolynomial,
    adjoint_apply_boundary,
    adjoint_matrix,
    adjoint_on_derivative_kernel,
    derivative_kernel,
    liouville_matrix,
)

N = 40

# f(z) = 0.1 + 0.9 z gives eigenvalues 0, 0.9, 1.8, ...
f = TaylorPolynomial([0.1, 0.9])
A = liouville_matrix(f, N)
eigs = np.sort(np.linalg.eigvals(A.entries).real)
print("first five eigenvalues:", np.round(eigs[:5], 12))
print("exact values:          ", [0.9 * n for n in range(5)])

# Route one: conjugate-transpose of the matrix.
# Route two: a boundary-integral formula that never builds the matrix.
h = TaylorPolynomial(0.6 ** np.arange(N + 1))
via_matrix = adjoint_matrix(A).apply(h)
via_boundary = adjoint_apply_boundary(f, h, N, 4 * (N + 1))
print("\nadjoint route disagreement:",
      np.linalg.norm(via_matrix.coeffs - via_boundary.coeffs))

# On derivative kernels the adjoint has a closed form with binomial
# weights; compare it against the matrix route at a few points.
quadratic = TaylorPolynomial([0.0, 0.0, 1.0])
A2_star = adjoint_matrix(liouville_matrix(quadratic, N))
for w in (0.3, -0.2 + 0.4j):
    closed = adjoint_on_derivative_kernel(quadratic, w, 2, N)
    oracle = A2_star.apply(derivative_kernel(w, N)[0])
    print(f"kernel action at w={w}: closed-form vs matrix",
          np.linalg.norm(closed.coeffs - oracle.coeffs))
