"""Truncated power series, inner products, and reproducing kernels.

Everything downstream works with degree-N Taylor polynomials as stand-ins
for analytic functions on the unit disk. This script walks the basic moves:
coefficients in, point evaluations out, and the kernel trick that turns
evaluation into an inner product.
"""

import numpy as np

from hardyliou import (
    BoundaryGrid,
    TaylorPolynomial,
    derivative,
    derivative_kernel,
    inner_product,
    norm,
    outer_from_modulus,
    szego_kernel,
    to_boundary,
    unit_circle_points,
)

# A polynomial is its coefficient list, lowest degree first.
g = TaylorPolynomial([1.0, 0.5, 0.25])
print("g(z) = 1 + 0.5 z + 0.25 z^2")
print("g(0.3) =", g(0.3))

# The inner product pairs coefficients; monomials are orthonormal.
h = TaylorPolynomial([0.0, 1.0])
print("<g, z> =", inner_product(g, h), "(the z-coefficient of g)")
print("||g||  =", norm(g))

# Szego kernel at w: pairing any g against it evaluates g at w.
w = 0.4 + 0.2j
K = szego_kernel(w, 32)
print("\nkernel reproduction: <g, K_w> - g(w) =", inner_product(g, K) - g(w))

# The derivative kernel reproduces g'(w) the same way.
K1, K1_norm_sq = derivative_kernel(w, 32)
print("derivative kernel:   <g, K'_w> - g'(w) =",
      inner_product(g, K1) - derivative(g)(w))

# Boundary samples connect series space to the circle.
values = to_boundary(g, 16)
points = unit_circle_points(16)
print("\nmax sampling error on the circle:",
      np.max(np.abs(values.values - np.array([g(z) for z in points]))))

# Given |f| on the circle, recover the zero-free analytic function with
# that modulus and positive value at the origin.
samples = np.abs(to_boundary(TaylorPolynomial([1.0, -0.5]), 256).values)
rebuilt = outer_from_modulus(BoundaryGrid(samples.astype(complex)), order=32)
print("outer reconstruction of |1 - z/2|, coefficients:",
      np.round(rebuilt.coeffs[:3], 12))
