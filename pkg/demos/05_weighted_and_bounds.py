"""Weighted composition variants: boundedness, self-adjointness, HS norms.

The weighted operator sends g to f * phi' * (g' o phi). Whether it is
bounded, compact, or self-adjoint is visible in closed-form expressions
over the disk; this script evaluates the certificates the library offers.
"""

import numpy as np

from hardyliou import (
    BlaschkeProduct,
    TaylorPolynomial,
    blaschke_ratio_profile,
    boundedness_bound,
    hs_norm,
    self_adjoint_symbol_relation,
    smirnov_decompose,
    modulus_identity_defect,
    to_boundary,
)

one = TaylorPolynomial([1.0])
half = TaylorPolynomial([0.0, 0.5])
ident = TaylorPolynomial([0.0, 1.0])

# Contractive phi keeps the growth expression bounded; phi = z does not.
for label, phi in (("phi = z/2", half), ("phi = z  ", ident)):
    result = boundedness_bound(one, phi)
    print(f"{label}: sup = {result.supremum:.6g}, diverges = {result.diverges}")

# A calibrated family is exactly self-adjoint; both residuals vanish.
c = 2.0
f_sa = TaylorPolynomial([0.0, c])
phi_sa = TaylorPolynomial([0.0, 1.0])
defect = self_adjoint_symbol_relation(f_sa, phi_sa)
print("\nself-adjoint pair: symbol residual", defect.symbol_residual,
      "kernel defect", defect.kernel_defect)

# The symbol relation alone is necessary but not sufficient: this pair
# satisfies it pointwise yet fails on kernels.
defect2 = self_adjoint_symbol_relation(
    TaylorPolynomial([0.0, -2.0j]), TaylorPolynomial([0.0, 1.0j])
)
print("imposter pair:     symbol residual", defect2.symbol_residual,
      "kernel defect", defect2.kernel_defect)

# Hilbert-Schmidt norm two ways: Frobenius sum vs boundary quadrature.
hs = hs_norm(one, half)
print("\nHS norm squared, Frobenius:", hs.frobenius_sq,
      "quadrature:", hs.quadrature_sq, "(exact 20/27 =", 20 / 27, ")")

# Blaschke products are the extremal symbols: a single factor runs along
# the hyperbolic metric exactly, products approach it near the boundary.
b = BlaschkeProduct((0.5, 0.0))
profile = blaschke_ratio_profile(b)
print("\ntwo-factor Blaschke deviation from the hyperbolic ratio:")
for r, v in list(zip(profile.radii, profile.values))[::4]:
    print(f"  r = {r:.3f}: {v:.3e}")

# Boundary factorization: split f into zero-free outer times inner part
# with |a|^2 + |b|^2 = 1 on the circle.
fb = to_boundary(TaylorPolynomial([1.0, -0.5]).truncated(128), 1024)
pair = smirnov_decompose(fb, 128)
print("\nSmirnov modulus identity defect:",
      modulus_identity_defect(pair.a, pair.b, 1024))
