"""Truncated Liouville-type operators and their adjoints.

``A_f g = f * g'`` acts on the truncated Hardy space through its matrix in
the monomial basis: column ``n`` holds the coefficients of ``n * f * z^(n-1)``
cut at the truncation order.  The weighted variant ``A_{f,phi} g =
f * phi' * (g' o phi)`` has column ``n`` equal to
``n * f * phi' * phi^(n-1)``.

Two independent adjoint routes are kept side by side on purpose: the
conjugate transpose of the truncated matrix (the oracle) and the boundary
formula.  Tests certify that they agree, which is what makes the closed-form
kernel identities in the rest of the package trustworthy.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    AliasingError,
    CompositionWarning,
    DiskDomainError,
    InvalidIndexError,
    SingularSymbolError,
)
from .series import (
    BoundaryGrid,
    KernelSpec,
    TaylorPolynomial,
    DEFAULT_ORDER,
    antiderivative,
    default_boundary_size,
    derivative,
    kernel,
    multiply,
    outer_from_modulus,
    project_h2,
    unit_circle_points,
)

# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix of a truncated operator in the monomial basis.

    ``entries[m, n]`` is the coefficient of ``z^m`` in the image of ``z^n``.
    ``kind`` tags the construction route: liouville, scaled, or weighted.
    """

    entries: np.ndarray
    kind: str

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.complex128, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError("entries must form a nonempty square matrix")
        if not np.all(np.isfinite(arr)):
            raise ValueError("entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        if self.kind not in ("liouville", "scaled", "weighted"):
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def order(self) -> int:
        return self.entries.shape[0] - 1

    def apply(self, h: TaylorPolynomial) -> TaylorPolynomial:
        """Matrix-vector action on a series cut to the matrix order."""
        vec = h.truncated(self.order).coeffs
        return TaylorPolynomial(self.entries @ vec)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "kind": self.kind,
            "entries": [
                [[float(e.real), float(e.imag)] for e in row] for row in self.entries
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "OperatorMatrix":
        entries = [
            [complex(re, im) for re, im in row] for row in data["entries"]
        ]
        mat = OperatorMatrix(np.array(entries), data["kind"])
        if mat.order != data["order"]:
            raise ValueError("declared order does not match the entries")
        return mat


def _place_column(entries: np.ndarray, n: int, shift: int, col: np.ndarray) -> None:
    # write `col` into column n starting at row `shift`, clipped to the order
    hi = min(entries.shape[0], shift + col.size)
    if hi > shift:
        entries[shift:hi, n] = col[: hi - shift]


def liouville_matrix(f: TaylorPolynomial, order: int = DEFAULT_ORDER) -> OperatorMatrix:
    """Matrix of ``g -> f * g'``: column ``n`` is ``n * f`` shifted by ``n-1``."""
    entries = np.zeros((order + 1, order + 1), dtype=np.complex128)
    for n in range(1, order + 1):
        _place_column(entries, n, n - 1, n * f.coeffs)
    return OperatorMatrix(entries, "liouville")


def scaled_liouville_matrix(
    f: TaylorPolynomial, a: complex, order: int = DEFAULT_ORDER
) -> OperatorMatrix:
    """Matrix of ``g -> a * f * g'(a z)``: column ``n`` is ``n a^n f`` shifted.

    Same operator as the weighted construction with ``phi = a z``; built
    directly so the two routes can be cross-checked column by column.
    """
    entries = np.zeros((order + 1, order + 1), dtype=np.complex128)
    a = complex(a)
    power = a
    for n in range(1, order + 1):
        _place_column(entries, n, n - 1, n * power * f.coeffs)
        power *= a
    return OperatorMatrix(entries, "scaled")


def weighted_liouville_matrix(
    f: TaylorPolynomial, phi: TaylorPolynomial, order: int = DEFAULT_ORDER
) -> OperatorMatrix:
    """Matrix of ``g -> f * phi' * (g' o phi)``.

    Column ``n`` is the truncation of ``n * f * phi' * phi^(n-1)``; powers of
    ``phi`` are accumulated by truncated multiplication.
    """
    if abs(phi(0.0)) >= 1.0:
        warnings.warn(
            "phi(0) lies outside the open unit disk; composition leaves the "
            "Hardy space",
            CompositionWarning,
            stacklevel=2,
        )
    entries = np.zeros((order + 1, order + 1), dtype=np.complex128)
    weight = multiply(f, derivative(phi), order)
    power = TaylorPolynomial(np.ones(1))
    for n in range(1, order + 1):
        col = multiply(weight, power, order)
        entries[:, n] = n * col.coeffs
        power = multiply(power, phi, order)
    return OperatorMatrix(entries, "weighted")


def adjoint_matrix(matrix: OperatorMatrix) -> OperatorMatrix:
    """Conjugate transpose; the adjoint oracle for every identity here."""
    return OperatorMatrix(matrix.entries.conj().T, matrix.kind)


def hermitian_defect(matrix: OperatorMatrix) -> float:
    """Largest entrywise deviation from self-adjointness, ``max|A - A*|``."""
    return float(np.max(np.abs(matrix.entries - matrix.entries.conj().T)))


# ---------------------------------------------------------------------------
# boundary route for the plain adjoint
# ---------------------------------------------------------------------------


def adjoint_apply_boundary(
    f: TaylorPolynomial,
    h: TaylorPolynomial,
    order: int = DEFAULT_ORDER,
    size: int | None = None,
) -> TaylorPolynomial:
    """Adjoint action computed on the circle instead of through the matrix.

    On ``|z| = 1`` the adjoint is the analytic projection of
    ``conj(f(z)/z) * (z h(z))' - conj(f'(z)) * h(z)``, and
    ``conj(f(z)/z) = conj(f(z)) * z`` there.  All factors are trigonometric
    polynomials, so with ``size >= 4 * (order + 1)`` the projection onto
    modes ``0..order`` is exact up to rounding.
    """
    if h.order > order:
        raise ValueError("h must have order at most the truncation order")
    if size is None:
        size = default_boundary_size(order)
    if size < 4 * (order + 1):
        raise AliasingError(
            f"grid of {size} points risks aliasing at order {order}; "
            f"need at least {4 * (order + 1)}"
        )
    z = unit_circle_points(size)
    fv = f(z)
    fpv = derivative(f)(z)
    hv = h(z)
    hpv = derivative(h)(z)
    combo = np.conj(fv) * z * (hv + z * hpv) - np.conj(fpv) * hv
    return project_h2(BoundaryGrid(combo), order)


def adjoint_on_derivative_kernel(
    f: TaylorPolynomial,
    w: complex,
    j: int,
    order: int = DEFAULT_ORDER,
    leibniz: bool = True,
) -> TaylorPolynomial:
    """Closed-form adjoint action on the ``(j-1)``-th derivative kernel.

    Returns ``sum_{l=0}^{j-1} B(l) * conj(f^(l)(w)) * kernel(w, j-l)`` where
    ``B(l)`` is the binomial ``C(j-1, l)`` for the default Leibniz weighting
    and ``1`` otherwise.  Differentiating the product ``f * h'`` requires the
    binomial weights, and the conjugate-transpose oracle confirms it: the two
    variants first differ at ``j = 3``, where only the weighted one matches.
    The unweighted variant is kept for comparison.
    """
    if j < 1:
        raise InvalidIndexError("j must be at least 1")
    if abs(complex(w)) >= 1.0:
        raise DiskDomainError("the kernel point must lie inside the unit disk")
    result = np.zeros(order + 1, dtype=np.complex128)
    deriv = f
    for ell in range(j):
        weight = np.conj(deriv(w))
        if leibniz:
            weight *= math.comb(j - 1, ell)
        result += weight * kernel(KernelSpec(point=w, order=j - ell), order).coeffs
        deriv = derivative(deriv)
    return TaylorPolynomial(result)


# ---------------------------------------------------------------------------
# bounded-quotient decomposition and the operator domain
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmirnovPair:
    """Quotient representation ``f = b / a`` with ``a`` outer.

    ``normalized`` records whether ``|a|^2 + |b|^2 = 1`` held on the boundary
    grid (within 1e-10) when the pair was built.
    """

    a: TaylorPolynomial
    b: TaylorPolynomial
    normalized: bool

    def __post_init__(self):
        a0 = self.a.coeffs[0]
        if not (a0.real > 0 and abs(a0.imag) <= 1e-12 * a0.real):
            raise ValueError("the outer factor must satisfy a(0) real positive")


def smirnov_decompose(f_boundary: BoundaryGrid, order: int) -> SmirnovPair:
    """Canonical pair ``(a, b)`` for boundary samples of a bounded symbol.

    ``a`` is the outer function with modulus ``(1 + |f|^2)^(-1/2)`` and
    ``b`` is the analytic projection of ``f * a``.
    """
    fv = f_boundary.values
    modulus = 1.0 / np.sqrt(1.0 + np.abs(fv) ** 2)
    a = outer_from_modulus(BoundaryGrid(modulus), order)
    av = np.asarray(a(unit_circle_points(f_boundary.size)))
    b = project_h2(BoundaryGrid(fv * av), order)
    defect = modulus_identity_defect(a, b, f_boundary.size)
    return SmirnovPair(a=a, b=b, normalized=bool(defect <= 1e-10))


def modulus_identity_defect(
    a: TaylorPolynomial, b: TaylorPolynomial, size: int
) -> float:
    """Max boundary deviation ``| |a|^2 + |b|^2 - 1 |`` on the ``size``-grid."""
    z = unit_circle_points(size)
    av = np.asarray(a(z))
    bv = np.asarray(b(z))
    return float(np.max(np.abs(np.abs(av) ** 2 + np.abs(bv) ** 2 - 1.0)))


def domain_membership_check(
    a: TaylorPolynomial,
    b: TaylorPolynomial,
    h: TaylorPolynomial,
    c: complex,
    order: int | None = None,
    size: int | None = None,
) -> float:
    """Residual of the domain characterization ``g = c + J(a h)``.

    Builds the candidate ``g``, then measures ``||f g' - b h||`` with
    ``f = b/a`` through boundary products (root mean square over the grid).
    Small residuals certify that ``g`` lies in the operator's natural domain
    with ``f g' = b h``.
    """
    if a.coeffs[0] == 0:
        raise SingularSymbolError("the outer factor must not vanish at 0")
    ah = multiply(a, h, order)
    g = antiderivative(ah)
    shifted = np.array(g.coeffs)
    shifted[0] = complex(c)
    g = TaylorPolynomial(shifted)
    gp = derivative(g)
    degree = max(gp.order, b.order + h.order, a.order)
    if size is None:
        size = default_boundary_size(degree)
    if size < 2 * degree + 2:
        raise AliasingError(
            f"grid of {size} points cannot resolve degree {degree}"
        )
    z = unit_circle_points(size)
    av = np.asarray(a(z))
    resid = (np.asarray(b(z)) / av) * np.asarray(gp(z)) - np.asarray(
        b(z)
    ) * np.asarray(h(z))
    return float(np.sqrt(np.mean(np.abs(resid) ** 2)))
