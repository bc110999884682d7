"""Trajectories, occupation kernels, and the adjoint identities they satisfy.

An occupation kernel integrates point evaluation along a trajectory: its
coefficients are the moments ``c_n = integral conj(theta(t))^n dt``.  For a
trajectory of ``zdot = f(z)`` the adjoint of the Liouville operator sends the
occupation kernel to a difference of evaluation kernels at the endpoints --
the fundamental theorem of calculus in kernel form.  These residuals are the
backbone of the data-driven identification in :mod:`hardyliou.dmd`.
"""

from __future__ import annotations

import csv
import hashlib
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    CompositionOutOfDiskError,
    DiskDomainError,
    DiskExitError,
    InsufficientDataError,
    TrajectoryIngestionError,
    TrajectoryMismatchWarning,
)
from .operators import (
    adjoint_matrix,
    liouville_matrix,
    weighted_liouville_matrix,
)
from .series import TaylorPolynomial, DEFAULT_ORDER, szego_kernel

DEFAULT_MARGIN = 1e-3


@dataclass(frozen=True)
class Trajectory:
    """Strictly increasing times paired with points inside the unit disk."""

    times: np.ndarray
    points: np.ndarray
    margin: float = DEFAULT_MARGIN
    digest: str | None = None

    def __post_init__(self):
        times = np.array(self.times, dtype=np.float64, copy=True).reshape(-1)
        points = np.array(self.points, dtype=np.complex128, copy=True).reshape(-1)
        if times.size != points.size or times.size == 0:
            raise ValueError("times and points must be nonempty and aligned")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(points))):
            raise ValueError("samples must be finite")
        if times.size > 1 and np.min(np.diff(times)) <= 0:
            raise ValueError("times must be strictly increasing")
        limit = 1.0 - self.margin
        radii = np.abs(points)
        if np.max(radii) > limit:
            worst = int(np.argmax(radii))
            raise DiskDomainError(
                f"sample {worst} has |z| = {radii[worst]:.6g} > {limit:.6g}"
            )
        times.setflags(write=False)
        points.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "points", points)

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])

    @property
    def r_max(self) -> float:
        return float(np.max(np.abs(self.points)))

    @property
    def uniform(self) -> bool:
        if self.times.size < 3:
            return True
        gaps = np.diff(self.times)
        return bool(np.max(gaps) - np.min(gaps) <= 1e-9 * np.max(gaps))

    def content_digest(self) -> str:
        """SHA-256 of the canonical CSV serialization (or of the source file)."""
        if self.digest is not None:
            return self.digest
        return hashlib.sha256(_csv_bytes(self)).hexdigest()


@dataclass(frozen=True)
class OccupationKernel:
    """Moment series of a trajectory plus the quadrature that produced it."""

    series: TaylorPolynomial
    source: Trajectory
    quadrature: str


# ---------------------------------------------------------------------------
# CSV interchange
# ---------------------------------------------------------------------------

_CSV_HEADER = ["t", "re", "im"]


def _csv_bytes(trajectory: Trajectory) -> bytes:
    lines = [",".join(_CSV_HEADER)]
    for t, z in zip(trajectory.times, trajectory.points):
        lines.append(f"{t:.17g},{z.real:.17g},{z.imag:.17g}")
    return ("\n".join(lines) + "\n").encode()


def write_trajectory_csv(trajectory: Trajectory, path) -> None:
    """Serialize with 17 significant digits so doubles round-trip exactly."""
    with open(path, "wb") as handle:
        handle.write(_csv_bytes(trajectory))


def read_trajectory_csv(path, margin: float = DEFAULT_MARGIN) -> Trajectory:
    """Parse and validate a ``t,re,im`` file; errors cite the offending row."""
    with open(path, "rb") as handle:
        raw = handle.read()
    digest = hashlib.sha256(raw).hexdigest()
    rows = list(csv.reader(raw.decode("utf-8").splitlines()))
    if not rows or [cell.strip() for cell in rows[0]] != _CSV_HEADER:
        raise TrajectoryIngestionError(
            f"{path}: first row must be the header 't,re,im'"
        )
    times, points = [], []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise TrajectoryIngestionError(f"{path}: row {i} must have 3 fields")
        try:
            t, re, im = (float(cell) for cell in row)
        except ValueError as exc:
            raise TrajectoryIngestionError(f"{path}: row {i}: {exc}") from exc
        z = complex(re, im)
        if abs(z) > 1.0 - margin:
            raise TrajectoryIngestionError(
                f"{path}: row {i} lies outside the disk (|z| = {abs(z):.6g})"
            )
        if times and t <= times[-1]:
            raise TrajectoryIngestionError(
                f"{path}: row {i} breaks strict time ordering"
            )
        times.append(t)
        points.append(z)
    if not times:
        raise TrajectoryIngestionError(f"{path}: no data rows")
    return Trajectory(
        times=np.array(times), points=np.array(points), margin=margin, digest=digest
    )


# ---------------------------------------------------------------------------
# integration and quadrature
# ---------------------------------------------------------------------------


def integrate_ode(
    f: TaylorPolynomial,
    z0: complex,
    t_final: float,
    dt: float,
    margin: float = DEFAULT_MARGIN,
) -> Trajectory:
    """Classical fixed-step RK4 for ``zdot = f(z)`` from ``z0`` to ``t_final``.

    The step count is rounded to an even number so the samples feed straight
    into Simpson quadrature.  Leaving ``|z| > 1 - margin`` aborts with the
    exit time; solutions of polynomial fields can blow up in finite time, so
    this is a hard error rather than a clamp.
    """
    if not (t_final > 0 and dt > 0):
        raise ValueError("t_final and dt must be positive")
    z0 = complex(z0)
    limit = 1.0 - margin
    if abs(z0) > limit:
        raise DiskDomainError(f"|z0| = {abs(z0):.6g} exceeds {limit:.6g}")
    steps = max(2, round(t_final / dt))
    if steps % 2:
        steps += 1
    h = t_final / steps
    coeffs = [complex(c) for c in f.coeffs[::-1]]

    def field(z: complex) -> complex:
        acc = 0j
        for c in coeffs:
            acc = acc * z + c
        return acc

    times = np.linspace(0.0, t_final, steps + 1)
    points = np.empty(steps + 1, dtype=np.complex128)
    points[0] = z = z0
    for k in range(steps):
        k1 = field(z)
        k2 = field(z + 0.5 * h * k1)
        k3 = field(z + 0.5 * h * k2)
        k4 = field(z + h * k3)
        z = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if abs(z) > limit:
            raise DiskExitError(
                f"trajectory left |z| <= {limit:.6g} at t = {times[k + 1]:.6g}",
                exit_time=float(times[k + 1]),
            )
        points[k + 1] = z
    return Trajectory(times=times, points=points, margin=margin)


def _quadrature_weights(trajectory: Trajectory) -> tuple[np.ndarray, str]:
    times = trajectory.times
    if times.size < 3:
        raise InsufficientDataError("quadrature needs at least 3 samples")
    intervals = times.size - 1
    if trajectory.uniform and intervals % 2 == 0:
        h = trajectory.duration / intervals
        weights = np.full(times.size, 2.0)
        weights[1::2] = 4.0
        weights[0] = weights[-1] = 1.0
        return weights * (h / 3.0), "simpson"
    weights = np.zeros(times.size)
    gaps = np.diff(times)
    weights[:-1] += 0.5 * gaps
    weights[1:] += 0.5 * gaps
    return weights, "trapezoid"


def occupation_kernel(
    trajectory: Trajectory, order: int = DEFAULT_ORDER
) -> OccupationKernel:
    """Moment series ``c_n = integral conj(theta)^n dt`` up to ``order``.

    Uses composite Simpson on uniform grids with an even interval count and
    the trapezoid rule otherwise; the tag records which.  Coefficients obey
    ``|c_n| <= duration * r_max^n``.
    """
    weights, tag = _quadrature_weights(trajectory)
    powers = np.conj(trajectory.points)[:, None] ** np.arange(order + 1)[None, :]
    coeffs = weights @ powers
    return OccupationKernel(
        series=TaylorPolynomial(coeffs), source=trajectory, quadrature=tag
    )


# ---------------------------------------------------------------------------
# adjoint identities along trajectories
# ---------------------------------------------------------------------------


def field_defect(f: TaylorPolynomial, trajectory: Trajectory) -> float:
    """Central-difference defect of ``zdot = f(z)`` along the samples."""
    t, z = trajectory.times, trajectory.points
    if t.size < 3:
        return 0.0
    slopes = (z[2:] - z[:-2]) / (t[2:] - t[:-2])
    return float(np.max(np.abs(slopes - np.asarray(f(z[1:-1])))))


def _warn_on_mismatch(f: TaylorPolynomial, trajectory: Trajectory) -> None:
    # second-order finite differences on an RK4 trajectory leave an
    # O(dt^2) defect; 10*dt^2 separates that from a wrong vector field
    if trajectory.times.size < 3:
        return
    dt = float(np.max(np.diff(trajectory.times)))
    defect = field_defect(f, trajectory)
    if defect > 10.0 * dt * dt:
        warnings.warn(
            f"trajectory does not follow the claimed field "
            f"(finite-difference defect {defect:.3e} > {10 * dt * dt:.3e})",
            TrajectoryMismatchWarning,
            stacklevel=3,
        )


def endpoint_kernel_difference(
    trajectory: Trajectory, order: int = DEFAULT_ORDER
) -> TaylorPolynomial:
    """``K_{gamma(T)} - K_{gamma(0)}``, the target of the adjoint identity."""
    return TaylorPolynomial(
        szego_kernel(trajectory.points[-1], order).coeffs
        - szego_kernel(trajectory.points[0], order).coeffs
    )


def liouville_occupation_residual(
    f: TaylorPolynomial, trajectory: Trajectory, order: int = DEFAULT_ORDER
) -> float:
    """Defect of ``A_f* Gamma = K_end - K_start`` through the matrix adjoint.

    Warns (without failing) when the samples do not actually follow ``f``;
    the returned residual is then meaningless and large.
    """
    _warn_on_mismatch(f, trajectory)
    gamma = occupation_kernel(trajectory, order).series
    lhs = adjoint_matrix(liouville_matrix(f, order)).apply(gamma)
    rhs = endpoint_kernel_difference(trajectory, order)
    return float(np.linalg.norm(lhs.coeffs - rhs.coeffs))


def weighted_occupation_residual(
    f: TaylorPolynomial,
    phi: TaylorPolynomial,
    trajectory: Trajectory,
    order: int = DEFAULT_ORDER,
) -> float:
    """Defect of the weighted identity with composed endpoint kernels.

    ``A_{f,phi}* Gamma = K_{phi(gamma(T))} - K_{phi(gamma(0))}`` for
    trajectories of ``zdot = f(z)``; requires ``phi`` to keep the samples
    inside the disk.
    """
    _warn_on_mismatch(f, trajectory)
    composed = np.asarray(phi(trajectory.points))
    top = float(np.max(np.abs(composed)))
    if top >= 1.0:
        raise CompositionOutOfDiskError(
            f"phi maps a sample to |w| = {top:.6g} >= 1"
        )
    gamma = occupation_kernel(trajectory, order).series
    lhs = adjoint_matrix(weighted_liouville_matrix(f, phi, order)).apply(gamma)
    rhs = TaylorPolynomial(
        szego_kernel(complex(composed[-1]), order).coeffs
        - szego_kernel(complex(composed[0]), order).coeffs
    )
    return float(np.linalg.norm(lhs.coeffs - rhs.coeffs))


def adjoint_on_signal(
    f: TaylorPolynomial, trajectory: Trajectory, order: int = DEFAULT_ORDER
) -> TaylorPolynomial:
    """Adjoint action on the occupation kernel of an arbitrary signal.

    The signal need not solve any ODE.  Coefficient ``n`` is
    ``n * integral conj(f(theta(t))) conj(theta(t))^(n-1) dt``: the kernel
    point of the first-derivative kernel rides along the signal.  Matches
    the conjugate-transpose oracle applied to the occupation kernel.
    """
    weights, _ = _quadrature_weights(trajectory)
    fbar = np.conj(np.asarray(f(trajectory.points)))
    powers = np.conj(trajectory.points)[:, None] ** np.arange(order)[None, :]
    moments = weights @ (fbar[:, None] * powers)
    coeffs = np.zeros(order + 1, dtype=np.complex128)
    coeffs[1:] = np.arange(1, order + 1) * moments
    return TaylorPolynomial(coeffs)
