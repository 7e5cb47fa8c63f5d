"""Dense symmetric eigensolvers.

Two routes to the same answer:

* :func:`eigenvalues` is the production path, backed by LAPACK
  (``numpy.linalg.eigvalsh``).  It is what every spectral computation in the
  package calls.
* :func:`jacobi_eigenvalues` is an independently coded cyclic Jacobi solver.
  It is slower but self-contained, and the test suite cross-validates the two
  against each other, so neither route is trusted alone.

Both return all eigenvalues sorted non-increasing.  Only eigenvalues are
computed; nothing here needs eigenvectors.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NoConvergence

# Stop when the off-diagonal Frobenius norm drops below tol * (initial + 1).
DEFAULT_TOL = 1e-12
MAX_SWEEPS = 100

# Eigenvalues closer than this are treated as one value when multiplicities
# are reported.
EIGENVALUE_GROUP_TOL = 1e-7


def _as_square(a) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValueError("matrix order must be at least 1")
    return arr


def _off_norm(a: np.ndarray) -> float:
    # Frobenius norm of the strictly off-diagonal part.
    return math.sqrt(max(0.0, float(np.sum(a * a) - np.sum(np.diagonal(a) ** 2))))


def jacobi_eigenvalues(a, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps rotate every strict upper pair (p, q) in row order, annihilating
    a[p, q] each time.  Iteration stops once the off-diagonal Frobenius norm
    falls below ``tol * (initial off-norm + 1)``.

    Raises:
        NoConvergence: the sweep cap was reached with the off-diagonal norm
            still above the threshold.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = _as_square(a).copy()
    n = a.shape[0]
    if n == 1:
        return a[0, :1].copy()

    threshold = tol * (_off_norm(a) + 1.0)
    for _ in range(max_sweeps):
        if _off_norm(a) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                # smaller-magnitude root of t^2 + 2*theta*t - 1 = 0
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    else:
        if _off_norm(a) >= threshold:
            raise NoConvergence(
                f"off-diagonal norm {_off_norm(a):.3e} still above "
                f"{threshold:.3e} after {max_sweeps} sweeps"
            )
    values = np.sort(np.diagonal(a).copy())[::-1]
    return np.ascontiguousarray(values)


def eigenvalues(a, tol: float = DEFAULT_TOL, method: str = "lapack") -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, sorted non-increasing.

    ``method="lapack"`` (default) uses ``numpy.linalg.eigvalsh``;
    ``method="jacobi"`` runs the reference solver with the given ``tol``.
    """
    arr = _as_square(a)
    if method == "jacobi":
        return jacobi_eigenvalues(arr, tol=tol)
    if method != "lapack":
        raise ValueError(f"unknown method {method!r}")
    try:
        values = np.linalg.eigvalsh(arr)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return np.ascontiguousarray(values[::-1])


def group_eigenvalues(values, tol: float = EIGENVALUE_GROUP_TOL) -> list[tuple[float, int]]:
    """Collapse a sorted eigenvalue list into (value, multiplicity) pairs.

    Consecutive values within ``tol`` of the group's first member join that
    group; the reported value is the group mean.
    """
    out: list[tuple[float, int]] = []
    group: list[float] = []
    for v in values:
        v = float(v)
        if group and abs(group[0] - v) > tol:
            out.append((sum(group) / len(group), len(group)))
            group = []
        group.append(v)
    if group:
        out.append((sum(group) / len(group), len(group)))
    return out
