"""Laplacian and signless Laplacian spectra, energies, and cospectrality tests.

For a graph with degree matrix D and adjacency matrix A, the Laplacian is
D - A and the signless Laplacian is D + A.  Both are positive semidefinite;
the Laplacian always has eigenvalue 0, with multiplicity equal to the number
of connected components.  The energy of either spectrum is the sum of
absolute deviations of the eigenvalues from the average degree 2m/n.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import eigen
from .errors import EmptyGraph, KindMismatch, TooFewVertices
from .graphs import Graph

# Cospectrality comparisons run an order above eigensolver error.
COSPECTRAL_TOL = 1e-7
# Default per-vertex tolerance when testing two energies for equality.
ENERGY_TOL_PER_VERTEX = 1e-9


class MatrixKind(enum.Enum):
    LAPLACIAN = "laplacian"
    SIGNLESS_LAPLACIAN = "signless"

    @property
    def short(self) -> str:
        return "L" if self is MatrixKind.LAPLACIAN else "Q"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset of one matrix of one graph, sorted non-increasing.

    ``n`` and ``m`` are the vertex and edge counts of the source graph; they
    ride along so that energies can be computed from the spectrum alone.
    """

    kind: MatrixKind
    values: tuple[float, ...]
    n: int
    m: int

    def __post_init__(self) -> None:
        if len(self.values) != self.n:
            raise ValueError(f"{self.n} vertices but {len(self.values)} eigenvalues")
        if any(self.values[i] < self.values[i + 1] for i in range(len(self.values) - 1)):
            raise ValueError("eigenvalues must be sorted non-increasing")


def laplacian_matrix(g: Graph) -> np.ndarray:
    a = g.adjacency.astype(float)
    return np.diag(a.sum(axis=1)) - a


def signless_laplacian_matrix(g: Graph) -> np.ndarray:
    a = g.adjacency.astype(float)
    return np.diag(a.sum(axis=1)) + a


def spectrum(g: Graph, kind: MatrixKind) -> Spectrum:
    """Eigensolve the requested matrix of g."""
    if g.n < 1:
        raise EmptyGraph("spectra need at least one vertex")
    mat = laplacian_matrix(g) if kind is MatrixKind.LAPLACIAN else signless_laplacian_matrix(g)
    values = eigen.eigenvalues(mat)
    return Spectrum(kind=kind, values=tuple(float(v) for v in values), n=g.n, m=g.m)


def laplacian_spectrum(g: Graph) -> Spectrum:
    return spectrum(g, MatrixKind.LAPLACIAN)


def signless_laplacian_spectrum(g: Graph) -> Spectrum:
    return spectrum(g, MatrixKind.SIGNLESS_LAPLACIAN)


def average_degree(n: int, m: int) -> float:
    # Single integer division deferred to the final float step keeps
    # |eigenvalue - 2m/n| stable near ties.
    return (2 * m) / n


def energy(s: Spectrum) -> float:
    """Sum of |eigenvalue - 2m/n| over the spectrum."""
    avg = average_degree(s.n, s.m)
    return float(sum(abs(v - avg) for v in s.values))


def laplacian_energy(g: Graph) -> float:
    return energy(laplacian_spectrum(g))


def signless_laplacian_energy(g: Graph) -> float:
    return energy(signless_laplacian_spectrum(g))


def algebraic_connectivity(g: Graph) -> float:
    """Second-smallest Laplacian eigenvalue; positive iff g is connected."""
    if g.n < 2:
        raise TooFewVertices("algebraic connectivity needs at least 2 vertices")
    return laplacian_spectrum(g).values[-2]


def zero_multiplicity(s: Spectrum, tol: float = eigen.EIGENVALUE_GROUP_TOL) -> int:
    """Number of eigenvalues within tol of zero."""
    return sum(1 for v in s.values if abs(v) <= tol)


def are_cospectral(s1: Spectrum, s2: Spectrum, tol: float = COSPECTRAL_TOL) -> bool:
    """True iff the two sorted spectra agree pointwise within tol."""
    if s1.kind is not s2.kind:
        raise KindMismatch(f"cannot compare {s1.kind.value} with {s2.kind.value}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if len(s1.values) != len(s2.values):
        return False
    return max((abs(a - b) for a, b in zip(s1.values, s2.values)), default=0.0) <= tol


def energies_equal(e1: float, e2: float, n: int, tol_per_vertex: float = ENERGY_TOL_PER_VERTEX) -> bool:
    return abs(e1 - e2) <= tol_per_vertex * n


@dataclass(frozen=True)
class EnergyReport:
    """Both energies of one graph plus the quantities they are measured against."""

    le: float
    le_plus: float
    avg_degree: float
    algebraic_connectivity: float


def energy_report(g: Graph) -> EnergyReport:
    ls = laplacian_spectrum(g)
    qs = signless_laplacian_spectrum(g)
    if g.n < 2:
        raise TooFewVertices("energy report needs at least 2 vertices")
    return EnergyReport(
        le=energy(ls),
        le_plus=energy(qs),
        avg_degree=average_degree(g.n, g.m),
        algebraic_connectivity=ls.values[-2],
    )
