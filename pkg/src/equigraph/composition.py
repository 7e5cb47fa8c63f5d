"""Closed-form spectral composition rules, each paired with a direct cross-check.

Every rule predicts the spectrum of a composed graph from the spectra of its
parts.  The union, join, complement, Cartesian-sum and complete-minus-subgraph
rules are exact; the Kronecker pairwise-product rule is implemented exactly as
stated even though it disagrees with direct eigendecomposition in general
(see :func:`rule_kronecker`).  :func:`cross_check` measures the deviation of
any predicted spectrum against the eigensolver and never assumes it is zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import KindMismatch, LengthMismatch, NotLaplacian, SubgraphTooLarge
from .graphs import Graph
from .spectra import MatrixKind, Spectrum, spectrum

# A Laplacian spectrum must end in (numerically) zero for the join,
# complement and complete-minus-subgraph rules to apply.
_TRAILING_ZERO_TOL = 1e-6


def _require_same_kind(s1: Spectrum, s2: Spectrum) -> None:
    if s1.kind is not s2.kind:
        raise KindMismatch(f"cannot combine {s1.kind.value} with {s2.kind.value}")


def _require_laplacian(s: Spectrum) -> None:
    if s.kind is not MatrixKind.LAPLACIAN:
        raise NotLaplacian(f"rule needs a Laplacian spectrum, got {s.kind.value}")
    if s.values and abs(s.values[-1]) > _TRAILING_ZERO_TOL:
        raise NotLaplacian(f"smallest value {s.values[-1]!r} is not ~0")


def _sorted_spectrum(kind: MatrixKind, values: list[float], n: int, m: int) -> Spectrum:
    return Spectrum(kind=kind, values=tuple(sorted(values, reverse=True)), n=n, m=m)


def rule_union(s1: Spectrum, s2: Spectrum) -> Spectrum:
    """Spectrum of a disjoint union: the multiset union of the parts."""
    _require_same_kind(s1, s2)
    return _sorted_spectrum(s1.kind, list(s1.values) + list(s2.values), s1.n + s2.n, s1.m + s2.m)


def rule_join(s1: Spectrum, s2: Spectrum) -> Spectrum:
    """Laplacian spectrum of a join.

    From inputs ending in 0: keep n1+n2 once, shift the non-final values of
    each input by the other's order, and keep a single 0.
    """
    _require_same_kind(s1, s2)
    _require_laplacian(s1)
    _require_laplacian(s2)
    n1, n2 = s1.n, s2.n
    values = [float(n1 + n2)]
    values += [n1 + v for v in s2.values[:-1]]
    values += [n2 + v for v in s1.values[:-1]]
    values.append(0.0)
    return _sorted_spectrum(s1.kind, values, n1 + n2, s1.m + s2.m + n1 * n2)


def rule_complement(s: Spectrum) -> Spectrum:
    """Laplacian spectrum of the complement: n - v over the non-final values, plus 0."""
    _require_laplacian(s)
    n = s.n
    values = [n - v for v in s.values[:-1]] + [0.0]
    return _sorted_spectrum(s.kind, values, n, n * (n - 1) // 2 - s.m)


def rule_cartesian(s1: Spectrum, s2: Spectrum) -> Spectrum:
    """Spectrum of a Cartesian product: all pairwise sums."""
    _require_same_kind(s1, s2)
    values = [v1 + v2 for v1 in s1.values for v2 in s2.values]
    return _sorted_spectrum(s1.kind, values, s1.n * s2.n, s1.n * s2.m + s2.n * s1.m)


def rule_kronecker(s1: Spectrum, s2: Spectrum) -> Spectrum:
    """Pairwise-product prediction for a Kronecker product, exactly as stated.

    This rule is sound for adjacency spectra but not for Laplacian or
    signless-Laplacian spectra; it is kept in its stated form so that
    :func:`cross_check` can measure the disagreement honestly.
    """
    _require_same_kind(s1, s2)
    values = [v1 * v2 for v1 in s1.values for v2 in s2.values]
    return _sorted_spectrum(s1.kind, values, s1.n * s2.n, 2 * s1.m * s2.m)


def rule_kn_minus(n: int, s: Spectrum) -> Spectrum:
    """Laplacian spectrum of the complete graph on n vertices minus the edges of G(s).

    The stated multiset is {n - v for every input value}, n repeated
    (n - s - 1) times, and one 0.  When s = n the repeat count is -1, which is
    read as removing one copy of n (the image of the input's zero eigenvalue).
    """
    _require_laplacian(s)
    if s.n > n:
        raise SubgraphTooLarge(f"subgraph on {s.n} vertices does not fit in {n}")
    values = [n - v for v in s.values]
    extra = n - s.n - 1
    if extra >= 0:
        values += [float(n)] * extra
    else:
        # s == n: drop the copy of n contributed by the input's zero eigenvalue
        idx = min(range(len(values)), key=lambda i: abs(values[i] - n))
        del values[idx]
    values.append(0.0)
    return _sorted_spectrum(s.kind, values, n, n * (n - 1) // 2 - s.m)


@dataclass(frozen=True)
class RuleOutcome:
    """A rule-predicted spectrum next to the eigensolver's answer."""

    rule_spectrum: Spectrum
    direct_spectrum: Spectrum
    max_deviation: float


def cross_check(rule_spectrum: Spectrum, built: Graph) -> RuleOutcome:
    """Measure a predicted spectrum against the direct spectrum of the built graph."""
    if rule_spectrum.n != built.n:
        raise LengthMismatch(
            f"predicted {rule_spectrum.n} eigenvalues but the graph has {built.n} vertices"
        )
    direct = spectrum(built, rule_spectrum.kind)
    dev = max(
        (abs(a - b) for a, b in zip(rule_spectrum.values, direct.values)),
        default=0.0,
    )
    return RuleOutcome(rule_spectrum=rule_spectrum, direct_spectrum=direct, max_deviation=dev)
