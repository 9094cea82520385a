"""Perron-Frobenius data of nonnegative action matrices.

The eigenvalues come from LAPACK (via :func:`numpy.linalg.eigvals`).  For
each pseudo-dominant eigenvalue a matched right/left eigenvector pair is
extracted from one SVD of ``M - mu I`` and normalized so that ``w^T v = 1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .action_graph import ActionMatrix, graph_period, has_cycle, is_irreducible
from .errors import (
    ConvergenceFailure,
    LengthMismatch,
    PFPropertyViolation,
    PhaseNotRootOfUnity,
    ZeroSpectralRadius,
)

MAX_DIMENSION = 256
#: Relative tolerance for "modulus equal to lambda" and eigenvalue clustering.
CLUSTER_RTOL = 1e-8
#: Absolute tolerance when snapping a phase to a root of unity.
PHASE_TOL = 1e-8
#: |w^T v| below this (for unit vectors) signals a Jordan block.
BIORTHOGONALITY_FLOOR = 1e-10
#: Second moduli below this fraction of lambda are numerically zero.
ZERO_MODULUS_RTOL = 1e-10

VERSION3_NOTE = (
    "the general case (Jordan blocks at the leading eigenvalue, periodic "
    "polynomial matrices; 'Version 3') is not supported"
)


def _as_float_matrix(m) -> np.ndarray:
    if isinstance(m, ActionMatrix):
        return m.to_float()
    arr = np.asarray(m)
    if arr.dtype == object:
        return np.array([float(x) for x in arr.flat]).reshape(arr.shape)
    return np.asarray(arr, dtype=float)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """All eigenvalues of a matrix, sorted by decreasing modulus."""

    eigenvalues: np.ndarray
    dimension: int

    def clusters(self, rtol: float = CLUSTER_RTOL) -> list[tuple[complex, int]]:
        """Group numerically equal eigenvalues as ``(representative, multiplicity)``."""
        scale = max(1.0, float(np.abs(self.eigenvalues).max(initial=0.0)))
        out: list[list] = []
        for mu in self.eigenvalues:
            for item in out:
                if abs(mu - item[0]) <= rtol * scale:
                    item[1] += 1
                    break
            else:
                out.append([complex(mu), 1])
        return [(z, k) for z, k in out]

    @property
    def spectral_radius(self) -> float:
        return float(np.abs(self.eigenvalues).max(initial=0.0))


def full_spectrum(m) -> Spectrum:
    f = _as_float_matrix(m)
    size = f.shape[0]
    if size > MAX_DIMENSION:
        raise ValueError(f"matrix of size {size} exceeds the desk-scale limit {MAX_DIMENSION}")
    try:
        ev = np.linalg.eigvals(f)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver failed on matrix\n{f}") from exc
    order = np.lexsort((np.angle(ev) % (2 * np.pi), -np.round(np.abs(ev), 12)))
    return Spectrum(ev[order].astype(complex), size)


@dataclass(frozen=True, eq=False)
class PFData:
    """Perron-Frobenius data of an action matrix.

    ``eigenpairs[k] = (v_k, w_k)`` belongs to the eigenvalue
    ``pseudo_dominant[k] = exp(2 pi i k / h) * lam`` with ``w_k @ v_k == 1``.
    """

    lam: float
    period: int
    pseudo_dominant: tuple[complex, ...]
    eigenpairs: tuple[tuple[np.ndarray, np.ndarray], ...]
    second_modulus: float
    pf_property_holds: bool
    irreducible: bool
    period_source: str
    spectrum: Spectrum

    @property
    def zeta(self) -> complex:
        return root_of_unity(1, self.period)

    @property
    def ratio(self) -> float:
        """Reference convergence ratio ``|lambda_sec| / lambda``."""
        return self.second_modulus / self.lam

    def projectors(self) -> list[np.ndarray]:
        return [np.outer(v, w) for v, w in self.eigenpairs]


def root_of_unity(k: int, h: int) -> complex:
    r = k % h
    if r == 0:
        return 1.0 + 0.0j
    return cmath.exp(2j * math.pi * r / h)


def detect_period_spectrally(spectrum: Spectrum, lam: float) -> tuple[int, list[complex]]:
    """Period from the phases of the eigenvalues of modulus ``lam``.

    Each phase must be a root of unity of order at most ``m**2``; the period
    is the lcm of the orders.
    """
    m = spectrum.dimension
    dominant = [mu for mu in spectrum.eigenvalues if abs(abs(mu) - lam) <= CLUSTER_RTOL * lam]
    h = 1
    for mu in dominant:
        t = (cmath.phase(mu) / (2 * math.pi)) % 1.0
        snap = Fraction(t).limit_denominator(max(1, m * m))
        if abs(float(snap) - t) > PHASE_TOL:
            raise PhaseNotRootOfUnity(
                f"pseudo-dominant eigenvalue {mu:.12g} has phase {t:.12g} turns, "
                f"not a root of unity of order <= {m * m}"
            )
        h = math.lcm(h, snap.denominator)
    return h, dominant


def _eigenpair(f: np.ndarray, mu: complex) -> tuple[np.ndarray, np.ndarray]:
    size = f.shape[0]
    a = f.astype(complex) - mu * np.eye(size)
    u, s, vh = np.linalg.svd(a)
    scale = max(1.0, float(np.abs(f).max()))
    if s[-1] > 1e-6 * scale:
        raise ConvergenceFailure(f"{mu:.12g} is not an eigenvalue (residual {s[-1]:.3g})")
    if size > 1 and s[-2] <= 1e-9 * scale:
        raise PFPropertyViolation(
            f"eigenvalue {mu:.12g} has a multi-dimensional eigenspace; {VERSION3_NOTE}"
        )
    v = vh[-1].conj()
    w = u[:, -1].conj()
    top = v[int(np.argmax(np.abs(v)))]
    v = v * (abs(top) / top)
    overlap = w @ v
    if abs(overlap) < BIORTHOGONALITY_FLOOR:
        raise PFPropertyViolation(
            f"left and right eigenvectors for {mu:.12g} are orthogonal "
            f"(Jordan block); {VERSION3_NOTE}"
        )
    return v, w / overlap


def pf_data(m, *, strict: bool = True) -> PFData:
    """Perron-Frobenius eigenvalue, period, eigenpairs and second modulus.

    Parameters
    ----------
    m : ActionMatrix or array_like
        Square nonnegative matrix.
    strict : bool
        If true (default) a leading eigenvalue of multiplicity > 1 raises
        :class:`PFPropertyViolation`.  Otherwise the returned data has
        ``pf_property_holds=False`` and no eigenpairs.

    Raises
    ------
    ZeroSpectralRadius
        The digraph has no closed walk, so the matrix is nilpotent.
    PFPropertyViolation
        The leading eigenvalue, or another pseudo-dominant one, is not simple.
    PhaseNotRootOfUnity
        A pseudo-dominant phase could not be identified (reducible case).
    """
    entries = m.entries if isinstance(m, ActionMatrix) else np.asarray(m, dtype=object)
    if not has_cycle(entries):
        raise ZeroSpectralRadius("action graph has no closed walk; the matrix is nilpotent")
    f = _as_float_matrix(m)
    spectrum = full_spectrum(f)
    moduli = np.abs(spectrum.eigenvalues)
    lam = float(moduli.max())
    irreducible = is_irreducible(entries)

    on_circle = [mu for mu in spectrum.eigenvalues if abs(abs(mu) - lam) <= CLUSTER_RTOL * lam]
    lam_mult = sum(1 for mu in on_circle if abs(mu - lam) <= CLUSTER_RTOL * lam)
    rest = moduli[np.abs(moduli - lam) > CLUSTER_RTOL * lam]
    second = float(rest.max()) if rest.size else 0.0
    if second <= ZERO_MODULUS_RTOL * lam:
        second = 0.0

    if irreducible:
        h = graph_period(entries)
        source = "graph"
    else:
        h, _ = detect_period_spectrally(spectrum, lam)
        source = "spectral"
    targets = [root_of_unity(k, h) * lam for k in range(h)]

    simple = lam_mult == 1 and len(on_circle) == h
    if not simple:
        if strict:
            raise PFPropertyViolation(
                f"Perron-Frobenius eigenvalue {lam:.12g} has multiplicity {lam_mult} "
                f"({len(on_circle)} eigenvalues of modulus lambda for period {h}); "
                f"the action matrix is reducible with several maximal blocks and "
                f"{VERSION3_NOTE}"
            )
        return PFData(lam, h, tuple(on_circle), (), second, False, irreducible, source, spectrum)

    for t in targets:
        if min(abs(mu - t) for mu in on_circle) > 1e-6 * lam:
            raise PhaseNotRootOfUnity(
                f"expected an eigenvalue at {t:.12g} for period {h}; found {on_circle}"
            )
    pairs = tuple(_eigenpair(f, t) for t in targets)
    return PFData(lam, h, tuple(targets), pairs, second, True, irreducible, source, spectrum)


def projector_column_sum(v, w, column: int = 0) -> complex:
    """Sum of column ``column`` of ``outer(v, w)``, i.e. ``w[column] * sum(v)``."""
    v = np.asarray(v)
    w = np.asarray(w)
    if v.shape != w.shape or v.ndim != 1:
        raise LengthMismatch(f"vectors of shapes {v.shape} and {w.shape}")
    if not 0 <= column < v.shape[0]:
        raise LengthMismatch(f"column {column} out of range")
    return complex(w[column] * v.sum())


def reconstruction_errors(m, pf: PFData, n_max: int) -> list[float]:
    """Entrywise max of ``M^n / lam^n - sum_k zeta^{kn} P_k`` for ``n = 0..n_max``."""
    f = _as_float_matrix(m) / pf.lam
    projectors = pf.projectors()
    power = np.eye(f.shape[0])
    out = []
    for n in range(n_max + 1):
        limit = sum(root_of_unity(k * n, pf.period) * p for k, p in enumerate(projectors))
        out.append(float(np.abs(power - limit).max()))
        power = power @ f
    return out
