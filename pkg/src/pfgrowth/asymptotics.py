"""Exact growth sequences b(n) and their closed-form asymptotics a(n).

``b(n)`` is the total coefficient sum of ``c**n``.  The asymptotic formula is

    a(n) = (sum_k coeff_k * zeta**(k n)) * lam**n,   zeta = exp(2 pi i / h),

with ``coeff_k`` the first-column sum of the k-th eigenprojector.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _exact
from .action_graph import ActionMatrix, action_matrix
from .based_algebra import (
    CharacterTable,
    Element,
    StructureTensor,
    as_element,
    from_character_table,
)
from .errors import (
    InsufficientData,
    NonRealEvaluation,
    NonScalarClass,
    NotFaithful,
    ZeroAsymptote,
)
from .spectral import PFData, pf_data, projector_column_sum, root_of_unity

logger = logging.getLogger(__name__)

DEFAULT_NMAX = 64
REALITY_RTOL = 1e-9
DEVIATION_FLOOR = 1e-12
MIN_FIT_ROWS = 10


@dataclass(frozen=True)
class AsymptoticFormula:
    """``a(n) = (sum_k coefficients[k] * zeta**(k n)) * base**n``."""

    base: float
    period: int
    coefficients: tuple[complex, ...]
    provenance: str = "spectral"

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if len(coeffs) != self.period:
            raise ValueError(f"{len(coeffs)} coefficients for period {self.period}")
        object.__setattr__(self, "coefficients", coeffs)

    def modulation(self, n: int) -> complex:
        """``a(n) / base**n``; depends only on ``n mod period``."""
        return sum(
            (c * root_of_unity(k * n, self.period) for k, c in enumerate(self.coefficients)),
            0j,
        )

    def __call__(self, n: int) -> float:
        return eval_formula(self, n)

    def on_period(self, period: int) -> np.ndarray:
        """Coefficients re-indexed on the phases of a multiple ``period`` of ours."""
        if period % self.period:
            raise ValueError(f"{period} is not a multiple of {self.period}")
        out = np.zeros(period, dtype=complex)
        step = period // self.period
        for k, c in enumerate(self.coefficients):
            out[k * step] = c
        return out

    def coefficient_distance(self, other: "AsymptoticFormula") -> float:
        """Max coefficient difference after lifting both to a common period.

        Bases are compared separately (:attr:`base`); a formula with period 1
        equals a period-2 formula whose second coefficient is zero.
        """
        common = math.lcm(self.period, other.period)
        return float(np.abs(self.on_period(common) - other.on_period(common)).max())

    def agrees_with(self, other: "AsymptoticFormula", tol: float = 1e-9) -> bool:
        return (
            abs(self.base - other.base) <= tol * max(1.0, abs(other.base))
            and self.coefficient_distance(other) <= tol
        )

    def residue_constants(self) -> list[complex]:
        """``A_r = a(r)`` for ``r < period``, so ``a(q h + r) = A_r * (base**h)**q``."""
        return [self.modulation(r) * self.base**r for r in range(self.period)]

    def rational_form(self, max_denominator: int = 10_000, tol: float = 1e-9):
        """Exact rational evaluator, if the formula is rational on every residue.

        Snaps ``base**period`` and each residue constant to a fraction with
        denominator at most ``max_denominator``.  Returns a function
        ``n -> Fraction`` or ``None`` when some value is not (numerically)
        rational.
        """
        h = self.period
        values = [self.base**h] + self.residue_constants()
        snapped = []
        for x in values:
            x = complex(x)
            if abs(x.imag) > tol * max(1.0, abs(x)):
                return None
            q = Fraction(x.real).limit_denominator(max_denominator)
            if abs(float(q) - x.real) > tol * max(1.0, abs(x.real)):
                return None
            snapped.append(q)
        growth, residues = snapped[0], snapped[1:]

        def exact(n: int) -> Fraction:
            q, r = divmod(n, h)
            return residues[r] * growth**q

        return exact


def eval_formula(f: AsymptoticFormula, n: int) -> float:
    """Real value of ``a(n)``; raises NonRealEvaluation on a complex residue."""
    mod = f.modulation(n)
    scale = sum(abs(c) for c in f.coefficients)
    if abs(mod.imag) > REALITY_RTOL * max(scale, 1e-300):
        raise NonRealEvaluation(f"a({n}) has imaginary part {mod.imag:.3g} (real {mod.real:.3g})")
    return mod.real * f.base**n


def formula_from_pf(pf: PFData, unit_position: int = 0) -> AsymptoticFormula:
    coeffs = [projector_column_sum(v, w, unit_position) for v, w in pf.eigenpairs]
    return AsymptoticFormula(pf.lam, pf.period, tuple(coeffs), "spectral")


def asymptotic_formula(alg: StructureTensor, c) -> AsymptoticFormula:
    """Spectral asymptotic formula of ``c`` from the PF data of its action matrix."""
    m = action_matrix(alg, c)
    return formula_from_pf(pf_data(m), m.unit_position)


def formula_from_matrix(m: ActionMatrix) -> AsymptoticFormula:
    return formula_from_pf(pf_data(m), m.unit_position)


# -- growth sequences ---------------------------------------------------------

@dataclass(frozen=True)
class GrowthSequence:
    """Exact values ``b(0), ..., b(n_max)``."""

    values: tuple
    element: Element | None = None
    source: str = ""

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)


def iterate_unit_vectors(m: ActionMatrix, n_max: int):
    """Yield ``c(n) = M^n e_unit`` for ``n = 0..n_max`` in exact arithmetic."""
    vec = _exact.zeros(m.size)
    vec[m.unit_position] = 1
    yield vec
    for _ in range(n_max):
        vec = m.entries.dot(vec)
        yield vec


def growth_from_matrix(m: ActionMatrix, n_max: int, element=None, source="matrix") -> GrowthSequence:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    values = tuple(
        _exact.normalize(sum(vec, Fraction(0))) for vec in iterate_unit_vectors(m, n_max)
    )
    return GrowthSequence(values, element, source)


def growth_sequence(alg: StructureTensor, c, n_max: int = DEFAULT_NMAX) -> GrowthSequence:
    """Exact ``b(n)`` by iterating ``c(n) = M(c) c(n-1)`` from the unit vector."""
    c = as_element(alg, c)
    return growth_from_matrix(action_matrix(alg, c), n_max, c, "algebra")


# -- comparison tables --------------------------------------------------------

@dataclass(frozen=True)
class RatioRow:
    n: int
    b: int | Fraction
    a: float
    ratio: float

    @property
    def deviation(self) -> float:
        return abs(self.ratio - 1.0)


def _exact_ratio(b, a: float) -> float:
    if b == 0:
        return 0.0
    return float(Fraction(b) / Fraction(a))


def ratio_table(seq: GrowthSequence, f: AsymptoticFormula) -> list[RatioRow]:
    rows = []
    scale = sum(abs(c) for c in f.coefficients)
    for n, b in enumerate(seq.values):
        a = eval_formula(f, n)
        if a == 0.0 or abs(f.modulation(n)) <= 1e-12 * scale or not math.isfinite(a):
            raise ZeroAsymptote(n)
        rows.append(RatioRow(n, b, a, _exact_ratio(b, a)))
    return rows


def exact_agreement(seq: GrowthSequence, f: AsymptoticFormula, start: int = 1) -> bool:
    """Whether ``b(n) == a(n)`` exactly for ``start <= n <= n_max``."""
    exact = f.rational_form()
    if exact is None:
        return False
    return all(exact(n) == seq[n] for n in range(start, len(seq)))


@dataclass(frozen=True)
class ConvergenceEstimate:
    estimate: float
    reference: float
    consistent: bool
    exact_match: bool
    rows_used: int


def fit_geometric_ratio(ns: Sequence[int], deviations: Sequence[float]) -> float:
    """``exp`` of the least-squares slope of ``log(deviation)`` against ``n``."""
    slope = np.polyfit(np.asarray(ns, dtype=float), np.log(np.asarray(deviations)), 1)[0]
    return float(math.exp(slope))


def geometric_decay(
    ns: Sequence[int],
    deviations: Sequence[float],
    reference: float,
    floor: float = DEVIATION_FLOOR,
    min_rows: int = MIN_FIT_ROWS,
) -> ConvergenceEstimate:
    """Fit the decay ratio of ``deviations`` and compare with ``reference``.

    Only deviations above ``floor`` are fitted.  With fewer than ``min_rows``
    of them the sequence is treated as an exact match; that is consistent
    when the reference ratio predicts a negligible deviation by the last row.
    """
    if len(ns) < min_rows:
        raise InsufficientData(f"need at least {min_rows} rows, got {len(ns)}")
    keep = [(n, d) for n, d in zip(ns, deviations) if d > floor]
    if len(keep) < min_rows:
        consistent = reference ** max(ns) <= 1e-6
        return ConvergenceEstimate(0.0, reference, consistent, True, len(keep))
    est = fit_geometric_ratio([n for n, _ in keep], [d for _, d in keep])
    consistent = abs(est - reference) <= 0.1 * reference
    return ConvergenceEstimate(est, reference, consistent, False, len(keep))


def convergence_ratio_estimate(table: Sequence[RatioRow], pf: PFData) -> ConvergenceEstimate:
    """Estimated ratio of ``|b(n)/a(n) - 1| -> 0`` versus ``|lam_sec| / lam``.

    Row ``n = 0`` is excluded from the fit.
    """
    rows = [r for r in table if r.n >= 1]
    return geometric_decay([r.n for r in rows], [r.deviation for r in rows], pf.ratio)


def pf_dimension(alg: StructureTensor, c, check_n: int = 40) -> float:
    """Perron-Frobenius dimension of ``c``.

    Also compares it with the root test ``b(n)**(1/n)`` at ``n = check_n``
    and logs a warning when they differ by more than 5%.
    """
    c = as_element(alg, c)
    m = action_matrix(alg, c)
    lam = pf_data(m).lam
    b = growth_from_matrix(m, check_n)[check_n]
    root = root_test(b, check_n)
    if abs(root - lam) > 0.05 * lam:
        logger.warning("root test b(%d)^(1/%d) = %.6g is more than 5%% from %.6g",
                       check_n, check_n, root, lam)
    return lam


def root_test(b, n: int) -> float:
    """``b**(1/n)`` for a large exact rational ``b``."""
    b = Fraction(b)
    if b <= 0:
        return 0.0
    return math.exp((math.log(b.numerator) - math.log(b.denominator)) / n)


# -- finite groups ------------------------------------------------------------

def character_asymptotics(
    table: CharacterTable,
    v,
    *,
    strict_faithful: bool = True,
    tol: float = 1e-9,
) -> AsymptoticFormula:
    """Closed-form asymptotics for tensor powers of a group representation.

    ``v`` lists the multiplicity of each irreducible (in table row order).
    Group elements acting on ``V`` as a scalar contribute
    ``sum_L chi_L(g) * omega_V(g)**n / #G``; contributions are collected by
    the root of unity ``omega_V(g)`` so the result has the same shape as the
    spectral formula.

    Raises
    ------
    NotFaithful
        ``V`` has a nontrivial kernel and ``strict_faithful`` is set.  With
        ``strict_faithful=False`` the spectral path is used instead.
    NonScalarClass
        A class with ``|chi_V(g)| = dim V`` is not central, or its scalar is
        not a root of unity.
    """
    table.check(tol)
    coeffs = np.array([float(_exact.to_exact(a)) for a in v])
    if coeffs.shape != (table.n_irreducibles,) or (coeffs < 0).any() or not coeffs.any():
        raise ValueError("v must be a nonzero nonnegative vector over the irreducibles")
    chi_v = coeffs @ table.characters
    dim = chi_v[table.identity_class].real
    kernel = [j for j in range(len(chi_v)) if abs(chi_v[j] - dim) <= tol * dim]
    if kernel != [table.identity_class]:
        if strict_faithful:
            raise NotFaithful(f"representation is trivial on classes {kernel}")
        return asymptotic_formula(from_character_table(table, tol), table.element(v))

    by_phase: dict[Fraction, complex] = {}
    for j, value in enumerate(chi_v):
        if abs(abs(value) - dim) > tol * dim:
            continue
        if table.class_sizes[j] != 1:
            raise NonScalarClass(f"class {j} acts by a scalar but has size {table.class_sizes[j]}")
        omega = value / dim
        turns = (np.angle(omega) / (2 * math.pi)) % 1.0
        snap = Fraction(turns).limit_denominator(table.group_order) % 1
        if abs(float(snap) - turns) > tol and abs(abs(float(snap) - turns) - 1) > tol:
            raise NonScalarClass(f"scalar {omega} on class {j} is not a root of unity")
        weight = table.characters[:, j].sum() / table.group_order
        by_phase[snap] = by_phase.get(snap, 0j) + weight

    h = math.lcm(*(q.denominator for q in by_phase))
    out = [0j] * h
    for q, w in by_phase.items():
        out[int(q * h)] += w
    return AsymptoticFormula(float(dim), h, tuple(out), "character")
