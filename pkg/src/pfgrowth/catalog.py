"""Built-in example families.

Each generator returns a :class:`CatalogEntry` bundling an algebra (or, for
``sl2_modular``, only an action matrix), a distinguished element, and the
closed-form asymptotic formula known for that family.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .action_graph import ActionMatrix, action_matrix, matrix_from_rows, unit_component
from .asymptotics import AsymptoticFormula
from .based_algebra import (
    CharacterTable,
    Element,
    StructureTensor,
    from_character_table,
    structure_from_rule,
)
from .errors import NotPrime, ParameterTooLarge, UnknownEntry

EXACT_FROM_N1 = "exact_from_n1"
EXACT_ON_RESIDUES = "exact_on_residues"
ASYMPTOTIC_ONLY = "asymptotic_only"

MAX_GROUP_ORDER = 10**6
MAX_RANK = 256

PHI = (1 + math.sqrt(5)) / 2

#: Dihedral orders whose rotation representation has b(n) = a(n) for n >= 1.
#: For other m some non-central rotation r^t with a square root has
#: 2cos(2 pi t / m) != 0 and contributes a decaying term.
DIHEDRAL_EXACT = (4, 8)
#: Verlinde levels with b(n) = a(n) for n >= 1 (k = 2 trivially: b = a = 1).
VERLINDE_EXACT = (2, 3, 5)


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    params: dict
    matrix: ActionMatrix
    algebra: StructureTensor | None = None
    element: Element | None = None
    expected_formula: AsymptoticFormula | None = None
    exactness: str = ASYMPTOTIC_ONLY
    character_table: CharacterTable | None = None
    character_element: tuple | None = None
    extrapolated: bool = False
    notes: tuple[str, ...] = ()

    @property
    def title(self) -> str:
        if not self.params:
            return self.name
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({args})"

    @property
    def matrix_only(self) -> bool:
        return self.algebra is None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def formula_from_residues(base: float, residues, provenance="catalog-closed-form") -> AsymptoticFormula:
    """Formula whose modulation ``a(n)/base**n`` cycles through ``residues``."""
    h = len(residues)
    coeffs = [
        sum(residues[r] * cmath.exp(-2j * math.pi * k * r / h) for r in range(h)) / h
        for k in range(h)
    ]
    return AsymptoticFormula(base, h, tuple(coeffs), provenance)


def _entry_from_table(name, params, table: CharacterTable, table_element, **kw) -> CatalogEntry:
    alg = from_character_table(table)
    elem = table.element(table_element)
    return CatalogEntry(
        name=name,
        params=params,
        matrix=action_matrix(alg, elem),
        algebra=alg,
        element=elem,
        character_table=table,
        character_element=tuple(table_element),
        **kw,
    )


# -- character tables ---------------------------------------------------------

def cyclic_table(n: int) -> CharacterTable:
    """Character table of the cyclic group of order ``n``."""
    chars = [[cmath.exp(2j * math.pi * a * t / n) for t in range(n)] for a in range(n)]
    return CharacterTable(n, (1,) * n, np.array(chars), 0, tuple(f"chi{a}" for a in range(n)))


def dihedral_table(m: int) -> CharacterTable:
    """Character table of the dihedral group of order ``2m``.

    Rows: ``1, sgn`` (and ``chi3, chi4`` for even ``m``), then the
    two-dimensional ``rho_j`` with ``rho_j(r^t) = 2 cos(2 pi j t / m)``.
    """
    if m < 3:
        raise ValueError("dihedral groups need m >= 3")
    rot = lambda j, t: 2 * math.cos(2 * math.pi * j * t / m)  # noqa: E731
    if m % 2:
        half = (m - 1) // 2
        rotations = list(range(1, half + 1))
        sizes = [1] + [2] * half + [m]
        rows = {
            "1": [1] * (half + 2),
            "sgn": [1] * (half + 1) + [-1],
        }
        for j in range(1, half + 1):
            rows[f"rho{j}"] = [2] + [rot(j, t) for t in rotations] + [0]
    else:
        half = m // 2
        rotations = list(range(1, half))
        # classes: 1, r^(m/2), r^(+-t), s r^even, s r^odd
        sizes = [1, 1] + [2] * (half - 1) + [half, half]
        sign = lambda t: (-1) ** t  # noqa: E731
        rows = {
            "1": [1] * (half + 3),
            "sgn": [1, 1] + [1] * (half - 1) + [-1, -1],
            "chi3": [1, sign(half)] + [sign(t) for t in rotations] + [1, -1],
            "chi4": [1, sign(half)] + [sign(t) for t in rotations] + [-1, 1],
        }
        for j in range(1, half):
            rows[f"rho{j}"] = [2, rot(j, half)] + [rot(j, t) for t in rotations] + [0, 0]
    return CharacterTable(2 * m, tuple(sizes), np.array(list(rows.values())), 0, tuple(rows))


def extraspecial_table(p: int, m: int) -> CharacterTable:
    """Character table of an extraspecial group of order ``p**(1 + 2m)``.

    Classes: the ``p`` central elements, then one class of size ``p`` per
    nonzero ``x`` in ``F_p^{2m}``.  Rows: the ``p**(2m)`` linear characters
    ``x -> zeta^(u.x)``, then ``V1..V(p-1)`` of degree ``p**m``, which vanish
    off the center and take ``p**m zeta^(a j)`` on ``z^j``.
    """
    zeta = lambda t: cmath.exp(2j * math.pi * (t % p) / p)  # noqa: E731
    vectors = list(itertools.product(range(p), repeat=2 * m))
    noncentral = vectors[1:]
    sizes = [1] * p + [p] * len(noncentral)
    rows, labels = [], []
    for u in vectors:
        rows.append([1] * p + [zeta(sum(a * b for a, b in zip(u, x))) for x in noncentral])
        labels.append("L" + "".join(map(str, u)))
    for a in range(1, p):
        rows.append([p**m * zeta(a * j) for j in range(p)] + [0] * len(noncentral))
        labels.append(f"V{a}")
    return CharacterTable(p ** (1 + 2 * m), tuple(sizes), np.array(rows), 0, tuple(labels))


# -- generators ---------------------------------------------------------------

def dihedral(m: int) -> CatalogEntry:
    """Representation ring of the dihedral group of order ``2m`` with the
    faithful rotation representation ``rho1``."""
    if m < 3:
        raise ValueError("dihedral(m) needs m >= 3")
    table = dihedral_table(m)
    v = [1 if label == "rho1" else 0 for label in table.row_labels()]
    if m % 2:
        expected = ((m + 1) / (2 * m),)
    elif (m // 2) % 2:
        expected = ((m + 2) / (2 * m),)
    else:
        expected = ((m + 2) / (2 * m), 1 / m)
    formula = AsymptoticFormula(2.0, len(expected), expected, "catalog-closed-form")
    return _entry_from_table(
        "dihedral", {"m": m}, table, v,
        expected_formula=formula,
        exactness=EXACT_FROM_N1 if m in DIHEDRAL_EXACT else ASYMPTOTIC_ONLY,
    )


def extraspecial(p: int, m: int) -> CatalogEntry:
    """Extraspecial group of order ``p**(1+2m)`` with a degree ``p**m`` irreducible."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extraspecial(p, m) needs m >= 1")
    if p ** (1 + 2 * m) > MAX_GROUP_ORDER:
        raise ParameterTooLarge(f"group order {p}^{1 + 2 * m} exceeds {MAX_GROUP_ORDER}")
    rank = p ** (2 * m) + p - 1
    if rank > MAX_RANK:
        raise ParameterTooLarge(f"representation ring of rank {rank} exceeds {MAX_RANK}")
    table = extraspecial_table(p, m)
    v = [1 if label == "V1" else 0 for label in table.row_labels()]
    residues = [1.0] + [float(p) ** -m] * (p - 1)
    return _entry_from_table(
        "extraspecial", {"p": p, "m": m}, table, v,
        expected_formula=formula_from_residues(float(p**m), residues),
        exactness=EXACT_ON_RESIDUES,
    )


def fibonacci() -> CatalogEntry:
    """Fibonacci fusion ring: ``X * X = 1 + X``."""
    def rule(i, j):
        if i == 0 or j == 0:
            return {i + j: 1}
        return {0: 1, 1: 1}

    alg = structure_from_rule(2, rule, ["1", "X"])
    x = alg.basis_element("X")
    formula = AsymptoticFormula(PHI, 1, ((5 + math.sqrt(5)) / 10,), "catalog-closed-form")
    return CatalogEntry(
        name="fibonacci", params={}, matrix=action_matrix(alg, x), algebra=alg,
        element=x, expected_formula=formula, exactness=ASYMPTOTIC_ONLY,
    )


def verlinde_fusion(k: int) -> StructureTensor:
    """Level-``k`` fusion ring with simples ``X0..X(k-1)`` (truncated Clebsch-Gordan)."""
    def rule(i, j):
        top = min(i + j, 2 * (k - 1) - i - j)
        return {l: 1 for l in range(abs(i - j), top + 1, 2)}

    return structure_from_rule(k, rule, [f"X{i}" for i in range(k)])


def quantum_number(a: int, k: int) -> float:
    """``[a]_q`` at ``q = exp(pi i / (k + 1))``."""
    return math.sin(a * math.pi / (k + 1)) / math.sin(math.pi / (k + 1))


def verlinde_sl2(k: int) -> CatalogEntry:
    if k < 2:
        raise ValueError("verlinde_sl2(k) needs k >= 2")
    alg = verlinde_fusion(k)
    x = alg.basis_element("X1")
    qn = [quantum_number(a, k) for a in range(1, k + 1)]
    norm = sum(t * t for t in qn)
    lam = 2 * math.cos(math.pi / (k + 1))
    if k % 2 == 0:
        coeffs = (sum(qn) / norm,)
    else:
        alternating = sum((-1) ** a * t for a, t in enumerate(qn))
        coeffs = (sum(qn) / norm, alternating / norm)
    return CatalogEntry(
        name="verlinde-sl2", params={"k": k}, matrix=action_matrix(alg, x), algebra=alg,
        element=x,
        expected_formula=AsymptoticFormula(lam, len(coeffs), coeffs, "catalog-closed-form"),
        exactness=EXACT_FROM_N1 if k in VERLINDE_EXACT else ASYMPTOTIC_ONLY,
    )


#: Primes for which the generated matrix is checked against published data.
SL2_VERIFIED_PRIMES = (3, 5, 7)


def sl2_modular_matrix(p: int) -> list[list[int]]:
    """Action matrix of the vector representation for SL2 over F_p (size 2p-1)."""
    size = 2 * p - 1
    mat = [[0] * size for _ in range(size)]

    def put(i, j, value):  # 1-indexed
        mat[i - 1][j - 1] += value

    for i in range(2, size + 1):
        put(i, i - 1, 1)
    for i in itertools.chain(range(1, p - 1), range(p + 1, size)):
        put(i, i + 1, 1)
    put(p, p + 1, 2)
    put(p, 2 * p - 2, 1)
    return mat


def sl2_modular(p: int) -> CatalogEntry:
    if p < 3 or not is_prime(p):
        raise NotPrime(f"sl2_modular needs an odd prime, got {p}")
    size = 2 * p - 1
    pre = matrix_from_rows(sl2_modular_matrix(p), [f"T{i}" for i in range(size)])
    formula = AsymptoticFormula(
        2.0, 2, (1 / (2 * p - 2), 1 / (2 * p * p - 2 * p)), "catalog-closed-form"
    )
    extrapolated = p not in SL2_VERIFIED_PRIMES
    notes = ("matrix-only entry: no structure tensor, algebra operations unavailable",)
    if extrapolated:
        notes += (f"p={p} is an extrapolation of the pattern verified for p in {SL2_VERIFIED_PRIMES}",)
    return CatalogEntry(
        name="sl2-modular", params={"p": p}, matrix=unit_component(pre),
        expected_formula=formula, exactness=ASYMPTOTIC_ONLY,
        extrapolated=extrapolated, notes=notes,
    )


# -- fixtures for user-supplied inputs ------------------------------------------

#: Expected formulas for G(d,1,m) with its standard representation, keyed by (d, m).
IMPRIMITIVE_REFLECTION_FORMULAS = {
    (1, 3): AsymptoticFormula(3.0, 1, (2 / 3,), "catalog-closed-form"),
    (2, 3): AsymptoticFormula(3.0, 1, (5 / 12,), "catalog-closed-form"),
    (2, 4): AsymptoticFormula(4.0, 2, (19 / 96, 1 / 32), "catalog-closed-form"),
}


def soergel_dihedral_formula(m: int) -> AsymptoticFormula:
    """Expected formula for dihedral Soergel bimodules (user-ingested matrices)."""
    return AsymptoticFormula(4.0, 1, (1 / (2 * m),), "catalog-closed-form")


# -- registry -------------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    name: str
    build: Callable[..., CatalogEntry]
    params: dict = field(default_factory=dict)
    summary: str = ""
    formula: str = ""
    exactness: str = ""
    caveats: str = ""


FAMILIES = {
    f.name: f
    for f in [
        Family(
            "fibonacci", fibonacci, {},
            "Fibonacci fusion ring, generator X with X*X = 1 + X",
            "a(n) = (5 + sqrt5)/10 * phi^n",
            ASYMPTOTIC_ONLY,
        ),
        Family(
            "dihedral", dihedral, {"m": "integer >= 3"},
            "representation ring of the dihedral group of order 2m, rotation rep rho1",
            "a(n) = (m+1)/(2m) 2^n (m odd); (m+2)/(2m) 2^n (m/2 odd); "
            "((m+2)/(2m) + (-1)^n/m) 2^n (m/2 even)",
            f"{EXACT_FROM_N1} for m in {{4, 8}}, else {ASYMPTOTIC_ONLY}",
        ),
        Family(
            "extraspecial", extraspecial, {"p": "prime", "m": "integer >= 1"},
            "extraspecial p-group of order p^(1+2m), irreducible V of degree p^m",
            "a(n) = (p^m)^n if p | n, (p^m)^(n-1) otherwise",
            EXACT_ON_RESIDUES,
            f"group order <= {MAX_GROUP_ORDER}, rank <= {MAX_RANK}",
        ),
        Family(
            "verlinde-sl2", verlinde_sl2, {"k": "integer >= 2"},
            "level-k SL2 fusion ring (k simples), generator X1",
            "a(n) = (S1 + S_alt (-1)^n) / S2 * (2cos(pi/(k+1)))^n with quantum-number "
            "sums S1 = sum [a], S_alt = sum (-1)^(a+1) [a] (odd k only), S2 = sum [a]^2",
            f"{EXACT_FROM_N1} for k in {{2, 3, 5}}, else {ASYMPTOTIC_ONLY}",
        ),
        Family(
            "sl2-modular", sl2_modular, {"p": "odd prime"},
            "SL2 over F_p, vector representation (matrix-only entry)",
            "a(n) = (1/(2p-2) + (-1)^n/(2p^2-2p)) * 2^n",
            ASYMPTOTIC_ONLY,
            f"generator verified against published matrices for p in {SL2_VERIFIED_PRIMES}; "
            "other p are extrapolated",
        ),
    ]
}


def get_entry(name: str, **params) -> CatalogEntry:
    try:
        family = FAMILIES[name]
    except KeyError:
        raise UnknownEntry(f"unknown catalog entry {name!r}; known: {', '.join(FAMILIES)}") from None
    missing = [p for p in family.params if params.get(p) is None]
    if missing:
        raise ValueError(f"{name} needs parameter(s): {', '.join(missing)}")
    return family.build(**{p: params[p] for p in family.params})


def standard_entries() -> list[CatalogEntry]:
    """The parameter sets exercised by the acceptance suite."""
    out = [fibonacci()]
    out += [dihedral(m) for m in range(3, 13)]
    out += [extraspecial(p, m) for p, m in [(2, 1), (3, 1), (5, 1), (3, 2)]]
    out += [verlinde_sl2(k) for k in range(2, 10)]
    out += [sl2_modular(p) for p in SL2_VERIFIED_PRIMES]
    return out
