"""Finite based algebras with nonnegative structure constants.

A based algebra of rank ``r`` has basis ``c_0 = 1, c_1, ..., c_{r-1}`` and
multiplication ``c_i c_j = sum_k m[i, j, k] c_k`` with ``m >= 0``.  All
arithmetic here is exact: constants and coefficients are ints or Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _exact
from .errors import (
    AssociativityViolation,
    InvalidCharacterTable,
    NegativeCoefficient,
    NegativeConstant,
    NonIntegralConstant,
    OrthogonalityViolation,
    RankMismatch,
    UnitLawViolation,
)

#: Above this rank the O(r^5) associativity check is opt-in.
EAGER_ASSOCIATIVITY_MAX_RANK = 64

#: Tolerance for snapping character inner products to integers.
CHARACTER_TOL = 1e-9


@dataclass(frozen=True)
class Element:
    """A nonnegative exact coefficient vector over the basis of an algebra."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(_exact.to_exact(a) for a in self.coefficients)
        for i, a in enumerate(coeffs):
            if a < 0:
                raise NegativeCoefficient(f"coefficient {i} is negative ({a})")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def basis(cls, rank: int, index: int) -> "Element":
        return cls(tuple(1 if i == index else 0 for i in range(rank)))

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def array(self) -> np.ndarray:
        out = np.empty(len(self.coefficients), dtype=object)
        out[:] = list(self.coefficients)
        return out

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coefficients)

    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.coefficients) if a != 0]


@dataclass(frozen=True, eq=False)
class StructureTensor:
    """Validated structure constants ``constants[i, j, k] = m_{i,j}^k``.

    Instances are produced by :func:`new_based_algebra`; the unit is always
    basis index 0.
    """

    constants: np.ndarray
    labels: tuple[str, ...]
    commutative: bool
    associativity_checked: bool
    unit_index: int = field(default=0, init=False)

    @property
    def rank(self) -> int:
        return self.constants.shape[0]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element labelled {label!r}") from None

    def basis_element(self, index: int | str) -> Element:
        if isinstance(index, str):
            index = self.index_of(index)
        return Element.basis(self.rank, index)

    def unit(self) -> Element:
        return Element.basis(self.rank, 0)

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in self.constants.flat)

    def __repr__(self):
        return f"StructureTensor(rank={self.rank}, labels={list(self.labels)!r})"


def new_based_algebra(
    rank: int,
    constants,
    labels: Sequence[str] | None = None,
    *,
    unit_index: int = 0,
    check_associativity: bool | None = None,
) -> StructureTensor:
    """Validate structure constants and return a :class:`StructureTensor`.

    Parameters
    ----------
    rank : int
        Number of basis elements ``r``.
    constants : array_like, shape (r, r, r)
        ``constants[i][j][k]`` is the multiplicity of ``c_k`` in ``c_i c_j``.
        Entries may be ints, Fractions or ``"p/q"`` strings.
    labels : sequence of str, optional
        Basis names; defaults to ``c0, c1, ...``.
    unit_index : int
        Position of the unit in the supplied basis.  The basis is reordered
        so that the unit ends up at index 0.
    check_associativity : bool, optional
        Force or skip the associativity check.  By default it runs for
        ``rank <= EAGER_ASSOCIATIVITY_MAX_RANK``.

    Raises
    ------
    NegativeConstant, UnitLawViolation, AssociativityViolation
    """
    if rank < 1:
        raise RankMismatch(f"rank must be positive, got {rank}")
    m = _exact.exact_array(constants)
    if m.shape != (rank, rank, rank):
        raise RankMismatch(f"constants have shape {m.shape}, expected {(rank,) * 3}")
    if labels is None:
        labels = [f"c{i}" for i in range(rank)]
    labels = tuple(str(s) for s in labels)
    if len(labels) != rank:
        raise RankMismatch(f"{len(labels)} labels for rank {rank}")
    if len(set(labels)) != rank:
        raise RankMismatch("basis labels must be distinct")

    if not 0 <= unit_index < rank:
        raise RankMismatch(f"unit index {unit_index} out of range")
    if unit_index != 0:
        perm = [unit_index] + [i for i in range(rank) if i != unit_index]
        m = m[np.ix_(perm, perm, perm)]
        labels = tuple(labels[i] for i in perm)

    _check_nonnegative(m)
    _check_unit_law(m)
    if check_associativity is None:
        check_associativity = rank <= EAGER_ASSOCIATIVITY_MAX_RANK
    if check_associativity:
        check_associative(m)

    commutative = bool(np.all(m == m.transpose(1, 0, 2)))
    return StructureTensor(
        constants=_exact.frozen(m),
        labels=labels,
        commutative=commutative,
        associativity_checked=bool(check_associativity),
    )


def _check_nonnegative(m: np.ndarray) -> None:
    for idx, x in np.ndenumerate(m):
        if x < 0:
            raise NegativeConstant(idx, x)


def _check_unit_law(m: np.ndarray) -> None:
    r = m.shape[0]
    for j in range(r):
        for k in range(r):
            want = 1 if j == k else 0
            if m[0, j, k] != want:
                raise UnitLawViolation(
                    f"1 * c{j} has coefficient {m[0, j, k]} at c{k}, expected {want}"
                )
            if m[j, 0, k] != want:
                raise UnitLawViolation(
                    f"c{j} * 1 has coefficient {m[j, 0, k]} at c{k}, expected {want}"
                )


def check_associative(m) -> None:
    """Exact associativity check; raises AssociativityViolation on failure.

    Works on the common-denominator integer form of the tensor and uses int64
    products when they cannot overflow.
    """
    if isinstance(m, StructureTensor):
        m = m.constants
    r = m.shape[0]
    n, _ = _exact.scaled_integers(m)
    biggest = max((abs(x) for x in n.flat), default=0)
    if biggest * biggest * r < 2**62:
        n = n.astype(np.int64)
    flat_right = n.reshape(r, r * r)
    flat_left = n.reshape(r * r, r)
    for i in range(r):
        # (c_i c_j) c_k  versus  c_i (c_j c_k), both as arrays over (j, k, l)
        lhs = n[i].dot(flat_right).reshape(r, r, r)
        rhs = flat_left.dot(n[i]).reshape(r, r, r)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            j, k, l = (int(t) for t in bad[0])
            d2 = _exact.common_denominator(m) ** 2
            left = _exact.normalize(Fraction(int(lhs[j, k, l]), d2))
            right = _exact.normalize(Fraction(int(rhs[j, k, l]), d2))
            raise AssociativityViolation((i, j, k, l), left, right)


def as_element(alg: StructureTensor | int, x) -> Element:
    rank = alg if isinstance(alg, int) else alg.rank
    if not isinstance(x, Element):
        x = Element(tuple(x))
    if len(x) != rank:
        raise RankMismatch(f"element has {len(x)} coefficients, algebra has rank {rank}")
    return x


def multiply(alg: StructureTensor, x, y) -> Element:
    """Exact product ``x * y`` in the algebra."""
    x = as_element(alg, x)
    y = as_element(alg, y)
    m = alg.constants
    acc = _exact.zeros(alg.rank)
    ys = [(j, b) for j, b in enumerate(y) if b != 0]
    for i, a in enumerate(x):
        if a == 0:
            continue
        for j, b in ys:
            acc = acc + (a * b) * m[i, j]
    return Element(tuple(_exact.normalize(v) for v in acc))


def power_expand(alg: StructureTensor, c, n: int) -> Element:
    """``c**n`` by repeated multiplication (no matrix shortcut)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    c = as_element(alg, c)
    out = alg.unit()
    for _ in range(n):
        out = multiply(alg, c, out)
    return out


def total_coefficient_sum(e) -> int | Fraction:
    return _exact.normalize(sum((Fraction(a) for a in e), Fraction(0)))


# -- character tables ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Complex character table of a finite group.

    ``characters[L, j]`` is the value of the irreducible character ``L`` on
    conjugacy class ``j``.
    """

    group_order: int
    class_sizes: tuple[int, ...]
    characters: np.ndarray
    identity_class: int = 0
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        chars = np.array(self.characters, dtype=complex)
        chars.flags.writeable = False
        object.__setattr__(self, "characters", chars)
        object.__setattr__(self, "class_sizes", tuple(int(s) for s in self.class_sizes))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    @property
    def n_irreducibles(self) -> int:
        return self.characters.shape[0]

    @property
    def degrees(self) -> np.ndarray:
        return self.characters[:, self.identity_class].real

    def row_labels(self) -> tuple[str, ...]:
        if self.labels is not None:
            return self.labels
        return tuple(f"chi{i}" for i in range(self.n_irreducibles))

    def trivial_row(self) -> int:
        for i, row in enumerate(self.characters):
            if np.allclose(row, 1.0, rtol=0, atol=CHARACTER_TOL):
                return i
        raise InvalidCharacterTable("table has no trivial character")

    def algebra_order(self) -> list[int]:
        """Table rows in the basis order used by :func:`from_character_table`."""
        t = self.trivial_row()
        return [t] + [i for i in range(self.n_irreducibles) if i != t]

    def element(self, coefficients) -> Element:
        """Convert coefficients given in table row order to algebra order."""
        coefficients = list(coefficients)
        if len(coefficients) != self.n_irreducibles:
            raise RankMismatch(
                f"{len(coefficients)} coefficients for {self.n_irreducibles} characters"
            )
        return Element(tuple(coefficients[i] for i in self.algebra_order()))

    def check(self, tol: float = CHARACTER_TOL) -> None:
        chars = self.characters
        n_irr, n_cls = chars.shape
        if n_irr != n_cls or n_cls != len(self.class_sizes):
            raise InvalidCharacterTable(
                f"table is {n_irr}x{n_cls} with {len(self.class_sizes)} class sizes"
            )
        if any(s <= 0 for s in self.class_sizes):
            raise InvalidCharacterTable("class sizes must be positive")
        if sum(self.class_sizes) != self.group_order:
            raise InvalidCharacterTable(
                f"class sizes sum to {sum(self.class_sizes)}, group order is {self.group_order}"
            )
        if not 0 <= self.identity_class < n_cls or self.class_sizes[self.identity_class] != 1:
            raise InvalidCharacterTable("identity class must exist and have size 1")
        degrees = chars[:, self.identity_class]
        for i, d in enumerate(degrees):
            if abs(d.imag) > tol or abs(d.real - round(d.real)) > tol or round(d.real) < 1:
                raise InvalidCharacterTable(f"character {i} has degree {d}, not a positive integer")
        sizes = np.asarray(self.class_sizes, dtype=float)
        gram = (chars * sizes) @ chars.conj().T / self.group_order
        err = np.abs(gram - np.eye(n_irr))
        if err.max() > tol:
            i, j = np.unravel_index(int(err.argmax()), err.shape)
            raise OrthogonalityViolation(
                f"<chi{i}, chi{j}> = {gram[i, j]:.3g}, expected {int(i == j)}"
            )


def from_character_table(table: CharacterTable, tol: float = CHARACTER_TOL) -> StructureTensor:
    """Representation ring of a finite group from its character table.

    ``m[i, j, k] = <chi_i chi_j, chi_k>`` is computed in floating point and
    snapped to the nearest integer.  The trivial character becomes the unit
    (basis index 0); other rows keep their relative order.

    Raises
    ------
    OrthogonalityViolation
        Rows are not orthonormal under the class-weighted inner product.
    NonIntegralConstant
        A fusion multiplicity lies farther than ``tol`` from an integer.
    """
    table.check(tol)
    order = table.algebra_order()
    chars = table.characters[order]
    labels = [table.row_labels()[i] for i in order]
    sizes = np.asarray(table.class_sizes, dtype=float)
    raw = np.einsum(
        "c,ic,jc,kc->ijk", sizes, chars, chars, chars.conj(), optimize=True
    ) / table.group_order
    snapped = np.rint(raw.real)
    err = np.abs(raw - snapped)
    if err.max() > tol:
        idx = np.unravel_index(int(err.argmax()), err.shape)
        raise NonIntegralConstant(
            f"multiplicity at {tuple(int(t) for t in idx)} is {raw[idx]:.12g}, not an integer"
        )
    constants = np.empty(snapped.shape, dtype=object)
    for idx, x in np.ndenumerate(snapped):
        constants[idx] = int(x)
    return new_based_algebra(len(order), constants, labels)


def tensor_product(a: StructureTensor, b: StructureTensor) -> StructureTensor:
    """Tensor product of two based algebras (basis ``a_i (x) b_j``, unit first)."""
    ra, rb = a.rank, b.rank
    m = np.multiply.outer(a.constants, b.constants).transpose(0, 3, 1, 4, 2, 5)
    m = m.reshape(ra * rb, ra * rb, ra * rb)
    labels = [f"{x}*{y}" for x in a.labels for y in b.labels]
    return new_based_algebra(ra * rb, m, labels)


def structure_from_rule(rank: int, rule, labels=None) -> StructureTensor:
    """Build an algebra from ``rule(i, j) -> {k: multiplicity}``."""
    m = _exact.zeros((rank, rank, rank))
    for i in range(rank):
        for j in range(rank):
            for k, mult in rule(i, j).items():
                m[i, j, k] = _exact.to_exact(mult)
    return new_based_algebra(rank, m, labels)

