import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfgrowth import catalog
from pfgrowth.based_algebra import (
    CharacterTable,
    Element,
    check_associative,
    from_character_table,
    multiply,
    new_based_algebra,
    power_expand,
    structure_from_rule,
    tensor_product,
    total_coefficient_sum,
)
from pfgrowth.errors import (
    AssociativityViolation,
    NegativeCoefficient,
    NegativeConstant,
    NonIntegralConstant,
    OrthogonalityViolation,
    RankMismatch,
    UnitLawViolation,
)

import oracles

FIB = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
S3 = CharacterTable(6, (1, 3, 2), np.array([[1, 1, 1], [1, -1, 1], [2, 0, -1]]), 0,
                    ("triv", "sgn", "std"))


def fib():
    return new_based_algebra(2, FIB, ["1", "X"])


class TestValidation:
    def test_fibonacci_valid(self):
        alg = fib()
        assert alg.rank == 2 and alg.commutative and alg.associativity_checked

    def test_trivial_algebra(self):
        alg = new_based_algebra(1, [[[1]]])
        assert alg.rank == 1
        assert power_expand(alg, [3], 4) == Element((81,))

    def test_broken_unit(self):
        bad = [[[1, 0], [0, 1]], [[0, 0], [1, 1]]]  # c1 * 1 = 0
        with pytest.raises(UnitLawViolation):
            new_based_algebra(2, bad)

    def test_negative_constant_reports_index(self):
        bad = [[[1, 0], [0, 1]], [[0, 1], [1, -1]]]
        with pytest.raises(NegativeConstant) as info:
            new_based_algebra(2, bad)
        assert info.value.index == (1, 1, 1)

    def test_rank2_always_associative(self):
        # with the unit law in place a rank-2 table has a single free product
        for a in range(3):
            for b in range(3):
                new_based_algebra(2, [[[1, 0], [0, 1]], [[0, 1], [a, b]]])

    def test_non_associative_rank3(self):
        # x*x = y, x*y = 0, y*x = x: (x x) x = x but x (x x) = 0
        m = np.zeros((3, 3, 3), dtype=int)
        for j in range(3):
            m[0, j, j] = m[j, 0, j] = 1
        m[1, 1, 2] = 1
        m[2, 1, 1] = 1
        with pytest.raises(AssociativityViolation) as info:
            new_based_algebra(3, m)
        assert len(info.value.quadruple) == 4
        assert info.value.left != info.value.right

    def test_shape_mismatch(self):
        with pytest.raises(RankMismatch):
            new_based_algebra(3, FIB)

    def test_fraction_strings(self):
        m = [[[1, 0], [0, 1]], [[0, 1], ["1/2", "1/2"]]]
        alg = new_based_algebra(2, m)
        assert alg.constants[1, 1, 1] == Fraction(1, 2)

    def test_unit_reordering(self):
        swapped = [[[1, 1], [1, 0]], [[1, 0], [0, 1]]]  # unit is index 1
        alg = new_based_algebra(2, swapped, ["X", "1"], unit_index=1)
        assert alg.labels == ("1", "X")
        assert multiply(alg, [0, 1], [0, 1]) == Element((1, 1))

    def test_negative_element(self):
        with pytest.raises(NegativeCoefficient):
            Element((1, -1))

    def test_commutativity_flag(self):
        rng = random.Random(3)
        flags = set()
        for _ in range(40):
            r, m, labels = oracles.random_based_algebra(rng)
            alg = new_based_algebra(r, m, labels)
            flags.add(alg.commutative)
            expect = all(m[i][j][k] == m[j][i][k] for i in range(r) for j in range(r) for k in range(r))
            assert alg.commutative == expect
        assert flags == {True, False}


class TestMultiply:
    def test_fibonacci_square(self):
        assert multiply(fib(), [0, 1], [0, 1]) == Element((1, 1))

    def test_unit_is_neutral(self):
        alg = catalog.verlinde_fusion(5)
        x = Element((0, 2, 1, 0, 3))
        assert multiply(alg, alg.unit(), x) == x
        assert multiply(alg, x, alg.unit()) == x

    def test_verlinde_k3(self):
        alg = catalog.verlinde_fusion(3)
        assert multiply(alg, alg.basis_element(1), alg.basis_element(1)) == Element((1, 0, 1))

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            multiply(fib(), [1, 0, 0], [1, 0])

    def test_bilinear(self):
        alg = catalog.verlinde_fusion(4)
        x, y, z = Element((1, 0, 2, 0)), Element((0, 1, 0, 1)), Element((0, 0, 1, 1))
        lhs = multiply(alg, x, Element(tuple(a + b for a, b in zip(y, z))))
        rhs = [a + b for a, b in zip(multiply(alg, x, y), multiply(alg, x, z))]
        assert list(lhs) == rhs


class TestPowers:
    def test_fibonacci_fourth_power(self):
        e = power_expand(fib(), [0, 1], 4)
        assert e == Element((2, 3))
        assert total_coefficient_sum(e) == 5

    def test_zeroth_power_is_unit(self):
        alg = catalog.verlinde_fusion(4)
        assert power_expand(alg, [0, 1, 1, 0], 0) == alg.unit()

    def test_dihedral4_square(self):
        entry = catalog.dihedral(4)
        e = power_expand(entry.algebra, entry.element, 2)
        # four one-dimensional summands, nothing two-dimensional
        assert total_coefficient_sum(e) == 4
        assert all(e[i] == 1 for i in range(4)) and e[4] == 0

    def test_extraspecial_cube(self):
        entry = catalog.extraspecial(3, 1)
        assert total_coefficient_sum(power_expand(entry.algebra, entry.element, 3)) == 27

    def test_recursion(self):
        entry = catalog.dihedral(7)
        alg, c = entry.algebra, entry.element
        for n in range(12):
            assert power_expand(alg, c, n + 1) == multiply(alg, c, power_expand(alg, c, n))

    def test_total_sum(self):
        assert total_coefficient_sum((2, 3)) == 5
        assert total_coefficient_sum((1, 0, 0)) == 1
        assert total_coefficient_sum((Fraction(1, 2), Fraction(1, 2))) == 1


class TestCharacterTables:
    def test_s3_ring(self):
        alg = from_character_table(S3)
        assert alg.labels == ("triv", "sgn", "std")
        std = alg.basis_element("std")
        assert multiply(alg, std, std) == Element((1, 1, 1))
        assert multiply(alg, alg.basis_element("sgn"), std) == Element((0, 0, 1))

    def test_trivial_group(self):
        alg = from_character_table(CharacterTable(1, (1,), np.array([[1]])))
        assert alg.rank == 1

    def test_dihedral10(self):
        table = catalog.dihedral_table(5)
        alg = from_character_table(table)
        assert alg.rank == 4
        rho = alg.basis_element("rho1")
        sq = multiply(alg, rho, rho)
        assert total_coefficient_sum(sq) == 3
        assert sq == Element((1, 1, 0, 1))  # triv + sgn + rho2

    def test_trivial_row_moved_first(self):
        chars = np.array([[1, -1, 1], [1, 1, 1], [2, 0, -1]])
        alg = from_character_table(CharacterTable(6, (1, 3, 2), chars, 0, ("sgn", "triv", "std")))
        assert alg.labels[0] == "triv"

    def test_non_orthogonal(self):
        chars = np.array([[1, 1, 1], [1, -1, 1], [2, 0, -0.9]])
        with pytest.raises(OrthogonalityViolation):
            from_character_table(CharacterTable(6, (1, 3, 2), chars))

    def test_non_integral_constant(self):
        # rotate the non-identity columns of the C4 table about (1, 1, 1):
        # rows stay orthonormal with integer degrees, products do not close
        axis = np.ones(3) / np.sqrt(3)
        k = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
        rot = np.eye(3) + np.sin(0.3) * k + (1 - np.cos(0.3)) * k @ k
        chars = catalog.cyclic_table(4).characters.copy()
        chars[:, 1:] = chars[:, 1:] @ rot
        with pytest.raises(NonIntegralConstant):
            from_character_table(CharacterTable(4, (1, 1, 1, 1), chars))

    def test_c4_unit_component(self):
        from pfgrowth.action_graph import action_matrix
        alg = from_character_table(catalog.cyclic_table(4))
        m = action_matrix(alg, alg.basis_element("chi2"))
        assert m.basis_map == (0, 2)
        assert m.rows() == [[0, 1], [1, 0]]

    def test_dihedral_table_is_valid(self):
        for m in range(3, 16):
            catalog.dihedral_table(m).check()


class TestProducts:
    def test_tensor_product_of_fibonacci(self):
        alg = tensor_product(fib(), fib())
        assert alg.rank == 4
        xx = alg.basis_element("X*X")
        assert total_coefficient_sum(multiply(alg, xx, xx)) == 4

    def test_structure_from_rule(self):
        alg = structure_from_rule(2, lambda i, j: {0: 1} if i == j == 1 else {i + j: 1})
        assert multiply(alg, [0, 1], [0, 1]) == Element((1, 0))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_algebras_associative(seed):
    rng = random.Random(seed)
    r, m, labels = oracles.random_based_algebra(rng)
    alg = new_based_algebra(r, m, labels)
    check_associative(alg)
    x, y, z = (oracles.random_element(rng, r) for _ in range(3))
    assert multiply(alg, multiply(alg, x, y), z) == multiply(alg, x, multiply(alg, y, z))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 8))
def test_power_expand_matches_dictionary_oracle(seed, n):
    rng = random.Random(seed)
    r, m, labels = oracles.random_based_algebra(rng)
    alg = new_based_algebra(r, m, labels)
    c = oracles.random_element(rng, r)
    assert total_coefficient_sum(power_expand(alg, c, n)) == oracles.brute_power_sums(m, c, n)[n]
