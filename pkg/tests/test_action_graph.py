import math
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfgrowth import catalog
from pfgrowth.action_graph import (
    action_matrix,
    cyclic_classes,
    graph_period,
    has_cycle,
    is_irreducible,
    matrix_from_rows,
    pre_action_matrix,
    strongly_connected_components,
    unit_component,
)
from pfgrowth.asymptotics import iterate_unit_vectors
from pfgrowth.based_algebra import multiply, new_based_algebra, power_expand, total_coefficient_sum
from pfgrowth.errors import InputError, NotIrreducible

import oracles

# Reference action matrix for SL2 over F_3.
SL2_P3 = [
    [0, 1, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [0, 1, 0, 3, 0],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 0],
]


def fib():
    return new_based_algebra(2, [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], ["1", "X"])


def to_digraph(entries):
    g = nx.DiGraph()
    size = entries.shape[0]
    g.add_nodes_from(range(size))
    for k in range(size):
        for j in range(size):
            if entries[k, j] > 0:
                g.add_edge(j, k)
    return g


def cycle_gcd(entries):
    g = 0
    for cyc in nx.simple_cycles(to_digraph(entries)):
        g = math.gcd(g, len(cyc))
    return g


def test_fibonacci_pre_action():
    pre = pre_action_matrix(fib(), [0, 1])
    assert pre.entries.tolist() == [[0, 1], [1, 1]]


def test_unit_gives_identity():
    alg = catalog.verlinde_fusion(4)
    pre = pre_action_matrix(alg, alg.unit())
    assert pre.entries.tolist() == np.eye(4, dtype=int).tolist()


def test_sl2_p3_matrix():
    assert catalog.sl2_modular(3).matrix.rows() == SL2_P3


def test_columns_are_products():
    entry = catalog.dihedral(6)
    alg, c = entry.algebra, entry.element
    pre = pre_action_matrix(alg, c)
    for j in range(alg.rank):
        col = list(pre.entries[:, j])
        prod = multiply(alg, c, alg.basis_element(j))
        assert col == list(prod)
        assert sum(col) == total_coefficient_sum(prod)


def test_connected_component_is_everything():
    m = action_matrix(fib(), [0, 1])
    assert m.basis_map == (0, 1)


def test_block_diagonal_component():
    rows = [[1, 1, 0, 0], [1, 0, 0, 0], [0, 0, 2, 1], [0, 0, 1, 0]]
    m = unit_component(matrix_from_rows(rows))
    assert m.basis_map == (0, 1)
    assert m.rows() == [[1, 1], [1, 0]]


def test_component_uses_undirected_edges():
    # 0 -> 1 only; 1 belongs to the unit's component even though 0 is not reachable from 1
    rows = [[0, 0, 0], [1, 0, 0], [0, 0, 1]]
    assert unit_component(matrix_from_rows(rows)).basis_map == (0, 1)


def test_unit_component_idempotent():
    alg = catalog.dihedral(8).algebra
    c = alg.basis_element("rho2")
    once = action_matrix(alg, c)
    twice = unit_component(once)
    assert once.basis_map == twice.basis_map
    assert once.rows() == twice.rows()


def test_basis_map_composes():
    alg = catalog.dihedral(8).algebra
    m = action_matrix(alg, alg.basis_element("rho2"))
    labels = [alg.labels[i] for i in m.basis_map]
    assert list(m.labels) == labels and labels[0] == "1"


def test_bad_matrix_rows():
    with pytest.raises(InputError):
        matrix_from_rows([[1, 2, 3]])
    with pytest.raises(InputError):
        matrix_from_rows([[1, -1], [0, 1]])


class TestIrreducibility:
    def test_fibonacci(self):
        assert is_irreducible(action_matrix(fib(), [0, 1]))

    def test_upper_triangular(self):
        assert not is_irreducible(np.array([[0, 1], [0, 0]], dtype=object))

    def test_zero_matrix(self):
        assert not is_irreducible(np.zeros((1, 1), dtype=object))

    def test_sl2_p5_reference_matrix_is_reducible(self):
        # vertices 1..p-1 form a path that the rest of the graph never enters
        m = catalog.sl2_modular(5).matrix
        assert not is_irreducible(m)
        comps = strongly_connected_components(m)
        assert sorted(map(len, comps)) == [4, 5]

    def test_against_networkx(self):
        for entry in catalog.standard_entries():
            g = to_digraph(entry.matrix.entries)
            ours = sorted(map(tuple, strongly_connected_components(entry.matrix)))
            theirs = sorted(tuple(sorted(c)) for c in nx.strongly_connected_components(g))
            assert ours == theirs, entry.title
            assert is_irreducible(entry.matrix) == nx.is_strongly_connected(g)


class TestPeriod:
    def test_fibonacci(self):
        assert graph_period(action_matrix(fib(), [0, 1])) == 1

    def test_dihedral4(self):
        assert graph_period(catalog.dihedral(4).matrix) == 2

    def test_one_by_one(self):
        assert graph_period(np.array([[5]], dtype=object)) == 1

    def test_cycle(self):
        rows = np.zeros((6, 6), dtype=object)
        for i in range(6):
            rows[(i + 1) % 6, i] = 1
        assert graph_period(rows) == 6

    def test_not_irreducible(self):
        with pytest.raises(NotIrreducible):
            graph_period(np.array([[1, 0], [1, 1]], dtype=object))

    def test_extraspecial_period_is_p(self):
        for p in (2, 3, 5):
            assert graph_period(catalog.extraspecial(p, 1).matrix) == p

    def test_against_cycle_enumeration(self):
        for entry in catalog.standard_entries():
            if entry.matrix.size <= 14 and is_irreducible(entry.matrix):
                assert graph_period(entry.matrix) == cycle_gcd(entry.matrix.entries), entry.title

    def test_cyclic_classes_advance_by_one(self):
        for entry in catalog.standard_entries():
            m = entry.matrix
            if not is_irreducible(m):
                continue
            h = graph_period(m)
            cls = cyclic_classes(m, h)
            assert len(set(cls)) == h
            for k in range(m.size):
                for j in range(m.size):
                    if m.entries[k, j] > 0:
                        assert cls[k] == (cls[j] + 1) % h


def test_has_cycle():
    assert has_cycle(np.array([[1]], dtype=object))
    assert not has_cycle(np.array([[0, 0], [1, 0]], dtype=object))


def test_iteration_matches_power_expand():
    for entry in catalog.standard_entries():
        if entry.matrix_only:
            continue
        m = entry.matrix
        for n, vec in enumerate(iterate_unit_vectors(m, 12)):
            full = power_expand(entry.algebra, entry.element, n)
            assert list(vec) == [full[i] for i in m.basis_map], (entry.title, n)
            # nothing leaks outside the unit's component
            outside = set(range(entry.algebra.rank)) - set(m.basis_map)
            assert all(full[i] == 0 for i in outside)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_periods_match_cycles(seed):
    rng = random.Random(seed)
    size = rng.randint(1, 6)
    rows = np.zeros((size, size), dtype=object)
    for _ in range(rng.randint(size, 3 * size)):
        rows[rng.randrange(size), rng.randrange(size)] = rng.randint(1, 3)
    g = to_digraph(rows)
    assert is_irreducible(rows) == (nx.is_strongly_connected(g) and g.number_of_edges() > 0)
    if is_irreducible(rows):
        assert graph_period(rows) == cycle_gcd(rows)


def test_random_algebra_components():
    rng = random.Random(11)
    for _ in range(30):
        r, m, labels = oracles.random_based_algebra(rng)
        alg = new_based_algebra(r, m, labels)
        c = oracles.random_element(rng, r)
        am = action_matrix(alg, c)
        assert am.basis_map[0] == 0
        assert unit_component(am).basis_map == am.basis_map
