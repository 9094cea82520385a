"""Action matrices of elements and the combinatorics of their graphs.

Matrices use the transposed convention throughout: entry ``(k, j)`` is the
multiplicity of ``c_k`` in ``c * c_j``, so column ``j`` is the product with
the ``j``-th basis element and the digraph has an edge ``j -> k`` whenever
that entry is positive.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _exact
from .based_algebra import Element, StructureTensor, as_element
from .errors import InputError, NotIrreducible


@dataclass(frozen=True, eq=False)
class PreActionMatrix:
    """Full ``r x r`` matrix of left multiplication by ``source_element``."""

    entries: np.ndarray
    source_element: Element | None = None
    labels: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class ActionMatrix:
    """Restriction of a pre-action matrix to the unit's undirected component.

    ``basis_map[p]`` is the original basis index of row/column ``p``; the
    unit sits at position 0.
    """

    entries: np.ndarray
    basis_map: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    unit_position: int = 0

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def to_float(self) -> np.ndarray:
        return _exact.to_float(self.entries)

    def rows(self) -> list[list]:
        return [list(row) for row in self.entries]


def pre_action_matrix(alg: StructureTensor, c) -> PreActionMatrix:
    """``M'(c)[k, j] = sum_i a_i m[i, j, k]``."""
    c = as_element(alg, c)
    r = alg.rank
    out = _exact.zeros((r, r))
    for i, a in enumerate(c):
        if a != 0:
            out = out + a * alg.constants[i].T
    out = np.vectorize(_exact.normalize, otypes=[object])(out)
    return PreActionMatrix(_exact.frozen(out), c, alg.labels)


def matrix_from_rows(rows, labels=None) -> PreActionMatrix:
    """Wrap a raw square matrix (unit at index 0) as a pre-action matrix."""
    m = _exact.exact_array(rows, ndim=2)
    if m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InputError(f"action matrix must be square and nonempty, got {m.shape}")
    if any(x < 0 for x in m.flat):
        raise InputError("action matrix has a negative entry")
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != m.shape[0]:
            raise InputError(f"{len(labels)} labels for a {m.shape[0]}x{m.shape[0]} matrix")
    return PreActionMatrix(_exact.frozen(m), None, labels)


def unit_component(pre: PreActionMatrix | ActionMatrix) -> ActionMatrix:
    """Submatrix on the undirected connected component of the unit."""
    m = pre.entries
    size = m.shape[0]
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in range(size):
            if v not in seen and (m[v, u] > 0 or m[u, v] > 0):
                seen.add(v)
                queue.append(v)
    keep = sorted(seen)
    sub = _exact.frozen(m[np.ix_(keep, keep)].copy())
    base = getattr(pre, "basis_map", None) or tuple(range(size))
    labels = None
    if pre.labels is not None:
        labels = tuple(pre.labels[i] for i in keep)
    return ActionMatrix(sub, tuple(base[i] for i in keep), labels)


def action_matrix(alg: StructureTensor, c) -> ActionMatrix:
    return unit_component(pre_action_matrix(alg, c))


def successors(m: np.ndarray) -> list[list[int]]:
    size = m.shape[0]
    return [[k for k in range(size) if m[k, j] > 0] for j in range(size)]


def strongly_connected_components(m: np.ndarray | ActionMatrix) -> list[list[int]]:
    """Tarjan's algorithm (iterative) on the digraph ``j -> k`` iff ``m[k, j] > 0``."""
    if isinstance(m, ActionMatrix):
        m = m.entries
    adj = successors(m)
    size = len(adj)
    index = [-1] * size
    low = [0] * size
    on_stack = [False] * size
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(size):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for nxt in range(pos, len(adj[v])):
                w = adj[v][nxt]
                if index[w] == -1:
                    work.append((v, nxt + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def is_irreducible(m: ActionMatrix | np.ndarray) -> bool:
    """True iff the digraph is strongly connected (and the matrix is nonzero)."""
    entries = m.entries if isinstance(m, ActionMatrix) else m
    if not any(x > 0 for x in entries.flat):
        return False
    return len(strongly_connected_components(entries)) == 1


def has_cycle(m: ActionMatrix | np.ndarray) -> bool:
    """Whether the digraph contains a closed walk (i.e. spectral radius > 0)."""
    entries = m.entries if isinstance(m, ActionMatrix) else m
    for comp in strongly_connected_components(entries):
        if len(comp) > 1 or entries[comp[0], comp[0]] > 0:
            return True
    return False


def _bfs_levels(adj: list[list[int]], start: int = 0) -> list[int]:
    level = [-1] * len(adj)
    level[start] = 0
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if level[v] == -1:
                level[v] = level[u] + 1
                queue.append(v)
    return level


def graph_period(m: ActionMatrix | np.ndarray) -> int:
    """Exact period (gcd of closed-walk lengths) of an irreducible matrix.

    Uses BFS levels from vertex 0: the period is the gcd of
    ``level[u] + 1 - level[v]`` over all edges ``u -> v``.
    """
    entries = m.entries if isinstance(m, ActionMatrix) else m
    if not is_irreducible(entries):
        raise NotIrreducible("period is only defined here for irreducible matrices")
    adj = successors(entries)
    level = _bfs_levels(adj)
    g = 0
    for u, outs in enumerate(adj):
        for v in outs:
            g = math.gcd(g, level[u] + 1 - level[v])
    return g


def cyclic_classes(m: ActionMatrix | np.ndarray, period: int | None = None) -> list[int]:
    """Cyclic class (BFS level mod period) of each vertex of an irreducible matrix."""
    entries = m.entries if isinstance(m, ActionMatrix) else m
    if period is None:
        period = graph_period(entries)
    level = _bfs_levels(successors(entries))
    return [lv % period for lv in level]
