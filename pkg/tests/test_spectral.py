import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfgrowth import catalog
from pfgrowth.action_graph import graph_period, is_irreducible, matrix_from_rows, unit_component
from pfgrowth.errors import LengthMismatch, PFPropertyViolation, ZeroSpectralRadius
from pfgrowth.spectral import (
    detect_period_spectrally,
    full_spectrum,
    pf_data,
    projector_column_sum,
    reconstruction_errors,
)

PHI = (1 + math.sqrt(5)) / 2
FIB = np.array([[0, 1], [1, 1]], dtype=object)


def test_fibonacci_spectrum():
    ev = full_spectrum(FIB).eigenvalues
    assert ev[0] == pytest.approx(PHI, rel=1e-12)
    assert ev[1] == pytest.approx(1 - PHI, rel=1e-12)


def test_identity_spectrum():
    s = full_spectrum(np.eye(3))
    assert s.clusters() == [(1 + 0j, 3)]


def test_path_a4_spectrum():
    ev = np.sort(full_spectrum(catalog.verlinde_sl2(4).matrix).eigenvalues.real)
    c1, c2 = 2 * math.cos(math.pi / 5), 2 * math.cos(2 * math.pi / 5)
    assert ev == pytest.approx([-c1, -c2, c2, c1], abs=1e-12)


def test_spectrum_conjugate_closed():
    ev = full_spectrum(catalog.extraspecial(3, 1).matrix).eigenvalues
    assert np.sort_complex(ev) == pytest.approx(np.sort_complex(ev.conj()), abs=1e-10)


def test_dimension_guard():
    with pytest.raises(ValueError):
        full_spectrum(np.eye(300))


class TestPFData:
    def test_fibonacci(self):
        pf = pf_data(FIB)
        assert pf.lam == pytest.approx(PHI, rel=1e-12)
        assert pf.period == 1
        assert pf.second_modulus == pytest.approx(PHI - 1, rel=1e-12)
        assert pf.ratio == pytest.approx(1 / PHI**2, rel=1e-12)

    def test_one_by_one(self):
        pf = pf_data(np.array([[3]], dtype=object))
        assert pf.lam == pytest.approx(3) and pf.period == 1 and pf.second_modulus == 0

    def test_dihedral4(self):
        pf = pf_data(catalog.dihedral(4).matrix)
        assert pf.lam == pytest.approx(2) and pf.period == 2
        assert pf.pseudo_dominant == pytest.approx([2, -2])

    def test_zero_radius(self):
        with pytest.raises(ZeroSpectralRadius):
            pf_data(np.array([[0, 0], [1, 0]], dtype=object))

    def test_double_leading_eigenvalue(self):
        m = np.array([[0, 0, 0], [1, 2, 0], [1, 0, 2]], dtype=object)
        with pytest.raises(PFPropertyViolation, match="Version 3"):
            pf_data(m)
        relaxed = pf_data(m, strict=False)
        assert not relaxed.pf_property_holds and relaxed.eigenpairs == ()

    def test_jordan_block_at_lambda(self):
        # 2x2 Jordan block at 1 reachable from the unit: multiplicity 2
        m = np.array([[0, 0, 0], [1, 1, 0], [0, 1, 1]], dtype=object)
        with pytest.raises(PFPropertyViolation, match="not supported"):
            pf_data(m)

    def test_reducible_uses_spectral_period(self):
        pf = pf_data(catalog.sl2_modular(5).matrix)
        assert not pf.irreducible and pf.period_source == "spectral" and pf.period == 2

    def test_pf_invariants_on_catalog(self):
        for entry in catalog.standard_entries():
            m = entry.matrix
            f = m.to_float()
            pf = pf_data(m)
            norm = np.abs(f).max()
            assert pf.second_modulus < pf.lam
            for k, (v, w) in enumerate(pf.eigenpairs):
                mu = pf.pseudo_dominant[k]
                assert abs(mu) == pytest.approx(pf.lam, rel=1e-9)
                assert np.abs(f @ v - mu * v).max() <= 1e-9 * norm
                assert np.abs(w @ f - mu * w).max() <= 1e-9 * norm
                assert abs(w @ v - 1) <= 1e-9
            v0, w0 = pf.eigenpairs[0]
            assert v0.real.min() >= -1e-12 and np.abs(v0.imag).max() <= 1e-12
            assert w0.real.min() >= -1e-12 and np.abs(w0.imag).max() <= 1e-12

    def test_perron_bounds(self):
        for entry in catalog.standard_entries():
            if not is_irreducible(entry.matrix):
                continue
            f = entry.matrix.to_float()
            lam = pf_data(entry.matrix).lam
            # column sums bound lambda for the transposed convention as well
            assert f.sum(axis=0).min() - 1e-12 <= lam <= f.sum(axis=0).max() + 1e-12
            assert f.sum(axis=1).min() - 1e-12 <= lam <= f.sum(axis=1).max() + 1e-12

    def test_graph_and_spectral_periods_agree(self):
        for entry in catalog.standard_entries():
            m = entry.matrix
            pf = pf_data(m)
            h, _ = detect_period_spectrally(pf.spectrum, pf.lam)
            assert h == pf.period, entry.title
            if is_irreducible(m):
                assert graph_period(m) == h


class TestProjectors:
    def test_fibonacci_column_sum(self):
        v, w = pf_data(FIB).eigenpairs[0]
        assert projector_column_sum(v, w).real == pytest.approx((5 + math.sqrt(5)) / 10, abs=1e-12)

    def test_unit_vectors(self):
        e = np.array([1.0, 0.0, 0.0])
        assert projector_column_sum(e, e) == 1

    def test_dihedral4_second_pair(self):
        v, w = pf_data(catalog.dihedral(4).matrix).eigenpairs[1]
        assert projector_column_sum(v, w) == pytest.approx(0.25, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            projector_column_sum(np.ones(2), np.ones(3))

    def test_idempotent_and_orthogonal(self):
        for entry in catalog.standard_entries():
            ps = pf_data(entry.matrix).projectors()
            for i, p in enumerate(ps):
                assert np.abs(p @ p - p).max() <= 1e-8
                for j, q in enumerate(ps):
                    if i != j:
                        assert np.abs(p @ q).max() <= 1e-8

    def test_reconstruction_decays(self):
        for entry in catalog.standard_entries():
            pf = pf_data(entry.matrix)
            errs = reconstruction_errors(entry.matrix, pf, 60)
            gamma = pf.ratio + 0.05
            c = max(errs[10], 1e-14) / gamma**10
            for n in range(10, 61):
                assert errs[n] <= max(c * gamma**n * 1.5, 1e-9), (entry.title, n)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 10), st.floats(-math.pi, math.pi))
def test_column_sum_scaling_invariance(r, theta):
    v, w = pf_data(catalog.dihedral(5).matrix).eigenpairs[0]
    t = r * cmath.exp(1j * theta)
    assert projector_column_sum(t * v, w / t) == pytest.approx(projector_column_sum(v, w), abs=1e-12)


def test_unit_component_of_relaxed_matrix():
    pre = matrix_from_rows([[1, 1, 0], [1, 0, 0], [0, 0, 5]])
    pf = pf_data(unit_component(pre))
    assert pf.lam == pytest.approx(PHI)
