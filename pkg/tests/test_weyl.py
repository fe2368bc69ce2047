import math

import numpy as np
import pytest

from weylsys.errors import OnSpectrum, RiccatiBlowup
from weylsys.potentials import Potential, table_potential
from weylsys.weyl import eval_m_infinity, m_minus_zero, mfunction


class TestEvalMInfinity:
    def test_bessel_engine_matches_closed_form_at_i(self, mf_bessel_engine):
        got = eval_m_infinity(mf_bessel_engine, 1j)
        assert abs(got.value - complex(1.2071067811865475, -0.5)) < 1e-6
        assert got.err_estimate <= 1e-6

    def test_free_engine(self, mf_free_engine):
        got = eval_m_infinity(mf_free_engine, 2j)
        assert abs(got.value - (1 - 1j)) < 1e-9

    @pytest.mark.parametrize("z", [4.0, 0.0, 2.5 + 0j])
    def test_on_spectrum_rejected(self, mf_bessel_engine, z):
        with pytest.raises(OnSpectrum):
            eval_m_infinity(mf_bessel_engine, z)

    def test_engine_oracle_spot_grid(self, mf_bessel_engine, mf_bessel_closed):
        zs = [complex(a, b) for a in (-4.0, -1.0, 0.5, 3.0) for b in (0.1, 1.0, 10.0)]
        zs += [complex(-0.05, 0.0), complex(-7.0, 0.0)]
        for z in zs:
            got = eval_m_infinity(mf_bessel_engine, z).value
            want = mf_bessel_closed.value(z)
            assert abs(got - want) < 1e-6, f"z={z}"

    def test_neg_m_is_herglotz_via_engine(self, mf_bessel_engine):
        zs = [complex(a, b) for a in (-3.0, -0.3, 0.7, 4.0) for b in (0.05, 0.8, 5.0)]
        min_im = min((-eval_m_infinity(mf_bessel_engine, z).value).imag for z in zs)
        assert min_im >= -1e-10

    def test_lower_half_plane_symmetry(self, mf_bessel_engine):
        z = 1.3 - 0.7j
        got = eval_m_infinity(mf_bessel_engine, z).value
        mirror = eval_m_infinity(mf_bessel_engine, z.conjugate()).value
        assert abs(got - mirror.conjugate()) < 1e-8

    def test_doubling_xmax_within_error_estimate(self, bessel):
        for z in (0.5 + 0.5j, -2.0 + 0j):
            mf1 = mfunction(bessel, "riccati_engine", x_max=60.0)
            mf2 = mfunction(bessel, "riccati_engine", x_max=120.0)
            r1 = eval_m_infinity(mf1, z)
            r2 = eval_m_infinity(mf2, z)
            assert abs(r1.value - r2.value) < r1.err_estimate

    def test_riccati_blowup_in_a_binding_well(self):
        # Finite well with bound states: at real z between eigenvalues the
        # decaying solution oscillates through zeros inside the well and
        # the log-derivative blows up there.
        p = table_potential(0.0, [(0.0, -5.0), (10.0, -5.0), (10.5, 0.0), (100.0, 0.0)])
        mf = mfunction(p, "riccati_engine")
        with pytest.raises(RiccatiBlowup):
            eval_m_infinity(mf, complex(-1.0, 0.0))


class TestMMinusZero:
    def test_bessel_engine(self, mf_bessel_engine):
        assert abs(m_minus_zero(mf_bessel_engine) - 1.0) <= 1e-4

    def test_free_engine(self, mf_free_engine):
        assert abs(m_minus_zero(mf_free_engine)) <= 1e-4

    def test_closed_form_uses_attached_value(self, mf_bessel_closed):
        assert m_minus_zero(mf_bessel_closed) == 1.0

    def test_divergent_limit_maps_to_inf(self):
        p = Potential(
            ell=0.0,
            q=lambda x: 0.0,
            label="divergent-test",
            closed_form_m=lambda z: -1.0 / z,
        )
        mf = mfunction(p, "closed_form")
        assert m_minus_zero(mf) == math.inf


class TestMFunctionConstruction:
    def test_default_truncation_radius(self, bessel):
        assert mfunction(bessel, "riccati_engine").x_max == 60.0

    def test_closed_form_requires_formula(self):
        p = table_potential(1.0, [(1.0, 0.0)])
        with pytest.raises(ValueError):
            mfunction(p, "closed_form")

    def test_auto_prefers_closed_form(self, bessel):
        assert mfunction(bessel).mode == "closed_form"

    def test_auto_falls_back_to_engine(self):
        p = table_potential(1.0, [(1.0, 0.0)])
        assert mfunction(p).mode == "riccati_engine"
