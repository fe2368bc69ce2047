import cmath
import math

import pytest

from weylsys.errors import PoleHit
from weylsys.lsystem import (
    LSystemParams,
    RealizationTarget,
    impedance,
    quasi_kernel_xi,
    realize,
    transfer,
    vw_consistency,
)
from weylsys.malpha import AlphaParam
from weylsys.potentials import Potential
from weylsys.weyl import mfunction


def constant_m_potential(value: complex) -> Potential:
    return Potential(ell=0.0, q=lambda x: 0.0, label="const-m", closed_form_m=lambda z: value)


class TestImpedance:
    def test_mu_zero_gives_negated_m(self, mf_bessel_closed):
        sys = LSystemParams(mu=0.0, h=1j, mf=mf_bessel_closed)
        for z in (1j, 2j, -1 + 1j, 0.5 - 2j):
            assert abs(impedance(sys, z) + mf_bessel_closed.value(z)) < 1e-14

    def test_mu_inf_gives_reciprocal(self, mf_bessel_closed):
        sys = LSystemParams(mu=math.inf, h=1j, mf=mf_bessel_closed)
        z = 2j
        assert abs(impedance(sys, z) - 1.0 / mf_bessel_closed.value(z)) < 1e-14

    def test_general_parameters(self):
        mf = mfunction(constant_m_potential(2j), "closed_form")
        sys = LSystemParams(mu=1.0, h=1j, mf=mf)
        assert abs(impedance(sys, 1j) - (3 - 4j) / 5) < 1e-14

    def test_requires_dissipative_h(self, mf_bessel_closed):
        with pytest.raises(ValueError):
            LSystemParams(mu=0.0, h=1.0 - 1j, mf=mf_bessel_closed)


class TestTransfer:
    def test_phase_factor_form(self, mf_bessel_closed):
        for t in (0.0, -1.0, 0.5, 2.0):
            a = AlphaParam.from_tan(t)
            sys = LSystemParams(mu=t, h=1j, mf=mf_bessel_closed)
            for z in (1j, -1 + 0.5j):
                m = mf_bessel_closed.value(z)
                want = -cmath.exp(2j * a.alpha) * (m - 1j) / (m + 1j)
                assert abs(transfer(sys, z) - want) < 1e-13

    def test_explicit_bessel_form_mu_zero(self, mf_bessel_closed):
        # independent closed form in sqrt(z) for the mu = 0, h = i system
        sys = LSystemParams(mu=0.0, h=1j, mf=mf_bessel_closed)
        for z in (1j, 2j, -1 + 1j):
            s = cmath.sqrt(z)
            want = ((1j - 1) * s + 1j * z - 1 - 1j) / ((1 + 1j) * s - 1j * z - 1 + 1j)
            assert abs(transfer(sys, z) - want) < 1e-13

    def test_zero_of_transfer(self):
        mf = mfunction(constant_m_potential(1j), "closed_form")
        sys = LSystemParams(mu=1.0, h=1j, mf=mf)
        assert transfer(sys, 1j) == 0.0

    def test_pole_of_transfer(self):
        mf = mfunction(constant_m_potential(-1j), "closed_form")
        sys = LSystemParams(mu=1.0, h=1j, mf=mf)
        with pytest.raises(PoleHit):
            transfer(sys, 1j)

    def test_modulus_symmetry_and_contractive_half_plane(self, mf_bessel_closed):
        # |W(z)| |W(conj z)| = 1 exactly; contraction on Im z < 0.
        for t in (0.0, -0.5, 1.0, math.inf):
            sys = LSystemParams(mu=t, h=1j, mf=mf_bessel_closed)
            for z in (0.3 + 1.2j, -2 + 0.4j, 4 + 3j):
                wu = abs(transfer(sys, z))
                wl = abs(transfer(sys, z.conjugate()))
                assert abs(wu * wl - 1.0) < 1e-12
                assert wl <= 1.0 + 1e-12
                assert wu >= 1.0 - 1e-12


class TestVWConsistency:
    @pytest.mark.parametrize(
        "mu,z",
        [(0.7, 1j), (0.0, 2j), (math.inf, -1 + 1j)],
    )
    def test_roundtrip_residual(self, mf_bessel_closed, mu, z):
        sys = LSystemParams(mu=mu, h=1j, mf=mf_bessel_closed)
        assert vw_consistency(sys, z) <= 1e-12

    def test_general_h(self, mf_bessel_closed):
        sys = LSystemParams(mu=-0.3, h=0.5 + 2j, mf=mf_bessel_closed)
        assert vw_consistency(sys, 1.5j) <= 1e-12


class TestQuasiKernel:
    def test_generic(self, mf_bessel_closed):
        sys = LSystemParams(mu=1.0, h=1j, mf=mf_bessel_closed)
        assert quasi_kernel_xi(sys).xi == -1.0

    def test_dirichlet_sentinel(self, mf_bessel_closed):
        sys = LSystemParams(mu=0.0, h=1j, mf=mf_bessel_closed)
        assert quasi_kernel_xi(sys).xi == math.inf

    def test_mu_inf(self, mf_bessel_closed):
        sys = LSystemParams(mu=math.inf, h=1j, mf=mf_bessel_closed)
        assert quasi_kernel_xi(sys).xi == 0.0


class TestRealize:
    def test_neg_m_infinity(self, mf_bessel_closed):
        sys = realize(RealizationTarget.NEG_M_INFINITY, mf_bessel_closed)
        assert (sys.mu, sys.h) == (0.0, 1j)

    def test_recip_m_infinity(self, mf_bessel_closed):
        sys = realize(RealizationTarget.RECIP_M_INFINITY, mf_bessel_closed)
        assert math.isinf(sys.mu) and sys.h == 1j

    def test_neg_m_alpha(self, mf_bessel_closed):
        a = AlphaParam.from_tan(1.0)
        sys = realize(RealizationTarget.NEG_M_ALPHA, mf_bessel_closed, a)
        assert (sys.mu, sys.h) == (1.0, 1j)
        vertical = realize(
            RealizationTarget.NEG_M_ALPHA, mf_bessel_closed, AlphaParam.from_alpha(math.pi / 2)
        )
        assert math.isinf(vertical.mu)

    def test_realization_matches_target_function(self, mf_bessel_closed):
        from weylsys.malpha import neg_m_alpha

        for t in (-1.0, -0.25, 0.0, 2.0, math.inf):
            a = AlphaParam.from_tan(t)
            sys = realize(RealizationTarget.NEG_M_ALPHA, mf_bessel_closed, a)
            for z in (1j, -2 + 0.5j, 1 - 1j):
                m = mf_bessel_closed.value(z)
                got = impedance(sys, z)
                want = neg_m_alpha(m, a)
                assert abs(got - want) <= 1e-12 * (1 + abs(m))
