import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given, settings
from hypothesis import strategies as st

import ring_thermo as rt
from ring_thermo.numerics import DEFAULT_POLICY, DiffScheme

from oracles import FROZEN


class TestErf:
    def test_zero(self):
        assert rt.erf(0.0) == 0.0

    def test_saturation(self):
        assert abs(rt.erf(6.0) - 1.0) <= 1e-12

    def test_unit_argument_frozen_value(self):
        assert rt.erf(1.0) == pytest.approx(FROZEN["erf_1"], abs=1e-12)

    def test_against_quadrature_oracle(self):
        # the defining integral, evaluated by adaptive quadrature
        for z in [0.1, 0.5, 1.0, 1.7, 2.4, 3.9]:
            ref, err = scipy.integrate.quad(lambda t: math.exp(-t * t), 0.0, z,
                                            epsabs=1e-14, epsrel=1e-14)
            ref *= 2.0 / math.sqrt(math.pi)
            assert err < 1e-13
            assert rt.erf(z) == pytest.approx(ref, abs=1e-12)

    @given(z=st.floats(min_value=-8.0, max_value=8.0, allow_nan=False))
    @settings(max_examples=300)
    def test_odd_and_bounded(self, z):
        assert abs(rt.erf(z) + rt.erf(-z)) <= 1e-15
        assert abs(rt.erf(z)) <= 1.0

    def test_array_input(self):
        z = np.array([-1.0, 0.0, 1.0])
        out = rt.erf(z)
        assert out.shape == z.shape
        assert out[1] == 0.0


class TestStableBoltzmannSum:
    def test_two_zero_modes(self):
        sb = rt.stable_boltzmann_sum([0.0, 0.0], beta=7.3)
        assert sb.log_sum == pytest.approx(math.log(2.0))
        assert sb.e_mean == 0.0

    def test_single_level(self):
        sb = rt.stable_boltzmann_sum([2.0], beta=3.0)
        assert sb.log_sum == pytest.approx(-6.0)
        assert sb.e_mean == pytest.approx(2.0)

    def test_ring_spectrum_frozen_value(self, unit_model):
        sb = rt.stable_boltzmann_sum(
            rt.spectrum_energies(unit_model, rt.Coupling.anisotropic(0.0)), beta=1.0)
        assert sb.log_sum == pytest.approx(math.log(3.1405164), abs=1e-6)
        assert sb.log_sum == pytest.approx(FROZEN["log_z1_xi0_beta1"], abs=1e-13)

    def test_extreme_beta_does_not_overflow(self):
        sb = rt.stable_boltzmann_sum([5.0, 5.001, 7.0, 400.0], beta=1e6)
        assert math.isfinite(sb.log_sum)
        assert sb.log_sum == pytest.approx(-5.0 * 1e6)
        assert sb.e_mean == pytest.approx(5.0)

    @given(energies=st.lists(st.floats(min_value=0.0, max_value=50.0), min_size=1, max_size=20),
           beta=st.floats(min_value=1e-3, max_value=100.0),
           shift=st.floats(min_value=-10.0, max_value=10.0))
    @settings(max_examples=200)
    def test_energy_shift_identity(self, energies, beta, shift):
        base = rt.stable_boltzmann_sum(energies, beta)
        moved = rt.stable_boltzmann_sum([e + shift for e in energies], beta)
        assert moved.log_sum == pytest.approx(base.log_sum - beta * shift,
                                              rel=1e-12, abs=1e-12)

    @given(energies=st.lists(st.floats(min_value=0.0, max_value=50.0), min_size=1, max_size=20),
           beta=st.floats(min_value=1e-3, max_value=100.0))
    @settings(max_examples=200)
    def test_variance_non_negative(self, energies, beta):
        sb = rt.stable_boltzmann_sum(energies, beta)
        assert sb.e2_mean >= sb.e_mean**2 - 1e-9 * max(1.0, sb.e2_mean)
        assert sb.e_var >= 0.0

    def test_truncation_failure_with_tiny_budget(self, unit_model):
        policy = rt.TruncationPolicy(n_min=1, n_max=1)
        with pytest.raises(rt.TruncationFailure):
            rt.stable_boltzmann_sum(
                rt.spectrum_energies(unit_model, rt.Coupling.anisotropic(0.0)),
                beta=2.0, policy=policy)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            rt.stable_boltzmann_sum([1.0], beta=0.0)
        with pytest.raises(ValueError):
            rt.stable_boltzmann_sum([], beta=1.0)
        with pytest.raises(ValueError):
            rt.TruncationPolicy(tail_tol=2.0)

    def test_moments_match_brute_force(self, unit_model):
        from oracles import brute_moments
        c = rt.Coupling.isotropic(0.8)
        sb = rt.stable_boltzmann_sum(rt.spectrum_energies(unit_model, c), beta=0.7)
        e1, e2 = brute_moments(unit_model, c, 0.7)
        assert sb.e_mean == pytest.approx(e1, rel=1e-12)
        assert sb.e2_mean == pytest.approx(e2, rel=1e-12)


class TestEulerMaclaurinZ1:
    def test_anisotropic_near_direct_sum_at_t1(self, unit_model):
        z = rt.euler_maclaurin_z1(unit_model, rt.Coupling.anisotropic(0.0), beta=1.0)
        assert z == pytest.approx(3.1405, rel=0.01)

    def test_isotropic_near_its_direct_sum_at_t1(self, unit_model):
        c = rt.Coupling.isotropic(0.0)
        direct = math.exp(rt.stable_boltzmann_sum(rt.spectrum_energies(unit_model, c), 1.0).log_sum)
        z = rt.euler_maclaurin_z1(unit_model, c, beta=1.0)
        assert z == pytest.approx(direct, rel=0.01)

    def test_direct_sum_reaches_ground_degeneracy_at_low_t(self, unit_model):
        # two zero-energy states dominate the anisotropic zero-coupling spectrum
        sb = rt.stable_boltzmann_sum(
            rt.spectrum_energies(unit_model, rt.Coupling.anisotropic(0.0)), beta=50.0)
        assert math.exp(sb.log_sum) == pytest.approx(2.0, rel=1e-12)

    def test_truncated_form_invalid_at_low_t(self, unit_model):
        # the Bernoulli-truncated expansion misses the low-T limit entirely at
        # omega = 1: it lands near 0.88 instead of the true value 2
        z = rt.euler_maclaurin_z1(unit_model, rt.Coupling.anisotropic(0.0), beta=50.0)
        assert z == pytest.approx(0.8759942, rel=1e-5)
        assert abs(z - 2.0) > 1.0

    def test_agreement_window(self, unit_model, strengths, both_variants):
        # at omega = 1 eV the 1% cross-check holds for T >= 0.55 eV
        for make in both_variants:
            for x in strengths:
                c = make(x)
                for T in np.linspace(0.55, 1.0, 10):
                    beta = 1.0 / float(T)
                    direct = math.exp(rt.stable_boltzmann_sum(
                        rt.spectrum_energies(unit_model, c), beta).log_sum)
                    em = rt.euler_maclaurin_z1(unit_model, c, beta)
                    assert abs(em - direct) / direct < 0.01

    def test_exact_in_dense_spectrum_regime(self, strengths, both_variants):
        # physical 50 nm ring: beta*omega ~ 1e-4, truncation error is invisible
        model = rt.RingModel.physical()
        for make in both_variants:
            for x in strengths:
                c = make(x)
                for T in (0.2, 0.5, 1.0):
                    beta = 1.0 / T
                    direct = math.exp(rt.stable_boltzmann_sum(
                        rt.spectrum_energies(model, c), beta).log_sum)
                    em = rt.euler_maclaurin_z1(model, c, beta)
                    assert em == pytest.approx(direct, rel=1e-10)

    def test_non_positive_result_raises(self, unit_model):
        with pytest.raises(rt.NonPositiveResult):
            rt.euler_maclaurin_z1(unit_model, rt.Coupling.anisotropic(0.2), beta=1258.9)

    def test_rejects_non_positive_beta(self, unit_model):
        with pytest.raises(ValueError):
            rt.euler_maclaurin_z1(unit_model, rt.Coupling.anisotropic(0.0), beta=0.0)


class TestDifferentiate:
    def test_quadratic_exact(self):
        for order in (2, 4):
            d = rt.differentiate(lambda t: t * t, 1.0, DiffScheme(order=order))
            assert d == pytest.approx(2.0, abs=1e-10)

    def test_quartic_exact_for_fourth_order(self):
        d = rt.differentiate(lambda t: t**4, 2.0, DiffScheme(order=4))
        assert d == pytest.approx(32.0, rel=1e-10)

    def test_exponential(self):
        scheme = DiffScheme(order=2, eps_rel=2e-3, h_min=1e-9)  # h = 1e-3 at T=0.5
        d = rt.differentiate(math.exp, 0.5, scheme)
        assert d == pytest.approx(math.exp(0.5), abs=1e-6)

    def test_constant_gives_zero(self):
        for order in (2, 4):
            assert rt.differentiate(lambda t: 3.7, 0.2, DiffScheme(order=order)) == 0.0

    def test_domain_clip_warns_and_still_differentiates(self):
        with pytest.warns(rt.DomainClipWarning):
            d = rt.differentiate(lambda t: t * t, 1.5e-5, DiffScheme(order=4))
        assert d == pytest.approx(3e-5, rel=1e-4)

    def test_lower_bound_disabled_for_signed_variables(self):
        d = rt.differentiate(lambda u: u * u, 0.0, lower_bound=-math.inf)
        assert d == pytest.approx(0.0, abs=1e-12)

    def test_rejects_unknown_order(self):
        with pytest.raises(ValueError):
            DiffScheme(order=3)

    def test_default_step_rule(self):
        assert DEFAULT_POLICY.tail_tol == 1e-12
        scheme = DiffScheme()
        assert scheme.step(1.0) == pytest.approx(1e-3)
        assert scheme.step(1e-4) == pytest.approx(1e-5)
