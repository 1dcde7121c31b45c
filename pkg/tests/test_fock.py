import numpy as np
import pytest

from qng.fock import (ChannelSpec, GaussianMapSpec, TruncatedState,
                      TruncationError, apply_loss, apply_map, make_coherent,
                      make_displaced_squeezed, make_fock, make_pac, make_pss,
                      make_squeezed, mix, moments, photon_probs)


class TestConstructors:
    def test_fock_vacuum(self):
        st = make_fock(0, 10)
        assert photon_probs(st)[0] == 1.0
        assert st.tail_bound == 0.0

    def test_fock_three(self):
        st = make_fock(3, 10)
        p = photon_probs(st)
        assert p[3] == 1.0
        assert moments(st)[0] == 3.0

    def test_fock_above_cutoff(self):
        with pytest.raises(TruncationError):
            make_fock(11, 10)

    def test_coherent_zero_is_vacuum(self):
        st = make_coherent(0, 10)
        assert photon_probs(st)[0] == pytest.approx(1.0, abs=1e-14)

    def test_coherent_mean_photon(self):
        st = make_coherent(1, 40)
        assert moments(st)[0] == pytest.approx(1.0, abs=1e-10)

    def test_coherent_poisson_ground_probability(self):
        st = make_coherent(2, 40)
        assert photon_probs(st)[0] == pytest.approx(np.exp(-4), rel=1e-12)

    def test_coherent_poisson_weights(self):
        # full Poisson(4) distribution, independent closed form
        st = make_coherent(2, 40)
        p = photon_probs(st)
        n = np.arange(41)
        from scipy.stats import poisson
        np.testing.assert_allclose(p, poisson.pmf(n, 4.0), atol=1e-12)

    def test_coherent_truncation_error(self):
        with pytest.raises(TruncationError):
            make_coherent(4, 10)

    def test_pac_zero_is_single_photon(self):
        st = make_pac(0, 10)
        assert photon_probs(st)[1] == pytest.approx(1.0, abs=1e-14)

    def test_pac_mean_photon(self):
        st = make_pac(1, 40)
        assert moments(st)[0] == pytest.approx(2.5, abs=1e-9)

    def test_pac_field_amplitude(self):
        st = make_pac(1, 40)
        assert moments(st)[1] == pytest.approx(1.5, abs=1e-9)

    def test_pss_mean_photon(self):
        st = make_pss(0.5, 60)
        nbar = moments(st)[0]
        assert nbar == pytest.approx(3 * np.sinh(0.5) ** 2 + 1, abs=1e-9)

    def test_pss_squared_amplitude(self):
        st = make_pss(0.5, 60)
        a2 = moments(st)[2]
        assert a2 == pytest.approx(3 * np.cosh(0.5) * np.sinh(0.5), abs=1e-9)

    def test_pss_small_r_limit(self):
        st = make_pss(1e-4, 60)
        assert photon_probs(st)[1] == pytest.approx(1.0, abs=1e-6)

    def test_squeezed_vacuum_photon_number(self):
        st = make_squeezed(0.3, 40)
        assert moments(st)[0] == pytest.approx(np.sinh(0.3) ** 2, abs=1e-10)


class TestStateValidation:
    def test_rejects_non_hermitian(self):
        rho = np.zeros((3, 3), dtype=complex)
        rho[0, 0] = 1.0
        rho[0, 1] = 0.1
        with pytest.raises(ValueError):
            TruncatedState(cutoff=2, matrix=rho, tail_bound=0.0)

    def test_rejects_bad_trace(self):
        rho = np.eye(3, dtype=complex)
        with pytest.raises(ValueError):
            TruncatedState(cutoff=2, matrix=rho, tail_bound=0.0)

    def test_rejects_negative_eigenvalue(self):
        rho = np.diag([1.5, -0.5, 0.0]).astype(complex)
        with pytest.raises(ValueError):
            TruncatedState(cutoff=2, matrix=rho, tail_bound=0.0)


class TestLoss:
    def test_single_photon(self):
        st = apply_loss(make_fock(1, 10), ChannelSpec(0.3))
        p = photon_probs(st)
        assert p[0] == pytest.approx(0.3, abs=1e-14)
        assert p[1] == pytest.approx(0.7, abs=1e-14)

    def test_zero_loss_is_identity(self):
        st = make_pac(1, 40)
        out = apply_loss(st, ChannelSpec(0.0))
        np.testing.assert_array_equal(out.matrix, st.matrix)

    def test_fock3_half_loss_binomial(self):
        from math import comb
        st = apply_loss(make_fock(3, 10), ChannelSpec(0.5))
        p = photon_probs(st)
        for l in range(4):
            assert p[l] == pytest.approx(comb(3, l) / 8, abs=1e-13)

    @pytest.mark.parametrize("m", range(7))
    @pytest.mark.parametrize("eps", [0.1, 0.5, 0.9])
    def test_fock_binomial_closed_form(self, m, eps):
        from math import comb
        st = apply_loss(make_fock(m, 12), ChannelSpec(eps))
        p = photon_probs(st)
        expected = [comb(m, l) * (1 - eps) ** l * eps ** (m - l)
                    for l in range(m + 1)]
        np.testing.assert_allclose(p[: m + 1], expected, atol=1e-12)

    def test_composition(self):
        st = make_pac(1.2, 50)
        e1, e2 = 0.2, 0.35
        twice = apply_loss(apply_loss(st, ChannelSpec(e1)), ChannelSpec(e2))
        once = apply_loss(st, ChannelSpec(1 - (1 - e1) * (1 - e2)))
        assert np.max(np.abs(twice.matrix - once.matrix)) < 1e-8

    def test_moment_covariance(self):
        st = make_pac(1.5, 60)
        n0, a10, a20 = moments(st)
        eps = 0.4
        n1, a11, a21 = moments(apply_loss(st, ChannelSpec(eps)))
        assert n1 == pytest.approx((1 - eps) * n0, abs=1e-8)
        assert a11 == pytest.approx(np.sqrt(1 - eps) * a10, abs=1e-8)
        assert a21 == pytest.approx((1 - eps) * a20, abs=1e-8)

    def test_full_loss_gives_vacuum(self):
        st = apply_loss(make_fock(4, 10), ChannelSpec(1.0))
        assert photon_probs(st)[0] == pytest.approx(1.0, abs=1e-12)

    def test_trace_preserved(self):
        st = make_pss(0.4, 60)
        out = apply_loss(st, ChannelSpec(0.6))
        assert np.trace(out.matrix).real == pytest.approx(
            np.trace(st.matrix).real, abs=1e-8)


class TestGaussianMap:
    def test_identity(self):
        st = make_pac(1, 40)
        assert apply_map(st, GaussianMapSpec()) is st

    def test_displaced_vacuum_is_coherent(self):
        out = apply_map(make_fock(0, 50), GaussianMapSpec(displacement=1.0))
        ref = make_coherent(1.0, 50)
        assert np.max(np.abs(out.matrix - ref.matrix)) < 1e-8

    def test_squeezed_vacuum_photon_number(self):
        out = apply_map(make_fock(0, 50), GaussianMapSpec(squeeze=0.3))
        assert moments(out)[0] == pytest.approx(np.sinh(0.3) ** 2, abs=1e-8)

    def test_squeezed_vacuum_matches_series(self):
        out = apply_map(make_fock(0, 50), GaussianMapSpec(squeeze=0.3))
        ref = make_squeezed(0.3, 50)
        assert np.max(np.abs(out.matrix - ref.matrix)) < 1e-10

    def test_displacement_moment_rule(self):
        st = make_pac(0.8, 70)
        n0, a10, _ = moments(st)
        beta = 0.5 - 0.2j
        out = apply_map(st, GaussianMapSpec(displacement=beta))
        expected = n0 + abs(beta) ** 2 + 2 * np.real(np.conj(beta) * a10)
        assert moments(out)[0] == pytest.approx(expected, abs=1e-8)

    def test_squeeze_moment_rule(self):
        st = make_pss(0.4, 80)
        n0, _, a20 = moments(st)
        q = -0.25
        mu, nu = np.cosh(q), np.sinh(q)
        out = apply_map(st, GaussianMapSpec(squeeze=q))
        expected = nu**2 + (mu**2 + nu**2) * n0 + mu * nu * 2 * np.real(a20)
        assert moments(out)[0] == pytest.approx(expected, abs=1e-7)

    def test_trace_preserved(self):
        st = make_pss(0.3, 60)
        out = apply_map(st, GaussianMapSpec(displacement=0.3, squeeze=-0.2))
        assert np.trace(out.matrix).real == pytest.approx(
            np.trace(st.matrix).real, abs=1e-8)

    def test_excessive_displacement_raises(self):
        with pytest.raises(TruncationError):
            apply_map(make_fock(0, 4), GaussianMapSpec(displacement=3.0))

    def test_displaced_squeezed_constructor(self):
        st = make_displaced_squeezed(0.7 + 0.1j, -0.3, 60)
        n_exp = abs(0.7 + 0.1j) ** 2 + np.sinh(0.3) ** 2
        assert moments(st)[0] == pytest.approx(n_exp, abs=1e-8)


def test_mix():
    a = make_fock(0, 10)
    b = make_fock(2, 10)
    st = mix([a, b], [0.25, 0.75])
    p = photon_probs(st)
    assert p[0] == pytest.approx(0.25)
    assert p[2] == pytest.approx(0.75)


def test_mix_rejects_bad_weights():
    a = make_fock(0, 10)
    with pytest.raises(ValueError):
        mix([a, a], [0.6, 0.6])
