import math

import numpy as np
import pytest
from scipy import integrate

from circjacobi import asymptotics as asy
from circjacobi import gammalaw as gl
from circjacobi import specfun as sf

# J(2) - J(1) - J(3/2) + J(1/2), the drift-1/2 terminal mean profile.
E_HALF_AT_ONE = 0.43152310867767134


class TestEnsembleParams:
    def test_validation(self):
        with pytest.raises(sf.DomainError):
            asy.EnsembleParams(0, 2.0, delta=0.0)
        with pytest.raises(sf.DomainError):
            asy.EnsembleParams(8, -1.0, delta=0.0)
        with pytest.raises(sf.DomainError):
            asy.EnsembleParams(8, 2.0, delta=-0.6)
        with pytest.raises(sf.DomainError):
            asy.EnsembleParams(8, 2.0, scaled_d=-0.1)
        with pytest.raises(sf.DomainError):
            asy.EnsembleParams(8, 2.0, delta=0.1, scaled_d=0.1)

    def test_effective_delta(self):
        p = asy.EnsembleParams(100, 2.0, scaled_d=0.5 + 0.5j)
        assert p.effective_delta == 1.0 * (0.5 + 0.5j) * 100
        assert p.regime == "scaled"
        q = asy.EnsembleParams(100, 2.0, delta=0.3)
        assert q.effective_delta == 0.3
        assert q.regime == "fixed"

    def test_ranks_end_at_zero(self):
        p = asy.EnsembleParams(5, 3.0, delta=0.0)
        ranks = p.coefficient_ranks()
        assert ranks[-1] == 0.0
        assert ranks[0] == 1.5 * 4


class TestExactMean:
    def test_single_term(self):
        p = asy.EnsembleParams(50, 2.0, delta=0.3 + 0.1j)
        d = p.effective_delta
        ref = sf.digamma(p.beta_prime * 49 + 1 + 2 * d.real) - sf.digamma(
            p.beta_prime * 49 + 1 + d.conjugate()
        )
        assert asy.exact_mean_logphi(p, 1) == pytest.approx(ref, abs=1e-14)

    def test_zero_deformation_vanishes(self):
        p = asy.EnsembleParams(64, 1.7, delta=0.0)
        for m in (1, 10, 64):
            assert asy.exact_mean_logphi(p, m) == 0.0

    def test_matches_cumulant_sum(self):
        p = asy.EnsembleParams(40, 2.5, delta=0.4 + 0.2j)
        m = 17
        ranks = p.coefficient_ranks()[:m]
        brute = sum(
            gl.cumulants(gl.CoefficientLaw(r, p.effective_delta)).mean for r in ranks
        )
        assert asy.exact_mean_logphi(p, m) == pytest.approx(brute, abs=1e-12)

    def test_first_regime_profile(self):
        # |mean + (delta/beta') log(1-t)| shrinks with n
        delta = 0.3
        errs = []
        for n in (100, 1000, 10000):
            p = asy.EnsembleParams(n, 2.0, delta=delta)
            v = asy.exact_mean_logphi(p, n // 2)
            errs.append(abs(v + delta * math.log(0.5)))
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 0.01

    def test_bad_index(self):
        p = asy.EnsembleParams(10, 2.0, delta=0.0)
        with pytest.raises(sf.DomainError):
            asy.exact_mean_logphi(p, 0)
        with pytest.raises(sf.DomainError):
            asy.exact_mean_logphi(p, 11)


class TestAcceleration:
    @pytest.mark.parametrize(
        "params",
        [
            asy.EnsembleParams(100, 2.0, delta=0.3 + 0.2j),
            asy.EnsembleParams(1000, 2.0, delta=0.3 + 0.2j),
            asy.EnsembleParams(10_000, 2.0, delta=0.3 + 0.2j),
            asy.EnsembleParams(10_000, 3.7, scaled_d=0.4 + 0.3j),
            asy.EnsembleParams(1000, 0.8, scaled_d=1.2),
        ],
        ids=["n1e2", "n1e3", "n1e4", "scaled", "smallbeta"],
    )
    def test_mean_crossover_agreement(self, params):
        n = params.n
        indices = range(1, n + 1) if n <= 100 else (1, 2, 17, n // 2, n - 1, n)
        for m in indices:
            lo = n - m + 1
            direct = asy._mean_sum(params, lo, n, accelerated=False)
            fast = asy._mean_sum(params, lo, n, accelerated=True)
            assert abs(direct - fast) <= 1e-9 * max(1.0, abs(direct))

    def test_cov_crossover_agreement(self):
        params = asy.EnsembleParams(10_000, 2.0, delta=0.3 + 0.2j)
        d = params.effective_delta
        for m in (1, 17, 9_999, 10_000):
            for alpha in (2 * d.real + 0j, d):
                a = asy._trigamma_sum(params, alpha, params.n - m + 1, params.n, False)
                b = asy._trigamma_sum(params, alpha, params.n - m + 1, params.n, True)
                assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


class TestExactCov:
    def test_real_deformation_diagonal(self):
        p = asy.EnsembleParams(30, 2.0, delta=0.7)
        cov = asy.exact_cov_zeta(p, 30)
        assert cov[0, 1] == 0.0

    def test_brute_force_cumulants(self):
        p = asy.EnsembleParams(50, 2.0, delta=0.4 + 0.3j)
        m = 20
        ranks = p.coefficient_ranks()[:m]
        brute = sum(
            gl.cumulants(gl.CoefficientLaw(r, p.effective_delta)).covariance
            for r in ranks
        )
        assert np.max(np.abs(asy.exact_cov_zeta(p, m) - brute)) < 1e-12

    def test_log_n_scaling_accelerated(self):
        p = asy.EnsembleParams(10**8, 2.0, delta=0.3 + 0.2j)
        cov = asy.exact_cov_zeta(p, 10**8) / math.log(10**8)
        assert cov[0, 0] == pytest.approx(0.5, rel=0.10)
        assert cov[1, 1] == pytest.approx(0.5, rel=0.10)
        assert abs(cov[0, 1]) < 0.05


class TestLimitFunctions:
    def test_zero_time(self):
        e, f = asy.limit_mean_functions(0.7 + 0.2j, 0.0)
        assert e == 0.0 and f == 0.0

    def test_half_drift_terminal(self):
        e, _ = asy.limit_mean_functions(0.5, 1.0)
        assert e == pytest.approx(E_HALF_AT_ONE, abs=1e-13)

    def test_real_drift_real_values(self):
        for t in (0.3, 0.8, 1.0):
            e, f = asy.limit_mean_functions(1.3, t)
            assert e.imag == 0.0
            assert f.imag == 0.0

    def test_second_regime_constant(self):
        # exact mean approaches n E + (1/beta - 1/2) F; the O(1) constant
        # carries the proof-consistent sign (numerically decidable).
        beta, d = 4.0, 0.6 + 0.4j
        n = 4000
        p = asy.EnsembleParams(n, beta, scaled_d=d)
        m = n // 2
        v = asy.exact_mean_logphi(p, m)
        e_val, f_val = asy.limit_mean_functions(d, m / n)
        assert abs((v - n * e_val) - (1 / beta - 0.5) * f_val) < 1e-4

    def test_second_regime_uniformity_rate(self):
        # sup-t error of the 1/n-corrected profile scales like 1/n^2
        beta, d = 4.0, 0.6 + 0.4j
        sups = []
        for n in (1000, 2000):
            p = asy.EnsembleParams(n, beta, scaled_d=d)
            worst = 0.0
            for t in np.arange(0.1, 1.0001, 0.1):
                m = int(round(n * t))
                v = asy.exact_mean_logphi(p, m)
                e_val, _ = asy.limit_mean_functions(d, m / n)
                _, f_val = asy.limit_mean_functions(d, t)
                worst = max(
                    worst, abs(v / n - e_val - (1 / beta - 0.5) * f_val / n)
                )
            sups.append(worst)
        assert 3.0 < sups[0] / sups[1] < 5.0

    def test_domain(self):
        with pytest.raises(sf.DomainError):
            asy.limit_mean_functions(0.0, 0.5)
        with pytest.raises(sf.DomainError):
            asy.limit_mean_functions(1.0, 1.5)


class TestLimitCovariance:
    def test_explicit_point(self):
        z, integral = asy.limit_covariance(0.5, 0.0, 2.0)
        ref = np.array([[0.5 - 1.0 / 3.0, 0.0], [0.0, 1.0 / 3.0]])
        assert np.max(np.abs(z - ref)) < 1e-14
        assert np.max(np.abs(integral)) == 0.0

    def test_integral_matches_quadrature(self):
        d, t, beta = 0.3 + 0.4j, 0.7, 2.0
        _, closed = asy.limit_covariance(d, t, beta)
        num = np.zeros((2, 2))
        for i in range(2):
            for j in range(2):
                num[i, j], _ = integrate.quad(
                    lambda s: asy.limit_covariance(d, s, beta)[0][i, j],
                    0.0, t, epsabs=1e-12, epsrel=1e-12,
                )
        assert np.max(np.abs(closed - num)) < 1e-10

    def test_trace_at_one(self):
        for d in (0.25, 0.8 + 0.3j):
            d = complex(d)
            _, integral = asy.limit_covariance(d, 1.0, 2.0)
            ref = math.log((1 + 2 * d.real) / (2 * d.real))  # / beta_prime = 1
            assert np.trace(integral) == pytest.approx(ref, rel=1e-13)

    def test_symmetry_and_psd_grid(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            d = complex(rng.uniform(0, 2), rng.uniform(-2, 2))
            t = rng.uniform(0, 0.99)
            z, integral = asy.limit_covariance(d, t, 2.0)
            assert z[0, 1] == z[1, 0]
            assert np.linalg.eigvalsh(z).min() > -1e-14
            assert np.linalg.eigvalsh(integral).min() > -1e-14

    def test_zero_drift(self):
        z, integral = asy.limit_covariance(0.0, 0.5, 2.0)
        assert z[0, 0] == pytest.approx(1.0 / (2.0 * 0.5), rel=1e-14)
        assert integral[0, 0] == pytest.approx(math.log(2.0) / 2.0, rel=1e-13)

    def test_zero_drift_terminal_is_error(self):
        with pytest.raises(sf.DomainError):
            asy.limit_covariance(0.0, 1.0, 2.0)
