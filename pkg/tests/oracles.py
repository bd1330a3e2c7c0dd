"""Independent numerical oracles used by the test suite.

These deliberately avoid the production code paths: log-gamma through
quadrature of its exponential-kernel integral representation, digamma
through its partial-fraction series with an analytic tail, trigamma
through direct series summation.
"""

import math
import warnings

import numpy as np
from scipy import integrate

EULER_GAMMA = 0.5772156649015328606


def remainder_kernel(s: float) -> float:
    if s < 1e-6:
        return 1.0 / 12.0 - s * s / 720.0
    if s > 700.0:
        return (0.5 - 1.0 / s) / s
    return (0.5 - 1.0 / s + 1.0 / math.expm1(s)) / s


def quadrature_log_gamma(x: complex) -> complex:
    """(x - 1/2) log x - x + log(2 pi)/2 + int_0^inf kernel(s) e^{-s x} ds,
    valid for Re x > 0; accuracy ~1e-13."""
    x = complex(x)
    assert x.real > 0
    hi = min(200.0, 60.0 / max(x.real, 0.3))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re = integrate.quad(
            lambda s: remainder_kernel(s) * math.exp(-s * x.real) * math.cos(s * x.imag),
            0.0, hi, epsabs=1e-16, epsrel=1e-15, limit=500,
        )[0]
        im = integrate.quad(
            lambda s: -remainder_kernel(s) * math.exp(-s * x.real) * math.sin(s * x.imag),
            0.0, hi, epsabs=1e-16, epsrel=1e-15, limit=500,
        )[0]
    main = (x - 0.5) * np.log(x) - x + 0.5 * math.log(2.0 * math.pi)
    return complex(main) + re + 1j * im


def shifted_quadrature_log_gamma(x: complex, shift: int = 8) -> complex:
    """Recursion-shifted variant usable near the imaginary axis."""
    x = complex(x)
    acc = 0.0 + 0.0j
    for _ in range(shift):
        acc += np.log(x)
        x += 1.0
    return quadrature_log_gamma(x) - acc


def series_digamma(w: complex, terms: int = 10**5) -> complex:
    """Psi(w) from Psi(z+1) = -euler - sum_k (1/(k+z) - 1/k) at z = w - 1,
    with the tail summed analytically through three orders."""
    z = complex(w) - 1.0
    k = np.arange(1, terms + 1)
    partial = np.sum(1.0 / (k + z) - 1.0 / k)
    big_k = float(terms)
    s2 = 1.0 / big_k - 1.0 / (2 * big_k**2) + 1.0 / (6 * big_k**3)
    s3 = 1.0 / (2 * big_k**2) - 1.0 / (2 * big_k**3) + 1.0 / (4 * big_k**4)
    s4 = 1.0 / (3 * big_k**3) - 1.0 / (2 * big_k**4)
    tail = -z * s2 + z * z * s3 - z**3 * s4
    return -EULER_GAMMA - (partial + tail)


def series_trigamma_one() -> float:
    """Sum of 1/k^2 with analytic tail: equals pi^2/6."""
    big_k = 10**6
    k = np.arange(1, big_k + 1, dtype=float)
    return float(np.sum(1.0 / (k * k)) + 1.0 / big_k - 1.0 / (2.0 * big_k**2))


def golden_section_max(f, lo: float, hi: float, iters: int = 90) -> float:
    """Maximum of a unimodal function by golden-section refinement."""
    phi = 0.5 * (math.sqrt(5.0) - 1.0)
    x1, x2 = hi - phi * (hi - lo), lo + phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + phi * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - phi * (hi - lo)
            f1 = f(x1)
    return max(f1, f2)
