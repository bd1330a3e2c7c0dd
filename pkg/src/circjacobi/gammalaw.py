"""Exact moments of a single deformed Verblunsky coefficient.

A coefficient of rank weight r > 0 lives on the open unit disc with
density proportional to (1-|z|^2)^(r-1) (1-z)^conj(delta) (1-conj(z))^delta;
the terminal coefficient (r = 0) lives on the unit circle with density
proportional to (1-z)^conj(delta) (1-conj(z))^delta.  Everything here --
normalization constants, Mellin-Fourier moments, the cumulant generating
function and the cumulants of log(1 - gamma) -- is an explicit Gamma /
digamma combination evaluated through :mod:`circjacobi.specfun`.

All operations are pure and stateless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .specfun import DomainError, digamma, log_gamma, polygamma

__all__ = [
    "CoefficientLaw",
    "CumulantSet",
    "disc_weight_integral",
    "normalization_c",
    "mellin_fourier",
    "cgf_Lambda",
    "cumulants",
]


@dataclass(frozen=True)
class CoefficientLaw:
    """Distribution of one deformed Verblunsky coefficient.

    ``r`` is the rank weight (r = 0 selects the circle law); ``delta``
    is the deformation, constrained by r + 2 Re delta + 1 > 0.
    """

    r: float
    delta: complex

    def __post_init__(self):
        if self.r < 0:
            raise DomainError(f"rank weight must be nonnegative, got {self.r}")
        if self.r + 2.0 * complex(self.delta).real + 1.0 <= 0.0:
            raise DomainError(
                f"need r + 2 Re delta + 1 > 0, got r={self.r}, delta={self.delta}"
            )


@dataclass(frozen=True)
class CumulantSet:
    """Mean, (Re, Im) covariance and fourth-moment bound of log(1-gamma)."""

    mean: complex
    covariance: np.ndarray = field(repr=False)
    fourth_bound: float

    @property
    def var_re(self) -> float:
        return float(self.covariance[0, 0])

    @property
    def var_im(self) -> float:
        return float(self.covariance[1, 1])

    @property
    def cov_re_im(self) -> float:
        return float(self.covariance[0, 1])


def _require_positive_re(value: complex, label: str) -> complex:
    value = complex(value)
    if value.real <= 0.0:
        raise DomainError(
            f"Gamma argument {label} = {value} must have positive real part"
        )
    return value


def disc_weight_integral(l: complex, s: complex, t: complex) -> complex:
    """Integral over the unit disc of (1-|z|^2)^(l-1) (1-z)^s (1-conj(z))^t.

    Equals pi * G(l) G(l+1+s+t) / (G(l+1+s) G(l+1+t)), evaluated through
    log-gamma so large parameters do not overflow.
    """
    l = _require_positive_re(l, "l")
    a1 = _require_positive_re(l + 1 + s + t, "l+1+s+t")
    a2 = _require_positive_re(l + 1 + s, "l+1+s")
    a3 = _require_positive_re(l + 1 + t, "l+1+t")
    return math.pi * np.exp(
        log_gamma(l) + log_gamma(a1) - log_gamma(a2) - log_gamma(a3)
    )


def normalization_c(law: CoefficientLaw) -> float:
    """Normalization constant of the coefficient density.

    For r > 0 this is the constant multiplying the disc density (with
    respect to planar Lebesgue measure); for r = 0 it is the constant of
    the circle law with respect to d(theta) on (0, 2 pi).
    """
    d = complex(law.delta)
    two_re = 2.0 * d.real
    if law.r > 0:
        val = math.exp(
            2.0 * log_gamma(law.r + 1 + d).real
            - log_gamma(law.r).real
            - log_gamma(law.r + 1 + two_re).real
        ) / math.pi
    else:
        val = math.exp(
            2.0 * log_gamma(1 + d).real - log_gamma(1 + two_re).real
        ) / (2.0 * math.pi)
    return val


def mellin_fourier(law: CoefficientLaw, a: complex, b: complex) -> complex:
    """Joint moment E (1-gamma)^a (1-conj(gamma))^b.

    A quotient of six Gamma factors; at r = 0 it is the Mellin-Fourier
    transform of 1 - gamma under the circle law.  Every Gamma argument
    must have positive real part.
    """
    r, d = law.r, complex(law.delta)
    db = d.conjugate()
    args = [
        (r + 1 + d + db + a + b, "r+1+delta+conj(delta)+a+b"),
        (r + 1 + db, "r+1+conj(delta)"),
        (r + 1 + d, "r+1+delta"),
        (r + 1 + d + db, "r+1+delta+conj(delta)"),
        (r + 1 + db + a, "r+1+conj(delta)+a"),
        (r + 1 + d + b, "r+1+delta+b"),
    ]
    vals = [_require_positive_re(v, label) for v, label in args]
    num = log_gamma(vals[0]) + log_gamma(vals[1]) + log_gamma(vals[2])
    den = log_gamma(vals[3]) + log_gamma(vals[4]) + log_gamma(vals[5])
    return complex(np.exp(num - den))


def cgf_Lambda(law: CoefficientLaw, s: float, t: float) -> float:
    """Cumulant generating function of (2 Re log(1-gamma), 2 Im log(1-gamma))
    at real (s, t): log E exp(2 s Re log(1-gamma) + 2 t Im log(1-gamma)).

    Real-valued; the six log-gamma terms pair into conjugates.
    """
    r, d = law.r, complex(law.delta)
    two_re = 2.0 * d.real
    x1 = _require_positive_re(r + 1 + two_re + 2 * s, "r+1+2Re(delta)+2s")
    x2 = _require_positive_re(r + 1 + two_re, "r+1+2Re(delta)")
    zc = _require_positive_re(r + 1 + d + s + 1j * t, "r+1+delta+s+it")
    zd = _require_positive_re(r + 1 + d, "r+1+delta")
    val = (
        log_gamma(x1).real
        - log_gamma(x2).real
        - 2.0 * log_gamma(zc).real
        + 2.0 * log_gamma(zd).real
    )
    return float(val)


def cumulants(law: CoefficientLaw) -> CumulantSet:
    """Exact mean, covariance and fourth-moment bound of log(1-gamma).

    mean      = Psi(r+1+2Re d) - Psi(r+1+conj(d)),
    Var Re    = Psi'(r+1+2Re d) - Re Psi'(r+1+d) / 2,
    Var Im    = Re Psi'(r+1+d) / 2,
    Cov       = Im Psi'(r+1+d) / 2.

    ``fourth_bound`` is the proof-grade upper bound on E|A|^4 for the
    centered variable A = log(1-gamma) - E log(1-gamma):
    24 (Var Re)^2 + 24 (Var Im)^2 + 8 |k4 Re| + 8 |k4 Im|, with the
    fourth cumulants assembled from Psi''' values.
    """
    r, d = law.r, complex(law.delta)
    two_re = 2.0 * d.real
    mean = digamma(r + 1 + two_re) - digamma(r + 1 + d.conjugate())
    p1_sym = polygamma(1, r + 1 + two_re).real
    p1 = polygamma(1, r + 1 + d)
    var_re = p1_sym - 0.5 * p1.real
    var_im = 0.5 * p1.real
    cov = 0.5 * p1.imag
    p3_sym = polygamma(3, r + 1 + two_re).real
    p3 = polygamma(3, r + 1 + d)
    k4_re = p3_sym - 0.125 * p3.real
    k4_im = -0.125 * p3.real
    bound = 24.0 * (var_re**2 + var_im**2) + 8.0 * (abs(k4_re) + abs(k4_im))
    covariance = np.array([[var_re, cov], [cov, var_im]], dtype=float)
    return CumulantSet(mean=complex(mean), covariance=covariance, fourth_bound=bound)
