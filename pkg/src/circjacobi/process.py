"""The log-characteristic-polynomial path and its cross-checks.

Three independent evaluation routes are maintained for the monic
orthogonal polynomials at z = 1:

1. the running product of (1 - gamma_j) over the deformed coefficients,
2. the Szego recursion driven by the Schur coefficients alpha_j,
3. the determinant of I_k minus the top-left k x k block of the GGT
   (Hessenberg) matrix built from the alpha_j.

The complex logarithm of route 3 is defined eigenvalue-by-eigenvalue
with the principal branch, which is valid whenever no eigenvalue of the
block lies on [1, inf); routes 1 and 3 then agree exactly, including
imaginary parts, which the test suite pins at desk scale.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .asymptotics import EnsembleParams, mean_increments
from .sampler import DeformedVerblunskySample

__all__ = [
    "LogPolyPath",
    "SchurCoefficients",
    "DegenerateMatrixError",
    "log_path",
    "gamma_to_alpha",
    "alpha_to_gamma",
    "szego_eval",
    "ggt_matrix",
    "ggt_check",
    "export_path_csv",
]


class DegenerateMatrixError(ValueError):
    """A truncated GGT block has an eigenvalue on [1, inf)."""


@dataclass(frozen=True)
class SchurCoefficients:
    """Schur/Verblunsky coefficients; the terminal one is unimodular in a
    full spectral sample, interior ones lie in the open disc."""

    alpha: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=np.complex128)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("alpha must be a nonempty 1-d array")
        if a.size > 1 and np.any(np.abs(a[:-1]) >= 1.0):
            raise ValueError("interior Schur coefficients must lie in the open disc")
        object.__setattr__(self, "alpha", a)

    def __len__(self) -> int:
        return self.alpha.size


@dataclass(frozen=True)
class LogPolyPath:
    """values[k] = log Phi_{k,n}(1) for k = 0..n, with values[0] = 0;
    ``zeta`` is the centered path values[k] - E values[k] when present."""

    values: np.ndarray
    params: EnsembleParams
    zeta: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return self.values.size - 1


def log_path(sample: DeformedVerblunskySample, centered: bool = True) -> LogPolyPath:
    """Cumulative principal-branch logs of (1 - gamma_j).

    Each increment has imaginary part in [-pi/2, pi/2] because
    Re(1 - gamma) >= 0 on the closed unit disc.  ``centered`` also
    stores the path minus its exact mean.
    """
    gamma = sample.gamma
    if np.any(gamma == 1.0):
        raise ValueError("gamma = 1 encountered; log(1 - gamma) undefined")
    increments = np.log(1.0 - gamma)
    values = np.concatenate([[0.0 + 0.0j], np.cumsum(increments)])
    zeta = None
    if centered:
        mean = np.concatenate([[0.0 + 0.0j], np.cumsum(mean_increments(sample.params))])
        zeta = values - mean
    return LogPolyPath(values=values, params=sample.params, zeta=zeta)


def gamma_to_alpha(gamma: np.ndarray) -> SchurCoefficients:
    """Invert the deformed coefficients: alpha_j is conj(gamma_j) rotated
    by the phase of the running product Phi_j(1) = prod_{k<j} (1-gamma_k)."""
    gamma = np.asarray(gamma, dtype=np.complex128)
    prefix = np.concatenate([[1.0 + 0.0j], np.cumprod(1.0 - gamma)[:-1]])
    if np.any(np.abs(prefix) < 1e-300):
        raise ZeroDivisionError("running product Phi_j(1) vanished")
    phase = np.conj(prefix) / prefix
    return SchurCoefficients(alpha=np.conj(gamma) * phase)


def alpha_to_gamma(alpha: SchurCoefficients) -> np.ndarray:
    """Evaluate gamma_j = conj(alpha_j) Phi*_j(1) / Phi_j(1) through the
    Szego recursion at z = 1."""
    a = alpha.alpha
    n = a.size
    gamma = np.empty(n, dtype=np.complex128)
    phi = 1.0 + 0.0j
    phi_star = 1.0 + 0.0j
    for j in range(n):
        gamma[j] = np.conj(a[j]) * phi_star / phi
        phi, phi_star = phi - np.conj(a[j]) * phi_star, phi_star - a[j] * phi
    return gamma


def szego_eval(alpha: SchurCoefficients, z: complex) -> np.ndarray:
    """All monic orthogonal polynomials at z: returns Phi_k(z), k = 0..n,
    by the joint recursion on (Phi, Phi*) from Phi_0 = Phi*_0 = 1."""
    a = alpha.alpha
    n = a.size
    out = np.empty(n + 1, dtype=np.complex128)
    phi = 1.0 + 0.0j
    phi_star = 1.0 + 0.0j
    out[0] = phi
    for j in range(n):
        phi, phi_star = (
            z * phi - np.conj(a[j]) * phi_star,
            phi_star - a[j] * z * phi,
        )
        out[j + 1] = phi
    return out


def ggt_matrix(alpha: SchurCoefficients) -> np.ndarray:
    """Hessenberg matrix of multiplication by z in the orthonormal
    polynomial basis, built from the Schur coefficients.

    With rho_l = sqrt(1 - |alpha_l|^2) and alpha_{-1} = -1:
    G[k, l] = -conj(alpha_l) alpha_{k-1} prod_{j=k..l-1} rho_j for k <= l,
    G[l+1, l] = rho_l, zero below the first subdiagonal.  Unitary exactly
    when the terminal coefficient is unimodular.
    """
    a = alpha.alpha
    n = a.size
    rho = np.sqrt(np.maximum(0.0, 1.0 - np.abs(a) ** 2))
    g = np.zeros((n, n), dtype=np.complex128)
    for l in range(n):
        if l + 1 < n:
            g[l + 1, l] = rho[l]
        for k in range(l + 1):
            prev = -1.0 + 0.0j if k == 0 else a[k - 1]
            g[k, l] = -np.conj(a[l]) * prev * np.prod(rho[k:l])
    return g


def ggt_check(alpha: SchurCoefficients, k: int) -> complex:
    """log det(I_k - G_k) for the top-left k x k GGT block, the log taken
    as the sum of principal logs over eigenvalues.

    Raises :class:`DegenerateMatrixError` if an eigenvalue lies on
    [1, inf), where that branch convention breaks down.
    """
    n = len(alpha)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    block = ggt_matrix(alpha)[:k, :k]
    eigs = np.linalg.eigvals(block)
    bad = (np.abs(eigs.imag) < 1e-14) & (eigs.real >= 1.0 - 1e-14)
    if np.any(bad):
        raise DegenerateMatrixError(
            f"eigenvalue {eigs[bad][0]} on [1, inf); log det undefined"
        )
    return complex(np.sum(np.log(1.0 - eigs)))


_PATH_HEADER = "k,t,re_log_phi,im_log_phi,re_zeta,im_zeta"


def export_path_csv(path: LogPolyPath, fh: io.TextIOBase) -> None:
    """Write one trajectory with the pinned schema and 17 significant
    digits (round-trip exact for doubles)."""
    n = path.n
    zeta = path.zeta if path.zeta is not None else path.values
    fh.write(_PATH_HEADER + "\n")
    for k in range(n + 1):
        v = path.values[k]
        z = zeta[k]
        fh.write(
            f"{k},{k / n:.17g},{v.real:.17g},{v.imag:.17g},{z.real:.17g},{z.imag:.17g}\n"
        )
