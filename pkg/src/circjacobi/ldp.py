"""Large-deviation objects for the log-characteristic-polynomial process.

The speed-n^2 rate of the path is an integral of the pointwise rate
H_a(xi, eta) = -xi - log(2 cos eta - e^xi) against (1-tau) d tau, plus a
linear price (1-tau) per unit of negative singular mass in the real
component.  Its convex pre-dual is the Lagrangian

    L(X, Y) = J(1+X) - J(1+Z) - J(1+conj(Z)),   2Z = X + iY,

whose Legendre transform reproduces H_a exactly; ``legendre_numeric``
verifies this by damped Newton ascent.  The marginal rate at time T is
obtained from the normalized cumulant generating function
``cgf_L0`` by one-dimensional convex duality on the real axis (three
explicit branches: interior, linear extension below the left boundary
xi_T, infinite at and beyond T log 2) and by a two-dimensional interior
solve for general arguments.  Nonzero drift d enters through an affine
shift with constant -cgf_L0(T, 2 Re d, 2 Im d).

Infinite values are returned as math.inf, but only as *results* tagged
with an explicit branch; no arithmetic is ever performed on them.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

from .specfun import DomainError, QuadratureError, entropy_F, entropy_J

__all__ = [
    "Branch",
    "RatePoint",
    "MarginalRateResult",
    "SolverError",
    "rate_Ha",
    "lagrangian_L",
    "legendre_numeric",
    "cgf_L0",
    "path_functional_Lambda0",
    "path_action",
    "shift_constant",
    "xi_boundary",
    "implicit_mean_map",
    "marginal_rate_h",
    "hkoc_forms",
    "optimal_trajectory",
]

_LOG2 = math.log(2.0)


class Branch(enum.Enum):
    INTERIOR = "interior"
    LINEAR = "linear"
    INFINITE = "infinite"


class SolverError(RuntimeError):
    """Root finding for the rate multipliers did not converge."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (best residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class RatePoint:
    """Marginal evaluation point (T, xi, eta) with drift d.

    Zero drift requires T < 1: exponential tightness fails at T = 1
    without drift, so the T = 1 marginal rate is only defined for
    Re d > 0.
    """

    T: float
    xi: float
    eta: float
    d: complex = 0j

    def __post_init__(self):
        if not 0 < self.T <= 1:
            raise DomainError(f"need 0 < T <= 1, got T={self.T}")
        if not (math.isfinite(self.xi) and math.isfinite(self.eta)):
            raise DomainError(f"need finite (xi, eta), got ({self.xi}, {self.eta})")
        d = complex(self.d)
        if d.real < 0:
            raise DomainError(f"need Re d >= 0, got d={d}")
        if d == 0 and self.T == 1:
            raise DomainError("T = 1 requires nonzero drift (tightness boundary)")


@dataclass(frozen=True)
class MarginalRateResult:
    """Rate value with its branch; Lagrange multipliers (gamma, rho) are
    present on the interior branch only."""

    value: float
    branch: Branch
    multipliers: Optional[Tuple[float, float]] = None


def rate_Ha(xi: float, eta: float) -> float:
    """Pointwise rate: -xi - log(2 cos eta - e^xi) when |eta| < pi/2 and
    2 cos eta > e^xi, +inf otherwise."""
    if abs(eta) >= 0.5 * math.pi:
        return math.inf
    c = 2.0 * math.cos(eta)
    if xi >= math.log(c):
        return math.inf
    return -xi - math.log(c - math.exp(xi))


def lagrangian_L(x: float, y: float) -> float:
    """Convex Lagrangian L(X, Y) = J(1+X) - 2 Re J(1+Z) with 2Z = X + iY;
    equals (1+X)log(1+X) + Y arctan(Y/(2+X)) - (1+X/2) log((1+X/2)^2 + Y^2/4)."""
    if x <= -1.0:
        raise DomainError(f"Lagrangian needs X > -1, got {x}")
    half = 1.0 + 0.5 * x
    first = (1.0 + x) * math.log1p(x) if x != 0.0 else 0.0
    return (
        first
        + y * math.atan2(y, 2.0 + x)
        - half * math.log(half * half + 0.25 * y * y)
    )


def _grad_L(x: float, y: float) -> Tuple[float, float]:
    half = 1.0 + 0.5 * x
    gx = math.log1p(x) - 0.5 * math.log(half * half + 0.25 * y * y)
    gy = math.atan2(y, 2.0 + x)
    return gx, gy


def _hess_L(x: float, y: float) -> np.ndarray:
    inv = 1.0 / complex(1.0 + 0.5 * x, 0.5 * y)  # 1 / (1 + Z)
    h11 = 1.0 / (1.0 + x) - 0.5 * inv.real
    h12 = 0.5 * inv.imag
    h22 = 0.5 * inv.real
    return np.array([[h11, h12], [h12, h22]])


_DIVERGED = 1e8


def legendre_numeric(
    xi: float, eta: float, tol: float = 1e-9, max_iter: int = 300
) -> Tuple[float, Optional[Tuple[float, float]]]:
    """Legendre transform sup_{X > -1, Y} [X xi + Y eta - L(X, Y)].

    Damped Newton ascent seeded at the closed-form stationary point when
    the target is admissible; returns (value, argmax) on convergence and
    (inf, None) when the iterates diverge (inadmissible target).
    """
    x, y = 0.0, 0.0
    denom = math.cos(eta) - 0.5 * math.exp(xi) if abs(eta) < 0.5 * math.pi else 0.0
    if denom > 1e-12:
        x0 = (math.exp(xi) - math.cos(eta)) / denom
        if x0 > -1.0:
            x, y = x0, math.sin(eta) / denom

    def objective(px, py):
        return px * xi + py * eta - lagrangian_L(px, py)

    val = objective(x, y)
    for _ in range(max_iter):
        gx, gy = _grad_L(x, y)
        rx, ry = xi - gx, eta - gy
        res = math.hypot(rx, ry)
        if res < tol:
            return objective(x, y), (x, y)
        try:
            step = np.linalg.solve(_hess_L(x, y), np.array([rx, ry]))
        except np.linalg.LinAlgError:
            step = np.array([rx, ry])
        # Back off the X-component near the X = -1 edge; when the iterate
        # is already pinned there at float granularity, move only in Y.
        scale = 1.0
        guard = 0
        while guard < 200 and x + scale * step[0] <= -1.0 + 1e-15:
            scale *= 0.5
            guard += 1
        if guard == 200:
            step = np.array([0.0, step[1]])
            scale = 1.0
        new_x, new_y = x + scale * step[0], y + scale * step[1]
        new_val = objective(new_x, new_y)
        halvings = 0
        while new_val < val and halvings < 60:
            scale *= 0.5
            new_x, new_y = x + scale * step[0], y + scale * step[1]
            new_val = objective(new_x, new_y)
            halvings += 1
        if new_val <= val + 1e-15 * max(1.0, abs(val)):
            # Flat maximum at working precision: the objective is
            # quadratically stationary, so the value is converged even
            # when the gradient cannot reach tol at float granularity.
            return max(val, new_val), (x, y)
        x, y, val = new_x, new_y, new_val
        if abs(x) > _DIVERGED or abs(y) > _DIVERGED or val > _DIVERGED:
            return math.inf, None
    gx, gy = _grad_L(x, y)
    raise SolverError(
        "Legendre ascent did not converge", math.hypot(xi - gx, eta - gy)
    )


def _F(u) -> complex:
    return complex(entropy_F(u))


def _L0(T: float, s: float, t: float) -> float:
    """Zero-drift normalized cgf: the eight-term F combination with
    2z = s + it; valid for s >= -(1-T) (boundary included by limits)."""
    z = complex(0.5 * s, 0.5 * t)
    real_part = (
        _F(1.0 + s) - _F(1.0 - T + s) + _F(1.0) - _F(1.0 - T)
    ).real
    cross = _F(1.0 + z) - _F(1.0 - T + z)
    return real_part - 2.0 * cross.real


def cgf_L0(T: float, s: float, t: float, d: complex = 0j) -> float:
    """Normalized cumulant generating function of the time-T marginal,
    with drift d folded in by the affine shift.  Domain:
    s > -(1-T) - 2 Re d (the boundary itself is allowed as a limit)."""
    if not 0 < T <= 1:
        raise DomainError(f"need 0 < T <= 1, got T={T}")
    d = complex(d)
    if d.real < 0:
        raise DomainError(f"need Re d >= 0, got d={d}")
    floor = -(1.0 - T) - 2.0 * d.real
    if s < floor:
        raise DomainError(f"need s >= {floor}, got s={s}")
    if d == 0:
        return _L0(T, s, t)
    return _L0(T, s + 2.0 * d.real, t + 2.0 * d.imag) - _L0(
        T, 2.0 * d.real, 2.0 * d.imag
    )


def _grad_L0(T: float, s: float, t: float) -> Tuple[float, float]:
    """(d/ds, d/dt) of the zero-drift cgf: entropy-difference closed form."""
    z = complex(0.5 * s, 0.5 * t)
    cross = entropy_J(1.0 + z) - entropy_J(1.0 - T + z)
    gs = entropy_J(1.0 + s) - entropy_J(1.0 - T + s) - cross.real
    gt = cross.imag
    return gs, gt


def _hess_L0(T: float, s: float, t: float) -> np.ndarray:
    z = complex(0.5 * s, 0.5 * t)
    lg = cmath.log(1.0 + z) - cmath.log(1.0 - T + z)
    h11 = math.log((1.0 + s) / (1.0 - T + s)) - 0.5 * lg.real
    h12 = 0.5 * lg.imag
    h22 = 0.5 * lg.real
    return np.array([[h11, h12], [h12, h22]])


def shift_constant(T: float, d: complex) -> float:
    """Additive constant of the drift shift: -cgf_L0(T, 2 Re d, 2 Im d) of
    the zero-drift function (appears in both the path and marginal rates)."""
    d = complex(d)
    if d == 0:
        return 0.0
    return -_L0(T, 2.0 * d.real, 2.0 * d.imag)


def path_functional_Lambda0(
    T: float,
    x: Callable[[float], float],
    y: Callable[[float], float],
    tol: float = 1e-11,
) -> float:
    """Path-level cgf: integral over [0, T] of
    J(1-tau+x) - 2 Re J(1-tau+z) + J(1-tau), 2z = x + i y.

    Requires x(tau) > -(1-tau) on [0, T] (equivalently X > -1 after the
    (1-tau) time change).  Constant paths x = s, y = t reproduce
    cgf_L0(T, s, t)."""
    if not 0 < T <= 1:
        raise DomainError(f"need 0 < T <= 1, got T={T}")

    def integrand(tau: float) -> float:
        c = 1.0 - tau
        xv, yv = x(tau), y(tau)
        if xv + c <= 0:
            raise DomainError(f"path violates x(tau) > -(1-tau) at tau={tau}")
        z = complex(c + 0.5 * xv, 0.5 * yv)
        return entropy_J(c + xv) - 2.0 * (entropy_J(z)).real + entropy_J(c)

    val, err = integrate.quad(integrand, 0.0, T, epsabs=tol, epsrel=tol, limit=400)
    if err > 100 * max(tol, abs(val) * tol):
        raise QuadratureError("path functional quadrature too loose", err)
    return val


def path_action(
    T: float,
    phi_dot: Callable[[float], float],
    psi_dot: Callable[[float], float],
    phi_atoms: Sequence[Tuple[float, float]] = (),
    psi_has_singular_part: bool = False,
    d: complex = 0j,
    tol: float = 1e-10,
) -> float:
    """Action of an absolutely continuous path with optional negative
    atoms in the real component.

    Value: integral of (1-tau) H_a(phi_dot, psi_dot) d tau plus
    (1 - location) * |mass| per atom (masses must be negative; any
    singular part of psi, or positive singular mass of phi, prices the
    path at +inf).  Drift d adds -2 Re d phi(T) - 2 Im d psi(T) minus the
    shift constant.
    """
    if psi_has_singular_part:
        return math.inf
    for loc, mass in phi_atoms:
        if not 0 <= loc <= T:
            raise DomainError(f"atom location {loc} outside [0, {T}]")
        if mass >= 0:
            return math.inf

    class _Infinite(Exception):
        pass

    def integrand(tau: float) -> float:
        h = rate_Ha(phi_dot(tau), psi_dot(tau))
        if math.isinf(h):
            raise _Infinite
        return (1.0 - tau) * h

    try:
        val, _ = integrate.quad(integrand, 0.0, T, epsabs=tol, epsrel=tol, limit=400)
    except _Infinite:
        return math.inf
    val += sum((1.0 - loc) * (-mass) for loc, mass in phi_atoms)
    d = complex(d)
    if d != 0:
        phi_T, _ = integrate.quad(phi_dot, 0.0, T, epsabs=tol, epsrel=tol, limit=400)
        psi_T, _ = integrate.quad(psi_dot, 0.0, T, epsabs=tol, epsrel=tol, limit=400)
        phi_T += sum(mass for _, mass in phi_atoms)
        val += -2.0 * d.real * phi_T - 2.0 * d.imag * psi_T - shift_constant(T, d)
    return val


def xi_boundary(T: float) -> float:
    """Left edge xi_T of the interior branch:
    J(T) - 1 - J((1+T)/2) + J((1-T)/2); nonpositive on (0, 1]."""
    if not 0 < T <= 1:
        raise DomainError(f"need 0 < T <= 1, got T={T}")
    return (
        entropy_J(T)
        - 1.0
        - entropy_J(0.5 * (1.0 + T))
        + entropy_J(0.5 * (1.0 - T))
    )


def implicit_mean_map(T: float, gamma: float) -> float:
    """The strictly increasing map gamma -> xi on the interior branch:
    J(1+g) - J(1-T+g) - J(1+g/2) + J(1-T+g/2)."""
    return (
        entropy_J(1.0 + gamma)
        - entropy_J(1.0 - T + gamma)
        - entropy_J(1.0 + 0.5 * gamma)
        + entropy_J(1.0 - T + 0.5 * gamma)
    )


def _implicit_mean_slope(T: float, gamma: float) -> float:
    return math.log((1.0 + gamma) / (1.0 - T + gamma)) - 0.5 * math.log(
        (1.0 + 0.5 * gamma) / (1.0 - T + 0.5 * gamma)
    )


def _solve_gamma(T: float, xi: float) -> float:
    """Invert the mean map by bracketed bisection (the map is monotone)
    followed by Newton polish."""
    lo = -(1.0 - T) + 1e-12
    if implicit_mean_map(T, lo) >= xi:
        return lo  # xi at (or within float width of) the branch edge xi_T
    hi = max(1.0, lo + 1.0)
    for _ in range(200):
        if implicit_mean_map(T, hi) > xi:
            break
        hi *= 2.0
    else:
        raise SolverError("bracket expansion failed", math.inf)
    gamma = optimize.brentq(
        lambda g: implicit_mean_map(T, g) - xi, lo, hi, xtol=1e-13, rtol=1e-14
    )
    for _ in range(2):
        slope = _implicit_mean_slope(T, gamma)
        if slope <= 0:
            break
        step = (implicit_mean_map(T, gamma) - xi) / slope
        if gamma - step <= -(1.0 - T):
            break
        gamma -= step
    return gamma


def _solve_interior_2d(
    T: float, xi: float, eta: float, tol: float = 1e-11, max_iter: int = 300
) -> Tuple[float, float]:
    """Damped Newton ascent of the concave dual objective
    s xi + t eta - cgf_L0(T, s, t) on s > -(1-T); the maximizer solves
    grad cgf_L0 = (xi, eta)."""
    s, t = 0.0, 0.0
    floor = -(1.0 - T)

    def objective(ps, pt):
        return ps * xi + pt * eta - _L0(T, ps, pt)

    val = objective(s, t)
    best = math.inf
    for _ in range(max_iter):
        gs, gt = _grad_L0(T, s, t)
        rs, rt = xi - gs, eta - gt
        res = math.hypot(rs, rt)
        best = min(best, res)
        if res < tol:
            return s, t
        try:
            step = np.linalg.solve(_hess_L0(T, s, t), np.array([rs, rt]))
        except np.linalg.LinAlgError as exc:
            raise SolverError("singular Hessian in interior solve", res) from exc
        scale = 1.0
        guard = 0
        while guard < 200 and s + scale * step[0] <= floor + 1e-15:
            scale *= 0.5
            guard += 1
        if guard == 200:
            raise SolverError("interior solve pinned at the domain edge", res)
        new_s, new_t = s + scale * step[0], t + scale * step[1]
        new_val = objective(new_s, new_t)
        halvings = 0
        while new_val < val and halvings < 60:
            scale *= 0.5
            new_s, new_t = s + scale * step[0], t + scale * step[1]
            new_val = objective(new_s, new_t)
            halvings += 1
        if new_val <= val + 1e-16 * max(1.0, abs(val)):
            if res <= 1e-6:
                return s, t  # flat maximum at working precision
            raise SolverError("interior endpoint solve stalled", res)
        s, t, val = new_s, new_t, new_val
        if abs(s) > _DIVERGED or abs(t) > _DIVERGED:
            raise SolverError("interior endpoint solve diverged", best)
    raise SolverError("interior endpoint solve did not converge", best)


def marginal_rate_h(point: RatePoint) -> MarginalRateResult:
    """Marginal rate at (T, xi, eta) for drift d.

    eta = 0 follows the three proved branches; general eta attempts the
    interior two-multiplier solve only (admissibility beyond it is not
    characterized) and raises :class:`SolverError` on failure.  Nonzero
    drift enters as the affine shift of the zero-drift rate.
    """
    T, xi, eta, d = point.T, point.xi, point.eta, complex(point.d)

    def shifted(value: float, branch: Branch, mult=None) -> MarginalRateResult:
        if d != 0 and math.isfinite(value):
            value += -2.0 * d.real * xi - 2.0 * d.imag * eta - shift_constant(T, d)
        return MarginalRateResult(value=value, branch=branch, multipliers=mult)

    if abs(eta) >= 0.5 * math.pi * T or xi >= T * _LOG2:
        return shifted(math.inf, Branch.INFINITE)

    if eta == 0.0:
        xi_t = xi_boundary(T)
        if xi >= xi_t:
            gamma = _solve_gamma(T, xi)
            value = gamma * xi - _L0(T, gamma, 0.0)
            return shifted(value, Branch.INTERIOR, (gamma, 0.0))
        edge = -(1.0 - T)
        value_edge = edge * xi_t - _L0(T, edge, 0.0)
        value = value_edge + (1.0 - T) * (xi_t - xi)
        return shifted(value, Branch.LINEAR)

    s, t = _solve_interior_2d(T, xi, eta)
    value = s * xi + t * eta - _L0(T, s, t)
    return shifted(value, Branch.INTERIOR, (s, t))


def hkoc_forms(which: str, arg: float) -> float:
    """Closed-form limiting cgfs of the T = 1, zero-drift marginals.

    ``which = "real"``: (1+s)^2/2 log(1+s) - (1+s/2)^2 log(1+s/2)
    - s^2/4 log(2s) for s >= 0.  ``which = "imag"``:
    t^2/8 log(1+4/t^2) - 1/2 log(1+t^2/4) + t arctan(t/2), any t.
    """
    if which == "real":
        s = float(arg)
        if s < 0:
            raise DomainError(f"real form needs s >= 0, got {s}")
        if s == 0:
            return 0.0
        return (
            0.5 * (1.0 + s) ** 2 * math.log1p(s)
            - (1.0 + 0.5 * s) ** 2 * math.log1p(0.5 * s)
            - 0.25 * s * s * math.log(2.0 * s)
        )
    if which == "imag":
        t = float(arg)
        if t == 0:
            return 0.0
        return (
            0.125 * t * t * math.log1p(4.0 / (t * t))
            - 0.5 * math.log1p(0.25 * t * t)
            + t * math.atan(0.5 * t)
        )
    raise DomainError(f'which must be "real" or "imag", got {which!r}')


def optimal_trajectory(
    T: float, gamma: float, rho: float
) -> Tuple[Callable[[float], float], Callable[[float], float]]:
    """Closed-form derivatives of the optimal interior path:

    phi'(tau) = log(1-tau+gamma) - (1/2) log((1-tau+gamma/2)^2 + rho^2/4),
    psi'(tau) = arctan(rho / (2(1-tau) + gamma)).

    Integrating them over [0, T] recovers the (xi, eta) whose marginal
    rate has multipliers (gamma, rho)."""
    if gamma <= -(1.0 - T):
        raise DomainError(f"need gamma > -(1-T) = {-(1.0 - T)}, got {gamma}")

    def phi_dot(tau: float) -> float:
        u = 1.0 - tau
        half = u + 0.5 * gamma
        return math.log(u + gamma) - 0.5 * math.log(half * half + 0.25 * rho * rho)

    def psi_dot(tau: float) -> float:
        return math.atan2(rho, 2.0 * (1.0 - tau) + gamma)

    return phi_dot, psi_dot
