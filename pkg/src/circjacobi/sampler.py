"""Exact sampling of deformed Verblunsky coefficients.

Disc coefficients are drawn by rejection from the zero-deformation base
law (radius^2 by inversion of a Beta(1, r) tail, uniform angle) with the
weight |1-z|^(2 Re delta) exp(2 Im delta arg(1-z)) and the envelope
2^(2 Re delta) exp(pi |Im delta|); circle coefficients by rejection from
the uniform angle with the analogous weight.  Both are exact for
Re delta >= 0; the singular-weight range -1/2 < Re delta < 0 is not
sampled (the closed-form modules still cover it).

Randomness contract (pinned): numpy ``PCG64`` bit generators seeded via
``SeedSequence(seed, spawn_key=path)``.  ``sample_ensemble`` draws
coefficient j from the substream ``(j,)``; the batch helper draws sample
i from the substream ``(i,)`` so Monte Carlo runs are reproducible and
independent of how samples are distributed over workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .asymptotics import EnsembleParams
from .specfun import DomainError

__all__ = [
    "GENERATOR_FAMILY",
    "SamplingError",
    "RandomStream",
    "DeformedVerblunskySample",
    "substream",
    "sample_gamma_disc",
    "sample_gamma_circle",
    "sample_ensemble",
    "sample_ensemble_batch",
    "disc_acceptance_rate",
]

GENERATOR_FAMILY = "numpy.random.PCG64 + SeedSequence(seed, spawn_key=path)"

# One rejection draw may not consume more than this many proposals.
ITERATION_CAP = 10**6


class SamplingError(RuntimeError):
    """Rejection sampling exceeded its iteration cap."""


def substream(seed: int, *path: int) -> np.random.Generator:
    """Derive the generator for a substream path from a master seed."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(path))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class RandomStream:
    """A (seed, substream path) pair; equal pairs yield equal draws
    regardless of how many execution units run concurrently."""

    seed: int
    path: tuple = ()

    def generator(self) -> np.random.Generator:
        return substream(self.seed, *self.path)

    def child(self, index: int) -> "RandomStream":
        return RandomStream(self.seed, self.path + (index,))


@dataclass(frozen=True)
class DeformedVerblunskySample:
    """One draw of the coefficient vector (gamma_0, ..., gamma_{n-1})."""

    gamma: np.ndarray
    seed: int
    params: EnsembleParams

    def __post_init__(self):
        g = self.gamma
        if len(g) != self.params.n:
            raise ValueError("coefficient count does not match n")
        mod = np.abs(g)
        if len(g) > 1 and np.any(mod[:-1] >= 1.0):
            raise ValueError("interior coefficients must lie in the open disc")
        if abs(mod[-1] - 1.0) > 1e-12:
            raise ValueError("terminal coefficient must lie on the circle")
        if np.any(g == 1.0):
            raise ValueError("coefficients must differ from 1")


def _as_generator(stream) -> np.random.Generator:
    if isinstance(stream, np.random.Generator):
        return stream
    if isinstance(stream, RandomStream):
        return stream.generator()
    raise TypeError(f"expected RandomStream or numpy Generator, got {type(stream)}")


def _check_delta(delta: complex) -> complex:
    delta = complex(delta)
    if delta.real < 0:
        raise DomainError(
            f"sampling requires Re delta >= 0 (weight unbounded otherwise), got {delta}"
        )
    return delta


def _log_envelope(delta: complex) -> float:
    return 2.0 * delta.real * math.log(2.0) + math.pi * abs(delta.imag)


def _log_weight(z: np.ndarray, delta: complex) -> np.ndarray:
    """log of |1-z|^(2 Re delta) * exp(2 Im delta arg(1-z)); arg(1-z) lies
    in (-pi/2, pi/2) on the closed disc."""
    one_minus = 1.0 - z
    return 2.0 * delta.real * np.log(np.abs(one_minus)) + 2.0 * delta.imag * np.angle(
        one_minus
    )


def _rejection_fill(rng, delta, propose, size):
    """Fill ``size`` slots with accepted proposals; each wave proposes one
    candidate per open slot, so the draw sequence is deterministic."""
    log_env = _log_envelope(delta)
    out = np.empty(size, dtype=np.complex128)
    open_idx = np.arange(size)
    proposals = 0
    while open_idx.size:
        k = open_idx.size
        z = propose(rng, k)
        v = rng.random(k)
        logw = _log_weight(z, delta)
        accept = (np.log(v) + log_env <= logw) & (z != 1.0)
        out[open_idx[accept]] = z[accept]
        open_idx = open_idx[~accept]
        proposals += k
        if proposals > ITERATION_CAP * size:
            rate = (size - open_idx.size) / proposals
            raise SamplingError(
                f"rejection cap exceeded (empirical acceptance {rate:.3e})"
            )
    return out


def _propose_disc(r: float):
    inv_r = 1.0 / r

    def propose(rng, k):
        u = rng.random(k)
        theta = 2.0 * math.pi * rng.random(k)
        radius = np.sqrt(1.0 - (1.0 - u) ** inv_r)
        return radius * np.exp(1j * theta)

    return propose


def _propose_circle(rng, k):
    theta = 2.0 * math.pi * rng.random(k)
    return np.exp(1j * theta)


def sample_gamma_disc(
    r: float,
    delta: complex,
    stream: Union[RandomStream, np.random.Generator],
    size: Optional[int] = None,
):
    """Exact draw(s) from the disc law of rank weight r > 0.

    Returns a complex scalar, or an array when ``size`` is given.
    """
    if r <= 0:
        raise DomainError(f"disc law needs r > 0, got {r}")
    delta = _check_delta(delta)
    rng = _as_generator(stream)
    out = _rejection_fill(rng, delta, _propose_disc(r), 1 if size is None else size)
    return complex(out[0]) if size is None else out


def sample_gamma_circle(
    delta: complex,
    stream: Union[RandomStream, np.random.Generator],
    size: Optional[int] = None,
):
    """Exact draw(s) from the circle law (the terminal coefficient)."""
    delta = _check_delta(delta)
    rng = _as_generator(stream)
    out = _rejection_fill(rng, delta, _propose_circle, 1 if size is None else size)
    return complex(out[0]) if size is None else out


def sample_ensemble(params: EnsembleParams, seed: int) -> DeformedVerblunskySample:
    """One full coefficient vector; coefficient j uses substream (j,).

    The per-coefficient substream contract makes individual coefficients
    reproducible in isolation; the batch helper below is the fast path
    for Monte Carlo.
    """
    delta = _check_delta(params.effective_delta)
    n = params.n
    ranks = params.coefficient_ranks()
    gamma = np.empty(n, dtype=np.complex128)
    for j in range(n - 1):
        gamma[j] = sample_gamma_disc(ranks[j], delta, substream(seed, j))
    gamma[n - 1] = sample_gamma_circle(delta, substream(seed, n - 1))
    return DeformedVerblunskySample(gamma=gamma, seed=seed, params=params)


def ensemble_gammas(params: EnsembleParams, rng: np.random.Generator) -> np.ndarray:
    """Vectorized coefficient vector from a single generator: all disc
    coefficients are proposed in elementwise rejection waves, then the
    terminal circle coefficient is drawn."""
    delta = _check_delta(params.effective_delta)
    n = params.n
    ranks = params.coefficient_ranks()
    gamma = np.empty(n, dtype=np.complex128)
    log_env = _log_envelope(delta)
    if n > 1:
        inv_r = 1.0 / ranks[: n - 1]
        open_idx = np.arange(n - 1)
        proposals = 0
        while open_idx.size:
            k = open_idx.size
            u = rng.random(k)
            theta = 2.0 * math.pi * rng.random(k)
            v = rng.random(k)
            radius = np.sqrt(1.0 - (1.0 - u) ** inv_r[open_idx])
            z = radius * np.exp(1j * theta)
            accept = (np.log(v) + log_env <= _log_weight(z, delta)) & (z != 1.0)
            gamma[open_idx[accept]] = z[accept]
            open_idx = open_idx[~accept]
            proposals += k
            if proposals > ITERATION_CAP * (n - 1):
                raise SamplingError("rejection cap exceeded in ensemble draw")
    gamma[n - 1] = _rejection_fill(rng, delta, _propose_circle, 1)[0]
    return gamma


def sample_ensemble_batch(
    params: EnsembleParams, seed: int, count: int
) -> np.ndarray:
    """``count`` independent coefficient vectors, shape (count, n).

    Sample i is drawn from substream (i,), so results are bit-identical
    however samples are later distributed over workers.
    """
    out = np.empty((count, params.n), dtype=np.complex128)
    for i in range(count):
        out[i] = ensemble_gammas(params, substream(seed, i))
    return out


def disc_acceptance_rate(r: float, delta: complex) -> float:
    """Exact acceptance probability of the disc rejection sampler:
    (mass ratio of the deformed to the base law) / envelope."""
    from .gammalaw import CoefficientLaw, normalization_c

    delta = _check_delta(delta)
    base = normalization_c(CoefficientLaw(r, 0.0))
    target = normalization_c(CoefficientLaw(r, delta))
    return (base / target) * math.exp(-_log_envelope(delta))
