"""Canonical-ensemble thermodynamics per particle.

For N non-interacting electrons the partition function factorizes into
Z1^N, so the Helmholtz free energy per particle is f = -T ln(Z1) and every
per-particle state function follows from Z1 alone.  Fermi statistics cannot
be imposed in this ensemble; see the grand-canonical module for that.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

from .model import Coupling, RingModel, spectrum_energies, theta
from .numerics import (
    DEFAULT_POLICY,
    DEFAULT_SCHEME,
    VALID_T_MAX,
    BOLTZMANN_CUTOFF,
    TruncationFailure,
    TruncationPolicy,
    ValidityWarning,
    differentiate,
    euler_maclaurin_z1,
    stable_boltzmann_sum,
)


class Backend(enum.Enum):
    DIRECT_SUM = "direct"
    EULER_MACLAURIN = "euler-maclaurin"


def _coerce_backend(backend) -> Backend:
    if isinstance(backend, Backend):
        return backend
    name = str(backend).lower()
    if name in ("direct", "direct-sum", "directsum"):
        return Backend.DIRECT_SUM
    if name in ("em", "euler-maclaurin", "eulermaclaurin"):
        return Backend.EULER_MACLAURIN
    raise ValueError(f"unknown backend {backend!r}")


def _check_temperature(T: float) -> None:
    if T <= 0:
        raise ValueError("temperature must be positive")
    if T > VALID_T_MAX:
        warnings.warn(
            f"T={T:g} eV exceeds the vouched-for range (0, {VALID_T_MAX}] eV",
            ValidityWarning, stacklevel=3)


@dataclass(frozen=True)
class CanonicalState:
    """One canonical evaluation: partition data plus per-particle functions.

    f = u - T*s holds as a thermodynamic identity; with the direct-sum
    backend c = beta^2 * Var(E) and is therefore non-negative.
    """

    T: float
    beta: float
    log_z1: float
    f: float
    u: float
    s_entropy: float
    c: float
    j_z: float
    backend: Backend


def canonical_evaluate(model: RingModel, coupling: Coupling, T: float,
                       backend=Backend.DIRECT_SUM,
                       policy: TruncationPolicy | None = None) -> CanonicalState:
    """Evaluate the per-particle canonical state functions at temperature T.

    The direct-sum backend takes u and c from the exact Boltzmann moments
    (u = <E>, c = beta^2 Var(E), s = (u - f)/T).  The closed-form backend
    differentiates ln(Z1) numerically, since differentiating the truncated
    expansion analytically buys nothing the cross-check does not already
    provide.
    """
    _check_temperature(T)
    be = _coerce_backend(backend)
    pol = policy or DEFAULT_POLICY
    beta = 1.0 / T

    if be is Backend.DIRECT_SUM:
        sb = stable_boltzmann_sum(spectrum_energies(model, coupling), beta, pol)
        log_z1 = sb.log_sum
        u = sb.e_mean
        c = beta**2 * sb.e_var
        f = -T * log_z1
        s = (u - f) / T
    else:
        def log_z1_at(temp: float) -> float:
            return math.log(euler_maclaurin_z1(model, coupling, 1.0 / temp))

        def u_at(temp: float) -> float:
            return temp**2 * differentiate(log_z1_at, temp, DEFAULT_SCHEME)

        log_z1 = log_z1_at(T)
        f = -T * log_z1
        u = u_at(T)
        s = -differentiate(lambda temp: -temp * log_z1_at(temp), T, DEFAULT_SCHEME)
        c = differentiate(u_at, T, DEFAULT_SCHEME)

    j = canonical_spin_current(model, coupling, T, pol)
    return CanonicalState(T=T, beta=beta, log_z1=log_z1, f=f, u=u,
                          s_entropy=s, c=c, j_z=j, backend=be)


def thermal_n_mean(model: RingModel, coupling: Coupling, beta: float,
                   policy: TruncationPolicy | None = None) -> float:
    """Boltzmann-weighted mean of the quantum number n over the (n, s) grid."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    pol = policy or DEFAULT_POLICY

    shift = -math.inf
    total = 0.0
    n_weighted = 0.0
    stream = spectrum_energies(model, coupling)
    for block_index in range(pol.n_max):
        e1 = next(stream)
        e2 = next(stream)
        block_sum = 0.0
        for e in (e1, e2):
            x = -beta * e
            if x <= shift:
                w = math.exp(x - shift)
            else:
                scale = math.exp(shift - x) if shift > -math.inf else 0.0
                total *= scale
                n_weighted *= scale
                block_sum *= scale
                shift = x
                w = 1.0
            total += w
            n_weighted += block_index * w
            block_sum += w
        converged = beta * min(e1, e2) > BOLTZMANN_CUTOFF
        if (block_index + 1 >= pol.n_min and converged
                and block_sum <= pol.tail_tol * total):
            return n_weighted / total
    raise TruncationFailure(
        f"<n> sum did not converge within {pol.n_max} blocks (beta={beta:g})")


def canonical_spin_current(model: RingModel, coupling: Coupling, T: float,
                           policy: TruncationPolicy | None = None) -> float:
    """Canonical thermal average of the spin current, eV.

    <J> = (2 <n> cos(theta) - 1) / (4 m r0); the sign distinguishes
    clockwise from counterclockwise circulation.
    """
    if T <= 0:
        raise ValueError("temperature must be positive")
    n_mean = thermal_n_mean(model, coupling, 1.0 / T, policy)
    cos_t = math.cos(theta(coupling))
    return (2.0 * n_mean * cos_t - 1.0) / (4.0 * model.mass_radius)
