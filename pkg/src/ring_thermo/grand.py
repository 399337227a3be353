"""Grand-canonical thermodynamics at fixed chemical potential.

Each fermionic level (n, s) is occupied by 0 or 1 electrons, so the grand
partition function is a product of two-term factors and the grand potential
is a sum of ln(1 + exp(-beta(E - mu))) terms.  Particle number, internal
energy and entropy come from exact Fermi-sum identities; only the heat
capacity needs a numerical temperature derivative.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .model import Coupling, RingModel, level_offset, spin_current_eigen
from .numerics import (
    BOLTZMANN_CUTOFF,
    DEFAULT_POLICY,
    DEFAULT_SCHEME,
    VALID_T_MAX,
    TruncationFailure,
    TruncationPolicy,
    ValidityWarning,
    differentiate,
)


@dataclass(frozen=True)
class GrandState:
    """One grand-canonical evaluation at (T, mu).

    phi <= 0 always; every occupation lies in [0, 1]; s_total >= 0.
    """

    T: float
    mu: float
    phi: float
    n_mean: float
    u_total: float
    s_total: float
    c_total: float
    j_z: float


def occupation(E: float, T: float, mu: float):
    """Fermi-Dirac occupation 1/(exp((E-mu)/T) + 1), overflow-safe on both
    tails. Accepts arrays."""
    if T <= 0:
        raise ValueError("temperature must be positive")
    out = expit(-(np.asarray(E, dtype=float) - mu) / T)
    return float(out) if np.isscalar(E) else out


def _level_arrays(model: RingModel, coupling: Coupling, T: float, mu: float,
                  policy: TruncationPolicy):
    """Energies (n_cap+1, 2) and n-values covering every level that can
    contribute, grown until the last n-block is past the Boltzmann cutoff
    and below the tail tolerance."""
    beta = 1.0 / T
    peak = max(0.0, -level_offset(coupling, 1), -level_offset(coupling, 2))
    span = math.sqrt(max(BOLTZMANN_CUTOFF * T + max(mu, 0.0), 0.0) / model.omega)
    n_cap = max(int(math.ceil(peak + span)) + 2, policy.n_min)

    while True:
        if n_cap > policy.n_max:
            raise TruncationFailure(
                f"level cap {n_cap} exceeds n_max={policy.n_max} at T={T:g}, mu={mu:g}")
        n = np.arange(n_cap + 1, dtype=float)
        offsets = np.array([level_offset(coupling, 1), level_offset(coupling, 2)])
        e = model.omega * (n[:, None] + offsets[None, :]) ** 2
        x_last = beta * (e[-1] - mu)
        terms = np.logaddexp(0.0, -beta * (e - mu))
        tail = terms[-1].sum()
        if np.min(x_last) > BOLTZMANN_CUTOFF and tail <= policy.tail_tol * terms.sum():
            return n, e
        n_cap *= 2


def _check_temperature(T: float) -> None:
    if T <= 0:
        raise ValueError("temperature must be positive")
    if T > VALID_T_MAX:
        warnings.warn(
            f"T={T:g} eV exceeds the vouched-for range (0, {VALID_T_MAX}] eV",
            ValidityWarning, stacklevel=3)


def grand_potential(model: RingModel, coupling: Coupling, T: float, mu: float,
                    policy: TruncationPolicy | None = None) -> float:
    """Grand potential Phi = -T sum ln(1 + exp(-beta(E - mu))), eV.

    Always <= 0; each log term is evaluated in log1p style so deeply
    occupied and deeply empty levels are both safe.
    """
    _check_temperature(T)
    pol = policy or DEFAULT_POLICY
    _, e = _level_arrays(model, coupling, T, mu, pol)
    x = (e - mu) / T
    return -T * float(np.logaddexp(0.0, -x).sum())


def grand_evaluate(model: RingModel, coupling: Coupling, T: float, mu: float,
                   policy: TruncationPolicy | None = None) -> GrandState:
    """Evaluate the grand-canonical state functions at (T, mu).

    N, U and S use exact Fermi-sum identities; the heat capacity is
    C = T dS/dT at fixed mu by central differences.
    """
    _check_temperature(T)
    pol = policy or DEFAULT_POLICY

    def sums_at(temp: float):
        n, e = _level_arrays(model, coupling, temp, mu, pol)
        x = (e - mu) / temp
        occ = expit(-x)
        log_terms = np.logaddexp(0.0, -x)
        phi = -temp * float(log_terms.sum())
        n_mean = float(occ.sum())
        u_total = float((e * occ).sum())
        s_total = float((log_terms + x * occ).sum())
        j = float((spin_current_eigen(model, coupling, n) * occ.sum(axis=1)).sum())
        return phi, n_mean, u_total, s_total, j

    phi, n_mean, u_total, s_total, j = sums_at(T)
    c_total = T * differentiate(lambda temp: sums_at(temp)[3], T, DEFAULT_SCHEME)
    return GrandState(T=T, mu=mu, phi=phi, n_mean=n_mean, u_total=u_total,
                      s_total=s_total, c_total=c_total, j_z=j)


def grand_spin_current(model: RingModel, coupling: Coupling, T: float, mu: float,
                       policy: TruncationPolicy | None = None) -> float:
    """Fermi-weighted thermal average of the spin current, eV."""
    _check_temperature(T)
    pol = policy or DEFAULT_POLICY
    n, e = _level_arrays(model, coupling, T, mu, pol)
    occ = expit(-(e - mu) / T)
    return float((spin_current_eigen(model, coupling, n) * occ.sum(axis=1)).sum())
