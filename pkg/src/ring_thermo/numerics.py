"""Shared numerical kernels.

Numerically stable Boltzmann sums over discrete spectra, the closed-form
partition approximation obtained from the Euler-Maclaurin expansion
(truncated after the B4 Bernoulli correction), the error function, and
central finite differences for thermodynamic derivatives.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
import scipy.special

from .model import Coupling, RingModel, Variant, delta_s, psi_s

BOLTZMANN_CUTOFF = 40.0  # beta*E beyond which a level cannot move the sum
VALID_T_MAX = 1.0        # closed-form backend is only vouched for below this


class TruncationFailure(RuntimeError):
    """The spectral sum did not meet its tail bound within the term budget."""


class NonPositiveResult(ArithmeticError):
    """The truncated closed form produced a non-positive partition value,
    a sign that the evaluation left its validity window."""


class DomainClipWarning(UserWarning):
    """A finite-difference stencil was shrunk to stay inside T > 0."""


class ValidityWarning(UserWarning):
    """Evaluation requested outside the vouched-for temperature range."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Controls when an infinite spectral sum is considered converged.

    tail_tol  relative contribution below which the last n-block is a tail
    n_min     minimum number of n-blocks before truncation may trigger
    n_max     hard cap on n-blocks; exceeding it raises TruncationFailure
    """

    tail_tol: float = 1e-12
    n_min: int = 16
    n_max: int = 200_000

    def __post_init__(self):
        if not (0.0 < self.tail_tol < 1.0):
            raise ValueError("tail_tol must lie in (0, 1)")
        if self.n_min > self.n_max:
            raise ValueError("n_min must not exceed n_max")


DEFAULT_POLICY = TruncationPolicy()


def erf(z):
    """Error function, 2/sqrt(pi) * integral of exp(-t^2) from 0 to z.

    Odd, bounded by 1 in magnitude, absolute error well below 1e-12
    (delegates to the C library implementation; accepts arrays).
    """
    out = scipy.special.erf(z)
    return float(out) if np.isscalar(z) else out


@dataclass(frozen=True)
class BoltzmannSum:
    """log of a Boltzmann sum plus the first two energy moments under it."""

    log_sum: float
    e_mean: float
    e2_mean: float
    n_terms: int

    @property
    def e_var(self) -> float:
        return max(self.e2_mean - self.e_mean**2, 0.0)


def stable_boltzmann_sum(energies: Iterable[float], beta: float,
                         policy: TruncationPolicy | None = None,
                         block: int = 2) -> BoltzmannSum:
    """Accumulate log(sum exp(-beta*E)) and the Boltzmann-weighted moments
    <E>, <E^2> over a stream of energies.

    The running sum is kept shifted by the largest -beta*E seen so far, so
    nothing overflows or underflows for beta up to ~1e6 eV^-1.  Finite
    sequences are normally consumed in full; unbounded streams must arrive
    in (n, s) grid order with `block` entries per n, and are truncated once
    a full block contributes less than tail_tol of the running sum while
    beta*E exceeds the Boltzmann cutoff for every entry of the block.
    Raises TruncationFailure if the rule never fires within n_max blocks.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    pol = policy or DEFAULT_POLICY

    shift = -math.inf  # running max of -beta*E
    total = 0.0        # sum of exp(-beta*E - shift)
    mom1 = 0.0         # sum of E * weight, same shift
    mom2 = 0.0
    count = 0
    blocks = 0

    block_sum = 0.0
    block_converged = True

    for e in energies:
        x = -beta * e
        if x <= shift:
            w = math.exp(x - shift)
        else:
            # new dominant term: rescale everything accumulated so far
            scale = math.exp(shift - x) if shift > -math.inf else 0.0
            total *= scale
            mom1 *= scale
            mom2 *= scale
            block_sum *= scale
            shift = x
            w = 1.0
        total += w
        mom1 += e * w
        mom2 += e * e * w
        count += 1

        block_sum += w
        if beta * e <= BOLTZMANN_CUTOFF:
            block_converged = False
        if count % block == 0:
            blocks += 1
            if (blocks >= pol.n_min and block_converged
                    and block_sum <= pol.tail_tol * total):
                break
            if blocks >= pol.n_max:
                raise TruncationFailure(
                    f"tail bound {pol.tail_tol:g} not met after {blocks} blocks "
                    f"(beta={beta:g})")
            block_sum = 0.0
            block_converged = True

    if count == 0:
        raise ValueError("empty energy stream")
    return BoltzmannSum(log_sum=shift + math.log(total),
                        e_mean=mom1 / total,
                        e2_mean=mom2 / total,
                        n_terms=count)


def _em_pieces(coupling: Coupling):
    """Splitting pair and bracket signs for the closed-form expansion."""
    if coupling.variant is Variant.ANISOTROPIC:
        return (delta_s(coupling, 1), delta_s(coupling, 2)), -1.0
    return (psi_s(coupling, 1), psi_s(coupling, 2)), +1.0


def euler_maclaurin_z1(model: RingModel, coupling: Coupling, beta: float) -> float:
    """Closed-form single-particle partition function from the
    Euler-Maclaurin expansion truncated after the B4 term.

    Accurate when beta*omega is small compared to 1 (the discrete sum is
    well approximated by its integral); the truncation error grows like
    exp(-pi^2/(beta*omega)) terms that the Bernoulli corrections cannot
    capture, so low temperatures at order-one omega fall outside the
    validity window.  Raises NonPositiveResult if the truncated expansion
    collapses to a non-positive value.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    alpha = beta * model.omega
    (g1, g2), sign = _em_pieces(coupling)

    half_root = math.sqrt(alpha / 4.0)
    erf_sum = erf(half_root * g1) + erf(half_root * g2)
    if coupling.variant is Variant.ANISOTROPIC:
        # integral piece: sum_s (1/2) sqrt(pi/alpha) [1 + erf(sqrt(alpha/4) Delta_s)]
        integral = math.sqrt(math.pi / alpha) * (1.0 + 0.5 * erf_sum)
    else:
        # integral piece with the opposite erf orientation, since the level
        # offsets enter with the opposite sign of the anisotropic case:
        # sum_s (1/2) sqrt(pi/alpha) [1 - erf(sqrt(alpha/4) Psi_s)]
        integral = math.sqrt(math.pi / alpha) * (1.0 - 0.5 * erf_sum)

    z = integral
    for g in (g1, g2):
        bracket = (0.5
                   + sign * (alpha / 12.0) * (1.0 + alpha / 10.0) * g
                   - sign * alpha**3 * g**3 / 720.0)
        z += math.exp(-alpha * g * g / 4.0) * bracket

    if not (z > 0.0) or not math.isfinite(z):
        raise NonPositiveResult(
            f"truncated expansion gave {z!r} at beta*omega={alpha:g}; "
            f"outside the validity window T in (0, {VALID_T_MAX}] eV")
    return z


@dataclass(frozen=True)
class DiffScheme:
    """Central finite-difference scheme with a relative step rule."""

    order: int = 4
    eps_rel: float = 1e-3
    h_min: float = 1e-5

    def __post_init__(self):
        if self.order not in (2, 4):
            raise ValueError("order must be 2 or 4 (central differences)")
        if self.eps_rel <= 0 or self.h_min <= 0:
            raise ValueError("step parameters must be positive")

    def step(self, t: float) -> float:
        return max(self.eps_rel * abs(t), self.h_min)


DEFAULT_SCHEME = DiffScheme()


def differentiate(f: Callable[[float], float], t: float,
                  scheme: DiffScheme | None = None,
                  lower_bound: float = 0.0) -> float:
    """Central-difference derivative df/dt.

    The stencil is shrunk (with a DomainClipWarning) if it would cross
    `lower_bound`; pass lower_bound=-inf for variables that may be negative,
    e.g. a chemical potential.
    """
    sch = scheme or DEFAULT_SCHEME
    h = sch.step(t)
    reach = 1 if sch.order == 2 else 2
    if t - reach * h <= lower_bound:
        h_clipped = (t - lower_bound) / (reach + 1)
        if h_clipped <= 0:
            raise ValueError(f"cannot differentiate at t={t} on domain > {lower_bound}")
        warnings.warn(
            f"stencil clipped at t={t:g}: step {h:g} -> {h_clipped:g}",
            DomainClipWarning, stacklevel=2)
        h = h_clipped
    if sch.order == 2:
        return (f(t + h) - f(t - h)) / (2.0 * h)
    inner = f(t + h) - f(t - h)
    outer = f(t + 2 * h) - f(t - 2 * h)
    return (8.0 * inner - outer) / (12.0 * h)
