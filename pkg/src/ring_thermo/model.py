"""Ring geometry, modified electron spectra and the per-state spin-current kernel.

Natural units throughout: energies in eV, lengths in eV^-1, k_B = 1.
The two coupling variants shift the quadratic ring spectrum in opposite
directions; both spectra are a positive scale times a perfect square, so
every level is non-negative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# hbar*c used to convert ring radii from nm to natural units.
HBAR_C_EV_NM = 197.3269804
ELECTRON_MASS_EV = 0.511e6
DEFAULT_RADIUS_NM = 50.0


class UnitMode(enum.Enum):
    PHYSICAL = "physical"
    DIMENSIONLESS = "dimensionless"


class Variant(enum.Enum):
    ANISOTROPIC = "anisotropic"
    ISOTROPIC = "isotropic"


class VariantMismatchError(ValueError):
    """A spin-splitting helper was called with the wrong coupling variant."""


@dataclass(frozen=True)
class RingModel:
    """Physical parameters of the ring.

    omega   energy scale of the quadratic spectrum, eV
    mass    electron mass, eV
    radius  ring radius, eV^-1
    In Physical mode omega is tied to the geometry, omega = 1/(2 m r0^2).
    In Dimensionless mode omega is set directly and `mass * radius` only
    enters through the spin-current prefactor 1/(4 m r0).
    """

    omega: float
    mass: float
    radius: float
    unit_mode: UnitMode = UnitMode.DIMENSIONLESS

    def __post_init__(self):
        if not (self.omega > 0 and self.mass > 0 and self.radius > 0):
            raise ValueError("omega, mass and radius must all be positive")
        if self.unit_mode is UnitMode.PHYSICAL:
            residual = abs(self.omega * 2.0 * self.mass * self.radius**2 - 1.0)
            if residual > 1e-12:
                raise ValueError(
                    f"physical mode requires omega = 1/(2 m r0^2); residual {residual:.3e}"
                )

    @property
    def mass_radius(self) -> float:
        return self.mass * self.radius

    @classmethod
    def physical(cls, mass_ev: float = ELECTRON_MASS_EV,
                 radius_nm: float = DEFAULT_RADIUS_NM) -> "RingModel":
        """Build from laboratory parameters (radius in nm)."""
        radius = radius_nm / HBAR_C_EV_NM
        omega = 1.0 / (2.0 * mass_ev * radius**2)
        return cls(omega=omega, mass=mass_ev, radius=radius, unit_mode=UnitMode.PHYSICAL)

    @classmethod
    def dimensionless(cls, omega: float = 1.0, mass_radius: float = 1.0) -> "RingModel":
        """Set omega directly; mass*radius fixes the spin-current prefactor."""
        return cls(omega=omega, mass=mass_radius, radius=1.0,
                   unit_mode=UnitMode.DIMENSIONLESS)


@dataclass(frozen=True)
class Coupling:
    """One Lorentz-violating configuration, reduced to a single dimensionless
    strength (the raw tensor components are never needed individually)."""

    variant: Variant
    strength: float

    def __post_init__(self):
        if self.strength < 0:
            raise ValueError("coupling strength must be non-negative")

    @classmethod
    def anisotropic(cls, xi: float) -> "Coupling":
        return cls(Variant.ANISOTROPIC, xi)

    @classmethod
    def isotropic(cls, xi00: float) -> "Coupling":
        return cls(Variant.ISOTROPIC, xi00)

    @property
    def root(self) -> float:
        """sqrt(1 + 4*strength^2), the spin-splitting radical."""
        return math.sqrt(1.0 + 4.0 * self.strength**2)


def _check_spin(s: int) -> None:
    if s not in (1, 2):
        raise ValueError(f"spin label must be 1 (down) or 2 (up), got {s!r}")


def delta_s(coupling: Coupling, s: int) -> float:
    """Anisotropic splitting Delta_s = 1 + (-1)^s sqrt(1+4 xi^2).

    Delta_1 <= 0 <= Delta_2 and Delta_1 + Delta_2 = 2 for every strength.
    """
    if coupling.variant is not Variant.ANISOTROPIC:
        raise VariantMismatchError("delta_s is defined for the anisotropic variant")
    _check_spin(s)
    return 1.0 + (-1.0) ** s * coupling.root


def psi_s(coupling: Coupling, s: int) -> float:
    """Isotropic splitting Psi_s = 1 - (-1)^s sqrt(1+4 xi00^2).

    Psi_1 >= 2, Psi_2 <= 0 for positive strength, Psi_1 + Psi_2 = 2.
    """
    if coupling.variant is not Variant.ISOTROPIC:
        raise VariantMismatchError("psi_s is defined for the isotropic variant")
    _check_spin(s)
    return 1.0 - (-1.0) ** s * coupling.root


def level_offset(coupling: Coupling, s: int) -> float:
    """Offset a_s such that E(n, s) = omega * (n + a_s)^2 for the variant."""
    _check_spin(s)
    if coupling.variant is Variant.ANISOTROPIC:
        return -0.5 * delta_s(coupling, s)
    return 0.5 * psi_s(coupling, s)


def energy(model: RingModel, coupling: Coupling, n: int, s: int) -> float:
    """Single-particle energy of state (n, s), eV. Non-negative for all states."""
    if n < 0:
        raise ValueError(f"quantum number n must be >= 0, got {n}")
    _check_spin(s)
    return model.omega * (n + level_offset(coupling, s)) ** 2


def energies(model: RingModel, coupling: Coupling, n_max: int) -> np.ndarray:
    """Energies for n = 0..n_max, shape (n_max+1, 2); column j holds s = j+1."""
    n = np.arange(n_max + 1, dtype=float)
    offsets = np.array([level_offset(coupling, 1), level_offset(coupling, 2)])
    return model.omega * (n[:, None] + offsets[None, :]) ** 2


def theta(coupling: Coupling) -> float:
    """Spin-texture tilt angle, principal branch: theta = arctan(2*strength)."""
    return math.atan(2.0 * coupling.strength)


def spin_current_eigen(model: RingModel, coupling: Coupling, n) -> float | np.ndarray:
    """Azimuthal spin-current eigenvalue (2 n cos(theta) - 1)/(4 m r0), eV.

    Independent of s; strictly increasing in n since cos(theta) > 0 for any
    finite strength. Accepts a scalar n or an integer array.
    """
    n_arr = np.asarray(n)
    if np.any(n_arr < 0):
        raise ValueError("quantum number n must be >= 0")
    cos_t = math.cos(theta(coupling))
    out = (2.0 * n_arr * cos_t - 1.0) / (4.0 * model.mass_radius)
    return float(out) if np.isscalar(n) or n_arr.ndim == 0 else out


@dataclass(frozen=True)
class SpectrumPoint:
    """Quantum numbers with the derived energy and spin-current eigenvalue."""

    n: int
    s: int
    energy: float
    current: float


def spectrum_point(model: RingModel, coupling: Coupling, n: int, s: int) -> SpectrumPoint:
    return SpectrumPoint(n=n, s=s,
                         energy=energy(model, coupling, n, s),
                         current=spin_current_eigen(model, coupling, n))


def spectrum_energies(model: RingModel, coupling: Coupling):
    """Yield energies in (n, s) grid order: (0,1), (0,2), (1,1), (1,2), ...

    Unbounded generator; consumers decide where to truncate.
    """
    a1 = level_offset(coupling, 1)
    a2 = level_offset(coupling, 2)
    n = 0
    while True:
        yield model.omega * (n + a1) ** 2
        yield model.omega * (n + a2) ** 2
        n += 1
