"""Thermodynamics and persistent spin currents of a 1-D quantum ring whose
electron spectrum is modified by Lorentz-violating couplings."""

__version__ = "0.1.0"

from .model import (  # noqa: E402
    Coupling,
    RingModel,
    SpectrumPoint,
    UnitMode,
    Variant,
    VariantMismatchError,
    delta_s,
    energies,
    energy,
    psi_s,
    spectrum_energies,
    spectrum_point,
    spin_current_eigen,
    theta,
)
from .numerics import (  # noqa: E402
    BoltzmannSum,
    DiffScheme,
    DomainClipWarning,
    NonPositiveResult,
    TruncationFailure,
    TruncationPolicy,
    ValidityWarning,
    differentiate,
    erf,
    euler_maclaurin_z1,
    stable_boltzmann_sum,
)
from .canonical import (  # noqa: E402
    Backend,
    CanonicalState,
    canonical_evaluate,
    canonical_spin_current,
    thermal_n_mean,
)
from .grand import (  # noqa: E402
    GrandState,
    grand_evaluate,
    grand_potential,
    grand_spin_current,
    occupation,
)
from .sweep import (  # noqa: E402
    CompareReport,
    SchemaMismatch,
    SpecError,
    SweepResult,
    SweepSpec,
    compare_datasets,
    emit_csv,
    parse_csv,
    run_sweep,
)

__all__ = [
    "__version__",
    "Backend",
    "BoltzmannSum",
    "CanonicalState",
    "CompareReport",
    "Coupling",
    "DiffScheme",
    "DomainClipWarning",
    "GrandState",
    "NonPositiveResult",
    "RingModel",
    "SchemaMismatch",
    "SpecError",
    "SpectrumPoint",
    "SweepResult",
    "SweepSpec",
    "TruncationFailure",
    "TruncationPolicy",
    "UnitMode",
    "ValidityWarning",
    "Variant",
    "VariantMismatchError",
    "canonical_evaluate",
    "canonical_spin_current",
    "compare_datasets",
    "delta_s",
    "differentiate",
    "emit_csv",
    "energies",
    "energy",
    "erf",
    "euler_maclaurin_z1",
    "grand_evaluate",
    "grand_potential",
    "grand_spin_current",
    "occupation",
    "parse_csv",
    "psi_s",
    "run_sweep",
    "spectrum_energies",
    "spectrum_point",
    "spin_current_eigen",
    "stable_boltzmann_sum",
    "theta",
    "thermal_n_mean",
]
