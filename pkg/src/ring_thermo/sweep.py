"""Parameter sweeps over (T, strength, r0) grids and figure-ready CSV output.

A sweep evaluates one ensemble over a temperature grid (or a radius grid at
fixed temperature) for a list of coupling strengths, and serializes the
result deterministically: identical specs produce byte-identical files.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .canonical import canonical_evaluate
from .grand import grand_evaluate
from .model import Coupling, RingModel, UnitMode, Variant
from .numerics import (
    NonPositiveResult,
    TruncationFailure,
    TruncationPolicy,
    ValidityWarning,
)

ERROR_SENTINEL = "ERROR"

CANONICAL_QUANTITIES = ("f", "u", "s", "c", "j")
GRAND_QUANTITIES = ("n", "u", "s", "c", "j")
ALL_QUANTITIES = ("f", "u", "s", "c", "n", "j")


class SpecError(ValueError):
    """Invalid sweep specification (maps to CLI exit status 2)."""


class SchemaMismatch(ValueError):
    """Two datasets cannot be compared because their schemas differ."""


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition and output routing for one sweep.

    Defaults follow the reference configuration: strengths {0 .. 1.2},
    dimensionless units with omega = 1 eV and m*r0 = 1, mu = 0.1 eV.
    A radius sweep (r0_points set) runs at `fixed_t` over radius scale
    factors relative to the reference radius, recomputing omega per point.
    """

    ensemble: str = "canonical"
    variant: str = "anisotropic"
    strengths: tuple = (0.0, 0.3, 0.6, 0.9, 1.2)
    t_min: float = 0.01
    t_max: float = 1.0
    t_points: int = 100
    r0_min: float | None = None
    r0_max: float | None = None
    r0_points: int | None = None
    fixed_t: float = 0.4
    mu: float = 0.1
    unit_mode: str = "dimensionless"
    omega: float = 1.0
    mass_radius: float = 1.0
    mass_ev: float | None = None
    radius_nm: float | None = None
    backend: str = "direct"
    quantities: tuple = ()
    output_path: str = "sweep.csv"

    def __post_init__(self):
        if not self.quantities:
            default = CANONICAL_QUANTITIES if self.ensemble == "canonical" else GRAND_QUANTITIES
            object.__setattr__(self, "quantities", default)
        object.__setattr__(self, "strengths", tuple(float(x) for x in self.strengths))
        object.__setattr__(self, "quantities", tuple(self.quantities))

    @property
    def is_radius_sweep(self) -> bool:
        return self.r0_points is not None

    def validate(self) -> None:
        if self.ensemble not in ("canonical", "grand"):
            raise SpecError(f"ensemble must be canonical or grand, got {self.ensemble!r}")
        if self.variant not in ("anisotropic", "isotropic"):
            raise SpecError(f"variant must be anisotropic or isotropic, got {self.variant!r}")
        if not self.strengths:
            raise SpecError("strengths list must not be empty")
        if any(x < 0 for x in self.strengths):
            raise SpecError("strengths must be non-negative")
        if self.is_radius_sweep:
            if self.r0_min is None or self.r0_max is None:
                raise SpecError("radius sweep needs r0_min, r0_max and r0_points")
            if not (0 < self.r0_min <= self.r0_max):
                raise SpecError("radius grid must satisfy 0 < min <= max")
            if self.r0_points < 2:
                raise SpecError("radius grid needs at least 2 points")
            if self.fixed_t <= 0:
                raise SpecError("fixed_t must be positive")
        else:
            if self.t_min <= 0:
                raise SpecError("t_min must be positive")
            if self.t_max < self.t_min:
                raise SpecError("t_max must be >= t_min")
            if self.t_points < 2:
                raise SpecError("temperature grid needs at least 2 points")
            if self.t_max > 1.0:
                warnings.warn(
                    f"t_max={self.t_max:g} eV exceeds the vouched-for range (0, 1] eV",
                    ValidityWarning, stacklevel=2)
        if self.unit_mode not in ("dimensionless", "physical"):
            raise SpecError(f"unit_mode must be dimensionless or physical, got {self.unit_mode!r}")
        if self.unit_mode == "dimensionless" and self.omega <= 0:
            raise SpecError("omega must be positive")
        if self.unit_mode == "physical":
            if self.mass_ev is None or self.radius_nm is None:
                raise SpecError("physical mode needs mass_ev and radius_nm")
        if self.backend not in ("direct", "em", "euler-maclaurin"):
            raise SpecError(f"backend must be direct or euler-maclaurin, got {self.backend!r}")
        if self.ensemble == "grand" and self.backend != "direct":
            raise SpecError("the grand ensemble only supports the direct backend")
        allowed = CANONICAL_QUANTITIES if self.ensemble == "canonical" else ("f",) + GRAND_QUANTITIES
        bad = [q for q in self.quantities if q not in allowed]
        if bad:
            raise SpecError(f"quantities {bad} not available for the {self.ensemble} ensemble")

    def grid_values(self) -> np.ndarray:
        if self.is_radius_sweep:
            return np.linspace(self.r0_min, self.r0_max, self.r0_points)
        return np.linspace(self.t_min, self.t_max, self.t_points)

    def model_at(self, radius_scale: float = 1.0) -> RingModel:
        if self.unit_mode == "physical":
            return RingModel.physical(self.mass_ev, self.radius_nm * radius_scale)
        return RingModel.dimensionless(omega=self.omega / radius_scale**2,
                                       mass_radius=self.mass_radius * radius_scale)

    def coupling_at(self, strength: float) -> Coupling:
        variant = Variant(self.variant)
        return Coupling(variant, strength)

    def echo(self) -> dict:
        """Resolved scalar metadata for the CSV header, key-sorted."""
        items = {
            "backend": self.backend,
            "ensemble": self.ensemble,
            "fixed_t": repr(self.fixed_t) if self.is_radius_sweep else "",
            "grid": "r0" if self.is_radius_sweep else "T",
            "mu": repr(self.mu) if self.ensemble == "grand" else "",
            "quantities": ",".join(self.quantities),
            "strengths": ",".join(repr(x) for x in self.strengths),
            "unit_mode": self.unit_mode,
            "variant": self.variant,
        }
        if self.unit_mode == "physical":
            items["mass_ev"] = repr(self.mass_ev)
            items["radius_nm"] = repr(self.radius_nm)
        else:
            items["mass_radius"] = repr(self.mass_radius)
            items["omega"] = repr(self.omega)
        return {k: v for k, v in sorted(items.items()) if v != ""}


@dataclass(frozen=True)
class SweepRow:
    strength: float
    grid: float
    values: tuple | None
    error: str | None = None


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list = field(default_factory=list)

    @property
    def columns(self) -> tuple:
        return ("strength", "grid") + tuple(self.spec.quantities)

    @property
    def failed(self) -> bool:
        return any(row.error is not None for row in self.rows)


def _evaluate_point(spec: SweepSpec, strength: float, grid_value: float,
                    policy: TruncationPolicy | None) -> tuple:
    if spec.is_radius_sweep:
        model = spec.model_at(radius_scale=grid_value)
        temperature = spec.fixed_t
    else:
        model = spec.model_at()
        temperature = float(grid_value)
    coupling = spec.coupling_at(strength)

    if spec.ensemble == "canonical":
        st = canonical_evaluate(model, coupling, temperature,
                                backend=spec.backend, policy=policy)
        lookup = {"f": st.f, "u": st.u, "s": st.s_entropy, "c": st.c, "j": st.j_z}
    else:
        st = grand_evaluate(model, coupling, temperature, spec.mu, policy=policy)
        lookup = {"f": st.phi, "n": st.n_mean, "u": st.u_total,
                  "s": st.s_total, "c": st.c_total, "j": st.j_z}
    return tuple(lookup[q] for q in spec.quantities)


def run_sweep(spec: SweepSpec, policy: TruncationPolicy | None = None) -> SweepResult:
    """Evaluate the requested ensemble at every (strength, grid) point.

    Rows come out strength-major with the grid ascending.  Numerical
    failures at individual points are captured as flagged rows rather than
    aborting the sweep; `SweepResult.failed` reports whether any occurred.
    """
    spec.validate()
    result = SweepResult(spec=spec)
    with warnings.catch_warnings():
        # the validity warning was already emitted once by validate()
        warnings.simplefilter("ignore", ValidityWarning)
        for strength in spec.strengths:
            for grid_value in spec.grid_values():
                try:
                    values = _evaluate_point(spec, strength, float(grid_value), policy)
                except (TruncationFailure, NonPositiveResult) as exc:
                    result.rows.append(SweepRow(strength, float(grid_value),
                                                None, error=str(exc)))
                    continue
                if any(not math.isfinite(v) for v in values):
                    result.rows.append(SweepRow(strength, float(grid_value),
                                                None, error="non-finite value"))
                    continue
                result.rows.append(SweepRow(strength, float(grid_value), values))
    return result


def _fmt(x: float) -> str:
    return format(x, ".17g")


def emit_csv(result: SweepResult, path) -> str:
    """Write the sweep as UTF-8 CSV.

    Layout: `# ring-thermo v<version>` first, `# key=value` metadata lines,
    the column header, then one data line per row with 17-significant-digit
    floats (IEEE double round-trip).  Byte-stable across runs for identical
    specs; failed points carry an ERROR sentinel in every quantity cell.
    """
    lines = [f"# ring-thermo v{__version__}"]
    for key, value in result.spec.echo().items():
        lines.append(f"# {key}={value}")
    lines.append(",".join(result.columns))
    for row in result.rows:
        cells = [_fmt(row.strength), _fmt(row.grid)]
        if row.error is None:
            cells.extend(_fmt(v) for v in row.values)
        else:
            cells.extend(ERROR_SENTINEL for _ in result.spec.quantities)
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write dataset to {path}: {exc}") from exc
    return str(path)


def parse_csv(path):
    """Read back an emitted dataset: (metadata dict, column names, cell rows)."""
    meta = {}
    columns = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                else:
                    meta.setdefault("banner", body)
                continue
            if columns is None:
                columns = tuple(line.split(","))
                continue
            rows.append(line.split(","))
    if columns is None:
        raise SchemaMismatch(f"{path} contains no column header")
    return meta, columns, rows


@dataclass(frozen=True)
class ColumnDeviation:
    max_abs: float
    max_rel: float
    passed: bool


@dataclass(frozen=True)
class CompareReport:
    columns: dict
    rows: int
    passed: bool

    def summary(self) -> str:
        lines = [f"{'column':>10s} {'max_abs':>12s} {'max_rel':>12s}  status"]
        for name, dev in self.columns.items():
            lines.append(f"{name:>10s} {dev.max_abs:12.5g} {dev.max_rel:12.5g}  "
                         f"{'ok' if dev.passed else 'FAIL'}")
        lines.append(f"rows={self.rows} -> {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def compare_datasets(path_a, path_b, rtol: float = 1e-9, atol: float = 0.0) -> CompareReport:
    """Column-wise deviation report between two emitted datasets.

    Schemas (column sets and row counts) must match exactly.  A pair of
    cells passes when |a - b| <= atol + rtol*|b|; ERROR sentinels only match
    other ERROR sentinels.
    """
    _, cols_a, rows_a = parse_csv(path_a)
    _, cols_b, rows_b = parse_csv(path_b)
    if cols_a != cols_b:
        raise SchemaMismatch(f"column mismatch: {cols_a} vs {cols_b}")
    if len(rows_a) != len(rows_b):
        raise SchemaMismatch(f"row count mismatch: {len(rows_a)} vs {len(rows_b)}")

    deviations = {}
    all_passed = True
    for idx, name in enumerate(cols_a):
        max_abs = 0.0
        max_rel = 0.0
        passed = True
        for ra, rb in zip(rows_a, rows_b):
            a, b = ra[idx], rb[idx]
            if ERROR_SENTINEL in (a, b):
                if a != b:
                    passed = False
                    max_abs = max_rel = math.inf
                continue
            fa, fb = float(a), float(b)
            diff = abs(fa - fb)
            max_abs = max(max_abs, diff)
            if fb != 0.0:
                max_rel = max(max_rel, diff / abs(fb))
            if diff > atol + rtol * abs(fb):
                passed = False
        deviations[name] = ColumnDeviation(max_abs, max_rel, passed)
        all_passed = all_passed and passed
    return CompareReport(columns=deviations, rows=len(rows_a), passed=all_passed)


def parse_config(path) -> dict:
    """Flat key = value config file; '#' starts a comment, keys mirror
    SweepSpec field names."""
    options = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SpecError(f"malformed config line: {raw.rstrip()}")
            key, _, value = line.partition("=")
            options[key.strip()] = value.strip()
    return options


_FLOAT_FIELDS = {"t_min", "t_max", "fixed_t", "mu", "omega", "mass_radius",
                 "mass_ev", "radius_nm", "r0_min", "r0_max"}
_INT_FIELDS = {"t_points", "r0_points"}
_LIST_FIELDS = {"strengths", "quantities"}


def spec_from_options(options: dict) -> SweepSpec:
    """Build a SweepSpec from string-valued options (config file or CLI)."""
    kwargs = {}
    for key, value in options.items():
        if value is None:
            continue
        name = key.strip().lower().replace("-", "_")
        if name in ("out", "output", "output_path"):
            kwargs["output_path"] = str(value)
        elif name in _FLOAT_FIELDS:
            kwargs[name] = float(value)
        elif name in _INT_FIELDS:
            kwargs[name] = int(value)
        elif name == "strengths":
            parts = [p for p in str(value).replace(",", " ").split() if p]
            kwargs["strengths"] = tuple(float(p) for p in parts)
        elif name == "quantities":
            parts = [p for p in str(value).replace(",", " ").split() if p]
            unknown = [p for p in parts if p not in ALL_QUANTITIES]
            if unknown:
                raise SpecError(f"unknown quantities {unknown}")
            kwargs["quantities"] = tuple(parts)
        elif name in ("ensemble", "variant", "unit_mode", "backend"):
            kwargs[name] = str(value).strip().lower()
        else:
            raise SpecError(f"unknown spec option {key!r}")
    try:
        spec = SweepSpec(**kwargs)
    except TypeError as exc:
        raise SpecError(str(exc)) from exc
    if spec.backend == "em":
        spec = replace(spec, backend="euler-maclaurin")
    return spec
