"""Constants of the reduction and settings of the Gram solver.

Both are loaded from one YAML file; see ``ncsos_workbench_data/configs/default.yaml``.
Reduction constants are exact rationals. Files using ``name = rational`` lines
are accepted as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any

import yaml

from ncsos_workbench.utils.logging import get_logger

logger = get_logger(__name__)

CONFIG_DIR = Path(__file__).resolve().parents[1] / "ncsos_workbench_data" / "configs"
DEFAULT_CONFIG = CONFIG_DIR / "default.yaml"

DERIVED = ("Lambda_tilde", "k_prime", "Gamma", "Gamma_tilde")


def _rational(name: str, value: Any) -> Fraction:
    try:
        out = Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"{name}: {value!r} is not a rational number") from e
    if out <= 0:
        raise ValueError(f"{name} must be positive, got {out}")
    return out


@dataclass(frozen=True)
class ReductionConfig:
    """Constants used by the compilers and the inequality reports.

    Args:
        C: multiplier of the key-relation size bound C((n+1)m)^k.
        k: exponent of the same bound.
        Lambda: size bound constant for the halving chain.
        D: degree bound constant relating H-lengths to m.
        Lambda_tilde: defaults to 6 D Lambda.
        k_prime: defaults to k + 1.
        Gamma: defaults to 2 (C + 25).
        Gamma_tilde: defaults to 8 D Gamma.
        d_S: coefficients of the isoperimetric polynomial, lowest degree first.
    """

    C: Fraction = Fraction(16)
    k: int = 4
    Lambda: Fraction = Fraction(64)
    D: Fraction = Fraction(8)
    Lambda_tilde: Fraction | None = None
    k_prime: int | None = None
    Gamma: Fraction | None = None
    Gamma_tilde: Fraction | None = None
    d_S: tuple[Fraction, ...] = (Fraction(0), Fraction(2), Fraction(1))

    def __post_init__(self) -> None:
        """Validate and fill in the derived constants."""
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "d_S":
                coefficients = tuple(Fraction(str(c)) for c in value)
                if any(c < 0 for c in coefficients):
                    raise ValueError(f"d_S coefficients must be non-negative, got {value}")
                object.__setattr__(self, "d_S", coefficients)
            elif value is not None:
                checked = _rational(f.name, value)
                if f.name in ("k", "k_prime"):
                    if checked.denominator != 1:
                        raise ValueError(f"{f.name} must be an integer, got {checked}")
                    checked = int(checked)
                object.__setattr__(self, f.name, checked)
        if self.Lambda_tilde is None:
            object.__setattr__(self, "Lambda_tilde", 6 * self.D * self.Lambda)
        if self.k_prime is None:
            object.__setattr__(self, "k_prime", self.k + 1)
        if self.Gamma is None:
            object.__setattr__(self, "Gamma", 2 * (self.C + 25))
        if self.Gamma_tilde is None:
            object.__setattr__(self, "Gamma_tilde", 8 * self.D * self.Gamma)

    def alpha_penalty(self, m: int) -> Fraction:
        """1 / (Lambda_tilde^2 m^(2 k'))."""
        return 1 / (Fraction(self.Lambda_tilde) ** 2 * Fraction(m) ** (2 * self.k_prime))

    def beta_penalty(self, m: int) -> Fraction:
        """1 / (Gamma_tilde^2 m^(2 k'))."""
        return 1 / (Fraction(self.Gamma_tilde) ** 2 * Fraction(m) ** (2 * self.k_prime))

    def size_bound(self, m: int, n: int) -> Fraction:
        """C ((n+1) m)^k."""
        return Fraction(self.C) * Fraction((n + 1) * m) ** self.k

    def d_s(self, x: int) -> Fraction:
        """Evaluate d_S at x."""
        return sum((c * Fraction(x) ** e for e, c in enumerate(self.d_S)), Fraction(0))

    def as_dict(self) -> dict[str, str]:
        """String form of every constant, for reports."""
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "d_S":
                out[f.name] = "[" + ", ".join(str(c) for c in value) + "]"
            else:
                out[f.name] = str(value)
        return out


@dataclass(frozen=True)
class SolverConfig:
    """Settings of the interior-point Gram solver.

    Args:
        tolerance: residual accepted as a certificate.
        floor_threshold: a smallest mismatch above this is reported infeasible
            without polishing.
        max_iterations: cap on interior-point iterations.
        max_basis: largest monomial basis the solver accepts.
    """

    tolerance: float = 1e-8
    floor_threshold: float = 1e-4
    max_iterations: int = 500
    max_basis: int = 400

    def __post_init__(self) -> None:
        """Reject non-positive settings."""
        for f in fields(self):
            value = getattr(self, f.name)
            if value <= 0:
                raise ValueError(f"solver.{f.name} must be positive, got {value}")
        if self.tolerance > self.floor_threshold:
            raise ValueError("solver.tolerance must not exceed solver.floor_threshold")


@dataclass(frozen=True)
class WorkbenchConfig:
    """Everything a config file can set."""

    reduction: ReductionConfig = field(default_factory=ReductionConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)


def _parse_lines(text: str) -> dict[str, Any]:
    """The ``name = rational`` form, one constant per line."""
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'name = value', got {raw!r}")
        name, value = (part.strip() for part in line.split("=", 1))
        if name.startswith("solver."):
            out.setdefault("solver", {})[name.removeprefix("solver.")] = value
        elif name == "d_S":
            out[name] = [v for v in value.replace(",", " ").split()]
        else:
            out[name] = value
    return out


def config_from_dict(data: dict[str, Any]) -> WorkbenchConfig:
    """Build a config from parsed YAML (or line-form) data."""
    data = dict(data or {})
    solver_data = data.pop("solver", None) or {}
    known = {f.name for f in fields(ReductionConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys {sorted(unknown)}")
    solver_known = {f.name: f.type for f in fields(SolverConfig)}
    unknown = set(solver_data) - set(solver_known)
    if unknown:
        raise ValueError(f"unknown solver keys {sorted(unknown)}")
    solver_values = {}
    for name, value in solver_data.items():
        default = getattr(SolverConfig, name)
        solver_values[name] = int(value) if isinstance(default, int) else float(value)
    return WorkbenchConfig(ReductionConfig(**data), SolverConfig(**solver_values))


def load_config(path: str | Path | None = None) -> WorkbenchConfig:
    """Load a config file; None loads the shipped defaults."""
    path = Path(path) if path is not None else DEFAULT_CONFIG
    text = path.read_text()
    logger.debug(f"loading config from {path}")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError:
        data = None
    if not isinstance(data, dict):
        data = _parse_lines(text)
    return config_from_dict(data)
