"""Problem specifications and their JSON/YAML configuration files.

Example (YAML)::

    model: skt-b
    scheme: {kind: gamma, gamma: 1/5}
    alpha: 3/2
    N: 100
    tau: 1e-5
    t_final: 0.05

Overrides use dotted keys, e.g. ``scheme.gamma=1/5`` or
``newton.tol_residual=1e-12``; values are parsed as YAML scalars.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Literal, Self

import yaml
from loguru import logger
from pydantic import (
    AliasChoices,
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from ..core.exceptions import ConfigError
from ..entropy.functionals import EntropyConfig
from ..entropy.grid import GridState
from ..integrator.types import NewtonOptions
from ..schemes.coefficients import (
    SchemeCoefficients,
    bdf2,
    family_scheme,
    gamma_method,
    implicit_euler,
    implicit_midpoint,
)
from ..spatial.dlss import DlssConfig, dlss_initial_data
from ..spatial.models import DlssModel, SktModel, SpatialModel
from ..spatial.skt import TEST_PARAMS, SktParams, skt_initial_densities


def parse_rational(value: Any) -> Any:
    """Convert "n/d" (or any decimal string) through an exact fraction.

    Other values pass through for regular float validation.
    """
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            return value
    return value


Rational = Annotated[float, BeforeValidator(parse_rational)]

ModelName = Literal["skt-a", "skt-b", "skt-custom", "dlss"]


class SchemeChoice(BaseModel):
    """Scheme selector; gamma or (alpha2, beta2) when the kind needs them."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["bdf2", "gamma", "midpoint", "family", "euler"] = "bdf2"
    gamma: Rational | None = None
    alpha2: Rational | None = None
    beta2: Rational | None = None

    @model_validator(mode="after")
    def validate_parameters(self) -> Self:
        """Require exactly the parameters the kind uses."""
        if self.kind == "gamma" and self.gamma is None:
            raise ValueError("scheme kind 'gamma' needs a gamma value")
        if self.kind == "family" and (self.alpha2 is None or self.beta2 is None):
            raise ValueError("scheme kind 'family' needs alpha2 and beta2")
        return self

    def build(self) -> SchemeCoefficients:
        """Construct the coefficients.

        Raises:
            ParameterError: If gamma or (alpha2, beta2) are out of range.
        """
        match self.kind:
            case "bdf2":
                return bdf2()
            case "midpoint":
                return implicit_midpoint()
            case "euler":
                return implicit_euler()
            case "gamma":
                assert self.gamma is not None
                return gamma_method(self.gamma)
            case "family":
                assert self.alpha2 is not None and self.beta2 is not None
                return family_scheme(self.alpha2, self.beta2)


class ProblemSpec(BaseModel):
    """Everything needed to reproduce a run; no random seeds are involved.

    Attributes:
        model: skt-a / skt-b (reference tests), skt-custom (d1, d2, a1, a2
            given), or dlss
        scheme: Time discretization
        alpha: Entropy exponent
        grid_n: Grid nodes N (config key "N")
        tau: Time step
        t_final: Final time
        newton: Solver options
        snapshot_every: Density snapshot cadence in steps (0 = none)
        experimental: Allow alpha outside the analysis-backed range
        printed_exponents: SKT only, use the printed alpha/2 exponents
        d1, d2, a1, a2: SKT coefficients for skt-custom
        mean, amplitude: DLSS initial profile mean + amplitude sin(2 pi x)
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    model: ModelName
    scheme: SchemeChoice = Field(default_factory=SchemeChoice)
    alpha: Rational
    grid_n: int = Field(ge=4, validation_alias=AliasChoices("N", "grid_n"))
    tau: Rational = Field(gt=0)
    t_final: Rational
    newton: NewtonOptions = Field(default_factory=NewtonOptions)
    snapshot_every: int = Field(default=0, ge=0)
    experimental: bool = False
    printed_exponents: bool = False
    d1: Rational | None = None
    d2: Rational | None = None
    a1: Rational | None = None
    a2: Rational | None = None
    mean: Rational = 1.0
    amplitude: Rational = 0.5

    @field_validator("scheme", mode="before")
    @classmethod
    def _scheme_shorthand(cls, v: Any) -> Any:
        return {"kind": v} if isinstance(v, str) else v

    @model_validator(mode="after")
    def validate_problem(self) -> Self:
        """Time range, model-specific alpha range and coefficients."""
        if not self.t_final >= self.tau:
            raise ValueError(f"t_final ({self.t_final}) must be >= tau ({self.tau})")
        if self.model == "dlss":
            DlssConfig(alpha=self.alpha, experimental=self.experimental, mean=self.mean, amplitude=self.amplitude)
            if self.printed_exponents:
                raise ValueError("printed_exponents applies to SKT models only")
        else:
            EntropyConfig(alpha=self.alpha, experimental=self.experimental)
        if self.model == "skt-custom":
            if None in (self.d1, self.d2, self.a1, self.a2):
                raise ValueError("skt-custom needs d1, d2, a1 and a2")
            SktParams(d1=self.d1, d2=self.d2, a1=self.a1, a2=self.a2)
        return self

    @property
    def is_skt(self) -> bool:
        return self.model != "dlss"

    @property
    def skt_params(self) -> SktParams:
        if self.model == "skt-custom":
            return SktParams(d1=self.d1, d2=self.d2, a1=self.a1, a2=self.a2)
        return TEST_PARAMS[self.model[-1].upper()]

    @property
    def n_steps(self) -> int:
        """One-leg steps after the initial window, so the last state sits at t_final."""
        p = self.build_scheme().p
        return max(round(self.t_final / self.tau) - (p - 1), 0)

    @property
    def run_label(self) -> str:
        return f"{self.model}/{self.scheme.kind}/{self.tau:g}"

    def build_scheme(self) -> SchemeCoefficients:
        return self.scheme.build()

    def build_model(self) -> SpatialModel:
        if self.is_skt:
            return SktModel(alpha=self.alpha, params=self.skt_params, printed_exponents=self.printed_exponents)
        return DlssModel(alpha=self.alpha)

    def initial_densities(self) -> GridState:
        if self.is_skt:
            return skt_initial_densities(self.grid_n)
        config = DlssConfig(alpha=self.alpha, experimental=self.experimental, mean=self.mean, amplitude=self.amplitude)
        return dlss_initial_data(self.grid_n, config)

    def flat_dump(self) -> dict[str, Any]:
        """Dotted-key view of the spec, sorted, for provenance headers."""
        out: dict[str, Any] = {}

        def walk(prefix: str, node: Any) -> None:
            if isinstance(node, dict):
                for key, value in node.items():
                    walk(f"{prefix}.{key}" if prefix else key, value)
            else:
                out[prefix] = node

        walk("", self.model_dump(mode="json"))
        return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def apply_overrides(data: dict[str, Any], overrides: list[str]) -> dict[str, Any]:
    """Merge ``key=value`` overrides (dotted keys) into a nested mapping.

    Raises:
        ConfigError: If an override is malformed or descends into a scalar.
    """
    merged = dict(data)
    for item in overrides:
        key, sep, raw = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"Override must look like key=value, got {item!r}")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise ConfigError(f"Cannot parse override value {raw!r}: {e}") from e

        parts = key.strip().split(".")
        node = merged
        for part in parts[:-1]:
            child = node.get(part)
            if child is None:
                child = {}
            elif isinstance(child, str) and part == "scheme":
                child = {"kind": child}
            elif not isinstance(child, dict):
                raise ConfigError(f"Override {key!r} descends into non-mapping {part!r}")
            else:
                child = dict(child)
            node[part] = child
            node = child
        node[parts[-1]] = value
    return merged


def load_problem_spec(path: str | Path | None, overrides: list[str] | None = None) -> ProblemSpec:
    """Read a JSON or YAML problem file, apply overrides, validate.

    Args:
        path: Config file; None starts from an empty mapping (overrides only).
        overrides: ``key=value`` strings applied in order.

    Raises:
        ConfigError: If the file cannot be read or the result is invalid.
    """
    data: dict[str, Any] = {}
    if path is not None:
        try:
            loaded = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
        except OSError as e:
            raise ConfigError(f"Cannot read config {path}: {e}", context={"path": str(path)}) from e
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid JSON/YAML in {path}: {e}", context={"path": str(path)}) from e
        if loaded is not None and not isinstance(loaded, dict):
            raise ConfigError(f"Config {path} must contain a mapping", context={"path": str(path)})
        data = loaded or {}

    data = apply_overrides(data, overrides or [])
    try:
        spec = ProblemSpec.model_validate(data)
    except ValidationError as e:
        details = "; ".join(f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors())
        raise ConfigError(f"Invalid problem spec: {details}", context={"errors": e.error_count()}) from e

    logger.debug(f"Loaded problem spec: {spec.run_label}")
    return spec
