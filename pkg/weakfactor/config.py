"""Configuration loading and validation for weakfactor."""

import logging
import math
import os
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.special import gamma as gamma_fn

logger = logging.getLogger(__name__)

# Column sparsity exponents of the weak-factor loading matrix; "log" means d_j = log d.
DEFAULT_EXPONENTS: tuple[float | Literal["log"], ...] = (
    1.0,
    0.85,
    0.75,
    2 / 3,
    2 / 3,
    0.6,
    1 / 3,
    0.25,
    "log",
)

SweepParameter = Literal["gamma", "g_scale", "theta", "phi"]

# "independent": one NTS process per asset. "shared": one V_i per interval for every asset.
SubordinatorMode = Literal["independent", "shared"]


class PtsParams(BaseModel):
    """Positive tempered stable law PTS(alpha, c, lambda).

    Its Laplace transform is ``log E[exp(-uV)] = c*Gamma(-alpha)*((lam+u)^alpha - lam^alpha)``.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    alpha: float = Field(gt=0.0, lt=1.0, description="Stability index.")
    c: float = Field(gt=0.0, description="Scale.")
    lam: float = Field(gt=0.0, alias="lambda", description="Tempering rate.")

    @classmethod
    def unit_moment(cls, alpha: float) -> "PtsParams":
        """Parameters with E[V] = Var[V] = 1: lam = 1 - alpha, c = lam^(1-alpha)/Gamma(1-alpha)."""
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        lam = 1.0 - alpha
        return cls(alpha=alpha, c=lam ** (1.0 - alpha) / gamma_fn(1.0 - alpha), lam=lam)

    def scaled(self, factor: float) -> "PtsParams":
        """Return PTS(alpha, c*factor, lam), the law of the subordinator over a time step."""
        return PtsParams(alpha=self.alpha, c=self.c * factor, lam=self.lam)

    @property
    def stable_log_coefficient(self) -> float:
        """c*Gamma(-alpha); negative for alpha in (0, 1)."""
        return self.c * float(gamma_fn(-self.alpha))

    def log_laplace(self, u: float) -> float:
        return self.stable_log_coefficient * ((self.lam + u) ** self.alpha - self.lam**self.alpha)

    @property
    def acceptance_rate(self) -> float:
        """Acceptance probability of the exponential-tilting rejection sampler."""
        return math.exp(self.stable_log_coefficient * self.lam**self.alpha)

    @property
    def mean(self) -> float:
        return self.c * float(gamma_fn(1.0 - self.alpha)) * self.lam ** (self.alpha - 1.0)

    @property
    def variance(self) -> float:
        return (
            self.c
            * float(gamma_fn(1.0 - self.alpha))
            * (1.0 - self.alpha)
            * self.lam ** (self.alpha - 2.0)
        )


class SvFactorParams(BaseModel):
    """Log-volatility OU stochastic volatility factor model (identical for every factor)."""

    model_config = ConfigDict(frozen=True)

    r: int = Field(default=9, ge=1, description="Number of factors.")
    mu: float = Field(default=0.03, description="Drift per factor.")
    a: float = Field(default=-5 / 16, description="Log-volatility intercept.")
    b: float = Field(default=1 / 8, description="Log-volatility loading on the OU state.")
    kappa: float = Field(default=1 / 40, gt=0.0, description="OU mean-reversion rate.")
    rho: float = Field(default=-0.3, ge=-1.0, le=1.0, description="Leverage correlation.")


class LoadingSpec(BaseModel):
    """Sparse loading matrix whose column j has d_j = round(d^exponent_j) nonzeros."""

    model_config = ConfigDict(frozen=True)

    d: int = Field(ge=3)
    exponents: tuple[float | Literal["log"], ...] = DEFAULT_EXPONENTS
    entry_mean: float = 1.0
    entry_sd: float = Field(default=1.0, ge=0.0)

    def column_sizes(self) -> list[int]:
        """Nonzero count per column, rounding half away from zero."""
        sizes = []
        for exponent in self.exponents:
            raw = math.log(self.d) if exponent == "log" else self.d**exponent
            sizes.append(int(math.floor(raw + 0.5)))
        return sizes

    def relevant_count(self, tau: float) -> int:
        """Number of columns whose strength exponent exceeds tau (r_tau)."""
        strengths = [0.0 if e == "log" else float(e) for e in self.exponents]
        return max((j + 1 for j, s in enumerate(strengths) if s > tau), default=0)


class IdiosyncraticSpec(BaseModel):
    """Idiosyncratic process Z = sqrt(theta) * A * L with A A^T = (phi^|j-k|)."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["wiener", "nts"] = "wiener"
    alpha: float | None = Field(default=None, gt=0.0, lt=1.0)
    theta: float = Field(default=1.5, gt=0.0, description="Signal-to-noise scale.")
    phi: float = Field(default=0.1, description="Toeplitz correlation.")
    subordinator: SubordinatorMode = Field(
        default="independent", description="Subordinator draws per entry or per interval."
    )

    @field_validator("phi")
    @classmethod
    def _check_phi(cls, value: float) -> float:
        if not 0.0 <= value < 1.0:
            raise ValueError(f"phi must lie in [0, 1), got {value}")
        return value

    @model_validator(mode="after")
    def _check_alpha(self) -> "IdiosyncraticSpec":
        if self.kind == "nts" and self.alpha is None:
            raise ValueError("alpha is required when kind is 'nts'")
        return self


class EstimatorConfig(BaseModel):
    """Tuning constants shared by the factor-number estimators."""

    model_config = ConfigDict(frozen=True)

    tau: float = Field(default=0.5, gt=0.0, lt=1.0, description="Strength threshold.")
    r_max: int = Field(default=20, ge=1, description="Search cap.")
    gamma: float = Field(default=0.05, gt=0.0, description="Ratio margin of r^P.")
    g_rule: Literal["sigma2_loglog", "loglog", "median_eigen", "explicit"] = Field(
        default="loglog",
        description="Rule for g(d) in the perturbed-ratio estimator.",
    )
    g_value: float | None = Field(default=None, ge=0.0, description="g(d) for g_rule=explicit.")
    g_scale: float = Field(default=1.0, ge=0.0, description="Multiplier a in g(d) = a*g0(d).")
    pelger_gamma: float = Field(default=0.2, gt=0.0)
    sigma2_normalization: Literal["mean", "sum"] = Field(
        default="mean",
        description="Tail eigenvalue sum divided by d (mean) or left raw (sum).",
    )
    onatski_max_iter: int = Field(default=8, ge=1)

    @model_validator(mode="after")
    def _check_explicit(self) -> "EstimatorConfig":
        if self.g_rule == "explicit" and self.g_value is None:
            raise ValueError("g_value is required when g_rule is 'explicit'")
        return self


class ModelConfig(BaseModel):
    """Full generative and estimation specification of one Monte Carlo experiment."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=2, description="Number of observation intervals.")
    d: int = Field(ge=3, description="Cross-section size.")
    factor_kind: Literal["sv", "wiener"] = "sv"
    idio_kind: Literal["wiener", "nts"] = "wiener"
    alpha: float | None = Field(default=None, gt=0.0, lt=1.0, description="NTS stability index.")
    theta: float = Field(default=1.5, ge=0.0, description="Signal-to-noise scale; 0 = no noise.")
    phi: float = Field(default=0.1, description="Toeplitz correlation.")
    subordinator: SubordinatorMode = Field(
        default="independent", description="NTS subordinator per asset or shared across assets."
    )
    refinement: int = Field(default=1, ge=1, description="Euler sub-steps per interval.")
    sv: SvFactorParams = Field(default_factory=SvFactorParams)
    loading_exponents: tuple[float | Literal["log"], ...] = DEFAULT_EXPONENTS
    loading_mean: float = 1.0
    loading_sd: float = Field(default=1.0, ge=0.0)
    estimator: EstimatorConfig = Field(default_factory=EstimatorConfig)
    replications: int = Field(default=1000, ge=1)
    master_seed: int = Field(default=0, ge=0, le=2**64 - 1)
    true_r_tau: int | None = Field(default=None, ge=0)

    @field_validator("phi")
    @classmethod
    def _check_phi(cls, value: float) -> float:
        if not 0.0 <= value < 1.0:
            raise ValueError(f"phi must lie in [0, 1), got {value}")
        return value

    @model_validator(mode="after")
    def _check_consistency(self) -> "ModelConfig":
        if self.idio_kind == "nts" and self.alpha is None:
            raise ValueError("alpha is required when idio_kind is 'nts'")
        if self.estimator.r_max > self.d:
            raise ValueError(f"estimator.r_max ({self.estimator.r_max}) exceeds d ({self.d})")
        if len(self.loading_exponents) != self.sv.r:
            raise ValueError(
                f"loading_exponents has {len(self.loading_exponents)} entries "
                f"but sv.r is {self.sv.r}"
            )
        oversized = [s for s in self.loading_spec().column_sizes() if s > self.d]
        if oversized:
            raise ValueError(f"loading column sizes {oversized} exceed d ({self.d})")
        if self.true_r_tau is None:
            object.__setattr__(
                self, "true_r_tau", self.loading_spec().relevant_count(self.estimator.tau)
            )
        return self

    @property
    def r_tau(self) -> int:
        assert self.true_r_tau is not None
        return self.true_r_tau

    def loading_spec(self) -> LoadingSpec:
        return LoadingSpec(
            d=self.d,
            exponents=self.loading_exponents,
            entry_mean=self.loading_mean,
            entry_sd=self.loading_sd,
        )

    def idiosyncratic_spec(self) -> IdiosyncraticSpec:
        """Spec of the idiosyncratic process; only valid when theta > 0."""
        return IdiosyncraticSpec(
            kind=self.idio_kind,
            alpha=self.alpha,
            theta=self.theta,
            phi=self.phi,
            subordinator=self.subordinator,
        )

    def with_parameter(self, parameter: SweepParameter, value: float) -> "ModelConfig":
        """Return a re-validated copy with one sweep parameter replaced."""
        raw = self.model_dump()
        if parameter in ("gamma", "g_scale"):
            raw["estimator"][parameter] = value
        elif parameter in ("theta", "phi"):
            raw[parameter] = value
        else:
            raise ValueError(f"Unknown sweep parameter: {parameter}")
        return ModelConfig.model_validate(raw)


class Settings(BaseModel):
    """Runtime settings that do not change results."""

    workers: int = Field(default=-1, description="joblib n_jobs; -1 uses every core.")
    log_level: str = "INFO"
    trace: Literal["none", "console"] = "none"

    @field_validator("workers")
    @classmethod
    def _check_workers(cls, value: int) -> int:
        if value == 0:
            raise ValueError("workers must not be 0 (joblib n_jobs)")
        return value

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from WEAKFACTOR_* environment variables."""
        raw: dict[str, Any] = {}
        env_map = {
            "workers": "WEAKFACTOR_WORKERS",
            "log_level": "WEAKFACTOR_LOG_LEVEL",
            "trace": "WEAKFACTOR_TRACE",
        }
        for field, var in env_map.items():
            if var in os.environ:
                raw[field] = os.environ[var]
        return cls.model_validate(raw)


def load_config(config_path: str | Path | None = None) -> ModelConfig:
    """Load an experiment configuration from a YAML file.

    Args:
        config_path: Path to the config file. Defaults to WEAKFACTOR_CONFIG_PATH env var
                     or ./experiment.yaml.

    Returns:
        Validated experiment configuration.
    """
    if config_path is None:
        config_path = os.environ.get("WEAKFACTOR_CONFIG_PATH", "./experiment.yaml")

    path = Path(config_path)
    if not path.exists():
        raise FileNotFoundError(f"Experiment config not found: {path}")

    with open(path) as f:
        raw = yaml.safe_load(f) or {}

    logger.debug(f"Loaded config keys {sorted(raw)} from {path}")
    return ModelConfig.model_validate(raw)


def dump_config(config: ModelConfig) -> str:
    """Serialize a configuration to YAML text accepted by load_config."""
    raw = config.model_dump(mode="json")
    return yaml.safe_dump(raw, sort_keys=False)
