"""Settings configuration for cylcrit."""

from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict, YamlConfigSettingsSource


class GeometrySettings(BaseModel):
    """Tolerances of the line geometry."""

    parallel_threshold: float = Field(
        default=1e-10,
        description="Pairs with |cos angle| >= 1 - threshold use the point-to-line distance",
    )
    unit_tolerance: float = Field(
        default=1e-12,
        description="Allowed deviation from unit length and tangency for tangent lines",
    )
    tie_tolerance: float = Field(
        default=1e-9,
        description="Pairs within this distance of the minimum are reported as tied",
    )
    symmetry_tolerance: float = Field(
        default=1e-9,
        description="Configuration-norm tolerance used to match lines under a symmetry",
    )

    @field_validator("parallel_threshold", "unit_tolerance", "tie_tolerance", "symmetry_tolerance")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Tolerances must be positive."""
        if v <= 0:
            raise ValueError("must be positive")
        return v


class JetSettings(BaseModel):
    """Finite-difference steps for jet extraction."""

    first_order_step: float = Field(
        default=1e-5,
        description="Step of the central first difference",
    )
    second_order_step: float = Field(
        default=1e-3,
        description="Step of the 5-point second difference (Richardson uses h and 2h)",
    )
    flag_threshold: float = Field(
        default=1e-6,
        description="Entries whose truncation estimate exceeds this are flagged",
    )

    @field_validator("first_order_step", "second_order_step", "flag_threshold")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Steps and thresholds must be positive."""
        if v <= 0:
            raise ValueError("must be positive")
        return v


class CertifierSettings(BaseModel):
    """Configuration of the family positivity certifier."""

    budget: int = Field(
        default=1_000_000,
        description="Maximum number of sphere cells processed before giving up",
    )
    rank_threshold: float = Field(
        default=1e-9,
        description="Singular values below threshold * largest are treated as zero",
    )
    witness_tolerance: float = Field(
        default=1e-9,
        description="A unit point with max_a Q_a below this (relative to the form scale) is a witness",
    )
    min_cell_width: float = Field(
        default=1e-7,
        description="Cells narrower than this are handed to the local witness search",
    )
    blend_forms: bool = Field(
        default=True,
        description="Also try fixed convex blends of the forms when discharging cells",
    )
    witness_starts: int = Field(
        default=16,
        description="Number of multistart points of the witness search",
    )
    revalidation_samples: int = Field(
        default=100_000,
        description="Random unit vectors used to re-validate a positive certificate",
    )
    workers: int = Field(
        default=1,
        description="Threads used to evaluate subdivision generations",
    )
    refine_fraction: float = Field(
        default=0.1,
        description="Cells certified below this fraction of max_a Q_a / |c|^2 at their center are split again",
    )

    @field_validator("budget", "witness_starts", "revalidation_samples", "workers")
    @classmethod
    def validate_counts(cls, v: int) -> int:
        """Counts must be at least one."""
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("rank_threshold", "witness_tolerance", "min_cell_width")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Thresholds must be positive."""
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @field_validator("refine_fraction")
    @classmethod
    def validate_fraction(cls, v: float) -> float:
        """The fraction must lie in [0, 1)."""
        if not 0 <= v < 1:
            raise ValueError("refine_fraction must lie in [0, 1)")
        return v


class SearchSettings(BaseModel):
    """Configuration of the unlocking pattern search."""

    seeds: int = Field(default=64, description="Number of random starting directions")
    iterations: int = Field(default=200, description="Pattern-search iterations per start")
    t_max: float = Field(
        default=1e-2,
        description="Largest deformation size for the octahedral model",
    )
    chart_t_max: float = Field(
        default=0.25,
        description="Largest deformation size for generic local-frame charts",
    )
    t_min: float = Field(
        default=1e-6,
        description="Deformations smaller than this are rejected as the zero direction",
    )
    contraction: float = Field(default=0.5, description="Step contraction factor on unsuccessful polls")
    polish_iterations: int = Field(
        default=100,
        description="SLSQP iterations of the max-min polish run from every pattern-search end point",
    )

    @field_validator("contraction")
    @classmethod
    def validate_contraction(cls, v: float) -> float:
        """Contraction must shrink the step."""
        if not 0 < v < 1:
            raise ValueError("contraction must lie in (0, 1)")
        return v

    @field_validator("seeds", "iterations", "polish_iterations")
    @classmethod
    def validate_counts(cls, v: int) -> int:
        """Counts must be at least one."""
        if v < 1:
            raise ValueError("must be at least 1")
        return v


class ProbeSettings(BaseModel):
    """Configuration of the decay-exponent probe."""

    directions: int = Field(default=100, description="Random directions per class")
    t_min: float = Field(default=1e-4, description="Smallest deformation size of the log grid")
    t_max: float = Field(default=1e-2, description="Largest deformation size of the log grid")
    scales: int = Field(default=9, description="Number of geometric grid points")

    @field_validator("directions")
    @classmethod
    def validate_directions(cls, v: int) -> int:
        """At least one direction per class."""
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("t_min", "t_max")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Grid ends must be positive."""
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @field_validator("scales")
    @classmethod
    def validate_scales(cls, v: int) -> int:
        """An exponent fit needs at least 3 scales."""
        if v < 3:
            raise ValueError("need at least 3 scales")
        return v

    @model_validator(mode="after")
    def validate_grid(self) -> "ProbeSettings":
        """The grid must run from a smaller to a larger scale."""
        if self.t_min >= self.t_max:
            raise ValueError("t_min must be smaller than t_max")
        return self


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    model_config = SettingsConfigDict(
        env_prefix="CYLCRIT_",
        env_nested_delimiter="__",
        yaml_file=["cylcrit.yaml"],
        yaml_file_encoding="utf-8",
        case_sensitive=False,
    )

    seed: int = Field(default=0, description="Seed of every random stream")
    precision: Literal["double", "extended"] = Field(
        default="double",
        description="Floating-point format of finite differences and subdivision bounds",
    )
    schema_version: str = Field(default="1", description="Configuration file schema version written by cylcrit")

    geometry: GeometrySettings = Field(default_factory=GeometrySettings, description="Line geometry tolerances")
    jets: JetSettings = Field(default_factory=JetSettings, description="Jet extraction steps")
    certifier: CertifierSettings = Field(default_factory=CertifierSettings, description="Positivity certifier")
    search: SearchSettings = Field(default_factory=SearchSettings, description="Unlocking search")
    probe: ProbeSettings = Field(default_factory=ProbeSettings, description="Decay probe")

    @property
    def dtype(self) -> type[np.floating]:
        """Numpy float type matching the configured precision."""
        return np.longdouble if self.precision == "extended" else np.float64

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Configure settings sources to include YAML support."""
        return (
            init_settings,
            env_settings,
            YamlConfigSettingsSource(settings_cls),
            file_secret_settings,
        )


# Create a singleton settings instance
settings = Settings()
