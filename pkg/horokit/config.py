from functools import lru_cache
import json
import math
import os
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Type, Union

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import ConfigError, SchemaViolation

# Load environment
load_dotenv()
DEFAULT_TOL = 1e-9
DEFAULT_SEED = 42


# ------------------------------
# Settings
# ------------------------------
class Settings(BaseModel):
    tol: float = Field(DEFAULT_TOL, gt=0)
    max_reduce_steps: int = Field(10_000, ge=1)
    log_level: str = "INFO"
    seed: int = DEFAULT_SEED


def load_settings() -> Settings:
    """Read the HOROKIT_* variables, falling back to defaults."""
    return Settings(
        tol=float(os.getenv("HOROKIT_TOL", DEFAULT_TOL)),
        max_reduce_steps=int(os.getenv("HOROKIT_MAX_REDUCE_STEPS", 10_000)),
        log_level=os.getenv("HOROKIT_LOG_LEVEL", "INFO").upper(),
        seed=int(os.getenv("HOROKIT_SEED", DEFAULT_SEED)),
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()


TOL = get_settings().tol
MAX_REDUCE_STEPS = get_settings().max_reduce_steps


# ------------------------------
# Group schemas
# ------------------------------
BoundaryValue = Union[float, str]


def _boundary(value: BoundaryValue) -> float:
    if isinstance(value, str):
        if value.strip().lower() in {"inf", "infinity", "∞"}:
            return math.inf
        raise ValueError(f"expected a number or 'inf', got {value!r}")
    value = float(value)
    if math.isnan(value):
        raise ValueError("NaN is not a boundary point")
    return value


def _matrix_entries(value: Optional[List[float]]) -> Optional[List[float]]:
    if value is None:
        return value
    if len(value) != 4:
        raise ValueError("matrix needs four row-major entries")
    a, b, c, d = value
    if a * d - b * c <= 0:
        raise ValueError("matrix determinant must be positive")
    return value


class PairedCircleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    center: float
    radius: float = Field(gt=0)


class DeriveModel(BaseModel):
    """Axis of the pairing; an empty object asks for the common perpendicular."""

    model_config = ConfigDict(extra="forbid")

    p: Optional[BoundaryValue] = None
    q: Optional[BoundaryValue] = None

    @field_validator("p", "q")
    @classmethod
    def parse_boundary(cls, value: Optional[BoundaryValue]) -> Optional[float]:
        return None if value is None else _boundary(value)

    @model_validator(mode="after")
    def both_or_neither(self) -> "DeriveModel":
        if (self.p is None) != (self.q is None):
            raise ValueError("give both 'p' and 'q', or neither")
        return self


class PairModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    plus: PairedCircleModel
    minus: PairedCircleModel
    matrix: Optional[List[float]] = None
    derive: Optional[DeriveModel] = None

    @field_validator("matrix")
    @classmethod
    def check_matrix(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        return _matrix_entries(value)

    @model_validator(mode="after")
    def one_source(self) -> "PairModel":
        if (self.matrix is None) == (self.derive is None):
            raise ValueError("give exactly one of 'matrix' or 'derive'")
        return self


class SchottkySpecModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    pairs: List[PairModel] = Field(min_length=1)


# ------------------------------
# Counterexample schemas
# ------------------------------
class Schedule(BaseModel):
    """Radius schedule r_k, k >= 1."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["linear", "geometric", "custom"] = "linear"
    alpha: float = Field(2.0, gt=1)
    radii: Optional[List[float]] = None

    @field_validator("radii")
    @classmethod
    def positive_radii(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        if value is not None and any(r <= 0 for r in value):
            raise ValueError("radii must be positive")
        return value

    @model_validator(mode="after")
    def custom_needs_radii(self) -> "Schedule":
        if self.kind == "custom" and not self.radii:
            raise ValueError("custom schedule needs a nonempty 'radii' list")
        return self

    def radius(self, k: int) -> float:
        if self.kind == "linear":
            return float(k)
        if self.kind == "geometric":
            return self.alpha**k
        if k > len(self.radii):
            raise ValueError(f"custom schedule has no radius r_{k}")
        return float(self.radii[k - 1])


class CounterexampleConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    variant: Literal["tangent", "opposite"] = "tangent"
    schedule: Schedule = Field(default_factory=Schedule)
    n_max: int = Field(10, ge=1)
    fill_holes: bool = False

    @model_validator(mode="after")
    def custom_long_enough(self) -> "CounterexampleConfig":
        if self.schedule.kind == "custom" and len(self.schedule.radii) < self.n_max:
            raise ValueError("custom schedule has fewer radii than n_max")
        return self


# ------------------------------
# Run configs, one per subcommand
# ------------------------------
class RunConfigBase(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subcommand: str
    tol: float = Field(TOL, gt=0)
    spec_path: Optional[str] = None
    out: Optional[str] = None

    @model_validator(mode="after")
    def distinct_paths(self) -> "RunConfigBase":
        if self.out and self.spec_path and Path(self.out).resolve() == Path(self.spec_path).resolve():
            raise ValueError("output path must differ from the input spec path")
        return self


class FlowConfig(RunConfigBase):
    subcommand: Literal["flow"] = "flow"
    samples: int = Field(10_000, ge=1)
    seed: int = DEFAULT_SEED
    t_max: float = Field(5.0, gt=0)
    s_max: float = Field(5.0, gt=0)


class GroupConfig(RunConfigBase):
    """Runs over a group given inline ('pairs') or by file ('spec_path')."""

    pairs: Optional[List[PairModel]] = Field(None, min_length=1)

    @model_validator(mode="after")
    def group_source(self) -> "GroupConfig":
        if self.pairs is None and self.spec_path is None:
            raise ValueError("give 'pairs' or 'spec_path'")
        return self


class SchottkyConfig(GroupConfig):
    subcommand: Literal["schottky"] = "schottky"


class OrbitConfig(GroupConfig):
    subcommand: Literal["orbit"] = "orbit"
    max_word_len: int = Field(2, ge=0)


class CensusConfig(GroupConfig):
    subcommand: Literal["census"] = "census"
    D: List[float] = Field(default_factory=lambda: [1.0], min_length=1)
    R: float = Field(1.0, ge=0)
    max_word_len: int = Field(2, ge=0)
    # row-major matrix of the frame v; defaults to J (v- = inf, v+ = 0, based at i)
    frame: Optional[List[float]] = None

    @field_validator("D")
    @classmethod
    def nonnegative_depths(cls, value: List[float]) -> List[float]:
        if any(d < 0 for d in value):
            raise ValueError("depths must be nonnegative")
        return value

    @field_validator("frame")
    @classmethod
    def check_frame(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        return _matrix_entries(value)


class CounterexampleRunConfig(RunConfigBase, CounterexampleConfig):
    subcommand: Literal["counterexample"] = "counterexample"
    D: float = Field(1.0, ge=0)
    R: float = Field(1.0, ge=0)
    max_word_len: int = Field(2, ge=0)
    census_n: List[int] = Field(default_factory=list)


class LemmasConfig(RunConfigBase):
    subcommand: Literal["lemmas"] = "lemmas"
    which: Literal["thin", "reciprocal", "inner", "flow", "side"] = "thin"
    samples: int = Field(10_000, ge=1)
    seed: int = DEFAULT_SEED
    alpha0: List[float] = Field(default_factory=lambda: [math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2])
    k: List[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0])

    @field_validator("alpha0")
    @classmethod
    def angles_in_range(cls, value: List[float]) -> List[float]:
        if any(not (0 < a <= math.pi) for a in value):
            raise ValueError("angles must lie in (0, pi]")
        return value


class RenderConfig(RunConfigBase):
    subcommand: Literal["render"] = "render"
    pairs: Optional[List[PairModel]] = None
    counterexample: Optional[CounterexampleConfig] = None
    model: Literal["halfplane", "disk"] = "halfplane"
    x_min: float = -110.0
    x_max: float = 25.0
    y_max: float = 12.0
    orbit_len: int = Field(0, ge=0)
    width: int = Field(800, ge=16)

    @model_validator(mode="after")
    def scene_source(self) -> "RenderConfig":
        if self.pairs is None and self.counterexample is None and self.spec_path is None:
            raise ValueError("render needs 'pairs', 'spec_path' or 'counterexample'")
        if self.x_max <= self.x_min or self.y_max <= 0:
            raise ValueError("empty viewport")
        return self


RunConfig = Union[
    FlowConfig,
    SchottkyConfig,
    OrbitConfig,
    CensusConfig,
    CounterexampleRunConfig,
    LemmasConfig,
    RenderConfig,
]

CONFIG_MODELS: Dict[str, Type[RunConfigBase]] = {
    "flow": FlowConfig,
    "schottky": SchottkyConfig,
    "orbit": OrbitConfig,
    "census": CensusConfig,
    "counterexample": CounterexampleRunConfig,
    "lemmas": LemmasConfig,
    "render": RenderConfig,
}


# ------------------------------
# Parsing
# ------------------------------
def format_loc(loc: Tuple[Union[str, int], ...]) -> str:
    """('pairs', 0, 'minus', 'radius') -> 'pairs[0].minus.radius'."""
    out = ""
    for part in loc:
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += f".{part}" if out else str(part)
    return out or "<root>"


def schema_violation(exc: ValidationError) -> SchemaViolation:
    return SchemaViolation([(format_loc(err["loc"]), err["msg"]) for err in exc.errors()])


def read_json(path: Union[str, Path]) -> dict:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise SchemaViolation([("<root>", f"invalid JSON: {exc}")]) from exc
    if not isinstance(data, dict):
        raise SchemaViolation([("<root>", "expected a JSON object")])
    return data


def validate_config(data: dict) -> RunConfig:
    """Validate an already loaded mapping against the model its subcommand selects."""
    name = data.get("subcommand")
    model = CONFIG_MODELS.get(name) if isinstance(name, str) else None
    if model is None:
        raise SchemaViolation([("subcommand", f"expected one of {sorted(CONFIG_MODELS)}")])
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        raise schema_violation(exc) from exc


def parse_config(path: Union[str, Path]) -> RunConfig:
    return validate_config(read_json(path))


def parse_spec_file(path: Union[str, Path]) -> SchottkySpecModel:
    """Load a group file: {"pairs": [...]}."""
    try:
        return SchottkySpecModel.model_validate(read_json(path))
    except ValidationError as exc:
        raise schema_violation(exc) from exc
