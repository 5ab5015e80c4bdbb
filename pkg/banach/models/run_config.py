from pathlib import Path
from typing import Literal

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator

from banach.models.report_models import Method

Command = Literal["dist", "identity", "congruence", "sweep", "composites", "replay", "simulate"]

# Parameters each subcommand cannot run without.
REQUIRED_PARAMS: dict[str, tuple[str, ...]] = {
    "dist": ("n",),
    "identity": ("max_n",),
    "congruence": ("p",),
    "sweep": ("p_min", "p_max"),
    "composites": ("n_max",),
    "replay": ("p",),
    "simulate": ("n", "trials"),
}


class RunConfig(BaseModel):
    """One validated CLI invocation: a subcommand plus its parameters."""

    model_config = ConfigDict(frozen=True)

    command: Command
    n: int | None = Field(default=None, ge=0)
    max_n: int | None = Field(default=None, ge=0)
    p: int | None = Field(default=None, ge=3)
    k: int | None = Field(default=None, ge=1)
    p_min: int | None = Field(default=None, ge=3)
    p_max: int | None = Field(default=None, ge=3)
    n_max: int | None = Field(default=None, ge=9)
    trials: int | None = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    workers: int = Field(default=1, ge=1)
    method: Method = Field(default=Method.INCREMENTAL_KERNEL)
    output_format: Literal["json", "csv"] = Field(default="json")
    out: Path | None = Field(default=None)
    log_level: str = Field(default="INFO")

    @model_validator(mode="after")
    def _check_parameters(self) -> "RunConfig":
        missing = [name for name in REQUIRED_PARAMS[self.command] if getattr(self, name) is None]
        if missing:
            raise ValueError(f"'{self.command}' requires: {', '.join(missing)}")
        if self.p_min is not None and self.p_max is not None and self.p_min > self.p_max:
            raise ValueError(f"--min {self.p_min} exceeds --max {self.p_max}")
        return self
