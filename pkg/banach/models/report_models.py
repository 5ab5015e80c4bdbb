import sys
from enum import Enum

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # pragma: no cover - Python 3.10 compatibility shim for enum.StrEnum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str.__str__(self)

        def __format__(self, format_spec: str) -> str:
            return str.__format__(str(self), format_spec)

from fractions import Fraction

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import field_serializer
from pydantic import model_validator

from banach.services.exactmath import format_rational


class Method(StrEnum):
    """Provenance of a congruence residue."""

    EXACT_ORACLE = "exact-oracle"
    DIRECT_KERNEL = "direct-kernel"
    INCREMENTAL_KERNEL = "incremental-kernel"


class MatchboxDistribution(BaseModel):
    """Exact distribution of the matches left in the other box, indexed by r = 0..n."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=0)
    probs: tuple[Fraction, ...]

    @model_validator(mode="after")
    def _check_length(self) -> "MatchboxDistribution":
        if len(self.probs) != self.n + 1:
            raise ValueError(f"distribution for n={self.n} needs {self.n + 1} entries, got {len(self.probs)}")
        return self

    @field_serializer("probs")
    def _serialize_probs(self, probs: tuple[Fraction, ...]) -> list[str]:
        return [format_rational(p) for p in probs]


class IdentityCheck(BaseModel):
    """Both sides of the Banach identity for one n."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=0)
    lhs: Fraction
    rhs: Fraction
    holds: bool

    @field_serializer("lhs", "rhs")
    def _serialize_side(self, value: Fraction) -> str:
        return format_rational(value)


class CongruenceReport(BaseModel):
    """Residue of the congruence sum for one (p, k) pair."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    p: int = Field(ge=3)
    k: int = Field(ge=1)
    term_count: int = Field(ge=0, alias="terms")
    residue: int = Field(ge=0)
    method: Method
    passed: bool

    @model_validator(mode="after")
    def _check_residue(self) -> "CongruenceReport":
        if self.residue >= self.p:
            raise ValueError(f"residue {self.residue} is not reduced mod {self.p}")
        return self


class SweepReport(BaseModel):
    """Aggregate outcome of verifying every prime in a range."""

    model_config = ConfigDict(frozen=True)

    p_min: int
    p_max: int
    primes_checked: int
    pairs_checked: int
    failures: list[CongruenceReport]
    digest: str = Field(description="SHA-256 over the sorted (p, k, residue) stream.")
    worker_count: int = Field(ge=1)
    elapsed: float = Field(ge=0.0, description="Wall time in seconds.")

    @property
    def passed(self) -> bool:
        return not self.failures


class CompositeSummary(BaseModel):
    """Informational roll-up of the composite scan for one odd composite n."""

    model_config = ConfigDict(frozen=True)

    n: int
    smallest_factor: int
    pairs: int
    vanishing: int
    all_vanish: bool


class ReducedIdentities(BaseModel):
    """Exact checks of the four identities the congruence reduces to."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    k: int = Field(ge=0)
    i1: bool = Field(alias="I1")
    i2: bool = Field(alias="I2")
    i3: bool = Field(alias="I3")
    i4: bool = Field(alias="I4")

    @property
    def all_hold(self) -> bool:
        return self.i1 and self.i2 and self.i3 and self.i4


class ChainReport(BaseModel):
    """Replay of the derivative argument for one (p, k) pair."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    p: int
    k: int
    lhs_direct: int = Field(alias="direct")
    lhs_leibniz: int = Field(alias="leibniz")
    identities: ReducedIdentities
    scaled_sum: int = Field(description="k!·S(p, k) mod p from the incremental kernel.")
    fermat: int = Field(description="Leibniz route with 2^(p-1) replaced by 1.")
    split_agrees: bool = Field(description="Top-exponent half ≡ x^k half of the Leibniz sum.")

    @property
    def passed(self) -> bool:
        return (
            self.lhs_direct == self.lhs_leibniz == self.scaled_sum == self.fermat
            and self.split_agrees
            and self.identities.all_hold
        )

    def record(self) -> dict[str, int | bool]:
        """Flat JSON record: route values, per-identity booleans, then extras."""
        ids = self.identities
        return {
            "p": self.p,
            "k": self.k,
            "direct": self.lhs_direct,
            "leibniz": self.lhs_leibniz,
            "I1": ids.i1,
            "I2": ids.i2,
            "I3": ids.i3,
            "I4": ids.i4,
            "scaled_sum": self.scaled_sum,
            "fermat": self.fermat,
            "split_agrees": self.split_agrees,
            "passed": self.passed,
        }


class SimulationResult(BaseModel):
    """Empirical outcome counts of the matchbox process and their fit to the exact law."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    n: int = Field(ge=0)
    trials: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2**64)
    counts: list[int]
    tv_distance: float = Field(ge=0.0, le=1.0, alias="tv")
    chi_square: float = Field(ge=0.0, alias="chi2")
    chi2_df: int = Field(ge=0)
    p_value: float = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_conservation(self) -> "SimulationResult":
        if len(self.counts) != self.n + 1 or sum(self.counts) != self.trials:
            raise ValueError("counts must cover r = 0..n and sum to trials")
        return self
