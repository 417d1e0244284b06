import math
from functools import reduce
from operator import add
from pathlib import Path
from typing import Any, Generic, Literal, TypeVar

from loguru import logger
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    field_validator,
    model_validator,
)

from .exceptions import MissingTwistError
from .symbolic import ZERO, LaurentPolynomial, RationalFunction

IntVector = tuple[int, ...]


class StratumProfile(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    n: tuple[PositiveInt, ...] = Field(alias="N")
    nu: tuple[PositiveInt, ...]
    q: PositiveInt = Field(alias="Q")
    p: NonNegativeInt = 0
    nuz: PositiveInt = 1
    # display names of the divisors in I, defaults to 1..|I|
    labels: tuple[str, ...] | None = None

    @model_validator(mode="after")
    def check_lengths(self) -> "StratumProfile":
        if len(self.n) != len(self.nu):
            raise ValueError("N and nu must have one entry per index of I")
        if self.labels is not None and len(self.labels) != len(self.n):
            raise ValueError("labels must have one entry per index of I")
        return self

    @property
    def size(self) -> int:
        return len(self.n)

    @property
    def indices(self) -> tuple[str, ...]:
        return self.labels or tuple(str(k + 1) for k in range(self.size))

    @property
    def e(self) -> IntVector:
        return tuple(math.gcd(self.q, n_k) for n_k in self.n)

    @property
    def n_gcd(self) -> int:
        return reduce(math.gcd, self.n, 0)

    @property
    def e_gcd(self) -> int:
        return math.gcd(self.q, self.n_gcd)


class ConeSpec(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    ambient_dim: PositiveInt = Field(alias="ambientDim")
    quasi_generators: tuple[IntVector, ...] = Field(alias="quasiGenerators")
    simplicial: bool = True

    @model_validator(mode="after")
    def check_generators(self) -> "ConeSpec":
        for vector in self.quasi_generators:
            if len(vector) != self.ambient_dim:
                raise ValueError(f"generator {vector} has the wrong length")
            if reduce(math.gcd, vector, 0) != 1:
                raise ValueError(f"generator {vector} is not primitive")
        return self

    @property
    def dim(self) -> int:
        return len(self.quasi_generators)


class FundamentalDomain(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: tuple[IntVector, ...]


class ArithFnTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = ""
    values: tuple[int, ...]

    @field_validator("values")
    @classmethod
    def check_unit(cls, values: tuple[int, ...]) -> tuple[int, ...]:
        if not values:
            raise ValueError("table must cover at least n = 1")
        if values[0] == 0:
            raise ValueError("value at 1 must be nonzero")
        return values

    @property
    def size(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.size:
            raise IndexError(n)
        return self.values[n - 1]


class TwistReduction(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    q: PositiveInt = Field(alias="Q")
    twist: PositiveInt = Field(alias="l")
    l1: PositiveInt
    m: PositiveInt
    generator: PositiveInt

    def contains(self, value: int) -> bool:
        return value >= 1 and value % self.generator == 0


# Resolution data, in the JSON shape consumed by the CLI


class Divisor(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: str
    n: int = Field(alias="N")
    nu: int

    @field_validator("n")
    @classmethod
    def check_multiplicity(cls, value: int) -> int:
        if value < 1:
            raise ValueError("multiplicity must be ≥ 1")
        return value

    @field_validator("nu")
    @classmethod
    def check_discrepancy(cls, value: int) -> int:
        if value < 1:
            raise ValueError("discrepancy must be ≥ 1")
        return value


class Stratum(BaseModel):
    divisors: list[str] = Field(min_length=1)
    euler: int


class StratumClass(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    divisors: list[str] = Field(min_length=1)
    # [L-exponent, coefficient] pairs
    class_in_l: list[tuple[int, int]] = Field(alias="classInL")

    @property
    def polynomial(self) -> LaurentPolynomial:
        return LaurentPolynomial.in_l(self.class_in_l)


class ResolutionData(BaseModel):
    divisors: list[Divisor] = Field(min_length=1)
    strata: list[Stratum]
    classes: list[StratumClass] | None = None

    @model_validator(mode="after")
    def check_references(self) -> "ResolutionData":
        ids = [d.id for d in self.divisors]
        if len(set(ids)) != len(ids):
            raise ValueError("divisor ids must be unique")
        known = set(ids)
        for group in [s.divisors for s in self.strata] + [
            c.divisors for c in self.classes or []
        ]:
            for divisor_id in group:
                if divisor_id not in known:
                    raise ValueError(f"unknown divisor id {divisor_id!r}")
        return self

    def divisor(self, divisor_id: str) -> Divisor:
        return next(d for d in self.divisors if d.id == divisor_id)

    def members(self, stratum: Stratum | StratumClass) -> list[Divisor]:
        return [self.divisor(divisor_id) for divisor_id in stratum.divisors]

    def class_of(self, stratum: Stratum) -> LaurentPolynomial | None:
        for item in self.classes or []:
            if sorted(item.divisors) == sorted(stratum.divisors):
                return item.polynomial
        return None


class BundleEntry(BaseModel):
    twist: PositiveInt
    num: str
    den: str = "1"


class BundleDocument(BaseModel):
    """Bundle JSON as written on disk, before the expressions are parsed."""

    model_config = ConfigDict(populate_by_name=True)

    variable: str = Field(default="s", pattern="^[st]$")
    entries: list[BundleEntry] = Field(min_length=1)
    default_zero: bool = Field(default=False, alias="defaultZero")


class ZetaBundle(BaseModel):
    """Twist order -> topological zeta function of ``f``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, populate_by_name=True)

    entries: dict[PositiveInt, RationalFunction]
    default_zero: bool = Field(default=False, alias="defaultZero")

    def lookup(self, twist: int, strict: bool = False) -> RationalFunction:
        if twist in self.entries:
            return self.entries[twist]
        # the untwisted zeta never vanishes (its value at s = 0 is 1)
        if twist == 1:
            raise MissingTwistError(twist)
        if self.default_zero:
            return ZERO
        if strict:
            raise MissingTwistError(twist)
        logger.warning(f"bundle has no entry for twist {twist}, using zero")
        return ZERO


PartT = TypeVar("PartT")


class StratumZeta(BaseModel, Generic[PartT]):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    sigma_plus: PartT
    sigma_minus: PartT
    rho: PartT
    rho_star: PartT

    def parts(self) -> dict[str, PartT]:
        return {
            "sigma+": self.sigma_plus,
            "sigma-": self.sigma_minus,
            "rho": self.rho,
            "rho*": self.rho_star,
        }

    def total(self) -> Any:
        return reduce(add, self.parts().values())


class SuspensionParams(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    q: PositiveInt = Field(alias="Q")
    p: NonNegativeInt = 0
    nuz: PositiveInt = 1
    # dimension of the space of f; only the pole candidates read it
    d: PositiveInt = 1


class SuspensionMatrix(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    divisors: tuple[int, ...]
    b: tuple[IntVector, ...] = Field(alias="B")


class MatrixIdentity(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    matrix: SuspensionMatrix
    lhs: list[RationalFunction]
    rhs: list[RationalFunction]
    equal: bool


CommandName = Literal[
    "top",
    "twisted",
    "stratum",
    "motivic-stratum",
    "suspend-f",
    "suspend-g",
    "matrix",
    "compare-legacy",
    "verify",
]


class Command(BaseModel):
    name: CommandName
    resolution: Path | None = None
    bundle: Path | None = None
    fixture: str | None = None
    q: PositiveInt | None = None
    p: NonNegativeInt = 0
    nuz: PositiveInt | None = None
    d: PositiveInt | None = None
    twist: PositiveInt | None = None
    n: tuple[PositiveInt, ...] = ()
    nu: tuple[PositiveInt, ...] = ()
    latex: bool = False
    series_bound: NonNegativeInt | None = None
    l_bound: NonNegativeInt | None = None
    json_output: bool = False


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""
