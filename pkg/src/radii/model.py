"""Domain vocabulary: coefficient classes, radius kinds, queries, results, reports."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass
from typing import Optional


class RadiiError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RadiiError, ValueError):
    """A parameter lies outside its admissible range.

    ``field`` names the offending parameter (``alpha``, ``b``, ``m``, ``kind``,
    ``tolerance``...) so front ends can point at the right input.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class UnsupportedClass(RadiiError):
    pass


class NoRoot(RadiiError):
    pass


class MultipleRoots(RadiiError):
    pass


class NonConvergence(RadiiError):
    pass


class PoleError(RadiiError, ZeroDivisionError):
    pass


class Family(str, enum.Enum):
    """Which inequality the coefficients a_n (n >= 3) satisfy."""

    BOUND_BY_N = "n"
    BOUND_BY_M = "m"
    BOUND_BY_M_OVER_N = "m-over-n"
    CARATHEODORY = "caratheodory"


class Kind(str, enum.Enum):
    STARLIKE = "starlike"
    CONVEX = "convex"
    PARABOLIC = "parabolic"
    UCV = "ucv"
    POSITIVE_REAL = "positive-real"


_PARAMETERIZED = {Kind.STARLIKE, Kind.CONVEX, Kind.POSITIVE_REAL}


@dataclass(frozen=True)
class ClassSpec:
    family: Family
    b: float
    m: Optional[float] = None

    def validate(self) -> None:
        if not isinstance(self.family, Family):
            raise DomainError("class", f"unknown family {self.family!r}")
        if not (math.isfinite(self.b) and 0.0 <= self.b <= 1.0):
            raise DomainError("b", f"must lie in [0, 1], got {self.b}")
        if self.family is Family.BOUND_BY_N:
            if self.m is not None:
                raise DomainError("m", "not used by the n-bounded family")
        elif self.m is None:
            raise DomainError("m", f"required for family {self.family.value!r}")
        elif not (math.isfinite(self.m) and self.m > 0.0):
            raise DomainError("m", f"must be positive, got {self.m}")


@dataclass(frozen=True)
class RadiusKind:
    """Requested radius. ``alpha`` is fixed at 1/2 for the parabolic and UCV kinds."""

    variant: Kind
    alpha: float = 0.0

    @classmethod
    def starlike(cls, alpha: float) -> "RadiusKind":
        return cls(Kind.STARLIKE, alpha)

    @classmethod
    def convex(cls, alpha: float) -> "RadiusKind":
        return cls(Kind.CONVEX, alpha)

    @classmethod
    def parabolic(cls) -> "RadiusKind":
        return cls(Kind.PARABOLIC, 0.5)

    @classmethod
    def ucv(cls) -> "RadiusKind":
        return cls(Kind.UCV, 0.5)

    @classmethod
    def positive_real(cls, alpha: float) -> "RadiusKind":
        return cls(Kind.POSITIVE_REAL, alpha)

    @property
    def order(self) -> float:
        """The order actually solved for."""
        return self.alpha if self.variant in _PARAMETERIZED else 0.5

    @property
    def is_convex(self) -> bool:
        return self.variant in (Kind.CONVEX, Kind.UCV)

    @property
    def is_starlike(self) -> bool:
        return self.variant in (Kind.STARLIKE, Kind.PARABOLIC)

    def validate(self) -> None:
        if not isinstance(self.variant, Kind):
            raise DomainError("kind", f"unknown kind {self.variant!r}")
        a = self.order
        if not (math.isfinite(a) and 0.0 <= a < 1.0):
            raise DomainError("alpha", f"must lie in [0, 1), got {a}")


DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_ITERATIONS = 200


@dataclass(frozen=True)
class RadiusQuery:
    cls: ClassSpec
    kind: RadiusKind
    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def to_dict(self) -> dict:
        return {
            "class": self.cls.family.value,
            "b": self.cls.b,
            "m": self.cls.m,
            "kind": self.kind.variant.value,
            "alpha": self.kind.alpha,
            "tolerance": self.tolerance,
            "max_iterations": self.max_iterations,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RadiusQuery":
        try:
            family = Family(data["class"])
        except ValueError as exc:
            raise DomainError("class", str(exc)) from None
        try:
            variant = Kind(data["kind"])
        except ValueError as exc:
            raise DomainError("kind", str(exc)) from None
        m = data.get("m")
        return cls(
            ClassSpec(family, float(data["b"]), None if m is None else float(m)),
            RadiusKind(variant, float(data.get("alpha", 0.0))),
            float(data.get("tolerance", DEFAULT_TOLERANCE)),
            int(data.get("max_iterations", DEFAULT_MAX_ITERATIONS)),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RadiusQuery":
        return cls.from_dict(json.loads(text))


def validate(query: RadiusQuery) -> None:
    """Raise :class:`DomainError` unless every constraint on ``query`` holds."""
    query.cls.validate()
    query.kind.validate()
    if not (math.isfinite(query.tolerance) and 0.0 < query.tolerance < 1e-6):
        raise DomainError("tolerance", f"must lie in (0, 1e-6), got {query.tolerance}")
    if query.max_iterations < 1:
        raise DomainError("max_iterations", "must be a positive integer")
    carath_family = query.cls.family is Family.CARATHEODORY
    carath_kind = query.kind.variant is Kind.POSITIVE_REAL
    if carath_family != carath_kind:
        raise DomainError(
            "kind",
            f"kind {query.kind.variant.value!r} is incompatible with class {query.cls.family.value!r}",
        )


@dataclass(frozen=True)
class RadiusResult:
    radius: float
    residual: float
    iterations: int
    equation_id: str


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    passed: bool
    measured: float
    expected: float
    tolerance: float
    detail: str = ""

    @classmethod
    def compare(cls, check_name, measured, expected, tolerance, detail=""):
        ok = bool(abs(measured - expected) <= tolerance)
        return cls(check_name, ok, float(measured), float(expected), float(tolerance), detail)

    def to_dict(self) -> dict:
        return asdict(self)
