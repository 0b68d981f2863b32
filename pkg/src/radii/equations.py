"""Defining functions whose roots in (0, 1) are the sharp radii.

Every ``g_*`` function is normalized as (right side) - (left side) of the
radius equation, so that it is positive at r = 0 and negative as r -> 1.
Series tails are evaluated in closed form.
"""

from __future__ import annotations

import math
from typing import Optional

from .model import ClassSpec, DomainError, Family, UnsupportedClass

# Below this, (1 - r) log(1 - r) / r is evaluated from its Taylor series.
LOG_SERIES_CROSSOVER = 1e-4


def _check_r(r: float, closed: bool = True) -> None:
    upper_ok = r <= 1.0 if closed else r < 1.0
    if not (math.isfinite(r) and r >= 0.0 and upper_ok):
        raise DomainError("r", f"must lie in [0, 1{']' if closed else ')'}, got {r}")


def _check_params(alpha: float, b: float, m: Optional[float] = None) -> None:
    if not (math.isfinite(alpha) and 0.0 <= alpha < 1.0):
        raise DomainError("alpha", f"must lie in [0, 1), got {alpha}")
    if not (math.isfinite(b) and 0.0 <= b <= 1.0):
        raise DomainError("b", f"must lie in [0, 1], got {b}")
    if m is not None and not (math.isfinite(m) and m > 0.0):
        raise DomainError("m", f"must be positive, got {m}")


def sum_n_pow(k: int, r: float, start: int = 1) -> float:
    """Return sum_{n >= start} n**k r**(n-1) for k in {0, 1, 2, 3}."""
    if k not in (0, 1, 2, 3):
        raise DomainError("k", f"must be 0, 1, 2 or 3, got {k}")
    if start < 1:
        raise DomainError("start", f"must be >= 1, got {start}")
    _check_r(r, closed=False)
    s = 1.0 - r
    if k == 0:
        total = 1.0 / s
    elif k == 1:
        total = 1.0 / s**2
    elif k == 2:
        total = (1.0 + r) / s**3
    else:
        total = (1.0 + 4.0 * r + r * r) / s**4
    head = sum(n**k * r ** (n - 1) for n in range(1, start))
    return total - head


def log_tail(r: float) -> float:
    """sum_{n >= 3} r**(n-1) / n, i.e. (-log(1-r) - r - r**2/2) / r."""
    _check_r(r, closed=False)
    if r < 0.1:
        # 0.1**18 / 20 is below double precision relative to r**2/3
        return math.fsum(r ** (n - 1) / n for n in range(3, 22))
    return (-math.log1p(-r) - r - 0.5 * r * r) / r


def one_minus_r_log_over_r(r: float) -> float:
    """(1 - r) log(1 - r) / r with its limits -1 at r = 0 and 0 at r = 1."""
    _check_r(r)
    if r == 1.0:
        return 0.0
    if r < LOG_SERIES_CROSSOVER:
        return -(1.0 - r) * (1.0 + r / 2 + r**2 / 3 + r**3 / 4 + r**4 / 5)
    return (1.0 - r) * math.log1p(-r) / r


def g_starlike_bound_n(r: float, alpha: float, b: float) -> float:
    _check_r(r)
    _check_params(alpha, b)
    return (
        2.0 * (1.0 - alpha + (2.0 - alpha) * (1.0 - b) * r) * (1.0 - r) ** 3
        - (1.0 - alpha)
        - (1.0 + alpha) * r
    )


def g_starlike_bound_m(r: float, alpha: float, b: float, m: float) -> float:
    _check_r(r)
    _check_params(alpha, b, m)
    lead = (1.0 + m) * (1.0 - alpha) - (2.0 - alpha) * (2.0 * b - m) * r
    return lead * (1.0 - r) ** 2 - m * (1.0 - alpha + alpha * r)


def g_starlike_bound_m_over_n(r: float, alpha: float, b: float, m: float) -> float:
    _check_r(r)
    _check_params(alpha, b, m)
    lead = 2.0 * (1.0 + m) * (1.0 - alpha) + (2.0 - alpha) * (m - 4.0 * b) * r
    return lead * (1.0 - r) - 2.0 * m * (1.0 + alpha * one_minus_r_log_over_r(r))


def g_convex_bound_n(r: float, alpha: float, b: float) -> float:
    _check_r(r)
    _check_params(alpha, b)
    return (
        2.0 * (1.0 - alpha + 2.0 * (2.0 - alpha) * (1.0 - b) * r) * (1.0 - r) ** 4
        - (1.0 - alpha)
        - 4.0 * r
        - (1.0 + alpha) * r * r
    )


def g_convex_bound_m(r: float, alpha: float, b: float, m: float) -> float:
    _check_r(r)
    _check_params(alpha, b, m)
    lead = (1.0 - alpha) * (1.0 + m) - 2.0 * (2.0 - alpha) * (2.0 * b - m) * r
    return lead * (1.0 - r) ** 3 - m * (1.0 - alpha + (1.0 + alpha) * r)


def caratheodory_sum(r: float, b: float, m: float) -> float:
    """Worst-case sum_{n >= 1} |c_n| r**n = 2 b r + 2 M r**2 / (1 - r)."""
    _check_r(r, closed=False)
    return 2.0 * b * r + 2.0 * m * r * r / (1.0 - r)


def caratheodory_radius(alpha: float, b: float, m: float) -> float:
    """Closed-form positive root of 2 b r + 2 M r^2/(1 - r) = 1 - alpha."""
    _check_params(alpha, b, m)
    p = 1.0 - alpha + 2.0 * b
    disc = p * p + 8.0 * (1.0 - alpha) * (m - b)
    if disc < 0.0:
        raise DomainError("m", f"negative discriminant {disc}")
    return 2.0 * (1.0 - alpha) / (p + math.sqrt(disc))


def _starlike_tail(cls: ClassSpec, alpha: float, r: float) -> float:
    # sum_{n >= 3} (n - alpha) |a_n| r**(n-1) with |a_n| at its bound
    if cls.family is Family.BOUND_BY_N:
        return sum_n_pow(2, r, 3) - alpha * sum_n_pow(1, r, 3)
    if cls.family is Family.BOUND_BY_M:
        return cls.m * (sum_n_pow(1, r, 3) - alpha * sum_n_pow(0, r, 3))
    return cls.m * (sum_n_pow(0, r, 3) - alpha * log_tail(r))


def sufficiency_margin_starlike(cls: ClassSpec, alpha: float, r: float) -> float:
    """(1 - alpha) minus the worst-case weighted coefficient sum at radius r.

    For the Caratheodory family the sum is sum |c_n| r**n, the quantity that
    bounds |p(z) - 1|.
    """
    cls.validate()
    _check_params(alpha, cls.b)
    _check_r(r, closed=False)
    if cls.family is Family.CARATHEODORY:
        return (1.0 - alpha) - caratheodory_sum(r, cls.b, cls.m)
    return (1.0 - alpha) - (2.0 * (2.0 - alpha) * cls.b * r + _starlike_tail(cls, alpha, r))


def sufficiency_margin_convex(cls: ClassSpec, alpha: float, r: float) -> float:
    """Same as the starlike margin with weights n (n - alpha)."""
    cls.validate()
    _check_params(alpha, cls.b)
    _check_r(r, closed=False)
    if cls.family is Family.BOUND_BY_N:
        tail = sum_n_pow(3, r, 3) - alpha * sum_n_pow(2, r, 3)
    elif cls.family is Family.BOUND_BY_M:
        tail = cls.m * (sum_n_pow(2, r, 3) - alpha * sum_n_pow(1, r, 3))
    else:
        raise UnsupportedClass(
            f"no direct convex margin for family {cls.family.value!r}; "
            "the m-over-n case reduces to the m-bounded starlike problem"
        )
    return (1.0 - alpha) - (4.0 * (2.0 - alpha) * cls.b * r + tail)
