"""Extremal functions of each coefficient class.

Each extremal saturates its coefficient bounds with all coefficients beyond
the first non-positive:

    n-bounded       f(z) = 2z + 2(1-b)z^2 - z/(1-z)^2   = z - 2b z^2 - 3z^3 - 4z^4 - ...
    M-bounded       f(z) = z - 2b z^2 - M z^3/(1-z)      = z - 2b z^2 - M z^3 - M z^4 - ...
    M/n-bounded     f(z) = (1+M)z + (M/2-2b)z^2 + M log(1-z)
    Caratheodory    p(z) = 1 - 2b z - 2M z^2/(1-z)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .model import ClassSpec, DomainError, Family, PoleError, UnsupportedClass

POLE_THRESHOLD = 1e-300
TRUNCATION_EDGE = 1e-6
EPS = float(np.finfo(float).eps)


class Form(enum.Enum):
    STAR_BOUND_N = "star-bound-n"
    BOUND_M = "bound-m"
    BOUND_M_OVER_N = "bound-m-over-n"
    CARATHEODORY_P0 = "caratheodory-p0"


_FORM_OF = {
    Family.BOUND_BY_N: Form.STAR_BOUND_N,
    Family.BOUND_BY_M: Form.BOUND_M,
    Family.BOUND_BY_M_OVER_N: Form.BOUND_M_OVER_N,
    Family.CARATHEODORY: Form.CARATHEODORY_P0,
}


def _check_disk(z: complex) -> complex:
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainError("z", f"must lie in the open unit disk, got |z|={abs(z)}")
    return z


def _log1p(w):
    # numpy's complex log1p loses relative accuracy near 0; split into
    # log|1 + w| = log1p(2x + x^2 + y^2) / 2 and arg(1 + w), both accurate
    w = np.asarray(w, dtype=complex)
    x, y = w.real, w.imag
    return 0.5 * np.log1p(x * (2.0 + x) + y * y) + 1j * np.arctan2(y, 1.0 + x)


def _falling(n: np.ndarray, k: int) -> np.ndarray:
    out = np.ones_like(n, dtype=float)
    for j in range(k):
        out = out * (n - j)
    return out


@dataclass(frozen=True)
class ExtremalFunction:
    cls: ClassSpec

    def __post_init__(self):
        self.cls.validate()

    @property
    def form(self) -> Form:
        return _FORM_OF[self.cls.family]

    @property
    def first_index(self) -> int:
        """Index of the leading coefficient (0 for p, 1 for f)."""
        return 0 if self.form is Form.CARATHEODORY_P0 else 1

    def coefficient(self, n: int) -> float:
        """Taylor coefficient of z**n."""
        b, m = self.cls.b, self.cls.m
        if n < self.first_index:
            return 0.0
        if n == self.first_index:
            return 1.0
        if n == self.first_index + 1:
            return -2.0 * b
        form = self.form
        if form is Form.STAR_BOUND_N:
            return -float(n)
        if form is Form.BOUND_M:
            return -m
        if form is Form.BOUND_M_OVER_N:
            return -m / n
        return -2.0 * m

    def coefficients(self, n_terms: int) -> np.ndarray:
        """Coefficients for indices 0..n_terms."""
        return np.array([self.coefficient(n) for n in range(n_terms + 1)])

    def _f(self, z):
        b, m = self.cls.b, self.cls.m
        form = self.form
        if form is Form.STAR_BOUND_N:
            return 2 * z + 2 * (1 - b) * z * z - z / (1 - z) ** 2
        if form is Form.BOUND_M:
            return z - 2 * b * z * z - m * z**3 / (1 - z)
        if form is Form.BOUND_M_OVER_N:
            return (1 + m) * z + (m / 2 - 2 * b) * z * z + m * _log1p(-z)
        return 1 - 2 * b * z - 2 * m * z * z / (1 - z)

    def _d1(self, z):
        b, m = self.cls.b, self.cls.m
        form = self.form
        if form is Form.STAR_BOUND_N:
            return 2 + 4 * (1 - b) * z - (1 + z) / (1 - z) ** 3
        if form is Form.BOUND_M:
            return 1 - 4 * b * z - m * (3 * z**2 - 2 * z**3) / (1 - z) ** 2
        if form is Form.BOUND_M_OVER_N:
            return (1 + m) + (m - 4 * b) * z - m / (1 - z)
        return -2 * b - 2 * m * (2 * z - z * z) / (1 - z) ** 2

    def _d2(self, z):
        b, m = self.cls.b, self.cls.m
        form = self.form
        if form is Form.STAR_BOUND_N:
            return 4 * (1 - b) - (4 + 2 * z) / (1 - z) ** 4
        if form is Form.BOUND_M:
            return -4 * b - m * (6 * z - 6 * z**2 + 2 * z**3) / (1 - z) ** 3
        if form is Form.BOUND_M_OVER_N:
            return (m - 4 * b) - m / (1 - z) ** 2
        return -4 * m / (1 - z) ** 3

    def eval(self, z: complex) -> complex:
        return complex(self._f(_check_disk(z)))

    def eval_d1(self, z: complex) -> complex:
        return complex(self._d1(_check_disk(z)))

    def eval_d2(self, z: complex) -> complex:
        return complex(self._d2(_check_disk(z)))

    def quotients(self, z: np.ndarray, star: bool = True, convex: bool = True):
        """Vectorized ``(z f'/f, 1 + z f''/f')`` on an array of disk points.

        A quotient that is not requested is returned as ``None`` and its
        denominator is not checked. For the Caratheodory form both entries are
        p(z) itself, the quantity whose real part is tested.
        """
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) >= 1.0):
            raise DomainError("z", "points must lie in the open unit disk")
        if self.form is Form.CARATHEODORY_P0:
            p = self._f(z)
            return (p if star else None), (p if convex else None)
        w = v = None
        if star:
            f, d1 = self._f(z), self._d1(z)
            nonzero = z != 0
            if np.any(np.abs(f[nonzero]) < POLE_THRESHOLD):
                raise PoleError("f vanishes on the sampled points")
            w = np.ones_like(z)
            w[nonzero] = z[nonzero] * d1[nonzero] / f[nonzero]
        if convex:
            d1 = self._d1(z)
            if np.any(np.abs(d1) < POLE_THRESHOLD):
                raise PoleError("f' vanishes on the sampled points")
            v = 1 + z * self._d2(z) / d1
        return w, v

    def _require_normalized(self):
        if self.form is Form.CARATHEODORY_P0:
            raise UnsupportedClass("quotients are defined for normalized f, not p")

    def star_quotient(self, z: complex) -> complex:
        """z f'(z) / f(z), with the value 1 at z = 0."""
        self._require_normalized()
        z = _check_disk(z)
        if z == 0:
            return 1.0 + 0j
        f = self.eval(z)
        if abs(f) < POLE_THRESHOLD:
            raise PoleError(f"f vanishes at z={z}")
        return z * self.eval_d1(z) / f

    def convex_quotient(self, z: complex) -> complex:
        """1 + z f''(z) / f'(z)."""
        self._require_normalized()
        z = _check_disk(z)
        d1 = self.eval_d1(z)
        if abs(d1) < POLE_THRESHOLD:
            raise PoleError(f"f' vanishes at z={z}")
        return 1 + z * self.eval_d2(z) / d1

    def _ratio_bound(self, n: int, k: int) -> float:
        # sup over j >= n of |a_{j+1}| F(j+1) / (|a_j| F(j)), F the k-th falling factorial;
        # both factors are bounded by their value at j = n (|a_j| ratio by 1 unless n-bounded)
        coef_ratio = (n + 1) / n if self.form is Form.STAR_BOUND_N else 1.0
        return coef_ratio * (n + 1) / (n + 1 - k)

    def tail_bound(self, z: complex, n_terms: int, derivative: int = 0) -> float:
        """Upper bound on |sum_{n > n_terms} F(n) a_n z^(n-k)|, F the k-th falling factorial.

        Successive tail terms shrink at least by the factor ``q`` from
        :meth:`_ratio_bound`, so the tail is dominated by a geometric series.
        """
        r = abs(complex(z))
        start = n_terms + 1
        if start < self.first_index + 2 or start <= derivative:
            raise DomainError("n_terms", "too few terms for a tail bound")
        if r == 0.0:
            return 0.0
        q = r * self._ratio_bound(start, derivative)
        if q >= 1.0:
            return math.inf
        lead = abs(self.coefficient(start)) * float(_falling(np.array([start]), derivative)[0])
        return lead * r ** (start - derivative) / (1.0 - q)

    def terms_for(self, z: complex, accuracy: float, derivative: int = 0) -> int:
        """Smallest power-of-two truncation whose tail bound is below ``accuracy``."""
        n = 16
        while self.tail_bound(z, n, derivative) >= accuracy:
            n *= 2
            if n > 1 << 24:
                raise DomainError("z", f"|z|={abs(z)} needs too many terms")
        return n

    def eval_truncated(
        self,
        z: complex,
        n_terms: Optional[int] = None,
        derivative: int = 0,
        accuracy: float = 1e-14,
    ) -> Tuple[complex, float]:
        """Partial Taylor sum of f, f' or f'' with an error bound.

        Returns ``(value, bound)`` where ``bound`` covers the omitted tail plus
        floating-point rounding in the partial sum. When ``n_terms`` is omitted it is chosen
        so the bound falls below ``accuracy``.
        """
        z = complex(z)
        if not abs(z) <= 1.0 - TRUNCATION_EDGE:
            raise DomainError("z", f"|z|={abs(z)} too close to the unit circle")
        if derivative not in (0, 1, 2):
            raise DomainError("derivative", "must be 0, 1 or 2")
        if n_terms is None:
            n_terms = self.terms_for(z, accuracy, derivative)
        n = np.arange(n_terms + 1)
        coef = self.coefficients(n_terms) * _falling(n, derivative)
        powers = np.zeros(n_terms + 1, dtype=complex)
        powers[derivative:] = z ** (n[derivative:] - derivative)
        terms = (coef * powers)[::-1]
        value = complex(np.sum(terms))
        # summation rounding, with slack for the closed form it is compared against
        rounding = (n_terms + 10) * EPS * float(np.sum(np.abs(terms)))
        return value, self.tail_bound(z, n_terms, derivative) + rounding
