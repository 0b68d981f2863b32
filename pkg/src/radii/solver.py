"""Bracketed root finding on (0, 1) and query dispatch."""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from . import equations as eq
from .model import (
    DomainError,
    Family,
    Kind,
    MultipleRoots,
    NoRoot,
    NonConvergence,
    RadiusKind,
    RadiusQuery,
    RadiusResult,
    ClassSpec,
    validate,
)

EPS = sys.float_info.epsilon
SCAN_EDGE = 1e-12
SCAN_POINTS = 64

DefiningFunction = Callable[[float], float]


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    g_lo: float
    g_hi: float


def scan_points(n: int = SCAN_POINTS, edge: float = SCAN_EDGE) -> list:
    """Geometric grid from ``edge`` to ``1 - edge``; dense near 0."""
    ratio = ((1.0 - edge) / edge) ** (1.0 / (n - 1))
    pts = [edge * ratio**i for i in range(n - 1)]
    pts.append(1.0 - edge)
    return pts


def bracket_root(g: DefiningFunction) -> Bracket:
    """Locate the unique sign change of ``g`` on the scan grid.

    Raises:
        NoRoot: ``g`` keeps one sign on the grid.
        MultipleRoots: more than one sign change was seen.
    """
    xs = scan_points()
    gs = [g(x) for x in xs]
    for x, v in zip(xs, gs):
        if not math.isfinite(v):
            raise NoRoot(f"defining function is not finite at r={x!r}")
    changes = [i for i in range(len(xs) - 1) if (gs[i] > 0) != (gs[i + 1] > 0)]
    if not changes:
        raise NoRoot("no sign change on (0, 1)")
    if len(changes) > 1:
        where = ", ".join(f"({xs[i]:.6g}, {xs[i + 1]:.6g})" for i in changes)
        raise MultipleRoots(f"{len(changes)} sign changes at scan resolution: {where}")
    i = changes[0]
    return Bracket(xs[i], xs[i + 1], gs[i], gs[i + 1])


def refine(
    g: DefiningFunction,
    bracket: Bracket,
    tol: float = 1e-12,
    max_iter: int = 200,
    equation_id: str = "",
) -> RadiusResult:
    """Brent's method (bisection guarded secant/inverse quadratic steps)."""
    a, b = bracket.lo, bracket.hi
    fa, fb = bracket.g_lo, bracket.g_hi
    if fa == 0.0:
        return RadiusResult(a, fa, 0, equation_id)
    if fb == 0.0:
        return RadiusResult(b, fb, 0, equation_id)
    if (fa > 0) == (fb > 0):
        raise NoRoot(f"bracket [{a}, {b}] does not change sign")

    # converge to near machine precision, then check the requested tolerance
    xtol = min(tol, 1e-15)
    c, fc = a, fa
    d = e = b - a
    for it in range(1, max_iter + 1):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * EPS * abs(b) + 0.5 * xtol
        xm = 0.5 * (c - b)
        if fb == 0.0:
            return RadiusResult(b, fb, it, equation_id)
        if abs(xm) <= tol1:
            if abs(fb) <= tol and abs(c - b) <= tol:
                return RadiusResult(b, fb, it, equation_id)
            raise NonConvergence(
                f"stalled at r={b!r} with |g|={abs(fb):.3g} > tol={tol:.3g}"
            )
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                qq = fa / fc
                rr = fb / fc
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0))
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            # accept only if inside the bracket and shorter than half the step before last
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = g(b)
    raise NonConvergence(f"no convergence within {max_iter} iterations")


def defining_function(cls: ClassSpec, kind: RadiusKind) -> Tuple[str, DefiningFunction]:
    """Return ``(equation_id, g)`` for a validated (class, kind) pair.

    Convex radii for the m-over-n family are the starlike radii of the
    m-bounded family with the second coefficient doubled (f convex iff z f'
    starlike), so that case reuses the m-bounded starlike equation.
    """
    alpha = kind.order
    fam = cls.family
    if kind.is_starlike:
        if fam is Family.BOUND_BY_N:
            return "starlike_n", lambda r: eq.g_starlike_bound_n(r, alpha, cls.b)
        if fam is Family.BOUND_BY_M:
            return "starlike_m", lambda r: eq.g_starlike_bound_m(r, alpha, cls.b, cls.m)
        if fam is Family.BOUND_BY_M_OVER_N:
            return "starlike_m_over_n", lambda r: eq.g_starlike_bound_m_over_n(r, alpha, cls.b, cls.m)
    elif kind.is_convex:
        if fam is Family.BOUND_BY_N:
            return "convex_n", lambda r: eq.g_convex_bound_n(r, alpha, cls.b)
        if fam is Family.BOUND_BY_M:
            return "convex_m", lambda r: eq.g_convex_bound_m(r, alpha, cls.b, cls.m)
        if fam is Family.BOUND_BY_M_OVER_N:
            if 2.0 * cls.b > 1.0:
                raise DomainError(
                    "b", f"convex radius for m-over-n needs 2b <= 1, got b={cls.b}"
                )
            return "convex_m_over_n_via_starlike_m", lambda r: eq.g_starlike_bound_m(r, alpha, 2.0 * cls.b, cls.m)
    elif fam is Family.CARATHEODORY:
        return "caratheodory", lambda r: _caratheodory_g(r, alpha, cls.b, cls.m)
    raise DomainError("kind", f"{kind.variant.value!r} is incompatible with {fam.value!r}")


def _caratheodory_g(r: float, alpha: float, b: float, m: float) -> float:
    return (1.0 - alpha) - eq.caratheodory_sum(r, b, m)


def solve_radius(query: RadiusQuery) -> RadiusResult:
    validate(query)
    equation_id, g = defining_function(query.cls, query.kind)
    if query.cls.family is Family.CARATHEODORY:
        c = query.cls
        r = eq.caratheodory_radius(query.kind.order, c.b, c.m)
        return RadiusResult(r, g(r), 0, equation_id)
    bracket = bracket_root(g)
    return refine(g, bracket, query.tolerance, query.max_iterations, equation_id)


def radius(
    family: Family,
    kind: RadiusKind,
    b: float,
    m: Optional[float] = None,
    **kw,
) -> float:
    """Shortcut returning only the radius."""
    return solve_radius(RadiusQuery(ClassSpec(family, b, m), kind, **kw)).radius


class RadicalId(enum.Enum):
    STARLIKE_N_ALPHA0 = "starlike-n-alpha0"  # |a_n| <= n for n >= 2
    STARLIKE_N_ALPHA_HALF = "starlike-n-alpha-half"
    STARLIKE_N_A2_ZERO_ALPHA_HALF = "starlike-n-a2-zero-alpha-half"
    BOUNDED_UNIVALENCE = "bounded-univalence"  # |a_n| <= M, needs m


def closed_form_radical(rid: RadicalId, m: Optional[float] = None) -> float:
    """Radicals for roots that have closed forms."""
    if rid is RadicalId.STARLIKE_N_ALPHA0:
        s = math.sqrt(330.0)
        return 1.0 + ((s - 18.0) ** (1 / 3) - (s + 18.0) ** (1 / 3)) / 6.0 ** (2 / 3)
    if rid is RadicalId.STARLIKE_N_ALPHA_HALF:
        t = 2.0 * math.sqrt(2.0)
        return 1.0 + ((3.0 - t) ** (1 / 3) - (3.0 + t) ** (1 / 3)) / math.sqrt(2.0)
    if rid is RadicalId.STARLIKE_N_A2_ZERO_ALPHA_HALF:
        return 1.0 - 0.5 ** (1 / 3)
    if rid is RadicalId.BOUNDED_UNIVALENCE:
        if m is None or not m > 0:
            raise DomainError("m", "positive M required")
        return 1.0 - math.sqrt(m / (1.0 + m))
    raise DomainError("id", f"unknown radical {rid!r}")


def radical_query(rid: RadicalId, m: Optional[float] = None) -> RadiusQuery:
    """The query whose numeric root the radical ``rid`` expresses."""
    if rid is RadicalId.STARLIKE_N_ALPHA0:
        return RadiusQuery(ClassSpec(Family.BOUND_BY_N, 1.0), RadiusKind.starlike(0.0))
    if rid is RadicalId.STARLIKE_N_ALPHA_HALF:
        return RadiusQuery(ClassSpec(Family.BOUND_BY_N, 1.0), RadiusKind.starlike(0.5))
    if rid is RadicalId.STARLIKE_N_A2_ZERO_ALPHA_HALF:
        return RadiusQuery(ClassSpec(Family.BOUND_BY_N, 0.0), RadiusKind.starlike(0.5))
    return RadiusQuery(ClassSpec(Family.BOUND_BY_M, m / 2.0, m), RadiusKind.starlike(0.0))


__all__ = [
    "Bracket",
    "Kind",
    "RadicalId",
    "bracket_root",
    "closed_form_radical",
    "defining_function",
    "radical_query",
    "radius",
    "refine",
    "scan_points",
    "solve_radius",
]
