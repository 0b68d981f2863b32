"""Independent checks of computed radii.

Three routes are compared against :func:`radii.solver.solve_radius`:

* the extremal function evaluated at the radius (sharpness equalities),
* sampling the quotients z f'/f and 1 + z f''/f' around circles,
* roots of the raw coefficient sums, truncated with a rigorous tail bound
  (:func:`oracle_root`), which never touch the closed-form equations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
from scipy.optimize import brentq

from .extremal import ExtremalFunction
from .model import (
    ClassSpec,
    DomainError,
    Family,
    Kind,
    NoRoot,
    NonConvergence,
    RadiiError,
    RadiusKind,
    RadiusQuery,
    VerificationReport,
    validate,
)
from .solver import RadicalId, closed_form_radical, radical_query, solve_radius

SHARPNESS_TOL = 1e-8
ORACLE_TOL = 1e-9
MEMBERSHIP_TOL = 1e-9
AT_RADIUS_TOL = 1e-6
DEFAULT_SAMPLES = 4096
DEFAULT_ORACLE_TERMS = 10_000


@dataclass(frozen=True)
class CircleScan:
    """Minima over a sampled circle; convex fields are None when not requested."""

    radius: float
    samples: int
    min_re_star: Optional[float]
    min_parabolic_margin: Optional[float]
    argmin_angle: Optional[float]
    min_re_convex: Optional[float] = None
    min_ucv_margin: Optional[float] = None
    argmin_angle_convex: Optional[float] = None


def circle_points(r: float, samples: int):
    theta = 2.0 * np.pi * np.arange(samples) / samples
    return theta, r * np.exp(1j * theta)


def _minima(q: np.ndarray, theta: np.ndarray):
    if not np.all(np.isfinite(q)):
        raise NonConvergence("non-finite quotient on the circle")
    i = int(np.argmin(q.real))
    return float(q.real[i]), float(np.min(q.real - np.abs(q - 1))), float(theta[i])


def scan_circle(
    ef: ExtremalFunction,
    r: float,
    samples: int = DEFAULT_SAMPLES,
    star: bool = True,
    convex: bool = True,
) -> CircleScan:
    """Minimize the starlike/convex test quantities over |z| = r.

    ``samples`` must be a power of two, at least 64. Each margin is
    Re q - |q - 1| for the corresponding quotient q.
    """
    if not 0.0 < r < 1.0:
        raise DomainError("r", f"must lie in (0, 1), got {r}")
    if samples < 64 or samples & (samples - 1):
        raise DomainError("samples", f"must be a power of two >= 64, got {samples}")
    theta, z = circle_points(r, samples)
    w, v = ef.quotients(z, star=star, convex=convex)
    s = _minima(w, theta) if w is not None else (None, None, None)
    c = _minima(v, theta) if v is not None else (None, None, None)
    return CircleScan(r, samples, *s, *c)


def _relevant_min(scan: CircleScan, kind: RadiusKind) -> float:
    return scan.min_re_convex if kind.is_convex else scan.min_re_star


def _relevant_argmin(scan: CircleScan, kind: RadiusKind) -> float:
    return scan.argmin_angle_convex if kind.is_convex else scan.argmin_angle


def beyond_radius(r0: float) -> float:
    return min(1.05 * r0, 0.5 * (r0 + 1.0))


def label(cls: ClassSpec, kind: RadiusKind) -> str:
    parts = [f"class={cls.family.value}", f"kind={kind.variant.value}"]
    if kind.variant in (Kind.STARLIKE, Kind.CONVEX, Kind.POSITIVE_REAL):
        parts.append(f"alpha={kind.alpha:g}")
    parts.append(f"b={cls.b:g}")
    if cls.m is not None:
        parts.append(f"m={cls.m:g}")
    return " ".join(parts)


def check_sharpness(cls: ClassSpec, kind: RadiusKind, tol: float = SHARPNESS_TOL) -> VerificationReport:
    """Evaluate the extremal function at z = r0 on the positive axis.

    Both |q - 1| = 1 - alpha and Re q = alpha must hold, where q is the
    starlike quotient, the convex quotient or p itself. ``measured`` is
    1 - alpha shifted by the larger of the two deviations.
    """
    query = RadiusQuery(cls, kind)
    r0 = solve_radius(query).radius
    alpha = kind.order
    ef = ExtremalFunction(cls)
    if cls.family is Family.CARATHEODORY:
        q = ef.eval(r0)
    elif kind.is_convex:
        q = ef.convex_quotient(r0)
    else:
        q = ef.star_quotient(r0)
    dev_mod = abs(q - 1) - (1 - alpha)
    dev_re = q.real - alpha
    worst = dev_mod if abs(dev_mod) >= abs(dev_re) else dev_re
    return VerificationReport.compare(
        "sharpness",
        (1 - alpha) + worst,
        1 - alpha,
        tol,
        f"{label(cls, kind)} r0={r0!r} |q-1|={abs(q - 1)!r} Re q={q.real!r}",
    )


@dataclass(frozen=True)
class OracleRoot:
    """Interval [lo, hi] containing the root of the untruncated coefficient sum."""

    lo: float
    hi: float
    n_terms: int

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, r: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= r <= self.hi + slack


def worst_case_weights(cls: ClassSpec, kind: RadiusKind, n_terms: int):
    """Return ``(powers, weights)`` so the sum is sum weights * r**powers.

    Weights are the extremal coefficient moduli times (n - alpha) for
    starlike kinds or n (n - alpha) for convex kinds, for n = 2..n_terms; for
    the Caratheodory family they are |c_n| for n = 1..n_terms.
    """
    alpha = kind.order
    b, m = cls.b, cls.m
    if cls.family is Family.CARATHEODORY:
        n = np.arange(1, n_terms + 1, dtype=float)
        mods = np.full_like(n, 2.0 * (m or 0.0))
        mods[0] = 2.0 * b
        return n, mods
    n = np.arange(2, n_terms + 1, dtype=float)
    if cls.family is Family.BOUND_BY_N:
        mods = n.copy()
    elif cls.family is Family.BOUND_BY_M:
        mods = np.full_like(n, m)
    else:
        mods = m / n
    mods[0] = 2.0 * b
    weight = n * (n - alpha) if kind.is_convex else n - alpha
    return n - 1.0, weight * mods


_UNDERFLOW_LOG = -750.0  # exp(-750) is far below the smallest subnormal


def _tail(n_last: int, weights: np.ndarray, powers: np.ndarray, r: float) -> float:
    # weights are (products of up to three factors n - c, c in [0, 1)) times
    # non-increasing moduli, so each grows by at most (1 + 1/(N-1))**3 per step
    growth = (1.0 + 1.0 / (n_last - 1.0)) ** 3
    ratio = r * growth
    if ratio >= 1.0:
        return math.inf
    with np.errstate(under="ignore"):
        next_term = weights[-1] * growth * r ** (powers[-1] + 1.0)
    return float(next_term / (1.0 - ratio))


def oracle_root(
    cls: ClassSpec, kind: RadiusKind, n_terms: int = DEFAULT_ORACLE_TERMS
) -> OracleRoot:
    """Root of (1 - alpha) - sum of worst-case terms, by direct partial sums."""
    if n_terms < 1000:
        raise DomainError("n_terms", f"must be at least 1000, got {n_terms}")
    validate(RadiusQuery(cls, kind))
    target = 1.0 - kind.order
    powers, weights = worst_case_weights(cls, kind, n_terms)

    def partial_margin(r: float) -> float:
        # r**p is exactly 0.0 once p log(r) < -750; skipping those terms changes nothing
        count = int(np.searchsorted(powers, _UNDERFLOW_LOG / math.log(r), "right"))
        with np.errstate(under="ignore"):
            terms = weights[:count] * np.power(r, powers[:count])
        return target - math.fsum(terms.tolist())

    lo_edge, hi_edge = 1e-12, 1.0 - 1e-12
    if partial_margin(lo_edge) <= 0 or partial_margin(hi_edge) >= 0:
        raise NoRoot(f"partial-sum margin does not change sign for {label(cls, kind)}")
    try:
        hi = brentq(partial_margin, lo_edge, hi_edge, xtol=1e-16, rtol=1e-15, maxiter=500)
        if _tail(n_terms, weights, powers, hi) == 0.0:
            lo = hi
        else:
            lo = brentq(
                lambda r: partial_margin(r) - _tail(n_terms, weights, powers, r),
                lo_edge,
                hi,
                xtol=1e-16,
                rtol=1e-15,
                maxiter=500,
            )
    except RuntimeError as exc:
        raise NonConvergence(str(exc)) from exc
    return OracleRoot(lo, hi, n_terms)


# Published constants: (name, query, value, tolerance)
def published_constants() -> list:
    n, starlike, convex = Family.BOUND_BY_N, RadiusKind.starlike, RadiusKind.convex
    return [
        ("starlike |a_n|<=n", RadiusQuery(ClassSpec(n, 1.0), starlike(0.0)), 0.164878, 1e-5),
        ("parabolic |a_n|<=n", RadiusQuery(ClassSpec(n, 1.0), RadiusKind.parabolic()), 0.120385, 1e-5),
        ("starlike a2=0", RadiusQuery(ClassSpec(n, 0.0), starlike(0.0)), 0.253571, 1e-5),
        ("parabolic a2=0", RadiusQuery(ClassSpec(n, 0.0), starlike(0.5)), 0.206299, 1e-5),
        ("convex |a_n|<=n", RadiusQuery(ClassSpec(n, 1.0), convex(0.0)), 0.09033, 1e-4),
        ("ucv |a_n|<=n", RadiusQuery(ClassSpec(n, 1.0), RadiusKind.ucv()), 0.064723, 1e-5),
        ("convex a2=0", RadiusQuery(ClassSpec(n, 0.0), convex(0.0)), 0.155972, 1e-5),
        ("ucv a2=0", RadiusQuery(ClassSpec(n, 0.0), RadiusKind.ucv()), 0.125429, 1e-5),
        (
            "starlike |a_n|<=1",
            RadiusQuery(ClassSpec(Family.BOUND_BY_M, 0.5, 1.0), starlike(0.0)),
            0.292893,
            1e-5,
        ),
    ]


def check_constants() -> List[VerificationReport]:
    reports = []
    for name, query, value, tol in published_constants():
        r = solve_radius(query).radius
        reports.append(VerificationReport.compare(f"constant:{name}", r, value, tol))
    return reports


def check_radicals(ms: Sequence[float] = (0.5, 1.0, 2.0), tol: float = 1e-12) -> List[VerificationReport]:
    reports = []
    cases = [(rid, None) for rid in RadicalId if rid is not RadicalId.BOUNDED_UNIVALENCE]
    cases += [(RadicalId.BOUNDED_UNIVALENCE, m) for m in ms]
    for rid, m in cases:
        numeric = solve_radius(radical_query(rid, m)).radius
        name = rid.value if m is None else f"{rid.value}(m={m:g})"
        reports.append(
            VerificationReport.compare(f"radical:{name}", numeric, closed_form_radical(rid, m), tol)
        )
    return reports


@dataclass(frozen=True)
class Grid:
    """Cartesian parameter grid over all compatible (class, kind) pairs.

    The parabolic and UCV kinds carry no alpha and appear once per (b, m).
    Convex queries for the m-over-n family need 2b <= 1; other b values are
    skipped.
    """

    alphas: Sequence[float] = (0.0, 0.25, 0.5, 0.75)
    bs: Sequence[float] = (0.0, 0.5, 1.0)
    ms: Sequence[float] = (0.5, 1.0, 2.0)
    families: Sequence[Family] = tuple(Family)
    kinds: Sequence[Kind] = tuple(Kind)

    def classes(self, family: Family) -> List[ClassSpec]:
        if family is Family.BOUND_BY_N:
            return [ClassSpec(family, b) for b in self.bs]
        return [ClassSpec(family, b, m) for b in self.bs for m in self.ms]

    def kinds_for(self, family: Family) -> List[RadiusKind]:
        out = []
        for k in self.kinds:
            if (k is Kind.POSITIVE_REAL) != (family is Family.CARATHEODORY):
                continue
            if k in (Kind.PARABOLIC, Kind.UCV):
                out.append(RadiusKind(k, 0.5))
            else:
                out.extend(RadiusKind(k, a) for a in self.alphas)
        return out

    def points(self) -> List[RadiusQuery]:
        pts = []
        for fam in self.families:
            for cls in self.classes(fam):
                for kind in self.kinds_for(fam):
                    if fam is Family.BOUND_BY_M_OVER_N and kind.is_convex and 2 * cls.b > 1:
                        continue
                    pts.append(RadiusQuery(cls, kind))
        return pts


ACCEPTANCE_GRID = Grid()
FULL_GRID = Grid(
    alphas=tuple(round(0.05 * i, 2) for i in range(20)),
    bs=tuple(round(0.1 * i, 1) for i in range(11)),
)


def _fail(name: str, query: RadiusQuery, exc: Exception) -> VerificationReport:
    return VerificationReport(
        name, False, math.nan, math.nan, 0.0, f"{label(query.cls, query.kind)}: {type(exc).__name__}: {exc}"
    )


def at_most(name, value, bound, detail=""):
    """One-sided report: passes iff value <= bound (measured is the excess)."""
    return VerificationReport.compare(name, max(0.0, value - bound), 0.0, 0.0, f"{detail} value={value!r} bound={bound!r}")


def below(name, value, bound, detail=""):
    """Strict one-sided report: passes iff value < bound."""
    return at_most(name, value, math.nextafter(bound, -math.inf), detail)


def check_oracle(query: RadiusQuery, n_terms: int = DEFAULT_ORACLE_TERMS) -> VerificationReport:
    r = solve_radius(query).radius
    orc = oracle_root(query.cls, query.kind, n_terms)
    # distance from r to the oracle interval
    dist = max(orc.lo - r, r - orc.hi, 0.0)
    return VerificationReport.compare(
        "oracle",
        dist,
        0.0,
        ORACLE_TOL,
        f"{label(query.cls, query.kind)} solver={r!r} oracle=[{orc.lo!r}, {orc.hi!r}]",
    )


def check_scans(query: RadiusQuery, samples: int = DEFAULT_SAMPLES) -> List[VerificationReport]:
    """Membership at 0.9 r0, equality on |z| = r0, violation beyond r0."""
    cls, kind = query.cls, query.kind
    alpha = kind.order
    r0 = solve_radius(query).radius
    ef = ExtremalFunction(cls)
    tag = label(cls, kind)
    which = dict(star=not kind.is_convex, convex=kind.is_convex)
    inside = scan_circle(ef, 0.9 * r0, samples, **which)
    at = scan_circle(ef, r0, samples, **which)
    out = scan_circle(ef, beyond_radius(r0), samples, **which)
    reports = [
        at_most("scan:inside", alpha - _relevant_min(inside, kind), MEMBERSHIP_TOL, tag),
        VerificationReport.compare("scan:at_radius", _relevant_min(at, kind), alpha, AT_RADIUS_TOL, tag),
        below("scan:argmin_angle", _relevant_argmin(at, kind), 2 * math.pi / samples, tag),
        below("scan:beyond", _relevant_min(out, kind), alpha, tag),
    ]
    if kind.variant is Kind.PARABOLIC:
        reports.append(at_most("scan:parabolic_margin", -inside.min_parabolic_margin, 0.0, tag))
    if kind.variant is Kind.UCV:
        reports.append(at_most("scan:ucv_margin", -inside.min_ucv_margin, 0.0, tag))
    return reports


def check_monotonicity(grid: Grid = ACCEPTANCE_GRID, queries: Optional[List[RadiusQuery]] = None) -> List[VerificationReport]:
    """Radii strictly decrease in alpha and do not increase in b."""
    radii = {}
    for q in grid.points() if queries is None else queries:
        radii[q] = solve_radius(q).radius
    reports = []

    def key(q, drop):
        d = q.to_dict()
        d.pop(drop)
        return tuple(sorted(d.items(), key=lambda kv: kv[0]))

    for axis, strict in (("alpha", True), ("b", False)):
        series = {}
        for q, r in radii.items():
            if axis == "alpha" and q.kind.variant in (Kind.PARABOLIC, Kind.UCV):
                continue
            x = q.kind.alpha if axis == "alpha" else q.cls.b
            series.setdefault(key(q, axis), []).append((x, r))
        for k, pts in sorted(series.items(), key=lambda kv: repr(kv[0])):
            pts.sort()
            if len(pts) < 2:
                continue
            worst = max(r2 - r1 for (_, r1), (_, r2) in zip(pts, pts[1:]))
            detail = " ".join(f"{a}={v}" for a, v in k if v is not None)
            name = f"monotone:{axis}"
            if strict:
                reports.append(below(name, worst, -1e-12, detail))
            else:
                reports.append(at_most(name, worst, 1e-12, detail))
    return reports


def check_second_coefficient_gain(ms: Sequence[float] = (0.5, 1.0, 2.0)) -> List[VerificationReport]:
    """|a_n| <= M starlike radius improves when a_2 = 0 instead of |a_2| = M."""
    reports = []
    for m in ms:
        k = RadiusKind.starlike(0.0)
        r_full = solve_radius(RadiusQuery(ClassSpec(Family.BOUND_BY_M, m / 2, m), k)).radius
        r_zero = solve_radius(RadiusQuery(ClassSpec(Family.BOUND_BY_M, 0.0, m), k)).radius
        reports.append(below("monotone:a2_zero_gain", r_full, r_zero, f"m={m:g}"))
    return reports


GridLike = Union[Grid, Iterable[RadiusQuery]]


def run_suite(grid: GridLike = ACCEPTANCE_GRID, samples: int = DEFAULT_SAMPLES) -> List[VerificationReport]:
    """Per-point sharpness, oracle and circle-scan checks plus monotonicity sweeps.

    Failures, including invalid grid points, are reported rather than raised.
    """
    queries = grid.points() if isinstance(grid, Grid) else list(grid)
    reports: List[VerificationReport] = []
    valid = []
    for q in queries:
        try:
            validate(q)
            solve_radius(q)
        except RadiiError as exc:
            reports.append(_fail("solve", q, exc))
            continue
        valid.append(q)
        for name, fn in (
            ("sharpness", lambda: [check_sharpness(q.cls, q.kind)]),
            ("oracle", lambda: [check_oracle(q)]),
            ("scan", lambda: check_scans(q, samples)),
        ):
            try:
                reports.extend(fn())
            except RadiiError as exc:
                reports.append(_fail(name, q, exc))
    if valid:
        reports.extend(check_monotonicity(queries=valid))
    return reports


SUITES = ("constants", "sharpness", "oracle", "monotonicity", "all")


def run_named_suite(name: str, grid: Grid = ACCEPTANCE_GRID, samples: int = DEFAULT_SAMPLES) -> List[VerificationReport]:
    if name not in SUITES:
        raise DomainError("suite", f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    out: List[VerificationReport] = []
    if name in ("constants", "all"):
        out += check_constants() + check_radicals()
    if name in ("sharpness", "all"):
        for q in grid.points():
            out.append(check_sharpness(q.cls, q.kind))
            out.extend(check_scans(q, samples))
    if name in ("oracle", "all"):
        out += [check_oracle(q) for q in grid.points()]
    if name in ("monotonicity", "all"):
        out += check_monotonicity(grid) + check_second_coefficient_gain()
    return out
