import math

import numpy as np
import pytest

from radii.extremal import ExtremalFunction
from radii.model import ClassSpec, DomainError, Family, RadiusKind, RadiusQuery
from radii.solver import solve_radius
from radii import verification as ver

N_B1 = ClassSpec(Family.BOUND_BY_N, 1.0)


@pytest.fixture(scope="module")
def r0_n():
    return solve_radius(RadiusQuery(N_B1, RadiusKind.starlike(0.0))).radius


def test_scan_membership_equality_violation(r0_n):
    ef = ExtremalFunction(N_B1)
    assert ver.scan_circle(ef, 0.9 * r0_n, 4096, convex=False).min_re_star > 0
    at = ver.scan_circle(ef, r0_n, 4096, convex=False)
    assert abs(at.min_re_star) < 1e-6
    assert at.argmin_angle < 2 * math.pi / 4096
    assert ver.scan_circle(ef, 1.05 * r0_n, 4096, convex=False).min_re_star < 0


def test_scan_rejects_bad_samples(r0_n):
    with pytest.raises(DomainError):
        ver.scan_circle(ExtremalFunction(N_B1), r0_n, 100)
    with pytest.raises(DomainError):
        ver.scan_circle(ExtremalFunction(N_B1), r0_n, 32)


def test_scan_fields_omitted_when_not_requested(r0_n):
    s = ver.scan_circle(ExtremalFunction(N_B1), 0.5 * r0_n, 64, star=False)
    assert s.min_re_star is None and s.min_re_convex is not None


def test_check_sharpness_examples():
    rep = ver.check_sharpness(N_B1, RadiusKind.starlike(0.0))
    assert rep.passed and rep.measured == pytest.approx(1.0, abs=1e-8)
    assert ver.check_sharpness(ClassSpec(Family.BOUND_BY_M, 1.0, 1.0), RadiusKind.convex(0.5)).passed
    rep = ver.check_sharpness(ClassSpec(Family.CARATHEODORY, 0.0, 1.0), RadiusKind.positive_real(0.0))
    assert rep.passed and rep.measured == pytest.approx(1.0, abs=1e-12)


def test_oracle_examples():
    orc = ver.oracle_root(N_B1, RadiusKind.starlike(0.0))
    assert orc.mid == pytest.approx(0.164878, abs=1e-5)
    for cls, kind in [
        (ClassSpec(Family.BOUND_BY_M_OVER_N, 0.5, 1.0), RadiusKind.starlike(0.5)),
        (ClassSpec(Family.BOUND_BY_M, 0.5, 1.0), RadiusKind.convex(0.0)),
        (ClassSpec(Family.BOUND_BY_M_OVER_N, 0.25, 1.0), RadiusKind.convex(0.0)),
    ]:
        orc = ver.oracle_root(cls, kind)
        assert orc.contains(solve_radius(RadiusQuery(cls, kind)).radius, 1e-9)


def test_oracle_interval_widens_with_few_terms():
    # near r = 0.9 a thousand terms leave a visible tail
    cls = ClassSpec(Family.BOUND_BY_M_OVER_N, 0.0, 0.01)
    kind = RadiusKind.starlike(0.0)
    r = solve_radius(RadiusQuery(cls, kind)).radius
    orc = ver.oracle_root(cls, kind, n_terms=1000)
    assert orc.width > 0
    assert orc.lo <= r <= orc.hi


def test_oracle_requires_enough_terms():
    with pytest.raises(DomainError):
        ver.oracle_root(N_B1, RadiusKind.starlike(0.0), n_terms=100)


def test_run_suite_empty_and_invalid():
    assert ver.run_suite([]) == []
    bad = RadiusQuery(ClassSpec(Family.BOUND_BY_M, 0.5, None), RadiusKind.starlike(0.0))
    reports = ver.run_suite([bad])
    assert len(reports) == 1 and not reports[0].passed
    assert "DomainError" in reports[0].detail


def test_run_suite_small_grid_passes():
    grid = ver.Grid(alphas=(0.0, 0.5), bs=(0.0, 1.0), ms=(1.0,))
    reports = ver.run_suite(grid)
    assert reports and all(r.passed for r in reports), [r for r in reports if not r.passed]


def test_grid_skips_reduction_points_with_large_b():
    pts = ver.Grid(bs=(0.5, 1.0)).points()
    assert not any(
        q.cls.family is Family.BOUND_BY_M_OVER_N and q.kind.is_convex and q.cls.b > 0.5 for q in pts
    )


def test_doubling_samples_keeps_verdicts():
    grid = ver.Grid(alphas=(0.25,), bs=(0.5,), ms=(2.0,))
    for q in grid.points():
        a = [r.passed for r in ver.check_scans(q, 4096)]
        b = [r.passed for r in ver.check_scans(q, 8192)]
        assert a == b


def test_named_suite_rejects_unknown():
    with pytest.raises(DomainError):
        ver.run_named_suite("everything")


def test_one_sided_reports():
    assert ver.below("x", 0.1, 0.2).passed
    assert not ver.below("x", 0.2, 0.2).passed
    assert ver.at_most("x", 0.2, 0.2).passed
    assert not ver.at_most("x", 0.3, 0.2).passed
