import math

import pytest

from radii import equations as eq
from radii.model import (
    ClassSpec,
    DomainError,
    Family,
    MultipleRoots,
    NoRoot,
    NonConvergence,
    RadiusKind,
    RadiusQuery,
)
from radii.solver import (
    Bracket,
    RadicalId,
    bracket_root,
    closed_form_radical,
    radical_query,
    refine,
    scan_points,
    solve_radius,
)

N, M, MN, C = Family.BOUND_BY_N, Family.BOUND_BY_M, Family.BOUND_BY_M_OVER_N, Family.CARATHEODORY


def solve(family, b, kind, m=None, **kw):
    return solve_radius(RadiusQuery(ClassSpec(family, b, m), kind, **kw))


def test_scan_grid_shape():
    pts = scan_points()
    assert len(pts) == 64
    assert pts[0] == 1e-12 and pts[-1] == 1 - 1e-12
    assert all(a < b for a, b in zip(pts, pts[1:]))


def test_bracket_contains_known_roots():
    br = bracket_root(lambda r: eq.g_starlike_bound_n(r, 0.0, 1.0))
    assert br.lo < 0.164878 < br.hi
    assert br.g_lo > 0 > br.g_hi
    br = bracket_root(lambda r: eq.g_convex_bound_n(r, 0.5, 0.0))
    assert br.lo < 0.125429 < br.hi


def test_bracket_errors():
    with pytest.raises(NoRoot):
        bracket_root(lambda r: 1.0)
    with pytest.raises(MultipleRoots):
        bracket_root(lambda r: (r - 0.1) * (r - 0.6))


def test_refine_linear_exact():
    res = refine(lambda r: 0.5 - r, Bracket(0.0, 1.0, 0.5, -0.5), 1e-12)
    assert res.radius == 0.5


def test_refine_hits_tolerance():
    g = lambda r: eq.g_starlike_bound_n(r, 0.5, 0.0)
    res = refine(g, bracket_root(g), 1e-12)
    assert res.radius == pytest.approx(1 - 0.5 ** (1 / 3), abs=1e-12)
    assert abs(res.residual) <= 1e-12
    res = solve(N, 0.0, RadiusKind.starlike(0.0))
    assert res.radius == pytest.approx(0.253571, abs=1e-5)


def test_refine_nonconvergence():
    g = lambda r: eq.g_starlike_bound_n(r, 0.0, 1.0)
    with pytest.raises(NonConvergence):
        refine(g, bracket_root(g), 1e-12, max_iter=2)


def test_refine_stays_within_iteration_budget():
    # bisection fallback alone would need ~40 steps from the scan bracket
    for family, b, m in [(N, 1.0, None), (M, 0.5, 2.0), (MN, 0.2, 0.5)]:
        for alpha in (0.0, 0.5, 0.9):
            res = solve(family, b, RadiusKind.starlike(alpha), m)
            assert res.iterations <= 50


def test_dispatch_named_kinds():
    assert solve(N, 1.0, RadiusKind.parabolic()).radius == pytest.approx(0.120385, abs=1e-5)
    assert solve(N, 1.0, RadiusKind.ucv()).radius == pytest.approx(0.064723, abs=1e-5)
    assert solve(N, 1.0, RadiusKind.parabolic()) == solve(N, 1.0, RadiusKind.starlike(0.5))
    assert solve(N, 1.0, RadiusKind.ucv()) == solve(N, 1.0, RadiusKind.convex(0.5))


def test_convex_m_over_n_reduction():
    red = solve(MN, 0.25, RadiusKind.convex(0.0), 1.0)
    direct = solve(M, 0.5, RadiusKind.starlike(0.0), 1.0)
    assert red.radius == direct.radius
    # mpmath root of sum n (n - a) (M/n) r^(n-1) with |a_2| = 2b
    assert red.radius == pytest.approx(0.29289321881345248, abs=1e-12)
    with pytest.raises(DomainError):
        solve(MN, 0.75, RadiusKind.convex(0.0), 1.0)


def test_convex_m_mpmath_root():
    assert solve(M, 0.5, RadiusKind.convex(0.0), 1.0).radius == pytest.approx(
        0.16487765151863349, abs=1e-12
    )


def test_m_over_n_mpmath_roots():
    assert solve(MN, 0.5, RadiusKind.starlike(0.0), 1.0).radius == pytest.approx(
        0.38196601125010515, abs=1e-12
    )
    assert solve(MN, 0.5, RadiusKind.starlike(0.5), 1.0).radius == pytest.approx(
        0.27461988569303406, abs=1e-12
    )


def test_caratheodory_dispatch():
    res = solve(C, 0.0, RadiusKind.positive_real(0.0), 1.0)
    assert res.radius == 0.5 and res.iterations == 0
    assert res.residual == pytest.approx(0.0, abs=1e-15)


def test_convex_m_remark_identity():
    for m in (0.5, 1.0, 2.0):
        r = solve(M, m / 2, RadiusKind.convex(0.0), m).radius
        assert abs((1 + 1 / m) * (1 - r) ** 3 - (1 + r)) < 1e-12


@pytest.mark.parametrize("rid, value", [
    (RadicalId.STARLIKE_N_ALPHA0, 0.164878),
    (RadicalId.STARLIKE_N_ALPHA_HALF, 0.120385),
    (RadicalId.STARLIKE_N_A2_ZERO_ALPHA_HALF, 0.206299),
])
def test_radicals(rid, value):
    assert closed_form_radical(rid) == pytest.approx(value, abs=1e-6)
    assert closed_form_radical(rid) == pytest.approx(solve_radius(radical_query(rid)).radius, abs=1e-12)


def test_bounded_univalence_radical():
    assert closed_form_radical(RadicalId.BOUNDED_UNIVALENCE, 1.0) == pytest.approx(1 - 1 / math.sqrt(2))
    with pytest.raises(DomainError):
        closed_form_radical(RadicalId.BOUNDED_UNIVALENCE)


def test_deterministic():
    q = RadiusQuery(ClassSpec(MN, 0.3, 1.7), RadiusKind.starlike(0.35))
    assert solve_radius(q) == solve_radius(q)
