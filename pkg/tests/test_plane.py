import numpy as np
import pytest

from unitalforge import planar
from unitalforge.errors import AxiomViolation, EqualPoints, FamilyMismatch
from unitalforge.plane import Gamma, Shift, ShiftPlane, Sigma, sigma_compose, verify_collineation


def test_point_line_counts(plane_q3):
    assert plane_q3.n_points == 91 == plane_q3.n_lines   # q^4 + q^2 + 1 at q = 3


def test_incidence_cases(plane_q3):
    P = plane_q3
    f9 = P.ctx
    assert P.incident(P.infinity_id, P.at_infinity_id)
    assert P.incident(P.slope_id(4), P.at_infinity_id)
    assert not P.incident(P.affine_id(1, 1), P.at_infinity_id)
    # affine (0, f(a) - b) lies on L(a, b)
    for a in range(9):
        for b in range(9):
            y = int(f9.sub(int(P.f[a]), b))
            assert P.incident(P.affine_id(0, y), P.shifted_id(a, b))
    # verticals carry (a, y) and infinity; slope points only on L(a, .) lines
    for x in range(9):
        for y in range(9):
            assert P.incident(P.affine_id(x, y), P.vertical_id(x))
            assert not P.incident(P.affine_id(x, y), P.vertical_id((x + 1) % 9))
    assert P.incident(P.infinity_id, P.vertical_id(3))
    assert P.incident(P.slope_id(2), P.shifted_id(2, 5))
    assert not P.incident(P.slope_id(2), P.shifted_id(3, 5))


def test_points_on_line_sorted_size(plane_q3):
    for lid in range(plane_q3.n_lines):
        pts = plane_q3.points_on_line(lid)
        assert len(pts) == 10
        assert np.all(np.diff(pts) > 0)


def test_lines_through_point_duality(plane_q3):
    for pid in range(plane_q3.n_points):
        lns = plane_q3.lines_through_point(pid)
        assert len(lns) == 10
        for lid in lns:
            assert plane_q3.incident(pid, int(lid))


def test_line_through_cases(plane_q3):
    P = plane_q3
    assert P.line_through(P.infinity_id, P.slope_id(4)) == P.at_infinity_id
    assert P.line_through(P.slope_id(1), P.slope_id(2)) == P.at_infinity_id
    assert P.line_through(P.affine_id(4, 2), P.infinity_id) == P.vertical_id(4)
    assert P.line_through(P.affine_id(4, 2), P.affine_id(4, 7)) == P.vertical_id(4)
    lid = P.line_through(P.affine_id(2, 3), P.slope_id(5))
    assert P.incident(P.affine_id(2, 3), lid) and P.incident(P.slope_id(5), lid)
    lid = P.line_through(P.affine_id(1, 2), P.affine_id(3, 4))
    assert P.incident(P.affine_id(1, 2), lid) and P.incident(P.affine_id(3, 4), lid)
    with pytest.raises(EqualPoints):
        P.line_through(17, 17)


def test_line_through_exhaustive_agreement(plane_q3):
    # every point pair determines exactly the line that contains both
    P = plane_q3
    for p1 in range(0, P.n_points, 7):
        for p2 in range(p1 + 1, P.n_points, 5):
            lid = P.line_through(p1, p2)
            assert P.incident(p1, lid) and P.incident(p2, lid)


def test_verify_projective_plane_q3(plane_q3):
    rep = plane_q3.verify_projective_plane()
    assert rep.passed and rep.points == 91 and rep.lines == 91


def test_verify_projective_plane_sampled(plane_cm81):
    rep = plane_cm81.verify_projective_plane(mode="sampled", seed=1, trials=300)
    assert rep.passed and rep.points == 6643


def test_nonplanar_plane_rejected(s9):
    cube = planar.custom(s9, [(3, 1)])
    with pytest.raises(AxiomViolation):
        ShiftPlane(cube).verify_projective_plane()


# -- collineations ------------------------------------------------------------


def test_shift_identity_and_action(plane_q3):
    P = plane_q3
    pts = P.point_ids()
    ident = Shift(P, 0, 0)
    assert np.all(np.asarray(ident.apply_point(pts)) == pts)
    g = Shift(P, 4, 7)
    assert verify_collineation(P, g)
    # point map: affine translate, slope shifts by -u, infinity fixed
    assert g.apply_point(P.affine_id(1, 2)) == P.affine_id(P.ctx.add(1, 4),
                                                           P.ctx.add(2, 7))
    assert g.apply_point(P.slope_id(3)) == P.slope_id(P.ctx.sub(3, 4))
    assert g.apply_point(P.infinity_id) == P.infinity_id


def test_all_shifts_are_collineations(plane_q3):
    for u in range(9):
        for v in range(9):
            assert verify_collineation(plane_q3, Shift(plane_q3, u, v),
                                       mode="sampled", trials=40, seed=u * 9 + v)


def test_gamma_slope_map(plane_q3):
    P, f9 = plane_q3, plane_q3.ctx
    g = Gamma(P, 5, 1)
    assert verify_collineation(P, g)
    assert g.apply_point(P.slope_id(2)) == P.slope_id(int(f9.frobenius(f9.mul(5, 2), 1)))
    g0 = Gamma(P, 5, 0)
    assert g0.apply_point(P.slope_id(2)) == P.slope_id(f9.mul(5, 2))


def test_gamma_needs_power_map(s729):
    P = ShiftPlane(planar.ganley(s729))
    with pytest.raises(FamilyMismatch):
        Gamma(P, 1, 0)


def test_sigma_needs_do(plane_cm81):
    with pytest.raises(FamilyMismatch):
        Sigma(plane_cm81, 0, 0, 1)


def test_sigma_is_collineation(plane_q3):
    g = Sigma(plane_q3, 2, 3, 4)
    assert verify_collineation(plane_q3, g)


def test_sigma_vertical_and_slope_maps(plane_q3):
    P, f9 = plane_q3, plane_q3.ctx
    g = Sigma(P, 2, 3, 4)
    assert g.apply_line(P.vertical_id(1)) == P.vertical_id(f9.add(1, 2))
    assert g.apply_point(P.slope_id(1)) == P.slope_id(f9.add(f9.sub(1, 2), 4))
    assert g.apply_point(P.infinity_id) == P.infinity_id


def test_sigma_compose_identity(plane_q3):
    g = Sigma(plane_q3, 2, 3, 4)
    ident = Sigma(plane_q3, 0, 0, 0)
    for c in (sigma_compose(g, ident), sigma_compose(ident, g)):
        assert (c.u, c.v, c.w) == (g.u, g.v, g.w)


def test_sigma_shift_subgroup_closed_and_abelian(plane_q3):
    # w = 0 elements compose by adding parameters, in either order
    for u1 in range(9):
        for v1 in range(9):
            g1 = Sigma(plane_q3, u1, v1, 0)
            g2 = Sigma(plane_q3, (2 * u1 + 1) % 9, (v1 + 3) % 9, 0)
            c12, c21 = sigma_compose(g1, g2), sigma_compose(g2, g1)
            assert c12.w == 0
            assert (c12.u, c12.v, c12.w) == (c21.u, c21.v, c21.w)


def test_sigma_commutator_middle_parameter(plane_q3):
    gw = Sigma(plane_q3, 0, 0, 1)
    gu = Sigma(plane_q3, 2, 0, 0)
    c1, c2 = sigma_compose(gw, gu), sigma_compose(gu, gw)
    assert (c1.u, c1.w) == (c2.u, c2.w)
    assert c1.v != c2.v                              # -2w*u does not vanish


def test_sigma_group_action_random(plane_q3, plane_q5):
    rng = np.random.default_rng(0)
    for plane in (plane_q3, plane_q5):
        N = plane.N
        for _ in range(5000):
            u1, v1, w1, u2, v2, w2 = (int(z) for z in rng.integers(0, N, 6))
            g1, g2 = Sigma(plane, u1, v1, w1), Sigma(plane, u2, v2, w2)
            g12 = sigma_compose(g1, g2)
            pid = int(rng.integers(0, plane.n_points))
            assert int(g12.apply_point(pid)) == int(g1.apply_point(int(g2.apply_point(pid))))
            lid = int(rng.integers(0, plane.n_lines))
            assert int(g12.apply_line(lid)) == int(g1.apply_line(int(g2.apply_line(lid))))


def test_sigma_family_distinct(plane_q3):
    # q^6 parameter triples give q^6 distinct collineations
    images = set()
    for u in range(9):
        for v in range(9):
            for w in range(9):
                g = Sigma(plane_q3, u, v, w)
                images.add((int(g.apply_point(plane_q3.affine_id(0, 0))),
                            int(g.apply_point(plane_q3.slope_id(0)))))
    assert len(images) == 729


def test_elation_fixes_axis_pointwise(plane_q3):
    g = Sigma(plane_q3, 0, 0, 5)
    axis = plane_q3.points_on_line(plane_q3.vertical_id(0))
    assert np.all(np.asarray(g.apply_point(axis)) == axis)
    assert g.apply_point(plane_q3.infinity_id) == plane_q3.infinity_id


def test_broken_map_rejected(plane_q3):
    # (x, y) -> (x, y^3) with all lines fixed is not incidence-preserving
    f9 = plane_q3.ctx

    class Broken:
        def apply_point(self, pid):
            arr = np.atleast_1d(np.asarray(pid)).copy()
            aff = arr < 81
            arr[aff] = (arr[aff] // 9) * 9 + np.asarray(f9.frobenius(arr[aff] % 9, 1))
            return arr if np.ndim(pid) else int(arr[0])

        def apply_line(self, lid):
            return lid

    assert not verify_collineation(plane_q3, Broken())
