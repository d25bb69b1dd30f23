import numpy as np
import pytest

from unitalforge import gf, planar, unital as un
from unitalforge.errors import (
    ConditionBFailed,
    CountViolation,
    HypothesisFailed,
    NotInjective,
    ZeroTheta,
)
from unitalforge.plane import Gamma, Shift, ShiftPlane


# -- hypothesis and construction ---------------------------------------------

def test_hypothesis_holds_for_chosen_theta(plane_q3):
    ok, hist = un.check_parabolic_hypothesis(plane_q3, plane_q3.split.choose_theta())
    assert ok
    assert hist[0] == 1 and all(v == 4 for c, v in hist.items() if c != 0)


def test_hypothesis_fails_for_theta_one(plane_q3):
    # theta = 1 has square norm, so some fiber deviates from q+1
    ok, hist = un.check_parabolic_hypothesis(plane_q3, 1)
    assert not ok
    assert any(v not in (1, 4) for v in hist.values())


def test_hypothesis_rejects_zero(plane_q3):
    with pytest.raises(ZeroTheta):
        un.check_parabolic_hypothesis(plane_q3, 0)


def test_build_fails_on_bad_theta(plane_q3):
    with pytest.raises(HypothesisFailed):
        un.build_parabolic_unital(plane_q3, 1)


def test_unital_sizes(unital_q3, unital_q5, unital_cm81):
    assert len(unital_q3.points) == 28       # q^3 + 1, q = 3
    assert len(unital_q5.points) == 126
    assert len(unital_cm81.points) == 730
    assert unital_q3.plane.infinity_id in unital_q3.points
    # (0, 0) is the t = 0 point over x = 0
    assert 0 in unital_q3.points


def test_bh_hypothesis_theta_xi(s729):
    plane = ShiftPlane(planar.budaghyan_helleseth(s729, 2))
    ok, _ = un.check_parabolic_hypothesis(plane, s729.xi)
    assert ok


# -- general (data-driven) construction ----------------------------------------

def test_general_reduces_to_parabolic(plane_q3, unital_q3):
    ys = un.parabolic_y_values(plane_q3, unital_q3.theta)
    g_table = np.tile(ys, (9, 1))
    u = un.build_general_unital(plane_q3, g_table)
    assert np.array_equal(u.points, unital_q3.points)


def test_general_rejects_subfield_line(plane_q3):
    # g_x(t) = t is the theta = 1 case and violates the solution counts
    g_table = np.tile(np.sort(plane_q3.split.sub_elements), (9, 1))
    with pytest.raises(CountViolation):
        un.build_general_unital(plane_q3, g_table)


def test_general_accepts_shifted_values(plane_q3, unital_q3):
    # g_x(t) = t*theta + c is the translate of the parabolic set by (0, c)
    f9 = plane_q3.ctx
    ys = un.parabolic_y_values(plane_q3, unital_q3.theta)
    g_table = np.sort(np.asarray(f9.add(np.tile(ys, (9, 1)), 5)), axis=1)
    u = un.build_general_unital(plane_q3, g_table)
    rep = un.verify_unital_embedded(u)
    assert rep.passed
    translated = np.sort(np.asarray(Shift(plane_q3, 0, 5).apply_point(unital_q3.points)))
    assert np.array_equal(u.points, translated)


def test_general_rejects_noninjective(plane_q3):
    g_table = np.zeros((9, 3), dtype=np.int64)
    with pytest.raises(NotInjective):
        un.build_general_unital(plane_q3, g_table)


# -- certification ---------------------------------------------------------------

def test_embedded_q3(unital_q3):
    rep = un.verify_unital_embedded(unital_q3)
    assert rep.passed
    assert rep.secant_count == 63 and rep.tangent_count == 28
    assert rep.tangents_per_point_ok


def test_at_infinity_is_tangent_at_infinity(unital_q3):
    plane = unital_q3.plane
    sec = unital_q3.line_section(plane.at_infinity_id)
    assert list(sec) == [plane.infinity_id]


def test_verticals_are_secant(unital_q3):
    plane = unital_q3.plane
    for a in range(9):
        assert unital_q3.line_count(plane.vertical_id(a)) == 4


def test_tangency_characterization(unital_q3):
    plane, theta = unital_q3.plane, unital_q3.theta
    counts = un.line_intersection_counts(unital_q3)
    for a in range(9):
        for b in range(9):
            lid = plane.shifted_id(a, b)
            is_tangent = counts[lid] == 1
            assert is_tangent == (int(un.beta_of(plane, theta, b)) == 0)


def test_design_q3_q5(unital_q3, unital_q5):
    rep3 = un.verify_design(unital_q3)
    assert rep3.passed and rep3.point_count == 28 and rep3.block_count == 63
    assert rep3.pairs_covered == 28 * 27 // 2 == 378
    rep5 = un.verify_design(unital_q5)
    assert rep5.passed and rep5.point_count == 126 and rep5.block_count == 525


def test_block_sizes_and_replication(unital_q3):
    assert all(len(b.points) == 4 for b in unital_q3.blocks)
    rank_counts = np.zeros(28, dtype=int)
    for b in unital_q3.blocks:
        rank_counts[unital_q3.point_rank[np.asarray(b.points)]] += 1
    assert np.all(rank_counts == 9)          # replication number q^2


def test_line_count_matches_section(unital_cm81):
    plane = unital_cm81.plane
    rng = np.random.default_rng(0)
    for lid in rng.integers(0, plane.n_lines, 200):
        assert unital_cm81.line_count(int(lid)) == len(unital_cm81.line_section(int(lid)))


def test_design_sampled_mode(unital_q5):
    rep = un.verify_design(unital_q5, mode="sampled", seed=1, trials=2000)
    assert rep.passed


# -- polarities -------------------------------------------------------------------

def test_polarity_square_q3(plane_q3):
    rep = un.verify_polarity(plane_q3, un.InvolutionSpec("frobq"))
    assert rep.passed and rep.absolute_points == 28


def test_conjxi_involution_table(s9):
    kappa = un.InvolutionSpec("conjxi")
    plane = ShiftPlane(planar.square(s9))
    bar = kappa.table(plane)
    f9 = s9.ctx
    # x0 + x1 xi -> x0 - x1 xi, twice is the identity
    assert np.array_equal(bar[bar], np.arange(9))
    x0, x1 = s9.decompose(np.arange(9))
    assert np.array_equal(bar, np.asarray(s9.recompose(x0, f9.neg(x1))))


def test_conjxi_equals_frobq_on_canonical_split(plane_cm81):
    # with xi^q = -xi the coordinate conjugation IS the q-power map
    t1 = un.InvolutionSpec("frobq").table(plane_cm81)
    t2 = un.InvolutionSpec("conjxi").table(plane_cm81)
    assert np.array_equal(t1, t2)


def test_polarity_commutation_rejected_for_bh(s729):
    # the xi-term of the BH function breaks commutation with conjugation
    plane = ShiftPlane(planar.budaghyan_helleseth(s729, 2))
    with pytest.raises(ConditionBFailed):
        un.verify_polarity(plane, un.InvolutionSpec("frobq"))


def test_polarity_unital_fiber_at_zero(plane_q3, polarity_q3):
    # points (0, y) of the absolute set have y + conj(y) = f(0) = 0: q of them
    ys = [int(p) % 9 for p in polarity_q3.points
          if p < 81 and p // 9 == 0]
    assert len(ys) == 3
    split = plane_q3.split
    for y in ys:
        assert int(split.trace(y)) == 0


def test_polarity_unital_certifies(polarity_q3):
    assert len(polarity_q3.points) == 28
    assert un.verify_unital_embedded(polarity_q3).passed
    assert un.verify_design(polarity_q3).passed


def test_classical_baseline(classical_q3):
    assert len(classical_q3.points) == 28
    rep = un.verify_design(classical_q3)
    assert rep.passed and rep.block_count == 63


def test_cm_polarity(plane_cm81):
    rep = un.verify_polarity(plane_cm81, un.InvolutionSpec("frobq"))
    assert rep.passed and rep.absolute_points == 730


# -- duality, ovals, scaling orbits --------------------------------------------

def test_dual_switch_fixes_parabolic(unital_q3, unital_q5):
    for u in (unital_q3, unital_q5):
        dual, wit = un.dual_unital(u)
        assert np.array_equal(dual.points, u.points)
        assert wit["tangent_lines"] == len(u.points)
        # the switch is an involution: the dual of the dual is the original
        dual2, _ = un.dual_unital(dual)
        assert np.array_equal(dual2.points, u.points)


def test_tangent_lines_are_parabolic_lines(unital_q3):
    plane, theta = unital_q3.plane, unital_q3.theta
    tl = set(int(t) for t in un.tangent_line_ids(unital_q3))
    expected = {plane.at_infinity_id}
    for x in range(9):
        for y in un.parabolic_y_values(plane, theta):
            expected.add(plane.shifted_id(x, int(y)))
    assert tl == expected


def test_ovals_decomposition(unital_q3):
    ovals = un.ovals_decomposition(unital_q3)
    assert len(ovals) == 3 and all(len(o) == 10 for o in ovals)
    inf = unital_q3.plane.infinity_id
    for i in range(3):
        for j in range(i + 1, 3):
            assert set(map(int, ovals[i])) & set(map(int, ovals[j])) == {inf}
    union = set()
    for o in ovals:
        union.update(map(int, o))
    assert union == set(map(int, unital_q3.points))


def test_oval_meets_vertical_twice(unital_q3):
    plane = unital_q3.plane
    ovals = un.ovals_decomposition(unital_q3)
    mask = np.zeros(plane.n_points, dtype=bool)
    mask[ovals[1]] = True
    for a in range(9):
        pts = plane.points_on_line(plane.vertical_id(a))
        assert int(mask[pts].sum()) == 2


def test_gamma_orbit_single_class(plane_q3):
    split = plane_q3.split
    idx = np.arange(9)
    norms = np.asarray(split.norm(idx))
    thetas = [int(t) for t in idx if t and split.sub_eta(int(norms[t])) == -1]
    assert len(thetas) == 4
    classes = un.gamma_orbit_partition(plane_q3, thetas)
    assert classes == [sorted(thetas)]


def test_gamma_identity_fixes(unital_q3):
    g = Gamma(unital_q3.plane, 1, 0)
    assert g.fixes_point_set(unital_q3.points)


def test_shift_orbit_fixes_unital(unital_q3):
    plane, theta = unital_q3.plane, unital_q3.theta
    f9 = plane.ctx
    for s in plane.split.sub_elements:
        assert Shift(plane, 0, int(f9.mul(int(s), theta))).fixes_point_set(unital_q3.points)
    for u_ in range(9):
        assert Shift(plane, u_, 0).fixes_point_set(unital_q3.points)
    assert not Shift(plane, 0, 1).fixes_point_set(unital_q3.points)


# -- catalog instances at scale ---------------------------------------------------

def test_build_and_certify_q27_families(s729):
    # full line-sweep certification is still feasible at q = 27
    for make in (lambda: planar.albert(s729, 2), lambda: planar.ganley(s729)):
        plane = ShiftPlane(make())
        theta = s729.xi if make().family == "ganley" else s729.choose_theta()
        u = un.build_parabolic_unital(plane, theta)
        assert len(u.points) == 27 ** 3 + 1
        rep = un.verify_unital_embedded(u)
        assert rep.passed and rep.secant_count == 27 ** 4 - 27 ** 3 + 27 ** 2


def test_build_and_certify_zhou_pott_f5_6():
    # hypothesis check plus seeded sampled line certification at q = 125
    split = gf.split_new(gf.field_new(5, 6), 3)
    plane = ShiftPlane(planar.zhou_pott(split, 1, 1))
    ok, _ = un.check_parabolic_hypothesis(plane, split.xi)
    assert ok
    u = un.build_parabolic_unital(plane, split.xi)
    assert len(u.points) == 125 ** 3 + 1
    rep = un.verify_unital_embedded(u, mode="sampled", seed=0, trials=10_000)
    assert rep.passed and rep.mode == "sampled"


def test_build_and_certify_pw_f3_10():
    # the largest catalog instance: q = 243 over F_3^10
    split = gf.split_new(gf.field_new(3, 10), 5)
    plane = ShiftPlane(planar.penttila_williams(split))
    ok, _ = un.check_parabolic_hypothesis(plane, split.xi)
    assert ok
    u = un.build_parabolic_unital(plane, split.xi)
    assert len(u.points) == 243 ** 3 + 1
    rep = un.verify_unital_embedded(u, mode="sampled", seed=0, trials=10_000)
    assert rep.passed and rep.mode == "sampled"


# -- serialization ----------------------------------------------------------------

def test_unital_file_round_trip(unital_q3, tmp_path):
    path = tmp_path / "u.unital"
    un.write_unital_file(unital_q3, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "UNITAL v1"
    assert lines[1] == unital_q3.plane.ctx.descriptor()
    assert lines[2] == "square"
    again = un.read_unital_file(path)
    assert np.array_equal(again.points, unital_q3.points)
    assert again.theta == unital_q3.theta


def test_polarity_file_round_trip(polarity_q3, tmp_path):
    path = tmp_path / "pol.unital"
    un.write_unital_file(polarity_q3, path)
    again = un.read_unital_file(path)
    assert again.kappa is not None and again.kappa.kind == "frobq"
    assert np.array_equal(again.points, polarity_q3.points)


def test_certificate_schema_and_hash(unital_q3):
    cert = unital_q3.certificate()
    assert set(cert) >= {"field", "spec", "provenance", "checks", "hash"}
    assert cert["spec"] == "square"
    for chk in cert["checks"]:
        assert {"name", "mode", "status"} <= set(chk)
    # identical content hashes identically
    assert unital_q3.certificate()["hash"] == cert["hash"]
