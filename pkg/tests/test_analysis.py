import numpy as np
import pytest

from unitalforge import analysis as an, gf, planar, unital as un
from unitalforge.errors import HypothesisUnmet, WitnessCheckFailed, ZeroBeta
from unitalforge.plane import ShiftPlane, Sigma, sigma_compose

# frozen regression values (first verified computation)
Q3_PARABOLIC_ONAN = 324
Q3_CLASSICAL_ONAN = 0
CM81_THROUGH_INF_CONFIGS = 64
CM81_THROUGH_INF_HITS = 288


# -- delta and circles --------------------------------------------------------

def test_derive_delta_identity_exhaustive(s9):
    theta = s9.choose_theta()
    delta = an.derive_delta(s9, theta)
    f9 = s9.ctx
    th0, th1 = (int(v) for v in s9.decompose(theta))
    for z in range(9):
        z0, z1 = (int(v) for v in s9.decompose(z))
        assert int(s9.trace(f9.mul(delta, z))) == int(
            f9.sub(f9.mul(th1, z0), f9.mul(th0, z1)))


def test_derive_delta_unique(s9):
    theta = s9.choose_theta()
    delta = an.derive_delta(s9, theta)
    f9 = s9.ctx
    th0, th1 = (int(v) for v in s9.decompose(theta))
    solutions = []
    for cand in range(9):
        if all(int(s9.trace(f9.mul(cand, z)))
               == int(f9.sub(f9.mul(th1, int(s9.x0_of[z])),
                             f9.mul(th0, int(s9.x1_of[z])))) for z in range(9)):
            solutions.append(cand)
    assert solutions == [delta]


def test_derive_delta_for_theta_xi(s9):
    # theta = xi means theta0 = 0, theta1 = 1: Tr(delta) = 1, Tr(delta*xi) = 0
    delta = an.derive_delta(s9, s9.xi)
    assert int(s9.trace(delta)) == 1
    assert int(s9.trace(s9.ctx.mul(delta, s9.xi))) == 0


def test_circle_size_and_membership(unital_q3):
    c = an.circle(unital_q3, 0, 1)
    assert len(c.members) == 4
    phi = un.phi_table(unital_q3.plane, unital_q3.theta)
    assert all(int(phi[m]) == 1 for m in c.members)


def test_circle_rejects_zero_beta(unital_q3):
    with pytest.raises(ZeroBeta):
        an.circle(unital_q3, 0, 0)


def test_circles_partition(unital_q3):
    plane = unital_q3.plane
    f9 = plane.ctx
    for a in (0, 3, 7):
        union = set()
        for beta in plane.split.sub_elements[1:]:
            union.update(an.circle(unital_q3, a, int(beta)).members)
        assert union == set(range(9)) - {int(f9.neg(a))}


def test_block_projects_to_circle(unital_q3):
    # blocks meeting the vertical block over u project to C(a, phi(u+a))
    plane, theta = unital_q3.plane, unital_q3.theta
    f9 = plane.ctx
    phi = un.phi_table(plane, theta)
    a, u = 2, 5
    beta = int(phi[f9.add(u, a)])
    members = an.circle(unital_q3, a, beta).members
    # pick the block through (u, t*theta) with first index a: b = f(u+a) - t*theta
    t0 = int(un.parabolic_y_values(plane, theta)[1])
    b = int(f9.sub(int(plane.f[f9.add(u, a)]), t0))
    sec = unital_q3.line_section(plane.shifted_id(a, b))
    firsts = sorted(set(int(p) // 9 for p in sec if p < 81))
    assert firsts == sorted(members)


def test_circle_design_q3(unital_q3):
    rep = an.verify_circle_design(unital_q3)
    assert rep.passed
    assert rep.circle_count == 18 and rep.circle_size == 4 and rep.lambda_value == 3


def test_circle_distinctness_witness(unital_q3):
    c0 = an.circle(unital_q3, 0, 1)
    for a in range(1, 9):
        assert an.circle(unital_q3, a, 1).members != c0.members


# -- Wilbrink ----------------------------------------------------------------

def test_infinity_is_strong_vertex(unital_q3):
    rep = an.wilbrink_vertex_check(unital_q3, unital_q3.plane.infinity_id)
    assert rep.strong and rep.satisfied == rep.total


def test_no_affine_strong_vertex_q3(unital_q3):
    idx = an.DesignIndex(unital_q3)
    for pid in unital_q3.points:
        if int(pid) == unital_q3.plane.infinity_id:
            continue
        rep = an.wilbrink_vertex_check(unital_q3, int(pid), index=idx)
        assert not rep.strong
        assert rep.witness is not None


def test_classical_unital_all_points_strong(classical_q3):
    # the classical comparison object is strong at every point
    idx = an.DesignIndex(classical_q3)
    for pid in classical_q3.points:
        assert an.wilbrink_vertex_check(classical_q3, int(pid), index=idx).strong


def test_wilbrink_ratio_mode(unital_q3):
    pid = int(unital_q3.points[0])
    rep = an.wilbrink_vertex_check(unital_q3, pid, strong=False)
    assert rep.total > 0 and 0 < rep.satisfied < rep.total


# -- O'Nan configurations -------------------------------------------------------

def test_no_config_through_infinity_square(unital_q3, unital_q5):
    for u in (unital_q3, unital_q5):
        cfgs, hits = an.find_onan_through_infinity(u)
        assert cfgs == [] and hits == []


def test_configs_through_infinity_cm81(unital_cm81):
    cfgs, hits = an.find_onan_through_infinity(unital_cm81)
    assert len(cfgs) == CM81_THROUGH_INF_CONFIGS
    assert len(hits) == CM81_THROUGH_INF_HITS
    inf = unital_cm81.plane.infinity_id
    for cfg in cfgs[:8]:
        assert inf in cfg.points
        assert an.onan_from_blocks(unital_cm81, cfg.blocks) == cfg


def test_exhaustive_counts_q3(unital_q3, classical_q3):
    res_u = an.find_onan_exhaustive(unital_q3)
    res_c = an.find_onan_exhaustive(classical_q3)
    assert res_u.complete and res_c.complete
    assert res_u.count == Q3_PARABOLIC_ONAN
    assert res_c.count == Q3_CLASSICAL_ONAN
    for cfg in res_u.configs[:10]:
        assert an.onan_from_blocks(unital_q3, cfg.blocks) == cfg


def test_exhaustive_budget_flag(unital_q3):
    res = an.find_onan_exhaustive(unital_q3, budget=50)
    assert not res.complete and res.examined == 50


def test_explicit_construction_q5(unital_q5):
    cfg = an.construct_onan_explicit(unital_q5)
    assert an.onan_from_blocks(unital_q5, cfg.blocks) == cfg
    assert unital_q5.plane.infinity_id not in cfg.points


def test_explicit_witness_in_exhaustive_q5(unital_q5):
    cfg = an.construct_onan_explicit(unital_q5)
    res = an.find_onan_exhaustive(unital_q5, budget=2_000_000)
    assert res.complete
    assert any(c.blocks == cfg.blocks for c in res.configs)


def test_explicit_construction_char3_obstruction(unital_q3, s729):
    # in characteristic 3 the template ratio t_u/t_v = -a_w/a_v must land in
    # F_q* \ {1, -1}, which is empty whenever the template subfield meets F_q
    # only in F_3: provably no admissible pair exists (see ledger)
    with pytest.raises(WitnessCheckFailed):
        an.construct_onan_explicit(unital_q3)
    plane = ShiftPlane(planar.albert(s729, 2))
    ua = un.build_parabolic_unital(plane, s729.choose_theta())
    with pytest.raises(WitnessCheckFailed):
        an.construct_onan_explicit(ua)


def test_explicit_construction_rejects_cm(unital_cm81):
    with pytest.raises(HypothesisUnmet):
        an.construct_onan_explicit(unital_cm81)


# -- stabilizers ------------------------------------------------------------------

def test_sigma1_order_and_abelian(unital_q3):
    rep = an.sigma_stabilizer_report(unital_q3)
    assert rep.order == 27 and rep.is_abelian and rep.fixes_unital


def test_sigma2_order_and_nonabelian(polarity_q3):
    rep = an.sigma_stabilizer_report(polarity_q3)
    assert rep.order == 27 and not rep.is_abelian
    (p1, p2) = rep.commutator_witness
    plane = polarity_q3.plane
    g1, g2 = Sigma(plane, *p1), Sigma(plane, *p2)
    c12, c21 = sigma_compose(g1, g2), sigma_compose(g2, g1)
    assert (c12.u, c12.v, c12.w) != (c21.u, c21.v, c21.w)


def test_sigma_membership_examples(unital_q3):
    plane, theta = unital_q3.plane, unital_q3.theta
    assert Sigma(plane, 0, theta, 0).fixes_point_set(unital_q3.points)
    assert not Sigma(plane, 0, 1, 0).fixes_point_set(unital_q3.points)


def test_sigma_composition_law_exhaustive(plane_q3):
    res = an.verify_sigma_composition(plane_q3)
    assert res["pairs_checked"] == 729 ** 2
    assert res["biadditivity"] == "exhaustive"


def test_cm_shift_stabilizers(unital_cm81, plane_cm81):
    rep = an.shift_stabilizer_report(unital_cm81)
    assert rep.order == 3 ** 6 == 729
    upol = un.build_polarity_unital(plane_cm81, un.InvolutionSpec("frobq"))
    rep2 = an.shift_stabilizer_report(upol)
    assert rep2.order == 3 ** 4 == 81


def test_shift_stabilizer_q3(unital_q3):
    # tau(u, v) fixes the parabolic set iff v lies in theta*F_q: q^2 * q = 27
    rep = an.shift_stabilizer_report(unital_q3)
    assert rep.order == 27


# -- invariant profiles -------------------------------------------------------------

def test_profiles_distinguish(unital_q3, classical_q3):
    p1 = an.invariant_profile(unital_q3)
    p2 = an.invariant_profile(classical_q3)
    verdict, reasons = an.compare_profiles(p1, p2)
    assert verdict == "NON-ISOMORPHIC"
    assert p1.onan_total == Q3_PARABOLIC_ONAN and p2.onan_total == 0
    assert p1.strong_vertex_count == 1 and p2.strong_vertex_count == 28


def test_profile_invariant_under_collineation(unital_q3):
    from unitalforge.plane import Shift

    plane = unital_q3.plane
    img = np.sort(np.asarray(Shift(plane, 2, 0).apply_point(unital_q3.points)))
    moved = un.Unital(plane, img, unital_q3.provenance, theta=unital_q3.theta)
    p1 = an.invariant_profile(unital_q3)
    p2 = an.invariant_profile(moved)
    assert p1.design_fields() == p2.design_fields()


def test_profile_of_dual_matches(unital_q3):
    dual, _ = un.dual_unital(unital_q3)
    assert (an.invariant_profile(dual).design_fields()
            == an.invariant_profile(unital_q3).design_fields())


def test_profiles_inconclusive_on_self(unital_q3):
    p = an.invariant_profile(unital_q3)
    verdict, reasons = an.compare_profiles(p, p)
    assert verdict == "INCONCLUSIVE" and reasons == []
