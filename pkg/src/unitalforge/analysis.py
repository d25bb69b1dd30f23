"""Circle designs, Wilbrink vertices, O'Nan configurations, stabilizers.

These are the discriminating invariants of the unitals: the (q^2, q+1, q)
design carried by the first-coordinate projections of blocks, the strong
Wilbrink vertex set, the counts of O'Nan configurations (four blocks meeting
pairwise in six distinct points), and the orders/abelianness of the natural
stabilizer subgroups.  Two unitals whose profiles differ in any
design-intrinsic field are certified non-isomorphic as designs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .errors import (
    ElementDoesNotFix,
    HypothesisUnmet,
    SingularSystem,
    WitnessCheckFailed,
    ZeroBeta,
)
from .plane import Gamma, Shift, ShiftPlane, Sigma, sigma_compose
from .planar import polarization
from .unital import Unital, beta_of, parabolic_y_values, phi_table

__all__ = [
    "derive_delta",
    "Circle",
    "circle",
    "all_circles",
    "verify_circle_design",
    "DesignIndex",
    "wilbrink_vertex_check",
    "OnanConfig",
    "onan_from_blocks",
    "find_onan_through_infinity",
    "construct_onan_explicit",
    "find_onan_exhaustive",
    "SubgroupReport",
    "sigma_stabilizer_report",
    "verify_sigma_composition",
    "shift_stabilizer_report",
    "InvariantProfile",
    "invariant_profile",
    "compare_profiles",
]


# ----------------------------------------------------------------------
# Circles: first-coordinate projections of the secant blocks
# ----------------------------------------------------------------------


def derive_delta(split, theta: int) -> int:
    """The delta with Tr(delta * z) = theta_1 z_0 - theta_0 z_1 for all z.

    Solves the 2x2 system Tr(delta) = theta_1, Tr(delta*xi) = -theta_0 over
    F_q by Cramer's rule (the trace form on the basis (1, xi) is
    nondegenerate) and verifies the identity on all of F_{q^2} for q <= 27,
    on a seeded 10^4 sample otherwise.
    """
    ctx = split.ctx
    theta = ctx.index_of(theta)
    if theta == 0:
        raise ZeroBeta("theta must be nonzero")
    th0, th1 = (int(v) for v in split.decompose(theta))
    xi = split.xi
    t1 = int(split.trace(1))                       # Tr(1) = 2
    tx = int(split.trace(xi))                      # Tr(xi)
    txx = int(split.trace(ctx.mul(xi, xi)))        # Tr(xi^2)
    det = ctx.sub(ctx.mul(t1, txx), ctx.mul(tx, tx))
    if det == 0:
        raise SingularSystem("trace form degenerate: invalid split")
    rhs0, rhs1 = th1, int(ctx.neg(th0))
    inv_det = ctx.inv(int(det))
    d0 = ctx.mul(inv_det, ctx.sub(ctx.mul(rhs0, txx), ctx.mul(tx, rhs1)))
    d1 = ctx.mul(inv_det, ctx.sub(ctx.mul(t1, rhs1), ctx.mul(rhs0, tx)))
    delta = int(split.recompose(int(d0), int(d1)))
    # verify Tr(delta*z) = theta_1 z_0 - theta_0 z_1
    if split.sub_size <= 27:
        zs = np.arange(ctx.size, dtype=np.int64)
    else:
        zs = np.random.default_rng(0).integers(0, ctx.size, 10000)
    lhs = np.asarray(split.trace(ctx.mul(delta, zs)))
    z0, z1 = split.decompose(zs)
    rhs = np.asarray(ctx.sub(ctx.mul(th1, z0), ctx.mul(th0, z1)))
    if not np.array_equal(lhs, rhs):
        raise SingularSystem("derived delta fails the trace identity")
    return delta


@dataclass(frozen=True)
class Circle:
    """C(a, beta) = {x : phi(x+a) = beta}, the projection of a secant block."""

    a: int
    beta: int
    members: tuple
    delta: int


def circle(unital: Unital, a: int, beta: int) -> Circle:
    plane = unital.plane
    split, ctx = plane.split, plane.ctx
    a, beta = ctx.index_of(a), ctx.index_of(beta)
    if beta == 0 or not split.in_subfield(beta):
        raise ZeroBeta(f"beta must be a nonzero subfield element, got {beta}")
    phi = phi_table(plane, unital.theta)
    X = np.arange(plane.N, dtype=np.int64)
    members = np.flatnonzero(phi[np.asarray(ctx.add(X, a))] == beta)
    if len(members) != unital.q + 1:
        raise ZeroBeta(f"circle ({a}, {beta}) has {len(members)} members")
    return Circle(a, beta, tuple(int(m) for m in members),
                  derive_delta(split, unital.theta))


def all_circles(unital: Unital) -> list[Circle]:
    plane = unital.plane
    ctx, split = plane.ctx, plane.split
    phi = phi_table(plane, unital.theta)
    delta = derive_delta(split, unital.theta)
    X = np.arange(plane.N, dtype=np.int64)
    out = []
    for a in range(plane.N):
        shifted = phi[np.asarray(ctx.add(X, a))]
        for beta in split.sub_elements[1:]:
            members = np.flatnonzero(shifted == int(beta))
            out.append(Circle(a, int(beta),
                              tuple(int(m) for m in members), delta))
    return out


@dataclass
class CircleDesignReport:
    passed: bool
    circle_count: int
    circle_size: int
    lambda_value: int
    partition_ok: bool
    distinct_ok: bool


def verify_circle_design(unital: Unital) -> CircleDesignReport:
    """All circles distinct, q^3 - q^2 of them, each of size q+1, the
    beta-slices partition F_{q^2} minus one point, and every unordered pair
    of field elements lies in exactly q circles."""
    plane, q = unital.plane, unital.q
    ctx, split, N = plane.ctx, plane.split, plane.N
    phi = phi_table(plane, unital.theta)
    X = np.arange(N, dtype=np.int64)
    seen: dict[tuple, tuple] = {}
    pair_counts = np.zeros(N * N, dtype=np.int16)
    partition_ok = True
    size_ok = True
    for a in range(N):
        shifted = phi[np.asarray(ctx.add(X, a))]
        union: set[int] = set()
        for beta in split.sub_elements[1:]:
            members = np.flatnonzero(shifted == int(beta))
            if len(members) != q + 1:
                size_ok = False
            key = tuple(int(m) for m in members)
            if key in seen:
                return CircleDesignReport(False, len(seen), q + 1, q,
                                          False, False)
            seen[key] = (a, int(beta))
            union.update(key)
            ii, jj = np.triu_indices(len(members), k=1)
            np.add.at(pair_counts, members[ii] * N + members[jj], 1)
        missing = int(ctx.neg(a))
        if union != set(range(N)) - {missing}:
            partition_ok = False
    count_ok = len(seen) == q ** 3 - q ** 2
    ii, jj = np.triu_indices(N, k=1)
    lam_ok = bool(np.all(pair_counts[ii * N + jj] == q))
    passed = count_ok and size_ok and partition_ok and lam_ok
    return CircleDesignReport(passed, len(seen), q + 1, q, partition_ok, True)


# ----------------------------------------------------------------------
# Design index: fast block-level structure for Wilbrink / O'Nan work
# ----------------------------------------------------------------------


class DesignIndex:
    """Block-level lookup tables of a certified unital (intended q <= 9)."""

    def __init__(self, unital: Unital):
        self.unital = unital
        self.q = unital.q
        self.n = len(unital.points)
        rank = unital.point_rank
        self.block_lines = np.array([b.line_id for b in unital.blocks],
                                    dtype=np.int64)
        self.block_points = np.array(
            [np.sort(rank[np.asarray(b.points)]) for b in unital.blocks],
            dtype=np.int64)
        self.B = len(self.block_lines)

    @cached_property
    def blocks_by_point(self) -> np.ndarray:
        """(n, q^2) block indices through each point rank, ascending."""
        out = [[] for _ in range(self.n)]
        for bi, pts in enumerate(self.block_points):
            for r in pts:
                out[int(r)].append(bi)
        return np.array(out, dtype=np.int64)

    @cached_property
    def block_through_pair(self) -> np.ndarray:
        """(n, n) block index through each point-rank pair (-1 on diagonal)."""
        tbl = np.full((self.n, self.n), -1, dtype=np.int32)
        for bi, pts in enumerate(self.block_points):
            ii, jj = np.triu_indices(len(pts), k=1)
            tbl[pts[ii], pts[jj]] = bi
            tbl[pts[jj], pts[ii]] = bi
        return tbl

    @cached_property
    def meets(self) -> np.ndarray:
        """(B, B) boolean: blocks sharing a point."""
        m = np.zeros((self.B, self.B), dtype=bool)
        for blocks in self.blocks_by_point:
            m[np.ix_(blocks, blocks)] = True
        np.fill_diagonal(m, False)
        return m

    @cached_property
    def common_point(self) -> np.ndarray:
        """(B, B) the shared point rank of two meeting blocks, else -1."""
        cp = np.full((self.B, self.B), -1, dtype=np.int32)
        for r, blocks in enumerate(self.blocks_by_point):
            ii, jj = np.meshgrid(blocks, blocks, indexing="ij")
            cp[ii, jj] = r
        np.fill_diagonal(cp, -1)
        return cp


@dataclass
class WilbrinkReport:
    point_id: int
    strong: bool
    satisfied: int
    total: int
    witness: tuple | None = None     # (block line ID B, block line ID C, point ID w)


def wilbrink_vertex_check(unital: Unital, point_id: int, strong: bool = True,
                          index: DesignIndex | None = None) -> WilbrinkReport:
    """Vertex test: for blocks B (without v) and C (through v, meeting B)
    and points w on C off {v, B∩C}, some block B' != C through w must meet
    every block through v that meets B.

    strong=True short-circuits at the first failing (B, C, w) with the
    smallest-ID witness; strong=False counts satisfied/total over the full
    range.  Exactly q+1 blocks through v meet B (one per point of B, since
    two blocks share at most one point).
    """
    idx = index or DesignIndex(unital)
    v = int(unital.point_rank[point_id])
    if v < 0:
        raise ValueError(f"point {point_id} not in the unital")
    n_blocks = idx.B
    satisfied = 0
    total = 0
    v_blocks = set(int(b) for b in idx.blocks_by_point[v])
    for B in range(n_blocks):
        if B in v_blocks:
            continue
        through_v = np.unique(idx.block_through_pair[v, idx.block_points[B]])
        ok_blocks = idx.meets[:, through_v].all(axis=1)
        for C in through_v:
            z = int(idx.common_point[C, B])        # the point of B on C
            for w in idx.block_points[C]:
                w = int(w)
                if w == v or w == z:
                    continue
                total += 1
                cands = idx.blocks_by_point[w]
                found = int(ok_blocks[cands].sum()) - int(ok_blocks[C]) > 0
                if found:
                    satisfied += 1
                elif strong:
                    witness = (int(idx.block_lines[B]), int(idx.block_lines[C]),
                               int(unital.points[w]))
                    return WilbrinkReport(point_id, False, satisfied, total,
                                          witness)
    return WilbrinkReport(point_id, satisfied == total, satisfied, total)


# ----------------------------------------------------------------------
# O'Nan configurations
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class OnanConfig:
    """Four blocks pairwise meeting in six distinct points.

    Blocks are identified by the IDs of their carrier lines; each block
    contains exactly 3 of the 6 points, each point lies on exactly 2 of the
    4 blocks.  The invariant is machine-verified at construction.
    """

    blocks: tuple
    points: tuple


def onan_from_blocks(unital: Unital, line_ids) -> OnanConfig | None:
    """Assemble and verify a configuration from four candidate block lines;
    None when the incidence pattern fails."""
    line_ids = sorted(int(v) for v in line_ids)
    if len(set(line_ids)) != 4:
        return None
    sections = []
    for lid in line_ids:
        sec = unital.line_section(lid)
        if len(sec) != unital.q + 1:
            return None
        sections.append(set(int(p) for p in sec))
    pts = []
    for i in range(4):
        for j in range(i + 1, 4):
            common = sections[i] & sections[j]
            if len(common) != 1:
                return None
            pts.append(next(iter(common)))
    if len(set(pts)) != 6:
        return None
    for sec in sections:
        if len(sec & set(pts)) != 3:
            return None
    return OnanConfig(tuple(line_ids), tuple(sorted(set(pts))))


def find_onan_through_infinity(unital: Unital, max_configs: int = 64):
    """Search for configurations containing the infinity point.

    One exists iff circles C(a, beta) and C(0, beta') share >= 3 elements
    for some a != 0 (translation reduces the second circle's shift to 0).
    Returns (list of verified configs, list of raw circle-pair hits).
    """
    plane = unital.plane
    ctx, split, N, q = plane.ctx, plane.split, plane.N, unital.q
    theta = unital.theta
    phi = phi_table(plane, theta)
    X = np.arange(N, dtype=np.int64)
    nonzero_betas = [int(b) for b in split.sub_elements[1:]]
    base = {bp: np.flatnonzero(phi == bp) for bp in nonzero_betas}
    configs: list[OnanConfig] = []
    seen_blocks = set()
    hits = []
    # smallest b with beta(b) = beta, per beta (block representative)
    beta_all = np.asarray(beta_of(plane, theta, X))
    rep_b = {bp: int(np.flatnonzero(beta_all == bp)[0]) for bp in nonzero_betas}
    for a in range(1, N):
        shifted = phi[np.asarray(ctx.add(X, a))]
        for beta in nonzero_betas:
            members = np.flatnonzero(shifted == beta)
            for beta_p in nonzero_betas:
                common = np.intersect1d(members, base[beta_p], assume_unique=True)
                if len(common) < 3:
                    continue
                hits.append((a, beta, beta_p, len(common)))
                if len(configs) >= max_configs:
                    continue
                u, v, w = (int(c) for c in common[:3])
                b = rep_b[beta]
                # block through (u, f(u+a)-b) with first index 0
                d_p = ctx.sub(ctx.add(int(plane.f[u]), b), int(plane.f[ctx.add(u, a)]))
                lids = [plane.vertical_id(v), plane.vertical_id(w),
                        plane.shifted_id(a, b), plane.shifted_id(0, int(d_p))]
                cfg = onan_from_blocks(unital, lids)
                if cfg is not None and cfg.blocks not in seen_blocks:
                    seen_blocks.add(cfg.blocks)
                    configs.append(cfg)
    return configs, hits


def _omega_root(ctx) -> int | None:
    """A root of w^2 - w + 1 = 0, or None; in characteristic 3 this is -1."""
    if ctx.p == 3:
        return ctx.minus_one_index
    idx = np.arange(ctx.size, dtype=np.int64)
    vals = np.asarray(ctx.add(ctx.sub(ctx.mul(idx, idx), idx), 1))
    roots = np.flatnonzero(vals == 0)
    return int(roots[0]) if len(roots) else None


def construct_onan_explicit(unital: Unital, a_v: int | None = None,
                            a_w: int | None = None) -> OnanConfig:
    """Explicit configuration from the power-map template.

    For f = x^2 (k taken as 2n) or an Albert map x^(p^k+1), picks a_v, a_w
    in the subfield F_{p^gcd(2n,k)} with a_v != a_w, a_v != omega*a_w
    (omega a root of w^2 - w + 1), sets

        a_u = a_w(1-omega) + omega*a_v,
        t_u = 4 a_w (a_v - a_w) omega / theta,
        t_v = 4 a_v (a_v - a_w) / theta,      t_w = 0,

    requires t_u, t_v to land in F_q (membership of the template points in
    the point set), solves the linear conditions for x_u, x_v, x_w, checks
    both block-intersection conditions with the unhalved star product, and
    assembles the four blocks through (0, t_u*theta), (0, t_v*theta), (0,0).
    Raises WitnessCheckFailed when no admissible pair lands in F_q (this is
    provably the case in characteristic 3 whenever F_q meets the template
    subfield only in F_3).
    """
    plane = unital.plane
    spec, ctx, split = plane.spec, plane.ctx, plane.split
    if unital.theta is None:
        raise HypothesisUnmet("template applies to parabolic unitals")
    if spec.family == "square":
        k = 2 * split.sub_degree
    elif spec.family == "albert":
        k = spec.k
        if k % 2 != 0:
            raise HypothesisUnmet("template needs an even Albert exponent index")
    else:
        raise HypothesisUnmet(f"template covers square/albert, not {spec.family}")
    omega = _omega_root(ctx)
    if omega is None:
        raise HypothesisUnmet("no root of w^2 - w + 1 in this field")
    g = gcd(2 * split.sub_degree, k)
    sub_mask = np.asarray(ctx.frobenius(np.arange(ctx.size, dtype=np.int64), g)) == \
        np.arange(ctx.size)
    sub_elems = np.flatnonzero(sub_mask)
    if len(sub_elems) < 9:
        raise HypothesisUnmet(
            f"template subfield has {len(sub_elems)} < 9 elements")
    theta = unital.theta
    inv_theta = ctx.inv(theta)
    four = 4 % ctx.p
    cand_pairs = ([(int(a_v), int(a_w))] if a_v is not None and a_w is not None
                  else [(int(av), int(aw)) for av in sub_elems[1:]
                        for aw in sub_elems[1:]])
    for av, aw in cand_pairs:
        if av == aw or av == ctx.mul(omega, aw):
            continue
        diff = ctx.sub(av, aw)
        t_u = ctx.mul(ctx.mul(ctx.mul(four, aw), ctx.mul(int(diff), omega)), inv_theta)
        t_v = ctx.mul(ctx.mul(ctx.mul(four, av), int(diff)), inv_theta)
        if not (split.in_subfield(int(t_u)) and split.in_subfield(int(t_v))):
            continue
        if t_u == t_v or t_u == 0 or t_v == 0:
            continue
        cfg = _assemble_template(unital, k, omega, int(av), int(aw),
                                 int(t_u), int(t_v))
        if cfg is not None:
            return cfg
    raise WitnessCheckFailed(
        "no admissible (a_v, a_w) places the template points in the unital "
        f"(subfield size {len(sub_elems)}, q {split.sub_size})")


def _assemble_template(unital: Unital, k: int, omega: int, av: int, aw: int,
                       t_u: int, t_v: int) -> OnanConfig | None:
    plane = unital.plane
    spec, ctx, split = plane.spec, plane.ctx, plane.split
    theta = unital.theta
    one_minus_w = ctx.sub(1, omega)
    au = int(ctx.add(ctx.mul(aw, int(one_minus_w)), ctx.mul(omega, av)))
    if au in (0, av, aw):
        return None
    minus2 = ctx.neg(2 % ctx.p)
    xs = {"w": int(ctx.mul(minus2, au)),
          "u": int(ctx.mul(minus2, av)),
          "v": int(ctx.mul(minus2, aw))}
    avals = {"u": au, "v": av, "w": aw}
    tvals = {"u": t_u, "v": t_v, "w": 0}
    labels = ("u", "v", "w")
    # condition (a): x_k * a_i - x_k * a_j = (t_j - t_i) theta
    for kk in labels:
        i, j = [l for l in labels if l != kk]
        lhs = ctx.sub(int(polarization(spec, xs[kk], avals[i])),
                      int(polarization(spec, xs[kk], avals[j])))
        rhs = ctx.mul(int(ctx.sub(tvals[j], tvals[i])), theta)
        if int(lhs) != int(rhs):
            return None
    # condition (b): f(x_k + a_i) - f(a_i) in theta*F_q
    for kk in labels:
        for i in labels:
            if i == kk:
                continue
            val = ctx.sub(int(plane.f[ctx.add(xs[kk], avals[i])]),
                          int(plane.f[avals[i]]))
            if int(beta_of(plane, theta, int(val))) != 0:
                return None
    lids = [plane.vertical_id(0)]
    for l in labels:
        b = int(ctx.sub(int(plane.f[avals[l]]), ctx.mul(tvals[l], theta)))
        lids.append(plane.shifted_id(avals[l], b))
    return onan_from_blocks(unital, lids)


@dataclass
class OnanSearchResult:
    count: int
    configs: list
    complete: bool
    examined: int


def find_onan_exhaustive(unital: Unital, budget: int | None = None,
                         index: DesignIndex | None = None) -> OnanSearchResult:
    """All configurations, by extending pairs of meeting blocks (q <= 5
    intended).  Quadruples are deduplicated by their sorted block IDs; a
    budget on examined quadruples yields a flagged partial result."""
    idx = index or DesignIndex(unital)
    meets, cp = idx.meets, idx.common_point
    B = idx.B
    configs = []
    examined = 0
    for b1 in range(B):
        m1 = meets[b1]
        for b2 in range(b1 + 1, B):
            if not m1[b2]:
                continue
            p12 = cp[b1, b2]
            both = m1 & meets[b2]
            for b3 in np.flatnonzero(both[b2 + 1:]) + b2 + 1:
                p13, p23 = cp[b1, b3], cp[b2, b3]
                if p13 == p12 or p23 == p12 or p13 == p23:
                    continue
                trip = both & meets[b3]
                for b4 in np.flatnonzero(trip[b3 + 1:]) + b3 + 1:
                    examined += 1
                    if budget is not None and examined > budget:
                        return OnanSearchResult(len(configs), configs, False,
                                                examined - 1)
                    p14, p24, p34 = cp[b1, b4], cp[b2, b4], cp[b3, b4]
                    six = {int(p12), int(p13), int(p23), int(p14), int(p24),
                           int(p34)}
                    if len(six) != 6:
                        continue
                    lids = idx.block_lines[[b1, b2, b3, b4]]
                    cfg = onan_from_blocks(unital, lids)
                    if cfg is not None:
                        configs.append(cfg)
    return OnanSearchResult(len(configs), configs, True, examined)


# ----------------------------------------------------------------------
# Stabilizer subgroups
# ----------------------------------------------------------------------


@dataclass
class SubgroupReport:
    description: str
    order: int
    is_abelian: bool
    fixes_unital: bool
    commutator_witness: tuple | None = None


def _sigma_params_equal(g1: Sigma, g2: Sigma) -> bool:
    return (g1.u, g1.v, g1.w) == (g2.u, g2.v, g2.w)


def sigma_stabilizer_report(unital: Unital, check_fixing: bool = True) -> SubgroupReport:
    """The natural shear-translation stabilizer of the unital.

    Parabolic: {(u, v, 0) : v in theta*F_q}, expected abelian of order q^3.
    Polarity: {(u, v, u+conj(u)) : f(u+conj(u)) = -(v+conj(v))}, expected
    non-abelian of order q^3; the first non-commuting pair is recorded.
    """
    plane = unital.plane
    ctx, split, N = plane.ctx, plane.split, plane.N
    if unital.theta is not None:
        ys = parabolic_y_values(plane, unital.theta)
        params = [(u, int(v), 0) for u in range(N) for v in ys]
        desc = "shear stabilizer of the parabolic unital (w = 0, v in theta*F_q)"
    elif unital.kappa is not None:
        bar = unital.kappa.table(plane)
        tr = np.asarray(ctx.add(np.arange(N, dtype=np.int64), bar))
        by_val: dict[int, list[int]] = {}
        for v, t in enumerate(tr):
            by_val.setdefault(int(t), []).append(v)
        params = []
        for u in range(N):
            w = int(ctx.add(u, int(bar[u])))
            rhs = int(ctx.neg(int(plane.f[w])))
            for v in by_val.get(rhs, []):
                params.append((u, v, w))
        desc = "shear stabilizer of the polarity unital (w = u+conj(u))"
    else:
        raise ValueError("unital carries neither theta nor kappa provenance")
    elements = [Sigma(plane, *p) for p in params]
    if check_fixing:
        for g in elements:
            if not g.fixes_point_set(unital.points):
                raise ElementDoesNotFix(f"sigma{(g.u, g.v, g.w)} moves the unital")
    witness = None
    is_abelian = True
    if len(elements) <= 729:
        for i, g1 in enumerate(elements):
            for g2 in elements[i + 1:]:
                if not _sigma_params_equal(sigma_compose(g1, g2),
                                           sigma_compose(g2, g1)):
                    witness = ((g1.u, g1.v, g1.w), (g2.u, g2.v, g2.w))
                    is_abelian = False
                    break
            if witness:
                break
    else:
        rng = np.random.default_rng(0)
        for _ in range(2000):
            g1, g2 = (elements[int(i)] for i in rng.integers(0, len(elements), 2))
            if not _sigma_params_equal(sigma_compose(g1, g2), sigma_compose(g2, g1)):
                witness = ((g1.u, g1.v, g1.w), (g2.u, g2.v, g2.w))
                is_abelian = False
                break
    return SubgroupReport(desc, len(elements), is_abelian, True, witness)


def verify_sigma_composition(plane: ShiftPlane, chunk: int = 2048) -> dict:
    """Exhaustively verify the composition law over all parameter pairs.

    For each pair the composite parameters are compared against sequential
    application on the probe points (0,0) and slope(0), which recover
    (u, v, w) of any shear-translation.  Together with the exhaustively
    verified symmetry and biadditivity of the star table, probe agreement
    forces functional equality on every point of the plane.
    """
    ctx, N = plane.ctx, plane.N
    star = plane.spec.polarization_table    # star[w, x] = 2 w*x
    X = np.arange(N, dtype=np.int64)
    if not np.array_equal(star, star.T):
        raise AssertionError("star table is not symmetric")
    for w in range(N):
        row = star[w]
        lhs = row[np.asarray(ctx.add(X[:, None], X[None, :]))]
        rhs = np.asarray(ctx.add(row[X[:, None]], row[X[None, :]]))
        if not np.array_equal(lhs, rhs):
            raise AssertionError(f"star biadditivity fails at w={w}")
    n3 = N ** 3
    params = np.arange(n3, dtype=np.int64)
    u = params // (N * N)
    v = (params // N) % N
    w = params % N
    pairs_checked = 0
    for start in range(0, n3, chunk):
        s = slice(start, min(start + chunk, n3))
        u1, v1, w1 = u[s][:, None], v[s][:, None], w[s][:, None]
        u2, v2, w2 = u[None, :], v[None, :], w[None, :]
        # composite parameters per the composition law
        u3 = np.asarray(ctx.add(u2, u1))
        w3 = np.asarray(ctx.add(w2, w1))
        v3 = np.asarray(ctx.sub(ctx.add(v2, v1), star[w1, u2]))
        # affine probe (0,0): inner map sends it to (u2, -v2), the outer one
        # shears by star[w1, u2]; the composite sends it to (u3, -v3)
        y_seq = np.asarray(ctx.sub(ctx.add(np.broadcast_to(np.asarray(ctx.neg(v2)),
                                                           u3.shape), star[w1, u2]), v1))
        if not np.array_equal(y_seq, np.broadcast_to(np.asarray(ctx.neg(v3)), u3.shape)):
            raise AssertionError("composition law fails on the affine probe")
        # slope probe (0): inner (w2 - u2), outer adds (w1 - u1)
        s_mid = np.broadcast_to(np.asarray(ctx.sub(w2, u2)), u3.shape)
        s_seq = np.asarray(ctx.add(ctx.sub(s_mid, u1), w1))
        if not np.array_equal(s_seq, np.asarray(ctx.sub(w3, u3))):
            raise AssertionError("composition law fails on the slope probe")
        pairs_checked += u3.size
    return {"pairs_checked": pairs_checked, "biadditivity": "exhaustive",
            "symmetry": "exhaustive"}


def shift_stabilizer_report(unital: Unital) -> SubgroupReport:
    """Order of the translation subgroup fixing the unital setwise.

    Candidates are prefiltered by membership probes of a few image points,
    then checked by full set comparison.
    """
    plane = unital.plane
    ctx, N = plane.ctx, plane.N
    affine = unital.points[unital.points < N * N]
    xs, ys = affine // N, affine % N
    probes = affine[:3]
    mask = unital.point_mask
    A = np.arange(N, dtype=np.int64)
    uu, vv = np.meshgrid(A, A, indexing="ij")
    cand = np.ones((N, N), dtype=bool)
    for p in probes:
        px, py = int(p) // N, int(p) % N
        img = np.asarray(ctx.add(px, uu)) * N + np.asarray(ctx.add(py, vv))
        cand &= mask[img]
    fixing = []
    for ui, vi in zip(*np.nonzero(cand)):
        g = Shift(plane, int(ui), int(vi))
        if g.fixes_point_set(unital.points):
            fixing.append((int(ui), int(vi)))
    return SubgroupReport("translation stabilizer", len(fixing),
                          True, True, None)


# ----------------------------------------------------------------------
# Invariant profiles
# ----------------------------------------------------------------------


@dataclass
class InvariantProfile:
    point_count: int
    block_size: int
    block_count: int
    onan_total: int | None = None
    onan_point_histogram: tuple | None = None
    strong_vertex_count: int | None = None
    line_spectrum: tuple = ()        # embedding-level: ((size, lines), ...)

    def design_fields(self) -> dict:
        return {
            "point_count": self.point_count,
            "block_size": self.block_size,
            "block_count": self.block_count,
            "onan_total": self.onan_total,
            "onan_point_histogram": self.onan_point_histogram,
            "strong_vertex_count": self.strong_vertex_count,
        }


def invariant_profile(unital: Unital, with_onan: bool = True,
                      with_wilbrink: bool = True,
                      onan_budget: int | None = None) -> InvariantProfile:
    """Design parameters, O'Nan statistics, strong-vertex count, and the
    line intersection spectrum.  O'Nan and Wilbrink sweeps run only when
    requested (intended q <= 5)."""
    from .unital import line_intersection_counts

    q = unital.q
    counts = line_intersection_counts(unital)
    vals, mult = np.unique(counts, return_counts=True)
    spectrum = tuple((int(a), int(b)) for a, b in zip(vals, mult))
    profile = InvariantProfile(len(unital.points), q + 1, len(unital.blocks),
                               line_spectrum=spectrum)
    idx = DesignIndex(unital)
    if with_onan:
        result = find_onan_exhaustive(unital, budget=onan_budget, index=idx)
        per_point = np.zeros(len(unital.points), dtype=np.int64)
        for cfg in result.configs:
            per_point[unital.point_rank[np.asarray(cfg.points)]] += 1
        histo_vals, histo_mult = np.unique(per_point, return_counts=True)
        profile.onan_total = result.count if result.complete else None
        profile.onan_point_histogram = tuple(
            (int(a), int(b)) for a, b in zip(histo_vals, histo_mult))
    if with_wilbrink:
        strong = 0
        for pid in unital.points:
            rep = wilbrink_vertex_check(unital, int(pid), strong=True, index=idx)
            strong += rep.strong
        profile.strong_vertex_count = strong
    return profile


def compare_profiles(p1: InvariantProfile, p2: InvariantProfile):
    """(verdict, reasons): NON-ISOMORPHIC when a design-intrinsic field
    differs, INCONCLUSIVE otherwise."""
    reasons = []
    for key, v1 in p1.design_fields().items():
        v2 = p2.design_fields()[key]
        if v1 is not None and v2 is not None and v1 != v2:
            reasons.append(f"{key}: {v1} vs {v2}")
    return ("NON-ISOMORPHIC" if reasons else "INCONCLUSIVE"), reasons
