"""Construction and certification of unitals embedded in shift planes.

A unital of order q in a plane of order q^2 is a set of q^3 + 1 points met
by every line in 1 or q+1 points; its blocks (the (q+1)-point line sections)
form a 2-(q^3+1, q+1, 1) design.  This module builds

  * the parabolic point sets {(x, t*theta)} + infinity, certified through
    the fiber-count histogram of theta_1 f_0 - theta_0 f_1,
  * general data-driven point sets {(x, g_x(t))} certified by solution
    counting,
  * absolute-point unitals of unitary polarities (x -> x^q or the xi-sign
    conjugation), including the classical comparison unital in the
    square-map plane,

plus the self-duality switch, oval decompositions and scaling-orbit
partitions used by the analysis layer.  Certification sweeps are direct
incidence counts, independent of the histogram shortcut that motivates the
construction, so each route checks the other.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    AbsoluteCountMismatch,
    ConditionAFailed,
    ConditionBFailed,
    ConditionCFailed,
    CountViolation,
    HypothesisFailed,
    IntersectionViolation,
    NotInjective,
    NotNormal,
    NotPolarity,
    OvalViolation,
    PairCoverageViolation,
    SwitchMismatch,
    ZeroTheta,
)
from .plane import Gamma, ShiftPlane

__all__ = [
    "Unital",
    "Block",
    "Check",
    "InvolutionSpec",
    "check_parabolic_hypothesis",
    "build_parabolic_unital",
    "build_general_unital",
    "verify_unital_embedded",
    "verify_design",
    "verify_polarity",
    "build_polarity_unital",
    "build_classical_baseline",
    "dual_unital",
    "tangent_line_ids",
    "ovals_decomposition",
    "gamma_orbit_partition",
    "write_unital_file",
    "read_unital_file",
]

_MASK_LIMIT = 1 << 24     # beyond this many plane points, fall back to sorted lookup


@dataclass
class Check:
    name: str
    mode: str
    status: str                      # "pass" | "fail"
    witness: object = None

    def as_dict(self):
        d = {"name": self.name, "mode": self.mode, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass(frozen=True, slots=True)
class Block:
    """One design block: the q+1 unital points on a secant line."""

    line_id: int
    points: tuple


class Unital:
    """A certified point set of size q^3 + 1 with derived blocks.

    `points` is the ascending array of canonical point IDs.  Blocks are
    identified by the ID of the secant line carrying them, which is stable
    across construction routes.
    """

    def __init__(self, plane: ShiftPlane, points: np.ndarray, provenance: str,
                 theta: int | None = None, kappa: "InvolutionSpec | None" = None):
        self.plane = plane
        self.points = np.sort(np.asarray(points, dtype=np.int64))
        self.provenance = provenance
        self.theta = theta
        self.kappa = kappa
        self.q = plane.split.sub_size
        self.checks: list[Check] = []
        if len(self.points) != self.q ** 3 + 1:
            raise ValueError(
                f"expected {self.q ** 3 + 1} points, got {len(self.points)}")

    # -- membership --

    @cached_property
    def point_mask(self) -> np.ndarray:
        if self.plane.n_points > _MASK_LIMIT:
            raise MemoryError("plane too large for a full point mask")
        mask = np.zeros(self.plane.n_points, dtype=bool)
        mask[self.points] = True
        return mask

    def contains(self, pids):
        if self.plane.n_points <= _MASK_LIMIT:
            return self.point_mask[pids]
        pos = np.clip(np.searchsorted(self.points, pids), 0, len(self.points) - 1)
        return self.points[pos] == pids

    @cached_property
    def point_rank(self) -> np.ndarray:
        rank = np.full(self.plane.n_points, -1, dtype=np.int64)
        rank[self.points] = np.arange(len(self.points))
        return rank

    @cached_property
    def y_mask(self) -> np.ndarray | None:
        """For parabolic sets the affine part is all x times a y-set; the
        mask over second coordinates answers membership in O(1)."""
        if self.theta is None:
            return None
        mask = np.zeros(self.plane.N, dtype=bool)
        mask[parabolic_y_values(self.plane, self.theta)] = True
        return mask

    @cached_property
    def shifted_counts_by_b(self) -> np.ndarray | None:
        """|L(a, b) ∩ U| for a parabolic set, which depends only on b.

        Substituting z = x + a turns the member count #{x : f(x+a) - b in
        the y-set} into #{z : f(z) in b + y-set}, so one f-value histogram
        shifted over the q admissible y values counts every graph line.
        """
        if self.theta is None:
            return None
        plane = self.plane
        ctx, N = plane.ctx, plane.N
        fhist = np.bincount(plane.f, minlength=N)
        counts = np.zeros(N, dtype=np.int64)
        b = np.arange(N, dtype=np.int64)
        for y in parabolic_y_values(plane, self.theta):
            counts += fhist[np.asarray(ctx.add(b, int(y)))]
        return counts

    # -- line sections --

    def line_count(self, lid: int) -> int:
        """|line ∩ U| by direct membership counting (O(1) for graph lines of
        parabolic sets through the per-b count table)."""
        plane, N = self.plane, self.plane.N
        lid = int(lid)
        if self.y_mask is not None:
            if lid == plane.at_infinity_id:
                return 1
            if lid >= N * N:
                return int(self.y_mask.sum()) + 1
            return int(self.shifted_counts_by_b[lid % N])
        pts = plane.points_on_line(lid)
        return int(np.count_nonzero(self.contains(pts)))

    def line_section(self, lid: int) -> np.ndarray:
        pts = self.plane.points_on_line(int(lid))
        return pts[np.asarray(self.contains(pts))]

    @cached_property
    def secant_line_ids(self) -> np.ndarray:
        """IDs of all lines meeting the point set in q+1 points."""
        counts = line_intersection_counts(self)
        return np.flatnonzero(counts == self.q + 1)

    @cached_property
    def blocks(self) -> list[Block]:
        return [Block(int(lid), tuple(int(p) for p in self.line_section(int(lid))))
                for lid in self.secant_line_ids]

    def record(self, check: Check):
        self.checks.append(check)

    def certificate(self, extra: dict | None = None) -> dict:
        body = {
            "field": self.plane.ctx.descriptor(),
            "spec": self.plane.spec.spec_string(),
            "provenance": self.provenance,
            "points": [int(p) for p in self.points],
            "checks": [c.as_dict() for c in self.checks],
        }
        if extra:
            body.update(extra)
        digest = hashlib.sha256(
            json.dumps(body, sort_keys=True, default=str).encode()).hexdigest()
        body["hash"] = digest
        body.pop("points")
        return body

    def __repr__(self):
        return (f"Unital({self.provenance}, q={self.q}, "
                f"|points|={len(self.points)}, checks={len(self.checks)})")


# ----------------------------------------------------------------------
# Parabolic construction {(x, t*theta)} + infinity
# ----------------------------------------------------------------------


def phi_table(plane: ShiftPlane, theta: int) -> np.ndarray:
    """phi(x) = theta_1 f_0(x) - theta_0 f_1(x) as a full table of F_q values."""
    split, ctx = plane.split, plane.ctx
    th0, th1 = (int(v) for v in split.decompose(theta))
    f0, f1 = split.decompose(plane.f)
    return np.asarray(ctx.sub(ctx.mul(th1, f0), ctx.mul(th0, f1)))


def beta_of(plane: ShiftPlane, theta: int, b) -> np.ndarray | int:
    """beta(b) = b_0 theta_1 - b_1 theta_0 (an F_q value; 0 iff b in theta*F_q)."""
    split, ctx = plane.split, plane.ctx
    th0, th1 = (int(v) for v in split.decompose(theta))
    b0, b1 = split.decompose(b)
    return ctx.sub(ctx.mul(th1, b0), ctx.mul(th0, b1))


def check_parabolic_hypothesis(plane: ShiftPlane, theta: int):
    """Fiber histogram of phi: value 0 hit once, every other value q+1 times.

    Returns (ok, histogram keyed by the F_q element index).
    """
    theta = plane.ctx.index_of(theta)
    if theta == 0:
        raise ZeroTheta("theta must be nonzero")
    split = plane.split
    phi = phi_table(plane, theta)
    counts = np.bincount(split.sub_rank[phi], minlength=split.sub_size)
    hist = {int(split.sub_elements[r]): int(c) for r, c in enumerate(counts)}
    zero_rank = int(split.sub_rank[0])
    ok = counts[zero_rank] == 1 and bool(
        np.all(np.delete(counts, zero_rank) == split.sub_size + 1))
    return ok, hist


def parabolic_y_values(plane: ShiftPlane, theta: int) -> np.ndarray:
    """The q admissible second coordinates {t*theta : t in F_q}, ascending."""
    split = plane.split
    return np.sort(np.asarray(plane.ctx.mul(split.sub_elements, theta)))


def build_parabolic_unital(plane: ShiftPlane, theta: int) -> Unital:
    """Point set {(x, t*theta) : x in F_{q^2}, t in F_q} with infinity."""
    theta = plane.ctx.index_of(theta)
    ok, hist = check_parabolic_hypothesis(plane, theta)
    if not ok:
        bad = {c: n for c, n in hist.items() if n not in (1, plane.split.sub_size + 1)}
        raise HypothesisFailed(f"fiber histogram violates {{1, q+1}}: {bad}")
    N = plane.N
    ys = parabolic_y_values(plane, theta)
    ids = (np.arange(N, dtype=np.int64)[:, None] * N + ys[None, :]).ravel()
    points = np.concatenate([ids, [plane.infinity_id]])
    u = Unital(plane, points, f"utheta:theta={theta}", theta=theta)
    u.record(Check("parabolic-hypothesis", "exhaustive", "pass"))
    return u


def build_general_unital(plane: ShiftPlane, g_table: np.ndarray) -> Unital:
    """Data-driven point set {(x, g_x(t))} certified by solution counting.

    g_table has shape (q^2, q): row x lists the q values g_x(t).  Each row
    must be injective.  For every (a, b) the number of pairs (x, t) with
    f(x+a) - b = g_x(t) must be 1 or q+1; the first offending pair raises.
    """
    ctx, N, q = plane.ctx, plane.N, plane.split.sub_size
    g_table = np.asarray(g_table, dtype=np.int64)
    if g_table.shape != (N, q):
        raise ValueError(f"expected table of shape ({N}, {q})")
    for x in range(N):
        if len(np.unique(g_table[x])) != q:
            raise NotInjective(f"g_{x} is not injective")
    member = np.zeros((N, N), dtype=bool)          # member[x, y] = y in g_x(F_q)
    member[np.repeat(np.arange(N), q), g_table.ravel()] = True
    X = np.arange(N, dtype=np.int64)
    for a in range(N):
        fs = plane.f[np.asarray(ctx.add(X, a))]
        for b in range(N):
            vals = np.asarray(ctx.sub(fs, b))
            count = int(member[X, vals].sum())
            if count not in (1, q + 1):
                raise CountViolation(a, b, count)
    ids = (np.arange(N, dtype=np.int64)[:, None] * N + g_table).ravel()
    points = np.concatenate([ids, [plane.infinity_id]])
    u = Unital(plane, points, "general", theta=None)
    u.record(Check("solution-counts", "exhaustive", "pass"))
    return u


# ----------------------------------------------------------------------
# Embedded / design certification
# ----------------------------------------------------------------------


def line_intersection_counts(unital: Unital) -> np.ndarray:
    """|line ∩ U| for every line ID, by direct incidence counting.

    Only for planes whose full point mask fits in memory; big parabolic
    instances go through the sampled verifier instead.
    """
    plane = unital.plane
    ctx, N = plane.ctx, plane.N
    mask = unital.point_mask
    counts = np.zeros(plane.n_lines, dtype=np.int64)
    X = np.arange(N, dtype=np.int64)
    affine_mask = mask[: N * N].reshape(N, N)
    for a in range(N):
        fs = plane.f[np.asarray(ctx.add(X, a))]
        # rows are b, columns x: member (x, f(x+a) - b)
        ys = np.asarray(ctx.sub(fs[None, :], X[:, None]))
        counts[a * N: (a + 1) * N] = affine_mask[X[None, :], ys].sum(axis=1)
    # slope point (a) on L(a, b) for every b
    slope_members = mask[N * N: N * N + N]
    counts[: N * N] += np.repeat(slope_members, N)
    counts[N * N: N * N + N] = affine_mask.sum(axis=1) + mask[plane.infinity_id]
    counts[plane.at_infinity_id] = mask[N * N:].sum()
    return counts


@dataclass
class EmbeddedReport:
    passed: bool
    mode: str
    secant_count: int
    tangent_count: int
    tangents_per_point_ok: bool
    lines_checked: int


def verify_unital_embedded(unital: Unital, mode: str = "exhaustive",
                           seed: int = 0, trials: int = 10000) -> EmbeddedReport:
    """Every line meets the point set in 1 or q+1 points; each unital point
    lies on exactly one tangent.

    Exhaustive mode sweeps all lines.  Sampled mode checks a deterministic
    seeded sample of at least `trials` lines covering all three kinds and
    the tangent pencils of a point sample.
    """
    plane, q = unital.plane, unital.q
    if mode == "exhaustive":
        counts = line_intersection_counts(unital)
        bad = np.flatnonzero((counts != 1) & (counts != q + 1))
        if len(bad):
            lid = int(bad[0])
            raise IntersectionViolation(lid, int(counts[lid]))
        tangent_ids = np.flatnonzero(counts == 1)
        per_point = np.zeros(plane.n_points, dtype=np.int64)
        for lid in tangent_ids:
            per_point[unital.line_section(int(lid))] += 1
        ok = bool(np.all(per_point[unital.points] == 1))
        report = EmbeddedReport(ok, mode, int((counts == q + 1).sum()),
                                int(len(tangent_ids)), ok, int(plane.n_lines))
        unital.record(Check("embedded-intersections", mode,
                            "pass" if report.passed else "fail"))
        return report
    # sampled: seeded choice of shifted lines plus every vertical and L_inf
    rng = np.random.default_rng(seed)
    N = plane.N
    shifted = np.unique(rng.integers(0, N * N, size=trials))
    n_vert = min(N, max(1, trials // 4))
    verts = N * N + np.sort(rng.choice(N, size=n_vert, replace=False))
    tangents = 0
    for lid in np.concatenate([shifted, verts, [plane.at_infinity_id]]):
        c = unital.line_count(int(lid))
        if c not in (1, q + 1):
            raise IntersectionViolation(int(lid), c)
        tangents += c == 1
    # tangent pencils of a point sample (each pencil costs O(N^2), so the
    # sample size adapts to the field size)
    n_pencil = max(1, min(50, 10 ** 9 // (N * N)))
    sample = rng.choice(unital.points, size=min(n_pencil, len(unital.points)),
                        replace=False)
    pencil_ok = all(_pencil_tangent_count(unital, int(pid)) == 1
                    for pid in sample)
    n_checked = int(len(shifted) + len(verts) + 1)
    report = EmbeddedReport(pencil_ok, "sampled", n_checked - tangents,
                            int(tangents), pencil_ok, n_checked)
    unital.record(Check("embedded-intersections", "sampled",
                        "pass" if pencil_ok else "fail",
                        witness={"seed": seed, "lines": n_checked,
                                 "pencils": int(len(sample))}))
    return report


def _pencil_tangent_count(unital: Unital, pid: int) -> int:
    """Tangent lines through one point, by counting over its full pencil."""
    plane, N = unital.plane, unital.plane.N
    ctx = plane.ctx
    if pid == plane.infinity_id:
        # pencil: all verticals plus the line at infinity
        count = sum(unital.line_count(plane.vertical_id(a)) == 1 for a in range(N))
        return count + (unital.line_count(plane.at_infinity_id) == 1)
    if pid >= N * N:
        raise ValueError("slope points do not lie on these unitals")
    x0, y0 = pid // N, pid % N
    a = np.arange(N, dtype=np.int64)
    b = np.asarray(ctx.sub(plane.f[np.asarray(ctx.add(np.int64(x0), a))],
                           np.int64(y0)))
    tangents = int(unital.line_count(plane.vertical_id(x0)) == 1)
    if unital.shifted_counts_by_b is not None:
        return tangents + int((unital.shifted_counts_by_b[b] == 1).sum())
    # generic fallback for small planes: count each pencil line directly
    member = unital.point_mask[: N * N].reshape(N, N)
    chunk = max(1, (1 << 22) // N)
    X = a
    for start in range(0, N, chunk):
        ac = a[start: start + chunk]
        vals = plane.f[np.asarray(ctx.add(X[:, None], ac[None, :]))]   # (N, C)
        ys = np.asarray(ctx.sub(vals, b[start: start + chunk][None, :]))
        counts = member[X[:, None], ys].sum(axis=0)
        tangents += int((counts == 1).sum())
    return int(tangents)


@dataclass
class DesignReport:
    passed: bool
    mode: str
    point_count: int
    block_count: int
    pairs_covered: int
    replication_ok: bool


def verify_design(unital: Unital, mode: str = "exhaustive",
                  seed: int = 0, trials: int = 20000) -> DesignReport:
    """Every unordered point pair lies in exactly one block; the block count
    is q^4 - q^3 + q^2 and every point sits in q^2 blocks."""
    q = unital.q
    blocks = unital.blocks
    n = len(unital.points)
    expected_blocks = q ** 4 - q ** 3 + q ** 2
    if len(blocks) != expected_blocks:
        raise PairCoverageViolation(("block-count",), len(blocks))
    rank = unital.point_rank
    if mode == "exhaustive":
        counts = np.zeros(n * n, dtype=np.int8)
        reps = np.zeros(n, dtype=np.int64)
        ii, jj = np.triu_indices(q + 1, k=1)
        for blk in blocks:
            r = np.sort(rank[np.asarray(blk.points)])
            reps[r] += 1
            np.add.at(counts, r[ii] * n + r[jj], 1)
        if counts.max() > 1:
            k = int(np.argmax(counts))
            pair = (int(unital.points[k // n]), int(unital.points[k % n]))
            raise PairCoverageViolation(pair, int(counts[k]))
        total = int(counts.sum())
        if total != n * (n - 1) // 2:
            raise PairCoverageViolation(("coverage-total",), total)
        replication_ok = bool(np.all(reps == q * q))
        report = DesignReport(replication_ok, mode, n, len(blocks), total,
                              replication_ok)
    else:
        rng = np.random.default_rng(seed)
        by_point: dict[int, list[int]] = {}
        for bi, blk in enumerate(blocks):
            for p in blk.points:
                by_point.setdefault(p, []).append(bi)
        for _ in range(trials):
            i, j = rng.integers(0, n, 2)
            if i == j:
                continue
            p1, p2 = int(unital.points[i]), int(unital.points[j])
            common = set(by_point[p1]) & set(by_point[p2])
            if len(common) != 1:
                raise PairCoverageViolation((p1, p2), len(common))
        report = DesignReport(True, "sampled", n, len(blocks), trials, True)
    unital.record(Check("design-pair-coverage", report.mode,
                        "pass" if report.passed else "fail"))
    return report


# ----------------------------------------------------------------------
# Polarities
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionSpec:
    """Additive involution used for the polarity: x -> x^q ("frobq"), or the
    xi-sign conjugation x0 + x1*xi -> x0 - x1*xi ("conjxi")."""

    kind: str

    def table(self, plane: ShiftPlane) -> np.ndarray:
        split, ctx = plane.split, plane.ctx
        idx = np.arange(ctx.size, dtype=np.int64)
        if self.kind == "frobq":
            return np.asarray(split.frobq)
        if self.kind == "conjxi":
            x0, x1 = split.decompose(idx)
            return np.asarray(split.recompose(x0, ctx.neg(x1)))
        raise ValueError(f"unknown involution kind {self.kind!r}")


@dataclass
class PolarityReport:
    passed: bool
    mode: str
    absolute_points: int
    incidences_checked: int


def _polarity_precheck(plane: ShiftPlane, kappa: InvolutionSpec) -> np.ndarray:
    """The three admissibility conditions; returns the involution table."""
    ctx, split = plane.ctx, plane.split
    bar = kappa.table(plane)
    idx = np.arange(ctx.size, dtype=np.int64)
    if not np.array_equal(bar[bar], idx):
        raise ConditionAFailed(f"{kappa.kind} is not an involution")
    if not np.array_equal(bar[plane.f], plane.f[bar]):
        raise ConditionBFailed(f"{kappa.kind} does not commute with the plane function")
    tr = np.asarray(ctx.add(idx, bar))             # y + conj(y)
    hist = np.bincount(tr, minlength=ctx.size)
    rhs = plane.f[tr]                              # f(x + conj(x))
    fibers = hist[rhs]
    if not np.all(fibers == split.sub_size):
        x = int(np.flatnonzero(fibers != split.sub_size)[0])
        raise ConditionCFailed(f"fiber count at x={x} is {int(fibers[x])}")
    return bar


def verify_polarity(plane: ShiftPlane, kappa: InvolutionSpec,
                    mode: str = "auto", seed: int = 0,
                    trials: int = 20000) -> PolarityReport:
    """rho: (x,y) <-> L(conj x, conj y), (a) <-> V(conj a), inf <-> L_inf.

    Checks the three admissibility conditions, rho^2 = id on all points,
    incidence reversal (exhaustive for q <= 9, seeded sample otherwise),
    and that the absolute points number exactly q^3 + 1.
    """
    N, q = plane.N, plane.split.sub_size
    bar = _polarity_precheck(plane, kappa)

    def rho_point(pid):                            # point -> line
        if pid == plane.infinity_id:
            return plane.at_infinity_id
        if pid >= N * N:
            return N * N + int(bar[pid - N * N])
        return int(bar[pid // N]) * N + int(bar[pid % N])

    def rho_line(lid):                             # line -> point
        if lid == plane.at_infinity_id:
            return plane.infinity_id
        if lid >= N * N:
            return N * N + int(bar[lid - N * N])
        return int(bar[lid // N]) * N + int(bar[lid % N])

    for pid in (0, N * N - 1, N * N, plane.infinity_id):
        if rho_line(rho_point(pid)) != pid:
            raise NotPolarity("correlation square is not the identity")
    idx = np.arange(N, dtype=np.int64)
    if not np.array_equal(bar[bar[idx]], idx):
        raise NotPolarity("correlation square is not the identity")
    if mode == "auto":
        mode = "exhaustive" if q <= 9 else "sampled"
    checked = 0
    if mode == "exhaustive":
        for lid in range(plane.n_lines):
            rp = rho_line(lid)
            for pid in plane.points_on_line(lid):
                if not plane.incident(rp, rho_point(int(pid))):
                    raise NotPolarity(f"incidence not reversed at ({int(pid)}, {lid})")
                checked += 1
    else:
        rng = np.random.default_rng(seed)
        for _ in range(trials):
            lid = int(rng.integers(0, plane.n_lines))
            pts = plane.points_on_line(lid)
            pid = int(pts[rng.integers(0, len(pts))])
            if not plane.incident(rho_line(lid), rho_point(pid)):
                raise NotPolarity(f"incidence not reversed at ({pid}, {lid})")
            checked += 1
    absolute = absolute_point_ids(plane, kappa)
    if len(absolute) != q ** 3 + 1:
        raise AbsoluteCountMismatch(
            f"{len(absolute)} absolute points, wanted {q ** 3 + 1}")
    return PolarityReport(True, mode, int(len(absolute)), checked)


def absolute_point_ids(plane: ShiftPlane, kappa: InvolutionSpec) -> np.ndarray:
    """Affine absolute points satisfy y + conj(y) = f(x + conj(x)); infinity
    is always absolute, slope points never are."""
    ctx, N = plane.ctx, plane.N
    bar = kappa.table(plane)
    idx = np.arange(N, dtype=np.int64)
    tr = np.asarray(ctx.add(idx, bar))             # indexed by y
    rhs = plane.f[tr]                              # indexed by x
    xs, ys = np.nonzero(rhs[:, None] == tr[None, :])
    return np.concatenate([xs * N + ys, [plane.infinity_id]])


def build_polarity_unital(plane: ShiftPlane, kappa: InvolutionSpec) -> Unital:
    report = verify_polarity(plane, kappa)
    points = absolute_point_ids(plane, kappa)
    u = Unital(plane, points, f"polarity:kappa={kappa.kind}", kappa=kappa)
    u.record(Check("polarity", report.mode, "pass",
                   witness={"absolute_points": report.absolute_points}))
    return u


def build_classical_baseline(split) -> Unital:
    """The absolute-point unital of x -> x^q in the square-map plane: the
    classical (Hermitian-curve) comparison object."""
    from .planar import square

    plane = ShiftPlane(square(split))
    return build_polarity_unital(plane, InvolutionSpec("frobq"))


# ----------------------------------------------------------------------
# Self-duality, ovals, scaling orbits
# ----------------------------------------------------------------------


def tangent_line_ids(unital: Unital) -> np.ndarray:
    counts = line_intersection_counts(unital)
    return np.flatnonzero(counts == 1)


def dual_unital(unital: Unital):
    """Dual point set (the tangent lines) pushed through the point/line
    switch (a,b) <-> L(a,b), (a) <-> V(a), inf <-> L_inf.

    The switch preserves canonical IDs, so for a parabolic unital the
    switched dual must equal the original ID set; a mismatch raises.
    Returns (dual unital, witness dict).
    """
    if unital.theta is None:
        raise ValueError("dual switch is defined for parabolic unitals")
    duals = tangent_line_ids(unital)               # line IDs = dual point IDs
    if not np.array_equal(np.sort(duals), unital.points):
        raise SwitchMismatch("switch image differs from the original point set")
    u = Unital(unital.plane, duals, f"dual:of={unital.provenance}",
               theta=unital.theta)
    u.record(Check("self-duality-switch", "exhaustive", "pass"))
    return u, {"tangent_lines": int(len(duals)), "switch": "identity-on-ids"}


def ovals_decomposition(unital: Unital) -> list[np.ndarray]:
    """The q point sets {(x, c)} + infinity with c ranging over theta*F_q.

    Each is verified to be an oval (every line meets it in at most 2
    points) and their union must be the unital.  Needs a normal plane
    function.
    """
    from .planar import check_normality

    plane = unital.plane
    if unital.theta is None:
        raise ValueError("oval decomposition applies to parabolic unitals")
    ok, witness = check_normality(plane.spec)
    if not ok:
        raise NotNormal(f"plane function is not normal: {witness}")
    N, ctx = plane.N, plane.ctx
    X = np.arange(N, dtype=np.int64)
    # |O_c ∩ L(a,b)| = #{x : f(x+a) = b + c}: one fiber histogram per shift a
    # bounds every (b, c) pair at once; verticals meet in (a, c) + infinity
    for a in range(N):
        hist = np.bincount(plane.f[np.asarray(ctx.add(X, a))], minlength=N)
        if hist.max() > 2:
            v = int(np.argmax(hist))
            raise OvalViolation(f"some graph line meets an oval {int(hist[v])} times "
                                f"(shift a={a}, value {v})")
    ovals = []
    union = {int(plane.infinity_id)}
    for c in parabolic_y_values(plane, unital.theta):
        ids = np.concatenate([X * N + int(c), [plane.infinity_id]])
        ovals.append(ids)
        union.update(int(i) for i in ids[:-1])
    if union != {int(p) for p in unital.points}:
        raise OvalViolation("oval union differs from the unital")
    return ovals


def gamma_orbit_partition(plane: ShiftPlane, thetas) -> list[list[int]]:
    """Group theta values whose parabolic unitals map onto each other under
    the scaling collineations; returns sorted equivalence classes."""
    thetas = [plane.ctx.index_of(t) for t in thetas]
    point_sets = {t: frozenset(int(p) for p in build_parabolic_unital(plane, t).points)
                  for t in thetas}
    by_set = {s: t for t, s in point_sets.items()}
    parent = {t: t for t in thetas}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    ctx = plane.ctx
    for c in range(1, ctx.size):
        for e in range(ctx.m):
            g = Gamma(plane, c, e)
            for t in thetas:
                arr = np.fromiter(point_sets[t], dtype=np.int64, count=len(point_sets[t]))
                image = frozenset(int(p) for p in np.asarray(g.apply_point(arr)))
                t2 = by_set.get(image)
                if t2 is not None and find(t) != find(t2):
                    parent[find(t2)] = find(t)
    classes: dict[int, list[int]] = {}
    for t in thetas:
        classes.setdefault(find(t), []).append(t)
    return sorted(sorted(v) for v in classes.values())


# ----------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------


def write_unital_file(unital: Unital, path):
    """Text format: `UNITAL v1`, field descriptor, spec string, provenance,
    then one ascending point ID per line."""
    with open(path, "w") as fh:
        fh.write("UNITAL v1\n")
        fh.write(unital.plane.ctx.descriptor() + "\n")
        fh.write(unital.plane.spec.spec_string() + "\n")
        fh.write(unital.provenance + "\n")
        for p in unital.points:
            fh.write(f"{int(p)}\n")


def read_unital_file(path) -> Unital:
    from . import gf
    from .planar import parse_spec

    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if lines[0] != "UNITAL v1":
        raise ValueError(f"not a unital file: {lines[0]!r}")
    ctx = gf.parse_descriptor(lines[1])
    split = gf.split_new(ctx, ctx.m // 2)
    plane = ShiftPlane(parse_spec(split, lines[2]))
    provenance = lines[3]
    points = np.array([int(v) for v in lines[4:]], dtype=np.int64)
    theta = None
    kappa = None
    if provenance.startswith("utheta:theta="):
        theta = int(provenance.split("=", 1)[1])
    elif provenance.startswith("polarity:kappa="):
        kappa = InvolutionSpec(provenance.split("=", 1)[1])
    return Unital(plane, points, provenance, theta=theta, kappa=kappa)
