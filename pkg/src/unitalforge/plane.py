"""The projective plane of order q^2 built from a planar function.

Points: affine pairs (x, y), one slope point (a) per field element, and a
single point at infinity.  Lines: graphs y = f(x+a) - b (each carrying the
slope point (a)), verticals x = a (each carrying infinity), and the line at
infinity holding all slope points and infinity.

Everything is addressed by canonical integer IDs (N = field size):

    affine (x, y) -> x*N + y          shifted L(a, b) -> a*N + b
    slope (a)     -> N^2 + a          vertical V(a)   -> N^2 + a
    infinity      -> N^2 + N          at-infinity     -> N^2 + N

Incidence is always computed from the defining equations, never stored as a
global matrix, so plane contexts stay small even over F_{3^10}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import AxiomViolation, EqualPoints, FamilyMismatch
from .planar import PlanarFunctionSpec, polarization

__all__ = [
    "ShiftPlane",
    "Point",
    "Line",
    "Shift",
    "Gamma",
    "Sigma",
    "sigma_compose",
    "verify_collineation",
]


@dataclass(frozen=True, slots=True)
class Point:
    kind: str            # "affine" | "slope" | "infinity"
    x: int = 0
    y: int = 0


@dataclass(frozen=True, slots=True)
class Line:
    kind: str            # "shifted" | "vertical" | "at_infinity"
    a: int = 0
    b: int = 0


@dataclass
class PlaneReport:
    passed: bool
    mode: str
    points: int
    lines: int
    pairs_checked: int
    witness: tuple | None = None


class ShiftPlane:
    """Projective plane of order N = q^2 derived from a planar function."""

    def __init__(self, spec: PlanarFunctionSpec):
        self.spec = spec
        self.split = spec.split
        self.ctx = spec.split.ctx
        self.N = self.ctx.size
        self.f = spec.table
        self.infinity_id = self.N * self.N + self.N
        self.at_infinity_id = self.N * self.N + self.N
        self.n_points = self.N * self.N + self.N + 1
        self.n_lines = self.n_points

    # -- ID helpers --

    def affine_id(self, x, y):
        return self.ctx.index_of(x) * self.N + self.ctx.index_of(y)

    def slope_id(self, a):
        return self.N * self.N + self.ctx.index_of(a)

    def shifted_id(self, a, b):
        return self.ctx.index_of(a) * self.N + self.ctx.index_of(b)

    def vertical_id(self, a):
        return self.N * self.N + self.ctx.index_of(a)

    def decode_point(self, pid: int) -> Point:
        if pid == self.infinity_id:
            return Point("infinity")
        if pid >= self.N * self.N:
            return Point("slope", x=pid - self.N * self.N)
        return Point("affine", x=pid // self.N, y=pid % self.N)

    def decode_line(self, lid: int) -> Line:
        if lid == self.at_infinity_id:
            return Line("at_infinity")
        if lid >= self.N * self.N:
            return Line("vertical", a=lid - self.N * self.N)
        return Line("shifted", a=lid // self.N, b=lid % self.N)

    def point_ids(self) -> np.ndarray:
        return np.arange(self.n_points, dtype=np.int64)

    def line_ids(self) -> np.ndarray:
        return np.arange(self.n_lines, dtype=np.int64)

    # -- incidence --

    def incident(self, pid: int, lid: int) -> bool:
        N = self.N
        if lid == self.at_infinity_id:
            return pid >= N * N                      # slopes and infinity
        if lid >= N * N:                             # vertical x = a
            a = lid - N * N
            return pid == self.infinity_id or (pid < N * N and pid // N == a)
        a, b = lid // N, lid % N
        if pid == self.infinity_id:
            return False
        if pid >= N * N:
            return pid - N * N == a                  # the slope point (a)
        x, y = pid // N, pid % N
        return int(self.ctx.sub(int(self.f[self.ctx.add(x, a)]), b)) == y

    def points_on_line(self, lid: int) -> np.ndarray:
        """The q^2 + 1 point IDs on a line, ascending."""
        N = self.N
        if lid == self.at_infinity_id:
            return np.arange(N * N, N * N + N + 1, dtype=np.int64)
        if lid >= N * N:
            a = lid - N * N
            ids = np.empty(N + 1, dtype=np.int64)
            ids[:N] = a * N + np.arange(N)
            ids[N] = self.infinity_id
            return ids
        a, b = lid // N, lid % N
        x = np.arange(N, dtype=np.int64)
        y = self.ctx.sub(self.f[np.asarray(self.ctx.add(x, a))], b)
        ids = np.empty(N + 1, dtype=np.int64)
        ids[:N] = x * N + y
        ids[N] = N * N + a
        ids.sort()
        return ids

    def lines_through_point(self, pid: int) -> np.ndarray:
        """The q^2 + 1 line IDs through a point, ascending."""
        N = self.N
        if pid == self.infinity_id:
            return np.arange(N * N, N * N + N + 1, dtype=np.int64)
        if pid >= N * N:
            a = pid - N * N
            ids = np.empty(N + 1, dtype=np.int64)
            ids[:N] = a * N + np.arange(N)
            ids[N] = self.at_infinity_id
            return ids
        x, y = pid // N, pid % N
        a = np.arange(N, dtype=np.int64)
        b = self.ctx.sub(self.f[np.asarray(self.ctx.add(np.int64(x), a))], np.int64(y))
        ids = np.empty(N + 1, dtype=np.int64)
        ids[:N] = a * N + b
        ids[N] = N * N + x
        ids.sort()
        return ids

    def line_through(self, pid1: int, pid2: int) -> int:
        """The unique line through two distinct points."""
        if pid1 == pid2:
            raise EqualPoints(f"point {pid1} given twice")
        N = self.N
        p1, p2 = sorted((int(pid1), int(pid2)))
        if p2 == self.infinity_id:
            if p1 >= N * N:
                return self.at_infinity_id           # slope + infinity
            return N * N + p1 // N                   # affine + infinity -> vertical
        if p2 >= N * N:                              # p2 is a slope point
            if p1 >= N * N:
                return self.at_infinity_id           # two slopes
            a = p2 - N * N
            x, y = p1 // N, p1 % N
            b = self.ctx.sub(int(self.f[self.ctx.add(x, a)]), y)
            return a * N + int(b)
        x1, y1 = p1 // N, p1 % N
        x2, y2 = p2 // N, p2 % N
        if x1 == x2:
            return N * N + x1
        # scan a: planarity gives exactly one a with f(x1+a) - f(x2+a) = y1 - y2
        a = np.arange(N, dtype=np.int64)
        lhs = self.ctx.sub(self.f[np.asarray(self.ctx.add(np.int64(x1), a))],
                           self.f[np.asarray(self.ctx.add(np.int64(x2), a))])
        hits = np.flatnonzero(lhs == self.ctx.sub(y1, y2))
        if len(hits) != 1:
            raise AxiomViolation(
                f"{len(hits)} candidate lines through {pid1}, {pid2}",
                witness=(int(p1), int(p2)))
        a0 = int(hits[0])
        b0 = int(self.ctx.sub(int(self.f[self.ctx.add(x1, a0)]), y1))
        return a0 * N + b0

    # -- axiom verification --

    def verify_projective_plane(self, mode: str = "exhaustive",
                                seed: int = 0, trials: int = 20000) -> PlaneReport:
        """(i) two points lie on one common line, (ii) two lines meet in one
        point, (iii) every line carries q^2 + 1 points.

        Exhaustive mode certifies all three through full pair coverage;
        sampled mode draws seeded point pairs and line pairs.
        """
        if mode == "exhaustive":
            return self._verify_exhaustive()
        rng = np.random.default_rng(seed)
        for _ in range(trials):
            p1, p2 = (int(v) for v in rng.integers(0, self.n_points, 2))
            if p1 == p2:
                continue
            lid = self.line_through(p1, p2)
            if not (self.incident(p1, lid) and self.incident(p2, lid)):
                return PlaneReport(False, "sampled", self.n_points, self.n_lines,
                                   trials, witness=(p1, p2))
        for _ in range(trials):
            l1, l2 = (int(v) for v in rng.integers(0, self.n_lines, 2))
            if l1 == l2:
                continue
            common = np.intersect1d(self.points_on_line(l1), self.points_on_line(l2))
            if len(common) != 1:
                return PlaneReport(False, "sampled", self.n_points, self.n_lines,
                                   trials, witness=(l1, l2))
        return PlaneReport(True, "sampled", self.n_points, self.n_lines, 2 * trials)

    def _verify_exhaustive(self) -> PlaneReport:
        npts, nlines, N = self.n_points, self.n_lines, self.N
        if npts > 10_000:
            raise ValueError(
                f"exhaustive pair check needs <= 10^4 points, got {npts}; "
                "use sampled mode")
        # point pairs: every line contributes C(N+1, 2) pairs; with all line
        # sizes equal to N+1 the total equals C(npts, 2), so max count 1
        # forces every pair to be covered exactly once
        counts = np.zeros(npts * npts, dtype=np.int8)
        for lid in range(nlines):
            pts = self.points_on_line(lid)
            if len(pts) != N + 1 or len(np.unique(pts)) != N + 1:
                raise AxiomViolation(f"line {lid} has {len(pts)} points", witness=(lid,))
            ii, jj = np.triu_indices(N + 1, k=1)
            np.add.at(counts, pts[ii] * npts + pts[jj], 1)
        if counts.max() > 1:
            k = int(np.argmax(counts))
            raise AxiomViolation("point pair covered more than once",
                                 witness=(k // npts, k % npts))
        # dual: every point contributes C(N+1, 2) line pairs
        counts = np.zeros(nlines * nlines, dtype=np.int8)
        for pid in range(npts):
            lns = self.lines_through_point(pid)
            if len(lns) != N + 1 or len(np.unique(lns)) != N + 1:
                raise AxiomViolation(f"point {pid} lies on {len(lns)} lines",
                                     witness=(pid,))
            ii, jj = np.triu_indices(N + 1, k=1)
            np.add.at(counts, lns[ii] * nlines + lns[jj], 1)
        if counts.max() > 1:
            k = int(np.argmax(counts))
            raise AxiomViolation("line pair meeting more than once",
                                 witness=(k // nlines, k % nlines))
        return PlaneReport(True, "exhaustive", npts, nlines,
                           npts * (npts - 1) // 2)

    def __repr__(self):
        return f"ShiftPlane({self.spec.spec_string()}, order={self.N})"


# ----------------------------------------------------------------------
# Collineations.  Each family provides affine/slope coordinate maps; the
# shared glue below handles scalar and vectorized ID application.
# ----------------------------------------------------------------------


class _Collineation:
    def apply_point(self, pid):
        pl, N = self.plane, self.plane.N
        if np.isscalar(pid):
            pid = int(pid)
            if pid == pl.infinity_id:
                return pid
            if pid >= N * N:
                return N * N + int(self._slope_map(pid - N * N))
            x, y = self._affine_map(pid // N, pid % N)
            return int(x) * N + int(y)
        pid = np.asarray(pid)
        out = np.empty_like(pid)
        aff = pid < N * N
        slope = (pid >= N * N) & (pid != pl.infinity_id)
        x, y = self._affine_map(pid[aff] // N, pid[aff] % N)
        out[aff] = np.asarray(x) * N + np.asarray(y)
        out[slope] = N * N + np.asarray(self._slope_map(pid[slope] - N * N))
        out[pid == pl.infinity_id] = pl.infinity_id
        return out

    def apply_line(self, lid):
        pl, N = self.plane, self.plane.N
        if np.isscalar(lid):
            lid = int(lid)
            if lid == pl.at_infinity_id:
                return lid
            if lid >= N * N:
                return N * N + int(self._vertical_map(lid - N * N))
            a, b = self._shifted_map(lid // N, lid % N)
            return int(a) * N + int(b)
        lid = np.asarray(lid)
        out = np.empty_like(lid)
        sh = lid < N * N
        vert = (lid >= N * N) & (lid != pl.at_infinity_id)
        a, b = self._shifted_map(lid[sh] // N, lid[sh] % N)
        out[sh] = np.asarray(a) * N + np.asarray(b)
        out[vert] = N * N + np.asarray(self._vertical_map(lid[vert] - N * N))
        out[lid == pl.at_infinity_id] = pl.at_infinity_id
        return out

    def fixes_point_set(self, pids: np.ndarray) -> bool:
        image = np.sort(np.asarray(self.apply_point(pids)))
        return bool(np.array_equal(image, np.sort(np.asarray(pids))))


@dataclass(frozen=True)
class Shift(_Collineation):
    """Translation: (x, y) -> (x+u, y+v), slopes (a) -> (a-u), lines
    L(a,b) -> L(a-u, b-v), verticals V(a) -> V(a+u)."""

    plane: ShiftPlane
    u: int
    v: int

    def _affine_map(self, x, y):
        ctx = self.plane.ctx
        return ctx.add(x, self.u), ctx.add(y, self.v)

    def _slope_map(self, a):
        return self.plane.ctx.sub(a, self.u)

    def _shifted_map(self, a, b):
        ctx = self.plane.ctx
        return ctx.sub(a, self.u), ctx.sub(b, self.v)

    def _vertical_map(self, a):
        return self.plane.ctx.add(a, self.u)


@dataclass(frozen=True)
class Gamma(_Collineation):
    """Semilinear scaling: (x, y) -> (sigma(c x), sigma(c^d y)) on a
    power-map plane f(x) = x^d, with sigma = Frobenius^sigma_exp taken mod
    the full automorphism order of the field."""

    plane: ShiftPlane
    c: int
    sigma_exp: int

    def __post_init__(self):
        if not self.plane.spec.is_power_map:
            raise FamilyMismatch("gamma collineations need a power-map plane")
        if self.c == 0:
            raise ValueError("c must be nonzero")

    @cached_property
    def _tables(self):
        ctx, d = self.plane.ctx, self.plane.spec.power_exponent
        e = self.sigma_exp % ctx.m
        idx = np.arange(ctx.size, dtype=np.int64)
        px = np.asarray(ctx.frobenius(ctx.mul(self.c, idx), e))
        py = np.asarray(ctx.frobenius(ctx.mul(int(ctx.pow(self.c, d)), idx), e))
        return px, py

    def _affine_map(self, x, y):
        px, py = self._tables
        return px[x], py[y]

    def _slope_map(self, a):
        return self._tables[0][a]

    def _shifted_map(self, a, b):
        px, py = self._tables
        return px[a], py[b]

    def _vertical_map(self, a):
        return self._tables[0][a]


@dataclass(frozen=True)
class Sigma(_Collineation):
    """Shear-translation: (x, y) -> (x+u, y + (2w*x) - v), with 2w*x the
    polarization f(w+x) - f(w) - f(x); slopes map by (a) -> (a+w-u).

    Line images follow from the point map by expanding f(x+a+w) through
    biadditivity: L(a,b) -> L(a+w-u, b+v+f(w)+pol(a,w)), V(a) -> V(a+u).
    Needs a Dembowski-Ostrom plane."""

    plane: ShiftPlane
    u: int
    v: int
    w: int

    def __post_init__(self):
        if not self.plane.spec.is_dembowski_ostrom:
            raise FamilyMismatch("sigma collineations need a Dembowski-Ostrom plane")

    def _affine_map(self, x, y):
        ctx, f = self.plane.ctx, self.plane.f
        fwx = f[np.asarray(ctx.add(self.w, x))]
        shear = ctx.sub(ctx.sub(fwx, int(f[self.w])), f[np.asarray(x)])
        return ctx.add(x, self.u), ctx.sub(ctx.add(y, shear), self.v)

    def _slope_map(self, a):
        ctx = self.plane.ctx
        return ctx.add(ctx.sub(a, self.u), self.w)

    def _shifted_map(self, a, b):
        ctx, f = self.plane.ctx, self.plane.f
        cross = polarization(self.plane.spec, a, self.w)
        nb = ctx.add(ctx.add(ctx.add(b, self.v), int(f[self.w])), cross)
        return ctx.add(ctx.sub(a, self.u), self.w), nb

    def _vertical_map(self, a):
        return self.plane.ctx.add(a, self.u)


def sigma_compose(g1: Sigma, g2: Sigma) -> Sigma:
    """g1 after g2: parameters (u+u', v+v' - (2w'*u), w+w') with the primed
    values from the outer map g1 and the middle term the polarization of
    g1.w with g2.u."""
    if g1.plane is not g2.plane:
        raise FamilyMismatch("sigma elements from different planes")
    ctx = g1.plane.ctx
    cross = polarization(g1.plane.spec, g1.w, g2.u)
    return Sigma(g1.plane,
                 int(ctx.add(g2.u, g1.u)),
                 int(ctx.sub(ctx.add(g2.v, g1.v), int(cross))),
                 int(ctx.add(g2.w, g1.w)))


def verify_collineation(plane: ShiftPlane, g, mode: str = "exhaustive",
                        seed: int = 0, trials: int = 20000) -> bool:
    """Images of incident (point, line) pairs remain incident."""
    if mode == "exhaustive":
        for lid in range(plane.n_lines):
            img_line = int(g.apply_line(lid))
            img_pts = np.atleast_1d(g.apply_point(plane.points_on_line(lid)))
            if not all(plane.incident(int(ip), img_line) for ip in img_pts):
                return False
        return True
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        lid = int(rng.integers(0, plane.n_lines))
        pts = plane.points_on_line(lid)
        pid = int(pts[rng.integers(0, len(pts))])
        if not plane.incident(int(g.apply_point(pid)), int(g.apply_line(lid))):
            return False
    return True
