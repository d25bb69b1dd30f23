"""Catalog of planar functions on F_{q^2} and their verifiers.

A planar function f has all difference maps x -> f(x+a) - f(x) bijective for
nonzero a.  The catalog covers the power families (square, Albert twisted
field, Coulter-Matthews) and the two-component semifield families (Dickson,
Zhou-Pott, Ganley, Penttila-Williams, Budaghyan-Helleseth), plus arbitrary
user polynomials.  Parameter validation is eager: a spec outside its family's
admissible range fails at construction rather than silently producing a
non-planar function.

Verification is always computational: planarity and normality certificates
come from full (or documented, seeded sampled) sweeps of the field, never
from the catalog membership itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .errors import SpecConstraintViolated
from .gf import ExtensionSplit

__all__ = [
    "PlanarFunctionSpec",
    "PlanarityCertificate",
    "square",
    "albert",
    "coulter_matthews",
    "dickson",
    "zhou_pott",
    "ganley",
    "penttila_williams",
    "budaghyan_helleseth",
    "custom",
    "parse_spec",
    "check_planarity",
    "check_normality",
    "check_value_distribution",
    "certify",
    "polarization",
    "half_polarization",
    "smallest_nonsquare",
]

GANLEY_MIN_N = 3  # n = 1 degenerates toward the prime field; override via ganley(..., min_n=1)


def smallest_nonsquare(ctx) -> int:
    """Smallest-index nonsquare of the whole field."""
    idx = np.arange(ctx.size)
    return int(np.flatnonzero(np.asarray(ctx.quadratic_character(idx)) == -1)[0])


def _exponent_is_do(e: int, p: int) -> bool:
    # e == p^i + p^j for some 0 <= i <= j
    pi = 1
    while 2 * pi <= e:
        pj = e - pi
        t = pj
        while t > 1 and t % p == 0:
            t //= p
        if t == 1:
            return True
        pi *= p
    return False


@dataclass(frozen=True)
class PlanarFunctionSpec:
    """A parameterized catalog entry bound to one quadratic extension split."""

    split: ExtensionSplit
    family: str
    k: int = 0
    i: int = 0
    b: int = 0                      # field index of the Budaghyan-Helleseth constant
    terms: tuple = ()               # custom: ((exponent, coeff index), ...)

    def __post_init__(self):
        ctx, n = self.split.ctx, self.split.sub_degree
        p = ctx.p
        fam = self.family
        if fam == "square":
            pass
        elif fam == "albert":
            if not (1 <= self.k <= n and (2 * n // gcd(2 * n, self.k)) % 2 == 1):
                raise SpecConstraintViolated(
                    f"albert needs 1 <= k <= n and 2n/gcd(2n,k) odd; got k={self.k}, n={n}")
        elif fam == "cm":
            if p != 3 or gcd(self.k, 2 * n) != 1 or self.k < 1:
                raise SpecConstraintViolated(
                    f"coulter-matthews needs p=3 and gcd(k,2n)=1; got p={p}, k={self.k}, n={n}")
        elif fam == "dickson":
            self._need_alpha()
            if not (0 < self.i < n and p ** n % 4 == 1):
                raise SpecConstraintViolated(
                    f"dickson needs 0 < i < n and p^n = 1 mod 4; got i={self.i}, p^n={p ** n}")
        elif fam == "zhoupott":
            self._need_alpha()
            if not (0 < self.i < n and 0 < self.k < n
                    and (n // gcd(self.k, n)) % 2 == 1 and p ** n % 4 == 1):
                raise SpecConstraintViolated(
                    f"zhou-pott needs 0 < i,k < n, n/gcd(k,n) odd, p^n = 1 mod 4; "
                    f"got i={self.i}, k={self.k}, p^n={p ** n}")
        elif fam == "ganley":
            if p != 3 or n % 2 == 0:
                raise SpecConstraintViolated(
                    f"ganley needs p=3 and odd n; got p={p}, n={n}")
        elif fam == "pw":
            if p != 3 or n != 5:
                raise SpecConstraintViolated(
                    f"penttila-williams needs p=3, n=5; got p={p}, n={n}")
        elif fam == "bh":
            if not (0 < self.k < n and (n // gcd(self.k, n)) % 2 == 1 and p ** n % 4 == 3):
                raise SpecConstraintViolated(
                    f"budaghyan-helleseth needs 0 < k < n, n/gcd(k,n) odd, p^n = 3 mod 4; "
                    f"got k={self.k}, p^n={p ** n}")
            if p ** self.k % 4 != 1:
                # odd k kills planarity: with u^(q-1) = u^(p^k-1) = -1 (such u
                # exist exactly when p^k = 3 mod 4 here), every pair (a, u*a)
                # lies in the kernel of the difference map
                raise SpecConstraintViolated(
                    f"budaghyan-helleseth needs p^k = 1 mod 4 (even k); got k={self.k}")
            if ctx.quadratic_character(self.b) != -1:
                raise SpecConstraintViolated("budaghyan-helleseth constant b must be a nonsquare")
        elif fam == "custom":
            if not self.terms:
                raise SpecConstraintViolated("custom spec needs at least one term")
            exps = [e for e, _ in self.terms]
            if len(set(exps)) != len(exps) or any(e < 0 for e in exps):
                raise SpecConstraintViolated("custom exponents must be distinct and >= 0")
            if any(not 0 <= c < ctx.size for _, c in self.terms):
                raise SpecConstraintViolated("custom coefficient index out of range")
        else:
            raise SpecConstraintViolated(f"unknown family {fam!r}")

    def _need_alpha(self):
        if self.split.alpha is None:
            raise SpecConstraintViolated(
                "this family needs a split with xi^2 = alpha in the subfield")

    # -- identity / formatting --

    def spec_string(self) -> str:
        fam = self.family
        if fam in ("square", "ganley", "pw"):
            return fam
        if fam == "albert":
            return f"albert:k={self.k}"
        if fam == "cm":
            return f"cm:k={self.k}"
        if fam == "dickson":
            return f"dickson:i={self.i}"
        if fam == "zhoupott":
            return f"zhoupott:i={self.i},k={self.k}"
        if fam == "bh":
            return f"bh:k={self.k},b={self.b}"
        return "custom:" + ",".join(f"{e}:{c}" for e, c in self.terms)

    def __repr__(self):
        return f"PlanarFunctionSpec({self.spec_string()} over {self.split!r})"

    # -- structure flags --

    @property
    def power_exponent(self) -> int | None:
        """Exponent d when f(x) = x^d, else None."""
        p = self.split.ctx.p
        if self.family == "square":
            return 2
        if self.family == "albert":
            return p ** self.k + 1
        if self.family == "cm":
            return (3 ** self.k + 1) // 2
        if self.family == "custom" and len(self.terms) == 1 and self.terms[0][1] == 1:
            return self.terms[0][0]
        return None

    @property
    def is_power_map(self) -> bool:
        return self.power_exponent is not None

    @property
    def is_dembowski_ostrom(self) -> bool:
        """All exponents of shape p^i + p^j (the commutative-semifield case)."""
        p = self.split.ctx.p
        if self.family in ("square", "albert", "dickson", "zhoupott", "ganley", "pw", "bh"):
            return True
        if self.family == "cm":
            return _exponent_is_do((3 ** self.k + 1) // 2, 3)
        return all(_exponent_is_do(e, p) for e, _ in self.terms if e)

    # -- evaluation --

    @cached_property
    def table(self) -> np.ndarray:
        """f as a full lookup table over element indices."""
        split, ctx = self.split, self.split.ctx
        p, n = ctx.p, split.sub_degree
        x = np.arange(ctx.size, dtype=np.int64)
        fam = self.family
        if fam == "square":
            return np.asarray(ctx.mul(x, x))
        if fam == "albert":
            return np.asarray(ctx.pow(x, p ** self.k + 1))
        if fam == "cm":
            return np.asarray(ctx.pow(x, (3 ** self.k + 1) // 2))
        if fam in ("dickson", "zhoupott", "ganley", "pw"):
            x0, x1 = split.decompose(x)
            two = 2 % p
            if fam == "dickson":
                f0 = ctx.add(ctx.mul(x0, x0),
                             ctx.mul(split.alpha, ctx.pow(x1, 2 * p ** self.i)))
                f1 = ctx.mul(two, ctx.mul(x0, x1))
            elif fam == "zhoupott":
                f0 = ctx.add(ctx.pow(x0, p ** self.k + 1),
                             ctx.mul(split.alpha, ctx.pow(x1, p ** (self.k + self.i) + p ** self.i)))
                f1 = ctx.mul(two, ctx.mul(x0, x1))
            elif fam == "ganley":
                f0 = ctx.add(ctx.mul(x0, x0), ctx.pow(x1, 10))
                f1 = ctx.add(ctx.mul(two, ctx.mul(x0, x1)), ctx.pow(x1, 6))
            else:  # pw
                f0 = ctx.add(ctx.mul(x0, x0), ctx.pow(x1, 18))
                f1 = ctx.add(ctx.mul(two, ctx.mul(x0, x1)), ctx.pow(x1, 54))
            return np.asarray(split.recompose(f0, f1))
        if fam == "bh":
            t = ctx.mul(self.b, ctx.pow(x, p ** self.k + 1))
            return np.asarray(ctx.add(ctx.add(t, ctx.frobenius(t, n)),
                                      ctx.mul(split.xi, ctx.pow(x, p ** n + 1))))
        out = np.zeros(ctx.size, dtype=np.int64)
        for e, c in self.terms:
            out = np.asarray(ctx.add(out, ctx.mul(c, ctx.pow(x, e))))
        return out

    def eval(self, x):
        """f(x) for an index, FieldElem index, or index array."""
        if np.isscalar(x):
            return int(self.table[x])
        return self.table[np.asarray(x)]

    def components(self, x):
        """(f0(x), f1(x)) with f = f0 + f1*xi and both components in F_q."""
        v = self.eval(x)
        return self.split.decompose(v)

    @cached_property
    def polarization_table(self) -> np.ndarray:
        """star[x, y] = f(x+y) - f(x) - f(y), materialized for small fields."""
        ctx = self.split.ctx
        if ctx.size > 1024:
            raise ValueError("polarization table only materialized for small fields")
        x = np.arange(ctx.size)
        t = self.table
        return np.asarray(ctx.sub(ctx.sub(t[ctx.add(x[:, None], x[None, :])],
                                          t[x][:, None]), t[x][None, :]))


def polarization(spec: PlanarFunctionSpec, x, y):
    """f(x+y) - f(x) - f(y); symmetric, biadditive for Dembowski-Ostrom f."""
    ctx = spec.split.ctx
    t = spec.table
    return ctx.sub(ctx.sub(t[ctx.add(x, y)], t[x]), t[y])


def half_polarization(spec: PlanarFunctionSpec, x, y):
    """(f(x+y) - f(x) - f(y)) / 2; satisfies x*x = f(x) for Dembowski-Ostrom f."""
    ctx = spec.split.ctx
    return ctx.mul(ctx.inv(2 % ctx.p), polarization(spec, x, y))


# -- catalog constructors --

def square(split) -> PlanarFunctionSpec:
    return PlanarFunctionSpec(split, "square")


def albert(split, k: int) -> PlanarFunctionSpec:
    return PlanarFunctionSpec(split, "albert", k=k)


def coulter_matthews(split, k: int) -> PlanarFunctionSpec:
    return PlanarFunctionSpec(split, "cm", k=k)


def dickson(split, i: int) -> PlanarFunctionSpec:
    return PlanarFunctionSpec(split, "dickson", i=i)


def zhou_pott(split, i: int, k: int) -> PlanarFunctionSpec:
    return PlanarFunctionSpec(split, "zhoupott", i=i, k=k)


def ganley(split, min_n: int = GANLEY_MIN_N) -> PlanarFunctionSpec:
    if split.sub_degree < min_n:
        raise SpecConstraintViolated(
            f"ganley instantiated below the configured minimum n >= {min_n}")
    return PlanarFunctionSpec(split, "ganley")


def penttila_williams(split) -> PlanarFunctionSpec:
    return PlanarFunctionSpec(split, "pw")


def budaghyan_helleseth(split, k: int, b: int | None = None) -> PlanarFunctionSpec:
    if b is None:
        b = smallest_nonsquare(split.ctx)
    return PlanarFunctionSpec(split, "bh", k=k, b=split.ctx.index_of(b))


def custom(split, terms) -> PlanarFunctionSpec:
    return PlanarFunctionSpec(split, "custom",
                              terms=tuple((int(e), split.ctx.index_of(c)) for e, c in terms))


def parse_spec(split, text: str) -> PlanarFunctionSpec:
    """Parse the spec grammar: square | albert:k=2 | cm:k=3 | dickson:i=1 |
    zhoupott:i=1,k=1 | ganley | pw | bh:k=1,b=7 | custom:<exp>:<coeff>[,...]."""
    name, _, rest = text.strip().partition(":")
    if name == "custom":
        pairs = []
        for chunk in rest.split(","):
            e, _, c = chunk.partition(":")
            pairs.append((int(e), int(c)))
        return custom(split, pairs)
    kv = {}
    if rest:
        for chunk in rest.split(","):
            key, _, val = chunk.partition("=")
            kv[key.strip()] = int(val)
    if name == "square":
        return square(split)
    if name == "albert":
        return albert(split, kv["k"])
    if name == "cm":
        return coulter_matthews(split, kv["k"])
    if name == "dickson":
        return dickson(split, kv["i"])
    if name == "zhoupott":
        return zhou_pott(split, kv["i"], kv["k"])
    if name == "ganley":
        return ganley(split)
    if name == "pw":
        return penttila_williams(split)
    if name == "bh":
        return budaghyan_helleseth(split, kv["k"], kv.get("b"))
    raise SpecConstraintViolated(f"unknown spec string {text!r}")


# -- verifiers --

@dataclass
class PlanarityCheck:
    passed: bool
    mode: str                       # "exhaustive" or "sampled"
    shifts_checked: int
    witness: tuple | None = None    # (a, x, x') with equal difference values
    seed: int | None = None


@dataclass
class PlanarityCertificate:
    spec: PlanarFunctionSpec
    is_planar: bool
    is_normal: bool
    satisfies_value_distribution: bool
    planarity: PlanarityCheck = None
    witness: tuple | None = None


def check_planarity(spec: PlanarFunctionSpec, mode: str = "exhaustive",
                    trials: int = 1000, seed: int = 0,
                    workers: int = 1) -> PlanarityCheck:
    """Difference maps x -> f(x+a) - f(x) are bijections for nonzero a.

    Exhaustive mode scans every nonzero shift a; sampled mode scans a seeded
    sample of `trials` distinct shifts, each with a full bijection sweep.
    The shift range splits into contiguous chunks processed by `workers`
    threads; the reported witness is the one with the smallest shift
    regardless of worker count.
    """
    ctx = spec.split.ctx
    N = ctx.size
    t = spec.table
    x = np.arange(N, dtype=np.int64)
    if mode == "exhaustive":
        shifts = np.arange(1, N, dtype=np.int64)
        seed_used = None
    else:
        rng = np.random.default_rng(seed)
        count = min(trials, N - 1)
        shifts = np.sort(rng.choice(N - 1, size=count, replace=False) + 1)
        seed_used = seed

    def scan(chunk):
        seen = np.zeros(N, dtype=bool)
        for a in chunk:
            vals = np.asarray(ctx.sub(t[np.asarray(ctx.add(x, int(a)))], t))
            seen[:] = False
            seen[vals] = True
            if not seen.all():
                order = np.argsort(vals, kind="stable")
                sv = vals[order]
                dup = np.flatnonzero(sv[1:] == sv[:-1])[0]
                x1, x2 = sorted((int(order[dup]), int(order[dup + 1])))
                return (int(a), x1, x2)
        return None

    if workers <= 1:
        witness = scan(shifts)
    else:
        from concurrent.futures import ThreadPoolExecutor

        chunks = np.array_split(shifts, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan, chunks))
        witness = next((w for w in results if w is not None), None)
    if witness is not None:
        checked = int(np.searchsorted(shifts, witness[0])) + 1
        return PlanarityCheck(False, mode, checked, witness=witness,
                              seed=seed_used)
    return PlanarityCheck(True, mode, len(shifts), seed=seed_used)


def check_normality(spec: PlanarFunctionSpec):
    """f(0) = 0 together with f(a) = f(b) iff a = +-b.

    Returns (passed, witness); witness is ('f0', value) or (a, b) for a fiber
    collision outside {a, -a}.
    """
    ctx = spec.split.ctx
    t = spec.table
    if t[0] != 0:
        return False, ("f0", int(t[0]))
    x = np.arange(ctx.size)
    even = t[ctx.neg(x)] == t
    if not even.all():
        a = int(np.flatnonzero(~even)[0])
        return False, (a, int(ctx.neg(a)))
    counts = np.bincount(t, minlength=ctx.size)
    if counts[0] != 1 or counts.max() > 2:
        bad_val = 0 if counts[0] != 1 else int(np.flatnonzero(counts > 2)[0])
        pre = np.flatnonzero(t == bad_val)
        a, b = int(pre[0]), int(pre[1]) if len(pre) > 1 else int(pre[0])
        for cand in pre[1:]:
            if cand != ctx.neg(a):
                b = int(cand)
                break
        return False, (a, b)
    return True, None


def check_value_distribution(spec: PlanarFunctionSpec) -> bool:
    """#{x : f(x) = c} equals #{y : y^2 = c} for every c."""
    ctx = spec.split.ctx
    x = np.arange(ctx.size)
    hist_f = np.bincount(spec.table, minlength=ctx.size)
    hist_sq = np.bincount(np.asarray(ctx.mul(x, x)), minlength=ctx.size)
    return bool(np.array_equal(hist_f, hist_sq))


def certify(spec: PlanarFunctionSpec, mode: str = "exhaustive",
            trials: int = 1000, seed: int = 0) -> PlanarityCertificate:
    planarity = check_planarity(spec, mode=mode, trials=trials, seed=seed)
    normal, witness_n = check_normality(spec)
    vd = check_value_distribution(spec)
    return PlanarityCertificate(
        spec=spec,
        is_planar=planarity.passed,
        is_normal=normal,
        satisfies_value_distribution=vd,
        planarity=planarity,
        witness=planarity.witness or witness_n,
    )
