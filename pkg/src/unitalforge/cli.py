"""Batch front end: build, verify, and compare unitals from the shell.

Every subcommand resolves a field/function context from --p --m --spec,
serializes its RunConfig into the emitted JSON certificates (the hash is
stable across reruns; a timestamp is attached after hashing), and exits 0
on all-pass, 1 on any check failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import analysis as an
from . import gf
from . import planar
from . import unital as un
from .errors import UnitalForgeError
from .plane import ShiftPlane

VERSION = "0.1.0"


@dataclass
class RunConfig:
    field: str
    spec: str
    theta: str = "auto"
    mode: str = "exhaustive"
    seed: int = 0
    trials: int = 10000
    workers: int = 1
    out_format: str = "json"

    def digest(self) -> str:
        payload = json.dumps(asdict(self), sort_keys=True) + VERSION
        return hashlib.sha256(payload.encode()).hexdigest()


def _add_field_args(p: argparse.ArgumentParser, spec_required: bool = True):
    p.add_argument("--p", type=int, required=True, help="characteristic (odd prime)")
    p.add_argument("--m", type=int, required=True, help="extension degree of F_{p^m} = F_{q^2}")
    p.add_argument("--modulus", type=str, default=None,
                   help="comma-separated modulus coefficients, constant first")
    if spec_required:
        p.add_argument("--spec", type=str, default="square",
                       help="function spec string (square, albert:k=2, cm:k=3, ...)")
    p.add_argument("--theta", type=str, default="auto",
                   help="'auto' (smallest admissible) or an element index")
    p.add_argument("--kappa", choices=["frobq", "conjxi"], default="frobq")
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--cache-dir", type=str, default=None)


def _context(args):
    if args.m % 2 != 0:
        raise UnitalForgeError("need even m: the plane lives over F_{q^2} = F_{p^m}")
    modulus = None
    if args.modulus:
        modulus = tuple(int(c) for c in args.modulus.split(","))
    ctx = gf.field_new(args.p, args.m, modulus)
    split = gf.split_new(ctx, args.m // 2)
    spec = planar.parse_spec(split, args.spec)
    return ctx, split, spec


def _theta_index(split, spec, theta_arg: str) -> int:
    if theta_arg == "auto":
        if spec.family in ("dickson", "zhoupott", "ganley", "pw", "bh"):
            return split.xi
        return split.choose_theta()
    return int(theta_arg)


def _runconfig(args, ctx) -> RunConfig:
    return RunConfig(field=ctx.descriptor(), spec=args.spec,
                     theta=str(args.theta), mode=args.mode, seed=args.seed,
                     trials=args.trials, workers=args.threads)


def _cache_dir(args):
    path = args.cache_dir or os.environ.get("UNITALFORGE_CACHE")
    if path:
        os.makedirs(path, exist_ok=True)
    return path


def _emit(cert: dict, out: str | None):
    text = json.dumps(cert, indent=2, default=str)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _finish_certificate(cert: dict, rc: RunConfig) -> dict:
    cert["runconfig"] = asdict(rc)
    cert["runconfig_hash"] = rc.digest()
    cert["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return cert


# ---------------------------------------------------------------------- cmds


def cmd_field_check(args) -> int:
    modulus = tuple(int(c) for c in args.modulus.split(",")) if args.modulus else None
    ctx = gf.field_new(args.p, args.m, modulus)
    print(ctx.descriptor())
    rng = np.random.default_rng(args.seed)
    a, b, c = rng.integers(0, ctx.size, (3, 5000))
    ok = bool(np.all(ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))))
    nz = np.arange(1, ctx.size) if ctx.size <= 4096 else (
        rng.integers(1, ctx.size, 5000))
    ok &= bool(np.all(ctx.mul(ctx.inv(nz), nz) == 1))
    print(f"axioms: {'pass' if ok else 'FAIL'} (size {ctx.size})")
    return 0 if ok else 1


def cmd_planar_verify(args) -> int:
    ctx, split, spec = _context(args)
    planarity = planar.check_planarity(spec, mode=args.mode, trials=args.trials,
                                       seed=args.seed, workers=args.threads)
    normal, witness_n = planar.check_normality(spec)
    cert = planar.PlanarityCertificate(
        spec=spec, is_planar=planarity.passed, is_normal=normal,
        satisfies_value_distribution=planar.check_value_distribution(spec),
        planarity=planarity, witness=planarity.witness or witness_n)
    print(f"spec={spec.spec_string()} field={ctx.descriptor()}")
    print(f"planar={cert.is_planar} ({cert.planarity.mode}, "
          f"{cert.planarity.shifts_checked} shifts)")
    print(f"normal={cert.is_normal}")
    print(f"value-distribution={cert.satisfies_value_distribution}")
    if cert.witness:
        print(f"witness={cert.witness}")
    return 0 if cert.is_planar and cert.is_normal else 1


def cmd_plane_verify(args) -> int:
    ctx, split, spec = _context(args)
    plane = ShiftPlane(spec)
    rep = plane.verify_projective_plane(mode=args.mode, seed=args.seed,
                                        trials=args.trials)
    print(f"plane order {plane.N}: points={rep.points} lines={rep.lines} "
          f"mode={rep.mode} pairs={rep.pairs_checked} passed={rep.passed}")
    if rep.witness:
        print(f"witness={rep.witness}")
    return 0 if rep.passed else 1


def cmd_plane_dump(args) -> int:
    ctx, split, spec = _context(args)
    plane = ShiftPlane(spec)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for lid in range(plane.n_lines):
            pts = " ".join(str(int(p)) for p in plane.points_on_line(lid))
            out.write(f"L {lid} : {pts}\n")
    finally:
        if args.out:
            out.close()
    return 0


def _build_unital(args):
    ctx, split, spec = _context(args)
    plane = ShiftPlane(spec)
    theta = _theta_index(split, spec, args.theta)
    return ctx, plane, un.build_parabolic_unital(plane, theta)


def cmd_unital_build(args) -> int:
    ctx, split, spec = _context(args)
    rc = _runconfig(args, ctx)
    cache = _cache_dir(args)
    cache_file = os.path.join(cache, rc.digest() + ".json") if cache else None
    if cache_file and os.path.exists(cache_file):
        with open(cache_file) as fh:
            payload = json.load(fh)
        print(f"cache hit: {cache_file}", file=sys.stderr)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(payload["unital_file"])
            _emit(payload["cert"], args.out + ".json")
        else:
            _emit(payload["cert"], None)
        return 0
    plane = ShiftPlane(spec)
    theta = _theta_index(split, spec, args.theta)
    u = un.build_parabolic_unital(plane, theta)
    emb = un.verify_unital_embedded(
        u, mode=args.mode if plane.N <= 1024 else "sampled",
        seed=args.seed, trials=args.trials)
    cert = _finish_certificate(
        u.certificate({"points_count": len(u.points),
                       "theta": theta,
                       "secants": emb.secant_count,
                       "tangents": emb.tangent_count}), rc)
    if args.out:
        un.write_unital_file(u, args.out)
        _emit(cert, args.out + ".json")
    else:
        _emit(cert, None)
    if cache_file:
        header = "\n".join(["UNITAL v1", ctx.descriptor(),
                            spec.spec_string(), u.provenance, ""])
        body = "".join(f"{int(p)}\n" for p in u.points)
        with open(cache_file, "w") as fh:
            json.dump({"cert": cert, "unital_file": header + body}, fh)
    return 0


def _load_or_build(args):
    if getattr(args, "infile", None):
        u = un.read_unital_file(args.infile)
        return u.plane.ctx, u.plane, u
    return _build_unital(args)


def cmd_unital_verify(args) -> int:
    ctx, plane, u = _load_or_build(args)
    mode = args.mode if plane.N <= 1024 else "sampled"
    emb = un.verify_unital_embedded(u, mode=mode, seed=args.seed,
                                    trials=args.trials)
    print(f"embedded: passed={emb.passed} secants={emb.secant_count} "
          f"tangents={emb.tangent_count} mode={emb.mode}")
    ok = emb.passed
    if plane.split.sub_size <= 9:
        des = un.verify_design(u, mode="exhaustive")
        print(f"design: passed={des.passed} points={des.point_count} "
              f"blocks={des.block_count} pairs={des.pairs_covered}")
        ok &= des.passed
    return 0 if ok else 1


def cmd_unital_dual(args) -> int:
    ctx, plane, u = _load_or_build(args)
    try:
        _, wit = un.dual_unital(u)
    except UnitalForgeError as e:
        print(f"self-duality FAILED: {e}")
        return 1
    print(f"self-dual: switch image equals the point set "
          f"({wit['tangent_lines']} tangent lines)")
    return 0


def cmd_unital_ovals(args) -> int:
    ctx, plane, u = _load_or_build(args)
    try:
        ovals = un.ovals_decomposition(u)
    except UnitalForgeError as e:
        print(f"oval decomposition FAILED: {e}")
        return 1
    print(f"ovals: {len(ovals)} of sizes {sorted(set(len(o) for o in ovals))}, "
          f"union = unital")
    return 0


def cmd_circles(args) -> int:
    ctx, plane, u = _load_or_build(args)
    if u.theta is None:
        print("circles are defined for parabolic unitals only", file=sys.stderr)
        return 1
    rep = an.verify_circle_design(u)
    print(f"circles: count={rep.circle_count} size={rep.circle_size} "
          f"lambda={rep.lambda_value} partition={rep.partition_ok} "
          f"passed={rep.passed}")
    return 0 if rep.passed else 1


def cmd_wilbrink(args) -> int:
    ctx, plane, u = _load_or_build(args)
    idx = an.DesignIndex(u)
    if args.point == "all":
        pids = [int(p) for p in u.points]
    elif args.point == "inf":
        pids = [plane.infinity_id]
    else:
        pids = [int(args.point)]
    code = 0
    for pid in pids:
        rep = an.wilbrink_vertex_check(u, pid, strong=not args.ratio, index=idx)
        print(f"VERTEX {pid} strong={rep.strong} "
              f"satisfied={rep.satisfied}/{rep.total}")
        if args.point == "inf" and not rep.strong:
            code = 1
    return code


def cmd_onan_find(args) -> int:
    ctx, plane, u = _load_or_build(args)
    if args.exhaustive:
        res = an.find_onan_exhaustive(u, budget=args.budget)
        for cfg in res.configs[: args.limit]:
            print(f"ONAN blocks={list(cfg.blocks)} points={list(cfg.points)}")
        print(f"count={res.count} complete={res.complete}")
        return 0
    cfgs, hits = an.find_onan_through_infinity(u)
    for cfg in cfgs[: args.limit]:
        print(f"ONAN blocks={list(cfg.blocks)} points={list(cfg.points)}")
    print(f"count={len(cfgs)} circle_hits={len(hits)}")
    return 0


def cmd_onan_construct(args) -> int:
    ctx, plane, u = _load_or_build(args)
    try:
        cfg = an.construct_onan_explicit(u)
    except UnitalForgeError as e:
        print(f"construction FAILED: {e}")
        return 1
    print(f"ONAN blocks={list(cfg.blocks)} points={list(cfg.points)}")
    return 0


def cmd_polarity(args) -> int:
    ctx, split, spec = _context(args)
    plane = ShiftPlane(spec)
    kappa = un.InvolutionSpec(args.kappa)
    try:
        rep = un.verify_polarity(plane, kappa, seed=args.seed,
                                 trials=args.trials)
    except UnitalForgeError as e:
        print(f"polarity FAILED: {e}")
        return 1
    print(f"polarity kappa={args.kappa}: absolutes={rep.absolute_points} "
          f"mode={rep.mode} incidences={rep.incidences_checked}")
    if args.action == "build":
        u = un.build_polarity_unital(plane, kappa)
        rc = _runconfig(args, ctx)
        cert = _finish_certificate(
            u.certificate({"points_count": len(u.points)}), rc)
        if args.out:
            un.write_unital_file(u, args.out)
            _emit(cert, args.out + ".json")
        else:
            _emit(cert, None)
    return 0


def cmd_subgroups(args) -> int:
    ctx, split, spec = _context(args)
    plane = ShiftPlane(spec)
    theta = _theta_index(split, spec, args.theta)
    u = un.build_parabolic_unital(plane, theta)
    code = 0
    if spec.is_dembowski_ostrom:
        rep1 = an.sigma_stabilizer_report(u)
        print(f"shear stabilizer (parabolic): order={rep1.order} "
              f"abelian={rep1.is_abelian}")
        upol = un.build_polarity_unital(plane, un.InvolutionSpec(args.kappa))
        rep2 = an.sigma_stabilizer_report(upol)
        print(f"shear stabilizer (polarity): order={rep2.order} "
              f"abelian={rep2.is_abelian} witness={rep2.commutator_witness}")
        if plane.N ** 3 <= 2 ** 21:
            comp = an.verify_sigma_composition(plane)
            print(f"composition law: pairs={comp['pairs_checked']} "
                  f"biadditivity={comp['biadditivity']}")
    else:
        rept = an.shift_stabilizer_report(u)
        print(f"translation stabilizer (parabolic): order={rept.order}")
        upol = un.build_polarity_unital(plane, un.InvolutionSpec(args.kappa))
        repp = an.shift_stabilizer_report(upol)
        print(f"translation stabilizer (polarity): order={repp.order}")
    return code


def cmd_compare(args) -> int:
    left = un.read_unital_file(args.left)
    right = un.read_unital_file(args.right)
    profiles = []
    for u in (left, right):
        heavy = u.q <= 5
        profiles.append(an.invariant_profile(u, with_onan=heavy,
                                             with_wilbrink=heavy))
    verdict, reasons = an.compare_profiles(*profiles)
    lhs, rhs = profiles[0].onan_total, profiles[1].onan_total
    if verdict == "NON-ISOMORPHIC":
        detail = (f"onan count: {lhs} vs {rhs}" if lhs != rhs
                  else "; ".join(reasons))
        print(f"NON-ISOMORPHIC ({detail})")
    else:
        print("INCONCLUSIVE (profiles agree on all computed invariants)")
    if args.out:
        payload = {
            "left": {"file": args.left, **profiles[0].design_fields(),
                     "line_spectrum": profiles[0].line_spectrum},
            "right": {"file": args.right, **profiles[1].design_fields(),
                      "line_spectrum": profiles[1].line_spectrum},
            "verdict": verdict,
            "reasons": reasons,
        }
        _emit(payload, args.out)
    return 0


def cmd_suite(args) -> int:
    from .suite import run_suite

    full = not args.quick
    results = run_suite(full=full)
    print(f"acceptance suite ({'full' if full else 'quick'} mode)")
    print("-" * 72)
    for r in results:
        print(r.line() + f"  ({r.runtime:.1f}s)")
    n_pass = sum(r.passed for r in results)
    print("-" * 72)
    print(f"{n_pass}/{len(results)} criteria passed")
    return 0 if n_pass == len(results) else 1


# ---------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unitalforge",
                                 description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("field", help="field-level checks")
    ps = p.add_subparsers(dest="action", required=True)
    pc = ps.add_parser("check")
    _add_field_args(pc, spec_required=False)
    pc.set_defaults(fn=cmd_field_check)

    p = sub.add_parser("planar", help="planar-function certification")
    ps = p.add_subparsers(dest="action", required=True)
    pv = ps.add_parser("verify")
    _add_field_args(pv)
    pv.set_defaults(fn=cmd_planar_verify)

    p = sub.add_parser("plane", help="projective-plane checks")
    ps = p.add_subparsers(dest="action", required=True)
    pv = ps.add_parser("verify")
    _add_field_args(pv)
    pv.set_defaults(fn=cmd_plane_verify)
    pd = ps.add_parser("dump")
    _add_field_args(pd)
    pd.add_argument("--lines", action="store_true", required=True)
    pd.set_defaults(fn=cmd_plane_dump)

    p = sub.add_parser("unital", help="build and certify unitals")
    ps = p.add_subparsers(dest="action", required=True)
    for action, fn in (("build", cmd_unital_build), ("verify", cmd_unital_verify),
                       ("dual", cmd_unital_dual), ("ovals", cmd_unital_ovals)):
        pa = ps.add_parser(action)
        _add_field_args(pa)
        if action != "build":
            pa.add_argument("--in", dest="infile", type=str, default=None,
                            help="read a UNITAL v1 file instead of building")
        pa.set_defaults(fn=fn)

    for name, fn in (("circles", cmd_circles),):
        pa = sub.add_parser(name, help="circle-design verification")
        _add_field_args(pa)
        pa.add_argument("--in", dest="infile", type=str, default=None)
        pa.set_defaults(fn=fn)

    pw = sub.add_parser("wilbrink", help="strong-vertex checks")
    _add_field_args(pw)
    pw.add_argument("--in", dest="infile", type=str, default=None)
    pw.add_argument("--point", type=str, default="inf",
                    help="'inf', 'all', or a point ID")
    pw.add_argument("--ratio", action="store_true",
                    help="report satisfied/total instead of short-circuiting")
    pw.set_defaults(fn=cmd_wilbrink)

    p = sub.add_parser("onan", help="configuration searches")
    ps = p.add_subparsers(dest="action", required=True)
    pf = ps.add_parser("find")
    _add_field_args(pf)
    pf.add_argument("--in", dest="infile", type=str, default=None)
    pf.add_argument("--exhaustive", action="store_true")
    pf.add_argument("--budget", type=int, default=None)
    pf.add_argument("--limit", type=int, default=8,
                    help="max configurations to print")
    pf.set_defaults(fn=cmd_onan_find)
    pc = ps.add_parser("construct")
    _add_field_args(pc)
    pc.add_argument("--in", dest="infile", type=str, default=None)
    pc.set_defaults(fn=cmd_onan_construct)

    p = sub.add_parser("polarity", help="unitary-polarity checks")
    ps = p.add_subparsers(dest="action", required=True)
    for action in ("build", "verify"):
        pa = ps.add_parser(action)
        _add_field_args(pa)
        pa.set_defaults(fn=cmd_polarity)

    pg = sub.add_parser("subgroups", help="stabilizer subgroup reports")
    _add_field_args(pg)
    pg.set_defaults(fn=cmd_subgroups)

    pc = sub.add_parser("compare", help="design-isomorphism verdict from two files")
    pc.add_argument("--left", required=True)
    pc.add_argument("--right", required=True)
    pc.add_argument("--out", type=str, default=None,
                    help="also write both profiles and the verdict as JSON")
    pc.set_defaults(fn=cmd_compare)

    psu = sub.add_parser("suite", help="run the acceptance matrix")
    group = psu.add_mutually_exclusive_group()
    group.add_argument("--quick", action="store_true",
                       help="small-field subset (q <= 5)")
    group.add_argument("--full", action="store_true")
    psu.set_defaults(fn=cmd_suite)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UnitalForgeError as e:
        print(f"CHECK FAILED ({type(e).__name__}): {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
