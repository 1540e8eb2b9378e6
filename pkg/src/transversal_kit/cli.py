"""Command-line entry point.

Exit codes: 0 when every invariant check passes, 1 when a computation
finished with a negative verdict (a failed check, including a detected index
condition failure), 2 for input errors and usage problems.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bs_lab, hyperspace, matrix_decomp
from .cosets import check_index_condition, double_cosets
from .errors import InputError, VerificationError
from .groups import DEFAULT_CAP, compose
from .report import Report, digest
from .specs import parse_group_spec, parse_tower_spec
from .tower import (
    classify_limit,
    closure_index_check,
    cyclic_subgroup_pair,
    cyclic_two_tower,
    project_pair,
)
from .transversal import common_transversal, verify_transversal

DEFAULT_TOL = matrix_decomp.DEFAULT_TOL
RNG_NAME = "numpy.random.default_rng (PCG64)"


def _read_spec(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read spec {path}: {exc.strerror}") from exc


# finite groups


def cmd_finite_check(args) -> Report:
    raw = _read_spec(args.spec)
    G, H = parse_group_spec(raw).build(args.cap)
    rep = Report("finite check", digest(raw))
    dec = double_cosets(G, H)
    ic = check_index_condition(G, H)
    index = len(G) // len(H)
    rep.results = {
        "groupOrder": len(G),
        "subgroupOrder": len(H),
        "index": index,
        "doubleCosets": [
            {
                "representative": c.representative,
                "size": c.size,
                "leftCount": c.left_count,
                "rightCount": c.right_count,
                "indexConditionHolds": c.index_condition_holds,
            }
            for c in dec
        ],
        "indexConditionHolds": ic.holds,
        "witnesses": ic.witnesses,
    }
    rep.check("double cosets partition G", sum(c.size for c in dec) == len(G))
    rep.check("left counts sum to [G:H]", sum(c.left_count for c in dec) == index)
    rep.check("right counts sum to [G:H]", sum(c.right_count for c in dec) == index)
    rep.check("index condition", ic.holds, f"{len(ic.witnesses)} witnesses" if ic.witnesses else "")
    return rep


def cmd_finite_transversal(args) -> Report:
    raw = _read_spec(args.spec)
    G, H = parse_group_spec(raw).build(args.cap)
    rep = Report("finite transversal", digest(raw))
    ct = common_transversal(G, H)
    vr = verify_transversal(G, H, ct.elements)
    rep.results = {
        "groupOrder": len(G),
        "subgroupOrder": len(H),
        "transversal": ct.elements,
        "provenance": [
            {"element": q, "doubleCosetRep": x, "t": t, "s": s}
            for q, (x, t, s) in sorted(ct.provenance.items())
        ],
        "isLeft": vr.is_left,
        "isRight": vr.is_right,
        "isCommon": vr.is_common,
        "defects": vr.defects,
    }
    rep.check("left transversal", vr.is_left)
    rep.check("right transversal", vr.is_right)
    rep.check("size equals [G:H]", len(ct) == len(G) // len(H), f"{len(ct)} elements")
    rep.check(
        "provenance q = t*x*s with t, s in H",
        all(q == compose(compose(t, x), s) and t in H and s in H for q, (x, t, s) in ct.provenance.items()),
    )
    return rep


# BS(1,2) and the solenoid


def _bs_element(args) -> bs_lab.BSElement:
    return bs_lab.BSElement(bs_lab.Dyadic.of(args.q), args.n)


def cmd_bs_indices(args) -> Report:
    x = _bs_element(args)
    rep = Report("bs indices", digest({"q": str(x.q), "n": x.n}))
    left, right = bs_lab.bs_indices(x)
    brute = bs_lab.brute_force_indices(x)
    rep.results = {"element": x, "leftIndex": left, "rightIndex": right, "bruteForce": list(brute)}
    rep.check("formula matches brute-force coset count", (left, right) == brute, f"brute force {brute}")
    return rep


def cmd_bs_report(args) -> Report:
    x = _bs_element(args)
    rep = Report("bs report", digest({"q": str(x.q), "n": x.n}))
    r = bs_lab.bs_double_coset_report(x)
    brute = bs_lab.brute_force_indices(x)
    rep.results = {
        "element": x,
        "leftCount": r.left_count,
        "rightCount": r.right_count,
        "indexConditionHolds": r.index_condition_holds,
        "witness": None if r.index_condition_holds else x,
        "conclusion": r.conclusion,
    }
    rep.check("formula matches brute-force coset count", (r.left_count, r.right_count) == brute)
    rep.check("index condition", r.index_condition_holds, "" if r.index_condition_holds else f"fails at {x}")
    return rep


def cmd_solenoid(args) -> Report:
    n = args.n
    rep = Report("solenoid", digest({"n": n}))
    left, right = bs_lab.solenoid_indices(n)
    rep.results = {"n": n, "leftIndex": left, "rightIndex": right, "indexConditionHolds": left == right}
    depth = max(5, abs(n) + 1)
    if depth <= 7:
        tower = cyclic_two_tower(depth)
        seq = [c for _, c in project_pair(tower, cyclic_subgroup_pair(tower, 2 ** abs(n)))]
        rep.results["towerDepth"] = depth
        rep.results["towerIndices"] = seq
        rep.check("agrees with Z/2^k tower", max(left, right) == seq[-1] and min(left, right) == 1,
                  f"top-level tower index {seq[-1]}")
    else:
        rep.check("agrees with Z/2^k tower", True, f"skipped: |n| = {abs(n)} needs depth > 7")
    rep.check("index condition", left == right, "" if left == right else f"fails at b^{n}")
    return rep


# towers


def cmd_tower_run(args) -> Report:
    raw = _read_spec(args.spec)
    ts = parse_tower_spec(raw, cap=args.cap)
    rep = Report("tower run", digest(raw))
    tower = ts.tower
    seq = project_pair(tower, ts.pair)
    if args.max_level is not None:
        if not 2 <= args.max_level <= tower.depth:
            raise InputError(f"--max-level must be in 2..{tower.depth}")
        seq = seq[: args.max_level]
    values = [c for _, c in seq]
    full = closure_index_check(tower, ts.pair.H, ts.pair.K)
    limit = classify_limit(values)
    rep.results = {
        "depth": tower.depth,
        "levelsReported": len(values),
        "indices": [{"level": i, "index": c} for i, c in seq],
        "classification": limit.kind,
        "limit": limit.value,
        "topIndex": full.top_index,
        "rule": "last two entries equal -> stabilized; strictly increasing -> diverging",
    }
    rep.check("monotone c_i <= c_(i+1)", all(a <= b for a, b in zip(values, values[1:])))
    rep.check("bounded by top-level index", all(c <= full.top_index for c in values))
    consistent = not limit.stabilized or limit.value == full.top_index
    rep.check("stabilized value equals top-level index", consistent,
              "infinite in the limit" if not limit.stabilized else "")
    return rep


# matrices


def cmd_matrix(args) -> Report:
    rep = Report(f"matrix {args.kind}", digest({"kind": args.kind, "n": args.n, "seed": args.seed, "tol": args.tol}))
    if not 1 <= args.n <= 64:
        raise InputError("--n must be in 1..64")
    rng = np.random.default_rng(args.seed)
    g = matrix_decomp.random_complex_matrix(args.n, rng)
    rep.results = {"n": args.n, "seed": args.seed, "rng": RNG_NAME, "tol": args.tol, "matrix": g}
    if args.kind == "polar":
        left = matrix_decomp.polar_decompose(g, args.tol)
        right = matrix_decomp.polar_decompose_right(g, args.tol)
        cert = matrix_decomp.transversal_certificate(g, "polar", args.tol)
        rep.results.update(
            residual=left.residual,
            certificates=left.certs,
            rightResidual=right.residual,
            rightCertificates=right.certs,
            transversal=cert.certs,
        )
        parts = [("g = u p", left.checks), ("g = p' u'", right.checks), ("transversal", cert.checks)]
    else:
        qr = matrix_decomp.qr_positive(g, args.tol)
        rq = matrix_decomp.rq_positive(g, args.tol)
        cert = matrix_decomp.transversal_certificate(g, "iwasawa", args.tol)
        rep.results.update(
            residual=qr.residual,
            certificates=qr.certs,
            rqResidual=rq.residual,
            rqCertificates=rq.certs,
            transversal=cert.certs,
        )
        parts = [("g = q r", qr.checks), ("g = r' u", rq.checks), ("transversal", cert.checks)]
    for label, checks in parts:
        for name, passed in checks.items():
            rep.check(f"{label}: {name}", passed)
    return rep


# hyperspace


def cmd_hyperspace_demo(args) -> Report:
    if args.example != "fn-counterexample":
        raise InputError(f"unknown example {args.example!r}")
    k = args.n
    if k < 2:
        raise InputError("--n must be at least 2")
    try:
        tol = Fraction(1, k) if args.tol is None else Fraction(args.tol)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse --tol {args.tol!r} as a rational") from None
    if tol <= 0:
        raise InputError("--tol must be positive")
    rep = Report("hyperspace demo", digest({"example": args.example, "n": k, "tol": str(tol)}))
    seq = hyperspace.plus_minus_sequence(k)
    origin = hyperspace.PointSet([Fraction(0)])
    dists = [hyperspace.hausdorff(F, origin) for F in seq]
    lim = hyperspace.check_card_bound_limit(seq, 2, tol)
    samples = hyperspace.grid_samples(Fraction(-1), Fraction(1), tol)
    agree = hyperspace.hausdorff_wijsman_agreement(seq, origin, samples, tol)
    rep.results = {
        "k": k,
        "tol": tol,
        "hausdorffToOrigin": dists,
        "cardinalities": [len(F) for F in seq],
        "limit": lim.limit,
        "clusterCount": lim.cluster_count,
        "tailStart": lim.tail_start + 1,
        "cardinalityDrop": lim.cardinality_drop,
        "maxProfileDeviation": [r.max_deviation for r in agree.rows],
    }
    rep.check("hausdorff(F_j, {0}) == 1/j exactly", all(d == Fraction(1, j) for j, d in enumerate(dists, 1)))
    rep.check("limit has at most 2 points", lim.within_bound, f"{lim.cluster_count} cluster(s)")
    rep.check("cardinality drops 2 -> 1 in the limit", lim.cardinality_drop and lim.cluster_count == 1)
    rep.check("limit is {0} within tol", hyperspace.hausdorff(lim.limit, origin) <= tol)
    rep.check("1-Lipschitz bridge on all samples", agree.lipschitz_ok, f"{len(samples)} samples")
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report instead of a summary")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="group closure cap (default %(default)s)")

    p = argparse.ArgumentParser(prog="transversal-kit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="area", required=True)

    finite = sub.add_parser("finite", help="finite permutation groups").add_subparsers(dest="action", required=True)
    for name, fn in (("check", cmd_finite_check), ("transversal", cmd_finite_transversal)):
        sp = finite.add_parser(name, parents=[common])
        sp.add_argument("--spec", required=True)
        sp.set_defaults(func=fn)

    bs = sub.add_parser("bs", help="BS(1,2) = Z[1/2] x| Z").add_subparsers(dest="action", required=True)
    for name, fn in (("indices", cmd_bs_indices), ("report", cmd_bs_report)):
        sp = bs.add_parser(name, parents=[common])
        sp.add_argument("--q", default="0", help="dyadic rational, e.g. 3/8 (default 0)")
        sp.add_argument("--n", type=int, default=1, help="power of b (default 1)")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("solenoid", parents=[common], help="2-adic indices in the solenoid")
    sp.add_argument("--n", type=int, default=1)
    sp.set_defaults(func=cmd_solenoid)

    tower = sub.add_parser("tower", help="finite quotient towers").add_subparsers(dest="action", required=True)
    sp = tower.add_parser("run", parents=[common])
    sp.add_argument("--spec", required=True)
    sp.add_argument("--max-level", type=int, default=None)
    sp.set_defaults(func=cmd_tower_run)

    matrix = sub.add_parser("matrix", help="polar / QR transversals of U(n)").add_subparsers(dest="kind", required=True)
    for kind in ("polar", "qr"):
        sp = matrix.add_parser(kind, parents=[common])
        sp.add_argument("--n", type=int, default=3)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance (default %(default)g)")
        sp.set_defaults(func=cmd_matrix)

    hyp = sub.add_parser("hyperspace", help="Hausdorff / Wijsman demos").add_subparsers(dest="action", required=True)
    sp = hyp.add_parser("demo", parents=[common])
    sp.add_argument("--example", default="fn-counterexample", choices=["fn-counterexample"])
    sp.add_argument("--n", type=int, default=10, help="number of sets F_1..F_n")
    sp.add_argument("--tol", default=None, help="Cauchy tolerance as a rational (default 1/n)")
    sp.set_defaults(func=cmd_hyperspace_demo)
    return p


def run(argv: list[str]) -> Report:
    args = build_parser().parse_args(argv)
    return args.func(args)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    print(rep.to_json() if args.json else rep.summary())
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
