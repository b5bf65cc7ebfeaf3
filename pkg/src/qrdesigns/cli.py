"""Command line interface.

Exit codes: 0 success, 2 enumeration budget refused, 3 a check failed,
4 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .codes import (
    BUDGET_ENV,
    EnumerationBudgetError,
    LinearCode,
    dual,
    extended_qr_code,
    intersection,
    permute,
    qr_code,
    same_code,
    weight_distribution,
)
from .designs import (
    delta_s_profile,
    implied_lambda,
    psl2_acts,
    shell_design_check_orbitwise,
    union_design_check,
)
from .enumerators import (
    JacobiPolynomial,
    harmonic_from_jacobis,
    invariant_harmonic3,
    jacobi,
    orbit_jacobis,
)
from .projective import duality_permutation, image_of_triples, orbit_partition, point_from_label
from .reference import (
    Q42_DESIGN_SHELLS,
    Q42_LAMBDA4_SHELL10,
    Q42_PROFILE,
    Q42_SHELL10_BLOCKS,
    q42_difference_closed_form,
    q42_harmonic_closed_form,
    q42_jacobi_tables,
)

EXIT_OK, EXIT_BUDGET, EXIT_CHECK, EXIT_INPUT = 0, 2, 3, 4


class CheckFailed(Exception):
    pass


def parse_triple(text: str) -> tuple:
    parts = [s.strip() for s in text.split(",") if s.strip()]
    return tuple("inf" if s.lower() in ("inf", "∞") else int(s) for s in parts)


def _emit(obj, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def _code(p: int, extended: bool = True) -> LinearCode:
    return extended_qr_code(p) if extended else qr_code(p)


# -- commands -----------------------------------------------------------------

def cmd_build(args) -> int:
    code = _code(args.p, args.extended)
    text = code.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(code.to_json(), indent=2) if args.format == "json" else text)
    elif args.format == "json":
        print(json.dumps(code.to_json(), indent=2))
    else:
        sys.stdout.write(text)
    print(f"n={code.n} k={code.k}", file=sys.stderr if not args.out else sys.stdout)
    dist = weight_distribution(code, args.threads, args.budget)
    summary = " ".join(f"{l}:{int(c)}" for l, c in enumerate(dist) if c)
    print(f"weight distribution {summary}", file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def cmd_jacobi(args) -> int:
    code = _code(args.p)
    if args.dual:
        code = dual(code)
    T = parse_triple(args.T)
    for lab in T:
        point_from_label(args.p, lab)
    J = jacobi(code, T, args.threads, args.budget)
    if args.format == "json":
        print(json.dumps(J.to_json(), indent=2))
    elif args.format == "paper-style":
        print(f"J(w,z,x,y) = {J.paper_style()}")
    else:
        print(f"n={J.n} T={{{', '.join(map(str, T))}}}")
        for (m0, m1, n0, n1), c in J.terms():
            print(f"  w^{m0} z^{m1} x^{n0} y^{n1}: {c}")
    return EXIT_OK


def cmd_harmonic(args) -> int:
    orbits = orbit_partition(args.p)
    f = invariant_harmonic3(orbits)
    code = _code(args.p)
    if args.dual:
        code = dual(code)
    w = harmonic_from_jacobis(f, orbits, *orbit_jacobis(code, orbits, args.threads, args.budget))
    data = {"p": args.p, "f": [str(v) for v in f.values], "enumerator": w.to_json()}
    _emit(data, args.format, f"f = {tuple(str(v) for v in f.values)} on (GT1, GT2)\nw = {w.pretty()}")
    return EXIT_OK


def cmd_design(args) -> int:
    p = args.p
    orbits = orbit_partition(p)
    code = _code(p)
    single = args.union or args.shell is not None
    if args.t is None:
        args.t = 3 if single else 4
    if single and args.t != 3:
        raise ValueError("single-shell and union checks decide t = 3 only")
    if not psl2_acts(code, p):
        raise CheckFailed("PSL(2, p) does not act on the code; orbitwise checks unavailable")
    if args.union:
        D = dual(code)
        jc = orbit_jacobis(code, orbits, args.threads, args.budget)
        jd = orbit_jacobis(D, orbits, args.threads, args.budget)
        ji = orbit_jacobis(intersection(code, D), orbits, args.threads, args.budget)
        shells = [args.shell] if args.shell is not None else range(code.n + 1)
        reports = [union_design_check(code, D, l, orbits, jc, jd, ji) for l in shells]
        reports = [r for r in reports if args.shell is not None or r.blocks]
        _emit([r.to_json() for r in reports], args.format, "\n".join(r.line() for r in reports))
        return EXIT_OK
    if args.shell is not None:
        report = shell_design_check_orbitwise(code, args.shell, orbits, threads=args.threads,
                                              budget=args.budget)
        v = report.verdict(3)
        text = report.line()
        if v.status == "not-design":
            text = f"shell {args.shell}: not a 3-design (covering counts {report.covering})"
        elif v.status == "design":
            text = f"shell {args.shell}: 3-({code.n},{args.shell},{v.lam}) design, {report.blocks} blocks"
        _emit(report.to_json(), args.format, text)
        return EXIT_OK
    profile = delta_s_profile(code, orbits, args.t, args.threads, args.budget)
    text = "\n".join(r.line() for r in profile.reports)
    text += f"\ndelta = {profile.delta}, s = {profile.s}"
    _emit(profile.to_json(), args.format, text)
    return EXIT_OK


def cmd_orbits(args) -> int:
    orbits = orbit_partition(args.p)
    data = orbits.to_json()
    _emit(data, args.format, f"p={args.p} representatives={data['representatives']} sizes={data['sizes']}")
    return EXIT_OK


# -- reproduce ----------------------------------------------------------------

def reproduce_checks(p: int, threads=None, budget=None):
    """Yield (name, passed, detail) for every reproducible statement at ``p``."""
    code = extended_qr_code(p)
    yield "dimension (p+1)/2", code.k == (p + 1) // 2, f"n={code.n} k={code.k}"
    if p % 8 != 1:
        return
    gens_ok = psl2_acts(code, p)
    yield "PSL(2,p) generators fix the extended code", gens_ok, "x+1, s^2 x, -1/x"
    orbits = orbit_partition(p)
    yield ("two triple orbits (formula = closure)", sum(orbits.sizes) == code.n * (code.n - 1) * (code.n - 2) // 6,
           f"sizes {orbits.sizes}")
    D = dual(code)
    sigma = duality_permutation(p, code, D)
    yield "duality permutation maps C onto its dual", same_code(permute(code, sigma), D), \
        f"sigma(1) = {sigma[1]}"
    yield "duality permutation swaps the orbits", \
        image_of_triples(sigma, orbits.triples(1)) == set(orbits.triples(2)), ""
    common = intersection(code, D)
    yield "C ∩ C^⊥ = {0, 1}", common.k == 1 and common.rows[0] == (1 << code.n) - 1, f"dim {common.k}"

    jc = orbit_jacobis(code, orbits, threads, budget)
    jd = orbit_jacobis(D, orbits, threads, budget)
    ji = orbit_jacobis(common, orbits, threads, budget)
    yield "J(C,T1)+J(C^⊥,T1) = J(C,T2)+J(C^⊥,T2)", (jc[0] + jd[0]) == (jc[1] + jd[1]), ""
    f = invariant_harmonic3(orbits)
    wc = harmonic_from_jacobis(f, orbits, *jc)
    wd = harmonic_from_jacobis(f, orbits, *jd)
    yield "w(C,f) + w(C^⊥,f) = 0", (wc + wd).is_zero(), f"f = {tuple(str(v) for v in f.values)}"
    unions = [union_design_check(code, D, l, orbits, jc, jd, ji) for l in range(code.n + 1)]
    nonempty = [r for r in unions if r.blocks]
    yield "every nonempty union shell is a 3-design", all(r.is_design(3) for r in nonempty), \
        f"{len(nonempty)} nonempty shells"

    if p != 41:
        return
    ref1, ref2 = q42_jacobi_tables()
    for name, mine, ref in (("T1 = {0,1,inf}", jc[0], ref1), ("T2 = {0,6,inf}", jc[1], ref2)):
        bad = [m for m, c in ref.terms() if mine[m] != c]
        yield f"Jacobi table {name} ({len(ref.terms())} terms)", mine == ref and not bad, \
            f"{len(bad)} mismatched terms"
    closed = JacobiPolynomial.from_monomials(42, jc[0].T, q42_difference_closed_form())
    yield "J(T1) - J(T2) = x^9y^9(x^2-y^2)^9(wy-xz)^3", (jc[0] - jc[1]) == closed, ""
    ref_w = q42_harmonic_closed_form()
    scalar = wc.scalar_to(ref_w)
    yield "w(C,f) proportional to -5740 x^12y^12(x^2-y^2)^9", scalar not in (None, Fraction(0)), \
        f"scalar {scalar}"
    yield "harmonic coefficients vanish at l = 10, 32", wc.coeff[10] == 0 and wc.coeff[32] == 0, ""
    profile = delta_s_profile(code, orbits, 4, threads, budget)
    by_l = {r.l: r for r in profile.reports}
    for l, lam in Q42_DESIGN_SHELLS.items():
        r = by_l[l]
        yield f"shell {l} is a 3-(42,{l},{lam}) design", r.is_design(3) and r.verdict(3).lam == lam, \
            f"{r.blocks} blocks"
    yield "shell 10 has 1722 blocks", by_l[10].blocks == Q42_SHELL10_BLOCKS, ""
    others = [r for l, r in by_l.items() if l not in Q42_DESIGN_SHELLS]
    yield "all other nonempty shells are not 3-designs", all(
        r.verdict(3) is not None and r.verdict(3).status == "not-design" for r in others), \
        f"{len(others)} shells"
    lam4 = implied_lambda(3, 18, 4, 42, 10)
    yield "lambda_4 = 42/13 refutes a 4-design at l = 10", \
        lam4 == Fraction(*Q42_LAMBDA4_SHELL10) and by_l[10].verdict(4).status == "not-design", str(lam4)
    yield "(delta, s) = (2, 3)", (profile.delta, profile.s) == Q42_PROFILE, \
        f"({profile.delta}, {profile.s})"


def cmd_reproduce(args) -> int:
    failed = 0
    start = time.perf_counter()
    results = []
    for name, ok, detail in reproduce_checks(args.p, args.threads, args.budget):
        ok = bool(ok)
        failed += not ok
        results.append({"check": name, "passed": ok, "detail": detail})
        if args.format != "json":
            print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
    if args.format == "json":
        print(json.dumps({"p": args.p, "checks": results}, indent=2))
    else:
        print(f"{len(results) - failed}/{len(results)} checks passed in {time.perf_counter() - start:.1f}s")
    return EXIT_CHECK if failed else EXIT_OK


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qrdesigns", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="prime length of the QR code")
    common.add_argument("--budget", type=int, default=None,
                        help=f"largest dimension to enumerate (default 25, env {BUDGET_ENV})")
    common.add_argument("--threads", type=int, default=None, help="enumeration workers")
    common.add_argument("--format", choices=("text", "json", "paper-style"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="write the generator matrix")
    b.add_argument("--extended", action="store_true", help="append the parity coordinate")
    b.add_argument("--out", help="write the matrix to this file")
    b.set_defaults(func=cmd_build)

    j = sub.add_parser("jacobi", parents=[common], help="Jacobi polynomial for a coordinate set")
    j.add_argument("--T", required=True, help="comma-separated labels, e.g. 0,1,inf")
    j.add_argument("--dual", action="store_true", help="use the dual code")
    j.set_defaults(func=cmd_jacobi)

    h = sub.add_parser("harmonic", parents=[common], help="harmonic weight enumerator")
    h.add_argument("--dual", action="store_true", help="use the dual code")
    h.set_defaults(func=cmd_harmonic)

    d = sub.add_parser("design", parents=[common], help="t-design classification of shells")
    d.add_argument("--t", type=int, default=None,
                   help="strength: 3 for --shell/--union, largest strength for the profile (default 4)")
    d.add_argument("--shell", type=int, default=None, help="single shell weight (t = 3)")
    d.add_argument("--all", action="store_true", help="every shell (default when --shell is absent)")
    d.add_argument("--union", action="store_true", help="use B(C_l) ∪ B(C^⊥_l)")
    d.set_defaults(func=cmd_design)

    o = sub.add_parser("orbits", parents=[common], help="PSL(2,p) orbits on 3-subsets")
    o.set_defaults(func=cmd_orbits)

    r = sub.add_parser("reproduce", parents=[common], help="run every named check")
    r.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EnumerationBudgetError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (ValueError, KeyError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
