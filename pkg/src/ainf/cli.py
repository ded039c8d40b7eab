"""Command-line front end.

Every command reads JSON (a file or standard input) and writes JSON.  Exit
status: 0 for a valid object or a finished construction, 1 when a checker
reports violations, 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import serialize as S
from .ainfinity import check_morphism, check_stasheff, check_stasheff_by_square
from .cochains import TypeMismatch, all_words, phi_inv_apply
from .comodules import (
    ComoduleCoderivation,
    HigherSigmaNonzero,
    NotFactorizing,
    check_curved_comodule,
    check_dg_comodule,
    comodule_morphism_check,
    matrix_factorization,
)
from .core.report import Report
from .core.rings import Ring, parse_ring, RingError
from .deformations import FirstOrderDeformation, first_order_check, gauge_action, \
    is_coboundary, su_first_order_check
from .representations import check_rep_morphism, check_representation, \
    check_su_representation
from .unital import (
    SplitUnitAlgebra,
    bracket_structure_check,
    check_curved_coalgebra,
    check_curved_morphism,
    check_stasheff_su,
    check_su_morphism_full,
    curved_bar,
    koszul_build,
    mc_check_su,
    su_morphism_check,
    su_morphism_to_curved,
)

DEFAULT_MAX_ARITY = 6

# which command (and route) reaches each library checker
COVERAGE = {
    "check_stasheff": "check-ainf (no unit)",
    "check_stasheff_su": "check-ainf --route stasheff",
    "check_stasheff_by_square": "bar",
    "mc_check_su": "check-ainf",
    "bracket_structure_check": "check-ainf --route bracket",
    "check_morphism": "check-morphism",
    "su_morphism_check": "check-morphism (split unit)",
    "check_su_morphism_full": "check-morphism --route full",
    "check_curved_morphism": "check-morphism --route curved",
    "check_curved_coalgebra": "curved-bar",
    "check_representation": "check-rep",
    "check_su_representation": "check-rep --strict-unital",
    "check_dg_comodule": "check-rep --route comodule",
    "check_curved_comodule": "check-rep --strict-unital --route comodule",
    "check_rep_morphism": "check-rep --morphism",
    "comodule_morphism_check": "check-rep --morphism --route comodule",
    "ShamashSystem.relations": "mf",
    "first_order_check": "deform-check",
    "su_first_order_check": "deform-check --strict-unital",
}


class Malformed(Exception):
    pass


def _read(path: str | None, what: str):
    try:
        if path is None or path == "-":
            return json.load(sys.stdin), "<stdin>"
        with open(path) as fh:
            return json.load(fh), path
    except json.JSONDecodeError as e:
        raise Malformed(f"{path or '<stdin>'}: {what}: invalid JSON ({e})") from None
    except OSError as e:
        raise Malformed(f"{path}: {what}: {e.strerror}") from None


def _load(path, what, fn):
    doc, name = _read(path, what)
    try:
        return fn(doc)
    except S.SchemaError as e:
        raise Malformed(f"{name}: {e.path or '$'}: {e.reason}") from None
    except (ValueError, KeyError, TypeError) as e:
        raise Malformed(f"{name}: {what}: {e}") from None


def _emit(args, doc) -> None:
    text = S.dumps(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ring(args, doc) -> Ring:
    file_ring = S.ring_of(doc) if isinstance(doc, dict) and "ring" in doc else None
    if args.ring is None:
        return file_ring or parse_ring("Z")
    try:
        r = parse_ring(args.ring)
    except RingError as e:
        raise Malformed(f"--ring: {e}") from None
    if file_ring is not None and file_ring != r:
        raise Malformed(f"--ring {r.spec} disagrees with the file's ring {file_ring.spec}")
    return r


def _algebra(args, path=None):
    src = path if path is not None else (args.algebra or args.input)

    def build(doc):
        return S.algebra_from_json(doc, _ring(args, doc), args.max_arity)

    return _load(src, "algebra", build)


def _finish(args, rep: Report, ring: Ring, **extra) -> int:
    _emit(args, S.report_to_json(rep, ring, **extra))
    return 0 if rep.valid else 1


def _cochain_file(args, path, what, module, ring, N):
    def build(doc):
        return S.cochain_from_json(doc.get("cochain", doc), module, module, ring, what, N)
    return _load(path, what, build)


# --------------------------------------------------------------------------
# commands


def cmd_koszul(args) -> int:
    ring = parse_ring(args.ring or "Z")
    N = args.max_arity or DEFAULT_MAX_ARITY
    try:
        f = ring.parse(str(args.f))
    except (RingError, ValueError) as e:
        raise Malformed(f"--f: {e}") from None
    _emit(args, S.algebra_to_json(koszul_build(f, ring, N)))
    return 0


def cmd_check_ainf(args) -> int:
    alg = _algebra(args)
    route = args.route
    if isinstance(alg, SplitUnitAlgebra):
        route = route or "maurer-cartan"
        if route == "maurer-cartan":
            rep = mc_check_su(alg, verbose=args.verbose)
        elif route == "stasheff":
            rep = check_stasheff_su(alg, verbose=args.verbose)
        elif route == "bracket":
            rep = bracket_structure_check(alg.mu_bar, alg.mu_bar, alg.h, alg.h, alg.carrier)
        else:
            raise Malformed(f"--route {route} does not apply to a split-unit algebra")
        return _finish(args, rep, alg.ring, route=route)
    route = route or "stasheff"
    if route != "stasheff":
        raise Malformed(f"--route {route} needs a split-unit algebra")
    return _finish(args, check_stasheff(alg, verbose=args.verbose), alg.ring, route=route)


def cmd_check_morphism(args) -> int:
    A = _algebra(args, args.source)
    B = _algebra(args, args.target)
    if isinstance(A, SplitUnitAlgebra) != isinstance(B, SplitUnitAlgebra):
        raise Malformed("source and target must both be split-unit or both not")
    doc, name = _read(args.morphism, "morphism")
    try:
        if isinstance(A, SplitUnitAlgebra):
            N = A.max_arity
            g_bar = S.cochain_from_json(doc["g_bar"], A.module, B.module, A.ring, "g_bar", N)
            a = S.cochain_from_json(doc["a"], A.module, B.module, A.ring, "a", N)
        else:
            N = A.max_arity
            g = S.cochain_from_json(doc["g"], A.source, B.source, A.ring, "g", N)
    except KeyError as e:
        raise Malformed(f"{name}: $: missing key {e}") from None
    except S.SchemaError as e:
        raise Malformed(f"{name}: {e.path}: {e.reason}") from None
    if not isinstance(A, SplitUnitAlgebra) and args.route in ("curved", "full"):
        raise Malformed(f"--route {args.route} needs split-unit algebras")
    if isinstance(A, SplitUnitAlgebra):
        if args.route == "curved":
            m = su_morphism_to_curved(g_bar, a, A, B, check=False)
            rep = check_curved_morphism(m, curved_bar(A, False), curved_bar(B, False),
                                        verbose=args.verbose)
        elif args.route == "full":
            rep = check_su_morphism_full(g_bar, a, A, B, verbose=args.verbose)
        else:
            rep = su_morphism_check(g_bar, a, A, B, verbose=args.verbose)
        return _finish(args, rep, A.ring)
    return _finish(args, check_morphism(g, A, B, verbose=args.verbose), A.ring)


def cmd_bar(args) -> int:
    alg = _algebra(args)
    nu = alg.nu if isinstance(alg, SplitUnitAlgebra) else alg
    ring = nu.ring
    d = []
    for w in all_words(nu.source.labels, nu.max_arity):
        img = phi_inv_apply(nu, w)
        if img:
            d.append({"word": list(w), "image": [{"word": list(v), "coeff": ring.format(c)}
                                                 for v, c in sorted(img.items())]})
    rep = check_stasheff_by_square(nu)
    _emit(args, {"type": "bar", "ring": ring.spec, "max_arity": nu.max_arity, "d": d,
                 "report": S.report_to_json(rep, ring)})
    return 0 if rep.valid else 1


def cmd_curved_bar(args) -> int:
    alg = _algebra(args)
    if not isinstance(alg, SplitUnitAlgebra):
        raise Malformed("curved-bar needs a split-unit algebra")
    C = curved_bar(alg, check=False)
    ring = alg.ring
    d, xi = [], []
    for w in C.words():
        img = C.d(w)
        if img:
            d.append({"word": list(w), "image": [{"word": list(v), "coeff": ring.format(c)}
                                                 for v, c in sorted(img.items())]})
        x = C.xi(w)
        if x:
            xi.append({"word": list(w), "value": ring.format(x)})
    rep = check_curved_coalgebra(C, verbose=args.verbose)
    _emit(args, {"type": "curved_bar", "ring": ring.spec, "max_arity": C.max_arity,
                 "alphabet": list(C.alphabet), "d": d, "xi": xi,
                 "report": S.report_to_json(rep, ring)})
    return 0 if rep.valid else 1


def cmd_check_rep(args) -> int:
    alg = _algebra(args)
    su = args.strict_unital
    if su and not isinstance(alg, SplitUnitAlgebra):
        raise Malformed("--strict-unital needs a split-unit algebra")
    nu = alg.nu if isinstance(alg, SplitUnitAlgebra) else alg
    ring = nu.ring

    def rep_of(path, what):
        return _load(path, what, lambda doc: S.adjoint_from_json(doc, nu.source, ring))

    lam = rep_of(args.rep, "representation")
    comodule = args.route == "comodule"

    def coder(L):
        if su:
            return ComoduleCoderivation.from_su_representation(L, alg)
        return ComoduleCoderivation.from_representation(L, nu)

    if args.morphism:
        if not args.target_rep:
            raise Malformed("--morphism needs --target-rep")
        lam_n = rep_of(args.target_rep, "target representation")
        g = rep_of(args.morphism, "morphism")
        if comodule:
            rep = comodule_morphism_check(g, coder(lam), coder(lam_n), verbose=args.verbose)
        else:
            rep = check_rep_morphism(g, lam, lam_n, nu=nu, alg=alg if su else None, su=su,
                                     verbose=args.verbose)
        return _finish(args, rep, ring)
    if comodule:
        if su:
            rep = check_curved_comodule(coder(lam), alg.xi, verbose=args.verbose)
        else:
            rep = check_dg_comodule(coder(lam), verbose=args.verbose)
    elif su:
        rep = check_su_representation(lam, alg, verbose=args.verbose)
    else:
        rep = check_representation(lam, nu, verbose=args.verbose)
    return _finish(args, rep, ring)


def cmd_mf(args) -> int:
    def build(doc):
        r = _ring(args, doc)
        f = r.parse(str(args.koszul)) if args.koszul is not None else None
        return S.shamash_from_json(doc, r, f)

    sys_ = _load(args.shamash or args.input, "shamash", build)
    ring = sys_.ring
    rep = sys_.relations(verbose=args.verbose)
    if not rep.valid:
        return _finish(args, rep, ring)
    try:
        mf = matrix_factorization(sys_)
    except HigherSigmaNonzero as e:
        raise Malformed(f"shamash: {e}; only sigma^0 and sigma^1 give a factorization") from None
    except NotFactorizing as e:
        raise Malformed(f"shamash: {e}") from None
    _emit(args, S.mf_to_json(mf))
    return 0


def _deformation(args):
    alg = _algebra(args)
    su = args.strict_unital
    if su and not isinstance(alg, SplitUnitAlgebra):
        raise Malformed("--strict-unital needs a split-unit algebra")
    nu = alg.nu if isinstance(alg, SplitUnitAlgebra) else alg
    eta = _cochain_file(args, args.eta, "eta", nu.source, nu.ring, nu.max_arity)
    try:
        return alg, FirstOrderDeformation(alg if su else nu, eta)
    except TypeMismatch as e:
        raise Malformed(f"eta: {e}") from None


def cmd_deform_check(args) -> int:
    alg, d = _deformation(args)
    ring = d.nu.ring
    if args.strict_unital:
        route = "dual" if args.route == "dual" else "reduced"
        rep = su_first_order_check(alg, d.eta, route, verbose=args.verbose)
    else:
        route = "dual" if args.route == "dual" else "bracket"
        rep = first_order_check(d, route, verbose=args.verbose)
    extra = {"route": route}
    if args.coboundary and rep.valid:
        status, alpha = is_coboundary(d)
        extra["coboundary"] = status
        if alpha is not None:
            extra["alpha"] = S.cochain_to_json(alpha)
    return _finish(args, rep, ring, **extra)


def cmd_gauge(args) -> int:
    alg, d = _deformation(args)
    nu = d.nu
    alpha = _cochain_file(args, args.alpha, "alpha", nu.source, nu.ring, nu.max_arity)
    try:
        moved = gauge_action(alpha, d)
    except TypeMismatch as e:
        raise Malformed(f"alpha: {e}") from None
    _emit(args, {"type": "cochain", "ring": nu.ring.spec, "cochain": S.cochain_to_json(moved.eta)})
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="Z, Q or Zmod:m")
    common.add_argument("--max-arity", type=int, default=None,
                        help=f"truncation N (default: the input's, or {DEFAULT_MAX_ARITY})")
    common.add_argument("--in", dest="input", help="main input file (default: stdin)")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--verbose", action="store_true", help="list every violation")

    p = argparse.ArgumentParser(prog="ainf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("koszul", parents=[common], help="build the Koszul algebra on f")
    q.add_argument("--f", required=True)
    q.set_defaults(fn=cmd_koszul)

    q = sub.add_parser("check-ainf", parents=[common], help="check an algebra")
    q.add_argument("--algebra")
    q.add_argument("--route", choices=["stasheff", "maurer-cartan", "bracket"])
    q.set_defaults(fn=cmd_check_ainf)

    q = sub.add_parser("check-morphism", parents=[common], help="check a morphism")
    q.add_argument("--source", required=True)
    q.add_argument("--target", required=True)
    q.add_argument("--morphism", required=True)
    q.add_argument("--route", choices=["direct", "curved", "full"])
    q.add_argument("--algebra", help=argparse.SUPPRESS)
    q.set_defaults(fn=cmd_check_morphism)

    for name, fn, text in (("bar", cmd_bar, "bar differential of an algebra"),
                           ("curved-bar", cmd_curved_bar, "curved bar construction")):
        q = sub.add_parser(name, parents=[common], help=text)
        q.add_argument("--algebra")
        q.set_defaults(fn=fn)

    q = sub.add_parser("check-rep", parents=[common], help="check a representation")
    q.add_argument("--algebra")
    q.add_argument("--rep", required=True)
    q.add_argument("--strict-unital", action="store_true")
    q.add_argument("--route", choices=["adjoint", "comodule"])
    q.add_argument("--morphism")
    q.add_argument("--target-rep")
    q.set_defaults(fn=cmd_check_rep)

    q = sub.add_parser("mf", parents=[common], help="matrix factorization of a Shamash system")
    q.add_argument("--koszul", help="f (overrides the file's value)")
    q.add_argument("--shamash")
    q.set_defaults(fn=cmd_mf)

    for name, fn, text in (("deform-check", cmd_deform_check, "check a first-order deformation"),
                           ("gauge", cmd_gauge, "apply a first-order gauge transformation")):
        q = sub.add_parser(name, parents=[common], help=text)
        q.add_argument("--algebra")
        q.add_argument("--eta", required=True)
        q.add_argument("--strict-unital", action="store_true")
        if name == "deform-check":
            q.add_argument("--route", choices=["bracket", "dual"])
            q.add_argument("--coboundary", action="store_true",
                           help="also decide whether eta is a coboundary")
        else:
            q.add_argument("--alpha", required=True)
        q.set_defaults(fn=fn)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.max_arity is not None and args.max_arity < 1:
        print("ainf: --max-arity must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except Malformed as e:
        print(f"ainf: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
