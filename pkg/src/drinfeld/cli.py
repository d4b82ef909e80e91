"""Command-line interface: ``drinfeld {td-coeffs, weil, derham, verify, golden}``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource cap hit.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import codec, derham as DR, motive as MO, tate as TD, verify as V
from .dmodule import HStructure, dm_make, h_structure_find
from .fields import FieldElem, ResourceCapError, extension, fq, is_prime
from .ore import KernelDegreeError
from .poly import Poly, PolyRing

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1 and is_prime(p)


def _resolve_qs(args) -> tuple:
    qs = tuple(args.q) if args.q else ()
    if args.p is not None:
        if not is_prime(args.p):
            raise UsageError(f"--p {args.p} is not prime")
        if qs and any(q % args.p for q in qs):
            raise UsageError("--q must be a power of --p")
        if not qs:
            qs = (args.p,)
    for q in qs:
        if not _prime_power(q):
            raise UsageError(f"--q {q} is not a prime power")
    return qs


def _parse_modulus(text: str, q: int | None = None) -> tuple:
    try:
        cs = tuple(int(c) for c in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise UsageError(f"--n expects comma-separated coefficients, got {text!r}") from exc
    if len(cs) < 2 or cs[-1] != 1:
        raise UsageError(f"--n {text!r} must be monic of positive degree (low to high coefficients)")
    if q is not None and any(not 0 <= c < q for c in cs):
        raise UsageError(f"--n {text!r} has coefficients outside F_{q}")
    return cs


def _single_q(args, default: int = 2) -> int:
    qs = _resolve_qs(args)
    if len(qs) > 1:
        raise UsageError("this command takes a single --q")
    return qs[0] if qs else default


def _emit(doc, out):
    text = codec.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------

def cmd_td_coeffs(args) -> int:
    q = _single_q(args)
    if args.prec < q * q:
        raise UsageError(f"--prec must be at least q^2 = {q * q}")
    _emit(V.td_coeffs_doc(q, args.prec), args.out)
    return EXIT_OK


def _weil_module(args, q: int, n: Poly):
    K = extension(fq(q), args.ext)
    given = (args.theta, args.alpha1, args.alpha2)
    if all(v is None for v in given):
        cases = V.weil_cases(q, n.coeffs, 1, args.seed, max_order=K.order ** args.maxdeg, ms=(args.ext,))
        if not cases:
            raise UsageError("no module with an h-structure and small splitting field found; pass --theta/--alpha1/--alpha2")
        return cases[0].E, cases[0].h
    if any(v is None for v in given):
        raise UsageError("--theta, --alpha1 and --alpha2 go together")
    if any(not 0 <= v < K.order for v in given) or args.alpha2 == 0:
        raise UsageError(f"module coefficients must be codes of F_{K.order} with alpha2 != 0")
    E = dm_make(K, FieldElem(K, args.theta), [FieldElem(K, args.alpha1), FieldElem(K, args.alpha2)])
    h = h_structure_find(E)
    if h is None:
        raise UsageError("this module has no h-structure")
    return E, h


def cmd_weil(args) -> int:
    q = _single_q(args)
    ncoef = _parse_modulus(args.n or "0,1", q)
    n = Poly(PolyRing(fq(q)), list(ncoef))
    E, h = _weil_module(args, q, n)
    if args.scale_h is not None:
        if not 0 < args.scale_h < q:
            raise UsageError("--scale-h must be a nonzero element of F_q")
        h = h.act(args.scale_h)
    try:
        Et, Ct = MO.common_torsion(E, n, args.maxdeg)
    except MO.MotiveError as exc:
        raise UsageError(str(exc)) from exc
    W = MO.WeilPairing(Et, Ct, h)
    L = Et.field
    P, Q = Et.basis
    if args.P is not None or args.Q is not None:
        P = args.P if args.P is not None else P
        Q = args.Q if args.Q is not None else Q
        for pt in (P, Q):
            if pt not in Et.point_set:
                raise UsageError(f"point {pt} is not in E[n] over F_{L.order}")
    val = W(P, Q)
    B = Et.basis
    doc = codec.document("weil", {
        "q": q, "n": list(ncoef), "module": codec.encode_module(E),
        "h": codec.encode_base_elem(h.H), "scale_h": args.scale_h,
        "torsion_field": codec.encode_field(L),
        "P": codec.encode_elem(L, P), "Q": codec.encode_elem(L, Q),
        "value": codec.encode_elem(L, val),
        "generator": Ct.is_free_generator(val),
        "carlitz_generator": codec.encode_elem(L, Ct.basis[0]),
        "basis": [codec.encode_elem(L, b) for b in B],
        "table": [[codec.encode_elem(L, W(x, y)) for y in B] for x in B],
    })
    _emit(doc, args.out)
    return EXIT_OK


def cmd_derham(args) -> int:
    q = _single_q(args)
    if args.prec < q * q:
        raise UsageError(f"--prec must be at least q^2 = {q * q}")
    cd = TD.cusp_data(q, args.prec)
    E = TD.td_module_from(cd)
    h = HStructure(E, cd.bh)
    basis = [DR.hodge_i(E), DR.DRElement(E, *cd.eta)]
    G = DR.gram(h, basis)
    grid = V.Grid(qs=(q,), prec=args.prec, seed=args.seed)
    rep = V.Report(grid)
    V.suite_derham(rep, grid)
    rep.suites.append("derham")
    doc = codec.document("derham", {
        "q": q, "prec": args.prec,
        "gram": [[codec.encode_series(x) for x in row] for row in G],
        "ks": codec.encode_series(DR.kodaira_spencer(E, DR.d_dx())),
        "ks_autodual": codec.encode_series(DR.ks_autodual(h, DR.d_dx())),
        "report": rep.to_json(),
    })
    _emit(doc, args.out)
    return EXIT_OK if rep.ok() else EXIT_FAIL


def cmd_verify(args) -> int:
    qs = _resolve_qs(args) or (2, 3)
    moduli = tuple(_parse_modulus(s) for s in args.n) if args.n else None
    if moduli:
        for q in qs:
            for m in moduli:
                if any(c >= q for c in m):
                    raise UsageError(f"--n {m} has coefficients outside F_{q}")
    if args.prec < max(q * q for q in qs):
        raise UsageError("--prec must be at least q^2 for every q")
    grid = V.Grid(qs=qs, prec=args.prec, moduli=moduli, seed=args.seed, ext=args.ext,
                  golden_dir=args.golden_dir)
    suites = V.SUITES if args.suite == "all" else (args.suite,)
    rep = V.run(suites, grid)
    _emit(rep.to_json(with_timing=args.timing), args.out)
    for r in rep.failures():
        print(f"FAIL {r['suite']}.{r['check']} {r['params']}: {r.get('detail', '')}", file=sys.stderr)
    return EXIT_OK if rep.ok() else EXIT_FAIL


def cmd_golden(args) -> int:
    d = V.golden_dir(args.golden_dir)
    if args.check:
        bad = 0
        for q, prec in V.GOLDEN_SPECS:
            res = V.golden_compare(q, prec, d)
            ok = res is True
            print(f"{'ok  ' if ok else 'FAIL'} {V.golden_name(q, prec)}" + ("" if ok else f": {res[1]}"))
            bad += not ok
        return EXIT_FAIL if bad else EXIT_OK
    for path in V.write_golden(d):
        print(path)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drinfeld", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, prec=32):
        p.add_argument("--q", type=int, action="append", help="constant field size")
        p.add_argument("--p", type=int, help="characteristic; sets q = p when --q is absent")
        p.add_argument("--prec", type=int, default=prec, help="x-adic precision")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("td-coeffs", help="a1, a2, b_h and l of the Tate-Drinfeld module")
    common(p)
    p.set_defaults(func=cmd_td_coeffs)

    p = sub.add_parser("weil", help="the h-structure Weil pairing on E[n]")
    common(p)
    p.add_argument("--n", help="modulus n as coefficients, low degree first (default 0,1 = t)")
    p.add_argument("--ext", type=int, default=1, help="base field F_(q^ext)")
    p.add_argument("--theta", type=int)
    p.add_argument("--alpha1", type=int)
    p.add_argument("--alpha2", type=int)
    p.add_argument("--P", type=int, help="first point (code in the torsion field)")
    p.add_argument("--Q", type=int, help="second point (code in the torsion field)")
    p.add_argument("--scale-h", type=int, dest="scale_h", help="replace H by [c]H = c^-1 H")
    p.add_argument("--maxdeg", type=int, default=8, help="largest extension degree for the torsion")
    p.set_defaults(func=cmd_weil)

    p = sub.add_parser("derham", help="de Rham Gram matrix and Kodaira-Spencer coordinate at the cusp")
    common(p)
    p.set_defaults(func=cmd_derham)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=V.SUITES + ("all",))
    common(p)
    p.add_argument("--n", action="append", help="modulus coefficient list (repeatable)")
    p.add_argument("--ext", type=int, default=3, help="largest base-field degree for random modules")
    p.add_argument("--golden-dir", dest="golden_dir")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identity)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("golden", help="write or check golden td-coeffs files")
    p.add_argument("--golden-dir", dest="golden_dir")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_golden)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"drinfeld: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceCapError, KernelDegreeError) as exc:
        print(f"drinfeld: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
