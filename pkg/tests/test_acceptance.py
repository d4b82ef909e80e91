"""The ten acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
"""
import subprocess
import sys
from functools import lru_cache

import pytest

from drinfeld import dual, extension, fq, h_exists_criterion, j_invariant, twist
from drinfeld import tate as TD
from drinfeld.dmodule import autoduality_check, h_structures_bruteforce, hom_check
from drinfeld.verify import GOLDEN_SPECS, Grid, golden_compare, golden_dir, random_h_modules, run

QS = (2, 3)
PREC = 32


@lru_cache(maxsize=None)
def report():
    return run(("algebra", "drinfeld", "motive", "td", "derham"), Grid(qs=QS, prec=PREC, seed=0))


def records(check, **match):
    suite, name = check.split(".")
    out = [r for r in report().records
           if r["suite"] == suite and r["check"] == name and all(r["params"].get(k) == v for k, v in match.items())]
    return out


def all_pass(recs, expected=None):
    ok = bool(recs) and all(r["status"] == "pass" for r in recs)
    return ok and (expected is None or len(recs) == expected)


def announce(capsys, n, title, ok, detail=""):
    with capsys.disabled():
        print(f"\ncriterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else ""))
    assert ok, f"criterion {n} failed: {detail}"


def test_criterion_01_memberships(capsys):
    recs = records("td.memberships", prec=PREC)
    direct = all(all(TD.membership_checks(q, *TD.td_coefficients(q, PREC)).values()) for q in QS)
    announce(capsys, 1, "a1 in 1 + x^(q-1)A[[x^(q-1)]], a2 in x^(q-1)A[[x^(q-1)]]^x (q = 2, 3; prec 32)",
             all_pass(recs, len(QS)) and direct)


def test_criterion_02_functional_equation(capsys):
    recs = [r for r in records("td.functional_equation", prec=PREC) if r["params"]["xdeg"] == r["params"]["q"] ** 3]
    announce(capsys, 2, "e(Phi^C_a X) = Phi^Lambda_a(e X) for a in {t, t+1, t^2}, X-degree <= q^3",
             all_pass(recs, 3 * len(QS)), f"{len(recs)} cases")


def test_criterion_03_autoduality(capsys):
    total_h, auto_ok, agree, count = 0, True, 0, 0
    for q in QS:
        for E, h in random_h_modules(q, 400, seed=0, ext=3):
            count += 1
            brute = bool(h_structures_bruteforce(E))
            agree += (h is not None) == h_exists_criterion(E) == brute
            if h is not None:
                total_h += 1
                auto_ok = auto_ok and autoduality_check(h)
    td_ok = all(autoduality_check(TD.cusp_data(q, PREC).h_structure()) for q in QS)
    ok = auto_ok and td_ok and total_h >= 200 and agree == count
    ok = ok and all_pass(records("drinfeld.autoduality")) and all_pass(records("drinfeld.h_exists"))
    announce(capsys, 3, "H: E -> E^D on random modules with h (q = 2, 3; m <= 3) and on the TD module; "
             "h exists iff the exponent criterion holds", ok,
             f"{total_h} modules with h, criterion agrees on {agree}/{count}")


def test_criterion_04_bh(capsys):
    ok = all_pass(records("td.bh_root", prec=PREC), len(QS)) and all_pass(records("td.bh_extension", prec=PREC), len(QS))
    for q in QS:
        lo, hi = TD.cusp_data(q, PREC), TD.cusp_data(q, 2 * PREC)
        lin = lo.bh - TD.td_ring(q).x(1)
        ok = ok and (lo.bh ** (q - 1) + lo.a2).is_zero() and (lin.is_zero() or lin.val >= 2)
        ok = ok and hi.bh.truncate(PREC).identical(lo.bh)
    announce(capsys, 4, "b_h^(q-1) = -a2, b_h = x mod x^2, prec 64 extends prec 32 digit for digit", ok)


WEIL_GRID = {2: [(0, 1), (1, 1), (1, 1, 1)], 3: [(0, 1)]}
WEIL_CHECKS = ("weil_bilinear", "weil_alternating", "weil_perfect", "weil_oracle", "weil_scaling", "mu_scaling")


def test_criterion_05_weil(capsys):
    ok, detail = True, []
    for q, moduli in WEIL_GRID.items():
        for n in moduli:
            modules = {r["params"]["module"] for r in records("motive.weil_perfect", q=q, n=list(n))
                       if "module" in r["params"]}
            ok = ok and len(modules) >= 3
            for chk in WEIL_CHECKS:
                ok = ok and all_pass(records(f"motive.{chk}", q=q, n=list(n)), len(modules))
            detail.append(f"q={q} n={list(n)}: {len(modules)} modules")
    announce(capsys, 5, "f_H bilinear, alternating, perfect (exhaustive); f_[c]H = c^-1 f_H; mu_[c]H = c mu_H",
             ok, "; ".join(detail))


def test_criterion_06_boeckle_residue(capsys):
    gram = records("motive.boeckle_gram")
    perfect = records("algebra.residue_perfect")
    lifts = records("algebra.residue_lift_independent")
    ok = all_pass(gram) and all_pass(perfect) and all_pass(lifts)
    announce(capsys, 6, "Boeckle Gram determinant is a unit; residue pairing perfect and lift-independent "
             "(100 lift pairs per modulus)", ok, f"{len(gram)} Gram matrices, {len(lifts)} moduli")


def test_criterion_07_hodge(capsys):
    ok = all(all_pass(records(f"derham.{c}", prec=PREC), len(QS)) for c in ("pi_i", "dX_Htau", "exact_basis"))
    announce(capsys, 7, "pi(i(dX)) = 0, <dX, H tau> = 1, det of {dX, eta} is x^q times a unit", ok)


def test_criterion_08_ks(capsys):
    ok = all(all_pass(records(f"derham.{c}", prec=PREC), len(QS)) for c in ("ks_l", "gram_unit"))
    announce(capsys, 8, "b_h^-1 l has valuation -2 with unit tail; <dX, eta> = x^2 l a2 b_h^-q is a unit", ok)


def test_criterion_09_dual_theta(capsys):
    count, ok = 0, True
    for q in QS:
        for E, _ in random_h_modules(q, 250, seed=0, ext=3):
            count += 1
            u = E.a2.inverse()
            DD = dual(dual(E))
            ok = ok and DD == twist(E, u) and hom_check(u, E, DD) and j_invariant(dual(E)) == j_invariant(E)
    theta = [all(TD.fq_action_check(q, c, PREC).values()) for q in QS for c in range(1, q)]
    ok = ok and count >= 500 and all(theta) and all_pass(records("derham.theta_c"))
    announce(capsys, 9, "(E^D)^D = E via alpha_2^-1 and j(E^D) = j(E); theta_c(dX) = c dX, theta_c(eta) = eta",
             ok, f"{count} modules")


def test_criterion_10_determinism_golden(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"verify{i}.json"
        proc = subprocess.run([sys.executable, "-m", "drinfeld.cli", "verify", "all", "--seed", "0", "--out", str(path)],
                              capture_output=True, text=True)
        outs.append((proc.returncode, path.read_bytes() if path.exists() else b""))
    same = outs[0][1] == outs[1][1] and bool(outs[0][1])
    d = golden_dir()
    golden = [golden_compare(q, prec, d) is True for q, prec in GOLDEN_SPECS]
    ok = same and all(golden) and outs[0][0] == 0
    announce(capsys, 10, "two `verify all` runs are byte-identical; golden files (q=2, prec=32), (q=3, prec=16) stable",
             ok, f"exit {outs[0][0]}, identical={same}, golden={golden}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
