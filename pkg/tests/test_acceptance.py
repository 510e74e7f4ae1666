"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (lines are echoed in the terminal summary) or directly:

    python tests/test_acceptance.py
"""

import csv
import math
import os
import sys
import tempfile
import time

import numpy as np
import pytest

from ambnorm import bounds, cli, verify
from ambnorm.phase_plane import cross_ambiguity, surface_lp_norm, weighted_r_norm
from ambnorm.weights import GaussianWeight, IndicatorWeight, Rect

pytestmark = pytest.mark.acceptance

LINES = []


def report(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d} {title}: {detail}"
    LINES.append(line)
    print(line)
    assert ok, line


def test_c01_moyal():
    rng = verify.scenario_rng(0, "acceptance-moyal")
    start = time.perf_counter()
    devs = [abs(surface_lp_norm(cross_ambiguity(*verify.random_pair(rng)), 2) - 1) for _ in range(20)]
    took = time.perf_counter() - start
    report(1, "Moyal identity", max(devs) <= 1e-6 and took < 10,
           f"max | ||A||_2 - 1 | = {max(devs):.2e} (tol 1e-6) over 20 pairs in {took:.2f}s (< 10s)")


def test_c02_lieb_gaussian_equality(unit_g):
    lhs, _ = bounds.lieb_bound_check(unit_g, unit_g, 4, 2, 2)
    rng = verify.scenario_rng(0, "acceptance-lieb")
    others = [bounds.lieb_bound_check(*verify.random_pair(rng, non_gaussian=True), 4, 2, 2)[0]
              for _ in range(20)]
    ok = abs(lhs - 0.5) <= 1e-5 and max(others) < 0.5
    report(2, "Lieb equality for Gaussians", ok,
           f"Gaussian ||A||_4^4 = {lhs:.12f} (0.5 +- 1e-5); max over 20 non-Gaussian pairs "
           f"{max(others):.6f} < 0.5")


def test_c03_lieb_constant():
    errs = {p: abs(bounds.lieb_constant(p, 2, 2) - 2 / p) / (2 / p) for p in (2.5, 3, 4, 6, 10)}
    worst = max(errs.values())
    report(3, "H(p,2,2) = 2/p", worst < 1e-12, f"max relative error {worst:.2e} (tol 1e-12)")


def test_c04_gaussian_tightness(unit_g):
    s = cross_ambiguity(unit_g, unit_g)
    parts, ok = [], True
    for alpha, r in ((1, 2), (2, 2), (1, 1), (0.6, 1)):
        target = 2 * alpha / (2 * alpha + r)
        val = weighted_r_norm(s, GaussianWeight(alpha), r)
        rep = bounds.best_bound_gaussian(r, alpha)
        rel = abs(val - target) / target
        ok &= rel <= 2e-4 and rep.bound_value == target and rep.p_opt == 2 * alpha / r + 1
        ok &= rep.tight
        parts.append(f"(a={alpha},r={r}) rel {rel:.1e}")
    report(4, "Gaussian-weight tightness", ok, "; ".join(parts) + " (tol 2e-4), closed form exact")


def test_c05_boundary_gap(unit_g):
    val = weighted_r_norm(cross_ambiguity(unit_g, unit_g), GaussianWeight(0.25), 1)
    b = bounds.best_bound_gaussian(1, 0.25).bound_value
    ok = abs(val - 1 / 3) <= 2e-4 and b - val > 0.019 and abs(b - math.sqrt(0.125)) < 1e-15
    report(5, "boundary-branch gap", ok, f"value {val:.8f} (1/3 +- 2e-4), bound {b:.8f}, gap {b - val:.5f} > 0.019")


def test_c06_indicator_strictness():
    res = verify.run_scenario("indicator_strict", seed=0)
    report(6, "indicator strictness", res.passed and res.measured < 1,
           f"max value/bound = {res.measured:.6f} < 1; {res.detail}")


def test_c07_branch_continuity():
    worst = 0.0
    for r in (0.5, 1, 1.5, 2, 3):
        a = (2 - r) / 2
        if a > 0:  # for r >= 2 every alpha is interior, so there is no switch
            h = 1 - r / 2
            worst = max(worst, abs(2 * a / (2 * a + r) - a ** (r / 2) * h ** h))
        rs = max(r, 2)
        u = 2 * math.e / rs
        worst = max(worst, abs(math.exp(-r * u / (2 * math.e)) - (2 / (rs * u)) ** (r / rs)))
    report(7, "branch continuity", worst < 1e-12, f"max |interior - boundary| at switch = {worst:.2e}")


def test_c08_optimizer_agreement():
    dv = dp = 0.0
    cases = [GaussianWeight(a) for a in (0.5, 1, 2)] + \
            [IndicatorWeight(Rect(0, u, 0, 1)) for u in (0.5, 1, 2)]
    for c in cases:
        num, ref = bounds.best_bound_numeric(2, c), bounds.best_bound_closed(2, c)
        dv = max(dv, abs(num.bound_value - ref.bound_value))
        dp = max(dp, abs(num.p_opt - ref.p_opt))
    report(8, "optimizer agreement", dv < 1e-9 and dp < 1e-6,
           f"max value diff {dv:.1e} (1e-9), max p_opt diff {dp:.1e} (1e-6)")


def test_c09_structural_relations():
    w = verify.run_scenario("wigner_relation", seed=0)
    p = verify.run_scenario("phase_relation", seed=0)
    report(9, "Wigner and phase relations", w.passed and p.passed,
           f"Wigner max dev {w.measured:.1e}, phase max dev {p.measured:.1e} (tol 1e-8, 64x64, 5 pairs)")


def test_c10_wssus():
    res = verify.run_scenario("wssus_example", seed=0)
    ok = res.passed and res.expected == math.exp(-0.1 / math.e)
    report(10, "WSSUS example", ok,
           f"bound {res.expected:.10f} = e^(-0.1/e); best matched pair {res.measured:.10f}")


def _sweep(param, r, lo, hi, steps=200):
    with tempfile.TemporaryDirectory() as d:
        out = os.path.join(d, "s.csv")
        code = cli.main(["sweep", "--param", param, "--range", f"{lo},{hi}", "--steps", str(steps),
                         "--r", str(r), "--out", out])
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
    return code, {k: np.array([float(x[k]) for x in rows]) for k in rows[0]}


def test_c11_figures():
    notes, ok = [], True
    for param, rs, lo, hi in (("alpha", (1, 1.9), 0.01, 3.0), ("areaU", (1, 2, 3), 0.05, 6.0)):
        for r in rs:
            code, d = _sweep(param, r, lo, hi)
            sw = cli.switch_point(param, r)
            x, inner, outer, comb = d["param"], d["interior"], d["boundary"], d["combined"]
            use_inner = x >= sw if param == "alpha" else x <= sw
            ok &= code == 0 and set(d) == {"param", "interior", "boundary", "combined", "p_opt"}
            ok &= np.array_equal(comb[use_inner], inner[use_inner])
            ok &= np.allclose(comb[~use_inner], outer[~use_inner], rtol=1e-14, atol=0)
            ok &= bool(np.all(inner <= comb * (1 + 1e-14)) and np.all(comb <= outer * (1 + 1e-14)))
            ok &= bool(use_inner.any() and (~use_inner).any())
            # the combined curve is the minimum over feasible exponents
            for i in (0, len(x) // 2, len(x) - 1):
                c = GaussianWeight(x[i]) if param == "alpha" else IndicatorWeight(Rect(0, x[i], 0, 1))
                ok &= abs(bounds.best_bound_numeric(r, c).bound_value - comb[i]) < 1e-9
            notes.append(f"{param} r={r} switch {sw:.4g}")
    report(11, "figure sweeps", ok, "; ".join(notes))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
