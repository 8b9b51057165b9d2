"""Acceptance suite: criteria 1-11 at their stated tolerances.

Each check records a one-line verdict; ``conftest.py`` prints the lines
at the end of the pytest run, and ``python tests/test_acceptance.py``
runs the checks directly and prints them as it goes.
"""
import itertools
import math
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import tuples_upto, tuples_with_sum  # noqa: E402
from hermprod.asymptotics import (  # noqa: E402
    cpq_fit,
    phi,
    scan_pair,
    theorem_bound,
    w2_abs_grid,
    w2_asymptotic,
    w2_bound,
    w2_bound_grid,
)
from hermprod.hermite import hermite_fn_table  # noqa: E402
from hermprod.linearize import (  # noqa: E402
    f2_sum,
    w2_00,
    w4_single_sum,
    w4_exact,
    w4_via_ifactors,
)
from hermprod.matrix import build_wmatrix, operator_norm  # noqa: E402
from hermprod.quadrature import auto_npoints, gauss_hermite_rule, w4_quadrature  # noqa: E402

RESULTS = {}


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line, flush=True)
    return ok


# -- checks -----------------------------------------------------------

def check_1():
    worst_rel = worst_odd = 0.0
    bad = []
    count = 0
    for idx in tuples_upto(60):
        count += 1
        exact = w4_exact(idx)
        quad = w4_quadrature(idx)
        if sum(idx) % 2:
            worst_odd = max(worst_odd, abs(quad))
            if not exact.is_zero or abs(quad) > 1e-12:
                bad.append(idx)
        else:
            dev = abs(float(exact) - quad)
            worst_rel = max(worst_rel, dev / max(1.0, abs(quad)))
            if dev > 1e-10 * max(1.0, abs(quad)):
                bad.append(idx)
    return record(1, not bad, f"{count} tuples, sum <= 60; max scaled deviation {worst_rel:.2e}, "
                              f"max |oracle| on odd sums {worst_odd:.2e}, failures {len(bad)}")


def check_2():
    bad = []
    count = 0
    for idx in tuples_upto(40):
        count += 1
        e = w4_exact(idx)
        if w4_single_sum(idx) != e or w4_via_ifactors(idx) != e:
            bad.append(idx)
    return record(2, not bad, f"{count} tuples, sum <= 40; exact mismatches {len(bad)}")


def check_3():
    bad = []
    for j in range(201):
        for k in range(201):
            e = w4_exact((j, 0, 0, k))
            if e != w2_00(j, k) or (e.is_zero != ((j + k) % 2 == 1)):
                bad.append((j, k))
    return record(3, not bad, f"j, k <= 200 ({201 * 201} pairs); mismatches {len(bad)}")


def check_4(rng=None):
    rng = rng or random.Random(7)
    jmax = 2000
    grid = w2_abs_grid(jmax)
    bound = w2_bound_grid(jmax)
    even = ~np.isnan(bound)
    ratio = np.where(even, grid / np.where(even, bound, 1.0), 0.0)
    grid_ok = bool(np.all(ratio[even] <= 1 + 1e-12))
    # exact confirmation: the K = J edges, the diagonal, a few full rows, random pairs
    pairs = {(j, 0) for j in range(2, jmax + 1, 2)} | {(0, k) for k in range(2, jmax + 1, 2)}
    pairs |= {(j, j) for j in range(1, jmax + 1)}
    pairs |= {(1000, k) for k in range(0, jmax + 1, 2)}
    while len(pairs) < 6500:
        j, k = rng.randrange(jmax + 1), rng.randrange(jmax + 1)
        if (j + k) % 2 == 0 and j + k > 0:
            pairs.add((j, k))
    worst_exact = 0.0
    exact_ok = True
    for j, k in sorted(pairs):
        v = abs(float(w2_00(j, k)))
        b = w2_bound(j, k)
        worst_exact = max(worst_exact, v / b)
        exact_ok &= v <= b * (1 + 1e-12)
        # the grid values used above agree with the exact ones
        exact_ok &= math.isclose(grid[j, k], v, rel_tol=1e-10)
    edge = max(abs(float(w2_00(j, 0))) / w2_bound(j, 0) for j in range(2, jmax + 1, 2))
    return record(4, grid_ok and exact_ok,
                  f"{int(even.sum()) - 1} even pairs j, k <= 2000; max |W|/bound {ratio[even].max():.6f}; "
                  f"{len(pairs)} exact spot checks (max {worst_exact:.6f}); K = J edge max {edge:.6f}")


def check_5():
    devs = {}
    for big_j in (100, 1000):
        devs[big_j] = abs(float(w2_00(big_j, big_j)) / w2_asymptotic(big_j, big_j) - 1)
    ok = all(d <= 5 / big_j for big_j, d in devs.items())
    detail = ", ".join(f"J={big_j}: |ratio-1|={d:.4e} (J*dev={big_j * d:.4f}, limit {5 / big_j:.0e})"
                       for big_j, d in devs.items())
    return record(5, ok, detail)


def check_6():
    t0 = time.perf_counter()
    fit = cpq_fit(4, 4, 400)
    fit_seconds = time.perf_counter() - t0
    tier_failures = {1: 0, 2: 0, 3: 0}
    for (p, q), c in sorted(fit.constants.items()):
        if p > q:
            continue  # W is symmetric, (q, p) gives the same scan
        # |W| from the same integer-sum evaluation the fit used, one rounding per value
        for j, k, w in scan_pair(p, q, 400).entries:
            rep = theorem_bound((j, p, q, k), c, absw=w)
            for t in (1, 2, 3):
                tier_failures[t] += not rep.ok[f"tier{t}"]
    ok = all(v == 0 for v in tier_failures.values()) and fit.a <= 4
    c_min = min(fit.constants.values())
    c_max = max(fit.constants.values())
    t3 = max(fit.tier3_needed.values())
    return record(6, ok, f"a = {fit.a:.4g} (need <= 4); C_pq in [{c_min:.3g}, {c_max:.3g}]; "
                         f"tier-3 alone needs <= {t3:.4f}; tier failures {tier_failures}; "
                         f"fit took {fit_seconds:.0f} s")


def check_7():
    bad = 0
    count = 0
    for n in range(61):
        for k in range(n // 2 + 1):
            j = n - k
            for ell in range(n + 1):
                count += 1
                bad += f2_sum(j, k, ell, "A") != f2_sum(j, k, ell, "B")
    return record(7, bad == 0, f"{count} (j, k, l) with j >= k, l <= j+k <= 60; mismatches {bad}")


def check_8(rng=None):
    rng = rng or random.Random(11)
    bad = 0
    for _ in range(500):
        total = rng.randrange(41)
        cut = sorted(rng.randint(0, total) for _ in range(3))
        idx = (cut[0], cut[1] - cut[0], cut[2] - cut[1], total - cut[2])
        ref = w4_exact(idx)
        bad += any(w4_exact(perm) != ref for perm in itertools.permutations(idx))
    return record(8, bad == 0, f"500 random tuples with sum <= 40, 24 permutations each; mismatches {bad}")


def check_9():
    xs = np.linspace(0.0, 1.0, 10001)
    values = np.array([phi(x) for x in xs])
    low = float(np.min(values - xs * xs))
    upper = xs >= 0.7
    ratio = float(np.min(values[upper] / (xs[upper] ** 2)))
    ok = low >= 0.0 and ratio >= 1.1
    return record(9, ok, f"min(phi - x^2) = {low:.3e}; min phi/x^2 on [0.7, 1] = {ratio:.5f}")


def check_10():
    ratios = {}
    ok = True
    for p in range(5):
        for q in range(p, 5):
            full = build_wmatrix(p, q, 400).entries
            for n in (100, 200, 400):
                rep = operator_norm(full[:n, :n])
                ratios[(p, q, n)] = rep.ratio
                ok &= 1 - 1e-9 <= rep.ratio <= 10
            ok &= ratios[(p, q, 400)] < 1.5 * ratios[(p, q, 100)]
    lo, hi = min(ratios.values()), max(ratios.values())
    growth = max(ratios[(p, q, 400)] / ratios[(p, q, 100)] for p in range(5) for q in range(p, 5))
    return record(10, ok, f"ratio in [{lo:.4f}, {hi:.4f}] over p <= q <= 4, N in (100, 200, 400); "
                          f"max ratio(400)/ratio(100) = {growth:.4f}")


def check_11():
    problems = []
    for n in range(1, 201):
        r = gauss_hermite_rule(n)
        if not (np.all(np.diff(r.nodes) > 0) and np.array_equal(r.nodes, -r.nodes[::-1])
                and np.array_equal(r.scaled_weights, r.scaled_weights[::-1])):
            problems.append((n, "symmetry"))
        if abs(r.weights.sum() - math.sqrt(math.pi)) > 1e-13 * math.sqrt(math.pi):
            problems.append((n, "mass"))
        # exactness through degree 2n-1, checked on the orthonormal basis: the Gram
        # matrix of psi_0..psi_{n-1} is the identity and psi_n psi_{n-1} integrates to 0
        t = hermite_fn_table(n, r.nodes) * math.pi ** -0.25
        w = r.scaled_weights
        gram = (t[:n] * w) @ t[:n].T
        if np.max(np.abs(gram - np.eye(n))) > 1e-12:
            problems.append((n, "gram"))
        if abs(np.dot(w, t[n] * t[n - 1])) > 1e-12:
            problems.append((n, "top degree"))
        # raw even moments where the powers stay representable
        for m in range(0, min(r.degree_exact, 80) + 1, 2):
            half = m // 2
            exact = math.exp(math.lgamma(m + 1) - m * math.log(2) - math.lgamma(half + 1)) * math.sqrt(math.pi)
            got = float(np.dot(r.weights, r.nodes ** m))
            if abs(got - exact) > 1e-12 * exact:
                problems.append((n, f"moment {m}"))
    stab = 0.0
    for idx in tuples_upto(60):
        a = w4_quadrature(idx)
        b = w4_quadrature(idx, npoints=auto_npoints(sum(idx)) + 20)
        stab = max(stab, abs(a - b) / max(1.0, abs(a)))
    for idx in tuples_with_sum(60):
        if idx[0] % 7 == 0:
            c = w4_quadrature(idx, npoints=200)
            stab = max(stab, abs(w4_quadrature(idx) - c) / max(1.0, abs(c)))
    ok = not problems and stab <= 1e-12
    return record(11, ok, f"npoints 1..200; invariant failures {len(problems)} {problems[:3]}; "
                          f"max node-count drift {stab:.2e}")


CHECKS = {n: globals()[f"check_{n}"] for n in range(1, 12)}


@pytest.mark.slow
@pytest.mark.parametrize("n", sorted(CHECKS))
def test_criterion(n):
    assert CHECKS[n](), RESULTS[n]


if __name__ == "__main__":
    failed = 0
    for n, check in CHECKS.items():
        t0 = time.perf_counter()
        failed += not check()
        print(f"             ({time.perf_counter() - t0:.1f} s)")
    sys.exit(1 if failed else 0)
