"""Exit criteria.  Each test prints one PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from grunskylab.bounds import (
    catalog_entry,
    fekete_szego_constant,
    maximize_scalar,
    thm3_argmax_closed_form,
    verify_all,
    verify_entry,
)
from grunskylab.cli import main
from grunskylab.grunsky import (
    CoefficientVector,
    InequalityWeights,
    grunsky_matrix_of,
    verify_identities,
    weighted_inequality_gap,
)
from grunskylab.hankel import (
    hankel2,
    hankel2_reduced_a3zero,
    hankel3,
    hankel3_reduced_a2zero,
    hankel3_reduced_a3zero,
)
from grunskylab.search import make_family, search_feasible

from conftest import random_vector


@pytest.fixture
def verdict(capsys):
    def emit(criterion, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
        assert ok, f"{criterion}: {detail}"
    return emit


def test_c1_formal_identities(verdict):
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    worst = max(verify_identities(random_vector(rng)).max_abs() for _ in range(100))
    elapsed = time.perf_counter() - start
    verdict("C1 formal identities", worst <= 1e-10 and elapsed < 1.0,
            f"max residual {worst:.2e} (<= 1e-10), {elapsed:.3f} s (< 1 s)")


def test_c2_koebe_certificate(verdict):
    w = grunsky_matrix_of(CoefficientVector.from_tail([2, 3, 4, 5]))
    expect = {(1, 1): 1, (1, 3): 0, (3, 3): 1 / 3, (1, 5): 0, (3, 5): 0}
    err = max(abs(w.omega(p, q) - v) for (p, q), v in expect.items())
    gap = weighted_inequality_gap(w, InequalityWeights.pair(1, 0), 3)
    verdict("C2 Koebe certificate", err <= 1e-12 and abs(gap) <= 1e-12,
            f"omega error {err:.2e}, gap at x=(1,0) {gap:.2e}")


CONSTANTS = {
    "thm1_v": 21 / 20,
    "thm1_ii": 2 / 3,
    "thm1_iii": 503 / 300,
    "thm2_ii": (math.sqrt(37) + 13) / 12,
    "thm2_iv": (math.sqrt(37) + 13) / 12,
    "thm2_iii": 0.25 * math.sqrt(757 / 15) + 85 / 64,
    "thm2_v": (24 + math.sqrt(645)) / 30,
    "thm2_v_d1": math.sqrt(645) / 30,
    "thm2_v_d2": 4 / 5,
    "thm3": 2.10495,
}


def test_c3_constant_reproduction(verdict):
    start = time.perf_counter()
    gaps = {name: abs(verify_entry(catalog_entry(name)).computed_max - value)
            for name, value in CONSTANTS.items()}
    t0 = maximize_scalar(catalog_entry("thm3")).argmax
    elapsed = time.perf_counter() - start
    worst = max(gaps, key=gaps.get)
    ok = max(gaps.values()) <= 1e-5 and abs(t0 - 0.75202) <= 1e-5 and elapsed < 1.0
    ok = ok and abs(thm3_argmax_closed_form() - t0) <= 1e-9
    verdict("C3 constant reproduction", ok,
            f"worst |gap| {gaps[worst]:.2e} ({worst}), t0 = {t0:.8f}, {elapsed:.3f} s")


def test_c4_annotated_discrepancies(verdict, capsys):
    reports = {r.name: r for r in verify_all()}
    annotated = [n for n in ("thm1_iii_statement", "thm3_statement")
                 if reports[n].verdict == "annotated_mismatch" and reports[n].annotation]
    code = main(["bounds"])
    capsys.readouterr()
    verdict("C4 annotated discrepancies", len(annotated) == 2 and code == 0,
            f"annotated: {annotated}, bounds exit {code}")


def test_c5_fekete_szego(verdict):
    lam, bound = fekete_szego_constant()
    res = abs(4 * lam - math.exp(lam))
    verdict("C5 Fekete-Szego", res <= 1e-12 and abs(bound - 1.029) <= 1e-3,
            f"lambda0 = {lam:.12f}, residual {res:.1e}, bound {bound:.6f}")


def test_c6_sharpness_witnesses(verdict):
    f3 = make_family("koebe", t=3).coefficients(5)
    f2 = make_family("koebe", t=2).coefficients(5)
    ok = f3[2] == 0 and abs(abs(f3[4]) - 2 / 3) <= 1e-12
    ok = ok and abs(abs(f2[3]) - 1) <= 1e-12 and abs(abs(hankel2(f2)) - 1) <= 1e-12
    verdict("C6 sharpness witnesses", ok,
            f"|a4(f3)| = {abs(f3[4]):.15f}, |a3(f2)| = {abs(f2[3])}, |H22(f2)| = {abs(hankel2(f2))}")


def test_c7_reduction_equivalence(verdict):
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(100):
        f = random_vector(rng, zero=2)
        worst = max(worst, abs(hankel3_reduced_a2zero(grunsky_matrix_of(f)) - hankel3(f)))
    for _ in range(100):
        f = random_vector(rng, zero=3)
        w = grunsky_matrix_of(f)
        worst = max(worst, abs(hankel2_reduced_a3zero(w) - hankel2(f)),
                    abs(hankel3_reduced_a3zero(w) - hankel3(f)))
    verdict("C7 reduction equivalence", worst <= 1e-10, f"max deviation {worst:.2e}")


def test_c8_search_soundness(verdict):
    start = time.perf_counter()
    excess = {}
    for name in ("a4_minus_a3", "h3_a2zero", "h2_a3zero"):
        results = [search_feasible(name, seed, 10_000) for seed in range(10)]
        excess[name] = max(r.best_value - r.paper_bound for r in results)
    a3 = min(search_feasible("a3_a2zero", seed, 10_000).best_value for seed in range(10))
    elapsed = time.perf_counter() - start
    ok = all(v <= 1e-6 for v in excess.values()) and a3 >= 1 - 1e-6 and elapsed < 30
    detail = ", ".join(f"{k} max excess {v:+.4f}" for k, v in excess.items())
    verdict("C8 search soundness", ok, f"{detail}; min |a3| {a3:.9f}; {elapsed:.1f} s")


def test_c9_determinism(verdict, tmp_path, capsys):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.json"
        main(["search", "--objective", "a4_minus_a3", "--seed", "7", "--iterations", "10000",
              "--out", str(path)])
        outs.append(path.read_bytes())
    capsys.readouterr()
    verdict("C9 determinism", outs[0] == outs[1], f"{len(outs[0])} bytes, identical={outs[0] == outs[1]}")
