import math

import numpy as np
import pytest

from grunskylab.bounds import (
    BoundProblem,
    CompositeBound,
    builtin_catalog,
    catalog_entry,
    fekete_szego_constant,
    golden_section_max,
    maximize_scalar,
    thm3_argmax_closed_form,
    verify_all,
    verify_entry,
)
from grunskylab.errors import EvaluationError, UsageError


def test_parabola():
    p = BoundProblem("parabola", lambda t: -(t - 0.5) ** 2, 0.0, 1.0, 0.0, "0")
    res = maximize_scalar(p, 1e-12)
    assert res.argmax == pytest.approx(0.5, abs=1e-7)
    assert res.value == pytest.approx(0.0, abs=1e-14)


def test_golden_section_off_grid():
    x, y = golden_section_max(lambda t: -(t - 0.3) ** 2, 0.0, 1.0, 1e-10)
    assert x == pytest.approx(0.3, abs=1e-5) and y <= 0


def test_non_finite_objective_names_abscissa():
    p = BoundProblem("bad", lambda t: 1 / (t - 0.5), 0.0, 1.0, None, "")
    with pytest.raises(EvaluationError) as info:
        maximize_scalar(p)
    assert info.value.abscissa == pytest.approx(0.5)


def test_bad_tol_and_domain():
    p = BoundProblem("flat", lambda t: t * 0, 0.0, 1.0, None, "")
    with pytest.raises(UsageError):
        maximize_scalar(p, 0)
    with pytest.raises(UsageError):
        BoundProblem("empty", lambda t: t, 1.0, 1.0, None, "")


def test_thm3_maximizer_matches_closed_form():
    entry = catalog_entry("thm3")
    res = maximize_scalar(entry, 1e-12)
    t0 = thm3_argmax_closed_form()
    assert t0 == pytest.approx(0.75202, abs=1e-5)
    assert abs(res.argmax - t0) <= 1e-9
    assert res.value == pytest.approx(2.10495, abs=1e-5)


def test_thm3_phi_entry():
    entry = catalog_entry("thm3_phi")
    # half of the reported 2.10495
    assert entry.paper_constant == pytest.approx(2.10495 / 2, abs=1e-5)
    assert entry.paper_constant == pytest.approx((5 + math.sqrt(117 - 24 * math.sqrt(6))) / 12, abs=1e-15)


def test_phi2_maximum_at_zero():
    res = maximize_scalar(catalog_entry("thm2_v_d2"))
    assert res.argmax == 0 and res.value == pytest.approx(0.8, abs=1e-15)


def test_thm1_iii_interior_critical_point():
    # derivative of sqrt(1-3u)/sqrt(15) + 5u vanishes where sqrt(1-3u) = 3/(10 sqrt 15)
    u_star = 497 / 1500
    assert math.sqrt(1 - 3 * u_star) == pytest.approx(3 / (10 * math.sqrt(15)), rel=1e-14)
    res = maximize_scalar(catalog_entry("thm1_iii"))
    assert res.argmax == pytest.approx(u_star, abs=1e-9)
    assert res.value == pytest.approx(1 / 50 + 497 / 300, abs=1e-12)


def test_thm2_ii_endpoint():
    res = maximize_scalar(catalog_entry("thm2_ii"))
    assert res.argmax == 0.5


def test_reported_variants():
    tight = verify_entry(catalog_entry("thm1_iii_tight"))
    assert tight.verdict == "reported"
    assert tight.computed_max == pytest.approx(1 / (2 * math.sqrt(15)) + 5 / 4, abs=1e-12)
    doubled = verify_entry(catalog_entry("thm1_iii_two_w35"))
    assert doubled.computed_max == pytest.approx(128 / 75, abs=1e-12)


@pytest.mark.parametrize("entry", [e for e in builtin_catalog() if isinstance(e, BoundProblem)],
                         ids=lambda e: e.name)
def test_grid_certificate(entry):
    res = maximize_scalar(entry)
    grid = np.linspace(entry.lo, entry.hi, 10_000)
    with np.errstate(all="ignore"):
        values = entry.objective(grid)
    assert res.value >= np.max(values)
    assert res.value >= entry.objective(np.float64(entry.lo))
    assert res.value >= entry.objective(np.float64(entry.hi))


@pytest.mark.parametrize("name", ["thm2_ii", "thm2_iv"])
def test_claimed_monotonicity(name):
    entry = catalog_entry(name)
    grid = np.arange(0.0, 0.5 + 1e-12, 1e-4)
    assert np.all(np.diff(entry.objective(grid)) >= 0)


def test_closed_forms_not_decimal_literals():
    e = catalog_entry("thm2_v")
    assert isinstance(e, CompositeBound)
    assert e.paper_constant == (24 + math.sqrt(645)) / 30


def test_verify_all_verdicts():
    reports = {r.name: r for r in verify_all()}
    assert reports["thm1_v"].computed_max == pytest.approx(21 / 20, abs=1e-12)
    assert reports["thm1_v"].verdict == "match"
    assert reports["thm3"].verdict == "match"
    assert reports["thm3_statement"].verdict == "annotated_mismatch"
    assert "2.1033299" in reports["thm3_statement"].annotation
    assert reports["thm1_iii"].verdict == "match"
    assert reports["thm1_iii_statement"].verdict == "annotated_mismatch"
    assert not any(r.failed for r in reports.values())


def test_verify_all_threaded(monkeypatch):
    serial = [r.to_json() for r in verify_all()]
    monkeypatch.setenv("GRUNSKYLAB_THREADS", "4")
    assert [r.to_json() for r in verify_all()] == serial


def test_fekete_szego():
    lam, bound = fekete_szego_constant()
    assert 0 < lam < 1
    assert abs(4 * lam - math.exp(lam)) <= 1e-12
    assert lam == pytest.approx(0.3574, abs=1e-4)
    assert bound == pytest.approx(1.029, abs=1e-3)
