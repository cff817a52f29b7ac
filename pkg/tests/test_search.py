import math

import numpy as np
import pytest

from grunskylab.errors import UsageError
from grunskylab.grunsky import (
    CoefficientVector,
    InequalityWeights,
    bilinear_inequality_gap,
    grunsky_matrix_of,
    verify_identities,
    weighted_inequality_gap,
)
from grunskylab.search import (
    OBJECTIVES,
    FamilyMember,
    FeasiblePoint,
    bilinear_gap_pair,
    evaluate_member,
    family_catalog,
    feasibility_gaps,
    get_objective,
    is_feasible,
    make_family,
    search_feasible,
    weighted_gap_pair,
)
from grunskylab.series import Series1, s1_mul


def point_of(f):
    w = grunsky_matrix_of(f.truncate(5))
    return FeasiblePoint(w.omega(1, 1), w.omega(1, 3), w.omega(1, 5), w.omega(3, 5))


def test_family_examples():
    assert np.allclose(make_family("koebe", t=2).coefficients().coeffs, [1, 0, 1, 0, 1])
    f3 = make_family("f3").coefficients()
    assert f3[2] == 0 and f3[3] == 0 and abs(f3[4] - 2 / 3) <= 1e-15
    assert np.array_equal(make_family("koebe").coefficients().coeffs, [1, 2, 3, 4, 5])
    theta = 0.4
    rot = make_family("koebe", theta=theta).coefficients(7)
    for n in range(1, 8):
        assert abs(rot[n] - n * np.exp(1j * (n - 1) * theta)) <= 1e-14
    with pytest.raises(UsageError):
        make_family("nope")


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_symmetric_koebe_satisfies_defining_relation(t):
    # (k_t(z)/z)^t (1 - z^t)^2 == 1
    n = 12
    a = make_family("koebe", t=t).coefficients(n + 1).coeffs
    g = Series1(a)
    power = Series1.one(n)
    for _ in range(t):
        power = s1_mul(power, g)
    factor = np.zeros(n + 1)
    factor[0] = 1
    factor[t] -= 1
    factor = Series1(factor)
    assert s1_mul(s1_mul(power, factor), factor).allclose(Series1.one(n), 1e-12)


def test_evaluate_member_examples():
    f3 = evaluate_member(make_family("f3"))
    assert f3["abs_a2"] == 0 and abs(f3["abs_a4"] - 2 / 3) <= 1e-12
    f2 = evaluate_member(make_family("f2"))
    assert f2["abs_a3"] == 1 and f2["abs_h22"] == 1
    k = evaluate_member(make_family("koebe"))
    assert k["a4_minus_a3"] == 1


@pytest.mark.parametrize("member", family_catalog(), ids=lambda m: m.name)
def test_families_satisfy_identities_and_inequalities(member):
    f = member.coefficients(6)
    assert verify_identities(f).max_abs() <= 1e-10
    w = grunsky_matrix_of(f, 10)
    rng = np.random.default_rng(7)
    for _ in range(50):
        x = rng.normal(size=3) + 1j * rng.normal(size=3)
        assert weighted_inequality_gap(w, InequalityWeights.from_sequence(x), 3) >= -1e-10


@pytest.mark.parametrize("member", family_catalog(), ids=lambda m: m.name)
def test_families_are_feasible_points(member):
    p = point_of(member.coefficients(5))
    assert min(feasibility_gaps(p)) >= -1e-10
    assert is_feasible(p, 1e-10)


def test_feasible_point_roundtrip(rng):
    for _ in range(20):
        w = rng.normal(size=4) * 0.3 + 1j * rng.normal(size=4) * 0.3
        p = FeasiblePoint(*w)
        q = point_of(p.coefficients())
        for attr in ("w11", "w13", "w15", "w33", "w35"):
            assert abs(getattr(p, attr) - getattr(q, attr)) <= 1e-12


def test_fast_gaps_match_engine(rng):
    for _ in range(20):
        p = FeasiblePoint(*(rng.normal(size=4) * 0.3 + 1j * rng.normal(size=4) * 0.3))
        w = grunsky_matrix_of(p.coefficients())
        x1, x3 = rng.normal(size=2) + 1j * rng.normal(size=2)
        x = InequalityWeights.pair(x1, x3)
        assert abs(weighted_gap_pair(p, x1, x3) - weighted_inequality_gap(w, x, 3)) <= 1e-12
        assert abs(bilinear_gap_pair(p, x1, x3) - bilinear_inequality_gap(w, x)) <= 1e-12


def test_origin_and_zero_budget():
    assert is_feasible(FeasiblePoint.origin())
    for name in OBJECTIVES:
        res = search_feasible(name, seed=3, iterations=0)
        assert res.best_value == 0
        assert res.best_point == FeasiblePoint.origin()


def test_unknown_objective():
    with pytest.raises(UsageError):
        search_feasible("a7", 0, 10)
    assert get_objective("|a4|-|a3|").name == "a4_minus_a3"


def test_search_reaches_witness():
    res = search_feasible("a3_a2zero", seed=0, iterations=10_000)
    assert res.best_value >= 1 - 1e-6
    assert res.sound


def test_search_results_are_feasible_and_consistent():
    for name in OBJECTIVES:
        res = search_feasible(name, seed=5, iterations=2_000)
        obj = get_objective(name)
        assert is_feasible(res.best_point)
        assert res.best_value == obj.value(res.best_point.coefficients())
        assert res.sound, (name, res.best_value, res.paper_bound)


def test_constraint_surfaces_respected():
    res = search_feasible("h3_a3zero", seed=2, iterations=2_000)
    f = res.best_point.coefficients()
    assert abs(f[3]) <= 1e-12
    res = search_feasible("h3_a2zero", seed=2, iterations=2_000)
    assert res.best_point.coefficients()[2] == 0


def test_search_deterministic_and_thread_independent():
    a = search_feasible("a4_minus_a3", seed=11, iterations=3_000)
    b = search_feasible("a4_minus_a3", seed=11, iterations=3_000)
    c = search_feasible("a4_minus_a3", seed=11, iterations=3_000, workers=4)
    assert a.to_json() == b.to_json() == c.to_json()
    d = search_feasible("a4_minus_a3", seed=12, iterations=3_000)
    assert d.to_json() != a.to_json()
