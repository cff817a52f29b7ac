"""
Sharpness probes.

Two complementary routes:

* explicit univalent families (rotated and t-fold symmetric Koebe maps,
  the half-plane map, the identity) evaluated exactly;
* a seeded derivative-free search over the truncated Grunsky-feasible
  region in (w11, w13, w15, w35), with w33 eliminated by the identity
  w33 = w15 - w11 w13 + w11^3 / 3.

Every constraint in the feasible region is a necessary condition for
univalence, so the best value found is a lower bound for the extremum
over the relaxation and must stay below the proved bound.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bounds import catalog_entry, thread_count
from .errors import UsageError
from .grunsky import (
    CoefficientVector,
    coefficients_from_omega,
    grunsky_matrix_of,
    omega33_from,
    verify_identities,
)
from .hankel import hankel2, hankel3

SOUNDNESS_SLACK = 1e-6
FEASIBILITY_TOL = 1e-10


# -- families --------------------------------------------------------------

@dataclass(frozen=True)
class FamilyMember:
    """A univalent function with exactly known coefficients.

    kind ``koebe``: e^{-i theta} k_t(e^{i theta} z) with
    k_t(z) = z / (1 - z^t)^{2/t}; t = 1 is the Koebe function.  Each k_t is
    the t-th root transform of the Koebe function, hence univalent.
    kind ``half_plane``: z / (1 - z), a convex map onto Re w > -1/2.
    kind ``identity``: z.
    """

    name: str
    kind: str = "koebe"
    theta: float = 0.0
    symmetry: int = 1

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise UsageError(f"unknown family kind {self.kind!r}; choose from {sorted(FAMILY_KINDS)}")
        if self.symmetry < 1:
            raise UsageError("symmetry order t must be a positive integer")

    def exact_coefficients(self, order: int) -> list[Fraction]:
        """Unrotated a_1..a_order as exact rationals."""
        if order < 1:
            raise UsageError("order must be at least 1")
        out = [Fraction(0)] * order
        out[0] = Fraction(1)
        if self.kind == "identity":
            return out
        if self.kind == "half_plane":
            return [Fraction(1)] * order
        t = self.symmetry
        c = Fraction(1)
        k = 0
        while t * k + 1 <= order:
            out[t * k] = c
            # binomial series of (1 - w)^{-2/t}
            c = c * (k + Fraction(2, t)) / (k + 1)
            k += 1
        return out

    def coefficients(self, order: int = 5) -> CoefficientVector:
        exact = np.array([complex(x) for x in self.exact_coefficients(order)])
        f = CoefficientVector(exact)
        return f.rotate(self.theta) if self.theta else f


FAMILY_KINDS = {"koebe", "half_plane", "identity"}


def make_family(name: str, theta: float = 0.0, t: int = 1) -> FamilyMember:
    """Resolve a CLI/JSON family name.

    Accepts ``koebe`` (with symmetry ``t``), ``symmetric_koebe``, ``f<t>``
    shorthands such as ``f3``, ``half_plane`` and ``identity``.
    """
    key = name.lower()
    if key in ("koebe", "symmetric_koebe", "rotated_koebe"):
        return FamilyMember(name, "koebe", theta, int(t))
    if key.startswith("f") and key[1:].isdigit():
        return FamilyMember(name, "koebe", theta, int(key[1:]))
    if key in ("half_plane", "identity"):
        return FamilyMember(name, key, theta, 1)
    raise UsageError(f"unknown family {name!r}")


def family_catalog() -> list[FamilyMember]:
    return [
        FamilyMember("identity", "identity"),
        FamilyMember("koebe", "koebe"),
        FamilyMember("koebe_rot_pi_3", "koebe", theta=math.pi / 3),
        FamilyMember("koebe_rot_pi", "koebe", theta=math.pi),
        FamilyMember("koebe_t2", "koebe", symmetry=2),
        FamilyMember("koebe_t3", "koebe", symmetry=3),
        FamilyMember("koebe_t4", "koebe", symmetry=4),
        FamilyMember("koebe_t2_rot", "koebe", theta=0.7, symmetry=2),
        FamilyMember("half_plane", "half_plane"),
    ]


def evaluate_member(m: FamilyMember, order: int = 5) -> dict:
    f = m.coefficients(max(order, 5))
    res = verify_identities(f)
    return {
        "name": m.name,
        "abs_a2": abs(f[2]),
        "abs_a3": abs(f[3]),
        "abs_a4": abs(f[4]),
        "abs_a5": abs(f[5]),
        "a4_minus_a3": abs(f[4]) - abs(f[3]),
        "abs_h22": abs(hankel2(f)),
        "abs_h31": abs(hankel3(f)),
        "identity_residuals": {k: abs(v) for k, v in res.as_dict().items()},
    }


# -- feasible region -------------------------------------------------------

def _random_unit_pairs(n: int = 16, seed: int = 20240601) -> tuple[tuple[complex, complex], ...]:
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return tuple((complex(a), complex(b)) for a, b in z)


RANDOM_BILINEAR_PROBES = _random_unit_pairs()


@dataclass(frozen=True)
class FeasiblePoint:
    """Odd-indexed Grunsky coefficients through w35, with w33 derived."""

    w11: complex
    w13: complex
    w15: complex
    w35: complex
    w33: complex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "w33", omega33_from(self.w11, self.w13, self.w15))

    @classmethod
    def origin(cls) -> FeasiblePoint:
        return cls(0j, 0j, 0j, 0j)

    def omega(self, p: int, q: int) -> complex:
        key = (min(p, q), max(p, q))
        table = {(1, 1): self.w11, (1, 3): self.w13, (1, 5): self.w15,
                 (3, 3): self.w33, (3, 5): self.w35}
        if key not in table:
            raise UsageError(f"FeasiblePoint carries no w[{p},{q}]")
        return table[key]

    def coefficients(self) -> CoefficientVector:
        return CoefficientVector.from_tail(coefficients_from_omega(self.w11, self.w13, self.w33, self.w35))

    def to_json(self) -> dict:
        return {k: [getattr(self, k).real, getattr(self, k).imag]
                for k in ("w11", "w13", "w15", "w33", "w35")}


def weighted_gap_pair(p: FeasiblePoint, x1: complex, x3: complex) -> float:
    """Three-term odd Grunsky inequality gap for weights (x1, x3)."""
    t1 = p.w11 * x1 + p.w13 * x3
    t3 = p.w13 * x1 + p.w33 * x3
    t5 = p.w15 * x1 + p.w35 * x3
    rhs = abs(x1) ** 2 + abs(x3) ** 2 / 3
    return rhs - (abs(t1) ** 2 + 3 * abs(t3) ** 2 + 5 * abs(t5) ** 2)


def bilinear_gap_pair(p: FeasiblePoint, x1: complex, x3: complex) -> float:
    form = p.w11 * x1 * x1 + 2 * p.w13 * x1 * x3 + p.w33 * x3 * x3
    return abs(x1) ** 2 + abs(x3) ** 2 / 3 - abs(form)


def weighted_probes(p: FeasiblePoint) -> list[tuple[complex, complex]]:
    """Weight pairs for the three-term inequality, including point-dependent ones."""
    return [(1, 0), (0, 1), (-p.w15, p.w13), (4 * p.w11, 1), (p.w11, 2 / 3)]


def bilinear_probes(p: FeasiblePoint) -> list[tuple[complex, complex]]:
    return [(1, 0), (0, 1), (p.w11 / math.sqrt(6), 1), *RANDOM_BILINEAR_PROBES]


def feasibility_gaps(p: FeasiblePoint) -> list[float]:
    """All constraint gaps; the point is feasible iff every gap is >= 0.

    The first gap is 1 - |a3 - a2^2| (area theorem), written in Grunsky
    variables as 1 - |2 w13 - w11^2|.
    """
    gaps = [1 - abs(2 * p.w13 - p.w11**2)]
    gaps += [weighted_gap_pair(p, x1, x3) for x1, x3 in weighted_probes(p)]
    gaps += [bilinear_gap_pair(p, x1, x3) for x1, x3 in bilinear_probes(p)]
    return gaps


def is_feasible(p: FeasiblePoint, tol: float = 0.0) -> bool:
    if abs(2 * p.w13 - p.w11**2) > 1 + tol:
        return False
    for x1, x3 in weighted_probes(p):
        if weighted_gap_pair(p, x1, x3) < -tol:
            return False
    for x1, x3 in bilinear_probes(p):
        if bilinear_gap_pair(p, x1, x3) < -tol:
            return False
    return True


# -- objectives ------------------------------------------------------------

@dataclass(frozen=True)
class SearchObjective:
    """A quantity to maximize over the feasible region.

    ``constraint`` fixes the free coordinates: ``a2_zero`` sets w11 = 0,
    ``a3_zero`` sets w13 = -3/2 w11^2.
    """

    name: str
    value: Callable[[CoefficientVector], float]
    constraint: str | None
    bound_entry: str | None = None
    bound_value: float | None = None

    @property
    def paper_bound(self) -> float:
        if self.bound_value is not None:
            return self.bound_value
        entry = catalog_entry(self.bound_entry)
        return entry.paper_constant

    @property
    def dimension(self) -> int:
        return 8 if self.constraint is None else 6

    def point(self, v) -> FeasiblePoint:
        c = [complex(v[i], v[i + 1]) for i in range(0, len(v), 2)]
        if self.constraint is None:
            w11, w13, w15, w35 = c
        elif self.constraint == "a2_zero":
            w11 = 0j
            w13, w15, w35 = c
        else:
            w11, w15, w35 = c
            w13 = -1.5 * w11**2
        return FeasiblePoint(w11, w13, w15, w35)


OBJECTIVES: dict[str, SearchObjective] = {
    o.name: o
    for o in [
        SearchObjective("a4_minus_a3", lambda f: abs(f[4]) - abs(f[3]), None, "thm3"),
        SearchObjective("a3_a2zero", lambda f: abs(f[3]), "a2_zero", bound_value=1.0),
        SearchObjective("a4_a2zero", lambda f: abs(f[4]), "a2_zero", "thm1_ii"),
        SearchObjective("a5_a2zero", lambda f: abs(f[5]), "a2_zero", "thm1_iii"),
        SearchObjective("h2_a2zero", lambda f: abs(hankel2(f)), "a2_zero", bound_value=1.0),
        SearchObjective("h3_a2zero", lambda f: abs(hankel3(f)), "a2_zero", "thm1_v"),
        SearchObjective("a2_a3zero", lambda f: abs(f[2]), "a3_zero", bound_value=1.0),
        SearchObjective("a4_a3zero", lambda f: abs(f[4]), "a3_zero", "thm2_ii"),
        SearchObjective("a5_a3zero", lambda f: abs(f[5]), "a3_zero", "thm2_iii"),
        SearchObjective("h2_a3zero", lambda f: abs(hankel2(f)), "a3_zero", "thm2_iv"),
        SearchObjective("h3_a3zero", lambda f: abs(hankel3(f)), "a3_zero", "thm2_v"),
    ]
}

ALIASES = {
    "|a4|-|a3|": "a4_minus_a3",
    "|a3|": "a3_a2zero",
}


def get_objective(name: str) -> SearchObjective:
    key = ALIASES.get(name, name)
    if key not in OBJECTIVES:
        raise UsageError(f"unknown objective {name!r}; choose from {sorted(OBJECTIVES)}")
    return OBJECTIVES[key]


# -- search ----------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    objective: str
    seed: int
    iterations: int
    best_point: FeasiblePoint
    best_value: float
    paper_bound: float

    @property
    def slack(self) -> float:
        return self.paper_bound - self.best_value

    @property
    def sound(self) -> bool:
        return self.best_value <= self.paper_bound + SOUNDNESS_SLACK

    def to_json(self) -> dict:
        return {
            "objective": self.objective,
            "seed": self.seed,
            "iterations": self.iterations,
            "best_value": self.best_value,
            "paper_bound": self.paper_bound,
            "slack": self.slack,
            "point": self.best_point.to_json(),
        }


class _Evaluator:
    """Objective evaluation with a hard budget on candidate evaluations."""

    def __init__(self, objective: SearchObjective, budget: int):
        self.objective = objective
        self.budget = budget

    def value(self, v) -> float | None:
        if self.budget <= 0:
            return None
        self.budget -= 1
        return float(self.objective.value(self.objective.point(v).coefficients()))

    def feasible(self, v) -> bool:
        return is_feasible(self.objective.point(v))


def _local_search(ev: _Evaluator, x: list[float], fx: float,
                  step: float = 0.1, floor: float = 1e-7) -> tuple[list[float], float]:
    """Coordinate-wise pattern search; the step halves after a stagnant sweep."""
    x = list(x)
    while step >= floor:
        improved = False
        for i in range(len(x)):
            for sign in (1.0, -1.0):
                cand = list(x)
                cand[i] += sign * step
                fc = ev.value(cand)
                if fc is None:
                    return x, fx
                if fc > fx and ev.feasible(cand):
                    x, fx = cand, fc
                    improved = True
                    break
        if not improved:
            step *= 0.5
    return x, fx


def _random_start(ev: _Evaluator, rng: np.random.Generator, radius: float = 0.6):
    x = list(rng.uniform(-radius, radius, size=ev.objective.dimension))
    for _ in range(60):
        if ev.feasible(x):
            return x
        x = [0.5 * c for c in x]
    return [0.0] * ev.objective.dimension


def _run_restart(objective: SearchObjective, seq: np.random.SeedSequence, budget: int):
    ev = _Evaluator(objective, budget)
    rng = np.random.default_rng(seq)
    x = _random_start(ev, rng)
    fx = ev.value(x)
    if fx is None:
        return None
    return _local_search(ev, x, fx)


def _split(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def search_feasible(objective: str, seed: int, iterations: int,
                    restarts: int = 32, workers: int | None = None) -> SearchResult:
    """Seeded restarts plus coordinate search; best feasible value is a lower bound.

    ``iterations`` caps the number of objective evaluations.  Half the
    budget is spread over the restarts, the rest polishes the best restart.
    Results depend only on (objective, seed, iterations, restarts).
    """
    obj = get_objective(objective)
    if iterations < 0:
        raise UsageError("iterations must be non-negative")
    dim = obj.dimension
    origin = [0.0] * dim
    best_x, best_f = origin, float(obj.value(obj.point(origin).coefficients()))

    explore = iterations // 2 if iterations >= 2 else iterations
    n_restarts = min(restarts, explore)
    if n_restarts > 0:
        seqs = np.random.SeedSequence(seed).spawn(n_restarts)
        shares = _split(explore, n_restarts)
        jobs = list(zip(seqs, shares))
        workers = workers or thread_count()
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda j: _run_restart(obj, *j), jobs))
        else:
            results = [_run_restart(obj, *j) for j in jobs]
        # ties keep the earliest restart
        for res in results:
            if res is not None and res[1] > best_f:
                best_x, best_f = res

    polish = iterations - explore
    if polish > 0:
        best_x, best_f = _local_search(_Evaluator(obj, polish), best_x, best_f)

    return SearchResult(obj.name, seed, iterations, obj.point(best_x), best_f, obj.paper_bound)
