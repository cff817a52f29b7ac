"""
Grunsky coefficients of the square-root transform and the inequality
functionals built from them.

For a normalized f(z) = z + a_2 z^2 + ... the odd function
f2(z) = sqrt(f(z^2)) = z + c_3 z^3 + c_5 z^5 + ... is univalent whenever f
is, and the Grunsky coefficients w[p, q] used throughout this package are
the Taylor coefficients of

    log((f2(t) - f2(z)) / (t - z)) = sum_{p,q>=0} w[p, q] t^p z^q .

Only the odd-indexed entries enter the coefficient formulas; the rest
are stored so symmetry and parity can be checked.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UsageError
from .series import UNIT_TOL, Series1, difference_quotient, s1_sqrt, s2_log

#: smallest total degree that exposes w[3, 5]
DEFAULT_MAX_DEGREE = 8
IDENTITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """Coefficients a_1..a_N of f(z) = z + a_2 z^2 + ... with a_1 = 1."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size == 0:
            raise UsageError("coefficient vector must be a non-empty 1-D sequence")
        if abs(c[0] - 1.0) > UNIT_TOL:
            raise DomainError(f"a_1 must equal 1, got {c[0]!r}")
        c[0] = 1.0
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_tail(cls, tail: Iterable[complex]) -> CoefficientVector:
        """Build from a_2, a_3, ..., a_N."""
        return cls(np.concatenate([[1.0], np.asarray(list(tail), dtype=np.complex128)]))

    @classmethod
    def identity(cls, order: int = 5) -> CoefficientVector:
        return cls.from_tail(np.zeros(order - 1))

    @property
    def order(self) -> int:
        """Index N of the last known coefficient a_N."""
        return self.coeffs.size

    def __getitem__(self, n: int) -> complex:
        """a_n, 1-based."""
        if not 1 <= n <= self.order:
            raise IndexError(f"a_{n} not known (vector holds a_1..a_{self.order})")
        return complex(self.coeffs[n - 1])

    def require(self, n: int) -> None:
        if self.order < n:
            raise UsageError(f"f must be known through a_{n}, got a_1..a_{self.order}")

    def truncate(self, n: int) -> CoefficientVector:
        self.require(n)
        return CoefficientVector(self.coeffs[:n])

    def rotate(self, theta: float) -> CoefficientVector:
        """Coefficients of exp(-i theta) f(exp(i theta) z)."""
        n = np.arange(self.order)
        return CoefficientVector(self.coeffs * np.exp(1j * theta * n))

    def as_series(self) -> Series1:
        return Series1(np.concatenate([[0.0], self.coeffs]))


@dataclass(frozen=True, eq=False)
class GrunskyMatrix:
    """Entries w[p, q] for p, q >= 0 and p + q <= max_total_degree."""

    max_total_degree: int
    entries: np.ndarray

    def omega(self, p: int, q: int) -> complex:
        if p < 0 or q < 0 or p + q > self.max_total_degree:
            raise UsageError(
                f"w[{p},{q}] needs total degree {p + q}, matrix stores up to {self.max_total_degree}"
            )
        return complex(self.entries[p, q])

    def __getitem__(self, key: tuple[int, int]) -> complex:
        return self.omega(*key)

    def items(self):
        m = self.max_total_degree
        for p in range(m + 1):
            for q in range(m + 1 - p):
                yield p, q, complex(self.entries[p, q])

    def is_symmetric(self, atol: float = 1e-12) -> bool:
        return bool(np.all(np.abs(self.entries - self.entries.T) <= atol))

    def odd_parity_defect(self) -> float:
        """Largest |w[p, q]| over entries with p + q odd."""
        m = self.max_total_degree
        idx = np.arange(m + 1)
        mask = (idx[:, None] + idx[None, :]) % 2 == 1
        return float(np.max(np.abs(self.entries[mask]), initial=0.0))


@dataclass(frozen=True)
class InequalityWeights:
    """Finitely supported weights x_1, x_3, x_5, ... keyed by odd index."""

    values: Mapping[int, complex]

    def __post_init__(self):
        clean = {}
        for p, v in dict(self.values).items():
            p = int(p)
            if p < 1 or p % 2 == 0:
                raise UsageError(f"weights are indexed by odd positive integers, got {p}")
            clean[p] = complex(v)
        object.__setattr__(self, "values", clean)

    @classmethod
    def pair(cls, x1: complex, x3: complex = 0.0) -> InequalityWeights:
        return cls({1: x1, 3: x3})

    @classmethod
    def from_sequence(cls, xs: Iterable[complex]) -> InequalityWeights:
        """Weights (x_1, x_3, x_5, ...) in order."""
        return cls({2 * i + 1: x for i, x in enumerate(xs)})

    def support(self) -> list[int]:
        return sorted(p for p, v in self.values.items() if v != 0)

    def rhs(self) -> float:
        """sum_p |x_p|^2 / p."""
        return sum(abs(v) ** 2 / p for p, v in self.values.items())

    def scaled(self, lam: complex) -> InequalityWeights:
        return InequalityWeights({p: lam * v for p, v in self.values.items()})


def _as_weights(x) -> InequalityWeights:
    if isinstance(x, InequalityWeights):
        return x
    if isinstance(x, Mapping):
        return InequalityWeights(x)
    return InequalityWeights.from_sequence(x)


@dataclass(frozen=True)
class IdentityResidual:
    """Left minus right side of the five coefficient/Grunsky identities."""

    r2: complex
    r3: complex
    r4: complex
    r5: complex
    r0: complex

    def as_dict(self) -> dict[str, complex]:
        return {"r2": self.r2, "r3": self.r3, "r4": self.r4, "r5": self.r5, "r0": self.r0}

    def max_abs(self) -> float:
        return max(abs(v) for v in self.as_dict().values())

    def ok(self, tol: float = IDENTITY_TOL) -> bool:
        return self.max_abs() <= tol


def odd_transform(f: CoefficientVector) -> Series1:
    """sqrt(f(z^2)) through degree 2K - 1 for f known through a_K."""
    g = Series1(f.coeffs)  # f(w)/w = 1 + a_2 w + ... + a_K w^{K-1}
    s = s1_sqrt(g)
    out = np.zeros(2 * f.order, dtype=np.complex128)
    out[1::2] = s.coeffs
    return Series1(out)


def required_order(max_degree: int) -> int:
    """Smallest K such that f known through a_K fixes w[p, q] for p+q <= max_degree."""
    return (max_degree + 3) // 2


def grunsky_matrix(g: Series1, max_degree: int = DEFAULT_MAX_DEGREE) -> GrunskyMatrix:
    """Grunsky matrix of a normalized g, from log of its difference quotient."""
    if max_degree < 0:
        raise UsageError("max_degree must be non-negative")
    if g.order < max_degree + 1:
        raise UsageError(
            f"total degree {max_degree} needs g known through z^{max_degree + 1}, "
            f"got order {g.order}"
        )
    log_dq = s2_log(difference_quotient(g.truncate(max_degree + 1)))
    entries = log_dq.coeffs.copy()
    entries.flags.writeable = False
    return GrunskyMatrix(max_degree, entries)


def grunsky_matrix_of(f: CoefficientVector, max_degree: int = DEFAULT_MAX_DEGREE) -> GrunskyMatrix:
    """Grunsky matrix of the odd transform of f."""
    k = required_order(max_degree)
    if f.order < k:
        raise UsageError(f"total degree {max_degree} needs f known through a_{k}, got a_{f.order}")
    return grunsky_matrix(odd_transform(f.truncate(k)), max_degree)


def coefficients_from_omega(w11: complex, w13: complex, w33: complex, w35: complex) -> tuple:
    """(a_2, a_3, a_4, a_5) expressed through the odd-indexed Grunsky coefficients."""
    a2 = 2 * w11
    a3 = 2 * w13 + 3 * w11**2
    a4 = 2 * w33 + 8 * w11 * w13 + (10 / 3) * w11**3
    a5 = 2 * w35 + 8 * w11 * w33 + 5 * w13**2 + 18 * w11**2 * w13 + (7 / 3) * w11**4
    return a2, a3, a4, a5


def omega33_from(w11: complex, w13: complex, w15: complex) -> complex:
    """w[3,3] forced by 0 = 3 w15 - 3 w11 w13 + w11^3 - 3 w33."""
    return w15 - w11 * w13 + w11**3 / 3


def verify_identities(f: CoefficientVector) -> IdentityResidual:
    f.require(5)
    w = grunsky_matrix_of(f.truncate(5), DEFAULT_MAX_DEGREE)
    w11, w13, w15 = w.omega(1, 1), w.omega(1, 3), w.omega(1, 5)
    w33, w35 = w.omega(3, 3), w.omega(3, 5)
    a2, a3, a4, a5 = coefficients_from_omega(w11, w13, w33, w35)
    return IdentityResidual(
        r2=f[2] - a2,
        r3=f[3] - a3,
        r4=f[4] - a4,
        r5=f[5] - a5,
        r0=0.0 - (3 * w15 - 3 * w11 * w13 + w11**3 - 3 * w33),
    )


def weighted_inequality_gap(w: GrunskyMatrix, x, n_terms: int = 3) -> float:
    """RHS minus LHS of the odd-index Grunsky inequality, q-sum cut after n_terms.

    The LHS is a sum of non-negative terms, so the cut only drops terms: a
    negative gap is a genuine violation, a non-negative one is a partial
    certificate.
    """
    x = _as_weights(x)
    support = x.support()
    lhs = 0.0
    for j in range(n_terms):
        q = 2 * j + 1
        inner = sum(w.omega(p, q) * x.values[p] for p in support)
        lhs += q * abs(inner) ** 2
    return x.rhs() - lhs


def bilinear_inequality_gap(w: GrunskyMatrix, x) -> float:
    """RHS minus |sum_{p,q} w[p,q] x_p x_q| over the support of x."""
    x = _as_weights(x)
    support = x.support()
    form = 0j
    for p in support:
        for q in support:
            form += w.omega(p, q) * x.values[p] * x.values[q]
    return x.rhs() - abs(form)


def standard_probe_weights() -> list[InequalityWeights]:
    """Unit pairs on (x_1, x_3) used for quick certificate checks."""
    s = 1 / math.sqrt(2)
    return [
        InequalityWeights.pair(1, 0),
        InequalityWeights.pair(0, 1),
        InequalityWeights.pair(s, s),
        InequalityWeights.pair(s, -s),
        InequalityWeights.pair(s, 1j * s),
    ]
