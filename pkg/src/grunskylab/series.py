"""
Truncated complex power series in one and two variables.

``Series1`` holds c_0..c_N (coefficient of z^k at index k).  ``Series2``
holds the coefficients of t^p z^q for p + q <= M, stored in a square
(M+1, M+1) array whose entries above the anti-diagonal are kept at zero.

All arithmetic is exact below the truncation degree and never touches
anything above it.  Instances are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np

from .errors import DomainError, UsageError

#: tolerance for "constant term equals 1" on externally supplied series
UNIT_TOL = 1e-14


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Series1:
    """Truncated univariate series c_0 + c_1 z + ... + c_N z^N."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size == 0:
            raise UsageError("Series1 needs a non-empty 1-D coefficient sequence")
        object.__setattr__(self, "coeffs", _frozen(c))

    @classmethod
    def zeros(cls, order: int) -> Series1:
        return cls(np.zeros(order + 1, dtype=np.complex128))

    @classmethod
    def one(cls, order: int) -> Series1:
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = 1.0
        return cls(c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __getitem__(self, k: int) -> complex:
        return complex(self.coeffs[k])

    def truncate(self, order: int) -> Series1:
        if order > self.order:
            raise UsageError(f"cannot extend a series of order {self.order} to {order}")
        return Series1(self.coeffs[: order + 1])

    def derivative(self) -> np.ndarray:
        """Coefficients of the derivative, known through degree N-1."""
        return self.coeffs[1:] * np.arange(1, self.order + 1)

    def allclose(self, other: Series1, atol: float = 1e-12) -> bool:
        return self.order == other.order and bool(
            np.all(np.abs(self.coeffs - other.coeffs) <= atol)
        )

    def _coerce(self, other) -> Series1:
        if isinstance(other, Series1):
            if other.order != self.order:
                raise UsageError(f"order mismatch: {self.order} vs {other.order}")
            return other
        if isinstance(other, Number):
            c = np.zeros_like(self.coeffs)
            c[0] = other
            return Series1(c)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Series1(self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return Series1(-self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Series1(self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return Series1(self.coeffs * other)
        if isinstance(other, Series1):
            return s1_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        return f"Series1(order={self.order}, coeffs={np.array2string(self.coeffs, precision=6)})"


def _check_unit(c0: complex, what: str) -> None:
    if abs(c0 - 1.0) > UNIT_TOL:
        raise DomainError(f"{what} requires constant term 1, got {c0!r}")


def s1_mul(a: Series1, b: Series1) -> Series1:
    """Cauchy product truncated at the common order."""
    if a.order != b.order:
        raise UsageError(f"order mismatch: {a.order} vs {b.order}")
    n = a.order + 1
    return Series1(np.convolve(a.coeffs, b.coeffs)[:n])


def s1_log(a: Series1) -> Series1:
    """Logarithm of a series with a(0) = 1.

    Uses the recursion obtained from L' * a = a', which costs O(N^2) and
    avoids summing an alternating series.
    """
    _check_unit(a[0], "s1_log")
    c = a.coeffs
    n = a.order
    out = np.zeros(n + 1, dtype=np.complex128)
    # k L_k = k a_k - sum_{j=1}^{k-1} j L_j a_{k-j}
    for k in range(1, n + 1):
        acc = k * c[k]
        for j in range(1, k):
            acc -= j * out[j] * c[k - j]
        out[k] = acc / k
    return Series1(out)


def s1_exp(a: Series1) -> Series1:
    """Exponential of a series with a(0) = 0 (dual of :func:`s1_log`)."""
    if abs(a[0]) > UNIT_TOL:
        raise DomainError(f"s1_exp requires zero constant term, got {a[0]!r}")
    c = a.coeffs
    n = a.order
    out = np.zeros(n + 1, dtype=np.complex128)
    out[0] = 1.0
    for k in range(1, n + 1):
        acc = 0j
        for j in range(1, k + 1):
            acc += j * c[j] * out[k - j]
        out[k] = acc / k
    return Series1(out)


def s1_sqrt(a: Series1) -> Series1:
    """Principal square root of a series with a(0) = 1."""
    _check_unit(a[0], "s1_sqrt")
    c = a.coeffs
    n = a.order
    out = np.zeros(n + 1, dtype=np.complex128)
    out[0] = 1.0
    for k in range(1, n + 1):
        acc = c[k]
        for j in range(1, k):
            acc -= out[j] * out[k - j]
        out[k] = acc / 2
    return Series1(out)


def _triangle_mask(order: int) -> np.ndarray:
    idx = np.arange(order + 1)
    return (idx[:, None] + idx[None, :]) <= order


@dataclass(frozen=True, eq=False)
class Series2:
    """Truncated bivariate series sum_{p+q<=M} c_{p,q} t^p z^q."""

    order: int
    coeffs: np.ndarray

    def __post_init__(self):
        m = int(self.order)
        if m < 0:
            raise UsageError("Series2 order must be non-negative")
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.shape != (m + 1, m + 1):
            raise UsageError(f"Series2 of order {m} needs a {(m + 1, m + 1)} array, got {c.shape}")
        c[~_triangle_mask(m)] = 0.0
        object.__setattr__(self, "order", m)
        object.__setattr__(self, "coeffs", _frozen(c))

    @classmethod
    def zeros(cls, order: int) -> Series2:
        return cls(order, np.zeros((order + 1, order + 1)))

    @classmethod
    def one(cls, order: int) -> Series2:
        c = np.zeros((order + 1, order + 1), dtype=np.complex128)
        c[0, 0] = 1.0
        return cls(order, c)

    @classmethod
    def from_dict(cls, order: int, terms: dict[tuple[int, int], complex]) -> Series2:
        c = np.zeros((order + 1, order + 1), dtype=np.complex128)
        for (p, q), v in terms.items():
            if p < 0 or q < 0 or p + q > order:
                raise UsageError(f"term t^{p} z^{q} exceeds total degree {order}")
            c[p, q] = v
        return cls(order, c)

    def __getitem__(self, key: tuple[int, int]) -> complex:
        p, q = key
        if p < 0 or q < 0 or p + q > self.order:
            raise IndexError(f"(p, q) = ({p}, {q}) not stored at total degree {self.order}")
        return complex(self.coeffs[p, q])

    def items(self):
        """Yield ``(p, q, c_pq)`` over the stored triangle, lexicographically."""
        for p in range(self.order + 1):
            for q in range(self.order + 1 - p):
                yield p, q, complex(self.coeffs[p, q])

    def transpose(self) -> Series2:
        return Series2(self.order, self.coeffs.T)

    def is_symmetric(self, atol: float = 1e-12) -> bool:
        return bool(np.all(np.abs(self.coeffs - self.coeffs.T) <= atol))

    def allclose(self, other: Series2, atol: float = 1e-12) -> bool:
        return self.order == other.order and bool(
            np.all(np.abs(self.coeffs - other.coeffs) <= atol)
        )

    def _coerce(self, other) -> Series2:
        if isinstance(other, Series2):
            if other.order != self.order:
                raise UsageError(f"order mismatch: {self.order} vs {other.order}")
            return other
        if isinstance(other, Number):
            c = np.zeros_like(self.coeffs)
            c[0, 0] = other
            return Series2(self.order, c)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Series2(self.order, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return Series2(self.order, -self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Series2(self.order, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return Series2(self.order, self.coeffs * other)
        if isinstance(other, Series2):
            return s2_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        return f"Series2(order={self.order})"


def s2_mul(a: Series2, b: Series2) -> Series2:
    """Product truncated at total degree M."""
    if a.order != b.order:
        raise UsageError(f"order mismatch: {a.order} vs {b.order}")
    m = a.order
    out = np.zeros((m + 1, m + 1), dtype=np.complex128)
    bc = b.coeffs
    for p, q, v in a.items():
        if v == 0:
            continue
        out[p:, q:] += v * bc[: m + 1 - p, : m + 1 - q]
    return Series2(m, out)


def s2_log(h: Series2) -> Series2:
    """Logarithm of a bivariate series with constant term 1.

    Sums (-1)^{k+1} u^k / k for u = h - 1; u has no constant term, so u^k
    vanishes below total degree k and the sum stops at k = M.
    """
    _check_unit(h[0, 0], "s2_log")
    u = h - 1.0
    out = Series2.zeros(h.order)
    power = u
    for k in range(1, h.order + 1):
        out = out + power * ((-1) ** (k + 1) / k)
        power = s2_mul(power, u)
    return out


def difference_quotient(f: Series1) -> Series2:
    """(f(t) - f(z)) / (t - z) for a normalized f = z + a_2 z^2 + ... + a_N z^N.

    The coefficient of t^p z^q is a_{p+q+1}; the result has total degree
    N - 1 and constant term exactly 1.
    """
    if f.order < 1:
        raise DomainError("difference_quotient needs f known through z^1")
    if abs(f[0]) > UNIT_TOL or abs(f[1] - 1.0) > UNIT_TOL:
        raise DomainError(f"f must satisfy f(0)=0, f'(0)=1; got c0={f[0]!r}, c1={f[1]!r}")
    m = f.order - 1
    idx = np.arange(m + 1)
    total = idx[:, None] + idx[None, :]
    c = np.where(total <= m, f.coeffs[np.minimum(total, m) + 1], 0.0)
    c[0, 0] = 1.0
    return Series2(m, c)
