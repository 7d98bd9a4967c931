"""Exact values of the exponential sums S, S', R and R'.

Sums are elements of Z[zeta_p] held as integer coefficient tuples on the
basis 1, zeta, ..., zeta^(p-2); for p = 3 that is the pair (a, b) standing
for a + b*zeta.  Half-integer powers of p never appear as reals: for
p = 3 mod 4 the quadratic Gauss sum g = sum_t (t/p) zeta^t equals i*sqrt(p),
so i^r p^(m - r/2) with r odd is an integer multiple of g.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadRank, NonRationalMoment, UnsupportedPrime
from .gf import FieldCtx
from .quadform import ExpSumClass, ShiftResult, legendre


@dataclass(frozen=True)
class CyclotomicInteger:
    p: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_full(cls, p: int, full) -> "CyclotomicInteger":
        """Reduce coefficients of zeta^0..zeta^(p-1) using 1 + zeta + ... + zeta^(p-1) = 0."""
        top = int(full[p - 1])
        return cls(p, tuple(int(full[j]) - top for j in range(p - 1)))

    @classmethod
    def integer(cls, p: int, n: int) -> "CyclotomicInteger":
        return cls(p, (int(n),) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CyclotomicInteger":
        full = [0] * p
        full[k % p] = 1
        return cls.from_full(p, full)

    @classmethod
    def gauss_sum(cls, p: int) -> "CyclotomicInteger":
        """sum_t (t/p) zeta^t, a square root of (-1/p) p."""
        return cls.from_full(p, [legendre(t, p) for t in range(p)])

    @property
    def a(self) -> int:
        return self.coeffs[0]

    @property
    def b(self) -> int:
        return self.coeffs[1]

    def _full(self) -> list[int]:
        return list(self.coeffs) + [0]

    def _check(self, other):
        if isinstance(other, int):
            return CyclotomicInteger.integer(self.p, other)
        if other.p != self.p:
            raise ValueError("mixing different cyclotomic rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CyclotomicInteger(self.p, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.p, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.p, tuple(other * x for x in self.coeffs))
        other = self._check(other)
        p = self.p
        full = [0] * p
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        full[(i + j) % p] += x * y
        return CyclotomicInteger.from_full(p, full)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CyclotomicInteger.integer(self.p, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, k: int) -> "CyclotomicInteger":
        """Image under zeta -> zeta^k (k prime to p)."""
        full = [0] * self.p
        for j, x in enumerate(self._full()):
            full[(j * k) % self.p] += x
        return CyclotomicInteger.from_full(self.p, full)

    def trace(self) -> int:
        """Sum of the p - 1 Galois conjugates, a rational integer."""
        return self.p * self.coeffs[0] - sum(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> int:
        if not self.is_rational():
            raise NonRationalMoment(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __str__(self):
        if self.p == 3:
            return f"{self.a} + {self.b}*zeta3"
        return " + ".join(f"{c}*zeta^{j}" for j, c in enumerate(self.coeffs) if c) or "0"


@dataclass(frozen=True)
class TraceHistogram:
    """counts[t] = #{x in F_q : Tr(f(x)) = t}."""

    counts: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.counts)

    @property
    def value(self) -> CyclotomicInteger:
        return CyclotomicInteger.from_full(self.p, self.counts)


def _require_3_mod_4(p: int):
    if p % 4 != 3:
        raise UnsupportedPrime(f"closed forms are implemented for p = 3 mod 4 only, got p = {p}")


def _check_rank(r: int, m: int):
    if not 0 <= r <= m:
        raise BadRank(f"rank {r} outside [0, {m}]")


def sum_shape(cls: ExpSumClass, p: int, m: int) -> tuple[int, int, bool]:
    """Write S as sign * p^e (even rank) or sign * sqrt(p*) * p^e (odd rank).

    Returns (sign, e, odd).  These are the sign and exponent in which the
    R and R' rules are stated; sign folds i^r into the Legendre class.
    """
    _require_3_mod_4(p)
    r = cls.rank
    _check_rank(r, m)
    if r % 2 == 0:
        return (-1) ** (r // 2) * cls.eps, m - r // 2, False
    return (-1) ** ((r - 1) // 2) * cls.eps, (2 * m - r - 1) // 2, True


def s_value(cls: ExpSumClass, p: int, m: int) -> CyclotomicInteger:
    """S = i^r (Delta/p) p^(m - r/2) as an exact cyclotomic integer."""
    sign, e, odd = sum_shape(cls, p, m)
    base = CyclotomicInteger.gauss_sum(p) if odd else CyclotomicInteger.integer(p, 1)
    return base * (sign * p**e)


def sprime_value(cls: ExpSumClass, shift: ShiftResult, p: int, m: int) -> CyclotomicInteger:
    """S' = zeta^c S when the shift system is solvable, else 0."""
    if not shift.solvable:
        _check_rank(cls.rank, m)
        return CyclotomicInteger.integer(p, 0)
    return CyclotomicInteger.zeta(p, shift.c) * s_value(cls, p, m)


def s_brute(ctx: FieldCtx, alpha: int, beta: int, gamma: int, delta: int = 0) -> TraceHistogram:
    """Histogram of Tr(alpha x^2 + beta x^(p+1) + gamma x^(p^2+1) + delta x) over all x."""
    p, n = ctx.p, ctx.order
    ks = np.arange(n, dtype=np.int64)
    total = np.zeros(n, dtype=np.int64)
    for coef, s in zip((alpha, beta, gamma, delta), (2, p + 1, p * p + 1, 1)):
        if coef:
            total += ctx.tr[ctx.exp[(int(ctx.log[coef]) + s * ks) % n]]
    counts = np.bincount(total % p, minlength=p)
    counts[0] += 1  # x = 0
    return TraceHistogram(tuple(int(c) for c in counts))


def r_value(cls: ExpSumClass, p: int, m: int) -> int:
    """R = sum over a in F_p^* of S(a*alpha, a*beta, a*gamma).

    Even rank: (p - 1) times the real value of S; odd rank: 0.
    """
    sign, e, odd = sum_shape(cls, p, m)
    if odd:
        return 0
    return sign * (p - 1) * p**e


def rprime_value(cls: ExpSumClass, shift: ShiftResult, p: int, m: int) -> int:
    """R' for S' = zeta^c S, by the four-case rule (zero when S' = 0)."""
    sign, e, odd = sum_shape(cls, p, m)
    if not shift.solvable:
        return 0
    c = shift.c
    if not odd:
        return sign * (p - 1) * p**e if c == 0 else -sign * p**e
    if c == 0:
        return 0
    return sign * legendre(-c, p) * p ** (e + 1)
