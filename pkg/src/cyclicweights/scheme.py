"""Distance distributions of extremal sets in matrix association schemes.

Symmetric matrices of order m (rank classes {2i - 1, 2i}) and skew-symmetric
matrices of order m (rank classes {2i}) carry association schemes with the
same parameters once the orders are matched.  For a set meeting the
Singleton bound |X| = c^(n - d + 1) the distance distribution is forced,
and for the quadratic-form family used here it gives a_n, a_(n-1), a_(n-2)
independently of the census.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParams, exact_div


def gauss_binom(x: int, k: int, b: int) -> int:
    """Gaussian binomial [x choose k]_b by the product formula, exactly."""
    if b < 2:
        raise BadParams(f"basis must be >= 2, got {b}")
    if k < 0 or x < 0:
        raise BadParams(f"x and k must be nonnegative, got x = {x}, k = {k}")
    num = den = 1
    for i in range(k):
        num *= b**x - b**i
        den *= b**k - b**i
    return exact_div(num, den)


@dataclass(frozen=True)
class SchemeParams:
    p: int
    m: int
    d: int
    variant: str = "symmetric"  # or "skew"

    def __post_init__(self):
        if self.variant not in ("symmetric", "skew"):
            raise BadParams(f"unknown scheme variant {self.variant!r}")
        if not 1 <= self.d <= self.n:
            raise BadParams(f"need 1 <= d <= n = {self.n}, got d = {self.d}")

    @property
    def n(self) -> int:
        return (self.m + 1) // 2 if self.variant == "symmetric" else self.m // 2

    @property
    def b(self) -> int:
        return self.p**2

    @property
    def c(self) -> int:
        dim2 = self.m * (self.m + 1) if self.variant == "symmetric" else self.m * (self.m - 1)
        return self.p ** exact_div(dim2, 2 * self.n)

    @property
    def size(self) -> int:
        """Singleton bound c^(n - d + 1)."""
        return self.c ** (self.n - self.d + 1)


def scheme_params(p: int, m: int, d: int, variant: str = "symmetric") -> SchemeParams:
    return SchemeParams(p, m, d, variant)


@dataclass(frozen=True)
class DistanceDistribution:
    a: tuple[int, ...]  # a_0 .. a_n

    @property
    def total(self) -> int:
        return sum(self.a)


def distance_distribution(sp: SchemeParams) -> DistanceDistribution:
    """Distance distribution of an (m, d)-set meeting the Singleton bound."""
    n, d, b, c = sp.n, sp.d, sp.b, sp.c
    a = [0] * (n + 1)
    a[0] = 1
    for i in range(n - d + 1):
        acc = 0
        for j in range(i, n - d + 1):
            t = j - i
            acc += (-1) ** t * b ** (t * (t - 1) // 2) * gauss_binom(j, i, b) \
                * gauss_binom(n, j, b) * (c ** (n - d + 1 - j) - 1)
        a[n - i] = acc
    return DistanceDistribution(tuple(a))


def top_a_values(p: int, m: int) -> tuple[int, int, int]:
    """(a_n, a_(n-1), a_(n-2)) for the (m, 1)-set of forms with |X| = p^(3m).

    Needs n >= 3 so that the three top classes exist.
    """
    sp = SchemeParams(p, m, (m + 1) // 2 - 2)
    if sp.size != p ** (3 * m):
        raise BadParams(f"the set of p^(3m) forms does not meet the bound for m = {m}")
    a = distance_distribution(sp).a
    n = sp.n
    return a[n], a[n - 1], a[n - 2]
