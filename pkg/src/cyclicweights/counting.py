"""Solution counts for the power-sum systems behind the moment identities.

The systems are

    sum_i x_i^2 = t_1,  sum_i x_i^(p+1) = t_2,  sum_i x_i^(p^2+1) = t_3

with t = 0 (homogeneous, counts M_n) or t = -(1, 1, 1), i.e. one variable
pinned to 1 (counts T_n).  ``nvars`` is the number of terms in either case,
so T_4 has three free unknowns.

Counting works in coordinates: v(x) = (x^2, x^(p+1), x^(p^2+1)) is a vector
in F_p^(3m) and field addition is coordinatewise, so the number of tuples
with sum_i v(x_i) = t is a convolution of histograms.  Splitting the free
unknowns into two halves gives an exact count with q^2 work instead of q^4.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .census import DEFAULT_MAX_ENUM
from .errors import BadParams, TooLarge, ZeroCoefficient
from .gf import FieldCtx
from .quadform import legendre


@dataclass(frozen=True)
class PowerSystemCount:
    nvars: int
    homogeneous: bool
    count: int


def power_vectors(ctx: FieldCtx) -> np.ndarray:
    """Row x holds the coordinates of (x^2, x^(p+1), x^(p^2+1)); shape (q, 3m)."""
    p, m, q = ctx.p, ctx.m, ctx.q
    out = np.zeros((q, 3 * m), dtype=np.int64)
    nz = np.arange(1, q, dtype=np.int64)
    logs = ctx.log[nz].astype(np.int64)
    for k, s in enumerate((2, p + 1, p * p + 1)):
        vals = ctx.exp[(logs * s) % ctx.order]
        out[1:, k * m:(k + 1) * m] = ctx.digits[vals]
    return out


class _Hist:
    """Sparse histogram over F_p^(3m) keyed by base-p integer encodings.

    ``order`` 1 histograms the rows of V, ``order`` 2 all pairwise sums
    V[x] + V[y] (built one x-block at a time).
    """

    def __init__(self, p: int, V: np.ndarray, order: int, block: int = 256):
        self.p = p
        self.width = V.shape[1]
        self.weights = np.array([p**j for j in range(self.width)], dtype=np.int64)
        if order == 1:
            keys = self.encode(V)
        else:
            keys = np.concatenate([
                self.encode(V[lo:lo + block, None, :] + V[None, :, :]).ravel()
                for lo in range(0, V.shape[0], block)])
        self.keys, counts = np.unique(keys, return_counts=True)
        self.counts = counts.astype(object)

    def encode(self, rows: np.ndarray) -> np.ndarray:
        return (rows % self.p) @ self.weights

    def decode(self) -> np.ndarray:
        return (self.keys[:, None] // self.weights) % self.p

    def lookup(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.keys, keys)
        pos = np.minimum(pos, len(self.keys) - 1)
        hit = self.keys[pos] == keys
        return np.where(hit, self.counts[pos], 0)


def _count_sums(V: np.ndarray, p: int, free: int, target: np.ndarray) -> int:
    """#{(x_1..x_free) : sum v(x_i) = target} by splitting the unknowns in two."""
    if free == 0:
        return int(not target.any())
    left = free // 2
    right = free - left
    hr = _Hist(p, V, right)
    if left == 0:
        return int(hr.lookup(hr.encode(target[None, :]))[0])
    hl = hr if left == right else _Hist(p, V, left)
    need = hr.encode(target[None, :] - hl.decode())
    return int(np.sum(hl.counts * hr.lookup(need)))


def count_power_system(ctx: FieldCtx, nvars: int, homogeneous: bool = True, *,
                       max_enum: int = DEFAULT_MAX_ENUM) -> PowerSystemCount:
    """Exact M_nvars (homogeneous) or T_nvars (one term pinned to 1)."""
    if not 1 <= nvars <= 4:
        raise BadParams(f"nvars must be in 1..4, got {nvars}")
    free = nvars if homogeneous else nvars - 1
    if free < 1:
        raise BadParams("an inhomogeneous system needs at least one unknown")
    work = ctx.q ** ((free + 1) // 2)
    if work > max_enum:
        raise TooLarge(f"{work} partial sums exceed the enumeration guard {max_enum}")
    V = power_vectors(ctx)
    target = np.zeros(3 * ctx.m, dtype=np.int64)
    if not homogeneous:
        target = (-V[1]) % ctx.p
    return PowerSystemCount(nvars, homogeneous, _count_sums(V, ctx.p, free, target))


def count_power_system_naive(ctx: FieldCtx, nvars: int, homogeneous: bool = True) -> int:
    """Plain loop over every tuple; only for tiny fields."""
    free = nvars if homogeneous else nvars - 1
    if ctx.q**free > 10**6:
        raise TooLarge("naive power-system loop is limited to 10^6 tuples")
    p = ctx.p
    exps = (2, p + 1, p * p + 1)
    powers = [[ctx.pow(x, e) for e in exps] for x in range(ctx.q)]
    const = [0, 0, 0] if homogeneous else [1, 1, 1]
    n = 0
    for xs in product(range(ctx.q), repeat=free):
        ok = True
        for k in range(3):
            acc = const[k]
            for x in xs:
                acc = ctx.add(acc, powers[x][k])
            if acc:
                ok = False
                break
        n += ok
    return n


def power_system_formula(p: int, m: int, nvars: int, homogeneous: bool = True) -> int:
    """Closed forms for m odd, 3 not dividing m (M_4 and T_4 need p = 3)."""
    q = p**m
    if m % 2 == 0 or m % 3 == 0:
        raise BadParams(f"closed forms need m odd and 3 not dividing m, got m = {m}")
    if homogeneous:
        if nvars in (1, 2):
            return 1
        if nvars == 3:
            return (p + 1) * (q - 1) + 1
        if nvars == 4 and p == 3:
            return 8 * (q - 1) ** 2 + 1
    else:
        if nvars == 3:
            return p + 1
        if nvars == 4 and p == 3:
            return 4 * (2 * q - 3)
    raise BadParams(f"no closed form for nvars={nvars}, homogeneous={homogeneous}, p={p}")


def quad_solution_count(coeffs, b: int, p: int) -> int:
    """#{x in F_p^n : sum a_i x_i^2 = b} for nonzero a_i."""
    coeffs = [int(a) % p for a in coeffs]
    if not coeffs or any(a == 0 for a in coeffs):
        raise ZeroCoefficient("all coefficients must be nonzero mod p")
    n = len(coeffs)
    delta = 1
    for a in coeffs:
        delta = delta * a % p
    b %= p
    if n % 2 == 0:
        ups = p - 1 if b == 0 else -1
        return p ** (n - 1) + ups * p ** ((n - 2) // 2) * legendre((-1) ** (n // 2) * delta, p)
    return p ** (n - 1) + p ** ((n - 1) // 2) * legendre((-1) ** ((n - 1) // 2) * b * delta, p)


def quad_solution_brute(coeffs, b: int, p: int) -> int:
    coeffs = [int(a) for a in coeffs]
    return sum(1 for xs in product(range(p), repeat=len(coeffs))
               if sum(a * x * x for a, x in zip(coeffs, xs)) % p == b % p)
