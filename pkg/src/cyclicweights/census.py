"""Rank census of the forms Tr(a x^2 + b x^(p+1) + c x^(p^2+1)).

Two independent routes produce the same seven counters:

* ``run_census`` classifies every nonzero triple (a, b, c) in F_q^3;
* ``census_closed_form`` solves the moment / association-scheme equations.

Counter naming: ``n11``/``nm11`` count triples with S = +/- p^((m+1)/2),
``n13``/``nm13`` those with S = +/- p^((m+3)/2); ``n0``, ``n2``, ``n4`` count
the triples with S = +i p^((m+j)/2), which equals the number with
S = -i p^((m+j)/2).
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction

import numpy as np

from . import _kernels
from .checks import Check
from .errors import BadParams, InconsistentCensus, TooLarge, exact_div
from .expsum import CyclotomicInteger, s_value, sum_shape
from .gf import FieldCtx
from .quadform import ExpSumClass, basis_grams, residue_tables, slot_grams

log = logging.getLogger(__name__)

DEFAULT_MAX_ENUM = 3**16

# counter name -> (j, sign); j = m - rank
_COUNTERS = {
    "n0": (0, 1),
    "n11": (1, 1),
    "nm11": (1, -1),
    "n2": (2, 1),
    "n13": (3, 1),
    "nm13": (3, -1),
    "n4": (4, 1),
}


@dataclass(frozen=True)
class RankCensus:
    n0: int
    n11: int
    nm11: int
    n2: int
    n13: int
    nm13: int
    n4: int

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def nonzero_total(self) -> int:
        return 2 * (self.n0 + self.n2 + self.n4) + self.n11 + self.nm11 + self.n13 + self.nm13

    def class_count(self, cls: ExpSumClass, p: int, m: int) -> int:
        """Number of nonzero triples whose form falls in ``cls``."""
        sign, _, odd = sum_shape(cls, p, m)
        j = m - cls.rank
        if odd:
            return getattr(self, f"n{j}") if j in (0, 2, 4) else 0
        name = {(1, 1): "n11", (1, -1): "nm11", (3, 1): "n13", (3, -1): "nm13"}.get((j, sign))
        return getattr(self, name) if name else 0

    def classes(self, p: int, m: int) -> list[tuple[ExpSumClass, int]]:
        """(class, count) for every rank m-4..m and Legendre class."""
        out = []
        for r in range(m, max(m - 5, -1), -1):
            for eps in (1, -1):
                cls = ExpSumClass(r, eps)
                out.append((cls, self.class_count(cls, p, m)))
        return out


def _require_census_params(p: int, m: int):
    if p % 4 != 3:
        raise BadParams(f"the census is defined for p = 3 mod 4, got p = {p}")
    if m % 2 == 0:
        raise BadParams(f"m must be odd, got m = {m}")


def fold_counts(counts: np.ndarray, p: int, m: int) -> RankCensus:
    """Turn raw (rank, Legendre index) counts into the seven counters."""
    _require_census_params(p, m)
    acc = {name: 0 for name in _COUNTERS}
    odd_split: dict[int, list[int]] = {}
    for r in range(m + 1):
        for li, eps in enumerate((1, -1)):
            n = int(counts[r, li])
            if not n:
                continue
            j = m - r
            if j > 4:
                raise InconsistentCensus(f"rank {r} < m - 4 observed {n} times")
            sign, _, odd = sum_shape(ExpSumClass(r, eps), p, m)
            if odd:
                odd_split.setdefault(j, [0, 0])[0 if sign == 1 else 1] += n
            else:
                acc["n1%d" % j if sign == 1 else "nm1%d" % j] += n
    for j, (plus, minus) in odd_split.items():
        if plus != minus:
            raise InconsistentCensus(f"S = +i p^.. and -i p^.. counts differ at j = {j}: {plus} vs {minus}")
        acc[f"n{j}"] = plus
    return RankCensus(**acc)


def _shards(q: int, count: int) -> list[tuple[int, int]]:
    count = max(1, min(count, q))
    bounds = [q * i // count for i in range(count + 1)]
    return [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]


def _map_shards(fn, shards, workers: int) -> list:
    if workers <= 1:
        return [fn(s) for s in shards]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, shards))


def rank_sign_counts(ctx: FieldCtx, *, workers: int = 1, shards: int | None = None,
                     max_enum: int = DEFAULT_MAX_ENUM) -> np.ndarray:
    """Exhaustive (rank, Legendre class) histogram over F_q^3 minus the origin.

    Returns an int64 array of shape (m + 1, 2); column 0 is Delta a square.
    The a-range is split into contiguous shards, each with its own counts,
    summed at the end, so the result does not depend on ``workers``.
    """
    p, m, q = ctx.p, ctx.m, ctx.q
    if q**3 > max_enum:
        raise TooLarge(f"q^3 = {q**3} triples exceeds the enumeration guard {max_enum}; use sampling")
    HA, HB, HG = slot_grams(ctx)
    inv, leg_idx = residue_tables(p)
    md = _kernels.mod_table(p)

    def work(bounds):
        out = np.zeros((m + 1, 2), dtype=np.int64)
        _kernels.census_shard(HA, HB, HG, bounds[0], bounds[1], p, inv, md, leg_idx, out)
        return out

    parts = _map_shards(work, _shards(q, shards or 4 * max(workers, 1)), workers)
    total = np.sum(parts, axis=0)
    log.debug("census GF(%d^%d): %s", p, m, total.tolist())
    return total


def run_census(ctx: FieldCtx, *, workers: int = 1, shards: int | None = None,
               max_enum: int = DEFAULT_MAX_ENUM) -> RankCensus:
    _require_census_params(ctx.p, ctx.m)
    counts = rank_sign_counts(ctx, workers=workers, shards=shards, max_enum=max_enum)
    return fold_counts(counts, ctx.p, ctx.m)


@dataclass(frozen=True)
class SampledCensus:
    """Empirical census from uniformly drawn nonzero triples; not exact."""

    samples: int
    seed: int
    counts: dict[str, int]  # n0/n2/n4 hold both signs combined
    population: int

    exact = False

    def estimates(self) -> dict[str, float]:
        out = {}
        for name, n in self.counts.items():
            share = n / self.samples
            if name in ("n0", "n2", "n4"):
                share /= 2
            out[name] = share * self.population
        return out


def sample_census(ctx: FieldCtx, samples: int, seed: int = 0, *, batch: int = 100_000) -> SampledCensus:
    p, m, q = ctx.p, ctx.m, ctx.q
    _require_census_params(p, m)
    G = basis_grams(ctx).reshape(3 * m, m * m)
    inv, leg_idx = residue_tables(p)
    md = _kernels.mod_table(p)
    rng = np.random.default_rng(seed)
    raw = np.zeros((m + 1, 2), dtype=np.int64)
    done = 0
    while done < samples:
        n = min(batch, samples - done)
        coords = rng.integers(0, p, size=(n, 3 * m), dtype=np.int64)
        zero = ~coords.any(axis=1)
        while zero.any():
            coords[zero] = rng.integers(0, p, size=(int(zero.sum()), 3 * m), dtype=np.int64)
            zero = ~coords.any(axis=1)
        H = ((coords @ G) % p).reshape(n, m, m)
        ranks = np.empty(n, dtype=np.int64)
        legs = np.empty(n, dtype=np.int64)
        _kernels.classify_batch(H, p, inv, md, leg_idx, ranks, legs)
        np.add.at(raw, (ranks, legs), 1)
        done += n
    counts = {name: 0 for name in _COUNTERS}
    for r in range(m + 1):
        for li, eps in enumerate((1, -1)):
            n = int(raw[r, li])
            if not n:
                continue
            sign, _, odd = sum_shape(ExpSumClass(r, eps), p, m)
            j = m - r
            name = f"n{j}" if odd else ("n1%d" % j if sign == 1 else "nm1%d" % j)
            counts[name] = counts.get(name, 0) + n
    return SampledCensus(samples, seed, counts, p ** (3 * m) - 1)


# -- closed form ------------------------------------------------------------

def _require_closed_form_params(p: int, m: int):
    if p != 3:
        raise BadParams(f"the closed-form census is proved for p = 3 only, got p = {p}")
    if m <= 1 or m % 2 == 0 or m % 3 == 0:
        raise BadParams(f"need m > 1 odd with 3 not dividing m, got m = {m}")


def alt_a_values(p: int, m: int) -> tuple[int, int, int]:
    """(a_n, a_{n-1}, a_{n-2}): numbers of forms of rank m, m-1..m-2, m-3..m-4.

    The product (p^(m+1)-1)(p^(m-1)-1)(p^m-1) / ((p^4-1)(p^2-1)) is divided as
    a whole; its factors are not separately integral.
    """
    q = p**m
    core = exact_div((p ** (m + 1) - 1) * (p ** (m - 1) - 1) * (q - 1), (p**4 - 1) * (p**2 - 1))
    head = exact_div((p ** (m + 1) - 1) * (q * q - 1), p**2 - 1)
    a_n = p ** (3 * m) - 1 - head + p**2 * core
    a_n1 = head - (p**2 + 1) * core
    return a_n, a_n1, core


def census_closed_form(p: int, m: int, a_values: tuple[int, int, int] | None = None) -> RankCensus:
    """All seven counters from the moment identities and the scheme bridge.

    2 n2 and 2 n4 come from the pair 2n2 + p^2 2n4 = A, 2n2 + p^4 2n4 = B.
    Every division is checked to be exact.
    """
    _require_closed_form_params(p, m)
    a_n, a_n1, _ = a_values or alt_a_values(p, m)
    q = p**m
    A = (exact_div(p ** (3 * m + 2) - p ** (m - 1) * (q - 1) - p**2, p + 1)
         - exact_div(a_n * (p * p - p + 1), p) - a_n1 * (p - 1))
    B = (exact_div((q - 1) * (8 * q - 9) * p ** (m - 2) + p**4 - p ** (3 * m + 4), p**2 - 1)
         + exact_div(a_n * (p**4 + p**2 + 1), p**2) + a_n1 * (p**2 + 1))
    two_n4 = exact_div(B - A, p**2 * (p**2 - 1))
    two_n2 = exact_div(p**2 * A - B, p**2 - 1)
    rest = p ** (3 * m) - 1 - a_n - a_n1 - two_n4
    k3 = p ** ((m - 3) // 2) * exact_div((q - 1) * (p ** (m - 1) - 1), p**2 - 1)
    k1 = exact_div(p ** (m + 2) - 4 * p ** (m - 1) + p**2, p**2 - 1) * p ** ((m - 1) // 2) * (q - 1)
    return RankCensus(
        n0=exact_div(a_n, 2),
        n11=exact_div(k1 + a_n1 - two_n2, 2),
        nm11=exact_div(a_n1 - two_n2 - k1, 2),
        n2=exact_div(two_n2, 2),
        n13=exact_div(k3 + rest, 2),
        nm13=exact_div(rest - k3, 2),
        n4=exact_div(two_n4, 2),
    )


def closed_form_b_alt(p: int, m: int, a_n: int, a_n1: int) -> int:
    """Alternative closed expression for B; algebraically equal to the first."""
    q = p**m
    return (exact_div((q - 1) * (8 * q - 9) * p ** (m - 2) - p ** (3 * m) + 1, p**2 - 1)
            - (p**2 + 1) * (p ** (3 * m) - 1)
            + exact_div(a_n * (p**4 + p**2 + 1), p**2) + a_n1 * (p**2 + 1))


# -- moments and linear identities -----------------------------------------

@dataclass(frozen=True)
class MomentCheck:
    k: int
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def moment_sum(census: RankCensus, k: int, p: int, m: int) -> CyclotomicInteger:
    """sum over all (a, b, c) in F_q^3 of S^k, zero triple included."""
    total = CyclotomicInteger.integer(p, p ** (k * m))
    for cls, n in census.classes(p, m):
        if n:
            total = total + s_value(cls, p, m) ** k * n
    return total


def moment_rhs(k: int, p: int, m: int) -> int:
    q = p**m
    if k in (1, 2):
        return p ** (3 * m)
    if k == 3:
        return ((p + 1) * (q - 1) + 1) * p ** (3 * m)
    if k == 4:
        return (8 * (q - 1) ** 2 + 1) * p ** (3 * m)
    raise BadParams(f"no closed moment for k = {k}")


def m5_formula(census: RankCensus, p: int, m: int) -> int:
    """Solution count of the five-variable power system from the census."""
    if m % 2 == 0:
        raise BadParams("m must be odd")
    e = (5 - m) // 2
    inner = census.n11 - census.nm11 + p**5 * (census.n13 - census.nm13)
    val = p ** (2 * m) + Fraction(inner) * Fraction(p) ** e
    if val.denominator != 1:
        raise BadParams(f"five-variable count is not an integer: {val}")
    return int(val)


def moment_check(census: RankCensus, k: int, p: int, m: int) -> MomentCheck:
    """Census-weighted k-th power moment against its closed form.

    k = 1..3 need p = 3 mod 4, k = 4, 5 need p = 3.  For k = 5 both sides
    are solution counts M5: the moment divided by p^(3m) versus the
    closed expression in the counters.
    """
    if not 1 <= k <= 5:
        raise BadParams(f"k must be in 1..5, got {k}")
    if k >= 4 and p != 3:
        raise BadParams("moments 4 and 5 are known for p = 3 only")
    lhs = moment_sum(census, k, p, m).rational()
    if k == 5:
        return MomentCheck(k, exact_div(lhs, p ** (3 * m)), m5_formula(census, p, m))
    return MomentCheck(k, lhs, moment_rhs(k, p, m))


def linear_identities(census: RankCensus, p: int, m: int,
                      a_values: tuple[int, int, int] | None = None) -> list[Check]:
    """The counter identities of the first four moments plus the scheme bridge."""
    c = census
    q = p**m
    out = [
        Check("partition", c.nonzero_total(), p ** (3 * m) - 1),
        Check("first moment", c.n11 - c.nm11 + p * (c.n13 - c.nm13), p ** ((m - 1) // 2) * (q * q - 1)),
        Check("second moment",
              -2 * (c.n0 + p**2 * c.n2 + p**4 * c.n4) + p * (c.n11 + c.nm11) + p**3 * (c.n13 + c.nm13),
              q * (q - 1)),
        Check("third moment", c.n11 - c.nm11 + p**3 * (c.n13 - c.nm13),
              (p + 1) * p ** (3 * (m - 1) // 2) * (q - 1)),
    ]
    if p == 3:
        out.append(Check(
            "fourth moment",
            2 * c.n0 + p**2 * (c.nm11 + c.n11) + p**4 * 2 * c.n2 + p**6 * (c.nm13 + c.n13) + p**8 * 2 * c.n4,
            (8 * (q - 1) ** 2 - q + 1) * q))
    if a_values is not None:
        a_n, a_n1, a_n2 = a_values
        out += [
            Check("bridge a_n", 2 * c.n0, a_n),
            Check("bridge a_n-1", c.n11 + c.nm11 + 2 * c.n2, a_n1),
            Check("bridge a_n-2", c.n13 + c.nm13 + 2 * c.n4, a_n2),
        ]
    return out
