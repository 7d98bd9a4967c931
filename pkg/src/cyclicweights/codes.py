"""Weight distributions of the cyclic codes C1 and C2 over F_3.

C1 has nonzeros pi^-2, pi^-(p+1), pi^-(p^2+1); C2 adds pi^-1.  A codeword is
c_i = sum_k Tr(alpha_k pi^(i s_k)) for 0 <= i < q - 1, and its weight is

    w = p^(m-1)(p-1) - R/p

with R (or R' for C2) the sum of S over the nonzero F_p-scalings of the
coefficients.  Coefficient tuples are ordered like ``CodeSpec.exponents``:
(alpha, beta, gamma) for C1 and (alpha, beta, gamma, delta) for C2, delta
being the coefficient of the linear term.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .census import DEFAULT_MAX_ENUM, RankCensus, _map_shards, _shards
from .checks import Check
from .counting import quad_solution_count
from .errors import ArityMismatch, BadParams, TooLarge, exact_div
from .expsum import CyclotomicInteger, r_value, rprime_value, s_value
from .gf import FieldCtx
from .quadform import (ExpSumClass, ShiftResult, class_of, diagonalize, legendre,
                       linear_shift, residue_tables, slot_grams)

log = logging.getLogger(__name__)


def cyclotomic_coset(p: int, m: int, s: int) -> set[int]:
    """{s p^i mod (p^m - 1)}."""
    n = p**m - 1
    if not 0 <= s < n:
        raise BadParams(f"s must lie in [0, {n}), got {s}")
    out = set()
    x = s
    while x not in out:
        out.add(x)
        x = x * p % n
    return out


@dataclass(frozen=True)
class CodeSpec:
    name: str
    p: int
    m: int
    exponents: tuple[int, ...]

    @property
    def length(self) -> int:
        return self.p**self.m - 1

    @property
    def iota(self) -> int:
        return len(self.exponents)

    def cosets(self) -> list[set[int]]:
        return [cyclotomic_coset(self.p, self.m, s % self.length) for s in self.exponents]

    def nonconjugate(self) -> bool:
        cs = self.cosets()
        return all(not (cs[i] & cs[j]) for i in range(len(cs)) for j in range(i))


def _require_code_params(p: int, m: int, code: str):
    if p != 3:
        raise BadParams(f"the weight distributions are proved for p = 3 only, got p = {p}")
    if m <= 1 or m % 2 == 0 or m % 3 == 0:
        raise BadParams(f"need m > 1 odd with 3 not dividing m, got m = {m}")
    if code == "c2" and m % 4 != 1:
        raise BadParams(f"m must be ≡ 1 mod 4 for C2, got m = {m}")


def c1_spec(p: int = 3, m: int = 5) -> CodeSpec:
    return CodeSpec("c1", p, m, (2, p + 1, p * p + 1))


def c2_spec(p: int = 3, m: int = 5) -> CodeSpec:
    return CodeSpec("c2", p, m, (2, p + 1, p * p + 1, 1))


def code_spec(code: str, p: int, m: int) -> CodeSpec:
    if code == "c1":
        return c1_spec(p, m)
    if code == "c2":
        return c2_spec(p, m)
    raise BadParams(f"unknown code {code!r}")


@dataclass
class WeightDistribution:
    entries: dict[int, int]  # weight -> multiplicity, nonzero multiplicities only
    code: CodeSpec
    include_zero: bool = False
    zero_rows: dict[int, int] = field(default_factory=dict)  # weights whose formula gave 0

    def total(self) -> int:
        return sum(self.entries.values())

    def expected_total(self) -> int:
        return self.code.p ** (self.code.iota * self.code.m) - 1 + self.include_zero

    def mean_weight(self) -> Fraction:
        """Average weight over all codewords, the zero word included."""
        n = self.code.p ** (self.code.iota * self.code.m)
        return Fraction(sum(w * a for w, a in self.entries.items()), n)

    def as_dict(self) -> dict[int, int]:
        return dict(sorted(self.entries.items()))


def _base_weight(p: int, m: int) -> int:
    return p ** (m - 1) * (p - 1)


def _weight_from_r(p: int, m: int, R: int) -> int:
    return _base_weight(p, m) - exact_div(R, p)


def _finish(code: CodeSpec, rows: dict[int, int], include_zero: bool) -> WeightDistribution:
    entries = {w: a for w, a in rows.items() if a}
    zero_rows = {w: a for w, a in rows.items() if not a}
    if include_zero:
        entries[0] = entries.get(0, 0) + 1
    return WeightDistribution(dict(sorted(entries.items())), code, include_zero, zero_rows)


# -- C1 -----------------------------------------------------------------------

def c1_distribution(census: RankCensus, p: int = 3, m: int = 5, *,
                    include_zero: bool = False) -> WeightDistribution:
    """Five nonzero weights; each class contributes weight p^(m-1)(p-1) - R/p."""
    _require_code_params(p, m, "c1")
    rows: Counter[int] = Counter()
    for cls, n in census.classes(p, m):
        if n:
            rows[_weight_from_r(p, m, r_value(cls, p, m))] += n
    return _finish(c1_spec(p, m), dict(rows), include_zero)


# -- C2 -----------------------------------------------------------------------

@dataclass(frozen=True)
class Table2Row:
    cls: ExpSumClass
    c: int | None  # None: 2YH + A = 0 unsolvable, S' = 0
    value: CyclotomicInteger
    multiplicity: int


def _count_with_phase(r: int, eps: int, c: int, p: int) -> int:
    """#{y in F_p^r : sum h_i y_i^2 = -c} for a diagonal h of Legendre class eps."""
    if r == 0:
        return int(c == 0)
    nonres = next(a for a in range(2, p) if legendre(a, p) == -1) if p > 2 else 1
    coeffs = [1] * (r - 1) + [1 if eps == 1 else nonres]
    return quad_solution_count(coeffs, -c, p)


def shift_pattern(cls: ExpSumClass, p: int, m: int) -> list[int]:
    """How the q values of delta split for one form: [unsolvable, c=0, .., c=p-1]."""
    r = cls.rank
    return [p**m - p**r] + [_count_with_phase(r, cls.eps, c, p) for c in range(p)]


def _table2_from_classes(class_counts, p: int, m: int) -> list[Table2Row]:
    zero = CyclotomicInteger.integer(p, 0)
    out = []
    for cls, n in class_counts:
        pat = shift_pattern(cls, p, m)
        s = s_value(cls, p, m)
        out.append(Table2Row(cls, None, zero, n * pat[0]))
        for c in range(p):
            out.append(Table2Row(cls, c, CyclotomicInteger.zeta(p, c) * s, n * pat[1 + c]))
    return out


def table2_rows(census: RankCensus, p: int = 3, m: int = 5) -> list[Table2Row]:
    """S' = zeta^c S and how often it occurs, per (rank, Legendre class, c)."""
    _require_code_params(p, m, "c2")
    return _table2_from_classes(census.classes(p, m), p, m)


def table3_rows(census: RankCensus, p: int = 3, m: int = 5) -> list[tuple[int, int, int]]:
    """(R', weight, multiplicity) for the eleven R' values of C2, zero rows kept."""
    _require_code_params(p, m, "c2")
    c = census
    h = (m - 1) // 2  # p^((m-1)/2)
    P = lambda e: p**e  # noqa: E731
    base = _base_weight(p, m)
    rows = [
        (0, base,
         2 * c.n0 * P(m - 1) + (c.nm11 + c.n11) * (P(m) - P(m - 1)) + 2 * c.n2 * (P(m) - 2 * P(m - 3))
         + (c.nm13 + c.n13) * (P(m) - P(m - 3)) + 2 * c.n4 * (P(m) - 2 * P(m - 5)) + P(m) - 1),
        (-P(h + 1), base + P(h),
         2 * c.n0 * (P(m - 1) - P(h)) + 2 * c.n11 * (P(m - 2) - P(h - 1))),
        (P(h + 1), base - P(h),
         2 * c.n0 * (P(m - 1) + P(h)) + 2 * c.nm11 * (P(m - 2) + P(h - 1))),
        (P(h + 2), base - P(h + 1),
         2 * c.n2 * (P(m - 3) + P(h - 1)) + 2 * c.nm13 * (P(m - 4) + P(h - 2))),
        (-P(h + 2), base + P(h + 1),
         2 * c.n2 * (P(m - 3) - P(h - 1)) + 2 * c.n13 * (P(m - 4) - P(h - 2))),
        ((p - 1) * P(h + 1), base - (p - 1) * P(h),
         c.n11 * (P(m - 2) + (p - 1) * P(h - 1))),
        (-(p - 1) * P(h + 1), base + (p - 1) * P(h),
         c.nm11 * (P(m - 2) - (p - 1) * P(h - 1))),
        ((p - 1) * P(h + 2), base - (p - 1) * P(h + 1),
         c.n13 * (P(m - 4) + (p - 1) * P(h - 2))),
        (-(p - 1) * P(h + 2), base + (p - 1) * P(h + 1),
         c.nm13 * (P(m - 4) - (p - 1) * P(h - 2))),
        (-P(h + 3), base + P(h + 2),
         2 * c.n4 * (P(m - 5) - P(h - 2))),
        (P(h + 3), base - P(h + 2),
         2 * c.n4 * (P(m - 5) + P(h - 2))),
    ]
    return rows


def c2_distribution(census: RankCensus, p: int = 3, m: int = 5, *,
                    include_zero: bool = False) -> WeightDistribution:
    """Weights of C2 from the R' table; weights whose multiplicity is 0 are dropped."""
    rows: Counter[int] = Counter()
    for _, w, n in table3_rows(census, p, m):
        rows[w] += n
    return _finish(c2_spec(p, m), dict(rows), include_zero)


def c2_from_table2(census: RankCensus, p: int = 3, m: int = 5, *,
                   include_zero: bool = False) -> WeightDistribution:
    """C2 weights by pushing every S' row through R' and the weight equation."""
    rows: Counter[int] = Counter()
    for row in table2_rows(census, p, m):
        shift = ShiftResult(row.c is not None, row.c)
        rows[_weight_from_r(p, m, rprime_value(row.cls, shift, p, m))] += row.multiplicity
    rows[_base_weight(p, m)] += p**m - 1  # (0, 0, 0, delta), delta != 0
    return _finish(c2_spec(p, m), dict(rows), include_zero)


# -- direct evaluation ----------------------------------------------------------

def trace_table(ctx: FieldCtx, s: int) -> np.ndarray:
    """V[a, i] = Tr(a pi^(i s)) for every field element a and position i."""
    l = ctx.order
    V = np.zeros((ctx.q, l), dtype=np.int64)
    nz = np.arange(1, ctx.q)
    logs = ctx.log[nz].astype(np.int64)
    idx = (logs[:, None] + s * np.arange(l, dtype=np.int64)[None, :]) % l
    V[1:] = ctx.tr[ctx.exp[idx]]
    return V


def codeword(ctx: FieldCtx, spec: CodeSpec, coeffs) -> np.ndarray:
    if len(coeffs) != spec.iota:
        raise ArityMismatch(f"{spec.name} takes {spec.iota} coefficients, got {len(coeffs)}")
    l = ctx.order
    pos = np.arange(l, dtype=np.int64)
    acc = np.zeros(l, dtype=np.int64)
    for a, s in zip(coeffs, spec.exponents):
        a = int(a)
        if a:
            acc += ctx.tr[ctx.exp[(int(ctx.log[a]) + s * pos) % l]]
    return acc % ctx.p


def codeword_weight(ctx: FieldCtx, spec: CodeSpec, coeffs) -> int:
    """Hamming weight by evaluating every position."""
    return int(np.count_nonzero(codeword(ctx, spec, coeffs)))


class _Predictor:
    """Closed-form weights with the per-field tables built once."""

    def __init__(self, ctx: FieldCtx, spec: CodeSpec):
        p = ctx.p
        quad = (2, p + 1, p * p + 1)
        if spec.exponents[:3] != quad or spec.exponents[3:] not in ((), (1,)):
            raise BadParams(f"no closed form for exponents {spec.exponents}")
        self.ctx, self.spec = ctx, spec
        self.HA, self.HB, self.HG = slot_grams(ctx)
        place = [int(b) for b in ctx.place]
        self._lin = np.array([[ctx.trace(ctx.mul(d, b)) for b in place] for d in range(ctx.q)],
                             dtype=np.int64)

    def __call__(self, coeffs) -> int:
        ctx, p, m = self.ctx, self.ctx.p, self.ctx.m
        if len(coeffs) != self.spec.iota:
            raise ArityMismatch(f"{self.spec.name} takes {self.spec.iota} coefficients, got {len(coeffs)}")
        a, b, c = (int(x) for x in coeffs[:3])
        d = diagonalize((self.HA[a] + self.HB[b] + self.HG[c]) % p, p)
        cls = class_of(d)
        if self.spec.iota == 3:
            return _weight_from_r(p, m, r_value(cls, p, m))
        shift = linear_shift(d, self._lin[int(coeffs[3])])
        return _weight_from_r(p, m, rprime_value(cls, shift, p, m))


def predict_weight(ctx: FieldCtx, spec: CodeSpec, coeffs) -> int:
    """Weight from classify (and linear_shift for C2) through R or R'."""
    return _Predictor(ctx, spec)(coeffs)


@dataclass
class VerifyReport:
    code: str
    samples: int
    seed: int | None
    mismatches: list[tuple[tuple[int, ...], int, int]]  # (coeffs, predicted, observed)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_coeffs(ctx: FieldCtx, spec: CodeSpec, tuples, *, seed: int | None = None) -> VerifyReport:
    predict = _Predictor(ctx, spec)
    bad = []
    n = 0
    for t in tuples:
        t = tuple(int(x) for x in t)
        want, got = predict(t), codeword_weight(ctx, spec, t)
        if want != got:
            bad.append((t, want, got))
        n += 1
    return VerifyReport(spec.name, n, seed, bad)


def sample_verify(ctx: FieldCtx, spec: CodeSpec, samples: int, seed: int = 0) -> VerifyReport:
    """Compare direct weights with predictions on seeded random coefficient tuples."""
    if samples < 1:
        raise BadParams("samples must be >= 1")
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, ctx.q, size=(samples, spec.iota))
    return verify_coeffs(ctx, spec, draws, seed=seed)


# -- exhaustive oracles -------------------------------------------------------

def brute_distribution(ctx: FieldCtx, spec: CodeSpec, *, workers: int = 1,
                       max_enum: int = DEFAULT_MAX_ENUM, include_zero: bool = False) -> WeightDistribution:
    """Weight histogram of every codeword of a three-nonzero code."""
    if spec.iota != 3:
        raise BadParams("exhaustive weights are implemented for three nonzeros")
    q = ctx.q
    if q**3 > max_enum:
        raise TooLarge(f"q^3 = {q**3} codewords exceed the enumeration guard {max_enum}")
    V0, V1, V2 = (trace_table(ctx, s) for s in spec.exponents)
    l = ctx.order

    def work(bounds):
        out = np.zeros(l + 1, dtype=np.int64)
        _kernels.weight_shard(V0, V1, V2, bounds[0], bounds[1], ctx.p, out)
        return out

    counts = np.sum(_map_shards(work, _shards(q, 4 * max(workers, 1)), workers), axis=0)
    counts[0] -= 1  # the zero word
    rows = {w: int(n) for w, n in enumerate(counts) if n}
    return _finish(spec, rows, include_zero)


def shift_tally(ctx: FieldCtx, *, workers: int = 1, max_enum: int = DEFAULT_MAX_ENUM) -> np.ndarray:
    """Exhaustive counts[rank, leg, k] over every nonzero (a, b, c) and every delta.

    k = 0 counts unsolvable shifts, k = 1 + c the solvable ones with phase c.
    This is q^4 work and meant for small fields or long runs.
    """
    p, m, q = ctx.p, ctx.m, ctx.q
    if q**4 > max_enum:
        raise TooLarge(f"q^4 = {q**4} tuples exceed the enumeration guard {max_enum}")
    HA, HB, HG = slot_grams(ctx)
    inv, leg_idx = residue_tables(p)
    md = _kernels.mod_table(p)
    place = [int(b) for b in ctx.place]
    lin = np.array([[ctx.trace(ctx.mul(d, b)) for b in place] for d in range(q)], dtype=np.int64)

    def work(bounds):
        out = np.zeros((m + 1, 2, p + 1), dtype=np.int64)
        _kernels.shift_shard(HA, HB, HG, lin, bounds[0], bounds[1], p, inv, md, leg_idx, out)
        return out

    return np.sum(_map_shards(work, _shards(q, 4 * max(workers, 1)), workers), axis=0)


def predicted_tally(class_counts: np.ndarray, p: int, m: int) -> np.ndarray:
    """What ``shift_tally`` must return given raw (rank, leg) form counts."""
    out = np.zeros((m + 1, 2, p + 1), dtype=np.int64)
    for r in range(m + 1):
        for li, eps in enumerate((1, -1)):
            n = int(class_counts[r, li])
            if n:
                out[r, li] = n * np.array(shift_pattern(ExpSumClass(r, eps), p, m), dtype=np.int64)
    return out


def table2_sample_check(ctx: FieldCtx, samples: int, seed: int = 0) -> list[Check]:
    """For random nonzero triples, split all q deltas by phase and compare with the pattern."""
    p, q = ctx.p, ctx.q
    HA, HB, HG = slot_grams(ctx)
    place = [int(b) for b in ctx.place]
    lin = np.array([[ctx.trace(ctx.mul(d, b)) for b in place] for d in range(q)], dtype=np.int64)
    rng = np.random.default_rng(seed)
    out = []
    done = 0
    while done < samples:
        a, b, c = (int(x) for x in rng.integers(0, q, size=3))
        if not (a or b or c):
            continue
        d = diagonalize((HA[a] + HB[b] + HG[c]) % p, p)
        cls = class_of(d)
        r = d.rank
        Ap = (-(lin @ d.transform.T)) % p
        solvable = ~Ap[:, r:].any(axis=1)
        hinv = np.array([pow(int(h), -1, p) for h in d.diag[:r]], dtype=np.int64)
        phase = (-(Ap[:, :r] ** 2 @ hinv)) % p
        got = [int((~solvable).sum())] + [int((solvable & (phase == k)).sum()) for k in range(p)]
        out.append(Check(f"triple ({a}, {b}, {c}) rank {r} eps {cls.eps}", got, shift_pattern(cls, p, m=ctx.m)))
        done += 1
    return out
