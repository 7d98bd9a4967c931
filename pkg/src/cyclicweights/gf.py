"""Arithmetic in GF(p^m) through log / antilog / Zech tables.

Field elements are plain ints in ``range(q)``.  The base-p digits of the
int, least significant first, are the coordinates of the element in the
polynomial basis ``1, x, ..., x^(m-1)`` of ``F_p[x] / (modulus)``.  So the
code of ``x^i`` is ``p**i`` and equality of elements is equality of ints.

The modulus is always primitive, hence ``x`` (code ``p``; for m = 1 the
residue ``-c0``) generates the multiplicative group and every nonzero
element is ``pi**k`` for a unique ``0 <= k < q - 1``.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_pow_mod

from .errors import BadParams, NonPrimeP, NonPrimitiveModulus, TooLarge

# p**m for p = 3, m = 13 is 1594323; tables stay below ~100 MB.
DEFAULT_MAX_ELEMENTS = 2_000_000


def is_primitive_modulus(p: int, m: int, modulus) -> bool:
    """True iff ``modulus`` (low-to-high, monic, degree m) is primitive over F_p.

    x has order p^m - 1 modulo the polynomial exactly when the quotient ring
    is a field generated by x, so irreducibility needs no separate test.
    """
    modulus = [int(c) % p for c in modulus]
    if len(modulus) != m + 1 or modulus[-1] != 1 or modulus[0] == 0:
        return False
    n = p**m - 1
    g = modulus[::-1]  # galoistools wants high-to-low
    x = [1, 0]
    if gf_pow_mod(x, n, g, p, ZZ) != [1]:
        return False
    return all(gf_pow_mod(x, n // r, g, p, ZZ) != [1] for r in factorint(n))


def find_primitive_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest primitive monic polynomial of degree m.

    Candidates are ordered by their coefficient tuple ``(c0, c1, ..., c_{m-1})``
    compared left to right, i.e. low-degree coefficients first.
    """
    for low in itertools.product(range(p), repeat=m):
        cand = (*low, 1)
        if is_primitive_modulus(p, m, cand):
            return cand
    raise NonPrimitiveModulus(f"no primitive polynomial of degree {m} over F_{p}")  # unreachable


def make_field(p: int = 3, m: int = 5, modulus=None, *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> "FieldCtx":
    """Build GF(p^m).

    If ``modulus`` is omitted the lexicographically smallest primitive
    polynomial is used, so results are reproducible.
    """
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise NonPrimeP(f"p must be an odd prime, got {p!r}")
    if not isinstance(m, int) or m < 1:
        raise BadParams(f"m must be a positive integer, got {m!r}")
    if p**m > max_elements:
        raise TooLarge(f"GF({p}^{m}) has {p**m} elements, guard is {max_elements}")
    if modulus is None:
        modulus = find_primitive_modulus(p, m)
    else:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] % p != 1:
            raise NonPrimitiveModulus(f"modulus must be monic of degree {m}: {modulus}")
        modulus = tuple(c % p for c in modulus)
        if not is_primitive_modulus(p, m, modulus):
            raise NonPrimitiveModulus(f"{format_poly(modulus)} is not primitive over F_{p}")
    return FieldCtx(p, m, modulus)


def format_poly(coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}{mono}"))
    return " + ".join(terms) or "0"


class FieldCtx:
    """Immutable context for GF(p^m) with precomputed tables.

    Attributes
    ----------
    exp : ndarray, shape (q - 1,)
        ``exp[k]`` is the code of ``pi**k`` (the antilog table).
    log : ndarray, shape (q,)
        Inverse of ``exp``; ``log[0] == -1``.
    zech : ndarray, shape (q - 1,)
        ``zech[k] = log(1 + pi**k)``, or -1 where ``1 + pi**k == 0``.
    tr : ndarray, shape (q,)
        Absolute trace of every element.
    digits : ndarray, shape (q, m)
        Polynomial-basis coordinates of every element.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p**m
        self.order = self.q - 1
        self.modulus = tuple(modulus)
        self.place = p ** np.arange(m, dtype=np.int64)

        codes = np.arange(self.q, dtype=np.int64)
        self.digits = ((codes[:, None] // self.place[None, :]) % p).astype(np.int64)

        self.exp = self._powers_of_x() @ self.place
        self.log = np.full(self.q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(self.order, dtype=np.int64)
        if self.exp[0] != 1 or np.count_nonzero(self.log >= 0) != self.order:
            raise NonPrimitiveModulus(f"{format_poly(modulus)} does not generate GF({self.q})*")

        # 1 + pi^k only changes the constant coordinate.
        low = self.exp % p
        one_plus = self.exp - low + (low + 1) % p
        self.zech = self.log[one_plus]

        self._tr_basis = [self._trace_by_frobenius(int(self.place[i])) for i in range(m)]
        self.tr = (self.digits @ np.array(self._tr_basis, dtype=np.int64)) % p

        for arr in (self.digits, self.exp, self.log, self.zech, self.tr):
            arr.setflags(write=False)

    def _powers_of_x(self) -> np.ndarray:
        """Coordinates of x^0 .. x^(q-2), built by repeated squaring of the companion map."""
        p, m, n = self.p, self.m, self.order
        # companion matrix acting on row vectors: v -> v @ T is multiplication by x
        T = np.zeros((m, m), dtype=np.int64)
        for i in range(m - 1):
            T[i, i + 1] = 1
        T[m - 1, :] = [(-c) % p for c in self.modulus[:m]]
        out = np.zeros((n, m), dtype=np.int64)
        out[0, 0] = 1
        have, step = 1, T
        while have < n:
            take = min(have, n - have)
            out[have:have + take] = (out[:take] @ step) % p
            have += take
            step = (step @ step) % p
        return out

    def _trace_by_frobenius(self, a: int) -> int:
        acc = 0
        for i in range(self.m):
            acc = self.add(acc, self.pow(a, self.p**i))
        if acc >= self.p:
            raise AssertionError("trace left the prime field")  # structural, never user-triggered
        return acc

    # -- element arithmetic -------------------------------------------------

    @cached_property
    def pi(self) -> int:
        """The primitive element (the class of x)."""
        return int(self.exp[1 % self.order]) if self.order > 1 else 1

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = int(self.log[a])
        z = int(self.zech[(int(self.log[b]) - la) % self.order])
        if z < 0:
            return 0
        return int(self.exp[(la + z) % self.order])

    def neg(self, a: int) -> int:
        if a == 0:
            return 0
        # -1 = pi^((q-1)/2)
        return int(self.exp[(int(self.log[a]) + self.order // 2) % self.order])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.order])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(-int(self.log[a])) % self.order])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def scalar(self, c: int) -> int:
        """Embed an integer residue as an element of the prime subfield."""
        return c % self.p

    def trace(self, a: int) -> int:
        return int(self.tr[a])

    def coordinates(self, a: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self.digits[a])

    def from_coordinates(self, coords) -> int:
        if len(coords) != self.m:
            raise BadParams(f"expected {self.m} coordinates, got {len(coords)}")
        return int(sum((int(c) % self.p) * int(w) for c, w in zip(coords, self.place)))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={format_poly(self.modulus)})"


def trace(ctx: FieldCtx, x: int) -> int:
    return ctx.trace(x)


def power_map(ctx: FieldCtx, x: int, e: int) -> int:
    return ctx.pow(x, e)


def coordinates(ctx: FieldCtx, x: int) -> tuple[int, ...]:
    return ctx.coordinates(x)
