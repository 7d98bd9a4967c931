"""Quadratic forms Tr(a x^2 + b x^(p+1) + c x^(p^2+1)) as symmetric matrices.

A form is turned into its Gram matrix H over F_p (``X H X^T`` equals the
trace of f at the element with coordinate row X), diagonalised by
congruence, and summarised by its rank and the Legendre class of the
product of the nonzero diagonal entries.  That pair decides the
exponential sum exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NotSymmetric
from .gf import FieldCtx


@dataclass(frozen=True)
class Diagonalization:
    """``transform @ H @ transform.T == diag(diag)`` mod p; ``diag[:rank]`` nonzero."""

    transform: np.ndarray
    diag: np.ndarray
    rank: int
    p: int


@dataclass(frozen=True)
class ExpSumClass:
    rank: int
    eps: int  # Legendre symbol of the diagonal product; +1 for rank 0


@dataclass(frozen=True)
class ShiftResult:
    solvable: bool
    c: int | None = None


def legendre(a: int, p: int = 3) -> int:
    """Legendre symbol by Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def residue_tables(p: int) -> tuple[np.ndarray, np.ndarray]:
    """Inverse table and square/non-square index table used by the kernels."""
    inv = np.zeros(p, dtype=np.int64)
    leg_idx = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
        leg_idx[a] = 0 if legendre(a, p) == 1 else 1
    return inv, leg_idx


def quadratic_exponents(p: int) -> tuple[int, int, int]:
    return (2, p + 1, p * p + 1)


def form_trace(ctx: FieldCtx, coeffs, x: int) -> int:
    """Tr(sum_k coeffs[k] * x^(p^k + 1))."""
    acc = 0
    for k, a in enumerate(coeffs):
        if a:
            acc = ctx.add(acc, ctx.mul(a, ctx.pow(x, ctx.p**k + 1)))
    return ctx.trace(acc)


def gram_matrix(ctx: FieldCtx, alpha: int, beta: int, gamma: int) -> np.ndarray:
    """Symmetric H with X H X^T = Tr(alpha x^2 + beta x^(p+1) + gamma x^(p^2+1)).

    Built by polarisation on the polynomial basis b_i = x^i, which needs 1/2
    and therefore odd p.
    """
    p, m = ctx.p, ctx.m
    coeffs = (alpha, beta, gamma)
    basis = [int(b) for b in ctx.place]
    half = pow(2, -1, p)
    diag = [form_trace(ctx, coeffs, b) for b in basis]
    H = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        H[i, i] = diag[i]
        for j in range(i + 1, m):
            both = form_trace(ctx, coeffs, ctx.add(basis[i], basis[j]))
            H[i, j] = H[j, i] = (half * (both - diag[i] - diag[j])) % p
    return H


def basis_grams(ctx: FieldCtx) -> np.ndarray:
    """Gram matrices of the 3m forms whose coefficient triple is a single basis vector.

    Row ``k*m + i`` is H for the triple with ``x^i`` in slot k and zeros
    elsewhere.  Since H is F_p-linear in the coefficients, any triple's
    matrix is the digit-weighted sum of these rows.
    """
    m = ctx.m
    out = np.zeros((3 * m, m, m), dtype=np.int64)
    for k in range(3):
        for i in range(m):
            coeffs = [0, 0, 0]
            coeffs[k] = int(ctx.place[i])
            out[k * m + i] = gram_matrix(ctx, *coeffs)
    return out


def slot_grams(ctx: FieldCtx, G: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gram matrices of a x^2, b x^(p+1), c x^(p^2+1) for every field element."""
    if G is None:
        G = basis_grams(ctx)
    m = ctx.m
    return tuple(
        np.einsum("qi,ijk->qjk", ctx.digits, G[k * m:(k + 1) * m]) % ctx.p for k in range(3)
    )


def diagonalize(H, p: int = 3) -> Diagonalization:
    """Congruence-diagonalise a symmetric matrix over F_p (p odd).

    Pivot rule at step k: take the first nonzero diagonal entry at or after
    k; if the remaining diagonal is zero but an off-diagonal entry (i, j)
    is not, add row/column j into i first, which makes entry (i, i) equal
    to 2 H[i, j].
    """
    H = np.asarray(H, dtype=np.int64) % p
    if H.ndim != 2 or H.shape[0] != H.shape[1] or not np.array_equal(H, H.T):
        raise NotSymmetric("matrix is not square and symmetric")
    m = H.shape[0]
    inv, _ = residue_tables(p)
    A = H.copy()
    M = np.eye(m, dtype=np.int64)
    r = int(_kernels.congruence_diag(A, M, p, inv, _kernels.mod_table(p), True))
    return Diagonalization(M, np.diagonal(A).copy(), r, p)


def class_of(d: Diagonalization) -> ExpSumClass:
    prod = 1
    for a in d.diag[:d.rank]:
        prod = prod * int(a) % d.p
    return ExpSumClass(d.rank, legendre(prod, d.p))


def classify_matrix(H, p: int = 3) -> ExpSumClass:
    return class_of(diagonalize(H, p))


def classify(ctx: FieldCtx, alpha: int, beta: int, gamma: int) -> ExpSumClass:
    return classify_matrix(gram_matrix(ctx, alpha, beta, gamma), ctx.p)


def linear_coefficients(ctx: FieldCtx, delta: int) -> np.ndarray:
    """Row A with A X^T = Tr(delta x) for the element x with coordinates X."""
    return np.array([ctx.trace(ctx.mul(delta, int(b))) for b in ctx.place], dtype=np.int64)


def linear_shift(d: Diagonalization, A) -> ShiftResult:
    """Solve 2 Y H + A = 0 through the diagonal form and return the phase c.

    With A' = -A M^T the system reads Y' diag(h) = A', solvable iff A' vanishes
    beyond the rank, and then c = -sum a'_i^2 / h_i.
    """
    p, r = d.p, d.rank
    A = np.asarray(A, dtype=np.int64)
    Ap = (-(A @ d.transform.T)) % p
    if np.any(Ap[r:]):
        return ShiftResult(False)
    c = 0
    for i in range(r):
        c += int(Ap[i]) ** 2 * pow(int(d.diag[i]), -1, p)
    return ShiftResult(True, (-c) % p)


def classify_many(ctx: FieldCtx, triples) -> list[ExpSumClass]:
    """Classify a batch of (alpha, beta, gamma) rows with one compiled loop."""
    T = np.asarray(triples, dtype=np.int64).reshape(-1, 3)
    HA, HB, HG = slot_grams(ctx)
    H = (HA[T[:, 0]] + HB[T[:, 1]] + HG[T[:, 2]]) % ctx.p
    inv, leg_idx = residue_tables(ctx.p)
    ranks = np.empty(len(T), dtype=np.int64)
    legs = np.empty(len(T), dtype=np.int64)
    _kernels.classify_batch(H, ctx.p, inv, _kernels.mod_table(ctx.p), leg_idx, ranks, legs)
    return [ExpSumClass(int(r), 1 - 2 * int(li)) for r, li in zip(ranks, legs)]
