"""Exact linear algebra over Q and Q(q, t).

Both fields are handled by the same fraction-free Gauss-Jordan
elimination (Bareiss' exact-division update carried through the rows
above the pivot as well).  Rows are first cleared of denominators, so the
elimination runs over Z or Z[q, t]; every intermediate entry is a minor of
the cleared matrix and each division is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .ratfunc import RatFunc, _ZCTX, clear_row_denominators, from_fmpz_mpoly
from .mpoly import MPoly


class InconsistentSystemError(ValueError):
    """The linear system has no solution."""


@dataclass(frozen=True)
class Solution:
    x: list
    kernel_dim: int


def _exquo_int(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return q


def _exquo_poly(a, b):
    q, r = divmod(a, b)
    if not r.is_zero():
        raise ArithmeticError("inexact division in fraction-free elimination")
    return q


def fraction_free_rref(a: list[list], zero, one, exquo) -> tuple[list[list], list[int], object]:
    """In-place fraction-free Gauss-Jordan elimination.

    On return every pivot entry equals the returned ``d`` (the last pivot,
    a maximal nonzero minor) and all other entries of pivot columns are 0,
    so ``a / d`` is the reduced row echelon form.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    pivots: list[int] = []
    divisor = one
    i = 0
    for j in range(n):
        if i == m:
            break
        piv = next((r for r in range(i, m) if a[r][j]), None)
        if piv is None:
            continue
        a[i], a[piv] = a[piv], a[i]
        row_i = a[i]
        p = row_i[j]
        for r in range(m):
            if r == i:
                continue
            row_r = a[r]
            arj = row_r[j]
            if arj:
                for c in range(n):
                    if c != j:
                        row_r[c] = exquo(p * row_r[c] - arj * row_i[c], divisor)
            elif divisor != p:
                for c in range(n):
                    if row_r[c]:
                        row_r[c] = exquo(p * row_r[c], divisor)
            row_r[j] = zero
        divisor = p
        pivots.append(j)
        i += 1
    return a, pivots, divisor


def _is_symbolic(rows: Sequence[Sequence]) -> bool:
    return any(isinstance(e, (RatFunc, MPoly)) for row in rows for e in row)


def _to_ratfunc(e) -> RatFunc:
    return e if isinstance(e, RatFunc) else RatFunc(e)


def _int_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(e) for e in row]
        den = lcm(*(e.denominator for e in row)) if row else 1
        out.append([int(e * den) for e in row])
    return out


def _poly_rows(rows) -> list[list]:
    return [clear_row_denominators([_to_ratfunc(e) for e in row]) for row in rows]


def _eliminate(rows, ncols: int):
    """Clear denominators and run the elimination; returns
    (reduced rows, pivots, d, symbolic?)."""
    symbolic = _is_symbolic(rows)
    for row in rows:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    if symbolic:
        work = _poly_rows(rows)
        zero, one = _ZCTX.from_dict({}), _ZCTX.constant(1)
        red, piv, d = fraction_free_rref(work, zero, one, _exquo_poly)
    else:
        work = _int_rows(rows)
        red, piv, d = fraction_free_rref(work, 0, 1, _exquo_int)
    return red, piv, d, symbolic


def _ncols(M, ncols):
    if ncols is not None:
        return ncols
    if not M:
        raise ValueError("column count of an empty matrix must be given")
    return len(M[0])


def rank(M: Sequence[Sequence], ncols: int | None = None) -> int:
    n = _ncols(M, ncols)
    if not M:
        return 0
    return len(_eliminate([list(r) for r in M], n)[1])


def _primitive(vec: list, symbolic: bool) -> list:
    if symbolic:
        g = None
        for e in vec:
            if not e.is_zero():
                g = e if g is None else g.gcd(e)
        if g is not None:
            vec = [_exquo_poly(e, g) for e in vec]
            lead = next(e for e in vec if not e.is_zero())
            if lead.leading_coefficient() < 0:
                vec = [-e for e in vec]
        return [from_fmpz_mpoly(e) for e in vec]
    g = 0
    for e in vec:
        g = gcd(g, e)
    if g:
        vec = [e // g for e in vec]
        lead = next(e for e in vec if e)
        if lead < 0:
            vec = [-e for e in vec]
    return [Fraction(e) for e in vec]


def kernel_basis(M: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{v : M v = 0}``.

    Entries may be ints, Fractions or RatFuncs.  Each basis vector is
    scaled to be primitive with integer (polynomial) entries; it has a
    nonzero entry exactly at one free column among the free columns.
    """
    n = _ncols(M, ncols)
    symbolic = _is_symbolic(M)
    if not M or not any(any(e for e in row) for row in M):
        one = RatFunc(1) if symbolic else Fraction(1)
        zero = RatFunc(0) if symbolic else Fraction(0)
        return [[one if i == j else zero for i in range(n)] for j in range(n)]
    red, pivots, d, symbolic = _eliminate([list(r) for r in M], n)
    zero = _ZCTX.from_dict({}) if symbolic else 0
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [zero] * n
        v[f] = d
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(_primitive(v, symbolic))
    return basis


def solve_linear(M: Sequence[Sequence], rhs: Sequence, ncols: int | None = None) -> Solution:
    """One exact solution of ``M x = rhs`` (free variables set to 0).

    Raises InconsistentSystemError when no solution exists.
    """
    n = _ncols(M, ncols)
    if len(M) != len(rhs):
        raise ValueError("row count of M and length of rhs differ")
    symbolic = _is_symbolic(M) or _is_symbolic([rhs])
    aug = [list(row) + [e] for row, e in zip(M, rhs)]
    if symbolic:
        aug = [[_to_ratfunc(e) for e in row] for row in aug]
    if not aug:
        zero = RatFunc(0) if symbolic else Fraction(0)
        return Solution([zero] * n, n)
    red, pivots, d, symbolic = _eliminate(aug, n + 1)
    if pivots and pivots[-1] == n:
        raise InconsistentSystemError("inconsistent system")
    if symbolic:
        dd = from_fmpz_mpoly(d)
        x = [RatFunc(0)] * n
        for i, pc in enumerate(pivots):
            x[pc] = from_fmpz_mpoly(red[i][n]) / dd
    else:
        x = [Fraction(0)] * n
        for i, pc in enumerate(pivots):
            x[pc] = Fraction(red[i][n], d)
    return Solution(x, n - len(pivots))


def mat_vec(M: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in M:
        acc = 0
        for e, x in zip(row, v):
            if e and x:
                acc = acc + e * x
        out.append(acc)
    return out
