"""Row spaces of large sparse rational matrices.

The reduced row echelon form is computed modulo word-size primes and lifted
to Q by rational reconstruction (CRT over several primes when needed).
A lift is accepted only after an exact integer check that every input row
``v`` satisfies ``v = sum_i v[pivot_i] * basis_i``.  Since
``rank_Q(V) >= rank_p(V) = #basis``, that check alone proves the basis
spans exactly the row space of V, whatever went wrong modulo p.  If the
lift keeps failing we fall back to exact fraction-free elimination.

Basis rows are stored as integer vectors with a per-row denominator:
row ``i`` is ``num[i] / den[i]`` and ``num[i][pivots[i]] == den[i]``.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Hashable, Iterable, Sequence

import flint

from .linalg import _exquo_int, fraction_free_rref

log = logging.getLogger(__name__)

SparseVec = dict  # column index -> int or Fraction

MAX_PRIMES = 8
_PRIMES: list[int] = []


def _prime(i: int) -> int:
    while len(_PRIMES) <= i:
        p = (_PRIMES[-1] - 2) if _PRIMES else (1 << 62) - 57
        while not flint.fmpz(p).is_prime():
            p -= 2
        _PRIMES.append(p)
    return _PRIMES[i]


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Fraction n/d with n = a d mod m and |n|, d <= sqrt(m/2), if any."""
    a %= m
    if a == 0:
        return Fraction(0)
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        s0, s1 = s1, s0 - qq * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


def _integer_rows(rows: Iterable[SparseVec]) -> list[dict]:
    """Clear denominators, make primitive, drop zero and repeated rows."""
    out = []
    seen = set()
    for row in rows:
        items = [(j, c) for j, c in row.items() if c]
        if not items:
            continue
        if all(isinstance(c, int) for _, c in items):
            irow = dict(items)
        else:
            den = lcm(*(Fraction(c).denominator for _, c in items))
            irow = {j: int(Fraction(c) * den) for j, c in items}
        g = 0
        for c in irow.values():
            g = gcd(g, c)
        if g != 1:
            irow = {j: c // g for j, c in irow.items()}
        key = tuple(sorted(irow.items()))
        if key not in seen:
            seen.add(key)
            out.append(irow)
    return out


def _lift_row(vals: list[int], modulus: int) -> tuple[dict, int] | None:
    """Lift a residue row to ``(integer numerators, common denominator)``."""
    bound = isqrt(modulus // 2)
    half = modulus // 2
    den = 1
    raw = []  # (column, numerator, denominator at the time)
    for j, v in enumerate(vals):
        if not v:
            continue
        a = (v * den) % modulus
        if a > half:
            a -= modulus
        if -bound <= a <= bound:
            raw.append((j, a, den))
            continue
        f = rational_reconstruct(a, modulus)
        if f is None:
            return None
        den *= f.denominator
        if den > bound:
            return None
        raw.append((j, f.numerator, den))
    return {j: a * (den // d) for j, a, d in raw}, den


def _certify(V: "flint.fmpz_mat", irows: list[dict], pivots: list[int], nums: list[dict],
             dens: list[int], ncols: int) -> bool:
    L = lcm(*dens)
    r = len(pivots)
    C = flint.fmpz_mat(r, ncols)
    for i, (num, d) in enumerate(zip(nums, dens)):
        scale = L // d
        for j, c in num.items():
            C[i, j] = c * scale
    P = flint.fmpz_mat(len(irows), r)
    for k, row in enumerate(irows):
        for i, pc in enumerate(pivots):
            c = row.get(pc)
            if c:
                P[k, i] = c
    return P * C == V * L


def _dense_fmpz(irows: list[dict], ncols: int) -> "flint.fmpz_mat":
    V = flint.fmpz_mat(len(irows), ncols)
    for i, row in enumerate(irows):
        for j, c in row.items():
            V[i, j] = c
    return V


def _exact_rref(irows: list[dict], ncols: int):
    dense = [[0] * ncols for _ in irows]
    for i, row in enumerate(irows):
        for j, c in row.items():
            dense[i][j] = c
    red, pivots, d = fraction_free_rref(dense, 0, 1, _exquo_int)
    nums, dens = [], []
    for i in range(len(pivots)):
        row = {j: v for j, v in enumerate(red[i]) if v}
        g = d
        for v in row.values():
            g = gcd(g, v)
        nums.append({j: v // g for j, v in row.items()})
        dens.append(d // g)
    return pivots, nums, dens


def echelon_int(rows: Iterable[SparseVec], ncols: int) -> tuple[list[int], list[dict], list[int]]:
    """Certified RREF as ``(pivots, numerators, denominators)``."""
    irows = _integer_rows(rows)
    if not irows:
        return [], [], []
    V = _dense_fmpz(irows, ncols)
    pivots: list[int] | None = None
    residues: list[list[int]] = []
    modulus = 1
    for k in range(MAX_PRIMES):
        p = _prime(k)
        R, r = flint.nmod_mat(V, p).rref()
        body = [[int(R[i, j]) for j in range(ncols)] for i in range(r)]
        piv_p = [next(j for j, v in enumerate(vals) if v) for vals in body]
        if pivots is None or len(piv_p) > len(pivots) or (len(piv_p) == len(pivots) and piv_p < pivots):
            # earlier primes were unlucky
            pivots, residues, modulus = piv_p, [], 1
        elif piv_p != pivots:
            continue
        if residues:
            inv = pow(modulus, -1, p)
            residues = [
                [u + modulus * (((v - u) * inv) % p) for u, v in zip(old, new)]
                for old, new in zip(residues, body)
            ]
        else:
            residues = body
        modulus *= p
        lifted = [_lift_row(vals, modulus) for vals in residues]
        if any(x is None for x in lifted):
            continue
        nums = [x[0] for x in lifted]
        dens = [x[1] for x in lifted]
        if _certify(V, irows, pivots, nums, dens, ncols):
            return list(pivots), nums, dens
    log.warning("modular lifting failed; using exact elimination on %dx%d", len(irows), ncols)
    return _exact_rref(irows, ncols)


def echelon(rows: Iterable[SparseVec], ncols: int) -> tuple[list[int], list[SparseVec]]:
    """Certified RREF with Fraction rows (pivot entries equal to 1)."""
    pivots, nums, dens = echelon_int(rows, ncols)
    return pivots, [{j: Fraction(c, d) for j, c in num.items()} for num, d in zip(nums, dens)]


class RowSpace:
    """A subspace of Q^ncols kept in reduced row echelon form."""

    def __init__(self, rows: Iterable[SparseVec], ncols: int):
        self.ncols = ncols
        self.pivots, self.nums, self.dens = echelon_int(rows, ncols)
        self._pivot_index = {pc: i for i, pc in enumerate(self.pivots)}
        self._rows = None

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def rows(self) -> list[dict]:
        """Basis rows as Fraction dicts, 1 at the pivot."""
        if self._rows is None:
            self._rows = [{j: Fraction(c, d) for j, c in num.items()} for num, d in zip(self.nums, self.dens)]
        return self._rows

    def reduce(self, v: SparseVec) -> SparseVec:
        """Residue of ``v`` modulo the space (zero at all pivot columns)."""
        out = {j: Fraction(c) for j, c in v.items() if c}
        for pc in sorted(set(out) & set(self._pivot_index)):
            c = out.get(pc)
            if not c:
                continue
            i = self._pivot_index[pc]
            f = c / self.dens[i]
            for j, val in self.nums[i].items():
                s = out.get(j, 0) - f * val
                if s:
                    out[j] = s
                else:
                    out.pop(j, None)
        return out

    def contains(self, v: SparseVec) -> bool:
        return not self.reduce(v)

    def contains_all(self, vectors: Sequence[SparseVec]) -> bool:
        """Batch membership test by one exact matrix product."""
        irows = _integer_rows(vectors)
        if not irows:
            return True
        if any(j >= self.ncols for row in irows for j in row):
            return False
        if not self.pivots:
            return False
        return _certify(_dense_fmpz(irows, self.ncols), irows, self.pivots, self.nums, self.dens, self.ncols)

    def coordinates(self, v: SparseVec) -> list[Fraction]:
        """Coefficients of ``v`` on ``self.rows``; ValueError if outside."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return [Fraction(v.get(pc, 0)) for pc in self.pivots]

    def annihilator(self) -> "RowSpace":
        """``{w : w . r = 0 for every r}`` (standard dot product)."""
        out = []
        for f in range(self.ncols):
            if f in self._pivot_index:
                continue
            w = {f: Fraction(1)}
            for i, pc in enumerate(self.pivots):
                c = self.nums[i].get(f)
                if c:
                    w[pc] = Fraction(-c, self.dens[i])
            out.append(w)
        return RowSpace(out, self.ncols)

    def intersect(self, other: "RowSpace") -> "RowSpace":
        if other.ncols != self.ncols:
            raise ValueError("ambient dimensions differ")
        return intersect_all([self, other], self.ncols)

    def __add__(self, other: "RowSpace") -> "RowSpace":
        return RowSpace(self.nums + other.nums, self.ncols)

    def issubspace(self, other: "RowSpace") -> bool:
        return other.contains_all(self.nums)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RowSpace):
            return NotImplemented
        return self.ncols == other.ncols and self.pivots == other.pivots and self.rows == other.rows

    __hash__ = None


def intersect_all(spaces: Sequence[RowSpace], ncols: int) -> RowSpace:
    """Intersection of several subspaces: the annihilator of the sum of
    their annihilators."""
    if not spaces:
        return RowSpace([{j: 1} for j in range(ncols)], ncols)
    if len(spaces) == 1:
        return spaces[0]
    rows = []
    for s in spaces:
        if s.dim == 0:
            return s
        rows.extend(s.annihilator().nums)
    return RowSpace(rows, ncols).annihilator()


class Indexer:
    """Stable map from hashable keys to consecutive column indices."""

    def __init__(self, keys: Iterable[Hashable] = ()):
        self.keys: list = []
        self.index: dict = {}
        for k in keys:
            self.add(k)

    def add(self, key) -> int:
        i = self.index.get(key)
        if i is None:
            i = self.index[key] = len(self.keys)
            self.keys.append(key)
        return i

    def __len__(self) -> int:
        return len(self.keys)

    def __getitem__(self, key) -> int:
        return self.index[key]

    def __contains__(self, key) -> bool:
        return key in self.index
