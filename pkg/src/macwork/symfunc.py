"""Symmetric functions of a fixed degree with coefficients in Q(q, t).

Every basis is related to the power sums by a rational transition matrix,
so all conversions go through ``p``:

* ``s_lam = sum_tau chi^lam(tau) p_tau / z_tau``
* ``h_k = sum_tau p_tau / z_tau`` and ``e_k = sum_tau eps_tau p_tau / z_tau``
* ``p_tau = sum_lam R(tau, lam) m_lam``, R counting ways to distribute the
  parts of tau into rows with sums lam.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import flint

from .exactcore.ratfunc import RatFunc
from .partcomb import (
    Partition,
    as_partition,
    character_value,
    enumerate_partitions,
    z_tau,
)

BASES = ("m", "e", "h", "p", "s")


def coeff_str(c: RatFunc) -> str:
    """Compact text form used in JSON, e.g. ``q+t`` or ``q*t``."""
    return str(c).replace(" ", "")


def partition_key(lam) -> str:
    return "[" + ",".join(map(str, lam)) + "]"


def parse_partition_key(s: str) -> Partition:
    body = s.strip().strip("[]")
    return Partition(int(x) for x in body.split(",") if x.strip())


def _p_product(parts_lists) -> Partition:
    return Partition(sorted((p for parts in parts_lists for p in parts), reverse=True))


# -- transition matrices, as dicts lam -> {tau: Fraction} --------------------

@lru_cache(maxsize=None)
def _single_part_to_p(kind: str, k: int) -> dict:
    out = {}
    for tau in enumerate_partitions(k):
        c = Fraction(1, z_tau(tau))
        if kind == "e" and (k - len(tau)) % 2:
            c = -c
        out[tau] = c
    return out


def _multiply_p(a: dict, b: dict) -> dict:
    out: dict = {}
    for s, c in a.items():
        for t, d in b.items():
            key = _p_product((s, t))
            out[key] = out.get(key, 0) + c * d
    return {k: v for k, v in out.items() if v}


def _mono_count(tau: Partition, lam: Partition) -> int:
    """Number of maps parts(tau) -> rows with row sums lam (parts labelled)."""
    rows = len(lam)
    counts: dict = {tuple([0] * rows): 1}
    for part in tau:
        nxt: dict = {}
        for state, c in counts.items():
            for r in range(rows):
                if state[r] + part <= lam[r]:
                    s = list(state)
                    s[r] += part
                    s = tuple(s)
                    nxt[s] = nxt.get(s, 0) + c
        counts = nxt
    return counts.get(tuple(lam), 0)


def _invert(mat: dict, parts: list[Partition]) -> dict:
    """Inverse of a transition matrix given as row dicts."""
    idx = {lam: i for i, lam in enumerate(parts)}
    n = len(parts)
    rows = [[flint.fmpq(0)] * n for _ in range(n)]
    for lam, row in mat.items():
        for tau, c in row.items():
            rows[idx[lam]][idx[tau]] = flint.fmpq(c.numerator, c.denominator)
    inv = flint.fmpq_mat(rows).inv()
    out = {}
    for i, lam in enumerate(parts):
        out[lam] = {}
        for j, tau in enumerate(parts):
            v = inv[i, j]
            if v != 0:
                out[lam][tau] = Fraction(int(v.p), int(v.q))
    return out


@lru_cache(maxsize=None)
def to_p_matrix(basis: str, n: int) -> dict:
    """Row ``lam``: the power-sum expansion of the basis element ``b_lam``."""
    parts = enumerate_partitions(n)
    if basis == "p":
        return {lam: {lam: Fraction(1)} for lam in parts}
    if basis == "s":
        return {
            lam: {
                tau: Fraction(character_value(lam, tau), z_tau(tau))
                for tau in parts
                if character_value(lam, tau)
            }
            for lam in parts
        }
    if basis in ("e", "h"):
        out = {}
        for lam in parts:
            acc = {Partition(()): Fraction(1)}
            for k in lam:
                acc = _multiply_p(acc, _single_part_to_p(basis, k))
            out[lam] = acc
        return out
    if basis == "m":
        return _invert(from_p_matrix("m", n), parts)
    raise ValueError(f"unknown basis {basis!r}")


@lru_cache(maxsize=None)
def from_p_matrix(basis: str, n: int) -> dict:
    """Row ``tau``: the expansion of ``p_tau`` in the given basis."""
    parts = enumerate_partitions(n)
    if basis == "p":
        return to_p_matrix("p", n)
    if basis == "s":
        return {
            tau: {lam: Fraction(character_value(lam, tau)) for lam in parts if character_value(lam, tau)}
            for tau in parts
        }
    if basis == "m":
        out = {}
        for tau in parts:
            out[tau] = {}
            for lam in parts:
                c = _mono_count(tau, lam)
                if c:
                    out[tau][lam] = Fraction(c)
        return out
    if basis in ("e", "h"):
        return _invert(to_p_matrix(basis, n), parts)
    raise ValueError(f"unknown basis {basis!r}")


def _to_ratfunc(c) -> RatFunc:
    return c if isinstance(c, RatFunc) else RatFunc(c)


def _apply(coeffs: dict, matrix: dict) -> dict:
    out: dict = {}
    for lam, c in coeffs.items():
        for tau, m in matrix[lam].items():
            out.setdefault(tau, []).append(c * m)
    result = {}
    for tau, terms in out.items():
        s = RatFunc(0)
        for term in terms:
            s = s + term
        if not s.is_zero():
            result[tau] = s
    return result


class SymFunc:
    """A homogeneous symmetric function of degree ``n`` in one basis."""

    __slots__ = ("n", "basis", "coeffs")

    def __init__(self, n: int, basis: str, coeffs: dict | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.n = n
        self.basis = basis
        clean = {}
        for lam, c in (coeffs or {}).items():
            lam = as_partition(lam)
            if lam.size != n:
                raise ValueError(f"{lam} is not a partition of {n}")
            c = _to_ratfunc(c)
            if not c.is_zero():
                clean[lam] = c
        self.coeffs = clean

    @classmethod
    def basis_element(cls, basis: str, lam) -> "SymFunc":
        lam = as_partition(lam)
        return cls(lam.size, basis, {lam: RatFunc(1)})

    @classmethod
    def zero(cls, n: int, basis: str = "s") -> "SymFunc":
        return cls(n, basis, {})

    def coeff(self, lam) -> RatFunc:
        return self.coeffs.get(as_partition(lam), RatFunc(0))

    def to(self, basis: str) -> "SymFunc":
        return convert_basis(self, basis)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other: "SymFunc") -> "SymFunc":
        if other.n != self.n:
            raise ValueError("degrees differ")
        return other if other.basis == self.basis else other.to(self.basis)

    def __add__(self, other: "SymFunc") -> "SymFunc":
        other = self._same(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, RatFunc(0)) + c
        return SymFunc(self.n, self.basis, out)

    def __neg__(self) -> "SymFunc":
        return SymFunc(self.n, self.basis, {lam: -c for lam, c in self.coeffs.items()})

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = _to_ratfunc(c)
        return SymFunc(self.n, self.basis, {lam: v * c for lam, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            a, b = self.to("p"), other.to("p")
            out: dict = {}
            for s, c in a.coeffs.items():
                for t, d in b.coeffs.items():
                    key = _p_product((s, t))
                    out[key] = out.get(key, RatFunc(0)) + c * d
            return SymFunc(self.n + other.n, "p", out)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.n != other.n:
            return False
        return self.coeffs == self._same(other).coeffs

    __hash__ = None

    def items(self):
        """Terms sorted by partition in reverse lexicographic order."""
        return sorted(self.coeffs.items(), key=lambda kv: kv[0], reverse=True)

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "n": self.n,
            "coeffs": {partition_key(lam): coeff_str(c) for lam, c in self.items()},
        }

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{self.basis}{partition_key(lam)}" for lam, c in self.items())

    def __repr__(self) -> str:
        return f"SymFunc({self})"


def convert_basis(f: SymFunc, target: str) -> SymFunc:
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if f.basis == target:
        return f
    coeffs = f.coeffs
    if f.basis != "p":
        coeffs = _apply(coeffs, to_p_matrix(f.basis, f.n))
    if target != "p":
        coeffs = _apply(coeffs, from_p_matrix(target, f.n))
    return SymFunc(f.n, target, coeffs)


class Alphabet:
    """The formal alphabet ``c(q, t) * X``."""

    __slots__ = ("scalar",)

    def __init__(self, scalar=1):
        self.scalar = _to_ratfunc(scalar)

    def __mul__(self, other: "Alphabet") -> "Alphabet":
        return Alphabet(self.scalar * other.scalar)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.scalar == other.scalar

    def __hash__(self) -> int:
        return hash(self.scalar)

    def __repr__(self) -> str:
        return f"Alphabet(({self.scalar})*X)"


def alphabet_times(c) -> Alphabet:
    return Alphabet(c)


def plethystic_eval(f: SymFunc, A: Alphabet) -> SymFunc:
    """``f[c X]`` via ``p_k -> c(q^k, t^k) p_k``; returned in the s basis."""
    p = f.to("p")
    powers: dict[int, RatFunc] = {}
    out = {}
    for tau, c in p.coeffs.items():
        factor = RatFunc(1)
        for k in tau:
            if k not in powers:
                powers[k] = A.scalar.power_substitute(k)
            factor = factor * powers[k]
        out[tau] = c * factor
    return SymFunc(f.n, "p", out).to("s")


def principal_value_at_one(f: SymFunc) -> RatFunc:
    """``f[1]``: every power sum takes the value 1."""
    total = RatFunc(0)
    for c in f.to("p").coeffs.values():
        total = total + c
    return total


def all_products_of_single_parts(kind: str, lam) -> SymFunc:
    """``b_lam`` for a multiplicative basis, built as a product of ``b_k``."""
    lam = as_partition(lam)
    out = None
    for k in lam:
        term = SymFunc.basis_element(kind, (k,))
        out = term if out is None else out * term
    return out if out is not None else SymFunc(0, kind, {})


__all__ = [
    "Alphabet",
    "BASES",
    "SymFunc",
    "alphabet_times",
    "coeff_str",
    "convert_basis",
    "parse_partition_key",
    "partition_key",
    "plethystic_eval",
    "principal_value_at_one",
    "to_p_matrix",
    "from_p_matrix",
]
