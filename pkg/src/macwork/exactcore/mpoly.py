"""Sparse multivariate polynomials with exact rational coefficients.

Variables are tagged ``(kind, index)`` pairs.  The kinds ``x, y, a, b``
are the point coordinates; ``q`` and ``t`` are the Macdonald parameters
and always carry index 0.  Only ``q`` and ``t`` may appear with negative
exponents.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping

KINDS = ("x", "y", "a", "b", "q", "t")
_KIND_RANK = {k: i for i, k in enumerate(KINDS)}
X_KINDS = frozenset("xa")
Y_KINDS = frozenset("yb")
LAURENT_KINDS = frozenset("qt")

Var = tuple  # (kind, index)
Monomial = tuple  # sorted tuple of (Var, exponent), exponents nonzero


def var_key(v: Var) -> tuple[int, int]:
    return (_KIND_RANK[v[0]], v[1])


def var_name(v: Var) -> str:
    kind, idx = v
    return kind if kind in LAURENT_KINDS else f"{kind}{idx}"


def mono(*pairs) -> Monomial:
    """Build a monomial from ``(var, exp)`` pairs, merging repeats."""
    acc: dict = {}
    for v, e in pairs:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda p: var_key(p[0])))


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for v, e in m2:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda p: var_key(p[0])))


def mono_bidegree(m: Monomial) -> tuple[int, int]:
    dx = dy = 0
    for (kind, _), e in m:
        if kind in X_KINDS:
            dx += e
        elif kind in Y_KINDS:
            dy += e
    return dx, dy


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_factorial(m: Monomial) -> int:
    out = 1
    for _, e in m:
        for k in range(2, e + 1):
            out *= k
    return out


def mono_str(m: Monomial) -> str:
    parts = []
    for v, e in m:
        parts.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
    return "*".join(parts)


def _order_key(m: Monomial):
    # graded-lex, larger first: total degree, then exponents in variable order
    return (mono_degree(m), tuple((-var_key(v)[0], -var_key(v)[1], e) for v, e in m))


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class MPoly:
    """Immutable sparse polynomial ``{monomial: Fraction}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _coerce(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, kind: str, index: int = 0) -> "MPoly":
        if kind not in _KIND_RANK:
            raise ValueError(f"unknown variable kind {kind!r}")
        if kind in LAURENT_KINDS:
            index = 0
        return cls._raw({(((kind, index), 1),): Fraction(1)})

    @classmethod
    def const(cls, c) -> "MPoly":
        c = _coerce(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> "MPoly":
        return cls({m: coeff})

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def bidegrees(self) -> set:
        return {mono_bidegree(m) for m in self._terms}

    def bidegree(self) -> tuple[int, int]:
        """Bidegree of a nonzero bihomogeneous polynomial."""
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError("polynomial is zero or not bihomogeneous")
        return next(iter(degs))

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) == 1

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=-1)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> "MPoly":
        other = _as_mpoly(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "MPoly":
        other = _as_mpoly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly._raw({})
            return MPoly._raw({m: c * other for m, c in self._terms.items()})
        other = _as_mpoly(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            if len(self._terms) == 1:
                (m, c), = self._terms.items()
                if all(v[0] in LAURENT_KINDS for v, _ in m):
                    return MPoly._raw({tuple((v, -e) for v, e in m): 1 / c})
            raise ValueError("negative powers only for Laurent monomials in q, t")
        out = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = _as_mpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitutions -------------------------------------
    def diff(self, v: Var) -> "MPoly":
        out: dict = {}
        for m, c in self._terms.items():
            for i, (w, e) in enumerate(m):
                if w == v:
                    if e == 1:
                        nm = m[:i] + m[i + 1:]
                    else:
                        nm = m[:i] + ((w, e - 1),) + m[i + 1:]
                    out[nm] = out.get(nm, 0) + c * e
                    break
        return MPoly._raw({m: c for m, c in out.items() if c})

    def rename(self, mapping: Callable[[Var], Var] | Mapping[Var, Var]) -> "MPoly":
        """Apply a variable renaming (e.g. a permutation of indices)."""
        f = mapping if callable(mapping) else (lambda v: mapping.get(v, v))
        out: dict = {}
        for m, c in self._terms.items():
            nm = mono(*((f(v), e) for v, e in m))
            s = out.get(nm, 0) + c
            if s:
                out[nm] = s
            else:
                out.pop(nm, None)
        return MPoly._raw(out)

    def substitute(self, values: Mapping[Var, "MPoly"]) -> "MPoly":
        """Replace variables by polynomials; untouched variables stay."""
        cache: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in cache:
                cache[key] = _as_mpoly(values[v]) ** e
            return cache[key]

        out = MPoly._raw({})
        for m, c in self._terms.items():
            kept = []
            factor = MPoly.const(c)
            for v, e in m:
                if v in values:
                    factor = factor * power(v, e)
                    if not factor:
                        break
                else:
                    kept.append((v, e))
            if factor:
                out = out + factor * MPoly._raw({tuple(kept): Fraction(1)})
        return out

    def homogeneous_part(self, bideg: tuple[int, int]) -> "MPoly":
        return MPoly._raw({m: c for m, c in self._terms.items() if mono_bidegree(m) == bideg})

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda mc: _order_key(mc[0]), reverse=True)

    def __str__(self) -> str:
        return format_terms(self.sorted_terms())

    def __repr__(self) -> str:
        return f"MPoly({self})"


def _as_mpoly(x):
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MPoly.const(x)
    return NotImplemented


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(terms: Iterable[tuple[Monomial, Fraction]]) -> str:
    """Canonical text form, e.g. ``q^2*t - 3/2*q``."""
    out = []
    for m, c in terms:
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = format_coeff(a)
        elif a == 1:
            body = mono_str(m)
        else:
            body = f"{format_coeff(a)}*{mono_str(m)}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


def x(i: int) -> MPoly:
    return MPoly.var("x", i)


def y(i: int) -> MPoly:
    return MPoly.var("y", i)


def a(i: int) -> MPoly:
    return MPoly.var("a", i)


def b(i: int) -> MPoly:
    return MPoly.var("b", i)


Q = MPoly.var("q")
T = MPoly.var("t")
