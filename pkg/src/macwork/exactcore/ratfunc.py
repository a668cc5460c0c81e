"""The coefficient field Q(q, t).

A value is stored as ``q^a t^b * num / den`` where ``num`` and ``den`` are
coprime polynomials in Q[q, t], neither divisible by q or t, and ``den``
has leading coefficient 1 in graded-lex order with q > t.  The pair
``(a, b)`` is the Laurent shift.  The representation is canonical, so
equality is structural.

gcd and exact division are delegated to FLINT multivariate polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import flint

from .mpoly import MPoly, format_terms

_CTX = flint.fmpq_mpoly_ctx.get(("q", "t"), "deglex")
_ZCTX = flint.fmpz_mpoly_ctx.get(("q", "t"), "deglex")
_Q_VAR = ("q", 0)
_T_VAR = ("t", 0)


def _fq(c: Fraction):
    return flint.fmpq(c.numerator, c.denominator)


def _pyfrac(c) -> Fraction:
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


def _poly_from_dict(d: dict):
    return _CTX.from_dict({k: _fq(Fraction(v)) for k, v in d.items()}) if d else _CTX.from_dict({})


def _strip_monomial(d: dict) -> tuple[dict, int, int]:
    """Divide a Laurent dict by its monomial content."""
    mq = min(k[0] for k in d)
    mt = min(k[1] for k in d)
    if mq == 0 and mt == 0:
        return d, 0, 0
    return {(i - mq, j - mt): c for (i, j), c in d.items()}, mq, mt


def _leading(p):
    # the context is deglex with q > t
    return p.leading_coefficient() if not p.is_zero() else None


class RatFunc:
    """Immutable element of Q(q, t)."""

    __slots__ = ("_num", "_den", "_sq", "_st", "_hash", "__dict__")

    def __init__(self, value=0):
        if isinstance(value, RatFunc):
            self._num, self._den, self._sq, self._st = value._num, value._den, value._sq, value._st
        elif isinstance(value, MPoly):
            r = ratfunc_reduce(value, MPoly.const(1))
            self._num, self._den, self._sq, self._st = r._num, r._den, r._sq, r._st
        else:
            c = Fraction(value)
            self._num = _CTX.constant(_fq(c))
            self._den = _CTX.constant(1)
            self._sq = self._st = 0
        self._hash = None

    @classmethod
    def _make(cls, num, den, sq: int, st: int) -> "RatFunc":
        """Normalise ``q^sq t^st num/den`` (FLINT polys) to canonical form."""
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        r = cls.__new__(cls)
        r._hash = None
        if num.is_zero():
            r._num, r._den, r._sq, r._st = _CTX.from_dict({}), _CTX.constant(1), 0, 0
            return r
        nd, nq, nt = _strip_monomial(num.to_dict())
        dd, dq, dt = _strip_monomial(den.to_dict())
        if nq or nt:
            num = _CTX.from_dict(nd)
        if dq or dt:
            den = _CTX.from_dict(dd)
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
        lc = _leading(den)
        if lc != 1:
            num = num / lc
            den = den / lc
        r._num, r._den = num, den
        r._sq, r._st = sq + nq - dq, st + nt - dt
        return r

    @classmethod
    def from_laurent(cls, num: dict, den: dict | None = None) -> "RatFunc":
        """Build from ``{(i, j): coeff}`` dicts, negative exponents allowed."""
        if den is None:
            den = {(0, 0): 1}
        num = {k: Fraction(v) for k, v in num.items() if v}
        den = {k: Fraction(v) for k, v in den.items() if v}
        if not den:
            raise ZeroDivisionError("division by zero")
        if not num:
            return cls(0)
        n2, nq, nt = _strip_monomial(num)
        d2, dq, dt = _strip_monomial(den)
        return cls._make(_poly_from_dict(n2), _poly_from_dict(d2), nq - dq, nt - dt)

    @classmethod
    def q(cls) -> "RatFunc":
        return cls.from_laurent({(1, 0): 1})

    @classmethod
    def t(cls) -> "RatFunc":
        return cls.from_laurent({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "RatFunc":
        return cls.from_laurent({(i, j): c})

    # -- views ----------------------------------------------------------
    @cached_property
    def numerator(self) -> MPoly:
        """Numerator as a Laurent MPoly (the shift folded in)."""
        return MPoly({_qt_mono(i + self._sq, j + self._st): _pyfrac(c)
                      for (i, j), c in self._num.to_dict().items()})

    @cached_property
    def denominator(self) -> MPoly:
        return MPoly({_qt_mono(i, j): _pyfrac(c) for (i, j), c in self._den.to_dict().items()})

    def laurent_dict(self) -> dict:
        """``{(i, j): Fraction}`` of a Laurent polynomial; error otherwise."""
        if not self.is_laurent_polynomial():
            raise ValueError(f"not a Laurent polynomial: {self}")
        return {(i + self._sq, j + self._st): _pyfrac(c) for (i, j), c in self._num.to_dict().items()}

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def __bool__(self) -> bool:
        return not self._num.is_zero()

    def is_laurent_polynomial(self) -> bool:
        return self._den.is_one()

    def is_polynomial(self) -> bool:
        return self._den.is_one() and (self.is_zero() or (self._sq >= 0 and self._st >= 0))

    def is_constant(self) -> bool:
        return self._den.is_one() and self._num.is_constant() and (self._sq, self._st) == (0, 0) \
            or self.is_zero()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return Fraction(0) if self.is_zero() else _pyfrac(self._num.to_dict()[(0, 0)])

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        sq, st = min(self._sq, other._sq), min(self._st, other._st)
        a = self._num * _shift_poly(self._sq - sq, self._st - st)
        b = other._num * _shift_poly(other._sq - sq, other._st - st)
        if self._den == other._den:
            return RatFunc._make(a + b, self._den, sq, st)
        return RatFunc._make(a * other._den + b * self._den, self._den * other._den, sq, st)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        r = RatFunc.__new__(RatFunc)
        r._num, r._den, r._sq, r._st, r._hash = -self._num, self._den, self._sq, self._st, None
        return r

    def __sub__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc(0)
            r = RatFunc.__new__(RatFunc)
            r._num, r._den, r._sq, r._st, r._hash = self._num * _fq(Fraction(other)), self._den, \
                self._sq, self._st, None
            return r
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatFunc(0)
        g1 = self._num.gcd(other._den)
        g2 = other._num.gcd(self._den)
        num = (self._num / g1) * (other._num / g2)
        den = (self._den / g2) * (other._den / g1)
        return RatFunc._make(num, den, self._sq + other._sq, self._st + other._st)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        return RatFunc._make(self._den, self._num, -self._sq, -self._st)

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._make(self._num ** k, self._den ** k, self._sq * k, self._st * k)

    def __eq__(self, other) -> bool:
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return (self._sq, self._st) == (other._sq, other._st) and self._num == other._num \
            and self._den == other._den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((str(self._num), str(self._den), self._sq, self._st))
        return self._hash

    # -- substitutions --------------------------------------------------
    def _map_exponents(self, fn) -> "RatFunc":
        num = {fn(i + self._sq, j + self._st): _pyfrac(c) for (i, j), c in self._num.to_dict().items()}
        den = {fn(i, j): _pyfrac(c) for (i, j), c in self._den.to_dict().items()}
        return RatFunc.from_laurent(num, den)

    def power_substitute(self, k: int) -> "RatFunc":
        """q -> q^k, t -> t^k (the plethystic action on coefficients)."""
        if k == 1:
            return self
        return self._map_exponents(lambda i, j: (i * k, j * k))

    def swap_qt(self) -> "RatFunc":
        return self._map_exponents(lambda i, j: (j, i))

    def invert_t(self) -> "RatFunc":
        """t -> 1/t."""
        return self._map_exponents(lambda i, j: (i, -j))

    def evaluate(self, q=None, t=None) -> "RatFunc":
        """Substitute numbers (or RatFuncs) for q and/or t."""
        qv = RatFunc.q() if q is None else _as_ratfunc(q)
        tv = RatFunc.t() if t is None else _as_ratfunc(t)

        def ev(d: dict, sq: int, st: int) -> RatFunc:
            out = RatFunc(0)
            for (i, j), c in d.items():
                out = out + _pow(qv, i + sq) * _pow(tv, j + st) * _pyfrac(c)
            return out

        den = ev(self._den.to_dict(), 0, 0)
        if den.is_zero():
            raise ZeroDivisionError("division by zero after substitution")
        return ev(self._num.to_dict(), self._sq, self._st) / den

    def degree_in(self, which: str) -> int:
        """Degree in q or t of a Laurent polynomial."""
        idx = 0 if which == "q" else 1
        return max(k[idx] for k in self.laurent_dict())

    # -- text -----------------------------------------------------------
    def __str__(self) -> str:
        if self._den.is_one():
            return str(self.numerator)
        num = format_terms(self.numerator.sorted_terms())
        den = format_terms(self.denominator.sorted_terms())
        return f"({num})/({den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _pow(r: RatFunc, e: int) -> RatFunc:
    if e == 0:
        return RatFunc(1)
    if e < 0 and r.is_zero():
        raise ZeroDivisionError("division by zero after substitution")
    return r ** e


def _qt_mono(i: int, j: int):
    out = []
    if i:
        out.append((_Q_VAR, i))
    if j:
        out.append((_T_VAR, j))
    return tuple(out)


def _shift_poly(i: int, j: int):
    return _CTX.from_dict({(i, j): 1})


def _as_ratfunc(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, (int, Fraction)):
        return RatFunc(v)
    if isinstance(v, MPoly):
        return RatFunc(v)
    return NotImplemented


def _qt_dict(p: MPoly) -> dict:
    out = {}
    for m, c in p.items():
        i = j = 0
        for (kind, _), e in m:
            if kind == "q":
                i = e
            elif kind == "t":
                j = e
            else:
                raise ValueError(f"variable {kind} not allowed in a q,t rational function")
        out[(i, j)] = c
    return out


def ratfunc_reduce(num: MPoly, den: MPoly) -> RatFunc:
    """Canonical reduced form of ``num/den`` for Laurent polynomials in q, t."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero")
    return RatFunc.from_laurent(_qt_dict(num), _qt_dict(den))


def to_fmpz_mpoly(r: RatFunc):
    """Integer polynomial ``c * r`` with content 1 and the positive-unit
    normalisation; only valid for polynomial values."""
    if not r.is_polynomial():
        raise ValueError("not a polynomial")
    return _laurent_to_fmpz(r.laurent_dict())


def _laurent_to_fmpz(d: dict):
    from math import lcm
    den = lcm(*(c.denominator for c in d.values())) if d else 1
    return _ZCTX.from_dict({k: int(c * den) for k, c in d.items()})


def clear_row_denominators(row: list) -> list:
    """Scale a row of RatFuncs by a common denominator; returns integer
    polynomials (FLINT) in q, t."""
    from math import lcm
    nonzero = [r for r in row if not r.is_zero()]
    if not nonzero:
        return [_ZCTX.from_dict({}) for _ in row]
    sq = min(r._sq for r in nonzero)
    st = min(r._st for r in nonzero)
    common = _CTX.constant(1)
    for r in nonzero:
        common = common * (r._den / common.gcd(r._den))
    scaled = []
    for r in row:
        if r.is_zero():
            scaled.append(None)
            continue
        p = r._num * (common / r._den) * _shift_poly(r._sq - sq, r._st - st)
        scaled.append(p.to_dict())
    cden = lcm(*(_pyfrac(c).denominator for d in scaled if d for c in d.values()))
    return [_ZCTX.from_dict({}) if d is None
            else _ZCTX.from_dict({k: int(_pyfrac(c) * cden) for k, c in d.items()}) for d in scaled]


def from_fmpz_mpoly(p) -> RatFunc:
    return RatFunc.from_laurent({k: int(c) for k, c in p.to_dict().items()})


ZERO = RatFunc(0)
ONE = RatFunc(1)
