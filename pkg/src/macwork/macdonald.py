"""Transformed Macdonald polynomials from their triangularity characterization.

``H~_mu`` is the unique degree-n symmetric function f with

1. ``f[X(1-q)]`` in the span of ``s_lam`` for ``lam >= mu``,
2. ``f[X(1-t)]`` in the span of ``s_lam`` for ``lam >= mu'``,
3. ``f[1] = 1``.

Writing ``f = sum c_lam s_lam``, the coefficient of ``s_nu`` in ``f[X(1-q)]``
is ``sum_lam A_q[nu, lam] c_lam`` with
``A_q[nu, lam] = sum_tau chi^lam(tau) chi^nu(tau) / z_tau * prod_i (1 - q^tau_i)``.
Conditions 1 and 2 are the vanishing of these functionals for ``nu`` not
dominating ``mu`` (resp. ``mu'``).  We first solve the q-conditions alone
(coefficients in Q[q]) and then impose the t-conditions on that solution
space, which keeps the second system small.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactcore.linalg import kernel_basis
from .exactcore.ratfunc import RatFunc
from .partcomb import (
    Partition,
    arm_leg,
    as_partition,
    character_value,
    conjugate,
    dominates,
    enumerate_partitions,
    n_stat,
    syt_count,
    z_tau,
)
from .symfunc import SymFunc, coeff_str, partition_key


class CharacterizationError(RuntimeError):
    """The triangularity conditions did not single out one function."""


@lru_cache(maxsize=None)
def _plethysm_matrix(n: int, var: str) -> dict:
    """``A[nu][lam]``: coefficient of s_nu in ``s_lam[X(1 - v)]``."""
    v = RatFunc.q() if var == "q" else RatFunc.t()
    parts = enumerate_partitions(n)
    factor = {}
    for tau in parts:
        f = RatFunc(1)
        for k in tau:
            f = f * (1 - v**k)
        factor[tau] = f
    out = {}
    for nu in parts:
        row = {}
        for lam in parts:
            acc = RatFunc(0)
            for tau in parts:
                c = Fraction(character_value(lam, tau) * character_value(nu, tau), z_tau(tau))
                if c:
                    acc = acc + factor[tau] * c
            row[lam] = acc
        out[nu] = row
    return out


@dataclass(frozen=True)
class HtildeResult:
    mu: Partition
    expansion: SymFunc
    defects: tuple = field(default=())

    def coeff(self, lam) -> RatFunc:
        return self.expansion.coeff(lam)

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "coeffs": {partition_key(lam): coeff_str(c) for lam, c in self.expansion.items()},
        }


@lru_cache(maxsize=None)
def htilde(mu) -> HtildeResult:
    mu = as_partition(mu)
    n = mu.size
    if n < 1:
        raise ValueError("mu must be a partition of a positive integer")
    parts = enumerate_partitions(n)
    mu_c = conjugate(mu)

    Aq = _plethysm_matrix(n, "q")
    rows_q = [[Aq[nu][lam] for lam in parts] for nu in parts if not dominates(nu, mu)]
    V = kernel_basis(rows_q, len(parts))

    At = _plethysm_matrix(n, "t")
    rows_t = []
    for nu in parts:
        if dominates(nu, mu_c):
            continue
        row = []
        for v in V:
            acc = RatFunc(0)
            for lam, c in zip(parts, v):
                if c:
                    acc = acc + At[nu][lam] * c
            row.append(acc)
        rows_t.append(row)
    W = kernel_basis(rows_t, len(V))
    if len(W) != 1:
        raise CharacterizationError(f"characterization failure for {mu}: solution space of dimension {len(W)}")
    (w,) = W
    coeffs = [RatFunc(0)] * len(parts)
    for wj, v in zip(w, V):
        if wj:
            coeffs = [c + wj * vl for c, vl in zip(coeffs, v)]
    # f[1] picks out the coefficient of s_(n)
    norm = coeffs[0]
    if norm.is_zero():
        raise CharacterizationError(f"characterization failure for {mu}: value at one is zero")
    expansion = {lam: c / norm for lam, c in zip(parts, coeffs)}
    defects = tuple(
        (lam, str(c)) for lam, c in expansion.items() if not c.is_polynomial()
    )
    return HtildeResult(mu, SymFunc(n, "s", expansion), defects)


@dataclass(frozen=True)
class KostkaTable:
    n: int
    partitions: tuple
    entries: dict  # (lam, mu) -> RatFunc

    def __getitem__(self, key) -> RatFunc:
        lam, mu = key
        return self.entries[(as_partition(lam), as_partition(mu))]

    def column(self, mu) -> list[RatFunc]:
        mu = as_partition(mu)
        return [self.entries[(lam, mu)] for lam in self.partitions]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "partitions": [list(p) for p in self.partitions],
            "table": {
                partition_key(mu): {partition_key(lam): coeff_str(self.entries[(lam, mu)]) for lam in self.partitions}
                for mu in self.partitions
            },
        }


def ktilde_table(n: int) -> KostkaTable:
    parts = tuple(enumerate_partitions(n))
    entries = {}
    for mu in parts:
        h = htilde(mu)
        for lam in parts:
            entries[(lam, mu)] = h.coeff(lam)
    return KostkaTable(n, parts, entries)


def ktilde_to_k(mu, table: KostkaTable | None = None) -> dict:
    """``K_{lam,mu}(q,t) = t^{n(mu)} K~_{lam,mu}(q, 1/t)``, keyed by lam.

    Raises ValueError if a result is not a polynomial.
    """
    mu = as_partition(mu)
    if table is None:
        table = ktilde_table(mu.size)
    shift = RatFunc.monomial(0, n_stat(mu))
    out = {}
    for lam in table.partitions:
        k = table[(lam, mu)].invert_t() * shift
        if not k.is_polynomial():
            raise ValueError(f"K[{lam},{mu}] = {k} is not a polynomial")
        out[lam] = k
    return out


@dataclass
class PositivityReport:
    n: int
    checked: int = 0
    violations: list = field(default_factory=list)  # (lam, mu, reason)
    specialization_mismatches: list = field(default_factory=list)

    @property
    def all_positive(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "checked": self.checked,
            "all_positive": self.all_positive,
            "violations": [
                {"lam": list(lam), "mu": list(mu), "reason": reason} for lam, mu, reason in self.violations
            ],
            "syt_mismatches": [
                {"lam": list(lam), "mu": list(mu)} for lam, mu in self.specialization_mismatches
            ],
        }


def nonnegative_integer_violation(c: RatFunc) -> str | None:
    """Why ``c`` is not in N[q, t], or None if it is."""
    if not c.is_polynomial():
        return f"not a polynomial: {c}"
    for (i, j), v in sorted(c.laurent_dict().items()) if not c.is_zero() else ():
        if v.denominator != 1 or v < 0:
            return f"coefficient {v} of q^{i}*t^{j}"
    return None


def positivity_report(n: int) -> PositivityReport:
    table = ktilde_table(n)
    rep = PositivityReport(n)
    for mu in table.partitions:
        for lam in table.partitions:
            c = table[(lam, mu)]
            rep.checked += 1
            why = nonnegative_integer_violation(c)
            if why is not None:
                rep.violations.append((lam, mu, why))
                continue
            if c.evaluate(q=1, t=1) != RatFunc(syt_count(lam)):
                rep.specialization_mismatches.append((lam, mu))
    return rep


def q0_specialization(mu) -> SymFunc:
    """``H~_mu(x; 0, t)``."""
    h = htilde(mu)
    return SymFunc(h.expansion.n, "s", {lam: c.evaluate(q=0) for lam, c in h.expansion.coeffs.items()})


def local_hilbert_denominator(mu) -> RatFunc:
    """``prod_x (1 - q^{-a} t^{1+l}) (1 - q^{1+a} t^{-l})`` over cells x of mu."""
    mu = as_partition(mu)
    out = RatFunc(1)
    for cell in mu.cells():
        a, l = arm_leg(mu, cell)
        out = out * (1 - RatFunc.monomial(-a, 1 + l)) * (1 - RatFunc.monomial(1 + a, -l))
    return out
