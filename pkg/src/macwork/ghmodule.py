"""The modules D_mu spanned by derivatives of Delta_mu, and their bigraded Frobenius series.

Polynomials in ``x_1..x_n, y_1..y_n`` are handled internally as dicts from
exponent tuples ``(x_1, .., x_n, y_1, .., y_n)`` to integers/Fractions; the
public entry points accept and return MPoly where that is the natural type.
A bihomogeneous subspace is stored one bidegree at a time as a RowSpace
over the monomials of that bidegree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import factorial

from .exactcore.mpoly import MPoly, mono
from .exactcore.ratfunc import RatFunc
from .exactcore.subspace import Indexer, RowSpace
from .partcomb import (
    Partition,
    as_partition,
    character_value,
    conjugate,
    cycle_type,
    enumerate_partitions,
    n_stat,
    permutation_of_type,
    z_tau,
)
from .symfunc import SymFunc, coeff_str, partition_key

Exps = tuple  # exponent vector of length 2n
Poly = dict  # Exps -> coefficient


# -- conversions ---------------------------------------------------------

def to_mpoly(p: Poly, n: int) -> MPoly:
    terms = {}
    for e, c in p.items():
        pairs = [(("x", i + 1), e[i]) for i in range(n)] + [(("y", i + 1), e[n + i]) for i in range(n)]
        terms[mono(*pairs)] = c
    return MPoly(terms)


def from_mpoly(f: MPoly, n: int) -> Poly:
    out = {}
    for m, c in f.items():
        e = [0] * (2 * n)
        for (kind, idx), k in m:
            if kind == "x" and 1 <= idx <= n:
                e[idx - 1] = k
            elif kind == "y" and 1 <= idx <= n:
                e[n + idx - 1] = k
            else:
                raise ValueError(f"variable {kind}{idx} outside x_1..x_{n}, y_1..y_{n}")
        out[tuple(e)] = c
    return out


def _bidegree(e: Exps, n: int) -> tuple[int, int]:
    return sum(e[:n]), sum(e[n:])


def _act(w: tuple[int, ...], e: Exps, n: int) -> Exps:
    """Exponent vector of ``w . x^e`` where ``w x_i = x_{w(i)}``."""
    out = [0] * (2 * n)
    for i in range(n):
        out[w[i]] = e[i]
        out[n + w[i]] = e[n + i]
    return tuple(out)


def _sign(w: tuple[int, ...]) -> int:
    n = len(w)
    return -1 if (n - len(cycle_type(w))) % 2 else 1


def monomials(n_vars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors in ``n_vars`` variables of the given total degree."""
    out = []
    for combo in combinations_with_replacement(range(n_vars), degree):
        e = [0] * n_vars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def bidegree_monomials(n: int, r: int, s: int) -> list[Exps]:
    return [ex + ey for ex in monomials(n, r) for ey in monomials(n, s)]


# -- alternants ----------------------------------------------------------

def alternate(g: MPoly, n: int) -> MPoly:
    """``sum_w sign(w) w g`` over the symmetric group on the n points."""
    p = from_mpoly(g, n)
    out: dict = {}
    for w in permutations(range(n)):
        sg = _sign(w)
        for e, c in p.items():
            we = _act(w, e, n)
            out[we] = out.get(we, 0) + sg * c
    return to_mpoly({e: c for e, c in out.items() if c}, n)


@dataclass(frozen=True)
class DeltaPoly:
    cells: tuple
    value: MPoly


def _delta_dict(cells: tuple, n: int) -> Poly:
    out = {}
    for sigma in permutations(range(n)):
        e = [0] * (2 * n)
        for i in range(n):
            p, q = cells[sigma[i]]
            e[i] = p
            e[n + i] = q
        out[tuple(e)] = _sign(sigma)
    return out


def delta_D(cells) -> DeltaPoly:
    """``det(x_i^{p_j} y_i^{q_j})`` with the cells sorted lexicographically."""
    cells = tuple(sorted(tuple(c) for c in cells))
    if len(set(cells)) != len(cells):
        raise ValueError("cells must be distinct")
    n = len(cells)
    return DeltaPoly(cells, to_mpoly(_delta_dict(cells, n), n))


def diagram(mu) -> tuple:
    return tuple(as_partition(mu).cells())


def delta_mu(mu) -> DeltaPoly:
    return delta_D(diagram(mu))


# -- bigraded spaces -----------------------------------------------------

@dataclass
class Slice:
    index: Indexer
    space: RowSpace

    def polys(self) -> list[Poly]:
        """Basis polynomials, each an integer multiple of an RREF row."""
        keys = self.index.keys
        return [{keys[j]: c for j, c in num.items()} for num in self.space.nums]

    def vector(self, p: Poly) -> dict:
        return {self.index[e]: c for e, c in p.items()}

    def contains(self, p: Poly) -> bool:
        if any(e not in self.index for e in p):
            return False
        return self.space.contains(self.vector(p))


def _make_slice(polys: list[Poly], keys: list | None = None) -> Slice:
    idx = Indexer(keys or ())
    rows = []
    for p in polys:
        rows.append({idx.add(e): c for e, c in p.items() if c})
    return Slice(idx, RowSpace(rows, len(idx)))


@dataclass
class BigradedSpace:
    n: int
    slices: dict = field(default_factory=dict)  # (r, s) -> Slice

    def dims(self) -> dict:
        return {k: v.space.dim for k, v in sorted(self.slices.items()) if v.space.dim}

    @property
    def total(self) -> int:
        return sum(self.dims().values())

    def basis(self, bideg) -> list[MPoly]:
        sl = self.slices.get(tuple(bideg))
        return [to_mpoly(p, self.n) for p in sl.polys()] if sl else []

    def contains(self, f: MPoly) -> bool:
        p = from_mpoly(f, self.n)
        if not p:
            return True
        by_deg: dict = {}
        for e, c in p.items():
            by_deg.setdefault(_bidegree(e, self.n), {})[e] = c
        for d, part in by_deg.items():
            sl = self.slices.get(d)
            if sl is None or not sl.contains(part):
                return False
        return True


def dims_json(mu, dims: dict) -> dict:
    return {
        "mu": list(mu),
        "dims": {f"({r},{s})": d for (r, s), d in sorted(dims.items())},
        "total": sum(dims.values()),
    }


def _diff(p: Poly, k: int) -> Poly:
    out = {}
    for e, c in p.items():
        if e[k]:
            ne = e[:k] + (e[k] - 1,) + e[k + 1:]
            out[ne] = out.get(ne, 0) + c * e[k]
    return {e: c for e, c in out.items() if c}


def derivative_closure(p: Poly, n: int) -> BigradedSpace:
    """Span of all iterated partial derivatives of a bihomogeneous ``p``."""
    top = _bidegree(next(iter(p)), n)
    space = BigradedSpace(n)
    pending: dict = {top: [p]}
    for total in range(sum(top), -1, -1):
        for r in range(total, -1, -1):
            s = total - r
            gens = pending.pop((r, s), None)
            if not gens:
                continue
            sl = _make_slice(gens)
            if sl.space.dim == 0:
                continue
            space.slices[(r, s)] = sl
            for b in sl.polys():
                for k in range(2 * n):
                    d = _diff(b, k)
                    if d:
                        target = (r - 1, s) if k < n else (r, s - 1)
                        pending.setdefault(target, []).append(d)
    return space


def dmu_basis(mu) -> BigradedSpace:
    mu = as_partition(mu)
    n = mu.size
    return derivative_closure(_delta_dict(diagram(mu), n), n)


# -- characters and Frobenius series -------------------------------------

def _image_rows(sl: Slice, w: tuple[int, ...], n: int) -> list[Poly]:
    keys = sl.index.keys
    return [{_act(w, keys[j], n): c for j, c in num.items()} for num in sl.space.nums]


def check_stable(sl: Slice, n: int) -> None:
    """Raise unless the slice is stable under the symmetric group.

    Stability under a transposition and an n-cycle (which generate the
    group) is checked with one exact batch membership test each.
    """
    if n < 2:
        return
    gens = [(1, 0) + tuple(range(2, n)), tuple(range(1, n)) + (0,)]
    for w in gens:
        image = _image_rows(sl, w, n)
        if any(e not in sl.index for p in image for e in p):
            raise RuntimeError("slice is not stable under the symmetric group")
        if not sl.space.contains_all([sl.vector(p) for p in image]):
            raise RuntimeError("slice is not stable under the symmetric group")


def slice_trace(sl: Slice, w: tuple[int, ...], n: int) -> Fraction:
    """Trace of w on a stable slice, read off at the pivot columns."""
    tr = Fraction(0)
    keys = sl.index.keys
    for i, p in enumerate(_image_rows(sl, w, n)):
        tr += Fraction(p.get(keys[sl.space.pivots[i]], 0), sl.space.dens[i])
    return tr


def slice_character(sl: Slice, n: int) -> dict:
    check_stable(sl, n)
    return {tau: slice_trace(sl, permutation_of_type(tau), n) for tau in enumerate_partitions(n)}


def frobenius_of_character(chi: dict, n: int) -> SymFunc:
    """Schur expansion of ``sum_tau chi(tau) p_tau / z_tau``."""
    out = {}
    for lam in enumerate_partitions(n):
        m = sum(Fraction(character_value(lam, tau)) * c / z_tau(tau) for tau, c in chi.items())
        if m:
            out[lam] = m
    return SymFunc(n, "s", out)


@dataclass
class FrobeniusSeries:
    n: int
    slices: dict  # (r, s) -> SymFunc in s basis

    def flatten(self) -> SymFunc:
        """``sum_{r,s} t^r q^s F_{r,s}``."""
        out: dict = {}
        for (r, s), f in self.slices.items():
            w = RatFunc.monomial(s, r)
            for lam, c in f.coeffs.items():
                out[lam] = out.get(lam, RatFunc(0)) + c * w
        return SymFunc(self.n, "s", out)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "slices": {f"({r},{s})": f.to_json() for (r, s), f in sorted(self.slices.items())},
            "series": self.flatten().to_json(),
        }


def frobenius_series(space: BigradedSpace) -> FrobeniusSeries:
    n = space.n
    slices = {}
    for bideg, sl in sorted(space.slices.items()):
        if sl.space.dim:
            slices[bideg] = frobenius_of_character(slice_character(sl, n), n)
    return FrobeniusSeries(n, slices)


def bigraded_frobenius(mu) -> FrobeniusSeries:
    return frobenius_series(dmu_basis(mu))


@dataclass
class FHReport:
    mu: Partition
    equal: bool
    differences: dict  # lam -> (frobenius side, htilde side) as strings

    def to_json(self) -> dict:
        return {
            "check": "f_equals_h",
            "mu": list(self.mu),
            "pass": self.equal,
            "first_discrepancy": (
                None
                if self.equal
                else {k: list(v) for k, v in list(self.differences.items())[:1]}
            ),
        }


def verify_f_equals_h(mu, frobenius: FrobeniusSeries | None = None) -> FHReport:
    from .macdonald import htilde

    mu = as_partition(mu)
    F = (frobenius or bigraded_frobenius(mu)).flatten()
    H = htilde(mu).expansion
    diffs = {}
    for lam in enumerate_partitions(mu.size):
        a, b = F.coeff(lam), H.coeff(lam)
        if a != b:
            diffs[partition_key(lam)] = (coeff_str(a), coeff_str(b))
    return FHReport(mu, not diffs, diffs)


def y_degree_zero_part(series: FrobeniusSeries) -> SymFunc:
    return FrobeniusSeries(series.n, {k: v for k, v in series.slices.items() if k[1] == 0}).flatten()


# -- apolarity ------------------------------------------------------------

def _exp_factorial(e: Exps) -> int:
    out = 1
    for k in e:
        out *= factorial(k)
    return out


def jmu_annihilator(mu, cutoff: tuple[int, int], dmu: BigradedSpace | None = None) -> BigradedSpace:
    """Slices of J_mu for bidegrees up to ``cutoff``.

    J_mu is the annihilator of D_mu under ``<x^e, x^e'> = e! [e = e']``;
    in a slice where D_mu vanishes, the J_mu slice is everything.
    """
    mu = as_partition(mu)
    n = mu.size
    top = (n_stat(mu), n_stat(conjugate(mu)))
    if cutoff[0] < top[0] or cutoff[1] < top[1]:
        raise ValueError(f"cutoff {cutoff} is below the top bidegree {top}")
    dmu = dmu or dmu_basis(mu)
    out = BigradedSpace(n)
    for r in range(cutoff[0] + 1):
        for s in range(cutoff[1] + 1):
            keys = bidegree_monomials(n, r, s)
            idx = Indexer(keys)
            sl = dmu.slices.get((r, s))
            weighted = []
            if sl is not None:
                for p in sl.polys():
                    weighted.append({idx[e]: c * _exp_factorial(e) for e, c in p.items()})
            ann = RowSpace(weighted, len(idx)).annihilator()
            out.slices[(r, s)] = Slice(idx, ann)
    return out


def apply_operator(p: MPoly, f: MPoly, n: int) -> MPoly:
    """``p(d/dx, d/dy) f``."""
    P, F = from_mpoly(p, n), from_mpoly(f, n)
    out: dict = {}
    for e, c in P.items():
        for g, d in F.items():
            if all(gi >= ei for gi, ei in zip(g, e)):
                coef = c * d
                for gi, ei in zip(g, e):
                    coef *= factorial(gi) // factorial(gi - ei)
                ne = tuple(gi - ei for gi, ei in zip(g, e))
                out[ne] = out.get(ne, 0) + coef
    return to_mpoly({e: c for e, c in out.items() if c}, n)


# -- diagonal coinvariants -----------------------------------------------

def polarized_power_sum(n: int, h: int, k: int) -> Poly:
    out = {}
    for i in range(n):
        e = [0] * (2 * n)
        e[i] = h
        e[n + i] = k
        out[tuple(e)] = 1
    return out


def _times_var(p: Poly, k: int) -> Poly:
    return {e[:k] + (e[k] + 1,) + e[k + 1:]: c for e, c in p.items()}


def diagonal_coinvariants_dims(n: int) -> dict:
    """Bigraded dimensions of the diagonal coinvariant ring in 2n variables.

    The ideal is generated by the polarized power sums ``p_{h,k}`` with
    ``1 <= h + k <= n``; its slices are built degree by degree as
    ``x_i I + y_i I + (generators)`` until a whole total degree is zero in
    the quotient.
    """
    if n < 1:
        raise ValueError("n must be positive")
    ideal: dict = {}
    dims: dict = {(0, 0): 1}
    total = 0
    while True:
        total += 1
        any_nonzero = False
        for r in range(total, -1, -1):
            s = total - r
            gens: list[Poly] = []
            if r > 0 and (r - 1, s) in ideal:
                for g in ideal[(r - 1, s)].polys():
                    gens.extend(_times_var(g, i) for i in range(n))
            if s > 0 and (r, s - 1) in ideal:
                for g in ideal[(r, s - 1)].polys():
                    gens.extend(_times_var(g, n + i) for i in range(n))
            if total <= n:
                gens.append(polarized_power_sum(n, r, s))
            keys = bidegree_monomials(n, r, s)
            sl = _make_slice(gens, keys)
            ideal[(r, s)] = sl
            d = len(keys) - sl.space.dim
            if d:
                dims[(r, s)] = d
                any_nonzero = True
        if not any_nonzero:
            break
    return dims
