"""Polygraph arrangements and their bigraded coordinate rings.

Points of ``E = k^2`` have coordinates ``(x, y)``.  The polygraph ``Z(n, l)``
lives in ``E^n x E^l`` with coordinates ``x_j, y_j`` (j in [n]) and
``a_i, b_i`` (i in [l]); it is the union of the graphs ``W_f`` of the maps
``(P_1..P_n) -> (P_f(1)..P_f(l))`` over all ``f: [l] -> [n]``.  A component
``(f, T)`` of a sub-arrangement is ``W_f`` cut by ``x_j = 0`` for j in T.

Everything is degree-truncated linear algebra.  The coordinate ring of an
arrangement in bidegree (d, e) is the image of the polynomial slice under
restriction to the components; restriction to ``(f, T)`` is the
substitution ``a_i -> x_f(i)``, ``b_i -> y_f(i)``, ``x_j -> 0`` (j in T)
into ``k[x, y]``.  Images are spanned degree by degree from the images of
the previous degree times the variables, which keeps every matrix no
larger than the image space itself.

All arrangements here are invariant under translating every y-coordinate
by a common constant, and those without x-conditions also under common
x-translations.  Modding out by ``y_1`` (and ``x_1``) therefore loses
nothing: ``R = R'[y_1]`` (or ``R'[x_1, y_1]``), and the Hilbert series of
``R`` and of ``R/(y)R`` are recovered from those of ``R'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from .exactcore.mpoly import MPoly, a, b, mono, x, y
from .exactcore.subspace import Indexer, RowSpace, intersect_all
from .ghmodule import monomials

Var = tuple  # (kind, index)


# -- arrangement specs ---------------------------------------------------

@dataclass(frozen=True)
class ArrangementSpec:
    n: int
    l: int
    components: tuple  # of (f, T): f a tuple of values in 1..n, T a frozenset
    label: str = "custom"
    params: tuple = ()

    def __post_init__(self):
        for f, T in self.components:
            if len(f) != self.l or any(not 1 <= v <= self.n for v in f):
                raise ValueError(f"bad map {f} for n={self.n}, l={self.l}")
            if any(not 1 <= j <= self.n for j in T):
                raise ValueError(f"bad subset {set(T)} for n={self.n}")

    @property
    def has_x_conditions(self) -> bool:
        return any(T for _, T in self.components)

    def to_json_header(self) -> dict:
        head = {"spec": self.label, "n": self.n, "l": self.l}
        for name, value in self.params:
            head[name] = value
        return head


def all_maps(n: int, l: int) -> list[tuple[int, ...]]:
    return list(product(range(1, n + 1), repeat=l))


def z_spec(n: int, l: int) -> ArrangementSpec:
    return ArrangementSpec(n, l, tuple((f, frozenset()) for f in all_maps(n, l)), "Z")


def y_arrangement_spec(n: int, l: int, m: int, r: int, k: int) -> ArrangementSpec:
    """``Y(m, r, k)``: components ``(f, T)`` with ``|T & ([r] - f([k]))| >= m``.

    Only inclusion-minimal T are kept (subsets of size m of
    ``[r] - f([k])``); larger T give components contained in these.
    """
    if not 0 <= r <= n or not 0 <= k <= l:
        raise ValueError("need 0 <= r <= n and 0 <= k <= l")
    params = (("m", m), ("r", r), ("k", k))
    if m <= 0:
        comps = tuple((f, frozenset()) for f in all_maps(n, l))
    else:
        comps = []
        for f in all_maps(n, l):
            free = sorted(set(range(1, r + 1)) - set(f[:k]))
            for T in combinations(free, m):
                comps.append((f, frozenset(T)))
        comps = tuple(comps)
    return ArrangementSpec(n, l, comps, "Y", params)


def component_generators(n: int, l: int, f, T) -> list[MPoly]:
    """Linear generators of the ideal of the component ``(f, T)``."""
    gens = []
    for i in range(1, l + 1):
        gens.append(a(i) - x(f[i - 1]))
        gens.append(b(i) - y(f[i - 1]))
    for j in sorted(T):
        gens.append(x(j))
    return gens


# -- polynomial rings and generated ideals ---------------------------------

class Ring:
    """``k[xvars; yvars]`` bigraded by (x-kind degree, y-kind degree)."""

    def __init__(self, xvars: list[Var], yvars: list[Var]):
        self.xvars = list(xvars)
        self.yvars = list(yvars)
        self.vars = self.xvars + self.yvars
        self.pos = {v: i for i, v in enumerate(self.vars)}
        self._mono_cache: dict = {}

    @classmethod
    def polygraph(cls, n: int, l: int, drop=()) -> "Ring":
        xs = [("x", j) for j in range(1, n + 1)] + [("a", i) for i in range(1, l + 1)]
        ys = [("y", j) for j in range(1, n + 1)] + [("b", i) for i in range(1, l + 1)]
        return cls([v for v in xs if v not in drop], [v for v in ys if v not in drop])

    def monomials(self, d: int, e: int) -> list[tuple]:
        key = (d, e)
        if key not in self._mono_cache:
            self._mono_cache[key] = [
                ex + ey for ex in monomials(len(self.xvars), d) for ey in monomials(len(self.yvars), e)
            ]
        return self._mono_cache[key]

    def to_dict(self, p: MPoly) -> dict:
        out = {}
        for m, c in p.items():
            ex = [0] * len(self.vars)
            for v, k in m:
                if v not in self.pos:
                    raise ValueError(f"variable {v} is not in the ring")
                ex[self.pos[v]] = k
            out[tuple(ex)] = c
        return out

    def to_mpoly(self, p: dict) -> MPoly:
        return MPoly({mono(*zip(self.vars, e)): c for e, c in p.items()})

    def bidegree(self, e: tuple) -> tuple[int, int]:
        nx = len(self.xvars)
        return sum(e[:nx]), sum(e[nx:])

    def times_var(self, p: dict, i: int) -> dict:
        return {e[:i] + (e[i] + 1,) + e[i + 1:]: c for e, c in p.items()}

    def drop_to_zero(self, p: MPoly) -> MPoly:
        """Set every variable outside the ring to zero."""
        return MPoly({m: c for m, c in p.items() if all(v in self.pos for v, _ in m)})


@dataclass
class IdealSlice:
    index: Indexer
    space: RowSpace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def codim(self) -> int:
        return len(self.index) - self.space.dim

    def polys(self) -> list[dict]:
        keys = self.index.keys
        return [{keys[j]: c for j, c in num.items()} for num in self.space.nums]

    def vector(self, p: dict) -> dict:
        return {self.index[e]: c for e, c in p.items()}


class GeneratedIdeal:
    """Slices of the ideal generated by bihomogeneous polynomials.

    ``I_(d,e) = sum_x-kind v * I_(d-1,e) + sum_y-kind v * I_(d,e-1)
    + span(generators of bidegree (d,e))``.
    """

    def __init__(self, ring: Ring, generators):
        self.ring = ring
        self.gens: dict = {}
        for g in generators:
            g = ring.to_dict(g) if isinstance(g, MPoly) else g
            if not g:
                continue
            degs = {ring.bidegree(e) for e in g}
            if len(degs) != 1:
                raise ValueError("generators must be bihomogeneous")
            self.gens.setdefault(degs.pop(), []).append(g)
        self._slices: dict = {}

    def slice(self, d: int, e: int) -> IdealSlice:
        key = (d, e)
        if key in self._slices:
            return self._slices[key]
        ring = self.ring
        rows = list(self.gens.get(key, []))
        nx = len(ring.xvars)
        if d > 0:
            for p in self.slice(d - 1, e).polys():
                rows.extend(ring.times_var(p, i) for i in range(nx))
        if e > 0:
            for p in self.slice(d, e - 1).polys():
                rows.extend(ring.times_var(p, nx + i) for i in range(len(ring.yvars)))
        idx = Indexer(ring.monomials(d, e))
        sl = IdealSlice(idx, RowSpace([{idx[m]: c for m, c in p.items()} for p in rows], len(idx)))
        self._slices[key] = sl
        return sl


# -- restriction to components --------------------------------------------

class ImageEngine:
    """Coordinate ring of an arrangement via restriction to its components.

    ``kill_x1``/``kill_y1`` set ``x_1``/``y_1`` to zero everywhere (the
    translation reduction described in the module docstring).
    """

    def __init__(self, spec: ArrangementSpec, kill_x1: bool = False, kill_y1: bool = False):
        if kill_x1 and spec.has_x_conditions:
            raise ValueError("x-translation reduction needs components without x-conditions")
        self.spec = spec
        n, l = spec.n, spec.l
        self.n = n
        self.kill_x1, self.kill_y1 = kill_x1, kill_y1
        drop = set()
        if kill_x1 and n:
            drop.add(("x", 1))
        if kill_y1 and n:
            drop.add(("y", 1))
        self.ring = Ring.polygraph(n, l, drop)
        self.maps = []
        self.allowed = []
        for f, T in spec.components:
            m = {}
            for j in range(1, n + 1):
                m[("x", j)] = None if (j in T or ("x", j) in drop) else j - 1
                m[("y", j)] = None if ("y", j) in drop else n + j - 1
            for i in range(1, l + 1):
                m[("a", i)] = m[("x", f[i - 1])]
                m[("b", i)] = m[("y", f[i - 1])]
            self.maps.append(m)
            self.allowed.append(
                ([m[("x", j)] for j in range(1, n + 1) if m[("x", j)] is not None],
                 [m[("y", j)] for j in range(1, n + 1) if m[("y", j)] is not None])
            )
        self._R: dict = {}
        self._yR: dict = {}
        self._index: dict = {}

    # target space of bidegree (d, e)
    def index(self, d: int, e: int) -> Indexer:
        key = (d, e)
        if key not in self._index:
            keys = []
            n = self.n
            for c, (xs, ys) in enumerate(self.allowed):
                for ex in monomials(len(xs), d):
                    for ey in monomials(len(ys), e):
                        t = [0] * (2 * n)
                        for pos, k in zip(xs, ex):
                            t[pos] = k
                        for pos, k in zip(ys, ey):
                            t[pos] = k
                        keys.append((c, tuple(t)))
            self._index[key] = Indexer(keys)
        return self._index[key]

    def image(self, p: MPoly) -> dict:
        """Restriction of p to the components, as ``{(c, exps): coeff}``."""
        out: dict = {}
        for m, coeff in p.items():
            for c, vm in enumerate(self.maps):
                t = [0] * (2 * self.n)
                zero = False
                for v, k in m:
                    pos = vm.get(v, None) if v in vm else None
                    if pos is None:
                        zero = True
                        break
                    t[pos] += k
                if zero:
                    continue
                key = (c, tuple(t))
                s = out.get(key, 0) + coeff
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    def _times_var(self, vec: dict, v: Var) -> dict:
        out = {}
        for (c, t), coeff in vec.items():
            pos = self.maps[c][v]
            if pos is None:
                continue
            nt = t[:pos] + (t[pos] + 1,) + t[pos + 1:]
            out[(c, nt)] = out.get((c, nt), 0) + coeff
        return out

    def _times_image(self, vec: dict, img: dict) -> dict:
        """Componentwise product of two restricted polynomials."""
        by_comp: dict = {}
        for (c, t), coeff in img.items():
            by_comp.setdefault(c, []).append((t, coeff))
        out: dict = {}
        for (c, t), coeff in vec.items():
            for t2, c2 in by_comp.get(c, ()):
                nt = tuple(u + w for u, w in zip(t, t2))
                out[(c, nt)] = out.get((c, nt), 0) + coeff * c2
        return {k: v for k, v in out.items() if v}

    def vectors(self, sl_key: tuple, space: RowSpace) -> list[dict]:
        keys = self.index(*sl_key).keys
        return [{keys[j]: c for j, c in num.items()} for num in space.nums]

    def _space(self, d: int, e: int, vecs: list[dict]) -> RowSpace:
        idx = self.index(d, e)
        return RowSpace([{idx[k]: c for k, c in v.items() if c} for v in vecs], len(idx))

    def R(self, d: int, e: int) -> RowSpace:
        """Image of the polynomial slice: a copy of ``R_(d,e)``."""
        key = (d, e)
        if key not in self._R:
            if d == 0 and e == 0:
                vecs = [self.image(MPoly.const(1))]
            elif d > 0:
                prev = self.vectors((d - 1, e), self.R(d - 1, e))
                vecs = [self._times_var(v, var) for v in prev for var in self.ring.xvars]
            else:
                prev = self.vectors((d, e - 1), self.R(d, e - 1))
                vecs = [self._times_var(v, var) for v in prev for var in self.ring.yvars]
            self._R[key] = self._space(d, e, vecs)
        return self._R[key]

    def yR(self, d: int, e: int) -> RowSpace:
        """Image of ``(y_1..y_n) R`` in bidegree (d, e)."""
        key = (d, e)
        if key not in self._yR:
            vecs = []
            if e > 0:
                ys = [("y", j) for j in range(1, self.n + 1) if ("y", j) in self.ring.pos]
                prev = self.vectors((d, e - 1), self.R(d, e - 1))
                vecs = [self._times_var(v, var) for v in prev for var in ys]
            self._yR[key] = self._space(d, e, vecs)
        return self._yR[key]

    def h(self, d: int, e: int) -> int:
        return self.R(d, e).dim

    def g(self, d: int, e: int) -> int:
        return self.R(d, e).dim - self.yR(d, e).dim

    def ideal_image(self, gens: list[MPoly], d: int, e: int, cache: dict) -> RowSpace:
        """Image in ``R_(d,e)`` of the ideal generated by ``gens``."""
        key = (d, e)
        if key in cache:
            return cache[key]
        vecs = []
        for g in gens:
            gd, ge = g.bidegree()
            if gd <= d and ge <= e:
                img = self.image(g)
                base = self.vectors((d - gd, e - ge), self.R(d - gd, e - ge))
                vecs.extend(self._times_image(v, img) for v in base)
        cache[key] = self._space(d, e, [v for v in vecs if v])
        return cache[key]


def _engine(spec: ArrangementSpec) -> ImageEngine:
    return ImageEngine(spec, kill_x1=not spec.has_x_conditions and spec.n > 0, kill_y1=spec.n > 0)


@dataclass
class HilbertData:
    """Bigraded dims of R and of R/(y)R up to (Dx, Dy)."""

    spec: ArrangementSpec
    Dx: int
    Dy: int
    h: dict
    g: dict

    def to_json(self) -> dict:
        out = self.spec.to_json_header()
        out.update({"Dx": self.Dx, "Dy": self.Dy})
        out["hilbert"] = {f"({d},{e})": v for (d, e), v in sorted(self.h.items())}
        return out


def hilbert_data(spec: ArrangementSpec, Dx: int, Dy: int) -> HilbertData:
    if Dx < 0 or Dy < 0:
        raise ValueError("truncation bounds must be nonnegative")
    if not spec.components:
        zero = {(d, e): 0 for d in range(Dx + 1) for e in range(Dy + 1)}
        return HilbertData(spec, Dx, Dy, dict(zero), dict(zero))
    eng = _engine(spec)
    h2 = {(d, e): eng.h(d, e) for d in range(Dx + 1) for e in range(Dy + 1)}
    g2 = {(d, e): eng.g(d, e) for d in range(Dx + 1) for e in range(Dy + 1)}
    xs = (lambda d: range(d + 1)) if eng.kill_x1 else (lambda d: (d,))
    ys = (lambda e: range(e + 1)) if eng.kill_y1 else (lambda e: (e,))
    h, g = {}, {}
    for d in range(Dx + 1):
        for e in range(Dy + 1):
            h[(d, e)] = sum(h2[(d2, e2)] for d2 in xs(d) for e2 in ys(e))
            g[(d, e)] = sum(g2[(d2, e)] for d2 in xs(d))
    return HilbertData(spec, Dx, Dy, h, g)


def hilbert_series(spec: ArrangementSpec, Dx: int, Dy: int) -> dict:
    return hilbert_data(spec, Dx, Dy).h


# -- explicit ideal slices (small truncations) ----------------------------

def component_ideal(n: int, l: int, f, T, bidegree: tuple[int, int]) -> IdealSlice:
    ring = Ring.polygraph(n, l)
    return GeneratedIdeal(ring, component_generators(n, l, f, T)).slice(*bidegree)


@dataclass
class BigradedIdeal:
    ring: Ring
    Dx: int
    Dy: int
    slices: dict  # (d, e) -> IdealSlice

    def quotient_dims(self) -> dict:
        return {k: v.codim for k, v in sorted(self.slices.items())}

    def contains(self, p: MPoly) -> bool:
        pd = self.ring.to_dict(p)
        parts: dict = {}
        for e, c in pd.items():
            parts.setdefault(self.ring.bidegree(e), {})[e] = c
        for bd, part in parts.items():
            sl = self.slices.get(bd)
            if sl is None:
                raise ValueError(f"bidegree {bd} is beyond the truncation")
            if not sl.space.contains(sl.vector(part)):
                return False
        return True

    def is_closed_under_variables(self) -> bool:
        """x-kind (y-kind) variables map each slice into the next one."""
        ring = self.ring
        nx = len(ring.xvars)
        for (d, e), sl in self.slices.items():
            for i in range(len(ring.vars)):
                target = (d + 1, e) if i < nx else (d, e + 1)
                if target not in self.slices:
                    continue
                tsl = self.slices[target]
                vecs = [tsl.vector(ring.times_var(p, i)) for p in sl.polys()]
                if vecs and not tsl.space.contains_all(vecs):
                    return False
        return True


def arrangement_ideal(spec: ArrangementSpec, Dx: int, Dy: int) -> BigradedIdeal:
    """Ideal slices as intersections of the component ideal slices."""
    ring = Ring.polygraph(spec.n, spec.l)
    comps = [GeneratedIdeal(ring, component_generators(spec.n, spec.l, f, T)) for f, T in spec.components]
    slices = {}
    for d in range(Dx + 1):
        for e in range(Dy + 1):
            idx = Indexer(ring.monomials(d, e))
            if not comps:
                space = RowSpace([{j: 1} for j in range(len(idx))], len(idx))
            else:
                space = intersect_all([c.slice(d, e).space for c in comps], len(idx))
            slices[(d, e)] = IdealSlice(idx, space)
    ideal = BigradedIdeal(ring, Dx, Dy, slices)
    if not ideal.is_closed_under_variables():
        raise AssertionError("intersection slices are not closed under the variables")
    return ideal


# -- generic fibre and freeness -------------------------------------------

def _series_times_one_minus_s_power(coeffs: list[int], n: int, top: int) -> list[int]:
    """Coefficients of ``(1 - s)^n * sum c_e s^e`` up to s^top."""
    out = [0] * (top + 1)
    for e, c in enumerate(coeffs[: top + 1]):
        if not c:
            continue
        for k in range(0, min(n, top - e) + 1):
            out[e + k] += c * comb(n, k) * (-1) ** k
    return out


@dataclass
class GenericReport:
    n: int
    l: int
    Dx: int
    Dy: int
    expected: list
    enumerated: list
    stabilized: list
    stable: list

    @property
    def passed(self) -> bool:
        return self.expected == self.enumerated == self.stabilized and all(self.stable)

    def to_json(self) -> dict:
        first = None
        for d, (u, v, w) in enumerate(zip(self.expected, self.enumerated, self.stabilized)):
            if not (u == v == w) or not self.stable[d]:
                first = {"d": d, "expected": u, "enumerated": v, "stabilized": w, "stable": self.stable[d]}
                break
        return {
            "check": "generic_hilbert",
            "n": self.n,
            "l": self.l,
            "Dx": self.Dx,
            "Dy": self.Dy,
            "pass": self.passed,
            "first_discrepancy": first,
            "dims": self.stabilized,
        }


def generic_ranks(data: HilbertData) -> tuple[list[int], list[bool]]:
    """Rank of ``R_d`` over k[y] from the truncated series ``(1-s)^n h_d(s)``.

    If R_d is free this polynomial is ``g_d(s)``; once its degree is below
    the truncation its value at s = 1 is the rank.  ``stable[d]`` records
    whether the top coefficient vanished (so the truncation was enough).
    """
    n = data.spec.n
    ranks, stable = [], []
    for d in range(data.Dx + 1):
        hd = [data.h[(d, e)] for e in range(data.Dy + 1)]
        K = _series_times_one_minus_s_power(hd, n, data.Dy)
        ranks.append(sum(K))
        stable.append(K[-1] == 0)
    return ranks, stable


def pair_enumerator(n: int, l: int, Dx: int, m: int = 0, r: int = 0, k: int = 0) -> list[int]:
    """Number of pairs (e, f), |e| = d, with ``|[r] - S_k(e, f)| >= m``."""
    out = [0] * (Dx + 1)
    maps = all_maps(n, l)
    for d in range(Dx + 1):
        for e in monomials(n, d):
            support = {j + 1 for j in range(n) if e[j] > 0}
            for f in maps:
                S = support | set(f[:k])
                if len(set(range(1, r + 1)) - S) >= m:
                    out[d] += 1
    return out


def generic_hs_check(n: int, l: int, Dx: int, Dy: int = 6) -> GenericReport:
    data = hilbert_data(z_spec(n, l), Dx, Dy)
    ranks, stable = generic_ranks(data)
    expected = [n**l * comb(d + n - 1, n - 1) for d in range(Dx + 1)]
    return GenericReport(n, l, Dx, Dy, expected, pair_enumerator(n, l, Dx), ranks, stable)


def y_generic_enumerator(n: int, l: int, m: int, r: int, k: int, Dx: int) -> list[int]:
    if m > r:
        return [0] * (Dx + 1)
    return pair_enumerator(n, l, Dx, m, r, k)


def y_generic_check(n: int, l: int, m: int, r: int, k: int, Dx: int, Dy: int = 6) -> dict:
    spec = y_arrangement_spec(n, l, m, r, k)
    enum = y_generic_enumerator(n, l, m, r, k, Dx)
    ranks, stable = generic_ranks(hilbert_data(spec, Dx, Dy))
    return {"enumerated": enum, "stabilized": ranks, "stable": stable,
            "pass": enum == ranks and all(stable)}


@dataclass
class Certificate:
    check: str
    passed: bool
    first_discrepancy: dict | None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"check": self.check, "pass": self.passed, "first_discrepancy": self.first_discrepancy}
        out.update(self.details)
        return out


def hilbert_identity(h: dict, g: dict, n: int, Dx: int, Dy: int) -> dict | None:
    """First (d, e) where ``h_d != g_d / (1-s)^n`` modulo s^(Dy+1)."""
    for d in range(Dx + 1):
        for e in range(Dy + 1):
            want = sum(g[(d, e2)] * comb(e - e2 + n - 1, n - 1) for e2 in range(e + 1))
            if h[(d, e)] != want:
                return {"d": d, "e": e, "h": h[(d, e)], "g_over_free": want}
    return None


def freeness_certificate(spec: ArrangementSpec, Dx: int, Dy: int) -> Certificate:
    """Truncated test that R is a free k[y]-module (up to (Dx, Dy))."""
    data = hilbert_data(spec, Dx, Dy)
    first = hilbert_identity(data.h, data.g, spec.n, Dx, Dy)
    return Certificate("freeness", first is None, first)


# -- the case n = 2 ----------------------------------------------------------

def theta(p: MPoly, n: int = 2) -> MPoly:
    """Cyclic shift ``x_i -> x_(i+1)``, ``y_i -> y_(i+1)`` (indices mod n),
    fixing a and b.  For n = 2 it swaps the two points."""
    def ren(v):
        kind, i = v
        if kind in ("x", "y") and 1 <= i <= n:
            return (kind, i % n + 1)
        return v
    return p.rename(ren)


def _theta_map(f: tuple, n: int = 2) -> tuple:
    """The map f composed with the cyclic shift of [n]."""
    return tuple(v % n + 1 for v in f)


def p_basis_element(e: tuple[int, int], f: tuple) -> MPoly:
    """The common basis element ``p[e, f]`` for n = 2."""
    h1, h2 = e
    l = len(f)
    if h1 > 0 and h2 > 0:
        h = min(h1, h2)
        return (x(1) * x(2)) ** h * p_basis_element((h1 - h, h2 - h), f)
    if h1 > 0:
        return x(1) * theta(p_basis_element((0, h1 - 1), _theta_map(f)))
    if h2 == 0:
        out = MPoly.const(1)
        if l == 0:
            return out
        for j in range(2, l + 1):
            if f[j - 1] != f[0]:
                out = out * (b(j) - b(1))
        if f[0] == 1:
            out = out * (b(1) - y(2))
        return out
    ones = [i for i in range(1, l + 1) if f[i - 1] == 1]
    S, T = ones[:h2], ones[h2:]
    out = x(2) ** (h2 - len(S))
    for i in S:
        out = out * (a(i) - x(1) - x(2))
    for j in T:
        out = out * (b(j) - y(2))
    return out


def n2_basis(l: int, Dx: int) -> list[tuple[tuple, tuple, MPoly]]:
    out = []
    for d in range(Dx + 1):
        for h1 in range(d + 1):
            e = (h1, d - h1)
            for f in all_maps(2, l):
                out.append((e, f, p_basis_element(e, f)))
    return out


def membership_rule(e: tuple, f: tuple, m: int, r: int, k: int) -> bool:
    """``|[r] - S_k(e, f)| < m``."""
    S = {j + 1 for j in range(len(e)) if e[j] > 0} | set(f[:k])
    return len(set(range(1, r + 1)) - S) < m


def y_parameter_triples(n: int, l: int) -> list[tuple[int, int, int]]:
    """Nontrivial (m, r, k): 1 <= m <= r <= n, 0 <= k <= l."""
    return [(m, r, k) for r in range(1, n + 1) for m in range(1, r + 1) for k in range(l + 1)]


def _vanishes_on(spec: ArrangementSpec, p: MPoly) -> bool:
    if not spec.components:
        return True
    return not ImageEngine(spec).image(p)


def n2_common_basis(l: int, Dx: int = 6, Dy: int = 6) -> Certificate:
    """Verify the n = 2 common basis: spanning R/(y), degree enumerator,
    and the membership rule for every I(m, r, k)."""
    basis = n2_basis(l, Dx)
    zspec = z_spec(2, l)
    eng = ImageEngine(zspec)
    by_deg: dict = {}
    for e, f, p in basis:
        if not p.is_bihomogeneous():
            return Certificate("n2_basis", False, {"e": list(e), "f": list(f), "reason": "not bihomogeneous"})
        by_deg.setdefault(p.bidegree(), []).append((e, f, p))

    # (a) spanning R/(y) slice by slice
    for d in range(Dx + 1):
        for ee in range(Dy + 1):
            full = eng.R(d, ee)
            idx = eng.index(d, ee)
            rows = list(eng.yR(d, ee).nums)
            rows += [{idx[k]: c for k, c in eng.image(p).items()} for _, _, p in by_deg.get((d, ee), [])]
            if RowSpace(rows, len(idx)).dim != full.dim:
                return Certificate("n2_basis", False, {"part": "span", "bidegree": [d, ee]})

    # (b) degree enumerator 2^l / (1 - t)^2
    for d in range(Dx + 1):
        count = sum(1 for e, _, _ in basis if sum(e) == d)
        if count != 2**l * (d + 1):
            return Certificate("n2_basis", False, {"part": "enumerator", "d": d, "count": count})

    # (c) membership rule: flagged elements lie in I(m, r, k), and their
    # k[y]-multiples fill the ideal slice by slice
    data_z = hilbert_data(zspec, Dx, Dy)
    for m, r, k in y_parameter_triples(2, l):
        yspec = y_arrangement_spec(2, l, m, r, k)
        yeng = ImageEngine(yspec) if yspec.components else None
        flagged = [(e, f, p) for e, f, p in basis if membership_rule(e, f, m, r, k)]
        for e, f, p in flagged:
            if yeng is not None and yeng.image(p):
                return Certificate("n2_basis", False, {
                    "part": "membership", "m": m, "r": r, "k": k, "e": list(e), "f": list(f)})
        data_y = hilbert_data(yspec, Dx, Dy)
        for d in range(Dx + 1):
            for ee in range(Dy + 1):
                ideal_dim = data_z.h[(d, ee)] - data_y.h[(d, ee)]
                idx = eng.index(d, ee)
                rows = []
                for e, f, p in flagged:
                    pd, pe = p.bidegree()
                    if pd != d or pe > ee:
                        continue
                    img = eng.image(p)
                    for mono_y in monomials(2, ee - pe):
                        ym = y(1) ** mono_y[0] * y(2) ** mono_y[1]
                        rows.append({idx[key]: c for key, c in eng._times_image(img, eng.image(ym)).items()})
                got = RowSpace(rows, len(idx)).dim
                if got != ideal_dim:
                    return Certificate("n2_basis", False, {
                        "part": "ideal_span", "m": m, "r": r, "k": k, "bidegree": [d, ee],
                        "ideal_dim": ideal_dim, "spanned": got})
    return Certificate("n2_basis", True, None, {"l": l, "Dx": Dx, "Dy": Dy, "size": len(basis)})


def n2_ideal_generators(l: int, m: int, r: int, k: int) -> list[MPoly] | None:
    """Generators of I(m, r, k) for n = 2 as listed for the nontrivial cases."""
    if (m, r) == (2, 2) and k == 0:
        return [x(1), x(2)] + [a(i) for i in range(1, l + 1)]
    if (m, r) == (1, 2):
        gens = [x(1) * x(2)]
        for i in range(1, k + 1):
            gens += [a(i) - x(1) - x(2), b(i) - b(1)]
        return [g for g in gens if g]
    if (m, r) == (1, 1):
        gens = [x(1)]
        for i in range(1, k + 1):
            gens += [a(i) - x(2), b(i) - y(2)]
        return gens
    return None


def n2_ideal_generators_check(l: int, m: int, r: int, k: int, Dx: int = 6, Dy: int = 6) -> Certificate:
    """Compare the ideal generated (in R(2, l)) by the listed generators with
    I(m, r, k): generators vanish on Y(m, r, k) and slice dims agree."""
    gens = n2_ideal_generators(l, m, r, k)
    if gens is None:
        raise ValueError(f"no generator list for (m, r, k) = {(m, r, k)}")
    yspec = y_arrangement_spec(2, l, m, r, k)
    for g in gens:
        if not _vanishes_on(yspec, g):
            return Certificate("n2_ideal_generators", False, {"reason": "generator does not vanish", "gen": str(g)})
    eng = ImageEngine(z_spec(2, l))
    data_z = hilbert_data(z_spec(2, l), Dx, Dy)
    data_y = hilbert_data(yspec, Dx, Dy)
    cache: dict = {}
    for d in range(Dx + 1):
        for e in range(Dy + 1):
            got = eng.ideal_image(gens, d, e, cache).dim
            want = data_z.h[(d, e)] - data_y.h[(d, e)]
            if got != want:
                return Certificate("n2_ideal_generators", False,
                                   {"bidegree": [d, e], "generated": got, "ideal": want})
    return Certificate("n2_ideal_generators", True, None, {"m": m, "r": r, "k": k, "l": l})


# -- Z(n, 1) as a product ideal --------------------------------------------

def z1_product_check(n: int, Dx: int = 5, Dy: int = 5) -> Certificate:
    """The ideal of Z(n, 1) equals the product of the ideals (a_1 - x_j, b_1 - y_j).

    Both sides are translation invariant, so the comparison is made with
    x_1 = y_1 = 0: the product generators vanish on every component, and
    the quotient dims agree slice by slice.
    """
    spec = z_spec(n, 1)
    eng = ImageEngine(spec, kill_x1=True, kill_y1=True)
    ring = eng.ring
    factors = [(a(1) - x(j), b(1) - y(j)) for j in range(1, n + 1)]
    gens = []
    for choice in product((0, 1), repeat=n):
        g = MPoly.const(1)
        for j, c in enumerate(choice):
            g = g * factors[j][c]
        gens.append(ring.drop_to_zero(g))
    for g in gens:
        if eng.image(g):
            return Certificate("z1_product", False, {"reason": "generator does not vanish", "gen": str(g)})
    ideal = GeneratedIdeal(ring, gens)
    for d in range(Dx + 1):
        for e in range(Dy + 1):
            got = ideal.slice(d, e).codim
            want = eng.h(d, e)
            if got != want:
                return Certificate("z1_product", False, {"bidegree": [d, e], "product": got, "intersection": want})
    return Certificate("z1_product", True, None, {"n": n, "Dx": Dx, "Dy": Dy})


# -- univariate polygraph ----------------------------------------------------

def univariate_polygraph_basis(n: int, l: int, D: int = 6) -> Certificate:
    """k[x, a] modulo ``sum_i (prod_j (a_i - x_j))`` is free over k[x] with
    basis the monomials a^e, 0 <= e_i < n.

    Checked up to degree D: (1) those monomials are a basis of the quotient
    by (x) in each degree; (2) there are n^l of them; (3) the Hilbert series
    of the quotient equals ``(sum_e t^|e|) / (1-t)^n``; (4) that Hilbert
    series agrees with the y-degree-0 part of the bivariate polygraph.
    """
    gens = []
    for i in range(1, l + 1):
        g = MPoly.const(1)
        for j in range(1, n + 1):
            g = g * (a(i) - x(j))
        gens.append(g)
    basis = [e for e in product(range(n), repeat=l)]
    if len(basis) != n**l:
        return Certificate("univariate_basis", False, {"part": "count"})
    deg_count = [0] * (D + 1)
    for e in basis:
        if sum(e) <= D:
            deg_count[sum(e)] += 1

    a_ring = Ring([("a", i) for i in range(1, l + 1)], [])
    mod_x = GeneratedIdeal(a_ring, [a_ring.drop_to_zero(g) for g in gens])
    for d in range(D + 1):
        sl = mod_x.slice(d, 0)
        rows = list(sl.space.nums)
        for e in basis:
            if sum(e) == d:
                rows.append({sl.index[tuple(e)]: 1})
        if RowSpace(rows, len(sl.index)).dim != len(sl.index) or sl.codim != deg_count[d]:
            return Certificate("univariate_basis", False, {"part": "span", "d": d})

    full_ring = Ring([("x", j) for j in range(1, n + 1)] + [("a", i) for i in range(1, l + 1)], [])
    ideal = GeneratedIdeal(full_ring, gens)
    eng = ImageEngine(z_spec(n, l))
    for d in range(D + 1):
        want = sum(deg_count[d2] * comb(d - d2 + n - 1, n - 1) for d2 in range(d + 1))
        got = ideal.slice(d, 0).codim
        arr = eng.h(d, 0)
        if not got == want == arr:
            return Certificate("univariate_basis", False,
                               {"part": "hilbert", "d": d, "quotient": got, "expected": want, "arrangement": arr})
    return Certificate("univariate_basis", True, None,
                       {"n": n, "l": l, "basis": [list(e) for e in basis]})


# -- the alternating ideal and its powers ------------------------------------

def _cells_up_to(n: int, Dx: int, Dy: int):
    cells = [(p, q) for p in range(Dx + 1) for q in range(Dy + 1)]
    for D in combinations(cells, n):
        sx = sum(c[0] for c in D)
        sy = sum(c[1] for c in D)
        if sx <= Dx and sy <= Dy:
            yield D, (sx, sy)


def alternant_spaces(n: int, Dx: int, Dy: int, ring: Ring) -> dict:
    """``(r, s) -> list of Delta_D`` (as ring dicts) over all n-sets D."""
    from .ghmodule import _delta_dict

    out: dict = {}
    for D, bd in _cells_up_to(n, Dx, Dy):
        p = _delta_dict(D, n)
        # ghmodule exponent order is x_1..x_n, y_1..y_n, the same as the ring
        out.setdefault(bd, []).append(p)
    return out


def _product_spaces(ring: Ring, left: dict, right: dict, Dx: int, Dy: int) -> dict:
    """Span of products of two bigraded families, reduced to a basis."""
    out: dict = {}
    for (r1, s1), ps in left.items():
        for (r2, s2), qs in right.items():
            r, s = r1 + r2, s1 + s2
            if r > Dx or s > Dy:
                continue
            for p in ps:
                for q in qs:
                    prod_ = {}
                    for e1, c1 in p.items():
                        for e2, c2 in q.items():
                            e = tuple(u + v for u, v in zip(e1, e2))
                            prod_[e] = prod_.get(e, 0) + c1 * c2
                    out.setdefault((r, s), []).append({e: c for e, c in prod_.items() if c})
    reduced = {}
    for bd, polys in out.items():
        idx = Indexer(ring.monomials(*bd))
        sp = RowSpace([{idx[e]: c for e, c in p.items()} for p in polys], len(idx))
        reduced[bd] = [{idx.keys[j]: c for j, c in num.items()} for num in sp.nums]
    return reduced


@dataclass
class JPowerReport:
    n: int
    d: int
    Dx: int
    Dy: int
    contained: bool
    equal: bool
    free: bool
    first_discrepancy: dict | None
    dims: dict

    @property
    def passed(self) -> bool:
        return self.contained and self.equal and self.free

    def to_json(self) -> dict:
        return {
            "check": "jpower",
            "n": self.n,
            "d": self.d,
            "Dx": self.Dx,
            "Dy": self.Dy,
            "pass": self.passed,
            "contained": self.contained,
            "equal": self.equal,
            "free": self.free,
            "first_discrepancy": self.first_discrepancy,
            "dims": {f"({r},{s})": v for (r, s), v in sorted(self.dims.items())},
        }


def jpower_check(n: int, d: int, Dx: int = 5, Dy: int = 5) -> JPowerReport:
    """J^d against the intersection of the powers of the diagonal ideals.

    J is generated by the alternants Delta_D.  J^d is generated by products
    of d alternants; each ``(x_i - x_j, y_i - y_j)^d`` by the products
    ``(x_i - x_j)^u (y_i - y_j)^(d-u)``.  Also checks the truncated
    y-freeness identity for J^d.
    """
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    ring = Ring([("x", j) for j in range(1, n + 1)], [("y", j) for j in range(1, n + 1)])
    alts = alternant_spaces(n, Dx, Dy, ring)
    power = alts
    for _ in range(d - 1):
        power = _product_spaces(ring, power, alts, Dx, Dy)
    Jd = GeneratedIdeal(ring, [p for ps in power.values() for p in ps])
    diag = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            gens = [(x(i) - x(j)) ** u * (y(i) - y(j)) ** (d - u) for u in range(d + 1)]
            diag.append(GeneratedIdeal(ring, gens))
    contained, equal, first = True, True, None
    dims = {}
    for r in range(Dx + 1):
        for s in range(Dy + 1):
            sl = Jd.slice(r, s)
            dims[(r, s)] = sl.dim
            inter = intersect_all([D.slice(r, s).space for D in diag], len(sl.index))
            if sl.dim and not inter.contains_all(list(sl.space.nums)):
                contained = False
                first = first or {"bidegree": [r, s], "reason": "not contained"}
            if inter.dim != sl.dim:
                equal = False
                first = first or {"bidegree": [r, s], "J^d": sl.dim, "intersection": inter.dim}
    # y-freeness of J^d: h_r(s) = g_r(s) / (1 - s)^n up to the truncation
    ny = n
    h, g = {}, {}
    for r in range(Dx + 1):
        for s in range(Dy + 1):
            h[(r, s)] = dims[(r, s)]
            rows = []
            if s > 0:
                for p in Jd.slice(r, s - 1).polys():
                    rows.extend(ring.times_var(p, n + j) for j in range(ny))
            idx = Jd.slice(r, s).index
            yJ = RowSpace([{idx[e]: c for e, c in p.items()} for p in rows], len(idx)).dim
            g[(r, s)] = h[(r, s)] - yJ
    free_first = hilbert_identity(h, g, n, Dx, Dy)
    free = free_first is None
    if first is None and not free:
        first = {"reason": "freeness", **free_first}
    return JPowerReport(n, d, Dx, Dy, contained, equal, free, first, dims)
