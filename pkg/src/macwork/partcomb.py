"""Partitions, diagrams and symmetric group characters.

Diagrams are zero-indexed: the cell ``(i, j)`` lies in ``D(mu)`` when
``j < mu[i]`` (row ``i``, column ``j``).
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for p in parts:
            if p < 1:
                raise ValueError(f"parts must be positive: {parts}")
        for p, q in zip(parts, parts[1:]):
            if p < q:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i, p in enumerate(self) for j in range(p)]

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def to_json(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"


def as_partition(mu) -> Partition:
    return mu if isinstance(mu, Partition) else Partition(mu)


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions(n, n))


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(_partitions_cached(n))


def conjugate(mu) -> Partition:
    mu = as_partition(mu)
    if not mu:
        return mu
    return Partition(sum(1 for p in mu if p > j) for j in range(mu[0]))


def dominates(lam, mu) -> bool:
    """``lam >= mu`` in dominance order."""
    lam, mu = as_partition(lam), as_partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    s = t = 0
    for k in range(max(len(lam), len(mu))):
        s += lam[k] if k < len(lam) else 0
        t += mu[k] if k < len(mu) else 0
        if s < t:
            return False
    return True


def n_stat(mu) -> int:
    return sum(i * p for i, p in enumerate(as_partition(mu)))


def arm_leg(mu, cell: tuple[int, int]) -> tuple[int, int]:
    """Arm (cells strictly right) and leg (cells strictly below) of a cell."""
    mu = as_partition(mu)
    i, j = cell
    if i < 0 or j < 0 or i >= len(mu) or j >= mu[i]:
        raise ValueError(f"cell {cell} is not in the diagram of {mu}")
    arm = mu[i] - j - 1
    leg = sum(1 for p in mu[i + 1:] if p > j)
    return arm, leg


def hook_product(mu) -> int:
    mu = as_partition(mu)
    return prod(a + l + 1 for a, l in (arm_leg(mu, c) for c in mu.cells()))


def syt_count(lam) -> int:
    lam = as_partition(lam)
    return factorial(lam.size) // hook_product(lam)


def z_tau(tau) -> int:
    """Order of the centralizer of a permutation of cycle type ``tau``."""
    out = 1
    for k, m in as_partition(tau).multiplicities().items():
        out *= k**m * factorial(m)
    return out


def class_size(tau) -> int:
    tau = as_partition(tau)
    return factorial(tau.size) // z_tau(tau)


def cycle_type(perm: tuple[int, ...]) -> Partition:
    """Cycle type of a permutation given in one-line notation on 0..n-1."""
    seen = [False] * len(perm)
    lengths = []
    for s in range(len(perm)):
        if not seen[s]:
            k, j = 0, s
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            lengths.append(k)
    return Partition(sorted(lengths, reverse=True))


def permutation_of_type(tau) -> tuple[int, ...]:
    """A fixed representative permutation with cycles on consecutive points."""
    perm = []
    start = 0
    for k in as_partition(tau):
        perm.extend(start + (i + 1) % k for i in range(k))
        start += k
    return tuple(perm)


def _remove_rim_hooks(lam: tuple[int, ...], k: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Shapes obtained by removing a rim hook of size k, with its height."""
    # beta-numbers: removing a k-rim hook moves one bead k places down
    n = len(lam)
    beta = [lam[i] + (n - 1 - i) for i in range(n)]
    bset = set(beta)
    for idx, bv in enumerate(beta):
        nb = bv - k
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for c in beta if nb < c < bv)
        new = sorted((c for c in beta if c != bv), reverse=True)
        new.append(nb)
        new.sort(reverse=True)
        shape = tuple(new[i] - (n - 1 - i) for i in range(n))
        yield tuple(p for p in shape if p > 0), height


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], tau: tuple[int, ...]) -> int:
    if not tau:
        return 1 if not lam else 0
    k, rest = tau[0], tau[1:]
    total = 0
    for shape, height in _remove_rim_hooks(lam, k):
        total += (-1) ** height * _mn(shape, rest)
    return total


def character_value(lam, tau) -> int:
    """``chi^lam`` at a permutation of cycle type ``tau`` (Murnaghan-Nakayama)."""
    lam, tau = as_partition(lam), as_partition(tau)
    if lam.size != tau.size:
        raise ValueError(f"size mismatch: |{lam}| != |{tau}|")
    return _mn(tuple(lam), tuple(tau))
