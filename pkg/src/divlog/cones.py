"""Conversions between inequality and generator descriptions of rational cones.

Everything here is brute-force double description over subsets of
inequalities, which is exact and fast enough for ambient rank <= 4.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Sequence

from divlog.lattice import IntMatrix, Vector, cross_kernel, dot, kernel_basis, primitive

MAX_RANK = 4


class RankTooLarge(ValueError):
    """Raised for polyhedral computations beyond the supported ambient rank."""


def _kernel_columns(rows: Sequence[Sequence[int]], n: int) -> list[Vector]:
    if not rows:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    return kernel_basis(IntMatrix.from_rows(rows, n)).columns()


def h_to_v(n: int, ineqs: Sequence[Sequence[int]],
           eqs: Sequence[Sequence[int]] = ()) -> tuple[list[Vector], list[Vector]]:
    """Generators of ``{x in R^n : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}``.

    Returns ``(rays, lineality)``: primitive extreme rays of the pointed part
    (taken orthogonal to the lineality space) and an integer basis of the
    lineality space.  Both are sorted.
    """
    rays, lineality = _h_to_v(n, tuple(map(tuple, ineqs)), tuple(map(tuple, eqs)))
    return list(rays), list(lineality)


# fan operations convert the same small cones over and over
@lru_cache(maxsize=1 << 16)
def _h_to_v(n: int, ineqs: tuple, eqs: tuple) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    ineqs = list(ineqs)
    eqs = list(eqs)
    lineality = sorted(_kernel_columns(eqs + ineqs, n))
    # work inside the lattice of the pointed part: x = K y
    K = _kernel_columns(eqs + lineality, n)
    d = len(K)
    if d == 0:
        return (), tuple(lineality)
    reduced = set()
    for a in ineqs:
        ay = tuple(dot(a, k) for k in K)
        if any(ay):
            reduced.add(primitive(ay))
    reduced = sorted(reduced)
    candidates = set()
    if d == 1:
        candidates = {(1,), (-1,)}
    else:
        for subset in combinations(reduced, d - 1):
            v = cross_kernel(subset, d)
            if v is not None:
                v = primitive(v)
                candidates.add(v)
                candidates.add(tuple(-x for x in v))
    rays = set()
    for y in candidates:
        if all(dot(a, y) >= 0 for a in reduced):
            x = tuple(sum(k[i] * yj for k, yj in zip(K, y)) for i in range(n))
            rays.add(primitive(x))
    return tuple(sorted(rays)), tuple(lineality)


def dual(n: int, gens: Sequence[Sequence[int]]) -> tuple[list[Vector], list[Vector]]:
    """Generators of the dual cone of ``cone(gens)`` (rays, lineality)."""
    return h_to_v(n, [tuple(g) for g in gens])


def scale_to_integer(v: Sequence) -> Vector:
    """Smallest positive integer multiple of a rational vector."""
    fr = [Fraction(x) for x in v]
    m = lcm(*(f.denominator for f in fr)) if fr else 1
    return tuple(int(f * m) for f in fr)


def check_rank(n: int) -> None:
    if n > MAX_RANK:
        raise RankTooLarge(f"ambient rank {n} exceeds the supported maximum {MAX_RANK}")
