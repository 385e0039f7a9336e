"""Deformation to the normal cone for monomial centers.

The extended Rees monoid of ``I`` in ``P`` lives in ``P^gp + Z``; the extra
coordinate is the exponent of ``t`` and sits right after the free
coordinates of ``P``'s ambient group.  Its slice at ``t``-degree ``-n`` is
the (integral closure of the) ideal ``I^n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Sequence

from divlog.blowup import EmptyIdeal
from divlog.lattice import Vector, dot
from divlog.monoid import FsMonoid, MonoidError, MonoidIdeal, NotSaturated, NotSharp


class NotNested(MonoidError):
    pass


DEGENERATE_CENTER = "DegenerateCenter"


def _with_t(p: FsMonoid, x: Sequence[int], t: int) -> Vector:
    r = p.ambient_rank
    return tuple(x[:r]) + (t,) + tuple(x[r:])


@dataclass(frozen=True)
class DeformationMonoid:
    base: FsMonoid
    ideal: MonoidIdeal
    rees: FsMonoid
    rees_unsaturated: FsMonoid
    warnings: tuple[str, ...] = field(default=())

    def slice_contains(self, x: Sequence[int], degree: int) -> bool:
        """Is ``x t^degree`` in the saturated Rees monoid?"""
        return self.rees.contains(_with_t(self.base, x, degree))


def deformation_monoid(p: FsMonoid, ideal: MonoidIdeal) -> DeformationMonoid:
    if not ideal.generators:
        raise EmptyIdeal("the ideal has no generators")
    if not p.is_saturated:
        raise NotSaturated("the base monoid must be saturated")
    zero = (0,) * p.dim
    gens = [_with_t(p, g, 0) for g in p.generators]
    gens.append(_with_t(p, zero, 1))
    gens += [_with_t(p, i, -1) for i in ideal.generators]
    raw = FsMonoid(p.ambient_rank + 1, gens, p.torsion)
    warnings = (DEGENERATE_CENTER,) if ideal.contains(zero) else ()
    return DeformationMonoid(p, ideal, raw.saturate(), raw, warnings)


class GenericFiber(NamedTuple):
    monoid: FsMonoid
    reference: FsMonoid
    iso: bool


def fiber_generic(d: DeformationMonoid) -> GenericFiber:
    """Invert ``t`` and compare with ``P + Z``."""
    p = d.base
    zero = (0,) * p.dim
    t, t_inv = _with_t(p, zero, 1), _with_t(p, zero, -1)
    loc = FsMonoid(d.rees.ambient_rank, d.rees.generators + (t_inv,), p.torsion)
    ref = FsMonoid(d.rees.ambient_rank,
                   [_with_t(p, g, 0) for g in p.generators] + [t, t_inv], p.torsion)
    iso = (all(ref.contains(g) for g in loc.generators)
           and all(loc.contains(g) for g in ref.generators))
    return GenericFiber(loc, ref, iso)


class _Degrees:
    """Monomials of a sharp fs monoid graded by lexicographically minimal
    Hilbert-basis expansions."""

    def __init__(self, p: FsMonoid):
        if not p.units_trivial:
            raise NotSharp("degree enumeration needs a sharp monoid")
        if not p.is_saturated:
            raise NotSaturated("degree enumeration needs a saturated monoid")
        self.p = p
        self.basis = p.hilbert
        self.grading = p._cone.grading
        self._k = p.group_rank
        self._expansion = lru_cache(maxsize=None)(self._expand)

    def weight(self, x: Sequence[int]) -> int:
        y = self.p.to_intrinsic(x)
        return dot(self.grading, y[:self._k])

    def _expand(self, x: Vector, i: int) -> tuple[int, ...] | None:
        if i == len(self.basis):
            return () if not any(x) else None
        h = self.basis[i]
        wh = self.weight(h)
        c = 0
        rest = x
        while True:
            if self.p.contains(rest):
                tail = self._expansion(rest, i + 1)
                if tail is not None:
                    return (c,) + tail
            c += 1
            rest = self.p.sub(rest, h)
            if c * wh > self.weight(x):
                return None

    def expansion(self, x: Sequence[int]) -> tuple[int, ...]:
        out = self._expansion(self.p.reduce(x), 0)
        assert out is not None
        return out

    def degree(self, x: Sequence[int]) -> int:
        return sum(self.expansion(x))

    def monomials(self, deg_max: int) -> list[Vector]:
        """Elements of degree at most ``deg_max``, sorted by degree then lex."""
        zero = (0,) * self.p.dim
        reached = {zero}
        frontier = {zero}
        for _ in range(deg_max):
            frontier = {self.p.add(x, h) for x in frontier for h in self.basis} - reached
            reached |= frontier
        out = [x for x in reached if self.degree(x) <= deg_max]
        return sorted(out, key=lambda x: (self.degree(x), x))


def fiber_zero_pieces(d: DeformationMonoid, n_max: int, deg_max: int) -> list[list[Vector]]:
    """Slice ``n`` lists the monomials of degree ``<= deg_max`` in ``I^n`` but not ``I^(n+1)``."""
    if n_max < 0 or deg_max < 0:
        raise ValueError("n_max and deg_max must be nonnegative")
    mons = _Degrees(d.base).monomials(deg_max)
    return [[x for x in mons
             if d.slice_contains(x, -n) and not d.slice_contains(x, -n - 1)]
            for n in range(n_max + 1)]


class SquareDegree(NamedTuple):
    n: int
    equal: bool
    left: tuple[Vector, ...]
    right: tuple[Vector, ...]
    left_only: tuple[Vector, ...]
    right_only: tuple[Vector, ...]


class _Power:
    def __init__(self, ideal: MonoidIdeal):
        self.ideal = ideal
        self._gens: dict[int, tuple[Vector, ...]] = {}

    def gens(self, n: int) -> tuple[Vector, ...]:
        if n not in self._gens:
            self._gens[n] = self.ideal.power_generators(n)
        return self._gens[n]

    def contains(self, x: Sequence[int], n: int, extra: Sequence[Vector] = ()) -> bool:
        """``x`` in ``extra * I^n`` (``extra`` empty means just ``I^n``)."""
        p = self.ideal.parent
        shifts = self.gens(n)
        if extra:
            shifts = {p.add(a, b) for a in shifts for b in extra}
        return any(p.contains(p.sub(x, g)) for g in shifts)


def deform_square_check(p: FsMonoid, i: MonoidIdeal, j: MonoidIdeal,
                        n_max: int, deg_max: int) -> list[SquareDegree]:
    """Compare ``J^n - I J^(n-1)`` with ``J^n - I`` degree by degree."""
    if not i.is_subset_of(j):
        raise NotNested("I is not contained in J")
    mons = _Degrees(p).monomials(deg_max)
    jp = _Power(j)
    out = []
    for n in range(1, n_max + 1):
        jn = [x for x in mons if jp.contains(x, n)]
        left = tuple(x for x in jn if not jp.contains(x, n - 1, i.generators))
        right = tuple(x for x in jn if not i.contains(x))
        ls, rs = set(left), set(right)
        out.append(SquareDegree(n, ls == rs, left, right,
                                tuple(x for x in left if x not in rs),
                                tuple(x for x in right if x not in ls)))
    return out
