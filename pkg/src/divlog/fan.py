"""Rational polyhedral fans and their subdivisions.

Fans store only maximal cones; everything else about a cone is computed
from its facet normals.  Support equality is decided exactly: a family
of ``d``-dimensional cones forming a fan inside a ``d``-dimensional cone
covers it iff every facet not lying on the boundary is shared by exactly two
of them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from divlog.cones import RankTooLarge, check_rank, dual, h_to_v, scale_to_integer
from divlog.lattice import IntMatrix, Vector, dot, is_primitive, primitive
from divlog.monoid import FsMonoid, from_cone


class FanError(ValueError):
    pass


class ConeError(FanError):
    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


class RayOutsideSupport(FanError):
    pass


class SupportMismatch(FanError):
    pass


class InvalidFanMorphism(FanError):
    pass


class NotASubdivision(FanError):
    pass


__all__ = [
    "Cone", "Fan", "FanMorphism", "Subdivision", "FanDefect", "validate_fan",
    "validate_fan_data", "is_subdivision", "star_subdivision", "common_refinement",
    "pullback_subdivision", "find_cone", "cone_monoid", "star_sequence",
    "RankTooLarge", "ConeError", "RayOutsideSupport", "SupportMismatch",
    "InvalidFanMorphism", "NotASubdivision", "FanError",
]


@dataclass(frozen=True)
class Cone:
    """Strongly convex rational cone given by its primitive extreme rays."""

    ambient_rank: int
    rays: tuple[Vector, ...]

    def __post_init__(self) -> None:
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        for r in rays:
            if len(r) != self.ambient_rank:
                raise ConeError("shape", f"ray {list(r)} does not have length {self.ambient_rank}")
            if not any(r):
                raise ConeError("zero-ray", "rays must be nonzero")
            if not is_primitive(r):
                raise ConeError("non-primitive", f"ray {list(r)} is not primitive")
        if len(set(rays)) != len(rays):
            raise ConeError("duplicate", "duplicate rays")
        object.__setattr__(self, "rays", tuple(sorted(rays)))
        check_rank(self.ambient_rank)
        extreme, lin = h_to_v(self.ambient_rank, self.normals, self.equations)
        if lin:
            raise ConeError("lineality", f"cone on {self._ray_list()} contains a line")
        if set(extreme) != set(self.rays):
            raise ConeError("non-extreme", f"cone on {self._ray_list()} has non-extreme rays")

    @classmethod
    def _make(cls, ambient_rank: int, rays: Iterable[Vector]) -> Cone:
        """Build from rays already known to be primitive and extreme."""
        c = object.__new__(cls)
        object.__setattr__(c, "ambient_rank", ambient_rank)
        object.__setattr__(c, "rays", tuple(sorted(rays)))
        return c

    @classmethod
    def of(cls, ambient_rank: int, gens: Iterable[Sequence[int]]) -> Cone:
        """Cone generated by arbitrary vectors (made primitive, redundancy removed)."""
        gens = [primitive(g) for g in gens if any(g)]
        if not gens:
            return cls._make(ambient_rank, ())
        drays, dlin = dual(ambient_rank, gens)
        rays, lin = h_to_v(ambient_rank, drays, dlin)
        if lin:
            raise ConeError("lineality", "generated cone contains a line")
        return cls._make(ambient_rank, rays)

    @classmethod
    def zero(cls, ambient_rank: int) -> Cone:
        return cls._make(ambient_rank, ())

    def _ray_list(self) -> list[list[int]]:
        return [list(r) for r in self.rays]

    @cached_property
    def _h(self) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
        drays, dlin = dual(self.ambient_rank, self.rays)
        return tuple(drays), tuple(dlin)

    @property
    def normals(self) -> tuple[Vector, ...]:
        """Inner facet normals (covectors), taken inside the linear span."""
        return self._h[0]

    @property
    def equations(self) -> tuple[Vector, ...]:
        """Basis of the covectors vanishing on the cone."""
        return self._h[1]

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    def contains(self, x: Sequence) -> bool:
        x = scale_to_integer(x)
        return (all(dot(e, x) == 0 for e in self.equations)
                and all(dot(u, x) >= 0 for u in self.normals))

    __contains__ = contains

    def relint_contains(self, x: Sequence) -> bool:
        x = scale_to_integer(x)
        return (all(dot(e, x) == 0 for e in self.equations)
                and all(dot(u, x) > 0 for u in self.normals))

    def contains_cone(self, other: Cone) -> bool:
        return all(self.contains(r) for r in other.rays)

    def facets(self) -> list[Cone]:
        out = []
        for u in self.normals:
            out.append(Cone._make(self.ambient_rank, [r for r in self.rays if dot(u, r) == 0]))
        return out

    @cached_property
    def _faces(self) -> frozenset:
        seen = {self}
        todo = [self]
        while todo:
            c = todo.pop()
            for f in c.facets():
                if f not in seen:
                    seen.add(f)
                    todo.append(f)
        return frozenset(seen)

    def faces(self) -> list[Cone]:
        """All faces, including the zero cone and the cone itself."""
        return sorted(self._faces, key=lambda c: (c.dim, c.rays))

    def is_face_of(self, other: Cone) -> bool:
        return self in other._faces

    def on_boundary(self, face: Cone) -> bool:
        """True iff ``face`` (a subcone) lies in a facet of this cone."""
        return any(all(dot(u, r) == 0 for r in face.rays) for u in self.normals)

    def intersect(self, other: Cone) -> Cone:
        rays, lin = h_to_v(self.ambient_rank, self.normals + other.normals,
                           self.equations + other.equations)
        assert not lin
        return Cone._make(self.ambient_rank, rays)

    def preimage_intersect(self, matrix: IntMatrix, target: Cone) -> Cone:
        """This cone intersected with ``matrix^-1(target)``."""
        pull = [tuple(sum(u[i] * matrix[i, j] for i in range(matrix.nrows))
                      for j in range(matrix.ncols)) for u in target.normals]
        pull_eq = [tuple(sum(e[i] * matrix[i, j] for i in range(matrix.nrows))
                         for j in range(matrix.ncols)) for e in target.equations]
        rays, lin = h_to_v(self.ambient_rank, self.normals + tuple(pull),
                           self.equations + tuple(pull_eq))
        assert not lin
        return Cone._make(self.ambient_rank, rays)

    def image(self, matrix: IntMatrix) -> list[Vector]:
        return [matrix.apply(r) for r in self.rays]

    def __repr__(self) -> str:
        return f"Cone({self._ray_list()})"


def _maximal(cones: Iterable[Cone]) -> list[Cone]:
    cones = sorted(set(cones), key=lambda c: (-c.dim, c.rays))
    out: list[Cone] = []
    for c in cones:
        if not any(m.contains_cone(c) for m in out):
            out.append(c)
    return out


@dataclass(frozen=True)
class Fan:
    """Finite fan given by its maximal cones (stored in canonical order)."""

    ambient_rank: int
    max_cones: tuple[Cone, ...]

    def __post_init__(self) -> None:
        for c in self.max_cones:
            if c.ambient_rank != self.ambient_rank:
                raise FanError("cone ambient rank does not match the fan")
        object.__setattr__(self, "max_cones",
                           tuple(sorted(set(self.max_cones), key=lambda c: c.rays)))

    @classmethod
    def from_rays(cls, ambient_rank: int, cones: Iterable[Iterable[Sequence[int]]]) -> Fan:
        return cls(ambient_rank, tuple(Cone(ambient_rank, tuple(map(tuple, c))) for c in cones))

    @classmethod
    def from_cones(cls, ambient_rank: int, cones: Iterable[Cone]) -> Fan:
        """Fan whose maximal cones are the maximal members of ``cones``."""
        return cls(ambient_rank, tuple(_maximal(cones)))

    @cached_property
    def cones(self) -> tuple[Cone, ...]:
        """All cones of the fan, by dimension then rays."""
        out = set()
        for c in self.max_cones:
            out |= c._faces
        return tuple(sorted(out, key=lambda c: (c.dim, c.rays)))

    @property
    def rays(self) -> list[Vector]:
        return sorted({r for c in self.max_cones for r in c.rays})

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.max_cones), default=-1)

    def support_contains(self, x: Sequence) -> bool:
        return any(c.contains(x) for c in self.max_cones)

    def as_lists(self) -> list[list[list[int]]]:
        return [c._ray_list() for c in self.max_cones]

    def __repr__(self) -> str:
        return f"Fan({self.ambient_rank}, {self.as_lists()})"


class FanDefect(NamedTuple):
    kind: str
    cones: tuple[int, ...]
    message: str


def validate_fan(f: Fan) -> FanDefect | None:
    """First violation of the fan axioms, or None."""
    cs = f.max_cones
    for i, j in combinations(range(len(cs)), 2):
        a, b = cs[i], cs[j]
        if a.contains_cone(b) or b.contains_cone(a):
            return FanDefect("containment", (i, j),
                             f"max cone {i} and max cone {j} are nested")
        meet = a.intersect(b)
        if not (meet.is_face_of(a) and meet.is_face_of(b)):
            return FanDefect("non-face intersection", (i, j),
                             f"max cones {i} and {j} meet in {meet._ray_list()}, "
                             "which is not a face of both")
    return None


def validate_fan_data(ambient_rank: int, cones: Sequence[Sequence[Sequence[int]]]) -> FanDefect | None:
    """Like :func:`validate_fan`, starting from raw ray lists."""
    built = []
    for i, rays in enumerate(cones):
        try:
            built.append(Cone(ambient_rank, tuple(map(tuple, rays))))
        except ConeError as exc:
            return FanDefect(exc.kind, (i,), str(exc))
    raw = Fan(ambient_rank, tuple(built))
    if len(raw.max_cones) != len(built):
        return FanDefect("duplicate", (), "a maximal cone is listed twice")
    return validate_fan(raw)


def _covers(sigma: Cone, pieces: Iterable[Cone]) -> bool:
    """Do the ``dim sigma``-dimensional cones of a fan inside ``sigma`` cover it?"""
    d = sigma.dim
    full = [p for p in set(pieces) if p.dim == d]
    if not full:
        return False
    count: Counter = Counter()
    for p in full:
        for facet in p.facets():
            if not sigma.on_boundary(facet):
                count[facet] += 1
    return all(n == 2 for n in count.values())


def is_subdivision(candidate: Fan, base: Fan) -> bool:
    """Every candidate cone lies in a base cone and the supports agree."""
    if candidate.ambient_rank != base.ambient_rank:
        return False
    if validate_fan(candidate) is not None:
        return False
    for c in candidate.max_cones:
        if not any(s.contains_cone(c) for s in base.max_cones):
            return False
    all_cones = candidate.cones
    for s in base.max_cones:
        if not _covers(s, [c for c in all_cones if c.dim == s.dim and s.contains_cone(c)]):
            return False
    return True


def star_subdivision(f: Fan, ray: Sequence[int]) -> Fan:
    """Star subdivision of ``f`` at ``ray`` (made primitive)."""
    v = primitive(ray)
    if len(v) != f.ambient_rank:
        raise FanError("ray has the wrong length")
    if not f.support_contains(v):
        raise RayOutsideSupport(f"{list(v)} is not in the support of the fan")
    if v in f.rays:
        return f
    out = []
    for c in f.max_cones:
        if not c.contains(v):
            out.append(c)
            continue
        for facet in c.facets():
            if not facet.contains(v):
                out.append(Cone.of(f.ambient_rank, facet.rays + (v,)))
    return Fan.from_cones(f.ambient_rank, out)


def common_refinement(a: Fan, b: Fan) -> Fan:
    """Coarsest common refinement of two fans with the same support."""
    if a.ambient_rank != b.ambient_rank:
        raise SupportMismatch("fans live in different lattices")
    pieces = [s.intersect(t) for s in a.max_cones for t in b.max_cones]
    out = Fan.from_cones(a.ambient_rank, pieces)
    if not (is_subdivision(out, a) and is_subdivision(out, b)):
        raise SupportMismatch("the fans do not have the same support")
    return out


def preimage_fan(source: Fan, matrix: IntMatrix, target: Fan) -> tuple[Fan, bool]:
    """Cones ``delta & matrix^-1(sigma)`` and whether they cover ``|source|``."""
    if matrix.shape != (target.ambient_rank, source.ambient_rank):
        raise FanError(f"matrix shape {matrix.shape} does not match the fans")
    pieces = []
    covered = True
    for d in source.max_cones:
        local = [d.preimage_intersect(matrix, s) for s in target.max_cones]
        pieces += local
        if covered:
            faces = set()
            for p in local:
                faces |= p._faces
            covered = _covers(d, faces)
    return Fan.from_cones(source.ambient_rank, pieces), covered


@dataclass(frozen=True)
class FanMorphism:
    """Lattice map sending every source cone into some target cone."""

    source: Fan
    target: Fan
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.target.ambient_rank, self.source.ambient_rank):
            raise InvalidFanMorphism("matrix shape does not match the fans")
        for i, c in enumerate(self.source.max_cones):
            img = c.image(self.matrix)
            if not any(all(t.contains(v) for v in img) for t in self.target.max_cones):
                raise InvalidFanMorphism(f"source cone {i} maps into no target cone")

    @classmethod
    def is_valid(cls, source: Fan, target: Fan, matrix: IntMatrix) -> bool:
        try:
            cls(source, target, matrix)
        except InvalidFanMorphism:
            return False
        return True


@dataclass(frozen=True)
class Subdivision:
    """``fan`` refines ``base`` with the same support."""

    base: Fan
    fan: Fan

    def __post_init__(self) -> None:
        if not is_subdivision(self.fan, self.base):
            raise NotASubdivision("fan is not a subdivision of the base")

    def as_morphism(self) -> FanMorphism:
        return FanMorphism(self.fan, self.base, IntMatrix.identity(self.base.ambient_rank))

    @classmethod
    def trivial(cls, f: Fan) -> Subdivision:
        return cls(f, f)


def pullback_subdivision(f: FanMorphism, s: Subdivision) -> Subdivision:
    """Subdivide the source of ``f`` by the preimages of the cones of ``s``."""
    if s.base != f.target:
        raise FanError("subdivision does not refine the target of the morphism")
    fan, covered = preimage_fan(f.source, f.matrix, s.fan)
    assert covered
    return Subdivision(f.source, fan)


def find_cone(f: Fan, v: Sequence) -> Cone | None:
    """The cone of ``f`` whose relative interior contains ``v``."""
    for c in f.cones:
        if c.relint_contains(v):
            return c
    return None


def cone_monoid(c: Cone) -> FsMonoid:
    """Lattice points of the dual cone, as a saturated monoid."""
    check_rank(c.ambient_rank)
    gens = list(c.normals)
    for e in c.equations:
        gens += [e, tuple(-x for x in e)]
    return from_cone(c.ambient_rank, gens)


def star_sequence(s: Subdivision) -> list[Vector]:
    """Rays whose successive star subdivisions turn ``s.base`` into ``s.fan``.

    Only two-dimensional lattices are supported; rays are inserted by angle.
    """
    if s.base.ambient_rank != 2:
        raise FanError("star-subdivision factorization is implemented in rank 2 only")
    from math import atan2
    new = [r for r in s.fan.rays if r not in s.base.rays]
    new.sort(key=lambda r: (atan2(r[1], r[0]), r))
    f = s.base
    for r in new:
        f = star_subdivision(f, r)
    if f != s.fan:
        raise FanError("subdivision is not obtained by inserting rays")
    return new
