"""Fans glued along open subfans.

Points of a glued space are cone orbits: cones of the charts identified by
the transition matrices.  Each overlap carries a single unimodular matrix.
Every nonempty overlap contains the zero cone, whose toric chart is the
whole torus, so cocycle conditions compare the matrices themselves.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from divlog.fan import Cone, Fan, FanError, validate_fan
from divlog.lattice import IntMatrix


class GluingError(FanError):
    def __init__(self, defect: GluingDefect):
        self.defect = defect
        super().__init__(defect.message)


class GluingDefect(NamedTuple):
    condition: str
    indices: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class OpenSubfan:
    """Face-closed subset of the cones of ``parent``, given by generating cones."""

    parent: Fan
    cones: tuple[Cone, ...]

    def __post_init__(self) -> None:
        allowed = set(self.parent.cones)
        for c in self.cones:
            if c not in allowed:
                raise FanError(f"{c!r} is not a cone of the parent fan")
        closure = set()
        for c in self.cones:
            closure |= c._faces
        top = [c for c in closure if not any(c != d and c.is_face_of(d) for d in closure)]
        object.__setattr__(self, "cones", tuple(sorted(top, key=lambda c: c.rays)))

    @classmethod
    def whole(cls, f: Fan) -> OpenSubfan:
        return cls(f, f.max_cones)

    @classmethod
    def empty(cls, f: Fan) -> OpenSubfan:
        return cls(f, ())

    @classmethod
    def affine(cls, f: Fan, index: int) -> OpenSubfan:
        """The open chart of one maximal cone."""
        return cls(f, (f.max_cones[index],))

    @cached_property
    def all_cones(self) -> frozenset:
        out = set()
        for c in self.cones:
            out |= c._faces
        return frozenset(out)

    def intersect(self, other: OpenSubfan) -> OpenSubfan:
        return OpenSubfan(self.parent, tuple(self.all_cones & other.all_cones))


def _image(m: IntMatrix, c: Cone) -> Cone:
    return Cone.of(m.nrows, [m.apply(r) for r in c.rays])


@dataclass(frozen=True)
class FanSpace:
    """Gluing data; ``overlaps[i, j]`` is an open of chart ``i`` and
    ``transitions[i, j]`` carries it onto ``overlaps[j, i]``.  Missing
    pairs ``(i, j)`` with ``i != j`` are empty overlaps; missing ``(i, i)``
    entries default to the whole chart with the identity."""

    charts: tuple[Fan, ...]
    overlaps: Mapping[tuple[int, int], OpenSubfan] = field(default_factory=dict)
    transitions: Mapping[tuple[int, int], IntMatrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ov = dict(self.overlaps)
        tr = dict(self.transitions)
        for i, f in enumerate(self.charts):
            ov.setdefault((i, i), OpenSubfan.whole(f))
            tr.setdefault((i, i), IntMatrix.identity(f.ambient_rank))
        object.__setattr__(self, "overlaps", ov)
        object.__setattr__(self, "transitions", tr)

    def __hash__(self) -> int:
        return hash(self.charts)

    def overlap(self, i: int, j: int) -> OpenSubfan:
        got = self.overlaps.get((i, j))
        return got if got is not None else OpenSubfan.empty(self.charts[i])

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(set(self.overlaps) | set(self.transitions))


def validate_gluing(s: FanSpace) -> GluingDefect | None:
    """First failure of the gluing conditions, or None."""
    n = len(s.charts)
    for (i, j) in s.pairs():
        if not (0 <= i < n and 0 <= j < n):
            return GluingDefect("structure", (i, j), f"overlap ({i}, {j}) names a missing chart")
        if ((i, j) in s.overlaps) != ((i, j) in s.transitions) or (j, i) not in s.overlaps:
            return GluingDefect("structure", (i, j),
                                f"overlap ({i}, {j}) lacks its transition or its partner")
        u = s.overlaps[i, j]
        if u.parent != s.charts[i]:
            return GluingDefect("structure", (i, j), f"overlap ({i}, {j}) is not an open of chart {i}")
        m = s.transitions[i, j]
        if m.shape != (s.charts[j].ambient_rank, s.charts[i].ambient_rank) or not m.is_unimodular():
            return GluingDefect("structure", (i, j),
                                f"transition ({i}, {j}) is not a unimodular lattice isomorphism")
        if {_image(m, c) for c in u.all_cones} != set(s.overlap(j, i).all_cones):
            return GluingDefect("structure", (i, j),
                                f"transition ({i}, {j}) does not carry U_{i}{j} onto U_{j}{i}")
    for i, f in enumerate(s.charts):
        if s.overlap(i, i).all_cones != OpenSubfan.whole(f).all_cones:
            return GluingDefect("i", (i,), f"U_{i}{i} is not the whole chart {i}")
        if s.transitions[i, i] != IntMatrix.identity(f.ambient_rank):
            return GluingDefect("i", (i,), f"phi_{i}{i} is not the identity")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                uij, uik = s.overlap(i, j), s.overlap(i, k)
                meet = uij.all_cones & uik.all_cones
                if not meet:
                    continue
                phi = s.transitions[i, j]
                target = s.overlap(j, i).all_cones & s.overlap(j, k).all_cones
                if any(_image(phi, c) not in target for c in meet):
                    return GluingDefect("ii", (i, j, k),
                                        f"phi_{i}{j} does not map U_{i}{j} & U_{i}{k} "
                                        f"into U_{j}{i} & U_{j}{k}")
                if s.transitions[j, k] @ phi != s.transitions[i, k]:
                    return GluingDefect("iii", (i, j, k),
                                        f"phi_{j}{k} phi_{i}{j} != phi_{i}{k} on U_{i}{j} & U_{i}{k}")
    return None


@dataclass(frozen=True)
class SpaceOpen:
    """Open subspace of a glued space, as a set of cone orbits."""

    orbits: frozenset

    def union(self, other: SpaceOpen) -> SpaceOpen:
        return SpaceOpen(self.orbits | other.orbits)


class GluedSpace:
    def __init__(self, data: FanSpace):
        self.data = data
        parent: dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        nodes = [(i, c) for i, f in enumerate(data.charts) for c in f.cones]
        for x in nodes:
            parent[x] = x
        for (i, j), u in sorted(data.overlaps.items()):
            m = data.transitions[i, j]
            for c in u.all_cones:
                a, b = find((i, c)), find((j, _image(m, c)))
                if a != b:
                    parent[max(a, b, key=_node_key)] = min(a, b, key=_node_key)
        groups: dict = {}
        for x in nodes:
            groups.setdefault(find(x), []).append(x)
        orbits = sorted((tuple(sorted(g, key=_node_key)) for g in groups.values()),
                        key=lambda g: _node_key(g[0]))
        self.orbits: list[tuple[tuple[int, Cone], ...]] = orbits
        self._index = {x: k for k, g in enumerate(orbits) for x in g}

    @property
    def charts(self) -> tuple[Fan, ...]:
        return self.data.charts

    def orbit_of(self, chart: int, cone: Cone) -> int:
        return self._index[chart, cone]

    def chart_orbits(self, chart: int) -> list[int]:
        return sorted({self._index[chart, c] for c in self.charts[chart].cones})

    def open_of(self, chart: int, u: OpenSubfan) -> SpaceOpen:
        if u.parent != self.charts[chart]:
            raise FanError(f"open is not a subfan of chart {chart}")
        return SpaceOpen(frozenset(self._index[chart, c] for c in u.all_cones))

    def cones_in(self, op: SpaceOpen, chart: int) -> OpenSubfan:
        f = self.charts[chart]
        return OpenSubfan(f, tuple(c for c in f.cones if self._index[chart, c] in op.orbits))

    def whole(self) -> SpaceOpen:
        return SpaceOpen(frozenset(range(len(self.orbits))))

    def as_fan(self) -> Fan | None:
        """Realize the space as one fan in the lattice of chart 0, if it is one."""
        if not self.charts:
            return None
        to0 = {0: IntMatrix.identity(self.charts[0].ambient_rank)}
        todo = deque([0])
        while todo:
            j = todo.popleft()
            for (a, b) in self.data.pairs():
                if a == j and b not in to0 and self.data.overlap(a, b).cones:
                    # lattice of b -> lattice of j -> lattice of 0
                    to0[b] = to0[j] @ self.data.transitions[b, a]
                    todo.append(b)
        if len(to0) != len(self.charts):
            return None
        cones = {_image(to0[i], c): k for k, g in enumerate(self.orbits) for i, c in g}
        images: dict[int, set] = {}
        for c, k in cones.items():
            images.setdefault(k, set()).add(c)
        if any(len(v) != 1 for v in images.values()):
            return None
        f = Fan.from_cones(self.charts[0].ambient_rank, cones)
        if validate_fan(f) is not None or len(f.cones) != len(self.orbits):
            return None
        return f


def _node_key(x: tuple[int, Cone]):
    return (x[0], x[1].dim, x[1].rays)


def glue(data: FanSpace) -> GluedSpace:
    defect = validate_gluing(data)
    if defect is not None:
        raise GluingError(defect)
    return GluedSpace(data)


def is_cover(space: GluedSpace, opens: Iterable[tuple[int, OpenSubfan]]) -> bool:
    return union_opens(space, opens) == space.whole()


def union_opens(space: GluedSpace, opens: Iterable[tuple[int, OpenSubfan]]) -> SpaceOpen:
    out = SpaceOpen(frozenset())
    for i, u in opens:
        out = out.union(space.open_of(i, u))
    return out


def p1_space() -> FanSpace:
    """Two copies of the ray fan of A^1 glued along the torus by ``x -> -x``."""
    a1 = Fan.from_rays(1, [[(1,)]])
    zero = OpenSubfan(a1, (Cone.zero(1),))
    neg = IntMatrix.from_rows([[-1]])
    return FanSpace((a1, a1), {(0, 1): zero, (1, 0): zero}, {(0, 1): neg, (1, 0): neg})


def space_from_cover(charts: Sequence[Fan]) -> FanSpace:
    """Charts that are subfans of one fan, glued by the identity along common cones."""
    overlaps, transitions = {}, {}
    for i, a in enumerate(charts):
        for j, b in enumerate(charts):
            if i != j:
                common = set(a.cones) & set(b.cones)
                if common:
                    overlaps[i, j] = OpenSubfan(a, tuple(common))
                    transitions[i, j] = IntMatrix.identity(a.ambient_rank)
    return FanSpace(tuple(charts), overlaps, transitions)
