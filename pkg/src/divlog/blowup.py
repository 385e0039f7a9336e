"""Log blow-ups of affine toric charts along monomial ideals.

The blow-up of the chart of a cone ``sigma`` along an ideal generated by
covectors ``g_1..g_r`` subdivides ``sigma`` into the domains of linearity of
``x -> min_i <g_i, x>``.  On each piece the pulled-back ideal is principal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from divlog.cones import h_to_v
from divlog.fan import Cone, Fan, FanError, is_subdivision
from divlog.lattice import Vector, dot
from divlog.monoid import MonoidIdeal


class EmptyIdeal(ValueError):
    pass


class BlowupError(FanError):
    pass


@dataclass(frozen=True)
class BlowupResult:
    base: Fan
    subdivision: Fan
    per_max_cone_generator: tuple[tuple[Cone, Vector], ...]

    @property
    def generator_map(self) -> dict[Cone, Vector]:
        return dict(self.per_max_cone_generator)


def _generators(ideal: MonoidIdeal | Sequence[Sequence[int]]) -> list[Vector]:
    gens = ideal.generators if isinstance(ideal, MonoidIdeal) else ideal
    return sorted({tuple(int(x) for x in g) for g in gens})


def ideal_pullback_principal(ideal: MonoidIdeal | Sequence[Sequence[int]],
                             cone: Cone) -> Vector | None:
    """A generator ``g`` with ``g' - g`` nonnegative on ``cone`` for every generator ``g'``."""
    gens = _generators(ideal)
    for g in gens:
        if all(dot(h, r) >= dot(g, r) for h in gens for r in cone.rays):
            return g
    return None


def log_blowup(base: Fan, ideal: MonoidIdeal | Sequence[Sequence[int]],
               cone_index: int = 0) -> BlowupResult:
    """Blow up the chart of ``base.max_cones[cone_index]`` along ``ideal``."""
    gens = _generators(ideal)
    if not gens:
        raise EmptyIdeal("the ideal has no generators")
    sigma = base.max_cones[cone_index]
    n = base.ambient_rank
    for g in gens:
        if len(g) != n:
            raise BlowupError(f"ideal generator {list(g)} has the wrong length")
        if any(dot(g, r) < 0 for r in sigma.rays):
            raise BlowupError(f"ideal generator {list(g)} is not in the dual monoid")
    pieces: list[tuple[Cone, Vector]] = []
    seen = set()
    for g in gens:
        ineqs = list(sigma.normals)
        ineqs += [tuple(a - b for a, b in zip(h, g)) for h in gens if h != g]
        rays, _ = h_to_v(n, ineqs, sigma.equations)
        piece = Cone._make(n, rays)
        if piece.dim < sigma.dim or piece in seen:
            continue
        seen.add(piece)
        pieces.append((piece, g))
    others = [c for i, c in enumerate(base.max_cones) if i != cone_index]
    sub = Fan(n, tuple(others + [p for p, _ in pieces]))
    if not is_subdivision(sub, base):
        raise BlowupError("the blow-up does not extend to the rest of the fan")
    return BlowupResult(base, sub, tuple(sorted(pieces, key=lambda pg: pg[0].rays)))
