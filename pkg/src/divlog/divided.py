"""Morphisms of fans up to subdivision of the source.

A representative is a lattice map together with a subdivision of the source
on which it becomes a fan morphism.  The subdivision is only a certificate:
two representatives with the same endpoints are equal iff their matrices
agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from divlog.fan import (Fan, FanError, FanMorphism, Subdivision, common_refinement,
                        preimage_fan, pullback_subdivision)
from divlog.lattice import IntMatrix


class NotInvertible(FanError):
    pass


@dataclass(frozen=True)
class DividedMorphismRep:
    source: Fan
    source_subdivision: Subdivision
    target: Fan
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.source_subdivision.base != self.source:
            raise FanError("source subdivision does not refine the source")
        FanMorphism(self.source_subdivision.fan, self.target, self.matrix)

    @property
    def morphism(self) -> FanMorphism:
        return FanMorphism(self.source_subdivision.fan, self.target, self.matrix)


def make_rep(source: Fan, target: Fan, matrix: IntMatrix) -> DividedMorphismRep | None:
    """Representative on the coarsest pullback subdivision, or None if
    ``matrix`` does not carry ``|source|`` into ``|target|``."""
    fan, covered = preimage_fan(source, matrix, target)
    if not covered:
        return None
    return DividedMorphismRep(source, Subdivision(source, fan), target, matrix)


def identity_rep(f: Fan) -> DividedMorphismRep:
    return DividedMorphismRep(f, Subdivision.trivial(f), f, IntMatrix.identity(f.ambient_rank))


def subdivision_rep(s: Subdivision) -> DividedMorphismRep:
    """The subdivision map ``s.fan -> s.base`` as a representative."""
    return DividedMorphismRep(s.fan, Subdivision.trivial(s.fan), s.base,
                              IntMatrix.identity(s.base.ambient_rank))


def eq_divided(a: DividedMorphismRep, b: DividedMorphismRep) -> bool:
    return a.source == b.source and a.target == b.target and a.matrix == b.matrix


def refine_rep(a: DividedMorphismRep, s: Subdivision) -> DividedMorphismRep:
    """Pass to a finer certificate: the common refinement with ``s``."""
    if s.base != a.source:
        raise FanError("subdivision does not refine the source")
    fan = common_refinement(a.source_subdivision.fan, s.fan)
    return DividedMorphismRep(a.source, Subdivision(a.source, fan), a.target, a.matrix)


def compose_divided(a: DividedMorphismRep, b: DividedMorphismRep) -> DividedMorphismRep:
    """``b`` after ``a``."""
    if a.target != b.source:
        raise FanError("representatives are not composable")
    pulled = pullback_subdivision(a.morphism, b.source_subdivision)
    return DividedMorphismRep(a.source, Subdivision(a.source, pulled.fan), b.target,
                              b.matrix @ a.matrix)


def is_iso_divided(a: DividedMorphismRep) -> bool:
    if a.matrix.nrows != a.matrix.ncols or not a.matrix.is_unimodular():
        return False
    return make_rep(a.target, a.source, a.matrix.inverse()) is not None


def inverse(a: DividedMorphismRep) -> DividedMorphismRep:
    if a.matrix.nrows != a.matrix.ncols or not a.matrix.is_unimodular():
        raise NotInvertible("matrix is not unimodular")
    out = make_rep(a.target, a.source, a.matrix.inverse())
    if out is None:
        raise NotInvertible("the matrix does not map the supports onto each other")
    return out


def exactify(a: DividedMorphismRep) -> DividedMorphismRep:
    """Equal representative carried by the pullback of the target fan."""
    out = make_rep(a.source, a.target, a.matrix)
    assert out is not None
    return out
