import itertools
import random
from fractions import Fraction

import pytest

from divlog.cones import RankTooLarge
from divlog.fan import (Cone, ConeError, Fan, FanError, FanMorphism, InvalidFanMorphism,
                        NotASubdivision, RayOutsideSupport, Subdivision, SupportMismatch,
                        common_refinement, cone_monoid, find_cone, is_subdivision,
                        pullback_subdivision, star_sequence, star_subdivision, validate_fan,
                        validate_fan_data)
from divlog.lattice import IntMatrix
from divlog.monoid import FsMonoid

from catalog import A1_GM, A2, A2_STAR, A3, P1, P1_A1, random_quadrant_subdivision
from oracles import directions_2d, in_cone_2d, support_mask_2d

I2 = IntMatrix.identity(2)


def test_cone_canonical_form():
    c = Cone(2, ((0, 1), (1, 0)))
    assert c.rays == ((0, 1), (1, 0))
    assert c.dim == 2
    assert set(c.normals) == {(1, 0), (0, 1)}


@pytest.mark.parametrize("rays,kind", [
    (((2, 0), (0, 1)), "non-primitive"),
    (((1, 0), (1, 1), (0, 1)), "non-extreme"),
    (((1, 0), (-1, 0)), "lineality"),
    (((0, 0),), "zero-ray"),
])
def test_cone_rejects_bad_rays(rays, kind):
    with pytest.raises(ConeError) as exc:
        Cone(2, rays)
    assert exc.value.kind == kind


def test_cone_membership_agrees_with_oracle_on_box():
    for rays in [((1, 0), (1, 2)), ((1, 3), (-2, 1)), ((1, 1),), ((-1, 0), (0, -1))]:
        c = Cone(2, rays)
        for v in itertools.product(range(-6, 7), repeat=2):
            assert c.contains(v) == in_cone_2d(list(rays), v)


def test_rank_cap():
    with pytest.raises(RankTooLarge):
        Cone(5, ((1, 0, 0, 0, 0),))


def test_faces_of_simplicial_cone():
    faces = Cone(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1))).faces()
    assert len(faces) == 8
    assert [f.dim for f in faces].count(1) == 3


def test_validate_fan_examples():
    assert validate_fan(A2) is None
    assert validate_fan(P1) is None
    d = validate_fan_data(2, [[(1, 0), (0, 1)], [(1, 1), (-1, 1)]])
    assert d.kind == "non-face intersection" and d.cones == (0, 1)
    assert validate_fan_data(2, [[(2, 0), (0, 1)]]).kind == "non-primitive"
    assert validate_fan_data(2, [[(1, 0), (-1, 0)]]).kind == "lineality"
    assert validate_fan_data(2, [[(1, 0), (0, 1)], [(1, 0)]]).kind == "containment"


def test_subdivision_examples():
    assert is_subdivision(A2_STAR, A2)
    assert is_subdivision(A2, A2)
    assert not is_subdivision(A1_GM, A2)
    assert not is_subdivision(A2, A2_STAR)


def test_star_subdivision_examples():
    assert A2_STAR.as_lists() == [[[0, 1], [1, 1]], [[1, 0], [1, 1]]]
    assert star_subdivision(A2_STAR, (1, 1)) is A2_STAR
    s3 = star_subdivision(A3, (1, 1, 1))
    assert len(s3.max_cones) == 3 and is_subdivision(s3, A3)
    with pytest.raises(RayOutsideSupport):
        star_subdivision(A2, (-1, 1))


def test_star_on_boundary_ray_splits_both_neighbours():
    f = star_subdivision(P1_A1, (0, 1))
    assert len(f.max_cones) == 2
    g = star_subdivision(A3, (1, 1, 0))
    assert len(g.max_cones) == 2 and is_subdivision(g, A3)


def test_common_refinement_examples():
    b = star_subdivision(A2, (1, 2))
    r = common_refinement(A2_STAR, b)
    assert r.as_lists() == [[[0, 1], [1, 2]], [[1, 0], [1, 1]], [[1, 1], [1, 2]]]
    assert common_refinement(A2, A2) == A2
    assert common_refinement(A2, A2_STAR) == A2_STAR
    with pytest.raises(SupportMismatch):
        common_refinement(A2, P1_A1)


def test_random_refinements_are_subdivisions():
    rng = random.Random(7)
    for _ in range(25):
        a, b = random_quadrant_subdivision(rng), random_quadrant_subdivision(rng)
        r = common_refinement(a, b)
        assert is_subdivision(r, a) and is_subdivision(r, b)
        assert len(r.max_cones) >= max(len(a.max_cones), len(b.max_cones))
        pieces = {s.intersect(t) for s in a.max_cones for t in b.max_cones}
        assert set(r.max_cones) <= pieces
        assert common_refinement(a, a) == a


def test_pullback_examples():
    s = Subdivision(A2, A2_STAR)
    ident = FanMorphism(A2, A2, I2)
    assert pullback_subdivision(ident, s).fan == A2_STAR
    inc = FanMorphism(A1_GM, A2, I2)
    assert pullback_subdivision(inc, s).fan == A1_GM


def test_pullback_along_nontrivial_map():
    # (x, y) -> (x + y, y) carries the quadrant onto the cone <(1,0),(1,1)>
    m = IntMatrix.from_rows([[1, 1], [0, 1]])
    f = FanMorphism(A2, A2, m)
    s = Subdivision(A2, star_subdivision(A2, (2, 1)))
    out = pullback_subdivision(f, s)
    assert out.fan.as_lists() == [[[0, 1], [1, 1]], [[1, 0], [1, 1]]]


def test_pullback_twice_equals_pullback_of_refinement():
    rng = random.Random(11)
    f = FanMorphism(A2, A2, IntMatrix.from_rows([[1, 1], [0, 1]]))
    for _ in range(10):
        s1 = random_quadrant_subdivision(rng, 2)
        s2 = random_quadrant_subdivision(rng, 2, base=s1)
        once = pullback_subdivision(f, Subdivision(A2, s2))
        p1 = pullback_subdivision(f, Subdivision(A2, s1))
        twice = pullback_subdivision(FanMorphism(p1.fan, s1, f.matrix), Subdivision(s1, s2))
        assert once.fan == twice.fan


def test_invalid_morphism_rejected():
    with pytest.raises(InvalidFanMorphism):
        FanMorphism(P1_A1, A2, I2)
    with pytest.raises(NotASubdivision):
        Subdivision(A2_STAR, A2)


def test_find_cone_examples():
    assert find_cone(A2, (1, 1)) == A2.max_cones[0]
    assert find_cone(A2_STAR, (1, 1)) == Cone(2, ((1, 1),))
    assert find_cone(A2, (-1, 0)) is None
    assert find_cone(A2_STAR, (Fraction(1, 2), Fraction(1, 3))) == Cone(2, ((1, 0), (1, 1)))
    assert find_cone(A2, (0, 0)).dim == 0


def test_cone_monoid_examples():
    assert cone_monoid(A2.max_cones[0]) == FsMonoid.free(2)
    assert cone_monoid(Cone(2, ((1, 0), (1, 2)))).hilbert == ((0, 1), (1, 0), (2, -1))
    half = cone_monoid(Cone(2, ((1, 0),)))
    assert half.unit_basis == ((0, 1),)
    assert half.hilbert == ((1, 0),)


@pytest.mark.parametrize("rays", [((1, 0, 0), (0, 1, 0)), ((1, 2, 0), (0, 1, 0), (0, 0, 1)),
                                  ((1, 0), (1, 1))])
def test_smooth_cone_monoid_is_free(rays):
    m = cone_monoid(Cone(len(rays[0]), rays))
    n = len(rays[0])
    assert m.group_rank == n
    assert len(m.hilbert) + 2 * len(m.unit_basis) == len(m.generators)
    assert len(m.hilbert) + len(m.unit_basis) == n


def test_support_certificate_against_sampling():
    dirs = directions_2d(20)
    rng = random.Random(3)
    for _ in range(20):
        a = random_quadrant_subdivision(rng)
        mask_a = support_mask_2d([c.rays for c in a.max_cones], dirs)
        mask_base = support_mask_2d([c.rays for c in A2.max_cones], dirs)
        assert (mask_a == mask_base).all()
        assert is_subdivision(a, A2)
    assert not (support_mask_2d([c.rays for c in A1_GM.max_cones], dirs)
                == support_mask_2d([c.rays for c in A2.max_cones], dirs)).all()


def test_star_sequence_rank_two_only():
    rng = random.Random(5)
    for _ in range(10):
        f = random_quadrant_subdivision(rng)
        rays = star_sequence(Subdivision(A2, f))
        g = A2
        for r in rays:
            g = star_subdivision(g, r)
        assert g == f
    with pytest.raises(FanError):
        star_sequence(Subdivision(A3, A3))


def test_fan_equality_is_order_free():
    a = Fan.from_rays(2, [[(0, 1), (1, 1)], [(1, 1), (1, 0)]])
    b = Fan.from_rays(2, [[(1, 0), (1, 1)], [(1, 1), (0, 1)]])
    assert a == b and hash(a) == hash(b)
