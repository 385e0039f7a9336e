import pytest

from divlog.blowup import EmptyIdeal
from divlog.deform import (DEGENERATE_CENTER, NotNested, deform_square_check, deformation_monoid,
                           fiber_generic, fiber_zero_pieces)
from divlog.monoid import FsMonoid, MonoidIdeal, NotSaturated, NotSharp

from oracles import ideal_power, in_monomial_ideal, monomials_up_to

N = FsMonoid.free(1)
N2 = FsMonoid.free(2)


def ideal(p, *gens):
    return MonoidIdeal(p, tuple(gens))


def test_rees_slices_of_line():
    d = deformation_monoid(N, ideal(N, (1,)))
    assert fiber_zero_pieces(d, 3, 3) == [[(0,)], [(1,)], [(2,)], [(3,)]]
    assert d.slice_contains((2,), -2) and not d.slice_contains((1,), -2)
    assert d.slice_contains((0,), 5)


def test_zero_fiber_matches_affine_bundle_counts():
    d = deformation_monoid(N2, ideal(N2, (0, 1)))
    pieces = fiber_zero_pieces(d, 5, 8)
    assert [len(p) for p in pieces] == [9 - n for n in range(6)]
    for n, piece in enumerate(pieces):
        assert all(x[1] == n for x in piece)


def test_zero_fiber_slices_agree_with_monomial_oracle():
    gens = [(2, 0), (1, 1), (0, 2)]
    d = deformation_monoid(N2, ideal(N2, *gens))
    deg = 6
    pieces = fiber_zero_pieces(d, 3, deg)
    flat = [x for p in pieces for x in p]
    assert len(flat) == len(set(flat))
    for n, piece in enumerate(pieces):
        # the maximal ideal squared is integrally closed, so slices are plain powers
        here = [x for x in monomials_up_to(2, deg)
                if in_monomial_ideal(x, ideal_power(gens, n, 2))
                and not in_monomial_ideal(x, ideal_power(gens, n + 1, 2))]
        assert sorted(piece) == sorted(here)


def test_integral_closure_shows_in_rees_slices():
    d = deformation_monoid(N2, ideal(N2, (2, 0), (0, 2)))
    # (1,1) is integral over <x^2, y^2> but not in it
    assert d.slice_contains((1, 1), -1)
    assert not d.rees_unsaturated.contains((1, 1, -1))


def test_generic_fiber_is_product_with_line():
    for p, gens in [(N2, [(0, 1)]), (N2, [(1, 0), (0, 1)]), (N, [(2,)])]:
        g = fiber_generic(deformation_monoid(p, ideal(p, *gens)))
        assert g.iso
        assert g.monoid.group_rank == p.group_rank + 1


def test_errors_and_warnings():
    with pytest.raises(EmptyIdeal):
        deformation_monoid(N2, ideal(N2))
    with pytest.raises(NotSaturated):
        deformation_monoid(FsMonoid(1, [(2,), (3,)]), ideal(N, (2,)))
    d = deformation_monoid(N2, ideal(N2, (0, 0)))
    assert DEGENERATE_CENTER in d.warnings
    assert deformation_monoid(N2, ideal(N2, (1, 0))).warnings == ()
    with pytest.raises(NotSharp):
        fiber_zero_pieces(deformation_monoid(FsMonoid(1, [(1,), (-1,)]),
                                             MonoidIdeal(FsMonoid(1, [(1,), (-1,)]), ((1,),))), 1, 1)


def test_square_check_regular_center():
    out = deform_square_check(N2, ideal(N2, (0, 1)), ideal(N2, (1, 0), (0, 1)), 4, 6)
    assert [r.n for r in out] == [1, 2, 3, 4]
    assert all(r.equal for r in out)


def test_square_check_non_regular_witness():
    out = deform_square_check(N, ideal(N, (2,)), ideal(N, (1,)), 3, 6)
    by_n = {r.n: r for r in out}
    assert by_n[1].equal
    assert not by_n[2].equal
    assert by_n[2].left_only == ((2,),)
    assert by_n[2].right_only == ()


def test_square_check_rejects_non_nested():
    with pytest.raises(NotNested):
        deform_square_check(N2, ideal(N2, (1, 0)), ideal(N2, (0, 1)), 2, 4)
