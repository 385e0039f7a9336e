"""Acceptance criteria 1-10.  Each test carries ``criterion(n)``; the
terminal summary prints one PASS/FAIL line per criterion."""

import itertools
import random
import time

import pytest

from divlog.blowup import ideal_pullback_principal, log_blowup
from divlog.cli import parse, print_document
from divlog.deform import deform_square_check, deformation_monoid, fiber_generic, fiber_zero_pieces
from divlog.divided import (compose_divided, eq_divided, identity_rep, inverse, is_iso_divided,
                            make_rep, refine_rep, subdivision_rep)
from divlog.fan import Fan, Subdivision, common_refinement, is_subdivision, star_subdivision
from divlog.fanspace import FanSpace, OpenSubfan, glue, is_cover, p1_space, validate_gluing
from divlog.lattice import IntMatrix
from divlog.monoid import (FsMonoid, MonoidIdeal, check_lemma_equiv10, is_exact, is_isomorphism,
                           is_kummer, saturate)

from catalog import (A1_GM, A2, A2_STAR, A3, CONE_MONOIDS, HOMS, MONOIDS, P1, P1_A1,
                     equiv10_family, random_quadrant_subdivision)
from oracles import (directions_2d, in_generated, sampled_support_containment_many,
                     saturation_oracle)

pytestmark = pytest.mark.acceptance

I2 = IntMatrix.identity(2)
N2 = FsMonoid.free(2)
BUDGET = 10.0


class timed:
    def __enter__(self):
        self.start = time.perf_counter()

    def __exit__(self, *exc):
        elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert elapsed < BUDGET, f"took {elapsed:.1f}s"


# 1 -----------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_blowup_agrees_with_star():
    with timed():
        res = log_blowup(A2, MonoidIdeal(N2, ((1, 0), (0, 1))))
        assert res.subdivision == star_subdivision(A2, (1, 1))
        assert len(res.per_max_cone_generator) == 2
        for cone, g in res.per_max_cone_generator:
            assert ideal_pullback_principal([(1, 0), (0, 1)], cone) == g
            # g divides both generators on the piece
            assert all(all(sum(a * b for a, b in zip(h, r)) >= sum(a * b for a, b in zip(g, r))
                           for r in cone.rays) for h in [(1, 0), (0, 1)])


# 2 -----------------------------------------------------------------------

@pytest.mark.criterion(2)
def test_lemma_equiv10_on_exact_family():
    with timed():
        family = [(name, f) for name, f in equiv10_family() if is_exact(f)]
        assert len(family) >= 50
        for name, f in family:
            r = check_lemma_equiv10(f)
            assert r.rank_lhs == r.rank_rhs, name
            if r.iso_detected:
                assert r.theta_is_iso, name


# 3 -----------------------------------------------------------------------

QUADRANT_MAPS = [I2, IntMatrix.from_rows([[0, 1], [1, 0]]), IntMatrix.from_rows([[1, 1], [0, 1]]),
                 IntMatrix.from_rows([[1, 0], [1, 1]]), IntMatrix.diagonal([2, 1])]


def _random_rep(rng, source, target):
    rep = make_rep(source, target, rng.choice(QUADRANT_MAPS))
    if rng.random() < 0.5:
        rep = refine_rep(rep, Subdivision(source, random_quadrant_subdivision(rng, 2, base=source)))
    return rep


@pytest.mark.criterion(3)
def test_eq_divided_is_an_equivalence():
    with timed():
        rng = random.Random(31)
        fans = [A2, A2_STAR, star_subdivision(A2, (1, 2))]
        reps = [_random_rep(rng, rng.choice(fans), rng.choice(fans)) for _ in range(100)]
        assert len(reps) >= 100
        for a in reps:
            assert eq_divided(a, a)
        for a, b in itertools.product(reps, repeat=2):
            assert eq_divided(a, b) == eq_divided(b, a)
        sample = reps[:30]
        for a, b, c in itertools.product(sample, repeat=3):
            if eq_divided(a, b) and eq_divided(b, c):
                assert eq_divided(a, c)


@pytest.mark.criterion(3)
def test_composition_is_associative_and_unital():
    with timed():
        rng = random.Random(32)
        for _ in range(100):
            fa, fb, fc, fd = (random_quadrant_subdivision(rng, 2) for _ in range(4))
            a, b, c = _random_rep(rng, fa, fb), _random_rep(rng, fb, fc), _random_rep(rng, fc, fd)
            assert eq_divided(compose_divided(compose_divided(a, b), c),
                              compose_divided(a, compose_divided(b, c)))
            assert eq_divided(compose_divided(identity_rep(fa), a), a)
            assert eq_divided(compose_divided(a, identity_rep(fb)), a)


@pytest.mark.criterion(3)
def test_subdivision_reps_are_invertible():
    with timed():
        rng = random.Random(33)
        subs = [Subdivision(A2, random_quadrant_subdivision(rng)) for _ in range(100)]
        subs += [Subdivision(A2, log_blowup(A2, g).subdivision)
                 for g in ([(1, 0), (0, 1)], [(2, 0), (0, 1)], [(3, 0), (1, 1), (0, 2)])]
        subs += [Subdivision(A3, star_subdivision(A3, (1, 1, 1)))]
        for s in subs:
            r = subdivision_rep(s)
            assert is_iso_divided(r)
            inv = inverse(r)
            assert eq_divided(compose_divided(r, inv), identity_rep(s.fan))
            assert eq_divided(compose_divided(inv, r), identity_rep(s.base))


# 4 -----------------------------------------------------------------------

PA1_P1 = Fan.from_rays(2, [[(1, 0), (0, 1)], [(1, 0), (0, -1)]])


@pytest.mark.criterion(4)
def test_hom_existence_matches_support_sampling():
    with timed():
        dirs = directions_2d(65)
        assert len(dirs) >= 10 ** 4
        fans = [A2, A2_STAR, P1_A1, PA1_P1]
        mats = [[e[:2], e[2:]] for e in itertools.product(range(-2, 3), repeat=4)]
        mismatches = []
        for d, s in itertools.product(fans, repeat=2):
            expected = sampled_support_containment_many(
                mats, [c.rays for c in d.max_cones], [c.rays for c in s.max_cones], dirs)
            for rows, want in zip(mats, expected):
                got = make_rep(d, s, IntMatrix.from_rows(rows)) is not None
                if got != bool(want):
                    mismatches.append((d, s, rows))
        assert not mismatches


# 5 -----------------------------------------------------------------------

@pytest.mark.criterion(5)
@pytest.mark.parametrize("name", sorted(MONOIDS))
def test_saturation_matches_multiple_oracle(name):
    with timed():
        p = MONOIDS[name]
        s = saturate(p)
        k = 6 if p.dim <= 2 else 2
        expected = saturation_oracle(list(p.generators), 20, k)
        for x in itertools.product(range(21), repeat=p.dim):
            assert s.contains(x) == (x in expected), x


@pytest.mark.criterion(5)
@pytest.mark.parametrize("name", sorted(MONOIDS) + sorted(CONE_MONOIDS))
def test_hilbert_basis_is_minimal(name):
    with timed():
        p = MONOIDS.get(name) or CONE_MONOIDS[name]
        h = list(saturate(p).hilbert)
        assert h
        for i, x in enumerate(h):
            assert not in_generated(x, h[:i] + h[i + 1:]), x


# 6 -----------------------------------------------------------------------

def _exactness_witness(f):
    p = f.source
    for v in itertools.product(range(-10, 11), repeat=p.dim):
        if p.to_intrinsic(v) is not None and f.target.contains(f(v)) and not p.contains(v):
            return v
    return None


@pytest.mark.criterion(6)
def test_exactness_matches_enumeration():
    with timed():
        for name, f in HOMS.items():
            assert is_exact(f) == (_exactness_witness(f) is None), name


@pytest.mark.criterion(6)
def test_exact_kummer_pushout_iso_forces_isomorphism():
    with timed():
        homs = list(HOMS.items()) + equiv10_family()
        hits = 0
        for name, f in homs:
            if is_exact(f) and is_kummer(f) and check_lemma_equiv10(f).iso_detected:
                hits += 1
                assert is_isomorphism(f), name
        assert hits > 0


# 7 -----------------------------------------------------------------------

@pytest.mark.criterion(7)
def test_deformation_of_plane_along_a_line():
    with timed():
        d = deformation_monoid(N2, MonoidIdeal(N2, ((0, 1),)))
        g = fiber_generic(d)
        assert g.iso and g.monoid.group_rank == 3 and len(g.monoid.unit_basis) == 1
        pieces = fiber_zero_pieces(d, 5, 8)
        # slice n of the normal bundle: x^a y^n with a + n <= 8
        assert [len(p) for p in pieces] == [9 - n for n in range(6)]
        sq = deform_square_check(N2, MonoidIdeal(N2, ((0, 1),)),
                                 MonoidIdeal(N2, ((1, 0), (0, 1))), 4, 8)
        assert [r.n for r in sq] == [1, 2, 3, 4] and all(r.equal for r in sq)


@pytest.mark.criterion(7)
def test_square_check_non_regular_witness():
    with timed():
        n = FsMonoid.free(1)
        out = deform_square_check(n, MonoidIdeal(n, ((2,),)), MonoidIdeal(n, ((1,),)), 2, 6)
        r2 = out[1]
        assert r2.n == 2 and not r2.equal
        assert r2.left_only == ((2,),) and r2.right_only == ()


# 8 -----------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_p1_gluing():
    with timed():
        s = p1_space()
        assert validate_gluing(s) is None
        g = glue(s)
        assert len(g.orbits) == 3
        assert is_cover(g, [(i, OpenSubfan.whole(f)) for i, f in enumerate(g.charts)])
        for key, m in s.transitions.items():
            for delta in (-2, -1, 1, 2):
                bad = dict(s.transitions)
                bad[key] = IntMatrix.from_rows([[m.rows()[0][0] + delta]])
                assert validate_gluing(FanSpace(s.charts, s.overlaps, bad)) is not None, key


# 9 -----------------------------------------------------------------------

@pytest.mark.criterion(9)
def test_common_refinement_calculus():
    with timed():
        rng = random.Random(99)
        for _ in range(60):
            a, b = random_quadrant_subdivision(rng), random_quadrant_subdivision(rng)
            r = common_refinement(a, b)
            assert is_subdivision(r, a) and is_subdivision(r, b)
            pieces = {x.intersect(y) for x in a.max_cones for y in b.max_cones}
            assert set(r.max_cones) == {c for c in pieces if c.dim == 2}
        fixtures = [A2, A2_STAR, P1_A1, A1_GM, P1, A3, PA1_P1, star_subdivision(A3, (1, 1, 1))]
        for f in fixtures:
            assert common_refinement(f, f) == f


# 10 ----------------------------------------------------------------------

@pytest.mark.criterion(10)
def test_cli_corpus_round_trip_and_goldens():
    from test_cli import CORPUS, GOLDEN, GOLDEN_CASES, call
    with timed():
        assert CORPUS
        for path in CORPUS:
            d = parse(path.read_text())
            printed = print_document(d)
            assert parse(printed) == d
            assert print_document(parse(path.read_text())).encode() == printed.encode()
        for name, (argv, code) in GOLDEN_CASES.items():
            got, out, _ = call(argv)
            assert got == code
            assert out.encode() == (GOLDEN / f"{name}.out").read_bytes(), name
