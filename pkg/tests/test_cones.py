"""Double description, duality round trips and the arithmetic-type test."""

import random

import pytest

from ex134_data import CUSP
from lorentzroots import cones, linalg
from lorentzroots.errors import DomainError
from lorentzroots.lattice import Lattice, norm, pair



def test_triangle_dual_rays(ex134, triangle):
    cone = cones.dual_extreme_rays(ex134, triangle)
    assert cone.rays == ((0, 1, 1), (1, 0, 1), (1, 1, 0))
    assert cone.lineality == ()
    assert all(norm(ex134, r) == 0 for r in cone.rays)


def test_single_wall_rank2(u):
    cone = cones.dual_extreme_rays(u, [(1, -1)])
    assert len(cone.rays) == 1
    assert len(cone.lineality) == 1
    r, = cone.rays
    assert pair(u, r, (1, -1)) < 0
    assert pair(u, cone.lineality[0], (1, -1)) == 0


def test_simplicial_cone_negated_inverse_gram():
    lat = Lattice(gram=((1, 0), (0, 2)))
    cone = cones.dual_extreme_rays(lat, [(1, 0), (0, 1)])
    # rays are the columns of the negated inverse Gram, cleared to integers
    assert cone.rays == ((-1, 0), (0, -1))
    assert cone.lineality == ()


def test_empty_wall_system(ex134):
    with pytest.raises(DomainError):
        cones.dual_extreme_rays(ex134, [])


def test_dd_soundness_and_tightness(ex134, u_plus_2, u_plus_a2):
    rng = random.Random(21)
    for lat in (ex134, u_plus_2, u_plus_a2):
        for _ in range(25):
            k = rng.randint(1, lat.rank + 1)
            roots = []
            while len(roots) < k:
                v = tuple(rng.randint(-3, 3) for _ in range(lat.rank))
                if any(v):
                    roots.append(v)
            cone = cones.dual_extreme_rays(lat, roots)
            for r in cone.rays:
                assert all(pair(lat, r, a) <= 0 for a in roots)
                assert linalg.content(r) == 1
            for l in cone.lineality:
                assert all(pair(lat, l, a) == 0 for a in roots)
            if not cone.lineality and linalg.rank(cone.rays) == lat.rank:
                # pointed full-dimensional: every extreme ray is tight on a
                # facet-many independent set of inequalities
                rows = [linalg.mat_vec(lat.gram, a) for a in roots]
                for r in cone.rays:
                    tight = [row for row in rows if linalg.dot(row, r) == 0]
                    assert linalg.rank(tight) == lat.rank - 1


def test_dual_triple_roundtrip(ex134, u_plus_2, u_plus_a2):
    # C*** = C* for arbitrary wall systems
    rng = random.Random(22)
    for lat in (ex134, u_plus_2, u_plus_a2):
        done = 0
        while done < 12:
            roots = []
            while len(roots) < lat.rank:
                v = tuple(rng.randint(-3, 3) for _ in range(lat.rank))
                if any(v):
                    roots.append(v)
            first = cones.dual_extreme_rays(lat, roots)
            if not first.rays:
                continue
            second = cones.dual_extreme_rays(lat, list(first.rays) + list(first.lineality)
                                             + [tuple(-x for x in l) for l in first.lineality])
            if not second.rays:
                continue
            third = cones.dual_extreme_rays(lat, list(second.rays) + list(second.lineality)
                                            + [tuple(-x for x in l) for l in second.lineality])
            assert third.rays == first.rays
            done += 1


def _combinatorial_extreme_rays(lat, roots):
    """Oracle: extreme rays of a pointed full-rank cone by subset enumeration.

    Every extreme ray is the oriented kernel of some rank-(n-1) subset of
    the inequality rows; check feasibility and tightness rank directly.
    """
    import itertools

    n = lat.rank
    rows = [linalg.mat_vec(lat.gram, a) for a in roots]
    found = set()
    for subset in itertools.combinations(range(len(rows)), n - 1):
        sub = [rows[i] for i in subset]
        if linalg.rank(sub) != n - 1:
            continue
        kern = linalg.kernel_basis(sub, ncols=n)
        if len(kern) != 1:
            continue
        for cand in (kern[0], tuple(-x for x in kern[0])):
            vals = [linalg.dot(row, cand) for row in rows]
            if all(v <= 0 for v in vals):
                tight = [row for row, v in zip(rows, vals) if v == 0]
                if linalg.rank(tight) == n - 1:
                    found.add(linalg.primitive(cand))
    return sorted(found)


def test_dd_against_combinatorial_oracle(ex134, u_plus_2, u_plus_a2, diag22m):
    rng = random.Random(24)
    for lat in (ex134, u_plus_2, u_plus_a2, diag22m):
        done = 0
        while done < 15:
            k = rng.randint(lat.rank, lat.rank + 3)
            roots = []
            while len(roots) < k:
                v = tuple(rng.randint(-3, 3) for _ in range(lat.rank))
                if any(v):
                    roots.append(v)
            cone = cones.dual_extreme_rays(lat, roots)
            if cone.lineality:
                continue
            assert list(cone.rays) == _combinatorial_extreme_rays(lat, roots)
            done += 1


def test_dual_involution_on_triangle(ex134, triangle):
    # duality swaps the chamber cone and the wall cone of the ideal triangle
    rays = cones.dual_extreme_rays(ex134, triangle).rays
    back = cones.dual_extreme_rays(ex134, rays)
    assert back.rays == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert back.lineality == ()


def test_arithmetic_type_triangle(ex134, triangle):
    art = cones.is_arithmetic_type(ex134, triangle)
    assert art.arithmetic and art.finite_volume
    assert art.witness is None
    assert art.cone.rays == ((0, 1, 1), (1, 0, 1), (1, 1, 0))


def test_arithmetic_type_single_wall(ex134):
    art = cones.is_arithmetic_type(ex134, [(1, 0, 0)])
    assert not art.arithmetic and not art.finite_volume
    assert art.witness is not None
    assert norm(ex134, art.witness) > 0


def test_arithmetic_type_of_computed_chamber(ex134, triangle):
    # consistency: the certificate holds on the chamber by definition
    art = cones.is_arithmetic_type(ex134, triangle)
    assert cones.is_arithmetic_type(ex134, list(triangle)).finite_volume == art.finite_volume


def test_q_plus_membership_examples(ex134, triangle):
    assert cones.q_plus_membership(ex134, triangle, (1, 0, 0)) == (1, 0, 0)
    assert cones.q_plus_membership(ex134, triangle, CUSP) == (0, 1, 1)
    assert cones.q_plus_membership(ex134, triangle, (1, 1, 1)) == (1, 1, 1)
    assert cones.q_plus_membership(ex134, triangle, (-1, 0, 0)) is None
    assert cones.q_plus_membership(ex134, triangle, (1, -2, 0)) is None


def test_q_plus_membership_dependent_walls(ex134, triangle):
    walls = list(triangle) + [(2, 1, 0)]
    got = cones.q_plus_membership(ex134, walls, (2, 1, 0))
    assert got is not None
    combo = tuple(sum(c * w[j] for c, w in zip(got, walls)) for j in range(3))
    assert combo == (2, 1, 0)
    # budget fallback when no interior point exists
    pm = [(1, 0, 0), (-1, 0, 0)]
    with pytest.raises(DomainError):
        cones.q_plus_membership(ex134, pm, (1, 0, 0))
    coeffs = cones.q_plus_membership(ex134, pm, (1, 0, 0), budget=4)
    assert coeffs is not None and min(coeffs) >= 0
    assert coeffs[0] - coeffs[1] == 1


def test_arithmetic_sampling_oracle(ex134, triangle):
    # arithmetic type <=> small multiples of every timelike vector lie in +-Q+
    rng = random.Random(23)

    def admits(roots, x):
        for n in range(1, 13):
            nx = tuple(n * c for c in x)
            if cones.q_plus_membership(ex134, roots, nx, budget=200) is not None:
                return True
            neg = tuple(-c for c in nx)
            if cones.q_plus_membership(ex134, roots, neg, budget=200) is not None:
                return True
        return False

    done = 0
    while done < 25:
        x = tuple(rng.randint(-6, 6) for _ in range(3))
        if norm(ex134, x) >= 0:
            continue
        assert admits(triangle, x)
        done += 1
    # the non-arithmetic single wall fails for generic timelike vectors
    assert not admits([(1, 0, 0)], (1, 1, 1))


def test_k_elements(ex134, triangle):
    got = cones.k_elements(ex134, triangle, 2)
    assert got == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert cones.k_elements(ex134, triangle, 0) == []
    for x in cones.k_elements(ex134, triangle, 5):
        assert norm(ex134, x) <= 0
