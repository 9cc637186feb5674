import math
import random
from fractions import Fraction as Q

import pytest

from tensorcomp.cones import (
    NotPointedError, VRep, cone_extreme_rays, polyhedron_vrep, primitive,
)
from tensorcomp.linalg import dot, rank, vec


def _angle_oracle_2d(constraints):
    """Extreme rays of a pointed 2-d cone by scanning rational directions,
    independent of the incremental construction."""
    feasible = []
    steps = 720
    for k in range(steps):
        a = 2 * math.pi * k / steps
        d = (math.cos(a), math.sin(a))
        if all(float(c[0]) * d[0] + float(c[1]) * d[1] >= -1e-12 for c in constraints):
            feasible.append(k)
    if not feasible:
        return 0
    # count maximal arcs of feasible directions; a pointed cone has one arc
    # whose two endpoints are the extreme rays (or a single ray).
    wrapped = set(feasible)
    boundary = [k for k in feasible if (k - 1) % steps not in wrapped or (k + 1) % steps not in wrapped]
    return len(boundary) if len(feasible) < steps else None


class TestPrimitive:
    def test_clears_denominators_and_common_factors(self):
        assert primitive(vec([Q(2, 3), Q(4, 3)])) == (1, 2)
        assert primitive(vec([6, -9])) == (2, -3)

    def test_keeps_direction(self):
        assert primitive(vec([0, -4])) == (0, -1)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            primitive(vec([0, 0]))


class TestConeExtremeRays:
    def test_orthant(self):
        rows = [vec([1, 0, 0]), vec([0, 1, 0]), vec([0, 0, 1])]
        rays = cone_extreme_rays(rows, 3)
        assert sorted(rays) == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)])

    def test_halfspace_cut(self):
        # x >= 0, y >= 0, y <= 2x
        rows = [vec([1, 0]), vec([0, 1]), vec([2, -1])]
        rays = cone_extreme_rays(rows, 2)
        assert sorted(rays) == sorted([(1, 0), (1, 2)])

    def test_cut_to_origin(self):
        rows = [vec([1]), vec([-1])]
        assert cone_extreme_rays(rows, 1) == []

    def test_not_pointed(self):
        with pytest.raises(NotPointedError):
            cone_extreme_rays([vec([1, 0])], 2)

    def test_rays_satisfy_constraints_and_are_extreme(self):
        rng = random.Random(9)
        for _ in range(40):
            d = rng.choice([2, 3, 4])
            rows = [vec([rng.randint(-3, 3) for _ in range(d)]) for _ in range(d + rng.randint(0, 3))]
            rows += [vec([1 if j == i else 0 for j in range(d)]) for i in range(d)]
            rays = cone_extreme_rays(rows, d)
            for r in rays:
                vals = [dot(c, r) for c in rows]
                assert all(v >= 0 for v in vals)
                active = [list(c) for c, v in zip(rows, vals) if v == 0]
                assert rank(active) == d - 1

    def test_matches_angular_oracle_in_2d(self):
        rng = random.Random(21)
        for _ in range(30):
            rows = [vec([rng.randint(-3, 3), rng.randint(-3, 3)]) for _ in range(3)]
            rows.append(vec([1, 0]))
            rows.append(vec([0, 1]))
            rays = cone_extreme_rays(rows, 2)
            expected = _angle_oracle_2d(rows)
            if expected is None:
                continue
            if expected == 0:
                assert len(rays) <= 1  # grazing single direction possible
            else:
                assert len(rays) == expected


class TestPolyhedronVrep:
    def test_unit_square(self):
        coeffs = [vec([1, 0]), vec([0, 1]), vec([-1, 0]), vec([0, -1])]
        offsets = [Q(0), Q(0), Q(1), Q(1)]
        rep = polyhedron_vrep(coeffs, offsets, 2)
        assert sorted(rep.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert rep.rays == () and rep.lineality == ()

    def test_unbounded_corner(self):
        # x >= 0, y >= 0, x + y >= 1
        coeffs = [vec([1, 0]), vec([0, 1]), vec([1, 1])]
        offsets = [Q(0), Q(0), Q(-1)]
        rep = polyhedron_vrep(coeffs, offsets, 2)
        assert sorted(rep.vertices) == [(0, 1), (1, 0)]
        assert sorted(rep.rays) == [(0, 1), (1, 0)]

    def test_empty(self):
        coeffs = [vec([1]), vec([-1])]
        offsets = [Q(0), Q(-1)]
        rep = polyhedron_vrep(coeffs, offsets, 1)
        assert rep.empty

    def test_trivial_constant_rows(self):
        rep = polyhedron_vrep([vec([0, 0])], [Q(-1)], 2)
        assert rep.empty
        rep2 = polyhedron_vrep([vec([0, 0]), vec([1, 0])], [Q(3), Q(0)], 2)
        assert not rep2.empty

    def test_whole_space(self):
        rep = polyhedron_vrep([], [], 2)
        assert rep.vertices == ((0, 0),)
        assert len(rep.lineality) == 2

    def test_halfplane_has_lineality(self):
        rep = polyhedron_vrep([vec([1, 1])], [Q(0)], 2)
        assert not rep.empty
        assert len(rep.lineality) == 1
        l = rep.lineality[0]
        assert l[0] + l[1] == 0
        assert len(rep.vertices) == 1 and len(rep.rays) == 1
        r = rep.rays[0]
        assert r[0] + r[1] > 0

    def test_single_point(self):
        # x >= 1, -x >= -1, y >= 2, -y >= -2
        coeffs = [vec([1, 0]), vec([-1, 0]), vec([0, 1]), vec([0, -1])]
        offsets = [Q(-1), Q(1), Q(-2), Q(2)]
        rep = polyhedron_vrep(coeffs, offsets, 2)
        assert rep.is_single_point
        assert rep.vertices == ((1, 2),)

    def test_generators_feasible(self):
        rng = random.Random(33)
        for _ in range(40):
            d = rng.choice([2, 3])
            nrows = rng.randint(1, 5)
            coeffs = [vec([rng.randint(-2, 2) for _ in range(d)]) for _ in range(nrows)]
            offsets = [Q(rng.randint(-2, 2)) for _ in range(nrows)]
            rep = polyhedron_vrep(coeffs, offsets, d)
            if rep.empty:
                continue
            for v in rep.vertices:
                assert all(dot(c, v) + e >= 0 for c, e in zip(coeffs, offsets))
            for r in rep.rays:
                assert all(dot(c, r) >= 0 for c in coeffs)
            for l in rep.lineality:
                assert all(dot(c, l) == 0 for c in coeffs)
