"""Extreme rays of polyhedral cones by the double description method,
and vertex/ray descriptions of general polyhedra built on top of it.

All computations are exact over Fractions. The incremental step keeps the
invariant that the maintained generators are exactly the extreme rays of
the cone cut out by the constraints processed so far; adjacency of two
rays is decided combinatorially from their active constraint sets. The
initial description comes from a simplicial subset of the constraints, so
the method only applies to pointed cones - callers split off the lineality
space first (``polyhedron_vrep`` does this for general polyhedra).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .linalg import Vec, dot, nullspace, rref, vsub, vscale


class NotPointedError(ValueError):
    pass


def primitive(v: Sequence[Fraction]) -> Vec:
    """Scale a nonzero ray by a positive rational so its entries become
    coprime integers. Positive scaling only: a ray's direction is data."""
    denom_lcm = 1
    for x in v:
        f = Fraction(x)
        denom_lcm = denom_lcm * f.denominator // gcd(denom_lcm, f.denominator)
    ints = [int(Fraction(x) * denom_lcm) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector is not a ray")
    return tuple(Fraction(x, g) for x in ints)


def _independent_rows(rows: Sequence[Vec], dim: int) -> list[int]:
    chosen: list[int] = []
    stack: list[list[Fraction]] = []
    for i, r in enumerate(rows):
        trial = stack + [list(r)]
        if len(rref(trial)[1]) == len(trial):
            chosen.append(i)
            stack = trial
            if len(chosen) == dim:
                break
    return chosen


def _invert_rows(rows: list[Vec]) -> list[Vec]:
    n = len(rows)
    aug = [list(rows[i]) + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("seed rows are singular")
    inv = [row[n:] for row in red]
    # columns of the inverse
    return [tuple(inv[i][j] for i in range(n)) for j in range(n)]


def cone_extreme_rays(constraints: Sequence[Sequence[Fraction]], dim: int) -> list[Vec]:
    """Extreme rays of the pointed cone {x : c . x >= 0 for all rows c}.

    Raises :class:`NotPointedError` when the rows do not have full rank,
    since the cone then contains a line and has no extreme rays.
    """
    cons: list[Vec] = [tuple(Fraction(x) for x in row) for row in constraints]
    if dim == 0:
        return []
    seed = _independent_rows(cons, dim)
    if len(seed) < dim:
        raise NotPointedError(f"constraint rank {len(seed)} < dimension {dim}")
    rays = [primitive(col) for col in _invert_rows([cons[i] for i in seed])]
    seed_set = set(seed)
    active: list[frozenset[int]] = [
        frozenset(i for i in seed if dot(cons[i], r) == 0) for r in rays
    ]
    for ci, c in enumerate(cons):
        if ci in seed_set:
            continue
        vals = [dot(c, r) for r in rays]
        if all(v >= 0 for v in vals):
            active = [
                a | {ci} if v == 0 else a for a, v in zip(active, vals)
            ]
            continue
        pos = [k for k, v in enumerate(vals) if v > 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        new_rays: list[Vec] = []
        new_active: list[frozenset[int]] = []
        for kp in pos:
            for kn in neg:
                common = active[kp] & active[kn]
                adjacent = not any(
                    kk not in (kp, kn) and active[kk] >= common
                    for kk in range(len(rays))
                )
                if not adjacent:
                    continue
                r = primitive(vsub(vscale(vals[kp], rays[kn]), vscale(vals[kn], rays[kp])))
                if r in new_rays:
                    continue
                new_rays.append(r)
                new_active.append(common | {ci})
        keep_rays = [rays[k] for k in pos] + [rays[k] for k in zero]
        keep_active = [active[k] for k in pos] + [active[k] | {ci} for k in zero]
        rays = keep_rays + new_rays
        active = keep_active + new_active
    return sorted(rays)


@dataclass(frozen=True)
class VRep:
    """Generator description of a polyhedron: the convex hull of
    ``vertices`` plus the cone of ``rays`` plus the span of ``lineality``.
    An empty polyhedron has ``empty`` set and no generators."""

    vertices: tuple[Vec, ...]
    rays: tuple[Vec, ...]
    lineality: tuple[Vec, ...]
    empty: bool = False

    @property
    def is_single_point(self) -> bool:
        return (not self.empty and len(self.vertices) == 1
                and not self.rays and not self.lineality)


def polyhedron_vrep(
    coeffs: Sequence[Sequence[Fraction]],
    offsets: Sequence[Fraction],
    dim: int,
) -> VRep:
    """Vertices, rays and lineality of {t : C t + e >= 0}."""
    if len(coeffs) != len(offsets):
        raise ValueError("row/offset count mismatch")
    rows: list[Vec] = []
    offs: list[Fraction] = []
    for row, e in zip(coeffs, offsets):
        r = tuple(Fraction(x) for x in row)
        if all(x == 0 for x in r):
            if Fraction(e) < 0:
                return VRep((), (), (), empty=True)
            continue
        rows.append(r)
        offs.append(Fraction(e))
    unit = [tuple(Fraction(1 if j == i else 0) for j in range(dim)) for i in range(dim)]
    if not rows:
        return VRep((tuple(Fraction(0) for _ in range(dim)),), (), tuple(unit))
    lin = nullspace(rows, dim)
    _, pivot_cols = rref(rows)
    d_red = len(pivot_cols)
    # Work on the pivot coordinates; the kernel of C re-enters as lineality.
    homog = [tuple(r[j] for j in pivot_cols) + (e,) for r, e in zip(rows, offs)]
    homog.append(tuple(Fraction(0) for _ in range(d_red)) + (Fraction(1),))
    gens = cone_extreme_rays(homog, d_red + 1)
    vertices: list[Vec] = []
    recession: list[Vec] = []
    for g in gens:
        h = g[-1]
        full = [Fraction(0)] * dim
        for k, j in enumerate(pivot_cols):
            full[j] = g[k]
        if h > 0:
            vertices.append(tuple(x / h for x in full))
        else:
            recession.append(primitive(full))
    if not vertices:
        return VRep((), (), (), empty=True)
    return VRep(tuple(sorted(vertices)), tuple(sorted(recession)), tuple(lin))
