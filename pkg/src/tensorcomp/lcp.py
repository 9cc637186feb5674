"""Linear complementarity engines.

Everything verdict-bearing here runs in exact rational arithmetic:

* ``lemke_solve`` -- complementary pivoting with the lexicographic ratio
  test, returning one solution or secondary-ray evidence;
* ``enumerate_solutions`` -- the full solution set at small sizes as
  polyhedral pieces, one per complementary support, including singular
  (continuum) supports;
* ``w_unique`` -- whether w = Mz + q takes a single value over the whole
  solution set, decided from the pieces' vertices and recession directions;
* ``matrix_column_adequate`` -- exact column adequacy of a matrix via
  extreme rays of the sign-orthant cones.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cones import cone_extreme_rays, polyhedron_vrep, primitive
from .linalg import (
    Matrix, Vec, dot, in_span, is_nonneg, is_zero_vec, solve_affine, vadd,
    vec, vscale, vsub, zero_vec,
)
from .verdicts import (
    ConeRayCertificate, Counterexample, SearchReport, Verdict,
)

DEFAULT_ENUM_CAP = 12
DEFAULT_MATRIX_CAP = 8
FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class LcpInstance:
    """Find z >= 0 with w = Mz + q >= 0 and z . w = 0."""

    m: Matrix
    q: Vec

    def __post_init__(self) -> None:
        if not self.m.is_square():
            raise ValueError("LCP matrix must be square")
        if len(self.q) != self.m.rows:
            raise ValueError("q length does not match matrix size")

    @property
    def size(self) -> int:
        return self.m.rows

    def w_of(self, z: Sequence[Fraction]) -> Vec:
        return vadd(self.m.mul_vec(z), self.q)


def verify(inst: LcpInstance, z: Sequence, tol: float | None = None) -> bool:
    """Exact check for rational z; otherwise componentwise within ``tol``
    (default 1e-9)."""
    if len(z) != inst.size:
        raise ValueError("candidate length does not match instance size")
    exact = tol is None and all(isinstance(v, (Fraction, int)) for v in z)
    if exact:
        zv = vec(z)
        w = inst.w_of(zv)
        return (is_nonneg(zv) and is_nonneg(w)
                and all(a * b == 0 for a, b in zip(zv, w)))
    eps = FLOAT_TOL if tol is None else tol
    zf = [float(v) for v in z]
    mf = [[float(x) for x in row] for row in inst.m.data]
    qf = [float(x) for x in inst.q]
    wf = [sum(r[j] * zf[j] for j in range(len(zf))) + qi for r, qi in zip(mf, qf)]
    # Per-row tolerance: the sum of absolute terms bounds the roundoff that
    # can hide in each w component; a single global scale would let one
    # huge component mask a genuine violation elsewhere.
    row_abs = [
        1.0 + abs(qi) + sum(abs(r[j]) * abs(zf[j]) for j in range(len(zf)))
        for r, qi in zip(mf, qf)
    ]
    return (all(v >= -eps * (1.0 + abs(v)) for v in zf)
            and all(v >= -eps * s for v, s in zip(wf, row_abs))
            and all(abs(a * b) <= eps * (1.0 + abs(a)) * s
                    for a, b, s in zip(zf, wf, row_abs)))


class LemkeOutcome(enum.Enum):
    SOLVED = "solved"
    RAY = "ray"


class LemkeCycleError(RuntimeError):
    """Pivot count exceeded the cap; with the lexicographic ratio test this
    indicates a bug, not a hard instance."""


@dataclass(frozen=True)
class LemkeResult:
    outcome: LemkeOutcome
    z: Vec | None = None
    w: Vec | None = None
    pivots: int = 0
    ray_point: Vec | None = None
    ray_direction: Vec | None = None


def lemke_solve(inst: LcpInstance, max_pivots: int | None = None) -> LemkeResult:
    """Lemke's complementary pivot method with lexicographic anti-cycling.

    Ray termination is returned as evidence (a feasible point of the
    augmented problem plus the unbounded direction), not as an
    infeasibility proof.
    """
    k = inst.size
    if is_nonneg(inst.q):
        return LemkeResult(LemkeOutcome.SOLVED, z=zero_vec(k), w=inst.q, pivots=0)
    cap = max_pivots if max_pivots is not None else max(2 ** k * k, 8)

    w_col = lambda i: i
    z_col = lambda i: k + i
    z0_col = 2 * k
    rhs_col = 2 * k + 1

    # rows: w - Mz - z0*1 = q, basis starts at w
    tab = [
        [Fraction(1 if j == i else 0) for j in range(k)]
        + [-inst.m.data[i][j] for j in range(k)]
        + [Fraction(-1), inst.q[i]]
        for i in range(k)
    ]
    basis = [w_col(i) for i in range(k)]

    def pivot(r: int, c: int) -> None:
        p = tab[r][c]
        tab[r] = [x / p for x in tab[r]]
        for i in range(k):
            if i != r and tab[i][c] != 0:
                f = tab[i][c]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]
        basis[r] = c

    # z0 entry: drive the most negative row out; the w-block columns act as
    # the lexicographic perturbation.
    start = min(range(k), key=lambda r: (tab[r][rhs_col],) + tuple(tab[r][w_col(j)] for j in range(k)))
    leaving = basis[start]
    pivot(start, z0_col)
    entering = z_col(leaving) if leaving < k else w_col(leaving - k)

    pivots = 1
    while True:
        if pivots > cap:
            raise LemkeCycleError(f"exceeded {cap} pivots on a size-{k} instance")
        candidates = [r for r in range(k) if tab[r][entering] > 0]
        if not candidates:
            z_point = [Fraction(0)] * k
            direction = [Fraction(0)] * k
            for r in range(k):
                if k <= basis[r] < 2 * k:
                    z_point[basis[r] - k] = tab[r][rhs_col]
                    direction[basis[r] - k] = -tab[r][entering]
            if k <= entering < 2 * k:
                direction[entering - k] = Fraction(1)
            return LemkeResult(
                LemkeOutcome.RAY, pivots=pivots,
                ray_point=tuple(z_point), ray_direction=tuple(direction),
            )
        r = min(candidates, key=lambda i: tuple(
            x / tab[i][entering]
            for x in (tab[i][rhs_col],) + tuple(tab[i][w_col(j)] for j in range(k))
        ))
        leaving = basis[r]
        pivot(r, entering)
        pivots += 1
        if leaving == z0_col:
            z = [Fraction(0)] * k
            for i in range(k):
                if k <= basis[i] < 2 * k:
                    z[basis[i] - k] = tab[i][rhs_col]
            zt = tuple(z)
            w = inst.w_of(zt)
            if not verify(inst, zt):
                raise AssertionError("pivoting produced an unverified solution")
            return LemkeResult(LemkeOutcome.SOLVED, z=zt, w=w, pivots=pivots)
        entering = z_col(leaving) if leaving < k else w_col(leaving - k)


@dataclass(frozen=True)
class SolutionPiece:
    """One complementary support's share of the solution set.

    The affine set fixed by the support is ``base + span(directions)``; the
    feasible part of it is described exactly by ``vertices``, ``rays`` and
    ``lineality`` (convex hull plus recession). ``w_constant`` records
    whether M annihilates every unclipped direction.
    """

    support: frozenset[int]
    base: Vec
    directions: tuple[Vec, ...]
    w_constant: bool
    vertices: tuple[Vec, ...]
    rays: tuple[Vec, ...]
    lineality: tuple[Vec, ...]

    @property
    def dimension(self) -> int:
        return len(self.directions)


def piece_contains(inst: LcpInstance, piece: SolutionPiece, z: Sequence[Fraction]) -> bool:
    """Membership of z in the piece: z must solve the LCP and lie in the
    support's affine set."""
    zv = vec(z)
    if not verify(inst, zv):
        return False
    return in_span(piece.directions, vsub(zv, piece.base))


def _recession_contains(inst: LcpInstance, piece: SolutionPiece, d: Sequence[Fraction]) -> bool:
    dv = vec(d)
    if not in_span(piece.directions, dv):
        return False
    if not is_nonneg(dv):
        return False
    md = inst.m.mul_vec(dv)
    return all(md[i] >= 0 for i in range(inst.size) if i not in piece.support)


def _piece_subset(inst: LcpInstance, p: SolutionPiece, q: SolutionPiece) -> bool:
    return (
        all(in_span(q.directions, vsub(v, q.base)) for v in p.vertices)
        and all(_recession_contains(inst, q, r) for r in p.rays)
        and all(
            _recession_contains(inst, q, l) and _recession_contains(inst, q, vscale(Fraction(-1), l))
            for l in p.lineality
        )
    )


def enumerate_solutions(
    inst: LcpInstance,
    cap: int = DEFAULT_ENUM_CAP,
    maximal: bool = True,
) -> list[SolutionPiece]:
    """Exact solution set as pieces, one per feasible complementary support.

    For support S the linear system {z_i = 0 off S, (Mz + q)_i = 0 on S} is
    solved in full (singular systems yield free directions); the feasible
    region inside that affine set is then described by its vertices and
    recession directions. With ``maximal`` set, pieces contained in another
    piece are dropped; the union is unchanged.
    """
    k = inst.size
    if k > cap:
        raise ValueError(f"instance size {k} exceeds enumeration cap {cap}")
    pieces: list[SolutionPiece] = []
    for mask in range(2 ** k):
        support = [i for i in range(k) if mask >> i & 1]
        off = [i for i in range(k) if not mask >> i & 1]
        if not support:
            if is_nonneg(inst.q):
                z0 = zero_vec(k)
                pieces.append(SolutionPiece(
                    frozenset(), z0, (), True, (z0,), (), ()))
            continue
        sub_rows = [[inst.m.data[i][j] for j in support] for i in support]
        rhs = [-inst.q[i] for i in support]
        sol = solve_affine(sub_rows, rhs)
        if sol is None:
            continue
        part, kernel = sol

        def embed(v: Sequence[Fraction]) -> Vec:
            full = [Fraction(0)] * k
            for pos, i in enumerate(support):
                full[i] = v[pos]
            return tuple(full)

        base0 = embed(part)
        directions = tuple(embed(b) for b in kernel)
        if not directions:
            w = inst.w_of(base0)
            if is_nonneg(base0) and is_nonneg(w):
                pieces.append(SolutionPiece(
                    frozenset(support), base0, (), True, (base0,), (), ()))
            continue
        d = len(directions)
        coeffs: list[list[Fraction]] = []
        offsets: list[Fraction] = []
        for i in support:
            coeffs.append([directions[t][i] for t in range(d)])
            offsets.append(base0[i])
        w_base = inst.w_of(base0)
        m_dirs = [inst.m.mul_vec(dr) for dr in directions]
        for i in off:
            coeffs.append([m_dirs[t][i] for t in range(d)])
            offsets.append(w_base[i])
        vrep = polyhedron_vrep(coeffs, offsets, d)
        if vrep.empty:
            continue

        def to_z(tcoord: Vec) -> Vec:
            out = list(base0)
            for t, c in enumerate(tcoord):
                if c != 0:
                    for i in range(k):
                        out[i] += c * directions[t][i]
            return tuple(out)

        def to_dir(tcoord: Vec) -> Vec:
            out = [Fraction(0)] * k
            for t, c in enumerate(tcoord):
                if c != 0:
                    for i in range(k):
                        out[i] += c * directions[t][i]
            return primitive(out)

        vertices = tuple(sorted(to_z(v) for v in vrep.vertices))
        rays = tuple(sorted(to_dir(r) for r in vrep.rays))
        lineality = tuple(sorted(to_dir(l) for l in vrep.lineality))
        w_const = all(is_zero_vec(md) for md in m_dirs)
        pieces.append(SolutionPiece(
            frozenset(support), vertices[0], directions, w_const,
            vertices, rays, lineality))
    pieces.sort(key=lambda p: (len(p.support), sorted(p.support)))
    if not maximal or len(pieces) > 64:
        return pieces
    kept: list[SolutionPiece] = []
    for idx, p in enumerate(pieces):
        dominated = False
        for jdx, q in enumerate(pieces):
            if jdx == idx or not _piece_subset(inst, p, q):
                continue
            if _piece_subset(inst, q, p):
                if jdx < idx:
                    dominated = True
                    break
            else:
                dominated = True
                break
        if not dominated:
            kept.append(p)
    return kept


@dataclass(frozen=True)
class WUniquenessReport:
    """Whether all solutions share one w. ``vacuous`` marks an empty
    solution set, which the report flags rather than silently calling
    unique."""

    unique: bool
    w_values: tuple[Vec, ...]
    witness_pair: tuple[Vec, Vec] | None
    vacuous: bool = False
    pieces: tuple[SolutionPiece, ...] = ()


def w_unique(inst: LcpInstance, cap: int = DEFAULT_ENUM_CAP) -> WUniquenessReport:
    """Decide w-uniqueness exactly from the enumerated pieces: w must agree
    at every vertex and be constant along every feasible recession
    direction."""
    pieces = enumerate_solutions(inst, cap=cap)
    if not pieces:
        return WUniquenessReport(True, (), None, vacuous=True)
    w_values: list[Vec] = []
    witness: tuple[Vec, Vec] | None = None

    def record(w: Vec) -> None:
        if w not in w_values:
            w_values.append(w)

    for piece in pieces:
        v0 = piece.vertices[0]
        record(inst.w_of(v0))
        for v in piece.vertices[1:]:
            record(inst.w_of(v))
            if witness is None and inst.w_of(v) != inst.w_of(v0):
                witness = (v0, v)
        for d in piece.rays + piece.lineality + tuple(
            vscale(Fraction(-1), l) for l in piece.lineality
        ):
            if not is_zero_vec(inst.m.mul_vec(d)):
                moved = vadd(v0, d)
                record(inst.w_of(moved))
                if witness is None:
                    witness = (v0, moved)
    if len(w_values) > 1 and witness is None:
        seen: dict[Vec, Vec] = {}
        for piece in pieces:
            for v in piece.vertices:
                seen[inst.w_of(v)] = v
        a, b = list(seen.values())[:2]
        witness = (a, b)
    return WUniquenessReport(
        unique=len(w_values) <= 1,
        w_values=tuple(w_values),
        witness_pair=witness,
        pieces=tuple(pieces),
    )


def _adequacy_violation(m: Matrix, z: Vec) -> Counterexample | None:
    products = tuple(a * b for a, b in zip(z, m.mul_vec(z)))
    image = m.mul_vec(z)
    if all(p <= 0 for p in products) and not is_zero_vec(image):
        return Counterexample(point=z, products=products, image=image,
                              note="sign-reversed vector outside the kernel")
    return None


def matrix_column_adequate(
    m: Matrix,
    cap: int = DEFAULT_MATRIX_CAP,
    fallback_samples: int = 20000,
    seed: int = 0,
) -> Verdict:
    """Exact column adequacy via sign-orthant cones.

    For each sign pattern s the cone {z : s_i z_i >= 0, s_i (Mz)_i <= 0} is
    generated by its extreme rays (double description seeded with the
    orthant's coordinate rays); the linear condition Mz = 0 holds on the
    cone iff it holds on the rays. Above ``cap`` a sampling falsifier runs
    instead, which can only answer Fails or Unknown.
    """
    if not m.is_square():
        raise ValueError("column adequacy is a property of square matrices")
    k = m.rows
    if k == 0:
        raise ValueError("empty matrix")
    if k > cap:
        rng = random.Random(seed)
        best = None
        for _ in range(fallback_samples):
            z = tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(k))
            cex = _adequacy_violation(m, z)
            if cex is not None:
                return Verdict.fails(cex, SearchReport(seeds=1, samples=fallback_samples))
        return Verdict.unknown(SearchReport(
            seeds=1, samples=fallback_samples,
            note=f"size {k} above exact cap {cap}; sampling found no violation"))
    cones: list[tuple[tuple[int, ...], tuple[Vec, ...]]] = []
    for tail in itertools.product((1, -1), repeat=k - 1):
        sigma = (1,) + tail
        rows: list[Vec] = []
        for i in range(k):
            rows.append(tuple(Fraction(sigma[i] if j == i else 0) for j in range(k)))
        for i in range(k):
            rows.append(tuple(-sigma[i] * m.data[i][j] for j in range(k)))
        try:
            rays = cone_extreme_rays(rows, k)
        except Exception:  # pragma: no cover - orthant seed is always full rank
            raise
        for r in rays:
            if not is_zero_vec(m.mul_vec(r)):
                cex = _adequacy_violation(m, r)
                if cex is None:
                    raise AssertionError("extreme ray escaped its sign cone")
                return Verdict.fails(cex)
        cones.append((sigma, tuple(rays)))
    return Verdict.holds(ConeRayCertificate(size=k, cones=tuple(cones)))


def random_solvable_q(m: Matrix, rng: random.Random) -> tuple[Vec, Vec]:
    """A right-hand side with a known solution: pick z* and w* >= 0 with
    complementary supports and set q = w* - M z*. Returns (q, z*)."""
    k = m.rows
    z = [Fraction(0)] * k
    w = [Fraction(0)] * k
    for i in range(k):
        r = rng.random()
        if r < 0.45:
            z[i] = Fraction(rng.randint(1, 8), rng.randint(1, 3))
        elif r < 0.9:
            w[i] = Fraction(rng.randint(1, 8), rng.randint(1, 3))
    q = vsub(tuple(w), m.mul_vec(tuple(z)))
    return q, tuple(z)


def ingleton_witness_q(m: Matrix, z: Sequence[Fraction]) -> tuple[Vec, Vec, Vec]:
    """Given z with z_i (Mz)_i <= 0 for all i and Mz != 0, build a q at
    which the positive and negative parts of z are both solutions with
    different w. Returns (q, x, y)."""
    zv = vec(z)
    x = tuple(max(v, Fraction(0)) for v in zv)
    y = tuple(max(-v, Fraction(0)) for v in zv)
    mx = m.mul_vec(x)
    my = m.mul_vec(y)
    q = tuple(max(-a, -b) for a, b in zip(mx, my))
    return q, x, y
