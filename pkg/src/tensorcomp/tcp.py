"""Tensor complementarity solvers and the omega-uniqueness decision.

Two solution lanes:

* ``solve_exact_reduced`` -- when the mixed-monomial block vanishes, the
  polynomial map is linear in the componentwise powers, so the problem is
  the LCP over the majorization matrix in y = x^{[m-1]}; its exact pieces
  map back through componentwise roots.
* ``solve_enumerate`` -- general small-instance solver: per complementary
  support, damped multi-start Newton on the reduced polynomial system.
  Heuristic completeness; every kept point re-verifies.

``omega_unique`` certifies uniqueness only through the companion-LCP
transfer (w-uniqueness of the padded system forces a single omega among
lifted solutions); enumeration alone can refute but never certify.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import auxiliary
from .auxiliary import build, mixed_block_is_zero, pad_rhs
from .lcp import (
    DEFAULT_ENUM_CAP, LcpInstance, SolutionPiece, WUniquenessReport,
    enumerate_solutions, verify as lcp_verify, w_unique,
)
from .linalg import Vec, is_nonneg, vec
from .tensor import SparseTensor

DEFAULT_TCP_CAP = 4
DEFAULT_BUDGET = 40
FLOAT_TOL = 1e-9
DEDUP_TOL = 1e-8


@dataclass(frozen=True)
class TcpInstance:
    """Find x >= 0 with omega = A x^{m-1} + q >= 0 and x . omega = 0."""

    tensor: SparseTensor
    q: Vec

    def __post_init__(self) -> None:
        if len(self.q) != self.tensor.dim:
            raise ValueError("q length does not match tensor dimension")

    @property
    def dim(self) -> int:
        return self.tensor.dim


def verify_tcp(inst: TcpInstance, x: Sequence, tol: float | None = None) -> bool:
    """Exact for rational x, within ``tol`` (default 1e-9) for floats."""
    if len(x) != inst.dim:
        raise ValueError("candidate length does not match instance dimension")
    exact = tol is None and all(isinstance(v, (Fraction, int)) for v in x)
    if exact:
        xv = vec(x)
        omega = tuple(g + qi for g, qi in zip(inst.tensor.apply_deg(xv), inst.q))
        return (is_nonneg(xv) and is_nonneg(omega)
                and all(a * b == 0 for a, b in zip(xv, omega)))
    eps = FLOAT_TOL if tol is None else tol
    xf = [float(v) for v in x]
    omega = [g + float(qi) for g, qi in zip(inst.tensor.apply_deg_float(xf), inst.q)]
    # Per-row tolerances from the absolute term sums; see lcp.verify.
    row_abs = [1.0 + abs(float(qi)) + a
               for qi, a in zip(inst.q, inst.tensor.apply_deg_abs_float(xf))]
    return (all(v >= -eps * (1.0 + abs(v)) for v in xf)
            and all(v >= -eps * s for v, s in zip(omega, row_abs))
            and all(abs(a * b) <= eps * (1.0 + abs(a)) * s
                    for a, b, s in zip(xf, omega, row_abs)))


def residual_tcp(inst: TcpInstance, x: Sequence) -> float:
    xf = [float(v) for v in x]
    omega = [g + float(qi) for g, qi in zip(inst.tensor.apply_deg_float(xf), inst.q)]
    viol = [max(0.0, -v) for v in xf] + [max(0.0, -v) for v in omega]
    viol += [abs(a * b) for a, b in zip(xf, omega)]
    return max(viol)


@dataclass(frozen=True)
class TcpSolution:
    x: tuple
    omega: tuple
    residual: float


def _make_solution(inst: TcpInstance, x: Sequence) -> TcpSolution:
    exact = all(isinstance(v, (Fraction, int)) for v in x)
    if exact:
        xv = vec(x)
        omega = tuple(g + qi for g, qi in zip(inst.tensor.apply_deg(xv), inst.q))
        return TcpSolution(xv, omega, 0.0)
    xf = tuple(float(v) for v in x)
    omega = tuple(g + float(qi) for g, qi in zip(inst.tensor.apply_deg_float(list(xf)), inst.q))
    return TcpSolution(xf, omega, residual_tcp(inst, xf))


def nth_root(y: Fraction, k: int):
    """Nonnegative real k-th root; exact Fraction when y is a perfect
    power, float otherwise."""
    if y < 0:
        raise ValueError("roots are taken of nonnegative values only")
    if y == 0 or y == 1:
        return Fraction(y)
    num, den = y.numerator, y.denominator
    rn = round(num ** (1.0 / k))
    rd = round(den ** (1.0 / k))
    for cn in (rn - 1, rn, rn + 1):
        for cd in (rd - 1, rd, rd + 1):
            if cn > 0 and cd > 0 and cn ** k == num and cd ** k == den:
                return Fraction(cn, cd)
    return float(y) ** (1.0 / k)


def root_vector(y: Sequence[Fraction], k: int) -> tuple:
    roots = [nth_root(v, k) for v in y]
    if all(isinstance(r, Fraction) for r in roots):
        return tuple(roots)
    return tuple(float(r) for r in roots)


@dataclass(frozen=True)
class TcpFamily:
    """Image of one LCP solution piece under componentwise root recovery.

    ``y_piece`` lives in the power coordinates y = x^{[m-1]} over the
    majorization matrix; x-points are obtained from y-points by the
    nonnegative (m-1)-th root. ``omega`` is the (exact) shared omega when w
    is constant on the piece, else None.
    """

    y_piece: SolutionPiece
    order: int
    omega: Vec | None

    @property
    def is_point(self) -> bool:
        return (len(self.y_piece.vertices) == 1 and not self.y_piece.rays
                and not self.y_piece.lineality)

    def x_vertices(self) -> list[tuple]:
        return [root_vector(v, self.order - 1) for v in self.y_piece.vertices]

    def x_of(self, y: Sequence[Fraction]) -> tuple:
        return root_vector(vec(y), self.order - 1)


def reduced_lcp(inst: TcpInstance) -> LcpInstance:
    return LcpInstance(inst.tensor.majorization(), inst.q)


def solve_exact_reduced(inst: TcpInstance, cap: int = DEFAULT_ENUM_CAP) -> list[TcpFamily]:
    """Exact solution set via the majorization LCP; requires even order and
    a vanishing mixed block so the power substitution is a bijection."""
    t = inst.tensor
    if t.order % 2 != 0:
        raise ValueError("exact reduction needs even order; use solve_enumerate")
    system = build(t)
    if not mixed_block_is_zero(system):
        raise ValueError("mixed-monomial block is nonzero; use solve_enumerate")
    lcp_inst = reduced_lcp(inst)
    pieces = enumerate_solutions(lcp_inst, cap=cap)
    families: list[TcpFamily] = []
    for piece in pieces:
        w0 = lcp_inst.w_of(piece.vertices[0])
        constant = all(lcp_inst.w_of(v) == w0 for v in piece.vertices[1:]) and all(
            all(x == 0 for x in lcp_inst.m.mul_vec(d))
            for d in piece.rays + piece.lineality
        )
        fam = TcpFamily(piece, t.order, w0 if constant else None)
        for xv in fam.x_vertices():
            exact = all(isinstance(v, Fraction) for v in xv)
            if not verify_tcp(inst, xv, tol=None if exact else FLOAT_TOL):
                raise AssertionError("reduced solution failed verification")
        families.append(fam)
    return families


def reduced_point_solutions(inst: TcpInstance, families: Sequence[TcpFamily]) -> list[TcpSolution]:
    out = [
        _make_solution(inst, fam.x_vertices()[0])
        for fam in families if fam.is_point
    ]
    return sorted(out, key=lambda s: tuple(float(v) for v in s.x))


def _coarse_radius(sub: SparseTensor, q_sub: Sequence[float]) -> float:
    """Smallest power-of-two radius at which the homogeneous part dominates
    the offset, used to box the random Newton starts."""
    target = 10.0 * (1.0 + max((abs(v) for v in q_sub), default=0.0))
    r = 1.0
    for _ in range(6):
        ones = [r] * sub.dim
        if max((abs(v) for v in sub.apply_deg_float(ones)), default=0.0) >= target:
            return r
        r *= 2.0
    return r


def _newton(sub: SparseTensor, q_sub: list[float], x0: list[float]) -> list[float] | None:
    import numpy as np

    x = np.array(x0, dtype=float)
    qv = np.array(q_sub, dtype=float)
    scale = 1.0 + float(np.max(np.abs(qv))) if len(qv) else 1.0

    def f(v):
        return np.array(sub.apply_deg_float(list(v)), dtype=float) + qv

    fx = f(x)
    for _ in range(100):
        nrm = float(np.linalg.norm(fx))
        if nrm <= 1e-13 * scale:
            break
        jac = np.array(sub.jacobian_float(list(x)), dtype=float)
        try:
            step, *_ = np.linalg.lstsq(jac, -fx, rcond=None)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(step)):
            return None
        s = 1.0
        for _ in range(40):
            trial = x + s * step
            ft = f(trial)
            if float(np.linalg.norm(ft)) < nrm * (1.0 - 1e-4 * s) + 1e-16:
                x, fx = trial, ft
                break
            s *= 0.5
        else:
            return None
        if float(np.linalg.norm(s * step)) < 1e-15 * (1.0 + float(np.linalg.norm(x))):
            break
    if float(np.linalg.norm(f(x))) > 1e-10 * scale:
        return None
    return [float(v) for v in x]


_SNAP_DENOMS = (1, 2, 3, 4, 6, 12, 100, 10 ** 4, 10 ** 6)


def _snap_candidate(inst: TcpInstance, x: list[float]) -> tuple | None:
    """Replace a verified float point by a nearby exact or sharper solution.

    Newton stalls at residual^(1/r) on roots of multiplicity r, which can
    leave components smeared by as much as 1e-4 while still inside the
    verification tolerance. Candidates zero suspiciously small components
    and snap the rest to small-denominator rationals; a candidate replaces
    the point only if it verifies exactly, or in float at a hundred times
    the usual tightness."""
    for zero_cut in (1e-3, 1e-7):
        cleaned = [0.0 if abs(v) <= zero_cut else v for v in x]
        for den in _SNAP_DENOMS:
            cand = tuple(Fraction(v).limit_denominator(den) for v in cleaned)
            if max(abs(float(c) - v) for c, v in zip(cand, cleaned)) > 1e-6:
                continue
            if verify_tcp(inst, cand):
                return cand
    for zero_cut in (1e-3, 1e-7):
        cleaned = [0.0 if abs(v) <= zero_cut else v for v in x]
        if cleaned != x and verify_tcp(inst, cleaned, tol=FLOAT_TOL * 1e-2):
            return tuple(cleaned)
    return None


def solve_enumerate(
    inst: TcpInstance,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_TCP_CAP,
    seed: int = 0,
    tol: float = FLOAT_TOL,
) -> list[TcpSolution]:
    """Support enumeration with damped multi-start Newton per support.

    Keeps only candidates that re-verify; misses are silent (the lane is a
    falsifier/illustrator, not a completeness claim). Verified points are
    snapped to nearby exact rational solutions when possible, duplicates
    within 1e-8 are merged, and the output is ordered lexicographically.
    """
    n = inst.dim
    if n > cap:
        raise ValueError(f"dimension {n} exceeds enumeration cap {cap}")
    rng = random.Random(seed)
    found: list[tuple] = []
    if is_nonneg(inst.q):
        found.append((Fraction(0),) * n)
    for mask in range(1, 2 ** n):
        support = [i for i in range(n) if mask >> i & 1]
        sub = inst.tensor.principal_subtensor([i + 1 for i in support])
        q_sub = [float(inst.q[i]) for i in support]
        radius = _coarse_radius(sub, q_sub)
        starts = [[s] * len(support) for s in (0.1, 1.0, 10.0)]
        starts += [
            [rng.uniform(0.0, radius) for _ in support] for _ in range(budget)
        ]
        for x0 in starts:
            root = _newton(sub, q_sub, x0)
            if root is None:
                continue
            if any(v < -1e-10 for v in root):
                continue
            full = [0.0] * n
            for pos, i in enumerate(support):
                full[i] = max(0.0, root[pos])
            if not verify_tcp(inst, full, tol=tol):
                continue
            snapped = _snap_candidate(inst, full)
            found.append(snapped if snapped is not None else tuple(full))
    found.sort(key=lambda x: tuple(float(v) for v in x))
    merged: list[tuple] = []
    for x in found:
        xf = [float(v) for v in x]
        if not any(max(abs(a - float(b)) for a, b in zip(xf, y)) <= DEDUP_TOL for y in merged):
            merged.append(x)
    return [_make_solution(inst, x) for x in merged]


class OmegaMethod(enum.Enum):
    AUXILIARY_TRANSFER = "auxiliary-transfer"
    ROW_DIAGONAL_REDUCTION = "row-diagonal-reduction"
    DIRECT_ENUMERATION = "direct-enumeration"


@dataclass(frozen=True)
class OmegaReport:
    """Omega-uniqueness answer. ``unique`` is True/False when decided and
    None when the engines cannot certify either way. Certified reports
    carry exact omega values; enumeration-based refutations carry floats."""

    unique: Optional[bool]
    method: OmegaMethod
    omega_values: tuple
    witness_pair: tuple[TcpSolution, TcpSolution] | None = None
    vacuous: bool = False
    lcp_report: WUniquenessReport | None = None
    note: str = ""


def _transfer_report(
    inst: TcpInstance,
    rep: WUniquenessReport,
    method: OmegaMethod,
    reduced_level: bool,
    note: str,
) -> OmegaReport | None:
    """Translate an LCP w-uniqueness report into an omega report.

    ``reduced_level`` marks that the LCP ran over the majorization matrix
    in power coordinates (mixed block zero), in which case non-uniqueness
    maps back through componentwise roots; at the padded level only the
    unique direction transfers.
    """
    n = inst.dim
    if rep.vacuous:
        return OmegaReport(True, method, (), vacuous=True, lcp_report=rep, note=note)
    if rep.unique:
        w = rep.w_values[0]
        return OmegaReport(True, method, (tuple(w[:n]),), lcp_report=rep, note=note)
    if not reduced_level:
        return None
    y1, y2 = rep.witness_pair
    x1 = root_vector(vec(y1), inst.tensor.order - 1)
    x2 = root_vector(vec(y2), inst.tensor.order - 1)
    s1 = _make_solution(inst, x1)
    s2 = _make_solution(inst, x2)
    for s in (s1, s2):
        ok = verify_tcp(inst, s.x) if all(isinstance(v, Fraction) for v in s.x) \
            else verify_tcp(inst, s.x, tol=FLOAT_TOL)
        if not ok:
            raise AssertionError("mapped witness failed verification")
    return OmegaReport(
        False, method, (s1.omega, s2.omega), witness_pair=(s1, s2),
        lcp_report=rep, note=note)


def omega_unique(
    inst: TcpInstance,
    lcp_cap: int = DEFAULT_ENUM_CAP,
    budget: int = DEFAULT_BUDGET,
    tcp_cap: int = DEFAULT_TCP_CAP,
    seed: int = 0,
) -> OmegaReport:
    """Decide omega-uniqueness where a companion-LCP certificate applies;
    otherwise fall back to enumeration, which refutes with a witness pair
    or reports unknown, never a heuristic certificate."""
    t = inst.tensor
    system = build(t)
    if mixed_block_is_zero(system):
        # The polynomial map equals M(A) applied to componentwise powers, so
        # solutions correspond exactly across the power substitution and the
        # majorization-level LCP decides both directions.
        method = (OmegaMethod.ROW_DIAGONAL_REDUCTION if t.is_row_diagonal()
                  else OmegaMethod.AUXILIARY_TRANSFER)
        if t.dim <= lcp_cap:
            rep = w_unique(reduced_lcp(inst), cap=lcp_cap)
            out = _transfer_report(inst, rep, method, reduced_level=True,
                                   note="majorization-level system (mixed block zero)")
            if out is not None:
                return out
    elif system.size <= lcp_cap:
        qbar = pad_rhs(inst.q, system.size)
        rep = w_unique(LcpInstance(system.abar, qbar), cap=lcp_cap)
        out = _transfer_report(inst, rep, OmegaMethod.AUXILIARY_TRANSFER,
                               reduced_level=False,
                               note="padded-level system")
        if out is not None:
            return out
    # Refute-or-unknown lane.
    if inst.dim > tcp_cap:
        return OmegaReport(None, OmegaMethod.DIRECT_ENUMERATION, (),
                           note="dimension above enumeration cap")
    sols = solve_enumerate(inst, budget=budget, cap=tcp_cap, seed=seed)
    omegas: list[tuple] = []
    for s in sols:
        of = tuple(float(v) for v in s.omega)
        if not any(max(abs(a - b) for a, b in zip(of, o)) <= DEDUP_TOL for o in omegas):
            omegas.append(of)
    if len(omegas) > 1:
        pair = None
        for i, a in enumerate(sols):
            for b in sols[i + 1:]:
                if max(abs(float(u) - float(v)) for u, v in zip(a.omega, b.omega)) > DEDUP_TOL:
                    pair = (a, b)
                    break
            if pair:
                break
        return OmegaReport(False, OmegaMethod.DIRECT_ENUMERATION,
                           tuple(omegas), witness_pair=pair)
    return OmegaReport(None, OmegaMethod.DIRECT_ENUMERATION, tuple(omegas),
                       note="enumeration found no second omega; not a certificate")


@dataclass(frozen=True)
class LiftCheck:
    x: tuple
    y: tuple
    passed: bool


@dataclass(frozen=True)
class LiftReport:
    checks: tuple[LiftCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def check_lift_theorem(
    inst: TcpInstance,
    solutions: Sequence[Sequence] | None = None,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> LiftReport:
    """Every solution's monomial lift must solve the padded companion LCP.

    A failure here is a falsification report against the implementation,
    not an expected outcome.
    """
    system = build(inst.tensor)
    if system.abar is None:
        raise ValueError("padded system above the dense materialization cap")
    qbar = pad_rhs(inst.q, system.size)
    lcp_inst = LcpInstance(system.abar, qbar)
    if solutions is None:
        solutions = [s.x for s in solve_enumerate(inst, budget=budget, seed=seed)]
    checks = []
    for x in solutions:
        exact = all(isinstance(v, (Fraction, int)) for v in x)
        xv = vec(x) if exact else tuple(float(v) for v in x)
        y = auxiliary.lift_solution(xv, system)
        ok = lcp_verify(lcp_inst, y) if exact else lcp_verify(lcp_inst, y, tol=FLOAT_TOL)
        checks.append(LiftCheck(tuple(xv), tuple(y), ok))
    return LiftReport(tuple(checks))
