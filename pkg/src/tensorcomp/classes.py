"""Membership checkers for the tensor classes.

Each checker returns a three-valued :class:`~tensorcomp.verdicts.Verdict`.
Holds requires a theorem-backed certificate (the universally quantified
class conditions are not decidable by sampling); Fails requires a
counterexample that re-verifies in exact arithmetic. The shared falsifier
runs an exact rational grid, uniform float sampling, and gradient descent
on a class-specific violation margin, snapping float hits to nearby
rationals before accepting them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .auxiliary import build, mixed_block_is_zero
from .lcp import matrix_column_adequate
from .tensor import SparseTensor, full_form_aggregates
from .verdicts import (
    BlockCertificate, Counterexample, DiagonalFormCertificate,
    ImplicationCertificate, SearchReport, StructuralCertificate, Verdict,
    VerdictStatus,
)

CLASS_NAMES = (
    "column-adequate",
    "weak-column-adequate",
    "column-sufficient",
    "p0",
    "p",
    "weak-p0",
    "psd",
    "semi-positive",
    "strictly-semi-positive",
    "row-diagonal",
)

_ALIASES = {
    "columnadequate": "column-adequate",
    "weakcolumnadequate": "weak-column-adequate",
    "columnsufficient": "column-sufficient",
    "weakp0": "weak-p0",
    "semipositive": "semi-positive",
    "strictlysemipositive": "strictly-semi-positive",
    "rowdiagonal": "row-diagonal",
}


def normalize_class_name(name: str) -> str:
    key = name.strip().lower()
    flat = key.replace("-", "").replace("_", "").replace(" ", "")
    if key in CLASS_NAMES:
        return key
    if flat in _ALIASES:
        return _ALIASES[flat]
    if flat in ("p0", "p", "psd"):
        return flat
    raise ValueError(f"unrecognized class name {name!r}; known: {', '.join(CLASS_NAMES)}")


@dataclass(frozen=True)
class ClassQuery:
    class_name: str
    tensor: SparseTensor

    def __post_init__(self) -> None:
        object.__setattr__(self, "class_name", normalize_class_name(self.class_name))


@dataclass
class SearchBudget:
    seeds: int = 2
    samples: int = 10000
    descent_rounds: int = 25
    descent_steps: int = 60


# ---------------------------------------------------------------------------
# falsifier kernel


def _grid_axis(n: int) -> list[Fraction]:
    if n <= 3:
        vals = [0, 2, -2, 1, -1, Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(-3, 2)]
    elif n == 4:
        vals = [0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)]
    else:
        vals = [0, 1, -1, 2]
    return [Fraction(v) for v in vals]


def _grid_points(n: int, nonneg: bool) -> list[tuple[Fraction, ...]]:
    axis = [v for v in _grid_axis(n) if not nonneg or v >= 0]
    pts = [p for p in itertools.product(axis, repeat=n) if any(v != 0 for v in p)]
    pts.sort(key=lambda p: (sum(1 for v in p if v != 0), sum(abs(v) for v in p), p))
    return pts


def _snap_candidates(x: Sequence[float]) -> list[tuple[Fraction, ...]]:
    outs = []
    for den in (6, 1000, 10 ** 6):
        outs.append(tuple(Fraction(v).limit_denominator(den) for v in x))
    return outs


def falsify(
    tensor: SparseTensor,
    exact_check: Callable[[tuple[Fraction, ...]], Optional[Counterexample]],
    margin: Callable[[list[float]], float],
    nonneg: bool = False,
    budget: SearchBudget | None = None,
    seed: int = 0,
) -> tuple[Optional[Counterexample], SearchReport]:
    """Shared counterexample search.

    ``exact_check`` decides violation at a rational point;``margin`` is a
    float score, nonpositive near violations, minimized by the descent
    stage. Any float candidate is snapped to rationals and re-checked
    exactly before being reported; candidates that do not survive snapping
    are dropped (the verdict then stays Unknown).
    """
    budget = budget or SearchBudget()
    n = tensor.dim
    grid = _grid_points(n, nonneg)
    for p in grid:
        cex = exact_check(p)
        if cex is not None:
            return cex, SearchReport(seeds=0, grid_points=len(grid))
    best_margin = float("inf")
    best_x: list[float] | None = None
    descents = 0
    unsnappable = 0

    def try_float(xf: list[float]) -> Optional[Counterexample]:
        nonlocal best_margin, best_x, unsnappable
        m = margin(xf)
        if m < best_margin:
            best_margin, best_x = m, list(xf)
        if m <= 1e-9:
            for cand in _snap_candidates(xf):
                if any(v != 0 for v in cand) and (not nonneg or all(v >= 0 for v in cand)):
                    cex = exact_check(cand)
                    if cex is not None:
                        return cex
            if m < -1e-6:
                unsnappable += 1
        return None

    for s in range(budget.seeds):
        rng = random.Random(seed * 100003 + s)
        for _ in range(budget.samples):
            xf = [rng.uniform(0.0 if nonneg else -2.0, 2.0) for _ in range(n)]
            cex = try_float(xf)
            if cex is not None:
                return cex, SearchReport(seeds=s + 1, grid_points=len(grid),
                                         samples=budget.samples, best_margin=0.0)
        # Gradient descent on the margin from the best seen points.
        for _ in range(budget.descent_rounds):
            if best_x is None:
                break
            descents += 1
            x = [v + rng.gauss(0, 0.05) for v in best_x]
            lr = 0.1
            for _ in range(budget.descent_steps):
                g = []
                h = 1e-6
                for i in range(n):
                    xp, xm = list(x), list(x)
                    xp[i] += h
                    xm[i] -= h
                    if nonneg:
                        xp[i] = max(xp[i], 0.0)
                        xm[i] = max(xm[i], 0.0)
                    g.append((margin(xp) - margin(xm)) / (2 * h))
                x = [v - lr * gi for v, gi in zip(x, g)]
                if nonneg:
                    x = [max(v, 0.0) for v in x]
                norm = max(abs(v) for v in x)
                if norm > 4.0:
                    x = [v * 2.0 / norm for v in x]
                if norm < 1e-3:
                    x = [v + 0.1 for v in x]
                lr *= 0.95
                cex = try_float(x)
                if cex is not None:
                    return cex, SearchReport(
                        seeds=s + 1, grid_points=len(grid),
                        samples=budget.samples, descents=descents, best_margin=0.0)
    return None, SearchReport(
        seeds=budget.seeds, grid_points=len(grid), samples=budget.seeds * budget.samples,
        descents=descents, best_margin=best_margin if best_margin < float("inf") else None,
        note=(f"{unsnappable} numerical-only candidates failed exact re-verification"
              if unsnappable else ""))


# ---------------------------------------------------------------------------
# per-class exact violation predicates and float margins

_GAP = 1e-7


def _adequacy_exact(t: SparseTensor, weights_power: int):
    def check(x: tuple[Fraction, ...]) -> Optional[Counterexample]:
        g = t.apply_deg(x)
        prods = tuple(xi ** weights_power * gi for xi, gi in zip(x, g))
        if all(p <= 0 for p in prods) and any(v != 0 for v in g):
            return Counterexample(point=tuple(x), products=prods, image=tuple(g))
        return None
    return check


def _adequacy_margin(t: SparseTensor, weights_power: int):
    def margin(x: list[float]) -> float:
        g = t.apply_deg_float(x)
        prods = max(xi ** weights_power * gi for xi, gi in zip(x, g))
        gnorm = max(abs(v) for v in g)
        return max(prods, _GAP - gnorm)
    return margin


def _sufficiency_exact(t: SparseTensor):
    def check(x: tuple[Fraction, ...]) -> Optional[Counterexample]:
        g = t.apply_deg(x)
        prods = tuple(xi * gi for xi, gi in zip(x, g))
        if all(p <= 0 for p in prods) and any(p < 0 for p in prods):
            return Counterexample(point=tuple(x), products=prods, image=tuple(g))
        return None
    return check


def _sufficiency_margin(t: SparseTensor):
    def margin(x: list[float]) -> float:
        g = t.apply_deg_float(x)
        prods = [xi * gi for xi, gi in zip(x, g)]
        return max(max(prods), _GAP + min(prods))
    return margin


def _p_exact(t: SparseTensor, strict: bool):
    # Violation of P needs every supported product <= 0; of P0, < 0.
    def check(x: tuple[Fraction, ...]) -> Optional[Counterexample]:
        if all(v == 0 for v in x):
            return None
        g = t.apply_deg(x)
        prods = tuple(xi * gi for xi, gi in zip(x, g))
        ok = all(
            (p <= 0 if strict else p < 0)
            for xi, p in zip(x, prods) if xi != 0
        )
        if ok:
            return Counterexample(point=tuple(x), products=prods, image=tuple(g))
        return None
    return check


def _p_margin(t: SparseTensor, strict: bool):
    theta = 1e-5
    def margin(x: list[float]) -> float:
        g = t.apply_deg_float(x)
        active = [xi * gi for xi, gi in zip(x, g) if abs(xi) > theta]
        if not active:
            return 1.0
        worst = max(active)
        return worst if strict else worst + _GAP
    return margin


def _weak_p_exact(t: SparseTensor):
    k = t.order - 1
    def check(x: tuple[Fraction, ...]) -> Optional[Counterexample]:
        if all(v == 0 for v in x):
            return None
        g = t.apply_deg(x)
        prods = tuple(xi ** k * gi for xi, gi in zip(x, g))
        if all(p < 0 for xi, p in zip(x, prods) if xi != 0):
            return Counterexample(point=tuple(x), products=prods, image=tuple(g))
        return None
    return check


def _weak_p_margin(t: SparseTensor):
    k = t.order - 1
    theta = 1e-5
    def margin(x: list[float]) -> float:
        g = t.apply_deg_float(x)
        active = [xi ** k * gi for xi, gi in zip(x, g) if abs(xi) > theta]
        if not active:
            return 1.0
        return max(active) + _GAP
    return margin


def _psd_exact(t: SparseTensor):
    def check(x: tuple[Fraction, ...]) -> Optional[Counterexample]:
        val = t.apply_full(x)
        if val < 0:
            return Counterexample(point=tuple(x), image=(val,))
        return None
    return check


def _psd_margin(t: SparseTensor):
    def margin(x: list[float]) -> float:
        g = t.apply_deg_float(x)
        return sum(xi * gi for xi, gi in zip(x, g)) + _GAP
    return margin


def _semipositive_exact(t: SparseTensor, strict: bool):
    # Violation: x >= 0, x != 0 and every supported map value negative
    # (nonpositive refutes the strict variant).
    def check(x: tuple[Fraction, ...]) -> Optional[Counterexample]:
        if any(v < 0 for v in x) or all(v == 0 for v in x):
            return None
        g = t.apply_deg(x)
        ok = all(
            (gi <= 0 if strict else gi < 0)
            for xi, gi in zip(x, g) if xi > 0
        )
        if ok:
            return Counterexample(point=tuple(x), image=tuple(g))
        return None
    return check


def _semipositive_margin(t: SparseTensor, strict: bool):
    theta = 1e-5
    def margin(x: list[float]) -> float:
        g = t.apply_deg_float(x)
        active = [gi for xi, gi in zip(x, g) if xi > theta]
        if not active:
            return 1.0
        worst = max(active)
        return worst if strict else worst + _GAP
    return margin


# ---------------------------------------------------------------------------
# checkers


def check_column_adequate(
    t: SparseTensor,
    budget: SearchBudget | None = None,
    seed: int = 0,
    matrix_cap: int = 8,
) -> Verdict:
    """Certificate route: even order, vanishing mixed block, and an
    adequate majorization matrix. Otherwise the falsifier looks for a
    sign-reversed vector with a nonzero image."""
    if t.order % 2 == 0:
        system = build(t)
        if mixed_block_is_zero(system):
            mv = matrix_column_adequate(t.majorization(), cap=matrix_cap)
            if mv.status == VerdictStatus.HOLDS:
                return Verdict.holds(BlockCertificate(
                    t.order, t.majorization(), mv.certificate))
    cex, report = falsify(
        t, _adequacy_exact(t, 1), _adequacy_margin(t, 1), budget=budget, seed=seed)
    if cex is not None:
        return Verdict.fails(cex, report)
    return Verdict.unknown(report)


def check_weak_column_adequate(
    t: SparseTensor,
    budget: SearchBudget | None = None,
    seed: int = 0,
    matrix_cap: int = 8,
) -> Verdict:
    """Even order: identical to the ordinary checker (the sign weights
    agree). Odd order: falsifier only."""
    k = t.order - 1
    if t.order % 2 == 0:
        v = check_column_adequate(t, budget=budget, seed=seed, matrix_cap=matrix_cap)
        if v.status == VerdictStatus.FAILS:
            x = v.counterexample.point
            g = t.apply_deg(x)
            prods = tuple(xi ** k * gi for xi, gi in zip(x, g))
            assert all(p <= 0 for p in prods)
            return Verdict.fails(
                Counterexample(point=x, products=prods, image=tuple(g)),
                v.search_report)
        return v
    cex, report = falsify(
        t, _adequacy_exact(t, k), _adequacy_margin(t, k), budget=budget, seed=seed)
    if cex is not None:
        return Verdict.fails(cex, report)
    return Verdict.unknown(report)


def check_column_sufficient(
    t: SparseTensor,
    budget: SearchBudget | None = None,
    seed: int = 0,
    matrix_cap: int = 8,
) -> Verdict:
    adequate = check_column_adequate(t, budget=budget, seed=seed, matrix_cap=matrix_cap)
    if adequate.status == VerdictStatus.HOLDS:
        return Verdict.holds(ImplicationCertificate(
            "column-adequate implies column-sufficient", adequate.certificate))
    cex, report = falsify(
        t, _sufficiency_exact(t), _sufficiency_margin(t), budget=budget, seed=seed)
    if cex is not None:
        return Verdict.fails(cex, report)
    return Verdict.unknown(report)


def check_p0(
    t: SparseTensor,
    budget: SearchBudget | None = None,
    seed: int = 0,
    matrix_cap: int = 8,
) -> Verdict:
    adequate = check_column_adequate(t, budget=budget, seed=seed, matrix_cap=matrix_cap)
    if adequate.status == VerdictStatus.HOLDS:
        return Verdict.holds(ImplicationCertificate(
            "column-adequate implies P0", adequate.certificate))
    cex, report = falsify(
        t, _p_exact(t, strict=False), _p_margin(t, strict=False),
        budget=budget, seed=seed)
    if cex is not None:
        return Verdict.fails(cex, report)
    return Verdict.unknown(report)


def check_p(
    t: SparseTensor,
    budget: SearchBudget | None = None,
    seed: int = 0,
) -> Verdict:
    cex, report = falsify(
        t, _p_exact(t, strict=True), _p_margin(t, strict=True),
        budget=budget, seed=seed)
    if cex is not None:
        return Verdict.fails(cex, report)
    return Verdict.unknown(report)


def check_weak_p0(
    t: SparseTensor,
    budget: SearchBudget | None = None,
    seed: int = 0,
    matrix_cap: int = 8,
) -> Verdict:
    if t.order % 2 == 0:
        p0 = check_p0(t, budget=budget, seed=seed, matrix_cap=matrix_cap)
        if p0.status == VerdictStatus.HOLDS:
            return Verdict.holds(ImplicationCertificate(
                "even order: weak P0 equals P0", p0.certificate))
    cex, report = falsify(
        t, _weak_p_exact(t), _weak_p_margin(t), budget=budget, seed=seed)
    if cex is not None:
        return Verdict.fails(cex, report)
    return Verdict.unknown(report)


def check_psd(
    t: SparseTensor,
    budget: SearchBudget | None = None,
    seed: int = 0,
) -> Verdict:
    """Certificate route: the symmetrized degree-m form reduces to pure
    powers (all mixed aggregates cancel) with nonnegative coefficients and
    even order, or vanishes identically. Odd order with a nonvanishing form
    fails by flipping the sign of any point where the form is nonzero."""
    aggregates = full_form_aggregates(t)
    n = t.dim
    pure = tuple(
        aggregates.get(tuple(t.order if j == i else 0 for j in range(n)), Fraction(0))
        for i in range(n)
    )
    mixed_zero = all(
        sum(1 for a in alpha if a) == 1 for alpha in aggregates
    )
    if not aggregates:
        return Verdict.holds(DiagonalFormCertificate(t.order, pure))
    if t.order % 2 == 0 and mixed_zero and all(c >= 0 for c in pure):
        return Verdict.holds(DiagonalFormCertificate(t.order, pure))
    cex, report = falsify(t, _psd_exact(t), _psd_margin(t), budget=budget, seed=seed)
    if cex is not None:
        return Verdict.fails(cex, report)
    if t.order % 2 == 1:
        # Some aggregate is nonzero, so the form is nonzero somewhere on the
        # rational grid; its sign flips with x -> -x.
        for p in _grid_points(n, nonneg=False):
            val = t.apply_full(p)
            if val != 0:
                x = p if val < 0 else tuple(-v for v in p)
                return Verdict.fails(Counterexample(
                    point=x, image=(t.apply_full(x),),
                    note="odd order: the form takes both signs"), report)
    return Verdict.unknown(report)


def check_semi_positive(
    t: SparseTensor,
    strict: bool = False,
    budget: SearchBudget | None = None,
    seed: int = 0,
) -> Verdict:
    cex, report = falsify(
        t, _semipositive_exact(t, strict), _semipositive_margin(t, strict),
        nonneg=True, budget=budget, seed=seed)
    if cex is not None:
        return Verdict.fails(cex, report)
    return Verdict.unknown(report)


def check_row_diagonal(t: SparseTensor) -> Verdict:
    for idx in sorted(t.entries):
        if len(set(idx[1:])) != 1:
            return Verdict.fails(Counterexample(
                point=idx,
                note="stored index tuple has unequal trailing indices"))
    return Verdict.holds(StructuralCertificate(
        f"all {t.nnz} stored tuples have equal trailing indices"))


_DISPATCH = {
    "column-adequate": lambda t, **kw: check_column_adequate(t, **kw),
    "weak-column-adequate": lambda t, **kw: check_weak_column_adequate(t, **kw),
    "column-sufficient": lambda t, **kw: check_column_sufficient(t, **kw),
    "p0": lambda t, **kw: check_p0(t, **kw),
    "p": lambda t, **kw: check_p(t, **{k: v for k, v in kw.items() if k != "matrix_cap"}),
    "weak-p0": lambda t, **kw: check_weak_p0(t, **kw),
    "psd": lambda t, **kw: check_psd(t, **{k: v for k, v in kw.items() if k != "matrix_cap"}),
    "semi-positive": lambda t, **kw: check_semi_positive(
        t, strict=False, **{k: v for k, v in kw.items() if k != "matrix_cap"}),
    "strictly-semi-positive": lambda t, **kw: check_semi_positive(
        t, strict=True, **{k: v for k, v in kw.items() if k != "matrix_cap"}),
    "row-diagonal": lambda t, **kw: check_row_diagonal(t),
}


def check(query: ClassQuery | str, tensor: SparseTensor | None = None,
          budget: SearchBudget | None = None, seed: int = 0,
          matrix_cap: int = 8) -> Verdict:
    """Dispatch a class-membership query by name."""
    if isinstance(query, ClassQuery):
        name, t = query.class_name, query.tensor
    else:
        name = normalize_class_name(query)
        if tensor is None:
            raise ValueError("tensor required when querying by name")
        t = tensor
    if name == "row-diagonal":
        return check_row_diagonal(t)
    return _DISPATCH[name](t, budget=budget, seed=seed, matrix_cap=matrix_cap)
