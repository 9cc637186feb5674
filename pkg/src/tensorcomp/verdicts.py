"""Three-valued verdicts for class-membership queries.

``Holds`` always carries a machine-checkable certificate and ``Fails``
always carries a counterexample; sampling alone can only produce ``Fails``
or ``Unknown``. Certificates know how to re-verify themselves so reports
can be audited without trusting the checker that produced them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .linalg import Matrix, Vec, is_zero_vec


class VerdictStatus(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Counterexample:
    """Exact witness violating a class definition.

    ``point`` is the violating vector; ``products`` holds the per-index
    values the definition constrains (for instance ``x_i (Ax^{m-1})_i``)
    and ``image`` the map value showing the conclusion fails.
    """

    point: tuple
    products: tuple | None = None
    image: tuple | None = None
    note: str = ""


@dataclass(frozen=True)
class SearchReport:
    seeds: int = 0
    grid_points: int = 0
    samples: int = 0
    descents: int = 0
    best_margin: Optional[float] = None
    note: str = ""


@dataclass(frozen=True)
class ConeRayCertificate:
    """Adequacy certificate for a matrix: per sign pattern, the extreme rays
    of the cone ``{z : s_i z_i >= 0, s_i (Mz)_i <= 0}``, every one of which
    is annihilated by M. Sign patterns come in +/- pairs whose cones are
    reflections, so only patterns with a leading + are stored."""

    size: int
    cones: tuple[tuple[tuple[int, ...], tuple[Vec, ...]], ...]

    def check(self, m: Matrix) -> bool:
        if m.rows != self.size or m.cols != self.size:
            return False
        for sigma, rays in self.cones:
            for r in rays:
                mr = m.mul_vec(r)
                if not is_zero_vec(mr):
                    return False
                if any(s * x < 0 for s, x in zip(sigma, r)):
                    return False
                if any(s * v > 0 for s, v in zip(sigma, mr)):
                    return False
        return True


@dataclass(frozen=True)
class BlockCertificate:
    """Tensor adequacy via the square padded system: even order, vanishing
    mixed-monomial block, and an adequate majorization matrix."""

    order: int
    majorization: Matrix
    cone_certificate: ConeRayCertificate

    def check(self) -> bool:
        return self.order % 2 == 0 and self.cone_certificate.check(self.majorization)


@dataclass(frozen=True)
class ImplicationCertificate:
    """Membership implied by a stronger certified class."""

    implication: str
    inner: object


@dataclass(frozen=True)
class DiagonalFormCertificate:
    """The degree-m form aggregates to a sum of pure powers: all mixed
    monomial coefficients of the symmetrized form vanish and the listed
    pure coefficients are nonnegative (even order), or every aggregate
    vanishes outright."""

    order: int
    pure_coefficients: tuple[Fraction, ...]

    def check(self) -> bool:
        if all(c == 0 for c in self.pure_coefficients):
            return True
        return self.order % 2 == 0 and all(c >= 0 for c in self.pure_coefficients)


@dataclass(frozen=True)
class StructuralCertificate:
    """Certificate for properties decided by full inspection of the stored
    entries (for example row-diagonality)."""

    detail: str


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    certificate: object | None = None
    counterexample: Counterexample | None = None
    search_report: SearchReport | None = None

    @classmethod
    def holds(cls, certificate) -> "Verdict":
        if certificate is None:
            raise ValueError("a Holds verdict requires a certificate")
        return cls(VerdictStatus.HOLDS, certificate=certificate)

    @classmethod
    def fails(cls, counterexample: Counterexample,
              search_report: SearchReport | None = None) -> "Verdict":
        if counterexample is None:
            raise ValueError("a Fails verdict requires a counterexample")
        return cls(VerdictStatus.FAILS, counterexample=counterexample,
                   search_report=search_report)

    @classmethod
    def unknown(cls, search_report: SearchReport | None = None) -> "Verdict":
        return cls(VerdictStatus.UNKNOWN, search_report=search_report)

    @property
    def exit_code(self) -> int:
        return {VerdictStatus.HOLDS: 0, VerdictStatus.FAILS: 1,
                VerdictStatus.UNKNOWN: 2}[self.status]
