"""Intersection-form arithmetic on H² of rational surfaces and the Einstein obstruction predicates"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Literal, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, field_validator

from .cone import NormalFan
from .errors import (
    InvalidFan,
    LatticeMismatch,
    NotFuturePointing,
    NullOrSpacelikeOmega,
    OutOfRange,
)
from .invariants import PiMultiple, virtual_action
from .polygon import DelzantPolygon, Number, format_rational, to_rational

logger = logging.getLogger(__name__)

Matrix = tuple[tuple[Number, ...], ...]


def _coerce(value: Any) -> Number:
    if isinstance(value, (float, np.floating)):
        return float(value)
    return to_rational(value)


@dataclass(frozen=True)
class LorentzLattice:
    """H²(M) with its intersection form of signature (1, rank − 1)"""
    name: str
    gram: Matrix
    c1: tuple[Number, ...]
    reference: tuple[Number, ...]  # future-pointing timelike
    labels: tuple[str, ...] = ()
    check_noether: bool = True

    def __post_init__(self):
        n = len(self.gram)
        if any(len(row) != n for row in self.gram):
            raise ValueError("Gram matrix must be square")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        if len(self.c1) != n or len(self.reference) != n:
            raise ValueError(f"classes must have {n} coefficients")
        eigenvalues = np.linalg.eigvalsh(np.array(self.gram, dtype=float))
        if np.any(np.abs(eigenvalues) < 1e-12) or int(np.sum(eigenvalues > 0)) != 1:
            raise ValueError(f"intersection form is not Lorentzian: eigenvalues {eigenvalues}")
        if self._pair(self.reference, self.reference) <= 0:
            raise NotFuturePointing("reference class must be timelike")
        if self.check_noether and self._pair(self.c1, self.c1) != 10 - n:
            raise ValueError(f"c₁² = {self._pair(self.c1, self.c1)} contradicts c₁² = 2χ + 3τ = {10 - n}")

    def _pair(self, a: Sequence[Number], b: Sequence[Number]) -> Number:
        n = len(self.gram)
        return sum(
            (a[i] * self.gram[i][j] * b[j] for i in range(n) for j in range(n)),
            Fraction(0),
        )

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def euler_characteristic(self) -> int:
        """χ = 2 + b₂ (b₁ = 0)"""
        return 2 + self.rank

    @property
    def signature(self) -> int:
        """τ = b₊ − b₋ with b₊ = 1"""
        return 2 - self.rank

    def cls(self, coefficients: Sequence[Any]) -> "LorentzClass":
        return LorentzClass(self, tuple(_coerce(c) for c in coefficients))

    @property
    def first_chern_class(self) -> "LorentzClass":
        return LorentzClass(self, self.c1)

    @property
    def reference_class(self) -> "LorentzClass":
        return LorentzClass(self, self.reference)


@dataclass(frozen=True)
class LorentzClass:
    lattice: LorentzLattice
    coefficients: tuple[Number, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.lattice.rank:
            raise ValueError(f"{self.lattice.name} classes have {self.lattice.rank} coefficients")

    def __add__(self, other: "LorentzClass") -> "LorentzClass":
        _same_lattice(self, other)
        return LorentzClass(self.lattice, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __mul__(self, scalar: Number) -> "LorentzClass":
        return LorentzClass(self.lattice, tuple(scalar * a for a in self.coefficients))

    __rmul__ = __mul__

    def square(self) -> Number:
        return pair(self, self)

    def __str__(self) -> str:
        labels = self.lattice.labels or tuple(f"e{i}" for i in range(self.lattice.rank))
        terms = [f"{format_rational(c)}·{label}" for c, label in zip(self.coefficients, labels) if c != 0]
        return " + ".join(terms) or "0"


def _same_lattice(a: LorentzClass, b: LorentzClass) -> None:
    if a.lattice != b.lattice:
        raise LatticeMismatch(f"{a.lattice.name} and {b.lattice.name} are different lattices")


def del_pezzo_lattice(k: int) -> LorentzLattice:
    """CP2 blown up at k points: H, E₁…E_k with diag(1, −1, …, −1) and c₁ = 3H − ΣEᵢ"""
    if not 0 <= k <= 8:
        raise OutOfRange(f"del Pezzo surfaces have 0..8 blow-ups, got {k}")
    n = k + 1
    gram = tuple(
        tuple(Fraction(0) if i != j else Fraction(1 if i == 0 else -1) for j in range(n))
        for i in range(n)
    )
    c1 = (Fraction(3),) + (Fraction(-1),) * k
    reference = (Fraction(1),) + (Fraction(0),) * k
    labels = ("H",) + tuple(f"E{i}" for i in range(1, k + 1))
    return LorentzLattice(f"dp{k}", gram, c1, reference, labels)


def quadric_lattice() -> LorentzLattice:
    """CP1 × CP1: F₁, F₂ with [[0, 1], [1, 0]] and c₁ = 2F₁ + 2F₂"""
    gram = ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))
    return LorentzLattice("quadric", gram, (Fraction(2), Fraction(2)), (Fraction(1), Fraction(1)), ("F1", "F2"))


def quadric_class(t: Any) -> LorentzClass:
    """F₁ + tF₂"""
    return quadric_lattice().cls((1, t))


def pair(a: LorentzClass, b: LorentzClass) -> Number:
    _same_lattice(a, b)
    return a.lattice._pair(a.coefficients, b.coefficients)


def is_future_timelike(a: LorentzClass) -> bool:
    return pair(a, a) > 0 and pair(a, a.lattice.reference_class) > 0


def c1_pairing_positive(c1: LorentzClass, omega: LorentzClass) -> bool:
    """c₁·[ω] > 0, which holds for every symplectic class of a del Pezzo surface"""
    return pair(c1, omega) > 0


def _require_future(c1: LorentzClass, omega: LorentzClass) -> None:
    reference = omega.lattice.reference_class
    if pair(c1, c1) < 0 or pair(c1, reference) <= 0:
        raise NotFuturePointing(f"c₁ = {c1} is not in the closed future cone")
    if not is_future_timelike(omega):
        raise NotFuturePointing(f"[ω] = {omega} is not future timelike")


def reverse_cauchy_schwarz_margin(c1: LorentzClass, omega: LorentzClass) -> float:
    """c₁·[ω] − √(c₁²)·√([ω]²), non-negative on the future cone"""
    _require_future(c1, omega)
    return float(pair(c1, omega)) - math.sqrt(float(pair(c1, c1))) * math.sqrt(float(pair(omega, omega)))


def reverse_cauchy_schwarz_defect(c1: LorentzClass, omega: LorentzClass) -> Number:
    """(c₁·[ω])² − c₁²[ω]², exact; zero iff the classes are proportional"""
    _require_future(c1, omega)
    return pair(c1, omega) ** 2 - pair(c1, c1) * pair(omega, omega)


def _action_ratio(c1: LorentzClass, omega: LorentzClass) -> Number:
    omega_sq = pair(omega, omega)
    if omega_sq <= 0:
        raise NullOrSpacelikeOmega(f"[ω]² = {omega_sq} must be positive")
    if not c1_pairing_positive(c1, omega):
        raise NotFuturePointing(f"c₁·[ω] = {pair(c1, omega)} must be positive")
    return pair(c1, omega) ** 2 / omega_sq


def simple_weyl_bound(c1: LorentzClass, omega: LorentzClass) -> float:
    """(4π²/3)(c₁·[ω])²/[ω]²"""
    return float(PiMultiple(Fraction(4, 3), 2) * _action_ratio(c1, omega))


def signature_weyl_bound(tau: int) -> PiMultiple:
    """∫|W|² dμ ≥ 12π²|τ|"""
    return PiMultiple(12 * abs(tau), 2)


def weyl_functional_from_wplus(wplus: float, tau: int) -> float:
    """∫|W|² = 2∫|W₊|² − 12π²τ"""
    return 2 * float(wplus) - float(PiMultiple(12 * tau, 2))


def gursky_type_bound(c1_squared: Number) -> PiMultiple:
    """(4π²/3)c₁², the lower bound for ∫|W₊|² on the anticanonical class"""
    return PiMultiple(Fraction(4, 3) * c1_squared, 2)


def einstein_wplus_upper_bound(c1_squared: Number) -> PiMultiple:
    """∫|W₊|² ≤ 2π²c₁² for an Einstein metric"""
    return PiMultiple(2 * c1_squared, 2)


@dataclass
class ObstructionVerdict:
    predicate: Literal["basic", "toric"]
    lhs: Number
    rhs: Number
    margin: Number
    verdict: Literal["obstructed", "not_obstructed"]

    kind = "obstruct"

    @classmethod
    def compare(cls, predicate: str, lhs: Number, rhs: Number) -> "ObstructionVerdict":
        margin = lhs - rhs
        return cls(predicate, lhs, rhs, margin, "obstructed" if margin >= 0 else "not_obstructed")

    @property
    def obstructed(self) -> bool:
        return self.verdict == "obstructed"

    def to_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "margin": format_rational(self.margin),
            "verdict": self.verdict,
        }


def einstein_obstruction_basic(c1: LorentzClass, omega: LorentzClass) -> ObstructionVerdict:
    """(c₁·[ω])²/[ω]² ≥ (3/2)c₁² rules out an Einstein metric in the conformal class"""
    lhs = _action_ratio(c1, omega)
    if pair(omega, omega.lattice.reference_class) <= 0:
        raise NotFuturePointing(f"[ω] = {omega} is past-pointing")
    return ObstructionVerdict.compare("basic", lhs, Fraction(3, 2) * pair(c1, c1))


def c1_squared_from_fan(fan: Any) -> int:
    """12 − d for a smooth complete fan with d rays"""
    if not isinstance(fan, NormalFan):
        if not isinstance(fan, Sequence):
            raise InvalidFan(f"expected a fan, got {type(fan).__name__}")
        fan = NormalFan(tuple(fan))
    return 12 - len(fan)


def _c1_squared(polygon: DelzantPolygon, c1_squared: Optional[Number]) -> Number:
    return 12 - len(polygon.edges) if c1_squared is None else c1_squared


def einstein_obstruction_toric(polygon: DelzantPolygon, c1_squared: Optional[Number] = None) -> ObstructionVerdict:
    """𝒜 ≥ (3/2)c₁², using 𝒜 = (c₁·[ω])²/[ω]² + ‖𝔉‖²/32π²"""
    return ObstructionVerdict.compare(
        "toric", virtual_action(polygon), Fraction(3, 2) * _c1_squared(polygon, c1_squared)
    )


def in_controlled_cone(polygon: DelzantPolygon, c1_squared: Optional[Number] = None) -> bool:
    """𝒜 < (3/2)c₁²"""
    return virtual_action(polygon) < Fraction(3, 2) * _c1_squared(polygon, c1_squared)


def virtual_action_from_period_data(c1_omega: Number, omega_sq: Number, futaki_norm_sq_over_pi2: Number) -> Number:
    """(c₁·[ω])²/[ω]² + ‖𝔉‖²/32π²"""
    if omega_sq <= 0:
        raise NullOrSpacelikeOmega(f"[ω]² = {omega_sq} must be positive")
    return c1_omega * c1_omega / omega_sq + futaki_norm_sq_over_pi2 / 32


def quadric_threshold() -> float:
    """Larger root of t² − 4t + 1, where (2t + 2)²/(2t) = 12"""
    return float(np.max(np.roots([1, -4, 1]).real))


Coefficient = Union[int, str, float]


class LatticeSpec(BaseModel):
    """Lattice file: {"gram": [[...]], "c1": [...], "omega": [...]}"""
    gram: list[list[Coefficient]]
    c1: list[Coefficient]
    omega: list[Coefficient]

    @field_validator("gram")
    @classmethod
    def _square(cls, v):
        if not v or any(len(row) != len(v) for row in v):
            raise ValueError("gram must be a non-empty square matrix")
        return v


def lattice_from_mapping(data: dict) -> tuple[LorentzLattice, LorentzClass]:
    """User lattice with future orientation fixed by [ω]"""
    spec = LatticeSpec.model_validate(data)
    gram = tuple(tuple(_coerce(x) for x in row) for row in spec.gram)
    omega = tuple(_coerce(x) for x in spec.omega)
    n = len(gram)
    omega_sq = sum((omega[i] * gram[i][j] * omega[j] for i in range(n) for j in range(n)), Fraction(0))
    if omega_sq <= 0:
        raise NullOrSpacelikeOmega(f"[ω]² = {omega_sq} must be positive")
    lattice = LorentzLattice(
        "custom",
        gram,
        tuple(_coerce(x) for x in spec.c1),
        omega,
        check_noether=False,
    )
    return lattice, LorentzClass(lattice, omega)
