"""Polytope invariants: barycenters, inertia, projected scalar curvature, Futaki data, virtual action

Quantities carrying powers of π are returned as :class:`PiMultiple` so exact
identities stay exact; floats appear only when a caller asks for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple, Optional, Union

from .errors import DegenerateInertia
from .polygon import (
    DelzantPolygon,
    Number,
    Point,
    area,
    boundary_moment,
    format_rational,
    lattice_perimeter,
    monomial_moment,
)


@dataclass(frozen=True)
class PiMultiple:
    """coefficient · π^power"""
    coefficient: Number
    power: int = 1

    def __float__(self) -> float:
        return float(self.coefficient) * math.pi**self.power

    def __mul__(self, other: Union["PiMultiple", Number]) -> "PiMultiple":
        if isinstance(other, PiMultiple):
            return PiMultiple(self.coefficient * other.coefficient, self.power + other.power)
        return PiMultiple(self.coefficient * other, self.power)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["PiMultiple", Number]) -> "PiMultiple":
        if isinstance(other, PiMultiple):
            return PiMultiple(self.coefficient / other.coefficient, self.power - other.power)
        return PiMultiple(self.coefficient / other, self.power)

    def __str__(self) -> str:
        pi = {0: "", 1: "π"}.get(self.power, f"π^{self.power}")
        coefficient = format_rational(self.coefficient)
        if not pi:
            return coefficient
        return f"{coefficient}{pi}" if "/" not in coefficient else f"({coefficient}){pi}"


@dataclass(frozen=True)
class AffineFunction:
    """x ↦ prefactor · (constant + gradient·x)"""
    constant: Number
    gradient: tuple[Number, Number]
    prefactor: PiMultiple = PiMultiple(1, 0)

    def __call__(self, point: Point) -> Number:
        """Value without the prefactor"""
        return self.constant + self.gradient[0] * point[0] + self.gradient[1] * point[1]

    @classmethod
    def coordinate(cls, j: int) -> "AffineFunction":
        gradient = (Fraction(1), Fraction(0)) if j == 0 else (Fraction(0), Fraction(1))
        return cls(Fraction(0), gradient)

    @classmethod
    def const(cls, value: Number = Fraction(1)) -> "AffineFunction":
        return cls(value, (Fraction(0), Fraction(0)))


@dataclass(frozen=True)
class InertiaMatrix:
    """Symmetric positive definite 2×2 matrix with its exact inverse"""
    entries: tuple[tuple[Number, Number], tuple[Number, Number]]

    def __post_init__(self):
        (a, b), (c, d) = self.entries
        if b != c:
            raise DegenerateInertia(f"inertia matrix is not symmetric: {b} != {c}")
        if a <= 0 or a * d - b * c <= 0:
            raise DegenerateInertia(f"inertia matrix is not positive definite: {self.entries}")

    @property
    def determinant(self) -> Number:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    @property
    def inverse(self) -> tuple[tuple[Number, Number], tuple[Number, Number]]:
        (a, b), (_, d) = self.entries
        det = self.determinant
        return ((d / det, -b / det), (-b / det, a / det))

    def solve(self, v: tuple[Number, Number]) -> tuple[Number, Number]:
        (p, q), (r, s) = self.inverse
        return (p * v[0] + q * v[1], r * v[0] + s * v[1])

    def inverse_norm_sq(self, v: tuple[Number, Number]) -> Number:
        """vᵀ Π⁻¹ v"""
        w = self.solve(v)
        return v[0] * w[0] + v[1] * w[1]


class VertexPositivity(NamedTuple):
    minimum: Number  # of þ(ς)/4π
    vertex_index: int
    vertex: Point
    values: tuple[Number, ...]


class FutakiData(NamedTuple):
    covector: tuple[Number, Number]  # coefficients of π
    norm_sq: PiMultiple  # power 2

    @property
    def norm_sq_over_pi2(self) -> Number:
        return self.norm_sq.coefficient


class WeylBounds(NamedTuple):
    bound: PiMultiple  # (4π²/3)·𝒜
    simple: PiMultiple  # (4π²/3)·|∂P|²/(2|P|)


def interior_barycenter(polygon: DelzantPolygon) -> tuple[Number, Number]:
    a = area(polygon)
    return (monomial_moment(polygon, 1, 0) / a, monomial_moment(polygon, 0, 1) / a)


def boundary_barycenter(polygon: DelzantPolygon) -> tuple[Number, Number]:
    length = lattice_perimeter(polygon)
    return (boundary_moment(polygon, 1, 0) / length, boundary_moment(polygon, 0, 1) / length)


def displacement(polygon: DelzantPolygon) -> tuple[Number, Number]:
    """𝔇 = ⟨x⟩ − x̄"""
    inner, outer = interior_barycenter(polygon), boundary_barycenter(polygon)
    return (outer[0] - inner[0], outer[1] - inner[1])


def inertia_matrix(polygon: DelzantPolygon) -> InertiaMatrix:
    """Central second moments Π_jk = ∫(x_j − x̄_j)(x_k − x̄_k) da"""
    a = area(polygon)
    cx, cy = interior_barycenter(polygon)
    xx = monomial_moment(polygon, 2, 0) - a * cx * cx
    xy = monomial_moment(polygon, 1, 1) - a * cx * cy
    yy = monomial_moment(polygon, 0, 2) - a * cy * cy
    return InertiaMatrix(((xx, xy), (xy, yy)))


def projected_scalar_curvature(polygon: DelzantPolygon) -> AffineFunction:
    """þ(ς) = 4π|∂P|(1/|P| + (x − x̄)·Π⁻¹𝔇)

    The |∂P| factor multiplies the whole bracket; it is what makes
    ∫_P f þ(ς) da = 4π∫_∂P f dλ hold for every affine f.
    """
    perimeter = lattice_perimeter(polygon)
    center = interior_barycenter(polygon)
    v = inertia_matrix(polygon).solve(displacement(polygon))
    gradient = (perimeter * v[0], perimeter * v[1])
    constant = perimeter / area(polygon) - gradient[0] * center[0] - gradient[1] * center[1]
    return AffineFunction(constant, gradient, PiMultiple(4, 1))


def vertex_positivity(polygon: DelzantPolygon) -> VertexPositivity:
    """Minimum of þ(ς)/4π over P, attained at a vertex since þ(ς) is affine"""
    scalar = projected_scalar_curvature(polygon)
    values = tuple(scalar(v) for v in polygon.vertices)
    index = min(range(len(values)), key=values.__getitem__)
    return VertexPositivity(values[index], index, polygon.vertices[index], values)


def futaki(polygon: DelzantPolygon) -> FutakiData:
    """𝔉 = −4π|∂P|𝔇 with ‖𝔉‖² = 16π²|∂P|²·𝔇ᵀΠ⁻¹𝔇"""
    perimeter = lattice_perimeter(polygon)
    d = displacement(polygon)
    q = inertia_matrix(polygon).inverse_norm_sq(d)
    return FutakiData(
        (-4 * perimeter * d[0], -4 * perimeter * d[1]),
        PiMultiple(16 * perimeter * perimeter * q, 2),
    )


def virtual_action(polygon: DelzantPolygon) -> Number:
    """𝒜 = (|∂P|²/2)(1/|P| + 𝔇·Π⁻¹𝔇)"""
    perimeter = lattice_perimeter(polygon)
    q = inertia_matrix(polygon).inverse_norm_sq(displacement(polygon))
    return perimeter * perimeter / 2 * (1 / area(polygon) + q)


def virtual_action_cohomological(polygon: DelzantPolygon) -> Number:
    """(c₁·[ω])²/[ω]² + ‖𝔉‖²/32π², with c₁·[ω] = |∂P| and [ω]² = 2|P|"""
    c1_omega = lattice_perimeter(polygon)
    omega_sq = 2 * area(polygon)
    norm = futaki(polygon).norm_sq
    return c1_omega * c1_omega / omega_sq + (norm / PiMultiple(32, 2)).coefficient


def weyl_lower_bound(polygon: DelzantPolygon) -> WeylBounds:
    """Lower bounds for ∫|W₊|² dμ"""
    perimeter = lattice_perimeter(polygon)
    constant = PiMultiple(Fraction(4, 3), 2)
    return WeylBounds(
        constant * virtual_action(polygon),
        constant * (perimeter * perimeter / (2 * area(polygon))),
    )


def average_hermitian_scalar(polygon: DelzantPolygon) -> PiMultiple:
    """ς̄ = 4π|∂P|/|P|"""
    return PiMultiple(4 * lattice_perimeter(polygon) / area(polygon), 1)


def _integrate_product(polygon: DelzantPolygon, f: AffineFunction, g: AffineFunction) -> Number:
    """∫_P f·g da for affine f and g (prefactors ignored)"""
    a = area(polygon)
    m1 = (monomial_moment(polygon, 1, 0), monomial_moment(polygon, 0, 1))
    m2 = (
        (monomial_moment(polygon, 2, 0), monomial_moment(polygon, 1, 1)),
        (monomial_moment(polygon, 1, 1), monomial_moment(polygon, 0, 2)),
    )
    total = f.constant * g.constant * a
    for j in range(2):
        total += (f.constant * g.gradient[j] + g.constant * f.gradient[j]) * m1[j]
        for k in range(2):
            total += f.gradient[j] * g.gradient[k] * m2[j][k]
    return total


def lejmi_pairing_residual(polygon: DelzantPolygon, f: AffineFunction) -> Number:
    """∫_P f·(þ(ς)/4π) da − ∫_∂P f dλ; zero for every affine f"""
    scalar = projected_scalar_curvature(polygon)
    boundary = (
        f.constant * boundary_moment(polygon, 0, 0)
        + f.gradient[0] * boundary_moment(polygon, 1, 0)
        + f.gradient[1] * boundary_moment(polygon, 0, 1)
    )
    return _integrate_product(polygon, f, scalar) - boundary


def projected_scalar_l2(polygon: DelzantPolygon) -> Number:
    """∫_P (þ(ς)/4π)² da, equal to 2𝒜"""
    scalar = projected_scalar_curvature(polygon)
    return _integrate_product(polygon, scalar, scalar)


def scalar_l2_lower_bound(polygon: DelzantPolygon) -> PiMultiple:
    """∫ ς² dμ ≥ ∫ þ(ς)² dμ = 32π²𝒜"""
    return PiMultiple(32 * virtual_action(polygon), 2)


def _parse(value: Any) -> Number:
    if isinstance(value, str):
        return Fraction(value)
    return value


def _pair(values) -> tuple[Number, Number]:
    return (_parse(values[0]), _parse(values[1]))


@dataclass
class InvariantReport:
    """Every polytope invariant of one polygon"""
    area: Number
    perimeter: Number
    barycenter_interior: tuple[Number, Number]
    barycenter_boundary: tuple[Number, Number]
    displacement: tuple[Number, Number]
    inertia: tuple[tuple[Number, Number], tuple[Number, Number]]
    futaki: tuple[Number, Number]  # coefficients of π
    futaki_norm_sq_over_pi2: Number
    virtual_action: Number
    weyl_bound: float
    weyl_bound_simple: float
    avg_hermitian_scalar_over_pi: Number
    vertices: Optional[list[list[str]]] = None

    kind = "report"

    def to_dict(self) -> dict:
        fmt = format_rational
        return {
            "area": fmt(self.area),
            "perimeter": fmt(self.perimeter),
            "barycenter_interior": [fmt(x) for x in self.barycenter_interior],
            "barycenter_boundary": [fmt(x) for x in self.barycenter_boundary],
            "displacement": [fmt(x) for x in self.displacement],
            "inertia": [[fmt(x) for x in row] for row in self.inertia],
            "futaki": [fmt(x) for x in self.futaki],
            "futaki_norm_sq_over_pi2": fmt(self.futaki_norm_sq_over_pi2),
            "virtual_action": fmt(self.virtual_action),
            "weyl_bound": float(self.weyl_bound),
            "weyl_bound_simple": float(self.weyl_bound_simple),
            "avg_hermitian_scalar_over_pi": fmt(self.avg_hermitian_scalar_over_pi),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantReport":
        return cls(
            area=_parse(data["area"]),
            perimeter=_parse(data["perimeter"]),
            barycenter_interior=_pair(data["barycenter_interior"]),
            barycenter_boundary=_pair(data["barycenter_boundary"]),
            displacement=_pair(data["displacement"]),
            inertia=tuple(_pair(row) for row in data["inertia"]),
            futaki=_pair(data["futaki"]),
            futaki_norm_sq_over_pi2=_parse(data["futaki_norm_sq_over_pi2"]),
            virtual_action=_parse(data["virtual_action"]),
            weyl_bound=float(data["weyl_bound"]),
            weyl_bound_simple=float(data["weyl_bound_simple"]),
            avg_hermitian_scalar_over_pi=_parse(data["avg_hermitian_scalar_over_pi"]),
        )


def invariant_report(polygon: DelzantPolygon) -> InvariantReport:
    """Collect the full invariant set of a polygon"""
    data = futaki(polygon)
    bounds = weyl_lower_bound(polygon)
    return InvariantReport(
        area=area(polygon),
        perimeter=lattice_perimeter(polygon),
        barycenter_interior=interior_barycenter(polygon),
        barycenter_boundary=boundary_barycenter(polygon),
        displacement=displacement(polygon),
        inertia=inertia_matrix(polygon).entries,
        futaki=data.covector,
        futaki_norm_sq_over_pi2=data.norm_sq_over_pi2,
        virtual_action=virtual_action(polygon),
        weyl_bound=float(bounds.bound),
        weyl_bound_simple=float(bounds.simple),
        avg_hermitian_scalar_over_pi=average_hermitian_scalar(polygon).coefficient,
        vertices=polygon.as_strings(),
    )
