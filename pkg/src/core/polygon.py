"""Exact rational geometry of Delzant polygons

Vertices are kept counterclockwise with the lexicographically least vertex
first. Every moment is an exact :class:`~fractions.Fraction`. Polygons built
from float support numbers (``exact=False``) go through the same formulas and
simply come out in floating point.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, NamedTuple, Sequence, Union

from .errors import (
    DegenerateEdge,
    InvalidPolygon,
    NotConvex,
    NotDelzant,
    NotUnimodular,
    UnsupportedDegree,
)

logger = logging.getLogger(__name__)

Number = Union[Fraction, float]
Point = tuple[Number, Number]

MAX_AREA_DEGREE = 4
MAX_BOUNDARY_DEGREE = 2


def to_rational(value: Any) -> Fraction:
    """Coerce an int, Fraction or string such as "3", "1/2", "0.25" to a Fraction"""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__} {value!r}")


def format_rational(value: Number) -> str:
    """Serialize as "p/q" (or "p" for integers); floats use repr"""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def det(a: Sequence[Number], b: Sequence[Number]) -> Number:
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class LatticeCovector:
    """Primitive integer (co)vector"""
    x: int
    y: int

    def __post_init__(self):
        if (self.x, self.y) == (0, 0) or math.gcd(self.x, self.y) != 1:
            raise ValueError(f"({self.x}, {self.y}) is not a primitive lattice vector")

    def __iter__(self):
        yield self.x
        yield self.y

    def __getitem__(self, index: int) -> int:
        return (self.x, self.y)[index]

    def pair(self, point: Sequence[Number]) -> Number:
        return self.x * point[0] + self.y * point[1]

    def rotated(self) -> "LatticeCovector":
        """Quarter turn counterclockwise"""
        return LatticeCovector(-self.y, self.x)


def primitive_factor(dx: Fraction, dy: Fraction) -> tuple[LatticeCovector, Fraction]:
    """Split a nonzero rational vector as ``multiple * primitive``"""
    scale = math.lcm(dx.denominator, dy.denominator)
    ix, iy = int(dx * scale), int(dy * scale)
    g = math.gcd(ix, iy)
    return LatticeCovector(ix // g, iy // g), Fraction(g, scale)


@dataclass(frozen=True)
class Edge:
    """Oriented edge of a polygon with its lattice data"""
    start: Point
    end: Point
    normal: LatticeCovector  # inward
    direction: LatticeCovector
    lattice_length: Number

    @property
    def midpoint(self) -> Point:
        return ((self.start[0] + self.end[0]) / 2, (self.start[1] + self.end[1]) / 2)

    @property
    def support(self) -> Number:
        """Support number λ of the half-plane <ν, x> >= -λ"""
        return -self.normal.pair(self.start)


class Violation(NamedTuple):
    """One violated polygon invariant"""
    kind: str  # too_few_vertices | degenerate_edge | not_convex | not_delzant
    index: int
    message: str
    value: Any = None


@dataclass(frozen=True)
class UnimodularAffine:
    """x ↦ Ax + b with A integral and det A = ±1"""
    matrix: tuple[tuple[int, int], tuple[int, int]]
    translation: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        if not all(isinstance(e, int) for e in (a, b, c, d)):
            raise NotUnimodular(f"matrix entries must be integers: {self.matrix}")
        if abs(a * d - b * c) != 1:
            raise NotUnimodular(f"determinant {a * d - b * c} is not ±1")
        object.__setattr__(self, "matrix", ((a, b), (c, d)))
        object.__setattr__(
            self, "translation", tuple(to_rational(t) for t in self.translation)
        )

    @classmethod
    def identity(cls) -> "UnimodularAffine":
        return cls(((1, 0), (0, 1)))

    @property
    def determinant(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def __call__(self, point: Point) -> Point:
        (a, b), (c, d) = self.matrix
        x, y = point
        return (a * x + b * y + self.translation[0], c * x + d * y + self.translation[1])


@dataclass(frozen=True)
class DelzantPolygon:
    """Convex lattice polygon satisfying the Delzant condition at every vertex"""
    vertices: tuple[Point, ...]
    edges: tuple[Edge, ...]
    exact: bool = True
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def normals(self) -> tuple[LatticeCovector, ...]:
        return tuple(e.normal for e in self.edges)

    def as_strings(self) -> list[list[str]]:
        return [[format_rational(x), format_rational(y)] for x, y in self.vertices]


def _signed_double_area(vertices: Sequence[Point]) -> Number:
    n = len(vertices)
    return sum(det(vertices[i], vertices[(i + 1) % n]) for i in range(n))


def _canonical_cycle(vertices: list[Point]) -> list[Point]:
    if _signed_double_area(vertices) < 0:
        vertices = vertices[::-1]
    start = min(range(len(vertices)), key=lambda i: vertices[i])
    return vertices[start:] + vertices[:start]


def _inspect(points: Iterable[Sequence[Any]]) -> tuple[list[Point], list[Edge], list[Violation]]:
    """Canonicalize a vertex cycle and collect every violated invariant"""
    vertices = [(to_rational(p[0]), to_rational(p[1])) for p in points]
    n = len(vertices)
    if n < 3:
        return vertices, [], [Violation("too_few_vertices", n, f"{n} vertices, need at least 3")]
    if len(set(vertices)) != n:
        seen: dict[Point, int] = {}
        for i, v in enumerate(vertices):
            if v in seen:
                return vertices, [], [
                    Violation("degenerate_edge", i, f"vertex {i} repeats vertex {seen[v]}")
                ]
            seen[v] = i
    if _signed_double_area(vertices) == 0:
        return vertices, [], [Violation("not_convex", 0, "vertices are collinear")]

    vertices = _canonical_cycle(vertices)
    centroid = (
        sum(v[0] for v in vertices) / n,
        sum(v[1] for v in vertices) / n,
    )
    edges = []
    for i in range(n):
        start, end = vertices[i], vertices[(i + 1) % n]
        direction, length = primitive_factor(end[0] - start[0], end[1] - start[1])
        normal = direction.rotated()
        if normal.pair((centroid[0] - start[0], centroid[1] - start[1])) < 0:
            normal = LatticeCovector(-normal.x, -normal.y)
        edges.append(Edge(start, end, normal, direction, length))

    violations = []
    turning = 0.0
    for i in range(n):
        incoming, outgoing = edges[i - 1].direction, edges[i].direction
        cross = det(incoming, outgoing)
        turning += (math.atan2(outgoing.y, outgoing.x) - math.atan2(incoming.y, incoming.x)) % math.tau
        if cross <= 0:
            violations.append(
                Violation("not_convex", i, f"vertex {i} does not turn left", cross)
            )
        elif cross != 1:
            violations.append(
                Violation("not_delzant", i, f"edge determinant {cross} at vertex {i}", cross)
            )
    if not violations and round(turning / math.tau) != 1:
        violations.append(Violation("not_convex", 0, "boundary winds more than once"))
    return vertices, edges, violations


def _as_error(violation: Violation) -> InvalidPolygon:
    if violation.kind == "not_delzant":
        return NotDelzant(violation.index, violation.value)
    if violation.kind == "not_convex":
        return NotConvex(violation.message, violation.index)
    if violation.kind == "degenerate_edge":
        return DegenerateEdge(violation.message, violation.index)
    return InvalidPolygon(violation.message)


def polygon_from_vertices(points: Iterable[Sequence[Any]]) -> DelzantPolygon:
    """Build a validated polygon from a cyclic vertex list (either orientation)"""
    vertices, edges, violations = _inspect(points)
    if violations:
        raise _as_error(violations[0])
    return DelzantPolygon(tuple(vertices), tuple(edges))


def polygon_from_normals(
    vertices: Sequence[Point],
    normals: Sequence[LatticeCovector],
    *,
    min_length: float = 0.0,
) -> DelzantPolygon:
    """Float-mode polygon whose edge i runs from vertex i to vertex i+1 with inward normal i.

    The normals come from a smooth fan, so only edge lengths are checked.
    """
    n = len(vertices)
    edges = []
    for i in range(n):
        start, end = vertices[i], vertices[(i + 1) % n]
        normal = normals[i]
        direction = LatticeCovector(normal.y, -normal.x)
        length = direction.pair((end[0] - start[0], end[1] - start[1])) / direction.pair(direction)
        if length <= min_length:
            raise DegenerateEdge(f"edge {i} has lattice length {length}", i)
        edges.append(Edge(start, end, normal, direction, length))
    return DelzantPolygon(tuple(vertices), tuple(edges), exact=False)


def validate_delzant(polygon: Union[DelzantPolygon, Iterable[Sequence[Any]]]) -> list[Violation]:
    """Every violated invariant with its location; empty for a valid polygon"""
    if isinstance(polygon, DelzantPolygon):
        if not polygon.exact:
            return []
        points = polygon.vertices
    else:
        points = polygon
    try:
        return _inspect(points)[2]
    except (TypeError, ValueError) as e:
        return [Violation("unparseable", -1, str(e))]


def area(polygon: DelzantPolygon) -> Number:
    """Euclidean area by the shoelace formula"""
    if "area" not in polygon._cache:
        polygon._cache["area"] = _signed_double_area(polygon.vertices) / 2
    return polygon._cache["area"]


def edge_lattice_length(edge: Edge) -> Number:
    return edge.lattice_length


def lattice_perimeter(polygon: DelzantPolygon) -> Number:
    """Total dλ-measure of the boundary"""
    return sum((e.lattice_length for e in polygon.edges), Fraction(0))


def _simplex_integral(a: int, b: int) -> Fraction:
    """∫ u^a v^b over the standard simplex"""
    return Fraction(math.factorial(a) * math.factorial(b), math.factorial(a + b + 2))


def _linear_power(c0: Number, cu: Number, cw: Number, n: int) -> dict[tuple[int, int], Number]:
    """Coefficients of (c0 + cu·u + cw·w)^n keyed by (power of u, power of w)"""
    terms: dict[tuple[int, int], Number] = {}
    for j in range(n + 1):
        for k in range(n + 1 - j):
            i = n - j - k
            multinomial = math.factorial(n) // (
                math.factorial(i) * math.factorial(j) * math.factorial(k)
            )
            terms[(j, k)] = multinomial * c0**i * cu**j * cw**k
    return terms


def _triangle_moment(a: Point, b: Point, c: Point, p: int, q: int) -> Number:
    e1 = (b[0] - a[0], b[1] - a[1])
    e2 = (c[0] - a[0], c[1] - a[1])
    xs = _linear_power(a[0], e1[0], e2[0], p)
    ys = _linear_power(a[1], e1[1], e2[1], q)
    total: Number = Fraction(0)
    for (j1, k1), cx in xs.items():
        for (j2, k2), cy in ys.items():
            total += cx * cy * _simplex_integral(j1 + j2, k1 + k2)
    return det(e1, e2) * total


def monomial_moment(polygon: DelzantPolygon, p: int, q: int, apex: int = 0) -> Number:
    """∫_P x₁^p x₂^q da by fan triangulation from vertex ``apex``"""
    if p < 0 or q < 0 or p + q > MAX_AREA_DEGREE:
        raise UnsupportedDegree(f"degree ({p}, {q}) not supported; need p + q <= {MAX_AREA_DEGREE}")
    key = ("moment", p, q, apex)
    if key not in polygon._cache:
        v = polygon.vertices
        n = len(v)
        apex %= n
        polygon._cache[key] = sum(
            (
                _triangle_moment(v[apex], v[(apex + i) % n], v[(apex + i + 1) % n], p, q)
                for i in range(1, n - 1)
            ),
            Fraction(0),
        )
    return polygon._cache[key]


def boundary_moment(polygon: DelzantPolygon, p: int, q: int) -> Number:
    """∫_∂P x₁^p x₂^q dλ with dλ = (lattice length)·dt on each edge"""
    if p < 0 or q < 0 or p + q > MAX_BOUNDARY_DEGREE:
        raise UnsupportedDegree(
            f"degree ({p}, {q}) not supported on the boundary; need p + q <= {MAX_BOUNDARY_DEGREE}"
        )
    key = ("boundary", p, q)
    if key not in polygon._cache:
        total: Number = Fraction(0)
        for edge in polygon.edges:
            s, e = edge.start, edge.end
            xs = _linear_power(s[0], e[0] - s[0], 0, p)
            ys = _linear_power(s[1], e[1] - s[1], 0, q)
            integral: Number = Fraction(0)
            for (j1, _), cx in xs.items():
                for (j2, _), cy in ys.items():
                    integral += cx * cy * Fraction(1, j1 + j2 + 1)
            total += edge.lattice_length * integral
        polygon._cache[key] = total
    return polygon._cache[key]


def apply_unimodular_affine(polygon: DelzantPolygon, transform: UnimodularAffine) -> DelzantPolygon:
    """Image of the polygon; orientation-reversing maps are re-oriented"""
    return polygon_from_vertices([transform(v) for v in polygon.vertices])


def scale_polygon(polygon: DelzantPolygon, factor: Any) -> DelzantPolygon:
    """Dilate about the origin by a positive rational"""
    c = to_rational(factor)
    if c <= 0:
        raise ValueError(f"scale factor must be positive, got {c}")
    return polygon_from_vertices([(c * x, c * y) for x, y in polygon.vertices])
