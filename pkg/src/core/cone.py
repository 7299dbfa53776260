"""Symplectic cone of a toric surface: support numbers, gauge fixing, minimization of the virtual action"""

from __future__ import annotations

import asyncio
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence, Union

import numpy as np
from scipy.optimize import minimize

from .config import MinimizerConfig, get_config
from .errors import InvalidFan, NegativeAlpha, NotConverged, OutsideCone, ToricError, UnknownSurface
from .invariants import (
    displacement,
    futaki,
    inertia_matrix,
    interior_barycenter,
    vertex_positivity,
    virtual_action,
)
from .polygon import (
    DelzantPolygon,
    LatticeCovector,
    Number,
    area,
    det,
    format_rational,
    lattice_perimeter,
    polygon_from_normals,
    polygon_from_vertices,
    to_rational,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalFan:
    """Complete smooth fan, rays in counterclockwise order"""
    rays: tuple[LatticeCovector, ...]
    name: Optional[str] = None

    def __post_init__(self):
        try:
            rays = tuple(
                r if isinstance(r, LatticeCovector) else LatticeCovector(int(r[0]), int(r[1]))
                for r in self.rays
            )
        except (TypeError, ValueError, IndexError) as e:
            raise InvalidFan(f"bad ray: {e}") from e
        if len(rays) < 3:
            raise InvalidFan(f"a complete fan needs at least 3 rays, got {len(rays)}")
        turning = 0.0
        for i, ray in enumerate(rays):
            nxt = rays[(i + 1) % len(rays)]
            if det(ray, nxt) != 1:
                raise InvalidFan(
                    f"rays {i} and {(i + 1) % len(rays)} have determinant {det(ray, nxt)}, need 1"
                )
            turning += (math.atan2(nxt.y, nxt.x) - math.atan2(ray.y, ray.x)) % math.tau
        if round(turning / math.tau) != 1:
            raise InvalidFan("rays wind around the origin more than once")
        object.__setattr__(self, "rays", rays)

    def __len__(self) -> int:
        return len(self.rays)

    def as_array(self) -> np.ndarray:
        return np.array([[r.x, r.y] for r in self.rays], dtype=float)

    def to_dict(self) -> dict:
        return {"rays": [[r.x, r.y] for r in self.rays]}


def _coerce_support(value: Any) -> Number:
    if isinstance(value, (float, np.floating)):
        return float(value)
    return to_rational(value)


@dataclass(frozen=True)
class SupportVector:
    """λ with P(λ) = {x : ⟨ν_i, x⟩ ≥ −λ_i}"""
    values: tuple[Number, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_coerce_support(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, index: int) -> Number:
        return self.values[index]

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values)

    def as_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.values])

    def to_dict(self) -> dict:
        return {"lambda": [format_rational(v) for v in self.values]}


def _vertex(fan: NormalFan, support: SupportVector, i: int):
    """Vertex where the edges of rays i and i+1 meet"""
    j = (i + 1) % len(fan)
    (a, b), (c, d) = fan.rays[i], fan.rays[j]
    li, lj = support[i], support[j]
    return (-d * li + b * lj, c * li - a * lj)


def _edge_length(fan: NormalFan, start, end, i: int) -> Number:
    direction = LatticeCovector(fan.rays[i].y, -fan.rays[i].x)
    return direction.pair((end[0] - start[0], end[1] - start[1])) / direction.pair(direction)


def polygon_from_support(
    fan: NormalFan,
    support: Union[SupportVector, Sequence[Any]],
    *,
    boundary_epsilon: Optional[float] = None,
) -> DelzantPolygon:
    """Intersect the half-planes ⟨ν_i, x⟩ ≥ −λ_i; exact when every λ_i is rational"""
    if not isinstance(support, SupportVector):
        support = SupportVector(tuple(support))
    n = len(fan)
    if len(support) != n:
        raise InvalidFan(f"{len(support)} support numbers for {n} rays")
    corners = [_vertex(fan, support, i) for i in range(n)]
    vertices = [corners[i - 1] for i in range(n)]  # edge i runs from vertices[i] to vertices[i+1]
    exact = support.exact
    if boundary_epsilon is None:
        boundary_epsilon = get_config().cone_boundary_epsilon
    threshold = 0 if exact else boundary_epsilon
    for i in range(n):
        length = _edge_length(fan, vertices[i], vertices[(i + 1) % n], i)
        if length <= threshold:
            raise OutsideCone(i, length)
    if exact:
        return polygon_from_vertices(vertices)
    return polygon_from_normals(vertices, fan.rays, min_length=threshold)


def support_from_polygon(polygon: DelzantPolygon) -> tuple[NormalFan, SupportVector]:
    """Normals and support numbers read off the edges"""
    fan = NormalFan(polygon.normals)
    return fan, SupportVector(tuple(e.support for e in polygon.edges))


def _exact_sqrt(value: Fraction) -> Optional[Fraction]:
    p, q = value.numerator, value.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def gauge_fix(fan: NormalFan, support: Union[SupportVector, Sequence[Any]]) -> SupportVector:
    """Translate to x̄ = 0 and rescale to |P| = 1"""
    polygon = polygon_from_support(fan, support)
    if not isinstance(support, SupportVector):
        support = SupportVector(tuple(support))
    cx, cy = interior_barycenter(polygon)
    shifted = [lam + ray.pair((cx, cy)) for lam, ray in zip(support, fan.rays)]
    a = area(polygon)
    root = _exact_sqrt(a) if isinstance(a, Fraction) else None
    if root is None:
        scale = 1.0 / math.sqrt(float(a))
        return SupportVector(tuple(float(v) * scale for v in shifted))
    return SupportVector(tuple(v / root for v in shifted))


def action_on_cone(fan: NormalFan, support: Union[SupportVector, Sequence[Any]]) -> float:
    return float(virtual_action(polygon_from_support(fan, support)))


def _edge_lengths_array(rays: np.ndarray, lam: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vertices (edge i from row i to row i+1) and lattice lengths, vectorized"""
    a, b = rays[:, 0], rays[:, 1]
    nxt = np.roll(rays, -1, axis=0)
    lam_next = np.roll(lam, -1)
    corners = np.column_stack([-nxt[:, 1] * lam + b * lam_next, nxt[:, 0] * lam - a * lam_next])
    vertices = np.roll(corners, 1, axis=0)
    directions = np.column_stack([b, -a])
    steps = corners - vertices
    lengths = np.einsum("ij,ij->i", steps, directions) / np.einsum("ij,ij->i", directions, directions)
    return vertices, lengths


def _action_array(rays: np.ndarray, lam: np.ndarray, boundary_epsilon: float) -> float:
    """Float virtual action via Green's theorem moments; inf outside the cone"""
    vertices, lengths = _edge_lengths_array(rays, lam)
    if lengths.min() <= boundary_epsilon:
        return math.inf
    x0, y0 = vertices[:, 0], vertices[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    cross = x0 * y1 - x1 * y0
    a = cross.sum() / 2
    mx = ((x0 + x1) * cross).sum() / 6
    my = ((y0 + y1) * cross).sum() / 6
    mxx = ((x0 * x0 + x0 * x1 + x1 * x1) * cross).sum() / 12
    myy = ((y0 * y0 + y0 * y1 + y1 * y1) * cross).sum() / 12
    mxy = ((x0 * y1 + 2 * x0 * y0 + 2 * x1 * y1 + x1 * y0) * cross).sum() / 24
    center = np.array([mx, my]) / a
    inertia = np.array([[mxx, mxy], [mxy, myy]]) - a * np.outer(center, center)
    perimeter = lengths.sum()
    boundary = np.array([(lengths * (x0 + x1)).sum(), (lengths * (y0 + y1)).sum()]) / (2 * perimeter)
    d = boundary - center
    return float(perimeter**2 / 2 * (1 / a + d @ np.linalg.solve(inertia, d)))


class ReducedChart:
    """Affine slice {λ ⟂ translations, |∂P|(λ) = level} of the cone with orthonormal coordinates"""

    def __init__(self, fan: NormalFan, level: Optional[float] = None):
        self.fan = fan
        self.rays = fan.as_array()
        n = len(fan)
        basis = np.eye(n)
        # |∂P| is linear in λ
        self.weights = np.array([_edge_lengths_array(self.rays, basis[j])[1].sum() for j in range(n)])
        self.level = float(n) if level is None else float(level)
        u, _, _ = np.linalg.svd(np.column_stack([self.rays, self.weights]), full_matrices=True)
        self.basis = u[:, 3:]
        self.base = self.level * self.weights / (self.weights @ self.weights)

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]

    def to_support(self, z: np.ndarray) -> np.ndarray:
        return self.base + self.basis @ np.asarray(z, dtype=float)

    def to_chart(self, support: Union[SupportVector, np.ndarray]) -> np.ndarray:
        lam = support.as_array() if isinstance(support, SupportVector) else np.asarray(support, dtype=float)
        translation, *_ = np.linalg.lstsq(self.rays, lam, rcond=None)
        lam = lam - self.rays @ translation
        lam = lam * self.level / (self.weights @ lam)
        return self.basis.T @ lam


@dataclass
class MinimizerResult:
    """Outcome of a descent on the reduced cone"""
    surface: Optional[str]
    support: SupportVector  # gauge-fixed
    action: float
    gradient_norm: float
    hessian_eigenvalues: tuple[float, ...]
    iterations: int
    converged: bool
    displacement: tuple[float, float] = (0.0, 0.0)
    futaki_norm_sq_over_pi2: float = 0.0
    message: str = ""

    kind = "minimize"

    def raise_for_status(self) -> "MinimizerResult":
        if not self.converged:
            raise NotConverged(self)
        return self

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "lambda": [float(v) for v in self.support],
            "action": self.action,
            "gradient_norm": self.gradient_norm,
            "hessian_eigenvalues": list(self.hessian_eigenvalues),
            "iterations": self.iterations,
            "converged": self.converged,
            "displacement": list(self.displacement),
            "futaki_norm_sq_over_pi2": self.futaki_norm_sq_over_pi2,
            "message": self.message,
        }


def default_support(fan: NormalFan) -> SupportVector:
    """Anticanonical support numbers (1, …, 1)"""
    support = SupportVector(tuple(Fraction(1) for _ in fan.rays))
    polygon_from_support(fan, support)
    return support


def random_support(
    fan: NormalFan,
    rng: np.random.Generator,
    exact: bool = True,
    max_tries: int = 10000,
) -> SupportVector:
    """Rejection-sample support numbers in (0, 2] strictly inside the cone"""
    n = len(fan)
    for _ in range(max_tries):
        if exact:
            values = []
            for _ in range(n):
                q = int(rng.integers(1, 13))
                values.append(Fraction(int(rng.integers(1, 2 * q + 1)), q))
            candidate = SupportVector(tuple(values))
        else:
            candidate = SupportVector(tuple(float(v) for v in rng.uniform(0.05, 2.0, size=n)))
        try:
            polygon_from_support(fan, candidate)
        except OutsideCone:
            continue
        return candidate
    raise ToricError(f"no support vector inside the cone after {max_tries} samples")


def _finite_differences(f, z: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Central-difference gradient and Hessian"""
    m = len(z)
    f0 = f(z)
    eye = np.eye(m) * h
    grad = np.zeros(m)
    hess = np.zeros((m, m))
    for i in range(m):
        fp, fm = f(z + eye[i]), f(z - eye[i])
        grad[i] = (fp - fm) / (2 * h)
        hess[i, i] = (fp - 2 * f0 + fm) / (h * h)
        for j in range(i):
            hess[i, j] = hess[j, i] = (
                f(z + eye[i] + eye[j])
                - f(z + eye[i] - eye[j])
                - f(z - eye[i] + eye[j])
                + f(z - eye[i] - eye[j])
            ) / (4 * h * h)
    return grad, hess


def _exact_gradient(fan: NormalFan, chart: ReducedChart, z: np.ndarray, h: Fraction) -> np.ndarray:
    """Five-point central differences of the exact action along the chart axes"""
    base = [Fraction(float(v)) for v in chart.to_support(z)]
    grad = np.zeros(chart.dimension)
    for i in range(chart.dimension):
        direction = [Fraction(float(c)) for c in chart.basis[:, i]]

        def at(t: Fraction) -> Fraction:
            support = SupportVector(tuple(b + t * d for b, d in zip(base, direction)))
            return virtual_action(polygon_from_support(fan, support))

        grad[i] = float((at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h))
    return grad


def _newton_polish(
    fan: NormalFan,
    chart: ReducedChart,
    z: np.ndarray,
    hess: np.ndarray,
    options: MinimizerConfig,
) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """Newton steps with exact-arithmetic gradients; a step is kept only if it shrinks the gradient

    None when the stencil does not fit inside the cone.
    """
    h = Fraction(str(options.polish_step))
    try:
        grad = _exact_gradient(fan, chart, z, h)
    except ToricError:
        return None
    for _ in range(options.polish_steps):
        if not np.any(grad):
            break
        try:
            candidate = z - np.linalg.solve(hess, grad)
            candidate_grad = _exact_gradient(fan, chart, candidate, h)
        except (np.linalg.LinAlgError, ToricError):
            break
        if np.max(np.abs(candidate_grad)) >= np.max(np.abs(grad)):
            break
        z, grad = candidate, candidate_grad
    return z, grad


def minimize_action(
    fan: NormalFan,
    options: Optional[MinimizerConfig] = None,
    *,
    initial: Optional[Union[SupportVector, Sequence[Any]]] = None,
) -> MinimizerResult:
    """Nelder-Mead descent of the virtual action over the reduced cone"""
    options = options or get_config().minimizer
    epsilon = get_config().cone_boundary_epsilon
    chart = ReducedChart(fan)

    if initial is None:
        try:
            initial = default_support(fan)
        except OutsideCone:
            initial = random_support(fan, np.random.default_rng(options.seed), exact=False)
    elif not isinstance(initial, SupportVector):
        initial = SupportVector(tuple(initial))
    polygon_from_support(fan, initial)

    def objective(z: np.ndarray) -> float:
        return _action_array(chart.rays, chart.to_support(z), epsilon)

    z = chart.to_chart(initial)
    iterations, success, message = 0, True, "reduced cone is a point"
    value = objective(z)
    if chart.dimension:
        for attempt in range(max(1, options.restarts)):
            simplex = np.vstack([z, z + 0.1 * np.eye(chart.dimension)])
            res = minimize(
                objective,
                z,
                method="Nelder-Mead",
                options={
                    "xatol": options.x_tolerance,
                    "fatol": options.tolerance,
                    "maxiter": options.max_iterations,
                    "initial_simplex": simplex,
                },
            )
            iterations += int(res.nit)
            improvement = value - float(res.fun)
            z, value, success, message = res.x, float(res.fun), bool(res.success), str(res.message)
            logger.debug("restart %d: action %.15g after %d iterations", attempt, value, res.nit)
            if attempt > 0 and improvement <= options.tolerance:
                break

    grad, hess = _finite_differences(objective, z, options.fd_step)
    interior = bool(np.all(np.isfinite(hess)))
    if not interior:
        # stencil crosses a wall of the cone
        success, message = False, f"{message}; descent ran into the boundary of the cone"
    eigenvalues = tuple(float(e) for e in np.linalg.eigvalsh(hess)) if chart.dimension and interior else ()
    if chart.dimension and success and all(e > 0 for e in eigenvalues):
        polished = _newton_polish(fan, chart, z, hess, options)
        if polished is not None:
            z, grad = polished
            value = objective(z)
    gradient_norm = float(np.max(np.abs(grad))) if chart.dimension else 0.0
    converged = (
        success
        and gradient_norm <= options.gradient_tolerance
        and all(e > 0 for e in eigenvalues)
    )

    support = gauge_fix(fan, SupportVector(tuple(chart.to_support(z))))
    polygon = polygon_from_support(fan, support)
    shift = displacement(polygon)
    return MinimizerResult(
        surface=fan.name,
        support=support,
        action=value,
        gradient_norm=gradient_norm,
        hessian_eigenvalues=eigenvalues,
        iterations=iterations,
        converged=converged,
        displacement=(float(shift[0]), float(shift[1])),
        futaki_norm_sq_over_pi2=float(futaki(polygon).norm_sq_over_pi2),
        message=message,
    )


@dataclass
class MultiStartResult:
    results: list[MinimizerResult]
    best: MinimizerResult
    spread: float

    kind = "multistart"

    def to_dict(self) -> dict:
        return {
            "best": self.best.to_dict(),
            "spread": self.spread,
            "actions": [r.action for r in self.results],
            "converged": [r.converged for r in self.results],
        }


async def minimize_action_multistart_async(
    fan: NormalFan,
    starts: Optional[int] = None,
    seed: Optional[int] = None,
    options: Optional[MinimizerConfig] = None,
) -> MultiStartResult:
    """Minimize from several random interior points concurrently"""
    options = options or get_config().minimizer
    starts = options.multistart if starts is None else starts
    rng = np.random.default_rng(options.seed if seed is None else seed)
    initials = [random_support(fan, rng, exact=False) for _ in range(starts)]
    results = await asyncio.gather(
        *(asyncio.to_thread(minimize_action, fan, options, initial=lam) for lam in initials)
    )
    actions = [r.action for r in results]
    best = results[actions.index(min(actions))]
    return MultiStartResult(list(results), best, max(actions) - min(actions))


def minimize_action_multistart(
    fan: NormalFan,
    starts: Optional[int] = None,
    seed: Optional[int] = None,
    options: Optional[MinimizerConfig] = None,
) -> MultiStartResult:
    return asyncio.run(minimize_action_multistart_async(fan, starts, seed, options))


def builtin_fan(surface: str) -> NormalFan:
    """Normal fan of one of the catalogued toric del Pezzo surfaces"""
    from .surface import get_surface_loader

    found = get_surface_loader().get_surface(surface)
    if found is None:
        raise UnknownSurface(f"unknown surface {surface!r}")
    return found.fan


# One-point blow-up: λ = (0, 0, α + 1, 1) gives the trapezoid (0,0),(0,1),(α,1),(α+1,0)


def _coerce_alpha(alpha: Any, name: str = "alpha", error: type[Exception] = NegativeAlpha) -> Number:
    if isinstance(alpha, bool):
        raise TypeError(f"{name} must be a number")
    if isinstance(alpha, (int, str)):
        alpha = to_rational(alpha)
    elif isinstance(alpha, np.floating):
        alpha = float(alpha)
    if alpha < 0:
        raise error(f"{name} must be non-negative, got {alpha}")
    return alpha


def dp1_support(alpha: Any) -> SupportVector:
    alpha = _coerce_alpha(alpha)
    return SupportVector((0 * alpha, 0 * alpha, alpha + 1, 1 + 0 * alpha))


def dp1_polygon(alpha: Any) -> DelzantPolygon:
    return polygon_from_support(builtin_fan("dp1"), dp1_support(alpha))


def quadric_support(t: Any) -> SupportVector:
    """Rectangle [0, 1] × [0, t], the class F₁ + tF₂"""
    t = _coerce_alpha(t, "t", ValueError)
    return SupportVector((0 * t, 0 * t, 1 + 0 * t, t))


def quadric_polygon(t: Any) -> DelzantPolygon:
    return polygon_from_support(builtin_fan("quadric"), quadric_support(t))


def dp1_action_closed_form(alpha: Any) -> Number:
    """(12α³ + 42α² + 48α + 9)/(6α² + 6α + 1)"""
    a = _coerce_alpha(alpha)
    return (12 * a**3 + 42 * a**2 + 48 * a + 9) / (6 * a**2 + 6 * a + 1)


def dp1_action_derivative(alpha: Any) -> Number:
    a = _coerce_alpha(alpha)
    num = 12 * a**3 + 42 * a**2 + 48 * a + 9
    den = 6 * a**2 + 6 * a + 1
    return ((36 * a**2 + 84 * a + 48) * den - num * (12 * a + 6)) / den**2


def dp1_action_second_derivative(alpha: Any) -> Number:
    """48(24α³ + 18α² + 6α + 1)/(6α² + 6α + 1)³"""
    a = _coerce_alpha(alpha)
    return 48 * (24 * a**3 + 18 * a**2 + 6 * a + 1) / (6 * a**2 + 6 * a + 1) ** 3


def dp1_critical_alpha(tolerance: float = 1e-12) -> float:
    """Unique zero of d𝒜/dα on (0, ∞) by bracketing and bisection"""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    lo, hi = 0.0, 1.0
    while dp1_action_derivative(hi) <= 0:
        lo, hi = hi, 2 * hi
    while True:
        mid = (lo + hi) / 2
        slope = dp1_action_derivative(mid)
        if abs(slope) < tolerance or mid in (lo, hi):
            return mid
        if slope < 0:
            lo = mid
        else:
            hi = mid


@dataclass
class ScanRow:
    t: float
    action: float
    disp_x: float
    disp_y: float
    futaki_norm_sq: float  # ‖𝔉‖²/16π²
    min_vertex_scalar: float
    inside_cone: bool

    def as_csv(self) -> list[str]:
        return [repr(float(v)) for v in (
            self.t, self.action, self.disp_x, self.disp_y, self.futaki_norm_sq, self.min_vertex_scalar
        )] + [str(self.inside_cone).lower()]


@dataclass
class ScanTable:
    """Samples of the virtual action along a segment of support vectors"""
    surface: Optional[str]
    rows: list[ScanRow] = field(default_factory=list)

    kind = "scan"
    csv_header = ("t", "action", "disp_x", "disp_y", "futaki_norm_sq", "min_vertex_scalar", "inside_cone")

    def csv_rows(self) -> list[list[str]]:
        return [row.as_csv() for row in self.rows]

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "rows": [dict(zip(self.csv_header, row.as_csv())) for row in self.rows],
        }


def _scan_point(fan: NormalFan, start: SupportVector, direction: SupportVector, t: Number) -> ScanRow:
    support = SupportVector(tuple(s + t * d for s, d in zip(start, direction)))
    try:
        polygon = polygon_from_support(fan, support)
    except OutsideCone as e:
        logger.debug("t=%s outside the cone: %s", t, e)
        nan = math.nan
        return ScanRow(float(t), nan, nan, nan, nan, nan, False)
    shift = displacement(polygon)
    perimeter = lattice_perimeter(polygon)
    return ScanRow(
        t=float(t),
        action=float(virtual_action(polygon)),
        disp_x=float(shift[0]),
        disp_y=float(shift[1]),
        futaki_norm_sq=float(perimeter * perimeter * inertia_matrix(polygon).inverse_norm_sq(shift)),
        min_vertex_scalar=float(vertex_positivity(polygon).minimum),
        inside_cone=True,
    )


def scan_line(
    fan: NormalFan,
    start: Union[SupportVector, Sequence[Any]],
    direction: Union[SupportVector, Sequence[Any]],
    t_range: tuple[Any, Any],
    steps: int,
    *,
    workers: int = 1,
) -> ScanTable:
    """Evaluate invariants at uniformly spaced t along start + t·direction"""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    start = start if isinstance(start, SupportVector) else SupportVector(tuple(start))
    direction = direction if isinstance(direction, SupportVector) else SupportVector(tuple(direction))
    if len(start) != len(fan) or len(direction) != len(fan):
        raise InvalidFan(f"scan vectors must have {len(fan)} entries")
    t0, t1 = (_coerce_support(t) for t in t_range)
    if steps == 1:
        ts = [t0]
    else:
        ts = [t0 + k * (t1 - t0) / (steps - 1) for k in range(steps)]

    def evaluate(t):
        return _scan_point(fan, start, direction, t)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(evaluate, ts))
    else:
        rows = [evaluate(t) for t in ts]
    return ScanTable(fan.name, rows)
