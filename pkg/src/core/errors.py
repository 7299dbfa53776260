"""Error types for toric-weyl"""

from typing import Any, Optional


class ToricError(Exception):
    """Base class for every error raised by toric-weyl"""


class InvalidPolygon(ToricError, ValueError):
    """A vertex list does not describe a Delzant polygon"""


class NotConvex(InvalidPolygon):
    """Consecutive edges do not turn strictly left"""

    def __init__(self, message: str, vertex_index: Optional[int] = None):
        super().__init__(message)
        self.vertex_index = vertex_index


class NotDelzant(InvalidPolygon):
    """Primitive edge directions at a vertex do not form a lattice basis"""

    def __init__(self, vertex_index: int, determinant: int):
        super().__init__(
            f"vertex {vertex_index} is not smooth: edge determinant {determinant}"
        )
        self.vertex_index = vertex_index
        self.determinant = determinant


class DegenerateEdge(InvalidPolygon):
    """An edge has zero length"""

    def __init__(self, message: str, edge_index: Optional[int] = None):
        super().__init__(message)
        self.edge_index = edge_index


class UnsupportedDegree(ToricError, ValueError):
    """Requested moment degree exceeds what is supported"""


class DegenerateInertia(ToricError, ArithmeticError):
    """Moment-of-inertia matrix is not positive definite"""


class NotUnimodular(ToricError, ValueError):
    """Affine map matrix does not have determinant ±1"""


class InvalidFan(ToricError, ValueError):
    """Rays do not form a smooth complete fan"""


class UnknownSurface(ToricError, LookupError):
    """No built-in surface under this name"""


class OutsideCone(ToricError, ValueError):
    """Support numbers leave the symplectic cone"""

    def __init__(self, edge_index: int, lattice_length: Any):
        super().__init__(
            f"edge {edge_index} has lattice length {lattice_length}; "
            "support vector is outside the symplectic cone"
        )
        self.edge_index = edge_index
        self.lattice_length = lattice_length


class NotConverged(ToricError, RuntimeError):
    """Minimizer stopped without certifying a critical point"""

    def __init__(self, result: Any):
        super().__init__(
            f"minimizer did not converge after {result.iterations} iterations "
            f"(gradient {result.gradient_norm:.3e})"
        )
        self.result = result


class NegativeAlpha(ToricError, ValueError):
    """The one-point blow-up parameter must be non-negative"""


class OutOfRange(ToricError, ValueError):
    """Blow-up count outside 0..8"""


class LatticeMismatch(ToricError, ValueError):
    """Classes live in different lattices"""


class NotFuturePointing(ToricError, ValueError):
    """Class is not in the future light cone"""


class NullOrSpacelikeOmega(ToricError, ValueError):
    """Symplectic class must have positive self-intersection"""


class UnderResolved(ToricError, ValueError):
    """Quadrature grid too coarse for the oscillation"""

    def __init__(self, grid_n: int, required: int):
        super().__init__(f"grid_n={grid_n} is below the required {required} points per axis")
        self.grid_n = grid_n
        self.required = required
