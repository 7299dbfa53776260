"""Core modules for toric-weyl"""

from .config import Config, get_config, set_config
from .errors import ToricError
from .polygon import DelzantPolygon, polygon_from_vertices, validate_delzant
from .invariants import InvariantReport, invariant_report, virtual_action
from .cone import MinimizerResult, NormalFan, SupportVector, builtin_fan, minimize_action, polygon_from_support
from .cohomology import LorentzLattice, ObstructionVerdict, del_pezzo_lattice, quadric_lattice
from .appendix import EnergyReport, PerturbationProfile
from .surface import Surface, SurfaceLoader, get_surface_loader
from .plugin import ExportPlugin, PluginManager, get_plugin_manager

__all__ = [
    "Config",
    "get_config",
    "set_config",
    "ToricError",
    "DelzantPolygon",
    "polygon_from_vertices",
    "validate_delzant",
    "InvariantReport",
    "invariant_report",
    "virtual_action",
    "MinimizerResult",
    "NormalFan",
    "SupportVector",
    "builtin_fan",
    "minimize_action",
    "polygon_from_support",
    "LorentzLattice",
    "ObstructionVerdict",
    "del_pezzo_lattice",
    "quadric_lattice",
    "EnergyReport",
    "PerturbationProfile",
    "Surface",
    "SurfaceLoader",
    "get_surface_loader",
    "ExportPlugin",
    "PluginManager",
    "get_plugin_manager",
]
