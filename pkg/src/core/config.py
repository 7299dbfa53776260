"""Configuration management for toric-weyl"""

from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, Field

PROJECT_ROOT = Path(__file__).resolve().parents[2]


def _default_surfaces_dir() -> str:
    # source checkout first, then the copy bundled into the wheel
    for candidate in (PROJECT_ROOT / "surfaces", Path(__file__).resolve().parents[1] / "surfaces"):
        if candidate.exists():
            return str(candidate)
    return str(PROJECT_ROOT / "surfaces")


class MinimizerConfig(BaseModel):
    """Simplex descent on the reduced symplectic cone"""
    tolerance: float = 1e-10  # spread of action values across the simplex
    x_tolerance: float = 1e-9
    gradient_tolerance: float = 1e-5
    max_iterations: int = 10000
    fd_step: float = 1e-4
    polish_step: float = 1e-4  # exact five-point differences for the Newton polish
    polish_steps: int = 3
    restarts: int = 3
    multistart: int = 10
    seed: int = 0


class QuadratureConfig(BaseModel):
    """Nijenhuis-energy quadrature defaults"""
    epsilon: float = 0.5
    k: int = 2
    grid_n: int = 256
    resolution_factor: int = 8  # points per axis >= factor * k^2
    c1_dot_omega: float = 9.0


class ScanConfig(BaseModel):
    """Line scans across the cone"""
    steps: int = 50
    workers: int = 1


class OutputConfig(BaseModel):
    """Output configuration"""
    default_format: Literal["text", "json", "csv"] = "text"


class Config(BaseModel):
    """Main configuration"""
    minimizer: MinimizerConfig = Field(default_factory=MinimizerConfig)
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)
    scan: ScanConfig = Field(default_factory=ScanConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    cone_boundary_epsilon: float = 1e-12
    surfaces_dir: str = Field(default_factory=_default_surfaces_dir)

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> "Config":
        """Load configuration from file or use defaults"""
        if config_path is None:
            locations = [
                Path.cwd() / "toric.yaml",
                Path.home() / ".toric" / "config.yaml",
            ]
            for loc in locations:
                if loc.exists():
                    config_path = loc
                    break

        if config_path and config_path.exists():
            with open(config_path) as f:
                data = yaml.safe_load(f) or {}
            return cls(**data)

        return cls()


# Global config instance
_config: Optional[Config] = None


def get_config() -> Config:
    """Get global config instance"""
    global _config
    if _config is None:
        _config = Config.load()
    return _config


def set_config(config: Config) -> None:
    """Set global config instance"""
    global _config
    _config = config
