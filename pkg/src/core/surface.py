"""Surface catalog and loader - parses SURFACE.md files"""

import json
import logging
import re
from pathlib import Path
from typing import TYPE_CHECKING, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field

if TYPE_CHECKING:
    from .cohomology import LorentzLattice
    from .cone import NormalFan

logger = logging.getLogger(__name__)


class SurfaceMetadata(BaseModel):
    """Metadata for a built-in surface"""
    symbol: str = ""
    lattice: Literal["del_pezzo", "quadric"] = "del_pezzo"
    blowups: int = 0
    kahler_einstein: bool = True


class Surface(BaseModel):
    """Toric del Pezzo surface parsed from SURFACE.md"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    description: str
    rays: list[tuple[int, int]]
    metadata: SurfaceMetadata = Field(default_factory=SurfaceMetadata)
    notes: str = ""  # The markdown content after frontmatter
    source_path: Optional[Path] = None

    @property
    def fan(self) -> "NormalFan":
        from .cone import NormalFan

        return NormalFan(tuple(self.rays), self.name)

    def lattice(self) -> "LorentzLattice":
        from .cohomology import del_pezzo_lattice, quadric_lattice

        if self.metadata.lattice == "quadric":
            return quadric_lattice()
        return del_pezzo_lattice(self.metadata.blowups)


class SurfaceLoader:
    """Loads surfaces from SURFACE.md files"""

    FRONTMATTER_PATTERN = re.compile(
        r'^---\s*\n(.*?)\n---\s*\n(.*)$',
        re.DOTALL
    )

    def __init__(self, surfaces_dir: Path | str = "./surfaces"):
        self.surfaces_dir = Path(surfaces_dir)
        self._cache: dict[str, Surface] = {}

    def parse_surface_file(self, file_path: Path) -> Surface:
        """Parse a single SURFACE.md file"""
        content = file_path.read_text(encoding="utf-8")

        match = self.FRONTMATTER_PATTERN.match(content)
        if not match:
            raise ValueError(f"Invalid SURFACE.md format in {file_path}: missing frontmatter")

        frontmatter = yaml.safe_load(match.group(1))
        if not frontmatter:
            raise ValueError(f"Empty frontmatter in {file_path}")

        name = frontmatter.get("name")
        if not name:
            raise ValueError(f"Missing 'name' in frontmatter of {file_path}")
        rays = frontmatter.get("rays")
        if not rays:
            raise ValueError(f"Missing 'rays' in frontmatter of {file_path}")

        # metadata may be inline JSON
        metadata_raw = frontmatter.get("metadata", {})
        if isinstance(metadata_raw, str):
            metadata_raw = json.loads(metadata_raw)

        return Surface(
            name=name,
            description=frontmatter.get("description", ""),
            rays=[tuple(r) for r in rays],
            metadata=SurfaceMetadata(**metadata_raw),
            notes=match.group(2).strip(),
            source_path=file_path,
        )

    def load_all(self, reload: bool = False) -> list[Surface]:
        """Load all surfaces, fewest rays first"""
        if self._cache and not reload:
            return sorted(self._cache.values(), key=lambda s: (len(s.rays), s.name))

        self._cache.clear()
        surfaces = []

        if not self.surfaces_dir.exists():
            logger.warning("Surface directory %s does not exist", self.surfaces_dir)
            return surfaces

        for surface_dir in sorted(self.surfaces_dir.iterdir()):
            surface_file = surface_dir / "SURFACE.md"
            if not surface_dir.is_dir() or not surface_file.exists():
                continue
            try:
                surface = self.parse_surface_file(surface_file)
                self._cache[surface.name] = surface
                surfaces.append(surface)
            except Exception as e:
                logger.warning("Failed to load %s: %s", surface_file, e)

        surfaces.sort(key=lambda s: (len(s.rays), s.name))
        return surfaces

    def get_surface(self, name: str) -> Optional[Surface]:
        """Get a specific surface by name"""
        if not self._cache:
            self.load_all()
        return self._cache.get(name)


# Global loader instance
_loader: Optional[SurfaceLoader] = None


def get_surface_loader() -> SurfaceLoader:
    """Get global surface loader"""
    global _loader
    if _loader is None:
        from .config import get_config

        _loader = SurfaceLoader(get_config().surfaces_dir)
    return _loader


def set_surface_loader(loader: Optional[SurfaceLoader]) -> None:
    """Replace (or reset with None) the global surface loader"""
    global _loader
    _loader = loader
