import logging

import pytest

from src.core.cohomology import c1_squared_from_fan
from src.core.surface import SurfaceLoader, get_surface_loader

SQUARE = """---
name: square
description: "Unit square"
rays: [[1, 0], [0, 1], [-1, 0], [0, -1]]
metadata: {"symbol": "P1xP1", "lattice": "quadric"}
---

Notes about the square.
"""

TRIANGLE = """---
name: triangle
rays: [[1, 0], [0, 1], [-1, -1]]
---
"""


def write_surface(root, folder, content):
    directory = root / folder
    directory.mkdir()
    (directory / "SURFACE.md").write_text(content, encoding="utf-8")
    return directory / "SURFACE.md"


def test_parse_surface_file(tmp_path):
    path = write_surface(tmp_path, "square", SQUARE)
    surface = SurfaceLoader(tmp_path).parse_surface_file(path)
    assert surface.name == "square"
    assert surface.rays == [(1, 0), (0, 1), (-1, 0), (0, -1)]
    assert surface.metadata.lattice == "quadric"
    assert surface.notes == "Notes about the square."
    assert surface.lattice().first_chern_class.square() == 8


@pytest.mark.parametrize(
    "content",
    ["no frontmatter here\n", "---\nname: x\n---\n", "---\nrays: [[1, 0]]\n---\n", "---\n\n---\n"],
)
def test_parse_rejects_incomplete_files(tmp_path, content):
    path = write_surface(tmp_path, "broken", content)
    with pytest.raises(ValueError):
        SurfaceLoader(tmp_path).parse_surface_file(path)


def test_load_all_sorts_and_skips_broken(tmp_path, caplog):
    write_surface(tmp_path, "a_square", SQUARE)
    write_surface(tmp_path, "b_triangle", TRIANGLE)
    write_surface(tmp_path, "c_broken", "nothing\n")
    (tmp_path / "stray.txt").write_text("ignored", encoding="utf-8")

    with caplog.at_level(logging.WARNING):
        surfaces = SurfaceLoader(tmp_path).load_all()
    assert [s.name for s in surfaces] == ["triangle", "square"]
    assert "Failed to load" in caplog.text


def test_missing_directory(tmp_path):
    loader = SurfaceLoader(tmp_path / "absent")
    assert loader.load_all() == []
    assert loader.get_surface("cp2") is None


def test_builtin_catalog():
    loader = get_surface_loader()
    assert [s.name for s in loader.load_all()] == ["cp2", "dp1", "quadric", "dp2", "dp3"]
    for surface in loader.load_all():
        assert surface.lattice().first_chern_class.square() == c1_squared_from_fan(surface.fan)


def test_builtin_metadata():
    loader = get_surface_loader()
    dp1 = loader.get_surface("dp1")
    assert dp1.metadata.blowups == 1
    assert dp1.metadata.kahler_einstein is False
    assert loader.get_surface("cp2").metadata.kahler_einstein is True
