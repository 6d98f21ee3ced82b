"""Small embedded graphs with hand-drawn rotation systems.

Rotations list neighbours counter-clockwise for the drawing described in
each docstring, so face lists (and discharging dumps) are reproducible
independently of the planarity library.
"""

from __future__ import annotations

from .embedding import RotationSystem, embed
from .families import complete_graph, icosahedron_graph
from .graph import Graph


def _from_rotations(rot: dict[int, list[int]]) -> tuple[Graph, RotationSystem]:
    rs = RotationSystem(rot)
    return rs.graph(), rs


def _pendants(rot: dict[int, list[int]], owner: int, ids: list[int]) -> None:
    for p in ids:
        rot[p] = [owner]


def quad_corner_fixture() -> tuple[Graph, RotationSystem]:
    """4-cycle ``u v w x`` (ids 0..3) with ``y`` (4) inside joined to ``v, w, x``.

    ``w``, ``x`` and ``y`` carry four pendants each (5..8, 9..12, 13..16), so
    ``d(u) = 2``, ``d(v) = 3`` and the other three have degree 7.
    """
    rot = {
        0: [1, 3],
        1: [2, 4, 0],
        2: [5, 6, 7, 8, 3, 4, 1],
        3: [2, 9, 10, 11, 12, 0, 4],
        4: [16, 2, 3, 1, 13, 14, 15],
    }
    _pendants(rot, 2, [5, 6, 7, 8])
    _pendants(rot, 3, [9, 10, 11, 12])
    _pendants(rot, 4, [13, 14, 15, 16])
    return _from_rotations(rot)


def wheel_max_fixture() -> tuple[Graph, RotationSystem]:
    """Wheel with hub ``v`` (0) and rim ``u a c b`` (1, 2, 3, 4); ``u`` has pendants 5..8."""
    rot = {
        0: [1, 2, 3, 4],
        1: [7, 8, 2, 0, 4, 5, 6],
        2: [3, 0, 1],
        3: [0, 2, 4],
        4: [1, 0, 3],
    }
    _pendants(rot, 1, [5, 6, 7, 8])
    return _from_rotations(rot)


def star_fixture(leaves: int = 8) -> tuple[Graph, RotationSystem]:
    """Hub 0 with ``leaves`` pendant vertices."""
    rot = {0: list(range(1, leaves + 1))}
    _pendants(rot, 0, list(range(1, leaves + 1)))
    return _from_rotations(rot)


def k4_fixture() -> tuple[Graph, RotationSystem]:
    g = complete_graph(4)
    return g, embed(g)


def icosahedron_fixture() -> tuple[Graph, RotationSystem]:
    g = icosahedron_graph()
    return g, embed(g)


DISCHARGE_FIXTURES = {
    "quad-corner": quad_corner_fixture,
    "wheel-max": wheel_max_fixture,
    "star": star_fixture,
    "k4": k4_fixture,
    "icosahedron": icosahedron_fixture,
}
