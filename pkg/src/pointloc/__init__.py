"""Point location in incremental planar subdivisions.

Inserts edges and vertices into a (possibly disconnected) planar
subdivision and answers "which face contains this point" queries in
polylogarithmic time, with brute-force oracles for verification and a
benchmark CLI.
"""

from .geom import Coord, Point, Segment, Trapezoid, pt, seg

__all__ = ["Coord", "Point", "Segment", "Trapezoid", "pt", "seg", "Locator"]


def __getattr__(name):
    if name == "Locator":
        from .locator import Locator
        return Locator
    raise AttributeError(name)
