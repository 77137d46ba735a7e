from dataclasses import dataclass, field
from typing import Tuple

from qpsurf.support.errors import TriangulationError


@dataclass(frozen=True)
class MarkedSurface():
    """
    A compact oriented surface with marked points on its boundary.

    Attributes:
        genus (int): Genus of the surface.
        boundaries (tuple[int]): Number of marked points on each boundary component.
    """
    genus: int = field(default=0)
    boundaries: Tuple[int, ...] = field(default=(1,))

    def __post_init__(self):
        object.__setattr__(self, 'boundaries', tuple(int(b) for b in self.boundaries))
        if self.genus < 0:
            raise TriangulationError(f'{self}: negative genus')
        if not self.boundaries:
            raise TriangulationError(f'{self}: at least one boundary component is required')
        if any(b < 1 for b in self.boundaries):
            raise TriangulationError(f'{self}: every boundary component needs a marked point')
        if self.arc_count < 1:
            raise TriangulationError(f'{self}: admits no arcs')

    @property
    def marked_points(self) -> int:
        return sum(self.boundaries)

    @property
    def arc_count(self) -> int:
        return 6 * self.genus + 3 * len(self.boundaries) + self.marked_points - 6

    @property
    def decoration_count(self) -> int:
        """ Number of triangles of any triangulation, one decorating point each. """
        return (2 * self.arc_count + self.marked_points) // 3


def disc(marked_points: int) -> MarkedSurface:
    return MarkedSurface(0, (marked_points,))


def annulus(outer: int, inner: int) -> MarkedSurface:
    return MarkedSurface(0, (outer, inner))
