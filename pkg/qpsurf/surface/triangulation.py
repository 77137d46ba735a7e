"""
Triangulations of marked surfaces, stored as gluing data.

Every triangle lists its three side labels in clockwise order. A label occurring twice names an arc, the
two occurrences being glued with opposite orientation; a label occurring once is a boundary segment. Each
triangle carries one decorating point, identified by the triangle's index, which flips keep in place.
"""
import hashlib
import json
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from qpsurf.base.path_algebra import Arrow, Potential, Quiver
from qpsurf.support.errors import FixtureError, TriangulationError, UnsupportedError
from qpsurf.support.logs import project_logger
from qpsurf.support.py_utils import VerboseEnum
from qpsurf.surface.marked_surface import MarkedSurface

_LOGGER = project_logger(__file__)

Slot = Tuple[int, int]


class FlipDirection(VerboseEnum):
    FORWARD = 'forward'
    BACKWARD = 'backward'

    @property
    def inverse(self) -> 'FlipDirection':
        return FlipDirection.BACKWARD if self == FlipDirection.FORWARD else FlipDirection.FORWARD

    @property
    def symbol(self) -> str:
        return '+' if self == FlipDirection.FORWARD else '-'


class _Corners:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        self.parent[self.find(x)] = self.find(y)

    def classes(self) -> int:
        return len({self.find(x) for x in range(len(self.parent))})


class DecoratedTriangulation:
    """
    A decorated triangulation of a marked surface without punctures.

    Attributes:
        triangles (tuple[tuple[str, str, str]]): Side labels of every triangle, clockwise.
        boundary (tuple[tuple[str]]): Boundary segment labels of every boundary component.
        genus (int): Genus of the surface.
        arcs (tuple[str]): Arc labels, sorted.
        surface (MarkedSurface): The underlying marked surface.
        last_flip (Optional[tuple[str, FlipDirection]]): The flip this triangulation was produced by, if any.
    """

    def __init__(self, triangles: Iterable[Sequence[str]], boundary: Iterable[Sequence[str]], genus: int = 0, last_flip: Tuple[str, FlipDirection] = None):
        self.triangles = tuple(tuple(str(side) for side in triangle) for triangle in triangles)
        self.boundary = tuple(tuple(str(label) for label in component) for component in boundary)
        self.genus = int(genus)
        self.last_flip = last_flip
        self.arcs: Tuple[str, ...] = ()

        if any(len(triangle) != 3 for triangle in self.triangles):
            raise TriangulationError(f'{self}: every triangle needs exactly three sides')

        self._slots: Dict[str, List[Slot]] = {}
        for t, triangle in enumerate(self.triangles):
            for i, label in enumerate(triangle):
                self._slots.setdefault(label, []).append((t, i))

        boundary_labels = [label for component in self.boundary for label in component]
        if len(set(boundary_labels)) != len(boundary_labels):
            raise TriangulationError(f'{self}: repeated boundary label')
        for label in boundary_labels:
            if len(self._slots.get(label, [])) != 1:
                raise TriangulationError(f'{self}: boundary label {label!r} must occur on exactly one side')

        arcs = []
        for label, slots in self._slots.items():
            if label in boundary_labels:
                continue
            if len(slots) != 2:
                raise TriangulationError(f'{self}: label {label!r} occurs {len(slots)} times but is not a boundary segment')
            arcs.append(label)
        self.arcs = tuple(sorted(arcs))
        self._boundary_labels = frozenset(boundary_labels)

        try:
            self.surface = MarkedSurface(self.genus, tuple(len(component) for component in self.boundary))
        except TriangulationError as e:
            raise TriangulationError(f'{self}: {e}') from e
        if len(self.arcs) != self.surface.arc_count:
            raise TriangulationError(f'{self}: has {len(self.arcs)} arcs, the surface needs {self.surface.arc_count}')
        if len(self.triangles) != self.surface.decoration_count:
            raise TriangulationError(f'{self}: has {len(self.triangles)} triangles, the surface needs {self.surface.decoration_count}')
        corners = self.corner_classes()
        if corners != self.surface.marked_points:
            raise TriangulationError(f'{self}: gluing yields {corners} marked points, the boundary lists {self.surface.marked_points}')

    def __repr__(self):
        return f'DecoratedTriangulation({len(self.triangles)} triangles, {len(self.arcs)} arcs)'

    def __eq__(self, other):
        if not isinstance(other, DecoratedTriangulation):
            return NotImplemented
        return (self.triangles, self.boundary, self.genus) == (other.triangles, other.boundary, other.genus)

    def __hash__(self):
        return hash((self.triangles, self.boundary, self.genus))

    def is_arc(self, label: str) -> bool:
        return label in self._slots and label not in self._boundary_labels

    def slots(self, label: str) -> List[Slot]:
        try:
            return list(self._slots[label])
        except KeyError:
            raise TriangulationError(f'{self}: unknown side label {label!r}') from None

    def side(self, t: int, i: int) -> str:
        return self.triangles[t][i % 3]

    def other_slot(self, t: int, i: int) -> Slot:
        """ The slot glued to side `i` of triangle `t`. """
        i %= 3
        slots = self.slots(self.triangles[t][i])
        if len(slots) != 2:
            raise TriangulationError(f'{self}: side ({t}, {i}) lies on the boundary')
        return slots[1] if slots[0] == (t, i) else slots[0]

    def gluing(self) -> List[Tuple[int, int, int, int]]:
        return [(*self._slots[arc][0], *self._slots[arc][1]) for arc in self.arcs]

    def corner_classes(self) -> int:
        """
        Number of marked points the gluing produces.

        Corner `(t, j)` is the endpoint of side `j` shared with side `j + 1`. Gluing side `i` of `t` to side `i'` of `t'`
        identifies corner `(t, i - 1)` with `(t', i')` and `(t, i)` with `(t', i' - 1)`.
        """
        corners = _Corners(3 * len(self.triangles))
        for t, i, u, j in self.gluing():
            corners.union(3 * t + (i - 1) % 3, 3 * u + j)
            corners.union(3 * t + i, 3 * u + (j - 1) % 3)
        return corners.classes()

    def germ_order(self, t: int) -> Tuple[Tuple[int, str], ...]:
        """ Arc sides of triangle `t` in clockwise order, as (slot, arc) pairs. """
        return tuple((i, label) for i, label in enumerate(self.triangles[t]) if self.is_arc(label))

    def self_glued_triangles(self) -> List[int]:
        return [t for t, triangle in enumerate(self.triangles) if len({l for l in triangle if self.is_arc(l)}) < sum(1 for l in triangle if self.is_arc(l))]

    def is_flippable(self, arc: str) -> bool:
        if not self.is_arc(arc):
            return False
        (t1, _), (t2, _) = sorted(self._slots[arc])
        return t1 != t2 and t1 not in self.self_glued_triangles() and t2 not in self.self_glued_triangles()

    def flippable_arcs(self) -> List[str]:
        return [arc for arc in self.arcs if self.is_flippable(arc)]

    def quadrilateral(self, arc: str) -> Tuple[Slot, Slot, Tuple[str, str, str, str]]:
        """
        The quadrilateral around an arc.

        Returns:
            tuple: The sorted slots `(t1, i1)`, `(t2, i2)` of the arc and the sides `(A, B, C, D)` such that `t1` reads
                `(arc, A, B)` and `t2` reads `(arc, C, D)` clockwise.
        """
        if not self.is_arc(arc):
            raise TriangulationError(f'{self}: {arc!r} is not an arc')
        if not self.is_flippable(arc):
            raise UnsupportedError(f'{self}: arc {arc!r} is not flippable', reason='self-glued quadrilateral')
        (t1, i1), (t2, i2) = sorted(self._slots[arc])
        a, b = self.side(t1, i1 + 1), self.side(t1, i1 + 2)
        c, d = self.side(t2, i2 + 1), self.side(t2, i2 + 2)
        return (t1, i1), (t2, i2), (a, b, c, d)

    def flip(self, arc: str, direction: FlipDirection = FlipDirection.FORWARD) -> 'DecoratedTriangulation':
        """
        Replaces an arc by the other diagonal of its quadrilateral, keeping its label.

        With `t1 = (arc, A, B)` and `t2 = (arc, C, D)`, a forward flip yields `t1 = (arc, D, A)` and `t2 = (arc, B, C)`,
        a backward flip `t1 = (arc, B, C)` and `t2 = (arc, D, A)`. Both triangles keep their decorations.

        Raises:
            UnsupportedError: If the arc bounds a self-glued triangle or both its sides lie on one triangle.
        """
        direction = FlipDirection[direction]
        (t1, i1), (t2, i2), (a, b, c, d) = self.quadrilateral(arc)
        if direction == FlipDirection.FORWARD:
            first, second = (arc, d, a), (arc, b, c)
        else:
            first, second = (arc, b, c), (arc, d, a)

        triangles = [list(triangle) for triangle in self.triangles]
        for j in range(3):
            triangles[t1][(i1 + j) % 3] = first[j]
            triangles[t2][(i2 + j) % 3] = second[j]
        return DecoratedTriangulation(triangles, self.boundary, self.genus, last_flip=(arc, direction))

    def to_dict(self) -> dict:
        data = {
            'triangles': [list(triangle) for triangle in self.triangles],
            'gluing': [list(g) for g in self.gluing()],
            'boundary': [list(component) for component in self.boundary],
        }
        if self.genus:
            data['genus'] = self.genus
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'DecoratedTriangulation':
        if not isinstance(data, dict):
            raise FixtureError(f'Triangulation document must be an object, got {type(data).__name__}')
        try:
            triangulation = cls(data['triangles'], data['boundary'], data.get('genus', 0))
        except KeyError as e:
            raise TriangulationError(f'Triangulation document misses the field {e}') from e
        except (TypeError, AttributeError) as e:
            raise FixtureError(f'Malformed triangulation document: {e}') from e
        if 'gluing' in data:
            declared = sorted(tuple(sorted([tuple(g[:2]), tuple(g[2:])])) for g in data['gluing'])
            derived = sorted(tuple(sorted([g[:2], g[2:]])) for g in triangulation.gluing())
            if declared != derived:
                raise TriangulationError(f'{triangulation}: declared gluing disagrees with the side labels')
        return triangulation


def angle_arrows(t: DecoratedTriangulation) -> Dict[Slot, Arrow]:
    """
    One arrow per clockwise angle between two arc sides: the angle at slot `(t, i)` runs from side `i` to side `i + 1`.
    """
    arrows = {}
    for index, triangle in enumerate(t.triangles):
        for i in range(3):
            source, target = triangle[i], triangle[(i + 1) % 3]
            if t.is_arc(source) and t.is_arc(target):
                arrows[(index, i)] = Arrow(f'{source}>{target}:{index}', source, target)
    return arrows


def qp_of_triangulation(t: DecoratedTriangulation) -> Tuple[Quiver, Potential]:
    if t.self_glued_triangles():
        raise UnsupportedError(f'{t}: self-glued triangles {t.self_glued_triangles()}', reason='self-glued triangle')
    arrows = angle_arrows(t)
    quiver = Quiver(t.arcs, [arrows[slot] for slot in sorted(arrows)])
    cycles = {}
    for index in range(len(t.triangles)):
        if all((index, i) in arrows for i in range(3)):
            cycles[tuple(arrows[(index, i)].id for i in range(3))] = 1
    return quiver, Potential(quiver, cycles)


@dataclass(frozen=True)
class CanonicalForm:
    """
    A triangulation relabelled by a fixed traversal.

    Attributes:
        key (tuple): Triangles in visit order with arcs renamed '1', '2', ...; decorated forms prefix each with its decoration.
        arc_names (dict[str, str]): Canonical name of every arc.
        decorated (bool): Whether decorations are part of the key.
    """
    key: tuple
    arc_names: Dict[str, str]
    decorated: bool

    @property
    def hash(self) -> str:
        return hashlib.sha1(repr(self.key).encode('utf-8')).hexdigest()[:10]


def canonical_form(t: DecoratedTriangulation, decorated: bool = False) -> CanonicalForm:
    """
    Breadth-first relabelling starting at the triangle holding the smallest boundary label.

    Each triangle is read clockwise from the side it was entered through; arcs are named in order of first
    appearance. Boundary labels are kept, so two triangulations get equal undecorated keys iff they differ by
    a renaming of arcs.
    """
    start_label = min(label for component in t.boundary for label in component)
    start = t.slots(start_label)[0]

    names: Dict[str, str] = {}
    visited = set()
    entries = []
    queue = deque([start])
    while queue:
        index, entry = queue.popleft()
        if index in visited:
            continue
        visited.add(index)
        rotated = [t.side(index, entry + j) for j in range(3)]
        for j, label in enumerate(rotated):
            if not t.is_arc(label):
                continue
            if label not in names:
                names[label] = str(len(names) + 1)
            neighbour = t.other_slot(index, entry + j)
            if neighbour[0] not in visited:
                queue.append(neighbour)
        renamed = tuple(names.get(label, label) for label in rotated)
        entries.append((index, renamed) if decorated else renamed)
    return CanonicalForm(tuple(entries), names, decorated)


def read_triangulation(filepath: str) -> DecoratedTriangulation:
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise FixtureError(f'Cannot read triangulation document {filepath!r}: {e}') from e
    return DecoratedTriangulation.from_dict(data)


def write_triangulation(filepath: str, t: DecoratedTriangulation):
    with open(filepath, 'w', encoding='utf-8') as f:
        json.dump(t.to_dict(), f, indent=2)
