"""
Builtin triangulations and quivers with potential, and lookup of fixture files.
"""
import itertools
import os
from typing import Iterable, List, Optional, Tuple

from qpsurf import var
from qpsurf.base.path_algebra import Arrow, Potential, Quiver, read_qp
from qpsurf.support.errors import FixtureError
from qpsurf.support.logs import project_logger
from qpsurf.surface.triangulation import DecoratedTriangulation, qp_of_triangulation, read_triangulation

_LOGGER = project_logger(__file__)


def _edge_label(n: int, a: int, b: int) -> str:
    a, b = min(a, b), max(a, b)
    if b == a + 1:
        return f'b{a}'
    if a == 0 and b == n - 1:
        return f'b{n - 1}'
    return f'{a}-{b}'


def polygon(n: int, diagonals: Iterable[Tuple[int, int]]) -> DecoratedTriangulation:
    """
    Triangulation of a disc with `n` marked points labelled 0..n-1 counterclockwise.

    Diagonal (a, b) is labelled 'a-b', the boundary segment from i to i + 1 is labelled 'b{i}'. Triangles are sorted by
    their vertices; triangle a < b < c reads its sides clockwise as (a, c), (c, b), (b, a).

    Parameters:
        n (int): Number of marked points, at least 4.
        diagonals (Iterable[tuple[int, int]]): The n - 3 pairwise non-crossing diagonals.
    """
    if n < 4:
        raise FixtureError(f'A polygon needs at least 4 marked points, got {n}')
    edges = {tuple(sorted(d)) for d in diagonals}
    if len(edges) != n - 3:
        raise FixtureError(f'A triangulated {n}-gon needs {n - 3} diagonals, got {sorted(edges)}')
    edges |= {tuple(sorted((i, (i + 1) % n))) for i in range(n)}

    triangles = []
    for a, b, c in itertools.combinations(range(n), 3):
        if (a, b) in edges and (b, c) in edges and (a, c) in edges:
            triangles.append([_edge_label(n, a, c), _edge_label(n, c, b), _edge_label(n, b, a)])
    return DecoratedTriangulation(triangles, [[f'b{i}' for i in range(n)]])


def fan(n: int) -> DecoratedTriangulation:
    return polygon(n, [(0, i) for i in range(2, n - 1)])


def pentagon() -> DecoratedTriangulation:
    return fan(5)


def hexagon() -> DecoratedTriangulation:
    """ The hexagon with the central triangle 0, 2, 4. """
    return polygon(6, [(0, 2), (2, 4), (0, 4)])


def heptagon() -> DecoratedTriangulation:
    """ A heptagon whose arcs 0-2 and 3-6 bound disjoint quadrilaterals. """
    return polygon(7, [(0, 2), (0, 3), (3, 6), (4, 6)])


def annulus() -> DecoratedTriangulation:
    """ The annulus with one marked point on each boundary component; its quiver is the Kronecker quiver a ⇉ b. """
    return DecoratedTriangulation([('a', 'b', 'O'), ('b', 'I', 'a')], [['O'], ['I']])


def a2() -> Tuple[Quiver, Potential]:
    quiver = Quiver(['1', '2'], [Arrow('x', '1', '2')])
    return quiver, Potential.zero(quiver)


def three_cycle() -> Tuple[Quiver, Potential]:
    quiver = Quiver(['1', '2', '3'], [Arrow('x', '1', '2'), Arrow('y', '2', '3'), Arrow('z', '3', '1')])
    return quiver, Potential(quiver, {('x', 'y', 'z'): 1})


def kronecker() -> Tuple[Quiver, Potential]:
    quiver = Quiver(['1', '2'], [Arrow('a', '1', '2'), Arrow('b', '1', '2')])
    return quiver, Potential.zero(quiver)


def local() -> Tuple[Quiver, Potential]:
    """ Two triangles sharing the vertex k, the local picture of a flip in a surface quiver. """
    quiver = Quiver(
        ['1', '2', '3', '4', 'k'],
        [
            Arrow('a', 'k', '1'), Arrow('b', '1', '2'), Arrow('c', '2', 'k'),
            Arrow('e', 'k', '3'), Arrow('f', '3', '4'), Arrow('g', '4', 'k'),
        ],
    )
    return quiver, Potential(quiver, {('a', 'b', 'c'): 1, ('e', 'f', 'g'): 1})


SURFACES = {
    'pentagon': pentagon,
    'hexagon': hexagon,
    'heptagon': heptagon,
    'annulus': annulus,
}

QPS = {
    'a2': a2,
    'three-cycle': three_cycle,
    'kronecker': kronecker,
    'local': local,
}


def _override(name: str) -> Optional[str]:
    if var.FIXTURES_DIR is None:
        return None
    filepath = os.path.join(var.FIXTURES_DIR, f'{name}.json')
    return filepath if os.path.isfile(filepath) else None


def load_surface(name: str) -> DecoratedTriangulation:
    """
    Resolves a triangulation by name or path.

    A file `<name>.json` in `QPSURF_FIXTURES_DIR` takes precedence over the builtin fixture of the same name; any other
    name is read as a path.
    """
    override = _override(name)
    if override is not None:
        _LOGGER.debug(f'Fixture {name!r} read from {override!r}')
        return read_triangulation(override)
    if name in SURFACES:
        return SURFACES[name]()
    if os.path.isfile(name):
        return read_triangulation(name)
    raise FixtureError(f'Unknown surface fixture {name!r}, expected one of {sorted(SURFACES)} or a JSON file')


def load_qp(name: str) -> Tuple[Quiver, Potential]:
    """ Resolves a quiver with potential by name or path; surface fixture names yield their triangulation's QP. """
    override = _override(name)
    if override is not None:
        _LOGGER.debug(f'Fixture {name!r} read from {override!r}')
        return read_qp(override)
    if name in QPS:
        return QPS[name]()
    if name in SURFACES:
        return qp_of_triangulation(SURFACES[name]())
    if os.path.isfile(name):
        return read_qp(name)
    raise FixtureError(f'Unknown QP fixture {name!r}, expected one of {sorted(QPS) + sorted(SURFACES)} or a JSON file')


def builtin_qp_names() -> List[str]:
    return sorted(QPS) + sorted(SURFACES)


def builtin_surface_names() -> List[str]:
    return sorted(SURFACES)
