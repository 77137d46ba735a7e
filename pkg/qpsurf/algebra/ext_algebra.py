"""
The angle basis of the Ext algebra of the simples of a triangulation's heart.

Every arc carries its dual arc, with an identity in degree 0 and a Calabi-Yau class in degree 3. Every clockwise
angle between two arc sides of a triangle gives an angle of span 1 at the triangle's decoration, and the reverse angle
sweeping the two other corners gives one of span 2. Products are read left to right: `product(x, y)` is `x` then `y`.
"""
import json
import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from qpsurf.algebra.ginzburg import star, vertex_star
from qpsurf.base.report import Check
from qpsurf.support.errors import UnsupportedError
from qpsurf.support.logs import project_logger
from qpsurf.support.py_utils import VerboseEnum
from qpsurf.surface.triangulation import DecoratedTriangulation, angle_arrows

_LOGGER = project_logger(__file__)


class BasisKind(VerboseEnum):
    ID = 'id'
    ANGLE = 'ang'
    CY = 'cy'


@dataclass(frozen=True)
class ExtBasisElement:
    """
    One basis element.

    Attributes:
        kind (BasisKind): id, angle or cy.
        source (str): Arc of the source dual arc.
        target (str): Arc of the target dual arc.
        degree (int): 0 for id, the span for angles, 3 for cy.
        decoration (Optional[int]): Triangle of an angle.
        source_slot (Optional[int]): Side of the decoration the angle starts at.
        target_slot (Optional[int]): Side of the decoration the angle ends at.
    """
    kind: BasisKind
    source: str
    target: str
    degree: int
    decoration: Optional[int] = None
    source_slot: Optional[int] = None
    target_slot: Optional[int] = None

    @property
    def id(self) -> str:
        if self.kind == BasisKind.ANGLE:
            return f'ang{self.degree}@{self.decoration}({self.source}->{self.target})'
        return f'{self.kind}({self.source})'

    @property
    def label_key(self) -> Tuple[str, str, str, int]:
        """ The element without its decoration. """
        return str(self.kind), self.source, self.target, self.degree


def _identity(arc: str) -> ExtBasisElement:
    return ExtBasisElement(BasisKind.ID, arc, arc, 0)


def _cy(arc: str) -> ExtBasisElement:
    return ExtBasisElement(BasisKind.CY, arc, arc, 3)


def _angle(t: DecoratedTriangulation, z: int, source_slot: int, target_slot: int) -> ExtBasisElement:
    span = (target_slot - source_slot) % 3
    return ExtBasisElement(BasisKind.ANGLE, t.side(z, source_slot), t.side(z, target_slot), span, z, source_slot, target_slot)


def basis_product(x: ExtBasisElement, y: ExtBasisElement) -> Optional[ExtBasisElement]:
    """
    Product of two basis elements, `x` then `y`, with every structure constant `+1`.

    Angles compose at a common decoration when the target side of the first is the source side of the second: spans
    adding to 3 and returning to the start give the cy class of the start arc, spans adding to at most 2 give the
    angle sweeping both. Identities are units, cy classes annihilate every element of positive degree.
    """
    if x.target != y.source:
        return None
    if x.kind == BasisKind.ID:
        return y
    if y.kind == BasisKind.ID:
        return x
    if x.kind == BasisKind.CY or y.kind == BasisKind.CY:
        return None
    if x.decoration != y.decoration or x.target_slot != y.source_slot:
        return None
    span = x.degree + y.degree
    if span == 3 and y.target_slot == x.source_slot:
        return _cy(x.source)
    if span <= 2 and (x.source_slot + span) % 3 == y.target_slot:
        return ExtBasisElement(BasisKind.ANGLE, x.source, y.target, span, x.decoration, x.source_slot, y.target_slot)
    return None


@dataclass
class ExtAlgebraTable():
    """
    Graded basis and multiplication table of the Ext algebra of a triangulation.

    Attributes:
        triangulation (DecoratedTriangulation): The triangulation.
        basis (tuple[ExtBasisElement]): Basis sorted by degree and id.
        products (dict[tuple[str, str], str]): Id of every nonzero product of two basis elements.
    """
    triangulation: DecoratedTriangulation
    basis: Tuple[ExtBasisElement, ...]
    products: Dict[Tuple[str, str], str] = field(default_factory=dict)

    def __post_init__(self):
        self._by_id = {element.id: element for element in self.basis}

    def __repr__(self):
        return f'ExtAlgebraTable(dims={self.dims()})'

    def element(self, element_id: str) -> ExtBasisElement:
        try:
            return self._by_id[element_id]
        except KeyError:
            raise KeyError(f'{self}: no basis element {element_id!r}') from None

    def product(self, x: str, y: str) -> Optional[str]:
        return self.products.get((x, y))

    def ids(self) -> List[str]:
        return [element.id for element in self.basis]

    def dims(self) -> Tuple[int, int, int, int]:
        return tuple(sum(1 for element in self.basis if element.degree == d) for d in range(4))

    def to_dict(self) -> dict:
        return {
            'dims': list(self.dims()),
            'basis': [{'id': e.id, 'kind': str(e.kind), 'degree': e.degree, 'source': e.source, 'target': e.target} for e in self.basis],
            'products': [[x, y, z] for (x, y), z in sorted(self.products.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def ext_algebra_of(t: DecoratedTriangulation) -> ExtAlgebraTable:
    """
    Builds the basis from the angles of every triangle and generates the multiplication table.

    Raises:
        UnsupportedError: If some triangle is self-glued.
    """
    if t.self_glued_triangles():
        raise UnsupportedError(f'{t}: self-glued triangles {t.self_glued_triangles()}', reason='self-glued triangle')

    basis = [_identity(arc) for arc in t.arcs] + [_cy(arc) for arc in t.arcs]
    for z, i in sorted(angle_arrows(t)):
        basis.append(_angle(t, z, i, (i + 1) % 3))
        basis.append(_angle(t, z, (i + 1) % 3, i))
    basis.sort(key=lambda e: (e.degree, e.id))

    products = {}
    for x, y in itertools.product(basis, repeat=2):
        result = basis_product(x, y)
        if result is not None:
            products[(x.id, y.id)] = result.id
    return ExtAlgebraTable(t, tuple(basis), products)


def pi_dictionary(t: DecoratedTriangulation) -> Dict[str, str]:
    """
    Matches the trivial paths and arrows of the doubled quiver of a triangulation with the basis.

    `e_i ↦ id`, an arrow `ρ ↦` its span-1 angle, `ρ* ↦` the span-2 angle back and `e_i* ↦ cy`.
    """
    if t.self_glued_triangles():
        raise UnsupportedError(f'{t}: self-glued triangles {t.self_glued_triangles()}', reason='self-glued triangle')
    dictionary = {}
    for arc in t.arcs:
        dictionary[f'e_{arc}'] = _identity(arc).id
        dictionary[vertex_star(arc)] = _cy(arc).id
    for (z, i), arrow in sorted(angle_arrows(t).items()):
        dictionary[arrow.id] = _angle(t, z, i, (i + 1) % 3).id
        dictionary[star(arrow.id)] = _angle(t, z, (i + 1) % 3, i).id
    return dictionary


def check_associativity(table: ExtAlgebraTable) -> Check:
    check = Check('associativity')
    ids = table.ids()
    for x, y, z in itertools.product(ids, repeat=3):
        xy, yz = table.product(x, y), table.product(y, z)
        left = table.product(xy, z) if xy is not None else None
        right = table.product(x, yz) if yz is not None else None
        if left != right:
            check.fail(f'({x}·{y})·{z} vs {x}·({y}·{z})', f'{left} != {right}')
    return check


def check_units(table: ExtAlgebraTable) -> Check:
    check = Check('unit')
    for element in table.basis:
        for side, pair in (('left', (f'id({element.source})', element.id)), ('right', (element.id, f'id({element.target})'))):
            if table.product(*pair) != element.id:
                check.fail(f'{side} unit of {element.id}', table.product(*pair))
    return check


def check_pairing(table: ExtAlgebraTable) -> Check:
    """ Every angle of degree 1 is followed by an angle of degree 2 with product the cy class of its source. """
    check = Check('cy-pairing')
    degree_two = [e for e in table.basis if e.degree == 2]
    for element in table.basis:
        if element.degree != 1:
            continue
        partners = [b.id for b in degree_two if table.product(element.id, b.id) == _cy(element.source).id]
        if len(partners) != 1:
            check.fail(element.id, f'{len(partners)} degree-2 partners')
    return check


def check_dims(table: ExtAlgebraTable, arrow_count: int) -> Check:
    check = Check('dims')
    arcs = len(table.triangulation.arcs)
    expected = (arcs, arrow_count, arrow_count, arcs)
    if table.dims() != expected:
        check.fail('dims', f'{table.dims()} != {expected}')
    return check
