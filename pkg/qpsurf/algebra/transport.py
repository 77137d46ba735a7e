"""
Transport of the angle basis along flip paths, expressed in a fixed frame triangulation.

After a path of flips `T_0 -> ... -> T_m`, every basis element of `E(T_m)` is described in `T_0`: identities and cy
classes by the dual curve of their arc, angles by the two rays bounding them at their decoration, every curve written
as a reduced word of `T_0`. Two transports agree iff they produce the same labels.
"""
import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from qpsurf.algebra.ext_algebra import BasisKind, ExtAlgebraTable, ExtBasisElement, ext_algebra_of
from qpsurf.base.report import Check
from qpsurf.support.errors import FixtureError, TriangulationError, UnsupportedError
from qpsurf.support.logs import project_logger
from qpsurf.surface.curves import Word, canonical, crossed_arcs, dual_arc, is_clockwise, partial_angle, reduce_word, reverse, walk
from qpsurf.surface.triangulation import DecoratedTriangulation, FlipDirection

_LOGGER = project_logger(__file__)

FlipPath = Sequence[Tuple[str, FlipDirection]]
FrameLabel = tuple


class _FlipStep:
    """
    Rays of a flipped triangulation written as words of the triangulation before the flip.

    A forward flip changes the dual arcs of the sides `B` and `D`: they leave the decoration of the other triangle
    through the flipped arc and turn back by one sector. A backward flip changes those of `A` and `C`, turning forward.
    """

    def __init__(self, before: DecoratedTriangulation, arc: str, direction: FlipDirection):
        direction = FlipDirection[direction]
        (t1, i1), (t2, i2), sides = before.quadrilateral(arc)
        if len(set(sides)) < 4 or arc in sides:
            raise UnsupportedError(f'{before}: quadrilateral of {arc!r} repeats the side {sides}', reason='repeated quadrilateral side')
        self.before = before
        self.after = before.flip(arc, direction)
        if direction == FlipDirection.FORWARD:
            self.changed = {sides[1]: Word(t2, i2, (-1,)), sides[3]: Word(t1, i1, (-1,))}
        else:
            self.changed = {sides[0]: Word(t2, i2, (1,)), sides[2]: Word(t1, i1, (1,))}

    def ray(self, z: int, slot: int) -> Word:
        arc = self.after.side(z, slot)
        if arc in self.changed:
            word = self.changed[arc]
            ray = word if word.start == z else reverse(self.before, word)
            if ray.start != z:
                raise TriangulationError(f'{self.before}: dual arc of {arc!r} does not reach decoration {z}')
            return ray
        for index, side in self.before.slots(arc):
            if index == z:
                return Word(z, side, ())
        raise TriangulationError(f'{self.before}: arc {arc!r} is not a side of triangle {z}')

    def pull(self, word: Word) -> Word:
        """ Rewrites a reduced word of the flipped triangulation as a reduced word before the flip. """
        segment = self.ray(word.start, word.side)
        result = segment
        for (z, entry), turn in zip(walk(self.after, word), word.turns):
            following = self.ray(z, (entry + turn) % 3)
            junction = partial_angle(reverse(self.before, segment), following) + 3 * (turn // 3)
            result = Word(result.start, result.side, result.turns + (junction,) + following.turns)
            segment = following
        reduced = reduce_word(result)
        if reduced is None:
            raise TriangulationError(f'{self.before}: word {word} contracts after the flip')
        return reduced


@dataclass
class TransportMap():
    """
    The basis of the Ext algebra at the end of a flip path, labelled in the frame triangulation.

    Attributes:
        frame (DecoratedTriangulation): `T_0`.
        path (tuple): The flips, as (arc, direction) pairs.
        end (DecoratedTriangulation): `T_m`.
        table (ExtAlgebraTable): `E(T_m)`.
        labels (dict[str, tuple]): Frame label of every basis element, ('id', curve), ('cy', curve) or
            ('ang', decoration, ray, ray, span).
    """
    frame: DecoratedTriangulation
    path: Tuple[Tuple[str, FlipDirection], ...]
    end: DecoratedTriangulation
    table: ExtAlgebraTable
    labels: Dict[str, FrameLabel] = field(default_factory=dict)

    def __repr__(self):
        return f'TransportMap({"".join(f"{a}{d.symbol}" for a, d in self.path) or "id"}, {len(self.labels)} labels)'

    def fingerprint(self) -> str:
        return hashlib.sha1(json.dumps(self.to_dict()['labels'], sort_keys=True).encode('utf-8')).hexdigest()[:10]

    def to_dict(self) -> dict:
        return {
            'path': [f'{arc}{direction.symbol}' for arc, direction in self.path],
            'labels': {element_id: format_label(label) for element_id, label in sorted(self.labels.items())},
        }


def format_label(label: FrameLabel) -> str:
    if label[0] == 'ang':
        _, z, u, v, span = label
        return f'ang{span}@{z}[{u}|{v}]'
    return f'{label[0]}[{label[1]}]'


def _pull_to_frame(steps: Sequence[_FlipStep], word: Word) -> Word:
    for step in reversed(steps):
        word = step.pull(word)
    return word


def _frame_label(frame: DecoratedTriangulation, end: DecoratedTriangulation, steps: Sequence[_FlipStep], element: ExtBasisElement) -> FrameLabel:
    if element.kind == BasisKind.ANGLE:
        z = element.decoration
        u = _pull_to_frame(steps, Word(z, element.source_slot, ()))
        v = _pull_to_frame(steps, Word(z, element.target_slot, ()))
        return 'ang', z, u, v, element.degree
    return str(element.kind), canonical(frame, _pull_to_frame(steps, dual_arc(end, element.source)))


def path_transport(t0: DecoratedTriangulation, path: FlipPath) -> TransportMap:
    """
    Composes the flip transports along a path; the empty path gives the canonical labelling of `E(T_0)`.

    Raises:
        UnsupportedError: If some flip is not supported, eg. its quadrilateral repeats a side.
    """
    steps: List[_FlipStep] = []
    current = t0
    for arc, direction in path:
        step = _FlipStep(current, arc, direction)
        steps.append(step)
        current = step.after
    table = ext_algebra_of(current)
    labels = {element.id: _frame_label(t0, current, steps, element) for element in table.basis}
    _LOGGER.debug(f'Transported {len(labels)} basis elements along {len(steps)} flips')
    return TransportMap(t0, tuple((arc, FlipDirection[d]) for arc, d in path), current, table, labels)


def flip_transport(t: DecoratedTriangulation, k: str, direction: FlipDirection = FlipDirection.FORWARD) -> TransportMap:
    return path_transport(t, [(k, direction)])


def _source_curve(frame: DecoratedTriangulation, label: FrameLabel) -> Word:
    return canonical(frame, label[2]) if label[0] == 'ang' else label[1]


def _target_curve(frame: DecoratedTriangulation, label: FrameLabel) -> Word:
    return canonical(frame, label[3]) if label[0] == 'ang' else label[1]


def frame_product(frame: DecoratedTriangulation, x: FrameLabel, y: FrameLabel) -> Optional[FrameLabel]:
    """
    Product of two frame labels, `x` then `y`.

    Angles compose at a common decoration along a common ray: returning to the first ray with spans adding to 3 gives
    the cy class of its curve, three distinct rays in clockwise order with spans adding to at most 2 give an angle.
    """
    if x[0] == 'id':
        return y if _source_curve(frame, y) == x[1] else None
    if y[0] == 'id':
        return x if _target_curve(frame, x) == y[1] else None
    if x[0] == 'cy' or y[0] == 'cy':
        return None
    _, z, u, v, span_x = x
    _, z_y, v_y, w, span_y = y
    if z != z_y or v != v_y:
        return None
    if w == u and span_x + span_y == 3:
        return 'cy', canonical(frame, u)
    if len({u, v, w}) == 3 and span_x + span_y <= 2 and is_clockwise(u, v, w):
        return 'ang', z, u, w, span_x + span_y
    return None


def _label_degree(label: FrameLabel) -> int:
    return {'id': 0, 'cy': 3}.get(label[0], label[-1])


def check_transport_homomorphism(transport: TransportMap) -> Check:
    """ Checks that the labelling is injective, keeps degrees and carries every product of `E(T_m)` to the frame product. """
    check = Check('transport-homomorphism')
    labels, table = transport.labels, transport.table
    if len(set(labels.values())) != len(labels):
        repeated = [element_id for element_id, label in labels.items() if list(labels.values()).count(label) > 1]
        check.fail('injective', f'repeated labels for {sorted(repeated)}')
    for element in table.basis:
        if _label_degree(labels[element.id]) != element.degree:
            check.fail(f'degree {element.id}', format_label(labels[element.id]))
    for x in table.ids():
        for y in table.ids():
            product = table.product(x, y)
            expected = labels[product] if product is not None else None
            actual = frame_product(transport.frame, labels[x], labels[y])
            if expected != actual:
                check.fail(f'{x}·{y}', f'{format_label(actual) if actual else 0} != {format_label(expected) if expected else 0}')
    return check


def compare_transports(first: TransportMap, second: TransportMap, name: str = 'path-independence') -> Check:
    """ Two transports from one frame to one triangulation agree label by label. """
    check = Check(name)
    if first.end != second.end:
        check.fail('end', f'{first} and {second} end at different triangulations')
        return check
    for element_id in sorted(first.labels):
        a, b = first.labels[element_id], second.labels.get(element_id)
        if a != b:
            check.fail(element_id, f'{format_label(a)} != {format_label(b) if b else None}')
    return check


def check_cancel_pair(t0: DecoratedTriangulation, k: str, direction: FlipDirection = FlipDirection.FORWARD) -> Check:
    direction = FlipDirection[direction]
    check = compare_transports(path_transport(t0, [(k, direction), (k, direction.inverse)]), path_transport(t0, []), 'cancel-pair')
    check.notes['path'] = f'{k}{direction.symbol}{k}{direction.inverse.symbol}'
    return check


def check_commuting_square(t0: DecoratedTriangulation, first: Tuple[str, FlipDirection], second: Tuple[str, FlipDirection]) -> Check:
    """ Flips on quadrilaterals without a common triangle, in both orders. """
    check = compare_transports(path_transport(t0, [first, second]), path_transport(t0, [second, first]), 'commuting-square')
    check.notes['paths'] = [f'{a}{FlipDirection[d].symbol}' for a, d in (first, second)]
    return check


def _crossing_vector(frame: DecoratedTriangulation, curve: Word) -> Dict[str, int]:
    counts = Counter(crossed_arcs(frame, curve))
    return {arc: counts.get(arc, 0) for arc in frame.arcs}


def check_double_flip(t0: DecoratedTriangulation, k: str, twist: Callable[[str], Dict[str, Dict[str, int]]] = None) -> Check:
    """
    Two forward flips at `k` return to `T_0` with the decorations of the two triangles at `k` exchanged.

    Matching basis elements by their undecorated keys, the transport must be an algebra automorphism that moves some
    label. The crossing vectors of the transported dual curves and, when `twist` is given, the K0 images of the arcs
    under the twist at `k` are reported for comparison.
    """
    check = Check('double-flip')
    transport = path_transport(t0, [(k, FlipDirection.FORWARD), (k, FlipDirection.FORWARD)])
    identity = path_transport(t0, [])
    homomorphism = check_transport_homomorphism(transport)
    check.failures += homomorphism.failures

    by_key = {element.label_key: element.id for element in identity.table.basis}
    moved = []
    for element in transport.table.basis:
        match = by_key.get(element.label_key)
        if match is None:
            check.fail(element.id, 'no undecorated match at the frame')
        elif transport.labels[element.id] != identity.labels[match]:
            moved.append(element.id)
    if not moved:
        check.fail('nontrivial', 'the double flip fixes every label')

    check.notes['moved'] = len(moved)
    check.notes['crossings'] = {
        arc: _crossing_vector(t0, transport.labels[f'id({arc})'][1]) for arc in t0.arcs
    }
    if twist is not None:
        check.notes['twist'] = twist(k)
    return check


def transport_fingerprint(t0: DecoratedTriangulation) -> Callable[[DecoratedTriangulation, FlipPath], str]:
    """ Node fingerprint for decorated exchange graphs: the hash of the transport along the node's path from `t0`. """

    def fingerprint(t: DecoratedTriangulation, path: FlipPath) -> str:
        return path_transport(t0, path).fingerprint()

    return fingerprint


def parse_flip_path(text: str) -> List[Tuple[str, FlipDirection]]:
    """ Reads paths such as "0-2+,3-6-": each arc followed by + for a forward or - for a backward flip. """
    path = []
    for token in filter(None, (t.strip() for t in text.split(','))):
        if len(token) < 2 or token[-1] not in '+-':
            raise FixtureError(f'Malformed flip {token!r} in {text!r}, expected <arc>+ or <arc>-')
        path.append((token[:-1], FlipDirection.FORWARD if token[-1] == '+' else FlipDirection.BACKWARD))
    return path
