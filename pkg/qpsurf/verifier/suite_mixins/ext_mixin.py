import random
from functools import partial
from typing import TYPE_CHECKING, List

from qpsurf.algebra.ext_algebra import check_associativity, check_dims, check_pairing, check_units, ext_algebra_of, pi_dictionary
from qpsurf.algebra.ginzburg import star, vertex_star
from qpsurf.algebra.k_theory import K0Lattice, twist_images
from qpsurf.algebra.transport import check_cancel_pair, check_commuting_square, check_double_flip, check_transport_homomorphism, compare_transports, flip_transport, path_transport
from qpsurf.base.report import Check
from qpsurf.support.logs import project_logger
from qpsurf.surface.fixtures import builtin_surface_names, load_surface
from qpsurf.surface.triangulation import DecoratedTriangulation, FlipDirection, angle_arrows, qp_of_triangulation
from qpsurf.verifier.suite_case import SuiteCase, merge_checks

if TYPE_CHECKING:  # pragma: no cover
    from qpsurf.verifier.verifier import Verifier

_LOGGER = project_logger(__file__)

COMMUTING_SQUARES = {
    'heptagon': [(('0-2', FlipDirection.BACKWARD), ('3-6', FlipDirection.BACKWARD))],
}
""" Flip pairs on quadrilaterals without a common triangle, per fixture. """

RANDOM_PATHS = 3
RANDOM_PATH_LENGTH = 3


def check_dictionary(t: DecoratedTriangulation) -> Check:
    """ The dictionary is a bijection onto the basis matching path degrees: trivial paths 0, arrows 1, stars 2 and 3. """
    check = Check('pi-dictionary')
    table = ext_algebra_of(t)
    dictionary = pi_dictionary(t)
    if sorted(dictionary.values()) != sorted(table.ids()):
        check.fail('bijection', f'{len(set(dictionary.values()))} images for {len(table.basis)} basis elements')
    degrees = {f'e_{arc}': 0 for arc in t.arcs}
    degrees.update({vertex_star(arc): 3 for arc in t.arcs})
    for arrow in angle_arrows(t).values():
        degrees[arrow.id], degrees[star(arrow.id)] = 1, 2
    for key, element_id in sorted(dictionary.items()):
        expected = degrees.get(key)
        if table.element(element_id).degree != expected:
            check.fail(key, f'{element_id} has degree {table.element(element_id).degree}, expected {expected}')
    return check


def _ext_table(t: DecoratedTriangulation) -> Check:
    table = ext_algebra_of(t)
    quiver, _ = qp_of_triangulation(t)
    check = merge_checks('ext-table', [check_associativity(table), check_units(table), check_pairing(table), check_dims(table, len(quiver.arrows)), check_dictionary(t)])
    check.notes['dims'] = list(table.dims())
    return check


def _flip_homomorphism(t: DecoratedTriangulation, k: str, direction: FlipDirection) -> Check:
    return check_transport_homomorphism(flip_transport(t, k, direction))


def _random_round_trip(t: DecoratedTriangulation, seed: int) -> Check:
    """ A random flip path followed by its inverse transports to the identity. """
    rng = random.Random(seed)
    path, current = [], t
    for _ in range(RANDOM_PATH_LENGTH):
        arc = rng.choice(current.flippable_arcs())
        direction = rng.choice(list(FlipDirection))
        path.append((arc, direction))
        current = current.flip(arc, direction)
    inverse = [(arc, direction.inverse) for arc, direction in reversed(path)]
    check = compare_transports(path_transport(t, path + inverse), path_transport(t, []), 'round-trip')
    check.notes['path'] = [f'{arc}{direction.symbol}' for arc, direction in path]
    return check


def _double_flip(t: DecoratedTriangulation, k: str) -> Check:
    lattice = K0Lattice.from_quiver(qp_of_triangulation(t)[0])
    return check_double_flip(t, k, partial(twist_images, lattice))


class ExtSuitesMixin():
    """
    Suites on Ext algebras of triangulations: 'ext-compat' and 'transport-paths'.
    """

    def suite_ext_compat(self: 'Verifier') -> List[SuiteCase]:
        cases = []
        for name in self.surface_fixtures(builtin_surface_names()):
            t = load_surface(name)
            cases.append(SuiteCase(name, 'ext-table', partial(_ext_table, t)))
            for k in t.flippable_arcs():
                for direction in FlipDirection:
                    cases.append(SuiteCase(name, f'flip-transport {k}{direction.symbol}', partial(_flip_homomorphism, t, k, direction)))
        return cases

    def suite_transport_paths(self: 'Verifier') -> List[SuiteCase]:
        cases = []
        for name in self.surface_fixtures(builtin_surface_names()):
            t = load_surface(name)
            for k in t.flippable_arcs():
                for direction in FlipDirection:
                    cases.append(SuiteCase(name, f'cancel-pair {k}{direction.symbol}', partial(check_cancel_pair, t, k, direction)))
                cases.append(SuiteCase(name, f'double-flip {k}', partial(_double_flip, t, k)))
            for first, second in COMMUTING_SQUARES.get(name, []):
                operation = f'commuting-square {first[0]}{first[1].symbol} {second[0]}{second[1].symbol}'
                cases.append(SuiteCase(name, operation, partial(check_commuting_square, t, first, second)))
            for index in range(RANDOM_PATHS):
                cases.append(SuiteCase(name, f'round-trip #{index}', partial(_random_round_trip, t, self.seed + index)))
        return cases
