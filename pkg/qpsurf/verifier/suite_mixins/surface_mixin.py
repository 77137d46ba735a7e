from functools import partial
from typing import TYPE_CHECKING, List

from qpsurf.algebra.mutation import check_flip_mutation, mutate_without_w2
from qpsurf.support.logs import project_logger
from qpsurf.surface.exchange_graph import exchange_graph_bfs
from qpsurf.surface.fixtures import fan, load_surface
from qpsurf.surface.triangulation import DecoratedTriangulation
from qpsurf.verifier.suite_case import SuiteCase

if TYPE_CHECKING:  # pragma: no cover
    from qpsurf.verifier.verifier import Verifier

_LOGGER = project_logger(__file__)

FLIP_MUTATION_FIXTURES = ('pentagon', 'hexagon', 'annulus')


def all_triangulations(t0: DecoratedTriangulation, depth: int = None, max_workers: int = None) -> List[DecoratedTriangulation]:
    """ One representative of every triangulation within `depth` flips of `t0`, up to renaming arcs; all of them when `depth` is None. """
    depth = 4 * len(t0.arcs) + 4 if depth is None else depth
    graph = exchange_graph_bfs(t0, depth=depth, max_workers=max_workers)
    return [data['triangulation'] for _, data in sorted(graph.nodes(data=True), key=lambda node: (node[1]['depth'], node[0]))]


class SurfaceSuitesMixin():
    """
    The 'flip-mutation' suite: mutation of the QP of every triangulation at every flippable arc against its flip.
    """

    def suite_flip_mutation(self: 'Verifier') -> List[SuiteCase]:
        cases = []
        for name in self.surface_fixtures(FLIP_MUTATION_FIXTURES):
            triangulations = all_triangulations(load_surface(name), self.depth, self.max_workers)
            _LOGGER.debug(f'{name}: {len(triangulations)} triangulations')
            for index, t in enumerate(triangulations):
                for k in t.flippable_arcs():
                    cases.append(SuiteCase(name, f'flip-mutation T{index} k={k}', partial(check_flip_mutation, t, k)))

        # mutation that drops the new 3-cycles misses the interior triangle a flip creates
        cases.append(SuiteCase('fan6', 'flip-mutation k=0-3 without w2', partial(check_flip_mutation, fan(6), '0-3', mutate_without_w2), expect_pass=False))
        return cases
