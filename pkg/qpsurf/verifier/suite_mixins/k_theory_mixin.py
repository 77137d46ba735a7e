import random
from functools import partial
from typing import TYPE_CHECKING, List

from qpsurf.algebra.k_theory import K0Lattice, TwistWord, all_pairs, braid_relation_check, check_preserves_form, check_unimodular, identity_words, matrix_classes, reduced_words
from qpsurf.base.report import Check
from qpsurf.support.logs import project_logger
from qpsurf.surface.fixtures import builtin_qp_names, load_qp
from qpsurf.verifier.suite_case import SuiteCase, merge_checks

if TYPE_CHECKING:  # pragma: no cover
    from qpsurf.verifier.verifier import Verifier

_LOGGER = project_logger(__file__)

EXHAUSTIVE_LENGTH = 3
RANDOM_WORDS = 10
RANDOM_WORD_LENGTH = 8


def _lattice(name: str) -> K0Lattice:
    return K0Lattice.from_quiver(load_qp(name)[0])


def _matrix_checks(name: str, words: List[TwistWord]) -> Check:
    lattice = _lattice(name)
    checks = []
    for word in words:
        checks += [check_unimodular(lattice, word), check_preserves_form(lattice, word)]
    check = merge_checks('twist-matrices', checks)
    check.notes['words'] = len(words)
    return check


def _random_words(vertices: List[str], seed: int) -> List[TwistWord]:
    rng = random.Random(seed)
    return [TwistWord((rng.choice(vertices), rng.choice((1, -1))) for _ in range(RANDOM_WORD_LENGTH)) for _ in range(RANDOM_WORDS)]


def _enumeration(name: str) -> Check:
    """ Reported: how many reduced words act trivially, and how many distinct matrices the words give. """
    lattice = _lattice(name)
    check = Check('word-enumeration', notes={'asserted': False})
    check.notes['length'] = EXHAUSTIVE_LENGTH
    check.notes['identity-words'] = [str(w) for w in identity_words(lattice, EXHAUSTIVE_LENGTH)]
    check.notes['matrices'] = len(matrix_classes(lattice, EXHAUSTIVE_LENGTH))
    check.notes['faithfulness'] = 'consistency evidence only; K0 forgets information'
    return check


class KTheorySuitesMixin():
    """
    The 'k0' suite: twist matrices of every fixture are unimodular and keep the Euler form; pairs of simples satisfy the
    braid or commutation relation their arrow count predicts.
    """

    def suite_k0(self: 'Verifier') -> List[SuiteCase]:
        cases = []
        for name in self.qp_fixtures(builtin_qp_names()):
            quiver, _ = load_qp(name)
            vertices = list(quiver.vertices)
            cases.append(SuiteCase(name, f'twist-matrices length<={EXHAUSTIVE_LENGTH}', partial(_matrix_checks, name, reduced_words(vertices, EXHAUSTIVE_LENGTH))))
            cases.append(SuiteCase(name, 'twist-matrices random', partial(_matrix_checks, name, _random_words(vertices, self.seed))))
            lattice = K0Lattice.from_quiver(quiver)
            for i, j in all_pairs(lattice):
                cases.append(SuiteCase(name, f'braid-relation {i},{j}', partial(braid_relation_check, lattice, i, j)))
            cases.append(SuiteCase(name, f'word-enumeration length<={EXHAUSTIVE_LENGTH}', partial(_enumeration, name)))
        return cases
