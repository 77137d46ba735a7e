from functools import partial
from typing import TYPE_CHECKING, List, Optional, Sequence

from qpsurf.algebra.ginzburg import GinzburgPresentation, check_d_squared, ginzburg, star
from qpsurf.algebra.keller_yang import check_dg_homomorphism, ky_table, rescaled_potential
from qpsurf.algebra.mutation import premutate
from qpsurf.algebra.resolutions import check_projection_to_simple, homotopy_cases, select_sign_convention, sharp_bundle, sharp_bundles, simple_resolution
from qpsurf.base.dg_module import check_maurer_cartan, solve_null_homotopy
from qpsurf.base.path_algebra import cyclic_derivative
from qpsurf.base.report import Check
from qpsurf.support.logs import project_logger
from qpsurf.surface.fixtures import builtin_qp_names, load_qp, three_cycle
from qpsurf.verifier.suite_case import SuiteCase, merge_checks

if TYPE_CHECKING:  # pragma: no cover
    from qpsurf.verifier.verifier import Verifier

_LOGGER = project_logger(__file__)

RESOLUTION_FIXTURES = {'three-cycle': None, 'local': ('k',)}
""" Fixtures of the resolution suites with their mutation vertices, all vertices when None. """

CALIBRATION_VERTEX = '2'


def _algebra(name: str) -> GinzburgPresentation:
    return ginzburg(*load_qp(name))


def _perturbed_d2(name: str, arrow_id: str) -> Check:
    algebra = _algebra(name)
    return check_d_squared(algebra.with_rule(star(arrow_id), -algebra.rules[star(arrow_id)]))


def _ky_hom(name: str, k: str, convention, literal: bool = False, dump: bool = False) -> Check:
    algebra = _algebra(name)
    mutated = None
    if literal:
        premutation = premutate(algebra.base, algebra.potential, k)
        mutated = ginzburg(premutation.quiver, premutation.potential)
    table = ky_table(algebra, k, mutated)
    check = check_dg_homomorphism(table, convention)
    if dump:
        check.notes['matrices'] = table.to_dict()
    return check


def _resolution(name: str, i: str, convention, dump: bool = False) -> Check:
    module = simple_resolution(_algebra(name), i)
    check = merge_checks('resolution', [check_maurer_cartan(module, convention), check_projection_to_simple(module)])
    if dump:
        check.notes['matrices'] = module.to_dict()
    return check


def _bundle(name: str, k: str, i: str, convention, dump: bool = False) -> Check:
    bundle = sharp_bundle(_algebra(name), k, i, convention=convention)
    check = merge_checks('sharp-bundle', bundle.checks(convention))
    if dump:
        check.notes['matrices'] = {'image': bundle.image.to_dict(), 'sharp': bundle.sharp.to_dict(), 'phi': bundle.phi.to_dict()}
    return check


def _homotopies(name: str, k: str, convention) -> Check:
    algebra = _algebra(name)
    cases = homotopy_cases(algebra, k, sharp_bundles(algebra, k, convention), convention)
    check = merge_checks('homotopies', [case.check(convention) for case in cases])
    check.notes['cases'] = [case.name for case in cases]
    return check


def _solved_homotopies(name: str, k: str, convention) -> Check:
    """ Searches for every homotopy independently; the result is reported, the path-length bound may be too small. """
    algebra = _algebra(name)
    check = Check('solve-homotopy', notes={'asserted': False})
    solved = []
    for case in homotopy_cases(algebra, k, sharp_bundles(algebra, k, convention), convention):
        theta = solve_null_homotopy(case.first, case.second, convention=convention)
        if theta is None:
            check.fail(case.name, 'no homotopy within the path-length bound')
        else:
            solved.append(case.name)
    check.notes['solved'] = solved
    return check


def _calibration(expected) -> Check:
    check = Check('sign-calibration')
    selected = select_sign_convention(ginzburg(*three_cycle()), CALIBRATION_VERTEX)
    check.notes['selected'] = str(selected)
    if selected != expected:
        check.fail('convention', f'calibration selects {selected}, configured {expected}')
    return check


class DgSuitesMixin():
    """
    Suites on Ginzburg dg algebras: 'd2', 'ky-hom', 'resolutions' and 'homotopies'.

    The linear-solver search for homotopies only runs with `solve_homotopies`; it is slow and its outcome is reported.
    """

    def _resolution_fixtures(self: 'Verifier') -> List[tuple]:
        fixtures = list(RESOLUTION_FIXTURES.items()) if self.fixtures is None else [(name, None) for name in self.fixtures]
        if self.vertices is not None:
            fixtures = [(name, tuple(self.vertices)) for name, _ in fixtures]
        return fixtures

    def suite_d2(self: 'Verifier') -> List[SuiteCase]:
        cases = []
        for name in self.qp_fixtures(builtin_qp_names()):
            quiver, potential = load_qp(name)
            cases.append(SuiteCase(name, 'd2', partial(check_d_squared, ginzburg(quiver, potential))))
            perturbed = next((a.id for a in quiver.arrows if not cyclic_derivative(potential, a.id).is_zero()), None)
            if perturbed is not None:
                cases.append(SuiteCase(name, f'd2 with d({star(perturbed)}) negated', partial(_perturbed_d2, name, perturbed), expect_pass=False))
        return cases

    def suite_ky_hom(self: 'Verifier') -> List[SuiteCase]:
        cases = []
        for name in self.qp_fixtures(builtin_qp_names()):
            quiver, potential = load_qp(name)
            for k in _vertices(quiver.vertices, self.vertices):
                cases.append(SuiteCase(name, f'ky-hom k={k}', partial(_ky_hom, name, k, self.convention, dump=self.dump_matrices)))
                premutation = premutate(quiver, potential, k)
                if rescaled_potential(premutation) != premutation.potential:
                    cases.append(SuiteCase(name, f'ky-hom k={k} literal potential', partial(_ky_hom, name, k, self.convention, literal=True), expect_pass=False))
        return cases

    def suite_resolutions(self: 'Verifier') -> List[SuiteCase]:
        cases = [SuiteCase('three-cycle', f'sign-calibration k={CALIBRATION_VERTEX}', partial(_calibration, self.convention))]
        for name, ks in self._resolution_fixtures():
            quiver, _ = load_qp(name)
            for i in quiver.vertices:
                cases.append(SuiteCase(name, f'pS i={i}', partial(_resolution, name, i, self.convention, self.dump_matrices)))
            for k in _vertices(quiver.vertices, ks):
                for i in quiver.vertices:
                    cases.append(SuiteCase(name, f'sharp k={k} i={i}', partial(_bundle, name, k, i, self.convention, self.dump_matrices)))
        return cases

    def suite_homotopies(self: 'Verifier') -> List[SuiteCase]:
        cases = []
        for name, ks in self._resolution_fixtures():
            quiver, _ = load_qp(name)
            for k in _vertices(quiver.vertices, ks):
                cases.append(SuiteCase(name, f'homotopies k={k}', partial(_homotopies, name, k, self.convention)))
                if self.solve_homotopies:
                    cases.append(SuiteCase(name, f'solve-homotopy k={k}', partial(_solved_homotopies, name, k, self.convention)))
        return cases


def _vertices(vertices: Sequence[str], selected: Optional[Sequence[str]]) -> List[str]:
    return list(vertices) if selected is None else [v for v in vertices if v in selected]
