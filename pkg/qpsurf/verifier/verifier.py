import os
from typing import Callable, Dict, List, Optional, Sequence

from qpsurf import var
from qpsurf.base.dg_module import SignConvention
from qpsurf.base.report import CaseResult, VerificationReport
from qpsurf.support.errors import QpsurfError, SuiteError
from qpsurf.support.logs import new_daily_rotating_file_handler, project_logger
from qpsurf.support.py_utils import execute_in_parallel
from qpsurf.surface.fixtures import QPS
from qpsurf.verifier.suite_case import SuiteCase
from qpsurf.verifier.suite_mixins.dg_mixin import DgSuitesMixin
from qpsurf.verifier.suite_mixins.ext_mixin import ExtSuitesMixin
from qpsurf.verifier.suite_mixins.k_theory_mixin import KTheorySuitesMixin
from qpsurf.verifier.suite_mixins.surface_mixin import SurfaceSuitesMixin

_LOGGER = project_logger(__file__)

SUITES = ('d2', 'ky-hom', 'resolutions', 'homotopies', 'flip-mutation', 'ext-compat', 'transport-paths', 'k0')
SUITE_ALIASES = {'resolution': 'resolutions', 'homotopy': 'homotopies'}


class Verifier(DgSuitesMixin, SurfaceSuitesMixin, ExtSuitesMixin, KTheorySuitesMixin):
    """
    Runs the verification suites and assembles their reports.

    Every suite is a mixin method `suite_<id>` returning deferred cases. Cases run in a thread pool and are reported
    in the order the suite lists them, so that reports only depend on the inputs and the configuration.

    Note:
        - Mathematical failures never raise: they become failed cases with a witness.
        - Unsupported inputs become reported cases.
    """

    def __init__(
            self,
            fixtures: Optional[Sequence[str]] = None,
            seed: int = var.SEED,
            convention: SignConvention = var.SIGN_CONVENTION,
            max_workers: int = var.MAX_WORKERS,
            dump_matrices: bool = False,
            vertices: Optional[Sequence[str]] = None,
            depth: Optional[int] = None,
            solve_homotopies: bool = False,
    ) -> None:
        """
        Parameters:
            fixtures (Sequence[str], optional): Fixture names or JSON files; each suite's builtin set when None.
            seed (int, optional): Seed of the randomized cases. Defaults to `QPSURF_SEED`.
            convention (SignConvention, optional): The sign convention. Defaults to `QPSURF_SIGN_CONVENTION`.
            max_workers (int, optional): Threads running the cases. Defaults to `QPSURF_MAX_WORKERS`.
            dump_matrices (bool, optional): Whether cases attach the matrices they check to their details.
            vertices (Sequence[str], optional): Mutation vertices of the dg suites; every vertex when None.
            depth (int, optional): Flip depth explored by 'flip-mutation'; enough to reach every triangulation when None.
            solve_homotopies (bool, optional): Whether 'homotopies' also searches for homotopies with the linear solver.
        """
        self.fixtures = None if fixtures is None or list(fixtures) in ([], ['builtin']) else list(fixtures)
        self.seed = int(seed)
        self.convention = SignConvention[convention]
        self.max_workers = max_workers
        self.dump_matrices = dump_matrices
        self.vertices = None if vertices is None else [str(v) for v in vertices]
        if depth is not None and depth < 0:
            raise QpsurfError(f'Depth must be non-negative, got {depth}')
        self.depth = depth
        self.solve_homotopies = solve_homotopies
        self.make_logger()
        self.logger.info(f'New Verifier(fixtures={self.fixtures or "builtin"}, seed={self.seed}, convention={self.convention}, max_workers={self.max_workers})')

    def make_logger(self):
        self._logger = new_daily_rotating_file_handler('Verifier', os.path.join(var.LOGS_DIR, 'qpsurf_verify'))

    @property
    def logger(self):
        try:
            if self._logger:
                pass
        except AttributeError:
            self.make_logger()

        return self._logger

    def __repr__(self):
        return f'{self.__class__.__qualname__}(fixtures={self.fixtures or "builtin"}, convention={self.convention})'

    def qp_fixtures(self, defaults: Sequence[str]) -> List[str]:
        return list(defaults) if self.fixtures is None else list(self.fixtures)

    def surface_fixtures(self, defaults: Sequence[str]) -> List[str]:
        """ The configured fixtures that describe triangulations; names of builtin QPs are skipped. """
        if self.fixtures is None:
            return list(defaults)
        return [name for name in self.fixtures if name not in QPS]

    def fingerprint(self) -> Dict[str, object]:
        from qpsurf import __version__
        return {
            'version': __version__,
            'sign_convention': str(self.convention),
            'seed': self.seed,
            'fixtures': self.fixtures or 'builtin',
            'vertices': self.vertices or 'all',
        }

    def _suites(self) -> Dict[str, Callable[[], List[SuiteCase]]]:
        return {name: getattr(self, f'suite_{name.replace("-", "_")}') for name in SUITES}

    def cases(self, suite: str) -> List[SuiteCase]:
        suites = self._suites()
        suite = SUITE_ALIASES.get(suite, suite)
        if suite not in suites:
            raise SuiteError(f'{self}: unknown suite {suite!r}, expected one of {list(SUITES)}')
        return suites[suite]()

    def run_suite(self, suite: str) -> VerificationReport:
        """
        Runs one suite.

        Raises:
            SuiteError: If the suite does not exist.
            FixtureError: If a configured fixture cannot be loaded.
        """
        suite = SUITE_ALIASES.get(suite, suite)
        cases = self.cases(suite)
        _LOGGER.info(f'Suite {suite!r}: {len(cases)} cases')

        results = execute_in_parallel(SuiteCase.execute, [{'args': [case]} for case in cases], max_workers=self.max_workers)
        report = VerificationReport(suite, fingerprint=self.fingerprint())
        for case, result in zip(cases, results):
            if isinstance(result, Exception):
                result = CaseResult.from_exception(case.fixture, case.operation, result)
            _LOGGER.debug(f'{suite} | {result.fixture} | {result.operation}: {result.status}')
            if result.failed:
                _LOGGER.warning(f'{suite} | {result.fixture} | {result.operation} failed: {result.witness}')
            self.logger.info(f'{suite} | {result.fixture} | {result.operation}: {result.status}')
            report.cases.append(result)

        _LOGGER.info(report.summary())
        return report

    def run_all(self, suites: Sequence[str] = SUITES) -> List[VerificationReport]:
        return [self.run_suite(suite) for suite in suites]
