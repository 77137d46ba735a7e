from qpsurf.verifier.verifier import SUITES, Verifier

__all__ = ['SUITES', 'Verifier']
