__version__ = '0.1.0'

from qpsurf.algebra.ext_algebra import ExtAlgebraTable, ext_algebra_of, pi_dictionary
from qpsurf.algebra.ginzburg import GinzburgPresentation, check_d_squared, ginzburg
from qpsurf.algebra.k_theory import CentralCharge, K0Lattice, TwistWord, apply_word, braid_relation_check, twist_charge, twist_class, word_matrix
from qpsurf.algebra.keller_yang import check_dg_homomorphism, ky_table
from qpsurf.algebra.mutation import mutate, premutate, reduce
from qpsurf.algebra.resolutions import select_sign_convention, sharp_bundle, simple_resolution
from qpsurf.algebra.transport import TransportMap, flip_transport, path_transport
from qpsurf.base.dg_module import SignConvention
from qpsurf.base.path_algebra import Arrow, PathExpr, Potential, Quiver, cyclic_derivative
from qpsurf.base.report import VerificationReport
from qpsurf.support.errors import QpsurfError
from qpsurf.support.logs import qpsurf_logs_initialize
from qpsurf.surface.exchange_graph import exchange_graph_bfs
from qpsurf.surface.triangulation import DecoratedTriangulation, FlipDirection, qp_of_triangulation
from qpsurf.verifier.verifier import Verifier

__all__ = [
    'qpsurf_logs_initialize',
    'Arrow',
    'Quiver',
    'Potential',
    'PathExpr',
    'cyclic_derivative',
    'DecoratedTriangulation',
    'FlipDirection',
    'qp_of_triangulation',
    'exchange_graph_bfs',
    'premutate',
    'reduce',
    'mutate',
    'GinzburgPresentation',
    'ginzburg',
    'check_d_squared',
    'ky_table',
    'check_dg_homomorphism',
    'SignConvention',
    'select_sign_convention',
    'simple_resolution',
    'sharp_bundle',
    'ExtAlgebraTable',
    'ext_algebra_of',
    'pi_dictionary',
    'TransportMap',
    'flip_transport',
    'path_transport',
    'K0Lattice',
    'TwistWord',
    'CentralCharge',
    'twist_class',
    'apply_word',
    'word_matrix',
    'braid_relation_check',
    'twist_charge',
    'VerificationReport',
    'Verifier',
    'QpsurfError',
]
