"""
Finitely generated dg modules over a dg path algebra, given as twisted sums of shifted projectives.

A presentation lists generators `P_v[s]` and a strictly lower-triangular differential matrix `D`.
Entry `D[c, a]` is a combination of paths from the vertex of generator `c` to the vertex of generator `a`,
so that matrix products compose paths first-row-then-column. Maps between presentations use the same layout:
rows index the target, columns the source.
"""
import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Protocol, Sequence, Tuple

from sympy import Integer, Rational, linsolve, symbols

from qpsurf import var
from qpsurf.base.path_algebra import Path, PathExpr, Quiver, path_degree, path_target
from qpsurf.base.report import Check
from qpsurf.support.errors import QuiverError
from qpsurf.support.logs import project_logger
from qpsurf.support.py_utils import VerboseEnum

_LOGGER = project_logger(__file__)

Index = Tuple[int, int]
Matrix = Dict[Index, PathExpr]


class DgAlgebra(Protocol):
    quiver: Quiver

    def d(self, expr: PathExpr) -> PathExpr:
        ...


class SignConvention(VerboseEnum):
    """
    How the algebra differential and shifts interact with matrices between shifted summands.

    KOSZUL: a row generator of shift `s` twists the algebra differential by `(-1)^s`, shifting by `n` multiplies the
    differential by `(-1)^n` and the hom differential carries `(-1)^p` on `F∘D` for maps of degree `p`.
    UNSIGNED: every one of these signs is `+1`.
    """
    KOSZUL = 'koszul'
    UNSIGNED = 'unsigned'

    def row_sign(self, shift: int) -> int:
        return (-1) ** (shift % 2) if self == SignConvention.KOSZUL else 1

    def shift_sign(self, n: int) -> int:
        return (-1) ** (n % 2) if self == SignConvention.KOSZUL else 1

    def degree_sign(self, degree: int) -> int:
        return (-1) ** (degree % 2) if self == SignConvention.KOSZUL else 1


def default_convention() -> SignConvention:
    return SignConvention[var.SIGN_CONVENTION]


@dataclass(frozen=True)
class Generator:
    """ The generator of the shifted projective `P_vertex[shift]`, of degree `-shift`. """
    vertex: str
    shift: int
    label: str

    @property
    def degree(self) -> int:
        return -self.shift

    def shifted(self, n: int) -> 'Generator':
        return Generator(self.vertex, self.shift + n, self.label)


def _clean(matrix: Mapping[Index, PathExpr]) -> Matrix:
    return {index: expr for index, expr in matrix.items() if not expr.is_zero()}


def _validate_entries(quiver: Quiver, rows: Sequence[Generator], cols: Sequence[Generator], entries: Matrix, degree: int, owner: str):
    for (c, a), expr in entries.items():
        if not (0 <= c < len(rows) and 0 <= a < len(cols)):
            raise QuiverError(f'{owner}: entry ({c}, {a}) out of range')
        expected = degree - cols[a].shift + rows[c].shift
        for path in expr.terms:
            if path.start != rows[c].vertex or path_target(quiver, path) != cols[a].vertex:
                raise QuiverError(f'{owner}: entry ({c}, {a}) holds {expr} which does not run {rows[c].vertex} -> {cols[a].vertex}')
            if path_degree(quiver, path) != expected:
                raise QuiverError(f'{owner}: entry ({c}, {a}) holds {expr} of degree {path_degree(quiver, path)}, expected {expected}')


def matmul(left: Mapping[Index, PathExpr], right: Mapping[Index, PathExpr]) -> Matrix:
    by_row: Dict[int, List[Tuple[int, PathExpr]]] = {}
    for (b, a), expr in right.items():
        by_row.setdefault(b, []).append((a, expr))

    result: Matrix = {}
    for (c, b), left_expr in left.items():
        for a, right_expr in by_row.get(b, []):
            product = left_expr * right_expr
            if product.is_zero():
                continue
            result[(c, a)] = result[(c, a)] + product if (c, a) in result else product
    return _clean(result)


def matadd(left: Mapping[Index, PathExpr], right: Mapping[Index, PathExpr], scale: int = 1) -> Matrix:
    result = dict(left)
    for index, expr in right.items():
        term = expr.scale(scale) if scale != 1 else expr
        result[index] = result[index] + term if index in result else term
    return _clean(result)


class DgModulePresentation:
    """
    A dg module presented as a twisted sum of shifted projectives.

    Attributes:
        algebra (DgAlgebra): The dg algebra the entries live in.
        generators (tuple[Generator]): Generators in display order.
        entries (dict[tuple[int, int], PathExpr]): Nonzero entries of the differential.
        name (str): Display name used in reports.
    """

    def __init__(self, algebra: DgAlgebra, generators: Iterable[Generator], entries: Mapping[Index, PathExpr], name: str = ''):
        self.algebra = algebra
        self.generators = tuple(generators)
        self.entries = _clean(entries)
        self.name = name

        for c, a in self.entries:
            if c <= a:
                raise QuiverError(f'{self}: differential entry ({c}, {a}) is not strictly lower-triangular')
        _validate_entries(algebra.quiver, self.generators, self.generators, self.entries, 1, str(self))

    def __repr__(self):
        return f'DgModulePresentation({self.name or "?"}, {len(self.generators)} generators)'

    def __len__(self):
        return len(self.generators)

    def entry(self, row: int, col: int) -> PathExpr:
        return self.entries.get((row, col), PathExpr.zero(self.algebra.quiver))

    def index(self, label: str) -> int:
        for i, generator in enumerate(self.generators):
            if generator.label == label:
                return i
        raise KeyError(f'{self}: no generator labelled {label!r}')

    def with_entries(self, entries: Mapping[Index, PathExpr], name: str = None) -> 'DgModulePresentation':
        return DgModulePresentation(self.algebra, self.generators, entries, self.name if name is None else name)

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'generators': [{'label': g.label, 'vertex': g.vertex, 'shift': g.shift} for g in self.generators],
            'entries': [{'row': c, 'col': a, 'expr': str(expr)} for (c, a), expr in sorted(self.entries.items())],
        }


class ChainMap:
    """
    A homogeneous map of presentations; rows index the target generators, columns the source generators.
    """

    def __init__(self, source: DgModulePresentation, target: DgModulePresentation, entries: Mapping[Index, PathExpr], degree: int = 0, name: str = ''):
        if not (source.algebra.quiver == target.algebra.quiver):
            raise QuiverError(f'ChainMap {name!r}: source and target over different algebras')
        self.source = source
        self.target = target
        self.entries = _clean(entries)
        self.degree = degree
        self.name = name
        _validate_entries(source.algebra.quiver, target.generators, source.generators, self.entries, degree, str(self))

    def __repr__(self):
        return f'ChainMap({self.name or "?"}: {self.source.name} -> {self.target.name}, degree {self.degree})'

    def entry(self, row: int, col: int) -> PathExpr:
        return self.entries.get((row, col), PathExpr.zero(self.source.algebra.quiver))

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'degree': self.degree,
            'source': self.source.name,
            'target': self.target.name,
            'entries': [{'row': c, 'col': a, 'expr': str(expr)} for (c, a), expr in sorted(self.entries.items())],
        }


def _twisted_d(algebra: DgAlgebra, rows: Sequence[Generator], matrix: Matrix, convention: SignConvention) -> Matrix:
    result = {}
    for (c, a), expr in matrix.items():
        result[(c, a)] = algebra.d(expr).scale(convention.row_sign(rows[c].shift))
    return _clean(result)


def maurer_cartan_residual(module: DgModulePresentation, convention: SignConvention = None) -> Matrix:
    convention = convention or default_convention()
    return matadd(_twisted_d(module.algebra, module.generators, module.entries, convention), matmul(module.entries, module.entries))


def check_maurer_cartan(module: DgModulePresentation, convention: SignConvention = None) -> Check:
    """
    Checks that the differential of a presentation squares to zero, ie. `±d(D) + D·D = 0` entrywise.
    """
    check = Check('maurer-cartan')
    for (c, a), residual in sorted(maurer_cartan_residual(module, convention).items()):
        check.fail(f'{module.name}[{module.generators[c].label}, {module.generators[a].label}]', residual)
    return check


def hom_differential(f: ChainMap, convention: SignConvention = None) -> Matrix:
    """
    The differential of the Hom complex applied to a map.

    Parameters:
        f (ChainMap): A map of any degree.
        convention (SignConvention, optional): Sign convention, the configured one by default.

    Returns:
        Matrix: Entries of `δ(f) = ±d(f) + D_target·f - (-1)^p f·D_source`.
    """
    convention = convention or default_convention()
    result = _twisted_d(f.source.algebra, f.target.generators, f.entries, convention)
    result = matadd(result, matmul(f.target.entries, f.entries))
    result = matadd(result, matmul(f.entries, f.source.entries), scale=-convention.degree_sign(f.degree))
    return result


def _report_matrix(check: Check, f: ChainMap, matrix: Matrix):
    for (c, a), residual in sorted(matrix.items()):
        check.fail(f'{f.name}[{f.target.generators[c].label}, {f.source.generators[a].label}]', residual)


def check_chain_map(f: ChainMap, convention: SignConvention = None) -> Check:
    check = Check('chain-map')
    _report_matrix(check, f, hom_differential(f, convention))
    return check


def _check_parallel(f: ChainMap, g: ChainMap):
    if len(f.source) != len(g.source) or len(f.target) != len(g.target):
        raise QuiverError(f'{f} and {g} have different shapes')
    if f.degree != g.degree:
        raise QuiverError(f'{f} and {g} have different degrees')


def check_null_homotopy(f: ChainMap, g: ChainMap, theta: ChainMap, convention: SignConvention = None) -> Check:
    """
    Checks `f - g = δ(θ)` exactly.

    Parameters:
        f (ChainMap): First map.
        g (ChainMap): Second map, parallel to `f`.
        theta (ChainMap): Candidate homotopy of degree one less, parallel to both.
    """
    _check_parallel(f, g)
    if len(theta.source) != len(f.source) or len(theta.target) != len(f.target):
        raise QuiverError(f'{theta} and {f} have different shapes')
    if theta.degree != f.degree - 1:
        raise QuiverError(f'{theta} must have degree {f.degree - 1}')
    check = Check('null-homotopy')
    difference = matadd(f.entries, g.entries, scale=-1)
    _report_matrix(check, f, matadd(difference, hom_differential(theta, convention), scale=-1))
    return check


def compose(g: ChainMap, f: ChainMap, name: str = None) -> ChainMap:
    """ The composite `g∘f`, applying `f` first. """
    if len(f.target) != len(g.source) or f.target.generators != g.source.generators:
        raise QuiverError(f'Cannot compose {g} after {f}')
    entries = matmul(g.entries, f.entries)
    return ChainMap(f.source, g.target, entries, f.degree + g.degree, name or f'{g.name}∘{f.name}')


def shift(module: DgModulePresentation, n: int, convention: SignConvention = None) -> DgModulePresentation:
    convention = convention or default_convention()
    sign = convention.shift_sign(n)
    return DgModulePresentation(
        module.algebra,
        [g.shifted(n) for g in module.generators],
        {index: expr.scale(sign) for index, expr in module.entries.items()},
        f'{module.name}[{n}]',
    )


def shift_map(f: ChainMap, n: int, convention: SignConvention = None) -> ChainMap:
    """ The same entries between both presentations shifted by `n`. """
    return ChainMap(shift(f.source, n, convention), shift(f.target, n, convention), f.entries, f.degree, f'{f.name}[{n}]')


def zero_map(source: DgModulePresentation, target: DgModulePresentation, degree: int = 0, name: str = '0') -> ChainMap:
    return ChainMap(source, target, {}, degree, name)


def by_labels(target: DgModulePresentation, source: DgModulePresentation, entries: Mapping[Tuple[str, str], PathExpr]) -> Matrix:
    """ Entries addressed by (target label, source label); contributions to the same entry add up. """
    matrix: Matrix = {}
    for (row, col), expr in entries.items():
        index = (target.index(row), source.index(col))
        matrix[index] = matrix[index] + expr if index in matrix else expr
    return _clean(matrix)


def permute(module: DgModulePresentation, order: Sequence[int], name: str = None) -> DgModulePresentation:
    """
    Reorders generators: position `j` of the result holds generator `order[j]` of `module`.
    """
    if sorted(order) != list(range(len(module))):
        raise QuiverError(f'{module}: {order} is not a permutation')
    position = {old: new for new, old in enumerate(order)}
    entries = {(position[c], position[a]): expr for (c, a), expr in module.entries.items()}
    return DgModulePresentation(module.algebra, [module.generators[i] for i in order], entries, name or module.name)


def identity_map(module: DgModulePresentation) -> ChainMap:
    quiver = module.algebra.quiver
    entries = {(i, i): PathExpr.trivial(quiver, g.vertex) for i, g in enumerate(module.generators)}
    return ChainMap(module, module, entries, 0, f'id_{module.name}')


def paths_between(quiver: Quiver, source: str, target: str, degree: int, max_length: int) -> List[Path]:
    """ All paths from `source` to `target` of the given degree and length at most `max_length`. """
    found = []
    frontier = [Path(source, ())]
    for _ in range(max_length + 1):
        next_frontier = []
        for path in frontier:
            if path_target(quiver, path) == target and path_degree(quiver, path) == degree:
                found.append(path)
            for arrow in quiver.arrows_from(path_target(quiver, path)):
                next_frontier.append(Path(path.start, path.arrows + (arrow.id,)))
        frontier = next_frontier
    return sorted(found)


def solve_null_homotopy(f: ChainMap, g: ChainMap, max_length: int = None, convention: SignConvention = None) -> Optional[ChainMap]:
    """
    Searches a homotopy `θ` with `f - g = δ(θ)` whose entries are spanned by paths of bounded length.

    Parameters:
        f (ChainMap): First map.
        g (ChainMap): Second map, parallel to `f`.
        max_length (int, optional): Path-length bound of the ansatz, `QPSURF_MAX_PATH_LENGTH` by default.
        convention (SignConvention, optional): Sign convention, the configured one by default.

    Returns:
        Optional[ChainMap]: A homotopy with all free parameters set to zero, or None if the linear system has no solution.
    """
    _check_parallel(f, g)
    max_length = var.MAX_PATH_LENGTH if max_length is None else max_length
    quiver = f.source.algebra.quiver
    degree = f.degree - 1

    unknowns = []
    for c, a in itertools.product(range(len(f.target)), range(len(f.source))):
        row, col = f.target.generators[c], f.source.generators[a]
        for path in paths_between(quiver, row.vertex, col.vertex, degree - col.shift + row.shift, max_length):
            unknowns.append(((c, a), path))

    target = matadd(f.entries, g.entries, scale=-1)
    if not unknowns:
        return ChainMap(f.source, f.target, {}, degree, 'θ') if not target else None

    images = []
    for index, path in unknowns:
        unit = ChainMap(f.source, f.target, {index: PathExpr(quiver, {path: 1})}, degree)
        images.append(hom_differential(unit, convention))

    keys = sorted({(index, path) for image in images for index, expr in image.items() for path in expr.terms}
                  | {(index, path) for index, expr in target.items() for path in expr.terms})
    variables = symbols(f'x0:{len(unknowns)}')
    equations = []
    for index, path in keys:
        lhs = sum((image[index].terms.get(path, 0) * variable for image, variable in zip(images, variables) if index in image), Integer(0))
        rhs = target[index].terms.get(path, 0) if index in target else 0
        equations.append(lhs - rhs)

    solutions = linsolve(equations, variables)
    if not solutions:
        _LOGGER.debug(f'No homotopy between {f} and {g} with paths up to length {max_length}')
        return None

    solution = next(iter(solutions))
    free = {s: 0 for value in solution for s in value.free_symbols}
    entries: Matrix = {}
    for (index, path), value in zip(unknowns, solution):
        value = Rational(value.subs(free))
        if value != 0:
            term = PathExpr(quiver, {path: value})
            entries[index] = entries[index] + term if index in entries else term
    return ChainMap(f.source, f.target, entries, degree, 'θ')


def relabel(module: DgModulePresentation, labels: Sequence[str], name: str = None) -> DgModulePresentation:
    if len(labels) != len(module) or len(set(labels)) != len(labels):
        raise QuiverError(f'{module}: {len(labels)} labels for {len(module)} generators, or repeated labels')
    generators = [Generator(g.vertex, g.shift, label) for g, label in zip(module.generators, labels)]
    return DgModulePresentation(module.algebra, generators, module.entries, name or module.name)
