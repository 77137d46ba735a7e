import itertools
import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import Rational

from qpsurf.support.errors import FixtureError, PotentialError, QuiverError
from qpsurf.support.logs import project_logger
from qpsurf.support.py_utils import VerboseEnum, group_by

_LOGGER = project_logger(__file__)

Coefficient = Union[int, str, Rational]
Word = Tuple[str, ...]


def to_coefficient(value: Coefficient) -> Rational:
    try:
        return Rational(value)
    except (TypeError, ValueError) as e:
        raise PotentialError(f'Invalid coefficient {value!r}') from e


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str
    degree: int = 0


class Quiver:
    """
    A finite quiver with graded arrows.

    Attributes:
        vertices (tuple[str]): Vertex ids in their display order.
        arrows (tuple[Arrow]): Arrows in their display order.

    Note:
        - Loops and oriented 2-cycles are rejected unless allowed explicitly; doubled quivers allow loops,
          pre-mutation outputs allow 2-cycles.
    """

    def __init__(
            self,
            vertices: Iterable[str],
            arrows: Iterable[Union[Arrow, Tuple[str, str, str]]],
            allow_loops: bool = False,
            allow_two_cycles: bool = False,
    ):
        self.vertices = tuple(str(v) for v in vertices)
        self.arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in arrows)
        self.allow_loops = allow_loops
        self.allow_two_cycles = allow_two_cycles

        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError(f'{self}: duplicate vertex ids')

        self._by_id = {}
        vertex_set = set(self.vertices)
        for arrow in self.arrows:
            if arrow.id in self._by_id:
                raise QuiverError(f'{self}: duplicate arrow id {arrow.id!r}')
            if arrow.source not in vertex_set or arrow.target not in vertex_set:
                raise QuiverError(f'{self}: arrow {arrow.id!r} references an unknown vertex')
            if arrow.source == arrow.target and not allow_loops:
                raise QuiverError(f'{self}: loop {arrow.id!r} at vertex {arrow.source!r}')
            self._by_id[arrow.id] = arrow

        if not allow_two_cycles:
            pairs = {(a.source, a.target) for a in self.arrows if a.source != a.target}
            for source, target in pairs:
                if (target, source) in pairs:
                    raise QuiverError(f'{self}: oriented 2-cycle between {source!r} and {target!r}')

    def __repr__(self):
        return f'Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)'

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._by_id[arrow_id]
        except KeyError:
            raise QuiverError(f'{self}: unknown arrow {arrow_id!r}') from None

    def has_arrow(self, arrow_id: str) -> bool:
        return arrow_id in self._by_id

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self.vertices

    def arrows_from(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def arrows_to(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.target == vertex]

    def arrow_count(self, source: str, target: str) -> int:
        return sum(1 for a in self.arrows if a.source == source and a.target == target)

    def without(self, arrow_ids: Iterable[str]) -> 'Quiver':
        removed = set(arrow_ids)
        return Quiver(self.vertices, [a for a in self.arrows if a.id not in removed], self.allow_loops, self.allow_two_cycles)

    def to_dict(self) -> dict:
        return {
            'vertices': list(self.vertices),
            'arrows': [{'id': a.id, 'src': a.source, 'tgt': a.target} for a in self.arrows],
        }


class Path(NamedTuple):
    """ A path given by its start vertex and its arrows, read first to last. """
    start: str
    arrows: Word


def path_target(quiver: Quiver, path: Path) -> str:
    if not path.arrows:
        return path.start
    return quiver.arrow(path.arrows[-1]).target


def path_degree(quiver: Quiver, path: Path) -> int:
    return sum(quiver.arrow(a).degree for a in path.arrows)


def word_to_path(quiver: Quiver, word: Sequence[str]) -> Path:
    word = tuple(word)
    if not word:
        raise QuiverError(f'{quiver}: empty word has no start vertex')
    for left, right in zip(word, word[1:]):
        if quiver.arrow(left).target != quiver.arrow(right).source:
            raise QuiverError(f'{quiver}: arrows {left!r} and {right!r} do not compose')
    return Path(quiver.arrow(word[0]).source, word)


def _concatenate(quiver: Quiver, left: Path, right: Path) -> Optional[Path]:
    if path_target(quiver, left) != right.start:
        return None
    return Path(left.start, left.arrows + right.arrows)


class PathExpr:
    """
    A finite linear combination of paths with exact rational coefficients.

    Paths compose left to right: the product `x*y` means first `x` then `y`.
    """
    __slots__ = ('quiver', 'terms')

    def __init__(self, quiver: Quiver, terms: Mapping[Path, Coefficient] = None):
        self.quiver = quiver
        self.terms: Dict[Path, Rational] = {}
        for path, coefficient in (terms or {}).items():
            coefficient = to_coefficient(coefficient)
            if coefficient != 0:
                self.terms[Path(*path)] = coefficient

    @classmethod
    def zero(cls, quiver: Quiver) -> 'PathExpr':
        return cls(quiver)

    @classmethod
    def trivial(cls, quiver: Quiver, vertex: str, coefficient: Coefficient = 1) -> 'PathExpr':
        if not quiver.has_vertex(vertex):
            raise QuiverError(f'{quiver}: unknown vertex {vertex!r}')
        return cls(quiver, {Path(vertex, ()): coefficient})

    @classmethod
    def arrow(cls, quiver: Quiver, arrow_id: str, coefficient: Coefficient = 1) -> 'PathExpr':
        return cls(quiver, {Path(quiver.arrow(arrow_id).source, (arrow_id,)): coefficient})

    @classmethod
    def word(cls, quiver: Quiver, word: Sequence[str], coefficient: Coefficient = 1) -> 'PathExpr':
        return cls(quiver, {word_to_path(quiver, word): coefficient})

    def _check(self, other: 'PathExpr'):
        if not (other.quiver is self.quiver or other.quiver == self.quiver):
            raise QuiverError(f'{self.quiver}: operands over different quivers')

    def __add__(self, other: 'PathExpr') -> 'PathExpr':
        self._check(other)
        terms = dict(self.terms)
        for path, coefficient in other.terms.items():
            terms[path] = terms.get(path, 0) + coefficient
        return PathExpr(self.quiver, terms)

    def __neg__(self) -> 'PathExpr':
        return PathExpr(self.quiver, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: 'PathExpr') -> 'PathExpr':
        return self + (-other)

    def scale(self, coefficient: Coefficient) -> 'PathExpr':
        coefficient = to_coefficient(coefficient)
        return PathExpr(self.quiver, {p: c * coefficient for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PathExpr):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, PathExpr):
            return NotImplemented
        return self.terms == other.terms and (self.quiver is other.quiver or self.quiver == other.quiver)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> List[Tuple[Path, Rational]]:
        return sorted(self.terms.items())

    def degrees(self) -> set:
        return {path_degree(self.quiver, p) for p in self.terms}

    def endpoints(self) -> set:
        return {(p.start, path_target(self.quiver, p)) for p in self.terms}

    def max_length(self) -> int:
        return max((len(p.arrows) for p in self.terms), default=0)

    def substitute(self, images: Mapping[str, 'PathExpr'], quiver: Quiver, vertex_map: Mapping[str, str] = None) -> 'PathExpr':
        """
        Applies an algebra homomorphism given on arrows.

        Parameters:
            images (Mapping[str, PathExpr]): Image of every arrow occurring in this expression.
            quiver (Quiver): The quiver the images live over.
            vertex_map (Mapping[str, str], optional): Image vertex of every trivial path, identity by default.
        """
        result = PathExpr.zero(quiver)
        for path, coefficient in self.terms.items():
            if not path.arrows:
                vertex = vertex_map[path.start] if vertex_map is not None else path.start
                term = PathExpr.trivial(quiver, vertex)
            else:
                term = images[path.arrows[0]]
                for arrow_id in path.arrows[1:]:
                    term = multiply(term, images[arrow_id])
            result = result + term.scale(coefficient)
        return result

    def __repr__(self):
        return f'PathExpr({format_expr(self)})'

    def __str__(self):
        return format_expr(self)


def format_path(path: Path) -> str:
    if not path.arrows:
        return f'e_{path.start}'
    return '.'.join(path.arrows)


def format_expr(expr: PathExpr) -> str:
    if expr.is_zero():
        return '0'
    parts = []
    for path, coefficient in expr.sorted_terms():
        if coefficient == 1:
            parts.append(format_path(path))
        elif coefficient == -1:
            parts.append(f'-{format_path(path)}')
        else:
            parts.append(f'{coefficient}*{format_path(path)}')
    return ' + '.join(parts).replace('+ -', '- ')


def multiply(a: PathExpr, b: PathExpr) -> PathExpr:
    """
    Bilinear concatenation product; pairs of paths that do not compose contribute zero.
    """
    a._check(b)
    terms: Dict[Path, Rational] = {}
    for left, c_left in a.terms.items():
        for right, c_right in b.terms.items():
            path = _concatenate(a.quiver, left, right)
            if path is not None:
                terms[path] = terms.get(path, 0) + c_left * c_right
    return PathExpr(a.quiver, terms)


def normalize_cycle(word: Sequence[str]) -> Word:
    word = tuple(word)
    return min(word[i:] + word[:i] for i in range(len(word)))


class Potential:
    """
    A finite linear combination of cycles, each stored in its lexicographically minimal rotation.
    """

    def __init__(self, quiver: Quiver, cycles: Mapping[Sequence[str], Coefficient] = None):
        self.quiver = quiver
        self.cycles: Dict[Word, Rational] = {}
        for word, coefficient in (cycles or {}).items():
            word = tuple(word)
            self._check_cycle(word)
            key = normalize_cycle(word)
            value = self.cycles.get(key, 0) + to_coefficient(coefficient)
            if value == 0:
                self.cycles.pop(key, None)
            else:
                self.cycles[key] = value

    def _check_cycle(self, word: Word):
        if not word:
            raise PotentialError(f'{self.quiver}: empty cycle')
        path = word_to_path(self.quiver, word)
        if path_target(self.quiver, path) != path.start:
            raise PotentialError(f'{self.quiver}: {word} is not a cycle')

    @classmethod
    def zero(cls, quiver: Quiver) -> 'Potential':
        return cls(quiver)

    def is_zero(self) -> bool:
        return not self.cycles

    def sorted_terms(self) -> List[Tuple[Word, Rational]]:
        return sorted(self.cycles.items())

    def __add__(self, other: 'Potential') -> 'Potential':
        terms = dict(self.cycles)
        for word, coefficient in other.cycles.items():
            terms[word] = terms.get(word, 0) + coefficient
        return Potential(self.quiver, {w: c for w, c in terms.items() if c != 0})

    def __neg__(self) -> 'Potential':
        return Potential(self.quiver, {w: -c for w, c in self.cycles.items()})

    def __sub__(self, other: 'Potential') -> 'Potential':
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, Potential):
            return NotImplemented
        return self.cycles == other.cycles

    def __hash__(self):
        return hash(frozenset(self.cycles.items()))

    def __repr__(self):
        if not self.cycles:
            return 'Potential(0)'
        terms = [f'{c}*{".".join(w)}' if c != 1 else '.'.join(w) for w, c in self.sorted_terms()]
        return f'Potential({" + ".join(terms)})'

    def over(self, quiver: Quiver) -> 'Potential':
        return Potential(quiver, self.cycles)

    def renamed(self, mapping: Mapping[str, str], quiver: Quiver) -> 'Potential':
        return Potential(quiver, {tuple(mapping[a] for a in w): c for w, c in self.cycles.items()})

    def two_cycle_terms(self) -> List[Tuple[Word, Rational]]:
        return [(w, c) for w, c in self.sorted_terms() if len(w) == 2]

    def to_list(self) -> List[dict]:
        return [{'cycle': list(w), 'coeff': str(c)} for w, c in self.sorted_terms()]


def path_derivative(potential: Potential, word: Sequence[str]) -> PathExpr:
    """
    Derivative of a potential with respect to a path.

    For each cycle term c·a₁…a_m and each rotation starting with `word`, adds c times the remaining
    arrows of the rotation. The remainder of a rotation that is entirely `word` is the trivial path.

    Parameters:
        potential (Potential): The potential to differentiate.
        word (Sequence[str]): A nonempty composable sequence of arrow ids.

    Returns:
        PathExpr: A combination of paths from the target of `word` to its source.
    """
    quiver = potential.quiver
    word = tuple(word)
    if not word:
        raise QuiverError(f'{quiver}: derivative with respect to an empty word')
    for arrow_id in word:
        quiver.arrow(arrow_id)

    terms: Dict[Path, Rational] = {}
    length = len(word)
    for cycle, coefficient in potential.cycles.items():
        if length > len(cycle):
            continue
        for i in range(len(cycle)):
            rotation = cycle[i:] + cycle[:i]
            if rotation[:length] != word:
                continue
            remainder = rotation[length:]
            if remainder:
                path = Path(quiver.arrow(remainder[0]).source, remainder)
            else:
                path = Path(quiver.arrow(word[-1]).target, ())
            terms[path] = terms.get(path, 0) + coefficient
    return PathExpr(quiver, terms)


def cyclic_derivative(potential: Potential, arrow_id: str) -> PathExpr:
    return path_derivative(potential, (arrow_id,))


class QpClass(VerboseEnum):
    TRIVIAL = 'trivial'
    REDUCED = 'reduced'
    MIXED = 'mixed'


def classify_qp(quiver: Quiver, potential: Potential) -> QpClass:
    two_cycles = potential.two_cycle_terms()
    if not two_cycles:
        return QpClass.REDUCED
    covered = {a for w, _ in two_cycles for a in w}
    only_two_cycles = len(two_cycles) == len(potential.cycles)
    if only_two_cycles and covered == {a.id for a in quiver.arrows}:
        return QpClass.TRIVIAL
    return QpClass.MIXED


def rescale_arrows(potential: Potential, signs: Mapping[str, Coefficient]) -> Potential:
    """
    Applies the right-equivalence a ↦ ε_a·a to a potential; arrows absent from `signs` are fixed.
    """
    cycles = {}
    for word, coefficient in potential.cycles.items():
        factor = Rational(1)
        for arrow_id in word:
            factor *= to_coefficient(signs.get(arrow_id, 1))
        cycles[word] = coefficient * factor
    return Potential(potential.quiver, cycles)


def qp_isomorphism(quiver_a: Quiver, potential_a: Potential, quiver_b: Quiver, potential_b: Potential) -> Optional[Dict[str, str]]:
    """
    Searches a vertex-preserving arrow bijection carrying one QP onto the other.

    Arrows are matched within each group of parallel arrows; potentials must agree exactly after renaming.

    Returns:
        Optional[Dict[str, str]]: The bijection from arrows of `quiver_a` to arrows of `quiver_b`, or None.
    """
    if set(quiver_a.vertices) != set(quiver_b.vertices):
        return None

    groups_a = group_by(quiver_a.arrows, lambda a: (a.source, a.target))
    groups_b = group_by(quiver_b.arrows, lambda a: (a.source, a.target))
    if {k: len(v) for k, v in groups_a.items()} != {k: len(v) for k, v in groups_b.items()}:
        return None

    keys = sorted(groups_a)
    choices = [itertools.permutations(groups_b[key]) for key in keys]
    for assignment in itertools.product(*choices):
        mapping = {}
        for key, targets in zip(keys, assignment):
            for source_arrow, target_arrow in zip(groups_a[key], targets):
                mapping[source_arrow.id] = target_arrow.id
        if potential_a.renamed(mapping, quiver_b) == potential_b:
            return mapping
    return None


def qp_to_dict(quiver: Quiver, potential: Potential) -> dict:
    return {**quiver.to_dict(), 'potential': potential.to_list()}


def qp_from_dict(data: dict) -> Tuple[Quiver, Potential]:
    if not isinstance(data, dict):
        raise FixtureError(f'QP document must be an object, got {type(data).__name__}')
    try:
        quiver = Quiver(
            data['vertices'],
            [Arrow(str(a['id']), str(a['src']), str(a['tgt'])) for a in data['arrows']],
            allow_two_cycles=bool(data.get('allow_two_cycles', False)),
        )
        potential = Potential(quiver, {tuple(t['cycle']): t.get('coeff', '1') for t in data.get('potential', [])})
    except KeyError as e:
        raise QuiverError(f'QP document misses the field {e}') from e
    except (TypeError, AttributeError) as e:
        raise FixtureError(f'Malformed QP document: {e}') from e
    return quiver, potential


def read_qp(filepath: str) -> Tuple[Quiver, Potential]:
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise FixtureError(f'Cannot read QP document {filepath!r}: {e}') from e
    return qp_from_dict(data)


def write_qp(filepath: str, quiver: Quiver, potential: Potential):
    with open(filepath, 'w', encoding='utf-8') as f:
        json.dump(qp_to_dict(quiver, potential), f, indent=2)
    _LOGGER.debug(f'Wrote QP document {filepath!r}')
