"""
The Grothendieck group of the 3-Calabi-Yau category of a quiver with potential, with the transvections induced by the
spherical twists at the simples and the central charges they act on.

Classes are integer column vectors in the basis of simples. Matrices act on columns, the columns of a matrix being
the images of the basis.
"""
import itertools
import json
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy import I, Matrix, Rational, arg, pi

from qpsurf.base.path_algebra import Quiver
from qpsurf.base.report import Check
from qpsurf.support.errors import FixtureError, QpsurfError, TwistError
from qpsurf.support.logs import project_logger

_LOGGER = project_logger(__file__)

class K0Lattice:
    """
    Free abelian group on the simples with the Euler form `χ(S_i, S_j) = a_ji - a_ij`.

    Attributes:
        vertices (tuple[str]): Simples in basis order.
        euler (Matrix): `euler[i, j] = χ(S_i, S_j)`.
    """

    def __init__(self, vertices: Sequence[str], euler: Matrix):
        self.vertices = tuple(vertices)
        self.euler = Matrix(euler)
        if self.euler.shape != (len(self.vertices), len(self.vertices)):
            raise QpsurfError(f'{self}: Euler form of shape {self.euler.shape}')
        if self.euler.T != -self.euler:
            raise QpsurfError(f'{self}: Euler form is not antisymmetric')

    @classmethod
    def from_quiver(cls, quiver: Quiver) -> 'K0Lattice':
        n = len(quiver.vertices)
        euler = Matrix(n, n, lambda i, j: quiver.arrow_count(quiver.vertices[j], quiver.vertices[i]) - quiver.arrow_count(quiver.vertices[i], quiver.vertices[j]))
        return cls(quiver.vertices, euler)

    def __repr__(self):
        return f'K0Lattice({", ".join(self.vertices)})'

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        try:
            return self.vertices.index(str(vertex))
        except ValueError:
            raise QpsurfError(f'{self}: unknown simple {vertex!r}') from None

    def simple(self, vertex: str) -> Matrix:
        return Matrix.eye(self.rank)[:, self.index(vertex)]

    def chi(self, x: Matrix, y: Matrix) -> int:
        return (x.T * self.euler * y)[0, 0]

    def class_of(self, coefficients: Mapping[str, int]) -> Matrix:
        x = Matrix.zeros(self.rank, 1)
        for vertex, value in coefficients.items():
            x[self.index(vertex), 0] = value
        return x

    def as_dict(self, x: Matrix) -> Dict[str, int]:
        return {vertex: int(x[i, 0]) for i, vertex in enumerate(self.vertices)}

    def arrows_between(self, i: str, j: str) -> int:
        """ `a_ij + a_ji`, read from the form of a quiver without 2-cycles. """
        return abs(int(self.euler[self.index(i), self.index(j)]))


def twist_class(lattice: K0Lattice, vertex: str, x: Matrix, exponent: int = 1) -> Matrix:
    """ `x - χ(S_i, x)·S_i`, or `x + χ(S_i, x)·S_i` for the inverse twist. """
    if exponent not in (1, -1):
        raise TwistError(f'Twist exponent must be 1 or -1, got {exponent}')
    s = lattice.simple(vertex)
    return x - exponent * lattice.chi(s, x) * s


def twist_matrix(lattice: K0Lattice, vertex: str, exponent: int = 1) -> Matrix:
    return Matrix.hstack(*[twist_class(lattice, vertex, lattice.simple(v), exponent) for v in lattice.vertices])


class TwistWord(tuple):
    """
    A word in the twists at the simples, as (vertex, ±1) letters.

    The word `φ_1 φ_2` acts as the composite, its last letter applied first.
    """

    def __new__(cls, letters: Iterable[Tuple[str, int]] = ()):
        letters = [(str(v), int(e)) for v, e in letters]
        for vertex, exponent in letters:
            if exponent not in (1, -1):
                raise TwistError(f'Twist exponent must be 1 or -1, got {exponent} for {vertex!r}')
        return super().__new__(cls, letters)

    @classmethod
    def parse(cls, text: str) -> 'TwistWord':
        """ Reads words such as "1+,2-,1+"; the empty string is the empty word. """
        letters = []
        for token in filter(None, (t.strip() for t in text.split(','))):
            if len(token) < 2 or token[-1] not in '+-':
                raise FixtureError(f'Malformed twist {token!r} in {text!r}, expected <vertex>+ or <vertex>-')
            letters.append((token[:-1], 1 if token[-1] == '+' else -1))
        return cls(letters)

    def __str__(self):
        return ','.join(f'{v}{"+" if e > 0 else "-"}' for v, e in self)

    def inverse(self) -> 'TwistWord':
        return TwistWord((v, -e) for v, e in reversed(self))

    def __mul__(self, other: 'TwistWord') -> 'TwistWord':
        return TwistWord(tuple(self) + tuple(other))

    def reduced(self) -> 'TwistWord':
        stack = []
        for vertex, exponent in self:
            if stack and stack[-1] == (vertex, -exponent):
                stack.pop()
            else:
                stack.append((vertex, exponent))
        return TwistWord(stack)

    def is_reduced(self) -> bool:
        return self.reduced() == self


def apply_word(lattice: K0Lattice, word: TwistWord, x: Matrix) -> Matrix:
    for vertex, exponent in reversed(word):
        x = twist_class(lattice, vertex, x, exponent)
    return x


def word_matrix(lattice: K0Lattice, word: TwistWord) -> Matrix:
    result = Matrix.eye(lattice.rank)
    for vertex, exponent in word:
        result = result * twist_matrix(lattice, vertex, exponent)
    return result


def reduced_words(vertices: Sequence[str], max_length: int) -> List[TwistWord]:
    """ All reduced words of length at most `max_length`, by length then lexicographically. """
    letters = [(v, e) for v in vertices for e in (1, -1)]
    words = [TwistWord()]
    layer = [TwistWord()]
    for _ in range(max_length):
        layer = [w * TwistWord([letter]) for w in layer for letter in letters if not w or w[-1] != (letter[0], -letter[1])]
        words += layer
    return words


def check_unimodular(lattice: K0Lattice, word: TwistWord) -> Check:
    check = Check('unimodular')
    matrix = word_matrix(lattice, word)
    if any(not entry.is_integer for entry in matrix):
        check.fail(str(word), f'non-integer matrix {matrix.tolist()}')
    if abs(matrix.det()) != 1:
        check.fail(str(word), f'determinant {matrix.det()}')
    return check


def check_preserves_form(lattice: K0Lattice, word: TwistWord) -> Check:
    check = Check('euler-form')
    matrix = word_matrix(lattice, word)
    residual = matrix.T * lattice.euler * matrix - lattice.euler
    if not residual.is_zero_matrix:
        check.fail(str(word), residual.tolist())
    return check


def braid_relation_check(lattice: K0Lattice, i: str, j: str) -> Check:
    """
    Tests the relation the twists at `i` and `j` should satisfy: the braid relation for one arrow between them,
    commutation for none.

    Pairs joined by more arrows satisfy neither in general; their check carries `notes['asserted'] = False` and
    records which relations hold.
    """
    if i == j:
        raise TwistError(f'Braid relation needs two distinct simples, got {i!r} twice')
    check = Check('braid-relation')
    a, b = twist_matrix(lattice, i), twist_matrix(lattice, j)
    braid = a * b * a == b * a * b
    commute = a * b == b * a
    arrows = lattice.arrows_between(i, j)
    check.notes.update({'pair': f'{i},{j}', 'arrows': arrows, 'braid': braid, 'commute': commute})
    if arrows == 1:
        check.notes['relation'] = 'braid'
        if not braid:
            check.fail(f'{i},{j}', 'ABA != BAB')
    elif arrows == 0:
        check.notes['relation'] = 'commute'
        if not commute:
            check.fail(f'{i},{j}', 'AB != BA')
    else:
        check.notes['relation'] = 'none'
        check.notes['asserted'] = False
    return check


class CentralCharge:
    """
    An additive map from classes to complex numbers, given on the simples.

    Every class has the mass `|Z(E)|` and the phase `arg Z(E) / π`, kept exact as sympy expressions.

    Parameters:
        lattice (K0Lattice): The lattice.
        values (Mapping[str, complex]): `Z(S_i)` for every simple.
        check_phases (bool): Whether every simple must have phase in (0, 1].
    """

    def __init__(self, lattice: K0Lattice, values: Mapping[str, object], check_phases: bool = True):
        self.lattice = lattice
        missing = set(lattice.vertices) - set(values)
        if missing:
            raise QpsurfError(f'CentralCharge on {lattice}: no value for the simples {sorted(missing)}')
        self.values = {v: sympy.nsimplify(sympy.sympify(values[v])) for v in lattice.vertices}
        if check_phases:
            for vertex, value in self.values.items():
                re, im = sympy.re(value), sympy.im(value)
                if not (im > 0 or (im == 0 and re < 0)):
                    raise QpsurfError(f'CentralCharge on {lattice}: Z(S_{vertex}) = {value} has no phase in (0, 1]')

    def __repr__(self):
        return f"CentralCharge({', '.join(f'{v}: {z}' for v, z in self.values.items())})"

    def __eq__(self, other):
        if not isinstance(other, CentralCharge):
            return False
        return self.lattice.vertices == other.lattice.vertices and all(sympy.simplify(self.values[v] - other.values[v]) == 0 for v in self.values)

    def __call__(self, x: Matrix):
        return sympy.expand(sum(x[i, 0] * self.values[v] for i, v in enumerate(self.lattice.vertices)))

    def mass(self, x: Matrix):
        return sympy.Abs(self(x))

    def phase(self, x: Matrix) -> Optional[sympy.Expr]:
        """ `arg Z(x) / π` in (-1, 1], or None for classes of mass 0. """
        value = self(x)
        if value == 0:
            return None
        return sympy.simplify(arg(value) / pi)

    @classmethod
    def from_dict(cls, lattice: K0Lattice, data: Mapping[str, Sequence], check_phases: bool = True) -> 'CentralCharge':
        """ Reads {vertex: [re, im]}; decimals and fractions given as strings are kept exact. """
        try:
            values = {str(v): Rational(str(re)) + I * Rational(str(im)) for v, (re, im) in data.items()}
        except (TypeError, ValueError) as e:
            raise FixtureError(f'Malformed central charge {data!r}') from e
        return cls(lattice, values, check_phases)

    @classmethod
    def read(cls, lattice: K0Lattice, filepath: str) -> 'CentralCharge':
        try:
            with open(filepath, 'r') as f:
                return cls.from_dict(lattice, json.load(f))
        except (OSError, json.JSONDecodeError) as e:
            raise FixtureError(f'Cannot read central charge from {filepath!r}') from e

    def to_dict(self) -> dict:
        data = {}
        for vertex in self.lattice.vertices:
            x = self.lattice.simple(vertex)
            phase = self.phase(x)
            data[vertex] = {
                'z': [str(sympy.re(self.values[vertex])), str(sympy.im(self.values[vertex]))],
                'mass': str(self.mass(x)),
                'phase': None if phase is None else str(phase),
            }
        return data


def twist_charge(lattice: K0Lattice, word: TwistWord, charge: CentralCharge) -> CentralCharge:
    """ `Z' = Z ∘ M⁻¹` for the matrix `M` of the word; the new simples' phases are not normalized. """
    inverse = word_matrix(lattice, word.inverse())
    values = {
        v: sum(inverse[i, j] * charge.values[u] for i, u in enumerate(lattice.vertices))
        for j, v in enumerate(lattice.vertices)
    }
    return CentralCharge(lattice, values, check_phases=False)


def twist_images(lattice: K0Lattice, vertex: str) -> Dict[str, Dict[str, int]]:
    """ The image of every simple under the twist at `vertex`, as coefficient dictionaries. """
    return {v: lattice.as_dict(twist_class(lattice, vertex, lattice.simple(v))) for v in lattice.vertices}


def identity_words(lattice: K0Lattice, max_length: int) -> List[TwistWord]:
    """ Reduced words of length at most `max_length` acting trivially on the lattice. """
    identity = Matrix.eye(lattice.rank)
    return [w for w in reduced_words(lattice.vertices, max_length) if word_matrix(lattice, w) == identity]


def matrix_classes(lattice: K0Lattice, max_length: int) -> Dict[Tuple[int, ...], List[str]]:
    """ Groups the reduced words of length at most `max_length` by their matrix, flattened row by row. """
    classes: Dict[Tuple[int, ...], List[str]] = {}
    for word in reduced_words(lattice.vertices, max_length):
        key = tuple(int(entry) for entry in word_matrix(lattice, word))
        classes.setdefault(key, []).append(str(word))
    _LOGGER.debug(f'{lattice}: {len(classes)} matrices from words up to length {max_length}')
    return classes


def all_pairs(lattice: K0Lattice) -> List[Tuple[str, str]]:
    return list(itertools.combinations(lattice.vertices, 2))
