"""
Curves between decorating points, written as words in the dual graph of a triangulation.

A word `(start, side, turns)` leaves the decoration of triangle `start` through side `side`, and at every
decoration it passes turns by `turns[j]` sectors clockwise: entering through slot `e` with turn `c`, it leaves
through slot `(e + c) % 3`. Turns that are multiples of 3 wind around the decoration. A word is reduced when no
turn is zero.
"""
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from qpsurf.support.errors import TriangulationError
from qpsurf.surface.triangulation import DecoratedTriangulation


class Word(NamedTuple):
    start: int
    side: int
    turns: Tuple[int, ...] = ()

    def __str__(self):
        return f'{self.start}:{self.side}:{",".join(str(c) for c in self.turns)}'


def walk(t: DecoratedTriangulation, word: Word) -> List[Tuple[int, int]]:
    """
    The triangles a word visits after its start, each with the slot it is entered through.
    """
    visits = []
    index, side = word.start, word.side
    for turn in word.turns + (None,):
        if not t.is_arc(t.side(index, side)):
            raise TriangulationError(f'{t}: word {word} leaves through the boundary side {t.side(index, side)!r}')
        index, entry = t.other_slot(index, side)
        visits.append((index, entry))
        if turn is not None:
            side = (entry + turn) % 3
    return visits


def end(t: DecoratedTriangulation, word: Word) -> Tuple[int, int]:
    return walk(t, word)[-1]


def crossed_arcs(t: DecoratedTriangulation, word: Word) -> List[str]:
    arcs = [t.side(word.start, word.side)]
    for (index, entry), turn in zip(walk(t, word), word.turns):
        arcs.append(t.side(index, (entry + turn) % 3))
    return arcs


def reverse(t: DecoratedTriangulation, word: Word) -> Word:
    index, entry = end(t, word)
    return Word(index, entry, tuple(-c for c in reversed(word.turns)))


def canonical(t: DecoratedTriangulation, word: Word) -> Word:
    """ The orientation-independent representative of the curve a word traces. """
    return min(word, reverse(t, word))


def dual_arc(t: DecoratedTriangulation, arc: str, start: int = None) -> Word:
    """
    The dual arc crossing `arc` once, leaving from `start` or from the first triangle holding `arc`.
    """
    for index, slot in t.slots(arc):
        if start is None or index == start:
            return Word(index, slot, ())
    raise TriangulationError(f'{t}: arc {arc!r} is not a side of triangle {start}')


def reduce_word(word: Word) -> Optional[Word]:
    """
    Cancels back-tracks: a zero turn between `a` and `b` merges them into `a + b`, a leading zero turn moves the start
    side, a trailing one drops the last crossing.

    Returns:
        Optional[Word]: The reduced word, or None if the curve contracts to its start decoration.
    """
    side, turns = word.side, list(word.turns)
    while 0 in turns:
        i = turns.index(0)
        if len(turns) == 1:
            return None
        if i == 0:
            side = (side + turns[1]) % 3
            turns = turns[2:]
        elif i == len(turns) - 1:
            turns = turns[:-2]
        else:
            turns = turns[:i - 1] + [turns[i - 1] + turns[i + 1]] + turns[i + 2:]
    return Word(word.start, side, tuple(turns))


RayKey = Tuple[int, Tuple[Fraction, ...]]


def ray_key(ray: Word) -> RayKey:
    """
    Position of a ray in the clockwise order of rays leaving its start decoration; smaller keys come first.
    """
    return ray.side, tuple(Fraction(-1, c) for c in ray.turns) + (Fraction(0),)


def partial_angle(x: Word, y: Word) -> int:
    """ Clockwise sectors swept from ray `x` to ray `y` within one turn around their common start. """
    if x.start != y.start:
        raise TriangulationError(f'Rays {x} and {y} leave different decorations')
    if x.side != y.side:
        return (y.side - x.side) % 3
    return 0 if ray_key(y) >= ray_key(x) else 3


def is_clockwise(u: Word, v: Word, w: Word) -> bool:
    """ Whether three distinct rays at one decoration are met in this cyclic order clockwise. """
    ku, kv, kw = ray_key(u), ray_key(v), ray_key(w)
    if len({ku, kv, kw}) < 3:
        return False
    return ku < kv < kw or kv < kw < ku or kw < ku < kv
