from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from qpsurf.base.path_algebra import Arrow, PathExpr, Potential, QpClass, Quiver, Word, classify_qp, normalize_cycle, qp_isomorphism
from qpsurf.base.report import Check
from qpsurf.support.errors import QpsurfError, QuiverError, UnsupportedError
from qpsurf.support.logs import project_logger
from qpsurf.surface.triangulation import DecoratedTriangulation, FlipDirection, qp_of_triangulation

_LOGGER = project_logger(__file__)

Mutator = Callable[[Quiver, Potential, str], Tuple[Quiver, Potential]]


def reversed_id(arrow_id: str) -> str:
    return f"{arrow_id}'"


def composite_id(first: str, second: str) -> str:
    return f'[{first}{second}]'


@dataclass
class PremutationResult():
    """
    The quiver with potential produced by reversing the arrows at a vertex and adding composites.

    Attributes:
        quiver (Quiver): The new quiver; 2-cycles are allowed.
        potential (Potential): `w1 + w2`.
        vertex (str): The mutation vertex.
        composites (dict[tuple[str, str], str]): Id of the composite arrow of every pair (into vertex, out of vertex).
        reversed (dict[str, str]): Id of the reversed arrow of every arrow incident to the vertex.
        w1 (Potential): The original potential with every passage through the vertex replaced by a composite.
        w2 (Potential): The sum of the 3-cycles `[ab]·b'·a'`.
    """
    quiver: Quiver
    potential: Potential
    vertex: str
    composites: Dict[Tuple[str, str], str] = field(default_factory=dict)
    reversed: Dict[str, str] = field(default_factory=dict)
    w1: Optional[Potential] = field(default=None)
    w2: Optional[Potential] = field(default=None)


def _replace_passages(cycle: Word, incoming: set, outgoing: set, composites: Dict[Tuple[str, str], str]) -> Word:
    start = next(i for i, a in enumerate(cycle) if a not in outgoing)
    rotated = cycle[start:] + cycle[:start]
    result = []
    i = 0
    while i < len(rotated):
        arrow = rotated[i]
        if arrow in incoming:
            result.append(composites[(arrow, rotated[i + 1])])
            i += 2
        else:
            result.append(arrow)
            i += 1
    return tuple(result)


def premutate(quiver: Quiver, potential: Potential, k: str) -> PremutationResult:
    """
    Reverses every arrow at `k` and adds a composite `[ab]` for every path `a·b` through `k`.

    Raises:
        QuiverError: If `k` is not a vertex, carries a loop, or a new arrow id collides with an existing one.
    """
    if not quiver.has_vertex(k):
        raise QuiverError(f'{quiver}: unknown vertex {k!r}')
    incoming = quiver.arrows_to(k)
    outgoing = quiver.arrows_from(k)
    if any(a.source == a.target for a in incoming):
        raise QuiverError(f'{quiver}: loop at mutation vertex {k!r}')

    arrows = [a for a in quiver.arrows if k not in (a.source, a.target)]
    reversed_ids = {}
    for arrow in incoming + outgoing:
        reversed_ids[arrow.id] = reversed_id(arrow.id)
        arrows.append(Arrow(reversed_ids[arrow.id], arrow.target, arrow.source))
    composites = {}
    for a in incoming:
        for b in outgoing:
            composites[(a.id, b.id)] = composite_id(a.id, b.id)
            arrows.append(Arrow(composites[(a.id, b.id)], a.source, b.target))

    if len({a.id for a in arrows}) != len(arrows):
        raise QuiverError(f'{quiver}: pre-mutation at {k!r} produces colliding arrow ids')
    new_quiver = Quiver(quiver.vertices, arrows, allow_two_cycles=True)

    incoming_ids, outgoing_ids = {a.id for a in incoming}, {b.id for b in outgoing}
    w1 = Potential(new_quiver, {
        _replace_passages(cycle, incoming_ids, outgoing_ids, composites): coefficient
        for cycle, coefficient in potential.cycles.items()
    })
    w2 = Potential(new_quiver, {
        (composites[(a.id, b.id)], reversed_ids[b.id], reversed_ids[a.id]): 1
        for a in incoming for b in outgoing
    })
    return PremutationResult(new_quiver, w1 + w2, k, composites, reversed_ids, w1, w2)


def _pick_two_cycle(potential: Potential, order: Optional[Sequence[Tuple[str, str]]]) -> Tuple[Word, object]:
    terms = dict(potential.two_cycle_terms())
    if order:
        for pair in order:
            key = normalize_cycle(pair)
            if key in terms:
                return key, terms[key]
    key = min(terms)
    return key, terms[key]


def _eliminate(quiver: Quiver, potential: Potential, u: str, v: str, coefficient) -> Tuple[Quiver, Potential]:
    rest_quiver = quiver.without([u, v])
    a_part, b_part = PathExpr.zero(rest_quiver), PathExpr.zero(rest_quiver)
    remainder = {}

    for cycle, c in potential.cycles.items():
        if cycle == normalize_cycle((u, v)):
            continue
        count_u, count_v = cycle.count(u), cycle.count(v)
        if count_u + count_v == 0:
            remainder[cycle] = c
            continue
        if len(cycle) == 2:
            raise UnsupportedError(f'{quiver}: arrows {u!r}, {v!r} occur in the 2-cycle term {cycle}', reason='overlapping 2-cycles')
        if count_u + count_v > 1:
            raise UnsupportedError(f'{quiver}: term {cycle} meets the 2-cycle {u}{v} more than once', reason='repeated 2-cycle arrow')
        arrow = u if count_u else v
        i = cycle.index(arrow)
        rest = cycle[i + 1:] + cycle[:i]
        term = PathExpr.word(rest_quiver, rest, c)
        if arrow == u:
            a_part = a_part + term
        else:
            b_part = b_part + term

    reduced = Potential(rest_quiver, remainder)
    correction = (b_part * a_part).scale(-1 / coefficient)
    for path, c in correction.terms.items():
        reduced = reduced + Potential(rest_quiver, {path.arrows: c})
    return rest_quiver, reduced


def reduce(quiver: Quiver, potential: Potential, order: Sequence[Tuple[str, str]] = None) -> Tuple[Quiver, Potential]:
    """
    Removes 2-cycle terms one at a time by the substitution rule.

    Writing the potential as `λ·uv + u·A + v·B + C` with `A`, `B`, `C` free of `u` and `v`, the arrows `u` and `v` are
    deleted and the potential becomes `C - λ⁻¹·B·A`.

    Parameters:
        quiver (Quiver): The quiver, 2-cycles allowed.
        potential (Potential): The potential.
        order (Sequence[tuple[str, str]], optional): Preferred elimination order of 2-cycles; the smallest remaining
            2-cycle is eliminated when none of the listed ones is left.

    Raises:
        UnsupportedError: If a 2-cycle shares arrows with another 2-cycle term or meets some term twice.
    """
    while potential.two_cycle_terms():
        (u, v), coefficient = _pick_two_cycle(potential, order)
        _LOGGER.debug(f'Eliminating the 2-cycle {u}{v} with coefficient {coefficient}')
        quiver, potential = _eliminate(quiver, potential, u, v, coefficient)
    return quiver, potential


def mutate(quiver: Quiver, potential: Potential, k: str) -> Tuple[Quiver, Potential]:
    """
    Pre-mutation at `k` followed by reduction.

    Raises:
        UnsupportedError: If 2-cycles survive in the quiver after the potential is reduced.
    """
    premutation = premutate(quiver, potential, k)
    reduced_quiver, reduced_potential = reduce(premutation.quiver, premutation.potential)
    try:
        reduced_quiver = Quiver(reduced_quiver.vertices, reduced_quiver.arrows)
    except QuiverError as e:
        raise UnsupportedError(f'{quiver}: mutation at {k!r} leaves 2-cycles outside the potential', reason=str(e)) from e
    return reduced_quiver, reduced_potential.over(reduced_quiver)


def mutate_without_w2(quiver: Quiver, potential: Potential, k: str) -> Tuple[Quiver, Potential]:
    """ Mutation that forgets the added 3-cycles before reducing; it does not produce the flipped QP in general. """
    premutation = premutate(quiver, potential, k)
    return reduce(premutation.quiver, premutation.w1)


def check_flip_mutation(t: DecoratedTriangulation, k: str, mutator: Mutator = mutate) -> Check:
    """
    Compares the mutation of a triangulation's QP at `k` with the QP of its forward flip at `k`, arcs keeping their labels.
    """
    check = Check('flip-mutation')
    quiver, potential = qp_of_triangulation(t)
    flipped_quiver, flipped_potential = qp_of_triangulation(t.flip(k, FlipDirection.FORWARD))
    try:
        mutated_quiver, mutated_potential = mutator(quiver, potential, k)
    except QpsurfError as e:
        check.fail(f'mutate({k})', e)
        return check

    if classify_qp(mutated_quiver, mutated_potential) != QpClass.REDUCED:
        check.fail(f'mutate({k})', f'not reduced: {mutated_potential}')
    mapping = qp_isomorphism(mutated_quiver, mutated_potential, flipped_quiver, flipped_potential)
    if mapping is None:
        check.fail(f'mutate({k}) vs flip({k})', f'{mutated_potential} on {_arrow_counts(mutated_quiver)} != {flipped_potential} on {_arrow_counts(flipped_quiver)}')
    else:
        check.notes['bijection'] = dict(sorted(mapping.items()))
    return check


def _arrow_counts(quiver: Quiver) -> List[str]:
    return sorted(f'{a.source}>{a.target}' for a in quiver.arrows)
