"""
The dg homomorphism from the Ginzburg algebra of a pre-mutated QP into the endomorphisms of `μ♯_k(Γ)`.

`μ♯_k(Γ)` splits as a sum of summands `M_v`: `M_v = P_v` for `v != k` and `M_k` is the twisted sum of `P_k[1]` and
one `P_{s(q)}` per arrow `q` into `k`. A generator `u: v -> w` of the pre-mutated algebra is sent to a map
`M_w -> M_v` of degree `|u|`, stored with rows indexing `M_v` and columns indexing `M_w` so that products of images
follow the left-to-right composition of paths.
"""
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Tuple

from qpsurf.algebra.ginzburg import GinzburgPresentation, ginzburg, star, vertex_star
from qpsurf.algebra.mutation import PremutationResult, premutate
from qpsurf.base.dg_module import (
    ChainMap, DgModulePresentation, Generator, Matrix, SignConvention, default_convention, hom_differential, matadd, matmul,
)
from qpsurf.base.path_algebra import Path, PathExpr, Potential, path_derivative, rescale_arrows
from qpsurf.base.report import Check
from qpsurf.support.errors import QuiverError
from qpsurf.support.logs import project_logger

_LOGGER = project_logger(__file__)


def mu_sharp(algebra: GinzburgPresentation, k: str) -> DgModulePresentation:
    """
    The summand `M_k`: `P_k[1]` labelled 'k' followed by `P_{s(q)}` labelled 'q:{q}' for every arrow `q` into `k`,
    with differential entry `q` from each of those to 'k'.
    """
    incoming = algebra.base.arrows_to(k)
    generators = [Generator(k, 1, 'k')] + [Generator(q.source, 0, f'q:{q.id}') for q in incoming]
    entries = {(j + 1, 0): algebra.generator(q.id) for j, q in enumerate(incoming)}
    return DgModulePresentation(algebra, generators, entries, f'mu#{k}')


def summand(algebra: GinzburgPresentation, k: str, vertex: str) -> DgModulePresentation:
    if vertex == k:
        return mu_sharp(algebra, k)
    return DgModulePresentation(algebra, [Generator(vertex, 0, vertex)], {}, f'P{vertex}')


def table_signs(premutation: PremutationResult) -> Dict[str, int]:
    """
    Arrows of the pre-mutated quiver the table rescales by `-1`: every composite, every reversed arrow `β′` of an
    arrow `β` out of `k`, and the stars of both.
    """
    k = premutation.vertex
    signs = {}
    for composite in premutation.composites.values():
        signs[composite] = -1
    for reversed_arrow in premutation.reversed.values():
        if premutation.quiver.arrow(reversed_arrow).target == k:
            signs[reversed_arrow] = -1
    signs.update({star(arrow_id): sign for arrow_id, sign in list(signs.items())})
    return signs


def rescaled_potential(premutation: PremutationResult) -> Potential:
    return rescale_arrows(premutation.potential, table_signs(premutation))


@dataclass
class KYMorphismTable():
    """
    Images of the generators of the pre-mutated Ginzburg algebra.

    Attributes:
        algebra (GinzburgPresentation): `Γ`, the algebra the images live in.
        k (str): The mutation vertex.
        premutation (PremutationResult): The pre-mutated QP `(Q̃, W̃)`.
        mutated (GinzburgPresentation): The algebra the table is a dg homomorphism out of, `Γ(Q̃, W̃′)` by default.
        summands (dict[str, DgModulePresentation]): The summand `M_v` of every vertex.
        images (dict[str, ChainMap]): Image of every arrow of the doubled pre-mutated quiver.
        signs (dict[str, int]): The rescaling carrying `Γ(Q̃, W̃)` onto `Γ(Q̃, W̃′)`.
    """
    algebra: GinzburgPresentation
    k: str
    premutation: PremutationResult
    mutated: GinzburgPresentation
    summands: Dict[str, DgModulePresentation] = field(default_factory=dict)
    images: Dict[str, ChainMap] = field(default_factory=dict)
    signs: Dict[str, int] = field(default_factory=dict)

    def identity(self, vertex: str) -> Matrix:
        quiver = self.algebra.quiver
        return {(j, j): PathExpr.trivial(quiver, g.vertex) for j, g in enumerate(self.summands[vertex].generators)}

    def _path_image(self, path: Path) -> Matrix:
        if not path.arrows:
            return self.identity(path.start)
        result = self.images[path.arrows[0]].entries
        for arrow_id in path.arrows[1:]:
            if not result:
                break
            result = matmul(result, self.images[arrow_id].entries)
        return result

    def apply(self, expr: PathExpr) -> Matrix:
        """ Extends the table multiplicatively and linearly to a combination of paths of the pre-mutated algebra. """
        result: Matrix = {}
        for path, coefficient in expr.sorted_terms():
            result = matadd(result, self._path_image(path), scale=coefficient)
        return result

    def apply_literal(self, expr: PathExpr) -> Matrix:
        """ The table after the rescaling, ie. the dg homomorphism out of `Γ(Q̃, W̃)`. """
        terms = {}
        for path, coefficient in expr.terms.items():
            sign = 1
            for arrow_id in path.arrows:
                sign *= self.signs.get(arrow_id, 1)
            terms[path] = coefficient * sign
        return self.apply(PathExpr(expr.quiver, terms))

    def with_image(self, arrow_id: str, entries: Mapping[Tuple[int, int], PathExpr]) -> 'KYMorphismTable':
        """ A copy with one image replaced, for negative controls. """
        if arrow_id not in self.images:
            raise QuiverError(f'{self}: no image for unknown arrow {arrow_id!r}')
        current = self.images[arrow_id]
        images = dict(self.images)
        images[arrow_id] = ChainMap(current.source, current.target, entries, current.degree, current.name)
        return replace(self, images=images)

    def __repr__(self):
        return f'KYMorphismTable(k={self.k!r}, {len(self.images)} images)'

    def to_dict(self) -> dict:
        return {
            'k': self.k,
            'signs': dict(sorted(self.signs.items())),
            'images': {arrow_id: image.to_dict() for arrow_id, image in sorted(self.images.items())},
        }


def ky_table(algebra: GinzburgPresentation, k: str, mutated: GinzburgPresentation = None) -> KYMorphismTable:
    """
    Transcribes the images of the generators of the pre-mutated Ginzburg algebra.

    With `ρ` running over arrows into `k` and `α`, `β` arrows into and out of `k`:

    - `α′ ↦ (0; δ_{ρ,α}·e)` and `α′* ↦ (-α·e_k*, -α·ρ*)`,
    - `β′ ↦ (β*, ∂_{ρβ}W)` and `β′* ↦ (-β; 0)`,
    - `[αβ] ↦ -α·β` and `[αβ]* ↦ 0`,
    - untouched arrows and their stars map to themselves,
    - `e′_v* ↦ e_v*` for `v != k` and `e′_k* ↦ [[-e_k*, -ρ*], [0, 0]]`.

    Parameters:
        algebra (GinzburgPresentation): `Γ` of a reduced QP.
        k (str): The mutation vertex.
        mutated (GinzburgPresentation, optional): The source algebra, `Γ(Q̃, W̃′)` with the rescaled potential by
            default; negative controls pass the literal `Γ(Q̃, W̃)`.
    """
    quiver = algebra.quiver
    premutation = premutate(algebra.base, algebra.potential, k)
    signs = table_signs(premutation)
    if mutated is None:
        mutated = ginzburg(premutation.quiver, rescaled_potential(premutation))

    summands = {v: summand(algebra, k, v) for v in algebra.base.vertices}
    incoming = algebra.base.arrows_to(k)
    outgoing = algebra.base.arrows_from(k)
    reversed_of = {reversed_id: original for original, reversed_id in premutation.reversed.items()}
    composite_of = {composite: pair for pair, composite in premutation.composites.items()}

    def arrow(arrow_id: str, coefficient=1) -> PathExpr:
        return PathExpr.arrow(quiver, arrow_id, coefficient)

    def word(arrow_ids, coefficient=1) -> PathExpr:
        return PathExpr.word(quiver, arrow_ids, coefficient)

    def q_row(q_id: str) -> int:
        return 1 + [q.id for q in incoming].index(q_id)

    images = {}
    for new_arrow in premutation.quiver.arrows:
        source, target = new_arrow.source, new_arrow.target
        if new_arrow.id in reversed_of and target != k:
            # α′: k -> s(α)
            alpha = algebra.base.arrow(reversed_of[new_arrow.id])
            image = {(q_row(alpha.id), 0): PathExpr.trivial(quiver, alpha.source)}
            image_star = {(0, 0): word((alpha.id, vertex_star(k)), -1)}
            for q in incoming:
                image_star[(0, q_row(q.id))] = word((alpha.id, star(q.id)), -1)
        elif new_arrow.id in reversed_of:
            # β′: t(β) -> k
            beta = algebra.base.arrow(reversed_of[new_arrow.id])
            image = {(0, 0): arrow(star(beta.id))}
            for q in incoming:
                image[(0, q_row(q.id))] = algebra.lift(path_derivative(algebra.potential, (q.id, beta.id)))
            image_star = {(0, 0): arrow(beta.id, -1)}
        elif new_arrow.id in composite_of:
            alpha_id, beta_id = composite_of[new_arrow.id]
            image = {(0, 0): word((alpha_id, beta_id), -1)}
            image_star = {}
        else:
            image = {(0, 0): arrow(new_arrow.id)}
            image_star = {(0, 0): arrow(star(new_arrow.id))}
        images[new_arrow.id] = ChainMap(summands[target], summands[source], image, 0, f'f({new_arrow.id})')
        images[star(new_arrow.id)] = ChainMap(summands[source], summands[target], image_star, -1, f'f({star(new_arrow.id)})')

    for vertex in algebra.base.vertices:
        if vertex == k:
            entries = {(0, 0): arrow(vertex_star(k), -1)}
            for q in incoming:
                entries[(0, q_row(q.id))] = arrow(star(q.id), -1)
        else:
            entries = {(0, 0): arrow(vertex_star(vertex))}
        images[vertex_star(vertex)] = ChainMap(summands[vertex], summands[vertex], entries, -2, f'f({vertex_star(vertex)})')

    _LOGGER.debug(f'Keller-Yang table at {k!r}: {len(incoming)} arrows in, {len(outgoing)} arrows out, {len(images)} images')
    return KYMorphismTable(algebra, k, premutation, mutated, summands, images, signs)


def check_dg_homomorphism(table: KYMorphismTable, convention: SignConvention = None) -> Check:
    """
    Checks `f(d̃x) = δ(f(x))` for every generator `x` of the source algebra of the table.
    """
    check = Check('dg-homomorphism')
    for new_arrow in table.mutated.quiver.arrows:
        image = table.images[new_arrow.id]
        lhs = table.apply(table.mutated.rules[new_arrow.id])
        rhs = hom_differential(image, convention)
        for (row, col), residual in sorted(matadd(lhs, rhs, scale=-1).items()):
            check.fail(f'f(d {new_arrow.id})[{image.target.generators[row].label}, {image.source.generators[col].label}]', residual)
    return check


def functor_image(
        table: KYMorphismTable,
        module: DgModulePresentation,
        convention: SignConvention = None,
        name: str = None,
) -> Tuple[DgModulePresentation, List[Tuple[int, str]]]:
    """
    Image of a presentation over the literal pre-mutated algebra under the induced functor.

    Every generator `P̃_v[s]` becomes the summand `M_v` shifted by `s`, its internal differential multiplied by the
    shift sign. Differential entries are replaced by their images under the rescaled table, placed block by block.

    Returns:
        tuple: The expanded presentation over `Γ`, and for every new generator the index of the generator it comes from
            with the label of its component in `M_v`.
    """
    convention = convention or default_convention()
    generators, origins, offsets = [], [], []
    entries: Matrix = {}
    for index, generator in enumerate(module.generators):
        block = table.summands[generator.vertex]
        offset = len(generators)
        offsets.append(offset)
        for component in block.generators:
            generators.append(Generator(component.vertex, component.shift + generator.shift, f'{generator.label}|{component.label}'))
            origins.append((index, component.label))
        sign = convention.shift_sign(generator.shift)
        for (c, a), expr in block.entries.items():
            entries[(offset + c, offset + a)] = expr.scale(sign)

    for (c, a), expr in module.entries.items():
        image = {(offsets[c] + row, offsets[a] + col): value for (row, col), value in table.apply_literal(expr).items()}
        entries = matadd(entries, image)

    return DgModulePresentation(table.algebra, generators, entries, name or f'F({module.name})'), origins
