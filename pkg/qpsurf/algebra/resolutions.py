"""
Cofibrant resolutions of simples, their images under the Keller-Yang functor, the sharp simples and the lifted
morphisms relating them.

Generators are addressed by labels; a label carries the block it belongs to and the arrows indexing it, eg.
'pq:{p},{q}' for the summand indexed by a pair `(p, q)`.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from qpsurf.algebra.ginzburg import GinzburgPresentation, ginzburg, star, vertex_star
from qpsurf.algebra.keller_yang import KYMorphismTable, check_dg_homomorphism, functor_image, ky_table
from qpsurf.base.dg_module import (
    ChainMap, DgModulePresentation, Generator, SignConvention, by_labels, check_chain_map, check_maurer_cartan,
    check_null_homotopy, compose, permute, relabel, shift, shift_map, zero_map,
)
from qpsurf.base.path_algebra import PathExpr, path_derivative
from qpsurf.base.report import Check
from qpsurf.support.errors import QpsurfError, QuiverError
from qpsurf.support.logs import project_logger
from qpsurf.support.py_utils import VerboseEnum

_LOGGER = project_logger(__file__)

Entries = Dict[Tuple[str, str], PathExpr]


def _derivative(algebra: GinzburgPresentation, word: Sequence[str]) -> PathExpr:
    return algebra.lift(path_derivative(algebra.potential, word))


def simple_resolution(algebra: GinzburgPresentation, i: str) -> DgModulePresentation:
    """
    The cofibrant resolution of the simple at `i`.

    Generators are `P_i[3]` ('top'), `P_{s(ρ)}[2]` for every arrow `ρ` into `i` ('ρ:{ρ}'), `P_{t(τ)}[1]` for every
    arrow `τ` out of `i` ('τ:{τ}') and `P_i` ('base'). The differential has entries `ρ`, `-τ*`, `-∂_{ρτ}W`, `e_i*`,
    `ρ*` and `τ`.
    """
    base = algebra.base
    if not base.has_vertex(i):
        raise QuiverError(f'{base}: unknown vertex {i!r}')
    incoming, outgoing = base.arrows_to(i), base.arrows_from(i)
    generators = [Generator(i, 3, 'top')]
    generators += [Generator(rho.source, 2, f'ρ:{rho.id}') for rho in incoming]
    generators += [Generator(tau.target, 1, f'τ:{tau.id}') for tau in outgoing]
    generators += [Generator(i, 0, 'base')]

    entries: Entries = {('base', 'top'): algebra.generator(vertex_star(i))}
    for rho in incoming:
        entries[(f'ρ:{rho.id}', 'top')] = algebra.generator(rho.id)
        entries[('base', f'ρ:{rho.id}')] = algebra.generator(star(rho.id))
    for tau in outgoing:
        entries[(f'τ:{tau.id}', 'top')] = algebra.generator(star(tau.id), -1)
        entries[('base', f'τ:{tau.id}')] = algebra.generator(tau.id)
        for rho in incoming:
            entries[(f'τ:{tau.id}', f'ρ:{rho.id}')] = -_derivative(algebra, (rho.id, tau.id))

    module = DgModulePresentation(algebra, generators, {}, f'pS{i}')
    return module.with_entries(by_labels(module, module, entries))


def check_projection_to_simple(module: DgModulePresentation) -> Check:
    """
    The projection onto the simple at the vertex of 'base' is a chain map iff no differential entry in the row or
    column of 'base' has a trivial path term.
    """
    check = Check('projection')
    base = module.index('base')
    for (c, a), expr in sorted(module.entries.items()):
        if base not in (c, a):
            continue
        constants = [path for path in expr.terms if not path.arrows]
        if constants:
            check.fail(f'{module.name}[{module.generators[c].label}, {module.generators[a].label}]', expr)
    return check


def _image_label(table: KYMorphismTable, i: str, label: str, component: str) -> Tuple[int, str]:
    """ Display block and label of one generator of the image of the resolution of `i` over the pre-mutated algebra. """
    premutation = table.premutation
    k = table.k
    if label in ('top', 'base'):
        if i != k:
            return (1 if label == 'top' else 10), label
        if label == 'top':
            return (1, 'top') if component == 'k' else (2, f'ρ:{component[2:]}')
        return (5, 'k1') if component == 'k' else (6, f'z:{component[2:]}')

    kind, arrow_id = label.split(':', 1)
    reversed_of = {r: a for a, r in premutation.reversed.items()}
    composite_of = {c: pair for pair, c in premutation.composites.items()}
    if i == k:
        original = reversed_of[arrow_id]
        return (3, f'γ:{original}') if kind == 'ρ' else (4, f'w:{original}')

    if arrow_id in composite_of:
        a, b = composite_of[arrow_id]
        return (3, f'[ab]:{a},{b}') if kind == 'ρ' else (7, f'[lg]:{a},{b}')
    if arrow_id in reversed_of:
        original = reversed_of[arrow_id]
        if kind == 'ρ':
            return (4, f'c:{original}') if component == 'k' else (5, f'pq:{original},{component[2:]}')
        return (8, f'h:{original}') if component == 'k' else (9, f'xy:{component[2:]},{original}')
    return (2, f'α:{arrow_id}') if kind == 'ρ' else (6, f'β:{arrow_id}')


def resolution_image(table: KYMorphismTable, i: str, convention: SignConvention = None) -> DgModulePresentation:
    """
    `F(pS̃_i)`: the image of the resolution of the simple at `i` over `Γ(Q̃, W̃)`, ordered and labelled by blocks.

    For `i != k` the blocks are 'top', 'α:{α}', '[ab]:{a},{b}', 'c:{p}', 'pq:{p},{q}', 'β:{β}', '[lg]:{l},{g}',
    'h:{h}', 'xy:{x},{h}' and 'base'; for `i = k` they are 'top', 'ρ:{q}', 'γ:{g}', 'w:{α}', 'k1' and 'z:{q}'.
    """
    literal = ginzburg(table.premutation.quiver, table.premutation.potential)
    resolution = simple_resolution(literal, i)
    image, origins = functor_image(table, resolution, convention)
    placed = [_image_label(table, i, resolution.generators[index].label, component) for index, component in origins]
    order = sorted(range(len(image)), key=lambda j: (placed[j][0], j))
    return relabel(permute(image, order), [placed[j][1] for j in order], f'F(pS~{i})')


def sharp_simple(algebra: GinzburgPresentation, k: str, i: str) -> DgModulePresentation:
    """
    `pS♯_i` for `i != k`.

    Blocks: 'top' `P_i[3]`, 'α~:{α}' for arrows into `i` not from `k`, 'h~:{h}' for arrows `k -> i`, 'β~:{β}' for
    arrows out of `i` not to `k`, 'σ:{σ}' for arrows `i -> k`, 'base' `P_i`, then 'c~:{c}', 'pq~:{p},{q}',
    'lg~:{l},{g}' and 'τ:{τ}' indexed by arrows `i -> k` and arrows `q` into or `g` out of `k`.
    """
    if i == k:
        raise QuiverError(f'{algebra}: the sharp simple at the mutation vertex is the shifted resolution')
    base = algebra.base
    alphas = [a for a in base.arrows_to(i) if a.source != k]
    hs = [a for a in base.arrows_to(i) if a.source == k]
    betas = [b for b in base.arrows_from(i) if b.target != k]
    sigmas = [s for s in base.arrows_from(i) if s.target == k]
    qs, gs = base.arrows_to(k), base.arrows_from(k)

    generators = [Generator(i, 3, 'top')]
    generators += [Generator(a.source, 2, f'α~:{a.id}') for a in alphas]
    generators += [Generator(k, 2, f'h~:{h.id}') for h in hs]
    generators += [Generator(b.target, 1, f'β~:{b.id}') for b in betas]
    generators += [Generator(k, 1, f'σ:{s.id}') for s in sigmas]
    generators += [Generator(i, 0, 'base')]
    generators += [Generator(k, 3, f'c~:{c.id}') for c in sigmas]
    generators += [Generator(q.source, 2, f'pq~:{p.id},{q.id}') for p in sigmas for q in qs]
    generators += [Generator(g.target, 1, f'lg~:{l.id},{g.id}') for l in sigmas for g in gs]
    generators += [Generator(k, 0, f'τ:{t.id}') for t in sigmas]

    def d(word) -> PathExpr:
        return _derivative(algebra, word)

    arrow = algebra.generator
    entries: Entries = {('base', 'top'): arrow(vertex_star(i))}
    for a in alphas + hs:
        tilde = 'α~' if a in alphas else 'h~'
        entries[(f'{tilde}:{a.id}', 'top')] = arrow(a.id)
        entries[('base', f'{tilde}:{a.id}')] = arrow(star(a.id))
        for b in betas:
            entries[(f'β~:{b.id}', f'{tilde}:{a.id}')] = -d((a.id, b.id))
        for s in sigmas:
            entries[(f'σ:{s.id}', f'{tilde}:{a.id}')] = -d((a.id, s.id))
    for b in betas:
        entries[(f'β~:{b.id}', 'top')] = arrow(star(b.id), -1)
        entries[('base', f'β~:{b.id}')] = arrow(b.id)
    for s in sigmas:
        entries[(f'σ:{s.id}', 'top')] = arrow(star(s.id), -1)
        entries[('base', f'σ:{s.id}')] = arrow(s.id)
        entries[(f'τ:{s.id}', f'σ:{s.id}')] = algebra.e(k)
        entries[(f'τ:{s.id}', f'c~:{s.id}')] = arrow(vertex_star(k))
    for p in sigmas:
        for q in qs:
            label = f'pq~:{p.id},{q.id}'
            if q.id == p.id:
                entries[(label, 'top')] = algebra.e(i)
            entries[(label, f'c~:{p.id}')] = arrow(q.id)
            entries[(f'τ:{p.id}', label)] = arrow(star(q.id))
            for g in gs:
                entries[(f'lg~:{p.id},{g.id}', label)] = -d((q.id, g.id))
    for l in sigmas:
        for g in gs:
            label = f'lg~:{l.id},{g.id}'
            entries[(label, f'c~:{l.id}')] = arrow(star(g.id), -1)
            entries[(f'τ:{l.id}', label)] = arrow(g.id)
            for a in alphas:
                entries[(label, f'α~:{a.id}')] = d((a.id, l.id, g.id))

    module = DgModulePresentation(algebra, generators, {}, f'pS#{i}')
    return module.with_entries(by_labels(module, module, entries))


@dataclass
class SharpBundle():
    """
    The image of a resolution over the pre-mutated algebra, the sharp simple and the map between them.

    Attributes:
        i (str): The vertex.
        k (str): The mutation vertex.
        image (DgModulePresentation): `F(pS̃_i)`.
        sharp (DgModulePresentation): `pS♯_i`, or `pS_k[1]` when `i = k`.
        phi (ChainMap): The map `F(pS̃_i) -> sharp`.
    """
    i: str
    k: str
    image: DgModulePresentation
    sharp: DgModulePresentation
    phi: ChainMap

    def checks(self, convention: SignConvention = None) -> List[Check]:
        checks = [check_maurer_cartan(self.image, convention), check_maurer_cartan(self.sharp, convention), check_chain_map(self.phi, convention)]
        for check, subject in zip(checks, ('image', 'sharp', 'phi')):
            check.notes['subject'] = f'{subject}({self.i})'
        return checks


def _phi_entries(algebra: GinzburgPresentation, k: str, i: str, image: DgModulePresentation, sharp: DgModulePresentation) -> Entries:
    e = algebra.e
    labels = {g.label for g in image.generators}
    entries: Entries = {('top', 'top'): e(i), ('base', 'base'): e(i)}
    for g in sharp.generators:
        kind, _, rest = g.label.partition(':')
        if kind == 'α~':
            entries[(g.label, f'α:{rest}')] = e(g.vertex)
        elif kind == 'h~':
            entries[(g.label, f'h:{rest}')] = -e(k)
        elif kind == 'β~':
            entries[(g.label, f'β:{rest}')] = e(g.vertex)
            for label in labels:
                if label.startswith('xy:'):
                    x, h = label[3:].split(',')
                    entries[(g.label, label)] = -_derivative(algebra, (x, h, rest))
        elif kind == 'σ':
            entries[(g.label, f'c:{rest}')] = -algebra.generator(vertex_star(k))
            for label in labels:
                p, _, q = label[3:].partition(',')
                if label.startswith('pq:') and p == rest:
                    entries[(g.label, label)] = -algebra.generator(star(q))
                elif label.startswith('[lg]:') and label[5:].split(',')[0] == rest:
                    entries[(g.label, label)] = algebra.generator(label[5:].split(',')[1])
        elif kind == 'c~':
            entries[(g.label, f'c:{rest}')] = e(k)
        elif kind == 'pq~':
            entries[(g.label, f'pq:{rest}')] = e(g.vertex)
        elif kind == 'lg~':
            entries[(g.label, f'[lg]:{rest}')] = -e(g.vertex)
    return entries


def sharp_bundle(
        algebra: GinzburgPresentation,
        k: str,
        i: str,
        table: KYMorphismTable = None,
        convention: SignConvention = None,
) -> SharpBundle:
    """
    Builds `F(pS̃_i)`, the sharp simple and the comparison map.

    For `i = k` the sharp simple is `pS_k[1]` and the map has entries `1` on 'top', `δ` on the 'ρ' blocks, `-δ` from
    the 'γ' blocks to the 'τ' blocks and `1` from 'k1' to 'base'.
    """
    table = table or ky_table(algebra, k)
    image = resolution_image(table, i, convention)
    if i == k:
        sharp = shift(simple_resolution(algebra, k), 1, convention)
        entries: Entries = {('top', 'top'): algebra.e(k), ('base', 'k1'): algebra.e(k)}
        for g in sharp.generators:
            kind, _, rest = g.label.partition(':')
            if kind == 'ρ':
                entries[(g.label, f'ρ:{rest}')] = algebra.e(g.vertex)
            elif kind == 'τ':
                entries[(g.label, f'γ:{rest}')] = -algebra.e(g.vertex)
    else:
        sharp = sharp_simple(algebra, k, i)
        entries = _phi_entries(algebra, k, i, image, sharp)
    phi = ChainMap(image, sharp, by_labels(sharp, image, entries), 0, f'phi{i}')
    return SharpBundle(i, k, image, sharp, phi)


class LiftKind(VerboseEnum):
    """ The arrow of the pre-mutated quiver a lifted morphism is attached to, for `a: i -> k` and `b: k -> i`. """
    REVERSED_IN = "a'"
    REVERSED_IN_STAR = "a'*"
    REVERSED_OUT = "b'"
    REVERSED_OUT_STAR = "b'*"


@dataclass
class HomotopyCase():
    """
    One square comparing `F(pπ)` and `pπ♯` through the comparison maps.

    Attributes:
        kind (LiftKind): Which family of arrows the case belongs to.
        arrow (str): The arrow of the original quiver.
        i (str): The vertex other than `k` the arrow is incident to.
        first (ChainMap): `φ_target ∘ F(pπ)`.
        second (ChainMap): `pπ♯ ∘ φ_source`.
        theta (ChainMap): The homotopy, zero when the square commutes on the nose.
    """
    kind: LiftKind
    arrow: str
    i: str
    first: ChainMap
    second: ChainMap
    theta: ChainMap
    lifts: Dict[str, ChainMap] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return f'{self.kind}({self.arrow})'

    def check(self, convention: SignConvention = None) -> Check:
        check = check_null_homotopy(self.first, self.second, self.theta, convention)
        check.notes['case'] = self.name
        check.notes['theta'] = 'zero' if not self.theta.entries else f'{len(self.theta.entries)} entries'
        return check


def _lift(source: DgModulePresentation, target: DgModulePresentation, entries: Mapping[Tuple[str, str], PathExpr], name: str, sign: int = 1) -> ChainMap:
    matrix = by_labels(target, source, entries)
    return ChainMap(source, target, {index: expr.scale(sign) for index, expr in matrix.items()}, 0, name)


def homotopy_cases(
        algebra: GinzburgPresentation,
        k: str,
        bundles: Mapping[str, SharpBundle] = None,
        convention: SignConvention = None,
) -> List[HomotopyCase]:
    """
    The four families of squares for every arrow between `k` and another vertex.

    For `a: i -> k` the `a'` square commutes up to the homotopy with entries `δ_{a,σ}·e_k` from 'k1' to 'σ' and
    `e_i` from 'z:{a}' to 'base'; the `a'*`, `b'` and `b'*` squares commute on the nose.
    """
    if bundles is None:
        table = ky_table(algebra, k)
        neighbours = {a.source for a in algebra.base.arrows_to(k)} | {b.target for b in algebra.base.arrows_from(k)}
        bundles = {v: sharp_bundle(algebra, k, v, table, convention) for v in sorted(neighbours | {k})}

    e = algebra.e
    qs, gs = algebra.base.arrows_to(k), algebra.base.arrows_from(k)
    bundle_k = bundles[k]
    fk, sk1 = bundle_k.image, bundle_k.sharp
    cases = []

    for a in qs:
        i = a.source
        fi, si = bundles[i].image, bundles[i].sharp
        phi_i, phi_k = bundles[i].phi, bundle_k.phi

        target = shift(fi, 1, convention)
        entries = {('c:' + a.id, 'top'): e(k), ('base', f'w:{a.id}'): e(i)}
        entries.update({(f'pq:{a.id},{q.id}', f'ρ:{q.id}'): e(q.source) for q in qs})
        entries.update({(f'[lg]:{a.id},{g.id}', f'γ:{g.id}'): e(g.target) for g in gs})
        f_lift = _lift(fk, target, entries, f"F(p{a.id}')")
        sharp_target = shift(si, 1, convention)
        entries = {(f'c~:{a.id}', 'top'): e(k), (f'τ:{a.id}', 'base'): e(k)}
        entries.update({(f'pq~:{a.id},{q.id}', f'ρ:{q.id}'): e(q.source) for q in qs})
        entries.update({(f'lg~:{a.id},{g.id}', f'τ:{g.id}'): e(g.target) for g in gs})
        sharp_lift = _lift(sk1, sharp_target, entries, f"p{a.id}'#")
        theta = ChainMap(fk, sharp_target, by_labels(sharp_target, fk, {(f'σ:{a.id}', 'k1'): e(k), ('base', f'z:{a.id}'): e(i)}), -1, 'θ')
        cases.append(HomotopyCase(
            LiftKind.REVERSED_IN, a.id, i,
            compose(shift_map(phi_i, 1, convention), f_lift), compose(sharp_lift, phi_k), theta,
            {'F': f_lift, 'sharp': sharp_lift},
        ))

        target = shift(fk, 2, convention)
        entries = {(f'w:{a.id}', 'top'): e(i), ('k1', f'c:{a.id}'): e(k)}
        entries.update({(f'z:{q.id}', f'pq:{a.id},{q.id}'): e(q.source) for q in qs})
        f_lift = _lift(fi, target, entries, f"F(p{a.id}'*)")
        sharp_lift = _lift(si, shift(sk1, 2, convention), {('base', f'c~:{a.id}'): e(k)}, f"p{a.id}'*#")
        first = compose(shift_map(phi_k, 2, convention), f_lift)
        cases.append(HomotopyCase(
            LiftKind.REVERSED_IN_STAR, a.id, i,
            first, compose(sharp_lift, phi_i), zero_map(first.source, first.target, -1, 'θ'),
            {'F': f_lift, 'sharp': sharp_lift},
        ))

    for b in gs:
        i = b.target
        fi, si = bundles[i].image, bundles[i].sharp
        phi_i, phi_k = bundles[i].phi, bundle_k.phi
        betas = [beta for beta in algebra.base.arrows_from(i) if beta.target != k]

        target = shift(fk, 1, convention)
        entries = {(f'γ:{b.id}', 'top'): e(i), ('k1', f'h:{b.id}'): e(k)}
        entries.update({(f'w:{q.id}', f'[ab]:{q.id},{b.id}'): e(q.source) for q in qs})
        entries.update({(f'z:{q.id}', f'xy:{q.id},{b.id}'): e(q.source) for q in qs})
        f_lift = _lift(fi, target, entries, f"F(p{b.id}')", sign=-1)
        sharp_lift = _lift(si, shift(sk1, 1, convention), {(f'τ:{b.id}', 'top'): e(i), ('base', f'h~:{b.id}'): e(k)}, f"p{b.id}'#")
        first = compose(shift_map(phi_k, 1, convention), f_lift)
        cases.append(HomotopyCase(
            LiftKind.REVERSED_OUT, b.id, i,
            first, compose(sharp_lift, phi_i), zero_map(first.source, first.target, -1, 'θ'),
            {'F': f_lift, 'sharp': sharp_lift},
        ))

        target = shift(fi, 2, convention)
        entries = {(f'h:{b.id}', 'top'): e(k), ('base', f'γ:{b.id}'): e(i)}
        entries.update({(f'xy:{q.id},{b.id}', f'ρ:{q.id}'): e(q.source) for q in qs})
        f_lift = _lift(fk, target, entries, f"F(p{b.id}'*)", sign=-1)
        entries = {(f'h~:{b.id}', 'top'): e(k), ('base', f'τ:{b.id}'): e(i)}
        for q in qs:
            for beta in betas:
                entries[(f'β~:{beta.id}', f'ρ:{q.id}')] = _derivative(algebra, (q.id, b.id, beta.id))
        sharp_lift = _lift(sk1, shift(si, 2, convention), entries, f"p{b.id}'*#")
        first = compose(shift_map(phi_i, 2, convention), f_lift)
        cases.append(HomotopyCase(
            LiftKind.REVERSED_OUT_STAR, b.id, i,
            first, compose(sharp_lift, phi_k), zero_map(first.source, first.target, -1, 'θ'),
            {'F': f_lift, 'sharp': sharp_lift},
        ))

    return cases


def sharp_bundles(algebra: GinzburgPresentation, k: str, convention: SignConvention = None) -> Dict[str, SharpBundle]:
    table = ky_table(algebra, k)
    return {i: sharp_bundle(algebra, k, i, table, convention) for i in algebra.base.vertices}


def calibration_checks(algebra: GinzburgPresentation, k: str, convention: SignConvention) -> List[Check]:
    """ Every check whose outcome depends on the sign convention, for one algebra and mutation vertex. """
    checks = [check_dg_homomorphism(ky_table(algebra, k), convention)]
    for i in algebra.base.vertices:
        checks.append(check_maurer_cartan(simple_resolution(algebra, i), convention))
    bundles = sharp_bundles(algebra, k, convention)
    for bundle in bundles.values():
        checks += bundle.checks(convention)
    checks += [case.check(convention) for case in homotopy_cases(algebra, k, bundles, convention)]
    return checks


def select_sign_convention(algebra: GinzburgPresentation, k: str = None) -> SignConvention:
    """
    Runs the calibration checks under every candidate convention and returns the one that passes.

    Parameters:
        algebra (GinzburgPresentation): Calibration algebra, eg. the Ginzburg algebra of the 3-cycle.
        k (str): Mutation vertex.

    Raises:
        QuiverError: If no mutation vertex is given.
        QpsurfError: If no candidate or more than one candidate passes.
    """
    if k is None:
        raise QuiverError(f'{algebra}: a mutation vertex is required to calibrate signs')
    passing = []
    for convention in SignConvention:
        failed = [check for check in calibration_checks(algebra, k, convention) if not check.passed]
        _LOGGER.debug(f'Sign convention {convention}: {len(failed)} failed calibration checks')
        if not failed:
            passing.append(convention)
    if len(passing) != 1:
        raise QpsurfError(f'Sign calibration on {algebra} is ambiguous: passing conventions {[str(c) for c in passing]}')
    return passing[0]
