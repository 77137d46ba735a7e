from typing import Dict, Mapping

from qpsurf.base.path_algebra import Arrow, Path, PathExpr, Potential, Quiver, cyclic_derivative, path_degree
from qpsurf.base.report import Check
from qpsurf.support.errors import QuiverError
from qpsurf.support.logs import project_logger

_LOGGER = project_logger(__file__)


def star(arrow_id: str) -> str:
    return f'{arrow_id}*'


def vertex_star(vertex: str) -> str:
    return f'e_{vertex}*'


def doubled_quiver(quiver: Quiver) -> Quiver:
    """ The graded quiver with `a` in degree 0, `a*: t(a) -> s(a)` in degree -1 and a loop `e_v*` in degree -2 at every vertex. """
    arrows = list(quiver.arrows)
    arrows += [Arrow(star(a.id), a.target, a.source, -1) for a in quiver.arrows]
    arrows += [Arrow(vertex_star(v), v, v, -2) for v in quiver.vertices]
    return Quiver(quiver.vertices, arrows, allow_loops=True, allow_two_cycles=True)


class GinzburgPresentation:
    """
    The Ginzburg dg algebra of a quiver with potential, presented by its doubled quiver and the differential on arrows.

    Attributes:
        base (Quiver): The quiver the potential lives on.
        potential (Potential): The potential.
        quiver (Quiver): The doubled graded quiver.
        rules (dict[str, PathExpr]): Differential of every arrow of the doubled quiver.

    Note:
        - `d(a) = 0`, `d(a*) = ∂_a W` and `d(e_v*) = Σ_{s(a)=v} a·a* - Σ_{t(a)=v} a*·a`.
        - The differential extends by the Leibniz rule with the sign `(-1)^|x|` past a factor `x`.
    """

    def __init__(self, base: Quiver, potential: Potential, overrides: Mapping[str, PathExpr] = None):
        self.base = base
        self.potential = potential
        self.quiver = doubled_quiver(base)
        self.rules: Dict[str, PathExpr] = {}

        for arrow in base.arrows:
            self.rules[arrow.id] = PathExpr.zero(self.quiver)
            self.rules[star(arrow.id)] = self.lift(cyclic_derivative(potential, arrow.id))

        for vertex in base.vertices:
            expr = PathExpr.zero(self.quiver)
            for arrow in base.arrows_from(vertex):
                expr = expr + PathExpr.word(self.quiver, (arrow.id, star(arrow.id)))
            for arrow in base.arrows_to(vertex):
                expr = expr - PathExpr.word(self.quiver, (star(arrow.id), arrow.id))
            self.rules[vertex_star(vertex)] = expr

        for arrow_id, expr in (overrides or {}).items():
            if arrow_id not in self.rules:
                raise QuiverError(f'{self}: no rule for unknown arrow {arrow_id!r}')
            self.rules[arrow_id] = self.lift(expr)

        self._cache: Dict[Path, PathExpr] = {}

    def __repr__(self):
        return f'GinzburgPresentation({len(self.base.vertices)} vertices, {len(self.base.arrows)} arrows)'

    def lift(self, expr: PathExpr) -> PathExpr:
        """ The same combination of paths, read in the doubled quiver. """
        return PathExpr(self.quiver, expr.terms)

    def with_rule(self, arrow_id: str, expr: PathExpr) -> 'GinzburgPresentation':
        """ A copy whose differential is replaced on one arrow, for negative controls. """
        overrides = {a: e for a, e in self.rules.items()}
        overrides[arrow_id] = expr
        return GinzburgPresentation(self.base, self.potential, overrides)

    def generator(self, arrow_id: str, coefficient=1) -> PathExpr:
        return PathExpr.arrow(self.quiver, arrow_id, coefficient)

    def e(self, vertex: str) -> PathExpr:
        return PathExpr.trivial(self.quiver, vertex)

    def _d_path(self, path: Path) -> PathExpr:
        if path in self._cache:
            return self._cache[path]
        result = PathExpr.zero(self.quiver)
        prefix = PathExpr.trivial(self.quiver, path.start)
        degree = 0
        for i, arrow_id in enumerate(path.arrows):
            rule = self.rules[arrow_id]
            if not rule.is_zero():
                suffix = path.arrows[i + 1:]
                term = prefix * rule
                if suffix:
                    term = term * PathExpr(self.quiver, {Path(self.quiver.arrow(suffix[0]).source, suffix): 1})
                result = result + term.scale((-1) ** (degree % 2))
            prefix = prefix * PathExpr.arrow(self.quiver, arrow_id)
            degree += self.quiver.arrow(arrow_id).degree
        self._cache[path] = result
        return result

    def d(self, expr: PathExpr) -> PathExpr:
        result = PathExpr.zero(self.quiver)
        for path, coefficient in expr.terms.items():
            result = result + self._d_path(path).scale(coefficient)
        return result


def ginzburg(quiver: Quiver, potential: Potential) -> GinzburgPresentation:
    return GinzburgPresentation(quiver, potential)


def check_d_squared(algebra: GinzburgPresentation) -> Check:
    """
    Expands `d(d(x))` on every arrow of the doubled quiver and checks it vanishes; also checks `d` raises degrees by one.
    """
    check = Check('d2')
    for arrow in algebra.quiver.arrows:
        image = algebra.rules[arrow.id]
        for path in image.terms:
            if path_degree(algebra.quiver, path) != arrow.degree + 1:
                check.fail(f'deg d({arrow.id})', image)
                break
        residual = algebra.d(image)
        if not residual.is_zero():
            check.fail(f'd2({arrow.id})', residual)
    return check
