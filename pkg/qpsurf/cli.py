"""
Command line entry point.

Every subcommand prints a human readable summary, or a JSON document with `--json`. Exit codes: 0 on success, 1 when
a verification suite has a failed case, 2 on usage, fixture or input errors.
"""
import argparse
import json
import sys
from typing import List, Optional

from qpsurf import var
from qpsurf.algebra.ext_algebra import ext_algebra_of
from qpsurf.algebra.ginzburg import check_d_squared, ginzburg
from qpsurf.algebra.k_theory import CentralCharge, K0Lattice, TwistWord, all_pairs, braid_relation_check, twist_charge, word_matrix
from qpsurf.algebra.mutation import mutate
from qpsurf.algebra.transport import check_transport_homomorphism, parse_flip_path, path_transport, transport_fingerprint
from qpsurf.base.path_algebra import classify_qp, format_expr, qp_to_dict, write_qp
from qpsurf.support.errors import FixtureError, QpsurfError
from qpsurf.support.logs import project_logger, qpsurf_logs_initialize
from qpsurf.surface.exchange_graph import exchange_graph_bfs, to_dot, to_json
from qpsurf.surface.fixtures import load_qp, load_surface
from qpsurf.surface.triangulation import FlipDirection, qp_of_triangulation, write_triangulation
from qpsurf.verifier.verifier import SUITES, Verifier

_LOGGER = project_logger(__file__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _emit(args, data: dict, text: str):
    print(json.dumps(data, indent=2, sort_keys=True) if args.json else text)


def _fixture(args, option: str) -> str:
    """ The fixture named by `--<option>`, or by the positional name. """
    name = getattr(args, option, None) or args.name
    if not name:
        raise FixtureError(f'{args.command}: a fixture name or --{option} is required')
    return name


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f'must be non-negative, got {value}')
    return value


def cmd_surface(args) -> int:
    t = load_surface(args.name)
    quiver, potential = qp_of_triangulation(t)
    data = {
        'triangulation': t.to_dict(),
        'arcs': len(t.arcs),
        'decorations': len(t.triangles),
        'flippable': t.flippable_arcs(),
        'qp': qp_to_dict(quiver, potential),
    }
    text = '\n'.join([
        f'{args.name}: {len(t.arcs)} arcs, {len(t.triangles)} decorations, genus {t.genus}, boundary {[len(c) for c in t.boundary]}',
        *(f'  triangle {index}: {" ".join(sides)}' for index, sides in enumerate(t.triangles)),
        f'  flippable: {", ".join(t.flippable_arcs())}',
        f'  W = {potential}',
    ])
    _emit(args, data, text)
    return EXIT_OK


def cmd_qp(args) -> int:
    quiver, potential = load_qp(args.name)
    data = {**qp_to_dict(quiver, potential), 'class': str(classify_qp(quiver, potential))}
    text = '\n'.join([
        f'{args.name}: {len(quiver.vertices)} vertices, {len(quiver.arrows)} arrows, {classify_qp(quiver, potential)}',
        *(f'  {a.id}: {a.source} -> {a.target}' for a in quiver.arrows),
        f'  W = {potential}',
    ])
    _emit(args, data, text)
    return EXIT_OK


def cmd_mutate(args) -> int:
    name = _fixture(args, 'qp')
    quiver, potential = mutate(*load_qp(name), args.vertex)
    if args.output:
        write_qp(args.output, quiver, potential)
    text = '\n'.join([
        f'mu_{args.vertex}({name}): {len(quiver.arrows)} arrows',
        *(f'  {a.id}: {a.source} -> {a.target}' for a in quiver.arrows),
        f'  W = {potential}',
    ])
    _emit(args, qp_to_dict(quiver, potential), text)
    return EXIT_OK


def cmd_flip(args) -> int:
    t = load_surface(args.name).flip(args.arc, FlipDirection[args.direction])
    if args.output:
        write_triangulation(args.output, t)
    text = '\n'.join(f'  triangle {index}: {" ".join(sides)}' for index, sides in enumerate(t.triangles))
    _emit(args, t.to_dict(), f'{args.direction} flip of {args.arc} in {args.name}:\n{text}')
    return EXIT_OK


def cmd_ginzburg(args) -> int:
    algebra = ginzburg(*load_qp(args.name))
    check = check_d_squared(algebra)
    rules = {arrow.id: format_expr(algebra.rules[arrow.id]) for arrow in algebra.quiver.arrows}
    data = {'arrows': [{'id': a.id, 'src': a.source, 'tgt': a.target, 'degree': a.degree} for a in algebra.quiver.arrows], 'd': rules, 'd2': check.passed}
    text = '\n'.join([f'  d({arrow_id}) = {expr}' for arrow_id, expr in rules.items()] + [f'  d2 = 0: {check.passed}'])
    _emit(args, data, text)
    return EXIT_OK if check.passed else EXIT_FAILED


def cmd_verify(args) -> int:
    fixtures = list(args.fixtures or []) + [name for name in (args.qp, args.surface) if name]
    verifier = Verifier(
        fixtures or None, seed=args.seed, max_workers=args.workers, dump_matrices=args.dump_matrices,
        vertices=args.vertex, depth=args.depth, solve_homotopies=args.solve_homotopies,
    )
    suites = list(SUITES) if args.suite == 'all' else [args.suite]
    reports = [verifier.run_suite(suite) for suite in suites]
    if args.json:
        data = [report.to_dict() for report in reports]
        print(json.dumps(data[0] if len(data) == 1 else data, indent=2, sort_keys=True))
    else:
        for report in reports:
            print(report.summary())
            for case in report.cases:
                witness = f'  [{case.witness}]' if case.witness else ''
                print(f'  {case.status:<8} {case.fixture:<12} {case.operation}{witness}')
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAILED


def cmd_egraph(args) -> int:
    t0 = load_surface(args.name)
    fingerprint = transport_fingerprint(t0) if args.transport else None
    graph = exchange_graph_bfs(t0, args.depth, decorated=args.decorated or args.transport, fingerprint=fingerprint, max_workers=args.workers)
    output = to_json(graph) if args.format == 'json' else to_dot(graph)
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(output)
        _LOGGER.info(f'Exchange graph with {graph.number_of_nodes()} nodes written to {args.output!r}')
    else:
        sys.stdout.write(output)
    return EXIT_OK


def cmd_ext(args) -> int:
    t = load_surface(_fixture(args, 'surface'))
    if args.action == 'table':
        table = ext_algebra_of(t)
        text = '\n'.join([f'dims {table.dims()}', *(f'  {x} · {y} = {z}' for (x, y), z in sorted(table.products.items()))])
        _emit(args, table.to_dict(), text)
        return EXIT_OK

    transport = path_transport(t, parse_flip_path(args.path or ''))
    check = check_transport_homomorphism(transport)
    data = {**transport.to_dict(), 'homomorphism': check.passed, 'fingerprint': transport.fingerprint()}
    text = '\n'.join([f'{transport}, homomorphism: {check.passed}', *(f'  {k} -> {v}' for k, v in data['labels'].items())])
    _emit(args, data, text)
    return EXIT_OK if check.passed else EXIT_FAILED


def cmd_twist(args) -> int:
    lattice = K0Lattice.from_quiver(load_qp(args.qp)[0])
    if args.action == 'braid':
        checks = [braid_relation_check(lattice, i, j) for i, j in all_pairs(lattice)]
        data = {c.notes['pair']: {'relation': c.notes['relation'], 'braid': c.notes['braid'], 'commute': c.notes['commute'], 'passed': c.passed} for c in checks}
        text = '\n'.join(f'  {pair}: expected {d["relation"]}, braid {d["braid"]}, commute {d["commute"]}' for pair, d in data.items())
        _emit(args, data, text)
        return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED

    word = TwistWord.parse(args.word or '')
    matrix = word_matrix(lattice, word)
    images = {v: lattice.as_dict(matrix * lattice.simple(v)) for v in lattice.vertices}
    data = {'word': str(word.reduced()), 'matrix': [[int(x) for x in row] for row in matrix.tolist()], 'images': images}
    lines = [f'word {word.reduced() or "(empty)"}', *(f'  S_{v} -> {image}' for v, image in images.items())]
    if args.charge:
        charge = CentralCharge.read(lattice, args.charge)
        twisted = twist_charge(lattice, word, charge)
        data['charge'], data['twisted_charge'] = charge.to_dict(), twisted.to_dict()
        lines += [f'  Z({v}) = {charge.values[v]} -> {twisted.values[v]}' for v in lattice.vertices]
    _emit(args, data, '\n'.join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='Print a JSON document.')
    common.add_argument('--seed', type=int, default=var.SEED, help='Seed of randomized checks.')
    common.add_argument('--workers', type=int, default=var.MAX_WORKERS, help='Worker threads.')
    common.add_argument('--dump-matrices', action='store_true', help='Attach checked matrices to reports.')

    parser = argparse.ArgumentParser(prog='qpsurf', description='Quivers with potential of decorated surfaces, their mutations and Ginzburg dg algebras.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('surface', parents=[common], help='Describe a triangulation.')
    p.add_argument('name', help='Fixture name or triangulation JSON file.')
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser('qp', parents=[common], help='Describe a quiver with potential.')
    p.add_argument('name', help='Fixture name or QP JSON file.')
    p.set_defaults(func=cmd_qp)

    p = sub.add_parser('mutate', parents=[common], help='Mutate a quiver with potential.')
    p.add_argument('name', nargs='?', help='Fixture name or QP JSON file.')
    p.add_argument('--qp', help='Fixture name or QP JSON file, in place of the positional name.')
    p.add_argument('--vertex', required=True)
    p.add_argument('--output', help='Write the mutated QP to this file.')
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser('flip', parents=[common], help='Flip an arc of a triangulation.')
    p.add_argument('name')
    p.add_argument('--arc', required=True)
    p.add_argument('--direction', default='forward', choices=FlipDirection.values())
    p.add_argument('--output', help='Write the flipped triangulation to this file.')
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser('ginzburg', parents=[common], help='Print the Ginzburg differential and check d2 = 0.')
    p.add_argument('name')
    p.set_defaults(func=cmd_ginzburg)

    p = sub.add_parser('verify', parents=[common], help='Run a verification suite.')
    p.add_argument('suite', help=f'One of {", ".join(SUITES)}, or all.')
    p.add_argument('--fixtures', nargs='+', help='Fixture names or files, "builtin" for the builtin set.')
    p.add_argument('--qp', help='A QP fixture to add to the fixtures.')
    p.add_argument('--surface', help='A triangulation fixture to add to the fixtures.')
    p.add_argument('--vertex', nargs='+', help='Mutation vertices of the dg suites.')
    p.add_argument('--depth', type=_non_negative, help='Flip depth explored by flip-mutation.')
    p.add_argument('--solve-homotopies', action='store_true', help='Also search homotopies with the linear solver (slow, reported only).')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('egraph', parents=[common], help='Export the exchange graph around a triangulation.')
    p.add_argument('name')
    p.add_argument('--depth', type=_non_negative, default=3)
    p.add_argument('--format', choices=['dot', 'json'], default='dot')
    p.add_argument('--decorated', action='store_true', help='Distinguish decorations.')
    p.add_argument('--transport', action='store_true', help='Distinguish nodes by the transport along their path.')
    p.add_argument('--output')
    p.set_defaults(func=cmd_egraph)

    p = sub.add_parser('ext', parents=[common], help='Ext algebra tables and transports.')
    p.add_argument('action', choices=['table', 'transport'])
    p.add_argument('name', nargs='?', help='Fixture name or triangulation JSON file.')
    p.add_argument('--surface', help='Fixture name or triangulation JSON file, in place of the positional name.')
    p.add_argument('--path', help='Flip path such as "0-2+,3-6-".')
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser('twist', parents=[common], help='Spherical twists on the Grothendieck group.')
    p.add_argument('action', choices=['apply', 'braid'])
    p.add_argument('--qp', required=True)
    p.add_argument('--word', help='Twist word such as "1+,2-,1+".')
    p.add_argument('--charge', help='Central charge JSON {vertex: [re, im]}.')
    p.set_defaults(func=cmd_twist)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    qpsurf_logs_initialize()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QpsurfError as e:
        _LOGGER.error(f'{e.__class__.__name__}: {e}')
        return EXIT_USAGE
