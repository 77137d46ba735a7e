import json
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx

from qpsurf import var
from qpsurf.support.errors import QpsurfError
from qpsurf.support.logs import project_logger
from qpsurf.support.py_utils import execute_in_parallel, first_error
from qpsurf.surface.triangulation import DecoratedTriangulation, FlipDirection, canonical_form

_LOGGER = project_logger(__file__)

FlipPath = Tuple[Tuple[str, FlipDirection], ...]
Fingerprint = Callable[[DecoratedTriangulation, FlipPath], str]


def _node_id(t: DecoratedTriangulation, path: FlipPath, decorated: bool, fingerprint: Optional[Fingerprint]) -> str:
    node_id = canonical_form(t, decorated).hash
    if fingerprint is not None:
        node_id = f'{node_id}-{fingerprint(t, path)}'
    return node_id


def _expand(t: DecoratedTriangulation, path: FlipPath, decorated: bool, fingerprint: Optional[Fingerprint]) -> List[dict]:
    """ All flips out of one node; backward flips are recorded as forward edges into this node. """
    moves = []
    for arc in t.flippable_arcs():
        for direction in FlipDirection:
            child = t.flip(arc, direction)
            child_path = path + ((arc, direction),)
            flipping = t if direction == FlipDirection.FORWARD else child
            moves.append({
                'child': child,
                'path': child_path,
                'id': _node_id(child, child_path, decorated, fingerprint),
                'forward': direction == FlipDirection.FORWARD,
                'arc': canonical_form(flipping, decorated).arc_names[arc],
            })
    return moves


def exchange_graph_bfs(
        t0: DecoratedTriangulation,
        depth: int,
        decorated: bool = False,
        fingerprint: Fingerprint = None,
        max_workers: int = None,
) -> nx.MultiDiGraph:
    """
    Breadth-first search of the flip graph around a triangulation.

    Nodes are identified by canonical forms. Every explored flip contributes one forward edge labelled by the
    canonical name of the flipped arc in the node it leaves; flips in both directions are explored.

    Parameters:
        t0 (DecoratedTriangulation): The seed triangulation.
        depth (int): Number of flips explored from the seed.
        decorated (bool): Whether decorations distinguish nodes.
        fingerprint (callable, optional): Extra node identity computed from the triangulation and its flip path from
            the seed, eg. a transport fingerprint.
        max_workers (int, optional): Threads expanding each frontier, `QPSURF_MAX_WORKERS` by default.

    Returns:
        nx.MultiDiGraph: Nodes carry 'depth', 'triangulation' and 'path'; edges carry 'arc'.

    Raises:
        QpsurfError: If `depth` is negative.
    """
    if depth < 0:
        raise QpsurfError(f'Depth must be non-negative, got {depth}')

    graph = nx.MultiDiGraph(decorated=decorated)
    root = _node_id(t0, (), decorated, fingerprint)
    graph.add_node(root, depth=0, triangulation=t0, path=())
    frontier = [root]
    seen_edges = set()

    for level in range(1, depth + 1):
        requests = {
            node: {'args': [graph.nodes[node]['triangulation'], graph.nodes[node]['path'], decorated, fingerprint]}
            for node in frontier
        }
        results = execute_in_parallel(_expand, requests, max_workers=max_workers or var.MAX_WORKERS)
        error = first_error(results.values())
        if error is not None:
            raise error

        next_frontier = []
        for node in frontier:
            for move in results[node]:
                child = move['id']
                if child not in graph:
                    graph.add_node(child, depth=level, triangulation=move['child'], path=move['path'])
                    next_frontier.append(child)
                source, target = (node, child) if move['forward'] else (child, node)
                key = (source, target, move['arc'])
                if key not in seen_edges:
                    seen_edges.add(key)
                    graph.add_edge(source, target, arc=move['arc'])
        _LOGGER.debug(f'Exchange graph depth {level}: {graph.number_of_nodes()} nodes, {graph.number_of_edges()} edges')
        frontier = next_frontier
        if not frontier:
            break

    return graph


def to_dot(graph: nx.MultiDiGraph, name: str = 'exchange_graph') -> str:
    lines = [f'digraph {name} {{']
    for node, data in graph.nodes(data=True):
        lines.append(f'  "{node}" [label="{node}\\ndepth {data["depth"]}"];')
    for source, target, data in graph.edges(data=True):
        lines.append(f'  "{source}" -> "{target}" [label="{data["arc"]}"];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def to_json_dict(graph: nx.MultiDiGraph) -> Dict:
    return {
        'decorated': graph.graph.get('decorated', False),
        'nodes': [
            {
                'id': node,
                'depth': data['depth'],
                'path': [f'{arc}{direction.symbol}' for arc, direction in data['path']],
                'triangulation': data['triangulation'].to_dict(),
            }
            for node, data in graph.nodes(data=True)
        ],
        'edges': [{'source': s, 'target': t, 'arc': data['arc']} for s, t, data in graph.edges(data=True)],
    }


def to_json(graph: nx.MultiDiGraph) -> str:
    return json.dumps(to_json_dict(graph), indent=2)
