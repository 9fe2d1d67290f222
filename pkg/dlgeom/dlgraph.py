"""
Vertices, adjacency, balls and exact distances in DL_d(q).
"""

import json
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx

from .errors import ParseError, PreconditionError
from .trees import (ORIGIN, TreeVertex, parse_tree_vertex, predecessor,
                    successor, translate, tree_distance, tree_geodesic)

logger = logging.getLogger(__name__)

DEFAULT_RADIUS_CAP = 24


@dataclass(frozen=True)
class GraphParams:
    """Number of trees d and branching q (optionally per tree)."""
    d: int
    q: int
    branching: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.d < 2:
            raise PreconditionError(f'd must be at least 2, got {self.d}')
        if self.q < 2:
            raise PreconditionError(f'q must be at least 2, got {self.q}')
        if self.branching is not None:
            if len(self.branching) != self.d or min(self.branching) < 2:
                raise PreconditionError(f'invalid branching {self.branching} for d={self.d}')

    def q_of(self, tree: int) -> int:
        """Branching of tree T_i."""
        return self.branching[tree] if self.branching else self.q

    def origin(self) -> 'DLVertex':
        return DLVertex((ORIGIN,) * self.d)

    def degree(self) -> int:
        return sum(self.q_of(i) for i in range(self.d)) * (self.d - 1)


@dataclass(frozen=True)
class DLVertex:
    """A d-tuple of tree vertices whose heights sum to zero."""
    coords: Tuple[TreeVertex, ...]

    def __post_init__(self):
        if len(self.coords) < 2:
            raise PreconditionError('a DL vertex needs at least two coordinates')
        total = sum(x.height for x in self.coords)
        if total != 0:
            raise PreconditionError(f'heights sum to {total}, not 0')

    @classmethod
    def _raw(cls, coords: Tuple[TreeVertex, ...]) -> 'DLVertex':
        vertex = object.__new__(cls)
        object.__setattr__(vertex, 'coords', coords)
        return vertex

    @property
    def d(self) -> int:
        return len(self.coords)

    def heights(self) -> Tuple[int, ...]:
        return tuple(x.height for x in self.coords)

    def sort_key(self) -> Tuple[str, ...]:
        """Total order used wherever vertices are listed."""
        return tuple(x.to_text() for x in self.coords)

    def to_text(self) -> str:
        return '[' + ', '.join(x.to_text() for x in self.coords) + ']'

    def to_dict(self) -> List[Dict]:
        return [x.to_dict() for x in self.coords]

    @classmethod
    def from_dict(cls, data: List[Dict], q: Optional[int] = None) -> 'DLVertex':
        if not isinstance(data, list):
            raise ParseError(f'DL vertex JSON must be a list, got {data!r}')
        coords = tuple(TreeVertex.from_dict(item, q) for item in data)
        return _checked_vertex(coords)

    def __str__(self) -> str:
        return self.to_text()


def _checked_vertex(coords: Tuple[TreeVertex, ...]) -> DLVertex:
    try:
        return DLVertex(coords)
    except PreconditionError as e:
        raise ParseError(str(e)) from e


_TREE_GROUP_RE = re.compile(r'\([^()]*\)')
_VERTEX_TEXT_RE = re.compile(r'^\s*\[?\s*(\([^()]*\)\s*,?\s*)+\]?\s*$')


def parse_dl_vertex(text: str, params: GraphParams) -> DLVertex:
    """Parse a vertex given as "[(k; j:a, ...), ...]", as JSON, or as "o"."""
    text = text.strip()
    if text in ('o', 'origin'):
        return params.origin()
    if text.startswith('[{') or text.startswith('[ {'):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f'invalid vertex JSON: {e}') from e
        vertex = DLVertex.from_dict(data)
    else:
        if not _VERTEX_TEXT_RE.match(text):
            raise ParseError(f'invalid vertex: {text!r}')
        coords = tuple(parse_tree_vertex(group) for group in _TREE_GROUP_RE.findall(text))
        vertex = _checked_vertex(coords)
    _check_vertex_params(vertex, params)
    return vertex


def _check_vertex_params(v: DLVertex, params: GraphParams) -> None:
    if v.d != params.d:
        raise ParseError(f'vertex has {v.d} coordinates, expected {params.d}')
    for i, x in enumerate(v.coords):
        q = params.q_of(i)
        if any(label >= q for _, label in x.branch):
            raise ParseError(f'label out of range for q={q} in tree {i}: {x.to_text()}')


@dataclass(frozen=True)
class Move:
    """Edge type i(alpha)-j: ascend in T_i along label alpha, descend in T_j."""
    up_tree: int
    up_label: int
    down_tree: int

    def __post_init__(self):
        if self.up_tree == self.down_tree:
            raise PreconditionError(f'move ascends and descends in tree {self.up_tree}')
        if min(self.up_tree, self.down_tree, self.up_label) < 0:
            raise PreconditionError('move indices and labels are nonnegative')

    @classmethod
    def _raw(cls, up_tree: int, up_label: int, down_tree: int) -> 'Move':
        move = object.__new__(cls)
        object.__setattr__(move, 'up_tree', up_tree)
        object.__setattr__(move, 'up_label', up_label)
        object.__setattr__(move, 'down_tree', down_tree)
        return move

    def touches(self, tree: int) -> bool:
        return tree == self.up_tree or tree == self.down_tree

    def to_text(self) -> str:
        return f'{self.up_tree}({self.up_label})-{self.down_tree}'

    def __str__(self) -> str:
        return self.to_text()


_MOVE_RE = re.compile(r'^(\d+)\((\d+)\)-(\d+)$')


def parse_move(token: str) -> Move:
    match = _MOVE_RE.match(token)
    if not match:
        raise ParseError(f'invalid edge type {token!r}, expected i(a)-j')
    try:
        return Move(int(match.group(1)), int(match.group(2)), int(match.group(3)))
    except PreconditionError as e:
        raise ParseError(f'invalid edge type {token!r}: {e}') from e


def check_move(move: Move, params: GraphParams) -> None:
    if max(move.up_tree, move.down_tree) >= params.d:
        raise PreconditionError(f'{move} uses a tree outside 0..{params.d - 1}')
    if move.up_label >= params.q_of(move.up_tree):
        raise PreconditionError(f'{move} label out of range for q={params.q_of(move.up_tree)}')


def apply_move(v: DLVertex, move: Move, params: GraphParams) -> DLVertex:
    """The neighbor of v reached along the given edge type."""
    check_move(move, params)
    coords = list(v.coords)
    i, j = move.up_tree, move.down_tree
    coords[i] = successor(coords[i], move.up_label, params.q_of(i))
    coords[j] = predecessor(coords[j])
    return DLVertex._raw(tuple(coords))


def descent_label(v: DLVertex, move: Move) -> int:
    """Label of the edge the move descends along in its down tree."""
    x = v.coords[move.down_tree]
    return x.label_at(x.height - 1)


def neighbor_moves(v: DLVertex, params: GraphParams) -> Iterator[Tuple[Move, DLVertex]]:
    """All (edge type, neighbor) pairs of v, in a fixed order."""
    coords = v.coords
    downs = [predecessor(x) for x in coords]
    for i in range(params.d):
        q = params.q_of(i)
        for alpha in range(q):
            up = successor(coords[i], alpha, q)
            for j in range(params.d):
                if j == i:
                    continue
                new = list(coords)
                new[i] = up
                new[j] = downs[j]
                yield Move._raw(i, alpha, j), DLVertex._raw(tuple(new))


def neighbors(v: DLVertex, params: GraphParams) -> Set[DLVertex]:
    return {w for _, w in neighbor_moves(v, params)}


def move_between(v: DLVertex, w: DLVertex, params: GraphParams) -> Optional[Move]:
    """The unique edge type taking v to w, or None if they are not adjacent."""
    ups = [i for i in range(params.d) if w.coords[i].height == v.coords[i].height + 1]
    downs = [i for i in range(params.d) if w.coords[i].height == v.coords[i].height - 1]
    if len(ups) != 1 or len(downs) != 1:
        return None
    i, j = ups[0], downs[0]
    move = Move._raw(i, w.coords[i].label_at(v.coords[i].height), j)
    return move if apply_move(v, move, params) == w else None


def bfs_distance(v: DLVertex, w: DLVertex, params: GraphParams,
                 radius_cap: int = DEFAULT_RADIUS_CAP) -> Optional[int]:
    """Exact distance by bidirectional BFS, or None if it exceeds radius_cap."""
    if radius_cap < 0:
        raise PreconditionError('radius_cap must be nonnegative')
    if v == w:
        return 0
    seen = ({v: 0}, {w: 0})
    frontiers = ([v], [w])
    depth = [0, 0]
    while frontiers[0] and frontiers[1] and depth[0] + depth[1] < radius_cap:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = seen[side], seen[1 - side]
        depth[side] += 1
        layer = []
        for x in frontiers[side]:
            for _, y in neighbor_moves(x, params):
                if y in other:
                    return depth[side] + other[y]
                if y not in mine:
                    mine[y] = depth[side]
                    layer.append(y)
        frontiers = (layer, frontiers[1]) if side == 0 else (frontiers[0], layer)
    return None


def ball_graph(center: DLVertex, r: int, params: GraphParams) -> nx.Graph:
    """The ball of radius r as a graph; each node carries its distance as 'dist'."""
    if r < 0:
        raise PreconditionError('radius must be nonnegative')
    graph = nx.Graph()
    graph.add_node(center, dist=0)
    frontier = [center]
    for dist in range(1, r + 1):
        layer = []
        for x in frontier:
            for _, y in neighbor_moves(x, params):
                if y not in graph:
                    graph.add_node(y, dist=dist)
                    layer.append(y)
                graph.add_edge(x, y)
        frontier = layer
    # Edges among the outermost layer.
    for x in frontier:
        for _, y in neighbor_moves(x, params):
            if y in graph:
                graph.add_edge(x, y)
    logger.debug('ball of radius %d around %s: %d vertices, %d edges',
                 r, center, graph.number_of_nodes(), graph.number_of_edges())
    return graph


def ball(center: DLVertex, r: int, params: GraphParams) -> Dict[DLVertex, int]:
    """All vertices within distance r of center, with their exact distances."""
    graph = ball_graph(center, r, params)
    return dict(graph.nodes(data='dist'))


def sorted_vertices(distances: Dict[DLVertex, int]) -> List[DLVertex]:
    return sorted(distances, key=lambda x: (distances[x], x.sort_key()))


def to_dot(graph: nx.Graph) -> str:
    """Render a ball graph in DOT, one node per vertex labeled by its heights."""
    order = sorted(graph.nodes, key=lambda x: (graph.nodes[x]['dist'], x.sort_key()))
    index = {x: n for n, x in enumerate(order)}
    out = nx.Graph(name='ball')
    for x in order:
        heights = ','.join(str(h) for h in x.heights())
        out.add_node(f'v{index[x]}', label=f'"{heights}"', dist=str(graph.nodes[x]['dist']))
    edges = sorted(tuple(sorted((index[a], index[b]))) for a, b in graph.edges)
    out.add_edges_from((f'v{a}', f'v{b}') for a, b in edges)
    return nx.nx_pydot.to_pydot(out).to_string()


def projection_lower_bound(v: DLVertex, w: DLVertex) -> int:
    """max_i d_{T_i}(v_i, w_i)."""
    return max(tree_distance(a, b) for a, b in zip(v.coords, w.coords))


def projection_upper_bound(v: DLVertex, w: DLVertex) -> int:
    """sum_i d_{T_i}(v_i, w_i)."""
    return sum(tree_distance(a, b) for a, b in zip(v.coords, w.coords))


def translate_to_origin(x: DLVertex, v: DLVertex, params: GraphParams) -> DLVertex:
    """Image of x under the graph automorphism sending v to the origin."""
    return DLVertex._raw(tuple(translate(a, b, params.q_of(i))
                               for i, (a, b) in enumerate(zip(x.coords, v.coords))))


def upper_bound_path(v: DLVertex, w: DLVertex, params: GraphParams):
    """Path from v to w of length at most the sum of tree distances.

    Each tree other than a lowest-target tree T_k is walked along its tree
    geodesic while T_k compensates. T_k keeps to the ancestor ray of v_k when
    it has to climb below v_k's height and uses label 0 above it, so it ends
    on the geodesic from v_k to w_k and is finished with one more descent and
    ascent, compensated in another tree.
    """
    from .paths import Path

    d = params.d
    k = min(range(d), key=lambda i: (w.coords[i].height - v.coords[i].height, i))
    home = v.coords[k]
    moves: List[Move] = []
    current = v.coords[k]

    def climb_label(x: TreeVertex) -> int:
        return home.label_at(x.height) if x.height < home.height else 0

    for i in range(d):
        if i == k:
            continue
        walk = tree_geodesic(v.coords[i], w.coords[i])
        for a, b in zip(walk, walk[1:]):
            if b.height < a.height:
                label = climb_label(current)
                moves.append(Move(k, label, i))
                current = successor(current, label, params.q_of(k))
            else:
                moves.append(Move(i, b.label_at(a.height), k))
                current = predecessor(current)

    finish = tree_geodesic(current, w.coords[k])
    c = min(i for i in range(d) if i != k)
    for a, b in zip(finish, finish[1:]):
        if b.height < a.height:
            moves.append(Move(c, 0, k))
        else:
            moves.append(Move(k, b.label_at(a.height), c))
    return Path(v, tuple(moves), params)
