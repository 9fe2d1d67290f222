"""
Typed paths in DL_d(q): projections, turns, rewriting and geodesic tests.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from .dlgraph import (DLVertex, GraphParams, Move, apply_move, ball_graph,
                      bfs_distance, check_move, descent_label, move_between,
                      parse_move, projection_lower_bound,
                      projection_upper_bound)
from .errors import CapExceededError, ParseError, PreconditionError
from .trees import TreeVertex, tree_geodesic

logger = logging.getLogger(__name__)

DEFAULT_GEODESIC_CAP = 14

TurnState = Tuple[Tuple[bool, ...], Tuple[int, ...]]


def parse_word(text: str) -> Tuple[Move, ...]:
    """Parse a whitespace-separated edge-type word such as "0(1)-1 2(0)-1"."""
    return tuple(parse_move(token) for token in text.split())


def format_word(moves) -> str:
    return ' '.join(m.to_text() for m in moves)


@dataclass(frozen=True)
class Path:
    """A base vertex and a sequence of edge types applied to it in order."""
    base: DLVertex
    moves: Tuple[Move, ...]
    params: GraphParams = field(compare=False)

    def __post_init__(self):
        if self.base.d != self.params.d:
            raise PreconditionError(f'base has {self.base.d} coordinates, expected {self.params.d}')
        object.__setattr__(self, 'moves', tuple(self.moves))
        for move in self.moves:
            check_move(move, self.params)

    @cached_property
    def vertices(self) -> Tuple[DLVertex, ...]:
        out = [self.base]
        for move in self.moves:
            out.append(apply_move(out[-1], move, self.params))
        return tuple(out)

    @property
    def end(self) -> DLVertex:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.moves)

    def truncate(self, n: int) -> 'Path':
        return Path(self.base, self.moves[:n], self.params)

    def with_moves(self, moves) -> 'Path':
        return Path(self.base, tuple(moves), self.params)

    def word(self) -> str:
        return format_word(self.moves)

    def to_dict(self) -> Dict:
        return {'base': self.base.to_dict(), 'moves': self.word()}

    @classmethod
    def from_dict(cls, data: Dict, params: GraphParams) -> 'Path':
        try:
            base = DLVertex.from_dict(data['base'])
            moves = parse_word(data.get('moves', ''))
        except (KeyError, TypeError) as e:
            raise ParseError(f'invalid path JSON: {data!r}') from e
        try:
            return cls(base, moves, params)
        except PreconditionError as e:
            raise ParseError(str(e)) from e


def project(p: Path, j: int) -> List[TreeVertex]:
    """The T_j coordinates along p, one per vertex."""
    if not 0 <= j < p.params.d:
        raise PreconditionError(f'tree index {j} out of range')
    return [v.coords[j] for v in p.vertices]


def initial_turn_state(d: int) -> TurnState:
    return (False,) * d, (0,) * d


def advance_turn_state(state: TurnState, move: Move) -> TurnState:
    """One step of the turn counter: a turn in T_i is a descent in T_i
    whose next T_i move is an ascent."""
    pending, counts = state
    pending = list(pending)
    counts = list(counts)
    if pending[move.up_tree]:
        counts[move.up_tree] += 1
    pending[move.up_tree] = False
    pending[move.down_tree] = True
    return tuple(pending), tuple(counts)


def turns_per_tree(p: Path) -> Tuple[int, ...]:
    state = initial_turn_state(p.params.d)
    for move in p.moves:
        state = advance_turn_state(state, move)
    return state[1]


def commute_adjacent(p: Path, idx: int) -> Optional[Path]:
    """Swap moves idx and idx+1 when their edge types commute, else None."""
    _check_index(p, idx)
    a, b = p.moves[idx], p.moves[idx + 1]
    if not moves_commute(a, b):
        return None
    moves = list(p.moves)
    moves[idx], moves[idx + 1] = b, a
    return p.with_moves(moves)


def moves_commute(a: Move, b: Move) -> bool:
    disjoint = len({a.up_tree, a.down_tree, b.up_tree, b.down_tree}) == 4
    shared_down = a.down_tree == b.down_tree and a.up_tree != b.up_tree
    return disjoint or shared_down


def shorten_at(p: Path, idx: int) -> Optional[Path]:
    """Replace moves idx, idx+1 by a single move (or drop a full backtrack).

    Patterns: (i(a)-j)(k(b)-i) becomes (k(b)-j); (j(a)-i)(i(b')-k) with b'
    equal to the label descended in T_i becomes (j(a)-k). When the
    replacement would ascend and descend in the same tree the pair is a
    backtrack and is removed.
    """
    _check_index(p, idx)
    first, second = p.moves[idx], p.moves[idx + 1]
    before = p.moves[:idx]
    after = p.moves[idx + 2:]
    descended = descent_label(p.vertices[idx], first)

    if second.down_tree == first.up_tree:
        if second.up_tree != first.down_tree:
            return p.with_moves(before + (Move(second.up_tree, second.up_label, first.down_tree),) + after)
        if second.up_label == descended:
            return p.with_moves(before + after)
        return None

    if second.up_tree == first.down_tree and second.up_label == descended:
        if first.up_tree == second.down_tree:
            return p.with_moves(before + after)
        return p.with_moves(before + (Move(first.up_tree, first.up_label, second.down_tree),) + after)
    return None


def _check_index(p: Path, idx: int) -> None:
    if not 0 <= idx < len(p) - 1:
        raise PreconditionError(f'index {idx} out of range for a path of length {len(p)}')


def reducible_pairs(p: Path) -> List[Tuple[int, int]]:
    """Pairs (t, s): move t descends T_i along label b, move s ascends T_i
    along b, and no move strictly between them touches T_i."""
    last_touch: Dict[int, int] = {}
    found = []
    for s, move in enumerate(p.moves):
        i = move.up_tree
        t = last_touch.get(i)
        if t is not None and p.moves[t].down_tree == i:
            if descent_label(p.vertices[t], p.moves[t]) == move.up_label:
                found.append((t, s))
        last_touch[move.up_tree] = s
        last_touch[move.down_tree] = s
    return found


def shorten_pass(p: Path) -> Path:
    """Remove every descent/same-edge-ascent pattern by commuting and shortening."""
    passes = 0
    while True:
        instances = reducible_pairs(p)
        if not instances:
            logger.debug('shorten_pass finished after %d reductions, length %d', passes, len(p))
            return p
        t, s = instances[0]
        p = _reduce_instance(p, t, s)
        passes += 1


def _reduce_instance(p: Path, t: int, s: int) -> Path:
    rising = p.moves[s]
    blockers = [y for y in range(t + 1, s) if p.moves[y].up_tree == rising.down_tree]
    target = blockers[-1] + 1 if blockers else t + 1
    for idx in range(s - 1, target - 1, -1):
        swapped = commute_adjacent(p, idx)
        if swapped is None:
            raise AssertionError(f'cannot commute {p.moves[idx]} past {rising}')
        p = swapped
    shorter = shorten_at(p, target - 1)
    if shorter is None:
        raise AssertionError(f'no shortening at {target - 1} in {p.word()}')
    return shorter


def certifies_geodesic(p: Path) -> bool:
    """True when the projections alone prove p geodesic.

    Every move changes two tree coordinates by one edge, so the distance is at
    least max_i d_{T_i} and at least half of sum_i d_{T_i}.
    """
    lower = projection_lower_bound(p.base, p.end)
    half_sum = -(-projection_upper_bound(p.base, p.end) // 2)
    return max(lower, half_sum) == len(p)


def is_geodesic(p: Path, cap: int = DEFAULT_GEODESIC_CAP, use_bounds: bool = True) -> bool:
    """Whether p is a shortest path; the distance oracle is bidirectional BFS."""
    if len(p) > cap:
        raise CapExceededError('path length', cap)
    if not p.moves:
        return True
    if use_bounds and certifies_geodesic(p):
        return True
    return bfs_distance(p.base, p.end, p.params, radius_cap=len(p)) == len(p)


def enumerate_geodesics(v: DLVertex, w: DLVertex, params: GraphParams,
                        cap: int = DEFAULT_GEODESIC_CAP) -> List[Path]:
    """All geodesics from v to w, ordered by their edge-type words."""
    distance = bfs_distance(v, w, params, radius_cap=cap)
    if distance is None:
        raise CapExceededError('distance', cap)
    if distance == 0:
        return [Path(v, (), params)]
    graph = ball_graph(v, distance, params)
    found = []
    for nodes in nx.all_shortest_paths(graph, v, w):
        moves = tuple(move_between(a, b, params) for a, b in zip(nodes, nodes[1:]))
        found.append(Path(v, moves, params))
    found.sort(key=lambda path: path.word())
    logger.debug('%d geodesics of length %d from %s to %s', len(found), distance, v, w)
    return found


def geodesic_turn_profile(center: DLVertex, radius: int,
                          params: GraphParams) -> Dict[DLVertex, Set[Tuple[int, ...]]]:
    """For each vertex of the ball, the set of per-tree turn counts over all
    geodesics from center to it, propagated along the geodesic DAG."""
    graph = ball_graph(center, radius, params)
    dist = dict(graph.nodes(data='dist'))
    states: Dict[DLVertex, Set[TurnState]] = {center: {initial_turn_state(params.d)}}
    for x in sorted(graph.nodes, key=lambda y: dist[y]):
        if x == center:
            continue
        reached = set()
        for u in graph.neighbors(x):
            if dist[u] != dist[x] - 1:
                continue
            move = move_between(u, x, params)
            for state in states[u]:
                reached.add(advance_turn_state(state, move))
        states[x] = reached
    return {x: {counts for _, counts in s} for x, s in states.items()}


def two_turn_shortcut(i: int, k: int, l: int, tail: int,
                      params: GraphParams) -> Tuple[Path, Path]:
    """The two-turn ray prefix in DL_2(q) and its shortcut to vertex k + 2l.

    The long path descends k steps in T_i, climbs l steps off the end ray,
    then descends in T_i for l + tail more steps while climbing a new branch
    of the other tree. The short path reaches the same vertex as the long
    one does after k + 2l moves, following the other tree's geodesic.
    """
    if params.d != 2:
        raise PreconditionError('two-turn shortcuts live in DL_2(q)')
    if i not in (0, 1) or k < 1 or l < 1 or tail < 0:
        raise PreconditionError(f'invalid parameters i={i} k={k} l={l} tail={tail}')
    other = 1 - i
    origin = params.origin()
    moves = [Move(other, 0, i) for _ in range(k)]
    moves += [Move(i, 1 if n == 0 else 0, other) for n in range(l)]
    moves += [Move(other, 1 if n == 0 else 0, i) for n in range(l + tail)]
    long = Path(origin, tuple(moves), params)

    target = long.vertices[k + 2 * l]
    short_moves = []
    walk_from = origin.coords[other]
    walk_to = target.coords[other]
    walk = tree_geodesic(walk_from, walk_to)
    for a, b in zip(walk, walk[1:]):
        if b.height < a.height:
            short_moves.append(Move(i, 0, other))
        else:
            short_moves.append(Move(other, b.label_at(a.height), i))
    short = Path(origin, tuple(short_moves), params)
    if short.end != target:
        raise AssertionError('shortcut does not reach the two-turn vertex')
    logger.debug('two-turn shortcut k=%d l=%d: %d moves instead of %d', k, l, len(short), k + 2 * l)
    return long, short
