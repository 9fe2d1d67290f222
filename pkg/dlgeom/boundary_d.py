"""
Geodesic ray descriptors in DL_d(q) and the constructions showing that the
boundary of DL_d(q), d > 2, is indiscrete.

A ray is a finite prefix path followed by a periodic stream of moves that
ascend one tree and descend another.
"""

import json
import logging
from dataclasses import dataclass, field
from math import lcm
from typing import Dict, List, Optional, Tuple

from . import periodic
from .dlgraph import DLVertex, GraphParams, Move, apply_move, check_move
from .errors import ParseError, PreconditionError
from .paths import Path, is_geodesic, parse_word
from .periodic import EventuallyPeriodic, rotate
from .trees import TreeVertex, tree_distance, tree_geodesic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RayDescriptor:
    """A prefix path followed forever by moves up_tree(labels[k])-down_tree."""
    prefix: Path
    up_tree: int
    labels: Tuple[int, ...]
    down_tree: int

    def __post_init__(self):
        object.__setattr__(self, 'labels', tuple(self.labels))
        if not self.labels:
            raise PreconditionError('eventual label word must be nonempty')
        for label in self.labels:
            check_move(Move(self.up_tree, label, self.down_tree), self.params)

    @property
    def params(self) -> GraphParams:
        return self.prefix.params

    @property
    def period(self) -> int:
        return len(self.labels)

    def move_at(self, t: int) -> Move:
        n = len(self.prefix)
        if t < n:
            return self.prefix.moves[t]
        return Move(self.up_tree, self.labels[(t - n) % self.period], self.down_tree)

    def truncate(self, n: int) -> Path:
        moves = self.prefix.moves[:n] + tuple(self.move_at(t) for t in range(len(self.prefix), n))
        return Path(self.prefix.base, moves, self.params)

    def vertices(self, n: int) -> List[DLVertex]:
        """The first n + 1 vertices of the ray."""
        out = list(self.prefix.vertices[:n + 1])
        t = len(out) - 1
        while t < n:
            out.append(apply_move(out[-1], self.move_at(t), self.params))
            t += 1
        return out

    def touched_trees(self) -> List[int]:
        """Trees with a nonempty projection."""
        trees = {self.up_tree, self.down_tree}
        for move in self.prefix.moves:
            trees.update((move.up_tree, move.down_tree))
        return sorted(trees)

    def relabel(self, mapping: Dict[int, int]) -> 'RayDescriptor':
        """Rename trees; the base vertex coordinates are permuted accordingly."""
        def move(m: Move) -> Move:
            return Move(mapping.get(m.up_tree, m.up_tree), m.up_label,
                        mapping.get(m.down_tree, m.down_tree))
        coords = list(self.prefix.base.coords)
        for a, b in mapping.items():
            coords[b] = self.prefix.base.coords[a]
        base = DLVertex(tuple(coords))
        prefix = Path(base, tuple(move(m) for m in self.prefix.moves), self.params)
        return RayDescriptor(prefix, mapping.get(self.up_tree, self.up_tree), self.labels,
                             mapping.get(self.down_tree, self.down_tree))

    def to_dict(self) -> Dict:
        return {'base': self.prefix.base.to_dict(),
                'prefix': self.prefix.word(),
                'eventual': {'up': self.up_tree, 'labels': list(self.labels),
                             'down': self.down_tree}}

    @classmethod
    def from_dict(cls, data: Dict, params: GraphParams) -> 'RayDescriptor':
        try:
            base_data = data.get('base')
            base = DLVertex.from_dict(base_data) if base_data is not None else params.origin()
            moves = parse_word(data.get('prefix', ''))
            eventual = data['eventual']
            up, labels, down = eventual['up'], eventual['labels'], eventual['down']
        except (KeyError, TypeError, AttributeError) as e:
            raise ParseError(f'invalid ray descriptor JSON: {data!r}') from e
        try:
            return cls(Path(base, moves, params), up, tuple(labels), down)
        except PreconditionError as e:
            raise ParseError(f'invalid ray descriptor: {e}') from e


def parse_descriptor(text: str, params: GraphParams) -> RayDescriptor:
    """Parse a descriptor given as inline JSON or as a path to a JSON file."""
    text = text.strip()
    if not text.startswith('{'):
        try:
            with open(text, 'r', encoding='utf-8') as f:
                text = f.read()
        except OSError as e:
            raise ParseError(f'cannot read ray descriptor {text!r}: {e}') from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f'invalid ray descriptor JSON: {e}') from e
    return RayDescriptor.from_dict(data, params)


@dataclass(frozen=True)
class TreeEnd:
    """Where a ray's projection to one tree goes."""
    tree: int
    kind: str  # 'constant', 'ascending' or 'descending'
    vertex: Optional[TreeVertex] = None
    labels: Optional[EventuallyPeriodic] = None

    def to_dict(self) -> Dict:
        out = {'tree': self.tree, 'kind': self.kind}
        if self.vertex is not None:
            out['vertex'] = self.vertex.to_dict()
        if self.labels is not None:
            out['labels'] = self.labels.to_dict()
        return out


def ends_of(r: RayDescriptor) -> List[TreeEnd]:
    """Per-tree limit of the ray; ascending ends are given by their label at every level."""
    last = r.prefix.end
    ends = []
    for i, x in enumerate(last.coords):
        if i == r.up_tree:
            labels = periodic.build(dict(x.branch), r.labels, x.height, r.params.q_of(i))
            ends.append(TreeEnd(i, 'ascending', labels=labels))
        elif i == r.down_tree:
            ends.append(TreeEnd(i, 'descending'))
        else:
            ends.append(TreeEnd(i, 'constant', vertex=x))
    return ends


def ray_toward_end(params: GraphParams, up: int, down: int,
                   end: EventuallyPeriodic) -> RayDescriptor:
    """The origin-based ray that descends in T_up until the end's lowest
    nonzero level, then climbs toward the end, with T_down compensating
    (label 0 while it climbs)."""
    lowest = end.lowest_lit()
    n = -lowest if lowest is not None and lowest < 0 else 0
    moves = [Move(down, 0, up) for _ in range(n)]
    start = max(end.start, -n)
    moves += [Move(up, end.value(level), down) for level in range(-n, start)]
    labels = rotate(end.tail, start - end.start)
    return RayDescriptor(Path(params.origin(), tuple(moves), params), up, labels, down)


@dataclass
class AsymptoticCertificate:
    """Per-tree distances between two rays, constant from merge_index over window steps."""
    merge_index: Optional[int]
    window: int
    distances: List[int] = field(default_factory=list)
    ok: bool = False

    @property
    def distance_bound(self) -> Optional[int]:
        """Upper bound on the DL distance between the rays beyond merge_index."""
        return sum(self.distances) if self.ok else None

    def to_dict(self) -> Dict:
        return {'merge_index': self.merge_index, 'window': self.window,
                'distances': list(self.distances), 'distance_bound': self.distance_bound,
                'ok': self.ok}

    @classmethod
    def from_dict(cls, data: Dict) -> 'AsymptoticCertificate':
        return cls(data['merge_index'], data['window'], list(data['distances']), data['ok'])


def certify_asymptotic(a: RayDescriptor, b: RayDescriptor,
                       search: Optional[int] = None) -> AsymptoticCertificate:
    """Look for an index beyond both prefixes from which every per-tree
    distance stays constant for two full common periods."""
    window = 2 * lcm(a.period, b.period)
    first = max(len(a.prefix), len(b.prefix))
    if search is None:
        search = 2 * (len(a.prefix) + len(b.prefix)) + 2 * window + 8
    horizon = first + search + window
    va, vb = a.vertices(horizon), b.vertices(horizon)
    d = a.params.d
    profile = [tuple(tree_distance(x.coords[i], y.coords[i]) for i in range(d))
               for x, y in zip(va, vb)]
    for t in range(first, first + search + 1):
        if all(profile[s] == profile[t] for s in range(t, t + window + 1)):
            return AsymptoticCertificate(t, window, list(profile[t]), True)
    logger.debug('no constant distance window found up to index %d', first + search)
    return AsymptoticCertificate(None, window, [], False)


def truncation_geodesic(r: RayDescriptor, cap: int) -> bool:
    """Whether the truncation of length cap is geodesic (hence all shorter ones)."""
    return is_geodesic(r.truncate(cap), cap=cap)


def _require_wide(params: GraphParams) -> None:
    if params.d <= 2:
        raise PreconditionError(f'this construction needs d > 2, got d={params.d}')


def tracking_ray(gamma: RayDescriptor) -> RayDescriptor:
    """An origin-based ray asymptotic to gamma that never touches the trees
    where gamma is eventually constant.

    The ray is not copied from gamma edge for edge. It is rebuilt from the
    origin toward gamma's ascending end, so its prefix generally differs
    from gamma's; only the pair of moving trees and the ends are shared.
    """
    params = gamma.params
    _require_wide(params)
    if (gamma.touched_trees() == sorted((gamma.up_tree, gamma.down_tree))
            and gamma.prefix.base == params.origin()):
        return gamma
    end = ends_of(gamma)[gamma.up_tree].labels
    return ray_toward_end(params, gamma.up_tree, gamma.down_tree, end)


def swap_projection(gamma: RayDescriptor, i: int, j: int) -> RayDescriptor:
    """gamma with the roles of T_i and T_j exchanged; T_i must be untouched
    and T_j one of the eventually moving trees."""
    params = gamma.params
    _require_wide(params)
    _check_swap(gamma, i, j)
    return gamma.relabel({i: j, j: i})


def _check_swap(gamma: RayDescriptor, i: int, j: int) -> None:
    d = gamma.params.d
    if not (0 <= i < d and 0 <= j < d) or i == j:
        raise PreconditionError(f'invalid tree pair ({i}, {j})')
    if i in gamma.touched_trees():
        raise PreconditionError(f'ray has a nonempty projection to T_{i}')
    if j not in (gamma.up_tree, gamma.down_tree):
        raise PreconditionError(f'ray has a finite projection to T_{j}')
    if gamma.prefix.base.coords[i] != gamma.prefix.base.coords[j]:
        raise PreconditionError(f'base coordinates of T_{i} and T_{j} differ')


def swap_witness(gamma: RayDescriptor, i: int, j: int, n: int) -> RayDescriptor:
    """A ray asymptotic to gamma that shares its first n moves with
    swap_projection(gamma, i, j).

    After the shared moves, T_j is walked to the vertex where gamma's T_j
    projection starts its final ascent (nothing to do when T_j descends),
    pairing each step with the swapped ray's other tree; from then on the
    witness moves in the same trees as gamma, toward gamma's ends.
    """
    tau = swap_projection(gamma, i, j)
    if n < len(gamma.prefix):
        raise PreconditionError(f'n={n} must reach past the prefix of length {len(gamma.prefix)}')
    params = gamma.params
    moves = list(tau.truncate(n).moves)
    if gamma.up_tree == j:
        bottom = _last_turn_vertex(gamma, j)
        walk = tree_geodesic(tau.prefix.base.coords[j], bottom)
        t = n
        for a, b in zip(walk, walk[1:]):
            copied = tau.move_at(t)
            if b.height < a.height:
                moves.append(Move(copied.up_tree, copied.up_label, j))
            else:
                moves.append(Move(j, b.label_at(a.height), copied.down_tree))
            t += 1
    prefix = Path(tau.prefix.base, tuple(moves), params)
    end = ends_of(gamma)[gamma.up_tree].labels
    return _continue_toward(prefix, gamma.up_tree, gamma.down_tree, end)


def _last_turn_vertex(gamma: RayDescriptor, tree: int):
    """The T_tree coordinate right after gamma's last descent in that tree."""
    position = gamma.prefix.base.coords[tree]
    for t, move in enumerate(gamma.prefix.moves):
        if move.down_tree == tree:
            position = gamma.prefix.vertices[t + 1].coords[tree]
    return position


def _continue_toward(prefix: Path, up: int, down: int, end: EventuallyPeriodic) -> RayDescriptor:
    """Extend prefix by climbing T_up toward the given end (descending T_down)."""
    x = prefix.end.coords[up]
    moves = list(prefix.moves)
    start = max(end.start, x.height)
    for level in range(x.height, start):
        moves.append(Move(up, end.value(level), down))
    labels = rotate(end.tail, start - end.start)
    return RayDescriptor(Path(prefix.base, tuple(moves), prefix.params), up, labels, down)


@dataclass
class NormalizedRay:
    ray: RayDescriptor
    tracked: RayDescriptor
    swaps: List[Tuple[int, int]]

    def to_dict(self) -> Dict:
        return {'ray': self.ray.to_dict(), 'tracked': self.tracked.to_dict(),
                'swaps': [list(s) for s in self.swaps]}


def normalize(gamma: RayDescriptor) -> NormalizedRay:
    """Track gamma, then swap projections until it ascends T_0 and descends T_1."""
    params = gamma.params
    _require_wide(params)
    tracked = tracking_ray(gamma)
    ray = tracked
    swaps = []

    def swap(i: int, j: int) -> None:
        nonlocal ray
        ray = swap_projection(ray, i, j)
        swaps.append((i, j))

    if ray.up_tree != 0:
        if ray.down_tree == 0:
            free = min(set(range(params.d)) - {ray.up_tree, ray.down_tree})
            swap(free, 0)
        swap(0, ray.up_tree)
    if ray.down_tree != 1:
        swap(1, ray.down_tree)
    logger.debug('normalized ray with swaps %s', swaps)
    return NormalizedRay(ray, tracked, swaps)


def is_normalized(gamma: RayDescriptor) -> bool:
    return (gamma.up_tree == 0 and gamma.down_tree == 1
            and gamma.touched_trees() == [0, 1]
            and gamma.prefix.base == gamma.params.origin())


def turn_index(gamma: RayDescriptor) -> int:
    """Number of moves before the final climb in the eventual up tree begins."""
    last = 0
    for t, move in enumerate(gamma.prefix.moves):
        if move.down_tree == gamma.up_tree:
            last = t + 1
    return last


@dataclass
class IndiscreteWitness:
    tau_n: RayDescriptor
    tau2_n: RayDescriptor
    prefix_len: int
    certificates: Dict[str, object]

    @property
    def ok(self) -> bool:
        return all(c.ok if isinstance(c, AsymptoticCertificate) else bool(c)
                   for c in self.certificates.values())

    def to_dict(self) -> Dict:
        certs = {k: (c.to_dict() if isinstance(c, AsymptoticCertificate) else c)
                 for k, c in self.certificates.items()}
        return {'tau_n': self.tau_n.to_dict(), 'tau2_n': self.tau2_n.to_dict(),
                'prefix_len': self.prefix_len, 'certificates': certs, 'ok': self.ok}


def shared_prefix_length(a: RayDescriptor, b: RayDescriptor, limit: int) -> int:
    t = 0
    while t < limit and a.move_at(t) == b.move_at(t):
        t += 1
    return t


def _indiscrete_ray(gamma: RayDescriptor, n: int) -> RayDescriptor:
    """n moves up T_2 and down T_1, then the T_0 walk to gamma's last turn.

    Every step of the T_0 walk is balanced in T_2, not in T_1, so T_1 stays
    at height -n for the whole walk.
    """
    params = gamma.params
    moves = [Move(2, 0, 1) for _ in range(n)]
    bottom = _last_turn_vertex(gamma, 0)
    walk = tree_geodesic(params.origin().coords[0], bottom)
    for a, b in zip(walk, walk[1:]):
        if b.height < a.height:
            moves.append(Move(2, 0, 0))
        else:
            moves.append(Move(0, b.label_at(a.height), 2))
    prefix = Path(params.origin(), tuple(moves), params)
    return _continue_toward(prefix, 0, 1, ends_of(gamma)[0].labels)


def indiscrete_witness(gamma: RayDescriptor, gamma2: RayDescriptor, n: int,
                       geodesic_cap: Optional[int] = None) -> IndiscreteWitness:
    """Rays tau_n ~ gamma and tau2_n ~ gamma2 that agree on their first n moves.

    Both rays first climb T_2 along label 0 while descending T_1, then walk
    T_0 down to where gamma (resp. gamma2) turns, climbing T_2 further, and
    finally follow gamma's ends in T_0 and T_1.
    """
    params = gamma.params
    _require_wide(params)
    if gamma2.params.d != params.d:
        raise PreconditionError('both rays must live in the same graph')
    if not is_normalized(gamma):
        gamma = normalize(gamma).ray
    if not is_normalized(gamma2):
        gamma2 = normalize(gamma2).ray
    needed = max(turn_index(gamma), turn_index(gamma2))
    if n <= needed:
        raise PreconditionError(f'n={n} must exceed the turn indices ({needed})')
    tau = _indiscrete_ray(gamma, n)
    tau2 = _indiscrete_ray(gamma2, n)
    horizon = max(len(tau.prefix), len(tau2.prefix)) + lcm(tau.period, tau2.period) + n
    certificates: Dict[str, object] = {
        'asymptotic': certify_asymptotic(tau, gamma),
        'asymptotic2': certify_asymptotic(tau2, gamma2),
        'shared_prefix': shared_prefix_length(tau, tau2, horizon) >= n,
    }
    if geodesic_cap is not None:
        certificates['geodesic'] = truncation_geodesic(tau, geodesic_cap)
        certificates['geodesic2'] = truncation_geodesic(tau2, geodesic_cap)
    prefix_len = shared_prefix_length(tau, tau2, horizon)
    logger.debug('indiscrete witness n=%d: shared prefix %d', n, prefix_len)
    return IndiscreteWitness(tau, tau2, prefix_len, certificates)
