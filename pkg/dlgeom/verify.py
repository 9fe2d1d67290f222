"""
Seeded property suites, one per acceptance criterion.

Every suite draws its randomness from random.Random(f'{seed}:{name}') so
suites are reproducible and independent of each other and of run order.
"""

import logging
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from . import periodic
from .boundary2 import (BoundaryPoint, act, basis_membership, class_cover, classify,
                        dynamics_report, non_hausdorff_witness, power_infinity,
                        separation_witness)
from .boundary_d import RayDescriptor, indiscrete_witness
from .dlgraph import (GraphParams, Move, ball, bfs_distance, neighbor_moves,
                      projection_lower_bound, projection_upper_bound, sorted_vertices,
                      translate_to_origin, upper_bound_path)
from .errors import PreconditionError
from .lamplighter import (IDENTITY, LampStand, a_k, cayley_ball, eval_word, exp_t, inverse,
                          multiply, order, params_for, to_vertex)
from .paths import (Path, commute_adjacent, geodesic_turn_profile, is_geodesic,
                    reducible_pairs, shorten_at, shorten_pass, two_turn_shortcut)

logger = logging.getLogger(__name__)

SAMPLE_WORDS = ('t^3 (at) t^-2 (at)^-2 t^-1', '(at)^2 t (at) t^-5')

SCALE_SIZES = {
    'smoke': {
        'cayley_radius': {2: 3, 3: 2},
        'sandwich_dl2': 2, 'sandwich_dl3': 2, 'sandwich_samples': 20, 'sandwich_all_pairs': False,
        'turn_balls': [(2, 2, 4), (2, 3, 3), (3, 2, 3)],
        'two_turn_max': 2,
        'rewrite_paths': 50, 'rewrite_length': 8,
        'algebra_triples': 50, 'algebra_orders': 30,
        'action_points': 30,
        'dynamics_cases': 10, 'dynamics_n': 8,
        'separation_pairs': 20, 'nonhausdorff_k': 4,
        'indiscrete_pairs': 3, 'ray_cap': 8,
    },
    'desk': {
        'cayley_radius': {2: 6, 3: 5},
        'sandwich_dl2': 5, 'sandwich_dl3': 4, 'sandwich_all_pairs': True,
        'turn_balls': [(2, 2, 8), (2, 3, 6), (3, 2, 6)],
        'two_turn_max': 4,
        'rewrite_paths': 1000, 'rewrite_length': 12,
        'algebra_triples': 500, 'algebra_orders': 200,
        'action_points': 200,
        'dynamics_cases': 50, 'dynamics_n': 15,
        'separation_pairs': 100, 'nonhausdorff_k': 8,
        'indiscrete_pairs': 20, 'ray_cap': 12,
    },
}


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    failures: List[Dict] = field(default_factory=list)
    wall_time: Optional[float] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **details) -> None:
        """Count one case; keep its details when it fails."""
        self.cases += 1
        if not ok:
            self.failures.append(details)

    def to_dict(self) -> Dict:
        out = {'suite': self.suite, 'cases': self.cases, 'ok': self.ok,
               'failures': self.failures}
        if self.wall_time is not None:
            out['wall_time'] = round(self.wall_time, 3)
        return out

    @classmethod
    def from_dict(cls, data: Dict) -> 'SuiteReport':
        return cls(data['suite'], data['cases'], list(data['failures']), data.get('wall_time'))


SuiteFunc = Callable[[SuiteReport, random.Random, Dict], None]
SUITES: Dict[str, SuiteFunc] = {}


def suite(name: str):
    def register(func: SuiteFunc) -> SuiteFunc:
        SUITES[name] = func
        return func
    return register


def random_element(rng: random.Random, q: int, span: int = 4, pos: Optional[int] = None) -> LampStand:
    states = {p: rng.randrange(q) for p in range(-span, span + 1) if rng.random() < 0.4}
    if pos is None:
        pos = rng.randint(-span, span)
    return LampStand.from_states(states, pos, q)


def random_point(rng: random.Random, q: int, side: Optional[int] = None,
                 unturned: bool = False) -> BoundaryPoint:
    """A random boundary point; unturned keeps it in C_0 of its side."""
    if side is None:
        side = rng.randrange(2)
    lo = rng.randint(0, 3) if unturned else rng.randint(-5, 3)
    width = rng.randint(0, 4)
    head = {u: rng.randrange(q) for u in range(lo, lo + width)}
    if rng.random() < 0.5:
        tail = (0,)
    else:
        tail = tuple(rng.randrange(q) for _ in range(rng.randint(1, 3)))
    return BoundaryPoint(side, periodic.build(head, tail, lo + width, q))


def random_normalized_ray(rng: random.Random, params: GraphParams) -> RayDescriptor:
    """Origin-based ray that descends T_0 for a while, then climbs T_0 and descends T_1."""
    q = params.q
    descents = rng.randint(0, 3)
    moves = [Move(1, 0, 0) for _ in range(descents)]
    climbs = rng.randint(1 if descents else 0, 2)
    for t in range(climbs):
        label = rng.randrange(1, q) if t == 0 and descents else rng.randrange(q)
        moves.append(Move(0, label, 1))
    labels = tuple(rng.randrange(q) for _ in range(rng.randint(1, 2)))
    return RayDescriptor(Path(params.origin(), tuple(moves), params), 0, labels, 1)


@suite('cayley_consistency')
def _cayley_consistency(report: SuiteReport, rng: random.Random, sizes: Dict) -> None:
    for q, radius in sizes['cayley_radius'].items():
        distances = ball(params_for(q).origin(), radius, params_for(q))
        lengths = cayley_ball(radius, q)
        report.record(len(distances) == len(lengths), q=q, radius=radius,
                      ball=len(distances), cayley=len(lengths))
        for g, length in lengths.items():
            found = distances.get(to_vertex(g, q))
            report.record(found == length, q=q, g=g.to_dict(), bfs=found, word=length)


@suite('distance_sandwich')
def _distance_sandwich(report: SuiteReport, rng: random.Random, sizes: Dict) -> None:
    def check(v, w, params, dist):
        lower = projection_lower_bound(v, w)
        upper = projection_upper_bound(v, w)
        path = upper_bound_path(v, w, params)
        ok = (dist is not None and lower <= dist <= upper
              and path.base == v and path.end == w and len(path) <= upper)
        report.record(ok, d=params.d, v=v.to_text(), w=w.to_text(), dist=dist,
                      lower=lower, upper=upper, path=len(path))

    params = GraphParams(2, 2)
    r = sizes['sandwich_dl2']
    vertices = sorted_vertices(ball(params.origin(), r, params))
    from_origin = ball(params.origin(), 2 * r, params)
    for v in vertices:
        for w in vertices:
            check(v, w, params, from_origin.get(translate_to_origin(w, v, params)))

    params = GraphParams(3, 2)
    r = sizes['sandwich_dl3']
    vertices = sorted_vertices(ball(params.origin(), r, params))
    if sizes['sandwich_all_pairs']:
        # (v, w) and (o, translate_to_origin(w, v)) have the same distance and bounds
        targets = {translate_to_origin(w, v, params) for v in vertices for w in vertices}
        logger.debug('DL_3 sandwich: %d pairs reduce to %d targets', len(vertices) ** 2, len(targets))
        from_origin = ball(params.origin(), 2 * r, params)
        origin = params.origin()
        for w in sorted(targets, key=lambda x: (from_origin.get(x, 2 * r + 1), x.sort_key())):
            check(origin, w, params, from_origin.get(w))
        return
    for _ in range(sizes['sandwich_samples']):
        v, w = rng.choice(vertices), rng.choice(vertices)
        moved = translate_to_origin(w, v, params)
        check(v, w, params, bfs_distance(params.origin(), moved, params, radius_cap=2 * r))


@suite('turn_theorem')
def _turn_theorem(report: SuiteReport, rng: random.Random, sizes: Dict) -> None:
    for d, q, radius in sizes['turn_balls']:
        params = GraphParams(d, q)
        profile = geodesic_turn_profile(params.origin(), radius, params)
        for v in sorted(profile, key=lambda x: x.sort_key()):
            for counts in sorted(profile[v]):
                ok = max(counts) <= 1 and (d != 2 or sum(counts) <= 2)
                report.record(ok, d=d, q=q, v=v.to_text(), turns=list(counts))


@suite('two_turn_rays')
def _two_turn_rays(report: SuiteReport, rng: random.Random, sizes: Dict) -> None:
    params = GraphParams(2, 2)
    top = sizes['two_turn_max']
    for i in (0, 1):
        for k in range(1, top + 1):
            for l in range(1, top + 1):
                long, short = two_turn_shortcut(i, k, l, 1, params)
                expected = max(k, 2 * l - k)
                dist = bfs_distance(params.origin(), short.end, params, radius_cap=k + 2 * l)
                extended = long.truncate(k + 2 * l + 1)
                ok = (len(short) == expected < k + 2 * l and dist == expected
                      and not is_geodesic(extended, cap=len(extended)))
                report.record(ok, i=i, k=k, l=l, shortcut=len(short), dist=dist)


@suite('rewriting')
def _rewriting(report: SuiteReport, rng: random.Random, sizes: Dict) -> None:
    params = GraphParams(4, 2)
    for _ in range(sizes['rewrite_paths']):
        v = params.origin()
        moves = []
        for _ in range(rng.randint(0, sizes['rewrite_length'])):
            move, v = rng.choice(list(neighbor_moves(v, params)))
            moves.append(move)
        p = Path(params.origin(), tuple(moves), params)
        ok = True
        for idx in range(len(p) - 1):
            swapped = commute_adjacent(p, idx)
            if swapped is not None:
                ok = ok and swapped.end == p.end and len(swapped) == len(p)
            shorter = shorten_at(p, idx)
            if shorter is not None:
                ok = ok and shorter.end == p.end and len(p) - len(shorter) in (1, 2)
        reduced = shorten_pass(p)
        ok = ok and reduced.end == p.end and len(reduced) <= len(p) and not reducible_pairs(reduced)
        report.record(ok, word=p.word(), reduced=reduced.word())


@suite('lamplighter_algebra')
def _lamplighter_algebra(report: SuiteReport, rng: random.Random, sizes: Dict) -> None:
    sample = LampStand.from_states({0: 1, 1: 1, 3: 1}, -1, 2)
    for word in SAMPLE_WORDS:
        report.record(eval_word(word, 2) == sample, word=word, got=eval_word(word, 2).to_dict())
    for _ in range(sizes['algebra_triples']):
        q = rng.choice((2, 3, 4))
        g, h, k = (random_element(rng, q) for _ in range(3))
        ok = (multiply(multiply(g, h, q), k, q) == multiply(g, multiply(h, k, q), q)
              and multiply(g, inverse(g, q), q) == IDENTITY
              and multiply(inverse(g, q), g, q) == IDENTITY
              and exp_t(multiply(g, h, q)) == exp_t(g) + exp_t(h))
        report.record(ok, q=q, g=g.to_dict(), h=h.to_dict(), k=k.to_dict())
    for n in range(sizes['algebra_orders']):
        g = random_element(rng, 2, pos=0 if n % 2 else None)
        value = order(g, 2)
        if exp_t(g) != 0:
            ok = value == math.inf
        else:
            ok = value == (1 if g == IDENTITY else 2) and multiply(g, g, 2) == IDENTITY
        report.record(ok, g=g.to_dict(), order=str(value))


def _shift_lamps(lamps: Dict[int, int], step: int) -> Dict[int, int]:
    return {p + step: s for p, s in lamps.items()}


def _toggle_origin(lamps: Dict[int, int], delta: int, q: int) -> Dict[int, int]:
    out = dict(lamps)
    out[0] = (out.get(0, 0) + delta) % q
    return out


# Generators acting on raw lamp dictionaries in real positions, on either side.
GENERATOR_RULES = {
    't': lambda lamps, q: _shift_lamps(lamps, 1),
    't^-1': lambda lamps, q: _shift_lamps(lamps, -1),
    '(at)': lambda lamps, q: _toggle_origin(_shift_lamps(lamps, 1), 1, q),
    '(at)^-1': lambda lamps, q: _shift_lamps(_toggle_origin(lamps, -1, q), -1),
}


@suite('boundary_action')
def _boundary_action(report: SuiteReport, rng: random.Random, sizes: Dict) -> None:
    window = range(-12, 13)
    for q in (2, 3):
        for _ in range(sizes['action_points']):
            x = random_point(rng, q)
            raw = {p: x.lamp(p) for p in range(-14, 15)}
            for word, rule in GENERATOR_RULES.items():
                y = act(eval_word(word, q), x, q)
                expected = rule(raw, q)
                ok = y.side == x.side and all(y.lamp(p) == expected.get(p, 0) for p in window)
                report.record(ok, q=q, generator=word, x=x.to_dict())
    q = 2
    for _ in range(sizes['action_points']):
        x = random_point(rng, q)
        k = rng.randint(-6, 6)
        y = act(a_k(k, q), x, q)
        report.record(all((y.lamp(p) != x.lamp(p)) == (p == k) for p in window),
                      k=k, x=x.to_dict())
        g, h = random_element(rng, q), random_element(rng, q)
        ok = (act(g, act(h, x, q), q) == act(multiply(g, h, q), x, q)
              and act(IDENTITY, x, q) == x)
        report.record(ok, g=g.to_dict(), h=h.to_dict(), x=x.to_dict())
        index = classify(x)
        if index.side == 0 and index.n > 1:
            shifted = classify(act(eval_word('t', q), x, q))
            report.record(shifted.side == 0 and shifted.n == index.n - 1, x=x.to_dict())


@suite('dynamics')
def _dynamics(report: SuiteReport, rng: random.Random, sizes: Dict) -> None:
    q = 2
    done = 0
    while done < sizes['dynamics_cases']:
        g = random_element(rng, q)
        if exp_t(g) == 0:
            x = random_point(rng, q)
            report.record(act(g, act(g, x, q), q) == x, g=g.to_dict(), x=x.to_dict())
            continue
        x = random_point(rng, q, side=power_infinity(g, q).side)
        rows = dynamics_report(g, x, sizes['dynamics_n'], q)
        report.record(all(row.holds for row in rows), g=g.to_dict(), x=x.to_dict(),
                      rows=[row.to_dict() for row in rows if not row.holds])
        done += 1


@suite('separation')
def _separation(report: SuiteReport, rng: random.Random, sizes: Dict) -> None:
    q = 2
    for _ in range(sizes['separation_pairs']):
        x, y = random_point(rng, q), random_point(rng, q)
        if x == y:
            continue
        witness = separation_witness(x, y)
        ok = not basis_membership(y, x, witness.k) and not basis_membership(x, y, witness.k)
        if witness.clopen is not None:
            cover = class_cover(witness.clopen, q)
            ok = (ok and any(basis_membership(x, c, k) for c, k in cover)
                  and not any(basis_membership(y, c, k) for c, k in cover))
        report.record(ok, x=x.to_dict(), y=y.to_dict(), witness=witness.to_dict())

    for _ in range(sizes['separation_pairs']):
        side = rng.randrange(2)
        x = random_point(rng, q, side=side, unturned=True)
        y = random_point(rng, q, side=side, unturned=True)
        if x == y:
            continue
        for k in range(sizes['nonhausdorff_k'] + 1):
            z = non_hausdorff_witness(x, y, k, q)
            ok = (basis_membership(z, x, k) and basis_membership(z, y, k)
                  and classify(z).side == 1 - side and classify(z).n >= k)
            report.record(ok, x=x.to_dict(), y=y.to_dict(), k=k, z=z.to_dict())


@suite('indiscrete')
def _indiscrete(report: SuiteReport, rng: random.Random, sizes: Dict) -> None:
    params = GraphParams(3, 2)
    for _ in range(sizes['indiscrete_pairs']):
        gamma = random_normalized_ray(rng, params)
        gamma2 = random_normalized_ray(rng, params)
        n = rng.randint(4, 8)
        witness = indiscrete_witness(gamma, gamma2, n, geodesic_cap=sizes['ray_cap'])
        report.record(witness.ok and witness.prefix_len >= n, n=n,
                      gamma=gamma.to_dict(), gamma2=gamma2.to_dict(),
                      prefix_len=witness.prefix_len)


def run_suite(name: str, seed: int, scale: str, timings: bool = False) -> SuiteReport:
    if name not in SUITES:
        raise PreconditionError(f'unknown suite: {name}')
    if scale not in SCALE_SIZES:
        raise PreconditionError(f'unknown scale: {scale}')
    report = SuiteReport(name)
    started = time.perf_counter()
    SUITES[name](report, random.Random(f'{seed}:{name}'), SCALE_SIZES[scale])
    if timings:
        report.wall_time = time.perf_counter() - started
    logger.info('suite %s: %d cases, %d failures', name, report.cases, len(report.failures))
    return report


def run_suites(names: List[str], seed: int, scale: str, timings: bool = False) -> List[SuiteReport]:
    """Run the named suites ('all' for every one), reports sorted by suite name."""
    if 'all' in names:
        names = list(SUITES)
    return [run_suite(name, seed, scale, timings) for name in sorted(set(names))]
