"""
The visual boundary of DL_2(q) in the lamp-stand model.

A boundary point has the lamplighter at +infinity (side 0) or -infinity
(side 1) and an eventually periodic lamp configuration. Internally the
configuration is kept in the point's own orientation u: u = p on side 0 and
u = -p - 1 on side 1. In that orientation the configuration is exactly the
label sequence, by level, of the end approached in T_side, and every
statement below reads the same on both sides.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import periodic
from .boundary_d import (AsymptoticCertificate, RayDescriptor, certify_asymptotic,
                         ends_of, ray_toward_end, truncation_geodesic)
from .errors import ParseError, PreconditionError
from .lamplighter import LampStand, exp_t, params_for, power
from .paths import Path
from .periodic import EventuallyPeriodic

logger = logging.getLogger(__name__)


def _orient(side: int, p: int) -> int:
    """Position p in side's orientation (an involution)."""
    return p if side == 0 else -p - 1


@dataclass(frozen=True)
class ClassIndex:
    """The class C_n^side of rays that descend exactly n edges in T_side before turning."""
    side: int
    n: int

    def to_dict(self) -> Dict:
        return {'side': self.side, 'n': self.n}

    def __str__(self) -> str:
        return f'C_{self.n}^{self.side}'


@dataclass(frozen=True)
class BoundaryPoint:
    side: int
    config: EventuallyPeriodic

    def __post_init__(self):
        if self.side not in (0, 1):
            raise PreconditionError(f'side must be 0 or 1, got {self.side}')

    @classmethod
    def from_lamps(cls, side: int, lamps: Dict[int, int], q: int) -> 'BoundaryPoint':
        """A point whose configuration is finitely supported, given in real positions."""
        oriented = {_orient(side, p): s for p, s in lamps.items()}
        return cls(side, periodic.build(oriented, (0,), 0, q))

    def lamp(self, p: int) -> int:
        """State of the lamp at real position p."""
        return self.config.value(_orient(self.side, p))

    def to_dict(self) -> Dict:
        cfg = self.config
        head = {str(_orient(self.side, u)): s for u, s in cfg.head}
        if self.side == 1:
            head = dict(sorted(head.items(), key=lambda item: int(item[0])))
        return {'side': self.side, 'head': head, 'tail': list(cfg.tail),
                'tail_from': _orient(self.side, cfg.start)}

    @classmethod
    def from_dict(cls, data: Dict, q: int) -> 'BoundaryPoint':
        """Parse {"side", "head", "tail", "tail_from"}; on side 1 the tail runs
        downward from tail_from."""
        try:
            side = data['side']
            head = {int(p): s for p, s in data.get('head', {}).items()}
            tail = list(data.get('tail', [0]))
            tail_from = data.get('tail_from', 0 if side == 0 else -1)
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ParseError(f'invalid boundary point JSON: {data!r}') from e
        if side not in (0, 1):
            raise ParseError(f'side must be 0 or 1, got {side!r}')
        if not isinstance(tail_from, int):
            raise ParseError(f'tail_from must be an integer: {tail_from!r}')
        if side == 0 and any(p >= tail_from for p in head):
            raise ParseError(f'head positions must lie below tail_from={tail_from}')
        if side == 1 and any(p <= tail_from for p in head):
            raise ParseError(f'head positions must lie above tail_from={tail_from}')
        oriented = {'head': {str(_orient(side, p)): s for p, s in head.items()},
                    'tail': tail, 'tail_from': _orient(side, tail_from)}
        return cls(side, periodic.from_dict(oriented, q))


def classify(x: BoundaryPoint) -> ClassIndex:
    """C_n^i with n = how far the canonical ray descends in T_i before turning."""
    lowest = x.config.lowest_lit()
    n = -lowest if lowest is not None and lowest < 0 else 0
    return ClassIndex(x.side, n)


def in_class_union(x: BoundaryPoint, side: int, k: int) -> bool:
    """Membership in C_{k,inf}^side, the rays descending at least k edges in T_side."""
    index = classify(x)
    return index.side == side and index.n >= k


def canonical_descriptor(x: BoundaryPoint, q: int) -> RayDescriptor:
    """The canonical ray of x: descend in T_side to the first lit lamp, then
    climb along the lamp states with label 0 on the way down in the other tree."""
    return ray_toward_end(params_for(q), x.side, 1 - x.side, x.config)


def canonical_ray(x: BoundaryPoint, length: int, q: int) -> Path:
    if length < 0:
        raise PreconditionError('ray length must be nonnegative')
    return canonical_descriptor(x, q).truncate(length)


def _agree(x: BoundaryPoint, y: BoundaryPoint, lo: int, hi: int) -> bool:
    return all(x.config.value(u) == y.config.value(u) for u in range(lo, hi))


def basis_membership(x: BoundaryPoint, center: BoundaryPoint, k: int) -> bool:
    """Whether x lies in the basis set B_[0,k] around center (any 0 < eps < 1)."""
    if k < 0:
        raise PreconditionError('k must be nonnegative')
    if k == 0:
        return True
    i, n = classify(center).side, classify(center).n
    cx = classify(x)
    if n > 0 and k <= n:
        return in_class_union(x, i, k) or (cx.side == 1 - i and cx.n == 0)
    if n > 0:
        # T_i of the canonical ray shows levels -n .. k - 2n - 1 within [0, k].
        return cx == ClassIndex(i, n) and _agree(x, center, -n, k - 2 * n)
    if in_class_union(x, 1 - i, k):
        return True
    return cx == ClassIndex(i, 0) and _agree(x, center, 0, k)


def non_hausdorff_witness(x: BoundaryPoint, y: BoundaryPoint, k: int, q: int) -> BoundaryPoint:
    """A point in both B_[0,k](x) and B_[0,k](y) for distinct x, y in the same C_0^i."""
    if x == y:
        raise PreconditionError('points must be distinct')
    cx, cy = classify(x), classify(y)
    if cx.n != 0 or cy.n != 0 or cx.side != cy.side:
        raise PreconditionError(f'points must both lie in C_0^i, got {cx} and {cy}')
    if k < 0:
        raise PreconditionError('k must be nonnegative')
    side = 1 - cx.side
    m = max(k, 1)
    z = BoundaryPoint(side, periodic.build({-m: 1}, (0,), 0, q))
    if not (basis_membership(z, x, k) and basis_membership(z, y, k)):
        raise AssertionError(f'witness {z.to_dict()} fails at k={k}')
    return z


@dataclass
class SeparationWitness:
    k: int
    clopen: Optional[ClassIndex] = None

    def to_dict(self) -> Dict:
        return {'k': self.k, 'clopen': self.clopen.to_dict() if self.clopen else None}

    @classmethod
    def from_dict(cls, data: Dict) -> 'SeparationWitness':
        clopen = data.get('clopen')
        return cls(data['k'], ClassIndex(clopen['side'], clopen['n']) if clopen else None)


def separation_witness(x: BoundaryPoint, y: BoundaryPoint) -> SeparationWitness:
    """The least k whose basis sets around x and y exclude each other."""
    if x == y:
        raise PreconditionError('points must be distinct')
    cx, cy = classify(x), classify(y)
    first = x.config.first_difference(y.config) if x.side == y.side else 0
    limit = 2 * max(cx.n, cy.n) + abs(first or 0) + 4
    for k in range(1, limit + 1):
        if not basis_membership(y, x, k) and not basis_membership(x, y, k):
            clopen = cx if cx.n > 0 and cx != cy else None
            return SeparationWitness(k, clopen)
    raise AssertionError(f'no separating k up to {limit}')


def class_cover(index: ClassIndex, q: int) -> List[Tuple[BoundaryPoint, int]]:
    """Basis sets (center, k) whose union is exactly C_n^i, for n > 0."""
    if index.n <= 0:
        raise PreconditionError('only C_n^i with n > 0 is open')
    return [(BoundaryPoint(index.side, periodic.build({-index.n: j}, (0,), 0, q)), index.n + 1)
            for j in range(1, q)]


def act(g: LampStand, x: BoundaryPoint, q: int) -> BoundaryPoint:
    """g . x: g's lamp stand with x's lighting performed from g's position."""
    shift = g.pos if x.side == 0 else -g.pos
    lamps = {_orient(x.side, p): s for p, s in g.lamps}
    return BoundaryPoint(x.side, x.config.shift(shift, q).add(lamps, q))


def power_infinity(g: LampStand, q: int) -> BoundaryPoint:
    """The limit point g^inf of g^n; config(p) = sum_j g(p - j exp_t(g))."""
    e = exp_t(g)
    if e == 0:
        raise PreconditionError('g^inf needs exp_t(g) != 0')
    side = 0 if e > 0 else 1
    step = abs(e)
    lamps = {_orient(side, p): s for p, s in g.lamps}
    if not lamps:
        return BoundaryPoint(side, periodic.ZERO)
    lo, hi = min(lamps), max(lamps) + 1

    def value(u: int) -> int:
        return sum(lamps.get(u - j * step, 0) for j in range((u - lo) // step + 1))

    head = {u: value(u) for u in range(lo, hi)}
    tail = [value(hi + r) for r in range(step)]
    return BoundaryPoint(side, periodic.build(head, tail, hi, q))


@dataclass
class DynamicsRow:
    """Agreement of g^n . x with g^inf: equal at every oriented position below radius."""
    n: int
    radius: Optional[int]
    bound: Optional[int]

    @property
    def holds(self) -> bool:
        return self.radius is None or self.bound is None or self.radius >= self.bound

    def to_dict(self) -> Dict:
        return {'n': self.n, 'radius': self.radius, 'bound': self.bound, 'holds': self.holds}

    @classmethod
    def from_dict(cls, data: Dict) -> 'DynamicsRow':
        return cls(data['n'], data['radius'], data['bound'])


def dynamics_report(g: LampStand, x: BoundaryPoint, n_max: int, q: int) -> List[DynamicsRow]:
    """Agreement radii of g^n . x with g^inf for n = 1..n_max.

    The bound checked is n |exp_t(g)| + m with m the lowest lit position of x
    or of g^inf, whichever is lower (None when both are dark).
    """
    attractor = power_infinity(g, q)
    if x.side != attractor.side:
        raise PreconditionError(f'x lies on side {x.side}, g^inf on side {attractor.side}')
    step = abs(exp_t(g))
    lows = [u for u in (x.config.lowest_lit(), attractor.config.lowest_lit()) if u is not None]
    m = min(lows) if lows else None
    rows = []
    for n in range(1, n_max + 1):
        moved = act(power(g, n, q), x, q)
        radius = moved.config.first_difference(attractor.config)
        bound = n * step + m if m is not None else None
        rows.append(DynamicsRow(n, radius, bound))
    return rows


def point_of_ray(r: RayDescriptor) -> BoundaryPoint:
    """The boundary point of a DL_2 ray, read off the end of its ascending tree."""
    if r.params.d != 2:
        raise PreconditionError(f'boundary points are DL_2 rays, got d={r.params.d}')
    return BoundaryPoint(r.up_tree, ends_of(r)[r.up_tree].labels)


def rebase_ray(r: RayDescriptor, cap: int = 12) -> Tuple[BoundaryPoint, AsymptoticCertificate]:
    """The origin-based class of a ray from any base, with a certificate that
    its canonical ray is asymptotic to r."""
    if r.params.d != 2:
        raise PreconditionError(f'boundary points are DL_2 rays, got d={r.params.d}')
    length = min(cap, len(r.prefix) + 2 * r.period)
    if not truncation_geodesic(r, length):
        raise PreconditionError('descriptor does not describe a geodesic ray')
    x = point_of_ray(r)
    certificate = certify_asymptotic(r, canonical_descriptor(x, r.params.q))
    logger.debug('rebased ray to %s: %s', classify(x), certificate.to_dict())
    return x, certificate
