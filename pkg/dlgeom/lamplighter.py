"""
The lamplighter group L_q in the lamp-stand model.

An element is a finitely supported configuration of lamps over the integers,
each in one of q states, together with the lamplighter's position.
"""

import logging
import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from .dlgraph import DLVertex, GraphParams
from .errors import ParseError, PreconditionError
from .trees import TreeVertex

logger = logging.getLogger(__name__)

Lamps = Tuple[Tuple[int, int], ...]
Order = Union[int, float]


@dataclass(frozen=True)
class LampStand:
    """Lit lamps as sorted (position, state) pairs with nonzero states, plus pos."""
    lamps: Lamps = ()
    pos: int = 0

    def __post_init__(self):
        positions = [p for p, _ in self.lamps]
        if positions != sorted(set(positions)):
            raise PreconditionError('lamp positions must be strictly increasing')
        if any(state <= 0 for _, state in self.lamps):
            raise PreconditionError('stored lamp states must be nonzero')

    @classmethod
    def from_states(cls, states: Dict[int, int], pos: int, q: int) -> 'LampStand':
        """Build an element from any position->state mapping, reducing mod q."""
        check_q(q)
        lamps = tuple(sorted((p, s % q) for p, s in states.items() if s % q))
        return cls(lamps, pos)

    def lamp(self, position: int) -> int:
        for p, state in self.lamps:
            if p == position:
                return state
            if p > position:
                break
        return 0

    def lamp_dict(self) -> Dict[int, int]:
        return dict(self.lamps)

    def to_dict(self) -> Dict:
        return {'lamps': {str(p): s for p, s in self.lamps}, 'pos': self.pos}

    @classmethod
    def from_dict(cls, data: Dict, q: int) -> 'LampStand':
        check_q(q)
        try:
            raw = data['lamps']
            pos = data['pos']
            states = {int(p): s for p, s in raw.items()}
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ParseError(f'invalid lamp stand JSON: {data!r}') from e
        if not isinstance(pos, int):
            raise ParseError(f'lamplighter position must be an integer: {pos!r}')
        for p, s in states.items():
            if not isinstance(s, int) or not 0 < s < q:
                raise ParseError(f'lamp state {s!r} at {p} out of range for q={q}')
        return cls(tuple(sorted(states.items())), pos)


def check_q(q: int) -> None:
    """L_q needs at least two lamp states."""
    if q < 2:
        raise PreconditionError(f'q must be at least 2, got {q}')


IDENTITY = LampStand()


def a_k(k: int, q: int = 2) -> LampStand:
    """The element with only lamp k lit (state 1) and the lamplighter at 0."""
    return LampStand.from_states({k: 1}, 0, q)


def multiply(g: LampStand, h: LampStand, q: int) -> LampStand:
    states = g.lamp_dict()
    for p, s in h.lamps:
        target = p + g.pos
        states[target] = states.get(target, 0) + s
    return LampStand.from_states(states, g.pos + h.pos, q)


def inverse(g: LampStand, q: int) -> LampStand:
    return LampStand.from_states({p - g.pos: -s for p, s in g.lamps}, -g.pos, q)


def power(g: LampStand, n: int, q: int) -> LampStand:
    base = g if n >= 0 else inverse(g, q)
    result = IDENTITY
    for _ in range(abs(n)):
        result = multiply(result, base, q)
    return result


def exp_t(g: LampStand) -> int:
    """Exponent sum of t, i.e. the lamplighter's position."""
    return g.pos


def order(g: LampStand, q: int) -> Order:
    """Order of g; math.inf when the lamplighter does not return."""
    if g.pos != 0:
        return math.inf
    current = g
    for n in range(1, q + 1):
        if current == IDENTITY:
            return n
        current = multiply(current, g, q)
    raise AssertionError(f'order of {g} exceeds {q}')


# Generator words: (a^m t)^e, a_k, a^m, t^e. Whitespace between tokens is optional.
_TOKEN_RE = re.compile(
    r'\s*(?:'
    r'\(\s*a(?:\^(?P<pm>-?\d+))?\s*t\s*\)(?:\^(?P<pe>-?\d+))?'
    r'|a_(?P<k>-?\d+)'
    r'|a(?:\^(?P<am>-?\d+))?'
    r'|t(?:\^(?P<te>-?\d+))?'
    r')')


def parse_generator_word(word: str) -> List[Tuple[str, int, int]]:
    """Tokenize a generator word into ('at', m, e), ('ak', k, 1), ('a', m, 1)
    or ('t', 1, e) triples."""
    tokens = []
    position = 0
    word = word.rstrip()
    while position < len(word):
        match = _TOKEN_RE.match(word, position)
        if not match or match.end() == position:
            raise ParseError(f'unknown token at {word[position:]!r}')
        groups = match.groupdict()
        if match.group(0).strip().startswith('('):
            tokens.append(('at', int(groups['pm'] or 1), int(groups['pe'] or 1)))
        elif groups['k'] is not None:
            tokens.append(('ak', int(groups['k']), 1))
        elif match.group(0).strip().startswith('a'):
            tokens.append(('a', int(groups['am'] or 1), 1))
        else:
            tokens.append(('t', 1, int(groups['te'] or 1)))
        position = match.end()
    return tokens


def eval_word(word: str, q: int) -> LampStand:
    """Evaluate a generator word left to right."""
    states: Dict[int, int] = {}
    pos = 0
    for kind, value, exponent in parse_generator_word(word):
        if kind == 't':
            pos += exponent
        elif kind == 'a':
            states[pos] = states.get(pos, 0) + value
        elif kind == 'ak':
            states[pos + value] = states.get(pos + value, 0) + 1
        else:
            for _ in range(abs(exponent)):
                if exponent > 0:
                    states[pos] = states.get(pos, 0) + value
                    pos += 1
                else:
                    pos -= 1
                    states[pos] = states.get(pos, 0) - value
    return LampStand.from_states(states, pos, q)


def generators(q: int) -> List[Tuple[str, LampStand]]:
    """t and a^m t (1 <= m < q) with their inverses, as named elements."""
    names = ['t'] + ['at' if m == 1 else f'a^{m} t' for m in range(1, q)]
    forward = [LampStand(((0, m),), 1) if m else LampStand((), 1) for m in range(q)]
    named = list(zip(names, forward))
    named += [(f'({name})^-1' if name != 't' else 't^-1', inverse(g, q)) for name, g in zip(names, forward)]
    return named


def cayley_ball(radius: int, q: int) -> Dict[LampStand, int]:
    """Word lengths of all elements within the given radius, by BFS over
    right multiplication by generators."""
    steps = [g for _, g in generators(q)]
    lengths = {IDENTITY: 0}
    queue = deque([IDENTITY])
    while queue:
        g = queue.popleft()
        if lengths[g] == radius:
            continue
        for s in steps:
            h = multiply(g, s, q)
            if h not in lengths:
                lengths[h] = lengths[g] + 1
                queue.append(h)
    logger.debug('Cayley ball of radius %d in L_%d: %d elements', radius, q, len(lengths))
    return lengths


def to_vertex(g: LampStand, q: int) -> DLVertex:
    """The DL_2(q) vertex of g: lamps below the lamplighter live in T_0 at
    level p, the rest in T_1 at level -p-1."""
    k = g.pos
    low = tuple((p, s) for p, s in g.lamps if p < k)
    high = tuple(sorted((-p - 1, s) for p, s in g.lamps if p >= k))
    return DLVertex((TreeVertex(k, low), TreeVertex(-k, high)))


def from_vertex(v: DLVertex, q: int) -> LampStand:
    if v.d != 2:
        raise PreconditionError(f'lamp stands correspond to DL_2 vertices, got d={v.d}')
    x0, x1 = v.coords
    states = dict(x0.branch)
    states.update({-level - 1: s for level, s in x1.branch})
    if any(s >= q for s in states.values()):
        raise PreconditionError(f'label out of range for q={q} in {v}')
    return LampStand(tuple(sorted(states.items())), x0.height)


def params_for(q: int) -> GraphParams:
    return GraphParams(2, q)


def format_order(value: Order) -> Union[int, str]:
    return 'infinite' if value == math.inf else int(value)
