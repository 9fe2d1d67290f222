"""
Eventually periodic configurations over the integers.

A configuration c: Z -> Z_q is zero far to the left and periodic far to the
right. It is stored canonically as a finite head below `start` and a
primitive tail word repeated from `start` on, with `start` as small as
possible. The all-zero configuration has start 0.
"""

from dataclasses import dataclass
from math import lcm
from typing import Dict, List, Optional, Tuple

from .errors import ParseError, PreconditionError


@dataclass(frozen=True)
class EventuallyPeriodic:
    head: Tuple[Tuple[int, int], ...]
    tail: Tuple[int, ...]
    start: int

    def value(self, p: int) -> int:
        if p >= self.start:
            return self.tail[(p - self.start) % len(self.tail)]
        for position, state in self.head:
            if position == p:
                return state
        return 0

    def window(self, lo: int, hi: int) -> List[int]:
        return [self.value(p) for p in range(lo, hi)]

    @property
    def period(self) -> int:
        return len(self.tail)

    def is_zero(self) -> bool:
        return not self.head and self.tail == (0,)

    def has_finite_support(self) -> bool:
        return self.tail == (0,)

    def lowest_lit(self) -> Optional[int]:
        """Smallest position with a nonzero value, or None for the zero configuration."""
        if self.head:
            return self.head[0][0]
        for offset, state in enumerate(self.tail):
            if state:
                return self.start + offset
        return None

    def first_difference(self, other: 'EventuallyPeriodic') -> Optional[int]:
        """Smallest position where the two configurations differ, or None."""
        lows = [self.start, other.start]
        lows += [h[0][0] for h in (self.head, other.head) if h]
        lo = min(lows)
        hi = max(self.start, other.start) + lcm(self.period, other.period)
        for p in range(lo, hi):
            if self.value(p) != other.value(p):
                return p
        return None

    def shift(self, k: int, q: int) -> 'EventuallyPeriodic':
        """The configuration p -> c(p - k)."""
        return build({p + k: s for p, s in self.head}, self.tail, self.start + k, q)

    def add(self, states: Dict[int, int], q: int) -> 'EventuallyPeriodic':
        """Add a finitely supported configuration pointwise."""
        offsets = dict(self.head)
        for p, s in states.items():
            offsets[p] = offsets.get(p, 0) + s
        return build(offsets, self.tail, self.start, q)

    def to_dict(self) -> Dict:
        return {'head': {str(p): s for p, s in self.head},
                'tail': list(self.tail),
                'tail_from': self.start}


ZERO = EventuallyPeriodic((), (0,), 0)


def _primitive(word: Tuple[int, ...]) -> Tuple[int, ...]:
    n = len(word)
    for size in range(1, n + 1):
        if n % size == 0 and word == word[:size] * (n // size):
            return word[:size]
    return word


def rotate(word: Tuple[int, ...], offset: int) -> Tuple[int, ...]:
    offset %= len(word)
    return word[offset:] + word[:offset]


def build(offsets: Dict[int, int], tail, start: int, q: int) -> EventuallyPeriodic:
    """Canonical form of p -> offsets(p) + (tail repeated from start)(p), mod q."""
    if q < 2:
        raise PreconditionError(f'q must be at least 2, got {q}')
    tail = tuple(tail)
    if not tail:
        raise PreconditionError('tail word must be nonempty')
    period = len(tail)

    def c(p: int) -> int:
        base = tail[(p - start) % period] if p >= start else 0
        return (offsets.get(p, 0) + base) % q

    s = max([start] + [p + 1 for p, v in offsets.items() if v % q])
    word = _primitive(tuple(c(s + r) for r in range(period)))
    candidates = set(offsets) | set(range(start, s))

    if not any(word):
        head = tuple(sorted((p, c(p)) for p in candidates if p < s and c(p)))
        if not head:
            return ZERO
        return EventuallyPeriodic(head, (0,), head[-1][0] + 1)

    while c(s - 1) == word[-1]:
        word = rotate(word, -1)
        s -= 1
    head = tuple(sorted((p, c(p)) for p in candidates if p < s and c(p)))
    return EventuallyPeriodic(head, word, s)


def from_dict(data: Dict, q: int) -> EventuallyPeriodic:
    """Parse {"head": {...}, "tail": [...], "tail_from": p} in forward orientation."""
    try:
        head = {int(p): s for p, s in data.get('head', {}).items()}
        tail = tuple(data.get('tail', [0]))
        start = data.get('tail_from', 0)
    except (TypeError, ValueError, AttributeError) as e:
        raise ParseError(f'invalid configuration JSON: {data!r}') from e
    if not tail or not isinstance(start, int):
        raise ParseError(f'invalid tail in {data!r}')
    for s in list(head.values()) + list(tail):
        if not isinstance(s, int) or not 0 <= s < q:
            raise ParseError(f'state {s!r} out of range for q={q}')
    if any(p >= start for p in head):
        raise ParseError(f'head positions must lie below tail_from={start}')
    return build(head, tail, start, q)
