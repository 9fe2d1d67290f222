"""
Horocyclic coordinates in the oriented (q+1)-regular tree.

A vertex is stored as its height h(v) together with the labels of the edges
on its ancestor ray, indexed by the height of the lower endpoint ("level").
Only nonzero labels are stored, so following predecessors from any vertex
eventually runs along the all-zero ray to the distinguished end.
"""

import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import ParseError, PreconditionError

Branch = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class TreeVertex:
    """A vertex of the oriented tree: height plus sorted nonzero (level, label) pairs."""
    height: int = 0
    branch: Branch = ()

    def __post_init__(self):
        previous = None
        for level, label in self.branch:
            if level >= self.height:
                raise PreconditionError(f'level {level} not below height {self.height}')
            if label <= 0:
                raise PreconditionError(f'stored label at level {level} must be nonzero')
            if previous is not None and level <= previous:
                raise PreconditionError('branch levels must be strictly increasing')
            previous = level

    @classmethod
    def _raw(cls, height: int, branch: Branch) -> 'TreeVertex':
        vertex = object.__new__(cls)
        object.__setattr__(vertex, 'height', height)
        object.__setattr__(vertex, 'branch', branch)
        return vertex

    def label_at(self, level: int) -> int:
        """Label of the edge from level to level+1 on the ancestor ray."""
        if level >= self.height:
            raise PreconditionError(f'level {level} not below height {self.height}')
        for j, label in self.branch:
            if j == level:
                return label
            if j > level:
                break
        return 0

    def ancestor_at(self, height: int) -> 'TreeVertex':
        """The ancestor of this vertex at the given height."""
        if height > self.height:
            raise PreconditionError(f'no ancestor at height {height} above {self.height}')
        return TreeVertex._raw(height, tuple(p for p in self.branch if p[0] < height))

    def to_text(self) -> str:
        if not self.branch:
            return f'({self.height})'
        labels = ', '.join(f'{j}:{a}' for j, a in self.branch)
        return f'({self.height}; {labels})'

    def to_dict(self) -> Dict:
        return {'h': self.height, 'branch': {str(j): a for j, a in self.branch}}

    @classmethod
    def from_dict(cls, data: Dict, q: Optional[int] = None) -> 'TreeVertex':
        try:
            height = data['h']
            raw = data.get('branch', {})
        except (KeyError, TypeError, AttributeError) as e:
            raise ParseError(f'invalid tree vertex JSON: {data!r}') from e
        if not isinstance(height, int) or not isinstance(raw, dict):
            raise ParseError(f'invalid tree vertex JSON: {data!r}')
        try:
            pairs = sorted((int(j), a) for j, a in raw.items())
        except ValueError as e:
            raise ParseError(f'invalid branch level in {raw!r}') from e
        return _checked(height, pairs, q)

    def __str__(self) -> str:
        return self.to_text()


ORIGIN = TreeVertex()

_VERTEX_RE = re.compile(r'^\(\s*(-?\d+)\s*(?:;\s*(.*?))?\s*\)$')
_LABEL_RE = re.compile(r'^(-?\d+)\s*:\s*(-?\d+)$')


def _checked(height: int, pairs: List[Tuple[int, int]], q: Optional[int]) -> TreeVertex:
    """Build a vertex from parsed input, rejecting non-canonical forms."""
    for level, label in pairs:
        if not isinstance(label, int):
            raise ParseError(f'label at level {level} is not an integer')
        if label == 0:
            raise ParseError(f'explicit zero label at level {level}')
        if label < 0 or (q is not None and label >= q):
            raise ParseError(f'label {label} out of range at level {level}')
        if level >= height:
            raise ParseError(f'level {level} not below height {height}')
    levels = [level for level, _ in pairs]
    if levels != sorted(set(levels)):
        raise ParseError('branch levels must be strictly increasing')
    return TreeVertex._raw(height, tuple(pairs))


def parse_tree_vertex(text: str, q: Optional[int] = None) -> TreeVertex:
    """Parse the textual form "(k; j1:a1, j2:a2, ...)"."""
    match = _VERTEX_RE.match(text.strip())
    if not match:
        raise ParseError(f'invalid tree vertex: {text!r}')
    height = int(match.group(1))
    pairs = []
    body = match.group(2)
    if body:
        for item in body.split(','):
            label_match = _LABEL_RE.match(item.strip())
            if not label_match:
                raise ParseError(f'invalid branch entry {item.strip()!r} in {text!r}')
            pairs.append((int(label_match.group(1)), int(label_match.group(2))))
    # Order is part of canonical form: do not sort before checking.
    return _checked(height, pairs, q)


def predecessor(v: TreeVertex) -> TreeVertex:
    """The unique neighbor one step closer to the distinguished end."""
    branch = v.branch
    if branch and branch[-1][0] == v.height - 1:
        branch = branch[:-1]
    return TreeVertex._raw(v.height - 1, branch)


def successor(v: TreeVertex, alpha: int, q: int) -> TreeVertex:
    """The successor of v reached along the edge labeled alpha."""
    if not 0 <= alpha < q:
        raise PreconditionError(f'label {alpha} out of range for q={q}')
    branch = v.branch + ((v.height, alpha),) if alpha else v.branch
    return TreeVertex._raw(v.height + 1, branch)


def tree_neighbors(v: TreeVertex, q: int) -> Iterator[TreeVertex]:
    yield predecessor(v)
    for alpha in range(q):
        yield successor(v, alpha, q)


def gca(v: TreeVertex, w: TreeVertex) -> TreeVertex:
    """Greatest common ancestor of v and w."""
    m = min(v.height, w.height)
    left = {j: a for j, a in v.branch if j < m}
    right = {j: a for j, a in w.branch if j < m}
    differing = [j for j in left.keys() | right.keys() if left.get(j) != right.get(j)]
    if differing:
        m = min(differing)
    return v.ancestor_at(m)


def tree_distance(v: TreeVertex, w: TreeVertex) -> int:
    m = gca(v, w).height
    return (v.height - m) + (w.height - m)


def tree_geodesic(v: TreeVertex, w: TreeVertex) -> List[TreeVertex]:
    """Vertices of the unique geodesic from v to w, both ends included."""
    m = gca(v, w).height
    down = [v.ancestor_at(h) for h in range(v.height, m - 1, -1)]
    up = [w.ancestor_at(h) for h in range(m + 1, w.height + 1)]
    return down + up


def translate(x: TreeVertex, v: TreeVertex, q: int) -> TreeVertex:
    """Apply the tree automorphism that sends v to the origin."""
    shift = v.height
    offsets = dict(v.branch)
    labels = dict(x.branch)
    branch = []
    for level in sorted((labels.keys() | offsets.keys())):
        if level >= x.height:
            continue
        label = (labels.get(level, 0) - offsets.get(level, 0)) % q
        if label:
            branch.append((level - shift, label))
    return TreeVertex._raw(x.height - shift, tuple(branch))
