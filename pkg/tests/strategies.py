from hypothesis import strategies as st

from dlgeom import periodic
from dlgeom.boundary2 import BoundaryPoint
from dlgeom.dlgraph import DLVertex, GraphParams, Move
from dlgeom.lamplighter import LampStand
from dlgeom.trees import TreeVertex


@st.composite
def tree_vertices(draw, q=2, height=None, depth=4):
    if height is None:
        height = draw(st.integers(-3, 3))
    levels = range(height - depth, height)
    branch = draw(st.dictionaries(st.sampled_from(levels), st.integers(1, q - 1), max_size=depth))
    return TreeVertex(height, tuple(sorted(branch.items())))


@st.composite
def dl_vertices(draw, d=2, q=2, spread=3):
    heights = draw(st.lists(st.integers(-spread, spread), min_size=d - 1, max_size=d - 1))
    heights.append(-sum(heights))
    return DLVertex(tuple(draw(tree_vertices(q, height=h, depth=3)) for h in heights))


def moves(d=2, q=2):
    pairs = [(i, j) for i in range(d) for j in range(d) if i != j]
    return st.builds(lambda pair, a: Move(pair[0], a, pair[1]),
                     st.sampled_from(pairs), st.integers(0, q - 1))


@st.composite
def lamp_stands(draw, q=2, span=5):
    states = draw(st.dictionaries(st.integers(-span, span), st.integers(0, q - 1), max_size=6))
    pos = draw(st.integers(-span, span))
    return LampStand.from_states(states, pos, q)


@st.composite
def boundary_points(draw, q=2, side=None, unturned=False, periodic_tail=None):
    if side is None:
        side = draw(st.integers(0, 1))
    lo = draw(st.integers(0, 3) if unturned else st.integers(-5, 3))
    head = draw(st.lists(st.integers(0, q - 1), max_size=4))
    finite = st.just([0])
    repeating = st.lists(st.integers(0, q - 1), min_size=1, max_size=3).filter(any)
    if periodic_tail is None:
        tail = draw(st.one_of(finite, repeating))
    else:
        tail = draw(repeating if periodic_tail else finite)
    offsets = {lo + k: s for k, s in enumerate(head)}
    return BoundaryPoint(side, periodic.build(offsets, tail, lo + len(head), q))


DL22 = GraphParams(2, 2)
DL23 = GraphParams(2, 3)
DL32 = GraphParams(3, 2)
DL42 = GraphParams(4, 2)
