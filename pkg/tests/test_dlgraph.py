import json

import pytest
from hypothesis import given, settings

from dlgeom.dlgraph import (DLVertex, GraphParams, Move, apply_move, ball, ball_graph,
                            bfs_distance, move_between, neighbor_moves, neighbors,
                            parse_dl_vertex, parse_move, projection_lower_bound,
                            projection_upper_bound, to_dot, translate_to_origin,
                            upper_bound_path)
from dlgeom.errors import ParseError, PreconditionError
from dlgeom.trees import TreeVertex
from tests.strategies import DL22, DL32, dl_vertices


class TestVertices:
    def test_origin_and_parsing(self, dl22):
        o = dl22.origin()
        assert parse_dl_vertex('o', dl22) == o
        v = parse_dl_vertex('[(1; 0:1), (-1)]', dl22)
        assert v == DLVertex((TreeVertex(1, ((0, 1),)), TreeVertex(-1)))
        assert v.to_text() == '[(1; 0:1), (-1)]'
        assert parse_dl_vertex(json.dumps(v.to_dict()), dl22) == v

    @pytest.mark.parametrize('text', ['[(1), (0)]', '[(0), (0), (0)]', '[(1; 0:2), (-1)]', 'nope'])
    def test_rejects_bad_vertices(self, dl22, text):
        with pytest.raises(ParseError):
            parse_dl_vertex(text, dl22)

    def test_params_checks(self):
        with pytest.raises(PreconditionError):
            GraphParams(1, 2)
        with pytest.raises(PreconditionError):
            GraphParams(2, 1)
        assert GraphParams(3, 2).degree() == 12
        assert GraphParams(2, 2, branching=(2, 3)).degree() == 5


class TestAdjacency:
    def test_move_text(self):
        move = parse_move('0(1)-1')
        assert move == Move(0, 1, 1)
        assert move.to_text() == '0(1)-1'
        with pytest.raises(ParseError):
            parse_move('0(1)-0')
        with pytest.raises(ParseError):
            parse_move('01-1')

    def test_apply_move(self, dl22):
        v = apply_move(dl22.origin(), Move(0, 1, 1), dl22)
        assert v == DLVertex((TreeVertex(1, ((0, 1),)), TreeVertex(-1)))
        with pytest.raises(PreconditionError):
            apply_move(dl22.origin(), Move(0, 2, 1), dl22)

    @pytest.mark.parametrize('params', [DL22, DL32, GraphParams(2, 3)])
    def test_degree(self, params):
        assert len(neighbors(params.origin(), params)) == params.degree()

    @given(dl_vertices(d=3))
    def test_adjacency_is_symmetric(self, v):
        for move, w in neighbor_moves(v, DL32):
            assert v in neighbors(w, DL32)
            assert move_between(v, w, DL32) == move

    def test_move_between_non_adjacent(self, dl22):
        assert move_between(dl22.origin(), dl22.origin(), dl22) is None


class TestDistance:
    def test_small_distances(self, dl22):
        o = dl22.origin()
        assert bfs_distance(o, o, dl22) == 0
        for w in neighbors(o, dl22):
            assert bfs_distance(o, w, dl22) == 1

    def test_cap(self, dl22):
        o = dl22.origin()
        far = apply_move(apply_move(o, Move(0, 1, 1), dl22), Move(0, 1, 1), dl22)
        assert bfs_distance(o, far, dl22, radius_cap=1) is None
        assert bfs_distance(o, far, dl22, radius_cap=2) == 2

    def test_ball_sizes(self, dl22):
        assert len(ball(dl22.origin(), 0, dl22)) == 1
        assert len(ball(dl22.origin(), 1, dl22)) == 5

    def test_ball_matches_bfs(self, dl22):
        o = dl22.origin()
        for v, dist in ball(o, 3, dl22).items():
            assert bfs_distance(o, v, dl22) == dist

    @settings(max_examples=25)
    @given(dl_vertices(spread=2), dl_vertices(spread=2))
    def test_sandwich(self, v, w):
        dist = bfs_distance(v, w, DL22)
        assert projection_lower_bound(v, w) <= dist <= projection_upper_bound(v, w)

    @given(dl_vertices(d=3), dl_vertices(d=3))
    def test_upper_bound_path(self, v, w):
        path = upper_bound_path(v, w, DL32)
        assert path.base == v
        assert path.end == w
        assert len(path) <= projection_upper_bound(v, w)

    def test_translate_to_origin(self, dl32):
        v = apply_move(dl32.origin(), Move(2, 1, 0), dl32)
        w = apply_move(v, Move(1, 1, 2), dl32)
        assert translate_to_origin(v, v, dl32) == dl32.origin()
        moved = translate_to_origin(w, v, dl32)
        assert bfs_distance(dl32.origin(), moved, dl32) == bfs_distance(v, w, dl32) == 1


class TestExport:
    def test_ball_graph_attributes(self, dl22):
        graph = ball_graph(dl22.origin(), 2, dl22)
        assert graph.nodes[dl22.origin()]['dist'] == 0
        assert max(d for _, d in graph.nodes(data='dist')) == 2

    def test_dot(self, dl22):
        graph = ball_graph(dl22.origin(), 1, dl22)
        dot = to_dot(graph)
        assert 'ball' in dot
        assert 'v0' in dot and 'v4' in dot
        assert dot.count('--') == graph.number_of_edges() == 4
        assert to_dot(graph) == dot
