import json

import pytest

from dlgeom.boundary_d import (AsymptoticCertificate, RayDescriptor, certify_asymptotic, ends_of,
                               indiscrete_witness, is_normalized, normalize, parse_descriptor,
                               ray_toward_end, shared_prefix_length, swap_projection,
                               swap_witness, tracking_ray, truncation_geodesic, turn_index)
from dlgeom.dlgraph import Move
from dlgeom.errors import ParseError, PreconditionError
from dlgeom.paths import Path, parse_word
from dlgeom.periodic import ZERO, build
from dlgeom.trees import ORIGIN
from tests.strategies import DL22, DL32, DL42


def ray(word, up, labels, down, params=DL32):
    return RayDescriptor(Path(params.origin(), parse_word(word), params), up, labels, down)


@pytest.fixture
def gamma():
    return ray('1(0)-0 0(1)-1', 0, (0,), 1)


@pytest.fixture
def gamma2():
    return ray('1(0)-0 1(0)-0 0(1)-1', 0, (1,), 1)


class TestDescriptors:
    def test_moves_and_vertices(self):
        r = ray('2(1)-1', 0, (1, 0), 1)
        assert r.period == 2
        assert [r.move_at(t) for t in range(4)] == [Move(2, 1, 1), Move(0, 1, 1), Move(0, 0, 1), Move(0, 1, 1)]
        assert r.vertices(4) == list(r.truncate(4).vertices)
        assert r.touched_trees() == [0, 1, 2]

    def test_rejects_bad_eventual_moves(self):
        with pytest.raises(PreconditionError):
            ray('', 0, (), 1)
        with pytest.raises(PreconditionError):
            ray('', 0, (0,), 0)
        with pytest.raises(PreconditionError):
            ray('', 0, (2,), 1)

    def test_json(self, tmp_path):
        r = ray('2(1)-1 0(1)-2', 0, (0,), 1)
        assert r.to_dict()['eventual'] == {'up': 0, 'labels': [0], 'down': 1}
        text = json.dumps(r.to_dict())
        assert parse_descriptor(text, DL32) == r
        stored = tmp_path / 'ray.json'
        stored.write_text(text, encoding='utf-8')
        assert parse_descriptor(str(stored), DL32) == r

    def test_json_defaults_to_origin(self):
        data = {'prefix': '0(1)-1', 'eventual': {'up': 0, 'labels': [1], 'down': 2}}
        assert RayDescriptor.from_dict(data, DL32) == ray('0(1)-1', 0, (1,), 2)

    @pytest.mark.parametrize('text', [
        '{"prefix": ""}',
        '{"eventual": {"up": 0, "labels": [], "down": 1}}',
        '{"eventual": {"up": 0, "labels": [0], "down": 0}}',
        '{not json',
        'missing-file.json',
    ])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_descriptor(text, DL32)

    def test_ends(self):
        ends = ends_of(ray('2(1)-1 0(1)-2', 0, (0,), 1))
        assert [e.kind for e in ends] == ['ascending', 'descending', 'constant']
        assert ends[0].labels == build({0: 1}, (0,), 1, 2)
        assert ends[2].vertex == ORIGIN
        assert ends[2].to_dict() == {'tree': 2, 'kind': 'constant', 'vertex': {'h': 0, 'branch': {}}}

    def test_ray_toward_end(self):
        r = ray_toward_end(DL22, 0, 1, build({-2: 1}, (0,), 0, 2))
        assert r.truncate(5).word() == '1(0)-0 1(0)-0 0(1)-1 0(0)-1 0(0)-1'
        assert ray_toward_end(DL22, 1, 0, ZERO).prefix.moves == ()


class TestAsymptotic:
    def test_shifted_ray_is_asymptotic(self):
        a = ray('0(1)-1', 0, (0,), 1)
        b = ray('', 0, (0,), 1)
        certificate = certify_asymptotic(a, b)
        assert not certificate.ok
        c = ray('0(0)-1', 0, (0,), 1)
        certificate = certify_asymptotic(c, b)
        assert certificate.ok
        assert certificate.distances == [1, 1, 0]
        assert certificate.distance_bound == 2
        assert AsymptoticCertificate.from_dict(certificate.to_dict()) == certificate

    def test_diverging_rays(self):
        certificate = certify_asymptotic(ray('', 1, (0,), 2), ray('', 0, (0,), 2))
        assert not certificate.ok
        assert certificate.distance_bound is None

    def test_truncation_geodesic(self, gamma):
        assert truncation_geodesic(gamma, 6)
        assert not truncation_geodesic(ray('0(1)-1 1(0)-0', 0, (0,), 1), 4)


class TestSwaps:
    def test_tracking_ray(self):
        g = ray('2(1)-1 0(1)-2', 0, (0,), 1)
        tau = tracking_ray(g)
        assert tau.prefix.moves == (Move(0, 1, 1),)
        assert tau.prefix.moves != g.prefix.moves
        assert tau.touched_trees() == [0, 1]
        assert certify_asymptotic(tau, g).ok
        assert tracking_ray(tau) == tau

    def test_tracking_needs_three_trees(self):
        with pytest.raises(PreconditionError):
            tracking_ray(ray('', 0, (0,), 1, params=DL22))

    def test_swap_projection(self):
        g = ray('', 1, (0,), 2)
        swapped = swap_projection(g, 0, 1)
        assert (swapped.up_tree, swapped.down_tree) == (0, 2)
        assert swap_projection(swapped, 1, 0) == g

    def test_swap_preconditions(self, gamma):
        with pytest.raises(PreconditionError):
            swap_projection(gamma, 0, 2)
        with pytest.raises(PreconditionError):
            swap_projection(ray('', 1, (0,), 2), 0, 0)
        with pytest.raises(PreconditionError):
            swap_projection(ray('', 1, (0,), 2, params=DL42), 0, 3)

    @pytest.mark.parametrize('n', [0, 3, 5])
    def test_swap_witness(self, n):
        g = ray('', 1, (0,), 2)
        witness = swap_witness(g, 0, 1, n)
        assert shared_prefix_length(witness, swap_projection(g, 0, 1), n + 10) >= n
        assert certify_asymptotic(witness, g).ok

    def test_swap_witness_from_turned_ray(self):
        g = ray('2(0)-1 1(1)-2', 1, (0,), 2)
        witness = swap_witness(g, 0, 1, 4)
        assert shared_prefix_length(witness, swap_projection(g, 0, 1), 20) >= 4
        assert certify_asymptotic(witness, g).ok
        with pytest.raises(PreconditionError):
            swap_witness(g, 0, 1, 1)

    def test_normalize(self):
        g = ray('', 2, (0,), 0)
        result = normalize(g)
        assert result.swaps == [(1, 0), (0, 2)]
        assert is_normalized(result.ray)
        assert result.tracked == g
        assert result.to_dict()['swaps'] == [[1, 0], [0, 2]]

    def test_normalized_ray_is_untouched(self, gamma):
        assert is_normalized(gamma)
        result = normalize(gamma)
        assert result.swaps == [] and result.ray == gamma


class TestIndiscrete:
    def test_turn_index(self, gamma, gamma2):
        assert turn_index(gamma) == 1
        assert turn_index(gamma2) == 2

    def test_witness(self, gamma, gamma2):
        witness = indiscrete_witness(gamma, gamma2, 6, geodesic_cap=10)
        assert witness.ok
        assert witness.prefix_len >= 6
        assert witness.tau_n.truncate(6).word() == '2(0)-1 ' * 5 + '2(0)-1'
        # the T_0 walk is balanced in T_2; T_1 waits at -n until the final climb
        assert witness.tau_n.move_at(6) == Move(2, 0, 0)
        assert [v.coords[1].height for v in witness.tau_n.vertices(8)[6:]] == [-6, -6, -7]
        assert witness.to_dict()['ok'] is True
        assert certify_asymptotic(witness.tau2_n, gamma2).ok

    def test_n_must_pass_the_turns(self, gamma, gamma2):
        with pytest.raises(PreconditionError):
            indiscrete_witness(gamma, gamma2, 2)

    def test_rays_are_normalized_first(self, gamma2):
        moved = swap_projection(ray('', 0, (0,), 1), 2, 1)
        witness = indiscrete_witness(moved, gamma2, 4)
        assert witness.ok

    def test_needs_three_trees(self):
        flat = ray('', 0, (0,), 1, params=DL22)
        with pytest.raises(PreconditionError):
            indiscrete_witness(flat, flat, 4)
