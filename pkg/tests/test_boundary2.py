import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dlgeom import periodic
from dlgeom.boundary2 import (BoundaryPoint, ClassIndex, DynamicsRow, SeparationWitness, act,
                              basis_membership, canonical_descriptor, canonical_ray,
                              class_cover, classify, dynamics_report, in_class_union,
                              non_hausdorff_witness, point_of_ray, power_infinity,
                              rebase_ray, separation_witness)
from dlgeom.boundary_d import RayDescriptor
from dlgeom.dlgraph import DLVertex, Move
from dlgeom.errors import ParseError, PreconditionError
from dlgeom.lamplighter import eval_word, multiply
from dlgeom.paths import Path, parse_word
from dlgeom.trees import TreeVertex
from tests.strategies import DL22, DL32, boundary_points, dl_vertices, lamp_stands


def point(side, lamps):
    return BoundaryPoint.from_lamps(side, lamps, 2)


def ray_into(base, x, detour):
    """A geodesic ray from base that descends T_side until its branch agrees
    with x, then climbs along x; detour labels the other tree on the way down."""
    s, cfg = x.side, x.config
    top = base.coords[s]
    floor = min([top.height] + [level for level, _ in top.branch]
                + [u for u in (cfg.lowest_lit(),) if u is not None])
    differ = [u for u in range(floor, top.height) if top.label_at(u) != cfg.value(u)]
    m = differ[0] if differ else top.height
    moves = [Move(1 - s, detour[t % len(detour)], s) for t in range(top.height - m)]
    climb_to = max(m, cfg.start)
    moves += [Move(s, cfg.value(u), 1 - s) for u in range(m, climb_to)]
    labels = periodic.rotate(cfg.tail, climb_to - cfg.start)
    return RayDescriptor(Path(base, tuple(moves), DL22), s, labels, 1 - s)


class TestPoints:
    def test_side_one_json(self):
        x = BoundaryPoint.from_dict({'side': 1, 'head': {'4': 1}}, 2)
        assert x == point(1, {4: 1})
        assert x.lamp(4) == 1 and x.lamp(3) == 0
        assert x.to_dict() == {'side': 1, 'head': {'4': 1}, 'tail': [0], 'tail_from': 3}

    def test_periodic_json(self):
        data = {'side': 0, 'head': {'-2': 1}, 'tail': [0, 1], 'tail_from': 0}
        x = BoundaryPoint.from_dict(data, 2)
        assert x.lamp(-2) == 1 and x.lamp(1) == 1 and x.lamp(2) == 0
        assert BoundaryPoint.from_dict(x.to_dict(), 2) == x

    @given(boundary_points(q=3))
    def test_json_round_trip(self, x):
        assert BoundaryPoint.from_dict(x.to_dict(), 3) == x

    @pytest.mark.parametrize('data', [
        {'side': 2},
        {'head': {}},
        {'side': 0, 'head': {'0': 1}, 'tail_from': 0},
        {'side': 1, 'head': {'-1': 1}},
        {'side': 0, 'head': {'1': 2}},
        {'side': 0, 'tail_from': 'x'},
    ])
    def test_rejects(self, data):
        with pytest.raises(ParseError):
            BoundaryPoint.from_dict(data, 2)

    def test_bad_side(self):
        with pytest.raises(PreconditionError):
            BoundaryPoint(3, periodic.ZERO)


class TestClasses:
    def test_classify(self):
        assert classify(point(1, {4: 1})) == ClassIndex(1, 5)
        assert str(classify(point(1, {4: 1}))) == 'C_5^1'
        assert classify(point(0, {-3: 1, 2: 1})) == ClassIndex(0, 3)
        assert classify(point(0, {2: 1})) == ClassIndex(0, 0)
        assert classify(BoundaryPoint(1, periodic.ZERO)) == ClassIndex(1, 0)

    def test_class_union(self):
        x = point(0, {-3: 1})
        assert in_class_union(x, 0, 3)
        assert in_class_union(x, 0, 1)
        assert not in_class_union(x, 0, 4)
        assert not in_class_union(x, 1, 0)

    def test_canonical_ray(self):
        x = point(0, {-2: 1})
        assert canonical_ray(x, 5, 2).word() == '1(0)-0 1(0)-0 0(1)-1 0(0)-1 0(0)-1'
        with pytest.raises(PreconditionError):
            canonical_ray(x, -1, 2)

    @settings(max_examples=20)
    @given(boundary_points())
    def test_canonical_ray_lands_on_its_point(self, x):
        r = canonical_descriptor(x, 2)
        assert point_of_ray(r) == x
        assert classify(x).n == sum(1 for m in r.prefix.moves if m.down_tree == x.side)


class TestTopology:
    def test_basis_membership(self):
        center = point(0, {-3: 1})
        assert basis_membership(point(0, {-3: 1, -1: 1}), center, 5)
        assert not basis_membership(point(0, {-3: 1, -2: 1}), center, 5)
        assert basis_membership(point(0, {-4: 1}), center, 3)
        assert basis_membership(point(1, {}), center, 3)
        assert not basis_membership(point(1, {5: 1}), center, 3)
        assert basis_membership(point(1, {5: 1}), center, 0)
        with pytest.raises(PreconditionError):
            basis_membership(center, center, -1)

    def test_basis_around_unturned_point(self):
        center = point(0, {1: 1})
        assert basis_membership(point(0, {1: 1, 6: 1}), center, 5)
        assert not basis_membership(point(0, {1: 1, 4: 1}), center, 5)
        assert basis_membership(point(1, {5: 1}), center, 5)
        assert not basis_membership(point(1, {3: 1}), center, 5)

    @given(boundary_points(q=3))
    def test_center_is_in_its_basis_sets(self, x):
        assert all(basis_membership(x, x, k) for k in range(8))

    @pytest.mark.parametrize('k', [0, 1, 4, 9])
    def test_non_hausdorff(self, k):
        x, y = point(0, {0: 1}), point(0, {})
        z = non_hausdorff_witness(x, y, k, 2)
        assert z.side == 1
        assert basis_membership(z, x, k) and basis_membership(z, y, k)

    def test_non_hausdorff_preconditions(self):
        with pytest.raises(PreconditionError):
            non_hausdorff_witness(point(0, {}), point(0, {}), 2, 2)
        with pytest.raises(PreconditionError):
            non_hausdorff_witness(point(0, {-1: 1}), point(0, {}), 2, 2)

    @pytest.mark.parametrize('x,y,k,clopen', [
        (point(0, {-3: 1}), point(0, {-5: 1}), 4, ClassIndex(0, 3)),
        (point(0, {-2: 1}), point(0, {-2: 1, 7: 1}), 12, None),
        (point(0, {}), point(1, {}), 1, None),
    ])
    def test_separation(self, x, y, k, clopen):
        witness = separation_witness(x, y)
        assert witness == SeparationWitness(k, clopen)
        assert SeparationWitness.from_dict(witness.to_dict()) == witness
        assert not basis_membership(y, x, k) and not basis_membership(x, y, k)

    @settings(max_examples=25)
    @given(boundary_points(), boundary_points())
    def test_t1(self, x, y):
        assume(x != y)
        witness = separation_witness(x, y)
        assert not basis_membership(y, x, witness.k)
        assert not basis_membership(x, y, witness.k)

    @given(boundary_points())
    def test_class_cover(self, x):
        cover = class_cover(ClassIndex(0, 2), 2)
        assert len(cover) == 1
        inside = any(basis_membership(x, center, k) for center, k in cover)
        assert inside == (classify(x) == ClassIndex(0, 2))

    def test_class_cover_needs_turned_class(self):
        with pytest.raises(PreconditionError):
            class_cover(ClassIndex(1, 0), 2)


class TestAction:
    def test_translation(self):
        assert act(eval_word('t', 2), point(0, {-3: 1}), 2) == point(0, {-2: 1})
        assert act(eval_word('t', 2), point(1, {4: 1}), 2) == point(1, {5: 1})
        assert act(eval_word('a', 2), point(0, {0: 1}), 2) == point(0, {})

    def test_at_generators(self):
        assert act(eval_word('(at)', 2), point(1, {4: 1}), 2) == point(1, {5: 1, 0: 1})
        assert act(eval_word('(at)^-1', 2), point(0, {-3: 1}), 2) == point(0, {-4: 1, -1: 1})
        expected = BoundaryPoint.from_lamps(1, {1: 1, -1: 2}, 3)
        assert act(eval_word('(at)^-1', 3), BoundaryPoint.from_lamps(1, {2: 1}, 3), 3) == expected

    @given(boundary_points(q=3), st.sampled_from(['t', 't^-1', '(at)', '(at)^-1']))
    def test_generators_shift_and_toggle(self, x, word):
        lamps = {p: x.lamp(p) for p in range(-14, 15)}
        if word == '(at)^-1':
            lamps[0] = (lamps[0] - 1) % 3
        step = -1 if word.endswith('^-1') else 1
        expected = {p + step: s for p, s in lamps.items()}
        if word == '(at)':
            expected[0] = (expected[0] + 1) % 3
        y = act(eval_word(word, 3), x, 3)
        assert y.side == x.side
        assert [y.lamp(p) for p in range(-12, 13)] == [expected[p] for p in range(-12, 13)]

    @given(lamp_stands(), lamp_stands(), boundary_points())
    def test_action_composes(self, g, h, x):
        assert act(g, act(h, x, 2), 2) == act(multiply(g, h, 2), x, 2)

    def test_power_infinity(self):
        assert power_infinity(eval_word('(at)', 2), 2).to_dict() == {
            'side': 0, 'head': {}, 'tail': [1], 'tail_from': 0}
        minus = power_infinity(eval_word('(at)^-1', 2), 2)
        assert minus.to_dict() == {'side': 1, 'head': {}, 'tail': [1], 'tail_from': -1}
        assert power_infinity(eval_word('t^-2', 2), 2) == BoundaryPoint(1, periodic.ZERO)
        with pytest.raises(PreconditionError):
            power_infinity(eval_word('a', 2), 2)

    @given(lamp_stands(q=3))
    def test_power_infinity_is_fixed(self, g):
        assume(g.pos != 0)
        attractor = power_infinity(g, 3)
        assert act(g, attractor, 3) == attractor

    def test_dynamics_for_t(self):
        rows = dynamics_report(eval_word('t', 2), point(0, {-1: 1}), 6, 2)
        assert [(r.radius, r.bound) for r in rows] == [(n - 1, n - 1) for n in range(1, 7)]
        assert all(r.holds for r in rows)
        assert DynamicsRow.from_dict(rows[2].to_dict()) == rows[2]

    def test_dynamics_north_south(self):
        rows = dynamics_report(eval_word('(at)', 2), point(0, {-1: 1}), 10, 2)
        assert all(r.holds for r in rows)
        assert [r.radius for r in rows] == sorted(r.radius for r in rows)

    def test_dynamics_needs_attracting_side(self):
        with pytest.raises(PreconditionError):
            dynamics_report(eval_word('t', 2), point(1, {}), 3, 2)


class TestRays:
    def test_rebase(self):
        base = DLVertex((TreeVertex(1, ((0, 1),)), TreeVertex(-1)))
        r = RayDescriptor(Path(base, (), DL22), 0, (0,), 1)
        x, certificate = rebase_ray(r)
        assert classify(x) == ClassIndex(0, 0)
        assert x.lamp(0) == 1
        assert certificate.ok

    @settings(max_examples=15)
    @given(boundary_points())
    def test_rebase_canonical_ray(self, x):
        y, certificate = rebase_ray(canonical_descriptor(x, 2))
        assert y == x
        assert certificate.ok and certificate.distances == [0, 0]

    @pytest.mark.parametrize('side', [0, 1])
    @pytest.mark.parametrize('periodic_tail', [False, True])
    @settings(max_examples=15)
    @given(data=st.data())
    def test_rebase_from_any_base(self, side, periodic_tail, data):
        x = data.draw(boundary_points(side=side, periodic_tail=periodic_tail))
        base = data.draw(dl_vertices())
        detour = data.draw(st.lists(st.integers(0, 1), min_size=1, max_size=4))
        r = ray_into(base, x, detour)
        y, certificate = rebase_ray(r, cap=8)
        assert y == x
        assert certificate.ok

    def test_rebase_rejects_non_geodesic(self):
        r = RayDescriptor(Path(DL22.origin(), parse_word('0(1)-1 1(0)-0'), DL22), 0, (0,), 1)
        with pytest.raises(PreconditionError):
            rebase_ray(r)

    def test_needs_dl2(self):
        r = RayDescriptor(Path(DL32.origin(), (), DL32), 0, (0,), 1)
        with pytest.raises(PreconditionError):
            point_of_ray(r)
        with pytest.raises(PreconditionError):
            rebase_ray(r)
