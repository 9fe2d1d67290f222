import random

import pytest

from dlgeom.dlgraph import ball
from dlgeom.errors import PreconditionError
from dlgeom.verify import SCALE_SIZES, SUITES, SuiteReport, run_suite, run_suites
from tests.strategies import DL22, DL32


class TestSuites:
    def test_registry(self):
        assert sorted(SUITES) == [
            'boundary_action', 'cayley_consistency', 'distance_sandwich', 'dynamics',
            'indiscrete', 'lamplighter_algebra', 'rewriting', 'separation',
            'turn_theorem', 'two_turn_rays']

    @pytest.mark.parametrize('name', sorted(SUITES))
    def test_smoke_suite_passes(self, name):
        report = run_suite(name, 0, 'smoke')
        assert report.cases > 0
        assert report.ok, report.failures[:3]

    def test_reproducible(self):
        first = run_suite('separation', 3, 'smoke').to_dict()
        second = run_suite('separation', 3, 'smoke').to_dict()
        assert first == second
        assert 'wall_time' not in first

    def test_timings(self):
        report = run_suite('lamplighter_algebra', 0, 'smoke', timings=True)
        assert report.wall_time is not None
        assert 'wall_time' in report.to_dict()

    def test_run_suites(self):
        reports = run_suites(['turn_theorem', 'lamplighter_algebra', 'turn_theorem'], 0, 'smoke')
        assert [r.suite for r in reports] == ['lamplighter_algebra', 'turn_theorem']

    def test_unknown_names(self):
        with pytest.raises(PreconditionError):
            run_suite('nope', 0, 'smoke')
        with pytest.raises(PreconditionError):
            run_suite('dynamics', 0, 'huge')


class TestSuiteReport:
    def test_record(self):
        report = SuiteReport('demo')
        report.record(True, case=1)
        report.record(False, case=2)
        assert report.cases == 2
        assert not report.ok
        assert report.failures == [{'case': 2}]

    def test_json(self):
        report = SuiteReport('demo', 3, [{'x': 1}], 0.12345)
        data = report.to_dict()
        assert data == {'suite': 'demo', 'cases': 3, 'ok': False,
                        'failures': [{'x': 1}], 'wall_time': 0.123}
        assert SuiteReport.from_dict(data).failures == [{'x': 1}]


class TestDistanceSandwich:
    def test_all_pairs_reduce_to_origin_targets(self):
        sizes = dict(SCALE_SIZES['smoke'], sandwich_all_pairs=True)
        report = SuiteReport('distance_sandwich')
        SUITES['distance_sandwich'](report, random.Random(0), sizes)
        assert report.ok, report.failures[:3]
        dl2_pairs = len(ball(DL22.origin(), sizes['sandwich_dl2'], DL22)) ** 2
        dl3_ball = len(ball(DL32.origin(), sizes['sandwich_dl3'], DL32))
        assert report.cases - dl2_pairs >= dl3_ball

    def test_desk_checks_every_dl3_pair(self):
        assert SCALE_SIZES['desk']['sandwich_all_pairs']
        assert not SCALE_SIZES['smoke']['sandwich_all_pairs']
