import json

import pytest

from propercycles import verify
from propercycles.graph import EdgeColoredGraph, format_ecg, mono_max_statistic, monochromatic
from propercycles.verify import (
    CHECKS,
    ConfigError,
    SweepConfig,
    check_lemma31,
    check_lemma32,
    check_main,
    check_proper_c4,
    check_rainbow_c3,
    check_w3_bound,
    replay,
    run_sweep,
)


class TestChecks:
    def test_main(self, k3, match4, mono4):
        assert check_main(k3).status == "pass"
        assert check_main(match4).status == "pass"
        assert check_main(mono4).status == "skip"

    def test_main_reports_cell(self, match4, monkeypatch):
        monkeypatch.setattr(verify, "first_uncovered_cell", lambda g: (1, 4))
        res = check_main(match4)
        assert res.failed and res.detail == "no proper cycle at vertex 2, length 4"

    def test_rainbow_c3(self, k3, match4, mono4):
        assert check_rainbow_c3(k3).status == "pass"
        assert check_rainbow_c3(match4).status == "pass"
        assert check_rainbow_c3(mono4).status == "skip"

    def test_proper_c4(self, k3, match4):
        assert check_proper_c4(match4).status == "pass"
        assert check_proper_c4(k3).status == "skip"

    def test_lemma_checks_vacuous_when_everything_extends(self):
        g = EdgeColoredGraph(6, tuple(range(15)))
        for check in (check_lemma31, check_w3_bound, check_lemma32):
            assert check(g).status == "pass"
        assert verify.stuck_cycles(g) == ()

    def test_lemma_checks_on_planted(self, planted7):
        g, c, w = planted7
        for check in (check_lemma31, check_w3_bound, check_lemma32):
            assert check(g).status == "pass"

    def test_lemma_checks_skip_joint(self, mono4):
        assert check_lemma31(mono4).status == "skip"

    def test_mono_max(self, k3, mono4, match4):
        assert mono_max_statistic(mono4) == 3
        assert mono_max_statistic(k3) == 1
        assert mono_max_statistic(match4) == 1


class TestConfig:
    @pytest.mark.parametrize("kwargs", [
        dict(n=6, mode="exhaustive"),
        dict(n=9, mode="exhaustive"),
        dict(n=5, mode="random", samples=0),
        dict(n=5, checks=("nope",)),
        dict(n=5, checks=()),
        dict(n=8, mode="random", checks=("lemma31",)),
        dict(n=5, color_budget=0),
        dict(n=5, parallelism=0),
        dict(n=2),
    ])
    def test_guards(self, kwargs):
        with pytest.raises(ConfigError):
            SweepConfig(**kwargs)

    def test_auto_budget(self):
        assert SweepConfig(n=6, mode="random").budget == 15


class TestSweep:
    def test_n4_count(self):
        rep = run_sweep(SweepConfig(n=4, checks=("main",)))
        assert rep.total_generated == 203
        assert rep.checks["main"].failed == 0

    def test_n3_count(self):
        assert run_sweep(SweepConfig(n=3)).total_generated == 5

    def test_random_sample_count(self):
        rep = run_sweep(SweepConfig(n=5, mode="random", samples=1500, seed=3))
        assert rep.total_generated == 1500

    def test_parallel_matches_serial(self):
        cfg = dict(n=6, mode="random", samples=2500, seed=9, color_budget=5,
                   checks=("main", "rainbow_c3", "proper_c4", "lemma31"))
        a = run_sweep(SweepConfig(**cfg, parallelism=1))
        b = run_sweep(SweepConfig(**cfg, parallelism=3))
        assert a == b
        assert a.to_json() == b.to_json()

    def test_tally_identity(self):
        rep = run_sweep(SweepConfig(n=4, checks=tuple(CHECKS)))
        for t in rep.checks.values():
            assert t.failed == t.checked - t.passed
            assert t.checked + t.skipped == rep.total_generated

    def test_filter_soundness(self, monkeypatch):
        seen = []

        def spy(g):
            seen.append(g)
            return check_main(g)

        monkeypatch.setitem(CHECKS, "main", spy)
        rep = run_sweep(SweepConfig(n=4, checks=("main",)))
        from propercycles.graph import check_hypotheses
        assert sum(check_hypotheses(g).satisfies for g in seen) == rep.passed_filter

    def test_counterexample_replay(self, monkeypatch):
        def picky(g):
            # fails on every graph whose first edge color repeats on the last edge
            if g.colors[0] == g.colors[-1]:
                return verify.CheckResult("fail", "first and last edge agree")
            return verify.PASS

        monkeypatch.setitem(CHECKS, "main", picky)
        rep = run_sweep(SweepConfig(n=4, checks=("main",)))
        assert rep.checks["main"].failed > 0
        assert rep.counterexamples
        for ce in rep.counterexamples:
            assert replay(ce.ecg, ce.check).failed
            assert replay(ce.ecg, ce.check).detail == ce.detail
        data = json.loads(rep.to_json())
        assert data["counterexamples"][0]["ecg"] == rep.counterexamples[0].ecg
        assert "note" not in rep.to_text()

    def test_joint_note_on_lemma_failure(self, monkeypatch):
        monkeypatch.setitem(CHECKS, "lemma31", lambda g: verify.CheckResult("fail", "x"))
        rep = run_sweep(SweepConfig(n=3, checks=("lemma31",)))
        assert "joint monochromatic" in rep.to_text()

    def test_report_json_has_no_timing(self):
        rep = run_sweep(SweepConfig(n=3))
        assert "wall_time" not in json.loads(rep.to_json())
        assert "wall time" in rep.to_text()


def test_replay_main_on_graph():
    assert replay(format_ecg(monochromatic(4)), "main").status == "skip"
