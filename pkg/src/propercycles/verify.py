"""Sweep engine: generate colorings, filter by hypotheses, run checks, aggregate.

A check takes a graph and returns a :class:`CheckResult` with status
``pass``, ``fail`` or ``skip`` (the check's hypotheses do not hold).
"""

from __future__ import annotations

import functools
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from propercycles.cycles import (
    CycleView,
    find_proper_cycle_through,
    find_rainbow_triangle_through,
    first_uncovered_cell,
    oracle_enumerate_proper_cycles,
)
from propercycles.graph import (
    RANDOM_CHUNK,
    EdgeColoredGraph,
    canonical_colorings,
    edge_count,
    format_ecg,
    has_joint_monochromatic_triangles,
    meets_degree_condition,
    mono_max_statistic,
    parse_ecg,
    random_chunk,
    rgs_prefixes,
    satisfies_hypotheses,
)
from propercycles.structure import (
    build_decomposition,
    classify_outside,
    fact1_witness,
    scan_boundaries,
    set_has_dp,
)

__all__ = [
    "CHECKS", "CheckResult", "SweepConfig", "SweepReport", "ConfigError",
    "run_sweep", "mono_max_statistic", "replay",
]

EXHAUSTIVE_MAX_N = 5
STRUCTURE_MAX_N = 7
MAX_COUNTEREXAMPLES = 50
PREFIX_LENGTH = 4

JOINT_NOTE = ("lemma checks failed; first suspect the reading of 'joint monochromatic "
              "triangles' as sharing a vertex")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CheckResult:
    status: str
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == "fail"


PASS = CheckResult("pass")
SKIP = CheckResult("skip")


def _fmt_cell(v: int, ell: int) -> str:
    return f"vertex {v + 1}, length {ell}"


def check_main(g: EdgeColoredGraph) -> CheckResult:
    if not satisfies_hypotheses(g):
        return SKIP
    cell = first_uncovered_cell(g)
    if cell is None:
        return PASS
    return CheckResult("fail", f"no proper cycle at {_fmt_cell(*cell)}")


def check_rainbow_c3(g: EdgeColoredGraph) -> CheckResult:
    if not meets_degree_condition(g):
        return SKIP
    for v in g.vertices:
        if find_rainbow_triangle_through(g, v) is None:
            return CheckResult("fail", f"vertex {v + 1} lies on no rainbow triangle")
    return PASS


def check_proper_c4(g: EdgeColoredGraph) -> CheckResult:
    if g.n < 4 or not meets_degree_condition(g):
        return SKIP
    covered = [False] * g.n
    for v in g.vertices:
        if covered[v]:
            continue
        c = find_proper_cycle_through(g, v, 4)
        if c is None:
            return CheckResult("fail", f"vertex {v + 1} lies on no proper 4-cycle")
        for u in c:
            covered[u] = True
    return PASS


def check_fact1(g: EdgeColoredGraph) -> CheckResult:
    """Every DP_v subset of every vertex ``v`` has a low-degree witness."""
    for v in g.vertices:
        others = [u for u in g.vertices if u != v]
        for size in range(1, len(others) + 1):
            for a in itertools.combinations(others, size):
                if set_has_dp(g, a, v) and fact1_witness(g, a, v) is None:
                    return CheckResult("fail", f"v={v + 1}, A={[x + 1 for x in a]}: no witness")
    return PASS


@functools.lru_cache(maxsize=8)
def stuck_cycles(g: EdgeColoredGraph) -> tuple[tuple[int, CycleView], ...]:
    """(v, C) with C a proper cycle through v, 4 <= |C| <= n-1, and no proper
    (|C|+1)-cycle through v. C starts at v; both orientations are listed."""
    out = []
    for v in g.vertices:
        for ell in range(4, g.n):
            if find_proper_cycle_through(g, v, ell + 1) is not None:
                continue
            for c in oracle_enumerate_proper_cycles(g, v, ell):
                c = c.rotated_to(v)
                out.append((v, c))
                out.append((v, c.reversed()))
    return tuple(out)


def _structure_guard(g: EdgeColoredGraph) -> bool:
    return g.n <= STRUCTURE_MAX_N and not has_joint_monochromatic_triangles(g)


def check_lemma31(g: EdgeColoredGraph) -> CheckResult:
    if not _structure_guard(g):
        return SKIP
    for v, c in stuck_cycles(g):
        for w in sorted(classify_outside(g, c).w3):
            if build_decomposition(g, c, w) is None:
                scan = scan_boundaries(g, c, w)
                return CheckResult(
                    "fail",
                    f"cycle {c.format()}, w={w + 1}: boundary positions "
                    f"x={[i + 1 for i in scan.xs]} y={[i + 1 for i in scan.ys]} "
                    f"z={[i + 1 for i in scan.zs]}")
    return PASS


def check_w3_bound(g: EdgeColoredGraph) -> CheckResult:
    if not _structure_guard(g):
        return SKIP
    for v, c in stuck_cycles(g):
        w3 = sorted(classify_outside(g, c).w3)
        if 2 * len(w3) > len(c):
            return CheckResult("fail", f"cycle {c.format()}: |W3|={len(w3)} > {len(c)}/2")
        used: set[int] = set()
        for w in w3:
            dec = build_decomposition(g, c, w)
            if dec is None:
                return CheckResult("fail", f"cycle {c.format()}, w={w + 1}: no triangle edge")
            tri = {w, c.at(dec.y), c.at(dec.y + 1)}
            if tri & used:
                return CheckResult("fail", f"cycle {c.format()}: triangles at w={w + 1} overlap")
            used |= tri
    return PASS


def check_lemma32(g: EdgeColoredGraph) -> CheckResult:
    if not _structure_guard(g):
        return SKIP
    m = g.matrix
    for v, c in stuck_cycles(g):
        w2 = sorted(classify_outside(g, c).w2)
        if len(w2) < 2:
            continue
        for w in w2:
            if len({m[w][u] for u in c}) != len(c):
                return CheckResult("fail", f"cycle {c.format()}, w={w + 1}: repeated color to C")
            if not set_has_dp(g, c.vertices, w):
                return CheckResult("fail", f"cycle {c.format()}, w={w + 1}: C lacks DP_w")
    return PASS


CHECKS = {
    "main": check_main,
    "rainbow_c3": check_rainbow_c3,
    "proper_c4": check_proper_c4,
    "fact1": check_fact1,
    "lemma31": check_lemma31,
    "w3_bound": check_w3_bound,
    "lemma32": check_lemma32,
}
STRUCTURE_CHECKS = {"fact1", "lemma31", "w3_bound", "lemma32"}


def replay(ecg: str, check: str) -> CheckResult:
    return CHECKS[check](parse_ecg(ecg))


# ---------------------------------------------------------------------------
# Sweeps


@dataclass(frozen=True)
class SweepConfig:
    n: int
    mode: str = "exhaustive"
    samples: int = 1000
    seed: int = 0
    color_budget: int | str = "auto"
    checks: tuple[str, ...] = ("main",)
    parallelism: int = field(default=1, compare=False)

    def __post_init__(self):
        if self.n < 3:
            raise ConfigError(f"n must be >= 3, got {self.n}")
        if self.mode not in ("exhaustive", "random"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.mode == "exhaustive" and self.n > EXHAUSTIVE_MAX_N:
            raise ConfigError(f"exhaustive mode is limited to n <= {EXHAUSTIVE_MAX_N}")
        if self.mode == "random" and self.samples < 1:
            raise ConfigError("random mode needs samples >= 1")
        if self.color_budget != "auto" and (not isinstance(self.color_budget, int)
                                            or self.color_budget < 1):
            raise ConfigError(f"bad color budget {self.color_budget!r}")
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown or not self.checks:
            raise ConfigError(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
        if len(set(self.checks)) != len(self.checks):
            raise ConfigError("duplicate checks")
        if set(self.checks) & STRUCTURE_CHECKS and self.n > STRUCTURE_MAX_N:
            raise ConfigError(f"structure checks are limited to n <= {STRUCTURE_MAX_N}")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")

    @property
    def budget(self) -> int:
        return edge_count(self.n) if self.color_budget == "auto" else int(self.color_budget)

    def to_dict(self) -> dict:
        d = {"n": self.n, "mode": self.mode, "checks": list(self.checks),
             "color_budget": self.color_budget}
        if self.mode == "random":
            d.update(samples=self.samples, seed=self.seed)
        return d


@dataclass
class CheckTally:
    checked: int = 0
    passed: int = 0
    skipped: int = 0

    @property
    def failed(self) -> int:
        return self.checked - self.passed

    def merge(self, other: "CheckTally") -> None:
        self.checked += other.checked
        self.passed += other.passed
        self.skipped += other.skipped

    def to_dict(self) -> dict:
        return {"checked": self.checked, "passed": self.passed,
                "failed": self.failed, "skipped": self.skipped}


@dataclass(frozen=True)
class Counterexample:
    index: int
    check: str
    detail: str
    ecg: str

    def to_dict(self) -> dict:
        return {"index": self.index, "check": self.check, "detail": self.detail, "ecg": self.ecg}


@dataclass
class SweepReport:
    config: SweepConfig
    total_generated: int = 0
    passed_filter: int = 0
    checks: dict[str, CheckTally] = field(default_factory=dict)
    counterexamples: list[Counterexample] = field(default_factory=list)
    wall_time: float = field(default=0.0, compare=False)

    @property
    def failures(self) -> int:
        return sum(t.failed for t in self.checks.values())

    def to_dict(self) -> dict:
        # wall_time is left out so identical runs serialize identically
        return {
            "config": self.config.to_dict(),
            "total_generated": self.total_generated,
            "passed_filter": self.passed_filter,
            "checks": {k: t.to_dict() for k, t in self.checks.items()},
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        cfg = self.config
        lines = [f"sweep n={cfg.n} mode={cfg.mode} budget={cfg.budget}"
                 + (f" samples={cfg.samples} seed={cfg.seed}" if cfg.mode == "random" else ""),
                 f"generated: {self.total_generated}",
                 f"passed hypothesis filter: {self.passed_filter}"]
        if self.total_generated:
            lines[-1] += f" ({100.0 * self.passed_filter / self.total_generated:.1f}%)"
        for name, t in self.checks.items():
            lines.append(f"  {name:<11} checked={t.checked} passed={t.passed} "
                         f"failed={t.failed} skipped={t.skipped}")
        for ce in self.counterexamples:
            lines.append(f"counterexample #{ce.index} [{ce.check}]: {ce.detail}")
        if any(self.checks[k].failed for k in self.checks if k in ("lemma31", "w3_bound", "lemma32")):
            lines.append("note: " + JOINT_NOTE)
        lines.append(f"wall time: {self.wall_time:.2f}s")
        return "\n".join(lines) + "\n"


def _work_units(cfg: SweepConfig) -> list:
    if cfg.mode == "exhaustive":
        return rgs_prefixes(cfg.n, PREFIX_LENGTH)
    chunks = -(-cfg.samples // RANDOM_CHUNK)
    return list(range(chunks))


def _unit_graphs(cfg: SweepConfig, unit):
    if cfg.mode == "exhaustive":
        yield from canonical_colorings(cfg.n, unit)
        return
    graphs = random_chunk(cfg.n, cfg.budget, cfg.seed, unit)
    keep = min(RANDOM_CHUNK, cfg.samples - unit * RANDOM_CHUNK)
    yield from graphs[:keep]


def _run_unit(cfg: SweepConfig, unit) -> SweepReport:
    part = SweepReport(cfg, checks={name: CheckTally() for name in cfg.checks})
    funcs = [(name, CHECKS[name]) for name in cfg.checks]
    for g in _unit_graphs(cfg, unit):
        index = part.total_generated
        part.total_generated += 1
        if satisfies_hypotheses(g):
            part.passed_filter += 1
        for name, fn in funcs:
            res = fn(g)
            tally = part.checks[name]
            if res.status == "skip":
                tally.skipped += 1
                continue
            tally.checked += 1
            if res.status == "pass":
                tally.passed += 1
            elif len(part.counterexamples) < MAX_COUNTEREXAMPLES:
                part.counterexamples.append(Counterexample(index, name, res.detail, format_ecg(g)))
        stuck_cycles.cache_clear()
    return part


def run_sweep(cfg: SweepConfig) -> SweepReport:
    """Run every configured check over the configured graph stream.

    Work is split into units (restricted-growth prefixes or random chunks)
    and merged in unit order, so the report does not depend on parallelism.
    """
    start = time.perf_counter()
    units = _work_units(cfg)
    work = functools.partial(_run_unit, cfg)
    if cfg.parallelism == 1:
        parts = map(work, units)
        report = _merge(cfg, parts)
    else:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            report = _merge(cfg, pool.map(work, units))
    report.wall_time = time.perf_counter() - start
    return report


def _merge(cfg: SweepConfig, parts) -> SweepReport:
    report = SweepReport(cfg, checks={name: CheckTally() for name in cfg.checks})
    for part in parts:
        offset = report.total_generated
        for ce in part.counterexamples:
            if len(report.counterexamples) < MAX_COUNTEREXAMPLES:
                report.counterexamples.append(
                    Counterexample(ce.index + offset, ce.check, ce.detail, ce.ecg))
        report.total_generated += part.total_generated
        report.passed_filter += part.passed_filter
        for name, t in part.checks.items():
            report.checks[name].merge(t)
    return report
