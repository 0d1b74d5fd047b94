"""Edge-colored complete graphs: data model, hypothesis checks, ECG I/O and generators.

Vertices are 0-based everywhere in the library. The ECG file format and all
human-facing reports use 1-based vertex ids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

Triangle = tuple[int, int, int]

ECG_HEADER = "ECG 1"
RANDOM_CHUNK = 1024


class ParseError(ValueError):
    """Malformed ECG input. ``lineno`` is 1-based, or None for end-of-file errors."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)


def edge_count(n: int) -> int:
    return n * (n - 1) // 2


def edge_list(n: int) -> list[tuple[int, int]]:
    """Edges in the canonical order (0,1),(0,2),...,(0,n-1),(1,2),...,(n-2,n-1)."""
    return list(itertools.combinations(range(n), 2))


@dataclass(frozen=True)
class EdgeColoredGraph:
    """Complete graph K_n with one integer color per edge.

    ``colors`` lists the edge colors in :func:`edge_list` order. The graph is
    immutable; ``matrix`` is a derived lookup table with -1 on the diagonal.
    """

    n: int
    colors: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need n >= 3, got {self.n}")
        colors = tuple(int(c) for c in self.colors)
        if len(colors) != edge_count(self.n):
            raise ValueError(f"K_{self.n} has {edge_count(self.n)} edges, got {len(colors)} colors")
        if any(c < 0 for c in colors):
            raise ValueError("color ids must be non-negative")
        rows = [[-1] * self.n for _ in range(self.n)]
        for (i, j), c in zip(edge_list(self.n), colors):
            rows[i][j] = rows[j][i] = c
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in rows))

    @classmethod
    def from_function(cls, n: int, color) -> "EdgeColoredGraph":
        """Build from a callable ``color(i, j)`` evaluated for i < j."""
        return cls(n, tuple(color(i, j) for i, j in edge_list(n)))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "EdgeColoredGraph":
        n = len(rows)
        for i, j in edge_list(n):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"asymmetric colors on edge {{{i}, {j}}}")
        return cls(n, tuple(rows[i][j] for i, j in edge_list(n)))

    def color(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError(f"no self-loop at vertex {i}")
        self._check_vertex(i)
        self._check_vertex(j)
        return self.matrix[i][j]

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    @property
    def vertices(self) -> range:
        return range(self.n)

    def normalized(self) -> "EdgeColoredGraph":
        """Relabel colors in order of first appearance (restricted-growth form)."""
        return EdgeColoredGraph(self.n, restricted_growth(self.colors))


def restricted_growth(seq: Iterable[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in seq)


def color_degree(g: EdgeColoredGraph, v: int) -> int:
    g._check_vertex(v)
    row = g.matrix[v]
    return len({row[u] for u in range(g.n) if u != v})


def min_color_degree(g: EdgeColoredGraph) -> int:
    return min(color_degree(g, v) for v in g.vertices)


def mono_max_statistic(g: EdgeColoredGraph) -> int:
    """Largest number of same-colored edges at a single vertex."""
    best = 0
    for v in g.vertices:
        counts: dict[int, int] = {}
        for u in g.vertices:
            if u != v:
                c = g.matrix[v][u]
                counts[c] = counts.get(c, 0) + 1
        best = max(best, max(counts.values()))
    return best


def is_monochromatic(g: EdgeColoredGraph, t: Triangle) -> bool:
    a, b, c = t
    m = g.matrix
    return m[a][b] == m[a][c] == m[b][c]


def is_rainbow(g: EdgeColoredGraph, t: Triangle) -> bool:
    a, b, c = t
    m = g.matrix
    return len({m[a][b], m[a][c], m[b][c]}) == 3


def monochromatic_triangles(g: EdgeColoredGraph) -> list[Triangle]:
    return [t for t in itertools.combinations(range(g.n), 3) if is_monochromatic(g, t)]


def joint_monochromatic_pairs(g: EdgeColoredGraph) -> list[tuple[Triangle, Triangle]]:
    """Pairs of distinct monochromatic triangles that share at least one vertex."""
    mono = monochromatic_triangles(g)
    return [(s, t) for s, t in itertools.combinations(mono, 2) if set(s) & set(t)]


def has_joint_monochromatic_triangles(g: EdgeColoredGraph) -> bool:
    # Fast path for sweeps: joint iff some vertex lies on two monochromatic triangles.
    seen = [False] * g.n
    for t in itertools.combinations(range(g.n), 3):
        if is_monochromatic(g, t):
            for v in t:
                if seen[v]:
                    return True
                seen[v] = True
    return False


def meets_degree_condition(g: EdgeColoredGraph) -> bool:
    """Exact rational test of min color degree >= (n+1)/2."""
    return 2 * min_color_degree(g) >= g.n + 1


@dataclass(frozen=True)
class HypothesisReport:
    n: int
    min_color_degree: int
    threshold: Fraction
    mono_triangles: tuple[Triangle, ...]
    joint_pairs: tuple[tuple[Triangle, Triangle], ...]

    @property
    def degree_ok(self) -> bool:
        return self.min_color_degree >= self.threshold

    @property
    def satisfies(self) -> bool:
        return self.degree_ok and not self.joint_pairs


def check_hypotheses(g: EdgeColoredGraph) -> HypothesisReport:
    return HypothesisReport(
        n=g.n,
        min_color_degree=min_color_degree(g),
        threshold=Fraction(g.n + 1, 2),
        mono_triangles=tuple(monochromatic_triangles(g)),
        joint_pairs=tuple(joint_monochromatic_pairs(g)),
    )


def satisfies_hypotheses(g: EdgeColoredGraph) -> bool:
    """Same verdict as ``check_hypotheses(g).satisfies`` without building the lists."""
    return meets_degree_condition(g) and not has_joint_monochromatic_triangles(g)


# ---------------------------------------------------------------------------
# ECG text format


def format_ecg(g: EdgeColoredGraph) -> str:
    lines = [ECG_HEADER, str(g.n)]
    for i in range(g.n - 1):
        lines.append(" ".join(str(g.matrix[i][j]) for j in range(i + 1, g.n)))
    return "\n".join(lines) + "\n"


def parse_ecg(text: str) -> EdgeColoredGraph:
    content: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            content.append((lineno, line))
    if not content:
        raise ParseError("empty input")
    lineno, header = content[0]
    if header.split() != ECG_HEADER.split():
        raise ParseError(f"expected header {ECG_HEADER!r}, got {header!r}", lineno)
    if len(content) < 2:
        raise ParseError("missing vertex count")
    lineno, count = content[1]
    try:
        n = int(count)
    except ValueError:
        raise ParseError(f"vertex count is not an integer: {count!r}", lineno) from None
    if n < 3:
        raise ParseError(f"vertex count must be >= 3, got {n}", lineno)
    rows = content[2:]
    if len(rows) != n - 1:
        last = rows[-1][0] if rows else lineno
        raise ParseError(f"expected {n - 1} color rows, got {len(rows)}", last)
    colors: list[int] = []
    for i, (lineno, line) in enumerate(rows):
        tokens = line.split()
        if len(tokens) != n - 1 - i:
            raise ParseError(f"row {i + 1} needs {n - 1 - i} entries, got {len(tokens)}", lineno)
        for tok in tokens:
            try:
                c = int(tok)
            except ValueError:
                raise ParseError(f"non-integer color {tok!r}", lineno) from None
            if c < 0:
                raise ParseError(f"negative color {c}", lineno)
            colors.append(c)
    return EdgeColoredGraph(n, tuple(colors))


def read_graph(path: str | Path) -> EdgeColoredGraph:
    return parse_ecg(Path(path).read_text())


def write_graph(g: EdgeColoredGraph, path: str | Path) -> None:
    Path(path).write_text(format_ecg(g))


# ---------------------------------------------------------------------------
# Generators


def canonical_colorings(n: int, prefix: Sequence[int] = ()) -> Iterator[EdgeColoredGraph]:
    """Every coloring of K_n exactly once up to color relabeling.

    Colorings are restricted-growth sequences over the edge list, produced in
    lexicographic order. A non-empty ``prefix`` (itself restricted-growth)
    restricts the stream to completions of that prefix.
    """
    m = edge_count(n)
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if tuple(prefix) != restricted_growth(prefix) or len(prefix) > m:
        raise ValueError(f"invalid prefix {prefix!r}")
    for seq in _rgs(m, tuple(prefix)):
        yield EdgeColoredGraph(n, seq)


def _rgs(m: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    seq = list(prefix) + [0] * (m - len(prefix))
    k = len(prefix)
    if k == m:
        yield tuple(seq)
        return
    # top[i] = max(seq[:i]) + 1 is the largest value allowed at position i
    top = [0] * (m + 1)
    for i in range(1, k + 1):
        top[i] = max(top[i - 1], seq[i - 1] + 1)
    if k == 0:
        # first edge is always color 0
        k = 1
        top[1] = 1
    for i in range(k, m):
        top[i + 1] = top[i]
    while True:
        yield tuple(seq)
        i = m - 1
        while i >= k and seq[i] + 1 > top[i]:
            i -= 1
        if i < k:
            return
        seq[i] += 1
        top[i + 1] = max(top[i], seq[i] + 1)
        for j in range(i + 1, m):
            seq[j] = 0
            top[j + 1] = top[j]


def rgs_prefixes(n: int, length: int) -> list[tuple[int, ...]]:
    """All restricted-growth prefixes of the given length, in lexicographic order."""
    length = min(length, edge_count(n))
    return list(_rgs(length, ()))


def random_chunk(n: int, color_budget: int, seed: int, chunk: int) -> list[EdgeColoredGraph]:
    """Graphs ``chunk*RANDOM_CHUNK ... (chunk+1)*RANDOM_CHUNK - 1`` of a seeded random stream."""
    rng = np.random.default_rng([seed, chunk])
    draws = rng.integers(0, color_budget, size=(RANDOM_CHUNK, edge_count(n)))
    return [EdgeColoredGraph(n, restricted_growth(row.tolist())) for row in draws]


def random_colorings(n: int, color_budget: int, seed: int) -> Iterator[EdgeColoredGraph]:
    """Endless stream of independent uniform colorings over ``range(color_budget)``."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if color_budget < 1:
        raise ValueError("color_budget must be >= 1")
    for chunk in itertools.count():
        yield from random_chunk(n, color_budget, seed, chunk)


def generate(n: int, mode: str = "exhaustive", color_budget: int | None = None,
             seed: int = 0) -> Iterator[EdgeColoredGraph]:
    if mode == "exhaustive":
        return canonical_colorings(n)
    if mode == "random":
        return random_colorings(n, color_budget or edge_count(n), seed)
    raise ValueError(f"unknown mode {mode!r}")


def random_graph(n: int, color_budget: int, rng: np.random.Generator) -> EdgeColoredGraph:
    return EdgeColoredGraph(n, restricted_growth(rng.integers(0, color_budget, size=edge_count(n)).tolist()))


# Small named graphs used by tests, docs and the CLI help.

def rainbow_k3() -> EdgeColoredGraph:
    return EdgeColoredGraph(3, (0, 1, 2))


def monochromatic(n: int) -> EdgeColoredGraph:
    return EdgeColoredGraph(n, (0,) * edge_count(n))


def matching_k4() -> EdgeColoredGraph:
    """K_4 colored by its three perfect matchings: {01,23}->0, {02,13}->1, {03,12}->2."""
    match = {(0, 1): 0, (2, 3): 0, (0, 2): 1, (1, 3): 1, (0, 3): 2, (1, 2): 2}
    return EdgeColoredGraph.from_function(4, lambda i, j: match[(i, j)])


def dependent_coloring(n: int, rng: np.random.Generator, fresh: float = 0.05) -> EdgeColoredGraph:
    """Each edge takes the label of one of its ends; with probability ``fresh`` a new color.

    Unlike uniform colorings these often leave cycles that cannot be extended,
    which is where the cycle-structure checks have something to say.
    """
    labels = rng.integers(0, n, size=n)
    colors = []
    for k, (i, j) in enumerate(edge_list(n)):
        if rng.random() < fresh:
            colors.append(n + k)
        else:
            colors.append(int(labels[i] if rng.random() < 0.5 else labels[j]))
    return EdgeColoredGraph(n, restricted_growth(colors))
