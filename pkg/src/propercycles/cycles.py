"""Proper cycles: validity, a pruned backtracking finder and a brute-force oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from propercycles.graph import EdgeColoredGraph, Triangle

ORACLE_MAX_N = 10


@dataclass(frozen=True)
class CycleView:
    """Vertex sequence read cyclically: ``at(k)`` accepts any integer index."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        if len(vs) < 3:
            raise ValueError(f"a cycle needs at least 3 vertices, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise ValueError(f"repeated vertex in cycle {vs}")
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def at(self, k: int) -> int:
        return self.vertices[k % len(self.vertices)]

    def position(self, v: int) -> int:
        return self.vertices.index(v)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def rotated_to(self, v: int) -> "CycleView":
        k = self.position(v)
        return CycleView(self.vertices[k:] + self.vertices[:k])

    def reversed(self) -> "CycleView":
        """Same cycle traversed the other way, still starting at the first vertex."""
        vs = self.vertices
        return CycleView((vs[0],) + tuple(reversed(vs[1:])))

    def replaced(self, k: int, v: int) -> "CycleView":
        vs = list(self.vertices)
        vs[k % len(vs)] = v
        return CycleView(tuple(vs))

    def canonical(self) -> "CycleView":
        """Smallest vertex first, then its smaller neighbour."""
        c = self.rotated_to(min(self.vertices))
        if c.vertices[1] > c.vertices[-1]:
            c = c.reversed()
        return c

    def check_on(self, g: EdgeColoredGraph) -> None:
        for v in self.vertices:
            if not 0 <= v < g.n:
                raise ValueError(f"cycle vertex {v} out of range for n={g.n}")

    def format(self) -> str:
        return ",".join(str(v + 1) for v in self.vertices)

    @classmethod
    def parse(cls, text: str) -> "CycleView":
        try:
            return cls(tuple(int(tok) - 1 for tok in text.replace(" ", "").split(",") if tok))
        except ValueError as exc:
            raise ValueError(f"bad cycle {text!r}: {exc}") from None


def improper_seam(g: EdgeColoredGraph, c: CycleView) -> int | None:
    """Index k such that edges (k-1,k) and (k,k+1) share a color, or None."""
    c.check_on(g)
    vs, m, ell = c.vertices, g.matrix, len(c)
    for k in range(ell):
        prev, here, nxt = vs[k - 1], vs[k], vs[(k + 1) % ell]
        if m[prev][here] == m[here][nxt]:
            return k
    return None


def is_proper_cycle(g: EdgeColoredGraph, c: CycleView) -> bool:
    return improper_seam(g, c) is None


def _check_length(g: EdgeColoredGraph, v: int, length: int) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    if not 3 <= length <= g.n:
        raise ValueError(f"cycle length {length} outside 3..{g.n}")


def find_rainbow_triangle_through(g: EdgeColoredGraph, v: int) -> Triangle | None:
    """Lexicographically least rainbow triangle containing ``v``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    m = g.matrix
    for a, b in itertools.combinations(range(g.n), 2):
        if v in (a, b):
            continue
        t = tuple(sorted((v, a, b)))
        x, y, z = t
        if m[x][y] != m[x][z] and m[x][y] != m[y][z] and m[x][z] != m[y][z]:
            return t
    return None


def _least_triangle(g: EdgeColoredGraph, v: int) -> CycleView | None:
    # For triangles proper == rainbow; least canonical form (a,b,c) with a<b<c.
    t = find_rainbow_triangle_through(g, v)
    return CycleView(t) if t is not None else None


def find_proper_cycle_through(g: EdgeColoredGraph, v: int, length: int) -> CycleView | None:
    """Lexicographically least canonical proper cycle of the given length through ``v``.

    Candidate cycles are grown as paths from their minimum vertex ``s`` over
    vertices larger than ``s``, in increasing order, so the first closed cycle
    found is the least one. Extensions repeating the previous edge color are
    pruned; the closing edge is checked against both seam edges.
    """
    _check_length(g, v, length)
    if length == 3:
        return _least_triangle(g, v)
    m = g.matrix
    n = g.n
    path = [0] * length
    used = [False] * n

    def extend(depth: int, last_color: int, need_v: bool) -> bool:
        # path[:depth] is a proper path; choose path[depth]
        tail = path[depth - 1]
        row = m[tail]
        start = path[0]
        if depth == length - 1:
            # closing vertex: must be v if v is still missing
            candidates = (v,) if need_v else range(path[1] + 1, n)
            close_color_first = m[start][path[1]]
            for u in candidates:
                if u <= path[1] or used[u] or u <= start:
                    continue
                cu = row[u]
                if cu == last_color:
                    continue
                cs = m[u][start]
                if cs == cu or cs == close_color_first:
                    continue
                path[depth] = u
                return True
            return False
        for u in range(start + 1, n):
            if used[u]:
                continue
            cu = row[u]
            if cu == last_color:
                continue
            used[u] = True
            path[depth] = u
            if extend(depth + 1, cu, need_v and u != v):
                return True
            used[u] = False
        return False

    for s in range(0, v + 1):
        if n - s < length:
            break
        path[0] = s
        used[s] = True
        if extend(1, -1, s != v):
            return CycleView(tuple(path))
        used[s] = False
    return None


def oracle_enumerate_proper_cycles(g: EdgeColoredGraph, v: int, length: int) -> list[CycleView]:
    """All proper cycles of the given length through ``v`` by plain enumeration, sorted."""
    if g.n > ORACLE_MAX_N:
        raise ValueError(f"oracle refuses n={g.n} > {ORACLE_MAX_N}")
    _check_length(g, v, length)
    m = g.matrix
    others = [u for u in range(g.n) if u != v]
    found = []
    for rest in itertools.combinations(others, length - 1):
        chosen = sorted(rest + (v,))
        first, tail = chosen[0], chosen[1:]
        for perm in itertools.permutations(tail):
            if perm[0] > perm[-1]:
                continue
            vs = (first,) + perm
            cols = [m[vs[k - 1]][vs[k]] for k in range(length)]
            if all(cols[k - 1] != cols[k] for k in range(length)):
                found.append(CycleView(vs))
    found.sort(key=lambda c: c.vertices)
    return found


def enumerate_proper_cycles(g: EdgeColoredGraph, v: int, length: int) -> list[CycleView]:
    """All proper cycles of the given length through ``v`` in canonical form, sorted.

    Same output as the oracle, computed by backtracking with color pruning.
    """
    _check_length(g, v, length)
    m = g.matrix
    n = g.n
    out: list[CycleView] = []
    path = [0] * length
    used = [False] * n

    def extend(depth: int, last_color: int, need_v: bool) -> None:
        tail = path[depth - 1]
        row = m[tail]
        start = path[0]
        if depth == length - 1:
            for u in ((v,) if need_v else range(path[1] + 1, n)):
                if u <= path[1] or used[u]:
                    continue
                cu = row[u]
                cs = m[u][start]
                if cu != last_color and cs != cu and cs != m[start][path[1]]:
                    path[depth] = u
                    out.append(CycleView(tuple(path)))
            return
        for u in range(start + 1, n):
            if used[u] or row[u] == last_color:
                continue
            used[u] = True
            path[depth] = u
            extend(depth + 1, row[u], need_v and u != v)
            used[u] = False

    for s in range(0, v + 1):
        if n - s < length:
            break
        path[0] = s
        used[s] = True
        extend(1, -1, s != v)
        used[s] = False
    return out


@dataclass
class PancyclicityReport:
    """Cell table keyed by (vertex, length); a missing cycle is stored as None."""

    n: int
    cells: dict[tuple[int, int], CycleView | None] = field(default_factory=dict)

    @property
    def pancyclic(self) -> bool:
        return all(c is not None for c in self.cells.values())

    def missing(self) -> list[tuple[int, int]]:
        return sorted(((v, ell) for (v, ell), c in self.cells.items() if c is None),
                      key=lambda cell: (cell[1], cell[0]))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pancyclic": self.pancyclic,
            "cells": [
                {"vertex": v + 1, "length": ell, "cycle": c.format() if c else None}
                for (v, ell), c in sorted(self.cells.items())
            ],
        }


def is_properly_vertex_pancyclic(g: EdgeColoredGraph, vertices=None) -> PancyclicityReport:
    report = PancyclicityReport(g.n)
    for v in (range(g.n) if vertices is None else vertices):
        for ell in range(3, g.n + 1):
            report.cells[(v, ell)] = find_proper_cycle_through(g, v, ell)
    return report


def first_uncovered_cell(g: EdgeColoredGraph) -> tuple[int, int] | None:
    """First (vertex, length) cell, by length then vertex, with no proper cycle.

    Each cycle found marks all of its vertices covered at that length, so far
    fewer searches are needed than filling the full table.
    """
    for ell in range(3, g.n + 1):
        covered = [False] * g.n
        for v in range(g.n):
            if covered[v]:
                continue
            c = find_proper_cycle_through(g, v, ell)
            if c is None:
                return (v, ell)
            for u in c.vertices:
                covered[u] = True
    return None


def is_properly_hamiltonian(g: EdgeColoredGraph) -> CycleView | None:
    return find_proper_cycle_through(g, 0, g.n)
