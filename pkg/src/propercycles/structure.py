"""How vertices off a proper cycle see its colors.

Covers follower detection, the W1/W2/W3 partition of outside vertices,
dependence of vertex pairs with respect to a third vertex, the degree
witness for dependent sets, the three-block decomposition of a cycle seen
from a W3 vertex, pivot cycles and coloring orientations.

Cycle positions are 0-based indices into ``CycleView.vertices``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable

from propercycles.cycles import CycleView, find_proper_cycle_through, is_proper_cycle
from propercycles.graph import EdgeColoredGraph, has_joint_monochromatic_triangles


class ContractError(Exception):
    """A documented precondition of the graph (not of the arguments) does not hold."""


class FollowerDirection(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    NONE = "none"


class PairClass(enum.Enum):
    DEPENDENT = "dependent"
    INDEPENDENT = "independent"


def _require_proper(g: EdgeColoredGraph, c: CycleView) -> None:
    c.check_on(g)
    if not is_proper_cycle(g, c):
        raise ValueError(f"cycle {c.format()} is not proper")


def _require_outside(c: CycleView, x: int) -> None:
    if x in c:
        raise ValueError(f"vertex {x + 1} lies on the cycle")


def follower_direction(g: EdgeColoredGraph, c: CycleView, x: int) -> FollowerDirection:
    _require_proper(g, c)
    _require_outside(c, x)
    m, vs, ell = g.matrix, c.vertices, len(c)
    inc = all(m[x][vs[i]] == m[vs[i]][vs[(i + 1) % ell]] for i in range(ell))
    dec = all(m[x][vs[i]] == m[vs[i]][vs[i - 1]] for i in range(ell))
    if inc and dec:
        raise AssertionError("vertex follows a proper cycle in both directions")
    if inc:
        return FollowerDirection.INCREASING
    if dec:
        return FollowerDirection.DECREASING
    return FollowerDirection.NONE


def colors_to_cycle(g: EdgeColoredGraph, x: int, c: CycleView) -> set[int]:
    return {g.matrix[x][v] for v in c}


@dataclass(frozen=True)
class OutsidePartition:
    w1: frozenset[int]
    w2: frozenset[int]
    w3: frozenset[int]

    def to_dict(self) -> dict:
        return {k: sorted(v + 1 for v in getattr(self, k)) for k in ("w1", "w2", "w3")}


def classify_outside(g: EdgeColoredGraph, c: CycleView) -> OutsidePartition:
    """Split the off-cycle vertices: single color to C, followers, the rest."""
    _require_proper(g, c)
    w1, w2, w3 = set(), set(), set()
    for x in g.vertices:
        if x in c:
            continue
        if len(colors_to_cycle(g, x, c)) == 1:
            w1.add(x)
        elif follower_direction(g, c, x) is not FollowerDirection.NONE:
            w2.add(x)
        else:
            w3.add(x)
    return OutsidePartition(frozenset(w1), frozenset(w2), frozenset(w3))


def pair_class(g: EdgeColoredGraph, u: int, w: int, v: int) -> PairClass:
    """Whether c(uw) repeats one of the colors c(vu), c(vw)."""
    if len({u, w, v}) != 3:
        raise ValueError("pair_class needs three distinct vertices")
    for x in (u, w, v):
        g._check_vertex(x)
    m = g.matrix
    if m[u][w] == m[v][u] or m[u][w] == m[v][w]:
        return PairClass.DEPENDENT
    return PairClass.INDEPENDENT


def set_has_dp(g: EdgeColoredGraph, vertices: Iterable[int], v: int) -> bool:
    a = sorted(set(vertices))
    if v in a:
        raise ValueError(f"vertex {v + 1} belongs to the set")
    m = g.matrix
    mv = m[v]
    return all(m[x][y] == mv[x] or m[x][y] == mv[y] for x, y in itertools.combinations(a, 2))


def color_degree_within(g: EdgeColoredGraph, a: int, vertices: Iterable[int]) -> int:
    row = g.matrix[a]
    return len({row[b] for b in vertices if b != a})


def fact1_witness(g: EdgeColoredGraph, vertices: Iterable[int], v: int) -> int | None:
    """Least ``a`` in a DP_v set whose color degree inside the set is small.

    The returned vertex has at most (|A|+1)/2 colors on its edges into A and,
    when |A| >= 2, one of those edges carries c(va). Returns None only if no
    vertex of A qualifies, which would contradict the dependence property.
    """
    a_set = sorted(set(vertices))
    if not a_set:
        raise ValueError("empty vertex set")
    if not set_has_dp(g, a_set, v):
        raise ContractError("set does not have the dependence property")
    size = len(a_set)
    m = g.matrix
    for a in a_set:
        inner = {m[a][b] for b in a_set if b != a}
        if 2 * len(inner) > size + 1:
            continue
        if size >= 2 and m[v][a] not in inner:
            continue
        return a
    return None


def cycle_distance(c: CycleView, i: int, j: int) -> int:
    ell = len(c)
    for k in (i, j):
        if not 0 <= k < ell:
            raise ValueError(f"position {k} outside 0..{ell - 1}")
    if i == j:
        raise ValueError("cycle_distance needs distinct positions")
    d = abs(i - j)
    return min(d, ell - d)


# ---------------------------------------------------------------------------
# Three-block decomposition for a W3 vertex


@dataclass(frozen=True)
class Decomposition:
    """Blocks P1 = x..y, P2 = y+1..z, P3 = z+1..x-1 (cyclic positions on ``cycle``).

    ``r`` and ``q`` end the longest rainbow paths running backwards from
    y+1 through y toward x, and forwards from y through y+1 toward z.
    """

    cycle: CycleView
    w: int
    x: int
    y: int
    z: int
    p1: tuple[int, ...]
    p2: tuple[int, ...]
    p3: tuple[int, ...]
    cw: int
    r: int
    q: int

    @property
    def rainbow_back(self) -> tuple[int, ...]:
        """R: vertices from y back to r."""
        ell = len(self.cycle)
        return tuple(self.cycle.at(self.y - k) for k in range((self.y - self.r) % ell + 1))

    @property
    def rainbow_forward(self) -> tuple[int, ...]:
        """Q: vertices from y+1 forward to q."""
        ell = len(self.cycle)
        return tuple(self.cycle.at(self.y + 1 + k) for k in range((self.q - self.y - 1) % ell + 1))

    def u_index(self, pos: int) -> int:
        """1-based index in the relabeling u_1 = v_y, u_2 = v_{y+1}, ..."""
        return (pos - self.y) % len(self.cycle) + 1

    def u_position(self, i: int) -> int:
        return (self.y + i - 1) % len(self.cycle)

    def landmarks(self) -> dict[str, int]:
        return {"s": self.u_index(self.x), "t": self.u_index(self.z),
                "a": self.u_index(self.r), "b": self.u_index(self.q)}

    def to_dict(self) -> dict:
        at = self.cycle.at
        return {
            "cycle": self.cycle.format(),
            "w": self.w + 1,
            "x": self.x + 1, "y": self.y + 1, "z": self.z + 1,
            "vx": at(self.x) + 1, "vy": at(self.y) + 1, "vz": at(self.z) + 1,
            "p1": [v + 1 for v in self.p1],
            "p2": [v + 1 for v in self.p2],
            "p3": [v + 1 for v in self.p3],
            "cw": self.cw,
            "r": self.r + 1, "q": self.q + 1,
            "R": [v + 1 for v in self.rainbow_back],
            "Q": [v + 1 for v in self.rainbow_forward],
            "u": self.landmarks(),
        }


@dataclass(frozen=True)
class ExtensionFound:
    """A proper cycle one longer than the input cycle, through its first vertex."""

    cycle: CycleView

    def to_dict(self) -> dict:
        return {"extension": self.cycle.format()}


@dataclass(frozen=True)
class BoundaryScan:
    """Positions meeting each boundary condition of the decomposition."""

    xs: tuple[int, ...]
    ys: tuple[int, ...]
    zs: tuple[int, ...]


def scan_boundaries(g: EdgeColoredGraph, c: CycleView, w: int) -> BoundaryScan:
    m, vs, ell = g.matrix, c.vertices, len(c)
    mw = m[w]
    # fwd[i]: c(w v_i) = c(v_i v_{i+1});  bwd[i]: c(w v_i) = c(v_i v_{i-1})
    fwd = [mw[vs[i]] == m[vs[i]][vs[(i + 1) % ell]] for i in range(ell)]
    bwd = [mw[vs[i]] == m[vs[i]][vs[i - 1]] for i in range(ell)]
    xs = tuple(i for i in range(ell) if fwd[i] and not fwd[i - 1])
    zs = tuple(i for i in range(ell) if bwd[i] and not bwd[(i + 1) % ell])
    ys = tuple(i for i in range(ell)
               if mw[vs[i]] == mw[vs[(i + 1) % ell]] == m[vs[i]][vs[(i + 1) % ell]])
    return BoundaryScan(xs, ys, zs)


def _blocks(ell: int, x: int, y: int, z: int):
    """Cyclic position runs x..y, y+1..z, z+1..x-1, or None if out of order."""
    dy = (y - x) % ell
    dz = (z - x) % ell
    if not dy < dz:
        return None
    p1 = [(x + k) % ell for k in range(dy + 1)]
    p2 = [(x + k) % ell for k in range(dy + 1, dz + 1)]
    p3 = [(x + k) % ell for k in range(dz + 1, ell)]
    return p1, p2, p3


def _interior_holds(g: EdgeColoredGraph, c: CycleView, w: int, p1, p2, p3) -> bool:
    m, vs, ell = g.matrix, c.vertices, len(c)
    mw = m[w]
    if any(mw[vs[i]] != m[vs[i]][vs[(i + 1) % ell]] for i in p1):
        return False
    if any(mw[vs[i]] != m[vs[i]][vs[i - 1]] for i in p2):
        return False
    return len({mw[vs[i]] for i in p3}) <= 1


def _longest_rainbow_end(g: EdgeColoredGraph, c: CycleView, start: int, step: int, stop: int) -> int:
    """Walk from ``start`` by ``step`` while edge colors stay distinct, not past ``stop``.

    The walk's first edge is (start - step, start). Returns the last position reached.
    """
    m, ell = g.matrix, len(c)
    seen = {m[c.at(start - step)][c.at(start)]}
    pos = start % ell
    while pos != stop % ell:
        nxt = (pos + step) % ell
        col = m[c.at(pos)][c.at(nxt)]
        if col in seen:
            break
        seen.add(col)
        pos = nxt
    return pos


def build_decomposition(g: EdgeColoredGraph, c: CycleView, w: int) -> Decomposition | None:
    """The decomposition if the boundary scan is unique and the blocks check out."""
    scan = scan_boundaries(g, c, w)
    if not (len(scan.xs) == len(scan.ys) == len(scan.zs) == 1):
        return None
    x, y, z = scan.xs[0], scan.ys[0], scan.zs[0]
    ell = len(c)
    blocks = _blocks(ell, x, y, z)
    if blocks is None or not _interior_holds(g, c, w, *blocks):
        return None
    p1, p2, p3 = blocks
    vs = c.vertices
    return Decomposition(
        cycle=c, w=w, x=x, y=y, z=z,
        p1=tuple(vs[i] for i in p1),
        p2=tuple(vs[i] for i in p2),
        p3=tuple(vs[i] for i in p3),
        cw=g.matrix[vs[y]][vs[(y + 1) % ell]],
        r=_longest_rainbow_end(g, c, y, -1, x),
        q=_longest_rainbow_end(g, c, y + 1, 1, z),
    )


def insertion_extensions(g: EdgeColoredGraph, c: CycleView, w: int) -> list[CycleView]:
    """Proper cycles v_k w v_{k+1} ... v_k obtained by inserting ``w`` into one edge."""
    out = []
    vs = c.vertices
    for k in range(len(c)):
        cand = CycleView(vs[: k + 1] + (w,) + vs[k + 1:])
        if is_proper_cycle(g, cand):
            out.append(cand)
    return out


def decompose(g: EdgeColoredGraph, c: CycleView, w: int) -> Decomposition | ExtensionFound:
    """Decompose C as seen from ``w`` in W3(C), or exhibit a proper (l+1)-cycle.

    The extension is searched first among single-edge insertions of ``w``,
    then over all proper cycles of length l+1 through the cycle's first vertex.
    Raises ContractError if neither outcome exists.
    """
    _require_proper(g, c)
    _require_outside(c, w)
    if has_joint_monochromatic_triangles(g):
        raise ContractError("graph contains joint monochromatic triangles")
    if w not in classify_outside(g, c).w3:
        raise ValueError(f"vertex {w + 1} is not in W3 of cycle {c.format()}")
    dec = build_decomposition(g, c, w)
    if dec is not None:
        return dec
    inserted = insertion_extensions(g, c, w)
    if inserted:
        return ExtensionFound(inserted[0])
    if len(c) < g.n:
        longer = find_proper_cycle_through(g, c.vertices[0], len(c) + 1)
        if longer is not None:
            return ExtensionFound(longer)
    raise ContractError(
        f"no decomposition and no proper {len(c) + 1}-cycle through {c.vertices[0] + 1}")


# ---------------------------------------------------------------------------
# Pivot cycles and coloring orientation


@dataclass(frozen=True)
class PivotCycle:
    cycle: CycleView
    proper: bool


def pivot_cycle(g: EdgeColoredGraph, c: CycleView, w: int, i: int,
                frame: Decomposition | None) -> PivotCycle:
    """Swap u_i for ``w``: the cycle u_{i-1} w u_{i+1} ... u_{i-1} in the u-frame of ``frame``."""
    if frame is None:
        raise ValueError("pivot_cycle needs a decomposition frame")
    if frame.cycle != c or frame.w != w:
        raise ValueError("decomposition frame belongs to a different cycle or vertex")
    ell = len(c)
    if not 1 <= i <= ell:
        raise ValueError(f"u-index {i} outside 1..{ell}")
    pos = frame.u_position(i)
    swapped = c.replaced(pos, w)
    rotated = swapped.rotated_to(c.at(pos - 1))
    return PivotCycle(rotated, is_proper_cycle(g, rotated))


@dataclass(frozen=True)
class OrientationDigraph:
    """Digraph on a vertex set; ``double`` holds the pairs oriented both ways."""

    vertices: tuple[int, ...]
    arcs: frozenset[tuple[int, int]]
    double: frozenset[tuple[int, int]]

    def in_degree(self, v: int) -> int:
        return sum(1 for _, head in self.arcs if head == v)

    def has_arc(self, a: int, b: int) -> bool:
        return (a, b) in self.arcs


def orient(g: EdgeColoredGraph, vertex_set: Iterable[int], w: int) -> OrientationDigraph:
    """Coloring orientation of G[V1] relative to ``w``.

    A dependent pair points away from the endpoint whose color to ``w`` the
    edge repeats; when it repeats both, the arc points to the larger vertex.
    Independent pairs get arcs both ways.
    """
    vs = tuple(sorted(set(vertex_set)))
    if w in vs:
        raise ValueError(f"vertex {w + 1} belongs to the set")
    for v in vs + (w,):
        g._check_vertex(v)
    m = g.matrix
    mw = m[w]
    arcs, double = set(), set()
    for a, b in itertools.combinations(vs, 2):
        col = m[a][b]
        if col == mw[a]:
            arcs.add((a, b))
        elif col == mw[b]:
            arcs.add((b, a))
        else:
            arcs.add((a, b))
            arcs.add((b, a))
            double.add((a, b))
    return OrientationDigraph(vs, frozenset(arcs), frozenset(double))
