"""Proper cycles in edge-colored complete graphs, with exhaustive and sampled checks."""

from propercycles.cycles import (
    CycleView,
    PancyclicityReport,
    find_proper_cycle_through,
    find_rainbow_triangle_through,
    is_proper_cycle,
    is_properly_hamiltonian,
    is_properly_vertex_pancyclic,
    oracle_enumerate_proper_cycles,
)
from propercycles.graph import (
    EdgeColoredGraph,
    HypothesisReport,
    ParseError,
    check_hypotheses,
    color_degree,
    generate,
    joint_monochromatic_pairs,
    min_color_degree,
    monochromatic_triangles,
    read_graph,
    write_graph,
)

__version__ = "0.1.0"
