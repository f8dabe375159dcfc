"""
Dual graph of the special fiber of X_0(p) over F_p.

Two vertices (the two components of the special fiber) joined by one edge
per supersingular j-invariant. Edge lengths carry the extra automorphisms:
3 at j = 0, 2 at j = 1728, 1 elsewhere. Frobenius fixes both vertices and
permutes edges as it permutes the j-invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Any, Dict, Tuple

import networkx as nx
import numpy as np

from modular_pi1.exceptions import DegeneratePairingError, LatticeError
from modular_pi1.finite_field.ff import Fp2Element, fp2_frobenius
from modular_pi1.linalg.zlinalg import (
    AbGroup,
    IntMatrix,
    as_int_matrix,
    cokernel,
    determinant,
    identity,
    kernel_basis,
    solve_in_lattice,
)
from modular_pi1.supersingular.ssenum import SupersingularCensus
from modular_pi1.utils.flexible_logger import Logger

logger = Logger(name="dual_graph")


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    length: int
    label: Fp2Element


@dataclass(frozen=True)
class ArithGraph:
    n_vertices: int
    edges: Tuple[Edge, ...]
    frobenius: Tuple[int, ...]

    def __post_init__(self):
        if not self.edges:
            raise ValueError("dual graph needs at least one edge to be connected")
        if len(self.frobenius) != len(self.edges):
            raise ValueError("frobenius must permute the edge indices")
        if sorted(self.frobenius) != list(range(len(self.edges))):
            raise ValueError(f"frobenius {self.frobenius} is not a permutation")
        for e, image in enumerate(self.frobenius):
            if self.frobenius[image] != e:
                raise ValueError(f"frobenius {self.frobenius} is not an involution")
        for edge in self.edges:
            if edge.length < 1:
                raise ValueError(f"edge length {edge.length} must be positive")
            if not (0 <= edge.tail < self.n_vertices and 0 <= edge.head < self.n_vertices):
                raise ValueError(f"edge {edge} leaves the vertex set")

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(edge.length for edge in self.edges)

    def fixed_edges(self) -> Tuple[int, ...]:
        return tuple(e for e, image in enumerate(self.frobenius) if image == e)


def edge_length(j: Fp2Element) -> int:
    if not j:
        return 3
    if not (j - 1728):
        return 2
    return 1


def build_graph(census: SupersingularCensus, p: int) -> ArithGraph:
    """One edge 0 -> 1 per supersingular j, in census order."""
    if census.p != p:
        raise ValueError(f"census is for p={census.p}, not p={p}")
    if census.total < 1:
        raise ValueError(f"census for p={p} has no supersingular points")
    index = {j: e for e, j in enumerate(census.j_values)}
    edges = tuple(Edge(0, 1, edge_length(j), j) for j in census.j_values)
    frobenius = tuple(index[fp2_frobenius(j)] for j in census.j_values)
    graph = ArithGraph(n_vertices=2, edges=edges, frobenius=frobenius)
    logger.debug(f"dual graph p={p}: {len(edges)} edges, lengths {graph.lengths}")
    return graph


def boundary_matrix(g: ArithGraph) -> IntMatrix:
    """V x E incidence matrix: column e is head(e) - tail(e)."""
    B = np.zeros((g.n_vertices, len(g.edges)), dtype=object)
    for e, edge in enumerate(g.edges):
        B[edge.tail, e] -= 1
        B[edge.head, e] += 1
    return B


def cycle_lattice(g: ArithGraph) -> IntMatrix:
    """Basis of H_1(Gamma, Z) as rows over the edge coordinates; E - V + 1 rows."""
    return kernel_basis(boundary_matrix(g))


def monodromy_gram(g: ArithGraph) -> IntMatrix:
    """<c, c'> = sum_e c_e c'_e length_e on the cycle basis."""
    C = cycle_lattice(g)
    L = np.zeros((len(g.edges), len(g.edges)), dtype=object)
    for e, length in enumerate(g.lengths):
        L[e, e] = length
    return as_int_matrix(C.dot(L).dot(C.T))


def component_group(g: ArithGraph) -> AbGroup:
    """Cokernel of the monodromy pairing."""
    M = monodromy_gram(g)
    if M.shape[0] == 0:
        return AbGroup()
    if determinant(M) == 0:
        raise DegeneratePairingError(f"monodromy pairing on {len(g.edges)} edges is degenerate")
    return cokernel(M)


def frobenius_matrix(g: ArithGraph) -> IntMatrix:
    """Matrix of Frobenius on H_1 in the cycle_lattice basis (column k = image of cycle k)."""
    C = cycle_lattice(g)
    n = len(g.edges)
    P = np.zeros((n, n), dtype=object)
    for e, image in enumerate(g.frobenius):
        P[image, e] = 1
    images = as_int_matrix(C.dot(P.T))
    try:
        coordinates = solve_in_lattice(C, images)
    except LatticeError as exc:
        raise LatticeError(f"frobenius does not preserve the cycle lattice: {exc}") from exc
    return coordinates.T.copy()


def frobenius_coinvariants(g: ArithGraph) -> AbGroup:
    """H_1 / (F - 1) H_1."""
    F = frobenius_matrix(g)
    return cokernel(F - identity(F.shape[0]))


def spanning_tree_weight(g: ArithGraph) -> int:
    """Sum over edges i of the product of the other lengths (two-vertex graphs)."""
    lengths = g.lengths
    return sum(prod(lengths[:i] + lengths[i + 1:]) for i in range(len(lengths)))


def subdivided_graph(g: ArithGraph) -> nx.MultiGraph:
    """Replace each edge of length l by a path of l unit edges."""
    G = nx.MultiGraph()
    G.add_nodes_from(range(g.n_vertices))
    next_node = g.n_vertices
    for edge in g.edges:
        path = [edge.tail]
        for _ in range(edge.length - 1):
            path.append(next_node)
            next_node += 1
        path.append(edge.head)
        nx.add_path(G, path)
    return G


def subdivided_critical_group(g: ArithGraph) -> AbGroup:
    """Critical group of the subdivided graph: cokernel of its reduced Laplacian."""
    G = subdivided_graph(g)
    if not nx.is_connected(G):
        raise ValueError("subdivided dual graph is not connected")
    nodes = sorted(G.nodes)
    laplacian = nx.laplacian_matrix(G, nodelist=nodes).toarray()
    return cokernel(as_int_matrix(laplacian)[1:, 1:])


def graph_to_dict(g: ArithGraph) -> Dict[str, Any]:
    return {
        "vertices": list(range(g.n_vertices)),
        "edges": [
            {
                "tail": edge.tail,
                "head": edge.head,
                "length": edge.length,
                "label": [edge.label.a.value, edge.label.b.value],
            }
            for edge in g.edges
        ],
        "frobenius": list(g.frobenius),
    }
