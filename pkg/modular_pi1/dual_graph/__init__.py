from .dualgraph import (
    ArithGraph,
    Edge,
    boundary_matrix,
    build_graph,
    component_group,
    cycle_lattice,
    edge_length,
    frobenius_coinvariants,
    frobenius_matrix,
    graph_to_dict,
    monodromy_gram,
    spanning_tree_weight,
    subdivided_critical_group,
    subdivided_graph,
)

__all__ = [
    'ArithGraph', 'Edge', 'boundary_matrix', 'build_graph', 'component_group',
    'cycle_lattice', 'edge_length', 'frobenius_coinvariants', 'frobenius_matrix',
    'graph_to_dict', 'monodromy_gram', 'spanning_tree_weight',
    'subdivided_critical_group', 'subdivided_graph',
]
