from .zlinalg import (
    AbGroup,
    IntMatrix,
    as_int_matrix,
    cokernel,
    determinant,
    diagonal,
    identity,
    int_matrix,
    is_unimodular,
    kernel_basis,
    matmul,
    rank,
    snf,
    solve_in_lattice,
    torsion_part,
)

__all__ = [
    'AbGroup', 'IntMatrix', 'as_int_matrix', 'cokernel', 'determinant', 'diagonal',
    'identity', 'int_matrix', 'is_unimodular', 'kernel_basis', 'matmul', 'rank',
    'snf', 'solve_in_lattice', 'torsion_part',
]
