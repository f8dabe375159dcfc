from functools import reduce
from itertools import combinations
from math import gcd

import numpy as np
import pytest

from modular_pi1.exceptions import LatticeError
from modular_pi1.linalg.zlinalg import (
    AbGroup,
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


def random_matrix(rng, rows, cols, bound=9):
    return int_matrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def random_unimodular(rng, n, steps=8):
    M = identity(n)
    if n == 1:
        M[0, 0] = rng.choice((1, -1))
        return M
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        if rng.random() < 0.25:
            M[[i, j]] = M[[j, i]]
        else:
            M[i] = M[i] + rng.randint(-3, 3) * M[j]
    return M


def assert_smith_form(A, U, D, V):
    m, n = D.shape
    assert (matmul(U, A, V) == D).all()
    assert is_unimodular(U)
    assert is_unimodular(V)
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i, j] == 0
    diag = diagonal(D)
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[: len(nonzero)] == tuple(nonzero)
    for d, e in zip(nonzero, nonzero[1:]):
        assert e % d == 0


def test_snf_example():
    A = int_matrix([[2, 4], [6, 8]])
    U, D, V = snf(A)
    assert diagonal(D) == (2, 4)
    assert_smith_form(A, U, D, V)


def test_snf_random_matrices(rng):
    for _ in range(200):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        A = random_matrix(rng, rows, cols)
        U, D, V = snf(A)
        assert_smith_form(A, U, D, V)
        if rows == cols:
            product = 1
            for d in diagonal(D):
                product *= d
            assert abs(determinant(A)) == product


def test_cokernel_invariant_under_equivalence(rng):
    for _ in range(60):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        A = random_matrix(rng, rows, cols, bound=6)
        expected = cokernel(A)
        row_perm = rng.sample(range(rows), rows)
        col_perm = rng.sample(range(cols), cols)
        assert cokernel(A[row_perm][:, col_perm]) == expected
        U, V = random_unimodular(rng, rows), random_unimodular(rng, cols)
        assert is_unimodular(U) and is_unimodular(V)
        assert cokernel(matmul(U, A, V)) == expected


def test_snf_diagonal_product_is_gcd_of_minors(rng):
    shapes = [(2, 3), (3, 2), (2, 4), (4, 3), (3, 5), (4, 5), (5, 3)]
    for _ in range(40):
        rows, cols = rng.choice(shapes)
        A = random_matrix(rng, rows, cols, bound=5)
        r = rank(A)
        if r == 0:
            continue
        minors = [
            determinant(A[np.ix_(rs, cs)])
            for rs in combinations(range(rows), r)
            for cs in combinations(range(cols), r)
        ]
        nonzero = [d for d in diagonal(snf(A)[1]) if d]
        assert len(nonzero) == r
        assert reduce(gcd, minors) == reduce(lambda x, y: x * y, nonzero)


def test_snf_of_zero_and_empty():
    U, D, V = snf(int_matrix([[0, 0], [0, 0]]))
    assert diagonal(D) == (0, 0)
    assert rank(int_matrix([], n_cols=3)) == 0


def test_determinant_needs_pivoting():
    assert determinant(int_matrix([[0, 1], [1, 0]])) == -1
    assert determinant(int_matrix([[0, 2, 1], [3, 0, 0], [1, 1, 1]])) == -3
    assert determinant(int_matrix([[1, 2], [2, 4]])) == 0


def test_cokernel_examples():
    assert cokernel(int_matrix([[4, 1], [1, 3]])) == AbGroup(0, (11,))
    assert cokernel(int_matrix([[2, 0], [0, 3]])) == AbGroup(0, (6,))
    assert cokernel(int_matrix([[2, 0], [0, 2]])) == AbGroup(0, (2, 2))
    assert cokernel(int_matrix([[0, 0], [0, 0]])) == AbGroup(2)
    assert cokernel(int_matrix([[1, 0], [0, 0], [0, 0]])) == AbGroup(2)
    assert cokernel(int_matrix([], n_cols=0)).is_trivial()


def test_rank_counts_nonzero_invariants():
    assert rank(int_matrix([[1, 2, 3], [2, 4, 6]])) == 1
    assert rank(int_matrix([[1, 0], [0, 5]])) == 2


def test_abgroup_validation_and_rendering():
    with pytest.raises(ValueError):
        AbGroup(0, (3, 5))
    with pytest.raises(ValueError):
        AbGroup(0, (1,))
    assert str(AbGroup()) == "0"
    assert str(AbGroup(1)) == "Z"
    assert str(AbGroup(2, (5,))) == "Z^2 ⊕ Z/5"
    assert AbGroup(0, (2, 4)).order == 8
    assert AbGroup(1, (2,)).order is None
    assert AbGroup(0, (7,)).is_cyclic()
    assert not AbGroup(0, (2, 2)).is_cyclic()


def test_from_cyclic_orders_normalises():
    assert AbGroup.from_cyclic_orders([2, 3]) == AbGroup(0, (6,))
    assert AbGroup.from_cyclic_orders([4, 6]) == AbGroup(0, (2, 12))
    assert AbGroup.from_cyclic_orders([1, 1], free_rank=1) == AbGroup(1)


def test_torsion_part():
    G = AbGroup(0, (2, 12))
    assert torsion_part(G, 4) == AbGroup(0, (2, 4))
    assert torsion_part(G, 3) == AbGroup(0, (3,))
    assert torsion_part(G, 5).is_trivial()
    assert torsion_part(AbGroup(0, (11,)), 10).is_trivial()
    with pytest.raises(ValueError):
        torsion_part(G, 0)


def test_kernel_basis_random(rng):
    for _ in range(60):
        A = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 6), bound=4)
        K = kernel_basis(A)
        assert K.shape[0] == A.shape[1] - rank(A)
        if K.shape[0]:
            assert (matmul(A, K.T) == 0).all()
            # saturated: the kernel lattice is a direct summand
            assert cokernel(K.T).is_torsion_free()


def test_solve_in_lattice():
    basis = int_matrix([[1, 1, 0], [0, 2, 1]])
    coords = int_matrix([[3, -1], [0, 2]])
    vectors = matmul(coords, basis)
    assert (solve_in_lattice(basis, vectors) == coords).all()


def test_solve_in_lattice_rejects_outside_vectors():
    basis = int_matrix([[2, 0], [0, 2]])
    with pytest.raises(LatticeError):
        solve_in_lattice(basis, int_matrix([[1, 0]]))
    with pytest.raises(LatticeError):
        solve_in_lattice(int_matrix([[1, 0]]), int_matrix([[0, 1]]))
