"""
Exact integer matrix algebra on numpy ``dtype=object`` arrays.

Entries stay Python integers all the way through, so nothing overflows and
nothing is ever rounded. ``snf`` is the single engine: cokernels, kernels,
ranks and lattice coordinates are all read off its output.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from modular_pi1.exceptions import LatticeError

IntMatrix = np.ndarray


def int_matrix(rows: Iterable[Iterable[int]], n_cols: Optional[int] = None) -> IntMatrix:
    """Object-dtype integer matrix; ``n_cols`` fixes the shape of an empty matrix."""
    data = [[int(x) for x in row] for row in rows]
    if not data:
        return np.zeros((0, n_cols or 0), dtype=object)
    widths = {len(row) for row in data}
    if len(widths) != 1:
        raise ValueError(f"ragged rows: widths {sorted(widths)}")
    out = np.empty((len(data), widths.pop()), dtype=object)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def identity(n: int) -> IntMatrix:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def as_int_matrix(a) -> IntMatrix:
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = int(x)
    return out


def _smallest_nonzero(D: IntMatrix, t: int) -> Optional[Tuple[int, int]]:
    """Row-major first position of the smallest nonzero |entry| in D[t:, t:]."""
    best, where = None, None
    rows, cols = D.shape
    for i in range(t, rows):
        for j in range(t, cols):
            v = D[i, j]
            if v and (best is None or abs(v) < best):
                best, where = abs(v), (i, j)
    return where


def snf(A) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form with transforms: returns (U, D, V) with U @ A @ V == D.

    D is diagonal with nonnegative entries d_1 | d_2 | ...; U and V are
    unimodular. Each step moves the smallest nonzero entry of the remaining
    block to the pivot, clears its row and column by division with remainder,
    and folds in any row whose entries the pivot does not divide.
    """
    D = as_int_matrix(A)
    m, n = D.shape
    U, V = identity(m), identity(n)

    for t in range(min(m, n)):
        while True:
            where = _smallest_nonzero(D, t)
            if where is None:
                return U, D, V
            i, j = where
            if i != t:
                D[[t, i]] = D[[i, t]]
                U[[t, i]] = U[[i, t]]
            if j != t:
                D[:, [t, j]] = D[:, [j, t]]
                V[:, [t, j]] = V[:, [j, t]]

            pivot = D[t, t]
            clear = True
            for r in range(t + 1, m):
                q = D[r, t] // pivot
                if q:
                    D[r] = D[r] - q * D[t]
                    U[r] = U[r] - q * U[t]
                if D[r, t]:
                    clear = False
            for c in range(t + 1, n):
                q = D[t, c] // pivot
                if q:
                    D[:, c] = D[:, c] - q * D[:, t]
                    V[:, c] = V[:, c] - q * V[:, t]
                if D[t, c]:
                    clear = False
            if not clear:
                continue

            stray = next(
                (r for r in range(t + 1, m) for c in range(t + 1, n) if D[r, c] % pivot),
                None,
            )
            if stray is None:
                break
            D[t] = D[t] + D[stray]
            U[t] = U[t] + U[stray]

        if D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]
    return U, D, V


def diagonal(D: IntMatrix) -> Tuple[int, ...]:
    return tuple(int(D[i, i]) for i in range(min(D.shape)))


def rank(A) -> int:
    _, D, _ = snf(A)
    return sum(1 for d in diagonal(D) if d)


def determinant(A) -> int:
    """Fraction-free Bareiss elimination."""
    M = as_int_matrix(A)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError(f"determinant of a non-square {M.shape} matrix")
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class AbGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i >= 2."""
    free_rank: int = 0
    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError(f"negative free rank {self.free_rank}")
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be >= 2")
        for d, e in zip(self.invariant_factors, self.invariant_factors[1:]):
            if e % d:
                raise ValueError(f"invariant factors {self.invariant_factors} are not a divisibility chain")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "AbGroup":
        """Normalise Z/o_1 + Z/o_2 + ... into invariant factor form."""
        g = cokernel(_diag(orders))
        return cls(free_rank + g.free_rank, g.invariant_factors)

    @property
    def order(self) -> Optional[int]:
        """Group order, None when the group is infinite."""
        if self.free_rank:
            return None
        return reduce(lambda x, y: x * y, self.invariant_factors, 1)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def is_cyclic(self) -> bool:
        return self.free_rank + len(self.invariant_factors) <= 1

    def is_torsion_free(self) -> bool:
        return not self.invariant_factors

    def to_dict(self):
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " ⊕ ".join(parts) if parts else "0"


def _diag(orders: Iterable[int]) -> IntMatrix:
    orders = [int(o) for o in orders]
    out = np.zeros((len(orders), len(orders)), dtype=object)
    for i, o in enumerate(orders):
        out[i, i] = o
    return out


def cokernel(A) -> AbGroup:
    """Z^rows / image(A)."""
    A = as_int_matrix(A)
    _, D, _ = snf(A)
    diag = diagonal(D)
    r = sum(1 for d in diag if d)
    return AbGroup(A.shape[0] - r, tuple(d for d in diag if d > 1))


def torsion_part(G: AbGroup, m: int) -> AbGroup:
    """G[m] restricted to the finite part: sum of Z/gcd(d_i, m)."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return AbGroup(0, tuple(g for g in (gcd(d, m) for d in G.invariant_factors) if g > 1))


def kernel_basis(A) -> IntMatrix:
    """Rows spanning ker(A : Z^cols -> Z^rows) over Z; the lattice they span is saturated."""
    A = as_int_matrix(A)
    _, D, V = snf(A)
    r = sum(1 for d in diagonal(D) if d)
    return V[:, r:].T.copy()


def solve_in_lattice(basis, vectors) -> IntMatrix:
    """
    Integer X with X @ basis == vectors (one row of coordinates per vector).

    ``basis`` must have linearly independent rows; raises LatticeError when a
    vector is not an integer combination of them.
    """
    B = as_int_matrix(basis)
    W = as_int_matrix(vectors)
    k = B.shape[0]
    if W.shape[1] != B.shape[1]:
        raise ValueError(f"vectors of length {W.shape[1]} against basis of length {B.shape[1]}")
    if k == 0:
        if any(x for x in W.flat):
            raise LatticeError("nonzero vector in the zero lattice")
        return np.zeros((W.shape[0], 0), dtype=object)
    # B^T y = w  <=>  D (V^-1 y) = U w  with U B^T V = D
    U, D, V = snf(B.T)
    diag = diagonal(D)
    if sum(1 for d in diag if d) != k:
        raise ValueError("basis rows are linearly dependent")
    rhs = U.dot(W.T)
    z = np.zeros((k, W.shape[0]), dtype=object)
    for col in range(W.shape[0]):
        for i in range(rhs.shape[0]):
            value = rhs[i, col]
            if i < k:
                if value % diag[i]:
                    raise LatticeError(f"vector {list(W[col])} is not in the lattice")
                z[i, col] = value // diag[i]
            elif value:
                raise LatticeError(f"vector {list(W[col])} is not in the span of the basis")
    return V.dot(z).T.copy()


def is_unimodular(M) -> bool:
    M = as_int_matrix(M)
    return M.shape[0] == M.shape[1] and determinant(M) in (1, -1)


def matmul(*matrices: Sequence) -> IntMatrix:
    return reduce(lambda x, y: as_int_matrix(x).dot(as_int_matrix(y)), matrices)
