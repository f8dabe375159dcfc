"""
Supersingular j-invariants in characteristic p >= 5.

The census takes the Legendre parameters lambda that are roots of the Deuring
polynomial H_p(t) = sum C(m, i)^2 t^i (m = (p-1)/2), pushes each through the
Legendre-to-j map and classifies the resulting j by field of definition.
Two independent criteria (Hasse invariant, point count) are kept alongside
to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Any, Dict, Tuple

from sortedcontainers import SortedSet

from modular_pi1.exceptions import DegenerateCurveError, InconsistentCensusError, NotPrimeError
from modular_pi1.finite_field.ff import (
    FpElement,
    Fp2Element,
    PolyFp,
    distinct_roots,
    fp2_frobenius,
    is_prime,
    quad_nonresidue,
    quadratic_roots,
)
from modular_pi1.utils.flexible_logger import Logger

logger = Logger(name="census")


def _require_prime_at_least_5(p: int) -> None:
    if p < 5:
        raise NotPrimeError(f"supersingular census needs p >= 5, got {p}")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")


@dataclass(frozen=True)
class SupersingularCensus:
    p: int
    j_values: Tuple[Fp2Element, ...]
    total: int
    h: int
    pairs: int
    has_j0: bool
    has_j1728: bool
    lambda_roots: int = 0

    def __post_init__(self):
        if self.total != self.h + 2 * self.pairs:
            raise InconsistentCensusError(
                f"p={self.p}: total {self.total} != h {self.h} + 2*pairs {self.pairs}"
            )
        if self.total != len(self.j_values):
            raise InconsistentCensusError(
                f"p={self.p}: total {self.total} but {len(self.j_values)} j-values"
            )

    def rational_j_values(self) -> Tuple[Fp2Element, ...]:
        return tuple(j for j in self.j_values if j.in_prime_field())


def deuring_polynomial(p: int) -> PolyFp:
    """H_p(t) with binomials taken in exact integers, then reduced mod p."""
    _require_prime_at_least_5(p)
    m = (p - 1) // 2
    return PolyFp(tuple(comb(m, i) ** 2 for i in range(m + 1)), p)


def supersingular_lambda_count(p: int) -> int:
    """Distinct Legendre parameters with supersingular curve; deg H_p when H_p is squarefree."""
    _require_prime_at_least_5(p)
    rational, quadratic = distinct_roots(deuring_polynomial(p))
    return len(rational) + quadratic


def lambda_to_j(lam: Fp2Element) -> Fp2Element:
    """j = 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)."""
    if not lam or not (lam - 1):
        raise DegenerateCurveError(f"Legendre parameter {lam} gives a singular curve")
    num = lam * lam - lam + 1
    den = lam * lam * (lam - 1) * (lam - 1)
    return 256 * num * num * num / den


def census(p: int) -> SupersingularCensus:
    """All supersingular j-invariants for p, from the roots of the Deuring polynomial."""
    _require_prime_at_least_5(p)
    h_p = deuring_polynomial(p)
    rational, quadratic_count = distinct_roots(h_p)
    quadratic = quadratic_roots(h_p)
    if len(quadratic) != quadratic_count:
        raise InconsistentCensusError(
            f"p={p}: found {len(quadratic)} quadratic lambda-roots, expected {quadratic_count}"
        )

    lambdas = [Fp2Element.embed(r) for r in rational] + quadratic
    j_set = SortedSet((lambda_to_j(lam) for lam in lambdas), key=Fp2Element.sort_key)
    j_values = tuple(j_set)
    h = sum(1 for j in j_values if fp2_frobenius(j) == j)
    moved = len(j_values) - h
    if moved % 2:
        raise InconsistentCensusError(f"p={p}: {moved} j-values outside F_p cannot form conjugate pairs")

    zero = Fp2Element.from_ints(0, 0, p)
    j1728 = Fp2Element.from_ints(1728, 0, p)
    result = SupersingularCensus(
        p=p,
        j_values=j_values,
        total=len(j_values),
        h=h,
        pairs=moved // 2,
        has_j0=zero in j_set,
        has_j1728=j1728 in j_set,
        lambda_roots=len(rational) + quadratic_count,
    )
    logger.debug(
        f"census p={p}: {len(lambdas)} lambda-roots, total={result.total}, "
        f"h={result.h}, pairs={result.pairs}"
    )
    if result.h < 1:
        logger.warning(f"census p={p}: no supersingular j-invariant is defined over F_p")
    return result


def curve_for_j(j: Fp2Element) -> Tuple[Fp2Element, Fp2Element]:
    """(a4, a6) of a Weierstrass model y^2 = x^3 + a4 x + a6 with the given j-invariant."""
    if not j:
        return Fp2Element.from_ints(0, 0, j.p), Fp2Element.from_ints(1, 0, j.p)
    if not (j - 1728):
        return Fp2Element.from_ints(1, 0, j.p), Fp2Element.from_ints(0, 0, j.p)
    k = j / (1728 - j)
    return 3 * k, 2 * k


def is_ss_hasse(a4: Fp2Element, a6: Fp2Element, p: int) -> bool:
    """
    Hasse-invariant criterion: the x^(p-1) coefficient of (x^3 + a4 x + a6)^((p-1)/2) vanishes.

    The coefficient is summed over the trinomial expansion directly: the term
    x^(3i) (a4 x)^k a6^l with i + k + l = m contributes when 3i + k = p - 1.
    """
    _require_prime_at_least_5(p)
    a4 = Fp2Element.embed(a4) if isinstance(a4, FpElement) else a4
    a6 = Fp2Element.embed(a6) if isinstance(a6, FpElement) else a6
    if not (4 * a4 ** 3 + 27 * a6 * a6):
        raise DegenerateCurveError(f"y^2 = x^3 + ({a4}) x + ({a6}) is singular")
    m = (p - 1) // 2
    coefficient = Fp2Element.from_ints(0, 0, p)
    for i in range(m + 1):
        k = p - 1 - 3 * i
        l = m - i - k
        if k < 0:
            break
        if l < 0:
            continue
        multinomial = comb(m, i) * comb(m - i, k)
        coefficient = coefficient + multinomial * a4 ** k * a6 ** l
    return not coefficient


def is_ss_pointcount(j: FpElement, p: int) -> bool:
    """Naive count of #E(F_p) for a curve with invariant j; supersingular iff the trace is 0."""
    if p < 5:
        raise NotPrimeError(f"point counting oracle needs p >= 5, got {p}")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    a4, a6 = curve_for_j(Fp2Element.embed(FpElement(int(j), p)))
    A, B = a4.a.value, a6.a.value
    half = (p - 1) // 2
    character_sum = 0
    for x in range(p):
        v = (x * x * x + A * x + B) % p
        if v:
            character_sum += 1 if pow(v, half, p) == 1 else -1
    # #E(F_p) = p + 1 + character_sum, so the trace is -character_sum
    return character_sum == 0


def census_to_dict(c: SupersingularCensus) -> Dict[str, Any]:
    return {
        "p": c.p,
        "nu": quad_nonresidue(c.p).value,
        "j_values": [[j.a.value, j.b.value] for j in c.j_values],
        "total": c.total,
        "h": c.h,
        "pairs": c.pairs,
        "has_j0": c.has_j0,
        "has_j1728": c.has_j1728,
        "lambda_roots": c.lambda_roots,
    }


def census_from_dict(data: Dict[str, Any]) -> SupersingularCensus:
    p = int(data["p"])
    if int(data["nu"]) != quad_nonresidue(p).value:
        raise InconsistentCensusError(f"stored census for p={p} uses a different nonresidue")
    return SupersingularCensus(
        p=p,
        j_values=tuple(Fp2Element.from_ints(a, b, p) for a, b in data["j_values"]),
        total=int(data["total"]),
        h=int(data["h"]),
        pairs=int(data["pairs"]),
        has_j0=bool(data["has_j0"]),
        has_j1728=bool(data["has_j1728"]),
        lambda_roots=int(data["lambda_roots"]),
    )
