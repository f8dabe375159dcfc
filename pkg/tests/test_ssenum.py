import pytest

from modular_pi1.exceptions import DegenerateCurveError, InconsistentCensusError, NotPrimeError
from modular_pi1.finite_field.ff import FpElement, Fp2Element, fp2_frobenius, is_prime, poly_gcd
from modular_pi1.invariants.structure import genus_x0
from modular_pi1.supersingular.ssenum import (
    SupersingularCensus,
    census,
    census_from_dict,
    census_to_dict,
    curve_for_j,
    deuring_polynomial,
    is_ss_hasse,
    is_ss_pointcount,
    lambda_to_j,
    supersingular_lambda_count,
)

SMALL_PRIMES = [p for p in range(5, 80) if is_prime(p)]
ALL_PRIMES = [p for p in range(5, 500) if is_prime(p)]


def rational_js(c):
    return {j.a.value for j in c.rational_j_values()}


def test_deuring_polynomial_11():
    assert deuring_polynomial(11).coeffs == (1, 3, 1, 1, 3, 1)


def test_deuring_polynomial_needs_p_at_least_5():
    with pytest.raises(NotPrimeError):
        deuring_polynomial(3)
    with pytest.raises(NotPrimeError):
        deuring_polynomial(9)


def test_lambda_to_j_special_values():
    p = 13
    assert lambda_to_j(Fp2Element.from_ints(-1, 0, p)) == Fp2Element.from_ints(1728, 0, p)
    assert lambda_to_j(Fp2Element.from_ints(2, 0, p)) == Fp2Element.from_ints(1728, 0, p)


@pytest.mark.parametrize("lam", [0, 1])
def test_lambda_to_j_degenerate(lam):
    with pytest.raises(DegenerateCurveError):
        lambda_to_j(Fp2Element.from_ints(lam, 0, 11))


@pytest.mark.parametrize(
    "p, expected",
    [(5, {0}), (7, {6}), (11, {0, 1}), (13, {5}), (23, {0, 3, 19})],
)
def test_census_known_rational_values(p, expected):
    c = census(p)
    assert c.pairs == 0
    assert rational_js(c) == expected
    assert c.total == len(expected) == c.h


def test_census_37_has_a_conjugate_pair():
    c = census(37)
    assert (c.total, c.h, c.pairs) == (3, 1, 1)
    assert rational_js(c) == {8}
    assert not c.has_j0 and not c.has_j1728


def test_census_special_j_flags():
    c = census(11)
    assert c.has_j0 and c.has_j1728
    c = census(13)
    assert not c.has_j0 and not c.has_j1728


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_census_total_matches_genus(p):
    c = census(p)
    assert c.total == genus_x0(p) + 1
    assert c.total == c.h + 2 * c.pairs
    assert c.h >= 1
    assert c.lambda_roots == (p - 1) // 2
    assert c.has_j0 == (p % 3 == 2)
    assert c.has_j1728 == (p % 4 == 3)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_census_agrees_with_point_count(p):
    rational = rational_js(census(p))
    from_point_counts = {a for a in range(p) if is_ss_pointcount(FpElement(a, p), p)}
    assert from_point_counts == rational


@pytest.mark.parametrize("p", [11, 13, 37, 43, 61, 67])
def test_census_agrees_with_hasse_invariant(p):
    c = census(p)
    for j in c.j_values:
        a4, a6 = curve_for_j(j)
        assert is_ss_hasse(a4, a6, p)
    ss = rational_js(c)
    for a in range(p):
        a4, a6 = curve_for_j(Fp2Element.from_ints(a, 0, p))
        assert is_ss_hasse(a4, a6, p) == (a in ss)


def test_curve_for_j_has_that_invariant():
    p = 29
    for a in range(p):
        j = Fp2Element.from_ints(a, 0, p)
        a4, a6 = curve_for_j(j)
        disc = 4 * a4 ** 3 + 27 * a6 * a6
        assert disc
        assert 1728 * 4 * a4 ** 3 / disc == j


def test_hasse_accepts_prime_field_coefficients():
    p = 11
    # y^2 = x^3 + x has j = 1728, supersingular for p = 3 mod 4
    assert is_ss_hasse(FpElement(1, p), FpElement(0, p), p)


def test_hasse_rejects_singular_curve():
    with pytest.raises(DegenerateCurveError):
        is_ss_hasse(FpElement(0, 7), FpElement(0, 7), 7)


def test_census_rejects_small_and_composite():
    with pytest.raises(NotPrimeError):
        census(3)
    with pytest.raises(NotPrimeError):
        census(21)


def test_census_dict_survives_serialization():
    c = census(37)
    assert census_from_dict(census_to_dict(c)) == c


def test_inconsistent_census_rejected():
    j = Fp2Element.from_ints(5, 0, 13)
    with pytest.raises(InconsistentCensusError):
        SupersingularCensus(p=13, j_values=(j,), total=1, h=0, pairs=1, has_j0=False, has_j1728=False)


@pytest.mark.parametrize("p", [5, 11, 37, 101])
def test_deuring_polynomial_is_squarefree(p):
    assert supersingular_lambda_count(p) == deuring_polynomial(p).degree == (p - 1) // 2


@pytest.mark.slow
@pytest.mark.parametrize("p", ALL_PRIMES)
def test_census_invariants_full_range(p):
    c = census(p)
    # each generic j has six Legendre parameters, j = 1728 three, j = 0 two
    generic = c.total - c.has_j0 - c.has_j1728
    assert (p - 1) // 2 == 6 * generic + 3 * c.has_j1728 + 2 * c.has_j0
    assert c.lambda_roots == (p - 1) // 2
    assert c.has_j0 == (p % 3 == 2)
    assert c.has_j1728 == (p % 4 == 3)
    assert c.total == genus_x0(p) + 1

    H = deuring_polynomial(p)
    assert poly_gcd(H, H.derivative()).degree == 0

    assert {fp2_frobenius(j) for j in c.j_values} == set(c.j_values)


@pytest.mark.slow
@pytest.mark.parametrize("p", [p for p in ALL_PRIMES if p < 200])
def test_hasse_invariant_full_range(p):
    c = census(p)
    for j in c.j_values:
        a4, a6 = curve_for_j(j)
        assert is_ss_hasse(a4, a6, p)
    ss = rational_js(c)
    for a in range(p):
        if a not in ss:
            a4, a6 = curve_for_j(Fp2Element.from_ints(a, 0, p))
            assert not is_ss_hasse(a4, a6, p)


@pytest.mark.slow
@pytest.mark.parametrize("p", [p for p in ALL_PRIMES if p <= 101])
def test_point_count_full_range(p):
    from_point_counts = {a for a in range(p) if is_ss_pointcount(FpElement(a, p), p)}
    assert from_point_counts == rational_js(census(p))
