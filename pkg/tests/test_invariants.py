from dataclasses import replace

import pytest

from modular_pi1.exceptions import InconsistentCensusError, MultiplicativeReductionError, NotPrimeError
from modular_pi1.finite_field.ff import is_prime
from modular_pi1.invariants.kodaira import (
    KodairaType,
    ReductionTag,
    elliptic_ram_part,
    is_prime_power,
    kodaira_component_group,
)
from modular_pi1.invariants.structure import (
    CHECK_NAMES,
    assemble,
    eisenstein_number,
    genus_x0,
    ramified_part_order,
    rank_r,
    shimura_covering_degree,
)
from modular_pi1.linalg.zlinalg import AbGroup
from modular_pi1.supersingular.ssenum import census


@pytest.mark.parametrize(
    "p, n, g",
    [(2, 1, 0), (3, 1, 0), (5, 1, 0), (7, 1, 0), (11, 5, 1), (13, 1, 0), (23, 11, 2), (37, 3, 2), (97, 8, 7)],
)
def test_eisenstein_number_and_genus(p, n, g):
    assert eisenstein_number(p) == n
    assert genus_x0(p) == g


def test_closed_forms_reject_composites():
    with pytest.raises(NotPrimeError):
        eisenstein_number(12)
    with pytest.raises(NotPrimeError):
        genus_x0(1)


def test_rank_formula():
    assert rank_r(1, 2) == 1
    assert rank_r(2, 1) == 1
    assert rank_r(0, 1) == 0
    with pytest.raises(InconsistentCensusError):
        rank_r(2, 2)


@pytest.mark.parametrize("p", [p for p in range(5, 200) if is_prime(p)])
def test_shimura_degree_is_eisenstein_number(p):
    assert shimura_covering_degree(p) == eisenstein_number(p)


def test_report_p11():
    report = assemble(11)
    assert report.all_passed
    assert report.torsion == AbGroup(0, (5,))
    assert report.coinvariants == AbGroup(1)
    assert report.rank == 1
    assert report.exact_sequence() == "0 → Z/5 → π₁ᵃᵇ(X₀(11)/Q_11)ᵍᵉᵒ → Ẑ¹ → 0"


def test_report_p13_is_trivial():
    report = assemble(13)
    assert report.all_passed
    assert (report.genus, report.total, report.rank) == (0, 1, 0)
    assert report.torsion.is_trivial()
    assert report.exact_sequence().startswith("0 → 0 → ")


def test_report_p23():
    report = assemble(23)
    assert report.all_passed
    assert report.torsion == AbGroup(0, (11,))
    assert report.coinvariants == AbGroup(2)
    assert report.rank == 2


def test_report_p37():
    report = assemble(37)
    assert report.all_passed
    assert (report.total, report.h, report.pairs) == (3, 1, 1)
    assert report.torsion == AbGroup(0, (3,))
    assert report.rank == 1


@pytest.mark.parametrize("p", [2, 3])
def test_tiny_primes(p):
    report = assemble(p)
    assert report.all_passed
    assert report.genus == 0 and report.rank == 0


def test_report_dict_shape():
    data = assemble(37, include_graph=True).to_dict()
    assert data["torsion"] == {"free_rank": 0, "invariant_factors": [3]}
    assert data["census"] == {"total": 3, "h": 1, "pairs": 1, "lambda_roots": 18}
    assert set(data["checks"]) == set(CHECK_NAMES)
    assert data["all_checks_passed"] is True
    assert len(data["graph"]["edges"]) == 3


def test_assemble_uses_census_provider():
    calls = []

    def provider(p):
        calls.append(p)
        return census(p)

    assemble(29, census_provider=provider)
    assert calls == [29]


def test_ramified_part_order_from_groups():
    assert ramified_part_order(AbGroup(0, (5,)), AbGroup(1)) == 5
    assert ramified_part_order(AbGroup(0, (5,)), AbGroup(1, (2,))) == 10
    assert ramified_part_order(None, AbGroup(1)) is None
    assert ramified_part_order(AbGroup(0, (5,)), None) is None


@pytest.mark.parametrize("p, expected", [(11, 5), (23, 11), (37, 3), (97, 8)])
def test_report_ramified_order_is_computed(p, expected):
    report = assemble(p)
    assert report.ramified_order == expected
    assert report.checks["injectivity_divisibility"]
    assert report.checks["shimura_divides_ramified"]
    assert report.checks["deuring_squarefree"]


def test_wrong_lambda_count_fails_only_deuring_check():
    def provider(p):
        return replace(census(p), lambda_roots=17)

    report = assemble(37, census_provider=provider)
    assert report.failed_checks() == ["deuring_squarefree"]


def test_assemble_rejects_composites():
    with pytest.raises(NotPrimeError):
        assemble(25)


@pytest.mark.slow
def test_every_check_passes_up_to_499():
    failures = {}
    for p in range(2, 500):
        if is_prime(p):
            report = assemble(p)
            if not report.all_passed:
                failures[p] = report.failed_checks()
    assert failures == {}


@pytest.mark.parametrize(
    "tag, n, expected",
    [
        ("I0", 0, ()),
        ("II", 0, ()),
        ("III", 0, (2,)),
        ("IV", 0, (3,)),
        ("I0*", 0, (2, 2)),
        ("In*", 1, (4,)),
        ("In*", 2, (2, 2)),
        ("IV*", 0, (3,)),
        ("III*", 0, (2,)),
        ("II*", 0, ()),
    ],
)
def test_kodaira_component_groups(tag, n, expected):
    assert kodaira_component_group(KodairaType(tag, n)) == AbGroup(0, expected)


def test_kodaira_rejects_multiplicative_and_bad_parameters():
    with pytest.raises(MultiplicativeReductionError):
        KodairaType(ReductionTag.IN)
    with pytest.raises(ValueError):
        KodairaType("In*", 0)
    with pytest.raises(ValueError):
        KodairaType("III", 2)
    with pytest.raises(ValueError):
        KodairaType("V")


@pytest.mark.parametrize(
    "q, tag, n, expected",
    [
        (4, "IV", 0, (3,)),
        (4, "III", 0, ()),
        (5, "III", 0, (2,)),
        (5, "In*", 1, (4,)),
        (7, "I0*", 0, (2, 2)),
        (7, "IV*", 0, (3,)),
        (9, "In*", 3, (4,)),
        (9, "II*", 0, ()),
        (25, "IV", 0, (3,)),
        (25, "In*", 2, (2, 2)),
    ],
)
def test_elliptic_ram_part(q, tag, n, expected):
    assert elliptic_ram_part(KodairaType(tag, n), q) == AbGroup(0, expected)


def test_elliptic_ram_part_good_reduction_is_trivial():
    for q in (4, 5, 7, 9, 25):
        assert elliptic_ram_part(KodairaType("I0"), q).is_trivial()


def test_elliptic_ram_part_needs_prime_power():
    assert is_prime_power(9) and is_prime_power(2) and not is_prime_power(12)
    with pytest.raises(ValueError):
        elliptic_ram_part(KodairaType("III"), 6)
