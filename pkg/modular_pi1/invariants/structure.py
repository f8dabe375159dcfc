"""
Closed-form invariants of X_0(p) and assembly of the pi_1^ab structure report.

    0 -> Phi(J_0(p)) -> pi_1^ab(X_0(p)/Q_p)^geo -> Z^r (completed) -> 0

Phi comes from the dual graph, r from the Frobenius coinvariants of its
cycle lattice; both are checked against the closed forms here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Any, Callable, Dict, List, Optional

from modular_pi1.dual_graph.dualgraph import (
    build_graph,
    component_group,
    frobenius_coinvariants,
    graph_to_dict,
    spanning_tree_weight,
    subdivided_critical_group,
)
from modular_pi1.exceptions import InconsistentCensusError, NotPrimeError, Pi1Error
from modular_pi1.finite_field.ff import is_prime
from modular_pi1.linalg.zlinalg import AbGroup
from modular_pi1.supersingular.ssenum import SupersingularCensus, census
from modular_pi1.utils.flexible_logger import Logger

logger = Logger(name="assemble")

CHECK_NAMES = (
    "genus_vs_census",
    "phi_order_vs_eisenstein",
    "phi_cyclic",
    "coinvariants_free",
    "rank_formula",
    "injectivity_divisibility",
    "census_balanced",
    "h_positive",
    "pairing_nondegenerate",
    "subdivision_invariant",
    "spanning_tree_order",
    "eisenstein_coprime_to_p",
    "shimura_vs_eisenstein",
    "shimura_divides_ramified",
    "ramified_equals_torsion",
    "deuring_squarefree",
)

CensusProvider = Callable[[int], SupersingularCensus]


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")


def eisenstein_number(p: int) -> int:
    """Numerator of (p - 1)/12."""
    _require_prime(p)
    return (p - 1) // gcd(p - 1, 12)


def genus_x0(p: int) -> int:
    _require_prime(p)
    if p < 5:
        return 0
    offset = {1: -13, 5: -5, 7: -7, 11: 1}[p % 12]
    return (p + offset) // 12


def rank_r(g: int, h: int) -> int:
    """(g + h - 1)/2; a negative or odd numerator means the census and genus disagree."""
    numerator = g + h - 1
    if numerator < 0 or numerator % 2:
        raise InconsistentCensusError(f"g + h - 1 = {numerator} is not a nonnegative even number")
    return numerator // 2


def shimura_covering_degree(p: int) -> int:
    """
    Degree of the largest subcovering of X_1(p) -> X_0(p) unramified everywhere.

    X_1(p) -> X_0(p) is cyclic of degree (p-1)/2 and ramifies only over the
    elliptic points: with index 2 over the order-2 points when p = 1 mod 4,
    with index 3 over the order-3 points when p = 1 mod 3.
    """
    _require_prime(p)
    if p < 5:
        return 1
    e2 = 2 if p % 4 == 1 else 1
    e3 = 3 if p % 3 == 1 else 1
    return (p - 1) // 2 // (e2 * e3)


def ramified_part_order(phi: Optional[AbGroup], coinvariants: Optional[AbGroup]) -> Optional[int]:
    """
    Order of the torsion of pi_1^ab geo read off the computed groups.

    The torsion is an extension of the torsion of the Frobenius coinvariants
    by Phi, so its order is |Phi| * |tors(coinvariants)|. None when either
    group is missing.
    """
    if phi is None or coinvariants is None or phi.order is None:
        return None
    return phi.order * AbGroup(0, coinvariants.invariant_factors).order


@dataclass
class Pi1Report:
    p: int
    genus: int
    eisenstein_number: int
    total: int
    h: int
    pairs: int
    rank: Optional[int]
    torsion: Optional[AbGroup]
    coinvariants: Optional[AbGroup]
    checks: Dict[str, bool]
    ramified_order: Optional[int]
    shimura_degree: int
    lambda_roots: int = 0
    diagnostics: List[str] = field(default_factory=list)
    graph: Optional[Dict[str, Any]] = None

    @property
    def all_passed(self) -> bool:
        return all(self.checks.values())

    def failed_checks(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def exact_sequence(self) -> str:
        torsion = str(self.torsion) if self.torsion is not None else "?"
        rank = "?" if self.rank is None else _superscript(self.rank)
        return f"0 → {torsion} → π₁ᵃᵇ(X₀({self.p})/Q_{self.p})ᵍᵉᵒ → Ẑ{rank} → 0"

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "p": self.p,
            "genus": self.genus,
            "eisenstein_number": self.eisenstein_number,
            "census": {
                "total": self.total,
                "h": self.h,
                "pairs": self.pairs,
                "lambda_roots": self.lambda_roots,
            },
            "rank": self.rank,
            "torsion": self.torsion.to_dict() if self.torsion is not None else None,
            "coinvariants": self.coinvariants.to_dict() if self.coinvariants is not None else None,
            "ramified_order": self.ramified_order,
            "shimura_degree": self.shimura_degree,
            "checks": dict(self.checks),
            "all_checks_passed": self.all_passed,
            "diagnostics": list(self.diagnostics),
        }
        if self.graph is not None:
            out["graph"] = self.graph
        return out


_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _superscript(n: int) -> str:
    return str(n).translate(_SUPERSCRIPTS)


def _small_prime_report(p: int) -> Pi1Report:
    # X_0(2), X_0(3) have genus 0 and a single supersingular point (j = 0 = 1728)
    return Pi1Report(
        p=p,
        genus=0,
        eisenstein_number=1,
        total=1,
        h=1,
        pairs=0,
        rank=0,
        torsion=AbGroup(),
        coinvariants=AbGroup(),
        checks={name: True for name in CHECK_NAMES},
        ramified_order=1,
        shimura_degree=1,
    )


def assemble(
    p: int,
    census_provider: Optional[CensusProvider] = None,
    include_graph: bool = False,
) -> Pi1Report:
    """Run census -> dual graph -> Phi and coinvariants -> rank, and record every check."""
    _require_prime(p)
    if p < 5:
        report = _small_prime_report(p)
        logger.info(f"p={p}: genus 0, trivial report")
        return report

    ss = census_provider(p) if census_provider is not None else census(p)
    g = genus_x0(p)
    n = eisenstein_number(p)
    shimura = shimura_covering_degree(p)
    diagnostics: List[str] = []

    graph = build_graph(ss, p)

    phi: Optional[AbGroup] = None
    try:
        phi = component_group(graph)
    except Pi1Error as exc:
        diagnostics.append(f"component_group: {exc}")

    coinvariants: Optional[AbGroup] = None
    try:
        coinvariants = frobenius_coinvariants(graph)
    except Pi1Error as exc:
        diagnostics.append(f"frobenius_coinvariants: {exc}")

    r: Optional[int] = None
    try:
        r = rank_r(g, ss.h)
    except InconsistentCensusError as exc:
        diagnostics.append(f"rank_r: {exc}")

    phi_order = phi.order if phi is not None else None
    ramified = ramified_part_order(phi, coinvariants)
    coinvariants_free = coinvariants is not None and coinvariants.is_torsion_free()
    checks = {
        "genus_vs_census": g + 1 == ss.total,
        "phi_order_vs_eisenstein": phi_order == n,
        "phi_cyclic": phi is not None and phi.is_cyclic(),
        "coinvariants_free": coinvariants_free,
        "rank_formula": r is not None and coinvariants is not None and coinvariants.free_rank == r,
        "injectivity_divisibility": bool(phi_order) and ramified is not None and phi_order % ramified == 0,
        "census_balanced": ss.total == ss.h + 2 * ss.pairs,
        "h_positive": ss.h >= 1,
        "pairing_nondegenerate": phi is not None,
        "subdivision_invariant": phi is not None and subdivided_critical_group(graph) == phi,
        "spanning_tree_order": phi_order == spanning_tree_weight(graph),
        "eisenstein_coprime_to_p": gcd(n, p) == 1,
        "shimura_vs_eisenstein": shimura == n,
        "shimura_divides_ramified": ramified is not None and ramified % shimura == 0,
        "ramified_equals_torsion": coinvariants_free and ramified == phi_order,
        "deuring_squarefree": ss.lambda_roots == (p - 1) // 2,
    }

    report = Pi1Report(
        p=p,
        genus=g,
        eisenstein_number=n,
        total=ss.total,
        h=ss.h,
        pairs=ss.pairs,
        rank=r,
        torsion=phi,
        coinvariants=coinvariants,
        checks=checks,
        ramified_order=ramified,
        shimura_degree=shimura,
        lambda_roots=ss.lambda_roots,
        diagnostics=diagnostics,
        graph=graph_to_dict(graph) if include_graph else None,
    )
    for name in report.failed_checks():
        logger.warning(f"p={p}: check {name} failed")
    logger.info(f"p={p}: {report.exact_sequence()}")
    return report
