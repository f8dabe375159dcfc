"""
Kodaira reduction types and the ramified part of pi_1^ab for an elliptic curve.

For good or additive reduction the ramified part prime to p is Phi(E)[q-1],
q the size of the residue field. Multiplicative types In are not covered by
that statement and are refused.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

from modular_pi1.exceptions import MultiplicativeReductionError
from modular_pi1.finite_field.ff import is_prime
from modular_pi1.linalg.zlinalg import AbGroup, torsion_part


class ReductionTag(Enum):
    """Kodaira symbols"""
    I0 = "I0"
    IN = "In"
    II = "II"
    III = "III"
    IV = "IV"
    I0_STAR = "I0*"
    IN_STAR = "In*"
    IV_STAR = "IV*"
    III_STAR = "III*"
    II_STAR = "II*"

    @classmethod
    def get_all_types(cls):
        return [member.value for member in cls]

    @classmethod
    def is_valid(cls, tag: str) -> bool:
        return tag in cls.get_all_types()


# Component groups of the Neron special fiber by Kodaira type, as tabulated in
# Silverman, Advanced Topics in the Arithmetic of Elliptic Curves, IV.9 (Table 4.1).
# In* is resolved by the parity of n in kodaira_component_group.
_PHI_TABLE: Dict[ReductionTag, Tuple[int, ...]] = {
    ReductionTag.I0: (),
    ReductionTag.II: (),
    ReductionTag.III: (2,),
    ReductionTag.IV: (3,),
    ReductionTag.I0_STAR: (2, 2),
    ReductionTag.IV_STAR: (3,),
    ReductionTag.III_STAR: (2,),
    ReductionTag.II_STAR: (),
}


@dataclass(frozen=True)
class KodairaType:
    tag: ReductionTag
    n: int = 0

    def __post_init__(self):
        if isinstance(self.tag, str):
            if not ReductionTag.is_valid(self.tag):
                raise ValueError(f"Unknown Kodaira type: {self.tag}")
            object.__setattr__(self, "tag", ReductionTag(self.tag))
        if self.tag is ReductionTag.IN:
            raise MultiplicativeReductionError(
                "multiplicative reduction (In) is outside the good/additive statement"
            )
        if self.tag is ReductionTag.IN_STAR:
            if self.n < 1:
                raise ValueError(f"In* needs n >= 1, got {self.n}")
        elif self.n:
            raise ValueError(f"{self.tag.value} takes no parameter, got n={self.n}")

    def __str__(self):
        if self.tag is ReductionTag.IN_STAR:
            return f"I{self.n}*"
        return self.tag.value


def kodaira_component_group(t: KodairaType) -> AbGroup:
    if t.tag is ReductionTag.IN_STAR:
        return AbGroup(0, (2, 2) if t.n % 2 == 0 else (4,))
    return AbGroup(0, _PHI_TABLE[t.tag])


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    ell = next(d for d in range(2, q + 1) if q % d == 0)
    while q % ell == 0:
        q //= ell
    return q == 1 and is_prime(ell)


def elliptic_ram_part(t: KodairaType, q: int) -> AbGroup:
    """Phi(E)[q - 1] for good or additive reduction over a residue field of size q."""
    if not is_prime_power(q):
        raise ValueError(f"residue field size {q} is not a prime power")
    return torsion_part(kodaira_component_group(t), q - 1)
