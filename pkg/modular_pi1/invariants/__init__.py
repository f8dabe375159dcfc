from .kodaira import (
    KodairaType,
    ReductionTag,
    elliptic_ram_part,
    is_prime_power,
    kodaira_component_group,
)
from .structure import (
    CHECK_NAMES,
    Pi1Report,
    assemble,
    eisenstein_number,
    genus_x0,
    ramified_part_order,
    rank_r,
    shimura_covering_degree,
)

__all__ = [
    'CHECK_NAMES', 'KodairaType', 'Pi1Report', 'ReductionTag', 'assemble',
    'eisenstein_number', 'elliptic_ram_part', 'genus_x0', 'is_prime_power',
    'kodaira_component_group', 'ramified_part_order', 'rank_r', 'shimura_covering_degree',
]
