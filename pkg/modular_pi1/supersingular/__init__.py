from .ssenum import (
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

__all__ = [
    'SupersingularCensus', 'census', 'census_from_dict', 'census_to_dict', 'curve_for_j',
    'deuring_polynomial', 'is_ss_hasse', 'is_ss_pointcount', 'lambda_to_j', 'supersingular_lambda_count',
]
