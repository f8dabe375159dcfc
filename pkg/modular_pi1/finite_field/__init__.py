from .ff import (
    FpElement,
    Fp2Element,
    PolyFp,
    RootCount,
    distinct_roots,
    fp2_frobenius,
    fp_sqrt,
    is_prime,
    poly_gcd,
    poly_powmod,
    quad_nonresidue,
    quadratic_roots,
    require_odd_prime,
)

__all__ = [
    'FpElement', 'Fp2Element', 'PolyFp', 'RootCount', 'distinct_roots',
    'fp2_frobenius', 'fp_sqrt', 'is_prime', 'poly_gcd', 'poly_powmod',
    'quad_nonresidue', 'quadratic_roots', 'require_odd_prime',
]
