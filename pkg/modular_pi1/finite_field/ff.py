"""
Exact arithmetic in F_p, F_p^2 = F_p[sqrt(nu)] and dense polynomials over F_p.

Everything here is an immutable value built on Python integers. Polynomials
keep plain ``int`` coefficients internally (lowest degree first) so the
schoolbook loops stay cheap; ``PolyFp.coefficients`` hands them out as
``FpElement`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

from modular_pi1.exceptions import NotPrimeError, PolynomialError


def is_prime(n: int) -> bool:
    """Trial division; fine at desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def require_odd_prime(p: int) -> int:
    if p == 2:
        raise NotPrimeError("p = 2 is not supported by the finite field layer")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class FpElement:
    """Element of F_p, always stored reduced to [0, p)."""
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> Optional["FpElement"]:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError(f"mixed characteristics {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FpElement(pow(self.value, e, self.p), self.p)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FpElement({self.value} mod {self.p})"


@lru_cache(maxsize=None)
def quad_nonresidue(p: int) -> FpElement:
    """Smallest positive nu with nu^((p-1)/2) = -1 mod p."""
    require_odd_prime(p)
    half = (p - 1) // 2
    for nu in range(2, p):
        if pow(nu, half, p) == p - 1:
            return FpElement(nu, p)
    raise NotPrimeError(f"no quadratic nonresidue modulo {p}")


def fp_sqrt(a: FpElement) -> Optional[FpElement]:
    """Square root in F_p by Tonelli-Shanks; the smaller of the two roots, None for nonresidues."""
    p, v = a.p, a.value
    if v == 0:
        return a
    if pow(v, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(v, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = quad_nonresidue(p).value
        m, c, t, r = s, pow(z, q, p), pow(v, q, p), pow(v, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 1, t * t % p
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return FpElement(min(r, p - r), p)


@dataclass(frozen=True)
class Fp2Element:
    """a + b*sqrt(nu) in F_p^2, nu the smallest quadratic nonresidue mod p."""
    a: FpElement
    b: FpElement
    nu: int

    @classmethod
    def from_ints(cls, a: int, b: int, p: int) -> "Fp2Element":
        return cls(FpElement(a, p), FpElement(b, p), quad_nonresidue(p).value)

    @classmethod
    def embed(cls, x: FpElement) -> "Fp2Element":
        return cls(x, FpElement(0, x.p), quad_nonresidue(x.p).value)

    @property
    def p(self) -> int:
        return self.a.p

    def _coerce(self, other) -> Optional["Fp2Element"]:
        if isinstance(other, Fp2Element):
            if other.p != self.p:
                raise ValueError(f"mixed characteristics {self.p} and {other.p}")
            return other
        if isinstance(other, FpElement):
            return Fp2Element(other, FpElement(0, self.p), self.nu)
        if isinstance(other, int):
            return Fp2Element(FpElement(other, self.p), FpElement(0, self.p), self.nu)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp2Element(self.a + o.a, self.b + o.b, self.nu)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp2Element(self.a - o.a, self.b - o.b, self.nu)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        a, b, c, d = self.a.value, self.b.value, o.a.value, o.b.value
        return Fp2Element(FpElement(a * c + self.nu * b * d, p), FpElement(a * d + b * c, p), self.nu)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp2Element(-self.a, -self.b, self.nu)

    def norm(self) -> FpElement:
        return self.a * self.a - self.nu * self.b * self.b

    def inverse(self) -> "Fp2Element":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("0 has no inverse in F_p^2")
        n_inv = n.inverse()
        return Fp2Element(self.a * n_inv, -self.b * n_inv, self.nu)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self._coerce(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def in_prime_field(self) -> bool:
        return self.b.value == 0

    def sort_key(self) -> Tuple[int, int]:
        return (self.b.value, self.a.value)

    def __repr__(self):
        if self.in_prime_field():
            return f"Fp2Element({self.a.value} mod {self.p})"
        return f"Fp2Element({self.a.value} + {self.b.value}*sqrt({self.nu}) mod {self.p})"


def fp2_frobenius(x: Fp2Element) -> Fp2Element:
    """x -> x^p, i.e. (a, b) -> (a, -b)."""
    return Fp2Element(x.a, -x.b, x.nu)


Scalar = Union[int, FpElement]


def _strip(coeffs: List[int]) -> Tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class PolyFp:
    """Dense polynomial over F_p, lowest degree first; the zero polynomial has no coefficients."""
    coeffs: Tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip([c % self.p for c in self.coeffs]))

    @classmethod
    def x(cls, p: int) -> "PolyFp":
        return cls((0, 1), p)

    @classmethod
    def constant(cls, c: Scalar, p: int) -> "PolyFp":
        return cls((int(c),), p)

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], p: int) -> "PolyFp":
        f = cls((1,), p)
        for r in roots:
            f = f * cls((-int(r), 1), p)
        return f

    @property
    def coefficients(self) -> List[FpElement]:
        return [FpElement(c, self.p) for c in self.coeffs]

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "PolyFp":
        if not self.coeffs:
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return PolyFp(tuple(c * inv for c in self.coeffs), self.p)

    def _lift(self, other) -> Optional["PolyFp"]:
        if isinstance(other, PolyFp):
            if other.p != self.p:
                raise ValueError(f"mixed characteristics {self.p} and {other.p}")
            return other
        if isinstance(other, (int, FpElement)):
            return PolyFp.constant(other, self.p)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyFp(tuple(out), self.p)

    __radd__ = __add__

    def __neg__(self):
        return PolyFp(tuple(-c for c in self.coeffs), self.p)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PolyFp(_mul(self.coeffs, o.coeffs), self.p)

    __rmul__ = __mul__

    def __divmod__(self, other: "PolyFp") -> Tuple["PolyFp", "PolyFp"]:
        if other.is_zero():
            raise PolynomialError("division by the zero polynomial")
        p = self.p
        inv = pow(other.coeffs[-1], -1, p)
        q, r = _divmod(self.coeffs, tuple(c * inv % p for c in other.coeffs), p)
        return PolyFp(tuple(c * inv for c in q), p), PolyFp(r, p)

    def __floordiv__(self, other: "PolyFp") -> "PolyFp":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyFp") -> "PolyFp":
        return divmod(self, other)[1]

    def derivative(self) -> "PolyFp":
        return PolyFp(tuple(i * c for i, c in enumerate(self.coeffs))[1:], self.p)

    def __call__(self, x):
        """Horner evaluation at an int, FpElement or Fp2Element."""
        if isinstance(x, Fp2Element):
            acc = Fp2Element.from_ints(0, 0, self.p)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        v, p, acc = int(x) % self.p, self.p, 0
        for c in reversed(self.coeffs):
            acc = (acc * v + c) % p
        return FpElement(acc, p)

    def __repr__(self):
        if not self.coeffs:
            return f"PolyFp(0 mod {self.p})"
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"PolyFp({' + '.join(reversed(terms))} mod {self.p})"


def _mul(a: Tuple[int, ...], b: Tuple[int, ...]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _divmod(num: Iterable[int], monic_den: Tuple[int, ...], p: int) -> Tuple[List[int], List[int]]:
    """Long division by a monic divisor; remainder is reduced, quotient unreduced."""
    r = [c % p for c in num]
    dq = len(monic_den) - 1
    if len(r) <= dq:
        return [], r
    q = [0] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] % p
        q[k] = c
        if c:
            for i in range(dq):
                r[k + i] -= c * monic_den[i]
    return q, [c % p for c in r[:dq]]


def poly_gcd(f: PolyFp, g: PolyFp) -> PolyFp:
    """Monic gcd (zero only when both inputs are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def poly_powmod(g: PolyFp, e: int, f: PolyFp, p: Optional[int] = None) -> PolyFp:
    """g^e mod f by square-and-multiply."""
    if p is not None and (p != g.p or p != f.p):
        raise ValueError(f"polynomials are not over F_{p}")
    if f.degree < 1:
        raise PolynomialError("modulus must have degree >= 1")
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    q = f.p
    fm = f.monic().coeffs
    base = _divmod(g.coeffs, fm, q)[1]
    result = [1]
    for bit in bin(e)[2:]:
        result = _divmod(_mul(result, result), fm, q)[1]
        if bit == "1":
            result = _divmod(_mul(result, base), fm, q)[1]
    return PolyFp(tuple(result), q)


class RootCount(NamedTuple):
    roots_in_fp: FrozenSet[FpElement]
    quadratic_root_count: int


@lru_cache(maxsize=32)
def _frobenius_gcds(f: PolyFp) -> Tuple[PolyFp, PolyFp]:
    """(gcd(f, x^p - x), gcd(f, x^(p^2) - x)) for nonconstant f."""
    x = PolyFp.x(f.p)
    xp = poly_powmod(x, f.p, f)
    xp2 = poly_powmod(xp, f.p, f)
    return poly_gcd(f, xp - x), poly_gcd(f, xp2 - x)


def distinct_roots(f: PolyFp, p: Optional[int] = None) -> RootCount:
    """Distinct roots of f in F_p, and how many distinct roots it has in F_p^2 \\ F_p."""
    if p is not None and p != f.p:
        raise ValueError(f"polynomial is not over F_{p}")
    if f.is_zero():
        raise PolynomialError("the zero polynomial has every element as a root")
    if f.degree == 0:
        return RootCount(frozenset(), 0)
    linear, up_to_quadratic = _frobenius_gcds(f)
    roots = frozenset(FpElement(a, f.p) for a in range(f.p) if not linear(a))
    return RootCount(roots, up_to_quadratic.degree - len(roots))


def _trial_polynomials(p: int) -> Iterator[PolyFp]:
    for c in range(p):
        yield PolyFp((c, 1), p)
    for c1 in range(p):
        for c0 in range(p):
            yield PolyFp((c0, c1, 1), p)


def _split_quadratics(q: PolyFp) -> List[PolyFp]:
    """Split a monic product of distinct irreducible quadratics into its factors."""
    if q.degree <= 2:
        return [q]
    exponent = (q.p * q.p - 1) // 2
    for a in _trial_polynomials(q.p):
        g = poly_gcd(q, a)
        if 0 < g.degree < q.degree:
            return _split_quadratics(g) + _split_quadratics(q // g)
        g = poly_gcd(q, poly_powmod(a, exponent, q) - 1)
        if 0 < g.degree < q.degree:
            return _split_quadratics(g) + _split_quadratics(q // g)
    raise PolynomialError(f"could not split {q}")


def _solve_irreducible_quadratic(q: PolyFp) -> List[Fp2Element]:
    p = q.p
    t, s, _ = q.monic().coeffs
    disc = FpElement(s * s - 4 * t, p)
    nu = quad_nonresidue(p)
    c = fp_sqrt(disc / nu)
    if c is None:
        raise PolynomialError(f"{q} is not an irreducible quadratic")
    half = FpElement(2, p).inverse()
    re, im = -FpElement(s, p) * half, c * half
    return [Fp2Element(re, im, nu.value), Fp2Element(re, -im, nu.value)]


def quadratic_roots(f: PolyFp) -> List[Fp2Element]:
    """The distinct roots of f lying in F_p^2 \\ F_p, in conjugate pairs."""
    if f.is_zero():
        raise PolynomialError("the zero polynomial has every element as a root")
    if f.degree < 2:
        return []
    linear, up_to_quadratic = _frobenius_gcds(f)
    quadratic_part = up_to_quadratic // linear
    if quadratic_part.degree < 2:
        return []
    roots: List[Fp2Element] = []
    for factor in _split_quadratics(quadratic_part.monic()):
        roots.extend(_solve_irreducible_quadratic(factor))
    return roots
