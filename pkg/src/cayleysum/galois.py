"""Exact arithmetic in small finite fields GF(p^k).

Elements are coefficient vectors (little-endian) of polynomials over GF(p)
reduced modulo a fixed monic irreducible polynomial of degree k.  Fields are
tiny (q <= 2**16), so inversion is a plain scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

MAX_ORDER = 2**16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


# polynomials over GF(p) as little-endian coefficient tuples

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> list[int]:
    r = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(r) - 1 >= dm:
        f = r[-1] * inv_lead % p
        shift = len(r) - 1 - dm
        for i, mc in enumerate(m):
            r[shift + i] = (r[shift + i] - f * mc) % p
        _trim(r)
    return r


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    k = len(m) - 1
    if k <= 1:
        return k == 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(m, low + (1,), p):
                return False
    return True


def _has_root(m: tuple[int, ...], p: int) -> bool:
    return any(sum(c * pow(x, i, p) for i, c in enumerate(m)) % p == 0 for x in range(p))


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    q: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.k < 1 or self.q != self.p**self.k:
            raise FieldError(f"inconsistent field size {self.p}^{self.k} != {self.q}")
        m = self.modulus
        if len(m) != self.k + 1 or m[-1] != 1 or any(not 0 <= c < self.p for c in m):
            raise FieldError(f"modulus {m} is not monic of degree {self.k}")
        if self.k in (2, 3) and _has_root(m, self.p):
            raise FieldError(f"modulus {m} has a root in GF({self.p})")
        if not _is_irreducible(m, self.p):
            raise FieldError(f"modulus {m} is reducible")

    def element(self, value) -> FieldElement:
        """Build an element from an int (prime field) or a coefficient sequence."""
        if isinstance(value, int):
            if self.k == 1:
                return FieldElement(self, (value % self.p,))
            raise FieldError("integer literals are only accepted for prime fields")
        coeffs = tuple(value) + (0,) * (self.k - len(value))
        return FieldElement(self, coeffs)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.k)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def elements(self) -> list[FieldElement]:
        """All q elements, ordered by coefficient tuple (low degree first)."""
        return [FieldElement(self, c) for c in product(range(self.p), repeat=self.k)]

    def nonzero(self) -> list[FieldElement]:
        return [e for e in self.elements() if any(e.coeffs)]


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.k or any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise FieldError(f"bad coefficients {self.coeffs} for GF({self.spec.q})")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: FieldElement) -> FieldElement:
        return field_add(self, other)

    def __mul__(self, other: FieldElement) -> FieldElement:
        return field_mul(self, other)

    def __repr__(self):
        terms = [
            ("" if c == 1 and i else str(c)) + ("x" if i == 1 else f"x^{i}" if i else "")
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return f"GF({self.spec.q})<{' + '.join(reversed(terms)) or '0'}>"


def field_make(p: int, k: int) -> FieldSpec:
    """Construct GF(p^k) using the lexicographically smallest monic irreducible modulus.

    Candidates are compared as full coefficient tuples, low degree first.
    For k = 1 the modulus is x and arithmetic is plain mod-p.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("exponent must be positive")
    if p**k > MAX_ORDER:
        raise FieldError(f"field order {p}^{k} exceeds {MAX_ORDER}")
    if k == 1:
        return FieldSpec(p, 1, p, (0, 1))
    for low in product(range(p), repeat=k):
        m = low + (1,)
        if low[0] != 0 and _is_irreducible(m, p):
            return FieldSpec(p, k, p**k, m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _check_same(a: FieldElement, b: FieldElement) -> None:
    if a.spec != b.spec:
        raise FieldError(f"field mismatch: GF({a.spec.q}) vs GF({b.spec.q})")


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    p = a.spec.p
    return FieldElement(a.spec, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))


def field_neg(a: FieldElement) -> FieldElement:
    p = a.spec.p
    return FieldElement(a.spec, tuple(-x % p for x in a.coeffs))


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    spec = a.spec
    p, k = spec.p, spec.k
    if k == 1:
        return FieldElement(spec, (a.coeffs[0] * b.coeffs[0] % p,))
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                prod[i + j] = (prod[i + j] + x * y) % p
    r = _poly_mod(tuple(prod), spec.modulus, p)
    return FieldElement(spec, tuple(r) + (0,) * (k - len(r)))


def field_inv(a: FieldElement) -> FieldElement:
    if a.is_zero():
        raise ZeroDivisionError("zero has no inverse")
    one = a.spec.one
    for b in a.spec.nonzero():
        if field_mul(a, b) == one:
            return b
    raise AssertionError("modulus is not irreducible")  # pragma: no cover


def multiplicative_order(a: FieldElement) -> int:
    if a.is_zero():
        raise ZeroDivisionError("zero has no multiplicative order")
    one, x, n = a.spec.one, a, 1
    while x != one:
        x = field_mul(x, a)
        n += 1
    return n
