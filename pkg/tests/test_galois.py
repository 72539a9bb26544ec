import itertools

import pytest
from hypothesis import given, strategies as st

from cayleysum.galois import (
    FieldError,
    FieldSpec,
    field_add,
    field_inv,
    field_make,
    field_mul,
    field_neg,
    multiplicative_order,
    prime_power,
)

SMALL_Q = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)]
UP_TO_64 = SMALL_Q + [(11, 1), (13, 1), (5, 2), (3, 3), (2, 5), (2, 6), (7, 2), (31, 1), (61, 1)]


def test_moduli():
    assert field_make(2, 1).modulus == (0, 1)
    assert field_make(2, 2).modulus == (1, 1, 1)
    assert field_make(3, 2).modulus == (1, 0, 1)
    assert field_make(2, 3).modulus == (1, 0, 1, 1)


def test_modulus_is_smallest_irreducible():
    # brute force: a monic degree-k polynomial is irreducible iff it has no
    # factorisation as a product of two monic polynomials of positive degree
    for p, k in [(2, 2), (3, 2), (2, 3), (2, 4), (5, 2)]:
        F = field_make(p, k)
        products = set()
        for d in range(1, k):
            for a in itertools.product(range(p), repeat=d):
                for b in itertools.product(range(p), repeat=k - d):
                    fa, fb = a + (1,), b + (1,)
                    prod = [0] * (k + 1)
                    for i, x in enumerate(fa):
                        for j, y in enumerate(fb):
                            prod[i + j] = (prod[i + j] + x * y) % p
                    products.add(tuple(prod))
        irreducible = [low + (1,) for low in itertools.product(range(p), repeat=k) if low + (1,) not in products]
        assert F.modulus == min(irreducible)


def test_examples():
    F4 = field_make(2, 2)
    x = F4.element((0, 1))
    assert field_add(x, x) == F4.zero
    assert field_mul(x, x) == F4.element((1, 1))
    assert field_inv(x) == F4.element((1, 1))
    F5 = field_make(5, 1)
    assert field_add(F5.element(2), F5.element(4)) == F5.element(1)
    assert field_inv(F5.element(2)) == F5.element(3)
    F9 = field_make(3, 2)
    assert field_add(F9.element((1, 1)), F9.element((2, 2))) == F9.zero
    y = F9.element((0, 1))
    assert field_mul(y, y) == F9.element((2, 0))
    assert field_inv(F9.one) == F9.one


@pytest.mark.parametrize("p,k", [(4, 1), (1, 3), (6, 2), (2, 0), (2, 17)])
def test_bad_fields(p, k):
    with pytest.raises(FieldError):
        field_make(p, k)


def test_spec_mismatch_and_zero():
    with pytest.raises(FieldError):
        field_add(field_make(2, 2).one, field_make(3, 1).one)
    with pytest.raises(ZeroDivisionError):
        field_inv(field_make(7, 1).zero)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        FieldSpec(2, 2, 4, (1, 0, 1))  # (x+1)^2
    with pytest.raises(FieldError):
        FieldSpec(2, 4, 16, (1, 0, 1, 0, 1))  # (x^2+x+1)^2


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(6) is None
    assert prime_power(1) is None


@pytest.mark.parametrize("p,k", UP_TO_64)
def test_multiplicative_group_cyclic(p, k):
    F = field_make(p, k)
    orders = [multiplicative_order(a) for a in F.nonzero()]
    assert max(orders) == F.q - 1
    assert all((F.q - 1) % o == 0 for o in orders)


@pytest.mark.parametrize("p,k", UP_TO_64)
def test_double_inverse(p, k):
    F = field_make(p, k)
    for a in F.nonzero():
        b = field_inv(a)
        assert field_mul(a, b) == F.one
        assert field_inv(b) == a


@pytest.mark.parametrize("p,k", SMALL_Q)
def test_distributive_exhaustive(p, k):
    E = field_make(p, k).elements()
    for a in E:
        for b in E:
            for c in E:
                assert a * (b + c) == a * b + a * c


@given(st.sampled_from(UP_TO_64), st.data())
def test_ring_axioms(pk, data):
    F = field_make(*pk)
    E = F.elements()
    a, b, c = (data.draw(st.sampled_from(E)) for _ in range(3))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + field_neg(a) == F.zero
    assert a * F.one == a
