from __future__ import annotations

import cmath
import itertools

import pytest

from monopole_obstruct.exact import Cyclotomic, LaurentPoly
from monopole_obstruct.repring import (
    DomainError,
    EquivariantIndexData,
    Pin2Element,
    ZpVirtualRep,
    character_at,
    character_divisibility_failure,
    k_euler,
    lambda_total,
    psi2,
    psi2_pin2,
    repring_divide,
    repring_exact_divide,
    restrict_s1,
    trace_j,
)

R = ZpVirtualRep


def rand_rep(rng, p, lo=-3, hi=3):
    return R(p, [rng.randint(lo, hi) for _ in range(p)])


def numeric(c: Cyclotomic) -> complex:
    w = cmath.exp(2j * cmath.pi / c.p)
    return sum(complex(a) * w**i for i, a in enumerate(c.coeffs))


def numeric_trace(r: ZpVirtualRep, k: int) -> complex:
    w = cmath.exp(2j * cmath.pi / r.p)
    return sum(m * w ** (j * k) for j, m in enumerate(r.mult))


# -- basic examples -----------------------------------------------------------------


def test_lambda_examples():
    assert lambda_total(R.character(3, 1)) == R(3, [1, 1, 0])
    assert lambda_total(R(3, [0, 1, 1])) == R(3, [2, 1, 1])
    for p in (2, 3, 5):
        for k in range(6):
            assert lambda_total(R.scalar(p, k)) == R.scalar(p, 2**k)


def test_psi2_examples():
    assert psi2(R.character(3, 1)) == R.character(3, 2)
    assert psi2(R(3, [0, 1, 1])) == R(3, [0, 1, 1])
    assert psi2(R.character(5, 3)) == R.character(5, 1)


def test_k_euler_examples():
    assert k_euler(R.character(3, 1)) == R(3, [1, 0, -1])
    for k in range(1, 5):
        assert k_euler(R.scalar(3, k)).is_zero()
    assert k_euler(R(3, [0, 1, 1])) == R(3, [2, -1, -1])


def test_lambda_needs_genuine():
    with pytest.raises(DomainError):
        lambda_total(R(3, [0, -1, 0]))
    with pytest.raises(DomainError):
        k_euler(R(3, [0, -1, 0]))


def test_character_examples():
    w = Cyclotomic.root_power(3, 1)
    assert character_at(R.character(3, 1), 1) == w
    assert character_at(R(3, [1, 1, 1]), 1).is_zero()
    r = R(5, [3, -1, 2, 0, 4])
    assert character_at(r, 0) == Cyclotomic.from_int(5, 8)


# -- identities ----------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_character_identities(rng, p):
    for _ in range(40):
        r, s = rand_rep(rng, p), rand_rep(rng, p)
        for k in range(p):
            assert character_at(psi2(r), k) == character_at(r, 2 * k)
            assert character_at(r * s, k) == character_at(r, k) * character_at(s, k)
            assert abs(numeric(character_at(r, k)) - numeric_trace(r, k)) < 1e-9


@pytest.mark.parametrize("p", [2, 3, 5])
def test_lambda_multiplicative(rng, p):
    for _ in range(40):
        r, s = rand_rep(rng, p, 0, 3), rand_rep(rng, p, 0, 3)
        assert lambda_total(r + s) == lambda_total(r) * lambda_total(s)


@pytest.mark.parametrize("p", [3, 5])
def test_k_euler_character(rng, p):
    for _ in range(40):
        r = rand_rep(rng, p, 0, 3)
        for k in range(p):
            expected = Cyclotomic.one(p)
            for j in r.lines():
                expected = expected * (1 - Cyclotomic.root_power(p, -j * k))
            assert character_at(k_euler(r), k) == expected


# -- division --------------------------------------------------------------------------


def test_divide_examples():
    for k, m in [(3, 1), (5, 5), (4, 0)]:
        assert repring_exact_divide(R.scalar(3, 2**k), R.scalar(3, 2**m)) == R.scalar(3, 2 ** (k - m))
    assert repring_exact_divide(R(3, [1, 1, 1]), R(3, [1, 1, 0])) is None
    a = R(5, [1, 2, 0, 3, 1])
    assert repring_exact_divide(a, a) == R.scalar(5, 1)
    with pytest.raises(ZeroDivisionError):
        repring_divide(a, R(5, [0] * 5))


def brute_force_divisible(a, b, bound):
    for q in itertools.product(range(-bound, bound + 1), repeat=a.p):
        if R(a.p, q) * b == a:
            return True
    return False


@pytest.mark.parametrize("p", [2, 3])
def test_divide_vs_enumeration(rng, p):
    for _ in range(120):
        b = rand_rep(rng, p, -2, 2)
        if b.is_zero():
            continue
        if rng.random() < 0.5:
            a = rand_rep(rng, p, -2, 2) * b
        else:
            a = rand_rep(rng, p, -4, 4)
        q = repring_exact_divide(a, b)
        if q is not None:
            assert q * b == a
        else:
            assert not brute_force_divisible(a, b, 4)
        if brute_force_divisible(a, b, 2):
            assert q is not None


def test_divide_singular_circulant():
    # 1 + C1 + C2 kills every nontrivial character, so its circulant is singular
    b = R(3, [1, 1, 1])
    res = repring_divide(R(3, [3, 3, 3]), b)
    assert res.reason == "exact" and res.quotient * b == R(3, [3, 3, 3])
    assert repring_divide(R(3, [1, 0, 0]), b).reason == "inconsistent"
    # a in the rational image but not the integral image: 2 (1+C1+C2) / (2 + 2C1 + 2C2) is fine, 1+C1+C2 is not
    b2 = R(3, [2, 2, 2])
    assert repring_divide(R(3, [1, 1, 1]), b2).reason == "non-integral"
    assert repring_divide(R(3, [2, 2, 2]), b2).reason == "exact"


def test_character_divisibility_failure():
    assert character_divisibility_failure(R(3, [1, 1, 1]), R(3, [1, 1, 0])) == 0
    assert character_divisibility_failure(R(3, [4, 0, 0]), R(3, [2, 0, 0])) is None


# -- Pin(2) ---------------------------------------------------------------------------------


def test_pin2_projections():
    assert trace_j(Pin2Element.sign()) == -1
    assert restrict_s1(Pin2Element.sign()) == LaurentPoly.constant("integer", 1)
    assert trace_j(Pin2Element.mu(1)) == 0
    assert restrict_s1(Pin2Element.mu(1)) == LaurentPoly("integer", {1: 1, -1: 1})
    assert trace_j(Pin2Element.one()) == 1
    assert restrict_s1(Pin2Element.one()) == LaurentPoly.constant("integer", 1)


def test_pin2_mu_products():
    # mu_0 = 1 + 1_-, so the relation covers a = 0 or b = 0 as well
    for a in range(0, 9):
        for b in range(0, 9):
            assert Pin2Element.mu(a) * Pin2Element.mu(b) == Pin2Element.mu(a + b) + Pin2Element.mu(abs(a - b))
    assert Pin2Element.sign() * Pin2Element.sign() == Pin2Element.one()
    assert Pin2Element.sign() * Pin2Element.mu(3) == Pin2Element.mu(3)


def test_pin2_round_trip(rng):
    for _ in range(100):
        n1, ns = rng.randint(-5, 5), rng.randint(-5, 5)
        mus = {k: rng.randint(-3, 3) for k in range(1, 6)}
        mus = {k: v for k, v in mus.items() if v}
        assert Pin2Element.from_coefficients(n1, ns, mus).coefficients() == (n1, ns, mus)


def test_pin2_validation():
    with pytest.raises(ValueError):
        Pin2Element(LaurentPoly("integer", {1: 1}), 0)  # not symmetric
    with pytest.raises(ValueError):
        Pin2Element(LaurentPoly.constant("integer", 1), 0)  # parity


def test_pin2_psi2():
    # psi^2(V) = V (x) V - 2 Lambda^2 V; for the quaternions Lambda^2 = 1
    H = Pin2Element.mu(1)
    assert psi2_pin2(H) == H * H - Pin2Element.one() - Pin2Element.one()
    assert psi2_pin2(Pin2Element.sign()) == Pin2Element.one()
    for k in range(1, 6):
        assert psi2_pin2(Pin2Element.mu(k)).coefficients()[2] == {2 * k: 1}


def test_index_relabel():
    d = EquivariantIndexData(5, [1, 2, 3, 4, 5])
    assert d.relabel(2).d == (3, 4, 5, 1, 2)
    assert d.total == 15
    with pytest.raises(ValueError):
        EquivariantIndexData(3, [1, 2])
