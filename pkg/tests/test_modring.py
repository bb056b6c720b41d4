"""Ring construction, inversion, powering, truncated series."""

import math
import random
from fractions import Fraction

import pytest

from wlab.errors import (
    CompositeModulusBase,
    ExponentOutOfRange,
    InvalidInput,
    NotInvertible,
    RingMismatch,
)
from wlab.modring import (
    TruncatedSeries,
    batch_inv,
    batch_inv_ints,
    inv,
    is_prime,
    pow_mod,
    range_inverses,
    residual_valuation,
    ring_new,
    series_mul,
    symmetric_product,
)


def trial_division(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def xgcd_inv(a: int, m: int) -> int:
    # independent extended-gcd oracle
    old_r, r = a % m, m
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    assert old_r == 1
    return old_s % m


class TestPrimality:
    def test_small_range_against_trial_division(self):
        for n in range(51000):
            assert is_prime(n) == trial_division(n), n

    def test_known_primes(self):
        for p in (16843, 2124679, 10**9 + 7, 2**61 - 1):
            assert is_prime(p)

    def test_strong_pseudoprimes_and_carmichael(self):
        for n in (561, 1105, 1729, 3215031751, 3825123056546413051):
            assert not is_prime(n)

    def test_perfect_squares(self):
        for n in (4, 25, 16843**2, (10**9 + 7) ** 2):
            assert not is_prime(n)


class TestRingNew:
    def test_seven_to_the_seventh(self):
        ring = ring_new(7, 7)
        assert ring.modulus == 823543

    def test_composite_base_rejected(self):
        with pytest.raises(CompositeModulusBase):
            ring_new(4, 2)

    def test_big_power_matches_repeated_multiplication(self):
        ring = ring_new(16843, 4)
        expected = 1
        for _ in range(4):
            expected *= 16843
        assert ring.modulus == expected

    def test_exponent_out_of_range(self):
        with pytest.raises(ExponentOutOfRange):
            ring_new(7, 0)


class TestInv:
    def test_two_in_seven_seven(self):
        ring = ring_new(7, 7)
        assert inv(ring, ring.residue(2)).value == 411772

    def test_identity(self):
        for ring in (ring_new(3, 2), ring_new(7, 7), ring_new(16843, 2)):
            assert inv(ring, ring.one).value == 1

    def test_three_mod_25(self):
        assert inv(ring_new(5, 2), 3).value == 17

    def test_not_invertible(self):
        with pytest.raises(NotInvertible):
            inv(ring_new(5, 2), 10)

    def test_involution_property(self):
        rng = random.Random(0)
        ring = ring_new(13, 5)
        for _ in range(200):
            a = rng.randrange(1, ring.modulus)
            if a % 13 == 0:
                continue
            r = ring.residue(a)
            assert inv(ring, inv(ring, r)) == r
            assert (r * inv(ring, r)).value == 1


class TestBatchInv:
    def test_small_vector_against_xgcd(self):
        ring = ring_new(5, 2)
        out = batch_inv(ring, [ring.residue(v) for v in (1, 2, 3, 4)])
        assert [r.value for r in out] == [1, 13, 17, 19]
        assert [xgcd_inv(v, 25) for v in (1, 2, 3, 4)] == [1, 13, 17, 19]

    def test_empty(self):
        assert batch_inv(ring_new(5, 2), []) == []

    def test_singleton_identity(self):
        ring = ring_new(7, 7)
        assert [r.value for r in batch_inv(ring, [ring.one])] == [1]

    def test_matches_map_inv_random(self):
        rng = random.Random(1)
        ring = ring_new(11, 4)
        for size in (1, 2, 7, 40):
            vals = []
            while len(vals) < size:
                a = rng.randrange(1, ring.modulus)
                if a % 11:
                    vals.append(a)
            got = batch_inv_ints(vals, ring.modulus, 11)
            assert got == [xgcd_inv(v, ring.modulus) for v in vals]

    def test_offending_index_reported(self):
        ring = ring_new(5, 3)
        with pytest.raises(NotInvertible) as exc:
            batch_inv(ring, [ring.residue(v) for v in (1, 2, 25, 3)])
        assert exc.value.index == 2

    def test_range_inverses(self):
        m = 13**3
        out = range_inverses(13, m)
        for k in range(1, 13):
            assert out[k] * k % m == 1


class TestPowMod:
    def test_zero_exponent(self):
        ring = ring_new(11, 2)
        assert pow_mod(ring, ring.residue(2), 0).value == 1

    def test_euler_theorem(self):
        ring = ring_new(5, 2)
        assert pow_mod(ring, ring.residue(3), 20).value == 1

    def test_huge_exponent_reduction(self):
        # 13308 = 8 mod 10, so 2^13308 = 2^8 = 256 = 3 mod 11
        ring = ring_new(11, 1)
        assert pow_mod(ring, ring.residue(2), 13308).value == 3

    def test_against_naive_powers(self):
        rng = random.Random(2)
        ring = ring_new(7, 5)
        for _ in range(50):
            a = rng.randrange(ring.modulus)
            n = rng.randrange(1024)
            acc = 1
            for _ in range(n):
                acc = acc * a % ring.modulus
            assert pow_mod(ring, ring.residue(a), n).value == acc


class TestResidueArithmetic:
    def test_cross_ring_rejected(self):
        a = ring_new(5, 2).residue(3)
        b = ring_new(5, 3).residue(3)
        with pytest.raises(RingMismatch):
            _ = a + b

    def test_int_coercion(self):
        ring = ring_new(7, 2)
        assert (ring.residue(40) + 10).value == 1
        assert (3 * ring.residue(20)).value == 11
        assert (1 - ring.residue(2)).value == 48

    def test_valuation(self):
        ring = ring_new(5, 4)
        assert ring.residue(50).valuation() == 2
        assert ring.zero.valuation() == 4
        assert residual_valuation(-25, 5, 4) == 2


class TestSeries:
    def test_truncation_drops_high_terms(self):
        ring = ring_new(5, 2)
        one_plus_x = TruncatedSeries.from_ints(ring, [1, 1])
        sq = series_mul(one_plus_x, one_plus_x, 1)
        assert [c.value for c in sq.coeffs] == [1, 2]

    def test_identity(self):
        ring = ring_new(7, 3)
        a = TruncatedSeries.from_ints(ring, [3, 1, 4])
        one = TruncatedSeries.from_ints(ring, [1])
        assert series_mul(a, one, 2) == a

    def test_difference_of_squares(self):
        ring = ring_new(5, 2)
        a = TruncatedSeries.from_ints(ring, [1, 1])
        b = TruncatedSeries.from_ints(ring, [1, -1])
        prod = series_mul(a, b, 2)
        assert [c.value for c in prod.coeffs] == [1, 0, 24]

    def test_ring_mismatch(self):
        a = TruncatedSeries.from_ints(ring_new(5, 2), [1, 1])
        b = TruncatedSeries.from_ints(ring_new(7, 2), [1, 1])
        with pytest.raises(RingMismatch):
            series_mul(a, b, 1)


class TestSymmetricProduct:
    def test_constant_coefficient_is_one(self):
        for p in (3, 5, 11, 97):
            s = symmetric_product(ring_new(p, 3), 2)
            assert s.coeffs[0].value == 1

    def test_p3_first_coefficient(self):
        s = symmetric_product(ring_new(3, 2), 1)
        assert s.coeffs[1].value == 6  # 1 + inv(2) = 1 + 5 mod 9

    def test_shuffle_relation_p5(self):
        # 2*H_2 = R_1^2 - R_2 with both sides derived from exact rationals
        ring = ring_new(5, 7)
        s = symmetric_product(ring, 2)
        r1 = Fraction(25, 12)
        r2 = Fraction(205, 144)
        h2 = (r1 * r1 - r2) / 2
        assert h2 == Fraction(35, 24)
        m = ring.modulus
        assert s.coeffs[1].value == r1.numerator * pow(r1.denominator, -1, m) % m
        assert s.coeffs[2].value == h2.numerator * pow(h2.denominator, -1, m) % m

    def test_degree_bound_validated(self):
        with pytest.raises(InvalidInput):
            symmetric_product(ring_new(11, 2), 9)

    def test_evaluation_at_p_recovers_binomial(self):
        # sum_k p^k H_k from the truncated product matches C(2p-1, p-1)
        for p, e in ((11, 5), (13, 5), (97, 5)):
            ring = ring_new(p, e)
            series = symmetric_product(ring, min(e + 2, 8))
            got = series.evaluate(p).value
            assert got == math.comb(2 * p - 1, p - 1) % ring.modulus
