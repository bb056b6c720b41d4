"""Inverse power sums, power sums, symmetric sums, and their identities."""

from fractions import Fraction

import pytest

from wlab.errors import InvalidInput, NotInvertible
from wlab.modring import ring_new
from wlab.sums import (
    SumTable,
    build_sum_table,
    inverse_power_sum,
    inverse_power_sums_ints,
    newton_symmetric,
    power_sum,
    power_sum_int,
    symmetric_sums,
)


def frac_mod(fr: Fraction, m: int) -> int:
    return fr.numerator * pow(fr.denominator, -1, m) % m


def exact_r(p: int, n: int) -> Fraction:
    return sum(Fraction(1, k**n) for k in range(1, p))


class TestInversePowerSum:
    def test_p5_vanishes_mod_25(self):
        assert inverse_power_sum(ring_new(5, 2), 1).value == 0

    def test_p7_vanishes_mod_49(self):
        # hand inversion table mod 49: 1+25+33+37+10+41 = 147 = 3*49
        assert inverse_power_sum(ring_new(7, 2), 1).value == 0

    def test_p3_squares(self):
        assert inverse_power_sum(ring_new(3, 1), 2).value == 2

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_against_exact_rationals(self, p, n):
        for e in (1, 3, 5):
            ring = ring_new(p, e)
            assert inverse_power_sum(ring, n).value == frac_mod(exact_r(p, n), ring.modulus)

    def test_batch_kernel_matches(self):
        sums = inverse_power_sums_ints(13, 13**5, 6)
        for n in range(1, 7):
            assert sums[n] == frac_mod(exact_r(13, n), 13**5)


class TestPowerSum:
    def test_exponent_multiple_of_p_minus_one(self):
        assert power_sum(ring_new(5, 1), 4).value == 4  # 354 mod 5

    def test_linear(self):
        assert power_sum(ring_new(5, 1), 1).value == 0

    def test_exact_small(self):
        for p in (5, 7, 11):
            for n in (1, 2, 3, 7, 12):
                assert power_sum_int(p, 3, n) == sum(k**n for k in range(1, p)) % p**3

    def test_euler_pairing_with_inverse_sum(self):
        # phi(11^6) - 1-type exponent pairs P_n with R_1
        ring = ring_new(11, 2)
        n = 11**5 * 10 - 1
        assert power_sum(ring, n).value == inverse_power_sum(ring, 1).value

    def test_huge_exponent(self):
        ring = ring_new(13, 4)
        n = 13**9 * 12 + 2
        assert power_sum(ring, n).value == power_sum(ring, 2).value


class TestSymmetricSums:
    def test_p5_h2_is_35_over_24(self):
        ring = ring_new(5, 7)
        h = symmetric_sums(ring, 2)
        assert h[2].value == frac_mod(Fraction(35, 24), ring.modulus)

    def test_p3_single_pair(self):
        # only one pair (1, 2), so H_2(3) = 1/2
        for e in (1, 2, 4):
            ring = ring_new(3, e)
            h = symmetric_sums(ring, 2)
            assert h[2].value == frac_mod(Fraction(1, 2), ring.modulus)

    def test_h1_is_r1(self):
        for p in (11, 31, 97):
            ring = ring_new(p, 4)
            assert symmetric_sums(ring, 1)[1] == inverse_power_sum(ring, 1)

    def test_exact_elementary_sums_p7(self):
        # brute-force elementary symmetric sums of {1, 1/2, ..., 1/6}
        from itertools import combinations

        ring = ring_new(7, 5)
        h = symmetric_sums(ring, 4)
        invs = [Fraction(1, k) for k in range(1, 7)]
        for k in range(1, 5):
            exact = Fraction(0)
            for combo in combinations(invs, k):
                term = Fraction(1)
                for f in combo:
                    term *= f
                exact += term
            assert h[k].value == frac_mod(exact, ring.modulus)


class TestNewtonSymmetric:
    @pytest.mark.parametrize("p", [11, 13, 101])
    def test_agrees_with_product_route(self, p):
        ring = ring_new(p, 7)
        r = {n: inverse_power_sum(ring, n) for n in range(1, 7)}
        newton = newton_symmetric(r, 6)
        product = symmetric_sums(ring, 6)
        assert newton == product

    def test_k1_is_r1(self):
        ring = ring_new(11, 3)
        r = {1: inverse_power_sum(ring, 1)}
        assert newton_symmetric(r, 1)[1] == r[1]

    def test_k2_shuffle(self):
        ring = ring_new(13, 5)
        r = {n: inverse_power_sum(ring, n) for n in (1, 2)}
        h2 = newton_symmetric(r, 2)[2]
        m = ring.modulus
        expected = (r[1].value ** 2 - r[2].value) * pow(2, -1, m) % m
        assert h2.value == expected

    def test_small_p_rejected(self):
        ring = ring_new(5, 2)
        r = {n: inverse_power_sum(ring, n) for n in range(1, 7)}
        with pytest.raises(NotInvertible):
            newton_symmetric(r, 6)


class TestSumTable:
    def test_p11_wolstenholme_floor(self):
        table = build_sum_table(11, 7)
        assert table.r_valuation(1) >= 2

    def test_p13_h3_valuation(self):
        table = build_sum_table(13, 7)
        assert table.h_valuation(3) >= 2

    def test_wolstenholme_prime_r1(self):
        table = build_sum_table(16843, 4)
        assert table.r_valuation(1) >= 3

    def test_lemma_21_floors(self):
        for p in (11, 37, 101):
            table = build_sum_table(p, 7)
            for n in (1, 3, 5):
                assert table.r_valuation(n) >= 2, (p, n)
            for n in (2, 4, 6):
                assert table.r_valuation(n) >= 1, (p, n)

    def test_h5_h6_floors(self):
        for p in (11, 37, 101):
            table = build_sum_table(p, 7)
            assert table.h_valuation(5) >= 2
            assert table.h_valuation(6) >= 1

    def test_small_p_rejected(self):
        with pytest.raises(InvalidInput):
            build_sum_table(5, 7)

    def test_is_frozen_record(self):
        table = build_sum_table(11, 4)
        assert isinstance(table, SumTable)
        assert table.p == 11 and table.e == 4
        assert set(table.R) == set(table.H) == set(range(1, 7))
