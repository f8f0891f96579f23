"""Tests for truncated p-adic arithmetic and the quadratic sign characters."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2endo.errors import IndistinguishableFromZero, NotASquare, ZeroInput
from sl2endo.localfield import (
    FieldConfig,
    SquareClass,
    hensel_sqrt,
    is_odd_prime,
    legendre,
    sgn_eps,
    sgn_pi,
    smallest_nonresidue,
    square_class,
    valuation,
)

PRIMES = [3, 5, 7, 11, 13]


def brute_force_squares(p):
    return {i * i % p for i in range(1, p)}


class TestFieldConfig:
    def test_default_eps_is_smallest_nonresidue(self):
        assert FieldConfig(3).eps == 2
        assert FieldConfig(7).eps == 3
        assert FieldConfig(5).eps == 2

    def test_rejects_non_prime_and_even(self):
        with pytest.raises(ValueError):
            FieldConfig(9)
        with pytest.raises(ValueError):
            FieldConfig(2)

    def test_rejects_low_precision(self):
        with pytest.raises(ValueError):
            FieldConfig(5, 3)

    def test_rejects_square_eps(self):
        with pytest.raises(ValueError):
            FieldConfig(7, 6, eps=2)  # 2 = 3^2 mod 7

    def test_q_equals_p_and_pi_equals_p(self):
        cfg = FieldConfig(11, 5)
        assert cfg.q == 11 and cfg.pi == 11 and cfg.modulus == 11**5


class TestValuation:
    def test_unit(self):
        assert valuation(FieldConfig(3, 6).padic(10)) == 0

    def test_eighteen(self):
        assert valuation(FieldConfig(3, 6).padic(18)) == 2

    def test_zero_residue_raises(self):
        with pytest.raises(IndistinguishableFromZero):
            valuation(FieldConfig(5, 6).padic(0))

    def test_valuation_below_precision(self):
        cfg = FieldConfig(3, 5)
        for k in range(5):
            x = cfg.padic(2 * 3**k)
            assert valuation(x) == k


class TestLegendre:
    @pytest.mark.parametrize("p", PRIMES + [7, 17, 19])
    def test_against_brute_force(self, p):
        squares = brute_force_squares(p)
        for u in range(1, p):
            assert legendre(u, p) == (1 if u in squares else -1)

    def test_spec_values_mod_7(self):
        assert legendre(1, 7) == 1
        assert legendre(3, 7) == -1
        assert legendre(2, 7) == 1  # 3^2 = 2 mod 7

    def test_zero_raises(self):
        with pytest.raises(ZeroInput):
            legendre(14, 7)

    @pytest.mark.parametrize("p", PRIMES)
    def test_smallest_nonresidue(self, p):
        nr = smallest_nonresidue(p)
        squares = brute_force_squares(p)
        assert nr not in squares
        assert all(u in squares for u in range(1, nr))


class TestSgnEps:
    def test_unit_value(self):
        cfg = FieldConfig(5)
        assert sgn_eps(cfg.padic(7)) == 1

    def test_uniformizer(self):
        cfg = FieldConfig(5)
        assert sgn_eps(cfg.padic(5)) == -1

    def test_even_valuation(self):
        cfg = FieldConfig(5)
        assert sgn_eps(cfg.padic(25 * 3)) == 1

    @pytest.mark.parametrize("p", PRIMES)
    def test_multiplicative_and_trivial_on_squares(self, p):
        cfg = FieldConfig(p)
        rng = random.Random(f"sgn-eps-{p}")
        for _ in range(200):
            x = cfg.padic(rng.randrange(1, cfg.modulus))
            y = cfg.padic(rng.randrange(1, cfg.modulus))
            if x.residue == 0 or y.residue == 0 or (x * y).residue == 0:
                continue
            assert sgn_eps(x * y) == sgn_eps(x) * sgn_eps(y)
            if (x * x).residue != 0:
                assert sgn_eps(x * x) == 1


class TestSgnPi:
    def test_spec_values(self):
        cfg = FieldConfig(3)
        assert sgn_pi(cfg.padic(8)) == -1   # unit 8 = 2 mod 3, a nonresidue
        assert sgn_pi(cfg.padic(-3)) == 1   # -pi is a norm from F(sqrt(pi))
        assert sgn_pi(cfg.padic(1)) == 1

    @pytest.mark.parametrize("p", PRIMES)
    def test_norm_oracle(self, p):
        # sgn_pi must be trivial on norms a^2 - pi*b^2 from the ramified extension
        cfg = FieldConfig(p)
        rng = random.Random(f"norm-{p}")
        checked = 0
        while checked < 1000:
            a = rng.randrange(cfg.modulus)
            b = rng.randrange(cfg.modulus)
            x = cfg.padic(a * a - p * b * b)
            if x.residue == 0:
                continue
            assert sgn_pi(x) == 1
            checked += 1

    @pytest.mark.parametrize("p", PRIMES)
    def test_constant_minus_one_on_non_norm_classes(self, p):
        cfg = FieldConfig(p)
        norm_of_sqrt_pi = cfg.padic(-p)
        norm_classes = {SquareClass.ONE, square_class(norm_of_sqrt_pi)}
        reps = {
            SquareClass.ONE: cfg.padic(1),
            SquareClass.EPS: cfg.padic(cfg.eps),
            SquareClass.PI: cfg.padic(p),
            SquareClass.EPS_PI: cfg.padic(cfg.eps * p),
        }
        for cls, rep in reps.items():
            expected = 1 if cls in norm_classes else -1
            assert sgn_pi(rep) == expected
        # at least one -1 witness exists in every non-norm class
        assert sum(1 for c in reps if c not in norm_classes) == 2

    @pytest.mark.parametrize("p", PRIMES)
    def test_multiplicative(self, p):
        cfg = FieldConfig(p)
        rng = random.Random(f"sgn-pi-mult-{p}")
        for _ in range(200):
            x = cfg.padic(rng.randrange(1, cfg.modulus))
            y = cfg.padic(rng.randrange(1, cfg.modulus))
            if x.residue == 0 or y.residue == 0 or (x * y).residue == 0:
                continue
            assert sgn_pi(x * y) == sgn_pi(x) * sgn_pi(y)


class TestSquareClass:
    def test_spec_values(self):
        cfg = FieldConfig(3)
        assert square_class(cfg.padic(4)) == SquareClass.ONE
        assert square_class(cfg.padic(cfg.eps * 9)) == SquareClass.EPS
        assert square_class(cfg.padic(3)) == SquareClass.PI

    @pytest.mark.parametrize("p", [3, 7])
    def test_invariant_under_unit_squares(self, p):
        cfg = FieldConfig(p)
        rng = random.Random(f"sqcls-{p}")
        for _ in range(100):
            x = cfg.padic(rng.randrange(1, cfg.modulus))
            u = cfg.padic(rng.randrange(1, cfg.modulus))
            if x.residue == 0 or u.residue == 0 or valuation(u) > 0:
                continue
            y = x * u * u
            if y.residue == 0:
                continue
            assert square_class(y) == square_class(x)

    @pytest.mark.parametrize("p", [3, 5])
    def test_klein_four_multiplicativity(self, p):
        cfg = FieldConfig(p)
        rng = random.Random(f"sqcls-mult-{p}")
        for _ in range(100):
            x = cfg.padic(rng.randrange(1, cfg.modulus))
            y = cfg.padic(rng.randrange(1, cfg.modulus))
            if x.residue == 0 or y.residue == 0 or (x * y).residue == 0:
                continue
            cx, cy = square_class(x).bits, square_class(y).bits
            expected = SquareClass.from_bits(cx[0] + cy[0], cx[1] + cy[1])
            assert square_class(x * y) == expected


class TestHenselSqrt:
    def test_spec_example_mod_27(self):
        # computed at full precision, the root is determined mod 27 already
        cfg = FieldConfig(3, 6)
        a = hensel_sqrt(cfg.padic(19))
        assert a.residue % 27 == 10
        assert (a * a) == cfg.padic(19)

    def test_one(self):
        cfg = FieldConfig(7)
        assert hensel_sqrt(cfg.padic(1)) == cfg.padic(1)

    def test_nonresidue_rejected(self):
        cfg = FieldConfig(5)
        with pytest.raises(NotASquare):
            hensel_sqrt(cfg.padic(2))  # squares mod 5 are {1, 4}

    def test_odd_valuation_rejected(self):
        cfg = FieldConfig(5)
        with pytest.raises(NotASquare):
            hensel_sqrt(cfg.padic(5))

    def test_zero_rejected(self):
        cfg = FieldConfig(5)
        with pytest.raises(IndistinguishableFromZero):
            hensel_sqrt(cfg.padic(0))

    @settings(max_examples=60, deadline=None)
    @given(
        p=st.sampled_from(PRIMES),
        seed=st.integers(min_value=0, max_value=10**6),
        shift=st.integers(min_value=0, max_value=2),
    )
    def test_square_roundtrip(self, p, seed, shift):
        cfg = FieldConfig(p)
        rng = random.Random(seed)
        u = rng.randrange(1, cfg.modulus)
        x = cfg.padic(u * u * p ** (2 * shift))
        if x.residue == 0:
            return
        a = hensel_sqrt(x)
        assert a * a == x

    def test_even_valuation_square(self):
        cfg = FieldConfig(3, 8)
        x = cfg.padic(9 * 7)  # v = 2, unit part 7 = 1 mod 3 is a square
        a = hensel_sqrt(x)
        assert a * a == x
        assert a.valuation() == 1


def test_is_odd_prime():
    assert [n for n in range(2, 20) if is_odd_prime(n)] == [3, 5, 7, 11, 13, 17, 19]


def test_padic_arithmetic_basics():
    cfg = FieldConfig(5, 6)
    x, y = cfg.padic(7), cfg.padic(12)
    assert (x + y).residue == 19
    assert (x - y) == cfg.padic(-5)
    assert (x * y).residue == 84
    assert (y / x) * x == y
    with pytest.raises(ValueError):
        cfg.padic(1) / cfg.padic(5)  # non-unit divisor
    assert (x ** -1) * x == cfg.padic(1)
