import random

import pytest
from hypothesis import given, settings, strategies as st

from egr5.qfield import (
    EPS,
    ONE,
    ZERO,
    F4_ELEMENTS,
    F4Elem,
    NotDivisible,
    QuadInt,
    QuadRat,
    SUnitFactorization,
    cbrt_exact,
    eps_pow,
    f4_cubic_roots,
    f4_solve_quadratic,
    f4_sqrt,
    fib,
    format_factored,
    format_quad,
    lucas,
    nth_power_class,
    parse_factored,
    parse_quad,
    residue_f4,
    s_unit_classes,
    s_unit_factor,
    sqrt_exact,
    v2,
)

big = st.integers(min_value=-(2**256), max_value=2**256)
quads = st.builds(QuadInt, big, big)
small = st.builds(QuadInt, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))


def test_multiplication_examples():
    assert EPS * EPS == QuadInt(1, 1)
    assert QuadInt(8, 15) * QuadInt(8, 15) == QuadInt(289, 465)
    assert QuadInt(2, 2).exact_div(2) == QuadInt(1, 1)
    with pytest.raises(NotDivisible):
        QuadInt(3, 2).exact_div(2)


def test_conj_norm_trace_examples():
    assert EPS.norm() == -1
    assert EPS.trace() == 1
    assert EPS.conj() == QuadInt(1, -1)
    assert QuadInt(8, 15).norm() == -41
    assert EPS * EPS.conj() == -ONE
    assert EPS + EPS.conj() == ONE


def test_eps_pow_examples():
    assert eps_pow(0) == ONE
    assert eps_pow(13) == QuadInt(144, 233)
    assert eps_pow(7) == QuadInt(8, 13)
    assert 128 * eps_pow(7) == QuadInt(1024, 1664)


def test_lucas_fib_values():
    assert [lucas(n) for n in range(7)] == [2, 1, 3, 4, 7, 11, 18]
    assert [fib(n) for n in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]
    for n in range(1, 30):
        assert lucas(-n) == (-1) ** n * lucas(n)
        assert fib(-n) == (-1) ** (n + 1) * fib(n)


def test_eps_pow_by_repeated_multiplication():
    x = ONE
    for n in range(60):
        assert eps_pow(n) == x
        x = x * EPS
    inv = EPS.unit_inverse()
    assert inv == QuadInt(-1, 1)
    x = ONE
    for n in range(60):
        assert eps_pow(-n) == x
        x = x * inv


def test_v2_examples():
    assert v2(QuadInt(2, 2)) == 1
    assert v2(QuadInt(1024, 1664)) == 7
    assert v2(EPS) == 0
    with pytest.raises(ValueError, match="valuation of zero"):
        v2(ZERO)


def test_sqrt_examples():
    assert sqrt_exact(QuadInt(289, 465)) in (QuadInt(8, 15), -QuadInt(8, 15))
    assert sqrt_exact(QuadInt(5, 8)) in (QuadInt(1, 2), -QuadInt(1, 2))
    # 1 + e = e^2 is a square; e itself is not
    assert sqrt_exact(QuadInt(1, 1)) == EPS
    assert sqrt_exact(EPS) is None
    assert sqrt_exact(-ONE) is None


def test_cbrt():
    assert cbrt_exact(QuadInt(17) ** 3) == QuadInt(17)
    y = QuadInt(50, -13)
    assert cbrt_exact(y**3) == y
    assert cbrt_exact(-(y**3)) == -y
    assert cbrt_exact(QuadInt(2)) is None


def test_nth_power_class_examples():
    assert nth_power_class(eps_pow(6), 2).value() == ONE
    assert nth_power_class(QuadInt(-8), 2).value() == QuadInt(-2)
    assert nth_power_class(eps_pow(9) * 16, 4).value() == EPS
    with pytest.raises(ValueError):
        nth_power_class(QuadInt(3), 2)


def test_s_unit_classes_counts():
    assert len(s_unit_classes(2)) == 8
    assert len(set(s_unit_classes(4))) == 32


def test_s_unit_factor_examples():
    f = s_unit_factor(QuadInt(1024, 1664))
    assert (f.sign, f.eps_exp, f.two_exp, f.cofactor) == (1, 7, 7, ONE)
    f = s_unit_factor(QuadInt(-32))
    assert (f.sign, f.eps_exp, f.two_exp, f.cofactor) == (-1, 0, 5, ONE)
    f = s_unit_factor(QuadInt(78608))
    assert (f.sign, f.eps_exp, f.two_exp, f.cofactor) == (1, 0, 4, QuadInt(4913))


def test_s_unit_factor_cofactor_totally_positive():
    rng = random.Random(7)
    for _ in range(500):
        x = QuadInt(rng.randint(-10**9, 10**9), rng.randint(-10**9, 10**9))
        if x.is_zero():
            continue
        f = s_unit_factor(x)
        assert f.value() == x
        assert f.cofactor.is_totally_positive()
        assert v2(f.cofactor) == 0


@pytest.mark.parametrize("k", range(-30, 31))
@pytest.mark.parametrize("sign", (1, -1))
def test_s_unit_factor_recovers_exponents(k, sign):
    for m in (0, 3, 11):
        f = s_unit_factor(sign * (1 << m) * eps_pow(k))
        assert (f.sign, f.eps_exp, f.two_exp, f.cofactor) == (sign, k, m, ONE)


def test_quad_text_forms():
    for text, value in [("-220+136*e", QuadInt(-220, 136)), ("-32*e", QuadInt(0, -32)), ("5", QuadInt(5)),
                        ("1-e", QuadInt(1, -1)), ("-e", QuadInt(0, -1)), ("0", ZERO), ("e", EPS)]:
        assert parse_quad(text) == value
        assert format_quad(value) == text
    with pytest.raises(ValueError):
        parse_quad("2*x")


@given(small)
def test_quad_text_roundtrip(x):
    assert parse_quad(format_quad(x)) == x


def test_factored_text_forms():
    assert format_factored(1, 7, 7) == "+e^7*2^7"
    assert format_factored(1, 0, 4, QuadInt(17), 3) == "+2^4*(17)^3"
    assert parse_factored("-e^-14*2^5") == (-1, -14, 5, ONE, 1)
    assert parse_factored("+2^4*(17)^3") == (1, 0, 4, QuadInt(17), 3)
    assert str(SUnitFactorization(-1, 1, 5)) == "-e^1*2^5"


def test_quadrat():
    q = QuadRat.of(QuadInt(4096)) / QuadInt(-32, -32)
    assert q.is_integral()
    assert q.to_int() * QuadInt(-32, -32) == QuadInt(4096)
    h = QuadRat.of(ONE) / 2
    assert not h.is_integral()
    assert h + h == QuadRat.of(ONE)


# -- property suite -------------------------------------------------------


@settings(max_examples=300)
@given(quads, quads, quads)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    assert x.conj().conj() == x


@settings(max_examples=300)
@given(quads)
def test_sqrt_of_square(x):
    assert sqrt_exact(x * x) in (x, -x)


@settings(max_examples=200)
@given(small.filter(lambda z: not z.is_zero()), small.filter(lambda z: not z.is_zero()))
def test_v2_is_valuation(x, y):
    assert v2(x * y) == v2(x) + v2(y)
    if not (x + y).is_zero():
        assert v2(x + y) >= min(v2(x), v2(y))


@pytest.mark.parametrize("n", range(-200, 201))
def test_eps_pow_lucas_identity(n):
    assert eps_pow(n) * eps_pow(-n) == ONE
    assert eps_pow(n) == QuadInt((lucas(n) - fib(n)) // 2, fib(n))


# -- F4 -----------------------------------------------------------------------


def test_f4_examples():
    w = F4Elem(2)
    assert residue_f4(QuadInt(3, 2)) == F4Elem(1)
    assert f4_sqrt(w) == w + F4Elem(1)
    assert f4_sqrt(w) * f4_sqrt(w) == w
    assert f4_solve_quadratic(F4Elem(1), F4Elem(1)) == [w, w + F4Elem(1)]


def test_f4_field_laws():
    squares = {z * z for z in F4_ELEMENTS}
    assert squares == set(F4_ELEMENTS)
    for z in F4_ELEMENTS:
        assert f4_sqrt(z) * f4_sqrt(z) == z
        if not z.is_zero():
            assert z * z.inverse() == F4Elem(1)


def test_f4_quadratic_roots_resubstitute():
    for p in F4_ELEMENTS:
        for q in F4_ELEMENTS:
            roots = f4_solve_quadratic(p, q)
            brute = sorted(z for z in F4_ELEMENTS if (z * z + p * z + q).is_zero())
            assert roots == brute


def test_f4_cubic_patterns_against_factorisations():
    # build (T-r1)(T-r2)(T-r3) and compare with the reported pattern
    for r1 in F4_ELEMENTS:
        for r2 in F4_ELEMENTS:
            for r3 in F4_ELEMENTS:
                b = r1 + r2 + r3
                c = r1 * r2 + r1 * r3 + r2 * r3
                d = r1 * r2 * r3
                kind, root = f4_cubic_roots(b, c, d)
                n = len({r1, r2, r3})
                assert kind == {3: "distinct", 2: "double", 1: "triple"}[n]
                if n == 2:
                    assert root == next(r for r in (r1, r2, r3) if (r1, r2, r3).count(r) == 2)
                if n == 1:
                    assert root == r1
