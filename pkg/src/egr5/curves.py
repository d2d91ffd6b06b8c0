"""Weierstrass models over Z[e], twists, and the class enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .diophantine import Family, UnitEqSolution
from .hauptmodul import Table1Result, TValue, j_of_t
from .qfield import (
    ONE,
    ZERO,
    QuadInt,
    QuadRat,
    format_quad,
    is_s_unit,
    parse_quad,
    s_unit_classes,
    sqrt_exact,
)


class SingularCurve(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassModel:
    a1: QuadInt
    a2: QuadInt
    a3: QuadInt
    a4: QuadInt
    a6: QuadInt

    @classmethod
    def of(cls, *coeffs) -> WeierstrassModel:
        if len(coeffs) == 1:
            coeffs = tuple(coeffs[0])
        if len(coeffs) != 5:
            raise ValueError("need five coefficients a1, a2, a3, a4, a6")
        return cls(*(QuadInt.coerce(c) for c in coeffs))

    @classmethod
    def parse(cls, text: str) -> WeierstrassModel:
        parts = [p for p in text.replace(";", ",").split(",")]
        return cls.of(*(parse_quad(p) for p in parts))

    @property
    def coeffs(self) -> tuple[QuadInt, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def b2(self) -> QuadInt:
        return self.a1 * self.a1 + 4 * self.a2

    @cached_property
    def b4(self) -> QuadInt:
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self) -> QuadInt:
        return self.a3 * self.a3 + 4 * self.a6

    @cached_property
    def b8(self) -> QuadInt:
        a1, a2, a3, a4, a6 = self.coeffs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @cached_property
    def c4(self) -> QuadInt:
        return self.b2 * self.b2 - 24 * self.b4

    @cached_property
    def c6(self) -> QuadInt:
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def discriminant(self) -> QuadInt:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @cached_property
    def j(self) -> QuadRat:
        if self.discriminant.is_zero():
            raise SingularCurve(f"{self} is singular")
        return QuadRat.of(self.c4 ** 3) / self.discriminant

    def is_singular(self) -> bool:
        return self.discriminant.is_zero()

    def conj(self) -> WeierstrassModel:
        return WeierstrassModel(*(c.conj() for c in self.coeffs))

    def contains(self, x: QuadInt, y: QuadInt) -> bool:
        a1, a2, a3, a4, a6 = self.coeffs
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6

    def to_row(self) -> list[str]:
        return [format_quad(c) for c in self.coeffs]

    def __str__(self) -> str:
        return "[" + ",".join(self.to_row()) + "]"


def coordinate_change(E: WeierstrassModel, u, r=ZERO, s=ZERO, t=ZERO) -> WeierstrassModel:
    """Apply x = u^2 x' + r, y = u^3 y' + u^2 s x' + t.

    ``u`` must be a unit or a power of 2 dividing the resulting numerators.
    Discriminant scales by u^-12, c4 by u^-4.
    """
    u, r, s, t = (QuadInt.coerce(z) for z in (u, r, s, t))
    a1, a2, a3, a4, a6 = E.coeffs
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1
    if u == ONE:
        return WeierstrassModel(n1, n2, n3, n4, n6)
    return WeierstrassModel(*(n.exact_div(u ** k) for n, k in zip((n1, n2, n3, n4, n6), (1, 2, 3, 4, 6))))


# -- base models ------------------------------------------------------------------


def base_model(sol: UnitEqSolution) -> WeierstrassModel:
    """y^2 = x (x^2 + A x + B) with (0, 0) of order 2 and S-unit discriminant.

    For x^2 = 2^a u + v: A = 2x, B = 2^a u, so A^2 - 4B = 4v.
    For 2 x^2 = u + v:   A = 4x, B = 2u,    so A^2 - 4B = 8v.
    """
    if sol.family is Family.TWO_X2:
        a, b = 4 * sol.x, 2 * sol.u
    else:
        a, b = 2 * sol.x, (1 << sol.a) * sol.u
    E = WeierstrassModel(ZERO, a, ZERO, b, ZERO)
    if E.is_singular():
        raise SingularCurve(f"solution {sol} gives a singular model")
    return E


def model_for_t(t: TValue | QuadInt) -> WeierstrassModel:
    """An integral model y^2 = x (x^2 + A x + B) with j = j(t) and S-unit Delta.

    Such a curve has t = 16 (A^2 - 4B) / B, so A^2 = B (t + 64) / 16; B runs
    over S-units until that is an integral square.
    """
    value = t.value if isinstance(t, TValue) else QuadInt.coerce(t)
    s = value + 64
    for k in range(0, 12):
        for d in s_unit_classes(2):
            b = d * (1 << k) if k else d
            num = b * s
            try:
                sq = num.exact_div(16)
            except ArithmeticError:
                continue
            a = sqrt_exact(sq)
            if a is not None:
                E = WeierstrassModel(ZERO, a, ZERO, b, ZERO)
                if not E.is_singular():
                    return E
    raise ValueError(f"no model with S-unit discriminant for t = {value}")


def two_isogenous(E: WeierstrassModel) -> WeierstrassModel:
    """y^2 = x (x^2 - 2A x + A^2 - 4B) for E: y^2 = x (x^2 + A x + B)."""
    if not (E.a1.is_zero() and E.a3.is_zero() and E.a6.is_zero()):
        raise ValueError("expects y^2 = x (x^2 + A x + B)")
    A, B = E.a2, E.a4
    return WeierstrassModel(ZERO, -2 * A, ZERO, A * A - 4 * B, ZERO)


# -- twists -------------------------------------------------------------------------


def quad_twist(E: WeierstrassModel, d) -> WeierstrassModel:
    if not (E.a1.is_zero() and E.a3.is_zero()):
        raise ValueError("quadratic twist expects a1 = a3 = 0")
    d = QuadInt.coerce(d)
    return WeierstrassModel(ZERO, d * E.a2, ZERO, d * d * E.a4, d ** 3 * E.a6)


def quartic_twists_1728() -> list[WeierstrassModel]:
    return [WeierstrassModel(ZERO, ZERO, ZERO, d, ZERO) for d in s_unit_classes(4)]


def _is_fourth_power(x: QuadInt) -> bool:
    r = sqrt_exact(x)
    if r is None:
        return False
    return sqrt_exact(r) is not None or sqrt_exact(-r) is not None


def is_isomorphic(E: WeierstrassModel, F: WeierstrassModel) -> bool:
    """Isomorphism over Q(sqrt 5), for j != 0."""
    if E.j != F.j:
        return False
    if E.j.num.is_zero():
        raise ValueError("unsupported: j = 0")
    if E.c6.is_zero():
        # j = 1728: c4(F)/c4(E) must be a fourth power
        return _is_fourth_power(F.c4 * E.c4 ** 3)
    # c4 -> l^2 c4, c6 -> l^3 c6 under a twist by l; isomorphic iff l is a square
    return sqrt_exact(F.c6 * E.c4 * E.c6 * F.c4) is not None


@dataclass(frozen=True)
class TwistClass:
    code: int
    d: QuadInt
    model: WeierstrassModel


J1728 = QuadInt(1728)


def enumerate_classes(table: Table1Result) -> list[TwistClass]:
    """One representative per isomorphism class, ordered by code then twist."""
    by_code: dict[int, list[TValue]] = {}
    for t in table.t_values:
        by_code.setdefault(table.t_to_code[t.value], []).append(t)
    out = []
    for rec in table.j_records:
        if rec.j.is_zero():
            raise ValueError("j = 0 does not occur and is not supported")
        if rec.j == J1728:
            out.extend(TwistClass(rec.code, E.a4, E) for E in quartic_twists_1728())
            continue
        t = min(by_code[rec.code], key=lambda tv: (abs(tv.value.a) + abs(tv.value.b), tv.value.key()))
        base = model_for_t(t)
        if base.j != QuadRat.of(rec.j):
            raise AssertionError(f"model for t = {t.value} has the wrong j")
        for d in s_unit_classes(2):
            out.append(TwistClass(rec.code, d, quad_twist(base, d)))
    for c in out:
        if not is_s_unit(c.model.discriminant):
            raise AssertionError(f"class {c} has bad reduction away from 2")
    return out


def j_matches_t(E: WeierstrassModel, t: TValue | QuadInt) -> bool:
    value = t.value if isinstance(t, TValue) else QuadInt.coerce(t)
    return E.j == QuadRat.of(j_of_t(value))
