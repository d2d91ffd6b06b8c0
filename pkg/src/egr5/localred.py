"""Tate's algorithm at the inert prime 2 of Z[e] (residue field F4).

The uniformiser is 2 itself, so "divisible by pi^k" is ordinary exact
divisibility by 2^k and every residue computation happens in F4.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import WeierstrassModel, coordinate_change
from .qfield import (
    ONE,
    ZERO,
    QuadInt,
    SUnitFactorization,
    eps_pow,
    f4_cubic_roots,
    f4_sqrt,
    residue_f4,
    s_unit_factor,
    v2,
    v2_or_inf,
)

_COMPONENTS = {"I0": 1, "II": 1, "III": 2, "IV": 3, "I0*": 5, "IV*": 7, "III*": 8, "II*": 9}


@dataclass(frozen=True)
class KodairaType:
    """Kodaira symbol: kind in {I, II, III, IV, I*, II*, III*, IV*} plus n for I_n, I_n*."""

    kind: str
    n: int = 0

    @classmethod
    def parse(cls, text: str) -> KodairaType:
        s = text.strip()
        if s in ("II", "III", "IV", "II*", "III*", "IV*"):
            return cls(s)
        if s.startswith("I") and s[1:].rstrip("*").isdigit():
            star = s.endswith("*")
            return cls("I*" if star else "I", int(s[1:].rstrip("*")))
        raise ValueError(f"unknown Kodaira symbol {text!r}")

    @property
    def components(self) -> int:
        if self.kind == "I":
            return max(self.n, 1)
        if self.kind == "I*":
            return self.n + 5
        return _COMPONENTS[self.kind]

    def is_additive(self) -> bool:
        return self.kind != "I"

    def is_good(self) -> bool:
        return self.kind == "I" and self.n == 0

    def __str__(self) -> str:
        if self.kind == "I":
            return f"I{self.n}"
        if self.kind == "I*":
            return f"I{self.n}*"
        return self.kind


@dataclass(frozen=True)
class ReductionData:
    minimal_model: WeierstrassModel
    v_delta: int
    type: KodairaType
    m: int
    f: int
    delta_normalized: SUnitFactorization

    def invariant_key(self) -> tuple:
        d = self.delta_normalized
        return (d.sign, d.two_exp, d.eps_exp % 12, str(self.type), self.f)


def ogg_f(v_delta: int, kodaira: KodairaType) -> int:
    if v_delta < 0:
        raise ValueError("negative valuation")
    if kodaira.is_good():
        return 0
    f = v_delta - kodaira.components + 1
    if f < 0:
        raise ValueError(f"inconsistent data: v(Delta) = {v_delta}, type {kodaira}")
    return f


def _div(x: QuadInt, k: int) -> QuadInt:
    return x.exact_div(1 << k)


def _sqrt_lift(x: QuadInt) -> QuadInt:
    """Lift of the square root of x mod 2."""
    return f4_sqrt(residue_f4(x)).lift()


def tate_at_2(E: WeierstrassModel) -> ReductionData:
    """Minimal model at 2, Kodaira type, and conductor exponent of E."""
    if E.is_singular():
        raise ValueError(f"singular model {E}")
    C = E
    while True:
        delta = C.discriminant
        vd = v2(delta)
        if vd == 0:
            return _result(C, vd, KodairaType("I", 0))

        a1, a2, a3, a4, a6 = C.coeffs
        # move the singular point of the reduction to (0, 0)
        if residue_f4(C.b2).is_zero():
            r = _sqrt_lift(a4)
            t = _sqrt_lift(((r + a2) * r + a4) * r + a6)
        else:
            inv = residue_f4(a1).inverse()
            rr = residue_f4(a3) * inv
            r = rr.lift()
            t = ((rr * rr + residue_f4(a4)) * inv).lift()
        C = coordinate_change(C, ONE, r, ZERO, t)
        a1, a2, a3, a4, a6 = C.coeffs

        if v2_or_inf(C.b2) == 0:
            return _result(C, vd, KodairaType("I", vd))
        if v2_or_inf(a6) < 2:
            return _result(C, vd, KodairaType("II"))
        if v2_or_inf(C.b8) < 3:
            return _result(C, vd, KodairaType("III"))
        if v2_or_inf(C.b6) < 3:
            return _result(C, vd, KodairaType("IV"))

        # 2 | a1, a2;  4 | a3, a4;  8 | a6
        s = _sqrt_lift(a2)
        t = 2 * _sqrt_lift(_div(a6, 2))
        C = coordinate_change(C, ONE, ZERO, s, t)
        a1, a2, a3, a4, a6 = C.coeffs

        # P(T) = T^3 + (a2/2) T^2 + (a4/4) T + a6/8
        pattern, root = f4_cubic_roots(
            residue_f4(_div(a2, 1)), residue_f4(_div(a4, 2)), residue_f4(_div(a6, 3))
        )
        if pattern == "distinct":
            return _result(C, vd, KodairaType("I*", 0))

        if pattern == "double":
            C = coordinate_change(C, ONE, 2 * root.lift(), ZERO, ZERO)
            n, C = _subprocedure_in_star(C)
            return _result(C, vd, KodairaType("I*", n))

        # triple root: move it to 0
        C = coordinate_change(C, ONE, 2 * root.lift(), ZERO, ZERO)
        a1, a2, a3, a4, a6 = C.coeffs
        # Y^2 + (a3/4) Y - a6/16
        if not residue_f4(_div(a3, 2)).is_zero():
            return _result(C, vd, KodairaType("IV*"))
        t = 4 * _sqrt_lift(_div(a6, 4))
        C = coordinate_change(C, ONE, ZERO, ZERO, t)
        a1, a2, a3, a4, a6 = C.coeffs
        if v2_or_inf(a4) < 4:
            return _result(C, vd, KodairaType("III*"))
        if v2_or_inf(a6) < 6:
            return _result(C, vd, KodairaType("II*"))
        # not minimal: divide through by 2
        C = coordinate_change(C, QuadInt(2))


def _subprocedure_in_star(C: WeierstrassModel) -> tuple[int, WeierstrassModel]:
    """Double root at 0 of P(T): find n for type I_n*."""
    ix = iy = 3
    mx = my = 2  # exponents of pi in the running divisors
    while True:
        a1, a2, a3, a4, a6 = C.coeffs
        a2t = _div(a2, 1)
        a3t = _div(a3, my)
        a6t = _div(a6, mx + my)
        # Y^2 + a3t Y - a6t: distinct roots iff a3t is a unit (char 2)
        if not residue_f4(a3t).is_zero():
            return ix + iy - 5, C
        t = (1 << my) * _sqrt_lift(a6t)
        C = coordinate_change(C, ONE, ZERO, ZERO, t)
        my += 1
        iy += 1

        a1, a2, a3, a4, a6 = C.coeffs
        a2t = _div(a2, 1)
        a4t = _div(a4, 1 + mx)
        a6t = _div(a6, mx + my)
        # a2t X^2 + a4t X + a6t: distinct roots iff a4t is a unit (char 2)
        if not residue_f4(a4t).is_zero():
            return ix + iy - 5, C
        r = (1 << mx) * _sqrt_lift((residue_f4(a6t) / residue_f4(a2t)).lift())
        C = coordinate_change(C, ONE, r, ZERO, ZERO)
        mx += 1
        ix += 1


def _result(C: WeierstrassModel, vd: int, kodaira: KodairaType) -> ReductionData:
    f = ogg_f(vd, kodaira)
    return ReductionData(C, vd, kodaira, kodaira.components, f, s_unit_factor(C.discriminant))


def _a2_residue_table() -> dict[tuple[int, int], QuadInt]:
    # representatives of Z[e]/3: 0, +-1, +-e, +-(1-e), +-(1+e)
    reps = [ZERO]
    for base in (ONE, QuadInt(0, 1), QuadInt(1, -1), QuadInt(1, 1)):
        reps += [base, -base]
    return {(r.a % 3, r.b % 3): r for r in reps}


A2_RESIDUES = _a2_residue_table()


def normalize_global(E: WeierstrassModel) -> tuple[WeierstrassModel, SUnitFactorization]:
    """Fix the free choices of a model that is already minimal at 2.

    Scales by a unit so the e-exponent of Delta lies in -5..6, removes a1 and
    a3 when both are even, and reduces a2 modulo 3 by x -> x + r.
    """
    k = s_unit_factor(E.discriminant).eps_exp
    shift = -((k + 5) // 12)  # Delta -> u^-12 Delta with u = e^-shift
    C = E
    if shift:
        C = coordinate_change(C, eps_pow(-shift))
    if v2_or_inf(C.a1) >= 1 and v2_or_inf(C.a3) >= 1:
        C = coordinate_change(C, ONE, ZERO, -C.a1.exact_div(2), -C.a3.exact_div(2))
    if C.a1.is_zero():
        target = A2_RESIDUES[(C.a2.a % 3, C.a2.b % 3)]
        r = (target - C.a2).exact_div(3)
        C = coordinate_change(C, ONE, r, ZERO, ZERO)
    return C, s_unit_factor(C.discriminant)


def reduce_and_normalize(E: WeierstrassModel) -> ReductionData:
    data = tate_at_2(E)
    C, delta = normalize_global(data.minimal_model)
    return ReductionData(C, data.v_delta, data.type, data.m, data.f, delta)
