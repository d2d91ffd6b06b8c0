"""Unit equations over Z[e] by bounded exhaustive search.

Four families are solved, each with u, v units and x in Z[e]:

    TWO_X2   2 x^2 = u + v
    X2       x^2 = u + v
    X2_2UV   x^2 = 2 u + v
    X2_2A    x^2 = 2^a u + v,  a >= 2

Solutions are grouped into orbits under conjugation, scaling
(u, v, x) -> (u w^2, v w^2, x w), the sign of x, and (for the two
symmetric families) exchanging u and v.  When x = 0 any common unit factor
of u and v is allowed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .qfield import (
    ONE,
    ZERO,
    QuadInt,
    eps_pow,
    format_quad,
    is_s_unit,
    lucas,
    s_unit_parts,
    sqrt_exact,
)


class Family(str, enum.Enum):
    TWO_X2 = "TWO_X2"
    X2 = "X2"
    X2_2UV = "X2_2UV"
    X2_2A = "X2_2A"

    @property
    def symmetric(self) -> bool:
        return self in (Family.TWO_X2, Family.X2)

    @property
    def first_kind(self) -> bool:
        # t = 64 u / v rather than t = 64 v / 2^a u
        return self in (Family.TWO_X2, Family.X2)


FAMILY_ORDER = {f: i for i, f in enumerate(Family)}


class NotASolution(ValueError):
    pass


@dataclass(frozen=True)
class UnitEqSolution:
    family: Family
    a: int
    u: QuadInt
    v: QuadInt
    x: QuadInt

    def lhs(self) -> QuadInt:
        if self.family is Family.TWO_X2:
            return 2 * self.x * self.x
        return self.x * self.x

    def rhs(self) -> QuadInt:
        return (1 << self.a) * self.u + self.v

    def is_valid(self) -> bool:
        if not (self.u.is_unit() and self.v.is_unit()):
            return False
        if self.family is Family.X2_2A and self.a < 2:
            return False
        if self.family in (Family.TWO_X2, Family.X2) and self.a != 0:
            return False
        if self.family is Family.X2_2UV and self.a != 1:
            return False
        return self.lhs() == self.rhs()

    def conj(self) -> UnitEqSolution:
        return UnitEqSolution(self.family, self.a, self.u.conj(), self.v.conj(), self.x.conj())

    def scale(self, w: QuadInt) -> UnitEqSolution:
        return UnitEqSolution(self.family, self.a, self.u * w * w, self.v * w * w, self.x * w)

    def swap(self) -> UnitEqSolution:
        if not self.family.symmetric:
            raise ValueError(f"{self.family.value} is not symmetric in u, v")
        return UnitEqSolution(self.family, self.a, self.v, self.u, self.x)

    def to_row(self) -> list[str]:
        return [self.family.value, str(self.a), format_quad(self.u), format_quad(self.v), format_quad(self.x)]

    def __str__(self) -> str:
        return "\t".join(self.to_row())


@dataclass(frozen=True)
class SolutionOrbit:
    canonical: UnitEqSolution
    orbit_size_within_bound: int


def _unit_parts(u: QuadInt) -> tuple[int, int]:
    sign, k, _ = s_unit_parts(u)
    return sign, k


def _x_sign_normal(x: QuadInt) -> QuadInt:
    if x.a < 0 or (x.a == 0 and x.b < 0):
        return -x
    return x


def _key(sol: UnitEqSolution) -> tuple:
    su, i = _unit_parts(sol.u)
    sv, j = _unit_parts(sol.v)
    u_part = (abs(i), i < 0, su < 0)
    v_part = (abs(j), j < 0, sv < 0)
    x = sol.x
    x_part = (abs(x.a), abs(x.b), x.a, x.b)
    if sol.family is Family.X2_2A:
        return (FAMILY_ORDER[sol.family], sol.a) + v_part + u_part + x_part
    return (FAMILY_ORDER[sol.family], sol.a) + u_part + v_part + x_part


def canonicalize(sol: UnitEqSolution) -> UnitEqSolution:
    """Orbit representative: the minimum of a total order over the orbit.

    The order compares family, a, then the e-exponent of u (smallest absolute
    value, non-negative first, positive sign first), then the same for v, then
    x.  For X2_2A the roles of u and v are exchanged so that v = 1.
    """
    if not sol.is_valid():
        raise NotASolution(f"not a solution: {sol}")
    if sol.x.is_zero():
        return UnitEqSolution(sol.family, sol.a, ONE, -ONE, ZERO)
    lead = "v" if sol.family is Family.X2_2A else "u"
    candidates = []
    starts = [sol, sol.conj()]
    if sol.family.symmetric:
        starts += [s.swap() for s in starts]
    for s in starts:
        _, k = _unit_parts(s.v if lead == "v" else s.u)
        # bring the leading exponent into {0} or {-1, 1}
        shifts = [-(k // 2)] if k % 2 == 0 else [-(k - 1) // 2, -(k + 1) // 2]
        for h in shifts:
            t = s.scale(eps_pow(h))
            candidates.append(
                UnitEqSolution(t.family, t.a, t.u, t.v, _x_sign_normal(t.x))
            )
    return min(candidates, key=_key)


def _family_a_values(family: Family, a_max: int) -> list[int]:
    if family is Family.X2_2A:
        return list(range(2, a_max + 1))
    return [1] if family is Family.X2_2UV else [0]


# squares of Z[e] modulo 4, as (a mod 4, b mod 4)
_SQUARES_MOD4 = frozenset(
    (((c * c + d * d) % 4), ((2 * c * d + d * d) % 4)) for c in range(4) for d in range(4)
)


def _maybe_square(r: QuadInt) -> bool:
    return (r.a % 4, r.b % 4) in _SQUARES_MOD4 and r.sign1() >= 0 and r.sign2() >= 0


@lru_cache(maxsize=None)
def _units(bound: int) -> tuple[QuadInt, ...]:
    return tuple(s * eps_pow(i) for i in range(-bound, bound + 1) for s in (1, -1))


def search_family(family: Family, exp_bound: int, a_max: int = 8) -> list[UnitEqSolution]:
    """All solutions with u = +-e^i, v = +-e^j, |i|, |j| <= exp_bound."""
    units = _units(exp_bound)
    found = []
    for a in _family_a_values(family, a_max):
        scale = 1 << a
        for u in units:
            su = u * scale
            for v in units:
                r = su + v
                if family is Family.TWO_X2:
                    if r.a % 2 or r.b % 2:
                        continue
                    r = QuadInt(r.a // 2, r.b // 2)
                if not _maybe_square(r):
                    continue
                x = sqrt_exact(r)
                if x is not None:
                    found.append(UnitEqSolution(family, a, u, v, x))
    return found


def solve_unit_equation(
    family: Family | str, a_max: int = 8, exp_bound: int = 40
) -> list[SolutionOrbit]:
    family = Family(family)
    if exp_bound < 14:
        raise ValueError("exp_bound must be at least 14")
    counts: dict[UnitEqSolution, int] = {}
    for sol in search_family(family, exp_bound, a_max):
        c = canonicalize(sol)
        counts[c] = counts.get(c, 0) + 1
    return [SolutionOrbit(c, counts[c]) for c in sorted(counts, key=_key)]


def solve_all(a_max: int = 8, exp_bound: int = 40) -> dict[Family, list[SolutionOrbit]]:
    return {f: solve_unit_equation(f, a_max, exp_bound) for f in Family}


# -- Lucas equations ------------------------------------------------------------


def solve_lucas(kind: str, n_bound: int) -> list[tuple[int, int]]:
    """Pairs (n, X), X >= 0, with L_n = X^2 (kind "X2") or L_n = 2 X^2 ("2X2")."""
    if kind not in ("X2", "2X2"):
        raise ValueError(f"unknown kind {kind!r}")
    if n_bound < 2:
        raise ValueError("n_bound too small")
    out = []
    for n in range(-n_bound, n_bound + 1):
        l = lucas(n)
        if kind == "2X2":
            if l % 2:
                continue
            l //= 2
        if l < 0:
            continue
        r = isqrt(l)
        if r * r == l:
            out.append((n, r))
    return out


# -- simultaneous Pell equations ------------------------------------------------


def _fundamental_negative_pell(d: int, limit: int = 10**4) -> tuple[int, int]:
    for y in range(1, limit):
        p2 = d * y * y - 1
        p = isqrt(p2)
        if p * p == p2:
            return p, y
    raise ValueError(f"no solution of p^2 - {d} y^2 = -1 below {limit}")


def negative_pell_solutions(d: int, p_bound: int) -> list[tuple[int, int]]:
    """Non-negative (p, y) with p^2 - d y^2 = -1 and p <= p_bound."""
    p0, y0 = _fundamental_negative_pell(d)
    # multiply by the square of the fundamental solution
    a, b = p0 * p0 + d * y0 * y0, 2 * p0 * y0
    out = []
    p, y = p0, y0
    while p <= p_bound:
        out.append((p, y))
        p, y = p * a + d * y * b, p * b + y * a
    return out


def solve_pell_pairs(height_bound: int) -> tuple[list[tuple[int, int, int]], list[tuple[int, int, int]]]:
    """Solutions with |X| <= height_bound of

        (X+2)^2 - 10 Y^2 = -1,  (X-2)^2 - 2 Z^2 = -1
    and
        X^2 - 2 Y^2 = -1,  X^2 - 10 Z^2 = -9.
    """
    first = set()
    for p, y in negative_pell_solutions(10, height_bound + 2):
        for sp in (p, -p):
            x = sp - 2
            if abs(x) > height_bound:
                continue
            z2, rem = divmod((x - 2) ** 2 + 1, 2)
            z = isqrt(z2)
            if rem == 0 and z * z == z2:
                first.update((x, sy, sz) for sy in {y, -y} for sz in {z, -z})
    second = set()
    for p, y in negative_pell_solutions(2, height_bound):
        z2, rem = divmod(p * p + 9, 10)
        z = isqrt(z2)
        if rem == 0 and z * z == z2:
            second.update(
                (sx, sy, sz) for sx in {p, -p} for sy in {y, -y} for sz in {z, -z}
            )
    return sorted(first), sorted(second)


# -- cross-checks from the case analysis ----------------------------------------


def two_power_exponent(x: QuadInt) -> int | None:
    """k if x is a unit times 2^k, else None."""
    if x.is_zero() or not is_s_unit(x):
        return None
    return s_unit_parts(x)[2]


def reduction_a_bound(two_x2: list[SolutionOrbit], x2: list[SolutionOrbit]) -> int:
    """Largest a allowed in x^2 = 2^a u + v.

    With v = 1 and x + 1 = 2^(a-1) u1, x - 1 = 2 u2 one gets
    2^(a-2) = u1^-1 + u2 u1^-1, a solution of x^2 = u + v (a even) or
    2 x^2 = u + v (a odd) whose x is a unit times a power of 2.
    """
    best = 2
    for orbit, extra in ((x2, 0), (two_x2, 1)):
        for o in orbit:
            k = two_power_exponent(o.canonical.x)
            if k is not None:
                best = max(best, 2 * k + extra + 2)
    return best


def two_power_factorization(sol: UnitEqSolution) -> tuple[QuadInt, QuadInt] | None:
    """For x^2 = 2^a u + 1, units (u1, u2) with x' + 1 = 2^(a-1) u1, x' - 1 = 2 u2
    for x' = x or -x; None if neither sign works."""
    if sol.family is not Family.X2_2A or sol.v != ONE:
        raise ValueError("expects a canonical X2_2A solution with v = 1")
    for x in (sol.x, -sol.x):
        try:
            u1 = (x + 1).exact_div(1 << (sol.a - 1))
            u2 = (x - 1).exact_div(2)
        except ArithmeticError:
            continue
        if u1.is_unit() and u2.is_unit():
            return u1, u2
    return None


def pell_triple_of(sol: UnitEqSolution) -> tuple[int, tuple[int, int, int]] | None:
    """(system, (X, Y, Z)) derived from an X2_2UV solution with |N x| >= 5."""
    if sol.family is not Family.X2_2UV:
        raise ValueError("expects an X2_2UV solution")
    big_x = abs(sol.x.norm())
    if big_x < 5:
        return None
    un, vn = sol.u.norm(), sol.v.norm()
    if (un, vn) == (1, -1):
        # (X -+ 2)^2 + 1 = 10 Y^2, (X +- 2)^2 + 1 = 2 Z^2
        for x in (big_x, -big_x):
            y2, r1 = divmod((x + 2) ** 2 + 1, 10)
            z2, r2 = divmod((x - 2) ** 2 + 1, 2)
            if r1 == r2 == 0 and isqrt(y2) ** 2 == y2 and isqrt(z2) ** 2 == z2:
                return 1, (x, isqrt(y2), isqrt(z2))
        return None
    if (un, vn) == (-1, -1):
        y2, r1 = divmod(big_x**2 + 1, 2)
        z2, r2 = divmod(big_x**2 + 9, 10)
        if r1 == r2 == 0 and isqrt(y2) ** 2 == y2 and isqrt(z2) ** 2 == z2:
            return 2, (big_x, isqrt(y2), isqrt(z2))
        return None
    return None
