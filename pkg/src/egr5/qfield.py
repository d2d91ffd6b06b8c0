"""Exact arithmetic in Z[e], e = (1 + sqrt 5)/2, and its residue field mod 2.

Elements are stored in the e-basis: ``QuadInt(a, b)`` is a + b*e with
e^2 = e + 1.  Everything here is exact; floating point never decides an
answer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import mpmath


class NotDivisible(ArithmeticError):
    pass


class QuadInt:
    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0) -> None:
        self.a = a
        self.b = b

    @classmethod
    def coerce(cls, x: QuadInt | int) -> QuadInt:
        if isinstance(x, QuadInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadInt")

    # -- ring structure ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a + other, self.b)
        if isinstance(other, QuadInt):
            return QuadInt(self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a - other, self.b)
        if isinstance(other, QuadInt):
            return QuadInt(self.a - other.a, self.b - other.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return QuadInt(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a * other, self.b * other)
        if isinstance(other, QuadInt):
            bb = self.b * other.b
            return QuadInt(
                self.a * other.a + bb,
                self.a * other.b + self.b * other.a + bb,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QuadInt:
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: QuadInt | int) -> QuadInt:
        """Quotient in Z[e]; raises NotDivisible when it does not exist."""
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            qa, ra = divmod(self.a, other)
            qb, rb = divmod(self.b, other)
            if ra or rb:
                raise NotDivisible(f"{self} is not divisible by {other}")
            return QuadInt(qa, qb)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return (self * other.conj()).exact_div(n)

    def divides(self, other: QuadInt | int) -> bool:
        try:
            QuadInt.coerce(other).exact_div(self)
        except NotDivisible:
            return False
        return True

    def __floordiv__(self, other):
        return self.exact_div(other)

    # -- conjugation, norm, trace -----------------------------------------

    def conj(self) -> QuadInt:
        return QuadInt(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def trace(self) -> int:
        return 2 * self.a + self.b

    def is_unit(self) -> bool:
        return self.norm() in (1, -1)

    def unit_inverse(self) -> QuadInt:
        n = self.norm()
        if n not in (1, -1):
            raise NotDivisible(f"{self} is not a unit")
        return self.conj() * n

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    # -- signs of the two real embeddings (e -> phi, e -> -1/phi) ---------

    def sign1(self) -> int:
        """Sign under e -> (1 + sqrt 5)/2."""
        return _sign_p_plus_q_root5(2 * self.a + self.b, self.b)

    def sign2(self) -> int:
        """Sign under e -> (1 - sqrt 5)/2."""
        return _sign_p_plus_q_root5(2 * self.a + self.b, -self.b)

    def is_totally_positive(self) -> bool:
        return self.sign1() > 0 and self.sign2() > 0

    def embeddings(self, dps: int = 50) -> tuple[mpmath.mpf, mpmath.mpf]:
        with mpmath.workdps(dps):
            r5 = mpmath.sqrt(5)
            return (
                self.a + self.b * (1 + r5) / 2,
                self.a + self.b * (1 - r5) / 2,
            )

    # -- comparison, hashing, text ----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadInt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def key(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"QuadInt({self.a}, {self.b})"

    def __str__(self) -> str:
        return format_quad(self)

    def __reduce__(self):
        return (QuadInt, (self.a, self.b))


ZERO = QuadInt(0, 0)
ONE = QuadInt(1, 0)
EPS = QuadInt(0, 1)
SQRT5 = QuadInt(-1, 2)


def _sign_p_plus_q_root5(p: int, q: int) -> int:
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return 1 if q > 0 else -1
    if (p > 0) == (q > 0):
        return 1 if p > 0 else -1
    # opposite signs: the larger square wins
    lhs, rhs = p * p, 5 * q * q
    if lhs == rhs:
        return 0
    if lhs > rhs:
        return 1 if p > 0 else -1
    return 1 if q > 0 else -1


# -- text form ---------------------------------------------------------------

def format_quad(x: QuadInt) -> str:
    a, b = x.a, x.b
    if b == 0:
        return str(a)
    if abs(b) == 1:
        bterm = "e" if b > 0 else "-e"
    else:
        bterm = f"{b}*e"
    if a == 0:
        return bterm
    if not bterm.startswith("-"):
        bterm = "+" + bterm
    return f"{a}{bterm}"


def parse_quad(text: str) -> QuadInt:
    """Parse ``a+b*e`` text (``5``, ``-32*e``, ``1-e``, ``-220+136*e``)."""
    s = text.replace(" ", "")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if not s or "".join(terms) != s or len(terms) > 2:
        raise ValueError(f"malformed element: {text!r}")
    a = b = 0
    seen = set()
    for term in terms:
        m = re.fullmatch(r"([+-]?)(?:(\d+)|(\d+)\*e|e)", term)
        if m is None:
            raise ValueError(f"malformed element: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        kind = "a" if m.group(2) is not None else "b"
        if kind in seen or (kind == "a" and seen):
            raise ValueError(f"malformed element: {text!r}")
        seen.add(kind)
        if kind == "a":
            a = sign * int(m.group(2))
        else:
            b = sign * (int(m.group(3)) if m.group(3) else 1)
    return QuadInt(a, b)


# -- Lucas and Fibonacci -----------------------------------------------------


@lru_cache(maxsize=None)
def _lucas_fib_nonneg(n: int) -> tuple[int, int]:
    # fast doubling on (F_n, L_n)
    if n == 0:
        return (0, 2)
    f, l = _lucas_fib_nonneg(n // 2)
    k = n // 2
    sign = -1 if k % 2 else 1
    f2, l2 = f * l, l * l - 2 * sign
    if n % 2 == 0:
        return (f2, l2)
    # F_{2k+1} = (F_{2k} + L_{2k})/2, L_{2k+1} = (5 F_{2k} + L_{2k})/2
    return ((f2 + l2) // 2, (5 * f2 + l2) // 2)


def fib(n: int) -> int:
    if n >= 0:
        return _lucas_fib_nonneg(n)[0]
    f = _lucas_fib_nonneg(-n)[0]
    return f if (-n) % 2 else -f


def lucas(n: int) -> int:
    if n >= 0:
        return _lucas_fib_nonneg(n)[1]
    l = _lucas_fib_nonneg(-n)[1]
    return -l if (-n) % 2 else l


def eps_pow(n: int) -> QuadInt:
    """e^n for any integer n, via e^n = (L_n - F_n)/2 + F_n e."""
    f, l = fib(n), lucas(n)
    return QuadInt((l - f) // 2, f)


# -- 2-adic valuation (2 is inert) -------------------------------------------


def v2_int(n: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    return (n & -n).bit_length() - 1


def v2(x: QuadInt | int) -> int:
    x = QuadInt.coerce(x)
    if x.is_zero():
        raise ValueError("valuation of zero")
    if x.a == 0:
        return v2_int(x.b)
    if x.b == 0:
        return v2_int(x.a)
    return min(v2_int(x.a), v2_int(x.b))


def v2_or_inf(x: QuadInt | int) -> float | int:
    x = QuadInt.coerce(x)
    return float("inf") if x.is_zero() else v2(x)


# -- exact roots --------------------------------------------------------------


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def sqrt_exact(x: QuadInt | int) -> QuadInt | None:
    """Return y with y*y == x, or None if x is not a square in Z[e].

    Works through norm and trace: N(y)^2 = N(x), T(y)^2 = T(x) + 2 N(y) and
    5 d^2 = T(y)^2 - 4 N(y) for y = c + d e.  The candidate is then checked
    by multiplication.
    """
    x = QuadInt.coerce(x)
    if x.is_zero():
        return ZERO
    nx = x.norm()
    r = _isqrt_exact(nx)
    if r is None:
        return None
    tx = x.trace()
    for ny in {r, -r}:
        t = _isqrt_exact(tx + 2 * ny)
        if t is None:
            continue
        d2, rem = divmod(t * t - 4 * ny, 5)
        if rem:
            continue
        d = _isqrt_exact(d2)
        if d is None:
            continue
        for tt, dd in ((t, d), (t, -d)):
            if (tt - dd) % 2:
                continue
            y = QuadInt((tt - dd) // 2, dd)
            if y * y == x:
                # prefer the root with positive first embedding
                return y if y.sign1() > 0 else -y
    return None


def is_square(x: QuadInt | int) -> bool:
    return sqrt_exact(x) is not None


def nth_root_exact(x: QuadInt | int, n: int) -> QuadInt | None:
    """Exact n-th root in Z[e] (real embedding roots, rounded, then verified)."""
    x = QuadInt.coerce(x)
    if n == 2:
        return sqrt_exact(x)
    if x.is_zero():
        return ZERO
    if n % 2 == 0 and not x.is_totally_positive():
        return None
    digits = len(str(max(abs(x.a), abs(x.b)))) // n + 30
    with mpmath.workdps(digits):
        e1, e2 = x.embeddings(digits + 10)

        def real_root(z):
            return mpmath.sign(z) * mpmath.root(abs(z), n)

        y1, y2 = real_root(e1), real_root(e2)
        trace = int(mpmath.nint(y1 + y2))
        d = int(mpmath.nint((y1 - y2) / mpmath.sqrt(5)))
    if (trace - d) % 2:
        return None
    y = QuadInt((trace - d) // 2, d)
    return y if y**n == x else None


def cbrt_exact(x: QuadInt | int) -> QuadInt | None:
    return nth_root_exact(x, 3)


# -- residue field F4 = Z[e]/(2) -----------------------------------------------


@dataclass(frozen=True, order=True)
class F4Elem:
    """c0 + c1*w with w^2 = w + 1 over F2, packed as c0 | c1 << 1."""

    value: int

    def __add__(self, other: F4Elem) -> F4Elem:
        return F4Elem(self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: F4Elem) -> F4Elem:
        a0, a1 = self.value & 1, self.value >> 1
        b0, b1 = other.value & 1, other.value >> 1
        hi = a1 & b1
        c0 = (a0 & b0) ^ hi
        c1 = (a0 & b1) ^ (a1 & b0) ^ hi
        return F4Elem(c0 | c1 << 1)

    def inverse(self) -> F4Elem:
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in F4")
        return self * self  # x^3 = 1 on F4*

    def __truediv__(self, other: F4Elem) -> F4Elem:
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.value == 0

    def lift(self) -> QuadInt:
        return QuadInt(self.value & 1, self.value >> 1)

    def __str__(self) -> str:
        return ("0", "1", "w", "w+1")[self.value]


F4_ELEMENTS = tuple(F4Elem(i) for i in range(4))
F4_ZERO, F4_ONE, F4_W, F4_W1 = F4_ELEMENTS


def residue_f4(x: QuadInt | int) -> F4Elem:
    x = QuadInt.coerce(x)
    return F4Elem((x.a & 1) | (x.b & 1) << 1)


def f4_sqrt(z: F4Elem) -> F4Elem:
    # Frobenius has order 2 on F4, so it is its own inverse
    return z * z


def f4_solve_quadratic(p: F4Elem, q: F4Elem) -> list[F4Elem]:
    """Roots in F4 of z^2 + p z + q."""
    if p.is_zero():
        return [f4_sqrt(q)]
    c = q / (p * p)
    ws = [w for w in F4_ELEMENTS if (w * w + w) == c]
    return sorted(p * w for w in ws)


def f4_cubic_roots(b: F4Elem, c: F4Elem, d: F4Elem) -> tuple[str, F4Elem | None]:
    """Root pattern of T^3 + b T^2 + c T + d over the algebraic closure of F4.

    Returns ("distinct", None), ("double", r) or ("triple", r), where r is the
    repeated root.  In characteristic 2 the derivative is T^2 + c, so a
    repeated root can only be sqrt(c).
    """
    r = f4_sqrt(c)
    if not (r * r * r + b * r * r + c * r + d).is_zero():
        return ("distinct", None)
    # sum of roots is b (signs vanish mod 2): triple iff b = r
    if b == r:
        return ("triple", r)
    return ("double", r)


# -- S-unit factorisation -----------------------------------------------------


@dataclass(frozen=True)
class SUnitFactorization:
    """x = sign * e^eps_exp * 2^two_exp * cofactor, cofactor totally positive."""

    sign: int
    eps_exp: int
    two_exp: int
    cofactor: QuadInt = ONE

    def value(self) -> QuadInt:
        return eps_pow(self.eps_exp) * (self.sign * (1 << self.two_exp)) * self.cofactor

    def is_s_unit(self) -> bool:
        return self.cofactor == ONE

    def __str__(self) -> str:
        return format_factored(self.sign, self.eps_exp, self.two_exp, self.cofactor)


def _balance_positive(c: QuadInt) -> tuple[int, QuadInt]:
    """Pull a power e^(2n) out of a totally positive c so the ratio of its
    embeddings r lies in (phi^-2, phi^2]; returns (2n, c / e^(2n))."""
    k = 0
    e2, e2inv = eps_pow(2), eps_pow(-2)
    einv = eps_pow(-1)
    while True:
        # r > phi^2  <=>  trace(c e^-1) > 0
        if (c * einv).trace() > 0:
            c = c * e2inv
            k += 2
        # r <= phi^-2  <=>  trace(c e) <= 0
        elif (c * EPS).trace() <= 0:
            c = c * e2
            k -= 2
        else:
            return k, c


def s_unit_factor(x: QuadInt | int) -> SUnitFactorization:
    x = QuadInt.coerce(x)
    if x.is_zero():
        raise ValueError("cannot factor zero")
    m = v2(x)
    c = x.exact_div(1 << m)
    s1, s2 = c.sign1(), c.sign2()
    sign = s1
    if s1 * s2 < 0:
        # e has embedding signs (+, -)
        k = 1
        c = c * eps_pow(-1) * sign
    else:
        k = 0
        c = c * sign
    shift, c = _balance_positive(c)
    return SUnitFactorization(sign, k + shift, m, c)


def s_unit_parts(x: QuadInt | int) -> tuple[int, int, int]:
    """(sign, eps_exp, two_exp) of an S-unit; raises ValueError otherwise."""
    f = s_unit_factor(x)
    if not f.is_s_unit():
        raise ValueError(f"{x} is not an S-unit")
    return f.sign, f.eps_exp, f.two_exp


def is_s_unit(x: QuadInt | int) -> bool:
    x = QuadInt.coerce(x)
    if x.is_zero():
        return False
    m = v2(x)
    return x.exact_div(1 << m).is_unit()


def nth_power_class(x: QuadInt | int, n: int) -> SUnitFactorization:
    """Representative of the class of an S-unit modulo n-th powers (n = 2, 4)."""
    if n not in (2, 4):
        raise ValueError("only n = 2 or 4 is supported")
    try:
        sign, k, m = s_unit_parts(x)
    except ValueError:
        raise ValueError(f"unsupported: {x} is not an S-unit") from None
    return SUnitFactorization(sign, k % n, m % n)


def s_unit_classes(n: int) -> list[QuadInt]:
    """The 2 * n * n representatives sign * e^i * 2^k, 0 <= i, k < n."""
    return [
        eps_pow(i) * (sign * (1 << k))
        for sign in (1, -1)
        for i in range(n)
        for k in range(n)
    ]


# -- factored text form --------------------------------------------------------


def format_factored(
    sign: int, eps_exp: int, two_exp: int, cofactor: QuadInt = ONE, power: int = 1
) -> str:
    parts = []
    if eps_exp:
        parts.append(f"e^{eps_exp}")
    if two_exp:
        parts.append(f"2^{two_exp}")
    if cofactor != ONE or not parts:
        base = f"({format_quad(cofactor)})"
        parts.append(base if power == 1 else f"{base}^{power}")
    return ("+" if sign > 0 else "-") + "*".join(parts)


_FACTORED_RE = re.compile(
    r"^(?P<sign>[+-])"
    r"(?:e\^(?P<k>-?\d+)\*?|e\*?(?=2|\(|$))?"
    r"(?:2\^(?P<m>\d+)\*?)?"
    r"(?:\((?P<c>[^()]*)\)(?:\^(?P<p>\d+))?)?$"
)


def parse_factored(text: str) -> tuple[int, int, int, QuadInt, int]:
    """Parse ``[+|-]e^k*2^m*(c)^p``; returns (sign, k, m, c, p)."""
    s = text.replace(" ", "")
    m = _FACTORED_RE.match(s)
    if m is None or s in "+-":
        raise ValueError(f"malformed factored form: {text!r}")
    sign = 1 if m.group("sign") == "+" else -1
    if m.group("k") is not None:
        k = int(m.group("k"))
    elif s[1:2] == "e":
        k = 1
    else:
        k = 0
    two = int(m.group("m")) if m.group("m") else 0
    c = parse_quad(m.group("c")) if m.group("c") is not None else ONE
    p = int(m.group("p")) if m.group("p") else 1
    return sign, k, two, c, p


def factored_value(sign: int, k: int, m: int, c: QuadInt = ONE, p: int = 1) -> QuadInt:
    return eps_pow(k) * (sign * (1 << m)) * c**p


# -- fractions over Z[e] ---------------------------------------------------------


@dataclass(frozen=True)
class QuadRat:
    """num / den with den a positive rational integer, in lowest terms."""

    num: QuadInt
    den: int = 1

    def __post_init__(self) -> None:
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        g = gcd(gcd(self.num.a, self.num.b), self.den)
        if self.den < 0:
            g = -g
        if g not in (1,):
            object.__setattr__(self, "num", self.num.exact_div(g))
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def of(cls, x: QuadInt | int | QuadRat) -> QuadRat:
        if isinstance(x, QuadRat):
            return x
        return cls(QuadInt.coerce(x), 1)

    def __add__(self, other) -> QuadRat:
        o = QuadRat.of(other)
        return QuadRat(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, other) -> QuadRat:
        return self + (-QuadRat.of(other))

    def __neg__(self) -> QuadRat:
        return QuadRat(-self.num, self.den)

    def __mul__(self, other) -> QuadRat:
        o = QuadRat.of(other)
        return QuadRat(self.num * o.num, self.den * o.den)

    def __truediv__(self, other) -> QuadRat:
        o = QuadRat.of(other)
        n = o.num.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        # 1/(p/q) = q conj(p) / N(p)
        num = self.num * o.num.conj() * o.den
        den = self.den * n
        if den < 0:
            num, den = -num, -den
        return QuadRat(num, den)

    def __pow__(self, n: int) -> QuadRat:
        if n < 0:
            return QuadRat.of(1) / self**(-n)
        return QuadRat(self.num**n, self.den**n)

    def is_integral(self) -> bool:
        return self.den == 1

    def to_int(self) -> QuadInt:
        if self.den != 1:
            raise NotDivisible(f"{self} is not integral")
        return self.num

    def conj(self) -> QuadRat:
        return QuadRat(self.num.conj(), self.den)

    def __str__(self) -> str:
        if self.den == 1:
            return format_quad(self.num)
        return f"({format_quad(self.num)})/{self.den}"
