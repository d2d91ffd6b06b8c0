"""Hauptmodul values t on X0(2) and the j-invariants j(t) = (t + 16)^3 / t."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diophantine import Family, SolutionOrbit, UnitEqSolution, solve_all
from .qfield import (
    QuadInt,
    QuadRat,
    SUnitFactorization,
    cbrt_exact,
    eps_pow,
    format_factored,
    s_unit_factor,
    v2,
)

DUALITY = QuadInt(4096)


class PipelineError(ArithmeticError):
    """An exactness assumption of the pipeline failed."""


@dataclass(frozen=True)
class TValue:
    value: QuadInt
    factored: SUnitFactorization
    sources: tuple[UnitEqSolution, ...] = field(default=(), compare=False)

    @classmethod
    def of(cls, value: QuadInt, sources=()) -> TValue:
        f = s_unit_factor(value)
        if not f.is_s_unit():
            raise PipelineError(f"t = {value} is not an S-unit")
        return cls(value, f, tuple(sources))

    def dual(self) -> QuadInt:
        return DUALITY.exact_div(self.value)


@dataclass(frozen=True)
class JFactored:
    sign: int
    eps_exp: int
    two_exp: int
    cube_root: QuadInt

    def value(self) -> QuadInt:
        return eps_pow(self.eps_exp) * (self.sign * (1 << self.two_exp)) * self.cube_root**3

    def __str__(self) -> str:
        return format_factored(self.sign, self.eps_exp, self.two_exp, self.cube_root, power=3)


@dataclass(frozen=True)
class JRecord:
    code: int
    j: QuadInt
    factored_form: JFactored
    in_table: bool = True


def t_of_solution(sol: UnitEqSolution) -> TValue:
    if sol.family.first_kind:
        t = QuadRat.of(64 * sol.u) / sol.v
    else:
        t = QuadRat.of(64 * sol.v) / ((1 << sol.a) * sol.u)
    if not t.is_integral():
        raise PipelineError(f"non-integral t = {t} from {sol}")
    return TValue.of(t.num, (sol,))


def close_t_set(seed) -> list[TValue]:
    """Closure under conjugation and t -> 4096/t, sorted by value."""
    found: dict[QuadInt, list[UnitEqSolution]] = {}
    todo = []
    for t in seed:
        if not isinstance(t, TValue):
            t = TValue.of(QuadInt.coerce(t))
        found.setdefault(t.value, []).extend(t.sources)
        todo.append(t.value)
    while todo:
        t = todo.pop()
        for image in (t.conj(), DUALITY.exact_div(t)):
            if image not in found:
                found[image] = []
                todo.append(image)
    return [TValue.of(t, found[t]) for t in sorted(found, key=QuadInt.key)]


def j_of_t(t: TValue | QuadInt | int) -> QuadInt:
    value = t.value if isinstance(t, TValue) else QuadInt.coerce(t)
    if value.is_zero():
        raise ValueError("j(t) is undefined at t = 0")
    j = QuadRat.of((value + 16) ** 3) / value
    if not j.is_integral():
        raise PipelineError(f"j({value}) = {j} is not integral")
    return j.num


def factored_j(j: QuadInt) -> JFactored:
    """j = sign * e^k * 2^m * y^3 with y coprime to 2."""
    f = s_unit_factor(j)
    for shift in (0, 1, -1):
        y = cbrt_exact(f.cofactor * eps_pow(-shift))
        if y is not None:
            out = JFactored(f.sign, f.eps_exp + shift, f.two_exp, y)
            if out.value() != j:
                raise PipelineError(f"factorisation of {j} does not recombine")
            return out
    raise PipelineError(f"unfactorable: {j} is not an S-unit times a cube")


@dataclass
class Table1Result:
    t_values: list[TValue]
    j_records: list[JRecord]
    t_to_code: dict[QuadInt, int]
    orbits: dict[Family, list[SolutionOrbit]]

    def unlisted_t(self) -> list[TValue]:
        listed = {r.code for r in self.j_records if r.in_table}
        return [t for t in self.t_values if self.t_to_code[t.value] not in listed]


def enumerate_table1(code_of_j: dict[QuadInt, int] | None = None, exp_bound: int = 40, a_max: int = 8) -> Table1Result:
    """Solve every family, map to t, close, and compute the j-invariants.

    ``code_of_j`` maps known j-values to their table codes; j-values not in it
    are numbered after the largest known code, in order of value.
    """
    orbits = solve_all(a_max=a_max, exp_bound=exp_bound)
    seeds = [t_of_solution(o.canonical) for fam in orbits.values() for o in fam]
    t_values = close_t_set(seeds)
    for t in t_values:
        if not 2 <= v2(t.value) <= 10:
            raise PipelineError(f"v2({t.value}) outside [2, 10]")

    code_of_j = dict(code_of_j or {})
    j_of = {t.value: j_of_t(t) for t in t_values}
    next_code = max(code_of_j.values(), default=0) + 1
    records: dict[QuadInt, JRecord] = {}
    for j in sorted(set(j_of.values()), key=QuadInt.key):
        code = code_of_j.get(j)
        in_table = code is not None
        if code is None:
            code, next_code = next_code, next_code + 1
        records[j] = JRecord(code, j, factored_j(j), in_table)
    j_records = sorted(records.values(), key=lambda r: r.code)
    t_to_code = {t: records[j].code for t, j in j_of.items()}
    return Table1Result(t_values, j_records, t_to_code, orbits)
