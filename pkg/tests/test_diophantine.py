import random

import pytest

from egr5.diophantine import (
    Family,
    NotASolution,
    UnitEqSolution,
    canonicalize,
    pell_triple_of,
    two_power_factorization,
    reduction_a_bound,
    solve_all,
    solve_lucas,
    solve_pell_pairs,
    solve_unit_equation,
)
from egr5.qfield import ONE, QuadInt, eps_pow

from printed_rows import PRINTED

E = eps_pow


@pytest.fixture(scope="module")
def orbits():
    return solve_all()


def test_orbit_counts(orbits):
    assert {f: len(o) for f, o in orbits.items()} == {
        Family.TWO_X2: 4, Family.X2: 4, Family.X2_2UV: 5, Family.X2_2A: 6,
    }


def test_printed_rows_are_solutions():
    for label, sol in PRINTED.items():
        assert sol.is_valid(), label


def test_orbits_match_printed_rows(orbits):
    computed = {o.canonical for fam in orbits.values() for o in fam}
    printed = {canonicalize(s) for s in PRINTED.values()}
    assert computed == printed
    assert len(printed) == 19


def test_every_solution_resubstitutes(orbits):
    for fam in orbits.values():
        for o in fam:
            assert o.canonical.is_valid()
            assert o.orbit_size_within_bound > 0


def test_saturation_between_bounds():
    half = solve_all(exp_bound=20)
    full = solve_all(exp_bound=40)
    for f in Family:
        assert [o.canonical for o in half[f]] == [o.canonical for o in full[f]]


def test_x2_2a_reps_have_v_one(orbits):
    for o in orbits[Family.X2_2A]:
        assert o.canonical.v == ONE and o.canonical.a >= 2
    assert sorted(o.canonical.a for o in orbits[Family.X2_2A]) == [2, 2, 3, 3, 3, 4]


def test_canonicalize_examples():
    # the two forms differ only by the order convention; same orbit, and x is
    # sign-normalised in both
    g = UnitEqSolution(Family.X2, 0, E(2), -E(1), QuadInt(-1))
    g_pos = UnitEqSolution(Family.X2, 0, E(2), -E(1), QuadInt(1))
    assert canonicalize(g) == canonicalize(g_pos)
    b_scaled = UnitEqSolution(Family.TWO_X2, 0, E(2), E(2), E(1))
    assert canonicalize(b_scaled) == UnitEqSolution(Family.TWO_X2, 0, ONE, ONE, ONE)
    f_conj = UnitEqSolution(Family.X2, 0, E(1).conj(), E(1), ONE)
    assert canonicalize(f_conj) == UnitEqSolution(Family.X2, 0, E(1), E(1).conj(), ONE)


def test_canonicalize_rejects_non_solutions():
    with pytest.raises(NotASolution):
        canonicalize(UnitEqSolution(Family.X2, 0, ONE, ONE, ONE))


def _random_orbit_element(sol: UnitEqSolution, rng: random.Random) -> UnitEqSolution:
    s = sol
    if rng.random() < 0.5:
        s = s.conj()
    if s.family.symmetric and rng.random() < 0.5:
        s = s.swap()
    w = eps_pow(rng.randint(-15, 15)) * rng.choice((1, -1))
    s = s.scale(w)
    if rng.random() < 0.5:
        s = UnitEqSolution(s.family, s.a, s.u, s.v, -s.x)
    return s


def test_canonicalize_idempotent_and_orbit_invariant(orbits):
    rng = random.Random(11)
    for fam in orbits.values():
        for o in fam:
            c = o.canonical
            assert canonicalize(c) == c
            for _ in range(25):
                assert canonicalize(_random_orbit_element(c, rng)) == c


def test_bound_precondition():
    with pytest.raises(ValueError):
        solve_unit_equation(Family.X2, exp_bound=10)


def test_lucas():
    assert solve_lucas("X2", 500) == [(1, 1), (3, 2)]
    assert solve_lucas("2X2", 500) == [(-6, 3), (0, 1), (6, 3)]
    assert solve_lucas("X2", 2) == [(1, 1)]


def test_pell_pairs():
    first, second = solve_pell_pairs(100)
    assert set(first) == {(1, y, z) for y in (1, -1) for z in (1, -1)} | {(-5, y, z) for y in (1, -1) for z in (5, -5)}
    assert set(second) == {(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)} | {
        (x, y, z) for x in (41, -41) for y in (29, -29) for z in (13, -13)
    }
    assert set(solve_pell_pairs(10)[1]) == {(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)}
    big1, big2 = solve_pell_pairs(10**6)
    assert (set(big1), set(big2)) == (set(first), set(second))


def test_pell_triples_satisfy_equations():
    first, second = solve_pell_pairs(10**6)
    for x, y, z in first:
        assert (x + 2) ** 2 - 10 * y * y == -1 and (x - 2) ** 2 - 2 * z * z == -1
    for x, y, z in second:
        assert x * x - 2 * y * y == -1 and x * x - 10 * z * z == -9


def test_two_power_factorisation(orbits):
    for o in orbits[Family.X2_2A]:
        u1, u2 = two_power_factorization(o.canonical)
        assert u1.is_unit() and u2.is_unit()


def test_a_bound_from_reduction(orbits):
    assert reduction_a_bound(orbits[Family.TWO_X2], orbits[Family.X2]) == 4
    # nothing appears between the reduction bound and a_max = 8
    assert max(o.canonical.a for o in orbits[Family.X2_2A]) == 4


def test_pell_cross_check(orbits):
    first, second = solve_pell_pairs(10**6)
    systems = {1: set(first), 2: set(second)}
    seen = 0
    for o in orbits[Family.X2_2UV]:
        if abs(o.canonical.x.norm()) < 5:
            continue
        system, triple = pell_triple_of(o.canonical)
        assert triple in systems[system]
        seen += 1
    assert seen >= 1


def test_eight_plus_fifteen_e():
    assert QuadInt(8, 15) * QuadInt(8, 15) == 2 * E(13) + E(1).conj()
