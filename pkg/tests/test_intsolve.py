"""Integer linear systems: solutions replay through check_solution,
refusals come with a replayable functional certificate."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from qmprobe.intsolve import (
    UnsatCertificate,
    check_solution,
    check_unsat_certificate,
    solve_integer_system,
)


def test_simple_solvable_system():
    columns = [{"x": 1, "y": 1}, {"y": 1}]
    rhs = {"x": 3, "y": 5}
    got = solve_integer_system(columns, rhs)
    assert got == [3, 2]
    assert check_solution(columns, rhs, got)


def test_empty_rhs_solved_by_zeros():
    columns = [{"x": 2}, {"y": 7}]
    got = solve_integer_system(columns, {})
    assert got == [0, 0]
    assert check_solution(columns, {}, got)


def test_no_columns_nonzero_rhs_unsat():
    got = solve_integer_system([], {"x": 1})
    assert isinstance(got, UnsatCertificate)
    assert got.modulus == 0
    assert check_unsat_certificate([], {"x": 1}, got)


def test_divisibility_failure_gets_positive_modulus():
    # 2 y = 1 has no integer solution; the witness works mod 2
    columns = [{"x": 2}]
    rhs = {"x": 1}
    got = solve_integer_system(columns, rhs)
    assert isinstance(got, UnsatCertificate)
    assert got.modulus == 2
    assert check_unsat_certificate(columns, rhs, got)


def test_rational_inconsistency_gets_modulus_zero():
    # y = 1 and y = 2 cannot both hold
    columns = [{"x": 1, "z": 1}]
    rhs = {"x": 1, "z": 2}
    got = solve_integer_system(columns, rhs)
    assert isinstance(got, UnsatCertificate)
    assert got.modulus == 0
    assert check_unsat_certificate(columns, rhs, got)


def test_negative_coefficients():
    columns = [{"x": 2, "y": -1}, {"x": -3, "y": 2}]
    rhs = {"x": 1, "y": 1}
    got = solve_integer_system(columns, rhs)
    assert isinstance(got, list)
    assert check_solution(columns, rhs, got)


def test_redundant_columns_are_fine():
    columns = [{"x": 1}, {"x": 1}, {"x": 1}]
    rhs = {"x": 4}
    got = solve_integer_system(columns, rhs)
    assert isinstance(got, list)
    assert check_solution(columns, rhs, got)


def test_check_solution_rejects_wrong_answers():
    columns = [{"x": 1, "y": 1}, {"y": 1}]
    rhs = {"x": 3, "y": 5}
    assert not check_solution(columns, rhs, [3, 3])
    assert not check_solution(columns, rhs, [3])  # wrong arity
    # leftover support outside the rhs keys must vanish
    assert not check_solution([{"x": 1, "w": 1}], {"x": 1}, [1])


def test_check_unsat_rejects_bogus_certificates():
    columns = [{"x": 2}]
    rhs = {"x": 1}
    assert not check_unsat_certificate(columns, rhs, UnsatCertificate({"x": 2}, 0))
    assert not check_unsat_certificate(columns, rhs, UnsatCertificate({"x": 1}, -2))
    # a functional that kills the rhs as well proves nothing
    assert not check_unsat_certificate(columns, rhs, UnsatCertificate({}, 0))


def test_determinism_on_identical_input():
    columns = [{"x": 2, "y": 4}, {"x": 4, "y": 2}]
    rhs = {"x": 1, "y": 1}
    first = solve_integer_system(columns, rhs)
    second = solve_integer_system(columns, rhs)
    assert isinstance(first, UnsatCertificate)
    assert first == second


@settings(max_examples=80, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    nrows=st.integers(1, 5),
    ncols=st.integers(0, 6),
)
def test_random_systems_always_certified(seed, nrows, ncols):
    rng = random.Random(seed)
    keys = [f"r{i}" for i in range(nrows)]
    columns = [
        {k: rng.randint(-4, 4) for k in keys if rng.random() < 0.7}
        for _ in range(ncols)
    ]
    rhs = {k: rng.randint(-6, 6) for k in keys if rng.random() < 0.8}
    got = solve_integer_system(columns, rhs)
    if isinstance(got, list):
        assert check_solution(columns, rhs, got)
    else:
        assert check_unsat_certificate(columns, rhs, got)


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    nrows=st.integers(1, 4),
    ncols=st.integers(1, 5),
)
def test_planted_solutions_are_found(seed, nrows, ncols):
    rng = random.Random(seed)
    keys = [f"r{i}" for i in range(nrows)]
    columns = [
        {k: rng.randint(-3, 3) for k in keys} for _ in range(ncols)
    ]
    planted = [rng.randint(-5, 5) for _ in range(ncols)]
    rhs = {
        k: sum(col.get(k, 0) * y for col, y in zip(columns, planted))
        for k in keys
    }
    rhs = {k: v for k, v in rhs.items() if v}
    got = solve_integer_system(columns, rhs)
    assert isinstance(got, list), "a planted solution exists"
    assert check_solution(columns, rhs, got)
