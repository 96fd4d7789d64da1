import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_con, naive_is_congruence, part, small_algebras, xor_algebra
from freese.algebra import (
    BinaryRelation,
    Congruence,
    FiniteAlgebra,
    Operation,
    all_partitions,
    compose,
    congruence_join,
    congruence_meet,
    enumerate_con,
    no_op_algebra,
    permute_check,
    power_subalgebra,
    principal_congruence,
    quotient,
)
from freese.errors import DomainError, LimitExceeded


def test_congruence_canonical_form():
    c = Congruence.from_labels([7, 7, 3, 3, 7])
    assert c.blocks == (0, 0, 2, 2, 0)
    with pytest.raises(DomainError):
        Congruence((1, 1))


def test_identity_and_total_are_congruences(z2z2):
    assert z2z2.is_congruence(Congruence.identity(4))
    assert z2z2.is_congruence(Congruence.total(4))


def test_algebra_rejects_bad_tables():
    with pytest.raises(DomainError):
        FiniteAlgebra("X", 2, (Operation("f", 1, np.array([0, 2])),))
    with pytest.raises(DomainError):
        FiniteAlgebra("X", 2, (Operation("f", 2, np.array([0, 1, 1])),))


def test_principal_of_equal_elements_is_identity(z2z2):
    assert principal_congruence(z2z2, 2, 2) == Congruence.identity(4)


def test_principal_in_no_op_algebra_adds_nothing():
    A = no_op_algebra(6)
    assert principal_congruence(A, 0, 1) == part("|1,2|", 6)


def test_principal_xor_is_coset_partition(z2z2):
    cg = principal_congruence(z2z2, 0, 1)
    # oracle: least compatible partition containing (0,1), by brute force
    candidates = [p for p in brute_force_con(z2z2) if p.related(0, 1)]
    least = [p for p in candidates if all(p <= q for q in candidates)]
    assert least == [cg]
    assert cg == part("|1,2|3,4|", 4)


def test_join_with_identity(z2z2):
    theta = part("|1,2|3,4|", 4)
    assert congruence_join(z2z2, theta, Congruence.identity(4)) == theta


def test_pentagon_join_and_meets(example_a):
    A, p = example_a
    assert congruence_join(A, p["beta"], p["gamma"]).is_total()
    assert congruence_meet(p["alpha"], p["beta"]).is_identity()
    assert congruence_meet(p["gamma"], p["alpha"]) == p["gamma"]
    assert congruence_meet(p["gamma"], p["gamma"]) == p["gamma"]


def test_atoms_of_xor_join_to_total(z2z2):
    cons = brute_force_con(z2z2)
    atoms = [c for c in cons if c.num_blocks() == 2]
    for a in atoms:
        for b in atoms:
            if a != b:
                j = congruence_join(z2z2, a, b)
                uppers = [c for c in cons if a <= c and b <= c]
                assert all(j <= u for u in uppers) and j in uppers
                assert j.is_total()


def test_meet_size_mismatch():
    with pytest.raises(DomainError):
        congruence_meet(Congruence.identity(2), Congruence.identity(3))


def test_compose_examples(example_a, example_b):
    A, p = example_a
    r = part("|1,2|", 6).relation()
    assert compose(r, Congruence.identity(6)) == r
    bgb = compose(compose(p["beta"], p["gamma"]), p["beta"])
    assert (0, 3) in bgb
    B, q = example_b
    bgb = compose(compose(q["beta"], q["gamma"]), q["beta"])
    assert (2, 3) in bgb


def test_permute_examples(example_a, z2z2):
    A, p = example_a
    theta = p["beta"]
    assert permute_check(theta, theta, 2)
    assert not permute_check(p["beta"], p["gamma"], 2)
    atoms = [c for c in enumerate_con(z2z2) if c.num_blocks() == 2]
    for a in atoms:
        for b in atoms:
            assert permute_check(a, b, 2)
    with pytest.raises(DomainError):
        permute_check(theta, theta, 1)


def test_enumerate_con_oracles(z2z2):
    assert enumerate_con(no_op_algebra(1)) == [Congruence.identity(1)]
    cons = enumerate_con(z2z2)
    assert len(cons) == 5
    assert set(cons) == set(brute_force_con(z2z2))
    assert len(enumerate_con(no_op_algebra(4))) == 15
    with pytest.raises(LimitExceeded):
        enumerate_con(no_op_algebra(5), limit=20)


def test_all_partitions_bell_numbers():
    assert [len(all_partitions(n)) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]


def test_power_subalgebra_examples(example_a):
    A, p = example_a
    diag, tuples = power_subalgebra(A, Congruence.identity(6), 2)
    assert diag.size == 6 and tuples == [(i, i) for i in range(6)]
    doubled, _ = power_subalgebra(A, p["beta"], 2)
    assert doubled.size == 12
    full, tuples = power_subalgebra(A, Congruence.total(6), 2)
    assert full.size == 36 and tuples == sorted(tuples)
    with pytest.raises(LimitExceeded):
        power_subalgebra(A, Congruence.total(6), 2, max_universe=10)


def test_power_subalgebra_acts_coordinatewise(z2z2):
    alpha = part("|1,2|3,4|", 4)
    D, tuples = power_subalgebra(z2z2, alpha, 3)
    xor = D.op("xor")
    for i, t in enumerate(tuples):
        for j, u in enumerate(tuples):
            assert tuples[int(xor.table[i, j])] == tuple(a ^ b for a, b in zip(t, u))


def test_quotient_projects(z2z2):
    theta = part("|1,2|3,4|", 4)
    quo, project = quotient(z2z2, theta)
    assert quo.size == 2
    assert project(Congruence.total(4)).is_total()
    with pytest.raises(DomainError):
        project(part("|1,3|2,4|", 4))


@settings(max_examples=60, deadline=None)
@given(small_algebras(), st.data())
def test_join_meet_stay_compatible(A, data):
    cons = enumerate_con(A)
    t = data.draw(st.sampled_from(cons))
    f = data.draw(st.sampled_from(cons))
    assert naive_is_congruence(A, congruence_join(A, t, f))
    assert naive_is_congruence(A, congruence_meet(t, f))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.data())
def test_compose_associative(n, data):
    def rel():
        bits = data.draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
        return BinaryRelation(np.array(bits).reshape(n, n))
    r, s, t = rel(), rel(), rel()
    assert compose(compose(r, s), t) == compose(r, compose(s, t))


@settings(max_examples=40, deadline=None)
@given(small_algebras(max_size=4), st.data())
def test_permuting_means_product_is_join(A, data):
    cons = enumerate_con(A)
    t = data.draw(st.sampled_from(cons))
    f = data.draw(st.sampled_from(cons))
    if permute_check(t, f, 2):
        assert compose(t, f) == congruence_join(A, t, f).relation()


@settings(max_examples=40, deadline=None)
@given(small_algebras(min_size=2, max_size=4), st.data())
def test_principal_is_least(A, data):
    a = data.draw(st.integers(0, A.size - 1))
    b = data.draw(st.integers(0, A.size - 1))
    cg = principal_congruence(A, a, b)
    assert cg.related(a, b)
    for c in brute_force_con(A):
        if c.related(a, b):
            assert cg <= c


@settings(max_examples=40, deadline=None)
@given(small_algebras(), st.data())
def test_power_subalgebra_size(A, data):
    alpha = data.draw(st.sampled_from(enumerate_con(A)))
    D, _ = power_subalgebra(A, alpha, 2)
    assert D.size == sum(len(c) ** 2 for c in alpha.classes())
