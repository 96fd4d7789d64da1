import itertools
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from freese.algebra import Congruence, FiniteAlgebra, Operation, all_partitions, no_op_algebra
from freese.io import parse_partition

DATA = Path(__file__).resolve().parent.parent / "data"


def xor_algebra() -> FiniteAlgebra:
    x = np.arange(4)
    return FiniteAlgebra("Z2Z2", 4, (Operation("xor", 2, x[:, None] ^ x[None, :]),))


def part(text, n):
    return parse_partition(text, n)


def naive_is_congruence(algebra, theta) -> bool:
    """Loop over every pair of related argument tuples; no vectorization."""
    b = theta.blocks
    n = algebra.size
    for op in algebra.ops:
        table = np.asarray(op.table)
        for xs in itertools.product(range(n), repeat=op.arity):
            for ys in itertools.product(range(n), repeat=op.arity):
                if all(b[x] == b[y] for x, y in zip(xs, ys)):
                    if b[int(table[xs])] != b[int(table[ys])]:
                        return False
    return True


def brute_force_con(algebra):
    return [p for p in all_partitions(algebra.size) if naive_is_congruence(algebra, p)]


@pytest.fixture
def example_a():
    A = no_op_algebra(6, "A")
    return A, dict(beta=part("|1,2|3,4|5,6|", 6), gamma=part("|2,3|4,5|", 6),
                   alpha=part("|2,3|4,5|1,6|", 6))


@pytest.fixture
def example_b():
    B = no_op_algebra(4, "B")
    return B, dict(beta=part("|1,3|2,4|", 4), gamma=part("|1,2|", 4), alpha=part("|1,2|3,4|", 4))


@pytest.fixture
def z2z2():
    return xor_algebra()


@st.composite
def small_algebras(draw, min_size=1, max_size=4, max_ops=2):
    n = draw(st.integers(min_size, max_size))
    k = draw(st.integers(0, max_ops))
    ops = []
    for i in range(k):
        arity = draw(st.integers(0, 2))
        entries = draw(st.lists(st.integers(0, n - 1), min_size=n ** arity, max_size=n ** arity))
        ops.append(Operation(f"f{i}", arity, np.array(entries).reshape((n,) * arity)))
    return FiniteAlgebra("H", n, tuple(ops))


def random_algebra(rng, sizes=(3, 6), max_ops=2) -> FiniteAlgebra:
    n = int(rng.integers(sizes[0], sizes[1] + 1))
    k = int(rng.integers(0, max_ops + 1))
    ops = []
    for i in range(k):
        arity = int(rng.integers(1, 3))
        ops.append(Operation(f"f{i}", arity, rng.integers(0, n, size=(n,) * arity)))
    return FiniteAlgebra("R", n, tuple(ops))
