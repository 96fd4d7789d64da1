"""Finite algebras given by operation tables, and their congruences.

Elements are 0-indexed internally.  A congruence is stored in canonical
form: ``blocks[x]`` is the least element of the block containing ``x``,
so two partitions are equal exactly when their block tuples are equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, LimitExceeded

DEFAULT_MAX_CON = 100_000
DEFAULT_MAX_UNIVERSE = 100_000


@dataclass(frozen=True)
class Operation:
    name: str
    arity: int
    table: np.ndarray = field(compare=False, repr=False)

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64)
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    def __call__(self, *args):
        return int(self.table[tuple(args)])


@dataclass(frozen=True)
class FiniteAlgebra:
    """Universe ``0..size-1`` together with finitely many total operations."""

    name: str
    size: int
    ops: tuple = ()

    def __post_init__(self):
        if self.size < 1:
            raise DomainError("universe must be nonempty")
        ops = []
        for op in self.ops:
            if not isinstance(op, Operation):
                op = Operation(*op)
            if op.arity < 0:
                raise DomainError(f"operation {op.name}: negative arity")
            shape = (self.size,) * op.arity
            if op.table.shape != shape:
                if op.table.size != self.size ** op.arity:
                    raise DomainError(
                        f"operation {op.name}: expected {self.size ** op.arity} "
                        f"entries, got {op.table.size}")
                op = Operation(op.name, op.arity, op.table.reshape(shape))
            if op.table.size and (op.table.min() < 0 or op.table.max() >= self.size):
                raise DomainError(f"operation {op.name}: table entry out of range")
            ops.append(op)
        object.__setattr__(self, "ops", tuple(ops))

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (self.size == other.size
                and len(self.ops) == len(other.ops)
                and all(a.name == b.name and a.arity == b.arity
                        and np.array_equal(a.table, b.table)
                        for a, b in zip(self.ops, other.ops)))

    def __hash__(self):
        return hash((self.size, tuple((op.name, op.arity) for op in self.ops)))

    def op(self, name):
        for op in self.ops:
            if op.name == name:
                return op
        raise KeyError(name)

    def is_congruence(self, theta: Congruence) -> bool:
        """Check compatibility of ``theta`` with every operation."""
        if theta.size != self.size:
            return False
        lab = theta.array
        for op in self.ops:
            for i in range(op.arity):
                # moving one argument inside its block must not change the block of the value
                moved = np.take(op.table, lab, axis=i)
                if not np.array_equal(lab[moved], lab[op.table]):
                    return False
        return True


def _canonical(labels) -> tuple:
    first = {}
    out = []
    for x, key in enumerate(labels):
        out.append(first.setdefault(key, x))
    return tuple(out)


@dataclass(frozen=True)
class Congruence:
    """A partition of ``0..n-1`` in canonical block-id form.

    Comparison operators follow the refinement order, so ``theta <= phi``
    means every block of ``theta`` lies inside a block of ``phi``.
    """

    blocks: tuple

    def __post_init__(self):
        b = tuple(int(x) for x in self.blocks)
        for x, r in enumerate(b):
            if r > x or b[r] != r:
                raise DomainError("block ids are not in canonical form")
        object.__setattr__(self, "blocks", b)

    @classmethod
    def from_labels(cls, labels) -> Congruence:
        return cls(_canonical(labels))

    @classmethod
    def identity(cls, n) -> Congruence:
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n) -> Congruence:
        return cls((0,) * n)

    @classmethod
    def from_blocks(cls, n, blocks: Iterable[Iterable[int]]) -> Congruence:
        """Build from explicit blocks; unlisted elements are singletons."""
        uf = _UnionFind(n)
        for block in blocks:
            block = list(block)
            for x in block:
                if not 0 <= x < n:
                    raise DomainError(f"element {x} outside universe of size {n}")
            for x in block[1:]:
                uf.union(block[0], x)
        return uf.congruence()

    @classmethod
    def from_pairs(cls, n, pairs) -> Congruence:
        return cls.from_blocks(n, ([a, b] for a, b in pairs))

    @property
    def size(self) -> int:
        return len(self.blocks)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.blocks, dtype=np.int64)
        a.flags.writeable = False
        return a

    def related(self, a, b) -> bool:
        return self.blocks[a] == self.blocks[b]

    def classes(self) -> list:
        out = {}
        for x, r in enumerate(self.blocks):
            out.setdefault(r, []).append(x)
        return list(out.values())

    def num_blocks(self) -> int:
        return sum(1 for x, r in enumerate(self.blocks) if x == r)

    def is_identity(self) -> bool:
        return all(x == r for x, r in enumerate(self.blocks))

    def is_total(self) -> bool:
        return all(r == 0 for r in self.blocks)

    def pairs(self):
        for cls_ in self.classes():
            for a in cls_:
                for b in cls_:
                    yield a, b

    def relation(self) -> BinaryRelation:
        a = self.array
        return BinaryRelation(a[:, None] == a[None, :])

    def __le__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        _same_size(self, other)
        ob = other.blocks
        return all(ob[x] == ob[r] for x, r in enumerate(self.blocks))

    def __lt__(self, other):
        return self != other and self <= other

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __str__(self):
        from .io import format_partition
        return format_partition(self)


class BinaryRelation:
    """A binary relation on ``0..n-1`` held as a boolean adjacency matrix."""

    def __init__(self, matrix):
        m = np.array(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError("relation matrix must be square")
        m.flags.writeable = False
        self.matrix = m

    @classmethod
    def from_pairs(cls, n, pairs) -> BinaryRelation:
        m = np.zeros((n, n), dtype=bool)
        for a, b in pairs:
            m[a, b] = True
        return cls(m)

    @classmethod
    def identity(cls, n) -> BinaryRelation:
        return cls(np.eye(n, dtype=bool))

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def pairs(self) -> frozenset:
        return frozenset(zip(*map(lambda a: a.tolist(), np.nonzero(self.matrix))))

    def __contains__(self, pair):
        a, b = pair
        return bool(self.matrix[a, b])

    def __len__(self):
        return int(self.matrix.sum())

    def __eq__(self, other):
        if isinstance(other, Congruence):
            other = other.relation()
        if not isinstance(other, BinaryRelation):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.size, self.matrix.tobytes()))

    def __le__(self, other):
        other = _as_matrix(other)
        return bool(np.all(~self.matrix | other))

    def __and__(self, other):
        return BinaryRelation(self.matrix & _as_matrix(other))

    def __or__(self, other):
        return BinaryRelation(self.matrix | _as_matrix(other))

    def __sub__(self, other):
        return BinaryRelation(self.matrix & ~_as_matrix(other))

    def reflexive_closure(self) -> BinaryRelation:
        return BinaryRelation(self.matrix | np.eye(self.size, dtype=bool))

    def __repr__(self):
        return f"BinaryRelation(size={self.size}, pairs={len(self)})"


def _as_matrix(r) -> np.ndarray:
    if isinstance(r, Congruence):
        return r.relation().matrix
    if isinstance(r, BinaryRelation):
        return r.matrix
    raise TypeError(f"expected a relation, got {type(r).__name__}")


def _same_size(a, b):
    if a.size != b.size:
        raise DomainError(f"size mismatch: {a.size} vs {b.size}")


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def congruence(self) -> Congruence:
        # roots are always the minimum of their class because union keeps the smaller root
        return Congruence(tuple(self.find(x) for x in range(len(self.parent))))


def _translation_images(op: Operation, x: int, y: int):
    """Pairs (t(x), t(y)) for every unary translation t built from ``op``."""
    for i in range(op.arity):
        vx = np.take(op.table, x, axis=i).ravel()
        vy = np.take(op.table, y, axis=i).ravel()
        diff = vx != vy
        if diff.any():
            yield from zip(vx[diff].tolist(), vy[diff].tolist())


def _close(algebra: FiniteAlgebra, uf: _UnionFind, pending: list) -> Congruence:
    # every merged pair is pushed once; its translates generate the rest
    while pending:
        x, y = pending.pop()
        for op in algebra.ops:
            for u, v in _translation_images(op, x, y):
                if uf.union(u, v):
                    pending.append((u, v))
    return uf.congruence()


def principal_congruence(algebra: FiniteAlgebra, a: int, b: int) -> Congruence:
    """Cg(a, b): the least congruence identifying ``a`` and ``b``."""
    n = algebra.size
    if not (0 <= a < n and 0 <= b < n):
        raise DomainError(f"elements ({a}, {b}) outside universe of size {n}")
    uf = _UnionFind(n)
    pending = [(a, b)] if uf.union(a, b) else []
    return _close(algebra, uf, pending)


def congruence_generated(algebra: FiniteAlgebra, pairs) -> Congruence:
    uf = _UnionFind(algebra.size)
    pending = [(a, b) for a, b in pairs if uf.union(a, b)]
    return _close(algebra, uf, pending)


def partition_join(theta: Congruence, phi: Congruence) -> Congruence:
    _same_size(theta, phi)
    uf = _UnionFind(theta.size)
    uf.parent = list(theta.blocks)
    for x, r in enumerate(phi.blocks):
        if x != r:
            uf.union(x, r)
    return uf.congruence()


def congruence_join(algebra: FiniteAlgebra | None, theta: Congruence, phi: Congruence) -> Congruence:
    """Join in Con(A).

    The transitive closure of the union of two congruences is again
    compatible, so the algebra is only used for a size check.
    """
    if algebra is not None and theta.size != algebra.size:
        raise DomainError("congruence does not live on this algebra")
    return partition_join(theta, phi)


def congruence_meet(theta: Congruence, phi: Congruence) -> Congruence:
    _same_size(theta, phi)
    return Congruence.from_labels(zip(theta.blocks, phi.blocks))


def compose(r, s) -> BinaryRelation:
    """Relational product r ∘ s = {(a, c) : a r b and b s c for some b}."""
    mr, ms = _as_matrix(r), _as_matrix(s)
    if mr.shape != ms.shape:
        raise DomainError(f"size mismatch: {mr.shape[0]} vs {ms.shape[0]}")
    prod = mr.astype(np.int32) @ ms.astype(np.int32)
    return BinaryRelation(prod > 0)


def compose_alternating(r, s, k: int) -> BinaryRelation:
    """r ∘ s ∘ r ∘ ... with ``k`` factors."""
    if k < 1:
        raise DomainError("need at least one factor")
    factors = [r, s]
    out = r if isinstance(r, BinaryRelation) else r.relation()
    for i in range(1, k):
        out = compose(out, factors[i % 2])
    return out


def permute_check(theta, phi, k: int = 2) -> bool:
    """True iff theta and phi k-permute (k = 2 is ordinary permutability)."""
    if k < 2:
        raise DomainError("k must be at least 2")
    return compose_alternating(theta, phi, k) == compose_alternating(phi, theta, k)


def _sort_key(theta: Congruence):
    return (-theta.num_blocks(), theta.blocks)


def enumerate_con(algebra: FiniteAlgebra, limit: int | None = DEFAULT_MAX_CON) -> list:
    """All congruences of ``algebra``, finest first.

    Every congruence is a join of principal ones, so the join-closure of
    the principal congruences together with 0_A is all of Con(A).
    """
    n = algebra.size
    zero = Congruence.identity(n)
    principals = []
    seen = {zero}
    for a, b in itertools.combinations(range(n), 2):
        c = principal_congruence(algebra, a, b)
        if c not in seen:
            seen.add(c)
            principals.append(c)
    if limit is not None and len(seen) > limit:
        raise LimitExceeded(f"more than {limit} congruences")
    frontier = list(principals)
    while frontier:
        fresh = []
        for c in frontier:
            for p in principals:
                j = partition_join(c, p)
                if j not in seen:
                    seen.add(j)
                    fresh.append(j)
                    if limit is not None and len(seen) > limit:
                        raise LimitExceeded(f"more than {limit} congruences")
        frontier = fresh
    return sorted(seen, key=_sort_key)


def power_subalgebra(algebra: FiniteAlgebra, alpha: Congruence, n: int = 2,
                     max_universe: int = DEFAULT_MAX_UNIVERSE):
    """The subalgebra of A^n on alpha-coherent tuples.

    Returns ``(algebra, tuples)`` where ``tuples[i]`` is the n-tuple that
    new element ``i`` stands for; tuples are in lexicographic order.
    """
    if n < 1:
        raise DomainError("power must be at least 1")
    if alpha.size != algebra.size:
        raise DomainError("congruence does not live on this algebra")
    size = sum(len(c) ** n for c in alpha.classes())
    if size > max_universe:
        raise LimitExceeded(f"A^{n}(alpha) would have {size} elements (bound {max_universe})")
    tuples = sorted(t for c in alpha.classes() for t in itertools.product(c, repeat=n))
    coords = np.array(tuples, dtype=np.int64).reshape(len(tuples), n)
    weights = algebra.size ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = coords @ weights
    m = len(tuples)
    ops = []
    for op in algebra.ops:
        if op.arity == 0:
            const = np.full(n, int(op.table))
            table = np.searchsorted(codes, const @ weights)
        else:
            grid = np.indices((m,) * op.arity)
            out_code = np.zeros((m,) * op.arity, dtype=np.int64)
            for j in range(n):
                args = tuple(coords[g, j] for g in grid)
                out_code += op.table[args] * weights[j]
            table = np.searchsorted(codes, out_code)
        ops.append(Operation(op.name, op.arity, table))
    name = f"{algebra.name}^{n}" if n != 2 else f"{algebra.name}(alpha)"
    return FiniteAlgebra(name, m, tuple(ops)), tuples


def quotient(algebra: FiniteAlgebra, theta: Congruence):
    """A/theta, with elements numbered by block in order of least member.

    Returns ``(quotient_algebra, project)`` where ``project`` maps a
    congruence above theta to the corresponding congruence of A/theta.
    """
    if not algebra.is_congruence(theta):
        raise DomainError("not a congruence of this algebra")
    reps = [x for x, r in enumerate(theta.blocks) if x == r]
    index = {r: i for i, r in enumerate(reps)}
    to_block = np.array([index[r] for r in theta.blocks], dtype=np.int64)
    rep_arr = np.array(reps, dtype=np.int64)
    ops = []
    for op in algebra.ops:
        if op.arity == 0:
            table = to_block[int(op.table)]
        else:
            table = to_block[op.table[np.ix_(*([rep_arr] * op.arity))]]
        ops.append(Operation(op.name, op.arity, table))
    quo = FiniteAlgebra(f"{algebra.name}/theta", len(reps), tuple(ops))

    def project(phi: Congruence) -> Congruence:
        if not theta <= phi:
            raise DomainError("congruence is not above the quotient kernel")
        return Congruence.from_labels(phi.blocks[r] for r in reps)

    return quo, project


def no_op_algebra(n: int, name: str = "A") -> FiniteAlgebra:
    return FiniteAlgebra(name, n, ())


def all_partitions(n: int) -> list:
    """Every partition of an n-set (Bell(n) of them), finest first."""
    def rgs(prefix, m):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(m + 1):
            yield from rgs(prefix + [v], max(m, v + 1))
    out = [Congruence.from_labels(s) for s in rgs([], 0)] if n else []
    return sorted(out, key=_sort_key)


def con_order(cons: Sequence[Congruence]) -> np.ndarray:
    """Boolean matrix ``leq[i, j]`` = cons[i] <= cons[j], vectorized."""
    b = np.array([c.blocks for c in cons], dtype=np.int64)
    # theta <= phi  iff  phi[x] == phi[theta[x]] for all x
    gathered = np.take_along_axis(b[None, :, :].repeat(len(cons), 0),
                                  b[:, None, :].repeat(len(cons), 1), axis=2)
    return np.all(gathered == b[None, :, :], axis=2)
