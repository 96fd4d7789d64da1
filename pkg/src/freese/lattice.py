"""Explicit finite lattices: construction, sublattices, isomorphism, properties.

A :class:`FiniteLattice` stores its order as a boolean matrix and its
meet and join as integer tables.  Every constructor checks the tables
against the order exhaustively, which is cheap at the sizes used here
(a few hundred elements at most).
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

import numpy as np

from .algebra import (Congruence, FiniteAlgebra, Operation, congruence_meet,
                      enumerate_con, partition_join, _sort_key)
from .errors import DomainError, LimitExceeded
from .io import format_partition

DEFAULT_MAX_LATTICE = 10_000


class FiniteLattice:
    def __init__(self, leq, meet, join, labels=None, check=True):
        self.leq = np.array(leq, dtype=bool)
        self.meet = np.array(meet, dtype=np.int64)
        self.join = np.array(join, dtype=np.int64)
        for a in (self.leq, self.meet, self.join):
            a.flags.writeable = False
        n = self.leq.shape[0]
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise DomainError("one label per element required")
        self.labels = tuple(labels)
        if check:
            self._validate()
        below = self.leq.sum(axis=0)
        self.bottom = int(np.argmin(below))
        self.top = int(np.argmax(below))

    # -- construction ---------------------------------------------------

    @classmethod
    def from_leq(cls, leq, labels=None) -> FiniteLattice:
        leq = np.array(leq, dtype=bool)
        n = leq.shape[0]
        if n == 0:
            raise DomainError("a lattice needs at least one element")
        _check_partial_order(leq)
        meet = _bound_table(leq)
        join = _bound_table(leq.T)
        return cls(leq, meet, join, labels, check=True)

    @classmethod
    def from_covers(cls, n: int, covers, labels=None) -> FiniteLattice:
        """Build from Hasse-diagram edges ``(lower, upper)``."""
        leq = np.eye(n, dtype=bool)
        for a, b in covers:
            leq[a, b] = True
        leq = _transitive_closure(leq)
        return cls.from_leq(leq, labels)

    @classmethod
    def from_labeled_covers(cls, names: Sequence[str], covers) -> FiniteLattice:
        index = {name: i for i, name in enumerate(names)}
        return cls.from_covers(len(names), [(index[a], index[b]) for a, b in covers], names)

    def _validate(self):
        leq, meet, join = self.leq, self.meet, self.join
        n = leq.shape[0]
        if n == 0:
            raise DomainError("a lattice needs at least one element")
        if meet.shape != (n, n) or join.shape != (n, n):
            raise DomainError("meet/join tables have the wrong shape")
        _check_partial_order(leq)
        idx = np.arange(n)
        for x in range(n):
            m, j = meet[x], join[x]
            # meet is a lower bound of x and y, and every common lower bound is below it
            if not (leq[m, x].all() and leq[m, idx].all()):
                raise DomainError("meet table is not a lower bound")
            common = leq[:, x][:, None] & leq
            if not np.all(~common | leq[:, m]):
                raise DomainError("meet table is not the greatest lower bound")
            if not (leq[x, j].all() and leq[idx, j].all()):
                raise DomainError("join table is not an upper bound")
            common = leq[x, :][:, None] & leq.T
            if not np.all(~common | leq[j, :].T):
                raise DomainError("join table is not the least upper bound")
        # absorption follows from the bound properties, but it is the stated invariant
        if not (np.all(meet[idx[:, None], join] == idx[:, None])
                and np.all(join[idx[:, None], meet] == idx[:, None])):
            raise DomainError("absorption fails")

    # -- basic queries --------------------------------------------------

    def __len__(self):
        return self.leq.shape[0]

    @property
    def size(self) -> int:
        return len(self)

    def __repr__(self):
        return f"FiniteLattice(size={len(self)})"

    def le(self, a, b) -> bool:
        return bool(self.leq[a, b])

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def cover_matrix(self) -> np.ndarray:
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        # a < b with nothing strictly between
        between = (strict.astype(np.int32) @ strict.astype(np.int32)) > 0
        return strict & ~between

    def covers_list(self) -> list:
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(self.cover_matrix()))]

    def heights(self) -> np.ndarray:
        """Length of the longest chain from the bottom to each element."""
        cov = self.cover_matrix()
        h = np.zeros(len(self), dtype=np.int64)
        for x in np.argsort(self.leq.sum(axis=0), kind="stable"):
            lower = np.nonzero(cov[:, x])[0]
            if len(lower):
                h[x] = h[lower].max() + 1
        return h

    def depths(self) -> np.ndarray:
        return _reverse(self).heights()

    def structure_equal(self, other: FiniteLattice) -> bool:
        return len(self) == len(other) and np.array_equal(self.leq, other.leq)


def _check_partial_order(leq):
    n = leq.shape[0]
    if leq.shape != (n, n):
        raise DomainError("order matrix must be square")
    if not leq.diagonal().all():
        raise DomainError("order is not reflexive")
    if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
        raise DomainError("order is not antisymmetric")
    if not np.array_equal(_transitive_closure(leq), leq):
        raise DomainError("order is not transitive")


def _transitive_closure(leq):
    r = leq.copy()
    for k in range(r.shape[0]):
        r |= r[:, k][:, None] & r[k, :][None, :]
    return r


def _bound_table(leq) -> np.ndarray:
    """Greatest lower bounds for all pairs (pass leq.T for least upper bounds)."""
    n = leq.shape[0]
    down = leq.sum(axis=0)
    out = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        common = leq[:, x][:, None] & leq           # common[z, y]: z <= x and z <= y
        score = np.where(common, down[:, None], -1)
        cand = score.argmax(axis=0)
        ok = common[cand, np.arange(n)] & np.all(~common | leq[:, cand], axis=0)
        if not ok.all():
            y = int(np.nonzero(~ok)[0][0])
            raise DomainError(f"elements {x} and {y} have no greatest lower bound")
        out[x] = cand
    return out


def _reverse(L: FiniteLattice) -> FiniteLattice:
    return FiniteLattice(L.leq.T, L.join, L.meet, L.labels, check=False)


# -- sublattices -----------------------------------------------------------

def _closure(seeds, meet, join, max_elements=None):
    elems = list(dict.fromkeys(seeds))
    seen = set(elems)
    i = 0
    while i < len(elems):
        x = elems[i]
        for y in elems[:i + 1]:
            for z in (meet(x, y), join(x, y)):
                if z not in seen:
                    seen.add(z)
                    elems.append(z)
                    if max_elements is not None and len(elems) > max_elements:
                        raise LimitExceeded(f"sublattice exceeds {max_elements} elements")
        i += 1
    return elems


def _restrict(L: FiniteLattice, elems: Sequence[int]) -> FiniteLattice:
    elems = list(elems)
    pos = {e: i for i, e in enumerate(elems)}
    ix = np.array(elems, dtype=np.int64)
    sub_meet = np.vectorize(pos.__getitem__, otypes=[np.int64])(L.meet[np.ix_(ix, ix)])
    sub_join = np.vectorize(pos.__getitem__, otypes=[np.int64])(L.join[np.ix_(ix, ix)])
    return FiniteLattice(L.leq[np.ix_(ix, ix)], sub_meet, sub_join,
                         [L.labels[e] for e in elems], check=False)


def generated_sublattice(L: FiniteLattice, subset):
    """Smallest meet/join-closed subset containing ``subset``.

    Returns ``(sublattice, embedding)``; ``embedding[i]`` is the element
    of ``L`` that sublattice element ``i`` stands for, in increasing order.
    """
    subset = [int(s) for s in subset]
    if not subset:
        raise DomainError("generating set must be nonempty")
    elems = _closure(subset, lambda a, b: int(L.meet[a, b]), lambda a, b: int(L.join[a, b]))
    elems.sort()
    return _restrict(L, elems), elems


def filter_above(L: FiniteLattice, a: int) -> list:
    return [int(x) for x in np.nonzero(L.leq[a])[0]]


def ideal_below(L: FiniteLattice, a: int) -> list:
    return [int(x) for x in np.nonzero(L.leq[:, a])[0]]


def interval(L: FiniteLattice, a: int, b: int) -> FiniteLattice:
    if not L.leq[a, b]:
        raise DomainError(f"{L.labels[a]} is not below {L.labels[b]}")
    return _restrict(L, interval_elements(L, a, b))


def interval_elements(L: FiniteLattice, a: int, b: int) -> list:
    return [int(x) for x in np.nonzero(L.leq[a] & L.leq[:, b])[0]]


def covers(L: FiniteLattice, a: int, b: int) -> bool:
    """True iff a ≺ b, that is, the interval [a, b] has exactly two elements."""
    if not L.leq[a, b]:
        raise DomainError(f"{L.labels[a]} is not below {L.labels[b]}")
    return len(interval_elements(L, a, b)) == 2


def find_cover_in_interval(L: FiniteLattice, a: int, b: int):
    """Lexicographically least (x, y) with a <= x ≺ y <= b."""
    if not L.leq[a, b]:
        raise DomainError(f"{L.labels[a]} is not below {L.labels[b]}")
    if a == b:
        raise DomainError("interval is trivial")
    cov = L.cover_matrix()
    inside = interval_elements(L, a, b)
    for x in inside:
        for y in inside:
            if cov[x, y]:
                return x, y
    raise AssertionError("finite nontrivial interval without a covering pair")


# -- isomorphism -------------------------------------------------------------

def _invariants(L: FiniteLattice):
    cov = L.cover_matrix()
    return list(zip(L.heights().tolist(), L.depths().tolist(),
                    cov.sum(axis=1).tolist(), cov.sum(axis=0).tolist()))


def isomorphic(L: FiniteLattice, M: FiniteLattice):
    """Lexicographically least order isomorphism L -> M as a list, or None.

    An order isomorphism between lattices preserves meets and joins.
    Candidates are pruned by (height, depth, upper covers, lower covers).
    """
    n = len(L)
    if n != len(M):
        return None
    inv_l, inv_m = _invariants(L), _invariants(M)
    if sorted(inv_l) != sorted(inv_m):
        return None
    cands = [[y for y in range(n) if inv_m[y] == inv_l[x]] for x in range(n)]
    lq, mq = L.leq, M.leq
    f = [-1] * n
    used = [False] * n

    def extend(x):
        if x == n:
            return True
        for y in cands[x]:
            if used[y]:
                continue
            ok = True
            for z in range(x):
                fz = f[z]
                if lq[z, x] != mq[fz, y] or lq[x, z] != mq[y, fz]:
                    ok = False
                    break
            if ok:
                f[x] = y
                used[y] = True
                if extend(x + 1):
                    return True
                used[y] = False
        f[x] = -1
        return False

    return list(f) if extend(0) else None


def check_isomorphism(L: FiniteLattice, M: FiniteLattice, f) -> bool:
    if sorted(f) != list(range(len(M))) or len(f) != len(L):
        return False
    fa = np.array(f)
    return (np.array_equal(M.meet[np.ix_(fa, fa)], fa[L.meet])
            and np.array_equal(M.join[np.ix_(fa, fa)], fa[L.join]))


# -- lattice properties ------------------------------------------------------

def _grid(n, k):
    return np.ix_(*([np.arange(n)] * k))


def is_distributive(L: FiniteLattice) -> bool:
    m, j = L.meet, L.join
    a, b, c = _grid(len(L), 3)
    return bool(np.all(m[a, j[b, c]] == j[m[a, b], m[a, c]]))


def is_modular(L: FiniteLattice) -> bool:
    """c <= a implies a ∧ (b ∨ c) <= (a ∧ b) ∨ c."""
    m, j, leq = L.meet, L.join, L.leq
    a, b, c = _grid(len(L), 3)
    holds = leq[m[a, j[b, c]], j[m[a, b], c]]
    return bool(np.all(holds | ~leq[c, a]))


def is_meet_sd(L: FiniteLattice) -> bool:
    """a ∧ b = a ∧ c implies a ∧ b = a ∧ (b ∨ c)."""
    m, j = L.meet, L.join
    a, b, c = _grid(len(L), 3)
    prem = m[a, b] == m[a, c]
    return bool(np.all(~prem | (m[a, b] == m[a, j[b, c]])))


def is_join_sd(L: FiniteLattice) -> bool:
    return is_meet_sd(_reverse(L))


def is_semidistributive(L: FiniteLattice) -> bool:
    return is_meet_sd(L) and is_join_sd(L)


def whitman_w(L: FiniteLattice) -> bool:
    """a ∧ b <= c ∨ d forces a <= c ∨ d, b <= c ∨ d, a ∧ b <= c or a ∧ b <= d."""
    m, j, leq = L.meet, L.join, L.leq
    n = len(L)
    c, d = np.ix_(np.arange(n), np.arange(n))
    jcd = j[c, d]
    for a in range(n):
        for b in range(n):
            ab = m[a, b]
            prem = leq[ab, jcd]
            concl = leq[a, jcd] | leq[b, jcd] | leq[ab, c] | leq[ab, d]
            if np.any(prem & ~concl):
                return False
    return True


def lattice_as_algebra(L: FiniteLattice) -> FiniteAlgebra:
    return FiniteAlgebra("L", len(L), (Operation("meet", 2, L.meet), Operation("join", 2, L.join)))


def is_subdirectly_irreducible(L: FiniteLattice) -> bool:
    """Con(L) has a unique atom (a one-element lattice is not SI)."""
    if len(L) < 2:
        return False
    cons = enumerate_con(lattice_as_algebra(L))
    zero = Congruence.identity(len(L))
    nonzero = [c for c in cons if c != zero]
    atoms = [c for c in nonzero if not any(d < c for d in nonzero)]
    return len(atoms) == 1


# -- lattices of congruences -----------------------------------------------

def lattice_of_congruences(algebra: FiniteAlgebra | None, gens, names: Mapping | None = None,
                           max_elements: int = DEFAULT_MAX_LATTICE):
    """Close ``gens`` under meet and join of congruences.

    Returns ``(lattice, congruences)`` with ``congruences[i]`` the
    congruence behind lattice element ``i`` (finest first).  ``names``
    optionally maps labels to congruences; other elements are labelled by
    their partition literal.
    """
    gens = list(gens)
    if not gens:
        raise DomainError("generating set must be nonempty")
    if algebra is not None:
        for g in gens:
            if g.size != algebra.size:
                raise DomainError("generator does not live on this algebra")
    meets, joins = {}, {}

    def meet(a, b):
        key = (a, b) if a.blocks <= b.blocks else (b, a)
        if key not in meets:
            meets[key] = congruence_meet(a, b)
        return meets[key]

    def join(a, b):
        key = (a, b) if a.blocks <= b.blocks else (b, a)
        if key not in joins:
            joins[key] = partition_join(a, b)
        return joins[key]

    elems = _closure(gens, meet, join, max_elements)
    elems.sort(key=_sort_key)
    return _lattice_from_congruences(elems, meet, join, names), elems


def _lattice_from_congruences(elems, meet, join, names=None):
    pos = {c: i for i, c in enumerate(elems)}
    n = len(elems)
    mt = np.empty((n, n), dtype=np.int64)
    jt = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elems):
        for k in range(i, n):
            b = elems[k]
            mt[i, k] = mt[k, i] = pos[meet(a, b)]
            jt[i, k] = jt[k, i] = pos[join(a, b)]
    leq = mt == np.arange(n)[:, None]
    labels = [format_partition(c) for c in elems]
    if names:
        for name, c in names.items():
            if c in pos:
                labels[pos[c]] = name
    return FiniteLattice(leq, mt, jt, labels, check=True)


def con_lattice(algebra: FiniteAlgebra, limit=None):
    """The full congruence lattice, as ``(lattice, congruences)``."""
    from .algebra import con_order, DEFAULT_MAX_CON
    cons = enumerate_con(algebra, limit if limit is not None else DEFAULT_MAX_CON)
    L = FiniteLattice.from_leq(con_order(cons), [format_partition(c) for c in cons])
    return L, cons


# -- diagrams ----------------------------------------------------------------

def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(L: FiniteLattice, name: str = "L") -> str:
    """Hasse diagram in Graphviz DOT, bottom at the bottom, ranked by height."""
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=BT;",
             "  node [shape=circle, width=0.15, fixedsize=false];"]
    for i, lab in enumerate(L.labels):
        lines.append(f"  n{i} [label={_dot_quote(lab)}];")
    h = L.heights()
    for level in range(int(h.max()) + 1):
        same = " ".join(f"n{i};" for i in np.nonzero(h == level)[0])
        lines.append(f"  {{ rank=same; {same} }}")
    for a, b in L.covers_list():
        lines.append(f"  n{a} -> n{b} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def product(L: FiniteLattice, M: FiniteLattice) -> FiniteLattice:
    """Direct product, elements ordered (x, y) lexicographically."""
    pairs = list(itertools.product(range(len(L)), range(len(M))))
    leq = np.array([[L.leq[a, c] and M.leq[b, d] for (c, d) in pairs] for (a, b) in pairs])
    labels = [f"({L.labels[a]},{M.labels[b]})" for a, b in pairs]
    return FiniteLattice.from_leq(leq, labels)


def chain(n: int) -> FiniteLattice:
    return FiniteLattice.from_covers(n, [(i, i + 1) for i in range(n - 1)])
