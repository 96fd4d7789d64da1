"""Duplication of an algebra along a congruence and what it reveals.

Given an algebra A and a congruence alpha, the duplication A(alpha) is the
subalgebra of A x A on the alpha-related pairs.  Every congruence theta of
A lifts to A(alpha) in two ways: ``theta_0`` compares first coordinates and
``theta_1`` compares second coordinates.  The two projection kernels are
``eta_0`` and ``eta_1``.

This module builds duplications, checks the identities that hold among
lifted congruences, classifies pentagon configurations of congruences by
the lattice their lifts generate (K or M1), turns a diamond of permuting
congruences into M3,3, and iterates that step to realize rods, snakes and
general glued chains of diamonds as congruence sublattices.

When a configuration does not sit at the bottom of Con(A), everything is
computed in the quotient of A by the configuration's bottom congruence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import catalog
from .algebra import (
    DEFAULT_MAX_UNIVERSE,
    Congruence,
    FiniteAlgebra,
    compose,
    compose_alternating,
    con_order,
    congruence_meet,
    enumerate_con,
    partition_join,
    permute_check,
    power_subalgebra,
    principal_congruence,
    quotient,
)
from .errors import DomainError, LimitExceeded, VerificationError
from .io import format_pair, format_partition
from .lattice import (
    DEFAULT_MAX_LATTICE,
    FiniteLattice,
    _closure,
    _lattice_from_congruences,
    _restrict,
    check_isomorphism,
    covers,
    filter_above,
    find_cover_in_interval,
    isomorphic,
    lattice_of_congruences,
)

# -- duplication -------------------------------------------------------------


@dataclass(frozen=True)
class Duplication:
    base: FiniteAlgebra
    alpha: Congruence
    doubled: FiniteAlgebra
    tuples: tuple            # tuples[i] = (a, b): the pair behind element i
    eta0: Congruence
    eta1: Congruence

    @property
    def coords(self) -> np.ndarray:
        return np.array(self.tuples, dtype=np.int64).reshape(len(self.tuples), 2)

    def index(self, a: int, b: int) -> int:
        try:
            return self.tuples.index((a, b))
        except ValueError:
            raise DomainError(f"({a + 1},{b + 1}) is not in the duplicated universe") from None

    @property
    def zero(self) -> Congruence:
        return Congruence.identity(self.doubled.size)


def duplicate(algebra: FiniteAlgebra, alpha: Congruence,
              max_universe: int = DEFAULT_MAX_UNIVERSE) -> Duplication:
    if not algebra.is_congruence(alpha):
        raise DomainError("duplication needs a congruence of the algebra")
    doubled, tuples = power_subalgebra(algebra, alpha, 2, max_universe)
    coords = np.array(tuples, dtype=np.int64).reshape(len(tuples), 2)
    eta0 = Congruence.from_labels(coords[:, 0].tolist())
    eta1 = Congruence.from_labels(coords[:, 1].tolist())
    return Duplication(algebra, alpha, doubled, tuple(tuples), eta0, eta1)


def lift(dup: Duplication, theta: Congruence, side: int) -> Congruence:
    """theta_side: pairs of A(alpha) whose side-th coordinates are theta-related."""
    if side not in (0, 1):
        raise DomainError("side must be 0 or 1")
    if theta.size != dup.base.size:
        raise DomainError("congruence does not live on the base algebra")
    labels = np.asarray(theta.blocks, dtype=np.int64)[dup.coords[:, side]]
    return Congruence.from_labels(labels.tolist())


# -- reports -----------------------------------------------------------------

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass(frozen=True)
class Clause:
    id: str
    status: str
    witness: tuple | None = None
    detail: str = ""

    def line(self) -> str:
        out = f"{self.id}={self.status}"
        if self.witness is not None:
            out += f" witness={format_pair(*self.witness)}"
        if self.detail:
            out += f" {self.detail}"
        return out


@dataclass
class Report:
    name: str
    clauses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.clauses)

    def status(self, clause_id: str) -> str:
        for c in self.clauses:
            if c.id == clause_id:
                return c.status
        raise KeyError(clause_id)

    def add(self, clause_id, holds, witness=None, applies=True, detail=""):
        if not applies:
            self.clauses.append(Clause(clause_id, NA, None, detail))
        elif holds:
            self.clauses.append(Clause(clause_id, PASS, None, detail))
        else:
            self.clauses.append(Clause(clause_id, FAIL, witness, detail))

    def lines(self) -> list:
        return [c.line() for c in self.clauses]

    def __str__(self):
        return "\n".join(self.lines())


def _least_pair(matrix: np.ndarray):
    hits = np.argwhere(matrix)
    return (int(hits[0, 0]), int(hits[0, 1])) if len(hits) else None


def _difference_witness(r, s):
    """Least pair in r but not in s (relations or congruences), else None."""
    mr = r.relation().matrix if isinstance(r, Congruence) else r.matrix
    ms = s.relation().matrix if isinstance(s, Congruence) else s.matrix
    return _least_pair(mr & ~ms)


def _equality_witness(r, s):
    return _difference_witness(r, s) or _difference_witness(s, r)


def _comparable(x: Congruence, y: Congruence) -> bool:
    return x <= y or y <= x


# -- the doubling identities -------------------------------------------------

def verify_doubling_lemma(dup: Duplication, theta: Congruence) -> Report:
    """Identities among lifts in A(alpha), alpha being the duplicated congruence.

    * if alpha <= theta the two lifts agree;
    * each lift is the join of its projection kernel with the meet of both lifts;
    * the lift of alpha is the join of the two projection kernels.
    """
    rep = Report("doubling")
    t0, t1 = lift(dup, theta, 0), lift(dup, theta, 1)
    rep.add("lifts_agree_above_duplicated", t0 == t1, _equality_witness(t0, t1),
            applies=dup.alpha <= theta)
    both = congruence_meet(t0, t1)
    for side, ti, eta in ((0, t0, dup.eta0), (1, t1, dup.eta1)):
        rhs = partition_join(eta, both)
        rep.add(f"lift_{side}_is_kernel_join_meet", ti == rhs, _equality_witness(ti, rhs))
    a0 = lift(dup, dup.alpha, 0)
    kj = partition_join(dup.eta0, dup.eta1)
    rep.add("kernels_join_to_lifted_duplicated", a0 == kj, _equality_witness(a0, kj))
    return rep


# -- pentagons ---------------------------------------------------------------


@dataclass(frozen=True)
class PentagonConfig:
    """Five congruences forming a pentagon: zero < gamma < alpha < delta, beta aside."""

    algebra: FiniteAlgebra
    zero: Congruence
    gamma: Congruence
    alpha: Congruence
    beta: Congruence
    delta: Congruence
    checked: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if not self.checked:
            return
        n = self.algebra.size
        parts = (self.zero, self.gamma, self.alpha, self.beta, self.delta)
        for p in parts:
            if p.size != n:
                raise DomainError("partition size does not match the algebra")
            if not self.algebra.is_congruence(p):
                raise DomainError(f"{format_partition(p)} is not a congruence")
        g, a, b = self.gamma, self.alpha, self.beta
        if not g < a:
            raise DomainError("gamma must lie strictly below alpha")
        if congruence_meet(g, b) != self.zero or congruence_meet(a, b) != self.zero:
            raise DomainError("gamma ^ beta and alpha ^ beta must both equal the bottom")
        if partition_join(g, b) != self.delta or partition_join(a, b) != self.delta:
            raise DomainError("gamma v beta and alpha v beta must both equal the top")
        L, _ = lattice_of_congruences(self.algebra, parts)
        if isomorphic(L, catalog.build("N5")) is None:
            raise VerificationError("the five congruences do not form a pentagon")

    @classmethod
    def from_parts(cls, algebra, gamma, alpha, beta):
        """Fill in the bottom and top from gamma, alpha and beta."""
        return cls(algebra, congruence_meet(alpha, beta), gamma, alpha, beta,
                   partition_join(gamma, beta))

    def named(self) -> dict:
        return {"0": self.zero, "gamma": self.gamma, "alpha": self.alpha,
                "beta": self.beta, "delta": self.delta}

    def lines(self) -> list:
        return [f"{k}={format_partition(v)}" for k, v in self.named().items()]


def _at_bottom(cfg: PentagonConfig):
    """Same configuration in A/zero, so that its bottom is the identity."""
    if cfg.zero.is_identity():
        return cfg, False
    quo, project = quotient(cfg.algebra, cfg.zero)
    return PentagonConfig(quo, project(cfg.zero), project(cfg.gamma), project(cfg.alpha),
                          project(cfg.beta), project(cfg.delta), checked=False), True


def pentagon_condition(cfg: PentagonConfig):
    """Whether (beta o gamma o beta) ^ alpha leaves gamma; returns (bool, least witness)."""
    bgb = compose_alternating(cfg.beta, cfg.gamma, 3)
    inside = bgb.matrix & cfg.alpha.relation().matrix & ~cfg.gamma.relation().matrix
    w = _least_pair(inside)
    return w is not None, w


@dataclass(frozen=True)
class PentagonLifts:
    """The pentagon's lifts in A(beta) together with the meets that matter."""

    cfg: PentagonConfig
    dup: Duplication
    alpha0: Congruence
    alpha1: Congruence
    gamma0: Congruence
    gamma1: Congruence
    beta0: Congruence

    @property
    def alpha_gamma(self):          # alpha_0 ^ gamma_1
        return congruence_meet(self.alpha0, self.gamma1)

    @property
    def gamma_alpha(self):          # gamma_0 ^ alpha_1
        return congruence_meet(self.gamma0, self.alpha1)

    @property
    def gamma_gamma(self):
        return congruence_meet(self.gamma0, self.gamma1)

    @property
    def alpha_alpha(self):
        return congruence_meet(self.alpha0, self.alpha1)

    def generators(self):
        return [self.alpha0, self.alpha1, self.gamma0, self.gamma1, self.beta0]

    def names(self) -> dict:
        d = self.dup
        names = {
            "0": d.zero, "eta_0": d.eta0, "eta_1": d.eta1,
            "beta_0": self.beta0, "delta": lift(d, self.cfg.delta, 0),
            "gamma_0": self.gamma0, "gamma_1": self.gamma1,
            "alpha_0": self.alpha0, "alpha_1": self.alpha1,
            "alpha_0^gamma_1": self.alpha_gamma, "gamma_0^alpha_1": self.gamma_alpha,
            "theta": partition_join(self.alpha_gamma, self.gamma_alpha),
            "alpha_0^alpha_1": self.alpha_alpha, "gamma_0^gamma_1": self.gamma_gamma,
        }
        return names


def lift_pentagon(cfg: PentagonConfig, max_universe=DEFAULT_MAX_UNIVERSE) -> PentagonLifts:
    cfg, _ = _at_bottom(cfg)
    dup = duplicate(cfg.algebra, cfg.beta, max_universe)
    return PentagonLifts(cfg, dup, lift(dup, cfg.alpha, 0), lift(dup, cfg.alpha, 1),
                         lift(dup, cfg.gamma, 0), lift(dup, cfg.gamma, 1),
                         lift(dup, cfg.beta, 0))


def verify_lemma1(cfg: PentagonConfig, lifts: PentagonLifts | None = None) -> Report:
    """Meets and joins of the lifts of a pentagon, duplicated over beta."""
    p = lifts or lift_pentagon(cfg)
    rep = Report("pentagon_lifts")
    gg, ag, ga, aa = p.gamma_gamma, p.alpha_gamma, p.gamma_alpha, p.alpha_alpha
    for name, x in (("alpha_0^gamma_1", ag), ("gamma_0^alpha_1", ga), ("alpha_0^alpha_1", aa)):
        rep.add(f"gamma_meet_below_{name}", gg <= x, _difference_witness(gg, x))
    for name, x in (("alpha_0^gamma_1", ag), ("gamma_0^alpha_1", ga), ("gamma_0^gamma_1", gg)):
        rep.add(f"alpha_meet_not_below_{name}", not aa <= x)
    comparable = _comparable(ag, ga)
    rep.add("comparable_mixed_meets_collapse", ag == ga == gg,
            _equality_witness(ag, gg) or _equality_witness(ga, gg), applies=comparable)
    for side, gi, ai in ((0, p.gamma0, p.alpha0), (1, p.gamma1, p.alpha1)):
        j = partition_join(gi, aa)
        rep.add(f"gamma_{side}_join_alpha_meet_is_alpha_{side}", j == ai, _equality_witness(j, ai))
    return rep


def verify_lemma2(cfg: PentagonConfig, lifts: PentagonLifts | None = None) -> Report:
    """With incomparable mixed meets, their join stays strictly below alpha_0 ^ alpha_1."""
    p = lifts or lift_pentagon(cfg)
    rep = Report("mixed_meets_join")
    ag, ga, aa = p.alpha_gamma, p.gamma_alpha, p.alpha_alpha
    j = partition_join(ag, ga)
    rep.add("mixed_join_strictly_below_alpha_meet", j < aa, _difference_witness(j, aa)
            or _difference_witness(aa, j), applies=not _comparable(ag, ga))
    return rep


def congruence_interval(algebra: FiniteAlgebra, low: Congruence, high: Congruence,
                        max_elements: int = DEFAULT_MAX_LATTICE):
    """The interval [low, high] of Con(A) as ``(lattice, congruences)``.

    Each member is low joined with principal congruences of pairs in
    high minus low, so the join-closure of those generators is the whole
    interval.
    """
    if not low <= high:
        raise DomainError("interval bounds are not ordered")
    gens = [low]
    seen = {low}
    rel = high.relation().matrix & ~low.relation().matrix
    for a, b in np.argwhere(rel).tolist():
        if a < b:
            c = partition_join(low, principal_congruence(algebra, a, b))
            if c not in seen:
                seen.add(c)
                gens.append(c)
    elems = _closure(gens, partition_join, partition_join, max_elements)
    from .algebra import _sort_key
    elems.sort(key=_sort_key)
    L = _lattice_from_congruences(elems, congruence_meet, partition_join)
    return L, elems


@dataclass(frozen=True)
class Classification:
    label: str | None            # "K", "M1", or None without refinement
    lattice: FiniteLattice
    congruences: list            # congruences[i] behind lattice element i
    iso: list | None             # lattice -> catalog shape
    used: PentagonConfig         # configuration actually duplicated
    refined: bool
    quotiented: bool
    lifts: PentagonLifts


def classify_pentagon(cfg: PentagonConfig, refine: bool = True,
                      max_universe=DEFAULT_MAX_UNIVERSE,
                      max_lattice=DEFAULT_MAX_LATTICE) -> Classification:
    """Label a pentagon K or M1 by the lattice its lifts generate in A(beta).

    The dichotomy needs gamma to be covered by alpha in Con(A).  With
    ``refine`` the pair is first replaced by the least covering pair of the
    interval [gamma, alpha]; otherwise the raw closure is returned and the
    label is whichever catalog shape it matches, if any.
    """
    work, quotiented = _at_bottom(cfg)
    refined = False
    if refine:
        L, cons = congruence_interval(work.algebra, work.gamma, work.alpha, max_lattice)
        lo, hi = cons.index(work.gamma), cons.index(work.alpha)
        if not covers(L, lo, hi):
            g2, a2 = find_cover_in_interval(L, lo, hi)
            work = PentagonConfig(work.algebra, work.zero, cons[g2], cons[a2], work.beta,
                                  work.delta, checked=False)
            refined = True
    lifts = lift_pentagon(work, max_universe)
    L, cons = lattice_of_congruences(lifts.dup.doubled, lifts.generators(), lifts.names(),
                                     max_lattice)
    if refine:
        label = "M1" if _comparable(lifts.alpha_gamma, lifts.gamma_alpha) else "K"
        iso = isomorphic(L, catalog.build(label))
        if iso is None:
            raise VerificationError(f"generated lattice ({len(L)} elements) is not {label}")
    else:
        label, iso = None, None
        for shape in ("K", "M1"):
            iso = isomorphic(L, catalog.build(shape))
            if iso is not None:
                label = shape
                break
    return Classification(label, L, cons, iso, work, refined, quotiented, lifts)


def duplicated_sublattice(cfg: PentagonConfig, over: str = "gamma",
                          max_universe=DEFAULT_MAX_UNIVERSE, max_lattice=DEFAULT_MAX_LATTICE):
    """Duplicate a pentagon over any of its named congruences and close all lifts.

    Returns ``(lattice, congruences, match)`` where ``match`` names the first
    fixed catalog shape the closure is isomorphic to, or None.
    """
    work, _ = _at_bottom(cfg)
    named = work.named()
    if over not in named:
        raise DomainError(f"unknown congruence {over!r}; choose from {', '.join(named)}")
    dup = duplicate(work.algebra, named[over], max_universe)
    names = {"0": dup.zero, "eta_0": dup.eta0, "eta_1": dup.eta1}
    for key in ("gamma", "alpha", "beta", "delta"):
        for side in (0, 1):
            names.setdefault(f"{key}_{side}", lift(dup, named[key], side))
    gens = list(dict.fromkeys(names.values()))
    L, cons = lattice_of_congruences(dup.doubled, gens, names, max_lattice)
    match = None
    for shape in catalog.FIXED:
        if isomorphic(L, catalog.build(shape)) is not None:
            match = shape
            break
    return L, cons, match


def find_pentagons(algebra: FiniteAlgebra, limit=None) -> list:
    """Every pentagon of Con(A), in the order of (gamma, alpha, beta) in Con(A).

    A pentagon needs no relabelling: N5 has no nontrivial automorphism.
    """
    from .algebra import DEFAULT_MAX_CON
    cons = enumerate_con(algebra, limit if limit is not None else DEFAULT_MAX_CON)
    leq, meet, join = _con_tables(cons)
    n = len(cons)
    strict = leq & ~np.eye(n, dtype=bool)
    out = []
    for g, a in np.argwhere(strict).tolist():
        ok = (meet[g] == meet[a]) & (join[g] == join[a])
        for b in np.nonzero(ok)[0].tolist():
            out.append(PentagonConfig(algebra, cons[meet[a, b]], cons[g], cons[a], cons[b],
                                      cons[join[a, b]], checked=False))
    return out


def _con_tables(cons):
    leq = con_order(cons)
    return leq, _bound(leq, lower=True), _bound(leq, lower=False)


def _bound(leq, lower):
    """Meet (lower=True) or join table of a lattice given by its order matrix."""
    from .lattice import _bound_table
    return _bound_table(leq) if lower else _bound_table(leq.T)


# -- diamonds ----------------------------------------------------------------


@dataclass(frozen=True)
class M3Config:
    """A diamond of congruences; duplication happens over atom ``c``."""

    algebra: FiniteAlgebra
    bottom: Congruence
    a: Congruence
    b: Congruence
    c: Congruence
    top: Congruence
    checked: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if not self.checked:
            return
        n = self.algebra.size
        for p in self.parts():
            if p.size != n:
                raise DomainError("partition size does not match the algebra")
            if not self.algebra.is_congruence(p):
                raise DomainError(f"{format_partition(p)} is not a congruence")
        atoms = (self.a, self.b, self.c)
        if len(set(atoms)) != 3:
            raise DomainError("the three atoms must be distinct")
        for x, y in itertools.combinations(atoms, 2):
            if congruence_meet(x, y) != self.bottom or partition_join(x, y) != self.top:
                raise DomainError("atoms must meet in the bottom and join to the top")

    @classmethod
    def from_atoms(cls, algebra, a, b, c):
        return cls(algebra, congruence_meet(a, b), a, b, c, partition_join(a, b))

    def parts(self):
        return (self.bottom, self.a, self.b, self.c, self.top)

    def atoms_permute(self, k: int = 2) -> bool:
        return all(permute_check(x, y, k) for x, y in
                   itertools.combinations((self.a, self.b, self.c), 2))

    def at_bottom(self) -> M3Config:
        if self.bottom.is_identity():
            return self
        quo, project = quotient(self.algebra, self.bottom)
        return M3Config(quo, *(project(p) for p in self.parts()), checked=False)

    def lines(self) -> list:
        return [f"{k}={format_partition(v)}" for k, v in
                zip(("0", "alpha", "beta", "gamma", "delta"), self.parts())]


def find_m3s(algebra: FiniteAlgebra, limit=None) -> list:
    """Every diamond of Con(A), one per set of atoms, atoms in Con(A) order."""
    from .algebra import DEFAULT_MAX_CON
    cons = enumerate_con(algebra, limit if limit is not None else DEFAULT_MAX_CON)
    leq, meet, join = _con_tables(cons)
    n = len(cons)
    incomparable = ~leq & ~leq.T
    out = []
    for x, y in np.argwhere(np.triu(incomparable, 1)).tolist():
        lo, hi = meet[x, y], join[x, y]
        ok = incomparable[x] & incomparable[y] & (meet[x] == lo) & (meet[y] == lo) \
            & (join[x] == hi) & (join[y] == hi)
        ok[: y + 1] = False
        for z in np.nonzero(ok)[0].tolist():
            out.append(M3Config(algebra, cons[lo], cons[x], cons[y], cons[z], cons[hi],
                                checked=False))
    return out


@dataclass(frozen=True)
class DiamondLifts:
    cfg: M3Config
    dup: Duplication

    def l(self, theta, side):
        return lift(self.dup, theta, side)

    @property
    def a0(self):
        return self.l(self.cfg.a, 0)

    @property
    def a1(self):
        return self.l(self.cfg.a, 1)

    @property
    def b0(self):
        return self.l(self.cfg.b, 0)

    @property
    def b1(self):
        return self.l(self.cfg.b, 1)

    @property
    def c0(self):
        return self.l(self.cfg.c, 0)

    @property
    def top0(self):
        return self.l(self.cfg.top, 0)


def lift_diamond(cfg: M3Config, max_universe=DEFAULT_MAX_UNIVERSE) -> DiamondLifts:
    cfg = cfg.at_bottom()
    return DiamondLifts(cfg, duplicate(cfg.algebra, cfg.c, max_universe))


def verify_nozero(cfg: M3Config, lifts: DiamondLifts | None = None) -> Report:
    """alpha_0 ^ beta_1 and beta_0 ^ alpha_1 are comparable exactly when both vanish."""
    d = lifts or lift_diamond(cfg)
    rep = Report("mixed_meets_vanish")
    x = congruence_meet(d.a0, d.b1)
    y = congruence_meet(d.b0, d.a1)
    zero = d.dup.zero
    comparable = _comparable(x, y)
    both_zero = x == zero and y == zero
    rep.add("comparable_iff_both_zero", comparable == both_zero,
            _difference_witness(x, zero) or _difference_witness(y, zero))
    three = d.cfg.atoms_permute(3)
    rep.add("three_permuting_atoms_give_incomparable", not comparable,
            applies=three)
    return rep


def _relational_join(lam, mu, target):
    """Check lam o mu = lam v mu = target; returns (holds, witness)."""
    comp = compose(lam, mu)
    j = partition_join(lam, mu)
    if j != target:
        return False, _equality_witness(j, target)
    w = _equality_witness(comp, target)
    return w is None, w


def verify_permute(cfg: M3Config, lifts: DiamondLifts | None = None) -> Report:
    """Four products in A(gamma) that equal joins when the atoms permute."""
    d = lifts or lift_diamond(cfg)
    rep = Report("diamond_products")
    applies = d.cfg.atoms_permute(2)
    eta0 = d.dup.eta0
    a0, a1, b0, b1 = d.a0, d.a1, d.b0, d.b1
    ab = congruence_meet(a0, b1)
    aa = congruence_meet(a0, a1)
    checks = [
        ("kernel_with_alpha0_beta1_is_alpha0", eta0, ab, a0),
        ("kernel_with_alpha0_alpha1_is_alpha0", eta0, aa, a0),
        ("alpha0_beta1_with_alpha0_alpha1_is_alpha0", ab, aa, a0),
        ("beta0_with_alpha1_is_top0", b0, a1, d.top0),
    ]
    for cid, lam, mu, target in checks:
        if applies:
            holds, w = _relational_join(lam, mu, target)
        else:
            holds, w = True, None
        rep.add(cid, holds, w, applies=applies)
    return rep


M33_NAMES = ("0", "eta_0", "alpha_0^alpha_1", "alpha_0^beta_1", "alpha_0", "beta_0",
             "gamma_0", "delta_0")


@dataclass(frozen=True)
class M33Result:
    lifts: DiamondLifts
    lattice: FiniteLattice
    congruences: list
    named: dict
    iso: list


def _all_permute(congs) -> tuple:
    for x, y in itertools.combinations(congs, 2):
        if not permute_check(x, y, 2):
            return False, (x, y)
    return True, None


def build_m33(cfg: M3Config, max_universe=DEFAULT_MAX_UNIVERSE) -> M33Result:
    """Duplicate a permuting diamond over ``c`` and assemble M3,3."""
    if not cfg.atoms_permute(2):
        raise DomainError("the diamond's atoms do not pairwise permute")
    d = lift_diamond(cfg, max_universe)
    a0, a1, b1 = d.a0, d.a1, d.b1
    values = (d.dup.zero, d.dup.eta0, congruence_meet(a0, a1), congruence_meet(a0, b1),
              a0, d.b0, d.c0, d.top0)
    named = dict(zip(M33_NAMES, values))
    if len(set(values)) != 8:
        raise VerificationError("the eight congruences are not distinct")
    L, cons = lattice_of_congruences(d.dup.doubled, values, named)
    if len(L) != 8:
        raise VerificationError(f"the eight congruences generate {len(L)} elements")
    iso = isomorphic(L, catalog.build("M33"))
    if iso is None:
        raise VerificationError("assembled lattice is not M3,3")
    ok, bad = _all_permute(values)
    if not ok:
        raise VerificationError("assembled congruences do not pairwise permute: "
                                f"{format_partition(bad[0])} and {format_partition(bad[1])}")
    return M33Result(d, L, cons, named, iso)


# -- rods, snakes and glued chains ---------------------------------------------


@dataclass(frozen=True)
class Copy:
    """One diamond of a chain: bottom, three atoms, top."""

    bottom: Congruence
    alpha: Congruence
    beta: Congruence
    gamma: Congruence
    top: Congruence


@dataclass(frozen=True)
class RodStep:
    step: int
    algebra: FiniteAlgebra
    lattice: FiniteLattice
    named: dict
    glue: str
    report: Report

    @property
    def shape(self) -> str:
        return f"G:{self.glue}"


def glue_for(shape: str, n: int) -> str:
    """Glue string for ``rod``, ``snake`` or an explicit ``G:...``/``RL...`` string."""
    if shape == "rod":
        return "R" * (n - 1)
    if shape == "snake":
        return catalog.snake_glue(n)
    s = shape[2:] if shape.startswith("G:") else shape
    if set(s) - {"L", "R"}:
        raise DomainError(f"unknown chain shape {shape!r}")
    if len(s) != n - 1:
        raise DomainError(f"glue string {s!r} describes {len(s) + 1} diamonds, not {n}")
    return s


def _chain_names(copies) -> dict:
    """Catalog labels for a chain of copies listed bottom first."""
    named = {"eta": copies[0].bottom}
    for i, c in enumerate(copies, start=1):
        named.setdefault(f"alpha_{i}", c.alpha)
        named.setdefault(f"beta_{i}", c.beta)
        named.setdefault(f"gamma_{i}", c.gamma)
    named["delta"] = copies[-1].top
    # shared congruences keep the first (lowest) label, as in the catalog
    out, seen = {}, set()
    for k, v in named.items():
        if v not in seen:
            seen.add(v)
            out[k] = v
    return out


def iterate_rods(cfg: M3Config, n: int, shape: str = "rod",
                 max_universe=DEFAULT_MAX_UNIVERSE) -> list:
    """Realize a chain of ``n`` diamonds in Con(A_n) by repeated duplication.

    Each step duplicates the current algebra over one atom of the lowest
    diamond.  The old chain reappears above the first projection kernel
    and a new diamond is adjoined below it.  Letter R attaches the new
    diamond's right edge to the old bottom-left edge; letter L attaches
    its left edge to the old bottom-right edge.  Returns one
    :class:`RodStep` per step.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    glue = glue_for(shape, n)
    if not cfg.atoms_permute(2):
        raise DomainError("the diamond's atoms do not pairwise permute")
    base = cfg.at_bottom()
    first = glue[-1] if glue else "R"
    if first == "R":
        copy = Copy(base.bottom, base.a, base.b, base.c, base.top)
    else:
        copy = Copy(base.bottom, base.c, base.b, base.a, base.top)
    copies = [copy]
    algebra = base.algebra
    steps = [_check_step(1, algebra, copies, "", None)]
    for k in range(1, n):
        letter = glue[n - k - 1]
        low = copies[0]
        if letter == "R":
            a, b, d = low.alpha, low.beta, low.gamma
        else:
            a, b, d = low.gamma, low.beta, low.alpha
        try:
            dup = duplicate(algebra, d, max_universe)
        except LimitExceeded as exc:
            raise LimitExceeded(f"{exc}; reached n={k}") from None
        up = [Copy(*(lift(dup, x, 0) for x in (c.bottom, c.alpha, c.beta, c.gamma, c.top)))
              for c in copies]
        a0, a1, b1 = lift(dup, a, 0), lift(dup, a, 1), lift(dup, b, 1)
        aa, ab = congruence_meet(a0, a1), congruence_meet(a0, b1)
        if letter == "R":
            new = Copy(dup.zero, aa, ab, dup.eta0, a0)
        else:
            new = Copy(dup.zero, dup.eta0, ab, aa, a0)
        copies = [new] + up
        algebra = dup.doubled
        steps.append(_check_step(k + 1, algebra, copies, glue[n - k - 1:], steps[-1], dup.eta0))
    return steps


def _check_step(step, algebra, copies, glue, prev, eta0=None) -> RodStep:
    named = _chain_names(copies)
    values = list(named.values())
    rep = Report(f"step_{step}")
    L, cons = lattice_of_congruences(algebra, values, named)
    rep.add("named_set_closed", len(L) == len(values),
            detail=f"named={len(values)} generated={len(L)}")
    target = catalog.glued(glue)
    iso = isomorphic(L, target)
    rep.add("matches_catalog", iso is not None, detail=f"shape=G:{glue}")
    by_label = False
    if iso is not None and sorted(L.labels) == sorted(target.labels):
        by_label = check_isomorphism(L, target, [target.index(x) for x in L.labels])
    rep.add("labels_match_catalog", by_label, applies=iso is not None)
    ok, _ = _all_permute(values)
    rep.add("named_pairwise_permute", ok)
    if prev is not None:
        top_part = filter_above(L, cons.index(eta0))
        sub = _restrict(L, top_part)
        rep.add("filter_above_kernel_is_previous", isomorphic(sub, prev.lattice) is not None)
    return RodStep(step, algebra, L, named, glue, rep)


__all__ = [
    "Duplication", "duplicate", "lift", "Clause", "Report", "verify_doubling_lemma",
    "PentagonConfig", "pentagon_condition", "PentagonLifts", "lift_pentagon",
    "verify_lemma1", "verify_lemma2", "congruence_interval", "Classification",
    "classify_pentagon", "duplicated_sublattice", "find_pentagons", "M3Config", "find_m3s",
    "DiamondLifts", "lift_diamond", "verify_nozero", "verify_permute", "M33Result",
    "build_m33", "Copy", "RodStep", "glue_for", "iterate_rods",
]
