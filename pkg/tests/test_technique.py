import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import part, small_algebras
from freese.algebra import (
    Congruence,
    FiniteAlgebra,
    Operation,
    congruence_meet,
    enumerate_con,
    no_op_algebra,
    partition_join,
)
from freese.catalog import build
from freese.errors import DomainError, LimitExceeded
from freese.lattice import (
    _restrict,
    con_lattice,
    covers,
    filter_above,
    isomorphic,
)
from freese.technique import (
    M3Config,
    PentagonConfig,
    build_m33,
    classify_pentagon,
    congruence_interval,
    duplicate,
    duplicated_sublattice,
    find_m3s,
    find_pentagons,
    iterate_rods,
    lift,
    lift_diamond,
    pentagon_condition,
    verify_doubling_lemma,
    verify_lemma1,
    verify_lemma2,
    verify_nozero,
    verify_permute,
)


def pentagon(A, p):
    return PentagonConfig.from_parts(A, p["gamma"], p["alpha"], p["beta"])


# -- duplication and lifts ---------------------------------------------------

def test_duplication_kernels(example_a):
    A, p = example_a
    dup = duplicate(A, p["beta"])
    assert dup.doubled.size == 12
    assert congruence_meet(dup.eta0, dup.eta1).is_identity()
    assert partition_join(dup.eta0, dup.eta1) == lift(dup, p["beta"], 0)
    assert dup.tuples[dup.index(1, 0)] == (1, 0)
    with pytest.raises(DomainError):
        dup.index(0, 2)


def test_lift_examples(example_a):
    A, p = example_a
    dup = duplicate(A, p["beta"])
    total = Congruence.total(6)
    assert lift(dup, total, 0).is_total() and lift(dup, total, 1).is_total()
    assert lift(dup, p["beta"], 0) == lift(dup, p["beta"], 1)
    g0, g1 = lift(dup, p["gamma"], 0), lift(dup, p["gamma"], 1)
    assert g0 != g1
    # (2,1) and (3,4), 1-indexed: first coordinates 2 gamma 3, second 1 and 4 unrelated
    x, y = dup.index(1, 0), dup.index(2, 3)
    assert g0.related(x, y) and not g1.related(x, y)
    with pytest.raises(DomainError):
        lift(dup, p["gamma"], 2)


def test_doubling_lemma_examples(example_a):
    A, p = example_a
    dup = duplicate(A, p["beta"])
    rep = verify_doubling_lemma(dup, Congruence.total(6))
    assert rep.ok and all(c.status == "pass" for c in rep.clauses)
    rep = verify_doubling_lemma(dup, partition_join(p["beta"], p["gamma"]))
    assert rep.status("lifts_agree_above_duplicated") == "pass"
    rep = verify_doubling_lemma(dup, p["gamma"])
    assert rep.status("lifts_agree_above_duplicated") == "n/a" and rep.ok


@settings(max_examples=60, deadline=None)
@given(small_algebras(min_size=2, max_size=4), st.data())
def test_doubling_lemma_random(A, data):
    cons = enumerate_con(A)
    alpha = data.draw(st.sampled_from(cons))
    theta = data.draw(st.sampled_from(cons))
    assert verify_doubling_lemma(duplicate(A, alpha), theta).ok


@settings(max_examples=60, deadline=None)
@given(small_algebras(min_size=2, max_size=4), st.data())
def test_lift_monotone_and_meet_preserving(A, data):
    cons = enumerate_con(A)
    alpha, t, f = (data.draw(st.sampled_from(cons)) for _ in range(3))
    dup = duplicate(A, alpha)
    for side in (0, 1):
        lt, lf = lift(dup, t, side), lift(dup, f, side)
        assert dup.doubled.is_congruence(lt)
        if t <= f:
            assert lt <= lf
        assert lift(dup, congruence_meet(t, f), side) == congruence_meet(lt, lf)


# -- pentagons ---------------------------------------------------------------

def test_pentagon_config_validation(example_a):
    A, p = example_a
    with pytest.raises(DomainError):
        PentagonConfig.from_parts(A, p["alpha"], p["gamma"], p["beta"])
    with pytest.raises(DomainError):
        PentagonConfig.from_parts(A, p["gamma"], p["alpha"], part("|1,2|", 6))


def test_pentagon_condition_examples(example_a, example_b):
    A, p = example_a
    assert pentagon_condition(pentagon(A, p)) == (False, None)
    B, q = example_b
    holds, w = pentagon_condition(pentagon(B, q))
    assert holds and (w[0] + 1, w[1] + 1) == (3, 4)


def test_classify_examples(example_a, example_b):
    A, p = example_a
    res = classify_pentagon(pentagon(A, p))
    assert res.label == "M1" and len(res.lattice) == 11 and not res.refined
    assert isomorphic(res.lattice, build("M1")) == res.iso
    B, q = example_b
    res = classify_pentagon(pentagon(B, q))
    assert res.label == "K" and len(res.lattice) == 14
    assert res.iso is not None


def test_classify_labels_follow_catalog(example_a):
    A, p = example_a
    res = classify_pentagon(pentagon(A, p))
    M1 = build("M1")
    assert sorted(res.lattice.labels) == sorted(M1.labels)
    from freese.lattice import check_isomorphism
    assert check_isomorphism(res.lattice, M1, [M1.index(x) for x in res.lattice.labels])


def test_m1_case_filter_is_d1(example_a):
    A, p = example_a
    res = classify_pentagon(pentagon(A, p))
    L = res.lattice
    sub = _restrict(L, filter_above(L, L.index("gamma_0^gamma_1")))
    assert isomorphic(sub, build("D1")) is not None


def test_refinement_to_a_covering_pair():
    A = no_op_algebra(8)
    gamma = part("|2,3|4,5|6,7|", 8)
    alpha = part("|2,3,6,7|4,5|1,8|", 8)
    beta = part("|1,2|3,4|5,6|7,8|", 8)
    cfg = PentagonConfig.from_parts(A, gamma, alpha, beta)
    L, cons = congruence_interval(A, gamma, alpha)
    assert len(L) == 4 and not covers(L, cons.index(gamma), cons.index(alpha))
    res = classify_pentagon(cfg)
    assert res.refined and res.used.gamma == gamma
    assert res.used.alpha == part("|2,3,6,7|4,5|", 8)
    assert (res.label == "K") == pentagon_condition(res.used)[0]
    raw = classify_pentagon(cfg, refine=False)
    assert not raw.refined


def test_classification_in_a_quotient():
    # the pentagon of example B lifted along the collapse 5 -> 4 of a 5-element set
    A = no_op_algebra(5)
    cfg = PentagonConfig.from_parts(A, part("|1,2|4,5|", 5), part("|1,2|3,4,5|", 5),
                                    part("|1,3|2,4,5|", 5))
    assert not cfg.zero.is_identity()
    res = classify_pentagon(cfg)
    assert res.quotiented and res.label == "K"
    assert pentagon_condition(cfg)[0]


def test_l14_from_duplicating_over_gamma(example_a):
    A, p = example_a
    L, _, match = duplicated_sublattice(pentagon(A, p), "gamma")
    assert match == "L14" and len(L) == 9


def test_lemma_reports_examples(example_a, example_b):
    A, p = example_a
    rep = verify_lemma1(pentagon(A, p))
    assert rep.ok and rep.status("comparable_mixed_meets_collapse") == "pass"
    assert verify_lemma2(pentagon(A, p)).status("mixed_join_strictly_below_alpha_meet") == "n/a"
    B, q = example_b
    assert verify_lemma2(pentagon(B, q)).status("mixed_join_strictly_below_alpha_meet") == "pass"


def test_find_examples(example_a, z2z2):
    chain_alg = FiniteAlgebra("C", 3, (Operation("min", 2, np.minimum.outer(range(3), range(3))),))
    L, _ = con_lattice(chain_alg)
    from freese.lattice import is_distributive
    assert is_distributive(L)
    assert find_pentagons(chain_alg) == [] and find_m3s(chain_alg) == []
    assert len(find_m3s(z2z2)) == 1 and find_pentagons(z2z2) == []
    A, p = example_a
    found = find_pentagons(A)
    assert any(f.gamma == p["gamma"] and f.alpha == p["alpha"] and f.beta == p["beta"]
               for f in found)


def _covering_pentagons(n):
    A = no_op_algebra(n)
    L, cons = con_lattice(A)
    idx = {c: i for i, c in enumerate(cons)}
    return [p for p in find_pentagons(A) if covers(L, idx[p.gamma], idx[p.alpha])]


def test_classification_agrees_with_relational_condition_size_six():
    pents = _covering_pentagons(6)
    rng = np.random.default_rng(6)
    for i in rng.choice(len(pents), size=150, replace=False):
        p = pents[i]
        assert (classify_pentagon(p).label == "K") == pentagon_condition(p)[0]


# -- diamonds ----------------------------------------------------------------

def test_m3_config_validation(z2z2):
    a, b = part("|1,2|3,4|", 4), part("|1,3|2,4|", 4)
    with pytest.raises(DomainError):
        M3Config.from_atoms(z2z2, a, a, b)
    A = no_op_algebra(4)
    with pytest.raises(DomainError):
        M3Config.from_atoms(A, a, b, part("|1,2|", 4))


def test_permute_and_nozero_on_xor(z2z2):
    cfg = find_m3s(z2z2)[0]
    rep = verify_permute(cfg)
    assert rep.ok and all(c.status == "pass" for c in rep.clauses)
    d = lift_diamond(cfg)
    x, y = congruence_meet(d.a0, d.b1), congruence_meet(d.b0, d.a1)
    assert not (x <= y or y <= x)
    assert verify_nozero(cfg).ok


def test_nozero_on_non_three_permuting_diamond():
    found = None
    for n in range(3, 6):
        for m in find_m3s(no_op_algebra(n)):
            if not m.atoms_permute(3):
                found = m
                break
        if found:
            break
    assert found is not None
    rep = verify_nozero(found)
    assert rep.ok and rep.status("three_permuting_atoms_give_incomparable") == "n/a"
    assert verify_permute(found).status("beta0_with_alpha1_is_top0") == "n/a"


def test_build_m33_on_xor(z2z2):
    res = build_m33(find_m3s(z2z2)[0])
    assert res.lifts.dup.doubled.size == 8
    L = res.lattice
    assert len(L) == 8 and isomorphic(L, build("M33")) is not None
    eta0, a0 = L.index("eta_0"), L.index("alpha_0")
    lower_atoms = {L.labels[x] for x in range(8) if L.cover_matrix()[L.bottom, x]}
    assert lower_atoms == {"alpha_0^alpha_1", "alpha_0^beta_1", "eta_0"}
    assert {L.labels[x] for x in range(8) if L.cover_matrix()[x, a0]} == lower_atoms
    assert {L.labels[x] for x in range(8) if L.cover_matrix()[eta0, x]} == \
        {"alpha_0", "beta_0", "gamma_0"}


def test_build_m33_rejects_non_permuting():
    m = next(m for m in find_m3s(no_op_algebra(4)) if not m.atoms_permute(2))
    with pytest.raises(DomainError):
        build_m33(m)


def _abelian_group_algebras():
    """Z4, Z2^2 and Z6 with addition, plus Z3^2 given by its group table."""
    out = []
    for n in (4, 6):
        x = np.arange(n)
        out.append(FiniteAlgebra(f"Z{n}", n, (Operation("add", 2, (x[:, None] + x[None, :]) % n),)))
    x = np.arange(9)
    add = ((x[:, None] // 3 + x[None, :] // 3) % 3) * 3 + (x[:, None] + x[None, :]) % 3
    out.append(FiniteAlgebra("Z3Z3", 9, (Operation("add", 2, add),)))
    y = np.arange(8)
    out.append(FiniteAlgebra("Z2Z4", 8, (Operation("add", 2, ((y[:, None] // 4 + y[None, :] // 4) % 2) * 4
                                                    + (y[:, None] + y[None, :]) % 4),)))
    return out


def test_m33_on_group_diamonds():
    count = 0
    for A in _abelian_group_algebras():
        for m in find_m3s(A):
            assert m.atoms_permute(2)
            res = build_m33(m)
            assert len(res.lattice) == 8
            count += 1
    assert count >= 4


# -- chains of diamonds --------------------------------------------------------

@pytest.mark.parametrize("shape,n", [("rod", 4), ("snake", 4), ("G:LR", 3), ("G:LL", 3)])
def test_iterate_chains(z2z2, shape, n):
    steps = iterate_rods(find_m3s(z2z2)[0], n, shape)
    assert [s.algebra.size for s in steps] == [4 * 2 ** k for k in range(n)]
    for s in steps:
        assert s.report.ok, s.report.lines()
    last = steps[-1]
    target = {"rod": f"R{n}", "snake": f"S{n}"}.get(shape, shape)
    assert isomorphic(last.lattice, build(target)) is not None


def test_first_step_is_the_diamond(z2z2):
    cfg = find_m3s(z2z2)[0]
    (step,) = iterate_rods(cfg, 1)
    assert set(step.named.values()) == set(cfg.parts())


def test_second_step_matches_m33(z2z2):
    cfg = find_m3s(z2z2)[0]
    steps = iterate_rods(cfg, 2)
    m33 = build_m33(cfg)
    assert set(steps[1].named.values()) == set(m33.named.values())


def test_iterate_limits(z2z2):
    with pytest.raises(LimitExceeded) as exc:
        iterate_rods(find_m3s(z2z2)[0], 6, max_universe=40)
    assert "reached n=4" in str(exc.value)
    with pytest.raises(DomainError):
        iterate_rods(find_m3s(z2z2)[0], 3, "G:R")
