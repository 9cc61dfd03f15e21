"""Locality construction, axiom checking, quotients, and O_p' tests."""

import pytest

from locus.locality import (
    ExplicitPartialGroup,
    Locality,
    LocalityError,
    PartialNormalSubgroup,
    build_locality,
    check_locality_axioms,
    check_partial_group,
    delta_all_nontrivial,
    delta_min_order,
    is_partial_normal,
    o_pprime_locality,
    quotient_locality,
)
from locus.permgroups import sylow

from conftest import bundled


def punctured(name, p):
    G = bundled(name)
    S = sylow(G, p)
    return build_locality(G, S, delta_all_nontrivial(S), p)


def test_build_s4_punctured_carrier_full():
    L = punctured("s4", 2)
    # V4 = O_2(S4) lies in every S cap S^g
    assert len(L.carrier) == 24


def test_build_a6_carrier_by_scan():
    G = bundled("a6")
    S = sylow(G, 2)
    L = build_locality(G, S, delta_min_order(S, 4), 2)
    sm = S.members
    expected = [g for g in range(G.order)
                if len([x for x in sm if G.conj(x, g) in sm]) >= 4]
    assert list(L.carrier) == expected

    Lp = punctured("a6", 2)
    expected_p = [g for g in range(G.order)
                  if len([x for x in sm if G.conj(x, g) in sm]) > 1]
    assert list(Lp.carrier) == expected_p


def test_build_rejects_non_closed_delta():
    G = bundled("a6")
    S = sylow(G, 2)
    objs = delta_all_nontrivial(S)
    v4s = [m for m in objs if len(m) == 4 and G.subgroup(m).is_elementary_abelian(2)]
    broken = [m for m in objs if m != v4s[0]]
    with pytest.raises(LocalityError):
        build_locality(G, S, broken, 2)


def test_check_partial_group_s4():
    L = punctured("s4", 2)
    assert check_partial_group(L, samples=3000).passed


def test_check_partial_group_a6():
    L = punctured("a6", 2)
    assert check_partial_group(L, samples=5000).passed


def test_corrupted_table_fails():
    # materialize a tiny explicit table and corrupt one inversion product
    table = {}
    size = 3  # C3 as a total group: elements 0,1,2 with addition mod 3
    inv = [0, 2, 1]
    words = [()]
    for a in range(size):
        words.append((a,))
        for b in range(size):
            words.append((a, b))
    for w in words:
        table[w] = sum(w) % 3
    table[(1, 2)] = 1  # corrupt Pi(g, g^-1)
    rep = ExplicitPartialGroup(size, inv, table).check()
    assert not rep.passed
    assert any("Pi(w^-1 o w)" in f or "splice" in f for f in rep.failures)


def test_locality_axioms_a6():
    L = punctured("a6", 2)
    assert check_locality_axioms(L, samples=3000).passed


def test_locality_axioms_fail_missing_object():
    G = bundled("a6")
    S = sylow(G, 2)
    objs = delta_all_nontrivial(S)
    v4s = [m for m in objs if len(m) == 4 and G.subgroup(m).is_elementary_abelian(2)]
    broken = [m for m in objs if m != v4s[0]]
    Lgood = build_locality(G, S, objs, 2)
    Lbad = Locality(G, S, 2, broken, Lgood.carrier)
    rep = check_locality_axioms(Lbad, samples=500)
    assert not rep.passed
    assert any("(L3)" in f or "(L2)" in f for f in rep.failures)


def test_restriction_passes_axioms():
    G = bundled("a6")
    S = sylow(G, 2)
    L = punctured("a6", 2)
    Lc = L.restrict(delta_min_order(S, 4))
    assert check_locality_axioms(Lc, samples=2000).passed
    assert check_partial_group(Lc, samples=2000).passed


def test_restriction_to_s_is_normalizer():
    L = punctured("a6", 2)
    S = L.sylow
    LS = L.restrict([frozenset(S.members)])
    NS, _ = L.local_subgroup(frozenset(S.members), "normalizer")
    assert set(LS.carrier) == set(NS.members)


def test_restriction_idempotent():
    G = bundled("a6")
    S = sylow(G, 2)
    L = punctured("a6", 2)
    once = L.restrict(delta_min_order(S, 4))
    twice = L.restrict(delta_min_order(S, 2)).restrict(delta_min_order(S, 4))
    assert once.carrier == twice.carrier
    assert once.objects == twice.objects


def test_s_sub_examples():
    L = punctured("a6", 2)
    G = L.ambient
    assert L.s_word((G.identity,)) == L.sylow.members
    g5 = next(x for x in range(G.order) if G.element_order(x) == 5)
    assert len(L.s_word((g5,))) <= 2


def test_s_sub_contained_in_s_of_product():
    import random

    L = punctured("a6", 2)
    rng = random.Random(5)
    for _ in range(300):
        w = tuple(rng.choice(L.carrier) for _ in range(rng.randint(1, 4)))
        sw = L.s_word(w)
        sprod = L.s_word((L.product(w),))
        assert sw <= sprod


def test_s_g_invariants():
    L = punctured("a6", 2)
    G = L.ambient
    for g in L.carrier:
        sg = L.s_word((g,))
        assert sg in L.objects
        sginv = L.s_word((G.inv(g),))
        assert frozenset(G.conj(x, g) for x in sg) == sginv


def test_local_subgroup_examples():
    L = punctured("a6", 2)
    G = L.ambient
    z = next(x for x in L.sylow.members
             if x != G.identity
             and all(G.mul(x, s) == G.mul(s, x) for s in L.sylow.members))
    NZ, guaranteed = L.local_subgroup(frozenset([G.identity, z]), "normalizer")
    assert guaranteed and NZ.order == 8

    L2 = punctured("a6xc3", 2)
    G2 = L2.ambient
    z2 = next(x for x in L2.sylow.members
              if x != G2.identity
              and all(G2.mul(x, s) == G2.mul(s, x) for s in L2.sylow.members))
    NZ2, _ = L2.local_subgroup(frozenset([G2.identity, z2]), "normalizer")
    assert NZ2.order == 24

    L3 = punctured("s4", 2)
    from locus.permgroups import o_p

    V4 = frozenset(o_p(L3.ambient, 2).members)
    NV, _ = L3.local_subgroup(V4, "normalizer")
    assert NV.order == 24


def test_conjugation_word_composite():
    # composite of step conjugations equals conjugation by the product
    import random

    L = punctured("a6", 2)
    G = L.ambient
    rng = random.Random(11)
    for _ in range(200):
        w = tuple(rng.choice(L.carrier) for _ in range(3))
        if not L.in_domain(w):
            continue
        pairs = L.s_word_pairs(w)
        prod = L.product(w)
        for s, t in pairs:
            assert G.conj(s, prod) == t


def test_is_partial_normal():
    L = punctured("a6xc3", 2)
    G = L.ambient
    c3 = [x for x in range(G.order) if G.element_order(x) in (1, 3)
          and all(G.mul(x, y) == G.mul(y, x) for y in G.generators)]
    C3 = frozenset(x for x in c3 if G.element_order(x) == 1 or _moves_only_tail(G, x))
    assert len(C3) == 3
    ok, _ = is_partial_normal(L, C3)
    assert ok

    L6 = punctured("a6", 2)
    G6 = L6.ambient
    z = next(x for x in L6.sylow.members if x != G6.identity
             and all(G6.mul(x, s) == G6.mul(s, x) for s in L6.sylow.members))
    ok, why = is_partial_normal(L6, frozenset([G6.identity, z]))
    assert not ok and why

    ok, _ = is_partial_normal(L6, frozenset([G6.identity]))
    assert ok


def _moves_only_tail(G, x):
    p = G.perm(x)
    return all(p[i] == i for i in range(6)) and any(p[i] != i for i in range(6, 9))


def _c3_factor(L):
    G = L.ambient
    return frozenset(
        x for x in range(G.order)
        if G.element_order(x) == 1 or (G.element_order(x) == 3 and _moves_only_tail(G, x)))


def test_quotient_locality_a6xc3():
    L = punctured("a6xc3", 2)
    G = L.ambient
    C3 = _c3_factor(L)
    N = PartialNormalSubgroup(L, C3)
    q = quotient_locality(L, N)
    assert q.report.passed
    assert len(q.locality.carrier) * 3 == len(L.carrier)
    # preimage of S-bar equals NS: 3 * 8 = 24 elements
    sbar = {q.projection[s] for s in L.sylow.members}
    preim = [x for x in L.carrier if q.projection[x] in sbar]
    assert len(preim) == 24
    assert check_locality_axioms(q.locality, samples=1500).passed


def test_quotient_by_trivial_is_identity():
    L = punctured("s4", 2)
    G = L.ambient
    N = PartialNormalSubgroup(L, frozenset([G.identity]))
    q = quotient_locality(L, N)
    assert len(q.locality.carrier) == len(L.carrier)
    assert q.locality.ambient.order == G.order


def test_o_pprime_punctured_a6_trivial():
    L = punctured("a6", 2)
    N, route = o_pprime_locality(L)
    assert N.order == 1
    assert route == "locally-trivial"


def test_o_pprime_a6xc3():
    L = punctured("a6xc3", 2)
    N, route = o_pprime_locality(L)
    assert N.order == 3
    assert N.members == _c3_factor(L)


def test_o_pprime_centric_a6_trivial():
    G = bundled("a6")
    S = sylow(G, 2)
    L = build_locality(G, S, delta_min_order(S, 4), 2)
    N, _ = o_pprime_locality(L)
    assert N.order == 1


def test_quotient_by_o_pprime_is_reduced():
    L = punctured("a6xc3", 2)
    N, _ = o_pprime_locality(L)
    q = quotient_locality(L, N)
    N2, _ = o_pprime_locality(q.locality)
    assert N2.order == 1


@pytest.mark.slow
def test_small_cover_locality_is_normalizer():
    # For the order-60480 cover with extraspecial Sylow 3-subgroup, the
    # locality on subgroups of order >= 9 collapses to N_M(S), and fusion
    # is controlled by that normalizer.
    M = bundled("sl3_4")
    S = sylow(M, 3)
    assert S.order == 27 and S.exponent() == 3
    sm = S.members
    carrier = [g for g in range(M.order)
               if len([x for x in sm if M.conj(x, g) in sm]) >= 9]
    NS = [g for g in range(M.order)
          if all(M.conj(x, g) in sm for x in S.gens())]
    assert carrier == NS

    from locus.fusion import fusion_of_group
    from locus.locality import as_group

    FM = fusion_of_group(M, S, 3)
    NSg = as_group(M, M.subgroup(NS, name="N_M(S)"))
    NSg.build_tables()
    Ssub = NSg.subgroup({NSg.index(M.perm(x)) for x in S.members})
    FNS = fusion_of_group(NSg, Ssub, 3)
    # compare after transporting along the identity on S
    for P in FM.subgroups:
        moved = {tuple(sorted((NSg.index(M.perm(x)), NSg.index(M.perm(y)))
                             for x, y in k))
                 for k in FM.maps_from[P]}
        Ploc = frozenset(NSg.index(M.perm(x)) for x in P)
        assert moved == FNS.maps_from[Ploc]
