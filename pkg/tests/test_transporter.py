"""Transporter system, orbit category, product/pullback tests."""

import pytest

from locus.locality import build_locality, delta_all_nontrivial
from locus.permgroups import o_p, sylow
from locus.transporter import (
    boxtimes,
    check_transporter_axioms,
    components_match,
    double_coset_components,
    kmax,
    mor_counts_mod_p,
    orbit_category,
    pullback,
    restriction_fixed_points,
    transporter_of_locality,
)

from conftest import bundled


def _setup(name, p):
    G = bundled(name)
    S = sylow(G, p)
    L = build_locality(G, S, delta_all_nontrivial(S), p)
    T, rep = transporter_of_locality(L)
    assert rep.passed, rep.failures
    OT, orep = orbit_category(T)
    assert orep.passed, orep.failures
    return G, S, L, T, OT


import functools


@functools.lru_cache(maxsize=None)
def setup_s4():
    return _setup("s4", 2)


@functools.lru_cache(maxsize=None)
def setup_a6():
    return _setup("a6", 2)


def test_mor_v4_s4_has_24_triples():
    G, S, L, T, OT = setup_s4()
    V4 = frozenset(o_p(G, 2).members)
    assert len(T.mor_elements(V4, V4)) == 24


def test_aut_T_S_of_a6_is_S():
    G, S, L, T, OT = setup_a6()
    Sset = frozenset(S.members)
    assert len(T.mor_elements(Sset, Sset)) == 8


def test_e_kernel_of_s_a6():
    G, S, L, T, OT = setup_a6()
    Sset = frozenset(S.members)
    assert len(T.e_kernel(Sset)) == 2  # Z(S) acts trivially on fusion


def test_axioms_pass_both():
    for setup in (setup_s4, setup_a6):
        G, S, L, T, OT = setup()
        rep = check_transporter_axioms(T)
        assert rep.passed, rep.failures


def test_morphism_factorization_iso_then_inclusion():
    G, S, L, T, OT = setup_a6()
    for P in T.objects:
        for Q in T.objects:
            for f in T.mor_elements(P, Q):
                img = frozenset(T.left_conj(x, f) for x in P)
                assert img <= Q
                assert f in T.iso_elements(P, img)


def test_orbit_mor_s_s_odd():
    G, S, L, T, OT = setup_a6()
    Sset = frozenset(S.members)
    assert len(OT.mor(Sset, Sset)) % 2 == 1


def test_mor_counts_all_odd():
    for setup in (setup_s4, setup_a6):
        G, S, L, T, OT = setup()
        for i, count in mor_counts_mod_p(OT).items():
            assert count % 2 == 1, (i, count)


def test_restriction_fixed_points_all_normal_pairs():
    for setup in (setup_s4, setup_a6):
        G, S, L, T, OT = setup()
        for P in OT.objects:
            for Q in OT.objects:
                if P < Q and G.subgroup(P).is_normal_in(G.subgroup(Q)):
                    rep = restriction_fixed_points(OT, P, Q)
                    assert rep.passed, (len(P), len(Q), rep.failures)


def test_restriction_p_equals_q_identity():
    G, S, L, T, OT = setup_a6()
    P = next(o for o in OT.objects if len(o) == 2)
    rep = restriction_fixed_points(OT, P, P)
    assert rep.passed


def test_kmax_s_source():
    G, S, L, T, OT = setup_a6()
    Sset = frozenset(S.members)
    for Q in OT.objects:
        data = kmax(T, Sset, Q)
        # morphisms from S never extend: A = S for every pair with f in Mor(S, Q)
        for A, f in data.pairs:
            if f in set(T.mor_elements(Sset, Q)):
                assert A == Sset


def test_kmax_uniqueness_s4_exhaustive():
    G, S, L, T, OT = setup_s4()
    for P in T.objects:
        for Q in T.objects:
            kmax(T, P, Q, verify=True)


def test_boxtimes_universal_s4():
    G, S, L, T, OT = setup_s4()
    for P in OT.objects:
        for Q in OT.objects:
            _, rep = boxtimes(OT, P, Q)
            assert rep.passed, (len(P), len(Q), rep.failures)


def test_boxtimes_symmetric_components():
    G, S, L, T, OT = setup_s4()
    for P in OT.objects:
        for Q in OT.objects:
            b1, _ = boxtimes(OT, P, Q, verify=False)
            b2, _ = boxtimes(OT, Q, P, verify=False)
            assert sorted(len(c) for c in b1.components) == \
                sorted(len(c) for c in b2.components)


def test_boxtimes_with_s():
    G, S, L, T, OT = setup_a6()
    Sset = frozenset(S.members)
    P = next(o for o in OT.objects if len(o) == 2)
    obj, rep = boxtimes(OT, P, Sset)
    assert rep.passed
    for R in OT.objects:
        total = sum(len(OT.mor(R, A)) for A in obj.components)
        assert total == len(OT.mor(R, P)) * len(OT.mor(R, Sset))


def test_pullback_identity_cospan():
    G, S, L, T, OT = setup_s4()
    for P in OT.objects:
        ident = OT._orbit_of[(G.identity, P, P)]
        obj, rep = pullback(OT, ident, P, ident, P, P)
        assert rep.passed
        # U(id, id) is P itself up to the the orbit bookkeeping: one
        # component in the class of P of full size
        assert max(len(c) for c in obj.components) == len(P)


def test_pullback_inclusion_cospan_v4_c4_d8():
    G, S, L, T, OT = setup_s4()
    Sset = frozenset(S.members)
    V4 = frozenset(o_p(G, 2).members)
    C4 = next(o for o in OT.objects if len(o) == 4 and o != V4
              and any(G.element_order(x) == 4 for x in o))
    fP = OT._orbit_of[(G.identity, V4, Sset)]
    fQ = OT._orbit_of[(G.identity, C4, Sset)]
    obj, rep = pullback(OT, fP, V4, fQ, C4, Sset)
    assert rep.passed, rep.failures
    oracle = double_coset_components(T, V4, C4, Sset)
    assert components_match(T, V4, obj.components, oracle)
    # D8 = C4 V4, a single double coset with intersection Z of order 2
    assert len(obj.components) == 1 and len(obj.components[0]) == 2


def test_pullback_all_inclusion_cospans_match_double_cosets():
    for setup in (setup_s4, setup_a6):
        G, S, L, T, OT = setup()
        for R in OT.objects:
            subs = [P for P in OT.objects if P <= R]
            for P in subs:
                for Q in subs:
                    fP = OT._orbit_of[(G.identity, P, R)]
                    fQ = OT._orbit_of[(G.identity, Q, R)]
                    obj, rep = pullback(OT, fP, P, fQ, Q, R, verify=False)
                    oracle = double_coset_components(T, P, Q, R)
                    assert components_match(T, P, obj.components, oracle), \
                        (len(P), len(Q), len(R))


def test_pullback_universal_all_cospans_s4():
    G, S, L, T, OT = setup_s4()
    for R in OT.objects:
        for P in OT.objects:
            for Q in OT.objects:
                for fo in OT.mor(P, R):
                    for go in OT.mor(Q, R):
                        _, rep = pullback(OT, fo, P, go, Q, R)
                        assert rep.passed, (len(P), len(Q), len(R))
