"""Fusion systems over a finite p-group, from groups or localities.

Morphisms are stored as explicit deduplicated maps (the sorted graph of the
injection), so systems built from a group and from a locality over it can
be compared pairwise on the nose.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .permgroups import (
    Group,
    GroupError,
    Subgroup,
    all_subgroups,
    centralizer_set,
    o_p,
    p_part,
    quotient_group,
    sylow,
)

MemberSet = FrozenSet[int]
MapKey = Tuple[Tuple[int, int], ...]


class FusionError(ValueError):
    pass


def _map_key(mapping: Dict[int, int]) -> MapKey:
    return tuple(sorted(mapping.items()))


def _key_domain(key: MapKey) -> MemberSet:
    return frozenset(x for x, _ in key)


def _key_image(key: MapKey) -> MemberSet:
    return frozenset(y for _, y in key)


def _key_dict(key: MapKey) -> Dict[int, int]:
    return dict(key)


class FusionSystem:
    """Hom-sets of injective homomorphisms between subgroups of S."""

    def __init__(self, group: Group, sylow_sub: Subgroup, prime: int,
                 maps_from: Dict[MemberSet, Set[MapKey]], provenance: str):
        self.group = group
        self.sylow = sylow_sub
        self.prime = prime
        self.subgroups: List[MemberSet] = sorted(
            all_subgroups(sylow_sub), key=lambda m: (len(m), sorted(m)))
        self.maps_from = {P: set(maps_from.get(P, set())) for P in self.subgroups}
        self.provenance = provenance
        self._classes: Optional[List[List[MemberSet]]] = None

    # -- morphisms ------------------------------------------------------

    def hom(self, P: MemberSet, Q: MemberSet) -> List[MapKey]:
        """Hom_F(P, Q), canonically ordered."""
        P, Q = frozenset(P), frozenset(Q)
        return sorted(k for k in self.maps_from[P] if _key_image(k) <= Q)

    def isos(self, P: MemberSet, Q: MemberSet) -> List[MapKey]:
        Q = frozenset(Q)
        return [k for k in self.hom(P, Q) if _key_image(k) == Q]

    def aut(self, P: MemberSet) -> List[MapKey]:
        return self.isos(P, P)

    def aut_group(self, P: MemberSet) -> Group:
        """Aut_F(P) as a permutation group on the points moved by P."""
        return _maps_as_group(self.group, P, self.aut(P))

    def aut_s(self, P: MemberSet) -> List[MapKey]:
        """Aut_S(P): conjugations by elements of N_S(P)."""
        G = self.group
        out = set()
        for s in self.sylow.members:
            if all(G.conj(x, s) in P for x in P):
                out.add(_map_key({x: G.conj(x, s) for x in P}))
        return sorted(out)

    # -- conjugacy ------------------------------------------------------

    def classes(self) -> List[List[MemberSet]]:
        """F-conjugacy classes of all subgroups of S."""
        if self._classes is None:
            remaining = set(self.subgroups)
            out: List[List[MemberSet]] = []
            for P in self.subgroups:
                if P not in remaining:
                    continue
                orbit = {P}
                frontier = [P]
                while frontier:
                    nxt = []
                    for Q in frontier:
                        for k in self.maps_from[Q]:
                            img = _key_image(k)
                            if len(img) == len(Q) and img not in orbit:
                                orbit.add(img)
                                nxt.append(img)
                    frontier = nxt
                remaining -= orbit
                out.append(sorted(orbit, key=sorted))
            self._classes = out
        return self._classes

    def class_of(self, P: MemberSet) -> List[MemberSet]:
        P = frozenset(P)
        for cls in self.classes():
            if P in cls:
                return cls
        raise FusionError("subgroup not under S")

    def n_s(self, P: MemberSet) -> MemberSet:
        G = self.group
        return frozenset(s for s in self.sylow.members
                         if all(G.conj(x, s) in P for x in P))

    def c_s(self, P: MemberSet) -> MemberSet:
        G = self.group
        return frozenset(s for s in self.sylow.members
                         if all(G.conj(x, s) == x for x in P))

    def fully_normalized(self, P: MemberSet) -> bool:
        n = len(self.n_s(P))
        return all(len(self.n_s(Q)) <= n for Q in self.class_of(P))

    def fully_centralized(self, P: MemberSet) -> bool:
        c = len(self.c_s(P))
        return all(len(self.c_s(Q)) <= c for Q in self.class_of(P))

    def __repr__(self) -> str:
        total = sum(len(v) for v in self.maps_from.values())
        return (f"FusionSystem(p={self.prime}, |S|={self.sylow.order}, "
                f"maps={total}, from={self.provenance})")


def _maps_as_group(G: Group, P: MemberSet, keys: Sequence[MapKey]) -> Group:
    """View a set of automorphism keys of P as a permutation group."""
    pts = sorted(P)
    pos = {x: i for i, x in enumerate(pts)}
    perms = []
    for k in keys:
        d = _key_dict(k)
        perms.append(tuple(pos[d[x]] for x in pts))
    ident = tuple(range(len(pts)))
    gens = [p for p in perms if p != ident] or [ident]
    H = Group(len(pts), gens, name="AutF(P)")
    if H.order != len(set(keys)):
        raise FusionError("automorphism set is not composition-closed")
    return H


# -- constructions ----------------------------------------------------------

def fusion_of_group(G: Group, S: Subgroup, prime: Optional[int] = None,
                    name: str = "") -> FusionSystem:
    """F_S(G): all conjugation maps between subgroups of S."""
    prime = prime or _prime_of(S)
    if p_part(G.order, prime) != S.order:
        raise FusionError("S is not a Sylow p-subgroup of G")
    sm = S.members
    maps_from: Dict[MemberSet, Set[MapKey]] = {}
    for P in all_subgroups(S):
        gens = G.subgroup(P).gens()
        seen: Set[MapKey] = set()
        for g in range(G.order):
            if not all(G.conj(x, g) in sm for x in gens):
                continue
            mapping = {x: G.conj(x, g) for x in P}
            if not frozenset(mapping.values()) <= sm:
                continue
            seen.add(_map_key(mapping))
        maps_from[P] = seen
    return FusionSystem(G, S, prime, maps_from, name or f"F_S({G.name})")


def fusion_of_locality(L) -> FusionSystem:
    """F_S(L): generated by the conjugation maps c_g on subgroups of S_g."""
    G = L.ambient
    S = L.sylow
    sm = S.members
    subgroups = all_subgroups(S)
    maps_from: Dict[MemberSet, Set[MapKey]] = {P: set() for P in subgroups}

    for g in L.carrier:
        sg = L.s_word((g,))
        for P in subgroups:
            if P <= sg:
                maps_from[P].add(_map_key({x: G.conj(x, g) for x in P}))

    # close under restriction and composition
    changed = True
    while changed:
        changed = False
        for P in subgroups:
            for k in list(maps_from[P]):
                img = _key_image(k)
                d = _key_dict(k)
                for Q in subgroups:
                    if Q < P:
                        rk = _map_key({x: d[x] for x in Q})
                        if rk not in maps_from[Q]:
                            maps_from[Q].add(rk)
                            changed = True
                for k2 in list(maps_from[img]):
                    d2 = _key_dict(k2)
                    ck = _map_key({x: d2[d[x]] for x in P})
                    if ck not in maps_from[P]:
                        maps_from[P].add(ck)
                        changed = True
    return FusionSystem(G, S, L.prime, maps_from, f"F_S({L.name})")


def _prime_of(S: Subgroup) -> int:
    n = S.order
    if n == 1:
        raise FusionError("trivial S has no prime")
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return p
    raise FusionError("S is not a p-group for a small prime")


def fusion_systems_equal(F1: FusionSystem, F2: FusionSystem) -> bool:
    """Exact hom-set equality over a shared ambient element numbering."""
    if F1.sylow.members != F2.sylow.members:
        return False
    return all(F1.maps_from[P] == F2.maps_from[P] for P in F1.subgroups)


def fusion_systems_agree_via(F1: FusionSystem, F2: FusionSystem,
                             iso: Dict[int, int]) -> bool:
    """Hom-set equality after transporting F1 along an isomorphism of S."""
    if set(iso) != set(F1.sylow.members):
        return False
    if frozenset(iso.values()) != F2.sylow.members:
        return False
    for P in F1.subgroups:
        img_P = frozenset(iso[x] for x in P)
        moved = {
            tuple(sorted((iso[x], iso[y]) for x, y in k))
            for k in F1.maps_from[P]
        }
        if moved != F2.maps_from[img_P]:
            return False
    return True


# -- saturation ---------------------------------------------------------------

def is_saturated(F: FusionSystem) -> Tuple[bool, List[str]]:
    """Saturation via: every class has a fully automized, receptive member.

    Conventions follow the standard formulation: a fully normalized member
    must have Aut_S(P) of full p-power index in Aut_F(P) (fully automized),
    and every isomorphism onto it must extend to its N_phi (receptive).
    """
    witnesses: List[str] = []
    for cls in F.classes():
        candidates = [P for P in cls if F.fully_normalized(P)]
        good = False
        reasons: List[str] = []
        for P in candidates:
            if not _fully_automized(F, P):
                reasons.append(f"|P|={len(P)}: Aut_S not Sylow in Aut_F")
                continue
            failed = _receptive_failure(F, P)
            if failed is not None:
                reasons.append(f"|P|={len(P)}: extension axiom fails {failed}")
                continue
            good = True
            break
        if not good:
            witnesses.append("; ".join(reasons) or f"class of order {len(cls[0])}")
    return not witnesses, witnesses


def _fully_automized(F: FusionSystem, P: MemberSet) -> bool:
    aut = len(F.aut(P))
    aut_s = len(set(F.aut_s(P)))
    return aut % aut_s == 0 and (aut // aut_s) % F.prime != 0


def _receptive_failure(F: FusionSystem, P: MemberSet) -> Optional[str]:
    G = F.group
    for Q in F.class_of(P):
        for k in F.isos(Q, P):
            d = _key_dict(k)
            dinv = {y: x for x, y in d.items()}
            aut_s_P = set(F.aut_s(P))
            n_phi = set()
            for g in F.n_s(Q):
                conj_map = {x: G.conj(x, g) for x in Q}
                moved = _map_key({d[x]: d[conj_map[x]] for x in Q})
                if moved in aut_s_P:
                    n_phi.add(g)
            n_phi_set = frozenset(n_phi)
            if n_phi_set == Q:
                continue
            if n_phi_set not in F.maps_from:
                return f"N_phi not a recorded subgroup for |Q|={len(Q)}"
            extended = False
            for ext in F.maps_from[n_phi_set]:
                e = _key_dict(ext)
                if all(e[x] == d[x] for x in Q):
                    extended = True
                    break
            if not extended:
                return f"phi from |Q|={len(Q)} with |N_phi|={len(n_phi_set)}"
    return None


# -- classification ------------------------------------------------------------

class SubgroupClassification:
    """Per-class flags keyed by the class representative."""

    def __init__(self, F: FusionSystem):
        self.F = F
        self.flags: Dict[MemberSet, Dict[str, object]] = {}
        self.o_p_f: Optional[MemberSet] = None

    def rep(self, P: MemberSet) -> MemberSet:
        cls = self.F.class_of(P)
        return cls[0]

    def of(self, P: MemberSet) -> Dict[str, object]:
        return self.flags[self.rep(P)]

    def all_with(self, flag: str) -> List[MemberSet]:
        """All subgroups (not just reps) whose class carries the flag."""
        out = []
        for rep, rec in self.flags.items():
            if rec[flag]:
                out.extend(self.F.class_of(rep))
        return sorted(out, key=lambda m: (len(m), sorted(m)))


def out_group(F: FusionSystem, P: MemberSet) -> Tuple[Group, Dict[int, int]]:
    """Out_F(P) = Aut_F(P)/Inn(P) as a group, plus the projection."""
    G = F.group
    autg = F.aut_group(P)
    pts = sorted(P)
    pos = {x: i for i, x in enumerate(pts)}
    inn = set()
    for s in P:
        inn.add(autg.index(tuple(pos[G.conj(x, s)] for x in pts)))
    return quotient_group(autg, autg.subgroup(inn))


def has_strongly_p_embedded(H: Group, p: int) -> bool:
    """Search all subgroups M with p | |M| and p coprime |M cap M^g| off M."""
    if H.order % p != 0:
        return False
    from .permgroups import all_subgroups as subs_of

    candidates = subs_of(H.full_subgroup())
    for M in candidates:
        if len(M) == H.order or len(M) % p != 0:
            continue
        good = True
        for g in range(H.order):
            if g in M:
                continue
            Mg = frozenset(H.conj(x, g) for x in M)
            if len(M & Mg) % p == 0:
                good = False
                break
        if good:
            return True
    return False


def classify_subgroups(F: FusionSystem) -> SubgroupClassification:
    """Centric / radical / essential / subcentric flags plus O_p(F)."""
    out = classify_subgroups_core_only(F)
    G = F.group
    essentials = [rec["fully_normalized_rep"] for rec in out.flags.values()
                  if rec["essential"]]
    for R in F.subgroups:
        if _normal_in_fusion(F, R, essentials) and not R <= out.o_p_f:
            raise FusionError("normal subgroups do not have a unique maximum")

    # subcentric: the normalizer of a fully normalized rep is constrained
    for rep, rec in out.flags.items():
        if len(rep) == 1:
            rec["subcentric"] = False
            continue
        fn = rec["fully_normalized_rep"]
        rec["subcentric"] = _normalizer_is_constrained(F, fn)
    return out


def _normal_in_fusion(F: FusionSystem, R: MemberSet,
                      essentials: List[MemberSet]) -> bool:
    """Alperin-style: R normal in S, inside every essential subgroup, and
    invariant under Aut_F(E) for all essential E and under Aut_F(S)."""
    G = F.group
    S = F.sylow.members
    if not all(G.conj(x, s) in R for x in R for s in F.sylow.gens()):
        return False
    for E in essentials + [S]:
        if not R <= E:
            return False
        for k in F.aut(E):
            d = _key_dict(k)
            if frozenset(d[x] for x in R) != R:
                return False
    return True


def _normalizer_is_constrained(F: FusionSystem, P: MemberSet) -> bool:
    NF = normalizer_subsystem(F, P)
    cls = classify_subgroups_core_only(NF)
    Op = cls.o_p_f
    return NF.c_s(Op) <= Op


def classify_subgroups_core_only(F: FusionSystem) -> SubgroupClassification:
    """Like classify_subgroups but skipping the subcentric recursion."""
    sat, wit = is_saturated(F)
    if not sat:
        raise FusionError(f"not saturated: {wit[:1]}")
    G = F.group
    out = SubgroupClassification(F)
    for cls in F.classes():
        rep = cls[0]
        centric = all(F.c_s(Q) <= Q for Q in cls)
        fn_rep = next(Q for Q in cls if F.fully_normalized(Q))
        OutP, _ = out_group(F, fn_rep)
        radical = o_p(OutP, F.prime).order == 1
        essential = bool(
            len(rep) > 1 and centric and radical
            and has_strongly_p_embedded(OutP, F.prime))
        out.flags[rep] = {
            "order": len(rep),
            "class_size": len(cls),
            "centric": centric,
            "radical": radical,
            "essential": essential,
            "fully_normalized_rep": fn_rep,
            "aut_order": len(F.aut(fn_rep)),
            "out_order": OutP.order,
        }
    essentials = [rec["fully_normalized_rep"] for rec in out.flags.values()
                  if rec["essential"]]
    best: MemberSet = frozenset([G.identity])
    for R in F.subgroups:
        if _normal_in_fusion(F, R, essentials) and len(R) > len(best):
            best = R
    out.o_p_f = best
    return out


# -- normalizer and centralizer subsystems ---------------------------------

def normalizer_subsystem(F: FusionSystem, P: MemberSet) -> FusionSystem:
    """N_F(P) over N_S(P): morphisms extending to AP -> BP normalizing P."""
    P = frozenset(P)
    if not F.fully_normalized(P):
        raise FusionError("P must be fully normalized")
    return _local_subsystem(F, P, pointwise=False)


def centralizer_subsystem(F: FusionSystem, P: MemberSet) -> FusionSystem:
    P = frozenset(P)
    if not F.fully_centralized(P):
        raise FusionError("P must be fully centralized")
    return _local_subsystem(F, P, pointwise=True)


def _local_subsystem(F: FusionSystem, P: MemberSet, pointwise: bool) -> FusionSystem:
    G = F.group
    NS = F.c_s(P) if pointwise else F.n_s(P)
    NS_sub = G.subgroup(NS, name="N_S(P)" if not pointwise else "C_S(P)")
    maps_from: Dict[MemberSet, Set[MapKey]] = {}
    for A in all_subgroups(NS_sub):
        AP = G.closure(sorted(A | P))
        collected: Set[MapKey] = set()
        for k in F.maps_from[frozenset(AP)]:
            d = _key_dict(k)
            if pointwise:
                if not all(d[x] == x for x in P):
                    continue
            else:
                if frozenset(d[x] for x in P) != P:
                    continue
            img_A = frozenset(d[x] for x in A)
            if img_A <= NS:
                collected.add(_map_key({x: d[x] for x in A}))
        maps_from[frozenset(A)] = collected
    label = "C" if pointwise else "N"
    return FusionSystem(G, NS_sub, F.prime, maps_from,
                        f"{label}_F(P) in {F.provenance}")


def is_characteristic_p_type(F: FusionSystem) -> Tuple[bool, Dict[int, bool]]:
    """N_F(Q) constrained for every nontrivial fully normalized class rep.

    Uses the abelian-centralizer shortcut when it applies; otherwise builds
    the normalizer subsystem and checks constraint directly.
    """
    G = F.group
    verdicts: Dict[int, bool] = {}
    ok = True
    for idx, cls in enumerate(F.classes()):
        rep = cls[0]
        if len(rep) == 1:
            continue
        fn = next(Q for Q in cls if F.fully_normalized(Q))
        CS = F.c_s(fn)
        if G.subgroup(CS).is_abelian():
            verdicts[idx] = True
            continue
        verdicts[idx] = _normalizer_is_constrained(F, fn)
        ok = ok and verdicts[idx]
    return ok and all(verdicts.values()), verdicts
