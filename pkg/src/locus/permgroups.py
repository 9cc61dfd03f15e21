"""Finite permutation groups with full element enumeration.

Groups are given by generators in disjoint-cycle notation and enumerated
completely on construction (desk scale, default cap 200000 elements).
Elements are addressed by their index in the sorted list of permutation
tuples, so every iteration order below is deterministic.
"""

from __future__ import annotations

import re
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

Perm = Tuple[int, ...]

DEFAULT_ORDER_CAP = 200000
SUBGROUP_LATTICE_CAP = 4096


class GroupError(ValueError):
    """Raised on malformed group input or violated preconditions."""


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """Product p*q acting on points from the right: i -> q[p[i]]."""
    return tuple(q[i] for i in p)


def invert(p: Perm) -> Perm:
    result = [0] * len(p)
    for i, j in enumerate(p):
        result[j] = i
    return tuple(result)


def perm_order(p: Perm) -> int:
    n = len(p)
    seen = [False] * n
    order = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length > 1:
            order = _lcm(order, length)
    return order


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


def cycle_string(p: Perm) -> str:
    """Disjoint-cycle notation on 1-based points; '()' for the identity."""
    n = len(p)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
    return "".join(out) if out else "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: int) -> Perm:
    """Parse a product of disjoint cycles like ``(1 2 3)(4 5)`` (1-based)."""
    stripped = text.strip()
    if stripped in ("()", "", "id"):
        return identity_perm(degree)
    consumed = re.sub(_CYCLE_RE, "", stripped).strip()
    if consumed:
        raise GroupError(f"could not parse permutation {text!r}")
    result = list(range(degree))
    hit = [False] * degree
    for match in _CYCLE_RE.finditer(stripped):
        body = match.group(1).replace(",", " ").split()
        if not body:
            continue
        points = [int(tok) - 1 for tok in body]
        for a in points:
            if not 0 <= a < degree:
                raise GroupError(f"point {a + 1} out of range 1..{degree}")
            if hit[a]:
                raise GroupError(f"point {a + 1} repeated in {text!r}")
            hit[a] = True
        for a, b in zip(points, points[1:] + points[:1]):
            result[a] = b
    return tuple(result)


class Group:
    """A fully enumerated permutation group on {1..degree}."""

    def __init__(self, degree: int, generators: Sequence[Perm], name: str = "G",
                 order_cap: int = DEFAULT_ORDER_CAP):
        if degree <= 0:
            raise GroupError("degree must be positive")
        self.degree = degree
        self.name = name
        gens = []
        for g in generators:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise GroupError(f"not a permutation of degree {degree}: {g}")
            gens.append(tuple(g))
        self.generator_perms: List[Perm] = gens
        elements = _enumerate_closure(degree, gens, order_cap)
        self.elements: List[Perm] = sorted(elements)
        self._index: Dict[Perm, int] = {p: i for i, p in enumerate(self.elements)}
        self.identity: int = self._index[identity_perm(degree)]
        self.inverse: List[int] = [self._index[invert(p)] for p in self.elements]
        self.generators: List[int] = sorted({self._index[g] for g in gens})
        self._mul_table: Optional[List[List[int]]] = None
        self._conj_table: Optional[List[List[int]]] = None

    # -- basics ---------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def perm(self, x: int) -> Perm:
        return self.elements[x]

    def index(self, p: Perm) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise GroupError("permutation not in group") from None

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._index[compose(self.elements[a], self.elements[b])]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, x: int, g: int) -> int:
        """x^g = g^-1 x g."""
        if self._conj_table is not None:
            return self._conj_table[x][g]
        return self.mul(self.mul(self.inverse[g], x), g)

    def element_order(self, x: int) -> int:
        return perm_order(self.elements[x])

    def build_tables(self) -> None:
        """Precompute multiplication and conjugation tables (small groups).

        Rows are filled along a BFS spanning tree of the Cayley graph, so
        only n*|gens| tuple compositions are needed.
        """
        n = self.order
        if self._mul_table is not None or n > 1500:
            return
        idx = self._index
        elems = self.elements
        gens = self.generators or [self.identity]
        # BFS tree: every x != 1 reached as parent * gen
        tree: List[Optional[Tuple[int, int]]] = [None] * n
        bfs_order = [self.identity]
        seen = {self.identity}
        head = 0
        while head < len(bfs_order):
            x = bfs_order[head]
            head += 1
            for g in gens:
                y = idx[compose(elems[x], elems[g])]
                if y not in seen:
                    seen.add(y)
                    tree[y] = (x, g)
                    bfs_order.append(y)
        mul_gen = {g: [idx[compose(p, elems[g])] for p in elems] for g in gens}
        mul = [[0] * n for _ in range(n)]
        for a in range(n):
            row = mul[a]
            row[self.identity] = a
            for b in bfs_order[1:]:
                parent, g = tree[b]
                row[b] = mul_gen[g][row[parent]]
        self._mul_table = mul
        inv = self.inverse
        self._conj_table = [
            [mul[mul[inv[g]][x]][g] for g in range(n)] for x in range(n)
        ]

    def word(self, xs: Iterable[int]) -> int:
        acc = self.identity
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    # -- subgroups ------------------------------------------------------

    def subgroup(self, members: Iterable[int], name: str = "") -> "Subgroup":
        return Subgroup(self, frozenset(members), name=name)

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)), name=self.name)

    def generated_subgroup(self, gens: Iterable[int], name: str = "",
                           limit: Optional[int] = None) -> "Subgroup":
        members = self.closure(gens, limit=limit)
        return Subgroup(self, frozenset(members), name=name)

    def closure(self, gens: Iterable[int], limit: Optional[int] = None) -> FrozenSet[int]:
        """Subgroup generated by gens; aborts past ``limit`` if given."""
        gen_list = sorted(set(gens) - {self.identity})
        members = {self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for x in frontier:
                for g in gen_list:
                    y = self.mul(x, g)
                    if y not in members:
                        members.add(y)
                        if limit is not None and len(members) > limit:
                            return frozenset(members)
                        new.append(y)
            frontier = new
        return frozenset(members)

    def normal_closure(self, gens: Iterable[int], limit: Optional[int] = None) -> FrozenSet[int]:
        """Smallest subgroup containing gens closed under G-conjugation."""
        work = sorted(set(gens) - {self.identity})
        all_gens = set(work)
        group_gens = self.generators
        while work:
            x = work.pop()
            for g in group_gens:
                y = self.conj(x, g)
                if y not in all_gens:
                    all_gens.add(y)
                    work.append(y)
            if limit is not None and len(all_gens) > limit:
                break
        return self.closure(all_gens, limit=limit)

    def __repr__(self) -> str:
        return f"Group({self.name!r}, degree={self.degree}, order={self.order})"


def _enumerate_closure(degree: int, gens: Sequence[Perm], cap: int) -> List[Perm]:
    members = {identity_perm(degree)}
    frontier = list(members)
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = compose(p, g)
                if q not in members:
                    members.add(q)
                    if len(members) > cap:
                        raise GroupError(
                            f"group order exceeds cap {cap}; refusing to enumerate")
                    new.append(q)
        frontier = new
    return list(members)


class Subgroup:
    """Subgroup stored as an explicit member set of a parent Group."""

    def __init__(self, parent: Group, members: FrozenSet[int], name: str = ""):
        self.parent = parent
        self.members = members
        self.name = name
        if parent.identity not in members:
            raise GroupError("subgroup must contain the identity")
        self._sorted: Optional[Tuple[int, ...]] = None
        self._gens: Optional[List[int]] = None

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def sorted_members(self) -> Tuple[int, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.members))
        return self._sorted

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(self.sorted_members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def gens(self) -> List[int]:
        """A small deterministic generating set."""
        if self._gens is None:
            G = self.parent
            have = {G.identity}
            gens: List[int] = []
            for x in self.sorted_members:
                if x not in have:
                    gens.append(x)
                    have = set(G.closure(gens))
                    if len(have) == self.order:
                        break
            self._gens = gens
        return self._gens

    def verify(self) -> bool:
        """Closed under product and inverse (full check)."""
        G = self.parent
        mem = self.members
        for x in mem:
            if G.inv(x) not in mem:
                return False
            for y in mem:
                if G.mul(x, y) not in mem:
                    return False
        return True

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, frozenset(G.conj(x, g) for x in self.members))

    def conjugate_set(self, g: int) -> FrozenSet[int]:
        G = self.parent
        return frozenset(G.conj(x, g) for x in self.members)

    def is_normal_in(self, other: "Subgroup") -> bool:
        G = self.parent
        return all(self.conjugate_set(g) == self.members for g in other.gens())

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def is_abelian(self) -> bool:
        G = self.parent
        ms = self.sorted_members
        return all(G.mul(a, b) == G.mul(b, a) for a in ms for b in ms)

    def is_elementary_abelian(self, p: int) -> bool:
        G = self.parent
        return self.is_abelian() and all(
            x == G.identity or G.element_order(x) == p for x in self.members)

    def exponent(self) -> int:
        G = self.parent
        e = 1
        for x in self.members:
            e = _lcm(e, G.element_order(x))
        return e

    def __repr__(self) -> str:
        label = self.name or "H"
        return f"Subgroup({label}, order={self.order})"


class GroupHomomorphism:
    """Injective-or-not homomorphism given by its full element mapping."""

    def __init__(self, source: Subgroup, target: Subgroup, mapping: Dict[int, int]):
        self.source = source
        self.target = target
        self.mapping = mapping
        self._key: Optional[Tuple[Tuple[int, int], ...]] = None

    @classmethod
    def from_conjugation(cls, source: Subgroup, target: Subgroup, g: int) -> "GroupHomomorphism":
        G = source.parent
        mapping = {x: G.conj(x, g) for x in source.members}
        return cls(source, target, mapping)

    @property
    def key(self) -> Tuple[Tuple[int, int], ...]:
        """Canonical hashable form (sorted graph of the map)."""
        if self._key is None:
            self._key = tuple(sorted(self.mapping.items()))
        return self._key

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def image(self) -> FrozenSet[int]:
        return frozenset(self.mapping.values())

    def is_homomorphism(self) -> bool:
        G = self.source.parent
        ms = self.source.sorted_members
        f = self.mapping
        return all(f[G.mul(a, b)] == G.mul(f[a], f[b]) for a in ms for b in ms)

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def restrict(self, sub: Subgroup) -> "GroupHomomorphism":
        mapping = {x: self.mapping[x] for x in sub.members}
        return GroupHomomorphism(sub, self.target, mapping)

    def then(self, other: "GroupHomomorphism") -> "GroupHomomorphism":
        """Composite x -> other(self(x)); image of self must lie in other's source."""
        mapping = {x: other.mapping[y] for x, y in self.mapping.items()}
        return GroupHomomorphism(self.source, other.target, mapping)

    def __repr__(self) -> str:
        return f"Hom(|src|={self.source.order}, |tgt|={self.target.order})"


# -- group file format --------------------------------------------------

def load_group(text: str, name: str = "G", order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Parse the group file format: ``degree N`` then one generator per line."""
    degree = None
    gens: List[Perm] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise GroupError(f"expected 'degree N' first, got {line!r}")
            degree = int(m.group(1))
        else:
            gens.append(parse_perm(line, degree))
    if degree is None:
        raise GroupError("empty group file")
    return Group(degree, gens, name=name, order_cap=order_cap)


def load_group_file(path, name: Optional[str] = None,
                    order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    from pathlib import Path

    p = Path(path)
    return load_group(p.read_text(encoding="utf-8"), name=name or p.stem,
                      order_cap=order_cap)


# -- standard queries ---------------------------------------------------

def p_part(n: int, p: int) -> int:
    m = 1
    while n % p == 0:
        n //= p
        m *= p
    return m


def sylow(G: Group, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown deterministically inside normalizers."""
    target = p_part(G.order, p)
    current = G.subgroup([G.identity])
    while current.order < target:
        # any p-subgroup below Sylow order extends inside its normalizer
        norm = normalizer_set(G, current)
        extended = False
        for g in sorted(norm):
            if g in current.members:
                continue
            if not _is_p_element(G, g, p):
                continue
            cand = G.closure(sorted(current.members) + [g], limit=target)
            if len(cand) <= target and _order_is_p_power(len(cand), p):
                current = G.subgroup(cand)
                extended = True
                break
        if not extended:
            raise GroupError("sylow construction failed (internal error)")
    current.name = f"Syl_{p}({G.name})"
    return current


def _is_p_element(G: Group, g: int, p: int) -> bool:
    return _order_is_p_power(G.element_order(g), p)


def _order_is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def transporter(G: Group, P: Subgroup, Q: Subgroup) -> List[int]:
    """N_G(P,Q) = all g with P^g <= Q, by full element scan."""
    gens = P.gens() or [G.identity]
    qm = Q.members
    return [g for g in range(G.order)
            if all(G.conj(x, g) in qm for x in gens)]


def normalizer_set(G: Group, P: Subgroup) -> List[int]:
    gens = P.gens() or [G.identity]
    pm = P.members
    return [g for g in range(G.order)
            if all(G.conj(x, g) in pm for x in gens)]


def normalizer(G: Group, P: Subgroup) -> Subgroup:
    return G.subgroup(normalizer_set(G, P), name=f"N({P.name})")


def centralizer_set(G: Group, xs: Iterable[int]) -> List[int]:
    xs = list(xs)
    return [g for g in range(G.order) if all(G.conj(x, g) == x for x in xs)]


def centralizer(G: Group, P: Subgroup) -> Subgroup:
    return G.subgroup(centralizer_set(G, P.gens() or [G.identity]),
                      name=f"C({P.name})")


def center(G: Group) -> Subgroup:
    return G.subgroup(centralizer_set(G, G.generators), name=f"Z({G.name})")


def o_p(G: Group, p: int) -> Subgroup:
    """O_p(G): intersection of all conjugates of one Sylow p-subgroup."""
    S = sylow(G, p)
    core = set(S.members)
    seen = {S.members}
    frontier = [S.members]
    while frontier:
        new = []
        for mem in frontier:
            for g in G.generators:
                img = frozenset(G.conj(x, g) for x in mem)
                if img not in seen:
                    seen.add(img)
                    new.append(img)
        frontier = new
    for mem in seen:
        core &= mem
    return G.subgroup(core, name=f"O_{p}({G.name})")


def o_pprime(G: Group, p: int) -> Subgroup:
    """O_{p'}(G): grown from p'-elements with p'-group normal closure."""
    bound = G.order // p_part(G.order, p)  # any p'-subgroup order divides this
    current: FrozenSet[int] = frozenset([G.identity])
    changed = True
    while changed:
        changed = False
        for x in range(G.order):
            if x in current:
                continue
            if G.element_order(x) % p == 0:
                continue
            cand = G.normal_closure(sorted(current | {x}), limit=bound)
            if len(cand) <= bound and len(cand) % p != 0:
                current = cand
                changed = True
        # single sweep is enough once nothing was added
    return G.subgroup(current, name=f"O_{p}'({G.name})")


def char_p_tests(G: Group, p: int) -> Dict[str, object]:
    """O_p, O_p', center, characteristic-p and p-constrained verdicts."""
    Op = o_p(G, p)
    Opp = o_pprime(G, p)
    Z = center(G)
    C_Op = centralizer(G, Op)
    is_char_p = C_Op.members <= Op.members
    T = sylow(G, p)
    C_T_Op = frozenset(centralizer_set(G, Op.gens() or [G.identity])) & T.members
    is_p_constrained = C_T_Op <= Op.members
    return {
        "O_p": Op,
        "O_pprime": Opp,
        "center": Z,
        "is_characteristic_p": is_char_p,
        "is_p_constrained": is_p_constrained,
    }


def all_subgroups(S: Subgroup) -> List[FrozenSet[int]]:
    """Every subgroup of S as a member set (S must be small)."""
    if S.order > SUBGROUP_LATTICE_CAP:
        raise GroupError(f"subgroup lattice cap exceeded: |S|={S.order}")
    G = S.parent
    found = {frozenset([G.identity])}
    # cyclic subgroups seed the lattice
    for x in S.sorted_members:
        found.add(G.closure([x]))
    frontier = sorted(found, key=sorted)
    while frontier:
        new = []
        for H in frontier:
            for x in S.sorted_members:
                if x in H:
                    continue
                J = G.closure(sorted(H) + [x], limit=S.order)
                if J <= S.members and J not in found:
                    found.add(J)
                    new.append(J)
        frontier = new
    return sorted(found, key=lambda m: (len(m), sorted(m)))


def subgroups_up_to_conjugacy(S: Subgroup) -> List[List[Subgroup]]:
    """Conjugacy classes (under S) of all subgroups of S."""
    G = S.parent
    subs = all_subgroups(S)
    remaining = set(subs)
    classes: List[List[Subgroup]] = []
    for mem in subs:
        if mem not in remaining:
            continue
        orbit = {mem}
        frontier = [mem]
        while frontier:
            new = []
            for h in frontier:
                for g in S.gens():
                    img = frozenset(G.conj(x, g) for x in h)
                    if img not in orbit:
                        orbit.add(img)
                        new.append(img)
            frontier = new
        remaining -= orbit
        classes.append([G.subgroup(m) for m in sorted(orbit, key=sorted)])
    return classes


def quotient_group(G: Group, N: Subgroup) -> Tuple[Group, Dict[int, int]]:
    """Coset group G/N (as permutations of the coset space) plus projection."""
    if not N.is_normal_in(G.full_subgroup()):
        raise GroupError("quotient by a non-normal subgroup")
    # enumerate right cosets Ng deterministically
    coset_of: Dict[int, int] = {}
    reps: List[int] = []
    for x in range(G.order):
        if x in coset_of:
            continue
        rep = len(reps)
        reps.append(x)
        for n in N.members:
            coset_of[G.mul(n, x)] = rep
    degree = len(reps)
    gen_perms: List[Perm] = []
    for g in G.generators:
        gen_perms.append(tuple(coset_of[G.mul(reps[i], g)] for i in range(degree)))
    Q = Group(degree, gen_perms, name=f"{G.name}/{N.name or 'N'}")
    # projection: x -> index (in Q) of the permutation induced by x
    proj: Dict[int, int] = {}
    for x in range(G.order):
        perm = tuple(coset_of[G.mul(reps[i], x)] for i in range(degree))
        proj[x] = Q.index(perm)
    return Q, proj
