"""Mod-p group cohomology via the normalized bar resolution.

Cochains in degree n are functions on n-tuples of nonidentity elements,
with the usual inhomogeneous differential (terms whose inner product hits
the identity drop out).  Restriction is precomposition; transfer walks
coset representatives.  Everything is exact linear algebra over F_p.
"""

from __future__ import annotations

import os
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .linalg import nullspace_modp, row_echelon_modp
from .permgroups import Group, GroupError, Subgroup

MemberSet = FrozenSet[int]

MEMORY_BUDGET_ENV = "LOCUS_MEMORY_BUDGET_MB"


def _budget_mb() -> int:
    return int(os.environ.get(MEMORY_BUDGET_ENV, "1500"))


class BudgetError(RuntimeError):
    pass


class FpCohomology:
    """Graded truncation of H^*(P; F_p) with explicit cocycle bases."""

    def __init__(self, G: Group, P: Subgroup, p: int, jmax: int):
        if jmax > 6:
            raise GroupError("degree cap is 6")
        est = (P.order - 1) ** (jmax + 1) * 8
        if est > _budget_mb() * 1_000_000:
            raise BudgetError(
                f"bar resolution needs ~{est // 1_000_000} MB "
                f"(budget {_budget_mb()} MB)")
        self.group = G
        self.sub = P
        self.p = p
        self.jmax = jmax
        self.nonid = [x for x in P.sorted_members if x != G.identity]
        self._pos = {x: i for i, x in enumerate(self.nonid)}
        self.diff: List[np.ndarray] = []  # diff[n]: C^n -> C^{n+1}
        for n in range(jmax + 1):
            self.diff.append(self._differential(n))
        # d o d = 0
        for n in range(jmax):
            prod = (self.diff[n + 1] @ self.diff[n]) % p
            if np.any(prod):
                raise AssertionError("bar differential does not square to zero")
        self._homology: List[Dict[str, np.ndarray]] = []
        for n in range(jmax + 1):
            self._homology.append(self._homology_data(n))

    # -- bases ----------------------------------------------------------

    def dim_cochain(self, n: int) -> int:
        return max(1, len(self.nonid) ** n) if n > 0 else 1

    def tuple_index(self, tup: Sequence[int]) -> int:
        idx = 0
        for g in tup:
            idx = idx * len(self.nonid) + self._pos[g]
        return idx

    def tuples(self, n: int) -> List[Tuple[int, ...]]:
        if n == 0:
            return [()]
        out = [()]
        for _ in range(n):
            out = [t + (g,) for t in out for g in self.nonid]
        return out

    def _differential(self, n: int) -> np.ndarray:
        """Matrix of d: C^n -> C^{n+1} for trivial F_p coefficients."""
        G = self.group
        p = self.p
        rows = self.dim_cochain(n + 1)
        cols = self.dim_cochain(n)
        D = np.zeros((rows, cols), dtype=np.int64)
        for r, tup in enumerate(self.tuples(n + 1)):
            # face 0 drops the first entry; face n+1 drops the last
            D[r, self.tuple_index(tup[1:])] += 1
            sign = -1
            for i in range(n):
                prod = G.mul(tup[i], tup[i + 1])
                if prod != G.identity:
                    merged = tup[:i] + (prod,) + tup[i + 2:]
                    D[r, self.tuple_index(merged)] += sign
                sign = -sign
            D[r, self.tuple_index(tup[:-1])] += sign
        return D % p

    def _homology_data(self, n: int) -> Dict[str, np.ndarray]:
        p = self.p
        kernel = nullspace_modp(self.diff[n], p)  # rows span Z^n
        if n == 0:
            boundaries = np.zeros((0, self.dim_cochain(0)), dtype=np.int64)
        else:
            boundaries = self.diff[n - 1].T % p  # rows span B^n
        b_ech, b_piv = row_echelon_modp(boundaries, p)
        b_rank = len(b_piv)
        b_ech = b_ech[:b_rank]
        ech_rows: List[np.ndarray] = []
        piv_cols: List[int] = []
        for z in kernel:
            v = _reduce_by(z.copy(), b_ech, b_piv, p)
            w = _reduce_by(v.copy(), np.array(ech_rows), piv_cols, p) \
                if ech_rows else v
            nz = np.nonzero(w)[0]
            if nz.size == 0:
                continue
            c = int(nz[0])
            w = (w * pow(int(w[c]), -1, p)) % p
            ech_rows.append(w)
            piv_cols.append(c)
        h_ech = (np.array(ech_rows, dtype=np.int64) if ech_rows else
                 np.zeros((0, self.dim_cochain(n)), dtype=np.int64))
        # class representatives are the echelon rows themselves, so that
        # coordinates() is the identity on them
        return {
            "b_ech": b_ech,
            "b_piv": np.array(b_piv, dtype=np.int64),
            "reps": h_ech,
            "h_ech": h_ech,
            "h_piv": piv_cols,
        }

    def dims(self) -> List[int]:
        return [int(self._homology[n]["reps"].shape[0])
                for n in range(self.jmax + 1)]

    def dim(self, n: int) -> int:
        return int(self._homology[n]["reps"].shape[0])

    def basis(self, n: int) -> np.ndarray:
        return self._homology[n]["reps"]

    def coordinates(self, n: int, cocycle: np.ndarray) -> np.ndarray:
        """Coordinates of a cocycle's class in the chosen H^n basis."""
        p = self.p
        if np.any((self.diff[n] @ cocycle) % p):
            raise ValueError("vector is not a cocycle")
        data = self._homology[n]
        v = _reduce_by(cocycle.copy() % p, data["b_ech"], list(data["b_piv"]), p)
        coeffs = np.zeros(data["h_ech"].shape[0], dtype=np.int64)
        for i, c in enumerate(data["h_piv"]):
            if v[c] % p:
                coeffs[i] = v[c] % p
                v = (v - coeffs[i] * data["h_ech"][i]) % p
        if np.any(v % p):
            raise ValueError("cocycle does not reduce into the basis")
        return coeffs


def _reduce_by(v: np.ndarray, ech: np.ndarray, pivots: Sequence[int], p: int) -> np.ndarray:
    for i, c in enumerate(pivots):
        if v[c] % p:
            v = (v - v[c] * ech[i]) % p
    return v % p


# -- induced maps -----------------------------------------------------------

def restriction_cochain(H_target: FpCohomology, H_source: FpCohomology,
                        mapping: Dict[int, int], n: int) -> np.ndarray:
    """Matrix of precomposition C^n(target) -> C^n(source) along a hom.

    ``mapping`` sends source elements to target elements.
    """
    rows = H_source.dim_cochain(n)
    cols = H_target.dim_cochain(n)
    M = np.zeros((rows, cols), dtype=np.int64)
    for r, tup in enumerate(H_source.tuples(n)):
        image = tuple(mapping[g] for g in tup)
        if any(g == H_target.group.identity for g in image):
            continue  # normalized cochains vanish there
        M[r, H_target.tuple_index(image)] += 1
    return M


def restriction_map(H_target: FpCohomology, H_source: FpCohomology,
                    mapping: Dict[int, int], n: int) -> np.ndarray:
    """H^n(target) -> H^n(source) induced by a homomorphism source->target."""
    p = H_target.p
    M = restriction_cochain(H_target, H_source, mapping, n)
    cols = []
    for z in H_target.basis(n):
        cols.append(H_source.coordinates(n, (M @ z) % p))
    if not cols:
        return np.zeros((H_source.dim(n), 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T


def transfer_cochain(H_big: FpCohomology, H_small: FpCohomology,
                     n: int) -> np.ndarray:
    """Matrix of the cochain transfer C^n(small) -> C^n(big), small <= big."""
    G = H_big.group
    P = H_small.sub
    Q = H_big.sub
    if not P.members <= Q.members:
        raise GroupError("transfer requires P <= Q")
    # right coset reps: Q = union of P r
    reps: List[int] = []
    seen = set()
    for x in Q.sorted_members:
        if x in seen:
            continue
        reps.append(x)
        for h in P.members:
            seen.add(G.mul(h, x))
    rep_of: Dict[int, int] = {}
    for r in reps:
        for h in P.members:
            rep_of[G.mul(h, r)] = r
    rows = H_big.dim_cochain(n)
    cols = H_small.dim_cochain(n)
    M = np.zeros((rows, cols), dtype=np.int64)
    if n == 0:
        M[0, 0] = len(reps)
        return M % H_big.p
    for r_idx, tup in enumerate(H_big.tuples(n)):
        for r in reps:
            s = r
            term: List[int] = []
            for g in tup:
                t = G.mul(s, g)
                s2 = rep_of[t]
                term.append(G.mul(t, G.inv(s2)))
                s = s2
            if any(x == G.identity for x in term):
                continue
            M[r_idx, H_small.tuple_index(tuple(term))] += 1
    return M % H_big.p


def transfer_map(H_big: FpCohomology, H_small: FpCohomology, n: int) -> np.ndarray:
    """tr: H^n(small) -> H^n(big) for small <= big (cochain-level walk)."""
    p = H_big.p
    M = transfer_cochain(H_big, H_small, n)
    # chain map sanity: d o tr = tr o d
    if n < H_big.jmax and n < H_small.jmax:
        lhs = (H_big.diff[n] @ M) % p
        rhs = (transfer_cochain(H_big, H_small, n + 1) @ H_small.diff[n]) % p
        if np.any((lhs - rhs) % p):
            raise AssertionError("transfer is not a cochain map")
    cols = []
    for z in H_small.basis(n):
        cols.append(H_big.coordinates(n, (M @ z) % p))
    if not cols:
        return np.zeros((H_big.dim(n), 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T


def transfer_along(H_source: FpCohomology, H_target: FpCohomology,
                   mapping: Dict[int, int], n: int,
                   cache: Optional[Dict] = None) -> np.ndarray:
    """Covariant map H^n(source) -> H^n(target) for an injective hom.

    Factors as isomorphism onto the image followed by the coset transfer;
    on an isomorphism this is restriction along the inverse.
    """
    G = H_source.group
    image = frozenset(mapping.values())
    inv_map = {y: x for x, y in mapping.items()}
    if image == H_target.sub.members:
        return restriction_map(H_source, H_target, inv_map, n)
    H_img = _cohomology_of(G, image, H_source.p, H_source.jmax, cache)
    iso = restriction_map(H_source, H_img, inv_map, n)
    tr = transfer_map(H_target, H_img, n)
    return (tr @ iso) % H_source.p


def _cohomology_of(G: Group, members: MemberSet, p: int, jmax: int,
                   cache: Optional[Dict]) -> FpCohomology:
    if cache is None:
        return FpCohomology(G, G.subgroup(members), p, jmax)
    key = (members, p, jmax)
    if key not in cache:
        cache[key] = FpCohomology(G, G.subgroup(members), p, jmax)
    return cache[key]


class CohomologyFamily:
    """Shared cache of FpCohomology objects over one ambient group."""

    def __init__(self, G: Group, p: int, jmax: int):
        self.group = G
        self.p = p
        self.jmax = jmax
        self._cache: Dict = {}

    def of(self, members: MemberSet) -> FpCohomology:
        return _cohomology_of(self.group, frozenset(members), self.p,
                              self.jmax, self._cache)


def mackey_square(fam_ambient: Group, H: Dict[MemberSet, FpCohomology],
                  P: MemberSet, K: MemberSet, Q: MemberSet, n: int) -> bool:
    """res^Q_K o tr^Q_P equals the double-coset sum, as matrices."""
    G = fam_ambient
    p = H[Q].p
    incl_K = {x: x for x in K}
    incl_P = {x: x for x in P}
    lhs = (restriction_map(H[Q], H[K], incl_K, n)
           @ transfer_map(H[Q], H[P], n)) % p
    rhs = np.zeros_like(lhs)
    seen = set()
    for x in sorted(Q):
        if x in seen:
            continue
        coset = {G.mul(G.mul(k, x), q) for k in K for q in P}
        seen |= coset
        xi = G.inv(x)
        conj_P = frozenset(G.conj(y, xi) for y in P)       # ^xP
        inter = frozenset(y for y in K if y in conj_P)      # K cap ^xP
        if len(inter) == 0:
            continue
        Hc = FpCohomology(G, G.subgroup(conj_P), H[P].p, H[P].jmax) \
            if conj_P not in H else H[conj_P]
        Hi = FpCohomology(G, G.subgroup(inter), H[P].p, H[P].jmax) \
            if inter not in H else H[inter]
        # c_x : H(P) -> H(^xP) induced by the hom ^xP -> P, y -> y^x
        cx = restriction_map(H[P], Hc, {y: G.conj(y, x) for y in conj_P}, n)
        res = restriction_map(Hc, Hi, {y: y for y in inter}, n)
        tr = transfer_map(H[K], Hi, n)
        rhs = (rhs + tr @ res @ cx) % p
    return not np.any((lhs - rhs) % p)
