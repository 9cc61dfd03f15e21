#!/usr/bin/env python3
"""Regenerate the bundled group files in src/locus/data/.

Most bundled groups have textbook generators written down directly.  Two are
produced by search and verified before being written out:

* ext27_sd16.grp -- the extraspecial group 3^{1+2}_+ extended by a Sylow
  2-subgroup (semidihedral of order 16) of its automorphism group, acting on
  the 27 group elements; the automorphism group is enumerated by brute force
  and the Sylow subgroup is grown deterministically.
* sl3_4.grp -- SL3(F4) acting on the 63 nonzero vectors of F4^3; generated by
  two elementary transvections and a cyclic coordinate shift, with the order
  verified to be 60480 before writing.

Run from the repository root:  python scripts/make_groups.py
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from locus.permgroups import Group, cycle_string, sylow  # noqa: E402

DATA = ROOT / "src" / "locus" / "data"


def write_group(fname: str, comment: str, degree: int, perms) -> None:
    lines = [f"# {comment}", f"degree {degree}"]
    lines += [cycle_string(p) for p in perms]
    (DATA / fname).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {fname}: degree {degree}, {len(perms)} generators")


def perm_from_images(images) -> tuple:
    return tuple(images)


# -- extraspecial 3^{1+2}_+ and its SD16 extension ----------------------

def es27_elements():
    """Elements a^i b^j c^k encoded as 9i+3j+k; product per [a,b]=c central."""
    def mul(x, y):
        i1, r = divmod(x, 9)
        j1, k1 = divmod(r, 3)
        i2, r = divmod(y, 9)
        j2, k2 = divmod(r, 3)
        return 9 * ((i1 + i2) % 3) + 3 * ((j1 + j2) % 3) + (k1 + k2 - j1 * i2) % 3
    return mul


def build_es27():
    mul = es27_elements()
    # right translations by a=(1,0,0) -> 9 and b=(0,1,0) -> 3
    rho_a = perm_from_images([mul(x, 9) for x in range(27)])
    rho_b = perm_from_images([mul(x, 3) for x in range(27)])
    G = Group(27, [rho_a, rho_b], name="3^{1+2}_+")
    assert G.order == 27, G.order
    exps = {G.element_order(x) for x in range(G.order)}
    assert exps == {1, 3}, exps  # exponent 3, the + type
    return mul, rho_a, rho_b, G


def automorphism_perms(mul):
    """All automorphisms of 3^{1+2}_+ as permutations of the 27 elements."""
    def power(x, n):
        acc = 0
        for _ in range(n % 3):
            acc = mul(acc, x)
        return acc

    def comm(x, y):
        # x^-1 y^-1 x y
        xin = next(z for z in range(27) if mul(x, z) == 0)
        yin = next(z for z in range(27) if mul(y, z) == 0)
        return mul(mul(mul(xin, yin), x), y)

    auts = []
    c = 1  # encodes (0,0,1), the commutator [a,b]
    for x in range(1, 27):
        for y in range(1, 27):
            z = comm(x, y)
            if z == 0:
                continue
            # candidate: a^i b^j c^k -> x^i y^j z^k; verify it's bijective
            images = [0] * 27
            ok = True
            for e in range(27):
                i, r = divmod(e, 9)
                j, k = divmod(r, 3)
                images[e] = mul(mul(power(x, i), power(y, j)), power(z, k))
            if len(set(images)) != 27:
                continue
            for e1 in range(27):
                for e2 in range(27):
                    if images[mul(e1, e2)] != mul(images[e1], images[e2]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                auts.append(tuple(images))
    return sorted(set(auts))


def build_ext27_sd16():
    mul, rho_a, rho_b, _ = build_es27()
    auts = automorphism_perms(mul)
    assert len(auts) == 432, len(auts)  # |Aut(3^{1+2}_+)| = 432
    A = Group(27, [a for a in auts if a != tuple(range(27))], name="Aut")
    assert A.order == 432
    T = sylow(A, 2)
    assert T.order == 16
    orders = sorted(A.element_order(x) for x in T.members)
    # semidihedral profile: 1, five involutions, six of order 4, four of order 8
    assert orders == [1] + [2] * 5 + [4] * 6 + [8] * 4, orders
    tgens = [A.perm(x) for x in T.gens()]
    M = Group(27, [rho_a, rho_b] + tgens, name="3^{1+2}_+:SD16")
    assert M.order == 432, M.order
    return [rho_a, rho_b] + tgens


# -- SL3(4) on nonzero vectors ------------------------------------------

F4_MUL = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
]


def f4_add(a, b):
    return a ^ b


def mat_vec(M, v):
    out = []
    for row in M:
        acc = 0
        for a, x in zip(row, v):
            acc = f4_add(acc, F4_MUL[a][x])
        out.append(acc)
    return tuple(out)


def build_sl34():
    vectors = sorted(
        (x, y, z) for x in range(4) for y in range(4) for z in range(4)
    )[1:]  # drop the zero vector
    index = {v: i for i, v in enumerate(vectors)}

    def perm_of(M):
        return tuple(index[mat_vec(M, v)] for v in vectors)

    t1 = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]   # transvection I + E12
    t2 = [[1, 2, 0], [0, 1, 0], [0, 0, 1]]   # transvection I + w*E12
    cyc = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]  # coordinate 3-cycle, det 1
    gens = [perm_of(t1), perm_of(t2), perm_of(cyc)]
    G = Group(63, gens, name="SL3(4)")
    assert G.order == 60480, G.order
    return gens


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)

    write_group("s4.grp", "symmetric group S4", 4,
                [perm_from_images((1, 0, 2, 3)), perm_from_images((1, 2, 3, 0))])
    write_group("a6.grp", "alternating group A6", 6,
                [perm_from_images((1, 2, 3, 4, 0, 5)),
                 perm_from_images((0, 1, 2, 4, 5, 3))])
    write_group("a6xc3.grp", "direct product A6 x C3", 9,
                [perm_from_images((1, 2, 3, 4, 0, 5, 6, 7, 8)),
                 perm_from_images((0, 1, 2, 4, 5, 3, 6, 7, 8)),
                 perm_from_images((0, 1, 2, 3, 4, 5, 7, 8, 6))])
    write_group("d8.grp", "dihedral group of order 8", 4,
                [perm_from_images((1, 2, 3, 0)), perm_from_images((2, 1, 0, 3))])
    write_group("sd16.grp", "semidihedral group of order 16", 8,
                [perm_from_images((1, 2, 3, 4, 5, 6, 7, 0)),
                 perm_from_images((0, 3, 6, 1, 4, 7, 2, 5))])
    write_group("es27.grp", "extraspecial group 3^{1+2}_+ (regular action)", 27,
                list(build_es27()[1:3]))
    write_group("ext27_sd16.grp",
                "3^{1+2}_+ : SD16 of order 432 (Sylow-2 of Aut acting)", 27,
                build_ext27_sd16())
    write_group("sl3_4.grp", "SL3(4) on the 63 nonzero vectors of F4^3", 63,
                build_sl34())

    # verify everything parses back with the library loader
    from locus.permgroups import load_group_file

    expected = {
        "s4.grp": 24, "a6.grp": 360, "a6xc3.grp": 1080, "d8.grp": 8,
        "sd16.grp": 16, "es27.grp": 27, "ext27_sd16.grp": 432,
        "sl3_4.grp": 60480,
    }
    for fname, order in expected.items():
        G = load_group_file(DATA / fname)
        assert G.order == order, (fname, G.order, order)
        print(f"checked {fname}: order {G.order}")


if __name__ == "__main__":
    main()
