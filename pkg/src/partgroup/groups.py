"""Small finite groups as full-domain partial groups, plus brute-force group oracles."""
from __future__ import annotations

import itertools
from typing import Callable, Hashable, Sequence

from .core import PartialGroup, TableDomain, group_from_table

DEFAULT_HORIZON = 4


def _from_elements(elems: Sequence[Hashable], mul: Callable, names: Sequence[str],
                   horizon: int) -> PartialGroup:
    index = {e: i for i, e in enumerate(elems)}
    mult = [[index[mul(a, b)] for b in elems] for a in elems]
    return group_from_table(names, mult, horizon)


def cyclic(n: int, horizon: int = DEFAULT_HORIZON) -> PartialGroup:
    return _from_elements(range(n), lambda a, b: (a + b) % n, [str(k) for k in range(n)], horizon)


def trivial_group(horizon: int = DEFAULT_HORIZON) -> PartialGroup:
    return cyclic(1, horizon)


def klein(horizon: int = DEFAULT_HORIZON) -> PartialGroup:
    """Klein four group on ``1, x, y, xy``."""
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return _from_elements(elems, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2),
                          ["1", "x", "y", "xy"], horizon)


def _perm_mul(p, q):
    # apply p, then q
    return tuple(q[p[i]] for i in range(len(p)))


def symmetric3(horizon: int = DEFAULT_HORIZON) -> PartialGroup:
    elems = sorted(itertools.permutations(range(3)))
    names = ["".join(map(str, p)) for p in elems]
    names[0] = "e"
    return _from_elements(elems, _perm_mul, names, horizon)


def dihedral(n: int, horizon: int = DEFAULT_HORIZON) -> PartialGroup:
    """Dihedral group of order 2n as pairs (rotation, reflection flag)."""
    elems = [(r, s) for s in (0, 1) for r in range(n)]

    def mul(a, b):
        r1, s1 = a
        r2, s2 = b
        return ((r1 + (-r2 if s1 else r2)) % n, s1 ^ s2)

    names = [("s" if s else "r") + str(r) for r, s in elems]
    names[0] = "e"
    return _from_elements(elems, mul, names, horizon)


def quaternion(horizon: int = DEFAULT_HORIZON) -> PartialGroup:
    # unit quaternions +-1, +-i, +-j, +-k as (sign, axis)
    basis = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    elems = [(s, a) for a in "1ijk" for s in (1, -1)]

    def mul(x, y):
        s, a = basis[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    names = [("" if s == 1 else "-") + a for s, a in elems]
    return _from_elements(elems, mul, names, horizon)


def direct_product_group(a: PartialGroup, b: PartialGroup, horizon: int = DEFAULT_HORIZON) -> PartialGroup:
    elems = [(x, y) for x in range(a.size) for y in range(b.size)]
    names = [f"({a.names[x]},{b.names[y]})" for x, y in elems]
    return _from_elements(elems, lambda p, q: (a.product((p[0], q[0])), b.product((p[1], q[1]))),
                          names, horizon)


def small_groups(horizon: int = DEFAULT_HORIZON) -> dict[str, PartialGroup]:
    """Every group of order <= 8 up to isomorphism."""
    return {
        "C1": cyclic(1, horizon), "C2": cyclic(2, horizon), "C3": cyclic(3, horizon),
        "C4": cyclic(4, horizon), "V4": klein(horizon), "C5": cyclic(5, horizon),
        "C6": cyclic(6, horizon), "S3": symmetric3(horizon), "C7": cyclic(7, horizon),
        "C8": cyclic(8, horizon), "C4xC2": direct_product_group(cyclic(4, 2), cyclic(2, 2), horizon),
        "C2^3": direct_product_group(klein(2), cyclic(2, 2), horizon),
        "D4": dihedral(4, horizon), "Q8": quaternion(horizon),
    }


# -- brute-force oracles ---------------------------------------------------

def mul_table(g: PartialGroup) -> list[list[int]]:
    return [[g.product((x, y)) for y in range(g.size)] for x in range(g.size)]


def subgroups(g: PartialGroup) -> list[frozenset[int]]:
    """All subgroups, by closing every subset under multiplication (tiny orders only)."""
    m = mul_table(g)
    others = [x for x in range(g.size) if x != g.unit]
    found = set()
    # three generators suffice for every group of order <= 8
    gen_sets = itertools.chain.from_iterable(itertools.combinations(others, k) for k in range(4))
    for gens in gen_sets:
        sub = {g.unit, *gens}
        changed = True
        while changed:
            changed = False
            for x in list(sub):
                for y in list(sub):
                    if m[x][y] not in sub:
                        sub.add(m[x][y])
                        changed = True
        found.add(frozenset(sub))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def normal_subgroups(g: PartialGroup) -> list[frozenset[int]]:
    m = mul_table(g)
    out = []
    for h in subgroups(g):
        if all(m[m[g.inv[x]][n]][x] in h for x in range(g.size) for n in h):
            out.append(h)
    return out


def coset_quotient(g: PartialGroup, normal: frozenset[int], horizon: int = DEFAULT_HORIZON) -> PartialGroup:
    """The factor group g/normal computed from cosets directly."""
    m = mul_table(g)
    cosets: list[frozenset[int]] = []
    for x in range(g.size):
        c = frozenset(m[x][n] for n in normal)
        if c not in cosets:
            cosets.append(c)
    idx = {x: i for i, c in enumerate(cosets) for x in c}
    mult = [[idx[m[min(a)][min(b)]] for b in cosets] for a in cosets]
    names = ["{" + ",".join(g.names[x] for x in sorted(c)) + "}" for c in cosets]
    return group_from_table(names, mult, horizon)


def restrict_horizon(g: PartialGroup, horizon: int) -> PartialGroup:
    table = {w: p for w, p in g.domain.table.items() if len(w) <= horizon}
    return PartialGroup(g.names, g.unit, g.inv, TableDomain(table, horizon))
