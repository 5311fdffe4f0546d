"""Shared corpora and independent oracles for the test suite."""
from __future__ import annotations

import itertools

from partgroup import Morphism, PartialGroup, PointedSet, coproduct, free_pointed, is_morphism
from partgroup.groups import cyclic, klein, trivial_group


def fp(names=("1", "a"), horizon=4) -> PartialGroup:
    """Free pointed partial group, materialized to a table."""
    return free_pointed(PointedSet(tuple(names))).group.materialize(horizon)


def small_objects() -> dict[str, PartialGroup]:
    z2 = cyclic(2)
    return {
        "1": trivial_group(),
        "Z2": z2,
        "Z3": cyclic(3),
        "Z4": cyclic(4),
        "V4": klein(),
        "F1": fp(),
        "Z2+Z2": coproduct([z2, z2])[0],
    }


def targets() -> list[PartialGroup]:
    """Partial groups of carrier size <= 4."""
    return list(small_objects().values())


def candidate_maps(a: PartialGroup, b: PartialGroup):
    """Unit-preserving, inversion-commuting maps a -> b (brute force)."""
    free = [x for x in range(a.size) if x != a.unit]
    for vals in itertools.product(range(b.size), repeat=len(free)):
        m = [b.unit] * a.size
        for x, y in zip(free, vals):
            m[x] = y
        if all(b.inv[m[x]] == m[a.inv[x]] for x in range(a.size)):
            yield tuple(m)


def homs(a: PartialGroup, b: PartialGroup, max_len: int | None = None) -> list[Morphism]:
    out = []
    for m in candidate_maps(a, b):
        f = Morphism(a, b, m)
        if is_morphism(f, 3) and is_morphism(f, max_len):
            out.append(f)
    return out


def parallel_pairs(limit: int = 14) -> list[tuple[Morphism, Morphism]]:
    """Distinct parallel pairs between small objects (carriers <= 5)."""
    objs = small_objects()
    objs["Z5"] = cyclic(5)
    plan = [("Z2", "Z4"), ("Z2", "V4"), ("F1", "V4"), ("F1", "Z4"), ("Z3", "Z3"), ("Z4", "Z4"),
            ("F1", "Z3"), ("Z2", "Z2+Z2"), ("F1", "Z5"), ("V4", "Z2"), ("Z4", "Z2")]
    out = []
    for s, t in plan:
        hs = homs(objs[s], objs[t])
        for f, g in itertools.combinations(hs, 2):
            out.append((f, g))
            break
        if len(hs) >= 3:
            out.append((hs[1], hs[2]))
    return out[:limit]


# -- G_X oracle: reduced letter strings -----------------------------------------

def reduce_letters(letters, inv) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and inv[out[-1]] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def gx_to_letters(g, inv) -> tuple[int, ...]:
    out = []
    for o, e, mod in g:
        letter = o if e > 0 else inv[o]
        out += [letter] * abs(e)
    return tuple(out)


def naive_free_sets(X, H: int):
    """Global-pass fixpoint of the closure rules, elements as reduced letter strings."""
    inv = X.inv
    gen = [(x,) for x in range(len(X.elements))]

    def mul(*gs):
        return reduce_letters([c for g in gs for c in g], inv)

    def ginv(g):
        return tuple(inv[c] for c in reversed(g))

    L = {()} | set(gen)
    D = {(g,) for g in L} | {tuple(gen[x] for x in w) for w in X.words} | {()}
    changed = True
    while changed:
        changed = False
        newL = set(L)
        newD = set(D)
        for g in L:
            newL.add(ginv(g))
            newD.add((g,))
        for w in D:
            k = len(w)
            for i in range(k + 1):
                for j in range(i, k + 1):
                    newD.add(w[i:j])
                    if j - i == 1:
                        continue
                    p = mul(*w[i:j])
                    newL.add(p)
                    nw = w[:i] + (p,) + w[j:]
                    if len(nw) <= H:
                        newD.add(nw)
            if 2 * k <= H:
                newD.add(tuple(ginv(g) for g in reversed(w)) + w)
        if newL != L or newD != D:
            L, D = newL, newD
            changed = True
    return L, D
