import pytest
from hypothesis import given, settings, strategies as st

from partgroup import (Congruence, CongruenceError, Diagram, Morphism, MorphismError, PointedSet,
                       check_morphism, coequalizer, congruence_closure, coproduct,
                       find_isomorphism, finite_colimit, free_pointed, identity_map,
                       mediating_cocone_map, quotient_by_congruence, replay, set_coequalizer,
                       star_violations, trivial_map, universal_map_pointed, validate_axioms)
from partgroup._kernel import BACKEND, get_kernel
from partgroup.colimits import Merge, same_partition, seed_partition
from partgroup.groups import cyclic, dihedral, klein, small_groups, trivial_group

from helpers import fp

needs_ext = pytest.mark.skipif(BACKEND != "cython", reason="compiled kernel not built")


def brute_closure(pg, seed, max_len):
    """Naive fixpoint over all pairs of equal-length domain words."""
    cls = list(range(pg.size))

    def merge(a, b):
        ra, rb = cls[a], cls[b]
        if ra != rb:
            for i, c in enumerate(cls):
                if c == rb:
                    cls[i] = ra
            return True
        return False

    for a, b in seed:
        merge(a, b)
    words = [w for w in pg.words(max_len) if len(w) >= 2]
    changed = True
    while changed:
        changed = False
        for u in words:
            for v in words:
                if len(u) == len(v) and all(cls[x] == cls[y] for x, y in zip(u, v)):
                    changed |= merge(pg.product(u), pg.product(v))
    groups = {}
    for x in range(pg.size):
        groups.setdefault(cls[x], []).append(x)
    return sorted(tuple(g) for g in groups.values())


def test_coproduct_sizes_and_domain():
    z2, z3 = cyclic(2), cyclic(3)
    c, inj = coproduct([z2, z3])
    assert c.size == (2 - 1) + (3 - 1) + 1
    g, h = inj[0].map[1], inj[1].map[1]
    assert not c.in_domain((g, h))
    assert validate_axioms(c).ok
    assert all(check_morphism(i).ok for i in inj)


def test_coproduct_edge_cases_and_name_collisions():
    c, inj = coproduct([])
    assert c.size == 1 and inj == []
    k = klein()
    c, _ = coproduct([k])
    assert find_isomorphism(c, k) is not None
    c, _ = coproduct([cyclic(2), cyclic(2)])
    assert c.names == ("0", "1@0", "1@1")


def test_klein_closure_from_set_classes_to_single_class():
    k = klein()
    x, y, xy = k.word("x", "y", "xy")
    seed = [(x, xy), (x, y)]
    assert seed_partition(4, seed).num_classes == 2
    cong = congruence_closure(k, seed)
    assert cong.num_classes == 1
    assert any(m.cause == "product" for m in cong.log)


def test_z6_closure_matches_brute_force():
    z6 = cyclic(6)
    cong = congruence_closure(z6, [(0, 3)])
    assert cong.classes() == [(0, 3), (1, 4), (2, 5)] == brute_closure(z6, [(0, 3)], 3)
    q = quotient_by_congruence(z6, cong)
    assert find_isomorphism(q.group, cyclic(3)) is not None
    assert q.group.names == ("[0]", "[1]", "[2]")


def test_empty_seed_gives_discrete_partition():
    k = klein()
    cong = congruence_closure(k, [])
    assert cong.num_classes == 4 and cong.log == []
    q = quotient_by_congruence(k, cong)
    assert find_isomorphism(q.group, k) is not None


def test_total_congruence_gives_trivial_group():
    d4 = dihedral(4)
    cong = congruence_closure(d4, [(0, x) for x in range(8)])
    q = quotient_by_congruence(d4, cong)
    assert q.group.size == 1


def test_quotient_rejects_unclosed_partition():
    z6 = cyclic(6)
    bad = seed_partition(6, [(0, 3)])
    assert star_violations(z6, bad)
    with pytest.raises(CongruenceError):
        quotient_by_congruence(z6, bad)


def test_quotient_rejects_partition_incompatible_with_inversion():
    F = fp(("1", "a", "b"))
    raw = seed_partition(F.size, [(F.id_of("a"), F.id_of("b"))])
    with pytest.raises(CongruenceError):
        quotient_by_congruence(F, raw)


def test_replay_detects_forged_log():
    z6 = cyclic(6)
    cong = congruence_closure(z6, [(0, 3)])
    assert same_partition(replay(z6, cong), cong)
    forged = Congruence(6, list(cong.parent), [Merge(1, 2, "product", ((1, 1), (1, 2)))], cong.seed)
    with pytest.raises(CongruenceError):
        replay(z6, forged)


def test_counterexample_coequalizer_is_trivial():
    k = klein()
    F = free_pointed(PointedSet(("1", "a", "b")))
    f = universal_map_pointed(F, k, {"a": "x", "b": "y"})
    g = universal_map_pointed(F, k, {"a": "xy", "b": "x"})
    assert set_coequalizer(f, g).num_classes == 2
    q = coequalizer(f, g)
    assert q.group.size == 1
    assert star_violations(k, q.congruence, limit=1) == []


def test_mediating_cocone_map():
    z6, z3 = cyclic(6), cyclic(3)
    f = identity_map(z6)
    g = Morphism(z6, z6, tuple((x + 3 * (x % 2)) % 6 for x in range(6)))
    assert check_morphism(g).ok
    q = coequalizer(f, g)
    red = Morphism(z6, z3, tuple(x % 3 for x in range(6)))
    psi = mediating_cocone_map(q.projection, red)
    assert find_isomorphism(q.group, z3) is not None
    assert check_morphism(psi).ok and len(set(psi.map)) == 3
    assert mediating_cocone_map(q.projection, q.projection).map == tuple(range(q.group.size))
    triv = mediating_cocone_map(q.projection, trivial_map(z6, z3))
    assert set(triv.map) == {0}
    with pytest.raises(MorphismError):
        mediating_cocone_map(q.projection, identity_map(z6))


def test_finite_colimit_examples():
    z2 = cyclic(2)
    t = trivial_group()
    c, _ = finite_colimit(Diagram([z2, cyclic(3)]))
    assert c.size == 4
    # Z2 <- Z2 -> Z2 with identities: Z2
    d = Diagram([z2, z2, z2], [(0, 1, identity_map(z2)), (0, 2, identity_map(z2))])
    c, legs = finite_colimit(d)
    assert find_isomorphism(c, z2) is not None
    # trivial <- Z2 -> Z2: the generator is killed
    d = Diagram([z2, t, z2], [(0, 1, trivial_map(z2, t)), (0, 2, identity_map(z2))])
    c, _ = finite_colimit(d)
    assert c.size == 1


def test_finite_colimit_parallel_pair_matches_coequalizer():
    z4 = cyclic(4)
    f = Morphism(cyclic(2), z4, (0, 2))
    g = trivial_map(cyclic(2), z4)
    c, _ = finite_colimit(Diagram([cyclic(2), z4], [(0, 1, f), (0, 1, g)]))
    q = coequalizer(f, g)
    assert find_isomorphism(c, q.group) is not None and c.size == 2


@pytest.mark.parametrize("name", sorted(small_groups()))
def test_closure_agrees_with_brute_force_on_groups(name):
    g = small_groups()[name]
    for x in range(1, g.size):
        cong = congruence_closure(g, [(0, x)])
        assert cong.classes() == brute_closure(g, [(0, x)], 3), (name, x)


@needs_ext
@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(small_groups())),
       st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=3))
def test_kernels_agree(name, seed):
    g = small_groups()[name]
    seed = [(a % g.size, b % g.size) for a, b in seed]
    a = congruence_closure(g, seed, "python")
    b = congruence_closure(g, seed, "cython")
    assert a.parent == b.parent
    assert a.log == b.log


def test_kernel_selection():
    assert get_kernel("python").__name__.endswith("_closure_py")
    with pytest.raises(ValueError):
        get_kernel("fortran")


def test_closure_on_partial_group():
    F = fp(("1", "a", "b"))
    a, b = F.id_of("a"), F.id_of("b")
    ai, bi = F.inv[a], F.inv[b]
    cong = congruence_closure(F, [(a, b)])
    assert cong.related(ai, bi)
    assert cong.classes() == brute_closure(F, [(a, b), (ai, bi)], 4)
    assert validate_axioms(quotient_by_congruence(F, cong).group).ok
