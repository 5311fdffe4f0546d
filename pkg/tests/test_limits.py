import pytest

from partgroup import (Diagram, Morphism, MorphismError, PointedSet, check_morphism, equalizer,
                       find_isomorphism, finite_limit, free_pointed, identity_map,
                       mediating_cone_map, product, trivial_map, universal_map_pointed,
                       validate_axioms)
from partgroup.groups import cyclic, direct_product_group, klein, trivial_group

from helpers import fp


def test_product_of_two_z2_is_klein():
    z2 = cyclic(2)
    p, legs = product([z2, z2])
    assert find_isomorphism(p, klein()) is not None
    assert all(check_morphism(leg).ok for leg in legs)


def test_product_matches_direct_product_oracle():
    p, _ = product([cyclic(2), cyclic(3)])
    assert find_isomorphism(p, direct_product_group(cyclic(2), cyclic(3))) is not None


def test_product_with_partial_factor():
    p, legs = product([fp(), cyclic(2)])
    assert p.size == 6 and validate_axioms(p).ok
    a = p.id_of("(a,0)")
    assert not p.in_domain((a, a))


def test_product_edge_cases():
    p, legs = product([])
    assert p.size == 1 and legs == []
    z3 = cyclic(3)
    p, legs = product([z3])
    assert p.same_as(z3) or find_isomorphism(p, z3) is not None
    assert legs[0].map == (0, 1, 2)


def test_equalizer_examples():
    z3 = cyclic(3)
    sub, inc = equalizer(identity_map(z3), identity_map(z3))
    assert sub.subset == (0, 1, 2)
    sub, _ = equalizer(identity_map(z3), trivial_map(z3, z3))
    assert sub.subset == (0,)
    k = klein()
    F = free_pointed(PointedSet(("1", "a", "b")))
    src = F.group.materialize(4)
    f = universal_map_pointed(F, k, {"a": "x", "b": "y"})
    g = universal_map_pointed(F, k, {"a": "xy", "b": "x"})
    sub, _ = equalizer(Morphism(src, k, f.map), Morphism(src, k, g.map))
    assert sub.subset == (src.unit,)


def test_equalizer_needs_parallel_pair():
    with pytest.raises(MorphismError):
        equalizer(identity_map(cyclic(2)), identity_map(cyclic(3)))


def _pullback():
    z6, z3 = cyclic(6), cyclic(3)
    red = Morphism(z6, z3, tuple(x % 3 for x in range(6)))
    return Diagram([z6, z3, z3], [(0, 1, red), (2, 1, identity_map(z3))])


def test_pullback_size_and_validity():
    lim, legs = finite_limit(_pullback())
    # fibre product count: pairs (a, b) with a mod 3 == b
    assert lim.size == sum(1 for a in range(6) for b in range(3) if a % 3 == b) == 6
    assert validate_axioms(lim).ok
    assert find_isomorphism(lim, cyclic(6)) is not None


def test_limit_of_discrete_and_parallel_diagrams():
    z2, z3 = cyclic(2), cyclic(3)
    lim, _ = finite_limit(Diagram([z2, z3]))
    assert find_isomorphism(lim, product([z2, z3])[0]) is not None
    z4 = cyclic(4)
    f = Morphism(z4, z4, (0, 3, 2, 1))
    lim, _ = finite_limit(Diagram([z4, z4], [(0, 1, f), (0, 1, identity_map(z4))]))
    sub, _ = equalizer(f, identity_map(z4))
    assert find_isomorphism(lim, sub.group) is not None
    assert lim.size == 2


def test_mediating_cone_map():
    d = _pullback()
    lim, legs = finite_limit(d)
    z6 = d.objects[0]
    apex_legs = [identity_map(z6), d.arrows[0][2], d.arrows[0][2]]
    t = mediating_cone_map(d, lim, legs, apex_legs)
    assert check_morphism(t).ok
    assert [tuple(legs[i].map[t.map[x]] for x in range(6)) for i in range(3)] == \
        [leg.map for leg in apex_legs]
    # apex = limit itself -> identity
    assert mediating_cone_map(d, lim, legs, legs).map == tuple(range(lim.size))
    # apex = trivial group -> trivial map
    t0 = trivial_group()
    t = mediating_cone_map(d, lim, legs, [trivial_map(t0, o) for o in d.objects])
    assert t.map == (lim.unit,)


def test_mediating_cone_map_rejects_non_cone():
    d = _pullback()
    lim, legs = finite_limit(d)
    z6, z3 = d.objects[0], d.objects[1]
    bad = [identity_map(z6), trivial_map(z6, z3), trivial_map(z6, z3)]
    with pytest.raises(MorphismError):
        mediating_cone_map(d, lim, legs, bad)
