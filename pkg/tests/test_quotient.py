import random

import pytest

from partgroup import (Morphism, add_relations, check_morphism, classify_subset, coproduct,
                       find_isomorphism, generated_partial_subgroup, image, inner_relations,
                       intersect_impartial, kernel, present_as_quotient_of_free, quotient)
from partgroup.groups import coset_quotient, cyclic, klein, normal_subgroups, small_groups
from partgroup.groups import trivial_group
from partgroup.quotient import SubgroupError

from helpers import fp


def test_classify_examples():
    z6 = cyclic(6)
    for subset in ([0], range(6), [0, 2, 4]):
        w = classify_subset(z6, subset)
        assert w.impartial and w.partial and w.normal
    w = classify_subset(z6, [0, 1])
    assert not (w.impartial or w.partial or w.normal)


def test_classify_impartial_not_partial():
    z4 = cyclic(4)
    im = image(Morphism(fp(), z4, (0, 1, 3)))
    w = classify_subset(z4, im.subset, im.table)
    assert w.impartial and not w.partial and not w.normal
    with pytest.raises(SubgroupError):
        classify_subset(z4, [0, 1, 3], [(1, 2)])


def test_classify_non_normal_subgroup():
    from partgroup.groups import symmetric3
    s3 = symmetric3()
    subs = [w for w in (classify_subset(s3, [0, x]) for x in range(1, 6)) if w.partial]
    assert subs and all(not w.normal for w in subs)


def test_flag_implication_chain_on_random_subsets():
    rng = random.Random(3)
    for g in small_groups().values():
        for _ in range(8):
            subset = {0} | {x for x in range(g.size) if rng.random() < 0.4}
            w = classify_subset(g, subset)
            assert (not w.normal or w.partial) and (not w.partial or w.impartial)


def test_generated_partial_subgroup_examples():
    z6 = cyclic(6)
    assert generated_partial_subgroup(z6, [0]).subset == (0,)
    assert generated_partial_subgroup(z6, [2]).subset == (0, 2, 4)
    f = fp(("1", "a", "b"))
    a = f.id_of("a")
    assert generated_partial_subgroup(f, [a]).names == ["1", "a", "a'"]


def test_generated_partial_subgroup_idempotent_and_monotone():
    rng = random.Random(5)
    for g in small_groups().values():
        gens = rng.sample(range(g.size), min(2, g.size))
        h = generated_partial_subgroup(g, gens)
        assert generated_partial_subgroup(g, h.subset).subset == h.subset
        more = generated_partial_subgroup(g, gens + [rng.randrange(g.size)])
        assert set(h.subset) <= set(more.subset)


def test_intersections():
    z6 = cyclic(6)
    two = generated_partial_subgroup(z6, [2])
    three = generated_partial_subgroup(z6, [3])
    whole = classify_subset(z6, range(6))
    assert intersect_impartial([two, three]).subset == (0,)
    assert intersect_impartial([two, whole]).subset == two.subset
    unit = classify_subset(z6, [0])
    assert intersect_impartial([unit, three]).subset == (0,)
    with pytest.raises(SubgroupError):
        intersect_impartial([two, classify_subset(cyclic(3), [0])])


def test_quotient_examples():
    z6 = cyclic(6)
    q, proj = quotient(z6, classify_subset(z6, [0]))
    assert find_isomorphism(q, z6) is not None
    q, proj = quotient(z6, classify_subset(z6, [0, 3]))
    assert find_isomorphism(q, cyclic(3)) is not None
    assert check_morphism(proj).ok


def test_quotient_matches_group_oracle_and_kernel():
    for name, g in small_groups().items():
        for n in normal_subgroups(g):
            w = classify_subset(g, n)
            q, proj = quotient(g, w)
            assert find_isomorphism(q, coset_quotient(g, n, g.domain.horizon)) is not None, name
            assert kernel(proj).subset == tuple(sorted(n))


def test_quotient_by_impartial_equals_generated():
    z4 = cyclic(4)
    im = image(Morphism(fp(), z4, (0, 1, 3)))
    w = classify_subset(z4, im.subset, im.table)
    q1, _ = quotient(z4, w)
    q2, _ = quotient(z4, generated_partial_subgroup(z4, w.subset))
    assert find_isomorphism(q1, q2) is not None


def test_inner_relations_examples():
    z2 = cyclic(2)
    assert inner_relations(z2, 3) == {(), (0,), (1, 1), (0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0),
                                      (0, 0, 0)}
    k = klein()
    pairs = {w for w in inner_relations(k, 2) if len(w) == 2}
    assert pairs == {(x, x) for x in range(4)}
    t = trivial_group()
    assert inner_relations(t, 3) == {(0,) * n for n in range(4)}


def test_presentation_of_small_groups():
    r = present_as_quotient_of_free(trivial_group(), 6)
    assert r.verdict == "verified" and r.free.group.size == 2
    r = present_as_quotient_of_free(cyclic(2), 6)
    assert r.verdict == "verified" and r.isomorphism is not None
    assert check_morphism(r.counit).ok


def test_presentation_truncated_never_claims_verified():
    r = present_as_quotient_of_free(cyclic(3), 5, max_elements=30)
    assert r.free.status == "truncated"
    assert r.verdict in ("bounded-verified", "inconclusive")


def test_add_relations():
    z2 = cyclic(2)
    base = present_as_quotient_of_free(z2, 5)
    r = add_relations(z2, [], 5)
    assert r.verdict == base.verdict == "verified"
    assert find_isomorphism(r.quotient, base.quotient) is not None
    r = add_relations(z2, [(1, 1)], 5)
    assert r.verdict == "verified" and find_isomorphism(r.quotient, z2) is not None
    c, inj = coproduct([z2, z2])
    g1, g2 = inj[0].map[1], inj[1].map[1]
    r = add_relations(c, [(g1, g2)], 4)
    assert r.free.complete
    assert r.details["embedding"]["contains_S"]
    assert r.details["embedding"]["injective"] and r.details["embedding"]["morphism"]
