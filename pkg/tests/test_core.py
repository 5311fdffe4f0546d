import pytest

from partgroup import (DomainError, HorizonError, OracleDomain, PartialGroup, StructureError,
                       TableDomain, UnsupportedModeError, group_from_table, make_table_group,
                       validate_axioms)
from partgroup.core import invert_word, iter_words
from partgroup.groups import cyclic, klein, mul_table, small_groups

from helpers import fp


def test_small_groups_validate_exhaustively():
    for name, g in small_groups().items():
        assert validate_axioms(g).ok, name


def test_group_from_table_matches_cayley_table():
    z5 = cyclic(5)
    t = mul_table(z5)
    assert all(t[a][b] == (a + b) % 5 for a in range(5) for b in range(5))
    assert z5.product((1, 2, 3)) == 1
    assert len(z5.words(2)) == 1 + 5 + 25


def test_empty_word_and_singletons_are_implicit():
    k = klein()
    assert k.in_domain(()) and k.product(()) == k.unit
    assert all(k.in_domain((x,)) and k.product((x,)) == x for x in range(4))


def test_horizon_error_beyond_table():
    k = klein()
    with pytest.raises(HorizonError):
        k.in_domain((1,) * 5)


def test_product_outside_domain_raises():
    pg = fp()
    a = pg.id_of("a")
    with pytest.raises(DomainError):
        pg.product((a, a))


def test_structure_errors():
    with pytest.raises(StructureError):
        PartialGroup(["a", "a"], 0, [0, 1], TableDomain({}, 1))
    with pytest.raises(StructureError):
        PartialGroup([], 0, [], TableDomain({}, 1))
    with pytest.raises(StructureError):
        TableDomain({(0,): 0}, 2)


def test_missing_subword_is_axiom1_violation():
    # (a,a,a) listed without its subword (a,a)
    pg = make_table_group(["1", "a"], 0, [0, 1], {(1, 1, 1): 1}, horizon=3)
    assert "1" in validate_axioms(pg).axioms()


def test_missing_inverse_word_is_axiom4_violation():
    pg = make_table_group(["1", "a", "b"], 0, [0, 2, 1], {}, horizon=2)
    assert "4" in validate_axioms(pg).axioms()


def test_wrong_product_is_reported():
    g = cyclic(3)
    table = dict(g.domain.table)
    table[(1, 1)] = 1
    bad = PartialGroup(g.names, g.unit, g.inv, TableDomain(table, g.domain.horizon))
    report = validate_axioms(bad)
    assert not report.ok
    assert report.axioms() & {"3", "4"}


def test_non_involutive_inverse():
    pg = PartialGroup(["1", "a", "b"], 0, [0, 2, 2], TableDomain({}, 1))
    assert validate_axioms(pg).axioms() == {"inv"}


def test_sampled_mode_on_oracle_domain():
    pg = fp(("1", "a", "b"))
    assert validate_axioms(pg, "exhaustive").ok
    from partgroup import free_pointed, PointedSet
    oracle = free_pointed(PointedSet(("1", "a", "b"))).group
    assert isinstance(oracle.domain, OracleDomain)
    assert validate_axioms(oracle, "sampled", 6).ok
    with pytest.raises(UnsupportedModeError):
        validate_axioms(oracle, "exhaustive")
    with pytest.raises(UnsupportedModeError):
        validate_axioms(pg, "fuzzy")


def test_invert_word_and_iter_words():
    k = klein()
    assert invert_word(k, (1, 2, 3)) == (3, 2, 1)
    z3 = cyclic(3)
    assert invert_word(z3, (1, 1)) == (2, 2)
    assert sum(1 for _ in iter_words([0, 1], 3)) == 1 + 2 + 4 + 8


def test_materialize_and_same_as():
    k = klein()
    assert k.same_as(k.materialize())
    small = k.materialize(2)
    assert small.domain.horizon == 2 and not small.same_as(k)
    assert validate_axioms(small).ok


def test_group_from_table_horizon_parameter():
    g = group_from_table(["e", "s"], [[0, 1], [1, 0]], horizon=3)
    assert g.domain.horizon == 3
    assert len(g.domain.table) == 4 + 8
