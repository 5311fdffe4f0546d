"""Products, equalizers and finite limits."""
from __future__ import annotations

import itertools
from typing import Sequence

from .core import PartialGroup, TableDomain, Word
from .diagram import Diagram
from .groups import trivial_group
from .morphism import (ImpartialSubgroup, Morphism, MorphismError, compose, partial_subgroup,
                       check_morphism)


class _ProductCarrier:
    """Mixed-radix encoding of tuples of factor ids."""

    def __init__(self, factors: Sequence[PartialGroup]):
        self.factors = list(factors)
        self.tuples = list(itertools.product(*(range(f.size) for f in factors)))
        self.index = {t: i for i, t in enumerate(self.tuples)}

    def names(self) -> list[str]:
        if len(self.factors) == 1:
            return list(self.factors[0].names)
        return ["(" + ",".join(f.names[x] for f, x in zip(self.factors, t)) + ")" for t in self.tuples]

    def unit(self) -> int:
        return self.index[tuple(f.unit for f in self.factors)]

    def inv(self) -> list[int]:
        return [self.index[tuple(f.inv[x] for f, x in zip(self.factors, t))] for t in self.tuples]

    def horizon(self) -> int:
        return min(f.domain.horizon for f in self.factors)

    def words(self, elements: Sequence[int], horizon: int) -> dict[Word, int]:
        """Domain words over ``elements`` whose every projection is a factor domain word."""
        facs = self.factors
        tups = self.tuples
        table: dict[Word, int] = {}
        frontier: list[Word] = [(x,) for x in elements]
        for _ in range(2, horizon + 1):
            nxt = []
            for w in frontier:
                for x in elements:
                    v = w + (x,)
                    prod = []
                    for k, f in enumerate(facs):
                        proj = tuple(tups[y][k] for y in v)
                        if proj not in f.domain.table:
                            break
                        prod.append(f.domain.table[proj])
                    else:
                        table[v] = self.index[tuple(prod)]
                        nxt.append(v)
            frontier = nxt
        return table


def product(factors: Sequence[PartialGroup]) -> tuple[PartialGroup, list[Morphism]]:
    """Cartesian product with componentwise domain and product."""
    if not factors:
        return trivial_group(), []
    for f in factors:
        if not f.is_explicit:
            raise MorphismError("product factors need table domains")
    pc = _ProductCarrier(factors)
    h = pc.horizon()
    table = pc.words(range(len(pc.tuples)), h)
    pg = PartialGroup(pc.names(), pc.unit(), pc.inv(), TableDomain(table, h))
    projections = [Morphism(pg, f, tuple(t[k] for t in pc.tuples)) for k, f in enumerate(factors)]
    return pg, projections


def _parallel(f: Morphism, g: Morphism):
    if not (f.source.same_as(g.source) and f.target.same_as(g.target)):
        raise MorphismError("equalizer needs a parallel pair")


def equalizer(f: Morphism, g: Morphism) -> tuple[ImpartialSubgroup, Morphism]:
    """Elements where ``f`` and ``g`` agree, with the restricted domain."""
    _parallel(f, g)
    sub = partial_subgroup(f.source, [x for x in range(f.source.size) if f.map[x] == g.map[x]])
    return sub, sub.inclusion


def finite_limit(d: Diagram) -> tuple[PartialGroup, list[Morphism]]:
    """Equalizer of the two canonical maps product(objects) -> product(arrow targets).

    The product domain is only materialized over the equalizing subset.
    """
    d.validate()
    if not d.objects:
        return trivial_group(), []
    for o in d.objects:
        if not o.is_explicit:
            raise MorphismError("limit objects need table domains")
    pc = _ProductCarrier(d.objects)
    keep = []
    for i, t in enumerate(pc.tuples):
        if all(m.map[t[s]] == t[tt] for s, tt, m in d.arrows):
            keep.append(i)
    h = pc.horizon()
    table = pc.words(keep, h)
    local = {x: k for k, x in enumerate(keep)}
    names = [pc.names()[x] for x in keep] if len(d.objects) > 1 else [d.objects[0].names[x] for x in keep]
    inv_all = pc.inv()
    lim = PartialGroup(names, local[pc.unit()], [local[inv_all[x]] for x in keep],
                       TableDomain({tuple(local[x] for x in w): local[p] for w, p in table.items()}, h))
    legs = [Morphism(lim, o, tuple(pc.tuples[x][k] for x in keep)) for k, o in enumerate(d.objects)]
    return lim, legs


def mediating_cone_map(d: Diagram, limit: PartialGroup, legs: Sequence[Morphism],
                       apex_legs: Sequence[Morphism]) -> Morphism:
    """The unique ``t`` into the limit with ``t . legs[i] == apex_legs[i]``."""
    if len(apex_legs) != len(legs):
        raise MorphismError("one candidate leg per diagram object is required")
    if not apex_legs:
        raise MorphismError("empty cone: pass the apex via a one-object diagram")
    apex = apex_legs[0].source
    for s, t, m in d.arrows:
        if compose(apex_legs[s], m).map != apex_legs[t].map:
            raise MorphismError("candidate legs do not commute with the diagram")
    where = {tuple(leg.map[e] for leg in legs): e for e in range(limit.size)}
    out = []
    for a in range(apex.size):
        key = tuple(leg.map[a] for leg in apex_legs)
        if key not in where:
            raise MorphismError(f"no limit element over {key}")
        out.append(where[key])
    t = Morphism(apex, limit, tuple(out))
    report = check_morphism(t)
    if not report.ok:
        raise MorphismError(f"mediating map is not a morphism: {report.violations[0]}")
    return t
