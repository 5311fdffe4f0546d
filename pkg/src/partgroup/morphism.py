"""Morphisms of partial groups, images, kernels and isomorphism search."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .core import PartialGroup, PartialGroupError, TableDomain, ValidationReport, Word


class MorphismError(PartialGroupError):
    pass


@dataclass(frozen=True, eq=False)
class Morphism:
    source: PartialGroup
    target: PartialGroup
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source.size:
            raise MorphismError("map must be total on the source carrier")
        if any(not 0 <= y < self.target.size for y in self.map):
            raise MorphismError("map values must be target ids")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def star(self, w: Iterable[int]) -> Word:
        m = self.map
        return tuple(m[x] for x in w)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.map == other.map and self.source.same_as(other.source)
                and self.target.same_as(other.target))

    __hash__ = object.__hash__

    def describe(self) -> dict[str, str]:
        return {self.source.names[x]: self.target.names[y] for x, y in enumerate(self.map)}

    @classmethod
    def from_names(cls, source: PartialGroup, target: PartialGroup,
                   pairs: Mapping[str, str]) -> "Morphism":
        m = [target.unit] * source.size
        seen = set()
        for a, b in pairs.items():
            m[source.id_of(a)] = target.id_of(b)
            seen.add(source.id_of(a))
        missing = [source.names[x] for x in range(source.size) if x not in seen and x != source.unit]
        if missing:
            raise MorphismError(f"map is not total: missing {missing}")
        return cls(source, target, tuple(m))


def identity_map(pg: PartialGroup) -> Morphism:
    return Morphism(pg, pg, tuple(range(pg.size)))


def trivial_map(source: PartialGroup, target: PartialGroup) -> Morphism:
    return Morphism(source, target, (target.unit,) * source.size)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``f`` followed by ``g``."""
    if not f.target.same_as(g.source):
        raise MorphismError("compose: target of f is not the source of g")
    return Morphism(f.source, g.target, tuple(g.map[y] for y in f.map))


def checked_length(source: PartialGroup, target: PartialGroup, max_len: int | None) -> int:
    limit = source.bound if max_len is None else max_len
    for pg in (source, target):
        if pg.is_explicit:
            limit = min(limit, pg.domain.horizon)
    return limit


def check_morphism(m: Morphism, max_len: int | None = None) -> ValidationReport:
    """Check that ``m`` maps domain words into the target domain and commutes with products.

    Words are checked up to ``max_len``, clipped to every table horizon involved.
    """
    src, tgt = m.source, m.target
    limit = checked_length(src, tgt, max_len)
    report = ValidationReport(checked_len=limit)
    mp = m.map
    for w in src.words(limit):
        img = tuple(mp[x] for x in w)
        if not tgt.in_domain(img):
            report.add("a", w, f"image {tgt.show(img)} not in target domain")
            continue
        if tgt.product(img) != mp[src.product(w)]:
            report.add("b", w, "image of the product differs from the product of the image")
    return report


def is_morphism(m: Morphism, max_len: int | None = None) -> bool:
    return check_morphism(m, max_len).ok


@dataclass(eq=False)
class ImpartialSubgroup:
    """A subset of a parent carrier with a sub-domain over it (parent ids)."""
    parent: PartialGroup
    subset: tuple[int, ...]
    table: dict[Word, int]
    horizon: int
    truncated: bool = False
    group: PartialGroup = field(init=False, repr=False)
    inclusion: Morphism = field(init=False, repr=False)

    def __post_init__(self):
        self.subset = tuple(sorted(set(self.subset)))
        if self.parent.unit not in self.subset:
            raise MorphismError("an impartial subgroup contains the unit")
        local = {x: i for i, x in enumerate(self.subset)}
        try:
            inv = [local[self.parent.inv[x]] for x in self.subset]
        except KeyError:
            raise MorphismError("subset is not closed under inversion") from None
        names = [self.parent.names[x] for x in self.subset]
        tab = {}
        for w, p in self.table.items():
            if p not in local:
                raise MorphismError(f"product of {w} leaves the subset")
            tab[tuple(local[x] for x in w)] = local[p]
        self.group = PartialGroup(names, local[self.parent.unit], inv, TableDomain(tab, self.horizon))
        self.inclusion = Morphism(self.group, self.parent, self.subset)

    def domain_words(self) -> set[Word]:
        words = {()} | {(x,) for x in self.subset}
        return words | set(self.table)


def partial_subgroup(pg: PartialGroup, subset: Iterable[int], max_len: int | None = None) -> ImpartialSubgroup:
    """``subset`` with the full restricted domain D intersected with W(subset)."""
    subset = set(subset)
    limit = pg.bound if max_len is None else max_len
    if pg.is_explicit:
        limit = min(limit, pg.domain.horizon)
    table = {w: pg.product(w) for w in pg.restricted_words(subset, limit) if len(w) >= 2}
    return ImpartialSubgroup(pg, tuple(subset), table, limit, truncated=not pg.is_explicit)


def image(m: Morphism, bound: int | None = None) -> ImpartialSubgroup:
    """Image of ``m`` with domain the image of the source domain."""
    src, tgt = m.source, m.target
    if not src.is_explicit and bound is None:
        bound = src.domain.bound
    limit = checked_length(src, tgt, bound)
    table: dict[Word, int] = {}
    for w in src.words(limit):
        if len(w) >= 2:
            img = m.star(w)
            table[img] = tgt.product(img)
    return ImpartialSubgroup(tgt, tuple(set(m.map)), table, limit, truncated=not src.is_explicit)


def kernel(m: Morphism, bound: int | None = None) -> ImpartialSubgroup:
    """The elements sent to the unit, as a partial subgroup of the source."""
    sub = [x for x in range(m.source.size) if m.map[x] == m.target.unit]
    return partial_subgroup(m.source, sub, bound)


# -- isomorphism search ------------------------------------------------------

def _signatures(pg: PartialGroup) -> list[tuple]:
    deg = Counter()
    sq = {}
    for w in pg.words(2):
        if len(w) == 2:
            deg[w[0]] += 1
            deg[w[1]] += 1
            if w[0] == w[1]:
                sq[w[0]] = pg.product(w)
    len_counts = defaultdict(Counter)
    for w in pg.words():
        for x in set(w):
            len_counts[x][len(w)] += 1
    out = []
    for x in range(pg.size):
        s = sq.get(x)
        sq_kind = None if s is None else ("unit" if s == pg.unit else "self" if s == x else "other")
        out.append((x == pg.unit, pg.inv[x] == x, deg[x], sq_kind,
                    tuple(sorted(len_counts[x].items()))))
    return out


def find_isomorphism(a: PartialGroup, b: PartialGroup) -> Morphism | None:
    """Backtracking search for a bijection ``a -> b`` with (D_a)f* = D_b and matching products.

    Domains are compared up to the smaller horizon.
    """
    if not (a.is_explicit and b.is_explicit):
        raise MorphismError("isomorphism search needs table domains")
    if a.size != b.size:
        return None
    h = min(a.domain.horizon, b.domain.horizon)
    wa = a.words(h)
    wb = b.words(h)
    if len(wa) != len(wb):
        return None
    sa, sb = _signatures(_clip(a, h)), _signatures(_clip(b, h))
    if sorted(sa) != sorted(sb):
        return None

    pairs_a = [w for w in wa if len(w) == 2]
    dom_b = set(wb)
    by_elem = defaultdict(list)
    for w in pairs_a:
        by_elem[w[0]].append(w)
        by_elem[w[1]].append(w)
    pairs_b_set = {w for w in wb if len(w) == 2}
    order = sorted(range(a.size), key=lambda x: (x != a.unit, -sa[x][2], x))
    fwd: dict[int, int] = {}
    back: dict[int, int] = {}

    def consistent(x: int) -> bool:
        for w in by_elem[x]:
            if w[0] in fwd and w[1] in fwd:
                img = (fwd[w[0]], fwd[w[1]])
                if img not in pairs_b_set:
                    return False
                p = a.product(w)
                if p in fwd and fwd[p] != b.product(img):
                    return False
        return True

    def assign(x, y, added):
        fwd[x] = y
        back[y] = x
        added.append(x)

    def undo(added):
        for x in added:
            del back[fwd.pop(x)]

    def search(k: int):
        if k == len(order):
            yield tuple(fwd[x] for x in range(a.size))
            return
        x = order[k]
        if x in fwd:
            yield from search(k + 1)
            return
        for y in range(b.size):
            if y in back or sb[y] != sa[x]:
                continue
            xi, yi = a.inv[x], b.inv[y]
            if (xi == x) != (yi == y):
                continue
            added: list[int] = []
            assign(x, y, added)
            if xi != x:
                if xi in fwd or yi in back:
                    undo(added)
                    continue
                assign(xi, yi, added)
            if all(consistent(z) for z in added):
                yield from search(k + 1)
            undo(added)

    for mapping in search(0):
        f = Morphism(a, b, mapping)
        if _is_domain_bijection(f, wa, dom_b):
            return f
    return None


def _clip(pg: PartialGroup, h: int) -> PartialGroup:
    if pg.domain.horizon == h:
        return pg
    table = {w: p for w, p in pg.domain.table.items() if len(w) <= h}
    return PartialGroup(pg.names, pg.unit, pg.inv, TableDomain(table, h))


def _is_domain_bijection(f: Morphism, words_a: Sequence[Word], dom_b: set[Word]) -> bool:
    a, b = f.source, f.target
    seen = set()
    for w in words_a:
        img = f.star(w)
        if img not in dom_b or b.product(img) != f.map[a.product(w)]:
            return False
        seen.add(img)
    return len(seen) == len(dom_b)


def inverse_morphism(f: Morphism) -> Morphism:
    inv = [0] * f.target.size
    for x, y in enumerate(f.map):
        inv[y] = x
    return Morphism(f.target, f.source, tuple(inv))
