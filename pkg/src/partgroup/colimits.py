"""Coproducts, coequalizers by congruence closure, quotients and finite colimits."""
from __future__ import annotations

from array import array
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from . import _kernel
from ._closure_py import find as _find, union as _union
from .core import PartialGroup, PartialGroupError, TableDomain, Word
from .diagram import Diagram
from .groups import trivial_group
from .morphism import Morphism, MorphismError, compose


class CongruenceError(PartialGroupError):
    """A partition is not closed under the product rule."""


@dataclass(frozen=True)
class Merge:
    a: int
    b: int
    cause: str  # "seed" | "product"
    witness: tuple = ()


@dataclass
class Congruence:
    """Partition of a carrier with the log of merges that produced it."""
    size: int
    parent: list[int]
    log: list[Merge] = field(default_factory=list)
    seed: tuple[tuple[int, int], ...] = ()

    def find(self, x: int) -> int:
        return _find(self.parent, x)

    def rep(self, x: int) -> int:
        return self.find(x)

    def classes(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for x in range(self.size):
            groups.setdefault(self.find(x), []).append(x)
        return sorted((tuple(v) for v in groups.values()), key=lambda c: c[0])

    @property
    def num_classes(self) -> int:
        return len({self.find(x) for x in range(self.size)})

    def related(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)

    @classmethod
    def discrete(cls, size: int) -> "Congruence":
        return cls(size, list(range(size)))


def seed_partition(size: int, seed: Iterable[tuple[int, int]]) -> Congruence:
    """Smallest equivalence relation containing ``seed`` (the set-level quotient)."""
    seed = tuple(seed)
    cong = Congruence(size, list(range(size)), seed=seed)
    for a, b in seed:
        if _union(cong.parent, a, b):
            cong.log.append(Merge(a, b, "seed", (a, b)))
    return cong


def _flatten(words: Sequence[Word], pg: PartialGroup):
    flat = array("i")
    offsets = array("i", [0])
    prods = array("i")
    for w in words:
        flat.extend(w)
        offsets.append(len(flat))
        prods.append(pg.product(w))
    return flat, offsets, prods


def closure_words(pg: PartialGroup) -> list[Word]:
    """Domain words the closure buckets: every table word of length >= 2."""
    if not pg.is_explicit:
        raise CongruenceError("congruence closure needs a table domain")
    return [w for w in pg.words() if len(w) >= 2]


def congruence_closure(pg: PartialGroup, seed: Iterable[tuple[int, int]],
                       kernel: str | None = None) -> Congruence:
    """Smallest congruence containing ``seed`` that is closed under the product rule:
    equal-length domain words with related entries have related products.

    The seed is closed under inversion first so the quotient inherits one
    (coequalizer seeds already are).
    """
    seed = tuple(seed)
    for a, b in seed:
        if not (0 <= a < pg.size and 0 <= b < pg.size):
            raise CongruenceError(f"seed pair {(a, b)} out of range")
    inv = pg.inv
    seed += tuple(p for p in ((inv[a], inv[b]) for a, b in seed) if p not in seed)
    cong = seed_partition(pg.size, seed)
    words = closure_words(pg)
    flat, offsets, prods = _flatten(words, pg)
    parent = array("i", cong.parent)
    impl = _kernel.get_kernel(kernel)
    while True:
        merges = impl.closure_pass(flat, offsets, prods, parent)
        if not merges:
            break
        for a, b, i, j in merges:
            cong.log.append(Merge(a, b, "product", (words[i], words[j])))
    cong.parent = list(parent)
    return cong


def star_violations(pg: PartialGroup, cong: Congruence, max_len: int | None = None,
                    limit: int = 10) -> list[tuple[Word, Word]]:
    """Pairs of componentwise-related domain words whose products are unrelated."""
    find = cong.find
    first: dict[tuple, Word] = {}
    bad = []
    for w in pg.words(max_len):
        key = (len(w),) + tuple(find(x) for x in w)
        u = first.setdefault(key, w)
        if u is not w and find(pg.product(u)) != find(pg.product(w)):
            bad.append((u, w))
            if len(bad) >= limit:
                break
    return bad


def replay(pg: PartialGroup, cong: Congruence) -> Congruence:
    """Rebuild a partition from its log, checking that each merge is justified."""
    out = Congruence(cong.size, list(range(cong.size)), seed=cong.seed)
    seeds = set(cong.seed) | {(b, a) for a, b in cong.seed}
    for m in cong.log:
        if m.cause == "seed":
            if (m.a, m.b) not in seeds:
                raise CongruenceError(f"log cites a non-seed pair {(m.a, m.b)}")
        else:
            u, v = m.witness
            if len(u) != len(v) or not all(out.related(x, y) for x, y in zip(u, v)):
                raise CongruenceError(f"merge of {m.a},{m.b} is not forced by {u} ~ {v}")
            if {pg.product(u), pg.product(v)} != {m.a, m.b}:
                raise CongruenceError("logged products do not match the witness words")
        _union(out.parent, m.a, m.b)
        out.log.append(m)
    return out


def same_partition(a: Congruence, b: Congruence) -> bool:
    return a.classes() == b.classes()


class QuotientResult(NamedTuple):
    group: PartialGroup
    projection: Morphism
    congruence: Congruence


def quotient_by_congruence(pg: PartialGroup, cong: Congruence) -> QuotientResult:
    """Quotient carrier = classes; domain = image of the domain; product via any lift."""
    bad = star_violations(pg, cong, limit=1)
    if bad:
        u, v = bad[0]
        raise CongruenceError(f"partition is not closed under the product rule: {u} vs {v}")
    classes = cong.classes()
    cls_of = {}
    for k, c in enumerate(classes):
        for x in c:
            cls_of[x] = k
    for c in classes:
        if len({cls_of[pg.inv[x]] for x in c}) != 1:
            raise CongruenceError(f"inversion is not constant on the class of {pg.names[c[0]]}")
    names = [f"[{pg.names[c[0]]}]" for c in classes]
    inv = [cls_of[pg.inv[c[0]]] for c in classes]
    table: dict[Word, int] = {}
    for w in pg.words():
        if len(w) >= 2:
            table[tuple(cls_of[x] for x in w)] = cls_of[pg.product(w)]
    horizon = pg.domain.horizon
    q = PartialGroup(names, cls_of[pg.unit], inv, TableDomain(table, horizon))
    t = Morphism(pg, q, tuple(cls_of[x] for x in range(pg.size)))
    return QuotientResult(q, t, cong)


def coequalizer(f: Morphism, g: Morphism, kernel: str | None = None) -> QuotientResult:
    """Coequalizer of a parallel pair: closure of the target seeded by ``(f(x), g(x))``.

    Only the source carrier is read, so the source may have an oracle domain.
    """
    if not (f.source.same_as(g.source) and f.target.same_as(g.target)):
        raise MorphismError("coequalizer needs a parallel pair")
    if not f.target.is_explicit:
        raise CongruenceError("coequalizer target needs a table domain")
    seed = [(f.map[x], g.map[x]) for x in range(f.source.size)]
    cong = congruence_closure(f.target, seed, kernel)
    return quotient_by_congruence(f.target, cong)


def set_coequalizer(f: Morphism, g: Morphism) -> Congruence:
    """The pointed-set coequalizer of ``f, g`` as a partition of the target."""
    return seed_partition(f.target.size, [(f.map[x], g.map[x]) for x in range(f.source.size)])


def coproduct(summands: Sequence[PartialGroup]) -> tuple[PartialGroup, list[Morphism]]:
    """Disjoint union with all units identified; domain is the union of transported domains."""
    if not summands:
        return trivial_group(), []
    for s in summands:
        if not s.is_explicit:
            raise CongruenceError("coproduct summands need table domains")
    horizon = min(s.domain.horizon for s in summands)
    counts = Counter(s.names[x] for s in summands for x in range(s.size) if x != s.unit)
    names = [summands[0].names[summands[0].unit]]
    maps = []
    for k, s in enumerate(summands):
        m = [0] * s.size
        for x in range(s.size):
            if x == s.unit:
                continue
            nm = s.names[x]
            if counts[nm] > 1 or nm == names[0]:
                nm = f"{nm}@{k}"
            m[x] = len(names)
            names.append(nm)
        maps.append(m)
    inv = [0] * len(names)
    table: dict[Word, int] = {}
    for s, m in zip(summands, maps):
        for x in range(s.size):
            inv[m[x]] = m[s.inv[x]]
        for w, p in s.domain.table.items():
            if len(w) <= horizon:
                table[tuple(m[x] for x in w)] = m[p]
    cp = PartialGroup(names, 0, inv, TableDomain(table, horizon))
    return cp, [Morphism(s, cp, tuple(m)) for s, m in zip(summands, maps)]


def mediating_cocone_map(legs: Sequence[Morphism], candidate: Sequence[Morphism]) -> Morphism:
    """The unique map out of a colimit with ``legs[i] . psi == candidate[i]``.

    Raises ``MorphismError`` when the candidate is not constant on the fibres
    of the legs (it does not coequalize / commute with the diagram).
    """
    if isinstance(legs, Morphism):
        legs = [legs]
    if isinstance(candidate, Morphism):
        candidate = [candidate]
    if len(legs) != len(candidate) or not legs:
        raise MorphismError("legs and candidate cocone differ in length")
    colim = legs[0].target
    target = candidate[0].target
    psi: list[int | None] = [None] * colim.size
    for leg, tau in zip(legs, candidate):
        if not leg.source.same_as(tau.source):
            raise MorphismError("candidate leg has the wrong source")
        for x in range(leg.source.size):
            c, v = leg.map[x], tau.map[x]
            if psi[c] is None:
                psi[c] = v
            elif psi[c] != v:
                raise MorphismError(f"candidate is not constant on the class of {colim.names[c]}")
    if any(v is None for v in psi):
        raise MorphismError("legs are not jointly surjective onto the colimit")
    return Morphism(colim, target, tuple(psi))


def finite_colimit(d: Diagram, kernel: str | None = None) -> tuple[PartialGroup, list[Morphism]]:
    """Coequalizer of the two canonical maps coproduct(arrow sources) -> coproduct(objects)."""
    d.validate()
    c0, inj = coproduct(d.objects)
    if not d.arrows:
        return c0, inj
    c1, inj1 = coproduct([m.source for _, _, m in d.arrows])
    s_map = [0] * c1.size
    t_map = [0] * c1.size
    for (src, tgt, m), j in zip(d.arrows, inj1):
        for x in range(m.source.size):
            s_map[j.map[x]] = inj[tgt].map[m.map[x]]
            t_map[j.map[x]] = inj[src].map[x]
    s = Morphism(c1, c0, tuple(s_map))
    t = Morphism(c1, c0, tuple(t_map))
    q, proj, _ = coequalizer(s, t, kernel)
    return q, [compose(i, proj) for i in inj]
