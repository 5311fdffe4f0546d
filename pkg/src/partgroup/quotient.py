"""Subgroup taxonomy, generated partial subgroups, quotients and presentations by free objects."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .colimits import coequalizer, congruence_closure
from .core import PartialGroup, PartialGroupError, Word, validate_axioms
from .free import FreePartialGroup, SetSObject, free_sets, universal_map_sets
from .morphism import (ImpartialSubgroup, Morphism, MorphismError, check_morphism,
                       find_isomorphism, trivial_map)

VERDICTS = ("verified", "bounded-verified", "inconclusive")


class SubgroupError(PartialGroupError):
    pass


@dataclass
class SubgroupWitness:
    parent: PartialGroup
    subset: tuple[int, ...]
    impartial: bool
    partial: bool
    normal: bool
    sub: ImpartialSubgroup | None = None
    reason: str = ""

    @property
    def names(self) -> list[str]:
        return [self.parent.names[x] for x in self.subset]


def _require_explicit(pg: PartialGroup):
    if not pg.is_explicit:
        raise SubgroupError("operation needs a table domain")


def _try_impartial(pg: PartialGroup, subset: Sequence[int], words: Iterable[Word]):
    table = {w: pg.product(w) for w in words if len(w) >= 2}
    try:
        sub = ImpartialSubgroup(pg, tuple(subset), table, pg.domain.horizon)
    except MorphismError as e:
        return None, str(e)
    report = validate_axioms(sub.group)
    if not report.ok:
        return None, f"axiom {report.violations[0]}"
    return sub, ""


def is_normal(pg: PartialGroup, subset: Iterable[int]) -> bool:
    """Every defined conjugate ``(g^-1, x, g)`` of a member lies in ``subset``."""
    sub = set(subset)
    for w in pg.words(3):
        if len(w) == 3 and w[1] in sub and w[0] == pg.inv[w[2]] and pg.product(w) not in sub:
            return False
    return True


def classify_subset(pg: PartialGroup, subset: Iterable[int],
                    candidate_domain: Iterable[Word] | None = None) -> SubgroupWitness:
    """Impartial / partial / partial-normal flags of ``subset`` (with an optional sub-domain)."""
    _require_explicit(pg)
    subset = tuple(sorted(set(subset)))
    if any(not 0 <= x < pg.size for x in subset):
        raise SubgroupError("subset is not contained in the carrier")
    full = set(pg.restricted_words(subset))
    if candidate_domain is None:
        words = full
    else:
        words = {tuple(w) for w in candidate_domain} | {()} | {(x,) for x in subset}
        outside = words - full
        if outside:
            raise SubgroupError(f"candidate domain word {sorted(outside)[0]} is not in D(subset)")
    sub, why = _try_impartial(pg, subset, words)
    if sub is None:
        return SubgroupWitness(pg, subset, False, False, False, None, why)
    partial = words == full
    normal = partial and is_normal(pg, subset)
    return SubgroupWitness(pg, subset, True, partial, normal, sub)


def generated_partial_subgroup(pg: PartialGroup, generators: Iterable[int]) -> SubgroupWitness:
    """Smallest subset containing ``generators`` closed under products of its domain words."""
    _require_explicit(pg)
    cur = {pg.unit}
    for g in generators:
        cur |= {g, pg.inv[g]}
    while True:
        nxt = {pg.product(w) for w in pg.restricted_words(cur)}
        if nxt <= cur:
            break
        cur |= nxt
    return classify_subset(pg, cur)


def intersect_impartial(subs: Sequence[SubgroupWitness]) -> SubgroupWitness:
    if not subs:
        raise SubgroupError("nothing to intersect")
    parent = subs[0].parent
    for s in subs:
        if not s.parent.same_as(parent):
            raise SubgroupError("subgroups live in distinct parents")
        if not s.impartial:
            raise SubgroupError("operands must be impartial")
    subset = set(subs[0].subset)
    words = subs[0].sub.domain_words()
    for s in subs[1:]:
        subset &= set(s.subset)
        words &= s.sub.domain_words()
    words = {w for w in words if all(x in subset for x in w)}
    return classify_subset(parent, subset, words)


def quotient(pg: PartialGroup, h: SubgroupWitness, kernel: str | None = None) -> tuple[PartialGroup, Morphism]:
    """Cokernel of the inclusion: coequalizer of the inclusion and the trivial map."""
    _require_explicit(pg)
    if not h.impartial:
        raise SubgroupError("quotient needs an impartial subgroup")
    inc = h.sub.inclusion
    q = coequalizer(inc, trivial_map(h.sub.group, pg), kernel)
    return q.group, q.projection


def inner_relations(pg: PartialGroup, max_len: int | None = None) -> set[Word]:
    """Domain words with product the unit (including the empty word)."""
    return {w for w in pg.words(max_len) if pg.product(w) == pg.unit}


# -- presentations by free objects -------------------------------------------

@dataclass
class PresentationReport:
    verdict: str
    free: FreePartialGroup
    relations: list[int] = field(default_factory=list)
    normal: SubgroupWitness | None = None
    quotient: PartialGroup | None = None
    isomorphism: Morphism | None = None
    counit: Morphism | None = None
    details: dict = field(default_factory=dict)


def _relation_images(pg: PartialGroup, fr: FreePartialGroup) -> list[int]:
    M = fr.group
    emb = [fr.embedding[n] for n in pg.names]
    out = set()
    for u in inner_relations(pg):
        w = tuple(emb[x] for x in u)
        if len(w) > M.domain.horizon or not M.in_domain(w):
            continue
        out.add(M.product(w))
    return sorted(out)


def _present(pg: PartialGroup, X: SetSObject, max_word_len: int, max_elements: int,
             max_words: int, kernel: str | None) -> PresentationReport:
    fr = free_sets(X, max_word_len, max_elements, max_words)
    M = fr.group
    rel = _relation_images(pg, fr)
    counit = universal_map_sets(fr, pg, {n: i for i, n in enumerate(pg.names)}, allow_truncated=True)
    rep = PresentationReport("inconclusive", fr, rel, counit=counit)
    rep.details = {"free_size": M.size, "free_words": len(M.domain.table), "status": fr.status,
                   "relation_images": len(rel)}
    if fr.complete:
        n = generated_partial_subgroup(M, rel)
        q, _ = quotient(M, n, kernel)
        iso = find_isomorphism(q, pg)
        rep.normal, rep.quotient, rep.isomorphism = n, q, iso
        rep.details["normal_size"] = len(n.subset)
        if iso is not None:
            rep.verdict = "verified"
        return rep
    # bounded check on what was discovered: onto pg, fibres inside the relation congruence
    onto = set(counit.map) == set(range(pg.size))
    cong = congruence_closure(M, [(r, M.unit) for r in rel], kernel)
    fibres = {}
    for x in range(M.size):
        fibres.setdefault(counit.map[x], []).append(x)
    inside = all(cong.related(f[0], y) for f in fibres.values() for y in f)
    rep.details.update(surjective=onto, fibres_in_congruence=inside)
    if onto and inside:
        rep.verdict = "bounded-verified"
    return rep


def present_as_quotient_of_free(pg: PartialGroup, max_word_len: int = 8, max_elements: int = 512,
                                max_words: int = 200_000, kernel: str | None = None) -> PresentationReport:
    """Free object over ``(carrier, domain, inversion)`` and its quotient by the relation subgroup.

    ``verified``: the free object saturated within the bounds and the quotient
    is isomorphic to ``pg``.  ``bounded-verified``: it was truncated, but the
    counit is onto ``pg`` with fibres inside the congruence generated by the
    relations.  Otherwise ``inconclusive``.
    """
    _require_explicit(pg)
    return _present(pg, SetSObject.of(pg), max_word_len, max_elements, max_words, kernel)


def add_relations(pg: PartialGroup, S: Iterable[Sequence[int]], max_word_len: int = 8,
                  max_elements: int = 512, max_words: int = 200_000,
                  kernel: str | None = None) -> PresentationReport:
    """Presentation with the extra words ``S`` forced into the domain.

    When the free object is complete, ``details["embedding"]`` records whether
    ``pg -> M+/N+`` is injective, a morphism, and whether the images of ``S``
    are domain words of the quotient.
    """
    _require_explicit(pg)
    S = [tuple(w) for w in S]
    longest = max((len(w) for w in S), default=0)
    if longest > max_word_len:
        raise SubgroupError("extra relation longer than max_word_len")
    X = SetSObject.of(pg, extra=S)
    fr = free_sets(X, max_word_len, max_elements, max_words)
    M = fr.group
    rel = _relation_images(pg, fr)
    rep = PresentationReport("inconclusive", fr, rel)
    rep.details = {"free_size": M.size, "free_words": len(M.domain.table), "status": fr.status,
                   "relation_images": len(rel)}
    if not fr.complete:
        return rep
    n = generated_partial_subgroup(M, rel)
    q, proj = quotient(M, n, kernel)
    rep.normal, rep.quotient = n, q
    emb = tuple(proj.map[fr.embedding[name]] for name in pg.names)
    h = min(pg.domain.horizon, q.domain.horizon)
    injective = len(set(emb)) == pg.size
    f = Morphism(pg, q, emb)
    is_morph = check_morphism(f, h).ok
    contains = all(q.in_domain(f.star(w)) for w in S if len(w) <= q.domain.horizon)
    rep.details["embedding"] = {"injective": injective, "morphism": is_morph, "contains_S": contains}
    rep.isomorphism = f if injective and is_morph else None
    if injective and is_morph and contains:
        rep.verdict = "verified"
    return rep
