"""Free partial groups over pointed sets and over sets with marked words and an involution.

``G_X`` is the free product of one cyclic factor per orbit of the involution:
infinite cyclic for a pair ``{x, i(x)}`` (with ``i(x) = x^-1``) and order two
for a fixed point.  Elements are reduced words of ``(orbit, exponent, modulus)``
entries, modulus ``0`` meaning infinite order.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import (OracleDomain, PartialGroup, PartialGroupError, StructureError, TableDomain,
                   Word, DEFAULT_BOUND)
from .morphism import Morphism, MorphismError

GxElement = tuple[tuple[int, int, int], ...]

MAX_WITNESSES = 16


class SaturationError(PartialGroupError):
    pass


# -- pointed sets ----------------------------------------------------------

@dataclass(frozen=True)
class PointedSet:
    elements: tuple[str, ...]
    basepoint: int = 0

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not 0 <= self.basepoint < len(self.elements):
            raise StructureError("basepoint out of range")
        if len(set(self.elements)) != len(self.elements):
            raise StructureError("pointed-set names must be distinct")


@dataclass
class FreePartialGroup:
    group: PartialGroup
    embedding: dict[str, int]
    status: str = "complete"
    bounds: dict = field(default_factory=dict)
    elements: list[GxElement] = field(default_factory=list)
    witnesses: list[list[tuple]] = field(default_factory=list)
    source: object = None

    @property
    def complete(self) -> bool:
        return self.status == "complete"


def hat(name: str) -> str:
    return name + "'"


def _pointed_contains(w: Word) -> bool:
    last = 0
    for x in w:
        if x == 0:
            continue
        if last == 0:
            last = x
            continue
        # ids 2k-1 and 2k are x and its hat; alternate within one generator
        if (x + 1) // 2 != (last + 1) // 2 or x == last:
            return False
        last = x
    return True


def _pointed_product(w: Word) -> int:
    diff = 0
    gen = 0
    for x in w:
        if x:
            gen = (x + 1) // 2
            diff += 1 if x % 2 else -1
    if diff == 0:
        return 0
    return 2 * gen - 1 if diff > 0 else 2 * gen


def free_pointed(X: PointedSet, bound: int = DEFAULT_BOUND) -> FreePartialGroup:
    """Free partial group on a pointed set.

    Carrier ``{1} + X* + hat(X*)``; the domain is the words that become an
    alternating string in ``x, hat(x)`` (single ``x``) after deleting units;
    the product is ``x``, ``1`` or ``hat(x)`` by which letter occurs more.
    """
    others = [n for k, n in enumerate(X.elements) if k != X.basepoint]
    names = [X.elements[X.basepoint]]
    for n in others:
        names += [n, hat(n)]
    if len(set(names)) != len(names):
        raise StructureError("hatted names collide with existing names")
    inv = [0]
    for k in range(len(others)):
        inv += [2 * k + 2, 2 * k + 1]
    dom = OracleDomain(_pointed_contains, _pointed_product, bound, "free-pointed", tuple(others))
    pg = PartialGroup(names, 0, inv, dom)
    emb = {X.elements[X.basepoint]: 0}
    emb.update({n: 2 * k + 1 for k, n in enumerate(others)})
    return FreePartialGroup(pg, emb, "complete", {"bound": bound}, source=X)


def universal_map_pointed(Xf: FreePartialGroup, target: PartialGroup,
                          f: Mapping[str, int | str]) -> Morphism:
    """The morphism extending a basepoint-preserving map ``f`` on the generators."""
    X: PointedSet = Xf.source
    base = X.elements[X.basepoint]
    vals = {k: (target.id_of(v) if isinstance(v, str) else v) for k, v in f.items()}
    if vals.get(base, target.unit) != target.unit:
        raise MorphismError("f must send the basepoint to the unit")
    m = [target.unit] * Xf.group.size
    for name, gid in Xf.embedding.items():
        if gid == 0:
            continue
        if name not in vals:
            raise MorphismError(f"f is undefined on {name!r}")
        m[gid] = vals[name]
        m[gid + 1] = target.inv[vals[name]]
    return Morphism(Xf.group, target, tuple(m))


# -- G_X arithmetic ----------------------------------------------------------

def gx_multiply(a: GxElement, b: GxElement) -> GxElement:
    out = list(a)
    for o, e, mod in b:
        if out and out[-1][0] == o:
            e2 = out[-1][1] + e
            if mod:
                e2 %= mod
            if e2 == 0:
                out.pop()
            else:
                out[-1] = (o, e2, mod)
        else:
            out.append((o, e, mod))
    return tuple(out)


def gx_invert(a: GxElement) -> GxElement:
    return tuple((o, (-e) % mod if mod else -e, mod) for o, e, mod in reversed(a))


@dataclass(frozen=True)
class SetSObject:
    """A set with a marked set of words and an involution (names, words as id tuples)."""
    elements: tuple[str, ...]
    words: frozenset[Word]
    inv: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "words", frozenset(tuple(w) for w in self.words))
        object.__setattr__(self, "inv", tuple(self.inv))
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise StructureError("element names must be distinct")
        if len(self.inv) != n or any(not 0 <= self.inv[x] < n or self.inv[self.inv[x]] != x
                                     for x in range(n)):
            raise StructureError("involution is not involutive")
        if any(not 0 <= x < n for w in self.words for x in w):
            raise StructureError("marked word uses an undeclared element")

    @classmethod
    def of(cls, pg: PartialGroup, max_len: int | None = None,
           extra: Sequence[Word] = ()) -> "SetSObject":
        """The forgetful image ``(carrier, domain, inversion)`` of a partial group, truncated."""
        return cls(pg.names, frozenset(pg.words(max_len)) | frozenset(map(tuple, extra)), pg.inv)

    def generator(self, x: int) -> GxElement:
        j = self.inv[x]
        if j == x:
            return ((x, 1, 2),)
        o = min(x, j)
        return ((o, 1 if x == o else -1, 0),)


def gx_embed_word(X: SetSObject, w: Sequence[int]) -> GxElement:
    """The monoid map from words over X to G_X."""
    out: GxElement = ()
    for x in w:
        out = gx_multiply(out, X.generator(x))
    return out


def gx_name(X: SetSObject, g: GxElement, identity: str = "1") -> str:
    if not g:
        return identity
    parts = []
    for o, e, mod in g:
        if e == 1:
            parts.append(X.elements[o])
        elif e == -1 and not mod:
            parts.append(X.elements[X.inv[o]])
        else:
            parts.append(f"{X.elements[o]}^{e}")
    return ".".join(parts)


# -- saturation --------------------------------------------------------------

class _Saturation:
    def __init__(self, X: SetSObject, max_word_len: int, max_elements: int, max_words: int):
        self.X = X
        self.H = max_word_len
        self.max_elements = max_elements
        self.max_words = max_words
        self.elements: list[GxElement] = []
        self.index: dict[GxElement, int] = {}
        self.inv: list[int] = []
        self.witnesses: list[list[tuple]] = []
        self.words: dict[Word, int] = {}
        self.queue: list[deque] = [deque() for _ in range(max_word_len + 1)]
        self.truncated_elements = False
        self.truncated_words = False

    def element(self, g: GxElement, why: tuple) -> int | None:
        k = self.index.get(g)
        if k is not None:
            if why[0] != "inv" and len(self.witnesses[k]) < MAX_WITNESSES and why not in self.witnesses[k]:
                self.witnesses[k].append(why)
            return k
        if len(self.elements) >= self.max_elements:
            self.truncated_elements = True
            return None
        gi = gx_invert(g)
        if gi != g and len(self.elements) + 2 > self.max_elements:
            self.truncated_elements = True
            return None
        k = len(self.elements)
        self.elements.append(g)
        self.index[g] = k
        self.witnesses.append([why])
        self.inv.append(k)
        if gi != g:
            self.elements.append(gi)
            self.index[gi] = k + 1
            self.witnesses.append([("inv", k)])
            self.inv[k] = k + 1
            self.inv.append(k)
            self.add_word((k + 1,))
        self.add_word((k,))
        return k

    def add_word(self, w: Word) -> None:
        if len(w) > self.H or w in self.words:
            return
        if len(self.words) >= self.max_words:
            self.truncated_words = True
            return
        self.words[w] = -1
        self.queue[len(w)].append(w)

    def value(self, w: Word) -> GxElement:
        out: GxElement = ()
        for x in w:
            out = gx_multiply(out, self.elements[x])
        return out

    def process(self, w: Word) -> None:
        k = len(w)
        p = self.element(self.value(w), ("prod", w) if k >= 2 else ("word", w))
        if p is not None:
            self.words[w] = p
        for i in range(1, k):
            self.add_word(w[:i])
            self.add_word(w[i:])
        for i in range(k + 1):
            acc: GxElement = ()
            for j in range(i, k + 1):
                if j > i:
                    acc = gx_multiply(acc, self.elements[w[j - 1]])
                if j - i == 1:
                    continue
                if k - (j - i) + 1 > self.H:
                    continue
                v = self.element(acc, ("prod", w[i:j]) if j - i >= 2 else ("unit",))
                if v is not None:
                    self.add_word(w[:i] + (v,) + w[j:])
        if 2 * k <= self.H:
            self.add_word(tuple(self.inv[x] for x in reversed(w)) + w)

    def run(self) -> None:
        X = self.X
        self.element((), ("unit",))
        self.gen_ids = []
        for x in range(len(X.elements)):
            gid = self.element(X.generator(x), ("gen", x))
            if gid is None:
                raise SaturationError("max_elements is below the number of generators")
            self.gen_ids.append(gid)
        for s in sorted(X.words, key=lambda w: (len(w), w)):
            self.add_word(tuple(self.gen_ids[x] for x in s))
        while True:
            for q in self.queue:
                if q:
                    self.process(q.popleft())
                    break
            else:
                break
        # products of words whose element was refused stay unknown
        self.words = {w: p for w, p in self.words.items() if p >= 0}


def free_sets(X: SetSObject, max_word_len: int = 8, max_elements: int = 512,
              max_words: int = 200_000) -> FreePartialGroup:
    """Smallest impartial subgroup of ``G_X`` containing X with the marked words in its domain.

    Computed bottom-up as a fixpoint of the axioms, with words kept up to
    ``max_word_len`` (the horizon of the resulting table).  The status is
    ``complete`` when the fixpoint was reached without refusing an element or
    a word to the ``max_elements`` / ``max_words`` caps, else ``truncated``.
    """
    longest = max((len(w) for w in X.words), default=0)
    if max_word_len < max(longest, 1) or max_elements < len(X.elements) + 1:
        raise SaturationError("bounds are below the size of the input")
    sat = _Saturation(X, max_word_len, max_elements, max_words)
    sat.run()
    ids = range(len(sat.elements))
    names = [gx_name(X, g) for g in sat.elements]
    if len(set(names)) != len(names):
        names = [gx_name(X, g, "id") for g in sat.elements]
    if len(set(names)) != len(names):
        names = [f"{n}#{k}" for k, n in zip(ids, names)]
    table = {w: p for w, p in sat.words.items() if len(w) >= 2}
    pg = PartialGroup(names, 0, sat.inv, TableDomain(table, max_word_len))
    truncated = sat.truncated_elements or sat.truncated_words
    emb = {X.elements[x]: sat.gen_ids[x] for x in range(len(X.elements))}
    bounds = {"max_word_len": max_word_len, "max_elements": max_elements, "max_words": max_words}
    return FreePartialGroup(pg, emb, "truncated" if truncated else "complete", bounds,
                            list(sat.elements), sat.witnesses, X)


def universal_map_sets(Xf: FreePartialGroup, target: PartialGroup, f: Mapping[str, int | str],
                       allow_truncated: bool = False) -> Morphism:
    """The morphism out of a free object extending a map on X.

    Values are propagated along the recorded derivations of each carrier
    element; every recorded derivation is cross-checked.
    """
    if not Xf.complete and not allow_truncated:
        raise SaturationError("free object is truncated; the universal map is not determined")
    X: SetSObject = Xf.source
    fx = [None] * len(X.elements)
    for k, v in f.items():
        fx[X.elements.index(k)] = target.id_of(v) if isinstance(v, str) else v
    if any(v is None for v in fx):
        raise MorphismError("f must be defined on every element of X")
    for x in range(len(X.elements)):
        if target.inv[fx[x]] != fx[X.inv[x]]:
            raise MorphismError("f does not commute with the involutions")
    limit = target.horizon
    for s in X.words:
        img = tuple(fx[x] for x in s)
        if (limit is None or len(img) <= limit) and not target.in_domain(img):
            raise MorphismError(f"marked word {s} is not sent into the target domain")

    pg = Xf.group
    val: list[int | None] = [None] * pg.size

    def evaluate(why) -> int | None:
        kind = why[0]
        if kind == "unit":
            return target.unit
        if kind == "gen":
            return fx[why[1]]
        if kind == "inv":
            v = val[why[1]]
            return None if v is None else target.inv[v]
        w = why[1]
        if any(val[x] is None for x in w):
            return None
        img = tuple(val[x] for x in w)
        if limit is not None and len(img) > limit:
            return None
        if not target.in_domain(img):
            raise SaturationError(f"derivation {pg.show(w)} leaves the target domain")
        return target.product(img)

    changed = True
    while changed:
        changed = False
        for k in range(pg.size):
            if val[k] is not None:
                continue
            for why in sorted(Xf.witnesses[k], key=lambda y: len(y[1]) if y[0] in ("prod", "word") else 0):
                v = evaluate(why)
                if v is not None:
                    val[k] = v
                    changed = True
                    break
    if any(v is None for v in val):
        raise SaturationError("some carrier elements have no evaluable derivation")
    for k in range(pg.size):
        for why in Xf.witnesses[k]:
            v = evaluate(why)
            if v is not None and v != val[k]:
                raise SaturationError(f"derivations of {pg.names[k]} disagree: internal inconsistency")
    return Morphism(pg, target, tuple(val))
