"""Partial groups: data model, domain representations and the axiom validator.

A partial group is a carrier of interned element ids, a unit, an involutive
inversion and a domain of multipliable words with a product map.

Domains come in two flavours:

``TableDomain``
    A finite product table over words of length >= 2, read as the domain
    truncated at a *horizon* ``h`` (every word of length <= h that lies in the
    domain is a key).  The empty word and all singletons are implicit.  Any
    non-trivial partial group has an infinite domain (inverting and
    concatenating doubles lengths), so a horizon is the only faithful finite
    encoding.

``OracleDomain``
    A decidable membership predicate plus a product function, with an
    enumeration bound used by sampled validation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Word = tuple[int, ...]

DEFAULT_BOUND = 6


class PartialGroupError(Exception):
    """Base class for errors raised by this package."""


class DomainError(PartialGroupError):
    """A word is not in the domain of a partial group."""

    def __init__(self, word: Sequence[int], message: str = "word not in domain"):
        self.word = tuple(word)
        super().__init__(f"{message}: {self.word}")


class HorizonError(PartialGroupError):
    """Membership was asked for a word longer than a table's horizon."""


class UnsupportedModeError(PartialGroupError):
    pass


class StructureError(PartialGroupError):
    """Ill-formed carrier, inversion or domain data."""


@dataclass(frozen=True)
class TableDomain:
    table: Mapping[Word, int]
    horizon: int

    def __post_init__(self):
        for w in self.table:
            if len(w) < 2:
                raise StructureError(f"table keys must have length >= 2, got {w}")
            if len(w) > self.horizon:
                raise StructureError(f"table key {w} exceeds horizon {self.horizon}")

    def max_key_len(self) -> int:
        return max((len(w) for w in self.table), default=1)


@dataclass(frozen=True)
class OracleDomain:
    contains: Callable[[Word], bool]
    product: Callable[[Word], int]
    bound: int = DEFAULT_BOUND
    kind: str = "oracle"
    params: tuple = ()


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        return f"[{self.axiom}] {self.detail} witness={self.witness}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    checked_len: int | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, axiom: str, witness, detail: str = ""):
        self.violations.append(Violation(axiom, tuple(witness), detail))

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}


class PartialGroup:
    """Immutable finite partial group ``(carrier, domain, product, inversion)``."""

    __slots__ = ("names", "unit", "inv", "domain", "_index", "_words_cache")

    def __init__(self, names: Sequence[str], unit: int, inv: Sequence[int],
                 domain: TableDomain | OracleDomain):
        self.names = tuple(names)
        self.unit = unit
        self.inv = tuple(inv)
        self.domain = domain
        n = len(self.names)
        if n == 0:
            raise StructureError("carrier must be non-empty")
        if len(set(self.names)) != n:
            raise StructureError("element names must be distinct")
        if len(self.inv) != n or not 0 <= unit < n:
            raise StructureError("inversion table or unit out of range")
        self._index = {name: i for i, name in enumerate(self.names)}
        self._words_cache: dict[int, list[Word]] = {}

    # -- basic accessors ------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.names)

    def __len__(self):
        return len(self.names)

    @property
    def is_explicit(self) -> bool:
        return isinstance(self.domain, TableDomain)

    @property
    def horizon(self) -> int | None:
        """Longest word length whose membership is known (None: unbounded)."""
        return self.domain.horizon if self.is_explicit else None

    @property
    def bound(self) -> int:
        """Default enumeration length: the horizon, or the oracle's bound."""
        return self.domain.horizon if self.is_explicit else self.domain.bound

    def id_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructureError(f"unknown element {name!r}") from None

    def word(self, *names: str) -> Word:
        return tuple(self.id_of(n) for n in names)

    def show(self, w: Iterable[int]) -> str:
        return "(" + ",".join(self.names[x] for x in w) + ")"

    def __repr__(self):
        kind = f"h={self.horizon}" if self.is_explicit else self.domain.kind
        return f"PartialGroup(size={self.size}, {kind})"

    # -- domain ---------------------------------------------------------
    def in_domain(self, w: Sequence[int]) -> bool:
        w = tuple(w)
        n = len(self.names)
        if any(not 0 <= x < n for x in w):
            return False
        if len(w) <= 1:
            return True
        d = self.domain
        if isinstance(d, TableDomain):
            if len(w) > d.horizon:
                raise HorizonError(f"word of length {len(w)} beyond horizon {d.horizon}")
            return w in d.table
        return bool(d.contains(w))

    def product(self, w: Sequence[int]) -> int:
        w = tuple(w)
        if len(w) == 0:
            return self.unit
        if len(w) == 1:
            if not 0 <= w[0] < len(self.names):
                raise DomainError(w, "invalid element id")
            return w[0]
        d = self.domain
        if isinstance(d, TableDomain):
            try:
                return d.table[w]
            except KeyError:
                raise DomainError(w) from None
        if not d.contains(w):
            raise DomainError(w)
        return d.product(w)

    def words(self, max_len: int | None = None) -> list[Word]:
        """Domain words of length <= max_len, ordered by length then lexicographically."""
        if max_len is None:
            max_len = self.bound
        if self.is_explicit:
            max_len = min(max_len, self.domain.horizon)
        cached = self._words_cache.get(max_len)
        if cached is not None:
            return cached
        out: list[Word] = [()]
        if max_len >= 1:
            out.extend((x,) for x in range(self.size))
        if self.is_explicit:
            out.extend(sorted((w for w in self.domain.table if len(w) <= max_len),
                              key=lambda w: (len(w), w)))
        else:
            frontier = [(x,) for x in range(self.size)]
            for _ in range(2, max_len + 1):
                # domains are prefix-closed, so extending members is enough
                nxt = [w + (x,) for w in frontier for x in range(self.size)
                       if self.domain.contains(w + (x,))]
                out.extend(nxt)
                frontier = nxt
        self._words_cache[max_len] = out
        return out

    def restricted_words(self, subset: Iterable[int], max_len: int | None = None) -> list[Word]:
        """Domain words whose entries all lie in ``subset`` (D intersected with W(subset))."""
        sub = frozenset(subset)
        if max_len is None:
            max_len = self.bound
        if self.is_explicit:
            return [w for w in self.words(max_len) if all(x in sub for x in w)]
        order = sorted(sub)
        out: list[Word] = [()]
        if max_len >= 1:
            out.extend((x,) for x in order)
        frontier = [(x,) for x in order]
        for _ in range(2, max_len + 1):
            nxt = [w + (x,) for w in frontier for x in order if self.domain.contains(w + (x,))]
            out.extend(nxt)
            frontier = nxt
        return out

    def table(self, max_len: int | None = None) -> dict[Word, int]:
        """Materialized product table on domain words of length >= 2."""
        return {w: self.product(w) for w in self.words(max_len) if len(w) >= 2}

    def materialize(self, horizon: int | None = None) -> "PartialGroup":
        """Table-domain copy of this partial group truncated at ``horizon``."""
        h = self.bound if horizon is None else horizon
        if self.is_explicit:
            h = min(h, self.domain.horizon)
        return PartialGroup(self.names, self.unit, self.inv, TableDomain(self.table(h), h))

    def same_as(self, other: "PartialGroup") -> bool:
        if self is other:
            return True
        if (self.names, self.unit, self.inv) != (other.names, other.unit, other.inv):
            return False
        if self.is_explicit and other.is_explicit:
            return (self.domain.horizon == other.domain.horizon
                    and dict(self.domain.table) == dict(other.domain.table))
        return self.domain == other.domain


def invert_word(pg: PartialGroup, w: Sequence[int]) -> Word:
    inv = pg.inv
    return tuple(inv[x] for x in reversed(w))


def domain_words(pg: PartialGroup, max_len: int) -> set[Word]:
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    return set(pg.words(max_len))


def product(pg: PartialGroup, w: Sequence[int]) -> int:
    return pg.product(w)


def make_table_group(names: Sequence[str], unit: int, inv: Sequence[int],
                     table: Mapping[Word, int], horizon: int | None = None) -> PartialGroup:
    if horizon is None:
        horizon = max((len(w) for w in table), default=1)
    return PartialGroup(names, unit, inv, TableDomain(dict(table), horizon))


def validate_axioms(pg: PartialGroup, mode: str = "exhaustive",
                    max_len: int | None = None) -> ValidationReport:
    """Check the four partial-group axioms.

    ``exhaustive`` needs a table domain and checks every instance whose words
    fit inside the horizon; ``sampled`` enumerates domain words up to
    ``max_len`` (default: the oracle bound) and checks instances that fit.
    """
    if mode == "exhaustive":
        if not pg.is_explicit:
            raise UnsupportedModeError("exhaustive validation needs a table domain")
        limit = pg.domain.horizon
    elif mode == "sampled":
        limit = max_len if max_len is not None else pg.bound
        if pg.is_explicit:
            limit = min(limit, pg.domain.horizon)
    else:
        raise UnsupportedModeError(f"unknown mode {mode!r}")

    report = ValidationReport(checked_len=limit)
    n, inv, unit = pg.size, pg.inv, pg.unit
    for x in range(n):
        if not 0 <= inv[x] < n or inv[inv[x]] != x:
            report.add("inv", (x,), "inversion is not involutive")
    if inv[unit] != unit:
        report.add("inv", (unit,), "unit is not self-inverse")
    if not report.ok:
        return report

    words = pg.words(limit)
    member = set(words)

    def mem(w: Word) -> bool:
        return w in member if len(w) <= limit else pg.in_domain(w)

    for x in range(n):
        if pg.product((x,)) != x:
            report.add("2", (x,), "product of a singleton differs from the element")
    if pg.product(()) != unit:
        report.add("2", (), "empty product is not the unit")

    for w in words:
        p = pg.product(w)
        if not 0 <= p < n:
            report.add("product", w, f"product {p} outside carrier")
            continue
        k = len(w)
        for i in range(1, k):
            if w[:i] not in member or w[i:] not in member:
                report.add("1", w, f"split at {i} leaves the domain")
                break
        for i in range(k + 1):
            for j in range(i, k + 1):
                if j - i == 1:
                    continue
                v = w[i:j]
                if v not in member:
                    continue
                sub = w[:i] + (pg.product(v),) + w[j:]
                if len(sub) > limit:
                    continue
                if not mem(sub):
                    report.add("3", w, f"substituting segment {i}:{j} leaves the domain")
                elif pg.product(sub) != p:
                    report.add("3", w, f"substituting segment {i}:{j} changes the product")
        if 2 * k <= limit:
            iw = invert_word(pg, w) + w
            if not mem(iw):
                report.add("4", w, "inverse word concatenation leaves the domain")
            elif pg.product(iw) != unit:
                report.add("4", w, "inverse word concatenation does not multiply to the unit")
    return report


def group_from_table(names: Sequence[str], mult: Sequence[Sequence[int]],
                     horizon: int = 4) -> PartialGroup:
    """Full-domain partial group of a finite group given by a Cayley table.

    The domain is every word; it is stored up to ``horizon``.
    """
    n = len(names)
    unit = next(e for e in range(n) if all(mult[e][x] == x and mult[x][e] == x for x in range(n)))
    inv = [next(y for y in range(n) if mult[x][y] == unit) for x in range(n)]
    table: dict[Word, int] = {}
    prev = {(x,): x for x in range(n)}
    for _ in range(2, horizon + 1):
        cur = {}
        for w, p in prev.items():
            for x in range(n):
                cur[w + (x,)] = mult[p][x]
        table.update(cur)
        prev = cur
    return PartialGroup(names, unit, inv, TableDomain(table, horizon))


def iter_words(alphabet: Sequence[int], max_len: int) -> Iterator[Word]:
    for k in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=k)
