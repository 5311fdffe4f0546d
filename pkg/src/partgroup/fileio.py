"""Line-oriented text formats for partial groups, morphisms, diagrams, Set^s objects and relations.

Every file starts with a ``<kind> v1`` header; ``#`` starts a comment.
Paths inside morphism and diagram files are relative to the file itself.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from .core import PartialGroup, PartialGroupError, TableDomain, Word
from .diagram import Diagram
from .free import PointedSet, SetSObject, free_pointed
from .morphism import Morphism


class ParseError(PartialGroupError):
    def __init__(self, message: str, line: int = 0, token: str = ""):
        self.line = line
        self.token = token
        where = f"line {line}" if line else "file"
        super().__init__(f"{where}: {message}" + (f" (token {token!r})" if token else ""))


@dataclass
class RelationSet:
    """Words over a carrier; ``elements`` lines add single elements."""
    words: list[Word] = field(default_factory=list)
    elements: list[int] = field(default_factory=list)

    def subset(self) -> set[int]:
        return set(self.elements) | {x for w in self.words for x in w}


def _lines(text: str):
    for k, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield k, line


def _split(lineno: int, line: str) -> tuple[str, str]:
    key, sep, rest = line.partition(":")
    if not sep:
        raise ParseError("expected 'section: value'", lineno, line.split()[0])
    return key.strip(), rest.strip()


def _header(text: str, kind: str) -> list[tuple[int, str]]:
    lines = list(_lines(text))
    if not lines or lines[0][1] != f"{kind} v1":
        tok = lines[0][1] if lines else ""
        raise ParseError(f"expected header '{kind} v1'", lines[0][0] if lines else 0, tok)
    return lines[1:]


def _pairs(lineno: int, value: str) -> list[tuple[str, str]]:
    out = []
    for tok in value.split():
        a, sep, b = tok.partition(":")
        if not sep or not a or not b:
            raise ParseError("expected a pair 'a:b'", lineno, tok)
        out.append((a, b))
    return out


def _lookup(index: dict[str, int], name: str, lineno: int) -> int:
    try:
        return index[name]
    except KeyError:
        raise ParseError("undeclared name", lineno, name) from None


def _involution(names: list[str], index: dict[str, int], pairs, what: str) -> list[int]:
    inv: list[int | None] = [None] * len(names)
    for lineno, a, b in pairs:
        x, y = _lookup(index, a, lineno), _lookup(index, b, lineno)
        for p, q in ((x, y), (y, x)):
            if inv[p] is not None and inv[p] != q:
                raise ParseError("non-involutive inv", lineno, names[p])
            inv[p] = q
    missing = [names[x] for x in range(len(names)) if inv[x] is None]
    if missing:
        raise ParseError(f"{what} does not cover every element", 0, missing[0])
    return inv


# -- partial groups ----------------------------------------------------------

def parse_pgroup(text: str) -> PartialGroup:
    names: list[str] | None = None
    unit_tok = None
    inv_pairs = []
    prods = []
    horizon = None
    oracle = None
    bound = None
    for lineno, line in _header(text, "pgroup"):
        key, value = _split(lineno, line)
        if key == "elements":
            if names is not None:
                raise ParseError("elements declared twice", lineno, key)
            names = value.split()
            if len(set(names)) != len(names):
                raise ParseError("duplicate element name", lineno, value)
        elif key == "unit":
            unit_tok = (lineno, value)
        elif key == "inv":
            inv_pairs += [(lineno, a, b) for a, b in _pairs(lineno, value)]
        elif key == "prod":
            lhs, eq, rhs = value.partition("=")
            if not eq or len(rhs.split()) != 1:
                raise ParseError("expected 'prod: w1 w2 ... = p'", lineno, value)
            prods.append((lineno, lhs.split(), rhs.strip()))
        elif key == "horizon":
            horizon = _int(lineno, value)
        elif key == "bound":
            bound = _int(lineno, value)
        elif key == "oracle":
            oracle = (lineno, value.split())
        else:
            raise ParseError("unknown section", lineno, key)
    if oracle is not None:
        return _parse_oracle(oracle, names, bound)
    if names is None:
        raise ParseError("missing section 'elements'", 0, "elements")
    if unit_tok is None:
        raise ParseError("missing section 'unit'", 0, "unit")
    index = {n: i for i, n in enumerate(names)}
    unit = _lookup(index, unit_tok[1], unit_tok[0])
    inv = _involution(names, index, inv_pairs, "inv")
    table: dict[Word, int] = {}
    for lineno, lhs, rhs in prods:
        if len(lhs) < 2:
            raise ParseError("prod words have length >= 2", lineno, " ".join(lhs))
        w = tuple(_lookup(index, t, lineno) for t in lhs)
        p = _lookup(index, rhs, lineno)
        if table.setdefault(w, p) != p:
            raise ParseError("duplicate prod key with conflicting value", lineno, " ".join(lhs))
    longest = max((len(w) for w in table), default=1)
    if horizon is None:
        horizon = longest
    elif horizon < longest:
        raise ParseError("prod word longer than the horizon", 0, str(longest))
    return PartialGroup(names, unit, inv, TableDomain(table, horizon))


def _int(lineno: int, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError("expected an integer", lineno, value) from None


def _parse_oracle(oracle, names, bound) -> PartialGroup:
    lineno, toks = oracle
    if not toks or toks[0] != "free-pointed" or len(toks) < 2:
        raise ParseError("expected 'oracle: free-pointed <basepoint> <generators...>'", lineno,
                         toks[0] if toks else "")
    fr = free_pointed(PointedSet(tuple(toks[1:])), bound if bound is not None else 6)
    if names is not None and list(names) != list(fr.group.names):
        raise ParseError("elements do not match the oracle carrier", lineno, " ".join(names))
    return fr.group


def serialize_pgroup(pg: PartialGroup) -> str:
    out = ["pgroup v1", "elements: " + " ".join(pg.names), f"unit: {pg.names[pg.unit]}",
           "inv: " + " ".join(f"{pg.names[x]}:{pg.names[pg.inv[x]]}" for x in range(pg.size))]
    d = pg.domain
    if not pg.is_explicit:
        if d.kind != "free-pointed":
            raise PartialGroupError(f"cannot serialize oracle domain {d.kind!r}")
        out.append("oracle: free-pointed " + " ".join((pg.names[pg.unit],) + tuple(d.params)))
        out.append(f"bound: {d.bound}")
        return "\n".join(out) + "\n"
    out.append(f"horizon: {d.horizon}")
    for w in sorted(d.table, key=lambda w: (len(w), w)):
        out.append(f"prod: {' '.join(pg.names[x] for x in w)} = {pg.names[d.table[w]]}")
    return "\n".join(out) + "\n"


# -- morphisms ----------------------------------------------------------------

def _resolve(base: Path, rel: str) -> Path:
    p = Path(rel)
    return p if p.is_absolute() else base / p


def parse_morphism(text: str, base: Path | str = ".") -> Morphism:
    base = Path(base)
    src = tgt = None
    pairs = []
    for lineno, line in _header(text, "morphism"):
        key, value = _split(lineno, line)
        if key == "source":
            src = (lineno, value)
        elif key == "target":
            tgt = (lineno, value)
        elif key == "map":
            pairs += [(lineno, a, b) for a, b in _pairs(lineno, value)]
        else:
            raise ParseError("unknown section", lineno, key)
    if src is None or tgt is None:
        raise ParseError("missing section 'source' or 'target'", 0, "source" if src is None else "target")
    s = load_pgroup(_resolve(base, src[1]))
    t = load_pgroup(_resolve(base, tgt[1]))
    m = [None] * s.size
    sidx = {n: i for i, n in enumerate(s.names)}
    tidx = {n: i for i, n in enumerate(t.names)}
    for lineno, a, b in pairs:
        x, y = _lookup(sidx, a, lineno), _lookup(tidx, b, lineno)
        if m[x] is not None and m[x] != y:
            raise ParseError("element mapped twice", lineno, a)
        m[x] = y
    if m[s.unit] is None:
        m[s.unit] = t.unit
    missing = [s.names[x] for x in range(s.size) if m[x] is None]
    if missing:
        raise ParseError("map is not total", 0, missing[0])
    return Morphism(s, t, tuple(m))


def serialize_morphism(m: Morphism, source_path: str, target_path: str) -> str:
    s, t = m.source, m.target
    pairs = " ".join(f"{s.names[x]}:{t.names[m.map[x]]}" for x in range(s.size))
    return f"morphism v1\nsource: {source_path}\ntarget: {target_path}\nmap: {pairs}\n"


# -- diagrams -------------------------------------------------------------------

def parse_diagram(text: str, base: Path | str = ".") -> Diagram:
    base = Path(base)
    objects = []
    arrows = []
    for lineno, line in _header(text, "diagram"):
        key, value = _split(lineno, line)
        if key == "object":
            objects.append(load_pgroup(_resolve(base, value)))
        elif key == "arrow":
            toks = value.split()
            if len(toks) != 3:
                raise ParseError("expected 'arrow: i j file.morph'", lineno, value)
            i, j = _int(lineno, toks[0]), _int(lineno, toks[1])
            arrows.append((lineno, i, j, load_morphism(_resolve(base, toks[2]))))
        else:
            raise ParseError("unknown section", lineno, key)
    out = []
    for lineno, i, j, m in arrows:
        if not (0 <= i < len(objects) and 0 <= j < len(objects)):
            raise ParseError("arrow index out of range", lineno, f"{i} {j}")
        out.append((i, j, m))
    return Diagram(objects, out)


# -- Set^s objects and relations ------------------------------------------------

def parse_sets(text: str) -> SetSObject:
    names = None
    inv_pairs = []
    words = []
    for lineno, line in _header(text, "sets"):
        key, value = _split(lineno, line)
        if key == "elements":
            names = value.split()
            if len(set(names)) != len(names):
                raise ParseError("duplicate element name", lineno, value)
        elif key == "inv":
            inv_pairs += [(lineno, a, b) for a, b in _pairs(lineno, value)]
        elif key == "word":
            words.append((lineno, value.split()))
        else:
            raise ParseError("unknown section", lineno, key)
    if names is None:
        raise ParseError("missing section 'elements'", 0, "elements")
    index = {n: i for i, n in enumerate(names)}
    inv = _involution(names, index, inv_pairs, "inv")
    S = frozenset(tuple(_lookup(index, t, lineno) for t in toks) for lineno, toks in words)
    return SetSObject(tuple(names), S, tuple(inv))


def serialize_sets(X: SetSObject) -> str:
    n = X.elements
    out = ["sets v1", "elements: " + " ".join(n),
           "inv: " + " ".join(f"{n[x]}:{n[X.inv[x]]}" for x in range(len(n)))]
    for w in sorted(X.words, key=lambda w: (len(w), w)):
        out.append("word: " + " ".join(n[x] for x in w) if w else "word:")
    return "\n".join(out) + "\n"


def parse_relations(text: str, pg: PartialGroup) -> RelationSet:
    rel = RelationSet()
    index = {n: i for i, n in enumerate(pg.names)}
    for lineno, line in _header(text, "relations"):
        key, value = _split(lineno, line)
        if key == "word":
            rel.words.append(tuple(_lookup(index, t, lineno) for t in value.split()))
        elif key == "elements":
            rel.elements += [_lookup(index, t, lineno) for t in value.split()]
        else:
            raise ParseError("unknown section", lineno, key)
    return rel


def serialize_relations(rel: RelationSet, pg: PartialGroup) -> str:
    out = ["relations v1"]
    if rel.elements:
        out.append("elements: " + " ".join(pg.names[x] for x in sorted(set(rel.elements))))
    for w in rel.words:
        out.append("word: " + " ".join(pg.names[x] for x in w) if w else "word:")
    return "\n".join(out) + "\n"


# -- files ----------------------------------------------------------------------

def _read(path) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_pgroup(path) -> PartialGroup:
    return parse_pgroup(_read(path))


def load_morphism(path) -> Morphism:
    return parse_morphism(_read(path), Path(path).parent)


def load_diagram(path) -> Diagram:
    return parse_diagram(_read(path), Path(path).parent)


def load_sets(path) -> SetSObject:
    return parse_sets(_read(path))


def load_relations(path, pg: PartialGroup) -> RelationSet:
    return parse_relations(_read(path), pg)


def write_text(path, text: str) -> None:
    d = os.path.dirname(os.fspath(path))
    if d:
        os.makedirs(d, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
