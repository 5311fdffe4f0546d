"""Pure-Python closure kernel (reference semantics for the compiled one)."""
from __future__ import annotations


def find(parent, x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def union(parent, a: int, b: int) -> bool:
    ra, rb = find(parent, a), find(parent, b)
    if ra == rb:
        return False
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb
    return True


def closure_pass(flat, offsets, prods, parent) -> list[tuple[int, int, int, int]]:
    """One bucketing pass over the domain words.

    Words are keyed by their sequence of class representatives taken at the
    start of the pass; the product of every word is merged with the product
    of the first word carrying the same key.  Returns the merges as
    ``(product_a, product_b, word_a, word_b)`` in the order they happened.
    """
    reps = [find(parent, x) for x in flat]
    first: dict[tuple, int] = {}
    merges = []
    for w in range(len(offsets) - 1):
        key = tuple(reps[offsets[w]:offsets[w + 1]])
        j = first.setdefault(key, w)
        if j != w and union(parent, prods[j], prods[w]):
            merges.append((prods[j], prods[w], j, w))
    return merges
