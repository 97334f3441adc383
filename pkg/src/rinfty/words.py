"""Lyndon words, standard bracketings and bracket-word trees.

A bracket word is either a leaf (any hashable non-tuple symbol) or a pair
``(left, right)`` of bracket words.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Hashable, Iterator


def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def witt_number(k: int, i: int) -> int:
    """Dimension of the degree-i layer of the free Lie algebra on k generators."""
    return sum(mobius(d) * k ** (i // d) for d in divisors(i)) // i


def lyndon_words(k: int, i: int) -> list:
    """All Lyndon words of length exactly i over 0..k-1, lexicographically (Duval)."""
    if i < 1 or k < 1:
        return []
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == i:
            out.append(tuple(w))
        while len(w) < i:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def is_lyndon(w: tuple) -> bool:
    """Strictly smaller than each of its proper suffixes."""
    return len(w) > 0 and all(w < w[j:] for j in range(1, len(w)))


@lru_cache(maxsize=None)
def standard_factorization(w: tuple) -> tuple:
    """Split a Lyndon word w = uv with v its longest proper Lyndon suffix."""
    for j in range(1, len(w)):
        if is_lyndon(w[j:]):
            return w[:j], w[j:]
    raise ValueError("word of length 1 has no factorization")


def standard_bracketing(w: tuple):
    if len(w) == 1:
        return w[0]
    u, v = standard_factorization(w)
    return (standard_bracketing(u), standard_bracketing(v))


def is_leaf(b) -> bool:
    return not isinstance(b, tuple)


def bw_length(b) -> int:
    return 1 if is_leaf(b) else bw_length(b[0]) + bw_length(b[1])


def bw_leaves(b) -> list:
    return [b] if is_leaf(b) else bw_leaves(b[0]) + bw_leaves(b[1])


def bw_weight(b) -> Counter:
    return Counter(bw_leaves(b))


def bw_map(b, f):
    """Replace every leaf x by f(x)."""
    return f(b) if is_leaf(b) else (bw_map(b[0], f), bw_map(b[1], f))


def bw_to_str(b, name=str) -> str:
    if is_leaf(b):
        return name(b)
    return "[%s,%s]" % (bw_to_str(b[0], name), bw_to_str(b[1], name))


def bw_parse(text: str, symbol=lambda s: s):
    """Inverse of bw_to_str for symbols without brackets or commas."""
    pos = 0
    s = text.replace(" ", "")

    def peek():
        return s[pos] if pos < len(s) else ""

    def parse():
        nonlocal pos
        if peek() == "[":
            pos += 1
            left = parse()
            if peek() != ",":
                raise ValueError("expected ',' at %d in %r" % (pos, text))
            pos += 1
            right = parse()
            if peek() != "]":
                raise ValueError("expected ']' at %d in %r" % (pos, text))
            pos += 1
            return (left, right)
        start = pos
        while pos < len(s) and s[pos] not in "[],":
            pos += 1
        if start == pos:
            raise ValueError("empty symbol at %d in %r" % (pos, text))
        return symbol(s[start:pos])

    out = parse()
    if pos != len(s):
        raise ValueError("trailing text in %r" % text)
    return out


def bracket_words_of_weight(weight: dict) -> Iterator:
    """Every bracket word with the given leaf multiplicities.

    Order: the right factor is enumerated from the smallest sub-weight up, so
    left-normed words (deepest on the left) come first.
    """
    items = tuple(sorted((k, v) for k, v in weight.items() if v > 0))
    yield from _words(items)


def _sub_weights(items: tuple) -> list:
    out = [()]
    for sym, cnt in items:
        out = [prev + ((sym, j),) for prev in out for j in range(cnt + 1)]
    return [tuple((s, j) for s, j in w if j > 0) for w in out]


def _words(items: tuple) -> Iterator:
    total = sum(c for _, c in items)
    if total == 1:
        yield items[0][0]
        return
    full = dict(items)
    subs = [s for s in _sub_weights(items) if 0 < sum(c for _, c in s) < total]
    subs.sort(key=lambda s: (sum(c for _, c in s), s))
    for right in subs:
        rd = dict(right)
        left = tuple((k, full[k] - rd.get(k, 0)) for k, _ in items if full[k] - rd.get(k, 0) > 0)
        for lw in _words(left):
            for rw in _words(right):
                yield (lw, rw)


def symbol_key(x: Hashable):
    return (type(x).__name__, x)
