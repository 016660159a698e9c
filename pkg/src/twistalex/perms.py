"""Small helpers for permutations of {0, ..., N-1} stored as tuples.

``p[i]`` is the image of ``i``.  Products are read left to right:
``compose(g, h)`` applies ``g`` first and then ``h``, which makes
``g -> permutation matrix with P[i][g[i]] = 1`` a homomorphism for the
right action on row vectors.
"""
from __future__ import annotations

import math
import re

from .errors import ParseError


def identity(n):
    return tuple(range(n))


def compose(g, h):
    """Left-to-right product: first ``g``, then ``h``."""
    return tuple(h[x] for x in g)


def inverse(g):
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def power(g, k):
    if k < 0:
        g, k = inverse(g), -k
    out = identity(len(g))
    base = g
    while k:
        if k & 1:
            out = compose(out, base)
        base = compose(base, base)
        k >>= 1
    return out


def cycles(g):
    seen = set()
    out = []
    for i in range(len(g)):
        if i in seen:
            continue
        c = [i]
        seen.add(i)
        j = g[i]
        while j != i:
            c.append(j)
            seen.add(j)
            j = g[j]
        out.append(tuple(c))
    return out


def cycle_type(g):
    return tuple(sorted((len(c) for c in cycles(g)), reverse=True))


def order(g):
    out = 1
    for c in cycles(g):
        out = out * len(c) // math.gcd(out, len(c))
    return out


def to_cycle_text(g):
    """Cycle notation with 1-based symbols, fixed points omitted; ``()`` for identity."""
    parts = ["(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles(g) if len(c) > 1]
    return "".join(parts) or "()"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, n):
    """Parse ``"(1 2 3)(4 5)"`` (1-based, commas allowed) into a permutation of size n."""
    text = text.strip()
    img = list(range(n))
    pos = 0
    used = set()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _CYCLE.match(text, pos)
        if not m:
            raise ParseError("malformed cycle notation", text, pos, "'(' starting a cycle")
        body = m.group(1).replace(",", " ").split()
        try:
            syms = [int(s) - 1 for s in body]
        except ValueError:
            raise ParseError("cycle entries must be integers", text, pos) from None
        for s in syms:
            if not 0 <= s < n:
                raise ParseError(f"symbol {s + 1} outside 1..{n}", text, pos)
            if s in used:
                raise ParseError(f"symbol {s + 1} repeated", text, pos)
            used.add(s)
        for a, b in zip(syms, syms[1:] + syms[:1]):
            img[a] = b
        pos = m.end()
    return tuple(img)


def conjugacy_representative(ctype):
    """A fixed permutation with the given cycle type (cycles on consecutive symbols)."""
    img = []
    start = 0
    for length in ctype:
        block = list(range(start, start + length))
        img.extend(block[1:] + block[:1])
        start += length
    return tuple(img)
