"""Free group words, integral group rings and Fox free differential calculus.

Words are freely reduced tuples of ``(generator, +-1)`` letters.  The Fox
derivative ``d/dx_j`` is the unique derivation of ``Z[F]`` with
``d x_i / d x_j = delta_ij``; on a word it sums the prefixes in front of
each occurrence of ``x_j`` (with a minus sign and the letter included for
``x_j^-1``).

Besides the generic group-ring versions, this module has direct routines
that push the derivative straight through an abelianization (and through a
permutation representation) without building intermediate group-ring
elements.  Those are what the matrix builders use.
"""
from __future__ import annotations

import re

from . import perms as P
from .errors import ParseError
from .laurent import LaurentPoly
from .matrix import PolyMatrix


class Word:
    """Freely reduced word in free generators ``x0, x1, ...``.

    Parameters
    ----------
    letters : iterable of (int, int)
        ``(generator index, exponent)`` pairs; exponents may be any
        nonzero integer and are expanded into single letters.
    """

    __slots__ = ("letters", "_hash")

    def __init__(self, letters=()):
        out = []
        for g, s in letters:
            g, s = int(g), int(s)
            if g < 0:
                raise ValueError("generator indices are nonnegative")
            step = 1 if s > 0 else -1
            for _ in range(abs(s)):
                if out and out[-1][0] == g and out[-1][1] == -step:
                    out.pop()
                else:
                    out.append((g, step))
        self.letters = tuple(out)
        self._hash = None

    @classmethod
    def gen(cls, i, power=1):
        return cls([(i, power)])

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def inverse(self):
        return Word((g, -s) for g, s in reversed(self.letters))

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def exponent_sum(self, g):
        return sum(s for h, s in self.letters if h == g)

    def generators(self):
        return sorted({g for g, _ in self.letters})

    def max_generator(self):
        return max((g for g, _ in self.letters), default=-1)

    def __str__(self):
        if not self.letters:
            return "1"
        out = []
        i = 0
        lets = self.letters
        while i < len(lets):
            g, s = lets[i]
            j = i
            while j < len(lets) and lets[j] == (g, s):
                j += 1
            k = (j - i) * s
            out.append(f"x{g}" if k == 1 else f"x{g}^{k}")
            i = j
        return " ".join(out)

    def __repr__(self):
        return f"Word({str(self)!r})"


_WORD_TOKEN = re.compile(r"\s*x(\d+)(?:\^(-?\d+))?")


def parse_word(text):
    """Parse ``"x0 x3^-1 x2"``; ``"1"`` or an empty string is the identity."""
    s = text.strip()
    if s in ("", "1"):
        return Word()
    pos = 0
    letters = []
    while pos < len(s):
        if s[pos].isspace() or s[pos] == "*":
            pos += 1
            continue
        m = _WORD_TOKEN.match(s, pos)
        if not m:
            raise ParseError("malformed word", text, pos, "a letter like x3 or x3^-1")
        letters.append((int(m.group(1)), int(m.group(2) or 1)))
        pos = m.end()
    return Word(letters)


class GroupRingElem:
    """Finite integer combination of words (element of Z[F])."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def from_word(cls, w, c=1):
        return cls({w: c})

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return GroupRingElem(t)

    def __neg__(self):
        return GroupRingElem({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem({w: c * other for w, c in self.terms.items()})
        if isinstance(other, Word):
            other = GroupRingElem.from_word(other)
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                t[w] = t.get(w, 0) + c1 * c2
        return GroupRingElem(t)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, Word):
            return GroupRingElem.from_word(other) * self
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{w}]" for w, c in sorted(self.terms.items(), key=lambda kv: kv[0].letters))


def fox_derivative(word, j):
    """Fox derivative ``d word / d x_j`` as a :class:`GroupRingElem`."""
    t = {}
    lets = word.letters
    for k, (g, s) in enumerate(lets):
        if g != j:
            continue
        if s > 0:
            pre = Word(lets[:k])
            t[pre] = t.get(pre, 0) + 1
        else:
            pre = Word(lets[:k + 1])
            t[pre] = t.get(pre, 0) - 1
    return GroupRingElem(t)


def _images(eps):
    return eps.images if hasattr(eps, "images") else eps


def _nvars(eps, images):
    if hasattr(eps, "nvars"):
        return eps.nvars
    return len(images[0])


def word_image(word, eps):
    """Exponent vector of the abelianized image of ``word``."""
    images = _images(eps)
    nv = _nvars(eps, images)
    acc = [0] * nv
    for g, s in word.letters:
        for i, x in enumerate(images[g]):
            acc[i] += s * x
    return tuple(acc)


def augment(elem, eps):
    """Push a group ring element through the abelianization ``eps``.

    ``eps`` is an :class:`~twistalex.alexander.Augmentation` or a list of
    exponent vectors, one per generator.
    """
    images = _images(eps)
    nv = _nvars(eps, images)
    out = {}
    for w, c in elem.terms.items():
        e = word_image(w, eps)
        out[e] = out.get(e, 0) + c
    return LaurentPoly(out, nv)


def _perm_list(rho):
    return rho.images if hasattr(rho, "images") else rho


def eps_rho_apply(elem, eps, rho):
    """Image of ``elem`` under ``eps (x) rho`` as an N x N :class:`PolyMatrix`.

    A word ``w`` maps to ``t^eps(w)`` times the permutation matrix of
    ``rho(w)``, acting on row vectors from the right.
    """
    images = _images(eps)
    nv = _nvars(eps, images)
    ps = _perm_list(rho)
    n = len(ps[0])
    acc = [[{} for _ in range(n)] for _ in range(n)]
    for w, c in elem.terms.items():
        e = word_image(w, eps)
        perm = P.identity(n)
        for g, s in w.letters:
            perm = P.compose(perm, ps[g] if s > 0 else P.inverse(ps[g]))
        for i in range(n):
            cell = acc[i][perm[i]]
            cell[e] = cell.get(e, 0) + c
    return PolyMatrix([[LaurentPoly(cell, nv) for cell in row] for row in acc], nv)


def fox_row(word, eps, columns):
    """Row ``[eps(d word / d x_j) for j in columns]`` computed in one pass."""
    images = _images(eps)
    nv = _nvars(eps, images)
    col_index = {g: k for k, g in enumerate(columns)}
    acc = [{} for _ in columns]
    pre = [0] * nv
    for g, s in word.letters:
        im = images[g]
        if s > 0:
            k = col_index.get(g)
            if k is not None:
                key = tuple(pre)
                acc[k][key] = acc[k].get(key, 0) + 1
            for i in range(nv):
                pre[i] += im[i]
        else:
            for i in range(nv):
                pre[i] -= im[i]
            k = col_index.get(g)
            if k is not None:
                key = tuple(pre)
                acc[k][key] = acc[k].get(key, 0) - 1
    return [LaurentPoly(a, nv) for a in acc]


def fox_block_row(word, eps, rho, columns):
    """Block row ``[(eps (x) rho)(d word / d x_j) for j in columns]``.

    Returns a list of N rows (lists of LaurentPoly) of length
    ``N * len(columns)``, ready to be stacked into a block matrix.
    """
    images = _images(eps)
    nv = _nvars(eps, images)
    ps = _perm_list(rho)
    n = len(ps[0])
    inv = [P.inverse(p) for p in ps]
    col_index = {g: k for k, g in enumerate(columns)}
    acc = [[{} for _ in range(n * len(columns))] for _ in range(n)]
    pre = [0] * nv
    perm = P.identity(n)

    def deposit(k, sign):
        key = tuple(pre)
        off = k * n
        for i in range(n):
            cell = acc[i][off + perm[i]]
            cell[key] = cell.get(key, 0) + sign

    for g, s in word.letters:
        im = images[g]
        if s > 0:
            k = col_index.get(g)
            if k is not None:
                deposit(k, 1)
            for i in range(nv):
                pre[i] += im[i]
            perm = P.compose(perm, ps[g])
        else:
            for i in range(nv):
                pre[i] -= im[i]
            perm = P.compose(perm, inv[g])
            k = col_index.get(g)
            if k is not None:
                deposit(k, -1)
    return [[LaurentPoly(cell, nv) for cell in row] for row in acc]
