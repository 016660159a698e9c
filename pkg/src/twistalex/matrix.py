"""Matrices over Laurent polynomial rings and their determinants.

The main determinant routine first eliminates against unit pivots
(signed monomials), which is where Fox-calculus matrices are sparse and
cheap, and then switches to fraction-free Bareiss elimination for what is
left.  Cofactor expansion is kept as an independent check for small
matrices.
"""
from __future__ import annotations

import itertools

from .laurent import LaurentPoly, QPoly, exact_div, gcd


class PolyMatrix:
    """Dense matrix of :class:`LaurentPoly` entries sharing one ring.

    Parameters
    ----------
    rows : sequence of sequences
        Entries; ints are promoted to constants.
    nvars : int, optional
        Ring size; inferred from the first polynomial entry if omitted.
    """

    __slots__ = ("rows", "nrows", "ncols", "nvars")

    def __init__(self, rows, nvars=None):
        rows = [list(r) for r in rows]
        if nvars is None:
            for r in rows:
                for x in r:
                    if isinstance(x, LaurentPoly):
                        nvars = x.nvars
                        break
                if nvars is not None:
                    break
        if nvars is None:
            raise ValueError("cannot infer the ring of an all-integer matrix; pass nvars")
        ncols = len(rows[0]) if rows else 0
        out = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            out.append(tuple(x if isinstance(x, LaurentPoly) else LaurentPoly.constant(x, nvars) for x in r))
        for r in out:
            for x in r:
                if x.nvars != nvars:
                    raise ValueError("entries live in different rings")
        self.rows = tuple(out)
        self.nrows = len(out)
        self.ncols = ncols
        self.nvars = nvars

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows and self.nvars == other.nvars

    def submatrix(self, rows, cols):
        return PolyMatrix([[self.rows[i][j] for j in cols] for i in rows], self.nvars)

    def delete_row(self, i):
        return PolyMatrix([r for k, r in enumerate(self.rows) if k != i], self.nvars)

    def delete_col(self, j):
        return PolyMatrix([[x for k, x in enumerate(r) if k != j] for r in self.rows], self.nvars)

    def transpose(self):
        return PolyMatrix([list(c) for c in zip(*self.rows)], self.nvars) if self.rows else self

    def map(self, f, nvars=None):
        return PolyMatrix([[f(x) for x in r] for r in self.rows], nvars or self.nvars)

    def __mul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        zero = LaurentPoly.zero(self.nvars)
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                s = zero
                for k, x in enumerate(r):
                    if x:
                        y = other.rows[k][j]
                        if y:
                            s = s + x * y
                row.append(s)
            out.append(row)
        return PolyMatrix(out, self.nvars)

    def __add__(self, other):
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.nvars)

    def __sub__(self, other):
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.nvars)

    @classmethod
    def identity(cls, n, nvars):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], nvars)

    @classmethod
    def zeros(cls, m, n, nvars):
        return cls([[0] * n for _ in range(m)], nvars)

    @classmethod
    def from_blocks(cls, blocks, nvars):
        """Flatten a grid of equally sized square blocks."""
        out = []
        for brow in blocks:
            size = brow[0].nrows
            for i in range(size):
                row = []
                for b in brow:
                    row.extend(b.rows[i])
                out.append(row)
        return cls(out, nvars)

    def __str__(self):
        cells = [[str(x) for x in r] for r in self.rows]
        if not cells:
            return "[]"
        widths = [max(len(c[j]) for c in cells) for j in range(self.ncols)]
        return "\n".join("[ " + "  ".join(c[j].rjust(widths[j]) for j in range(self.ncols)) + " ]" for c in cells)

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols}, nvars={self.nvars})"


def _inverse_unit(u):
    (e, c), = u.items()
    return LaurentPoly.monomial(tuple(-x for x in e), c)


def _pivot_key(p):
    return (0 if len(p) == 1 else 1, p.degree() - min(sum(e) for e, _ in p.items()), len(p))


def determinant(m):
    """Exact determinant of a square :class:`PolyMatrix`.

    Phase one eliminates with unit pivots (first unit in row-major order)
    without any division; phase two runs Bareiss elimination choosing
    pivots that are monomials first, then of lowest total degree span,
    ties broken in row-major order.
    """
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    nv = m.nvars
    a = [list(r) for r in m.rows]
    factor = LaurentPoly.one(nv)
    sign = 1

    while a:
        piv = None
        for i, r in enumerate(a):
            for j, x in enumerate(r):
                if x.is_unit():
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        u = a[i][j]
        uinv = _inverse_unit(u)
        prow = a[i]
        if (i + j) % 2:
            sign = -sign
        factor = factor * u
        rest = []
        for k, r in enumerate(a):
            if k == i:
                continue
            f = r[j]
            if f:
                g = f * uinv
                r = [x - g * y if y else x for x, y in zip(r, prow)]
            rest.append(r[:j] + r[j + 1:])
        a = rest
    if not a:
        return factor * sign
    det = _bareiss(a, nv)
    return det * factor * sign


def _bareiss(a, nv):
    n = len(a)
    a = [list(r) for r in a]
    sign = 1
    prev = LaurentPoly.one(nv)
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                x = a[i][j]
                if x:
                    key = _pivot_key(x)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            return LaurentPoly.zero(nv)
        _, i, j = best
        if i != k:
            a[i], a[k] = a[k], a[i]
            sign = -sign
        if j != k:
            for r in a:
                r[j], r[k] = r[k], r[j]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri = a[i]
            rk = a[k]
            for j in range(k + 1, n):
                x = ri[j]
                y = rk[j]
                if aik and y:
                    val = p * x - aik * y
                elif x:
                    val = p * x
                else:
                    continue
                ri[j] = exact_div(val, prev) if val else val
            ri[k] = LaurentPoly.zero(nv)
        prev = p
    return a[n - 1][n - 1] * sign


def cofactor_determinant(m):
    """Determinant by Laplace expansion with memoization (small matrices only)."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    nv = m.nvars
    memo = {}

    def rec(row, cols):
        if row == n:
            return LaurentPoly.one(nv)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = LaurentPoly.zero(nv)
        for pos, j in enumerate(cols):
            x = m.rows[row][j]
            if x:
                sub = rec(row + 1, cols[:pos] + cols[pos + 1:])
                term = x * sub
                total = total + (term if pos % 2 == 0 else -term)
        memo[key] = total
        return total

    return rec(0, tuple(range(n)))


def minors(m, k):
    """Yield ``(rows, cols, det)`` for every k x k minor in lexicographic order."""
    for rows in itertools.combinations(range(m.nrows), k):
        for cols in itertools.combinations(range(m.ncols), k):
            yield rows, cols, determinant(m.submatrix(rows, cols))


def minors_gcd(m, k):
    """Gcd of all k x k minors (1 for k <= 0, 0 if k exceeds a dimension)."""
    if k <= 0:
        return LaurentPoly.one(m.nvars)
    if k > min(m.nrows, m.ncols):
        return LaurentPoly.zero(m.nvars)
    g = LaurentPoly.zero(m.nvars)
    for _, _, d in minors(m, k):
        if d:
            g = gcd(g, d)
            if g.is_unit():
                break
    return g


def q_determinant(m, qvar=None):
    """Determinant of a matrix whose ring has an extra variable playing ``q``.

    ``qvar`` defaults to the last variable.  Entries must be polynomial in
    ``q`` (no negative powers).  Returns a :class:`QPoly` over the remaining
    variables.
    """
    qvar = m.nvars - 1 if qvar is None else qvar
    return QPoly.from_laurent(determinant(m), qvar)


def substitute_var(m, var, value):
    """Substitute an integer for one variable (kept in the ring)."""
    value = int(value)

    def sub(p):
        out = LaurentPoly.zero(p.nvars)
        for e, c in p.items():
            k = e[var]
            if k < 0:
                raise ValueError("negative power of the substituted variable")
            e2 = e[:var] + (0,) + e[var + 1:]
            out = out + LaurentPoly.monomial(e2, c * value ** k)
        return out

    return m.map(sub)
