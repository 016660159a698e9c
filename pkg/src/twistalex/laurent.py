"""Exact Laurent polynomials over the integers.

A :class:`LaurentPoly` is an element of Z[t1^{+-1}, ..., td^{+-1}] stored as a
dictionary mapping exponent tuples to nonzero integer coefficients.  All
arithmetic is exact.  Units of the ring are the signed monomials
``+-t^a``, so polynomials are compared "up to units" through
:func:`canonical_form`.

:class:`QPoly` is a polynomial in an extra formal variable ``q`` whose
coefficients are Laurent polynomials; it carries the symbolic surgery
parameter of a twist family.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

from . import kernels
from .errors import NotDivisibleError, ParseError


def _add(a, b):
    return tuple([x + y for x, y in zip(a, b)])


def _sub(a, b):
    return tuple([x - y for x, y in zip(a, b)])


class LaurentPoly:
    """Integer Laurent polynomial in ``nvars`` variables.

    Parameters
    ----------
    terms : dict, optional
        Mapping ``{exponent tuple: coefficient}``.  Zero coefficients are
        discarded.
    nvars : int, optional
        Number of variables.  Required when ``terms`` is empty.

    Examples
    --------
    >>> t1, t2 = LaurentPoly.gens(2)
    >>> str((t1 - 1) * (t2 - 1))
    't1*t2 - t1 - t2 + 1'
    """

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms=None, nvars=None):
        terms = terms or {}
        if nvars is None:
            if not terms:
                raise ValueError("nvars is required for the zero polynomial")
            nvars = len(next(iter(terms)))
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self._terms = {e: c for e, c in clean.items() if c}
        self.nvars = int(nvars)
        self._hash = None

    @classmethod
    def _raw(cls, terms, nvars):
        obj = object.__new__(cls)
        obj._terms = terms
        obj.nvars = nvars
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, nvars):
        return cls._raw({}, nvars)

    @classmethod
    def one(cls, nvars):
        return cls._raw({(0,) * nvars: 1}, nvars)

    @classmethod
    def constant(cls, c, nvars):
        c = int(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def monomial(cls, exps, coeff=1):
        exps = tuple(int(x) for x in exps)
        coeff = int(coeff)
        return cls._raw({exps: coeff} if coeff else {}, len(exps))

    @classmethod
    def variable(cls, i, nvars):
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): 1}, nvars)

    @classmethod
    def gens(cls, nvars):
        return tuple(cls.variable(i, nvars) for i in range(nvars))

    @classmethod
    def from_dense(cls, coeffs, nvars=1, var=0, shift=0):
        """Univariate polynomial ``sum coeffs[k] * t_var^(k + shift)``."""
        terms = {}
        for k, c in enumerate(coeffs):
            c = int(c)
            if c:
                e = [0] * nvars
                e[var] = k + shift
                terms[tuple(e)] = c
        return cls._raw(terms, nvars)

    # -- basic queries -----------------------------------------------------
    @property
    def terms(self):
        """A copy of the term dictionary."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_monomial(self):
        return len(self._terms) == 1

    def is_unit(self):
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c in (1, -1)

    def is_constant(self):
        if not self._terms:
            return True
        return len(self._terms) == 1 and (0,) * self.nvars in self._terms

    def constant_value(self):
        """Integer value of a constant polynomial (raises otherwise)."""
        if not self._terms:
            return 0
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms[(0,) * self.nvars]

    def support_vars(self):
        """Indices of the variables that actually occur."""
        out = set()
        for e in self._terms:
            for i, x in enumerate(e):
                if x:
                    out.add(i)
        return out

    def min_exponents(self):
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponents(self):
        if not self._terms:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self._terms))

    def span(self):
        """Per-variable width ``max - min`` of the support."""
        return _sub(self.max_exponents(), self.min_exponents())

    def degree(self, i=None):
        """Largest exponent of variable ``i`` (total degree if ``i`` is None)."""
        if not self._terms:
            return -1
        if i is None:
            return max(sum(e) for e in self._terms)
        return max(e[i] for e in self._terms)

    def content(self):
        """Gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    def leading_term(self):
        """``(exps, coeff)`` of the lexicographically largest monomial."""
        e = max(self._terms)
        return e, self._terms[e]

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), 0)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"ring mismatch: {self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        t = dict(self._terms)
        for e, c in other._terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                del t[e]
        return LaurentPoly._raw(t, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        c = int(c)
        if c == 0:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly._raw({e: c * v for e, v in self._terms.items()}, self.nvars)

    def shift(self, exps):
        """Multiply by the monomial ``t^exps``."""
        exps = tuple(exps)
        if not any(exps):
            return self
        return LaurentPoly._raw({_add(e, exps): c for e, c in self._terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly.zero(self.nvars)
        if len(a) == 1:
            (e, c), = a.items()
            return other.shift(e).scale(c)
        if len(b) == 1:
            (e, c), = b.items()
            return self.shift(e).scale(c)
        return LaurentPoly._raw(kernels.mul_sparse(a, b, self.nvars), self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            if not self.is_unit():
                raise ValueError("negative powers are only defined for units")
            (e, c), = self._terms.items()
            return LaurentPoly._raw({tuple(-x * (-k) for x in e): c ** (-k)}, self.nvars)
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation and substitution --------------------------------------
    def evaluate(self, point):
        """Evaluate at ``point`` (sequence of numbers, one per variable).

        Exact for ints/Fractions when every needed power is defined.
        """
        point = list(point)
        if len(point) != self.nvars:
            raise ValueError("wrong number of coordinates")
        total = 0
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k > 0:
                    v = v * x ** k
                elif k < 0:
                    d = x ** (-k)
                    v = Fraction(v, d) if isinstance(v, int) and isinstance(d, int) else v / d
            total = total + v
        return total

    __call__ = evaluate

    def monomial_map(self, images, target_nvars):
        """Apply the ring map sending ``t_i`` to the monomial ``t^images[i]``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        images = [tuple(im) for im in images]
        for im in images:
            if len(im) != target_nvars:
                raise ValueError("image has the wrong number of variables")
        out = {}
        zero = (0,) * target_nvars
        for e, c in self._terms.items():
            k = zero
            for x, im in zip(e, images):
                if x:
                    k = tuple([a + x * b for a, b in zip(k, im)])
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out, target_nvars)

    def drop_variable(self, i):
        """Remove variable ``i``; it must not occur."""
        if any(e[i] for e in self._terms):
            raise ValueError(f"variable t{i + 1} still occurs")
        return LaurentPoly._raw({e[:i] + e[i + 1:]: c for e, c in self._terms.items()}, self.nvars - 1)

    def embed(self, nvars, positions=None):
        """View as a polynomial in a larger ring; variable i goes to ``positions[i]``."""
        if positions is None:
            positions = list(range(self.nvars))
        out = {}
        for e, c in self._terms.items():
            k = [0] * nvars
            for x, p in zip(e, positions):
                k[p] = x
            out[tuple(k)] = c
        return LaurentPoly._raw(out, nvars)

    def to_dense(self, var=None):
        """Return ``(coeffs, shift)`` of a polynomial in one variable.

        ``coeffs`` is an ascending list of ints with nonzero ends (empty for
        zero) and ``shift`` the lowest exponent.
        """
        if var is None:
            sv = self.support_vars()
            if len(sv) > 1:
                raise ValueError("polynomial involves more than one variable")
            var = sv.pop() if sv else 0
        if not self._terms:
            return [], 0
        for e in self._terms:
            if any(x for j, x in enumerate(e) if j != var):
                raise ValueError(f"polynomial involves variables other than t{var + 1}")
        lo = min(e[var] for e in self._terms)
        hi = max(e[var] for e in self._terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in self._terms.items():
            coeffs[e[var] - lo] = c
        return coeffs, lo

    # -- text and JSON -----------------------------------------------------
    def var_names(self):
        if self.nvars == 1:
            return ["t"]
        return [f"t{i + 1}" for i in range(self.nvars)]

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r}, nvars={self.nvars})"

    def to_json(self):
        """JSON-ready list of ``{"coeff": str, "exps": [int, ...]}`` sorted by exponent."""
        return [{"coeff": str(c), "exps": list(e)} for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data, nvars=None):
        terms = {}
        for item in data:
            e = tuple(int(x) for x in item["exps"])
            terms[e] = terms.get(e, 0) + int(item["coeff"])
        if nvars is None:
            if not terms:
                raise ValueError("nvars is required for an empty term list")
            nvars = len(next(iter(terms)))
        return cls(terms, nvars)


def _monomial_text(e, names):
    parts = []
    for x, name in zip(e, names):
        if x == 1:
            parts.append(name)
        elif x:
            parts.append(f"{name}^{x}")
    return "*".join(parts)


def format_poly(p, names=None):
    """Text form ``c*t1^a1*t2^a2 + ...`` with terms in decreasing lex order."""
    if not p._terms:
        return "0"
    names = names or p.var_names()
    out = []
    for i, e in enumerate(sorted(p._terms, reverse=True)):
        c = p._terms[e]
        mono = _monomial_text(e, names)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(t\d*|q)|(\*\*|[-+*^()]))")


class _PolyParser:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError("unexpected character", self.text, pos, "number, variable or operator")
            num, var, op = m.groups()
            start = m.start(m.lastindex)
            if num is not None:
                self.tokens.append(("num", int(num), start))
            elif var is not None:
                self.tokens.append(("var", var, start))
            else:
                self.tokens.append(("op", "^" if op == "**" else op, start))
            pos = m.end()
        self.i = 0
        self.max_var = 0
        for kind, val, _ in self.tokens:
            if kind == "var" and val != "q":
                idx = 1 if val == "t" else int(val[1:])
                if idx < 1:
                    raise ParseError("variables are numbered from t1", self.text)
                self.max_var = max(self.max_var, idx)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self, nvars):
        self.nvars = nvars
        if not self.tokens:
            raise ParseError("empty polynomial", self.text, 0, "a term")
        value = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected {val!r}", self.text, pos, "'+', '-' or end of input")
        return value

    def expr(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        value = self.term()
        if negate:
            value = -value
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                value = value * self.factor()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                value = value * self.factor()
            else:
                return value

    def factor(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                kind, val, pos = self.peek()
            if kind != "num":
                raise ParseError("bad exponent", self.text, pos, "an integer exponent")
            self.take()
            try:
                return base ** (sign * val)
            except ValueError as exc:
                raise ParseError(str(exc), self.text, pos) from None
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return LaurentPoly.constant(val, self.nvars)
        if kind == "var":
            if val == "q":
                raise ParseError("q is not a Laurent variable here", self.text, pos, "t1..td")
            idx = 1 if val == "t" else int(val[1:])
            if idx > self.nvars:
                raise ParseError(f"variable {val} outside a ring with {self.nvars} variables", self.text, pos)
            return LaurentPoly.variable(idx - 1, self.nvars)
        if kind == "op" and val == "(":
            inner = self.expr()
            k2, v2, p2 = self.take()
            if not (k2 == "op" and v2 == ")"):
                raise ParseError("unbalanced parenthesis", self.text, p2, "')'")
            return inner
        raise ParseError(f"unexpected {val!r}" if val is not None else "unexpected end of input",
                         self.text, pos, "a number, variable or '('")


def parse_poly(text, nvars=None):
    """Parse text such as ``"t^10 + t^9 - t^7"`` or ``"t1*t2 - t1 - t2 + 1"``.

    ``t`` is an alias for ``t1``.  Products may use ``*`` or juxtaposition,
    powers ``^`` (negative exponents only on monomials), and parentheses.
    The ring size defaults to the largest variable index mentioned.
    """
    parser = _PolyParser(text)
    if nvars is None:
        nvars = max(parser.max_var, 1)
    elif parser.max_var > nvars:
        raise ParseError(f"text uses t{parser.max_var} but the ring has {nvars} variables", text)
    return parser.parse(nvars)


# -- normal forms --------------------------------------------------------------

def canonical_with_unit(p):
    """Return ``(c, sign, shift)`` with ``p == sign * t^shift * c`` and ``c`` canonical.

    The canonical representative has minimum exponent zero in every variable
    and a positive coefficient on its lexicographically largest monomial.
    """
    if not p._terms:
        return p, 1, (0,) * p.nvars
    mins = p.min_exponents()
    shifted = p.shift(tuple(-x for x in mins))
    _, lead = shifted.leading_term()
    sign = 1 if lead > 0 else -1
    return (shifted if sign > 0 else -shifted), sign, mins


def canonical_form(p):
    """Unique associate of ``p`` under multiplication by units ``+-t^a``."""
    return canonical_with_unit(p)[0]


def equal_up_to_units(p, r):
    return canonical_form(p) == canonical_form(r)


def unit_between(p, r):
    """Return ``(sign, shift)`` with ``p == sign * t^shift * r``, or None."""
    cp, sp, mp_ = canonical_with_unit(p)
    cr, sr, mr = canonical_with_unit(r)
    if cp != cr:
        return None
    return sp * sr, _sub(mp_, mr)


# -- univariate dense helpers -------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def dense_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def dense_divmod_exact(a, b):
    """Divide ascending int lists exactly; raise NotDivisibleError otherwise."""
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    _trim(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        if a:
            raise NotDivisibleError("degree too small", a)
        return []
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if c:
            qk, r = divmod(c, lb)
            if r:
                raise NotDivisibleError("leading coefficient not divisible", a[:k + db + 1])
            q[k] = qk
            for j, y in enumerate(b):
                a[k + j] -= qk * y
    if any(a[:db]):
        raise NotDivisibleError("nonzero remainder", _trim(a[:db]))
    return _trim(q)


def _dense_content(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def _dense_prem(a, b):
    """Pseudo-remainder of ascending int lists (deg a >= deg b)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        d = len(r) - 1 - db
        r = [lb * x for x in r]
        for j, y in enumerate(b):
            r[d + j] -= lr * y
        _trim(r)
        e -= 1
    if e > 0:
        f = lb ** e
        r = [f * x for x in r]
    return r


def dense_gcd(a, b):
    """Primitive gcd (positive leading coefficient times integer content gcd)."""
    a = _trim(list(a))
    b = _trim(list(b))
    if not a:
        return b if not b or b[-1] > 0 else [-x for x in b]
    if not b:
        return a if a[-1] > 0 else [-x for x in a]
    ca, cb = _dense_content(a), _dense_content(b)
    c = math.gcd(ca, cb)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    if len(a) < len(b):
        a, b = b, a
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = _dense_prem(a, b)
        if not r:
            break
        if len(r) == 1:
            b = [1]
            break
        a = b
        div = g * h ** delta
        b = [x // div for x in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)
    cb = _dense_content(b)
    b = [x // cb for x in b]
    if b[-1] < 0:
        b = [-x for x in b]
    return [c * x for x in b]


# -- multivariate exact division and gcd ------------------------------------

def _vars(p):
    return p.support_vars()


def _coeffs_in(p, v):
    """Split ``p`` by powers of variable ``v`` -> ``{deg: poly without v}``."""
    parts = {}
    for e, c in p._terms.items():
        k = e[v]
        key = e[:v] + (0,) + e[v + 1:]
        parts.setdefault(k, {})[key] = c
    return {k: LaurentPoly._raw(t, p.nvars) for k, t in parts.items()}


def _var_power(v, k, nvars):
    e = [0] * nvars
    e[v] = k
    return tuple(e)


def _is_univariate_in(p, r):
    sv = _vars(p) | _vars(r)
    return len(sv) <= 1, (sv.pop() if sv else 0)


def _div_ordinary(p, r):
    """Exact quotient of polynomials with nonnegative exponents."""
    if not p._terms:
        return LaurentPoly.zero(p.nvars)
    uni, v = _is_univariate_in(p, r)
    if uni:
        a, sa = p.to_dense(v)
        b, sb = r.to_dense(v)
        q = dense_divmod_exact([0] * sa + a, [0] * sb + b)
        return LaurentPoly.from_dense(q, p.nvars, v)
    if r.is_constant():
        c = r.constant_value()
        out = {}
        for e, x in p._terms.items():
            qq, rem = divmod(x, c)
            if rem:
                raise NotDivisibleError("coefficient not divisible by constant", p)
            out[e] = qq
        return LaurentPoly._raw(out, p.nvars)
    v = max(_vars(r))
    rc = _coeffs_in(r, v)
    dr = max(rc)
    lr = rc[dr]
    rem = p
    quot = {}
    while rem._terms:
        pc = _coeffs_in(rem, v)
        dp = max(pc)
        if dp < dr:
            raise NotDivisibleError("nonzero remainder", rem)
        qc = _div_ordinary(pc[dp], lr)
        term = qc.shift(_var_power(v, dp - dr, p.nvars))
        for e, c in term._terms.items():
            quot[e] = quot.get(e, 0) + c
        rem = rem - term * r
    return LaurentPoly(quot, p.nvars)


def exact_div(p, r):
    """Return ``s`` with ``p == s * r`` in the Laurent ring.

    Raises
    ------
    NotDivisibleError
        If ``r`` does not divide ``p``; the exception carries a remainder.
    ZeroDivisionError
        If ``r`` is zero.
    """
    if p.nvars != r.nvars:
        raise ValueError("ring mismatch")
    if not r._terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p._terms:
        return p
    if len(r._terms) == 1:
        (e, c), = r._terms.items()
        out = {}
        neg = tuple(-x for x in e)
        for k, x in p._terms.items():
            qq, rem = divmod(x, c)
            if rem:
                raise NotDivisibleError(f"coefficient {x} not divisible by {c}", p)
            out[_add(k, neg)] = qq
        return LaurentPoly._raw(out, p.nvars)
    mp_, mr = p.min_exponents(), r.min_exponents()
    p0 = p.shift(tuple(-x for x in mp_))
    r0 = r.shift(tuple(-x for x in mr))
    q0 = _div_ordinary(p0, r0)
    return q0.shift(_sub(mp_, mr))


def divides(r, p):
    """True when ``r`` divides ``p`` exactly."""
    try:
        exact_div(p, r)
    except NotDivisibleError:
        return False
    return True


def _prem_list(a, b, one):
    """Pseudo-remainder of coefficient lists over a polynomial ring."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        d = len(r) - 1 - db
        r = [lb * x for x in r]
        for j, y in enumerate(b):
            r[d + j] = r[d + j] - lr * y
        while r and not r[-1]:
            r.pop()
        e -= 1
    if e > 0:
        f = lb ** e
        r = [f * x for x in r]
    return r


def _content_v(p, v):
    parts = _coeffs_in(p, v)
    g = None
    for c in parts.values():
        g = c if g is None else _gcd_rec(g, c)
        if g.is_unit():
            return LaurentPoly.one(p.nvars)
    return g


def _gcd_rec(a, b):
    va, vb = _vars(a), _vars(b)
    if not va and not vb:
        return LaurentPoly.constant(math.gcd(a.constant_value(), b.constant_value()), a.nvars)
    if not va:
        return LaurentPoly.constant(math.gcd(a.constant_value(), b.content()), a.nvars)
    if not vb:
        return LaurentPoly.constant(math.gcd(b.constant_value(), a.content()), a.nvars)
    if len(va | vb) == 1:
        v = (va | vb).pop()
        g = dense_gcd(a.to_dense(v)[0], b.to_dense(v)[0])
        return LaurentPoly.from_dense(g, a.nvars, v)
    v = max(va | vb)
    if v not in va:
        return _gcd_rec(a, _content_v(b, v))
    if v not in vb:
        return _gcd_rec(_content_v(a, v), b)
    ca, cb = _content_v(a, v), _content_v(b, v)
    pa, pb = _div_ordinary(a, ca), _div_ordinary(b, cb)
    g = _gcd_rec(ca, cb)
    la = _coeffs_in(pa, v)
    lb = _coeffs_in(pb, v)
    zero = LaurentPoly.zero(a.nvars)
    A = [la.get(k, zero) for k in range(max(la) + 1)]
    B = [lb.get(k, zero) for k in range(max(lb) + 1)]
    if len(A) < len(B):
        A, B = B, A
    one = LaurentPoly.one(a.nvars)
    gg = hh = one
    while True:
        delta = len(A) - len(B)
        R = _prem_list(A, B, one)
        if not R:
            break
        if len(R) == 1:
            B = [one]
            break
        A = B
        div = gg * hh ** delta
        B = [exact_div(x, div) if x else x for x in R]
        gg = A[-1]
        if delta == 1:
            hh = gg
        elif delta > 1:
            hh = exact_div(gg ** delta, hh ** (delta - 1))
    h = zero
    for k, c in enumerate(B):
        if c:
            h = h + c.shift(_var_power(v, k, a.nvars))
    h = _div_ordinary(h, _content_v(h, v))
    return g * h


def gcd(p, r):
    """Greatest common divisor in the Laurent ring, in canonical form.

    ``gcd(p, 0)`` is ``canonical_form(p)``; the gcd of two zeros is zero.
    Integer content is included, e.g. ``gcd(2t - 2, 4) == 2``.
    """
    if p.nvars != r.nvars:
        raise ValueError("ring mismatch")
    if not p._terms:
        return canonical_form(r)
    if not r._terms:
        return canonical_form(p)
    a = p.shift(tuple(-x for x in p.min_exponents()))
    b = r.shift(tuple(-x for x in r.min_exponents()))
    return canonical_form(_gcd_rec(a, b))


def gcd_many(polys, nvars):
    g = LaurentPoly.zero(nvars)
    for p in polys:
        g = gcd(g, p)
        if g.is_unit():
            break
    return g


def substitute_monomial(p, var_index, image, scale=1, drop=False):
    """Substitute ``t_var -> (t^image)^scale`` keeping other variables.

    ``image`` is an exponent vector in the same ring.  With ``drop=True``
    the substituted variable is removed from the ring afterwards, which
    requires ``image[var_index] == 0``.
    """
    image = tuple(int(x) * int(scale) for x in image)
    if len(image) != p.nvars:
        raise ValueError("image must live in the same ring")
    images = [tuple(1 if j == i else 0 for j in range(p.nvars)) for i in range(p.nvars)]
    images[var_index] = image
    out = p.monomial_map(images, p.nvars)
    if drop:
        if image[var_index]:
            raise ValueError("cannot drop a variable that maps to itself")
        out = out.drop_variable(var_index)
    return out


# -- polynomials in q ------------------------------------------------------------

class QPoly:
    """Polynomial ``sum_k coeffs[k] * q^k`` with Laurent polynomial coefficients."""

    __slots__ = ("coeffs", "nvars")

    def __init__(self, coeffs, nvars=None):
        coeffs = list(coeffs)
        if nvars is None:
            if not coeffs:
                raise ValueError("nvars required for the zero QPoly")
            nvars = coeffs[0].nvars
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        for c in coeffs:
            if c.nvars != nvars:
                raise ValueError("coefficient ring mismatch")
        self.coeffs = tuple(coeffs)
        self.nvars = nvars

    @classmethod
    def from_laurent(cls, p, qvar):
        """Read variable ``qvar`` of ``p`` as ``q``; its exponents must be >= 0."""
        parts = {}
        for e, c in p.items():
            k = e[qvar]
            if k < 0:
                raise ValueError("negative power of q")
            parts.setdefault(k, {})[e[:qvar] + e[qvar + 1:]] = c
        nv = p.nvars - 1
        if not parts:
            return cls([], nv)
        return cls([LaurentPoly._raw(parts.get(k, {}), nv) for k in range(max(parts) + 1)], nv)

    def to_laurent(self, qvar=None):
        qvar = self.nvars if qvar is None else qvar
        out = LaurentPoly.zero(self.nvars + 1)
        positions = [i if i < qvar else i + 1 for i in range(self.nvars)]
        for k, c in enumerate(self.coeffs):
            e = [0] * (self.nvars + 1)
            e[qvar] = k
            out = out + c.embed(self.nvars + 1, positions).shift(tuple(e))
        return out

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coefficient(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return LaurentPoly.zero(self.nvars)

    def leading(self):
        return self.coeffs[-1] if self.coeffs else LaurentPoly.zero(self.nvars)

    def is_zero(self):
        return not self.coeffs

    def evaluate(self, q):
        """Substitute an integer for ``q``."""
        out = LaurentPoly.zero(self.nvars)
        for c in reversed(self.coeffs):
            out = out * int(q) + c
        return out

    def map_coeffs(self, f):
        return QPoly([f(c) for c in self.coeffs], self.nvars)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly([self.coefficient(k) + other.coefficient(k) for k in range(n)], self.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.map_coeffs(lambda c: c * other)
        if not self.coeffs or not other.coeffs:
            return QPoly([], self.nvars)
        out = [LaurentPoly.zero(self.nvars)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return QPoly(out, self.nvars)

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, self.coeffs))

    def normalized(self):
        """Multiply every coefficient by one common unit.

        The unit shifts the combined support to minimum exponent zero and
        makes the leading ``q``-coefficient's largest monomial positive.
        Returns ``(QPoly, sign, shift)`` with ``self == sign * t^shift * result``.
        """
        if not self.coeffs:
            return self, 1, (0,) * self.nvars
        mins = None
        for c in self.coeffs:
            if c:
                m = c.min_exponents()
                mins = m if mins is None else tuple(min(x, y) for x, y in zip(mins, m))
        neg = tuple(-x for x in mins)
        shifted = [c.shift(neg) for c in self.coeffs]
        _, lead = shifted[-1].leading_term()
        sign = 1 if lead > 0 else -1
        return QPoly([c * sign for c in shifted], self.nvars), sign, mins

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            body = f"({c})"
            parts.append(body if k == 0 else (f"{body}*q" if k == 1 else f"{body}*q^{k}"))
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data, nvars):
        return cls([LaurentPoly.from_json(c, nvars) for c in data], nvars)
