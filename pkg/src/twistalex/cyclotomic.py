"""Cyclotomic polynomials and detection of (generalized) cyclotomic products.

A generalized cyclotomic polynomial is ``Phi_n(t^v)`` for a cyclotomic
polynomial ``Phi_n`` and a monomial ``t^v``.  Products of these (times a
unit) are exactly the Laurent polynomials of Mahler measure one, so the
detector below doubles as an exact ``M(p) == 1`` test.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import NotDivisibleError
from .laurent import LaurentPoly, canonical_form, dense_divmod_exact, exact_div


@lru_cache(maxsize=None)
def cyclotomic_dense(n):
    """Ascending integer coefficients of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = dense_divmod_exact(num, cyclotomic_dense(d))
    return tuple(num)


def cyclotomic(n, nvars=1, direction=None):
    """``Phi_n(t^direction)`` as a LaurentPoly (``direction`` defaults to t1)."""
    if direction is None:
        direction = (1,) + (0,) * (nvars - 1)
    direction = tuple(direction)
    terms = {}
    for k, c in enumerate(cyclotomic_dense(n)):
        if c:
            terms[tuple(k * x for x in direction)] = c
    return LaurentPoly(terms, len(direction))


def totient(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def orders_with_totient_at_most(deg):
    """All n with phi(n) <= deg, ascending.

    Uses phi(n) >= sqrt(n/2) and n/phi(n) < 7 (valid for n below 10^9).
    """
    limit = min(2 * deg * deg + 2, 7 * deg + 10)
    return tuple(n for n in range(1, limit + 1) if totient(n) <= deg)


@dataclass
class CyclotomicCertificate:
    """Outcome of :func:`is_generalized_cyclotomic_product`.

    ``status`` is True (certificate in ``factors``), False (a specialization
    or the exhaustive search rules it out) or None (search limits reached).
    ``factors`` lists ``(n, direction)`` pairs, one per factor
    ``Phi_n(t^direction)`` with repetition; the input equals
    ``unit * prod(factors)``.
    """

    status: bool | None
    factors: list = field(default_factory=list)
    unit: LaurentPoly | None = None
    reason: str = ""

    def __bool__(self):
        return self.status is True


def _univariate_factors(coeffs):
    """Factor an ascending int list into cyclotomics; None if impossible."""
    a = list(coeffs)
    while a and a[0] == 0:
        a.pop(0)
    if not a:
        return None
    if abs(a[0]) != 1 or abs(a[-1]) != 1:
        return None
    rev = a[::-1]
    if a != rev and a != [-x for x in rev]:
        return None
    factors = []
    for n in orders_with_totient_at_most(max(len(a) - 1, 1)):
        if len(a) == 1:
            break
        phi = cyclotomic_dense(n)
        if len(phi) > len(a):
            continue
        while len(a) >= len(phi):
            try:
                a = dense_divmod_exact(a, phi)
            except NotDivisibleError:
                break
            factors.append(n)
    if len(a) == 1 and abs(a[0]) == 1:
        return factors
    return None


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    v = tuple(x // g for x in v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _specialization_vectors(p):
    # base-k exponents with k beyond the support width keep distinct
    # monomials distinct, so a genuine product never collapses
    span = max(p.span()) + 1
    nv = p.nvars
    k = span + 1
    yield tuple(k ** i for i in range(nv))
    yield tuple(k ** (nv - 1 - i) for i in range(nv))


def is_generalized_cyclotomic_product(p, max_directions=400):
    """Decide whether ``p`` is a unit times a product of generalized cyclotomics.

    Univariate input is decided exactly by trial division.  In several
    variables, monomial specializations ``t_i -> t^(k_i)`` that fail the
    univariate test give a definitive False; otherwise every primitive edge
    direction of the support is tried with ``Phi_n(t^v)`` trial division,
    which is a complete search unless ``max_directions`` is exceeded.
    """
    if p.is_zero():
        return CyclotomicCertificate(False, reason="zero polynomial")
    sv = p.support_vars()
    if len(sv) <= 1:
        v = sv.pop() if sv else 0
        coeffs, shift = p.to_dense(v)
        fac = _univariate_factors(coeffs)
        if fac is None:
            return CyclotomicCertificate(False, reason="univariate trial division leaves a non-unit")
        direction = tuple(1 if i == v else 0 for i in range(p.nvars))
        factors = [(n, direction) for n in fac]
        return CyclotomicCertificate(True, factors, _unit_of(p, factors))

    for vec in _specialization_vectors(p):
        images = [(k,) for k in vec]
        spec = p.monomial_map(images, 1)
        if spec.is_zero() or _univariate_factors(spec.to_dense(0)[0]) is None:
            return CyclotomicCertificate(False, reason=f"specialization t_i -> t^{vec} is not a cyclotomic product")

    rest = canonical_form(p)
    factors = []
    while not rest.is_unit():
        support = list(rest.items())
        dirs = set()
        for (e1, _), (e2, _) in itertools.combinations(support, 2):
            dirs.add(_primitive(tuple(a - b for a, b in zip(e1, e2))))
            if len(dirs) > max_directions:
                return CyclotomicCertificate(None, factors, reason="direction limit reached")
        found = False
        for d in sorted(dirs, key=lambda v: (sum(abs(x) for x in v), v)):
            width = max(
                (sum(a * b for a, b in zip(e, d)) for e, _ in support),
            ) - min(sum(a * b for a, b in zip(e, d)) for e, _ in support)
            norm = max(abs(x) for x in d)
            if norm == 0:
                continue
            for n in orders_with_totient_at_most(max(width, 1)):
                phi = cyclotomic(n, direction=d)
                try:
                    q = exact_div(rest, phi)
                except NotDivisibleError:
                    continue
                factors.append((n, d))
                rest = canonical_form(q)
                found = True
                break
            if found:
                break
        if not found:
            return CyclotomicCertificate(False, factors, reason="no generalized cyclotomic factor divides the remainder")
    return CyclotomicCertificate(True, factors, _unit_of(p, factors))


def _unit_of(p, factors):
    prod = LaurentPoly.one(p.nvars)
    for n, d in factors:
        prod = prod * cyclotomic(n, direction=d)
    return exact_div(p, prod)
