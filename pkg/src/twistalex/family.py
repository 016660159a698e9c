"""Surgery presentations and twist families of (twisted) Alexander polynomials.

Let ``L = l_1 u ... u l_d u l_{d+1}`` be a link and ``L(q)`` the link
``l_1 u ... u l_d`` in the manifold obtained by 1/q surgery on ``l_{d+1}``.
A presentation of its group is the Wirtinger presentation of ``L`` with
the relator ``lambda^q x_n`` added, where ``lambda`` is the preferred
longitude of ``l_{d+1}`` and ``x_n`` its distinguished meridian.  The
crossing relator that closes the meridian cycle along ``l_{d+1}`` then
becomes redundant and is dropped, leaving a square matrix.

Two regimes are handled:

* ``l_{d+1}`` has zero linking with every other component.  Then the
  Fox row of the surgery relator is linear in ``q``, so the (twisted)
  Alexander polynomial of ``L(q)`` is a polynomial ``P(q)`` of degree at
  most the representation degree.  It is computed once, symbolically.
* nonzero linking.  Then ``D(L(q))`` comes from the ``d+1`` variable
  ``D(L)`` by substituting ``t_{d+1} -> T^-q`` (``T`` the image of the
  longitude) and dividing by ``det(I - T rho(lambda))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import perms as P
from .alexander import Augmentation
from .errors import ConventionError, NotDivisibleError, PresentationError, RepresentationError
from .fox import Word, fox_block_row, fox_row, word_image
from .laurent import LaurentPoly, QPoly, canonical_form, exact_div, substitute_monomial
from .links import LinkDiagram, wirtinger
from .matrix import PolyMatrix, determinant, q_determinant
from .twisted import (PermutationRep, check_rep, delta0, trivial_rep, twisted_D,
                      wada_denominator)


@dataclass
class SurgerySpec:
    """A link together with the component to be surgered.

    ``q`` is an integer for a single surgery or None for the symbolic
    family.  ``r`` is the multiplier in ``L(r q)``; when a representation
    is given it defaults to the order of ``rho(lambda)``.
    """

    diagram: LinkDiagram
    surgery_component: int = -1
    q: int | None = None
    r: int | None = None

    def presentation(self):
        return wirtinger(self.diagram, surgery_component=self.surgery_component)


def _as_presentation(obj):
    if isinstance(obj, SurgerySpec):
        return obj.presentation()
    if isinstance(obj, LinkDiagram):
        return wirtinger(obj, surgery_component=-1)
    if getattr(obj, "surgery_component", None) is None:
        raise PresentationError("presentation has no surgery component; build it with surgery_component=")
    return obj


def cycle_crossing(pres):
    """Crossing whose relator closes the meridian cycle of the surgery component (or None)."""
    cyc = pres.component_cycles[pres.surgery_component]
    return cyc[-1] if cyc else None


def drop_redundant_relator(pres):
    """Remove the relator that closes the meridian cycle along the surgery component.

    If the surgery component never passes under another strand there is no
    such relator (its meridian cycle is a single arc) and the presentation
    is returned unchanged.
    """
    pres = _as_presentation(pres)
    c = cycle_crossing(pres)
    if c is None:
        return pres
    if c not in pres.relator_crossings:
        raise PresentationError(f"cycle-closing relator (crossing {c}) is not among the relators")
    keep = [(r, k) for r, k in zip(pres.relators, pres.relator_crossings) if k != c]
    return pres.with_relators([r for r, _ in keep], [k for _, k in keep])


def surgery_relator(pres, q):
    """The word ``lambda^q x_n``."""
    xn = pres.component_meridians[pres.surgery_component]
    return pres.longitude() ** q * Word.gen(xn)


@dataclass(frozen=True)
class SymbolicSurgeryRelator:
    """The relator ``lambda^q x_n`` with ``q`` left symbolic (never expanded)."""

    longitude: Word
    meridian: int

    def at(self, q):
        return self.longitude ** q * Word.gen(self.meridian)

    def __str__(self):
        return f"({self.longitude})^q x{self.meridian}"


def surgery_presentation(pres, q, drop_redundant=True):
    """Presentation of the group of ``L(q)``.

    For an integer ``q`` the relator ``lambda^q x_n`` is appended.  For
    ``q=None`` the retained crossing relators are returned and the surgery
    relator is recorded in closed form under ``notes["surgery_relator"]``.
    """
    pres = _as_presentation(pres)
    base = drop_redundant_relator(pres) if drop_redundant else pres
    if q is None:
        rec = SymbolicSurgeryRelator(pres.longitude(), pres.component_meridians[pres.surgery_component])
        out = base.with_relators(base.relators, base.relator_crossings)
        out.notes = dict(out.notes, surgery_q=None, surgery_relator=rec)
        return out
    rels = list(base.relators) + [surgery_relator(pres, q)]
    crossings = list(base.relator_crossings) + [None]
    out = base.with_relators(rels, crossings)
    out.notes = dict(out.notes, surgery_q=q)
    return out


def longitude_linking(pres):
    """Exponent vector of the longitude over ``t_1..t_d`` (the linking numbers)."""
    eps = Augmentation.standard(pres)
    return word_image(pres.longitude(), eps)[:-1]


def surgered_augmentation(pres, q):
    """Abelianization of ``pi(L(q))``: surgery meridians go to ``T^-q``."""
    lam = longitude_linking(pres)
    return Augmentation.standard(pres, surgery_image=tuple(-q * x for x in lam))


def _check_family_rep(pres, rho):
    if rho is None:
        return trivial_rep(pres)
    check_rep(pres, rho)
    ident = P.identity(rho.N)
    for g in pres.generators_of(pres.surgery_component):
        if rho.images[g] != ident:
            raise RepresentationError(f"meridian x{g} of the surgery component must map to the identity")
    return rho


def longitude_order(pres, rho):
    return P.order(rho.of_word(pres.longitude()))


def _to_fraction_poly(p):
    return {e: Fraction(c) for e, c in p.items()}


def interpolate_q(values, nvars):
    """Lagrange interpolation of ``{q: LaurentPoly}`` into a :class:`QPoly`.

    Raises ValueError if the interpolant has non-integer coefficients.
    """
    pts = sorted(values)
    coeff = {}
    for i, qi in enumerate(pts):
        # basis polynomial prod_{j != i} (q - qj) / (qi - qj), expanded in q
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, qj in enumerate(pts):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                new[k + 1] += b
                new[k] -= qj * b
            basis = new
            denom *= qi - qj
        for k, b in enumerate(basis):
            if b:
                slot = coeff.setdefault(k, {})
                for e, c in values[qi].items():
                    slot[e] = slot.get(e, 0) + b * c / denom
    out = []
    for k in range(len(pts)):
        terms = {}
        for e, c in coeff.get(k, {}).items():
            if c:
                if c.denominator != 1:
                    raise ValueError("interpolant has non-integer coefficients")
                terms[e] = int(c)
        out.append(LaurentPoly(terms, nvars))
    return QPoly(out, nvars)


@dataclass
class TwistFamilyResult:
    """Symbolic family ``q -> Delta(L(r q))`` for a zero-linking surgery component.

    Attributes
    ----------
    P : QPoly
        Normalized family polynomial; ``P.evaluate(q)`` is a (twisted)
        Alexander polynomial of ``L(r q)`` up to a unit that does not depend on q.
    raw : QPoly
        Determinant of the symbolic matrix before the normalization factors.
    limit_poly : LaurentPoly
        Canonical form of the coefficient of ``q^N``; zero when that
        coefficient vanishes.
    leading_coefficient : LaurentPoly
        Canonical form of the highest nonzero ``q``-coefficient.
    modified_determinant : LaurentPoly
        Same normalization applied to the determinant of the matrix whose
        surgery rows drop the identity term (must equal the ``q^N`` coefficient).
    constant : bool
    N, r : int
        Representation degree and longitude order.
    factor : tuple of LaurentPoly
        Numerator and denominator of the q-independent normalization.
    """

    P: QPoly
    raw: QPoly
    limit_poly: LaurentPoly
    leading_coefficient: LaurentPoly
    modified_determinant: LaurentPoly
    constant: bool
    N: int
    r: int
    factor: tuple
    unit: tuple = ()
    per_q: dict = field(default_factory=dict)
    presentation: object = None
    rho: object = None

    def at(self, q):
        """Canonical polynomial of the family member at the family parameter ``q``."""
        return canonical_form(self.P.evaluate(q))


def _zero_linking_augmentation(pres):
    lam = longitude_linking(pres)
    if any(lam):
        raise PresentationError(
            f"surgery component links the others ({list(lam)}); use substitution_family instead")
    return Augmentation.standard(pres, surgery_image=(0,) * (pres.component_count - 1))


def _lift(eps):
    return Augmentation(tuple(im + (0,) for im in eps.images), eps.nvars + 1)


def family_matrix(pres, rho=None, modified=False, untwisted=False):
    """Symbolic matrix of ``L(r q)`` over ``t_1..t_d, q`` (``q`` is the last variable).

    With ``modified=True`` the surgery rows are replaced by their ``q``
    part evaluated at ``q = 1`` (the identity term is dropped).  With
    ``untwisted=True`` rows are built through the plain Alexander matrix
    code path instead of the block one (requires trivial ``rho``).
    """
    pres = _as_presentation(pres)
    eps = _zero_linking_augmentation(pres)
    rho = _check_family_rep(pres, rho)
    base = drop_redundant_relator(pres)
    lam = pres.longitude()
    xn = pres.component_meridians[pres.surgery_component]
    cols = list(range(1, pres.generator_count))
    n_idx = cols.index(xn)
    epsq = _lift(eps)
    nv = epsq.nvars
    q = LaurentPoly.variable(nv - 1, nv)
    mult = 1 if modified else q
    rows = []
    if untwisted:
        if rho.N != 1:
            raise ValueError("the untwisted path needs the trivial representation")
        for r in base.relators:
            rows.append(fox_row(r, epsq, cols))
        lrow = fox_row(lam, epsq, cols)
        srow = [mult * x for x in lrow]
        if not modified:
            srow[n_idx] = srow[n_idx] + 1
        rows.append(srow)
        return PolyMatrix(rows, nv), eps, rho, base
    N = rho.N
    for r in base.relators:
        rows.extend(fox_block_row(r, epsq, rho, cols))
    F = fox_block_row(lam, epsq, rho, cols)
    plam = rho.of_word(lam)
    r_ord = P.order(plam)
    S = [[0] * N for _ in range(N)]
    pw = P.identity(N)
    for _ in range(r_ord):
        for i in range(N):
            S[i][pw[i]] += 1
        pw = P.compose(pw, plam)
    for i in range(N):
        row = []
        for j in range(len(cols) * N):
            acc = LaurentPoly.zero(nv)
            for k in range(N):
                if S[i][k] and F[k][j]:
                    acc = acc + F[k][j] * S[i][k]
            row.append(acc * mult)
        if not modified:
            row[n_idx * N + i] = row[n_idx * N + i] + 1
        rows.append(row)
    return PolyMatrix(rows, nv), eps, rho, base


def _normalizers(pres, eps, rho, untwisted):
    if untwisted:
        if eps.nvars > 1:
            return LaurentPoly.one(eps.nvars), LaurentPoly.variable(0, eps.nvars) - 1
        return LaurentPoly.one(eps.nvars), LaurentPoly.one(eps.nvars)
    return delta0(pres, eps, rho), wada_denominator(eps, rho)


def _apply(p, num, den):
    if not p:
        return p
    try:
        return exact_div(p * num, den)
    except NotDivisibleError as exc:
        raise ConventionError(f"normalizing factor {den} does not divide {p * num}") from exc


def twist_family_polynomial(spec, rho=None, untwisted=None, q_values=()):
    """Closed form of the (twisted) Alexander polynomials of ``L(r q)``.

    Parameters
    ----------
    spec : SurgerySpec, LinkDiagram or WirtingerPresentation
        The surgery component must have zero linking number with every
        other component.
    rho : PermutationRep, optional
        Representation of the link group with the surgery meridians sent to
        the identity.  Without it the untwisted family is computed.
    untwisted : bool, optional
        Force the plain Alexander code path (default when ``rho`` is None).
    q_values : iterable of int
        Family parameters at which to tabulate ``P`` in ``per_q``.  Each
        entry is checked against the explicit presentation of ``L(r q)``.

    Returns
    -------
    TwistFamilyResult
    """
    pres = _as_presentation(spec)
    if untwisted is None:
        untwisted = rho is None
    m, eps, rho, base = family_matrix(pres, rho, untwisted=untwisted)
    raw = q_determinant(m)
    num, den = _normalizers(pres, eps, rho, untwisted)
    fam = raw.map_coeffs(lambda c: _apply(c, num, den))
    normalized, sign, shift = fam.normalized()
    N = rho.N
    mm, _, _, _ = family_matrix(pres, rho, modified=True, untwisted=untwisted)
    mod_det = determinant(mm).drop_variable(eps.nvars)
    mod_det = _apply(mod_det, num, den)
    coeff_N = fam.coefficient(N)
    if coeff_N != mod_det:
        raise ConventionError("q^N coefficient and modified-matrix determinant disagree")
    if fam.degree > N:
        raise ConventionError(f"family has q-degree {fam.degree} above the representation degree {N}")
    r_ord = longitude_order(pres, rho)
    constant = fam.degree <= 0
    result = TwistFamilyResult(
        P=normalized,
        raw=raw,
        limit_poly=canonical_form(coeff_N),
        leading_coefficient=canonical_form(fam.leading()),
        modified_determinant=canonical_form(mod_det),
        constant=constant,
        N=N,
        r=r_ord,
        factor=(num, den),
        unit=(sign, shift),
        presentation=pres,
        rho=rho,
    )
    for q in q_values:
        val = result.at(q)
        direct = explicit_member(pres, r_ord * q, None if untwisted else rho)
        if val != direct:
            raise ConventionError(f"family value at q={q} differs from the explicit surgery presentation")
        result.per_q[q] = val
    return result


def limit_polynomial(spec, rho=None):
    """Canonical coefficient of ``q^N`` of the family polynomial (may be zero)."""
    return twist_family_polynomial(spec, rho).limit_poly


def is_constant_family(spec, rho=None):
    """True when the family does not depend on ``q``.

    When ``rho`` is given the untwisted family is checked too, and a
    constant untwisted family must come with a constant twisted one.
    """
    plain = twist_family_polynomial(spec)
    if rho is None:
        return plain.constant
    tw = twist_family_polynomial(spec, rho)
    if plain.constant and not tw.constant:
        raise ConventionError("untwisted family is constant but the twisted family is not")
    return tw.constant


def explicit_member(spec, q, rho=None, raw=False):
    """(Twisted) Alexander polynomial of ``L(q)`` from the expanded relator ``lambda^q x_n``.

    Works for any linking numbers.  With ``raw=True`` returns the
    unnormalized determinant instead.
    """
    pres = _as_presentation(spec)
    rho = _check_family_rep(pres, rho)
    sp = surgery_presentation(pres, q)
    eps = surgered_augmentation(pres, q)
    D = twisted_D(sp, eps, rho)
    if raw:
        return D
    num, den = delta0(sp, eps, rho), wada_denominator(eps, rho)
    return canonical_form(_apply(D, num, den))


@dataclass
class SubstitutionFamily:
    """Family ``q -> Delta(L(r q))`` obtained by substitution into ``D(L)``."""

    D_link: LaurentPoly
    correction: LaurentPoly
    linking: tuple
    r: int
    members: dict = field(default_factory=dict)
    raw_members: dict = field(default_factory=dict)


def substitution_family(spec, q_values, rho=None):
    """Members of the family computed from the ``d+1`` variable ``D`` of ``L``.

    For each ``q`` the variable ``t_{d+1}`` is replaced by ``T^(-r q)``
    where ``T = t^lk`` is the image of the longitude, the result is
    divided by ``det(I - T rho(lambda))`` and normalized like any twisted
    Alexander polynomial of ``L(r q)``.  The division is exact: the row
    of the dropped cycle relator equals that unit-free factor times the
    surgery row modulo the other rows.
    """
    pres = _as_presentation(spec)
    rho = _check_family_rep(pres, rho)
    d = pres.component_count - 1
    eps_full = Augmentation.standard(pres)
    D_link = twisted_D(pres, eps_full, rho)
    if not D_link:
        raise PresentationError("D of the link vanishes; the substitution carries no information")
    lam = pres.longitude()
    lk = longitude_linking(pres)
    r_ord = longitude_order(pres, rho)
    T = LaurentPoly.monomial(lk)
    plam = rho.of_word(lam)
    rows = [[(1 if i == j else 0) - (T if plam[i] == j else 0) for j in range(rho.N)] for i in range(rho.N)]
    correction = determinant(PolyMatrix(rows, d))
    fam = SubstitutionFamily(D_link, correction, tuple(lk), r_ord)
    for q in q_values:
        s = r_ord * q
        image = tuple(-s * x for x in lk) + (0,)
        sub = substitute_monomial(D_link, d, image, drop=True)
        if not correction:
            raise ConventionError("correction factor vanishes")
        try:
            Dq = exact_div(sub, correction)
        except NotDivisibleError as exc:
            raise ConventionError(f"correction factor {correction} does not divide the substituted D") from exc
        eps = surgered_augmentation(pres, s)
        num, den = delta0(pres, eps, rho), wada_denominator(eps, rho)
        fam.raw_members[q] = Dq
        fam.members[q] = canonical_form(_apply(Dq, num, den))
    return fam
