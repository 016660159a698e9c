"""Alexander matrices and (multivariable) Alexander polynomials.

For a presentation with generators ``x0..xn`` and abelianization
``eps`` onto Z^d, the Alexander matrix has one row per relator and one
column per generator ``x1..xn``; the column of ``x0`` is dropped.  With
``eps(x0) = t1`` the first polynomial is the gcd of the maximal minors,
divided by ``t1 - 1`` when ``d > 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ConventionError, NotDivisibleError, PresentationError
from .fox import fox_row, word_image
from .laurent import LaurentPoly, canonical_form, exact_div
from .matrix import PolyMatrix, determinant, minors_gcd


@dataclass(frozen=True)
class Augmentation:
    """Homomorphism from the free group on the generators onto Z^nvars.

    ``images[g]`` is the exponent vector of generator ``g``.
    """

    images: tuple
    nvars: int

    def __post_init__(self):
        for im in self.images:
            if len(im) != self.nvars:
                raise ValueError("every image needs nvars entries")

    @classmethod
    def standard(cls, pres, surgery_image=None):
        """Meridians of component i go to t_(i+1).

        With ``surgery_image`` set, meridians of the last (surgery)
        component go to that exponent vector instead and the ring has one
        variable fewer.
        """
        c = pres.component_count
        if surgery_image is None:
            nv = c
            imgs = [tuple(1 if i == comp else 0 for i in range(nv)) for comp in pres.generator_component]
        else:
            nv = c - 1
            surgery_image = tuple(int(x) for x in surgery_image)
            if len(surgery_image) != nv:
                raise ValueError("surgery image must have one entry per remaining component")
            imgs = [surgery_image if comp == c - 1 else tuple(1 if i == comp else 0 for i in range(nv))
                    for comp in pres.generator_component]
        return cls(tuple(imgs), nv)

    def image(self, word):
        return word_image(word, self)

    def monomial(self, word):
        return LaurentPoly.monomial(self.image(word))

    def is_surjective(self):
        return lattice_index(self.images, self.nvars) == 1


def hermite_basis(vectors, dim):
    """Echelon basis (one pivot column per vector) of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for col in range(dim):
        nz = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not nz:
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            keep = [piv]
            for r in nz[1:]:
                f = r[col] // piv[col]
                r = [a - f * b for a, b in zip(r, piv)]
                if r[col]:
                    keep.append(r)
                elif any(r):
                    rest.append(r)
            nz = keep
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append((col, tuple(piv)))
        rows = rest
    return basis


def lattice_index(vectors, dim):
    """Index of the lattice spanned by ``vectors`` in Z^dim (0 if rank < dim)."""
    basis = hermite_basis(vectors, dim)
    if len(basis) < dim:
        return 0
    idx = 1
    for col, b in basis:
        idx *= b[col]
    return idx


def alexander_matrix(pres, eps=None, relators=None):
    """Alexander matrix with columns ``x1..xn`` (the ``x0`` column dropped)."""
    eps = eps or Augmentation.standard(pres)
    first = eps.images[0]
    if first != tuple(1 if i == 0 else 0 for i in range(eps.nvars)):
        raise ConventionError("the dropped generator x0 must map to t1")
    relators = pres.relators if relators is None else relators
    cols = list(range(1, pres.generator_count))
    rows = [fox_row(r, eps, cols) for r in relators]
    return PolyMatrix(rows, eps.nvars) if rows else PolyMatrix([], eps.nvars)


def _divide_t1_minus_1(p, nvars):
    t1m1 = LaurentPoly.variable(0, nvars) - 1
    try:
        return exact_div(p, t1m1)
    except NotDivisibleError as exc:
        raise ConventionError(f"expected t1 - 1 to divide {p}") from exc


def matrix_order(m, k=0):
    """Gcd of the (ncols - k)-minors, i.e. the order-type invariant of the matrix."""
    size = m.ncols - k
    if size <= 0:
        return LaurentPoly.one(m.nvars)
    if size > m.nrows:
        return LaurentPoly.zero(m.nvars)
    if m.nrows == m.ncols and k == 0:
        return determinant(m)
    return minors_gcd(m, size)


def alexander_polynomial(pres, eps=None, k=0, relators=None):
    """k-th Alexander polynomial, canonical form.

    ``k = 0`` is the usual (multivariable) Alexander polynomial.  Zero is
    returned when all relevant minors vanish (e.g. split links).
    """
    eps = eps or Augmentation.standard(pres)
    m = alexander_matrix(pres, eps, relators)
    if m.nrows == 0 and m.ncols == 0:
        g = LaurentPoly.one(eps.nvars)
    else:
        g = matrix_order(m, k)
    if g and eps.nvars > 1:
        g = _divide_t1_minus_1(g, eps.nvars)
    return canonical_form(g)


def raw_determinant(pres, eps=None, relators=None):
    """Determinant of the square Alexander matrix, with no normalization."""
    m = alexander_matrix(pres, eps, relators)
    if m.nrows != m.ncols:
        raise PresentationError(f"Alexander matrix is {m.nrows}x{m.ncols}, not square")
    if m.nrows == 0:
        return LaurentPoly.one((eps or Augmentation.standard(pres)).nvars)
    return determinant(m)


def alexander_of(diagram, k=0):
    """Alexander polynomial of a diagram with the standard augmentation."""
    from .links import wirtinger
    pres = wirtinger(diagram)
    return alexander_polynomial(pres, Augmentation.standard(pres), k)
