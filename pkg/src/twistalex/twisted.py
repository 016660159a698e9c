"""Permutation representations and twisted Alexander polynomials.

A permutation representation ``rho`` sends each Wirtinger generator to a
permutation of ``N`` symbols.  Together with an abelianization ``eps`` it
gives the tensor representation ``eps (x) rho`` into N x N matrices over
the Laurent ring, under which the Fox Jacobian becomes the twisted
Alexander matrix.

The twisted Alexander polynomial reported here is

    Delta^rho = D * Delta0 / det(I - t1 rho(x0))

where ``D`` is the determinant (or maximal-minor gcd) of the twisted
matrix with the ``x0`` block column removed, and ``Delta0`` is the order
of the zeroth twisted homology module.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from . import perms as P
from .alexander import Augmentation, hermite_basis
from .errors import ConventionError, NotDivisibleError, ParseError, RepresentationError
from .fox import GroupRingElem, Word, eps_rho_apply, fox_block_row
from .laurent import LaurentPoly, canonical_form, exact_div, gcd
from .matrix import PolyMatrix, determinant, minors_gcd


@dataclass(frozen=True)
class PermutationRep:
    """Images of the generators as permutations of ``range(N)``."""

    images: tuple
    N: int

    def __post_init__(self):
        for p in self.images:
            if len(p) != self.N or sorted(p) != list(range(self.N)):
                raise RepresentationError(f"{p} is not a permutation of {self.N} symbols")

    def of_word(self, word):
        g = P.identity(self.N)
        for x, s in word.letters:
            g = P.compose(g, self.images[x] if s > 0 else P.inverse(self.images[x]))
        return g

    def is_transitive(self):
        parent = list(range(self.N))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for p in self.images:
            for i, j in enumerate(p):
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
        return len({find(i) for i in range(self.N)}) == 1

    def conjugate(self, sigma):
        """The representation ``x -> sigma^-1 rho(x) sigma`` (symbols relabelled by sigma)."""
        inv = P.inverse(sigma)
        return PermutationRep(tuple(P.compose(P.compose(inv, p), sigma) for p in self.images), self.N)

    def permutation_matrix(self, g, nvars=1):
        p = self.images[g]
        return PolyMatrix([[1 if p[i] == j else 0 for j in range(self.N)] for i in range(self.N)], nvars)

    def to_text(self):
        return "; ".join(f"x{g}={P.to_cycle_text(p)}" for g, p in enumerate(self.images))

    def __str__(self):
        return self.to_text()


def trivial_rep(pres, N=1):
    return PermutationRep(tuple(P.identity(N) for _ in range(pres.generator_count)), N)


def _relators_for_validation(pres):
    rels = list(pres.all_crossing_relators())
    for r, c in zip(pres.relators, pres.relator_crossings):
        if c is None:
            rels.append(r)
    return rels


def validate_rep(pres, rho):
    """Indices of relators (crossing relators first, then extra ones) violated by ``rho``."""
    if len(rho.images) != pres.generator_count:
        raise RepresentationError(f"representation has {len(rho.images)} images, presentation has "
                                  f"{pres.generator_count} generators")
    ident = P.identity(rho.N)
    return [k for k, r in enumerate(_relators_for_validation(pres)) if rho.of_word(r) != ident]


def check_rep(pres, rho):
    bad = validate_rep(pres, rho)
    if bad:
        raise RepresentationError(f"relator {bad[0]} is not satisfied (violations: {bad})")
    return rho


def _propagate(pres, assign):
    """Fill in images forced by the crossing relations; return False on a conflict."""
    data = pres.crossing_data
    changed = True
    while changed:
        changed = False
        for a, b, o, s in data:
            po = assign[o]
            if po is None:
                continue
            pa, pb = assign[a], assign[b]
            if pa is None and pb is None:
                continue
            os_ = P.power(po, s)
            oi = P.inverse(os_)
            if pa is not None:
                want_b = P.compose(P.compose(oi, pa), os_)
                if pb is None:
                    assign[b] = want_b
                    changed = True
                elif pb != want_b:
                    return False
            else:
                assign[a] = P.compose(P.compose(os_, pb), oi)
                changed = True
    return True


def complete_rep(pres, partial, N):
    """Complete a partial assignment ``{generator: perm}`` using the relations."""
    assign = [None] * pres.generator_count
    for g, p in partial.items():
        if not 0 <= g < pres.generator_count:
            raise RepresentationError(f"generator x{g} does not exist")
        assign[g] = tuple(p)
    if not _propagate(pres, assign):
        raise RepresentationError("the given images contradict a crossing relation")
    missing = [g for g, p in enumerate(assign) if p is None]
    if missing:
        raise RepresentationError(f"images of {', '.join(f'x{g}' for g in missing)} are not determined")
    rho = PermutationRep(tuple(assign), N)
    return check_rep(pres, rho)


def parse_rep(text, pres, N=None):
    """Parse ``"x0=(1 2 3 4 5); x1=(1 3 5 4 2)"`` and complete it by propagation.

    Symbols are 1-based.  ``N`` defaults to the largest symbol mentioned;
    an optional item ``N=5`` sets it explicitly.
    """
    items = [s.strip() for s in re.split(r"[;\n]", text) if s.strip()]
    raw = {}
    for item in items:
        m = re.fullmatch(r"N\s*=\s*(\d+)", item)
        if m:
            N = int(m.group(1))
            continue
        m = re.fullmatch(r"x(\d+)\s*=\s*(.*)", item)
        if not m:
            raise ParseError("expected items of the form xK=(cycles)", text, text.find(item), "xK=(a b c)")
        raw[int(m.group(1))] = m.group(2)
    if not raw:
        raise ParseError("no generator images given", text, 0, "xK=(cycles)")
    if N is None:
        syms = [int(v) for body in raw.values() for v in re.findall(r"\d+", body)]
        N = max(syms) if syms else 1
    partial = {g: P.parse_cycles(body, N) for g, body in raw.items()}
    return complete_rep(pres, partial, N)


def enumerate_permutation_reps(pres, N, max_results=None, transitive=False, fixed=None,
                               up_to_first_conjugacy=False):
    """Enumerate representations of the presented group into S_N.

    Parameters
    ----------
    pres : WirtingerPresentation
    N : int
    max_results : int, optional
        Stop after this many.
    transitive : bool
        Keep only representations whose image acts transitively.
    fixed : dict, optional
        Generator images that are prescribed (for example the identity on
        meridians of a surgery component).
    up_to_first_conjugacy : bool
        Restrict the first free generator to one representative per cycle
        type.  Every representation is conjugate to one that is listed, so
        this thins out conjugates without losing any class; it is only
        applied when all prescribed images are the identity.

    Returns
    -------
    list of PermutationRep
        In a deterministic order.
    """
    fixed = dict(fixed or {})
    n = pres.generator_count
    ident = P.identity(N)
    all_perms = list(itertools.permutations(range(N)))
    by_type = {}
    for p in all_perms:
        by_type.setdefault(P.cycle_type(p), []).append(p)
    reps_by_type = {ct: [P.conjugacy_representative(ct)] for ct in by_type}
    extra = [r for r, c in zip(pres.relators, pres.relator_crossings) if c is None]
    rels = pres.all_crossing_relators() + extra
    normalize = up_to_first_conjugacy and all(p == ident for p in fixed.values())
    comp = pres.generator_component
    results = []

    assign0 = [None] * n
    for g, p in fixed.items():
        assign0[g] = tuple(p)
    if not _propagate(pres, assign0):
        return []

    first_free = [True]

    def rec(assign):
        if max_results is not None and len(results) >= max_results:
            return
        try:
            g = assign.index(None)
        except ValueError:
            rho = PermutationRep(tuple(assign), N)
            if any(rho.of_word(r) != ident for r in rels):
                return
            if transitive and not rho.is_transitive():
                return
            results.append(rho)
            return
        ctype = None
        for h, p in enumerate(assign):
            if p is not None and comp[h] == comp[g]:
                ctype = P.cycle_type(p)
                break
        if normalize and first_free[0]:
            first_free[0] = False
            cands = [r for ct, rs in reps_by_type.items() if ctype is None or ct == ctype for r in rs]
            cands.sort()
        else:
            cands = by_type[ctype] if ctype is not None else all_perms
        for p in cands:
            trial = list(assign)
            trial[g] = p
            if _propagate(pres, trial):
                ok = True
                for h, q in enumerate(trial):
                    if q is not None and comp[h] == comp[g] and P.cycle_type(q) != P.cycle_type(p):
                        ok = False
                        break
                if ok:
                    rec(trial)
            if max_results is not None and len(results) >= max_results:
                return

    rec(assign0)
    return results


# -- twisted matrices and polynomials -------------------------------------------

def twisted_matrix(pres, eps, rho, relators=None):
    """Twisted Alexander matrix: block rows per relator, block columns ``x1..xn``."""
    first = eps.images[0]
    if first != tuple(1 if i == 0 else 0 for i in range(eps.nvars)):
        raise ConventionError("the dropped generator x0 must map to t1")
    relators = pres.relators if relators is None else relators
    cols = list(range(1, pres.generator_count))
    rows = []
    for r in relators:
        rows.extend(fox_block_row(r, eps, rho, cols))
    return PolyMatrix(rows, eps.nvars) if rows else PolyMatrix([], eps.nvars)


def twisted_D(pres, eps, rho, relators=None):
    """Determinant of the twisted matrix, or the gcd of its maximal minors if not square."""
    m = twisted_matrix(pres, eps, rho, relators)
    if m.nrows == 0 and m.ncols == 0:
        return LaurentPoly.one(eps.nvars)
    if m.nrows == m.ncols:
        return determinant(m)
    if m.nrows < m.ncols:
        return LaurentPoly.zero(eps.nvars)
    return minors_gcd(m, m.ncols)


alexander_lin_D = twisted_D


def wada_denominator(eps, rho):
    """``det(I - t1 rho(x0))`` computed as a determinant."""
    nv = eps.nvars
    t1 = LaurentPoly.variable(0, nv)
    p = rho.images[0]
    rows = [[(1 if i == j else 0) - (t1 if p[i] == j else 0) for j in range(rho.N)] for i in range(rho.N)]
    return determinant(PolyMatrix(rows, nv))


def wada_invariant(pres, eps, rho, relators=None):
    """The pair ``(D, det(I - t1 rho(x0)))``."""
    return twisted_D(pres, eps, rho, relators), wada_denominator(eps, rho)


def _binomial(v, nvars):
    return LaurentPoly.monomial(v) - 1


def delta0(pres, eps, rho):
    """Order of the zeroth twisted homology module, by presentation reduction.

    The module is generated by basis vectors ``e_i`` subject to
    ``e_i = t^eps(x) e_rho(x)(i)`` for every generator ``x``.  A spanning
    tree of each orbit expresses every ``e_i`` through the orbit root;
    the leftover relations say ``(t^v - 1) e_root = 0`` for a set of
    exponent vectors ``v``.  The order of the orbit summand is the gcd of
    those binomials over a lattice basis, and the total is the product
    over orbits.
    """
    nv = eps.nvars
    total = LaurentPoly.one(nv)
    seen = set()
    gens = range(len(rho.images))
    for root in range(rho.N):
        if root in seen:
            continue
        pos = {root: (0,) * nv}
        queue = [root]
        diffs = []
        while queue:
            i = queue.pop(0)
            ci = pos[i]
            for g in gens:
                j = rho.images[g][i]
                a = eps.images[g]
                if j not in pos:
                    pos[j] = tuple(x - y for x, y in zip(ci, a))
                    queue.append(j)
                else:
                    v = tuple(x + y - z for x, y, z in zip(a, pos[j], ci))
                    if any(v):
                        diffs.append(v)
        seen.update(pos)
        basis = [b for _, b in hermite_basis(diffs, nv)]
        g = LaurentPoly.zero(nv)
        for b in basis:
            g = gcd(g, _binomial(b, nv))
        total = total * g
    return canonical_form(total)


def delta0_from_minors(pres, eps, rho):
    """Literal definition: gcd of N x N minors of the stacked ``(eps (x) rho)(x_j) - I``."""
    nv = eps.nvars
    rows = []
    ident = PolyMatrix.identity(rho.N, nv)
    for g in range(pres.generator_count):
        m = eps_rho_apply(GroupRingElem.from_word(Word.gen(g)), eps, rho) - ident
        rows.extend(m.rows)
    return minors_gcd(PolyMatrix(rows, nv), rho.N)


def twisted_alexander_polynomial(pres, eps=None, rho=None, relators=None, return_parts=False):
    """``D * Delta0 / det(I - t1 rho(x0))`` in canonical form.

    With ``return_parts=True`` also returns a dict holding ``D``,
    ``Delta0`` and the denominator.
    """
    eps = eps or Augmentation.standard(pres)
    rho = rho or trivial_rep(pres)
    D = twisted_D(pres, eps, rho, relators)
    d0 = delta0(pres, eps, rho)
    den = wada_denominator(eps, rho)
    try:
        poly = exact_div(D * d0, den) if D else D
    except NotDivisibleError as exc:
        raise ConventionError(f"denominator {den} does not divide D * Delta0") from exc
    poly = canonical_form(poly)
    if return_parts:
        return poly, {"D": D, "Delta0": d0, "denominator": den}
    return poly
