"""Mahler measures, family sweeps and cyclic cover torsion.

For a nonzero integer polynomial ``f`` in one variable,
``M(f) = |c| prod max(1, |r_i|)`` over its complex roots (Jensen's
formula).  Several variables are handled either by Lawton's reduction
``t_i -> t^(K^i)`` with growing ``K`` or by integrating the one-variable
measure over a torus grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import kernels
from .cyclotomic import cyclotomic_dense
from .errors import ConvergenceError, NotDivisibleError
from .laurent import LaurentPoly, dense_divmod_exact

DEFAULT_SEED = 20240601
LAWTON_STEPS = (10, 30, 100, 300, 1000, 3000, 10000)
MAX_LAWTON_DEGREE = 40000


@dataclass
class MahlerEstimate:
    """Numerical Mahler measure.

    ``error_bound`` is heuristic.  ``method`` is one of ``"jensen-roots"``,
    ``"lawton(K)"`` or ``"quadrature"``.
    """

    value: float
    error_bound: float
    method: str
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError("a Mahler measure is nonnegative")

    def __float__(self):
        return float(self.value)

    def to_json(self):
        return {"value": self.value, "error_bound": self.error_bound, "method": self.method}


# -- one variable ---------------------------------------------------------------

def _derivative(a):
    return [k * c for k, c in enumerate(a)][1:]


def squarefree_parts(a):
    """Yun decomposition of an ascending int list: ``[(s_1, 1), (s_2, 2), ...]`` with ``a ~ prod s_i^i``.

    The parts are primitive integer polynomials; content and sign are dropped.
    """
    out = []
    if len(a) <= 1:
        return out
    f = [Fraction(x) for x in a]
    df = _derivative(f)
    g = _gcd_q(f, df)
    b = _div_q(f, g)
    d = _sub(_div_q(df, g), _derivative(b))
    i = 1
    while len(b) > 1:
        h = _gcd_q(b, d)
        b = _div_q(b, h)
        if len(h) > 1:
            out.append((_to_int(h), i))
        c = _div_q(d, h)
        d = _sub(c, _derivative(b))
        i += 1
    return out


_SQUAREFREE_PRIMES = (2147483629, 2147483587, 2147483579)


def _poly_rem_mod(a, b, p):
    """Remainder of ascending int64 arrays modulo the prime ``p`` (b monic)."""
    a = a.copy()
    nb = len(b) - 1
    for k in range(len(a) - 1, nb - 1, -1):
        c = a[k]
        if c:
            a[k - nb:k + 1] = (a[k - nb:k + 1] - c * b) % p
    a = a[:nb]
    nz = np.nonzero(a)[0]
    return a[:nz[-1] + 1] if len(nz) else a[:0]


def _monic_mod(a, p):
    inv = pow(int(a[-1]), p - 2, p)
    return (a * inv) % p


def is_squarefree(coeffs):
    """Exact test that an int polynomial has no repeated factor.

    Computes ``gcd(f, f')`` modulo a 31-bit prime not dividing the leading
    coefficient; a trivial gcd there proves ``f`` squarefree over Q.  A
    nontrivial one is confirmed by the exact decomposition.
    """
    if len(coeffs) <= 2:
        return True
    for p in _SQUAREFREE_PRIMES:
        if coeffs[-1] % p == 0 or len(coeffs) >= p:
            continue
        f = np.array([int(c) % p for c in coeffs], dtype=np.int64)
        df = np.array([(k * int(c)) % p for k, c in enumerate(coeffs)][1:], dtype=np.int64)
        a, b = _monic_mod(f, p), df
        nz = np.nonzero(b)[0]
        b = b[:nz[-1] + 1]
        while len(b) > 1:
            b = _monic_mod(b, p)
            a, b = b, _poly_rem_mod(a, b, p)
        if len(b) == 1:
            return True
        break
    return not any(m > 1 for _, m in squarefree_parts(coeffs))


def _primitive(a):
    g = 0
    for x in a:
        g = math.gcd(g, x)
    g = g or 1
    if a and a[-1] < 0:
        g = -g
    return [x // g for x in a]


def _to_int(a):
    den = 1
    for x in a:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return _primitive([int(x * den) for x in a])


def _sub(a, b):
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _divmod_q(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _div_q(a, b):
    q, r = _divmod_q(a, b)
    if r:
        raise ArithmeticError("inexact division in squarefree decomposition")
    while q and q[-1] == 0:
        q.pop()
    return q


def _gcd_q(a, b):
    while b:
        _, r = _divmod_q(a, b)
        a, b = b, r
    return [x / a[-1] for x in a]


def strip_cyclotomic(coeffs, orders):
    """Divide out ``Phi_n`` (with multiplicity) for each ``n`` in ``orders``.

    Returns ``(remaining coefficients, {n: multiplicity})``.
    """
    found = {}
    for n in sorted(set(orders)):
        phi = list(cyclotomic_dense(n))
        while len(coeffs) >= len(phi):
            try:
                coeffs = dense_divmod_exact(coeffs, phi)
            except NotDivisibleError:
                break
            found[n] = found.get(n, 0) + 1
    return coeffs, found


def _initial_points(coeffs, rng):
    n = len(coeffs) - 1
    a = np.abs(np.asarray(coeffs, dtype=float))
    # radius from the geometric mean of root moduli: |c0/cn|^(1/n)
    r = (a[0] / a[-1]) ** (1.0 / n) if a[0] > 0 else 1.0
    phase = rng.uniform(0, 2 * np.pi)
    k = np.arange(n)
    return r * np.exp(1j * (2 * np.pi * k / n + phase + 0.4))


def _roots(coeffs, rng, tol=1e-14, strict=True):
    """All complex roots of an int polynomial (ascending coefficients).

    Returns ``(roots, last corrections, converged)``; with ``strict`` a
    failure to converge raises ConvergenceError.
    """
    n = len(coeffs) - 1
    if n == 0:
        return np.zeros(0, dtype=complex), np.zeros(0), True
    if n == 1:
        return np.array([complex(-coeffs[0] / coeffs[1])]), np.zeros(1), True
    c = np.asarray([float(x) for x in coeffs], dtype=complex)
    z0 = _initial_points(coeffs, rng)
    z, _, ok, corr = kernels.aberth(c, z0, 2000, tol)
    if not ok and n <= 400:
        z0 = np.roots(c[::-1])
        z0 = z0 + 1e-9 * rng.standard_normal(len(z0))
        z, _, ok, corr = kernels.aberth(c, z0, 2000, tol)
    if not ok and strict:
        raise ConvergenceError(f"root finder did not converge on a degree {n} polynomial")
    return np.asarray(z), np.asarray(corr), ok


def _mp_newton(poly, x, dps, maxiter=200):
    eps = mpmath.mpf(2) ** (-int(dps * 3.3) + 20)
    for _ in range(maxiter):
        f, df = mpmath.polyval(poly, x, derivative=True)
        if df == 0:
            break
        step = f / df
        x -= step
        if abs(step) <= eps * max(1, abs(x)):
            break
    return x


def _polish_near_unit(coeffs, z, dps_start=30, max_dps=960):
    """Decide ``|r| > 1`` for roots close to the unit circle at doubling precision.

    Each root gets a three-way verdict (inside, outside, on the circle to
    working precision); precision doubles until two consecutive verdicts
    agree.  Returns the list of ``log max(1, |r|)`` contributions.
    """
    out = []
    for r in z:
        dps = dps_start
        prev = None
        val = 0.0
        while dps <= max_dps:
            with mpmath.workdps(dps):
                poly = [mpmath.mpf(int(x)) for x in reversed(coeffs)]
                root = _mp_newton(poly, mpmath.mpc(r), dps)
                mod = abs(root)
                if abs(mod - 1) < mpmath.mpf(10) ** (-dps // 2):
                    decision = 0
                else:
                    decision = 1 if mod > 1 else -1
                val = float(mpmath.log(mod)) if decision > 0 else 0.0
            if decision == prev:
                break
            prev = decision
            dps *= 2
        out.append(val)
    return out


def _condition(coeffs, z):
    """First-order forward error estimate of each simple root computed in double precision."""
    c = np.asarray([float(x) for x in coeffs])
    a = np.abs(c)[::-1]
    dc = np.polyder(c[::-1])
    num = np.polyval(a, np.abs(z))
    den = np.abs(np.polyval(dc, z))
    with np.errstate(divide="ignore"):
        return np.where(den > 0, 2.2e-16 * num / den, np.inf)


def _root_log_sum(part, rng, near_unit, found_roots=None):
    """``sum log max(1, |r|)`` over the roots of a squarefree int polynomial.

    A root counts as ambiguous when its distance to the unit circle is
    below its estimated forward error and that error exceeds
    ``near_unit``.  Ambiguous roots that are roots of unity are divided out
    exactly; the others are refined at doubling precision.

    Returns ``(sum, error, {n: multiplicity of Phi_n removed})``.
    """
    if found_roots is None:
        z, corr, _ = _roots(part, rng)
        cond = _condition(part, z) if len(z) else np.zeros(0)
    else:
        z, corr, cond = found_roots
    mod = np.abs(z)
    dist = np.abs(mod - 1)
    window = 100 * cond
    ambiguous = (dist < window) & (window > near_unit)
    if np.any(ambiguous):
        orders = set()
        limit = 7 * (len(part) - 1) + 10
        for r in z[ambiguous]:
            x = float(np.angle(r) / (2 * np.pi)) % 1.0
            frac = Fraction(x).limit_denominator(limit)
            if abs(float(frac) - x) < 1e-10:
                orders.add(frac.denominator)
        if orders:
            rest, found = strip_cyclotomic(list(part), orders)
            if found:
                total, err, more = _root_log_sum(rest, rng, near_unit) if len(rest) > 1 else (0.0, 0.0, {})
                for n, k in more.items():
                    found[n] = found.get(n, 0) + k
                return total, err, found
        clear = ~ambiguous
        total = float(np.sum(np.log(np.maximum(mod[clear], 1.0))))
        total += float(sum(_polish_near_unit(part, z[ambiguous])))
    else:
        total = float(np.sum(np.log(np.maximum(mod, 1.0))))
    big = mod > 1
    err = float(np.sum(corr[big] / mod[big])) if np.any(big) else 0.0
    err += float(np.sum(np.minimum(cond[big & ~ambiguous], 1.0)))
    return total, err, {}


def mahler_univariate(p, d=1, seed=DEFAULT_SEED, near_unit=1e-12):
    """Mahler measure of a one-variable polynomial by root finding.

    Parameters
    ----------
    p : LaurentPoly or sequence of ints
        Ascending coefficient lists are accepted directly.
    d : int
        Number of ring variables (``p`` must involve at most one of them).
    seed : int
        Seed for the root finder's starting points.
    near_unit : float
        Roots whose modulus may be on the wrong side of 1 by more than
        this are re-examined: roots of unity are divided out exactly,
        others are refined at doubling precision.

    Notes
    -----
    An exact modular test decides whether the polynomial is squarefree.
    If it is, its roots are computed directly; otherwise the exact
    squarefree decomposition is computed and each part handled separately.
    """
    if isinstance(p, LaurentPoly):
        if p.is_zero():
            return MahlerEstimate(0.0, 0.0, "jensen-roots")
        if len(p.support_vars()) > 1:
            raise ValueError("polynomial involves more than one variable; use mahler_multivariate")
        coeffs, _ = p.to_dense()
    else:
        coeffs = [int(x) for x in p]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            return MahlerEstimate(0.0, 0.0, "jensen-roots")
        while coeffs[0] == 0:
            coeffs = coeffs[1:]
    rng = np.random.default_rng(seed)
    log_m = math.log(abs(coeffs[-1]))
    err = 0.0
    removed = {}
    if len(coeffs) > 1:
        coeffs, removed = strip_cyclotomic(coeffs, (1, 2))
    parts = None
    first = None
    if len(coeffs) > 1:
        if is_squarefree(coeffs):
            parts = [(coeffs, 1)]
            z, corr, ok = _roots(coeffs, rng, strict=False)
            if ok:
                first = (z, corr, _condition(coeffs, z))
        else:
            parts = squarefree_parts(coeffs)
    for part, mult in parts or ():
        total, e, found = _root_log_sum(part, rng, near_unit, first if mult == 1 and part is coeffs else None)
        log_m += mult * total
        err += mult * e
        for n, k in found.items():
            removed[n] = removed.get(n, 0) + k * mult
    value = math.exp(log_m)
    err_abs = value * (err + 1e-13 * max(1, len(coeffs)))
    return MahlerEstimate(value, err_abs, "jensen-roots", {"cyclotomic_factors": removed})


def mahler_rational(num, den, **kw):
    """``M(num) / M(den)`` for a rational function such as the Wada invariant."""
    a = mahler(num, **kw)
    b = mahler(den, **kw)
    if b.value == 0:
        raise ZeroDivisionError("denominator has zero Mahler measure")
    v = a.value / b.value
    return MahlerEstimate(v, v * (a.error_bound / max(a.value, 1e-300) + b.error_bound / b.value), a.method)


# -- several variables -------------------------------------------------------------

def lawton_substitute(p, K):
    """One-variable polynomial ``p(t, t^K, t^(K^2), ...)`` over the used variables."""
    used = sorted(p.support_vars())
    images = [(0,)] * p.nvars
    for i, v in enumerate(used):
        images[v] = (K ** i,)
    return p.monomial_map(images, 1)


def _mahler_lawton(p, tol, seed, steps):
    prev = None
    history = []
    for K in steps:
        u = lawton_substitute(p, K)
        if u.is_zero():
            continue
        coeffs, _ = u.to_dense()
        if len(coeffs) - 1 > MAX_LAWTON_DEGREE:
            break
        est = mahler_univariate(u, seed=seed)
        history.append((K, est.value))
        if prev is not None and abs(est.value - prev) < tol:
            return MahlerEstimate(est.value, abs(est.value - prev), f"lawton({K})", {"history": history})
        prev = est.value
    raise ConvergenceError(f"Lawton estimates did not settle within {tol}: {history}")


def _coeff_arrays(p, main):
    """Coefficients of ``p`` as a polynomial in ``t_main`` with exponent lists over the others."""
    others = [i for i in range(p.nvars) if i != main]
    lo = min(e[main] for e in p.terms)
    hi = max(e[main] for e in p.terms)
    slots = [[] for _ in range(hi - lo + 1)]
    for e, c in p.items():
        slots[e[main] - lo].append((tuple(e[i] for i in others), c))
    return slots, len(others)


def _grid_mean_log(p, n, main):
    """Mean of ``log M_main(p)`` over the offset midpoint grid of size ``n`` in the other variables."""
    slots, k = _coeff_arrays(p, main)
    axes = [(np.arange(n) + 0.5) / n * 2 * np.pi for _ in range(k)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = [m.ravel() for m in mesh]
    npts = pts[0].size
    deg = len(slots) - 1
    C = np.zeros((npts, deg + 1), dtype=complex)
    for j, terms in enumerate(slots):
        for e, c in terms:
            phase = np.zeros(npts)
            for a, th in zip(e, pts):
                if a:
                    phase += a * th
            C[:, j] += c * np.exp(1j * phase)
    lead = C[:, -1]
    total = np.log(np.abs(lead))
    if deg > 0:
        comp = np.zeros((npts, deg, deg), dtype=complex)
        comp[:, 1:, :-1] = np.eye(deg - 1)
        comp[:, :, -1] = -C[:, :-1] / lead[:, None]
        roots = np.linalg.eigvals(comp)
        total = total + np.sum(np.log(np.maximum(np.abs(roots), 1.0)), axis=1)
    return float(np.mean(total))


def _mahler_quadrature(p, tol, n0=64, nmax=4096):
    used = sorted(p.support_vars())
    degs = [p.degree(i) for i in used]
    main = used[int(np.argmax(degs))]
    k = len(used) - 1
    cap = nmax if k == 1 else max(32, int(round(2e6 ** (1.0 / k))))
    n = n0
    prev = _grid_mean_log(p, n, main)
    history = [(n, math.exp(prev))]
    while n < cap:
        n *= 2
        cur = _grid_mean_log(p, n, main)
        history.append((n, math.exp(cur)))
        if abs(cur - prev) < tol:
            v = math.exp(cur)
            return MahlerEstimate(v, v * max(abs(cur - prev), 1e-12), "quadrature", {"history": history})
        prev = cur
    raise ConvergenceError(f"quadrature did not settle within {tol}: {history}")


def mahler_multivariate(p, method="lawton", tol=1e-4, seed=DEFAULT_SEED, steps=LAWTON_STEPS):
    """Mahler measure of a Laurent polynomial in any number of variables.

    Parameters
    ----------
    method : {"lawton", "quadrature"}
    tol : float
        Convergence threshold on consecutive estimates (Lawton) or
        consecutive grid refinements of ``log M`` (quadrature).
    """
    if p.is_zero():
        return MahlerEstimate(0.0, 0.0, method)
    used = p.support_vars()
    if len(used) <= 1:
        if not used:
            return MahlerEstimate(float(abs(p.constant_value())), 0.0, "jensen-roots")
        return mahler_univariate(p.monomial_map([(1,) if i in used else (0,) for i in range(p.nvars)], 1), seed=seed)
    if method == "lawton":
        return _mahler_lawton(p, tol, seed, steps)
    if method == "quadrature":
        return _mahler_quadrature(p, tol)
    raise ValueError(f"unknown method {method!r}")


def mahler(p, method="lawton", tol=1e-4, seed=DEFAULT_SEED):
    """Dispatch on the number of variables actually used."""
    if not isinstance(p, LaurentPoly):
        return mahler_univariate(p, seed=seed)
    return mahler_multivariate(p, method=method, tol=tol, seed=seed)


# -- family sweeps -------------------------------------------------------------------

@dataclass
class SweepResult:
    """Per-q Mahler measures of a family and the limit diagnostics.

    ``rows`` holds ``(q, polynomial, M)``.  For a zero-linking family
    ``scaled`` holds ``M / q^N`` and ``target`` is ``M`` of the limit
    polynomial; otherwise ``target`` is ``M`` of the link's polynomial.
    """

    rows: list
    target: float
    gaps: list
    scaled: list = field(default_factory=list)
    monotone_tail: bool = False
    kind: str = ""

    @property
    def final_gap(self):
        return self.gaps[-1] if self.gaps else float("nan")

    def to_json(self):
        return {
            "rows": [{"q": q, "polynomial": str(poly), "mahler": m} for q, poly, m in self.rows],
            "target": self.target,
            "gaps": self.gaps,
            "scaled": self.scaled,
            "monotone_tail": self.monotone_tail,
            "kind": self.kind,
        }


def _tail_monotone(gaps, k=5):
    tail = gaps[-k:]
    return all(b <= a + 1e-12 for a, b in zip(tail, tail[1:]))


def family_mahler_sweep(family, q_values, method="lawton", seed=DEFAULT_SEED, target=None):
    """Mahler measures along a twist family.

    ``family`` is a :class:`~twistalex.family.TwistFamilyResult` (zero
    linking: the measures of ``Delta(L(q)) / q^N`` approach the measure of
    the limit polynomial) or a :class:`~twistalex.family.SubstitutionFamily`
    (the measures approach that of ``D`` of the full link).  The
    substitution family must already contain the requested ``q``.
    """
    from .family import SubstitutionFamily, TwistFamilyResult

    rows = []
    if isinstance(family, TwistFamilyResult):
        if target is None:
            lim = family.limit_poly
            target = mahler(lim, method=method, seed=seed).value if lim else 0.0
        scaled = []
        gaps = []
        for q in q_values:
            poly = family.at(q)
            m = mahler(poly, method=method, seed=seed).value if poly else 0.0
            rows.append((q, poly, m))
            s = m / abs(q) ** family.N if q else float("nan")
            scaled.append(s)
            gaps.append(abs(s - target))
        return SweepResult(rows, target, gaps, scaled, _tail_monotone(gaps), "zero-linking")
    if isinstance(family, SubstitutionFamily):
        if target is None:
            target = mahler(family.D_link, method=method, seed=seed).value
        gaps = []
        for q in q_values:
            poly = family.members[q]
            m = mahler(poly, method=method, seed=seed).value
            rows.append((q, poly, m))
            gaps.append(abs(m - target))
        return SweepResult(rows, target, gaps, [], _tail_monotone(gaps), "substitution")
    raise TypeError("expected a TwistFamilyResult or SubstitutionFamily")


# -- cyclic branched covers ------------------------------------------------------------

def _resultant(a, b):
    """Resultant of ascending Fraction lists (both nonzero)."""
    da, db = len(a) - 1, len(b) - 1
    if db == 0:
        return b[0] ** da
    if da == 0:
        return a[0] ** db
    # Res(a, b) = (-1)^(da db) Res(b, a) and Res(b, a) = lc(b)^(da - dr) Res(b, a mod b)
    _, r = _divmod_q(a, b)
    if not r:
        return Fraction(0)
    dr = len(r) - 1
    sign = -1 if (da * db) % 2 else 1
    return sign * b[-1] ** (da - dr) * _resultant(b, r)


def cyclic_cover_torsion(delta, n):
    """Order ``b_n`` of the first homology of the n-fold cyclic branched cover of a knot.

    ``b_n = |Res(Delta(t), t^n - 1)| = |prod_{zeta^n = 1} Delta(zeta)|``.
    Returns 0 when the homology is infinite (``Delta`` vanishes at an
    n-th root of unity).
    """
    if isinstance(delta, LaurentPoly):
        if delta.nvars != 1 and len(delta.support_vars()) > 1:
            raise ValueError("cyclic branched covers are implemented for knots only")
        coeffs, _ = delta.to_dense()
    else:
        coeffs = list(delta)
    if not coeffs:
        raise ValueError("Delta must be nonzero")
    if abs(sum(coeffs)) != 1:
        raise ValueError("Delta(1) must be +-1 for a knot")
    if n < 1:
        raise ValueError("n must be positive")
    a = [Fraction(c) for c in coeffs]
    b = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    if len(a) == 1:
        return 1
    res = _resultant(a, b)
    if res.denominator != 1:
        raise ArithmeticError("non-integral resultant")
    return abs(int(res))


def torsion_growth(delta, ns):
    """Rows ``(n, b_n, log(b_n)/n)``; the last column tends to ``log M(Delta)``."""
    out = []
    for n in ns:
        b = cyclic_cover_torsion(delta, n)
        out.append((n, b, math.log(b) / n if b else float("nan")))
    return out
