# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_purepy``.

Sparse multiplication packs exponent vectors into 64-bit keys and
accumulates in a C++ hash map; coefficients stay in machine integers when
their products provably cannot overflow and fall back to Python integers
otherwise.  The Aberth iteration is a Gauss-Seidel sweep in complex double.
"""
from libc.stdint cimport int64_t
from libc.math cimport sqrt, isnan, isinf
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref
import numpy as np

from . import _purepy

cdef int64_t _LIMIT = (<int64_t>1) << 62


def mul_sparse(dict a, dict b, int nvars):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return {}
    if nvars < 1 or nvars > 6 or na * nb < 8:
        return _purepy.mul_sparse(a, b, nvars)
    cdef int bits = 62 // nvars
    cdef int64_t off = (<int64_t>1) << (bits - 2)
    cdef int64_t mask = ((<int64_t>1) << bits) - 1
    cdef vector[int64_t] ka, kb
    cdef list ca = [], cb = []
    cdef int v
    cdef int64_t key
    maxa = 0
    maxb = 0
    for e, c in a.items():
        key = 0
        for v in range(nvars):
            x = e[v]
            if x >= off or x <= -off:
                return _purepy.mul_sparse(a, b, nvars)
            key |= (<int64_t>(x + off)) << (bits * v)
        ka.push_back(key)
        ca.append(c)
        if abs(c) > maxa:
            maxa = abs(c)
    for e, c in b.items():
        key = 0
        for v in range(nvars):
            x = e[v]
            if x >= off or x <= -off:
                return _purepy.mul_sparse(a, b, nvars)
            key |= (<int64_t>(x + off)) << (bits * v)
        kb.push_back(key)
        cb.append(c)
        if abs(c) > maxb:
            maxb = abs(c)

    cdef unordered_map[int64_t, Py_ssize_t] index
    cdef unordered_map[int64_t, Py_ssize_t].iterator it
    cdef vector[int64_t] keys
    cdef vector[int64_t] vals
    cdef list acc
    cdef Py_ssize_t i, j, pos
    cdef int64_t k, xa
    cdef vector[int64_t] cav, cbv
    index.reserve(min(na * nb, 1 << 20))

    if maxa * maxb * min(na, nb) < _LIMIT:
        for c in ca:
            cav.push_back(c)
        for c in cb:
            cbv.push_back(c)
        for i in range(na):
            xa = cav[i]
            for j in range(nb):
                k = ka[i] + kb[j]
                it = index.find(k)
                if it == index.end():
                    index[k] = keys.size()
                    keys.push_back(k)
                    vals.push_back(xa * cbv[j])
                else:
                    vals[deref(it).second] += xa * cbv[j]
        out = {}
        for pos in range(<Py_ssize_t>keys.size()):
            if vals[pos] != 0:
                k = keys[pos]
                out[tuple([((k >> (bits * v)) & mask) - 2 * off for v in range(nvars)])] = vals[pos]
        return out

    acc = []
    for i in range(na):
        x = ca[i]
        for j in range(nb):
            k = ka[i] + kb[j]
            it = index.find(k)
            if it == index.end():
                index[k] = keys.size()
                keys.push_back(k)
                acc.append(x * cb[j])
            else:
                pos = deref(it).second
                acc[pos] = acc[pos] + x * cb[j]
    out = {}
    for pos in range(<Py_ssize_t>keys.size()):
        c = acc[pos]
        if c:
            k = keys[pos]
            out[tuple([((k >> (bits * v)) & mask) - 2 * off for v in range(nvars)])] = c
    return out


cdef inline double _cabs(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef inline double complex _ratio(const double complex[::1] c, Py_ssize_t n,
                                  double complex z) nogil:
    cdef double complex p, dp, w
    cdef Py_ssize_t k
    if _cabs(z) <= 1.0:
        p = c[n]
        dp = 0
        for k in range(n - 1, -1, -1):
            dp = dp * z + p
            p = p * z + c[k]
        return p / dp
    w = 1.0 / z
    p = c[0]
    dp = 0
    for k in range(1, n + 1):
        dp = dp * w + p
        p = p * w + c[k]
    return z / (n - w * dp / p)


cdef inline bint _logder(const double complex[::1] c, Py_ssize_t n,
                         double complex z, double complex *g) nogil:
    # p'(z)/p(z); returns False when p(z) == 0 exactly
    cdef double complex p, dp, w
    cdef Py_ssize_t k
    if _cabs(z) <= 1.0:
        p = c[n]
        dp = 0
        for k in range(n - 1, -1, -1):
            dp = dp * z + p
            p = p * z + c[k]
        if p == 0:
            return False
        g[0] = dp / p
        return True
    w = 1.0 / z
    p = c[0]
    dp = 0
    for k in range(1, n + 1):
        dp = dp * w + p
        p = p * w + c[k]
    if p == 0:
        return False
    g[0] = (n - w * dp / p) * w
    return True


def newton_ratio(coeffs, z):
    cdef const double complex[::1] c = np.ascontiguousarray(coeffs, dtype=complex)
    zz = np.ascontiguousarray(z, dtype=complex)
    cdef double complex[::1] zv = zz
    out = np.empty_like(zz)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i, n = c.shape[0] - 1
    for i in range(zv.shape[0]):
        ov[i] = _ratio(c, n, zv[i])
    return out


def aberth(coeffs, z0, int maxiter=1000, double tol=1e-14):
    cdef const double complex[::1] c = np.ascontiguousarray(coeffs, dtype=complex)
    zarr = np.array(z0, dtype=complex)
    cdef double complex[::1] z = zarr
    cdef Py_ssize_t n = z.shape[0], deg = c.shape[0] - 1
    corr_arr = np.full(n, np.inf)
    cdef double[::1] corr = corr_arr
    act_arr = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] active = act_arr
    cdef Py_ssize_t k, j, nactive = n
    cdef int it = 0
    cdef double complex g, s, w, d
    cdef double az, aw
    with nogil:
        while it < maxiter and nactive > 0:
            it += 1
            nactive = 0
            for k in range(n):
                if not active[k]:
                    continue
                if not _logder(c, deg, z[k], &g):
                    w = 0
                else:
                    s = 0
                    for j in range(n):
                        if j != k:
                            d = z[k] - z[j]
                            s = s + 1.0 / d
                    w = 1.0 / (g - s)
                    if isnan(w.real) or isnan(w.imag) or isinf(w.real) or isinf(w.imag):
                        w = 0
                z[k] = z[k] - w
                aw = _cabs(w)
                corr[k] = aw
                az = _cabs(z[k])
                if aw <= tol * (az if az > 1.0 else 1.0):
                    active[k] = 0
                else:
                    nactive += 1
    return zarr, it, nactive == 0, corr_arr
