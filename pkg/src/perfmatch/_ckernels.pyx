# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.  Semantics mirror ``_pykernels`` exactly."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t pm_mulmod(uint64_t a, uint64_t b, uint64_t p) {
        return (uint64_t)(((unsigned __int128)a * b) % p);
    }
    """
    uint64_t pm_mulmod(uint64_t a, uint64_t b, uint64_t p) nogil


cdef uint64_t _inv(uint64_t a, uint64_t p) nogil:
    # p prime, 0 < a < p: a^(p-2)
    cdef uint64_t r = 1, e = p - 2
    while e:
        if e & 1:
            r = pm_mulmod(r, a, p)
        a = pm_mulmod(a, a, p)
        e >>= 1
    return r


cdef uint64_t _pf(uint64_t *A, Py_ssize_t n, uint64_t p) nogil:
    cdef Py_ssize_t k, k1, piv, i, j
    cdef uint64_t pf = 1, a, inv, aik, aik1, t, u
    cdef bint neg = 0
    cdef uint64_t *s0
    cdef uint64_t *s1
    cdef uint64_t tmp
    s0 = <uint64_t *> malloc(n * sizeof(uint64_t))
    s1 = <uint64_t *> malloc(n * sizeof(uint64_t))
    k = 0
    while k < n:
        k1 = k + 1
        piv = k1
        while piv < n and A[k * n + piv] == 0:
            piv += 1
        if piv == n:
            free(s0)
            free(s1)
            return 0
        if piv != k1:
            for j in range(n):
                tmp = A[k1 * n + j]
                A[k1 * n + j] = A[piv * n + j]
                A[piv * n + j] = tmp
            for i in range(n):
                tmp = A[i * n + k1]
                A[i * n + k1] = A[i * n + piv]
                A[i * n + piv] = tmp
            neg = not neg
        a = A[k * n + k1]
        pf = pm_mulmod(pf, a, p)
        inv = _inv(a, p)
        for j in range(k + 2, n):
            s0[j] = pm_mulmod(A[k * n + j], inv, p)
            s1[j] = pm_mulmod(A[k1 * n + j], inv, p)
        for i in range(k + 2, n):
            aik = A[i * n + k]
            aik1 = A[i * n + k1]
            if aik == 0 and aik1 == 0:
                continue
            for j in range(k + 2, n):
                t = pm_mulmod(aik, s1[j], p)
                u = pm_mulmod(aik1, s0[j], p)
                t = t + A[i * n + j]
                if t >= p:
                    t -= p
                if t >= u:
                    t -= u
                else:
                    t = t + (p - u)
                A[i * n + j] = t
        k += 2
    free(s0)
    free(s1)
    if neg and pf:
        pf = p - pf
    return pf


def pfaffian_mod(Py_ssize_t n, flat, uint64_t p):
    """Pfaffian of a skew-symmetric ``n`` x ``n`` matrix over GF(p), p < 2**63."""
    if n % 2:
        return 0
    cdef uint64_t *A = <uint64_t *> malloc(n * n * sizeof(uint64_t))
    if A == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef uint64_t r = 0
    try:
        for i in range(n * n):
            A[i] = flat[i]
        with nogil:
            r = _pf(A, n, p)
    finally:
        free(A)
    return r


BACKEND = "compiled"
