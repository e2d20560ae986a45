# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels.

The coefficients never leave this module as GMP objects: Python ints are
copied into private ``mpz_t`` buffers, convolved, and copied back.
"""

from libc.stdlib cimport malloc, free
from cpython.bytes cimport PyBytes_AsString

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    ctypedef __mpz_struct *mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set_si(mpz_ptr, long)
    int mpz_set_str(mpz_ptr, const char *, int)
    void mpz_addmul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_set_ui(mpz_ptr, unsigned long)
    int mpz_fits_slong_p(mpz_ptr)
    long mpz_get_si(mpz_ptr)
    char *mpz_get_str(char *, int, mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    int mpz_sgn(mpz_ptr)

cdef long _SMALL = 2 ** 62


cdef void _load(mpz_ptr z, object v) except *:
    cdef bytes s
    if -_SMALL < v < _SMALL:
        mpz_set_si(z, <long>v)
    else:
        s = format(v, "x").encode()
        mpz_set_str(z, PyBytes_AsString(s), 16)


cdef object _store(mpz_ptr z):
    cdef char *buf
    cdef object r
    if mpz_fits_slong_p(z):
        return mpz_get_si(z)
    buf = <char *>malloc(mpz_sizeinbase(z, 16) + 2)
    try:
        mpz_get_str(buf, 16, z)
        r = int(buf.decode(), 16)
    finally:
        free(buf)
    return r


cdef __mpz_struct *_alloc(Py_ssize_t n):
    cdef __mpz_struct *arr = <__mpz_struct *>malloc(max(n, 1) * sizeof(__mpz_struct))
    cdef Py_ssize_t i
    if arr == NULL:
        raise MemoryError()
    for i in range(n):
        mpz_init(&arr[i])
    return arr


cdef void _release(__mpz_struct *arr, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(n):
        mpz_clear(&arr[i])
    free(arr)


def int_convolve(list a, list b, Py_ssize_t n):
    """First ``n`` coefficients of the product of two integer sequences."""
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, lo, hi
    if la == 0 or lb == 0:
        return []
    if n > la + lb - 1:
        n = la + lb - 1
    if n <= 0:
        return []
    cdef __mpz_struct *A = _alloc(la)
    cdef __mpz_struct *B = _alloc(lb)
    cdef __mpz_struct *acc = _alloc(1)
    out = []
    try:
        for i in range(la):
            _load(&A[i], a[i])
        for i in range(lb):
            _load(&B[i], b[i])
        for i in range(n):
            lo = i - lb + 1 if i >= lb else 0
            hi = i if i < la else la - 1
            mpz_set_ui(acc, 0)
            for j in range(lo, hi + 1):
                mpz_addmul(acc, &A[j], &B[i - j])
            out.append(_store(acc))
    finally:
        _release(A, la)
        _release(B, lb)
        _release(acc, 1)
    return out


def int_square(list a, Py_ssize_t n):
    return int_convolve(a, a, n)
