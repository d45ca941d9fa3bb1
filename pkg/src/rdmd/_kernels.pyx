# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled projection-statistics kernels.

Same contract and arithmetic as ``_kernels_py``; see that module for the
argument conventions.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, INFINITY
from libcpp.algorithm cimport sort, nth_element

cnp.import_array()

cdef double MAD_CONSTANT = 1.4826
cdef double QN_CONSTANT = 1.1926


cdef inline double _median_sorted(double* s, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t h = n // 2
    if n % 2:
        return s[h]
    return (s[h - 1] + s[h]) / 2.0


cdef inline double _median_inplace(double* s, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t h = n // 2
    cdef double upper, lower
    cdef Py_ssize_t i
    nth_element(s, s + h, s + n)
    upper = s[h]
    if n % 2:
        return upper
    lower = s[0]
    for i in range(1, h):
        if s[i] > lower:
            lower = s[i]
    return (lower + upper) / 2.0


cdef inline double _inner_lomed(double* s, Py_ssize_t n, Py_ssize_t k) noexcept nogil:
    cdef Py_ssize_t q = n // 2
    cdef Py_ssize_t lo = q - (n - 1 - k)
    cdef Py_ssize_t hi = q if q < k else k
    cdef Py_ssize_t mid
    cdef double left, right
    if lo < 0:
        lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if s[k] - s[k - 1 - mid] < s[k + q - mid] - s[k]:
            lo = mid + 1
        else:
            hi = mid
    left = -INFINITY
    right = -INFINITY
    if lo > 0:
        left = s[k] - s[k - lo]
    if q - lo > 0:
        right = s[k + q - lo] - s[k]
    return left if left > right else right


cdef double _qn_sorted(double* s, double* work, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t k
    cdef Py_ssize_t idx = (n - 1) // 2
    for k in range(n):
        work[k] = _inner_lomed(s, n, k)
    nth_element(work, work + idx, work + n)
    return work[idx]


def inner_lomeds_sorted(s):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(s, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef Py_ssize_t k
    for k in range(n):
        out[k] = _inner_lomed(&a[0], n, k)
    return out


def qn_raw(x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.array(x, dtype=np.float64, copy=True).ravel()
    cdef Py_ssize_t n = a.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] work = np.empty(n)
    cdef double r
    with nogil:
        sort(&a[0], &a[0] + n)
        r = _qn_sorted(&a[0], &work[0], n)
    return r


def ps_from_projections(proj, bint use_qn):
    # column-major so each direction is contiguous
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="fortran"] P = np.asfortranarray(proj, dtype=np.float64)
    cdef Py_ssize_t n = P.shape[0]
    cdef Py_ssize_t M = P.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.zeros(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s = np.empty(max(n, 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] work = np.empty(max(n, 1))
    cdef double* col
    cdef double med, scale, r
    cdef Py_ssize_t j, k, n_used = 0
    if M == 0 or n == 0:
        return np.zeros(n), 0
    with nogil:
        for j in range(M):
            col = &P[0, j]
            for k in range(n):
                s[k] = col[k]
            if use_qn:
                sort(&s[0], &s[0] + n)
                med = _median_sorted(&s[0], n)
                scale = QN_CONSTANT * _qn_sorted(&s[0], &work[0], n)
            else:
                # selection is enough for the two medians of the MAD
                med = _median_inplace(&s[0], n)
                for k in range(n):
                    work[k] = fabs(col[k] - med)
                scale = MAD_CONSTANT * _median_inplace(&work[0], n)
            if not scale > 0:
                continue
            n_used += 1
            for k in range(n):
                r = fabs(col[k] - med) / scale
                if r > d[k]:
                    d[k] = r
    return d, n_used
