# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``haarlab.kernels._pure``.

Inputs whose magnitudes keep every intermediate below 2**62 run on int64
buffers; anything larger falls through to arbitrary-precision object loops.
"""

from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

cdef object _BOUND = 1 << 62


cdef object _max_abs(list values):
    cdef object m = 0
    cdef object v
    for v in values:
        if v < 0:
            v = -v
        if v > m:
            m = v
    return m


cdef bint _fits(list values, Py_ssize_t growth):
    return _max_abs(values) * growth < _BOUND


def analyze(list nums, int resolution):
    cdef Py_ssize_t n = 1 << resolution
    cdef Py_ssize_t level, half, k
    cdef int64_t *buf
    cdef int64_t *heap
    cdef int64_t a, b
    cdef list out
    if len(nums) != n:
        raise ValueError("length does not match resolution")
    if not _fits(nums, n):
        return _analyze_obj(nums, resolution)
    buf = <int64_t *> malloc(n * sizeof(int64_t))
    heap = <int64_t *> malloc(n * sizeof(int64_t))
    if buf == NULL or heap == NULL:
        free(buf)
        free(heap)
        raise MemoryError()
    try:
        for k in range(n):
            buf[k] = nums[k]
        for level in range(resolution - 1, -1, -1):
            half = 1 << level
            for k in range(half):
                a = buf[2 * k]
                b = buf[2 * k + 1]
                buf[k] = a + b
                heap[half + k] = a - b
        heap[0] = buf[0]
        out = [heap[k] for k in range(n)]
    finally:
        free(buf)
        free(heap)
    return out


cdef list _analyze_obj(list nums, int resolution):
    cdef list sums = list(nums)
    cdef list heap = [0] * (1 << resolution)
    cdef Py_ssize_t level, half, k
    cdef object a, b
    for level in range(resolution - 1, -1, -1):
        half = 1 << level
        for k in range(half):
            a = sums[2 * k]
            b = sums[2 * k + 1]
            sums[k] = a + b
            heap[half + k] = a - b
    heap[0] = sums[0]
    return heap


def synthesize(list heap, int resolution):
    cdef Py_ssize_t n = 1 << resolution
    cdef Py_ssize_t level, half, k
    cdef int64_t *vals
    cdef int64_t v, d
    cdef list out
    if len(heap) != n:
        raise ValueError("length does not match resolution")
    if not _fits(heap, n):
        return _synthesize_obj(heap, resolution)
    vals = <int64_t *> malloc(n * sizeof(int64_t))
    if vals == NULL:
        raise MemoryError()
    try:
        vals[0] = heap[0]
        for level in range(resolution):
            half = 1 << level
            # walk backwards so each parent is read before its slot is overwritten
            for k in range(half - 1, -1, -1):
                v = vals[k]
                d = (<int64_t> heap[half + k]) * (<int64_t> 1 << level)
                vals[2 * k] = v + d
                vals[2 * k + 1] = v - d
        out = [vals[k] for k in range(n)]
    finally:
        free(vals)
    return out


cdef list _synthesize_obj(list heap, int resolution):
    cdef list vals = [0] * (1 << resolution)
    cdef Py_ssize_t level, half, k
    cdef object v, d
    vals[0] = heap[0]
    for level in range(resolution):
        half = 1 << level
        for k in range(half - 1, -1, -1):
            v = vals[k]
            d = heap[half + k] * (1 << level)
            vals[2 * k] = v + d
            vals[2 * k + 1] = v - d
    return vals


def abs_sum(list nums, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t i
    cdef int64_t acc = 0
    cdef int64_t x
    cdef object total = 0
    cdef object v
    if hi - lo > 0 and _fits(nums[lo:hi], hi - lo):
        for i in range(lo, hi):
            x = nums[i]
            acc += x if x >= 0 else -x
        return acc
    for i in range(lo, hi):
        v = nums[i]
        total += v if v >= 0 else -v
    return total


def abs_sum_pair(list first, list second, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t i
    cdef int64_t acc = 0
    cdef int64_t x
    cdef object total = 0
    cdef object v
    if hi - lo > 0 and _fits(first[lo:hi], 2 * (hi - lo)) and _fits(second[lo:hi], 2 * (hi - lo)):
        for i in range(lo, hi):
            x = <int64_t> first[i] + <int64_t> second[i]
            acc += x if x >= 0 else -x
        return acc
    for i in range(lo, hi):
        v = first[i] + second[i]
        total += v if v >= 0 else -v
    return total
