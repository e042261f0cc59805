# cython: language_level=3
"""Compiled hot kernels. Same contracts as ``_pykernels``."""

from libc.math cimport sqrt

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from "<math.h>" nogil:
    long double cosl(long double)
    long double sinl(long double)
    long double expl(long double)
    long double logl(long double)
    long double powl(long double, long double)


def wigner_d_matrix(int two_j, double theta):
    """Reduced rotation matrix ``d[a, b] = <j, j-a| exp(-i theta J_y) |j, j-b>``.

    Terms are summed in extended precision; the alternating sum cancels
    heavily for large j. Successive terms follow from the first by their ratio.
    """
    cdef int n = two_j + 1
    cdef int a, b, s, lo, hi, pc, ps
    cdef long double c = cosl(0.5 * <long double>theta)
    cdef long double sn = sinl(0.5 * <long double>theta)
    cdef long double acc, half, term, ratio_cs
    cdef long double[::1] logfact = np.empty(n, dtype=np.longdouble)
    cdef cnp.ndarray[cnp.double_t, ndim=2] out = np.empty((n, n), dtype=np.float64)
    cdef bint use_ratio = c != 0.0
    logfact[0] = 0.0
    for a in range(1, n):
        logfact[a] = logfact[a - 1] + logl(<long double>a)
    if use_ratio:
        ratio_cs = (sn * sn) / (c * c)
    with nogil:
        for a in range(n):
            for b in range(n):
                lo = a - b if a > b else 0
                hi = n - 1 - b if n - 1 - b < a else a
                half = 0.5 * (logfact[n - 1 - a] + logfact[a] + logfact[n - 1 - b] + logfact[b])
                acc = 0.0
                if use_ratio:
                    s = lo
                    pc = (n - 1) + (a - b) - 2 * s
                    ps = (b - a) + 2 * s
                    term = expl(half - logfact[n - 1 - b - s] - logfact[s]
                                - logfact[b - a + s] - logfact[a - s])
                    term *= powl(c, pc) * powl(sn, ps)
                    if (b - a + s) % 2:
                        term = -term
                    acc = term
                    for s in range(lo, hi):
                        term *= -(<long double>((n - 1 - b - s) * (a - s))
                                  / <long double>((s + 1) * (b - a + s + 1))) * ratio_cs
                        acc += term
                else:
                    # cos(theta/2) = 0: only the term with zero cosine power survives
                    for s in range(lo, hi + 1):
                        pc = (n - 1) + (a - b) - 2 * s
                        if pc:
                            continue
                        ps = (b - a) + 2 * s
                        term = expl(half - logfact[n - 1 - b - s] - logfact[s]
                                    - logfact[b - a + s] - logfact[a - s]) * powl(sn, ps)
                        acc += -term if (b - a + s) % 2 else term
                out[a, b] = <double>acc
    return out


def symmetrized_product(up, down, int n_qubits, int n_up):
    """Normalized sum over placements of ``n_up`` copies of ``up`` among ``down`` factors.

    Qubit 0 is the most significant index of the returned ``2**n_qubits`` vector.
    """
    cdef double complex u0 = up[0], u1 = up[1], v0 = down[0], v1 = down[1]
    cdef double complex f0, f1, x
    cdef long dim = 1 << n_qubits
    cdef long i, length, mask, count = 0
    cdef int q
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(dim, dtype=np.complex128)
    cdef double complex[::1] buf = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] acc = out
    with nogil:
        for mask in range(dim):
            if __builtin_popcountl(mask) != n_up:
                continue
            count += 1
            buf[0] = 1.0
            length = 1
            for q in range(n_qubits):
                if (mask >> (n_qubits - 1 - q)) & 1:
                    f0, f1 = u0, u1
                else:
                    f0, f1 = v0, v1
                # in-place kron(buf[:length], (f0, f1)), highest index first
                i = length - 1
                while i >= 0:
                    x = buf[i]
                    buf[2 * i + 1] = x * f1
                    buf[2 * i] = x * f0
                    i -= 1
                length *= 2
            for i in range(dim):
                acc[i] = acc[i] + buf[i]
    out /= sqrt(<double>count)
    return out


cdef extern int __builtin_popcountl(unsigned long) nogil
