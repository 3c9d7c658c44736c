# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled double-precision twin of ``_kernel_py.solve_orders``."""
import numpy as np
from libc.math cimport fabs, isfinite


def solve_orders(list v, double omega, int k, int s_max, double limit):
    if omega == 0.0:
        raise ZeroDivisionError("omega vanishes")
    cdef int width = s_max + k + 4
    cdef double[:, ::1] W = np.zeros((s_max + 1, width))
    cdef double[:, ::1] F = np.zeros((s_max + 1, k + 1))
    cdef double[:, ::1] R = np.zeros((s_max + 1, width))
    cdef double[:, ::1] V = np.zeros((s_max + 1, width))
    cdef double[::1] e = np.zeros(s_max + 1)
    cdef double[::1] partial = np.zeros(width)
    cdef double[::1] r = np.zeros(width + k + 2)
    cdef double[::1] df0 = np.zeros(k + 1)
    cdef double[::1] dfj = np.zeros(k + 1)
    cdef int s, i, j, a, b, p, d, deg
    cdef double x, cj, cw, hj, es, acc, growth = 0.0, m

    for s in range(s_max + 1):
        row = v[s]
        for i in range(len(row)):
            V[s, i] = row[i]

    F[0, k] = 1.0
    for p in range(k - 2, -1, -1):
        F[0, p] = (p + 2) * (p + 1) * F[0, p + 2] / (2.0 * omega * (p - k))
    for i in range(1, k + 1):
        df0[i - 1] = i * F[0, i]
    W[0, 1] = -omega
    R[0, 0] = -k * omega

    for s in range(1, s_max + 1):
        deg = k + s + 2
        for i in range(width):
            partial[i] = 0.0
        for i in range(s + 3):
            partial[i] = V[s, i]
        for i in range(1, s):
            for a in range(i + 2):
                x = W[i, a]
                if x == 0.0:
                    continue
                for b in range(s - i + 2):
                    partial[a + b] -= 0.5 * x * W[s - i, b]

        for i in range(deg + 1):
            r[i] = 0.0
        for i in range(k + 1):
            x = F[0, i]
            if x == 0.0:
                continue
            for a in range(s + 3):
                r[i + a] -= x * partial[a]
        for j in range(1, s):
            for i in range(k):
                x = F[j, i]
                if x == 0.0:
                    continue
                for a in range(s - j + 3):
                    r[i + a] -= x * R[s - j, a]
            for i in range(1, k):
                x = i * F[j, i]
                if x == 0.0:
                    continue
                for a in range(s - j + 2):
                    r[i - 1 + a] += x * W[s - j, a]

        d = s + 1
        for j in range(d, -1, -1):
            cj = r[k + 1 + j] / omega
            W[s, j] = cj
            if cj == 0.0:
                continue
            cw = cj * omega
            for i in range(k + 1):
                r[i + j + 1] -= cw * F[0, i]
            if j > 0:
                hj = cj * j * 0.5
                for i in range(k + 1):
                    r[i + j - 1] += hj * F[0, i]
            for i in range(k):
                r[i + j] += cj * df0[i]
        es = -r[k]
        for i in range(k):
            r[i] += es * F[0, i]
        for p in range(k - 1, -1, -1):
            acc = r[p]
            if p + 2 < k:
                acc += 0.5 * (p + 2) * (p + 1) * F[s, p + 2]
            F[s, p] = acc / ((p - k) * omega)
        e[s] = es

        for i in range(s + 3):
            R[s, i] = partial[i]
        for i in range(1, d + 1):
            R[s, i - 1] -= 0.5 * i * W[s, i]
        for i in range(d + 1):
            R[s, i + 1] += omega * W[s, i]
        R[s, 0] -= es

        for i in range(d + 1):
            m = fabs(W[s, i])
            if m > growth or not isfinite(m):
                growth = m
        for i in range(k):
            m = fabs(F[s, i])
            if m > growth or not isfinite(m):
                growth = m
        m = fabs(es)
        if m > growth or not isfinite(m):
            growth = m
        if not growth <= limit:
            raise ArithmeticError(f"coefficient magnitude {growth} at order {s}")

    Wl = [[W[s, i] for i in range(s + 2)] for s in range(s_max + 1)]
    Fl = [[F[0, i] for i in range(k + 1)]] + [[F[s, i] for i in range(k)] for s in range(1, s_max + 1)]
    el = [e[s] for s in range(s_max + 1)]
    return Wl, Fl, el, growth
