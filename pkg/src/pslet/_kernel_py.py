"""Pure-Python order-by-order Riccati solver.

Works with any field type supporting + - * / (float or mpmath mpf).  The
compiled twin in ``_ckernel.pyx`` mirrors this routine for doubles.

Notation: at half-order s (power lbar**(-s/2)) the log-derivative piece is
``W[s]`` (degree s+1), the nodal-polynomial piece ``F[s]`` (degree k for
s = 0, below k afterwards) and ``e[s]`` the scaled energy q0^2 E^(s/2-1),
nonzero only for even s.
"""
from __future__ import annotations


def hermite_f0(omega, k, zero):
    """Monic degree-k polynomial solving -k w F + w x F' - F''/2 = 0."""
    f0 = [zero] * (k + 1)
    f0[k] = zero + 1
    for p in range(k - 2, -1, -1):
        f0[p] = (p + 2) * (p + 1) * f0[p + 2] / (2 * omega * (p - k))
    return f0


def _mul_into(out, a, b, sign=1):
    for i, x in enumerate(a):
        if not x:
            continue
        if sign != 1:
            x = -x
        for j, y in enumerate(b):
            out[i + j] += x * y


def solve_orders(v, omega, k, s_max, zero=0.0, limit=None):
    """Solve orders 0..s_max.  Returns (W, F, e, growth) where growth is the
    largest coefficient magnitude seen, or raises ArithmeticError on overflow."""
    if not omega:
        raise ZeroDivisionError("omega vanishes")
    half = (zero + 1) / 2
    f0 = hermite_f0(omega, k, zero)
    df0 = [i * f0[i] for i in range(1, k + 1)]
    W = [[zero, -omega]]
    F = [f0]
    e = [zero]
    # R[0] is the constant -k*omega by the choice of beta
    R = [[-k * omega]]
    growth = zero

    for s in range(1, s_max + 1):
        deg = k + s + 2
        partial = [zero] * (s + 3)
        for i, x in enumerate(v[s]):
            partial[i] += x
        for i in range(1, s):
            wi, wj = W[i], W[s - i]
            for a, x in enumerate(wi):
                if not x:
                    continue
                hx = half * x
                for b, y in enumerate(wj):
                    partial[a + b] -= hx * y

        r = [zero] * (deg + 1)
        _mul_into(r, f0, partial, -1)
        for j in range(1, s):
            fj = F[j]
            if not fj:
                continue
            _mul_into(r, fj, R[s - j], -1)
            dfj = [i * fj[i] for i in range(1, len(fj))]
            _mul_into(r, dfj, W[s - j])

        d = s + 1
        c = [zero] * (d + 1)
        for j in range(d, -1, -1):
            cj = r[k + 1 + j] / omega
            c[j] = cj
            if not cj:
                continue
            cw = cj * omega
            for i in range(k + 1):
                r[i + j + 1] -= cw * f0[i]
            if j:
                hj = cj * j * half
                for i in range(k + 1):
                    r[i + j - 1] += hj * f0[i]
            for i in range(k):
                r[i + j] += cj * df0[i]
        es = -r[k]
        for i in range(k):
            r[i] += es * f0[i]
        a = [zero] * k
        for p in range(k - 1, -1, -1):
            acc = r[p]
            if p + 2 < k:
                acc += half * (p + 2) * (p + 1) * a[p + 2]
            a[p] = acc / ((p - k) * omega)

        rs = partial + [zero] * (d + 2 - len(partial)) if len(partial) < d + 2 else partial[:]
        for i in range(1, d + 1):
            rs[i - 1] -= half * i * c[i]
        for i in range(d + 1):
            rs[i + 1] += omega * c[i]
        rs[0] -= es

        for x in c + a + [es]:
            m = abs(x)
            if m > growth:
                growth = m
        if limit is not None and not growth <= limit:
            raise ArithmeticError(f"coefficient magnitude {growth} at order {s}")

        W.append(c)
        F.append(a)
        e.append(es)
        R.append(rs)
    return W, F, e, growth
