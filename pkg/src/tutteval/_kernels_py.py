"""Pure-Python fallback kernels for the sparse multiplication inner loops.

These three routines dominate the runtime of every large verification run.
A Cython twin (`_kernels_cy.pyx`) with identical signatures is preferred at
import time when the compiled module is available; see `kernels.py`.

Coefficients are arbitrary rational objects (gmpy2.mpq or Fraction); only the
exponent bookkeeping is kernel work.
"""

BACKEND = "python"


def mul_trunc3(A, B, D, L):
    """Product of two {(a,b,c): coeff} maps, truncated to a+2b <= D, c <= L."""
    if len(A) > len(B):
        A, B = B, A
    out = {}
    get = out.get
    bitems = list(B.items())
    for (a1, b1, c1), ca in A.items():
        for (a2, b2, c2), cb in bitems:
            a = a1 + a2
            b = b1 + b2
            if a + 2 * b > D:
                continue
            c = c1 + c2
            if c > L:
                continue
            k = (a, b, c)
            v = get(k)
            if v is None:
                out[k] = ca * cb
            else:
                out[k] = v + ca * cb
    return {k: v for k, v in out.items() if v}


def mul_trunc2(A, B, S, L):
    """Product of two {(b,c): coeff} maps, truncated to b <= S, c <= L."""
    if len(A) > len(B):
        A, B = B, A
    out = {}
    get = out.get
    bitems = list(B.items())
    for (b1, c1), ca in A.items():
        for (b2, c2), cb in bitems:
            b = b1 + b2
            if b > S:
                continue
            c = c1 + c2
            if c > L:
                continue
            k = (b, c)
            v = get(k)
            if v is None:
                out[k] = ca * cb
            else:
                out[k] = v + ca * cb
    return {k: v for k, v in out.items() if v}


def mul_poly(A, B):
    """Untruncated product of two {exponent-tuple: coeff} maps."""
    if len(A) > len(B):
        A, B = B, A
    out = {}
    get = out.get
    bitems = list(B.items())
    for ea, ca in A.items():
        for eb, cb in bitems:
            k = tuple(x + y for x, y in zip(ea, eb))
            v = get(k)
            if v is None:
                out[k] = ca * cb
            else:
                out[k] = v + ca * cb
    return {k: v for k, v in out.items() if v}
