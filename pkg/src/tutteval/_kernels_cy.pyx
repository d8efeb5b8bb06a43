# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the hot kernels in `_kernels_py.py`.

Coefficients stay generic Python objects (exact rationals); the win comes from
C-level loop and tuple handling around them.
"""

BACKEND = "cython"


def mul_trunc3(dict A, dict B, long D, long L):
    cdef long a1, b1, c1, a2, b2, c2, a, b, c
    cdef dict out = {}
    cdef tuple k
    if len(A) > len(B):
        A, B = B, A
    cdef list bitems = list(B.items())
    for ka, ca in A.items():
        a1 = ka[0]
        b1 = ka[1]
        c1 = ka[2]
        for kb, cb in bitems:
            a2 = kb[0]
            b2 = kb[1]
            a = a1 + a2
            b = b1 + b2
            if a + 2 * b > D:
                continue
            c2 = kb[2]
            c = c1 + c2
            if c > L:
                continue
            k = (a, b, c)
            v = out.get(k)
            if v is None:
                out[k] = ca * cb
            else:
                out[k] = v + ca * cb
    return {k: v for k, v in out.items() if v}


def mul_trunc2(dict A, dict B, long S, long L):
    cdef long b1, c1, b2, c2, b, c
    cdef dict out = {}
    cdef tuple k
    if len(A) > len(B):
        A, B = B, A
    cdef list bitems = list(B.items())
    for ka, ca in A.items():
        b1 = ka[0]
        c1 = ka[1]
        for kb, cb in bitems:
            b2 = kb[0]
            b = b1 + b2
            if b > S:
                continue
            c2 = kb[1]
            c = c1 + c2
            if c > L:
                continue
            k = (b, c)
            v = out.get(k)
            if v is None:
                out[k] = ca * cb
            else:
                out[k] = v + ca * cb
    return {k: v for k, v in out.items() if v}


def mul_poly(dict A, dict B):
    cdef dict out = {}
    cdef tuple ea, eb, k
    cdef Py_ssize_t i, n
    if len(A) > len(B):
        A, B = B, A
    cdef list bitems = list(B.items())
    for ea, ca in A.items():
        n = len(ea)
        for kb, cb in bitems:
            eb = <tuple> kb
            k = tuple([ea[i] + eb[i] for i in range(n)])
            v = out.get(k)
            if v is None:
                out[k] = ca * cb
            else:
                out[k] = v + ca * cb
    return {k: v for k, v in out.items() if v}
