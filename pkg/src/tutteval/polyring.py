"""Sparse multivariate polynomials over exact rationals, and linear/Euclidean
algebra over them.

The variable set is fixed and ordered: t < s < l < f < x < y (l is the
curvature parameter, f the algebraic auxiliary variable).  Monomials are
exponent 6-tuples; the canonical term order is graded lexicographic on that
variable order, which also fixes the text serialization.

Everything here is immutable and pure.  Division, gcd and elimination are
exact throughout: gcds go through a primitive polynomial remainder sequence on
recursively-univariate representations, and `nullspace` is fraction-free
(Bareiss) to keep intermediate swell down.
"""

from __future__ import annotations

import heapq
import re

from .exactnum import ONE, Rat, ZERO, rat_gcd, rat_str
from .kernels import mul_poly

VARS = ("t", "s", "l", "f", "x", "y")
NVARS = len(VARS)
VAR_INDEX = {name: i for i, name in enumerate(VARS)}
_ZMONO = (0,) * NVARS


def _vi(v) -> int:
    return v if isinstance(v, int) else VAR_INDEX[v]


def _grlex_key(mono):
    return (sum(mono), mono)


class Poly:
    """Sparse polynomial: dict from exponent 6-tuple to nonzero Rat."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {m: c for m, c in terms.items() if c}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def const(q) -> "Poly":
        q = q if not isinstance(q, int) else Rat(q)
        return Poly({_ZMONO: q} if q else {})

    @staticmethod
    def var(v, exp: int = 1) -> "Poly":
        i = _vi(v)
        mono = tuple(exp if j == i else 0 for j in range(NVARS))
        return Poly({mono: ONE})

    @staticmethod
    def one() -> "Poly":
        return Poly.const(1)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZMONO in self.terms)

    def const_value(self):
        return self.terms.get(_ZMONO, ZERO)

    def vars_present(self):
        present = [False] * NVARS
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    present[i] = True
        return {i for i in range(NVARS) if present[i]}

    def degree(self, v=None) -> int:
        """Degree in variable v, or total degree if v is None; -1 for 0."""
        if not self.terms:
            return -1
        if v is None:
            return max(sum(m) for m in self.terms)
        i = _vi(v)
        return max(m[i] for m in self.terms)

    def leading_monomial(self):
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self):
        if not self.terms:
            return ZERO
        return self.terms[self.leading_monomial()]

    def coeff(self, mono):
        return self.terms.get(tuple(mono), ZERO)

    # -- arithmetic --------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, type(ONE))):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, type(ONE))):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        p = Poly.__new__(Poly)
        p.terms = out
        return p

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, type(ONE))):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, type(ONE))):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        p = Poly.__new__(Poly)
        p.terms = mul_poly(self.terms, other.terms)
        return p

    __rmul__ = __mul__

    def scale(self, q) -> "Poly":
        if isinstance(q, int):
            q = Rat(q)
        if not q:
            return Poly()
        p = Poly.__new__(Poly)
        p.terms = {m: c * q for m, c in self.terms.items()}
        return p

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- univariate views --------------------------------------------------

    def as_univar(self, v) -> list["Poly"]:
        """Coefficient list [c0, c1, ...] of this polynomial viewed in v."""
        i = _vi(v)
        d = self.degree(i)
        coeffs = [dict() for _ in range(d + 1)] if d >= 0 else []
        for m, c in self.terms.items():
            rest = m[:i] + (0,) + m[i + 1:]
            coeffs[m[i]][rest] = c
        return [Poly(d) for d in coeffs]

    @staticmethod
    def from_univar(coeffs: list["Poly"], v) -> "Poly":
        i = _vi(v)
        out = {}
        for e, p in enumerate(coeffs):
            for m, c in p.terms.items():
                mono = m[:i] + (e + m[i],) + m[i + 1:]
                out[mono] = out.get(mono, ZERO) + c
        return Poly(out)

    def coeff_of(self, v, e: int) -> "Poly":
        """Coefficient of v^e, a polynomial in the remaining variables."""
        i = _vi(v)
        out = {}
        for m, c in self.terms.items():
            if m[i] == e:
                out[m[:i] + (0,) + m[i + 1:]] = c
        return Poly(out)

    def __repr__(self):
        return f"Poly({poly_to_str(self)!r})"

    def __str__(self):
        return poly_to_str(self)


# -- calculus ---------------------------------------------------------------


def partial_derivative(A, v):
    """Formal partial derivative; accepts Poly or RatFun."""
    if isinstance(A, RatFun):
        return A.derivative(v)
    i = _vi(v)
    out = {}
    for m, c in A.terms.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
    return Poly(out)


# -- exact division, content, gcd ------------------------------------------


def poly_div_exact(A: Poly, B: Poly) -> Poly:
    """Exact quotient A/B; raises ArithmeticError if B does not divide A."""
    if B.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if A.is_zero():
        return Poly()
    if B.is_const():
        return A.scale(ONE / B.const_value())
    lmB = B.leading_monomial()
    lcB = B.leading_coeff()
    bterms = list(B.terms.items())
    rem = dict(A.terms)
    # monomials in descending graded-lex order via a min-heap of negated keys
    heap = [(-sum(m), tuple(-e for e in m), m) for m in rem]
    heapq.heapify(heap)
    quo = {}
    while heap:
        lm = heapq.heappop(heap)[2]
        c = rem.pop(lm, None)
        if c is None:
            continue
        d = tuple(a - b for a, b in zip(lm, lmB))
        if any(e < 0 for e in d):
            raise ArithmeticError("inexact polynomial division")
        q = c / lcB
        quo[d] = quo.get(d, ZERO) + q
        for mB, cB in bterms:
            if mB == lmB:
                continue
            m = tuple(a + b for a, b in zip(d, mB))
            prev = rem.get(m)
            if prev is None:
                rem[m] = -q * cB
                heapq.heappush(heap, (-sum(m), tuple(-e for e in m), m))
            else:
                new = prev - q * cB
                if new:
                    rem[m] = new
                else:
                    del rem[m]
    return Poly(quo)


def rat_content(A: Poly):
    """Positive rational c with A/c having coprime integer coefficients."""
    c = ZERO
    for v in A.terms.values():
        # no early exit at c == 1: a later fractional coefficient can still
        # lower the content (rat_gcd(1, 3/2) = 1/2)
        c = rat_gcd(c, v)
    return c


def primitive_rat(A: Poly):
    """(c, P) with A = c*P, P integer-coprime with positive leading coeff."""
    if A.is_zero():
        return ONE, A
    c = rat_content(A)
    if A.leading_coeff() < 0:
        c = -c
    return c, A.scale(ONE / c)


def _prem(A: list, B: list):
    """Pseudo-remainder of univariate coefficient lists over Poly."""
    A = list(A)
    db = len(B) - 1
    lcB = B[-1]
    while len(A) - 1 >= db and A:
        da = len(A) - 1
        lcA = A[-1]
        # A <- lcB*A - lcA*v^(da-db)*B
        A = [lcB * a for a in A]
        shift = da - db
        for j, b in enumerate(B):
            A[shift + j] = A[shift + j] - lcA * b
        while A and A[-1].is_zero():
            A.pop()
    return A


def _uv_content(coeffs: list):
    g = Poly()
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.is_const() and not g.is_zero():
            break
    return g


def _euclid_lists(a: list, b: list) -> list:
    """Monic gcd of univariate rational coefficient lists (Euclid)."""
    a = a[:]
    b = b[:]
    while a and a[-1] == ZERO:
        a.pop()
    while b and b[-1] == ZERO:
        b.pop()
    while b:
        lcb = b[-1]
        if lcb != ONE:
            b = [x / lcb for x in b]
        while len(a) >= len(b):
            lca = a.pop()
            if lca:
                shift = len(a) - (len(b) - 1)
                for j in range(len(b) - 1):
                    a[shift + j] = a[shift + j] - lca * b[j]
            while a and a[-1] == ZERO:
                a.pop()
        a, b = b, a
    if a and a[-1] != ONE:
        lc = a[-1]
        a = [x / lc for x in a]
    return a


def _univar_coeffs(A: Poly, v) -> list:
    i = _vi(v)
    out = [ZERO] * (A.degree(v) + 1)
    for m, c in A.terms.items():
        out[m[i]] = c
    return out


def _gcd_univar(A: Poly, B: Poly, v) -> Poly:
    """gcd of polynomials involving only variable v, keeping the rational
    content (matching the PRS convention)."""
    if A.is_zero():
        return primitive_rat(B)[1] if not B.is_zero() else Poly()
    if B.is_zero():
        return primitive_rat(A)[1]
    g = _euclid_lists(_univar_coeffs(A, v), _univar_coeffs(B, v))
    i = _vi(v)
    return primitive_rat(Poly({tuple(e if j == i else 0
                                     for j in range(NVARS)): c
                               for e, c in enumerate(g) if c}))[1]


def _eval_var(A: Poly, v, a) -> Poly:
    """Substitute the rational value a for variable v."""
    i = _vi(v)
    out = {}
    for m, c in A.terms.items():
        key = m[:i] + (0,) + m[i + 1:]
        out[key] = out.get(key, ZERO) + c * a ** m[i]
    return Poly(out)


def _interp_newton(xs: list, ys: list) -> list:
    """Coefficient list of the polynomial through (xs[i], ys[i])."""
    n = len(xs)
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / Rat(xs[i] - xs[i - j])
    coeffs = [ZERO] * n
    for i in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[i]) + dd[i]
        new = [ZERO] * n
        for k in range(n - 1):
            if coeffs[k]:
                new[k + 1] = new[k + 1] + coeffs[k]
                new[k] = new[k] - coeffs[k] * xs[i]
        new[0] = new[0] + dd[i]
        coeffs = new
    while coeffs and coeffs[-1] == ZERO:
        coeffs.pop()
    return coeffs


def _poly_gcd_bivar(A: Poly, B: Poly, vm: int, ve: int) -> Poly:
    """gcd of polynomials in exactly the two variables vm, ve by evaluation
    at ve = 0, 1, 2, ... and interpolation of the univariate gcd images
    (Brown's method over the rationals).  The primitive remainder sequence
    blows up on inputs of this size; interpolation does not."""
    ua, ub = A.as_univar(vm), B.as_univar(vm)
    ca = Poly()
    for c in ua:
        ca = _gcd_univar(ca, c, ve)
    cb = Poly()
    for c in ub:
        cb = _gcd_univar(cb, c, ve)
    cont = _gcd_univar(ca, cb, ve)
    pa = poly_div_exact(A, ca) if ca != Poly.one() else A
    pb = poly_div_exact(B, cb) if cb != Poly.one() else B
    lca = pa.as_univar(vm)[-1]
    lcb = pb.as_univar(vm)[-1]
    gamma = _gcd_univar(lca, lcb, ve)
    gamma_c = _univar_coeffs(gamma, ve)
    lca_c = _univar_coeffs(lca, ve)
    lcb_c = _univar_coeffs(lcb, ve)

    def ev(coeffs, a):
        acc = ZERO
        for c in reversed(coeffs):
            acc = acc * a + c
        return acc

    target = gamma.degree(ve) + min(pa.degree(ve), pb.degree(ve)) + 1
    while True:
        xs = []
        images = []
        dmin = None
        a = 0
        while len(xs) < target:
            if ev(lca_c, a) == ZERO or ev(lcb_c, a) == ZERO:
                a += 1
                continue
            g = _euclid_lists(_univar_coeffs(_eval_var(pa, ve, a), vm),
                              _univar_coeffs(_eval_var(pb, ve, a), vm))
            d = len(g) - 1
            if d == 0:
                return primitive_rat(cont)[1]
            if dmin is None or d < dmin:
                dmin = d
                xs, images = [], []
            if d == dmin:
                ga = ev(gamma_c, a)
                xs.append(a)
                images.append([c * ga for c in g])
            a += 1
        ivm, ive = _vi(vm), _vi(ve)
        terms = {}
        col_polys = []
        for k in range(dmin + 1):
            coeffs = _interp_newton(xs, [img[k] for img in images])
            col = {}
            for e, c in enumerate(coeffs):
                if c:
                    mono = [0] * NVARS
                    mono[ive] = e
                    col[tuple(mono)] = c  # ve part only, for the content gcd
                    mono[ivm] = k
                    terms[tuple(mono)] = c
            col_polys.append(Poly(col))
        H = Poly(terms)
        ch = Poly()
        for col in col_polys:
            ch = _gcd_univar(ch, col, ve)
        if not (ch.is_const() and ch.const_value() == ONE):
            H = poly_div_exact(H, ch)
        H = primitive_rat(H)[1]
        try:
            poly_div_exact(pa, H)
            poly_div_exact(pb, H)
        except ArithmeticError:
            target += 8
            continue
        return primitive_rat(H * cont)[1]


def poly_gcd(A: Poly, B: Poly) -> Poly:
    """Multivariate gcd, primitive with positive leading coefficient.

    Small instances go through a primitive PRS on the recursively-univariate
    representation; large two-variable instances (which arise when clearing
    the holonomic kernel vectors) switch to evaluation/interpolation, where
    the PRS would swell catastrophically.
    """
    if A.is_zero():
        return primitive_rat(B)[1] if not B.is_zero() else Poly()
    if B.is_zero():
        return primitive_rat(A)[1]
    pv = A.vars_present() | B.vars_present()
    if not pv:
        return Poly.const(rat_gcd(A.const_value(), B.const_value()))
    if len(pv) == 1:
        v = pv.pop()
        return _gcd_univar(A, B, v)
    if len(pv) == 2 and len(A.terms) + len(B.terms) > 80:
        v1, v2 = sorted(pv)
        # evaluate the variable of smaller degree: fewer sample points
        d1 = max(A.degree(v1), B.degree(v1))
        d2 = max(A.degree(v2), B.degree(v2))
        vm, ve = (v2, v1) if d1 <= d2 else (v1, v2)
        return _poly_gcd_bivar(A, B, vm, ve)
    v = max(pv)
    ua, ub = A.as_univar(v), B.as_univar(v)
    ca, cb = _uv_content(ua), _uv_content(ub)
    cont = poly_gcd(ca, cb)
    pa = [poly_div_exact(c, ca) for c in ua]
    pb = [poly_div_exact(c, cb) for c in ub]
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb)
        pa = pb
        if not r:
            pb = []
            break
        cr = _uv_content(r)
        pb = [poly_div_exact(c, cr) for c in r]
    g = Poly.from_univar(pa, v)
    g = primitive_rat(g)[1]
    return cont * g


def poly_lcm(A: Poly, B: Poly) -> Poly:
    if A.is_zero() or B.is_zero():
        return Poly()
    g = poly_gcd(A, B)
    return primitive_rat(poly_div_exact(A * B, g))[1]


# -- normalized rational functions -----------------------------------------


class RatFun:
    """Quotient of two Polys, kept in the canonical reduced form:
    gcd(num, den) = 1 and den primitive with positive leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if isinstance(num, (int, type(ONE))):
            num = Poly.const(num)
        if den is None:
            den = Poly.one()
        elif isinstance(den, (int, type(ONE))):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.one()
            return
        if not _reduced:
            g = poly_gcd(num, den)
            if not (g.is_const() and g.const_value() == ONE):
                num = poly_div_exact(num, g)
                den = poly_div_exact(den, g)
        c, den = primitive_rat(den)
        if c != ONE:
            num = num.scale(ONE / c)
        self.num, self.den = num, den

    @staticmethod
    def zero() -> "RatFun":
        return RatFun(Poly())

    @staticmethod
    def one() -> "RatFun":
        return RatFun(Poly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFun):
            return x
        if isinstance(x, Poly):
            return RatFun(x)
        if isinstance(x, (int, type(ONE))):
            return RatFun(Poly.const(x))
        return None

    def __eq__(self, other):
        other = RatFun._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        r = RatFun.__new__(RatFun)
        r.num, r.den = -self.num, self.den
        return r

    def __add__(self, other):
        other = RatFun._coerce(other)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatFun._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = RatFun._coerce(other)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFun._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFun._coerce(other) / self

    def inverse(self) -> "RatFun":
        return RatFun.one() / self

    def derivative(self, v) -> "RatFun":
        """Formal partial derivative (quotient rule, re-normalized)."""
        dn = partial_derivative(self.num, v)
        dd = partial_derivative(self.den, v)
        return RatFun(dn * self.den - self.num * dd, self.den * self.den)

    def is_poly(self) -> bool:
        return self.den.is_const()

    def as_poly(self) -> Poly:
        if not self.den.is_const():
            raise ArithmeticError(f"not a polynomial: {self}")
        return self.num.scale(ONE / self.den.const_value())

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        if self.den == Poly.one():
            return poly_to_str(self.num)
        return f"({poly_to_str(self.num)}) / ({poly_to_str(self.den)})"


# -- univariate algebra over the fraction field ----------------------------
#
# A "uv" value is a coefficient list [c0, c1, ...] of RatFun, representing a
# polynomial in one working variable (phi, in the holonomic application).
# Trailing zeros are trimmed; [] is the zero polynomial.


def uv_trim(A: list) -> list:
    while A and A[-1].is_zero():
        A = A[:-1]
    return A


def uv_deg(A: list) -> int:
    return len(A) - 1


def uv_from_poly(A: Poly, v) -> list:
    return uv_trim([RatFun(c) for c in A.as_univar(v)])


def uv_add(A: list, B: list) -> list:
    n = max(len(A), len(B))
    out = []
    for i in range(n):
        a = A[i] if i < len(A) else RatFun.zero()
        b = B[i] if i < len(B) else RatFun.zero()
        out.append(a + b)
    return uv_trim(out)


def uv_neg(A: list) -> list:
    return [-a for a in A]


def uv_sub(A: list, B: list) -> list:
    return uv_add(A, uv_neg(B))


def uv_scale(A: list, c) -> list:
    c = RatFun._coerce(c)
    if c.is_zero():
        return []
    return [a * c for a in A]


def uv_mul(A: list, B: list) -> list:
    if not A or not B:
        return []
    out = [RatFun.zero()] * (len(A) + len(B) - 1)
    for i, a in enumerate(A):
        if a.is_zero():
            continue
        for j, b in enumerate(B):
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + a * b
    return uv_trim(out)


def uv_eq(A: list, B: list) -> bool:
    A, B = uv_trim(list(A)), uv_trim(list(B))
    return len(A) == len(B) and all(a == b for a, b in zip(A, B))


def uv_divmod(A: list, B: list):
    """Exact (quotient, remainder) with deg r < deg B, over the fraction
    field of the remaining variables."""
    B = uv_trim(list(B))
    if not B:
        raise ZeroDivisionError("univariate division by zero")
    R = uv_trim(list(A))
    lc = B[-1]
    db = len(B) - 1
    Q = [RatFun.zero()] * max(0, len(R) - db)
    while len(R) - 1 >= db:
        q = R[-1] / lc
        sh = len(R) - 1 - db
        Q[sh] = q
        for j in range(db + 1):
            R[sh + j] = R[sh + j] - q * B[j]
        R.pop()  # leading term cancels exactly
        R = uv_trim(R)
        if len(R) <= sh:
            R = uv_trim(R)
    return uv_trim(Q), uv_trim(R)


def uv_monic(A: list):
    """(monic version, leading coefficient)."""
    A = uv_trim(list(A))
    if not A:
        return [], RatFun.one()
    lc = A[-1]
    return [a / lc for a in A], lc


def uv_ext_gcd(A: list, B: list):
    """Extended Euclid: (g, U, V) with U*A + V*B = g, g monic (or 0)."""
    r0, r1 = uv_trim(list(A)), uv_trim(list(B))
    u0, u1 = [RatFun.one()], []
    v0, v1 = [], [RatFun.one()]
    while r1:
        q, r = uv_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, uv_sub(u0, uv_mul(q, u1))
        v0, v1 = v1, uv_sub(v0, uv_mul(q, v1))
    if not r0:
        return [], [], []
    g, lc = uv_monic(r0)
    inv = RatFun.one() / lc
    return g, uv_scale(u0, inv), uv_scale(v0, inv)


# -- univariate-view wrappers on Poly inputs -------------------------------


def poly_divmod(A: Poly, B: Poly, v):
    """Divide A by B viewed as univariate in v over the fraction field of
    the remaining variables.  Returns coefficient lists of RatFun."""
    return uv_divmod(uv_from_poly(A, v), uv_from_poly(B, v))


def ext_gcd(A: Poly, B: Poly, v):
    """Extended Euclidean algorithm on A, B viewed in v: (g, U, V) with
    U*A + V*B = g, g monic in v."""
    return uv_ext_gcd(uv_from_poly(A, v), uv_from_poly(B, v))


# -- exact nullspace -------------------------------------------------------


def nullspace(M: list) -> list:
    """Basis of the right kernel of a matrix of RatFun entries.

    Rows are cleared to polynomials, eliminated fraction-free (Bareiss), and
    the kernel vectors are recovered by back substitution over the fraction
    field.  Returns a list of RatFun vectors, one per free column.
    """
    r = len(M)
    if r == 0:
        return []
    c = len(M[0])
    rows = []
    for row in M:
        lcd = Poly.one()
        for e in row:
            lcd = poly_lcm(lcd, e.den)
        rows.append([e.num * poly_div_exact(lcd, e.den) for e in row])

    prev = Poly.one()
    pivots = []  # (row, col)
    pr = 0
    for pc in range(c):
        if pr >= r:
            break
        sel = None
        for i in range(pr, r):
            if not rows[i][pc].is_zero():
                sel = i
                break
        if sel is None:
            continue
        if sel != pr:
            rows[pr], rows[sel] = rows[sel], rows[pr]
        piv = rows[pr][pc]
        for i in range(pr + 1, r):
            ri = rows[i]
            if ri[pc].is_zero():
                for j in range(pc + 1, c):
                    ri[j] = poly_div_exact(piv * ri[j], prev)
            else:
                head = ri[pc]
                for j in range(pc + 1, c):
                    ri[j] = poly_div_exact(piv * ri[j] - head * rows[pr][j],
                                           prev)
                ri[pc] = Poly()
        prev = piv
        pivots.append((pr, pc))
        pr += 1

    pivot_cols = {pc for _, pc in pivots}
    basis = []
    for fc in range(c):
        if fc in pivot_cols:
            continue
        vec = [RatFun.zero()] * c
        vec[fc] = RatFun.one()
        for prow, pcol in reversed(pivots):
            acc = RatFun.zero()
            for j in range(pcol + 1, c):
                if not rows[prow][j].is_zero() and not vec[j].is_zero():
                    acc = acc + RatFun(rows[prow][j]) * vec[j]
            vec[pcol] = -acc / RatFun(rows[prow][pcol])
        basis.append(vec)
    return basis


def clear_and_normalize(v: list, sign_entry: int = 0) -> list:
    """Scale a nonzero RatFun vector to coprime polynomial entries.

    Multiplies by the least common denominator, divides by the common content
    (polynomial and rational), and flips the global sign so the designated
    entry has a positive leading coefficient.
    """
    if all(e.is_zero() for e in v):
        raise ValueError("cannot normalize the zero vector")
    lcd = Poly.one()
    for e in v:
        lcd = poly_lcm(lcd, e.den)
    polys = [e.num * poly_div_exact(lcd, e.den) for e in v]
    g = Poly()
    for p in polys:
        g = poly_gcd(g, p)
    polys = [poly_div_exact(p, g) if not p.is_zero() else p for p in polys]
    c = ZERO
    for p in polys:
        c = rat_gcd(c, rat_content(p)) if not p.is_zero() else c
    polys = [p.scale(ONE / c) for p in polys]
    anchor = polys[sign_entry]
    if anchor.is_zero():
        anchor = next(p for p in polys if not p.is_zero())
    if anchor.leading_coeff() < 0:
        polys = [-p for p in polys]
    return polys


# -- text serialization ----------------------------------------------------


def poly_to_str(A: Poly) -> str:
    """Canonical text form: terms in descending graded-lex order."""
    if A.is_zero():
        return "0"
    parts = []
    for m in sorted(A.terms, key=_grlex_key, reverse=True):
        c = A.terms[m]
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(VARS[i])
            elif e > 1:
                factors.append(f"{VARS[i]}^{e}")
        mag = c if c > 0 else -c
        if factors and mag == ONE:
            body = "*".join(factors)
        elif factors:
            body = rat_str(mag) + "*" + "*".join(factors)
        else:
            body = rat_str(mag)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"[a-z]+(?:\^\d+)?|\d+(?:/\d+)?|[+\-*]")


def poly_parse(text: str) -> Poly:
    """Parse the `poly_to_str` grammar (whitespace-insensitive)."""
    s = text.replace(" ", "")
    if not s or s == "0":
        return Poly()
    tokens = _TOKEN.findall(s)
    if "".join(tokens) != s:
        raise ValueError(f"cannot parse polynomial text: {text!r}")
    result = Poly()
    sign = 1
    term_coeff = None
    term_mono = None
    expect_factor = True

    def flush():
        nonlocal result, term_coeff, term_mono
        if term_mono is not None:
            c = term_coeff if term_coeff is not None else ONE
            result = result + Poly({tuple(term_mono): c * sign})
        term_coeff = None
        term_mono = None

    for tok in tokens:
        if tok in "+-":
            if expect_factor and term_mono is None:
                # unary sign
                sign = sign * (1 if tok == "+" else -1)
                continue
            flush()
            sign = 1 if tok == "+" else -1
            expect_factor = True
        elif tok == "*":
            expect_factor = True
        else:
            if term_mono is None:
                term_mono = [0] * NVARS
            if tok[0].isdigit():
                if "/" in tok:
                    a, b = tok.split("/")
                    q = Rat(int(a), int(b))
                else:
                    q = Rat(int(tok))
                term_coeff = q if term_coeff is None else term_coeff * q
            else:
                if "^" in tok:
                    name, e = tok.split("^")
                    e = int(e)
                else:
                    name, e = tok, 1
                if name not in VAR_INDEX:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                term_mono[VAR_INDEX[name]] += e
            expect_factor = False
    flush()
    return result
