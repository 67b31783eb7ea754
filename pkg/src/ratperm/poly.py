"""Univariate polynomial algebra over a finite field.

Coefficient vectors are dense, constant term first, with no trailing zeros
(the zero polynomial is the empty vector).  The public face is the immutable
:class:`Polynomial`; underneath, ``_p*`` helpers work directly on lists of
element indices so inner loops stay allocation-light.  Root extraction over
an explicit extension field and the splitting-degree computation live here
because the power-sum engine needs poles of denominators with multiplicity.
"""

from __future__ import annotations

from math import gcd as _int_gcd

from . import _expr, gf

# ---------------------------------------------------------------------------
# Index-level helpers.  F is a FiniteField; polynomials are lists of indices.
# ---------------------------------------------------------------------------


def _ptrim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _pdeg(c):
    return len(c) - 1


def _padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, bi in enumerate(b):
        out[i] = F.addi(out[i], bi)
    return _ptrim(out)


def _pneg(F, a):
    return [F.negi(c) for c in a]


def _psub(F, a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, bi in enumerate(b):
        out[i] = F.subi(out[i], bi)
    return _ptrim(out)


def _pscale(F, a, k):
    if k == 0:
        return []
    if k == 1:
        return list(a)
    return [F.muli(c, k) for c in a]


def _pmul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    addi, muli = F.addi, F.muli
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = addi(out[i + j], muli(ai, bj))
    return _ptrim(out)


def _pdivrem(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv_lead = F.invi(b[-1])
    quo = [0] * max(0, len(a) - db)
    subi, muli = F.subi, F.muli
    while a and len(a) - 1 >= db:
        shift = len(a) - 1 - db
        factor = muli(a[-1], inv_lead)
        quo[shift] = factor
        for i, bc in enumerate(b):
            if bc:
                a[shift + i] = subi(a[shift + i], muli(factor, bc))
        _ptrim(a)
    return _ptrim(quo), a


def _pmonic(F, a):
    if not a or a[-1] == 1:
        return list(a)
    return _pscale(F, a, F.invi(a[-1]))


def _pgcd(F, a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _pdivrem(F, a, b)
        a, b = b, r
    return _pmonic(F, a)


def _ppow(F, a, e):
    result = [1]
    acc = list(a)
    while e:
        if e & 1:
            result = _pmul(F, result, acc)
        acc = _pmul(F, acc, acc)
        e >>= 1
    return result


def _ppowmod(F, base, e, mod):
    result = [1]
    acc = list(base)
    if len(acc) >= len(mod):
        _, acc = _pdivrem(F, acc, mod)
    while e:
        if e & 1:
            result = _pmul(F, result, acc)
            if len(result) >= len(mod):
                _, result = _pdivrem(F, result, mod)
        e >>= 1
        if e:
            acc = _pmul(F, acc, acc)
            if len(acc) >= len(mod):
                _, acc = _pdivrem(F, acc, mod)
    return result


def _peval(F, a, x):
    acc = 0
    addi, muli = F.addi, F.muli
    for c in reversed(a):
        acc = addi(muli(acc, x), c)
    return acc


def _pderiv(F, a):
    out = [F.muli(c, j % F.p) for j, c in enumerate(a)][1:]
    return _ptrim(out)


def _synth_div(F, c, r):
    """Divide a nonzero c by (X - r): returns (quotient, remainder)."""
    m = len(c)
    quo = [0] * (m - 1)
    acc = c[-1]
    addi, muli = F.addi, F.muli
    for i in range(m - 2, -1, -1):
        quo[i] = acc
        acc = addi(muli(acc, r), c[i])
    return _ptrim(quo), acc


def _pshift(F, a, r):
    """Coefficients of a(X + r), by repeated synthetic division."""
    c = list(a)
    out = []
    while c:
        c, rem = _synth_div(F, c, r)
        out.append(rem)
    return _ptrim(out)


# ---------------------------------------------------------------------------
# Irreducibility, factor degrees, splitting fields.
# ---------------------------------------------------------------------------


def _p_is_irreducible(F, c):
    n = _pdeg(c)
    if n == 1:
        return True
    x = [0, 1]
    h = list(x)
    for _ in range(n // 2):
        h = _ppowmod(F, h, F.q, c)
        g = _pgcd(F, c, _psub(F, h, x))
        if _pdeg(g) != 0:
            return False
    return True


def _p_splitting_degree(F, c):
    """lcm of the degrees of the irreducible factors of a nonconstant c."""
    work = _pmonic(F, c)
    out = 1
    d = 0
    while _pdeg(work) > 0:
        d += 1
        if d > _pdeg(work) // 2:
            # all smaller factor degrees are stripped, so work is irreducible
            out = out * _pdeg(work) // _int_gcd(out, _pdeg(work))
            break
        h = _ppowmod(F, [0, 1], F.q ** d, work)
        g = _pgcd(F, work, _psub(F, h, [0, 1]))
        if _pdeg(g) > 0:
            out = out * d // _int_gcd(out, d)
            while True:
                common = _pgcd(F, work, g)
                if _pdeg(common) == 0:
                    break
                work, rem = _pdivrem(F, work, common)
                assert not rem
    return out


# -- root extraction over an explicit extension ----------------------------

_SCAN_LIMIT = 1 << 16


def _distinct_roots(E, c):
    """Distinct roots in E of a nonconstant squarefree-or-not c over E."""
    if E.q <= _SCAN_LIMIT:
        return [x for x in range(E.q) if _peval(E, c, x) == 0]
    # product of the linear factors over E, then deterministic splitting
    xq = _ppowmod(E, [0, 1], E.q, c)
    lin = _pgcd(E, c, _psub(E, xq, [0, 1]))
    roots = []
    stack = [lin] if _pdeg(lin) > 0 else []
    while stack:
        g = stack.pop()
        dg = _pdeg(g)
        if dg == 1:
            roots.append(E.negi(g[0]))
            continue
        stack.extend(_split_once(E, g))
    roots.sort()
    return roots


def _split_once(E, g):
    """Split a monic product of >= 2 distinct linear factors into two proper
    monic factors, deterministically."""
    dg = _pdeg(g)
    if E.p == 2:
        # Separate roots by the absolute trace of alpha * root.  Scanning
        # alpha over the monomial basis u^j is guaranteed to split within n
        # tries: if every basis vector gave all roots the same trace, the
        # difference of two roots would pair to zero with the whole field.
        m = E.n
        for j in range(m):
            alpha = 1 << j if m > 1 else 1
            h = [0, alpha]
            if len(h) >= len(g):
                _, h = _pdivrem(E, h, g)
            w = list(h)
            for _ in range(m - 1):
                h = _pmul(E, h, h)
                if len(h) >= len(g):
                    _, h = _pdivrem(E, h, g)
                w = _padd(E, w, h)
            d = _pgcd(E, g, w)
            if 0 < _pdeg(d) < dg:
                q, rem = _pdivrem(E, g, d)
                assert not rem
                return d, q
        raise AssertionError("no separating trace multiplier found")
    else:
        half = (E.q - 1) // 2
        for shift in range(E.q):
            w = _ppowmod(E, [shift, 1], half, g)
            w = _psub(E, w, [1])
            d = _pgcd(E, g, w)
            if 0 < _pdeg(d) < dg:
                q, rem = _pdivrem(E, g, d)
                assert not rem
                return d, q
        raise AssertionError("no separating shift found")


def _proots(K, c, E):
    """Roots of c (over K) in the extension E, as (index, multiplicity),
    sorted by root index."""
    if E is K:
        ce = list(c)
    else:
        _, fwd, _ = E._embed_data(K)
        ce = [fwd[ci] for ci in c]
    out = []
    for r in _distinct_roots(E, ce):
        mult = 0
        work = ce
        while True:
            quo, rem = _synth_div(E, work, r)
            if rem != 0:
                break
            mult += 1
            work = quo
        out.append((r, mult))
    return out


# ---------------------------------------------------------------------------
# Public wrapper.
# ---------------------------------------------------------------------------


class Polynomial:
    """Immutable dense polynomial over a fixed finite field."""

    __slots__ = ("field", "_c")

    def __init__(self, field, coeffs=()):
        self.field = field
        idxs = []
        for c in coeffs:
            idxs.append(field.element(c).i)
        self._c = tuple(_ptrim(idxs))

    @classmethod
    def _raw(cls, field, idx_list):
        self = object.__new__(cls)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_c", tuple(idx_list))
        return self

    def __setattr__(self, name, value):
        if name in self.__slots__ and not hasattr(self, "_c"):
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("Polynomial is immutable")

    @classmethod
    def x(cls, field):
        return cls._raw(field, (0, 1))

    @classmethod
    def constant(cls, field, value):
        e = field.element(value)
        return cls._raw(field, (e.i,) if e.i else ())

    # -- structure -----------------------------------------------------------

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def coeffs(self):
        return tuple(gf.FieldElement(self.field, c) for c in self._c)

    def coefficient(self, j):
        c = self._c[j] if 0 <= j < len(self._c) else 0
        return gf.FieldElement(self.field, c)

    @property
    def lead(self):
        if not self._c:
            return self.field.zero
        return gf.FieldElement(self.field, self._c[-1])

    def is_zero(self):
        return not self._c

    def is_monic(self):
        return bool(self._c) and self._c[-1] == 1

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, gf.FieldElement)):
                return Polynomial.constant(self.field, other)
            return None
        if other.field is not self.field:
            raise ValueError("polynomials over different fields")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return Polynomial._raw(self.field, _padd(self.field, list(self._c), list(o._c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return Polynomial._raw(self.field, _psub(self.field, list(self._c), list(o._c)))

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Polynomial._raw(self.field, _pneg(self.field, list(self._c)))

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return Polynomial._raw(self.field, _pmul(self.field, list(self._c), list(o._c)))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative polynomial power")
        return Polynomial._raw(self.field, _ppow(self.field, list(self._c), e))

    def divrem(self, other):
        o = self._check(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = _pdivrem(self.field, list(self._c), list(o._c))
        return Polynomial._raw(self.field, q), Polynomial._raw(self.field, r)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def gcd(self, other):
        o = self._check(other)
        if o is None:
            raise TypeError("gcd with a non-polynomial")
        return Polynomial._raw(self.field, _pgcd(self.field, list(self._c), list(o._c)))

    def monic(self):
        return Polynomial._raw(self.field, _pmonic(self.field, list(self._c)))

    def derivative(self):
        return Polynomial._raw(self.field, _pderiv(self.field, list(self._c)))

    def shifted(self, r):
        """The polynomial X -> self(X + r)."""
        ri = self.field.element(r).i
        return Polynomial._raw(self.field, _pshift(self.field, list(self._c), ri))

    def __call__(self, x):
        xi = self.field.element(x).i
        return gf.FieldElement(self.field, _peval(self.field, self._c, xi))

    def map_coefficients(self, fn):
        """Apply an element-to-element function to every coefficient."""
        out = [fn(gf.FieldElement(self.field, c)) for c in self._c]
        field = out[0].field if out else self.field
        return Polynomial._raw(field, _ptrim([e.i for e in out]))

    # -- comparison / hashing / text -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return other.field is self.field and other._c == self._c
        if isinstance(other, (int, gf.FieldElement)):
            o = Polynomial.constant(self.field, other)
            return o._c == self._c
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self._c))

    def __bool__(self):
        return bool(self._c)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}) over {self.field!r}"


# ---------------------------------------------------------------------------
# Spec-level operations.
# ---------------------------------------------------------------------------


def poly_arith(f, g, op):
    """Ring operations dispatch: add, sub, mul, divrem, gcd."""
    if f.field is not g.field:
        raise ValueError("polynomials over different fields")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "divrem":
        return f.divrem(g)
    if op == "gcd":
        return f.gcd(g)
    raise ValueError(f"unknown operation {op!r}")


def is_irreducible(f):
    """Whether f is irreducible over its coefficient field."""
    if f.degree < 1:
        raise ValueError("irreducibility is undefined for constant polynomials")
    return _p_is_irreducible(f.field, list(f._c))


def splitting_degree(f):
    """Smallest m such that f splits into linear factors over F_{q^m}."""
    if f.degree < 1:
        raise ValueError("splitting degree is undefined for constant polynomials")
    return _p_splitting_degree(f.field, list(f._c))


def splitting_field(f):
    """The canonical field F_{q^m} over which f splits completely."""
    m = splitting_degree(f)
    K = f.field
    return gf.make_field(K.p, K.n * m)


def roots_over(f, ext):
    """All roots of f in ext, as a list of (root, multiplicity) pairs sorted
    by the canonical element order."""
    K = f.field
    if ext.p != K.p or ext.n % K.n != 0:
        raise ValueError(f"{ext!r} is not an extension of {K!r}")
    if f.degree < 1:
        return []
    return [(gf.FieldElement(ext, r), m)
            for r, m in _proots(K, list(f._c), ext)]


# ---------------------------------------------------------------------------
# Text format.
# ---------------------------------------------------------------------------


def format_poly(f):
    """Canonical text over x with generator u, e.g. ``x^2+u*x+1``."""
    if not f._c:
        return "0"
    parts = []
    for j in range(len(f._c) - 1, -1, -1):
        ci = f._c[j]
        if not ci:
            continue
        ctext = gf.format_element(gf.FieldElement(f.field, ci))
        if j == 0:
            parts.append(ctext)
            continue
        xpow = "x" if j == 1 else f"x^{j}"
        if ci == 1:
            parts.append(xpow)
        elif "+" in ctext:
            parts.append(f"({ctext})*{xpow}")
        else:
            parts.append(f"{ctext}*{xpow}")
    return "+".join(parts)


class _PolyCtx:
    def __init__(self, field):
        self.field = field

    def const(self, k):
        return Polynomial.constant(self.field, k)

    def var(self, name):
        if name == "x":
            return Polynomial.x(self.field)
        if name == "u":
            return Polynomial.constant(self.field, self.field.gen)
        raise _expr.ExprError(f"unknown variable {name!r} (use x and u)")

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        raise _expr.ExprError("division is not allowed in a polynomial")

    @staticmethod
    def pow(a, e):
        return a ** e

    @staticmethod
    def parse(field, text):
        return _expr.parse(text, _PolyCtx(field))


def parse_poly(field, text):
    """Parse polynomial text such as ``x^3-x+1`` over the given field."""
    return _PolyCtx.parse(field, text)
