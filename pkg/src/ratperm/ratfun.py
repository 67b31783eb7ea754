"""Rational functions as maps on the projective line P1(F_q).

A rational function is stored reduced (coprime numerator and denominator,
monic denominator) and evaluated projectively: zeros of the denominator map
to the point at infinity, and the value at infinity is read off the leading
coefficients.  The module also hosts the group of degree-1 maps (Mobius
transformations, isomorphic to PGL(2, q)), equivalence testing
f = phi o g o psi, and the single-point-preimage test for equivalence to a
polynomial.
"""

from __future__ import annotations

from functools import lru_cache

from . import _expr, gf
from .poly import (
    Polynomial,
    _padd,
    _pdeg,
    _peval,
    _pmonic,
    _pmul,
    _ppow,
    _pscale,
    _psub,
    _ptrim,
    format_poly,
)


class _Infinity:
    """The point at infinity on P1; a singleton."""

    __slots__ = ()

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_infinity_instance, ())


INFINITY = _Infinity()


def _infinity_instance():
    return INFINITY


class RationalFunction:
    """A reduced fraction of polynomials over one finite field.

    Arithmetic (+, -, *, /) stays within the field of fractions; evaluation
    and composition treat the function as a map on the projective line.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            raise TypeError("numerator must be a Polynomial")
        field = num.field
        if den is None:
            den = Polynomial.constant(field, 1)
        if not isinstance(den, Polynomial):
            den = Polynomial.constant(field, den)
        if den.field is not field:
            raise ValueError("numerator and denominator over different fields")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if g.degree > 0:
            num, _ = num.divrem(g)
            den, _ = den.divrem(g)
        if not den.is_monic():
            lead_inv = den.lead ** (-1)
            num = num * lead_inv
            den = den * lead_inv
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @property
    def degree(self):
        return max(self.num.degree, self.den.degree)

    def is_poly(self):
        return self.den.degree == 0

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field is not self.field:
                raise ValueError("rational functions over different fields")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, gf.FieldElement)):
            return RationalFunction(Polynomial.constant(self.field, other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den,
                                self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den - o.num * self.den,
                                self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e):
        if e < 0:
            return RationalFunction(self.den ** (-e), self.num ** (-e))
        return RationalFunction(self.num ** e, self.den ** e)

    # -- comparison / text ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return (other.field is self.field and other.num == self.num
                    and other.den == self.den)
        if isinstance(other, (Polynomial, int, gf.FieldElement)):
            o = self._coerce(other)
            return o.num == self.num and o.den == self.den
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.num._c, self.den._c))

    def __bool__(self):
        return not self.num.is_zero()

    def __call__(self, pt):
        return evaluate(self, pt)

    def __str__(self):
        return format_ratfun(self)

    def __repr__(self):
        return f"RationalFunction({format_ratfun(self)!r}) over {self.field!r}"


def normalize(num, den):
    """Reduce P/Q to coprime form with a monic denominator."""
    if num.is_zero() and den.is_zero():
        raise ZeroDivisionError("0/0 is not a rational function")
    return RationalFunction(num, den)


def evaluate(f, pt):
    """Value of f at a projective point (a field element or INFINITY)."""
    if pt is INFINITY:
        dn, dd = f.num.degree, f.den.degree
        if dn > dd:
            return INFINITY
        if dn < dd:
            return f.field.zero
        return f.num.lead / f.den.lead
    x = f.field.element(pt)
    dv = f.den(x)
    if not dv:
        return INFINITY
    return f.num(x) / dv


def compose(f, g):
    """The reduced composition f o g of rational functions."""
    if f.field is not g.field:
        raise ValueError("rational functions over different fields")
    F = f.field
    A, B = list(g.num._c), list(g.den._c)
    if _pdeg(A) <= 0 and _pdeg(B) <= 0:
        val = evaluate(f, gf.FieldElement(F, A[0] if A else 0))
        if val is INFINITY:
            raise ZeroDivisionError("composition is the constant infinity")
        return RationalFunction(Polynomial.constant(F, val))
    m = f.degree
    apow = [[1]]
    bpow = [[1]]
    for _ in range(m):
        apow.append(_pmul(F, apow[-1], A))
        bpow.append(_pmul(F, bpow[-1], B))

    def homog(coeffs):
        acc = []
        for i, ci in enumerate(coeffs):
            if ci:
                acc = _padd(F, acc, _pscale(F, _pmul(F, apow[i], bpow[m - i]), ci))
        return acc

    num = homog(f.num._c)
    den = homog(f.den._c)
    return RationalFunction(Polynomial._raw(F, num), Polynomial._raw(F, den))


# alias matching the operation's conventional name
eval = evaluate  # noqa: A001


# ---------------------------------------------------------------------------
# Value tables.  A table is a tuple of q+1 codes: position i < q holds the
# value at the element of index i, position q the value at infinity; the code
# q stands for infinity itself.
# ---------------------------------------------------------------------------


def value_table(f):
    F = f.field
    q = F.q
    num, den = f.num._c, f.den._c
    out = []
    for x in range(q):
        dv = _peval(F, den, x)
        if dv == 0:
            out.append(q)
        else:
            out.append(F.divi(_peval(F, num, x), dv))
    dn, dd = _pdeg(num), _pdeg(den)
    if dn > dd:
        out.append(q)
    elif dn < dd:
        out.append(0)
    else:
        out.append(F.divi(num[-1], den[-1]))
    return tuple(out)


def is_bijection(table, q):
    return len(set(table)) == q + 1


# ---------------------------------------------------------------------------
# Mobius transformations.
# ---------------------------------------------------------------------------


class MobiusTransform:
    """(aX + b)/(cX + d) with ad - bc != 0, scaled so that the first nonzero
    of (a, b, c, d) is 1."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, field, a, b, c, d):
        self._init(field, field.element(a).i, field.element(b).i,
                   field.element(c).i, field.element(d).i)

    def _init(self, field, ai, bi, ci, di):
        det = field.subi(field.muli(ai, di), field.muli(bi, ci))
        if det == 0:
            raise ValueError("singular coefficient matrix")
        for lead in (ai, bi, ci, di):
            if lead:
                inv = field.invi(lead)
                ai, bi = field.muli(ai, inv), field.muli(bi, inv)
                ci, di = field.muli(ci, inv), field.muli(di, inv)
                break
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", ai)
        object.__setattr__(self, "b", bi)
        object.__setattr__(self, "c", ci)
        object.__setattr__(self, "d", di)

    @classmethod
    def _from_indices(cls, field, ai, bi, ci, di):
        self = object.__new__(cls)
        self._init(field, ai, bi, ci, di)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("MobiusTransform is immutable")

    @classmethod
    def identity(cls, field):
        return cls._from_indices(field, 1, 0, 0, 1)

    @property
    def key(self):
        return (self.a, self.b, self.c, self.d)

    def apply_code(self, code):
        """Apply to a table code (element index, or q for infinity)."""
        F = self.field
        if code == F.q:
            if self.c == 0:
                return F.q
            return F.divi(self.a, self.c)
        numv = F.addi(F.muli(self.a, code), self.b)
        denv = F.addi(F.muli(self.c, code), self.d)
        if denv == 0:
            return F.q
        return F.divi(numv, denv)

    def apply(self, pt):
        code = self.field.q if pt is INFINITY else self.field.element(pt).i
        out = self.apply_code(code)
        if out == self.field.q:
            return INFINITY
        return gf.FieldElement(self.field, out)

    def table(self):
        return tuple(self.apply_code(i) for i in range(self.field.q + 1))

    def compose(self, other):
        """self o other, again a Mobius transformation."""
        F = self.field
        if other.field is not F:
            raise ValueError("transforms over different fields")
        a = F.addi(F.muli(self.a, other.a), F.muli(self.b, other.c))
        b = F.addi(F.muli(self.a, other.b), F.muli(self.b, other.d))
        c = F.addi(F.muli(self.c, other.a), F.muli(self.d, other.c))
        d = F.addi(F.muli(self.c, other.b), F.muli(self.d, other.d))
        return MobiusTransform._from_indices(F, a, b, c, d)

    def inverse(self):
        F = self.field
        return MobiusTransform._from_indices(F, self.d, F.negi(self.b),
                                              F.negi(self.c), self.a)

    def to_ratfun(self):
        F = self.field
        num = Polynomial._raw(F, _ptrim([self.b, self.a]))
        den = Polynomial._raw(F, _ptrim([self.d, self.c]))
        return RationalFunction(num, den)

    def __eq__(self, other):
        if not isinstance(other, MobiusTransform):
            return NotImplemented
        return other.field is self.field and other.key == self.key

    def __hash__(self):
        return hash((id(self.field), self.key))

    def __repr__(self):
        els = [str(gf.FieldElement(self.field, i)) for i in self.key]
        return f"MobiusTransform(({els[0]})*x+({els[1]}))/(({els[2]})*x+({els[3]}))"


@lru_cache(maxsize=None)
def enumerate_pgl(field):
    """All Mobius transformations over the field, in canonical lexicographic
    order on the scaled coefficient tuples; exactly q^3 - q of them."""
    q = field.q
    out = []
    for c in range(1, q):
        for d in range(q):
            out.append(MobiusTransform._from_indices(field, 0, 1, c, d))
    for b in range(q):
        for c in range(q):
            bc = field.muli(b, c)
            for d in range(q):
                if d != bc:
                    out.append(MobiusTransform._from_indices(field, 1, b, c, d))
    return tuple(out)


@lru_cache(maxsize=None)
def _pgl_tables(field):
    return tuple((t, t.table()) for t in enumerate_pgl(field))


# ---------------------------------------------------------------------------
# Equivalence f = phi o g o psi.
# ---------------------------------------------------------------------------


def _first_distinct_triple(table):
    v0 = table[0]
    i1 = next((i for i in range(1, len(table)) if table[i] != v0), None)
    if i1 is None:
        return None
    i2 = next((i for i in range(i1 + 1, len(table))
               if table[i] != v0 and table[i] != table[i1]), None)
    if i2 is None:
        return None
    return 0, i1, i2


def _mobius_to_01inf(field, v0, v1, v2):
    """The unique Mobius transform sending the distinct codes (v0, v1, v2)
    to (0, 1, infinity)."""
    F = field
    q = F.q
    if v0 == q:
        return MobiusTransform._from_indices(F, 0, F.subi(v1, v2), 1, F.negi(v2))
    if v1 == q:
        return MobiusTransform._from_indices(F, 1, F.negi(v0), 1, F.negi(v2))
    if v2 == q:
        d = F.subi(v1, v0)
        return MobiusTransform._from_indices(F, 1, F.negi(v0), 0, d)
    s = F.subi(v1, v2)
    t = F.subi(v1, v0)
    return MobiusTransform._from_indices(F, s, F.negi(F.muli(v0, s)),
                                         t, F.negi(F.muli(v2, t)))


def canonical_key(field, table):
    """Table canonicalized by the unique post-map sending its first three
    distinct values to (0, 1, infinity); None if fewer than 3 values."""
    triple = _first_distinct_triple(table)
    if triple is None:
        return None
    i0, i1, i2 = triple
    phi = _mobius_to_01inf(field, table[i0], table[i1], table[i2])
    pt = phi.table()
    return tuple(pt[v] for v in table)


def _value_pattern(table):
    counts = {}
    for v in table:
        counts[v] = counts.get(v, 0) + 1
    return tuple(sorted(counts.values()))


def _witness_checks(f, g, phi, psi):
    return compose(phi.to_ratfun(), compose(g, psi.to_ratfun())) == f


def are_equivalent(f, g):
    """Witnesses (phi, psi) with f = phi o g o psi in F_q(X), or None.

    Value tables drive the search: for each psi, the matching phi is pinned
    by where the first three distinct values of g o psi must go.  A table
    match underdetermines the function whenever q <= 2 deg f, so every
    candidate is confirmed by exact composition before it is returned.  The
    returned pair is the first confirmed hit in canonical PGL order of psi.
    """
    if f.field is not g.field:
        raise ValueError("rational functions over different fields")
    F = f.field
    q = F.q
    if f.degree != g.degree:
        return None
    tf = value_table(f)
    tg = value_table(g)
    if _value_pattern(tf) != _value_pattern(tg):
        return None
    if len(set(tf)) < 3 or len(set(tg)) < 3:
        return _are_equivalent_degenerate(f, g, tf, tg)
    for psi, tpsi in _pgl_tables(F):
        t1 = tuple(tg[tpsi[i]] for i in range(q + 1))
        trip = _first_distinct_triple(t1)
        if trip is None:
            continue
        i0, i1, i2 = trip
        w0, w1, w2 = tf[i0], tf[i1], tf[i2]
        if w0 == w1 or w0 == w2 or w1 == w2:
            continue
        a = _mobius_to_01inf(F, t1[i0], t1[i1], t1[i2])
        b = _mobius_to_01inf(F, w0, w1, w2)
        phi = b.inverse().compose(a)
        pt = phi.table()
        if all(tf[i] == pt[t1[i]] for i in range(q + 1)):
            if _witness_checks(f, g, phi, psi):
                return phi, psi
    return None


def _are_equivalent_degenerate(f, g, tf, tg):
    F = f.field
    q = F.q
    tables = _pgl_tables(F)
    for psi, tpsi in tables:
        t1 = tuple(tg[tpsi[i]] for i in range(q + 1))
        for phi, tphi in tables:
            if all(tf[i] == tphi[t1[i]] for i in range(q + 1)):
                if _witness_checks(f, g, phi, psi):
                    return phi, psi
    return None


# ---------------------------------------------------------------------------
# Equivalence to a polynomial: some projective point must have its entire
# degree-worth of preimages concentrated at one rational point.
# ---------------------------------------------------------------------------


def _linear_power_root(F, h, d):
    """If the monic degree-d polynomial h equals (X - xi)^d, return xi's
    index, else None."""
    p, n = F.p, F.n
    a = 0
    e = d
    while e % p == 0:
        e //= p
        a += 1
    # h = (X^{p^a} - xi^{p^a})^e; read xi^{p^a} off the Y^{e-1} coefficient
    pos = (p ** a) * (e - 1)
    c = h[pos] if pos < len(h) else 0
    w = F.negi(F.divi(c, e % p))
    xi = F.frobi(w, (n - a) % n) if a % n else w
    check = _ppow(F, [F.negi(xi), 1], d)
    return xi if check == list(h) else None


def is_polynomial_equivalent(f):
    """Whether some phi o f o psi with degree-1 phi, psi is a polynomial."""
    d = f.degree
    if d < 1:
        raise ValueError("equivalence to a polynomial needs degree >= 1")
    F = f.field
    P, Q = list(f.num._c), list(f.den._c)
    if _pdeg(Q) == 0:
        return True
    if _pdeg(Q) == d and _linear_power_root(F, Q, d) is not None:
        # the whole pole divisor sits at one rational point
        return True
    for eta in range(F.q):
        h = _psub(F, P, _pscale(F, Q, eta))
        dh = _pdeg(h)
        if dh == 0:
            return True
        if dh == d:
            hm = _pmonic(F, h)
            if _linear_power_root(F, hm, d) is not None:
                return True
    return False


# ---------------------------------------------------------------------------
# Text format.  Canonical output is the reduced fraction; the parser accepts
# the full expression grammar over x and u including '-' and '/'.
# ---------------------------------------------------------------------------


def format_ratfun(f):
    num_text = format_poly(f.num)
    if f.den.degree == 0:
        return num_text
    return f"({num_text})/({format_poly(f.den)})"


class _RatCtx:
    def __init__(self, field):
        self.field = field

    def const(self, k):
        return RationalFunction(Polynomial.constant(self.field, k))

    def var(self, name):
        if name == "x":
            return RationalFunction(Polynomial.x(self.field))
        if name == "u":
            return RationalFunction(Polynomial.constant(self.field, self.field.gen))
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
        return a / b

    @staticmethod
    def pow(a, e):
        return a ** e


def parse_ratfun(field, text):
    """Parse rational-function text such as ``x+1/(x^2+x+1)``."""
    return _expr.parse(text, _RatCtx(field))
