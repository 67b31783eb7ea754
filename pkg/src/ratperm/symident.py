"""Exact sparse multivariate polynomials over the integers.

Backs the symbolic side of the power-sum arguments: the bivariate
coefficient polynomials h1, h2, h3 (and the large degree-4 obstruction
polynomial) live here as guarded fixtures, resultants of them are computed
exactly, and any identity can be instantiated over a finite field to be
checked against the numeric engine.
"""

from __future__ import annotations

import hashlib
from importlib import resources

from . import _expr
from .gf import FieldElement

_IDENTITY_FILES = {
    "h1": "h1.txt",
    "h2": "h2.txt",
    "h3": "h3.txt",
    "t35_h": "t35_h.txt",
}

_IDENTITY_SHA256 = {
    "h1": "5fe03367a76852acbef41422c638c5a2278ba682289f86b6f5d537f514a51350",
    "h2": "17376046442e671381fde2e6e2ae74bc6a3cbbc83d4bc9d0d7a5a9cc998dfa47",
    "h3": "66b7d17b69645eca6608d7f45a3cc3f603b5fbb0764bb13d73743cca968510f9",
    "t35_h": "0052dfa01575b2fd8e4f8848d41bb711ce87066fa8fbdd6ecc30f21262623146",
}


def _merge_vars(a, b):
    out = list(a)
    out.extend(v for v in b if v not in out)
    return tuple(out)


def _grlex_key(expts):
    return (sum(expts), expts)


class MultiPoly:
    """Immutable multivariate polynomial with integer coefficients.

    Terms map exponent vectors (aligned with the ordered variable tuple) to
    nonzero coefficients.  Serialization runs in graded lexicographic order,
    highest first, so equal polynomials print identically.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=()):
        object.__setattr__(self, "variables", tuple(variables))
        clean = {}
        for expts, coeff in dict(terms).items():
            expts = tuple(expts)
            if len(expts) != len(self.variables):
                raise ValueError("exponent vector does not match variables")
            if coeff:
                clean[expts] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def constant(cls, c, variables=()):
        variables = tuple(variables)
        if not c:
            return cls(variables)
        return cls(variables, {(0,) * len(variables): int(c)})

    @classmethod
    def variable(cls, name, variables=None):
        variables = (name,) if variables is None else tuple(variables)
        expts = [0] * len(variables)
        expts[variables.index(name)] = 1
        return cls(variables, {tuple(expts): 1})

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var):
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def _aligned(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(other, self.variables)
        if not isinstance(other, MultiPoly):
            return None, None
        if self.variables == other.variables:
            return self, other
        merged = _merge_vars(self.variables, other.variables)
        return self._embed(merged), other._embed(merged)

    def _embed(self, variables):
        if variables == self.variables:
            return self
        pos = [variables.index(v) for v in self.variables]
        terms = {}
        for expts, coeff in self.terms.items():
            out = [0] * len(variables)
            for where, e in zip(pos, expts):
                out[where] = e
            terms[tuple(out)] = coeff
        return MultiPoly(variables, terms)

    def __add__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        terms = dict(a.terms)
        for expts, coeff in b.terms.items():
            terms[expts] = terms.get(expts, 0) + coeff
        return MultiPoly(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables,
                         {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                terms[key] = terms.get(key, 0) + c1 * c2
        return MultiPoly(a.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = MultiPoly.constant(1, self.variables)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def coefficients_in(self, var):
        """Coefficient polynomials of each power of var, constant first."""
        i = self.variables.index(var)
        deg = self.degree_in(var)
        rows = [{} for _ in range(deg + 1)]
        for expts, coeff in self.terms.items():
            rest = expts[:i] + (0,) + expts[i + 1:]
            rows[expts[i]][rest] = coeff
        return [MultiPoly(self.variables, row) for row in rows]

    def to_text(self):
        if not self.terms:
            return "0"
        chunks = []
        for expts in sorted(self.terms, key=_grlex_key, reverse=True):
            coeff = self.terms[expts]
            factors = [f"{v}^{e}" if e > 1 else v
                       for v, e in zip(self.variables, expts) if e]
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            sign = "-" if coeff < 0 else "+"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = [first_body if first_sign == "+" else "-" + first_body]
        out.extend(f"{s}{b}" for s, b in chunks[1:])
        return "".join(out)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"


class _MPolyCtx:
    def __init__(self, variables):
        self.variables = tuple(variables) if variables is not None else None

    def const(self, value):
        return MultiPoly.constant(value, self.variables or ())

    def var(self, name):
        if self.variables is not None and name not in self.variables:
            raise _expr.ExprError(f"unknown variable {name!r}")
        return MultiPoly.variable(name, self.variables)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        raise _expr.ExprError("division is not defined for integer polynomials")

    def pow(self, a, e):
        return a ** e


def parse_mpoly(text, variables=None):
    """Parse an integer polynomial; unknown names become new variables
    unless an explicit variable tuple is given."""
    return _expr.parse(text, _MPolyCtx(variables))


def mpoly_arith(f, g, op):
    """Ring operation on two polynomials, variables merged by union."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Resultants.
# ---------------------------------------------------------------------------


def _leading(f):
    expts = max(f.terms, key=_grlex_key)
    return expts, f.terms[expts]


def _exact_div(f, g):
    """Quotient f/g in the integer polynomial ring; f must be divisible."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    f, g = f._aligned(g)
    quo = MultiPoly(f.variables)
    rem = f
    ge, gc = _leading(g)
    while not rem.is_zero():
        re, rc = _leading(rem)
        de = tuple(a - b for a, b in zip(re, ge))
        dc, leftover = divmod(rc, gc)
        if leftover or any(e < 0 for e in de):
            raise ArithmeticError("inexact polynomial division")
        t = MultiPoly(f.variables, {de: dc})
        quo = quo + t
        rem = rem - t * g
    return quo


def sylvester_matrix(f, g, var):
    """The standard Sylvester matrix of f and g with respect to var.

    Rows hold the descending coefficients of f (deg g rows) above those of
    g (deg f rows), each shifted one column per row.
    """
    m = f.degree_in(var) if var in f.variables else 0
    n = g.degree_in(var) if var in g.variables else 0
    if m <= 0 and n <= 0:
        raise ValueError(f"neither input has positive degree in {var!r}")
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    merged = _merge_vars(f.variables, g.variables)
    if var not in merged:
        merged = merged + (var,)
    f = f._embed(merged)
    g = g._embed(merged)
    fc = f.coefficients_in(var)[::-1]
    gc = g.coefficients_in(var)[::-1]
    size = m + n
    zero = MultiPoly(merged)
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - i - len(fc)))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - i - len(gc)))
    return rows


def _det_bareiss(rows):
    n = len(rows)
    m = [list(r) for r in rows]
    if n == 0:
        return MultiPoly.constant(1)
    sign = 1
    denom = MultiPoly.constant(1, m[0][0].variables)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()),
                        None)
            if swap is None:
                return MultiPoly(m[0][0].variables)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j],
                                     denom)
            m[i][k] = MultiPoly(m[0][0].variables)
        denom = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _det_cofactor(rows):
    """Cofactor-expansion determinant; the small-case oracle for Bareiss."""
    n = len(rows)
    if n == 0:
        return MultiPoly.constant(1)
    if n == 1:
        return rows[0][0]
    total = MultiPoly(rows[0][0].variables)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det_cofactor(minor)
        total = total - term if j % 2 else total + term
    return total


def resultant_wrt(f, g, var, method="bareiss"):
    """Resultant of f and g as polynomials in var, exact over the integers.

    The sign is the determinant of the standard Sylvester arrangement, so
    Res(f, g) = (-1)^(deg f * deg g) Res(g, f).
    """
    rows = sylvester_matrix(f, g, var)
    if method == "bareiss":
        return _det_bareiss(rows)
    if method == "cofactor":
        return _det_cofactor(rows)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Field instantiation.
# ---------------------------------------------------------------------------


def instantiate(f, assignment, field):
    """Evaluate f over a finite field, reducing coefficients mod p.

    assignment maps each variable of f to a field element (or an integer,
    read mod p); variables with only zero exponents may be omitted.
    """
    total = 0
    for expts, coeff in f.terms.items():
        acc = field.element(coeff).i
        for name, e in zip(f.variables, expts):
            if not e:
                continue
            if name not in assignment:
                raise ValueError(f"missing variable {name!r}")
            v = assignment[name]
            vi = v.i if isinstance(v, FieldElement) else field.element(v).i
            acc = field.muli(acc, field.powi(vi, e))
        total = field.addi(total, acc)
    return FieldElement(field, total)


# ---------------------------------------------------------------------------
# Stored identities.
# ---------------------------------------------------------------------------


def load_identity(name):
    """One of the stored coefficient polynomials: h1, h2, h3 or t35_h.

    The file's checksum is pinned at transcription time; any drift in the
    stored text raises instead of silently changing the mathematics.
    """
    if name not in _IDENTITY_FILES:
        raise ValueError(f"unknown identity {name!r}")
    path = resources.files("ratperm").joinpath("data", "v1",
                                               _IDENTITY_FILES[name])
    text = path.read_text(encoding="utf-8")
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    if digest != _IDENTITY_SHA256[name]:
        raise ValueError(f"identity file for {name} fails its checksum")
    return parse_mpoly(text.strip(), ("a", "r1", "r2"))


def resultant_case_split():
    """Both stored resultants plus the characteristic split they support.

    The Sylvester determinant of (h1, h2) in r1 comes out as
    972 a^2 r2^12, not the bare 972 r2^12 one might expect from the
    a-free answer for (h1, h3).  The a^2 factor is forced: the a-free
    part of h2 is exactly 3 h1^2, so h2 is a multiple of a modulo h1
    and the product formula picks up a^2.  For the application the
    factor is harmless because a is a nonzero scalar whenever the
    shared-root argument runs, so only the constant 972 = 2^2 3^5
    decides which characteristics are covered.  Res(h1, h3; r1) =
    5103 r2^12 with 5103 = 3^6 7 has no a at all (both a-blocks of h3
    vanish modulo h1).  Together the two cover every characteristic
    other than 3, and the returned table records which resultant
    covers which otherwise-missed prime.
    """
    h1 = load_identity("h1")
    h2 = load_identity("h2")
    h3 = load_identity("h3")
    vs = ("a", "r1", "r2")
    r2_12 = parse_mpoly("r2^12", vs)
    a_sq = parse_mpoly("a^2", vs)
    res12 = resultant_wrt(h1, h2, "r1")
    res13 = resultant_wrt(h1, h3, "r1")
    assert res12 == 972 * a_sq * r2_12
    assert res13 == 5103 * r2_12
    assert 972 == 2 ** 2 * 3 ** 5 and 5103 == 3 ** 6 * 7
    split = {2: "h3", 7: "h2"}
    assert 5103 % 2 and 972 % 7
    return {
        "res_h1_h2": res12,
        "res_h1_h3": res13,
        "unit_factors": {"res_h1_h2": a_sq,
                         "res_h1_h3": MultiPoly.constant(1, vs)},
        "constants": {"res_h1_h2": 972, "res_h1_h3": 5103},
        "covers": split,
    }
