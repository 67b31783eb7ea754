"""Exact power sums of rational functions over finite fields.

The engine rests on Carlitz's identity

    sum over x in F_q of 1/(x - X)^k  =  1/(X^q - X)^k      (1 <= k <= q).

Given f with no poles in F_q, the sum of f(x)^s over F_q is read off from
the partial fraction decomposition of f(X)^s over a splitting field of the
denominator: each principal-part term b/(X - r)^k contributes b/(r^q - r)^k
and the polynomial part contributes minus the sum of its coefficients at
exponents divisible by q - 1.  A literal enumeration oracle and a direct
verifier for the identity itself are included.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import gf
from .gf import FieldElement, FiniteField
from .poly import (
    Polynomial,
    _padd,
    _pdeg,
    _peval,
    _pgcd,
    _pmul,
    _ppow,
    _ppowmod,
    _pshift,
    _psub,
    _synth_div,
    roots_over,
    splitting_field,
)
from .ratfun import RationalFunction


class FormulaOutOfRange(ValueError):
    """A pole order exceeds q, so the closed-form sum does not apply."""


def carlitz_identity_check(q, k):
    """Verify sum_{x in F_q} 1/(x - X)^k == 1/(X^q - X)^k exactly.

    The left side is accumulated over a running common denominator with no
    intermediate reduction; the two sides are then compared by
    cross-multiplication.
    """
    if not 1 <= k <= q:
        raise ValueError(f"the identity requires 1 <= k <= q, got k={k}")
    F = gf.field_from_order(q)
    neg_one = F.negi(1)
    acc_num = []
    acc_den = [1]
    for x in range(q):
        term = _ppow(F, [x, neg_one], k)
        acc_num = _padd(F, _pmul(F, acc_num, term), acc_den)
        acc_den = _pmul(F, acc_den, term)
    vanishing = [0] * (q + 1)
    vanishing[1] = neg_one
    vanishing[q] = 1
    rhs_den = _ppow(F, vanishing, k)
    return _pmul(F, acc_num, rhs_den) == acc_den


# ---------------------------------------------------------------------------
# Truncated power series over a field, as fixed-length coefficient lists.
# ---------------------------------------------------------------------------


def _ser_mul(E, a, b, k):
    out = [0] * k
    addi, muli = E.addi, E.muli
    for i, ai in enumerate(a[:k]):
        if not ai:
            continue
        for j, bj in enumerate(b[: k - i]):
            if bj:
                out[i + j] = addi(out[i + j], muli(ai, bj))
    return out


def _ser_inv(E, a, k):
    """Inverse of a unit power series mod t^k (a[0] must be nonzero)."""
    inv0 = E.invi(a[0])
    out = [inv0] + [0] * (k - 1)
    addi, muli = E.addi, E.muli
    for i in range(1, k):
        acc = 0
        for j in range(1, min(i, len(a) - 1) + 1):
            if a[j]:
                acc = addi(acc, muli(a[j], out[i - j]))
        out[i] = muli(E.negi(acc), inv0)
    return out


def _ser_pow(E, a, e, k):
    out = [1] + [0] * (k - 1)
    base = list(a[:k]) + [0] * (k - len(a[:k]))
    while e:
        if e & 1:
            out = _ser_mul(E, out, base, k)
        e >>= 1
        if e:
            base = _ser_mul(E, base, base, k)
    return out


# ---------------------------------------------------------------------------
# Pole geometry of a denominator: splitting field, roots, Frobenius orbits.
# ---------------------------------------------------------------------------


def _has_base_pole(f):
    F = f.field
    den = list(f.den._c)
    if _pdeg(den) < 1:
        return False
    xq = _ppowmod(F, [0, 1], F.q, den)
    g = _pgcd(F, _psub(F, xq, [0, 1]), den)
    return _pdeg(g) > 0


def _require_no_base_pole(f):
    if _has_base_pole(f):
        raise ValueError("denominator has a root in the base field")


@lru_cache(maxsize=None)
def _den_orbits(den):
    """Splitting field of den and its roots grouped into Frobenius orbits.

    Each orbit is (root indices in Frobenius order starting at the smallest,
    multiplicity); conjugate roots of a polynomial over the base field share
    their multiplicity.
    """
    ext = splitting_field(den)
    pairs = roots_over(den, ext)
    mult_of = {r.i: m for r, m in pairs}
    step = den.field.n
    seen = set()
    orbits = []
    for r, m in pairs:
        if r.i in seen:
            continue
        orbit = [r.i]
        seen.add(r.i)
        cur = ext.frobi(r.i, step)
        while cur != r.i:
            assert mult_of[cur] == m
            orbit.append(cur)
            seen.add(cur)
            cur = ext.frobi(cur, step)
        orbits.append((tuple(orbit), m))
    return ext, tuple(orbits)


# ---------------------------------------------------------------------------
# Partial fractions.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartialFractionDecomposition:
    """f(X)^s written as a polynomial plus principal parts at its poles.

    poly_part holds base-field coefficients a_0..a_m (constant first);
    pole_terms holds (root r, level k, coefficient b) triples over the
    splitting field, one per nonzero term b/(X - r)^k, sorted by (root
    index, level) and closed under the Frobenius of ext over base.
    """

    base_field: FiniteField
    ext_field: FiniteField
    poly_part: tuple
    pole_terms: tuple

    def recombine(self):
        """Reassembled rational function over the splitting field."""
        E = self.ext_field
        x = Polynomial.x(E)
        acc = RationalFunction(
            Polynomial(E, [gf.embed(a, E) for a in self.poly_part]))
        for r, k, b in self.pole_terms:
            acc = acc + RationalFunction(Polynomial.constant(E, b), (x - r) ** k)
        return acc


def _orbit_principal_parts(ext, base, num_ext, den_ext, orbit, e, s):
    """Principal-part coefficients of (num/den)^s at one orbit of poles.

    Yields (root index, level, coefficient index) triples.  The Taylor
    expansion is computed once at the smallest root by shifting (repeated
    synthetic division), series-inverting the pole-free denominator factor,
    and raising to the s-th power mod t^(s*e); conjugate roots then receive
    Frobenius images of the coefficients.
    """
    k = s * e
    rep = orbit[0]
    qtilde = den_ext
    for _ in range(e):
        qtilde, rem = _synth_div(ext, qtilde, rep)
        assert rem == 0
    a_series = _pshift(ext, num_ext, rep)
    b_series = _pshift(ext, qtilde, rep)
    series = _ser_mul(
        ext,
        _ser_pow(ext, a_series, s, k),
        _ser_inv(ext, _ser_pow(ext, b_series, s, k), k),
        k,
    )
    step = base.n
    for t, root in enumerate(orbit):
        for j, coeff in enumerate(series):
            if coeff:
                image = ext.frobi(coeff, (t * step) % ext.n)
                yield root, k - j, image


def partial_fractions(f, s):
    """Decompose f(X)^s over the splitting field of the denominator.

    The polynomial part comes from long division of num^s by den^s; the
    coefficient of 1/(X - r)^(k - j) is the j-th Taylor coefficient of
    f(X)^s * (X - r)^k at r, where k = s * multiplicity(r).
    """
    if not isinstance(s, int) or s < 1:
        raise ValueError("s must be a positive integer")
    _require_no_base_pole(f)
    F = f.field
    quo, _ = (f.num ** s).divrem(f.den ** s)
    poly_part = quo.coeffs
    if f.den.degree == 0:
        return PartialFractionDecomposition(F, F, poly_part, ())
    ext, orbits = _den_orbits(f.den)
    _, fwd, _ = ext._embed_data(F)
    num_ext = [fwd[c] for c in f.num._c]
    den_ext = [fwd[c] for c in f.den._c]
    terms = []
    for orbit, e in orbits:
        terms.extend(_orbit_principal_parts(ext, F, num_ext, den_ext, orbit, e, s))
    terms.sort()
    pole_terms = tuple(
        (FieldElement(ext, r), k, FieldElement(ext, b)) for r, k, b in terms)
    return PartialFractionDecomposition(F, ext, poly_part, pole_terms)


# ---------------------------------------------------------------------------
# Power sums.
# ---------------------------------------------------------------------------


def power_sum_closed(f, s):
    """sum over x in F_q of f(x)^s, evaluated in closed form.

    Requires every pole order of f^s to stay within the Carlitz range:
    s * multiplicity <= q for each pole.  Raises FormulaOutOfRange
    otherwise, signalling the caller to fall back on power_sum_brute.
    """
    if not isinstance(s, int) or s < 1:
        raise ValueError("s must be a positive integer")
    _require_no_base_pole(f)
    F = f.field
    if f.den.degree > 0:
        _, orbits = _den_orbits(f.den)
        if any(s * e > F.q for _, e in orbits):
            raise FormulaOutOfRange("formula out of range")
    dec = partial_fractions(f, s)
    total = F.zero
    for i in range(F.q - 1, len(dec.poly_part), F.q - 1):
        total = total - dec.poly_part[i]
    E = dec.ext_field
    acc = gf.embed(total, E)
    for r, k, b in dec.pole_terms:
        rq = FieldElement(E, E.frobi(r.i, F.n))
        acc = acc + b / (rq - r) ** k
    assert E.frobi(acc.i, F.n) == acc.i, "closed-form sum escaped the base field"
    return gf.project(acc, F)


def power_sum_brute(f, s):
    """sum over x in F_q of f(x)^s by literal enumeration."""
    if not isinstance(s, int) or s < 1:
        raise ValueError("s must be a positive integer")
    F = f.field
    num, den = list(f.num._c), list(f.den._c)
    total = 0
    for x in range(F.q):
        dv = _peval(F, den, x)
        if not dv:
            raise ValueError("denominator has a root in the base field")
        value = F.divi(_peval(F, num, x), dv)
        total = F.addi(total, F.powi(value, s))
    return FieldElement(F, total)
