"""Exact arithmetic in finite fields F_{p^n}.

An element of F_{p^n} is a residue polynomial c_0 + c_1 u + ... + c_{n-1} u^{n-1}
modulo a monic irreducible of degree n over F_p.  Internally each element is a
single integer: the coefficient vector read as a base-p number with c_0 least
significant.  That integer is also the element's position in the canonical
enumeration order, which the rest of the library relies on for deterministic
sweeps, minimal-root conventions, and reproducible output.

Multiplication runs on discrete log/antilog tables built once per field from a
deterministically chosen primitive element (smallest in the canonical order).
Addition is XOR in characteristic 2 and a Zech-logarithm lookup otherwise, so
every field operation is O(1) after construction.
"""

from __future__ import annotations

import threading
from functools import lru_cache

from . import _expr

#: Largest supported field order.  Everything in the library needs at most
#: q = 64 with extensions up to degree 3; the headroom is for sampling.
ENVELOPE = 1 << 20


def _is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def prime_power(q):
    """Return (p, n) with q = p^n, or raise ValueError if q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    n = 0
    m = q
    while m % p == 0:
        m //= p
        n += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, n


# ---------------------------------------------------------------------------
# Polynomial arithmetic over the prime field F_p, on plain coefficient lists.
# Used to pick canonical moduli before any field tables exist.
# ---------------------------------------------------------------------------


def _fp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_divrem(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    quo = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        factor = (a[-1] * inv_lb) % p
        quo[shift] = factor
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bc) % p
        _fp_trim(a)
    return quo, a


def _fp_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                if bc:
                    out[i + j] = (out[i + j] + ac * bc) % p
    _fp_trim(out)
    if len(out) >= len(mod):
        _, out = _fp_divrem(out, mod, p)
    return out


def _fp_powmod(base, e, mod, p):
    result = [1]
    acc = list(base)
    while e:
        if e & 1:
            result = _fp_mulmod(result, acc, mod, p)
        acc = _fp_mulmod(acc, acc, mod, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    _fp_trim(a)
    _fp_trim(b)
    while b:
        _, r = _fp_divrem(a, b, p)
        a, b = b, r
    return a


def _fp_is_irreducible(coeffs, p):
    """Distinct-degree test for a monic polynomial over F_p."""
    n = len(coeffs) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = list(x)
    for _ in range(n // 2):
        h = _fp_powmod(h, p, coeffs, p)
        diff = [(hc - xc) % p for hc, xc in
                zip(h + [0] * len(x), x + [0] * len(h))]
        _fp_trim(diff)
        g = _fp_gcd(coeffs, diff, p)
        if len(g) != 1:
            return False
    return True


def _canonical_modulus(p, n):
    """The monic irreducible of degree n over F_p whose coefficient vector,
    read as a base-p integer with the constant term least significant, is
    smallest."""
    if n == 1:
        return (0, 1)
    for k in range(p ** n):
        digits = []
        m = k
        for _ in range(n):
            digits.append(m % p)
            m //= p
        candidate = digits + [1]
        if _fp_is_irreducible(candidate, p):
            return tuple(candidate)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _parse_modulus(p, spec):
    """Accept a modulus given as coefficient sequence or as text over x."""
    if isinstance(spec, str):
        coeffs = {}

        class Ctx:
            @staticmethod
            def const(k):
                return {0: k % p}

            @staticmethod
            def var(name):
                if name != "x":
                    raise _expr.ExprError(f"unknown variable {name!r} in modulus")
                return {1: 1}

            @staticmethod
            def add(a, b):
                out = dict(a)
                for e, c in b.items():
                    out[e] = (out.get(e, 0) + c) % p
                return out

            @staticmethod
            def sub(a, b):
                out = dict(a)
                for e, c in b.items():
                    out[e] = (out.get(e, 0) - c) % p
                return out

            @staticmethod
            def neg(a):
                return {e: (-c) % p for e, c in a.items()}

            @staticmethod
            def mul(a, b):
                out = {}
                for e1, c1 in a.items():
                    for e2, c2 in b.items():
                        e = e1 + e2
                        out[e] = (out.get(e, 0) + c1 * c2) % p
                return out

            @staticmethod
            def div(a, b):
                raise _expr.ExprError("division not allowed in a modulus")

            @staticmethod
            def pow(a, e):
                out = {0: 1}
                for _ in range(e):
                    out = Ctx.mul(out, a)
                return out

        coeffs = _expr.parse(spec, Ctx)
        deg = max((e for e, c in coeffs.items() if c), default=0)
        vec = [coeffs.get(i, 0) % p for i in range(deg + 1)]
    else:
        vec = [int(c) % p for c in spec]
        while vec and vec[-1] == 0:
            vec.pop()
    return tuple(vec)


# ---------------------------------------------------------------------------
# The field itself.
# ---------------------------------------------------------------------------


class FiniteField:
    """The field F_{p^n} with a fixed monic irreducible modulus.

    Instances are immutable after construction and safe to share across
    threads and forked workers.  Use :func:`make_field` rather than the
    constructor so canonical fields are cached and unique per (p, n).
    """

    def __init__(self, p, n, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be positive")
        q = p ** n
        if q > ENVELOPE:
            raise ValueError(f"field order {q} exceeds the supported envelope {ENVELOPE}")
        if modulus is None:
            modulus = _canonical_modulus(p, n)
        else:
            modulus = _parse_modulus(p, modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree n")
            if not _fp_is_irreducible(list(modulus), p):
                raise ValueError("modulus is not irreducible")
        self.p = p
        self.n = n
        self.q = q
        self.modulus = modulus
        self._lock = threading.Lock()
        self._embed_cache = {}
        self._build_tables()

    # -- construction of the log/antilog (and Zech) tables ------------------

    def _raw_mul(self, a, b):
        """Multiply two elements given as packed integers, without tables."""
        p, n = self.p, self.n
        if p == 2:
            mod_int = 0
            for i, c in enumerate(self.modulus):
                if c:
                    mod_int |= 1 << i
            out = 0
            while b:
                low = b & -b
                out ^= a * low
                b ^= low
            while out >> n:
                shift = out.bit_length() - 1 - n
                out ^= mod_int << shift
            return out
        da = self._digits(a)
        db = self._digits(b)
        prod = [0] * (2 * n - 1)
        for i, ac in enumerate(da):
            if ac:
                for j, bc in enumerate(db):
                    if bc:
                        prod[i + j] = (prod[i + j] + ac * bc) % p
        _fp_trim(prod)
        if len(prod) >= len(self.modulus):
            _, prod = _fp_divrem(prod, self.modulus, p)
        return self._pack(prod)

    def _digits(self, idx):
        p = self.p
        out = []
        for _ in range(self.n):
            out.append(idx % p)
            idx //= p
        return out

    def _pack(self, digits):
        idx = 0
        for c in reversed(digits):
            idx = idx * self.p + c
        return idx

    def _build_tables(self):
        p, q = self.p, self.q
        q1 = q - 1
        if q == 2:
            self._gen_idx = 1
            self._exp = [1]
            self._log = [-1, 0]
            self._zech = None
            return
        factors = []
        m = q1
        d = 2
        while d * d <= m:
            if m % d == 0:
                factors.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            factors.append(m)

        def raw_pow(base, e):
            acc, result = base, 1
            while e:
                if e & 1:
                    result = self._raw_mul(result, acc)
                acc = self._raw_mul(acc, acc)
                e >>= 1
            return result

        gen = None
        for candidate in range(2, q):
            if all(raw_pow(candidate, q1 // f) != 1 for f in factors):
                gen = candidate
                break
        assert gen is not None, "every finite field has a primitive element"
        self._gen_idx = gen

        exp = [0] * q1
        log = [-1] * q
        acc = 1
        for i in range(q1):
            exp[i] = acc
            log[acc] = i
            acc = self._raw_mul(acc, gen)
        assert acc == 1, "primitive element order mismatch"
        self._exp = exp
        self._log = log

        if p == 2 or self.n == 1:
            self._zech = None
        else:
            # zech[k] = log(1 + g^k); -1 marks 1 + g^k = 0.  Adding the
            # constant 1 only touches the lowest base-p digit of the index.
            zech = [0] * q1
            pm1 = p - 1
            for k in range(q1):
                t = exp[k]
                plus = t - pm1 if t % p == pm1 else t + 1
                zech[k] = log[plus] if plus else -1
            self._zech = zech

    # -- integer-index arithmetic (the in-package fast path) ----------------

    def addi(self, a, b):
        p = self.p
        if p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % p
        if a == 0:
            return b
        if b == 0:
            return a
        log, q1 = self._log, self.q - 1
        la, lb = log[a], log[b]
        z = self._zech[(lb - la) % q1]
        if z < 0:
            return 0
        return self._exp[(la + z) % q1]

    def negi(self, a):
        p = self.p
        if p == 2 or a == 0:
            return a
        if self.n == 1:
            return p - a
        q1 = self.q - 1
        return self._exp[(self._log[a] + q1 // 2) % q1]

    def subi(self, a, b):
        if self.p == 2:
            return a ^ b
        return self.addi(a, self.negi(b))

    def muli(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return (a * b) % self.p
        q1 = self.q - 1
        return self._exp[(self._log[a] + self._log[b]) % q1]

    def invi(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in " + repr(self))
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        q1 = self.q - 1
        return self._exp[(q1 - self._log[a]) % q1]

    def divi(self, a, b):
        return self.muli(a, self.invi(b))

    def powi(self, a, e):
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ZeroDivisionError("zero to a negative power")
        q1 = self.q - 1
        return self._exp[(self._log[a] * (e % q1)) % q1] if q1 else 1

    def frobi(self, a, m=1):
        """a^(p^m) on indices."""
        if a == 0 or a == 1:
            return a
        q1 = self.q - 1
        return self._exp[(self._log[a] * pow(self.p, m, q1)) % q1]

    # -- subfields and embeddings -------------------------------------------

    def _embed_data(self, source):
        """Embedding data for a subfield: (gamma powers, forward map, reverse map).

        The embedding sends the source generator to the root of the source
        modulus that is minimal in this field's canonical element order.
        """
        if source.p != self.p or self.n % source.n != 0:
            raise ValueError(
                f"GF({source.q}) is not a subfield of GF({self.q})")
        with self._lock:
            cached = self._embed_cache.get(source)
        if cached is not None:
            return cached

        q0 = source.q
        if source is self:
            powers = [self.powi(self.p if self.n > 1 else 0, j)
                      for j in range(self.n)]
            fwd = {i: i for i in range(self.q)}
            rev = dict(fwd)
            data = (powers, fwd, rev)
        else:
            # The unique subfield of order q0 is {0} plus the multiplicative
            # subgroup of order q0 - 1.
            stride = (self.q - 1) // (q0 - 1)
            members = [0] + [self._exp[(k * stride) % (self.q - 1)]
                             for k in range(q0 - 1)]
            gamma = None
            for cand in sorted(members):
                acc = 0
                for c in reversed(source.modulus):
                    acc = self.addi(self.muli(acc, cand), c)
                if acc == 0:
                    gamma = cand
                    break
            assert gamma is not None, "source modulus must split in the subfield"
            powers = [self.powi(gamma, j) for j in range(source.n)]
            fwd = {}
            for idx in range(q0):
                digits = []
                m = idx
                for _ in range(source.n):
                    digits.append(m % source.p)
                    m //= source.p
                img = 0
                for digit, gpow in zip(digits, powers):
                    if digit:
                        img = self.addi(img, self.muli(digit % self.p, gpow)
                                        if digit > 1 else gpow)
                fwd[idx] = img
            rev = {v: k for k, v in fwd.items()}
            data = (powers, fwd, rev)
        with self._lock:
            self._embed_cache[source] = data
        return data

    # -- public element construction ----------------------------------------

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        """The residue class of x (the element written u); 0 in a prime field."""
        return FieldElement(self, self.p if self.n > 1 else 0)

    def from_index(self, i):
        if not 0 <= i < self.q:
            raise ValueError(f"index {i} out of range for GF({self.q})")
        return FieldElement(self, i)

    def element(self, value):
        """Coerce an int (as a multiple of 1), text, coefficient vector, or
        element of this field."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        if isinstance(value, str):
            return parse_element(self, value)
        digits = [int(c) % self.p for c in value]
        if len(digits) > self.n:
            raise ValueError("coefficient vector longer than the extension degree")
        digits += [0] * (self.n - len(digits))
        return FieldElement(self, self._pack(digits))

    def elements(self):
        """All field elements in canonical order."""
        for i in range(self.q):
            yield FieldElement(self, i)

    @property
    def modulus_text(self):
        parts = []
        for j in range(self.n, -1, -1):
            c = self.modulus[j]
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                var = "x" if j == 1 else f"x^{j}"
                parts.append(var if c == 1 else f"{c}*{var}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"GF({self.q})"


class FieldElement:
    """An element of a :class:`FiniteField`; immutable and hashable.

    Supports the usual operators; ints mixed into arithmetic are taken as
    multiples of 1 (so ``a + 1`` and ``2 * a`` mean what they say in any
    characteristic).
    """

    __slots__ = ("field", "i")

    def __init__(self, field, i):
        self.field = field
        self.i = i

    @property
    def index(self):
        return self.i

    @property
    def rep(self):
        return tuple(self.field._digits(self.i))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements belong to different fields")
            return other.i
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field.addi(self.i, j))

    __radd__ = __add__

    def __sub__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field.subi(self.i, j))

    def __rsub__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field.subi(j, self.i))

    def __mul__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field.muli(self.i, j))

    __rmul__ = __mul__

    def __truediv__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field.divi(self.i, j))

    def __rtruediv__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field.divi(j, self.i))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.powi(self.i, e))

    def __neg__(self):
        return FieldElement(self.field, self.field.negi(self.i))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.field is self.field and other.i == self.i
        if isinstance(other, int):
            return self.i == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.i))

    def __bool__(self):
        return self.i != 0

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"{format_element(self)} in {self.field!r}"


# ---------------------------------------------------------------------------
# Module-level operations.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _cached_field(p, n):
    return FiniteField(p, n)


def make_field(p, n, modulus=None):
    """Return F_{p^n} with the canonical modulus (cached), or a fresh field
    with an explicit modulus override."""
    if not _is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be positive")
    if p ** n > ENVELOPE:
        raise ValueError(f"field order {p ** n} exceeds the supported envelope {ENVELOPE}")
    if modulus is None:
        return _cached_field(p, n)
    return FiniteField(p, n, modulus)


def field_from_order(q):
    """Return the canonical field of order q (q a prime power)."""
    p, n = prime_power(q)
    return make_field(p, n)


def arith(a, b, op):
    """Field arithmetic dispatch: op in {add, sub, mul, div}."""
    if a.field is not b.field:
        raise ValueError("elements belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _subfield_degree(field, subfield_order):
    p = field.p
    n0 = 0
    m = subfield_order
    while m > 1 and m % p == 0:
        m //= p
        n0 += 1
    if m != 1 or n0 == 0 or subfield_order != p ** n0:
        raise ValueError(f"{subfield_order} is not a power of the characteristic {p}")
    if field.n % n0 != 0:
        raise ValueError(
            f"GF({subfield_order}) is not a subfield of GF({field.q})")
    return n0


def frobenius(a, e, subfield_order=None):
    """a^(q0^e), the e-th power of the Frobenius over the designated subfield
    of order q0 (default: the element's own field, whose Frobenius is the
    identity)."""
    field = a.field
    n0 = field.n if subfield_order is None else _subfield_degree(field, subfield_order)
    return FieldElement(field, field.frobi(a.i, (e * n0) % field.n))


def trace(a, subfield_order):
    """Trace of a down to the subfield of the given order, returned as an
    element of that subfield."""
    field = a.field
    n0 = _subfield_degree(field, subfield_order)
    sub = make_field(field.p, n0)
    total = 0
    for j in range(field.n // n0):
        total = field.addi(total, field.frobi(a.i, j * n0))
    _, _, rev = field._embed_data(sub)
    assert total in rev, "trace landed outside the designated subfield"
    return FieldElement(sub, rev[total])


def is_square(a):
    """Whether a is a square in its own field (0 counts as a square)."""
    field = a.field
    if field.p == 2 or a.i == 0:
        return True
    return field._log[a.i] % 2 == 0


def embed(a, target):
    """Image of a under the pinned embedding of its field into ``target``.

    The embedding maps the source generator to the root of the source modulus
    in ``target`` that is minimal in the canonical element order; it is a ring
    homomorphism fixing the prime field.
    """
    if a.field is target:
        return a
    _, fwd, _ = target._embed_data(a.field)
    return FieldElement(target, fwd[a.i])


def project(a, target):
    """Inverse of :func:`embed` for values lying in the embedded subfield."""
    if a.field is target:
        return a
    _, _, rev = a.field._embed_data(target)
    if a.i not in rev:
        raise ValueError(f"{a!r} does not lie in the embedded copy of {target!r}")
    return FieldElement(target, rev[a.i])


# ---------------------------------------------------------------------------
# Text format: polynomial expressions in the generator u.
# ---------------------------------------------------------------------------


def format_element(a):
    """Canonical text: digits-in-u polynomial like ``u^2+2*u+1``, or ``0``."""
    digits = a.field._digits(a.i)
    parts = []
    for j in range(a.field.n - 1, -1, -1):
        c = digits[j]
        if not c:
            continue
        if j == 0:
            parts.append(str(c))
            continue
        var = "u" if j == 1 else f"u^{j}"
        parts.append(var if c == 1 else f"{c}*{var}")
    return "+".join(parts) if parts else "0"


class _ElementCtx:
    def __init__(self, field):
        self.field = field

    def const(self, k):
        return self.field.element(k)

    def var(self, name):
        if name != "u":
            raise _expr.ExprError(f"unknown variable {name!r} (only u is allowed)")
        return self.field.gen

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


def parse_element(field, text):
    """Parse element text such as ``u^2+u+1`` or ``3`` into a field element."""
    return _expr.parse(text, _ElementCtx(field))
