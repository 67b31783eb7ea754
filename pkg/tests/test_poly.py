"""Polynomial arithmetic, factor structure, and root finding."""

from __future__ import annotations

import random

import pytest

from ratperm import (
    FieldElement,
    Polynomial,
    embed,
    format_poly,
    is_irreducible,
    make_field,
    parse_poly,
    poly_arith,
    roots_over,
    splitting_degree,
    splitting_field,
)


def _random_poly(F, rng, max_deg):
    d = rng.randrange(max_deg + 1)
    return Polynomial._raw(F, [rng.randrange(F.q) for _ in range(d)]
                           + [rng.randrange(1, F.q)])


def test_constructor_coerces_constants_mod_p():
    F = make_field(3, 2)
    f = Polynomial(F, [4, 1])
    assert f.coefficient(0) == F.element(1)
    # The raw constructor keeps extension-field indices as given.
    g = Polynomial._raw(F, [4, 1])
    assert g.coefficient(0).i == 4


def test_degree_lead_and_trim():
    F = make_field(5, 1)
    f = Polynomial(F, [1, 2, 0, 0])
    assert f.degree == 1
    assert f.lead == F.element(2)
    assert Polynomial(F, []).is_zero()
    assert Polynomial(F, [0]).degree == -1


def test_multiplication_matches_convolution():
    F = make_field(3, 2)
    rng = random.Random("conv:9")
    for _ in range(50):
        f = _random_poly(F, rng, 4)
        g = _random_poly(F, rng, 4)
        prod = f * g
        for k in range(f.degree + g.degree + 1):
            acc = F.zero
            for j in range(k + 1):
                if j <= f.degree and k - j <= g.degree:
                    acc = acc + f.coefficient(j) * g.coefficient(k - j)
            assert prod.coefficient(k) == acc


def test_divrem_property():
    F = make_field(2, 3)
    rng = random.Random("divrem:8")
    for _ in range(100):
        f = _random_poly(F, rng, 6)
        g = _random_poly(F, rng, 3)
        q, r = f.divrem(g)
        assert q * g + r == f
        assert r.degree < g.degree
    with pytest.raises(ZeroDivisionError):
        f.divrem(Polynomial(F, []))


def test_gcd_is_monic_common_divisor():
    F = make_field(5, 1)
    rng = random.Random("gcd:5")
    for _ in range(60):
        f = _random_poly(F, rng, 4)
        g = _random_poly(F, rng, 4)
        h = _random_poly(F, rng, 2)
        d = (f * h).gcd(g * h)
        assert d.is_monic()
        assert (f * h) % d == Polynomial(F, [])
        assert (g * h) % d == Polynomial(F, [])
        assert d % h.monic() == Polynomial(F, [])


def test_derivative_product_rule_and_char_kill():
    F = make_field(3, 1)
    rng = random.Random("deriv:3")
    for _ in range(40):
        f = _random_poly(F, rng, 4)
        g = _random_poly(F, rng, 4)
        assert (f * g).derivative() == f.derivative() * g + f * g.derivative()
    cube = Polynomial(F, [0, 0, 0, 1])
    assert cube.derivative().is_zero()


def test_evaluation_and_shift():
    F = make_field(7, 1)
    f = Polynomial(F, [3, 0, 1, 2])
    for x in F.elements():
        expect = F.element(3) + x * x + 2 * x ** 3
        assert f(x) == expect
        assert f.shifted(2)(x) == f(x + 2)


def test_power_against_repeated_multiplication():
    F = make_field(2, 2)
    f = Polynomial._raw(F, [2, 1, 3])
    acc = Polynomial(F, [1])
    for e in range(5):
        assert f ** e == acc
        acc = acc * f


def test_irreducibility_known_examples():
    F3 = make_field(3, 1)
    assert is_irreducible(parse_poly(F3, "x^2+1"))
    F5 = make_field(5, 1)
    assert not is_irreducible(parse_poly(F5, "x^2+1"))  # (x+2)(x+3)
    F2 = make_field(2, 1)
    assert is_irreducible(parse_poly(F2, "x^3+x+1"))
    assert not is_irreducible(parse_poly(F2, "x^2+1"))
    assert is_irreducible(parse_poly(F2, "x"))
    assert is_irreducible(parse_poly(F2, "x+1"))
    with pytest.raises(ValueError):
        is_irreducible(parse_poly(F2, "1"))


@pytest.mark.parametrize("q,d,count", [(5, 2, 10), (3, 3, 8), (2, 4, 3)])
def test_irreducible_census(q, d, count):
    """Monic irreducible counts match the necklace formula values."""
    import itertools
    F = make_field(*((q, 1) if q in (2, 3, 5, 7) else (q, 1)))
    found = 0
    for ct in itertools.product(range(q), repeat=d):
        if is_irreducible(Polynomial._raw(F, list(ct) + [1])):
            found += 1
    assert found == count


def test_splitting_degree_cases():
    F = make_field(2, 1)
    assert splitting_degree(parse_poly(F, "x^3+x+1")) == 3
    assert splitting_degree(parse_poly(F, "x^2+x")) == 1
    assert splitting_degree(parse_poly(F, "(x^2+x+1)*(x^3+x+1)")) == 6
    E = splitting_field(parse_poly(F, "x^2+x+1"))
    assert E.q == 4


def test_roots_over_frobenius_orbit():
    F = make_field(2, 1)
    f = parse_poly(F, "x^3+x+1")
    E = splitting_field(f)
    roots = roots_over(f, E)
    assert len(roots) == 3
    assert all(m == 1 for _, m in roots)
    rs = {r.i for r, _ in roots}
    assert {(r * r).i for r, _ in roots} == rs
    for r, _ in roots:
        fe = Polynomial(E, [embed(c, E) for c in f.coeffs])
        assert fe(r) == E.zero


def test_roots_over_with_multiplicity():
    F = make_field(3, 1)
    f = parse_poly(F, "(x-1)^2*(x+1)")
    roots = roots_over(f, F)
    assert roots == [(F.element(1), 2), (F.element(2), 1)]
    with pytest.raises(ValueError):
        roots_over(f, make_field(2, 1))


def test_poly_arith_dispatch():
    F = make_field(3, 1)
    f = parse_poly(F, "x+1")
    g = parse_poly(F, "x+2")
    assert poly_arith(f, g, "mul") == parse_poly(F, "x^2+2")
    assert poly_arith(f, g, "add") == parse_poly(F, "2*x")
    with pytest.raises(ValueError):
        poly_arith(f, g, "compose")


def test_format_parse_round_trip():
    F = make_field(3, 2)
    rng = random.Random("fmt:9")
    for _ in range(60):
        f = _random_poly(F, rng, 4)
        assert parse_poly(F, format_poly(f)) == f
    assert format_poly(Polynomial(F, [])) == "0"
    # (x+u)^2 = x^2 + 2ux + u^2 with u^2 = -1 = 2 under the canonical modulus.
    assert parse_poly(F, "(x+u)^2") == Polynomial._raw(F, [2, 6, 1])


def test_parse_rejects_malformed_input():
    F = make_field(5, 1)
    for text in ("x^", "1/(x+1)", "y+1", "x**2", ""):
        with pytest.raises(ValueError):
            parse_poly(F, text)
