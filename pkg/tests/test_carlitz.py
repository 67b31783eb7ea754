"""Closed-form power sums against brute enumeration and hand values."""

from __future__ import annotations

import random

import pytest

from ratperm import (
    FormulaOutOfRange,
    Polynomial,
    RationalFunction,
    carlitz_identity_check,
    embed,
    field_from_order,
    make_field,
    parse_poly,
    parse_ratfun,
    partial_fractions,
    power_sum_brute,
    power_sum_closed,
)


def _lift(poly, E):
    return Polynomial(E, [embed(c, E) for c in poly.coeffs])


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_identity_full_k_range(q):
    for k in range(1, q + 1):
        assert carlitz_identity_check(q, k)


def test_identity_rejects_k_outside_range():
    with pytest.raises(ValueError):
        carlitz_identity_check(5, 0)
    with pytest.raises(ValueError):
        carlitz_identity_check(5, 6)


def test_monomial_power_sums_hit_minus_one_on_multiples():
    """sum_x x^s is -1 exactly when (q-1) | s, else 0."""
    F = make_field(5, 1)
    f = parse_ratfun(F, "x")
    for s in (1, 2, 3, 5, 6, 7):
        assert power_sum_closed(f, s) == F.zero
    for s in (4, 8, 12):
        assert power_sum_closed(f, s) == F.element(4)


def test_single_quadratic_pole_over_f2():
    F = make_field(2, 1)
    f = parse_ratfun(F, "1/(x^2+x+1)")
    assert power_sum_brute(f, 1) == F.zero
    assert power_sum_closed(f, 1) == F.zero


def test_out_of_range_pole_order():
    F = make_field(2, 1)
    f = parse_ratfun(F, "1/(x^2+x+1)^2")
    assert power_sum_closed(f, 1) == power_sum_brute(f, 1)
    with pytest.raises(FormulaOutOfRange):
        power_sum_closed(f, 2)
    # The brute sum has no such restriction.
    power_sum_brute(f, 2)


def test_formula_out_of_range_is_a_value_error():
    assert issubclass(FormulaOutOfRange, ValueError)


def test_base_field_pole_rejected():
    F = make_field(3, 1)
    f = parse_ratfun(F, "1/x")
    with pytest.raises(ValueError):
        power_sum_closed(f, 1)
    with pytest.raises(ValueError):
        power_sum_brute(f, 1)


def test_exponent_validation():
    F = make_field(3, 1)
    f = parse_ratfun(F, "x")
    for bad in (0, -2, 1.5):
        with pytest.raises(ValueError):
            power_sum_closed(f, bad)
        with pytest.raises(ValueError):
            power_sum_brute(f, bad)


def _random_pole_free(F, rng, max_deg=4):
    elems = list(F.elements())
    while True:
        dd = rng.randrange(max_deg + 1)
        den = Polynomial._raw(F, [rng.randrange(F.q) for _ in range(dd)] + [1])
        if not all(den(x) for x in elems):
            continue
        nd = rng.randrange(max_deg + 1)
        num = Polynomial._raw(F, [rng.randrange(F.q) for _ in range(nd)]
                              + [rng.randrange(1, F.q)])
        if num.gcd(den).degree == 0:
            return RationalFunction(num, den)


@pytest.mark.parametrize("q", [3, 4, 5, 8, 9])
def test_closed_matches_brute_seeded(q):
    F = field_from_order(q)
    rng = random.Random(f"sums:{q}")
    hits = 0
    while hits < 40:
        f = _random_pole_free(F, rng)
        s = rng.randrange(1, q)
        try:
            closed = power_sum_closed(f, s)
        except FormulaOutOfRange:
            continue
        assert closed == power_sum_brute(f, s)
        hits += 1


def test_closed_matches_brute_at_q16():
    F = make_field(2, 4)
    f = parse_ratfun(F, "(x^3+u*x+1)/(x^4+x+u)")
    for s in (1, 2, 5, 15):
        assert power_sum_closed(f, s) == power_sum_brute(f, s)


def test_partial_fractions_recombine_round_trip():
    F = make_field(2, 2)
    rng = random.Random("pf:4")
    hits = 0
    while hits < 25:
        f = _random_pole_free(F, rng, 3)
        s = rng.randrange(1, 4)
        dec = partial_fractions(f, s)
        E = dec.ext_field
        lifted = RationalFunction(_lift(f.num, E) ** s, _lift(f.den, E) ** s)
        assert dec.recombine() == lifted
        hits += 1


def test_partial_fractions_structure():
    F = make_field(2, 1)
    f = parse_ratfun(F, "1/(x^2+x+1)")
    dec = partial_fractions(f, 1)
    assert dec.ext_field.q == 4
    assert list(dec.poly_part) == []
    assert len(dec.pole_terms) == 2
    roots = [r for r, _, _ in dec.pole_terms]
    levels = [k for _, k, _ in dec.pole_terms]
    assert levels == [1, 1]
    assert {(r * r).i for r in roots} == {r.i for r in roots}
    den = parse_poly(F, "x^2+x+1")
    E = dec.ext_field
    for r in roots:
        assert _lift(den, E)(r) == E.zero


def test_partial_fractions_polynomial_input():
    F = make_field(3, 1)
    f = parse_ratfun(F, "x^2+2*x")
    dec = partial_fractions(f, 2)
    assert dec.pole_terms == ()
    assert dec.ext_field is F
    assert Polynomial(F, list(dec.poly_part)) == parse_poly(F, "(x^2+2*x)^2")


def test_repeated_pole_levels():
    F = make_field(5, 1)
    f = parse_ratfun(F, "1/(x^2+2)^2")
    dec = partial_fractions(f, 1)
    assert {k for _, k, _ in dec.pole_terms} <= {1, 2}
    assert max(k for _, k, _ in dec.pole_terms) == 2
    E = dec.ext_field
    lifted = RationalFunction(_lift(f.num, E), _lift(f.den, E))
    assert dec.recombine() == lifted
