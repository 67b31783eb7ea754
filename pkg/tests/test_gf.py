"""Field arithmetic against independent oracles and the field axioms."""

from __future__ import annotations

import random

import pytest

from ratperm import (
    ENVELOPE,
    FieldElement,
    arith,
    embed,
    field_from_order,
    format_element,
    frobenius,
    is_square,
    make_field,
    parse_element,
    prime_power,
    project,
    trace,
)


def test_prime_power_factorizations():
    assert prime_power(2) == (2, 1)
    assert prime_power(32) == (2, 5)
    assert prime_power(27) == (3, 3)
    assert prime_power(49) == (7, 2)
    assert prime_power(1 << 20) == (2, 20)
    for bad in (1, 6, 12, 100, 1000):
        with pytest.raises(ValueError):
            prime_power(bad)


def test_prime_field_matches_int_arithmetic():
    F = make_field(11, 1)
    for a in range(11):
        for b in range(11):
            x, y = F.element(a), F.element(b)
            assert (x + y).i == (a + b) % 11
            assert (x - y).i == (a - b) % 11
            assert (x * y).i == (a * b) % 11
            if b:
                assert (x / y).i == (a * pow(b, 9, 11)) % 11


def test_f9_matches_gaussian_integer_oracle():
    """F_9 = F_3[x]/(x^2+1), so index 3b+a behaves like a+bi mod 3."""
    F = make_field(3, 2)
    assert F.modulus == (1, 0, 1)
    for ai in range(9):
        for bi in range(9):
            a0, a1 = ai % 3, ai // 3
            b0, b1 = bi % 3, bi // 3
            x, y = FieldElement(F, ai), FieldElement(F, bi)
            assert (x + y).i == (a0 + b0) % 3 + 3 * ((a1 + b1) % 3)
            prod = ((a0 * b0 - a1 * b1) % 3) + 3 * ((a0 * b1 + a1 * b0) % 3)
            assert (x * y).i == prod


def test_f16_generator_is_primitive():
    F = make_field(2, 4)
    assert F.modulus == (1, 1, 0, 0, 1)
    u = F.gen
    assert u ** 4 == u + 1
    powers = {(u ** k).i for k in range(15)}
    assert len(powers) == 15
    assert u ** 15 == F.one


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_field_axioms_exhaustive(q):
    F = field_from_order(q)
    elems = list(F.elements())
    for a in elems:
        assert a + F.zero == a
        assert a * F.one == a
        assert a - a == F.zero
        if a:
            assert a * (F.one / a) == F.one
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
            for c in elems:
                assert (a + b) * c == a * c + b * c


@pytest.mark.parametrize("q", [16, 25, 27, 49])
def test_field_axioms_sampled(q):
    F = field_from_order(q)
    rng = random.Random(f"axioms:{q}")
    for _ in range(200):
        a = FieldElement(F, rng.randrange(q))
        b = FieldElement(F, rng.randrange(q))
        c = FieldElement(F, rng.randrange(q))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert (b / a) * a == b


def test_element_constructor_reduces_mod_p():
    F = make_field(5, 2)
    assert F.element(7) == F.element(2)
    assert F.element(-1) == F.element(4)
    # Index-space construction is a separate door and keeps the raw index.
    assert FieldElement(F, 7).i == 7


def test_int_coercion_in_operators():
    F = make_field(7, 1)
    a = F.element(3)
    assert 1 + a == F.element(4)
    assert 2 * a == F.element(6)
    assert a - 5 == F.element(5)
    assert 5 - a == F.element(2)
    assert 1 / a == F.element(5)
    assert -(1 + 4 * a) == F.element(1)


def test_mixed_field_arithmetic_rejected():
    F, K = make_field(2, 2), make_field(2, 3)
    with pytest.raises(ValueError):
        F.one + K.one
    with pytest.raises(ValueError):
        arith(F.one, K.one, "mul")


def test_arith_dispatch():
    F = make_field(3, 1)
    a, b = F.element(2), F.element(2)
    assert arith(a, b, "add") == F.element(1)
    assert arith(a, b, "sub") == F.zero
    assert arith(a, b, "mul") == F.element(1)
    assert arith(a, b, "div") == F.one
    with pytest.raises(ValueError):
        arith(a, b, "pow")


def test_frobenius_is_p_power_map():
    F = make_field(3, 3)
    for a in F.elements():
        assert frobenius(a, 1, 3) == a ** 3
        assert frobenius(a, 2, 3) == (a ** 3) ** 3
        assert frobenius(a, 3, 3) == a
        assert frobenius(a, 1) == a


def test_frobenius_over_intermediate_subfield():
    F = make_field(2, 4)
    for a in F.elements():
        assert frobenius(a, 1, 4) == a ** 4
    with pytest.raises(ValueError):
        frobenius(F.gen, 1, 8)


def test_trace_against_power_sum_definition():
    F = make_field(2, 4)
    P = make_field(2, 1)
    for a in F.elements():
        expect = a + a ** 2 + a ** 4 + a ** 8
        got = trace(a, 2)
        assert got.field is P
        assert embed(got, F) == expect
    values = [trace(a, 2).i for a in F.elements()]
    assert values.count(0) == 8 and values.count(1) == 8


def test_trace_additive_and_onto():
    F = make_field(3, 2)
    S = make_field(3, 1)
    rng = random.Random("trace:9")
    for _ in range(100):
        a = FieldElement(F, rng.randrange(9))
        b = FieldElement(F, rng.randrange(9))
        assert trace(a + b, 3) == trace(a, 3) + trace(b, 3)
    assert {trace(a, 3).i for a in F.elements()} == {0, 1, 2}
    assert trace(F.one, 3) == S.element(2)


def test_is_square_counts():
    for q in (3, 5, 7, 9, 11, 13, 27):
        F = field_from_order(q)
        squares = {(x * x).i for x in F.elements()}
        for a in F.elements():
            assert is_square(a) == (a.i in squares)
        assert sum(1 for a in F.elements() if is_square(a)) == (q + 1) // 2
    F = make_field(2, 3)
    assert all(is_square(a) for a in F.elements())


def test_embed_is_a_ring_homomorphism():
    F, E = make_field(2, 2), make_field(2, 4)
    images = set()
    for a in F.elements():
        for b in F.elements():
            assert embed(a + b, E) == embed(a, E) + embed(b, E)
            assert embed(a * b, E) == embed(a, E) * embed(b, E)
        images.add(embed(a, E).i)
    assert len(images) == 4
    assert embed(F.zero, E) == E.zero and embed(F.one, E) == E.one


def test_embed_minimal_root_pin():
    """The subfield generator goes to the minimal-index root of its modulus."""
    F, E = make_field(2, 2), make_field(2, 4)
    g = embed(F.gen, E)
    roots = [x for x in E.elements() if x * x + x + E.one == E.zero]
    assert g == min(roots, key=lambda x: x.i)


def test_project_round_trip_and_rejection():
    F, E = make_field(3, 1), make_field(3, 2)
    for a in F.elements():
        assert project(embed(a, E), F) == a
    outside = [x for x in E.elements() if x.i >= 3]
    with pytest.raises(ValueError):
        project(outside[0], F)


def test_embed_requires_subfield_degree():
    F, E = make_field(2, 2), make_field(2, 3)
    with pytest.raises(ValueError):
        embed(F.gen, E)


def test_format_parse_round_trip():
    for q in (9, 16, 7):
        F = field_from_order(q)
        for a in F.elements():
            assert parse_element(F, format_element(a)) == a
    F = make_field(3, 2)
    assert parse_element(F, "u^2") == F.gen * F.gen
    assert parse_element(F, "2*u+1") == 2 * F.gen + 1
    assert format_element(F.zero) == "0"


def test_modulus_override():
    F = make_field(2, 2, (1, 1, 1))
    assert F.modulus == (1, 1, 1)
    u = F.gen
    assert u * u == u + 1
    with pytest.raises(ValueError):
        make_field(2, 2, (1, 0, 1))  # x^2+1 = (x+1)^2 is reducible


def test_envelope_rejects_oversized_fields():
    assert ENVELOPE == 1 << 20
    with pytest.raises(ValueError):
        make_field(2, 21)
    with pytest.raises(ValueError):
        make_field(3, 13)
    with pytest.raises(ValueError):
        make_field(4, 2)  # characteristic must be prime
    with pytest.raises(ValueError):
        make_field(2, 0)


def test_canonical_fields_are_cached():
    assert make_field(2, 4) is make_field(2, 4)
    assert field_from_order(16) is make_field(2, 4)
    assert make_field(2, 2, (1, 1, 1)) is not make_field(2, 2)
