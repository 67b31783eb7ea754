"""Permutation testing, the known PR families, and the theorem sweeps."""

from __future__ import annotations

import random

import pytest

from ratperm import (
    FieldElement,
    Polynomial,
    PRFamilySpec,
    RationalFunction,
    build_family,
    frobenius,
    hermite_test,
    is_pr_brute,
    make_field,
    parse_ratfun,
    verify_theorem,
)


def test_is_pr_brute_known_maps():
    F4 = make_field(2, 2)
    assert is_pr_brute(parse_ratfun(F4, "x^2"))
    assert not is_pr_brute(parse_ratfun(F4, "x^3"))
    assert is_pr_brute(parse_ratfun(F4, "1/x"))
    F5 = make_field(5, 1)
    assert is_pr_brute(parse_ratfun(F5, "x^3"))  # gcd(3, q-1) = 1 here
    assert not is_pr_brute(parse_ratfun(F5, "x^2"))
    F7 = make_field(7, 1)
    assert not is_pr_brute(parse_ratfun(F7, "x^3"))  # 3 divides q-1 here
    assert is_pr_brute(parse_ratfun(F7, "4*x+2*x/(x^2-3)"))


def _reduced_functions(F, max_deg):
    import itertools
    for dd in range(max_deg + 1):
        for dt in itertools.product(range(F.q), repeat=dd):
            den = Polynomial._raw(F, list(dt) + [1])
            for nd in range(max_deg + 1):
                for lead in range(1, F.q):
                    for nt in itertools.product(range(F.q), repeat=nd):
                        num = Polynomial._raw(F, list(nt) + [lead])
                        if num.gcd(den).degree == 0:
                            yield RationalFunction(num, den)


def _check_hermite_against_brute(f):
    """Agreement on hermite's domain; out-of-domain functions (no equivalent
    fixing infinity) can never be bijections, so brute must say no there."""
    try:
        verdict = hermite_test(f)
    except ValueError:
        assert not is_pr_brute(f), str(f)
        return False
    assert verdict == is_pr_brute(f), str(f)
    return True


def test_hermite_matches_brute_exhaustively_at_q2():
    F = make_field(2, 1)
    checked = 0
    for f in _reduced_functions(F, 2):
        if f.degree < 1:
            continue
        if _check_hermite_against_brute(f):
            checked += 1
    assert checked >= 30


@pytest.mark.parametrize("q", [4, 5])
def test_hermite_matches_brute_sampled(q):
    F = make_field(*((2, 2) if q == 4 else (5, 1)))
    rng = random.Random(f"hermite:{q}")
    hits = 0
    for _ in range(200):
        if hits >= 50:
            break
        nd, dd = rng.randrange(4), rng.randrange(4)
        num = Polynomial._raw(F, [rng.randrange(q) for _ in range(nd)]
                              + [rng.randrange(1, q)])
        den = Polynomial._raw(F, [rng.randrange(q) for _ in range(dd)] + [1])
        f = RationalFunction(num, den)
        if f.degree < 1:
            continue
        if _check_hermite_against_brute(f):
            hits += 1
    assert hits >= 50


def _pole_with(E, F, pred):
    for i in range(E.q):
        r = FieldElement(E, i)
        rq = frobenius(r, 1, F.q)
        if rq != r and pred(r, rq):
            return r
    raise AssertionError("no pole with the requested property")


def test_t33_family_members_permute():
    F = make_field(2, 2)
    E = make_field(2, 4)
    r = _pole_with(E, F, lambda r, rq: r + rq == E.one)
    f = build_family(PRFamilySpec(family="T3.3", q=4, r=r))
    assert f.degree == 3
    assert is_pr_brute(f)
    bad = _pole_with(E, F, lambda r, rq: r + rq != E.one)
    with pytest.raises(ValueError):
        build_family(PRFamilySpec(family="T3.3", q=4, r=bad))


def test_t34_family_members_permute():
    F = make_field(5, 1)
    E = make_field(5, 2)
    squares = {(x * x).i for x in F.elements()}

    def nonsquare_sq(r, rq):
        s = r * r
        return (s == frobenius(s, 1, 5)) and s.i < 5 and s.i not in squares

    r = _pole_with(E, F, nonsquare_sq)
    f = build_family(PRFamilySpec(family="T3.4", q=5, r=r))
    assert f.degree == 3
    assert is_pr_brute(f)
    with pytest.raises(ValueError):
        build_family(PRFamilySpec(family="T3.4", q=5, r=r, a=1))


def test_t39_epsilon_selects_the_failing_sign():
    F = make_field(3, 3)
    E = make_field(3, 9)

    def zero_trace(r, rq):
        return r + rq + frobenius(rq, 1, 27) == E.zero

    r = _pole_with(E, F, zero_trace)
    good = build_family(PRFamilySpec(family="T3.9", q=27, r=r))
    assert good.degree == 4
    assert is_pr_brute(good)
    rejected = build_family(PRFamilySpec(family="T3.9", q=27, r=r, epsilon=1))
    assert not is_pr_brute(rejected)


def test_yuan_family_permutes():
    F4 = make_field(2, 2)
    for q, delta in ((4, F4.gen), (9, 1), (2, 1)):
        spec = PRFamilySpec(family="YUAN", q=q, delta=delta)
        f = build_family(spec)
        F = f.field
        assert f.degree == F.p + 1
        assert is_pr_brute(f)
    with pytest.raises(ValueError):
        build_family(PRFamilySpec(family="YUAN", q=4, delta=0))
    with pytest.raises(ValueError):
        build_family(PRFamilySpec(family="YUAN", q=4, delta=1))


def test_base_field_pole_rejected_in_specs():
    F = make_field(2, 2)
    with pytest.raises(ValueError):
        build_family(PRFamilySpec(family="T3.3", q=4, r=F.one))
    with pytest.raises(ValueError):
        build_family(PRFamilySpec(family="NOPE", q=4))


@pytest.mark.parametrize("theorem,q", [
    ("L3.2", 2), ("L3.2", 3), ("L3.2", 4), ("L3.2", 5),
    ("T3.3", 2), ("T3.3", 4), ("T3.3", 8),
    ("T3.4", 5), ("T3.4", 9),
    ("T3.6", 11), ("T3.8", 5), ("T3.8", 8),
    ("R3.3", 4), ("R3.5", 5), ("R3.5", 9), ("R4.6", 4), ("R4.6", 9),
])
def test_theorem_sweeps_pass(theorem, q):
    report = verify_theorem(theorem, q)
    assert report.verdict == "pass"
    assert report.passed
    assert report.cases > 0
    assert report.failures == ()


@pytest.mark.parametrize("theorem,q", [("T3.5", 32), ("T3.7", 27), ("T3.9", 27)])
def test_larger_theorem_sweeps_pass(theorem, q):
    report = verify_theorem(theorem, q)
    assert report.verdict == "pass"
    assert report.cases > 1000


def test_report_serialization():
    report = verify_theorem("T3.3", 4, seed=7)
    doc = report.to_json()
    assert doc["theorem"] == "T3.3" and doc["q"] == 4
    assert doc["verdict"] == "pass" and doc["failures"] == []
    assert doc["seed"] == 7


def test_hypothesis_mismatches_rejected():
    with pytest.raises(ValueError):
        verify_theorem("T3.3", 5)
    with pytest.raises(ValueError):
        verify_theorem("T3.4", 8)
    with pytest.raises(ValueError):
        verify_theorem("T3.5", 16)
    with pytest.raises(ValueError):
        verify_theorem("T3.7", 9)
    with pytest.raises(ValueError):
        verify_theorem("T9.1", 4)


def test_budgeted_sweep_is_deterministic():
    full = verify_theorem("T3.9", 27)
    small = verify_theorem("T3.9", 27, budget=2000, seed=3)
    again = verify_theorem("T3.9", 27, budget=2000, seed=3)
    assert small.verdict == "pass"
    assert small.cases < full.cases
    assert small == again
