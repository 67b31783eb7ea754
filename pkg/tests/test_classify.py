"""Exhaustive classification sweeps against frozen class lists."""

from __future__ import annotations

import pytest

from ratperm import (
    check_against_golden,
    classify,
    classify_and_check,
    dedupe,
    field_from_order,
    is_pr_brute,
    load_golden,
    normal_form_audit,
    parse_ratfun,
)

# (q, degree, form) -> class count, frozen from full sweeps.
_COUNTS = {
    (4, 3, "deg3-nonpoly"): 1,
    (5, 3, "deg3-nonpoly"): 0,
    (7, 3, "deg3-nonpoly"): 1,
    (8, 3, "deg3-nonpoly"): 0,
    (2, 4, "form3.6"): 2,
    (3, 4, "form3.6"): 3,
    (5, 4, "form3.6"): 2,
    (7, 4, "form3.6"): 1,
    (8, 4, "form3.6"): 3,
    (2, 4, "form3.12"): 0,
    (3, 4, "form3.12"): 2,
    (4, 4, "form3.12"): 0,
    (9, 4, "form3.12"): 1,
}


@pytest.mark.parametrize("q,degree,form", sorted(_COUNTS))
def test_class_counts(q, degree, form):
    report = classify(q, degree, form)
    assert report.class_count == _COUNTS[(q, degree, form)]
    assert report.q == q and report.degree == degree and report.form == form
    assert len(report.class_representatives) == report.class_count
    assert report.search_space_size > 0 or report.class_count == 0
    F = field_from_order(q)
    for text in report.class_representatives:
        f = parse_ratfun(F, text)
        assert f.degree == degree
        assert is_pr_brute(f)


def test_representatives_are_pairwise_inequivalent():
    from ratperm import are_equivalent
    report = classify(3, 4, "form3.6")
    F = field_from_order(3)
    reps = [parse_ratfun(F, t) for t in report.class_representatives]
    assert len(reps) == 3
    for i, f in enumerate(reps):
        for g in reps[i + 1:]:
            assert are_equivalent(f, g) is None


def test_golden_comparison_at_q5():
    report, golden = classify_and_check(5, 4, "form3.6")
    assert golden is not None
    assert golden["match"]
    assert golden["golden_count"] == report.class_count == 2
    assert all(pair["witness"] for pair in golden["pairs"])
    matched = {pair["matched"] for pair in golden["pairs"]}
    assert matched == set(report.class_representatives)


def test_golden_fixture_loading():
    data = load_golden(5, "form3.6")
    assert data["schema"] == 1
    assert data["q"] == 5
    assert data["count"] == 2
    assert len(data["representatives"]) == 2
    assert load_golden(13, "form3.6") is None
    with pytest.raises(FileNotFoundError):
        check_against_golden(13, "form3.6")
    report, golden = classify_and_check(13, 3, "deg3-nonpoly")
    assert report.class_count == 1


def test_classification_is_deterministic():
    a = classify(3, 4, "form3.12")
    b = classify(3, 4, "form3.12")
    assert a.to_json() == b.to_json()
    assert a.class_representatives == b.class_representatives


def test_report_serialization_shape():
    doc = classify(2, 4, "form3.6").to_json()
    assert sorted(doc) == ["class_count", "class_representatives", "degree",
                           "form", "q", "search_space_size"]
    assert doc["class_count"] == 2


def test_dedupe_merges_equivalent_functions():
    F = field_from_order(5)
    f = parse_ratfun(F, "x^2+2*x/(x^2-2)")
    g = parse_ratfun(F, "(x+1)^2+2*(x+1)/((x+1)^2-2)")  # f pre-shifted
    h = parse_ratfun(F, "x^2-x+2*x/(x^2-3)")
    classes = dedupe([f, f, g, h])
    assert len(classes) == 2
    sizes = sorted(len(c) for c in classes)
    assert sizes == [1, 2]


def test_dedupe_rejects_mixed_fields():
    with pytest.raises(ValueError):
        dedupe([parse_ratfun(field_from_order(2), "x"),
                parse_ratfun(field_from_order(3), "x")])


def test_budget_and_argument_errors():
    with pytest.raises(ValueError, match="budget exceeded"):
        classify(25, 4, "form3.6")
    with pytest.raises(ValueError, match="budget exceeded"):
        classify(25, 3, "deg3-nonpoly")
    with pytest.raises(ValueError, match="budget exceeded"):
        classify(16, 4, "form3.12")
    with pytest.raises(ValueError, match="unknown form"):
        classify(5, 4, "form9.9")
    with pytest.raises(ValueError, match="degree"):
        classify(5, 3, "form3.6")


def test_normal_form_audit_q2():
    counts = normal_form_audit(2)
    assert counts == {"polynomial": 90, "deg3-nonpoly": 0, "form3.6": 18,
                      "form3.12": 0, "cubic-pole-general": 0}


def test_normal_form_audit_q3():
    counts = normal_form_audit(3)
    assert counts == {"polynomial": 720, "deg3-nonpoly": 0, "form3.6": 768,
                      "form3.12": 192, "cubic-pole-general": 0}


def test_normal_form_audit_rejects_large_q():
    with pytest.raises(ValueError):
        normal_form_audit(5)
