"""Bounded model search: frozen examples, self-consistency, determinism."""

import pytest

from bfoml import ResourceLimitError, check, enumerate_sat, parse
from bfoml.formulas import cleanse, free_vars, to_nnf

FOOTNOTE_PAIR = "(A x [] A y [] !P(x) & A z [] E w <> P(w))"
SERIAL_FOOTNOTE_PAIR = "(E u <> T & " + FOOTNOTE_PAIR + ")"


def test_vacuous_box_found_at_minimum_bounds():
    result = enumerate_sat(parse("E x [] P(x)"), 1, 1)
    assert result is not None
    assert result.model.worlds == ("w0",)
    assert result.root == "w0"


def test_contradiction_has_no_model():
    assert enumerate_sat(parse("(P(x) & !P(x))"), 2, 2) is None


def test_footnote_pair_is_satisfiable_under_both_semantics():
    # Both conjuncts are universal bundles, so a successor-free world makes
    # them vacuously true; the one-world model therefore exists even with a
    # constant domain.
    f = parse(FOOTNOTE_PAIR)
    for semantics in ("increasing", "constant"):
        result = enumerate_sat(f, 4, 3, semantics)
        assert result is not None
        assert result.model.worlds == ("w0",)
        assert result.model.edges == frozenset()


def test_serial_footnote_pair_separates_the_semantics():
    # Forcing one successor removes the vacuous reading: satisfiable with
    # growing domains, exhaustively unsatisfiable with a constant one.
    f = parse(SERIAL_FOOTNOTE_PAIR)
    increasing = enumerate_sat(f, 3, 2, "increasing")
    assert increasing is not None
    assert not increasing.model.is_constant_domain
    assert enumerate_sat(f, 3, 2, "constant") is None


def test_found_model_passes_independent_check():
    for text in ["E x <> P(x)", "(E x [] P(x) & A y <> Q(y))", "A x [] E y <> Q(x,y)"]:
        f = parse(text)
        result = enumerate_sat(f, 3, 2)
        assert result is not None
        normalized = cleanse(to_nnf(f))
        sigma = {v: str(v) for v in free_vars(normalized)}
        assert check(result.model, result.root, sigma, normalized)


def test_open_formula_uses_identity_assignment():
    result = enumerate_sat(parse("(P(x) & !P(y))"), 1, 2)
    assert result is not None
    assert {"x", "y"} <= set(result.model.domain)
    assert {"x", "y"} <= result.model.local[result.root]


def test_too_many_free_variables_for_domain_bound():
    assert enumerate_sat(parse("(P(x) & (P(y) & P(u)))"), 2, 2) is None


def test_budget_exhaustion_raises():
    with pytest.raises(ResourceLimitError):
        enumerate_sat(parse("(E x [] P(x) & A y <> !P(y))"), 4, 3, budget=50)


def test_deterministic_result():
    f = parse("(A x [] (P(x) | Q(x)) & E y <> !P(y))")
    first = enumerate_sat(f, 3, 2)
    second = enumerate_sat(f, 3, 2)
    assert first.model == second.model
    assert first.root == second.root


def test_unknown_semantics_rejected():
    with pytest.raises(ValueError):
        enumerate_sat(parse("T"), 1, 1, "varying")
