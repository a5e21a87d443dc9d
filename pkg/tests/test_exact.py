import numpy as np
import pytest

from drsmatch import (
    MatchConfig,
    OracleLimits,
    match_forms,
    naive_optimal,
    optimal_match,
    parse_document,
    score_mapping,
)
from drsmatch.errors import BudgetExceeded, TooLarge

from .genforms import random_pair


class TestOptimalMatch:
    def test_baseline_pair_keep_refs(self, smiled_form, fled_form):
        res = optimal_match(smiled_form, fled_form, keep_refs=True)
        assert res.matched == 6
        assert res.f1 == pytest.approx(0.545, abs=0.001)
        # the reported mapping actually realizes the optimum
        assert score_mapping(res.best_mapping, smiled_form, fled_form) == 6

    def test_baseline_pair_default(self, smiled_form, fled_form):
        assert optimal_match(smiled_form, fled_form).matched == 3

    def test_self_copy(self, fled_form):
        res = optimal_match(fled_form, fled_form, keep_refs=True)
        assert res.matched == len(fled_form.clauses)
        assert res.f1 == 1.0

    def test_symmetric_matched(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            a, b = random_pair(rng, max_clauses=7, max_boxes=2, max_refs=3)
            assert optimal_match(a, b).matched == optimal_match(b, a).matched

    def test_too_large(self, fled_form):
        with pytest.raises(TooLarge):
            optimal_match(fled_form, fled_form, OracleLimits(max_vars_per_side=3))

    def test_budget_exceeded_carries_incumbent(self, smiled_form, fled_form):
        with pytest.raises(BudgetExceeded) as err:
            optimal_match(smiled_form, fled_form, OracleLimits(max_nodes=5), keep_refs=True)
        assert err.value.best is not None
        assert err.value.best.matched <= 6

    def test_limits_validated(self):
        with pytest.raises(ValueError):
            OracleLimits(max_nodes=0).validate()


class TestNaiveAgreement:
    def test_agrees_with_branch_and_bound(self):
        rng = np.random.default_rng(12)
        for _ in range(60):
            a, b = random_pair(rng, max_clauses=8, max_boxes=2, max_refs=3)
            assert naive_optimal(a, b) == optimal_match(a, b).matched

    def test_agrees_keep_refs(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            a, b = random_pair(rng, max_clauses=8, max_boxes=2, max_refs=3)
            assert naive_optimal(a, b, keep_refs=True) == optimal_match(a, b, keep_refs=True).matched

    def test_uneven_sides(self):
        a = parse_document("b0 cat n.01 x0\nb0 dog n.01 x1\nb1 Agent x0 x1\n")
        b = parse_document("b0 cat n.01 x0\n")
        assert naive_optimal(a, b) == optimal_match(a, b).matched == 1
        assert naive_optimal(b, a) == optimal_match(b, a).matched == 1


def test_matcher_bounded_by_oracle_on_fixture_pairs(smiled_form, fled_form, dishes_en, dishes_nl):
    for a, b in [(smiled_form, fled_form), (dishes_en, dishes_nl)]:
        for keep in (False, True):
            approx = match_forms(a, b, MatchConfig(keep_refs=keep)).matched
            exact = optimal_match(a, b, keep_refs=keep).matched
            assert approx <= exact
