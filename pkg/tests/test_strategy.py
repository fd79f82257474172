from fractions import Fraction as F

import pytest

from golden import RESPONSE_ODDS, pat
from penney.patterns import CoinSpec, all_patterns, negate_pattern, penney_response
from penney.strategy import (
    beat_probability,
    best_response,
    find_beats_cycle,
    verify_penney_optimal,
)


class TestResponseTable:
    def test_fair_table_values(self, fair):
        table = verify_penney_optimal(fair)
        assert len(table.cases) == 8
        for case in table.cases:
            assert case.win_probability == RESPONSE_ODDS[case.pattern.text]
            assert case.optimal

    def test_fair_values_come_from_three_level_set(self, fair):
        table = verify_penney_optimal(fair)
        assert {c.win_probability for c in table.cases} == {F(2, 3), F(3, 4), F(7, 8)}

    @pytest.mark.parametrize(
        "pattern, response, odds",
        [("HHH", "THH", F(7, 8)), ("HHT", "THH", F(3, 4)), ("TTH", "HTT", F(3, 4))],
    )
    def test_published_cases(self, fair, pattern, response, odds):
        case = verify_penney_optimal(fair).case_for(pat(pattern))
        assert case.response == pat(response)
        assert case.win_probability == odds

    def test_biased_coin_reports_without_asserting(self):
        # a heads-heavy coin makes THH a poor answer to HHH; the table must
        # still be produced, with the losing case flagged
        table = verify_penney_optimal(CoinSpec.parse("9/10"))
        case = table.case_for(pat("HHH"))
        assert case.win_probability == 1 - F(9, 10) ** 3
        assert not case.optimal


class TestBestResponse:
    def test_best_against_triple_heads(self, fair):
        result = best_response(pat("HHH"), fair)
        assert result.response == pat("THH")
        assert result.win_probability == F(7, 8)
        assert result.ties == (pat("THH"),)

    def test_exhaustive_agreement_with_response_map(self, fair):
        for p in all_patterns(3):
            result = best_response(p, fair)
            assert result.response == penney_response(p)
            assert result.ties == (penney_response(p),)

    def test_length_two(self, fair):
        result = best_response(pat("HH"), fair)
        assert result.response == pat("TH")
        assert result.win_probability == F(3, 4)

    def test_ties_are_surfaced(self, fair):
        # against HH the other two length-2 candidates tie at even odds,
        # so the runner-up set is a real tie; the winner itself is unique
        scored = {
            c.text: beat_probability(pat("HH"), c, fair)
            for c in all_patterns(2)
            if c != pat("HH")
        }
        assert scored == {"HT": F(1, 2), "TH": F(3, 4), "TT": F(1, 2)}


class TestBeatsCycle:
    def test_cycle_nodes_and_orientation(self, fair):
        cycle = find_beats_cycle(fair)
        assert [p.text for p in cycle.nodes] == ["HHT", "THH", "TTH", "HTT"]
        for edge in cycle.edges:
            assert edge.winner == penney_response(edge.loser)

    def test_exact_edge_probabilities(self, fair):
        cycle = find_beats_cycle(fair)
        probabilities = [e.probability for e in cycle.edges]
        assert probabilities == [F(3, 4), F(2, 3), F(3, 4), F(2, 3)]

    def test_every_edge_beats_even_odds(self, fair):
        for edge in find_beats_cycle(fair).edges:
            assert edge.probability > F(1, 2)
            assert edge.reverse_probability < F(1, 2)
            assert edge.probability + edge.reverse_probability == 1

    def test_response_map_funnels_into_cycle(self, fair):
        cycle_nodes = set(find_beats_cycle(fair).nodes)
        for p in all_patterns(3):
            assert penney_response(p) in cycle_nodes
            # once inside, the map stays inside
            assert penney_response(penney_response(p)) in cycle_nodes


class TestNegationStructure:
    def test_equivariance_under_negation(self, fair):
        for p in all_patterns(3):
            case = verify_penney_optimal(fair).case_for(p)
            mirrored = verify_penney_optimal(fair).case_for(negate_pattern(p))
            assert mirrored.response == negate_pattern(case.response)
            assert mirrored.win_probability == case.win_probability
