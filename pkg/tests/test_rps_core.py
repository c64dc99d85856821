"""Event-space enumeration, mass-function validation, and entropy."""

import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rpswalk import (
    CapacityError,
    PermutationMassFunction,
    RngStream,
    enumerate_pes,
    f_function,
    max_entropy_pmf,
    max_rps_entropy,
    rps_entropy,
)


class TestEnumeratePes:
    def test_empty_frame(self):
        assert enumerate_pes(0) == [()]

    @pytest.mark.parametrize("n, count", [(1, 2), (2, 5), (3, 16), (4, 65), (6, 1957)])
    def test_event_counts_match_f_function(self, n, count):
        events = enumerate_pes(n)
        assert len(events) == count == f_function(n)

    def test_canonical_order(self):
        events = enumerate_pes(3)
        assert events[0] == ()
        assert events == sorted(events, key=lambda e: (len(e), e))
        assert len(set(events)) == len(events)

    def test_events_are_valid_arrangements(self):
        for event in enumerate_pes(4):
            assert len(set(event)) == len(event)
            assert all(1 <= e <= 4 for e in event)

    def test_capacity_bound_is_named(self):
        with pytest.raises(CapacityError, match="8"):
            enumerate_pes(9)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            enumerate_pes(-1)


class TestMassFunctionValidation:
    def test_rejects_element_out_of_frame(self):
        with pytest.raises(ValueError, match="outside"):
            PermutationMassFunction(n=2, masses={(3,): 1.0})

    def test_rejects_repeated_element(self):
        with pytest.raises(ValueError, match="repeats"):
            PermutationMassFunction(n=2, masses={(1, 1): 1.0})

    def test_rejects_negative_mass(self):
        with pytest.raises(ValueError, match=">= 0"):
            PermutationMassFunction(n=2, masses={(1,): 1.5, (2,): -0.5})

    def test_rejects_bad_total(self):
        with pytest.raises(ValueError, match="sum"):
            PermutationMassFunction(n=2, masses={(1,): 0.7})

    def test_rejects_mass_on_empty_event(self):
        with pytest.raises(ValueError, match="empty event"):
            PermutationMassFunction(n=2, masses={(): 0.5, (1,): 0.5})

    def test_zero_mass_on_empty_event_is_dropped(self):
        pmf = PermutationMassFunction(n=1, masses={(): 0.0, (1,): 1.0})
        assert () not in pmf.masses
        assert pmf.mass(()) == 0.0

    def test_mass_lookup_defaults_to_zero(self):
        pmf = PermutationMassFunction(n=2, masses={(1,): 1.0})
        assert pmf.mass((2,)) == 0.0
        assert pmf.mass([1]) == 1.0

    def test_json_round_trip(self):
        pmf = max_entropy_pmf(3)
        document = json.loads(json.dumps(pmf.to_json_dict()))
        again = PermutationMassFunction.from_json_dict(document)
        assert again.n == pmf.n
        assert again.masses == pmf.masses

    @pytest.mark.parametrize(
        "document",
        [{}, {"n": 2}, {"n": "two", "masses": []}, {"masses": [{"event": [1]}]}],
    )
    def test_malformed_document_rejected(self, document):
        with pytest.raises(ValueError):
            PermutationMassFunction.from_json_dict(document)


class TestEntropy:
    def test_single_singleton_is_zero(self):
        pmf = PermutationMassFunction(n=3, masses={(2,): 1.0})
        assert rps_entropy(pmf, 2.0) == 0.0

    def test_two_singletons_reduce_to_one_bit(self):
        pmf = PermutationMassFunction(n=2, masses={(1,): 0.5, (2,): 0.5})
        assert rps_entropy(pmf, 2.0) == pytest.approx(1.0, abs=1e-12)

    def test_max_entropy_pmf_matches_closed_form_value(self):
        assert rps_entropy(max_entropy_pmf(2), 2.0) == pytest.approx(
            math.log2(10), abs=1e-9
        )

    @given(st.lists(st.integers(min_value=1, max_value=1000), min_size=2, max_size=5))
    def test_singleton_support_reduces_to_shannon(self, weights):
        n = len(weights)
        total = sum(weights)
        masses = {(i + 1,): w / total for i, w in enumerate(weights)}
        pmf = PermutationMassFunction(n=n, masses=masses)
        shannon = -math.fsum(
            m * math.log2(m) for m in masses.values() if m > 0
        )
        assert abs(rps_entropy(pmf, 2.0) - shannon) <= 1e-12

    def test_rejects_bad_base(self):
        pmf = PermutationMassFunction(n=1, masses={(1,): 1.0})
        with pytest.raises(ValueError):
            rps_entropy(pmf, 1.0)


class TestMaxEntropy:
    def test_smallest_frame(self):
        pmf = max_entropy_pmf(1)
        assert pmf.masses == {(1,): 1.0}

    def test_two_element_frame_masses(self):
        pmf = max_entropy_pmf(2)
        assert pmf.mass((1,)) == pytest.approx(0.1, abs=1e-15)
        assert pmf.mass((1, 2)) == pytest.approx(0.4, abs=1e-15)
        assert math.fsum(pmf.masses.values()) == pytest.approx(1.0, abs=1e-12)

    def test_full_length_mass_at_six(self):
        pmf = max_entropy_pmf(6)
        assert pmf.mass((1, 2, 3, 4, 5, 6)) == pytest.approx(1956 / 1667286, rel=1e-15)

    def test_equal_mass_within_cardinality(self):
        pmf = max_entropy_pmf(4)
        by_size: dict[int, set[float]] = {}
        for event, mass in pmf.masses.items():
            by_size.setdefault(len(event), set()).add(mass)
        assert all(len(values) == 1 for values in by_size.values())

    def test_capacity_and_domain_errors(self):
        with pytest.raises(CapacityError, match="8"):
            max_entropy_pmf(9)
        with pytest.raises(ValueError):
            max_entropy_pmf(0)

    @pytest.mark.parametrize("N", range(1, 7))
    @pytest.mark.parametrize("base", [2.0, math.e])
    def test_entropy_consistency(self, N, base):
        gap = abs(rps_entropy(max_entropy_pmf(N), base) - max_rps_entropy(N, base))
        assert gap <= 1e-9

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_no_random_pmf_beats_the_maximizer(self, n):
        events = [e for e in enumerate_pes(n) if e]
        rng = RngStream(seed=123, stream_index=n)
        ceiling = max_rps_entropy(n, 2.0) + 1e-9
        for _ in range(25):
            weights = rng.uniforms(len(events)) + 1e-12
            weights = weights / weights.sum()
            pmf = PermutationMassFunction(
                n=n, masses={e: float(w) for e, w in zip(events, weights)}
            )
            assert rps_entropy(pmf, 2.0) <= ceiling

    def test_max_rps_entropy_beyond_enumeration_cap(self):
        # The closed form needs no enumeration, so large frames work.
        value = max_rps_entropy(120, 2.0)
        assert value > 0
        with pytest.raises(ValueError):
            max_rps_entropy(0, 2.0)
