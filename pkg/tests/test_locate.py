import itertools

import pytest

from dtakit import (
    DomainError,
    Identified,
    Inconsistent,
    Interaction,
    TooManyFaults,
    all_interactions,
    locate_faults,
    oa_sum,
    rho_union,
    simulate_outcome,
    stack,
)

WORKED_FAULT = Interaction.of((1, 0), (3, 0))  # Current message via MSNET client

# outcome column of the published 18-run plan: failures at tests 1, 2, 16
WORKED_OUTCOME = tuple(r not in (1, 2, 16) for r in range(1, 19))


def test_simulate_no_faults_all_pass(table1):
    assert simulate_outcome(table1, []) == (True,) * 18


def test_simulate_worked_fault(table1):
    assert simulate_outcome(table1, [WORKED_FAULT]) == WORKED_OUTCOME


def test_simulate_disjoint_faults_union(table1):
    f1 = Interaction.of((1, 0), (2, 0))
    f2 = Interaction.of((1, 1), (2, 1))
    outcome = simulate_outcome(table1, [f1, f2])
    failing = tuple(r for r, ok in enumerate(outcome, start=1) if not ok)
    assert failing == rho_union(table1, [f1, f2])


def test_simulate_rejects_mixed_strengths(table1):
    with pytest.raises(DomainError):
        simulate_outcome(table1, [WORKED_FAULT, Interaction.of((2, 1))])


def test_locate_worked_example(table1):
    result = locate_faults(table1, 1, 2, WORKED_OUTCOME)
    assert result == Identified(frozenset({WORKED_FAULT}))


def test_locate_all_pass(table1):
    assert locate_faults(table1, 1, 2, (True,) * 18) == Identified(frozenset())


def test_locate_single_failing_row_is_inconsistent(table1):
    # every interaction is covered at least twice, so one lone failure
    # cannot be an interaction fault
    outcome = tuple(r != 5 for r in range(1, 19))
    result = locate_faults(table1, 1, 2, outcome)
    assert isinstance(result, Inconsistent)
    assert result.unexplained == (5,)


def test_locate_round_trip_all_single_faults(table1):
    for fault in all_interactions(table1.types, 2):
        outcome = simulate_outcome(table1, [fault])
        assert locate_faults(table1, 1, 2, outcome, verify=False) == Identified(
            frozenset({fault})
        )


def test_locate_double_faults_never_misidentified(table1):
    every = list(all_interactions(table1.types, 2))
    wrong = 0
    for f1, f2 in itertools.combinations(every, 2):
        outcome = simulate_outcome(table1, [f1, f2])
        result = locate_faults(table1, 1, 2, outcome, verify=False)
        if isinstance(result, Identified):
            wrong += 1
    assert wrong == 0


def test_locate_identified_replays_outcome(table1):
    # monotone consistency: an identified set reproduces the outcome
    for fault in list(all_interactions(table1.types, 2))[::5]:
        outcome = simulate_outcome(table1, [fault])
        result = locate_faults(table1, 1, 2, outcome, verify=False)
        assert isinstance(result, Identified)
        assert simulate_outcome(table1, result.faults) == outcome


def test_locate_two_fault_detection_example34(example34):
    # d=2 array: two-fault sets are recovered exactly
    faults = {
        Interaction.of((1, 0), (4, 3)),
        Interaction.of((2, 1), (5, 2)),
    }
    outcome = simulate_outcome(example34, faults)
    result = locate_faults(example34, 2, 2, outcome, verify=False)
    assert result == Identified(frozenset(faults))


def test_locate_outcome_length_mismatch(table1):
    with pytest.raises(DomainError, match="18"):
        locate_faults(table1, 1, 2, (True,) * 17)


def test_locate_verifies_by_default():
    bad = stack(oa_sum(2, 2), 2)  # index-2 but not detecting
    with pytest.raises(DomainError, match="not a"):
        locate_faults(bad, 1, 2, (True,) * 8)


def test_locate_no_verify_flag_runs():
    bad = stack(oa_sum(2, 2), 2)
    result = locate_faults(bad, 1, 2, (True,) * 8, verify=False)
    assert result == Identified(frozenset())
