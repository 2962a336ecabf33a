import pytest

from dtakit import catalog, coverage_index, is_detecting, is_super_simple, lower_bound


def test_every_entry_verifies():
    # the shipped-entry gate: a failing entry would raise here
    for entry_id in catalog.ids():
        catalog.get(entry_id)
        assert catalog.verification_status(entry_id) == "ok"


def test_table1_shape_and_claims():
    entry = catalog.get("table1")
    array = entry.document.array
    assert (array.n, array.k) == (18, 4)
    assert array.types == (2, 3, 3, 3)
    assert is_detecting(array, 1, 2).verdict
    assert coverage_index(array, 2) == 2


def test_table1_named_rows():
    doc = catalog.get("table1").document
    # test 1 is Current / Share mode / MSNET / Empty; test 16 fails too
    assert doc.array.rows[0] == (0, 0, 0, 0)
    assert doc.array.rows[15] == (0, 2, 0, 2)
    assert doc.level_names[2][2] == "MSNET"
    assert doc.factor_names[4] == "Target content"


def test_example34_shape_and_claims():
    array = catalog.get("example34").document.array
    assert (array.n, array.k) == (48, 5)
    assert array.types == (3, 3, 3, 4, 4)
    assert is_detecting(array, 2, 2).verdict
    assert not is_super_simple(array, 2).verdict


def test_unknown_id():
    with pytest.raises(KeyError, match="unknown"):
        catalog.get("table9")
    with pytest.raises(KeyError):
        catalog.load_array("table2-targets")


def test_targets_include_required_entries():
    targets = catalog.get("table2-targets").targets
    at_max = {(t.n, t.types_at_max) for t in targets}
    assert (8, (2, 2, 2, 2)) in at_max
    assert (18, (3, 3, 3, 3, 3, 3)) in at_max
    covered = {(t.n, t.types_for(a)) for t in targets for a in range(t.min_a, t.max_a + 1)}
    assert (12, (2, 2, 2, 3)) in covered
    assert (16, (2, 2, 2, 4)) in covered
    assert (18, (2, 3, 3, 3)) in covered


def test_targets_meet_bounds_at_every_size():
    for target in catalog.get("table2-targets").targets:
        for a in range(target.min_a, target.max_a + 1):
            assert lower_bound(1, 2, target.types_for(a)) == target.n


def test_target_range_guard():
    target = catalog.get("table2-targets").targets[0]
    with pytest.raises(ValueError):
        target.types_for(target.max_a + 1)
