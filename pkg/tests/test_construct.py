import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtakit import (
    DomainError,
    InfeasibleParametersError,
    MixedArray,
    OaSpec,
    coverage_index,
    derive_super_simple,
    full_factorial,
    insert_expand,
    is_detecting,
    is_super_simple,
    kronecker,
    mca_optimum,
    oa_bush,
    oa_sum,
    replicate_cyclic,
    stack,
)
from naive import naive_exact_index


# --- orthogonal arrays ------------------------------------------------------

def test_oa_sum_strength2():
    a = oa_sum(2, 3)
    assert (a.n, a.k) == (9, 3)
    assert naive_exact_index(a, 2)


def test_oa_sum_strength3():
    a = oa_sum(3, 2)
    assert (a.n, a.k) == (8, 4)
    assert naive_exact_index(a, 3)
    assert coverage_index(a, 3) == 1


@pytest.mark.parametrize("t,v", [(1, 2), (2, 2), (2, 4), (3, 3), (4, 2)])
def test_oa_sum_every_tuple_exactly_once(t, v):
    assert naive_exact_index(oa_sum(t, v), t)


def test_oa_bush_small():
    a = oa_bush(2, 3)
    assert (a.n, a.k) == (9, 4)
    assert naive_exact_index(a, 2)


def test_oa_bush_strength3_order5():
    a = oa_bush(3, 5)
    assert (a.n, a.k) == (125, 6)
    assert naive_exact_index(a, 3)


def test_oa_bush_rejects_composite_order():
    with pytest.raises(DomainError, match="prime"):
        oa_bush(2, 4)


def test_oa_bush_rejects_strength_above_order():
    with pytest.raises(DomainError):
        oa_bush(4, 3)


def test_oa_spec_dispatch():
    assert OaSpec(2, 3, "sum").build().k == 3
    assert OaSpec(2, 3, "bush").build().k == 4
    assert OaSpec(2, 3, "bush").columns == 4
    with pytest.raises(DomainError):
        OaSpec(2, 3, "magic").build()


# --- optimum covering arrays ------------------------------------------------

def test_mca_optimum_mixed():
    a = mca_optimum(2, (2, 3, 3))
    assert a.n == 9
    assert a.types == (2, 3, 3)
    assert coverage_index(a, 2) == 1
    assert naive_exact_index(
        MixedArray(a.types[1:], tuple(r[1:] for r in a.rows)), 2
    )


def test_mca_optimum_strength3():
    a = mca_optimum(3, (2, 3, 3, 4))
    assert a.n == 36
    assert coverage_index(a, 3) == 1


def test_mca_optimum_uniform_binary_is_sum_oa():
    a = mca_optimum(2, (2, 2, 2))
    assert a.n == 4
    assert naive_exact_index(a, 2)


def test_mca_optimum_sorts_types():
    a = mca_optimum(2, (3, 2, 3))
    assert a.types == (2, 3, 3)


def test_mca_optimum_wrong_column_count():
    with pytest.raises(DomainError):
        mca_optimum(2, (2, 3, 3, 3))


# --- column insertion -------------------------------------------------------

def test_insert_expand_widens_one_column():
    a = mca_optimum(2, (2, 3, 3))
    b = mca_optimum(1, (2, 3))
    wide = insert_expand(a, b, 3, 1)
    assert wide.types == (2, 3, 4)
    assert wide.n == 12
    assert coverage_index(wide, 2) >= 1


def test_insert_expand_two_levels():
    a = mca_optimum(2, (2, 3, 3))
    b = mca_optimum(1, (2, 3))
    wide = insert_expand(a, b, 3, 2)
    assert wide.types == (2, 3, 5)
    assert wide.n == 15
    assert coverage_index(wide, 2) >= 1


def test_insert_expand_type_mismatch():
    a = mca_optimum(2, (2, 3, 3))
    with pytest.raises(DomainError, match="mismatch"):
        insert_expand(a, mca_optimum(1, (3, 3)), 3, 1)


def test_insert_expand_bad_e():
    a = mca_optimum(2, (2, 3, 3))
    with pytest.raises(DomainError):
        insert_expand(a, mca_optimum(1, (2, 3)), 3, 0)


# --- row-block product ------------------------------------------------------

def test_kronecker_pair_encoding():
    a = MixedArray((2,), ((1,),))
    b = MixedArray((3,), ((2,),))
    assert kronecker(a, b).rows == ((5,),)


def test_kronecker_shapes_and_coverage():
    a = oa_sum(2, 2)
    out = kronecker(a, a)
    assert out.types == (4, 4, 4)
    assert out.n == 16
    assert coverage_index(out, 2) == 1


def test_kronecker_column_mismatch(table1):
    with pytest.raises(DomainError):
        kronecker(table1, oa_sum(2, 2))


def test_kronecker_table1_square_is_optimum_triple_detecting(table1):
    out = kronecker(table1, table1)
    assert out.types == (4, 9, 9, 9)
    assert out.n == 324
    report = is_detecting(out, 3, 2)
    assert report.verdict and report.stats["optimum"]


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 3), st.integers(2, 3))
def test_kronecker_coverage_multiplies(v1, v2):
    a, b = oa_sum(2, v1), oa_sum(2, v2)
    out = kronecker(a, b)
    assert coverage_index(out, 2) >= coverage_index(a, 2) * coverage_index(b, 2)


def test_kronecker_preserves_super_simplicity():
    a = derive_super_simple(oa_sum(3, 2), 2)   # super-simple index 2
    out = kronecker(a, a)
    assert is_super_simple(out, 2).verdict


# --- cyclic replication -----------------------------------------------------

def _wide12():
    return insert_expand(mca_optimum(2, (2, 3, 3)), mca_optimum(1, (2, 3)), 3, 1)


def test_replicate_identity():
    wide = _wide12()
    assert replicate_cyclic(wide, 1).rows == wide.rows


def test_replicate_builds_optimum_detecting_array():
    doubled = replicate_cyclic(_wide12(), 2)
    assert doubled.n == 24
    assert is_super_simple(doubled, 2).verdict
    assert coverage_index(doubled, 2) == 2
    report = is_detecting(doubled, 1, 2)
    assert report.verdict and report.stats["optimum"]


def test_replicate_depth_capped_by_smallest_column():
    with pytest.raises(InfeasibleParametersError):
        replicate_cyclic(_wide12(), 3)


def test_replicate_requires_exact_base_coverage():
    with pytest.raises(DomainError, match="exactly once"):
        replicate_cyclic(stack(mca_optimum(2, (2, 3, 3)), 2), 2)


@pytest.mark.parametrize("types,d", [((2, 3, 3), 2), ((3, 3, 4), 3), ((2, 2, 2), 2)])
def test_replicate_coverage_is_exactly_d(types, d):
    out = replicate_cyclic(mca_optimum(2, types), d)
    assert coverage_index(out, 2) == d
    assert is_super_simple(out, 2).verdict


# --- super-simple derivation -------------------------------------------------

def test_derive_super_simple_from_sum_oa():
    out = derive_super_simple(oa_sum(3, 2), 2)
    assert (out.n, out.k) == (8, 3)
    assert out.types == (2, 2, 2)
    assert is_super_simple(out, 2).verdict
    assert coverage_index(out, 2) == 2


def test_derive_super_simple_from_bush_oa():
    out = derive_super_simple(oa_bush(3, 5), 2)
    assert (out.n, out.k) == (50, 5)
    assert is_super_simple(out, 2).verdict
    assert coverage_index(out, 2) == 2


def test_derive_lambda_range():
    with pytest.raises(DomainError):
        derive_super_simple(oa_sum(3, 2), 1)
    with pytest.raises(DomainError):
        derive_super_simple(oa_sum(3, 3), 4)


def test_derive_rejects_non_oa():
    junk = MixedArray((2, 2, 2, 2), ((0, 0, 0, 0),) * 8)
    with pytest.raises(DomainError, match="orthogonal"):
        derive_super_simple(junk, 2)


def test_derive_rejects_mixed_alphabet(table1):
    with pytest.raises(DomainError, match="uniform"):
        derive_super_simple(table1, 2)


# --- helpers ------------------------------------------------------------------

def test_stack_multiplies_coverage():
    a = oa_sum(2, 3)
    assert coverage_index(stack(a, 3), 2) == 3


def test_full_factorial_counts():
    a = full_factorial((2, 3, 2))
    assert a.n == 12
    assert coverage_index(a, 3) == 1
