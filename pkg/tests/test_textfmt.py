import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtakit import (
    ArrayDocument,
    DomainError,
    FormatError,
    MixedArray,
    catalog,
    export_suite,
    parse,
    serialize,
)
from conftest import mixed_arrays

CANONICAL = """DTA 1
N=2 k=3 t=2 d=1
types=2 3 2
0 0 0
1 2 1
# factor col=1 Power
# name col=1 0=off
# name col=1 1=on
"""


def test_parse_canonical_round_trips_text():
    assert serialize(parse(CANONICAL)) == CANONICAL


def test_parse_fields():
    doc = parse(CANONICAL)
    assert doc.array.types == (2, 3, 2)
    assert doc.array.n == 2
    assert (doc.t, doc.d, doc.lam) == (2, 1, None)
    assert doc.factor_names == {1: "Power"}
    assert doc.level_names == {1: {0: "off", 1: "on"}}


def test_round_trip_catalog_documents():
    for entry_id in ("table1", "example34"):
        doc = catalog.get(entry_id).document
        assert parse(serialize(doc)) == doc
        assert serialize(parse(serialize(doc))) == serialize(doc)


def test_lambda_token_round_trips():
    doc = ArrayDocument(array=MixedArray((2, 2), ((0, 1),)), t=1, d=0, lam=3)
    assert "lambda=3" in serialize(doc).splitlines()[1]
    assert parse(serialize(doc)) == doc


name_text = st.text(
    alphabet=st.characters(min_codepoint=33, max_codepoint=126), min_size=1, max_size=8
)


@st.composite
def documents(draw):
    array = draw(mixed_arrays(max_k=4, max_v=4, max_n=6))
    t = draw(st.integers(1, array.k))
    d = draw(st.integers(0, 2))
    lam = draw(st.one_of(st.none(), st.integers(1, 3)))
    factor_names = {
        col: draw(name_text)
        for col in range(1, array.k + 1)
        if draw(st.booleans())
    }
    level_names = {}
    for col in range(1, array.k + 1):
        if draw(st.booleans()):
            level_names[col] = {
                level: draw(name_text) for level in range(array.types[col - 1])
            }
    return ArrayDocument(
        array=array, t=t, d=d, lam=lam,
        factor_names=factor_names, level_names=level_names,
    )


@settings(max_examples=100, deadline=None)
@given(documents())
def test_round_trip_random_documents(doc):
    assert parse(serialize(doc)) == doc


def test_parse_error_bad_magic():
    with pytest.raises(FormatError, match="line 1"):
        parse("DTA 9\nN=1 k=1 t=1 d=0\ntypes=2\n0\n")


def test_parse_error_bad_header():
    with pytest.raises(FormatError, match="line 2"):
        parse("DTA 1\nN=1 k=1 q=9\ntypes=2\n0\n")


def test_parse_error_out_of_alphabet_cites_line():
    text = "DTA 1\nN=2 k=2 t=1 d=0\ntypes=2 2\n0 0\n0 5\n"
    with pytest.raises(FormatError, match="line 5"):
        parse(text)


def test_parse_error_short_row():
    text = "DTA 1\nN=1 k=3 t=1 d=0\ntypes=2 2 2\n0 0\n"
    with pytest.raises(FormatError, match="line 4"):
        parse(text)


def test_parse_error_missing_rows():
    with pytest.raises(FormatError, match="expected 3 rows"):
        parse("DTA 1\nN=3 k=1 t=1 d=0\ntypes=2\n0\n1\n")


def test_parse_error_trailing_junk():
    text = "DTA 1\nN=1 k=1 t=1 d=0\ntypes=2\n0\nwhat is this\n"
    with pytest.raises(FormatError, match="line 5"):
        parse(text)


def test_parse_error_name_for_unknown_column():
    text = "DTA 1\nN=1 k=1 t=1 d=0\ntypes=2\n0\n# name col=4 0=x\n"
    with pytest.raises(FormatError, match="column 4"):
        parse(text)


def test_export_table1_first_row():
    doc = catalog.get("table1").document
    lines = export_suite(doc).splitlines()
    assert lines[0] == "Function scope,Server type,Client type,Target content"
    assert lines[1] == "Current,Share mode,MSNET,Empty"
    assert len(lines) == 19


def test_export_numeric_fallback():
    doc = ArrayDocument(array=MixedArray((2, 2), ((0, 1), (1, 0))), t=1, d=0)
    out = export_suite(doc, numeric=True)
    assert out == "f1,f2\n0,1\n1,0\n"


def test_export_partial_map_lists_missing_keys():
    doc = ArrayDocument(
        array=MixedArray((2, 2), ((0, 1),)),
        t=1,
        d=0,
        level_names={1: {0: "lo"}},
    )
    with pytest.raises(DomainError) as err:
        export_suite(doc)
    message = str(err.value)
    assert "(col 1, level 1)" in message
    assert "(col 2, level 0)" in message


def test_export_spaces_in_names_stay_unquoted():
    doc = catalog.get("table1").document
    assert "Share mode" in export_suite(doc)
