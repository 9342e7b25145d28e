import random

import pytest
from hypothesis import given, strategies as st

from datagen import random_datum, random_valid
from ldforms.datum import CharacterizingDatum
from ldforms.errors import ParseError
from ldforms.formats import (Checkpoint, parse_checkpoint, parse_datum, parse_document, parse_lspace,
                             serialize_checkpoint, serialize_datum, serialize_lspace)
from ldforms.search import SearchOptions, run_lspace_shards

rngs = st.integers(0, 2**32 - 1).map(random.Random)

TRIPLE = """[field]
p = 3
k = 1
modulus = (0, 1)

[datum]
pole = (0), residue = 1
pole = (1), residue = 1
pole = (2), residue = 1
"""


def where(text, parser=parse_datum):
    with pytest.raises(ParseError) as e:
        parser(text)
    return e.value.message, e.value.line, e.value.column


def test_triple_round_trip(F3):
    d = parse_datum(TRIPLE)
    assert d == CharacterizingDatum.build(F3, [0, 1, 2], [1, 1, 1])
    assert serialize_datum(d) == TRIPLE


@given(rngs)
def test_datum_round_trip_is_byte_identical(rng):
    d = random_datum(rng)
    text = serialize_datum(d)
    assert parse_datum(text) == d
    assert serialize_datum(parse_datum(text)) == text


@given(rngs)
def test_valid_datum_round_trip(rng):
    d = random_valid(rng)[0]
    text = serialize_datum(d)
    assert serialize_datum(parse_datum(text)) == text


def test_comments_and_blank_lines_ignored():
    text = "# header\n" + TRIPLE.replace("k = 1", "k = 1   # degree").replace("\n\n", "\n\n\n")
    assert parse_datum(text) == parse_datum(TRIPLE)


def test_lspace_round_trip(lam2_candidates):
    for c in lam2_candidates:
        text = serialize_lspace(c)
        back = parse_lspace(text)
        assert back.key() == c.key()
        assert serialize_lspace(back) == text
        assert parse_document(text).key() == c.key()
    assert isinstance(parse_document(TRIPLE), CharacterizingDatum)


def test_checkpoint_round_trip():
    results = run_lspace_shards(2, 3, SearchOptions(budget=40, shards=3))
    assert not all(r.complete for r in results)
    cp = Checkpoint(2, 3, 3, True, results)
    text = serialize_checkpoint(cp)
    back = parse_checkpoint(text)
    assert serialize_checkpoint(back) == text
    assert (back.lam, back.k_max, back.shards, back.use_type_constraints) == (2, 3, 3, True)
    for r, s in zip(results, back.results):
        assert r.complete == s.complete
        assert s.last == (None if r.complete else r.last)
        assert [c.key() for c in r.candidates] == [c.key() for c in s.candidates]
    assert set(back.resume_map()) <= {0, 1, 2}


def test_unreduced_coefficient_position():
    msg, line, col = where(TRIPLE.replace("pole = (2)", "pole = (5)"))
    assert msg == "coefficient not reduced"
    assert (line, col) == (9, 9)


def test_zero_residue_position():
    msg, line, col = where(TRIPLE.replace("(1), residue = 1", "(1), residue = 0"))
    assert msg == "residue must be nonzero mod p"
    assert (line, col) == (8, 23)


def test_unreduced_residue():
    assert where(TRIPLE.replace("(1), residue = 1", "(1), residue = 4"))[0] == "residue not reduced mod p"


@pytest.mark.parametrize("text,message,line", [
    (TRIPLE + "[datum]\n", "duplicate section [datum]", 10),
    (TRIPLE.replace("k = 1\n", ""), "missing field 'k' in [field]", 1),
    (TRIPLE.replace("p = 3", "p = 3\np = 3"), "duplicate field 'p' in [field]", 3),
    (TRIPLE.replace("k = 1", "k = 1\ndegree = 1"), "unknown field 'degree' in [field]", 4),
    ("p = 3\n" + TRIPLE, "content before the first section", 1),
    (TRIPLE.replace("[datum]", "[data]"), "unknown section [data]", 6),
    (TRIPLE.replace("[datum]", "[datum"), "malformed section header", 6),
    (TRIPLE.replace("p = 3", "p = 4"), "p = 4 is not prime", 2),
])
def test_structural_errors(text, message, line):
    msg, ln, col = where(text)
    assert msg == message and ln == line and col >= 1


def test_modulus_checks():
    f9 = TRIPLE.replace("k = 1", "k = 2").replace("(0, 1)", "(2, 0, 1)")
    f9 = f9.replace("pole = (0)", "pole = (0, 0)").replace("pole = (1)", "pole = (1, 0)")
    f9 = f9.replace("pole = (2)", "pole = (2, 0)")
    assert "modulus is not irreducible" == where(f9)[0]
    assert "modulus must be monic" == where(f9.replace("(2, 0, 1)", "(1, 0, 2)"))[0]
    good = f9.replace("(2, 0, 1)", "(1, 0, 1)")
    assert parse_datum(good).spec.k == 2
    msg, line, _ = where(good.replace("pole = (2, 0)", "pole = (2)"))
    assert msg.startswith("pole needs 2 coefficients") and line == 9


def test_parse_error_text_carries_position():
    with pytest.raises(ParseError, match=r"^line 9, column 9: coefficient not reduced$"):
        parse_datum(TRIPLE.replace("pole = (2)", "pole = (5)"))


def test_missing_section_and_empty_datum():
    assert where(TRIPLE.split("[datum]")[0])[0] == "missing section [datum]"
    assert where(TRIPLE.split("pole")[0])[0] == "[datum] lists no poles"


def test_bad_checkpoint():
    text = "[checkpoint]\nlambda = 2\nkmax = 3\nshards = 1\ntypes = maybe\n"
    msg, line, col = where(text, parse_checkpoint)
    assert msg == "types must be 'on' or 'off'" and (line, col) == (5, 9)
    text = "[checkpoint]\nlambda = 2\nkmax = 3\nshards = 1\ntypes = on\n\n[shard 0]\ncomplete = no\ncursor = 3 x\n"
    assert where(text, parse_checkpoint)[0].startswith("cursor must read")
