import pytest
from hypothesis import given
from hypothesis import strategies as st

from sologic.sexpr import Quoted, SexprError, dumps, head, read, read_all

symbols = st.from_regex(r"[a-z0-9^_\-]{1,6}", fullmatch=True)
strings = st.text(st.characters(codec="utf-8", exclude_categories=("Cs",)), max_size=8).map(Quoted)
forms = st.recursive(symbols | strings, lambda inner: st.lists(inner, max_size=4), max_leaves=20)


def test_nested():
    assert read("(a (b c) ())") == ["a", ["b", "c"], []]


def test_quoted():
    x = read('("a b" c)')
    assert isinstance(x[0], Quoted) and x[0] == "a b"
    assert not isinstance(x[1], Quoted)


def test_escapes():
    assert read(r'"say \"hi\" \\"') == 'say "hi" \\'


def test_comments():
    assert read_all("; header\n(a) ; tail\n(b)") == [["a"], ["b"]]


@pytest.mark.parametrize("text,pos", [("(a", 0), ("a)", 1), ('"abc', 0)])
def test_errors_carry_offsets(text, pos):
    with pytest.raises(SexprError) as e:
        read(text)
    assert e.value.pos == pos


def test_one_form():
    with pytest.raises(SexprError):
        read("(a) (b)")


def test_head():
    assert head(["range", 1]) == "range"
    assert head([]) is None and head("x") is None


@given(forms)
def test_round_trip(x):
    y = read(dumps(x))
    assert y == x
    assert dumps(y) == dumps(x)
