from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from katokit.errors import MalformedCycle, NotIntermediate, SequenceSyntaxError, ZeroLength
from katokit.sequence import (
    DlousskySequence,
    SimpleComponent,
    canonical_form,
    decompose_entries,
    enumerate_sequences,
    enumerate_up_to,
    expand,
    is_canonical,
    parse_any,
    parse_text,
    rotate,
    stats,
)


def test_parse_examples():
    assert parse_text("[s2 r2]") == DlousskySequence.of(((2,), 2))
    assert parse_text("[s1 s2 r1]") == DlousskySequence.of(((1, 2), 1))
    two = parse_text("[s1 r1 | s1 r1]")
    assert two.N == 2 and all(c == SimpleComponent((1,), 1) for c in two.components)


def test_parse_whitespace_optional():
    assert parse_text("[s1s2r1]") == parse_text("[ s1  s2 r1 ]")
    assert parse_text("[s1r1|s1r1]") == parse_text("[s1 r1 | s1 r1]")


def test_parse_rejects_other_surface_classes():
    with pytest.raises(NotIntermediate) as exc:
        parse_text("[r2]")
    assert exc.value.hint == "Enoki-type"
    with pytest.raises(NotIntermediate) as exc:
        parse_text("[s2]")
    assert exc.value.hint == "Inoue-Hirzebruch-type"


@pytest.mark.parametrize("text", ["[s0 r1]", "[s1 r0]"])
def test_parse_zero_length(text):
    with pytest.raises(ZeroLength):
        parse_text(text)


@pytest.mark.parametrize("text", ["s1 r1", "[s1 r1", "[x1 r1]", "[s1 r1 s1]", "[s1 r1 r2]", "[s1 r1 | ]", "[]", "[s r1]"])
def test_parse_syntax_errors(text):
    with pytest.raises(SequenceSyntaxError):
        parse_text(text)


def test_decompose_examples():
    assert decompose_entries((4, 2, 2, 2)) == parse_text("[s2 r2]")
    assert decompose_entries((3, 2)) == parse_text("[s1 r1]")
    assert decompose_entries((3, 3, 2)) == parse_text("[s1 s1 r1]")
    with pytest.raises(NotIntermediate) as exc:
        decompose_entries((2, 2))
    assert exc.value.hint == "Enoki-type"
    with pytest.raises(NotIntermediate) as exc:
        decompose_entries((3, 3))
    assert exc.value.hint == "Inoue-Hirzebruch-type"


def test_decompose_rotates_to_component_boundary():
    # (2, 4, 2, 2) is (4, 2, 2, 2) read from its last two
    assert decompose_entries((2, 4, 2, 2)) == parse_text("[s2 r2]")
    # the claimed two of s2 wraps around the end of the list
    assert decompose_entries((2, 2, 4)) == parse_text("[s2 r1]")


def test_decompose_malformed():
    with pytest.raises(MalformedCycle):
        decompose_entries((5, 2, 3, 2))
    with pytest.raises(MalformedCycle):
        decompose_entries((6, 2, 2))


def test_parse_any_accepts_entry_lists():
    assert parse_any("4,2,2,2") == parse_text("[s2 r2]")
    with pytest.raises(SequenceSyntaxError):
        parse_any("4,2,x")


def test_expand_examples():
    assert expand(parse_text("[s2 r2]")) == (4, 2, 2, 2)
    assert expand(parse_text("[s1 r1]")) == (3, 2)
    assert expand(parse_text("[s1 s2 r1]")) == (3, 4, 2, 2)


def test_stats_examples():
    st1 = stats(parse_text("[s2 r2]"))
    assert (st1.b2, st1.sigma, st1.alpha_per_component, st1.beta_per_component) == (4, 10, (2,), (0,))
    assert (st1.b2_branches, st1.b2_cycle, st1.m_total, st1.branch_count) == (2, 2, 2, 1)
    st2 = stats(parse_text("[s1 s2 r1]"))
    assert (st2.b2, st2.sigma, st2.b2_branches, st2.b2_cycle) == (4, 11, 1, 3)
    st3 = stats(parse_text("[s1 r1 | s1 r1]"))
    assert (st3.b2, st3.sigma, st3.m_total, st3.branch_count) == (4, 10, 2, 2)


def test_canonical_form_examples():
    a = parse_text("[s1 r2 | s2 r1]")
    b = parse_text("[s2 r1 | s1 r2]")
    assert canonical_form(a) == canonical_form(b)
    assert canonical_form(parse_text("[s2 r2]")) == parse_text("[s2 r2]")
    assert canonical_form(parse_text("[s1 r1 | s1 r1]")) == parse_text("[s1 r1 | s1 r1]")


def test_enumeration_small_cases():
    assert [str(s) for s in enumerate_sequences(2)] == ["[s1 r1]"]
    assert {str(s) for s in enumerate_sequences(3)} == {"[s2 r1]", "[s1 r2]", "[s1 s1 r1]"}
    four = enumerate_sequences(4)
    assert len(four) == 8
    assert [str(s) for s in four if s.N > 1] == ["[s1 r1 | s1 r1]"]


def test_enumeration_counts_are_stable():
    assert [len(enumerate_sequences(b)) for b in range(2, 11)] == [1, 3, 8, 18, 45, 102, 248, 587, 1420]


def _valid_strings(b: int):
    for entries in itertools.product(range(2, b + 2), repeat=b):
        try:
            decompose_entries(entries)
        except (NotIntermediate, MalformedCycle):
            continue
        yield entries


def _necklace(entries) -> tuple[int, ...]:
    return min(entries[i:] + entries[:i] for i in range(len(entries)))


@pytest.mark.parametrize("b", range(2, 7))
def test_enumeration_matches_brute_force_over_entry_strings(b):
    brute = {_necklace(e) for e in _valid_strings(b)}
    listed = [_necklace(expand(s)) for s in enumerate_sequences(b)]
    assert len(listed) == len(set(listed))  # no two outputs are rotations of each other
    assert set(listed) == brute


def test_enumerated_invariants():
    for s in enumerate_up_to(9):
        st = stats(s)
        assert 2 * st.b2 < st.sigma < 3 * st.b2
        assert st.b2 == st.b2_branches + st.b2_cycle
        assert is_canonical(s)
        assert decompose_entries(expand(s)) == canonical_form(s)
        for r in range(s.N):
            assert canonical_form(rotate(s, r)) == s


components = st.builds(
    SimpleComponent,
    st.lists(st.integers(1, 6), min_size=1, max_size=4).map(tuple),
    st.integers(1, 6),
)
sequences = st.lists(components, min_size=1, max_size=4).map(lambda cs: DlousskySequence(tuple(cs)))


@given(sequences, st.integers(0, 10))
def test_round_trip_and_rotation(seq, r):
    rotated = rotate(seq, r)
    assert parse_text(str(seq)) == seq
    assert decompose_entries(expand(seq)) == seq
    assert canonical_form(rotated) == canonical_form(seq)
    assert canonical_form(canonical_form(seq)) == canonical_form(seq)
    # any rotation of the raw entry list decomposes to a rotation of the components
    entries = expand(seq)
    k = r % len(entries)
    assert canonical_form(decompose_entries(entries[k:] + entries[:k])) == canonical_form(seq)
