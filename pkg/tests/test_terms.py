from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from machlog.terms import (
    Ident,
    LengthBoundError,
    Lit,
    MachineConfig,
    ParseError,
    TermError,
    concat,
    dedupe,
    extract,
    intersect,
    is_sublist,
    parse_term,
    parse_term_list,
    render_term,
    substitute,
)


def idents(*names):
    return tuple(Ident(n) for n in names)


a, b, c, d, x, z = idents("a", "b", "c", "d", "x", "z")


# --- independent oracles -----------------------------------------------

def sublist_oracle(sub, full):
    """Enumerate every selection of distinct positions, any order."""
    if len(sub) > len(full):
        return False
    return any(tuple(full[i] for i in picks) == tuple(sub)
               for picks in permutations(range(len(full)), len(sub)))


def intersect_oracle(p, q):
    out = []
    for t in p:
        if t in q and t not in out:
            out.append(t)
    return tuple(out)


# --- concat -------------------------------------------------------------

def test_concat_basic():
    assert concat((a, b), (c,)) == (a, b, c)
    assert concat((), (x,)) == (x,)
    assert concat((a,), ()) == (a,)


def test_concat_length_bound():
    cfg = MachineConfig(max_list_len=2)
    with pytest.raises(LengthBoundError):
        concat((a, b), (c,), cfg)


# --- intersect ------------------------------------------------------------

def test_intersect_order_follows_first_operand():
    assert intersect((a, b, c), (c, a)) == (a, c)
    assert intersect((a, b), ()) == ()


def test_intersect_matches_scan_oracle():
    p, q = (a, b, c, d), (d, b, x)
    expected = intersect_oracle(p, q)
    assert expected == (b, d)
    assert intersect(p, q) == expected


# --- dedupe ----------------------------------------------------------------

def test_dedupe_keeps_first_occurrence():
    assert dedupe((a, b, a, c, b)) == (a, b, c)
    assert dedupe(()) == ()
    assert dedupe((x, x, x)) == (x,)


# --- substitute ----------------------------------------------------------

def test_substitute():
    assert substitute((a, b, c), 2, z) == (a, z, c)
    e, f = idents("e", "f")
    assert substitute((e, f), 1, Lit(0)) == (Lit(0), f)
    assert substitute((a,), 1, a) == (a,)


@pytest.mark.parametrize("index", [0, 4, -1])
def test_substitute_index_out_of_range(index):
    with pytest.raises(TermError):
        substitute((a, b, c), index, z)


# --- extract ----------------------------------------------------------------

def test_extract():
    assert extract((a, b, c, d), (b, d)) == (a, c)
    assert extract((a, b), ()) == (a, b)
    assert extract((a, b, c, d), (a, b, c, d)) == ()


def test_extract_requires_membership():
    with pytest.raises(TermError):
        extract((a, b), (x,))


# --- sublists ----------------------------------------------------------------

def test_is_sublist_permutation_and_empty():
    assert is_sublist((c, a), (a, b, c))
    assert is_sublist((), (a,))
    assert not is_sublist((a, a), (a, b))
    assert sublist_oracle((a, a), (a, b)) is False


small_term = st.sampled_from([a, b, c, Lit(0), Lit(1), Lit(-1)])
small_list = st.lists(small_term, max_size=6).map(tuple)


@settings(max_examples=200)
@given(small_list, small_list)
def test_is_sublist_agrees_with_bruteforce(p, q):
    assert is_sublist(p, q) == sublist_oracle(p, q)


@settings(max_examples=200)
@given(small_list, small_list, small_list)
def test_concat_associative_with_identity(p, q, r):
    assert concat(concat(p, q), r) == concat(p, concat(q, r))
    assert concat(p, ()) == p
    assert concat((), p) == p


@settings(max_examples=200)
@given(small_list, small_list)
def test_intersect_is_sublist_of_first_with_members_in_second(p, q):
    both = intersect(p, q)
    assert is_sublist(both, p)
    assert all(t in q for t in both)
    assert both == intersect_oracle(p, q)


@settings(max_examples=200)
@given(small_list)
def test_dedupe_idempotent(p):
    assert dedupe(dedupe(p)) == dedupe(p)


@settings(max_examples=200)
@given(small_list, small_list)
def test_extract_of_intersection_removes_all_common_terms(p, q):
    remaining = extract(p, intersect(p, q))
    assert not any(t in q for t in remaining)


# --- parsing / rendering ---------------------------------------------------

def test_parse_term_shapes():
    assert parse_term("abc") == Ident("abc")
    assert parse_term("-12") == Lit(-12)
    assert parse_term("[a, -1, [b,c]] ") == (a, Lit(-1), (b, c))


def test_parse_list_accepts_tilde_for_empty():
    assert parse_term_list("[~]") == ()
    assert parse_term_list("[]") == ()


def test_render_round_trip():
    t = (a, Lit(-1), (b, (c,)))
    assert parse_term(render_term(t)) == t
    assert render_term(t) == "[a,-1,[b,[c]]]"


@pytest.mark.parametrize("bad", ["", "1a2b3c4d", "[a,]", "[a b]", "-", "[a]extra"])
def test_parse_errors(bad):
    with pytest.raises(TermError):
        parse_term_list(bad) if bad.startswith("[") else parse_term(bad)


def test_identifier_length_bound():
    cfg = MachineConfig(max_string_len=3)
    with pytest.raises(LengthBoundError):
        parse_term("abcd", cfg)
    assert parse_term("abc", cfg) == Ident("abc")


def test_identifier_shape_enforced():
    with pytest.raises(TermError):
        Ident("1abc")
    with pytest.raises(TermError):
        Ident("")
