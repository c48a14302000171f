import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_struct_set
from thicksets.presburger import (ParseError, PresburgerSet, compile_member, covers, decide_generic, decide_thick,
                                  eventual_data, is_symmetric, lattice_in_double, multidim_lattice, normalize,
                                  parse, scale_set, sumset, symmetrize)
from thicksets.thickset import PreconditionError

seeds = st.integers(0, 10**6)


def struct(seed):
    return random_struct_set(random.Random(seed))


def same(P, Q, radius=400):
    a, b = compile_member(P), compile_member(Q)
    return all(a(x) == b(x) for x in range(-radius, radius + 1))


def upper_m(g):
    return g.m if g.m is not None else g.m_range[1]


def test_parse_examples():
    P = parse("2Z")
    assert len(P.terms) == 1 and (P.terms[0].a, P.terms[0].b) == (0, 2)
    Q = parse("3+5Z & (10, inf) | -(3+5Z) & (-inf, -10)")
    assert len(Q.terms) == 2 and is_symmetric(Q)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse("Z + 3Z")
    assert e.value.pos == 2
    with pytest.raises(ParseError):
        parse("0Z")
    with pytest.raises(ParseError):
        parse("2Z & [5, 3]")


def test_interval_brackets():
    m = compile_member("Z & [2, 5)")
    assert [x for x in range(-3, 9) if m(x)] == [2, 3, 4]
    m = compile_member("Z & (2, 5]")
    assert [x for x in range(-3, 9) if m(x)] == [3, 4, 5]


def test_empty_set():
    assert parse("{}").terms == ()
    assert not decide_thick("{}").thick
    assert not decide_generic("{}").generic


def test_normalize_examples():
    assert str(normalize("1+2Z | 0+2Z")) == "Z"
    assert str(normalize("2Z & (0, inf) | 2Z & (-inf, 0] ")) == "2Z"


def test_eventual_data_example():
    d = eventual_data("3Z | 1+3Z & (5, inf)")
    assert d.L == 3 and d.Rplus == {0, 1} and d.Rminus == {0}


def test_worked_thickness_examples():
    v = decide_thick("2Z")
    assert v.thick and v.n == 3 and len(v.witness) == 2
    odd = decide_thick("1+2Z | -1+2Z")
    assert not odd.thick and odd.spacing % 2 == 0
    dense = decide_thick("1+7Z|2+7Z|3+7Z|4+7Z|5+7Z|6+7Z")
    assert not dense.thick and dense.data.Rplus == frozenset(range(1, 7)) and dense.spacing % 7 == 0


def test_generic_examples():
    g = decide_generic("2Z")
    assert g.generic and g.m == 2 and covers("2Z", g.shifts)
    g = decide_generic("2Z & (0, inf)")
    assert g.generic and covers(symmetrize("2Z & (0, inf)"), g.shifts)
    g = decide_generic("1+2Z | -1+2Z")
    assert g.generic and g.m == 2


def test_lattice_examples():
    assert lattice_in_double("2Z").b == 2
    r = lattice_in_double("3Z & (5, inf) | -3Z & (-inf, -5) | 0")
    assert r.b == 3 and r.verified
    assert lattice_in_double("6Z | 1+6Z | -1+6Z").b == 6
    with pytest.raises(PreconditionError):
        lattice_in_double("1+2Z")


def test_multidim_examples():
    assert multidim_lattice(["2Z", "2Z"]).n == 2
    r = multidim_lattice(["2Z", "3Z & (5,inf) | -3Z & (-inf,-5) | 0"])
    assert r.n == 6 and r.verified and r.exponent == 4
    with pytest.raises(PreconditionError, match="axis 2"):
        multidim_lattice(["2Z", "1+2Z | -1+2Z"])


def test_scale_examples():
    assert str(scale_set("2Z", 3)) == "6Z"
    assert same(scale_set("1+2Z & (0, inf)", 2), "2+4Z & (0, inf)")
    assert decide_thick(scale_set("2Z", 5)).thick


@settings(max_examples=150)
@given(seeds)
def test_parser_matches_structure(seed):
    s = struct(seed)
    m = compile_member(s.text)
    assert all(m(x) == s(x) for x in range(-150, 151))


@settings(max_examples=150)
@given(seeds)
def test_normalize_idempotent_and_roundtrip(seed):
    s = struct(seed)
    N = normalize(s.text)
    assert normalize(N) == N
    assert parse(str(N)) == N
    assert same(N, s.text)


@settings(max_examples=100)
@given(seeds)
def test_symmetrize_idempotent(seed):
    S = symmetrize(struct(seed).text)
    assert symmetrize(S) == S and is_symmetric(S)


@settings(max_examples=100)
@given(seeds)
def test_eventual_data_describes_tail(seed):
    s = struct(seed)
    d = eventual_data(s.text)
    for x in range(d.T + 1, d.T + 3 * d.L + 1):
        assert s(x) == (x % d.L in d.Rplus)
        assert s(-x) == (-x % d.L in d.Rminus)


@settings(max_examples=60)
@given(seeds, st.integers(1, 6))
def test_scaled_thick_set_stays_thick(seed, n):
    s = struct(seed)
    if decide_thick(s.text).thick:
        assert decide_thick(scale_set(s.text, n)).thick


@settings(max_examples=60)
@given(seeds)
def test_thick_implies_generic(seed):
    v = decide_thick(struct(seed).text)
    if v.thick and v.n is not None and v.n >= 2:
        g = decide_generic(struct(seed).text)
        # a cut-off search still proves its upper end
        assert g.generic and upper_m(g) <= v.n - 1


@settings(max_examples=40)
@given(seeds)
def test_generic_double_is_thick(seed):
    s = struct(seed)
    g = decide_generic(s.text)
    if g.generic and upper_m(g) is not None:
        v = decide_thick(sumset(symmetrize(s.text)))
        assert v.thick
        assert (v.n or v.n_range[0]) <= upper_m(g) + 1


@settings(max_examples=60)
@given(seeds)
def test_generic_shifts_cover(seed):
    s = struct(seed)
    g = decide_generic(s.text)
    if g.generic and g.shifts:
        assert covers(symmetrize(s.text), g.shifts)
        S = compile_member(symmetrize(s.text))
        assert all(any(S(x - c) for c in g.shifts) for x in range(-300, 301))


def test_thickness_is_symmetric_regardless_of_input():
    a = decide_thick("2Z & (0, inf) | 0")
    b = decide_thick("2Z")
    assert not a.was_symmetric and b.was_symmetric
    assert a.n == b.n == 3


def test_presburger_set_is_a_value():
    assert parse("2Z") == parse("2Z")
    assert isinstance(parse("2Z"), PresburgerSet)
