import pytest
from hypothesis import given, settings, strategies as st

from oracles import heis_mul, heis_pow
from thicksets.groups import FGAbelian, HeisenbergElement as E, Integers
from thicksets.nilpower import (abelian_power_index, bfs_closure, cross_check, malcev_containment, malcev_root,
                                power_subgroup, self_divisibility_counterexample, steps_to_generate,
                                subgroup_from_generators, subgroup_membership)

coord = st.integers(-8, 8)
triples = st.tuples(coord, coord, coord)
ns = st.integers(1, 6)


@pytest.mark.parametrize("n,index", [(1, 1), (2, 4), (3, 27), (4, 32), (5, 125), (6, 108)])
def test_power_subgroup_index(n, index):
    assert power_subgroup(n).index == index


def test_membership_examples():
    H = power_subgroup(2)
    assert subgroup_membership(H, E(2, 0, 0))
    assert subgroup_membership(H, E(0, 0, 1))  # commutator of squares times squares
    assert subgroup_membership(H, E(2, 2, 1))
    assert not subgroup_membership(H, E(1, 1, 0))
    assert not subgroup_membership(H, E(1, 0, 0))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_structural_and_bfs_agree(n):
    cross_check(power_subgroup(n), n, radius=3)


@settings(max_examples=200)
@given(triples, ns)
def test_powers_are_members(g, n):
    assert E(*heis_pow(g, n)) in power_subgroup(n)


@settings(max_examples=200)
@given(triples, triples, ns)
def test_membership_closed_under_products(a, b, n):
    H = power_subgroup(n)
    ea, eb = E(*heis_pow(a, n)), E(*heis_pow(b, n))
    ai = heis_pow(heis_pow(a, n), -1)
    assert E(*heis_mul(heis_pow(a, n), heis_pow(b, n))) in H
    assert E(*heis_mul(ai, heis_pow(b, n))) in H
    assert ea in H and eb in H


@settings(max_examples=30)
@given(ns)
def test_index_sits_between_abelian_bounds(n):
    # G/[G,G] = Z^2, so n^2 divides the index, and [G,G] costs at most n more
    idx = power_subgroup(n).index
    assert idx % (n * n) == 0 and (n ** 3) % idx == 0


def test_generators_regenerate():
    H = power_subgroup(4)
    assert subgroup_from_generators(H.generators(), label=H.label) == H


def test_bfs_closure_small():
    reached = bfs_closure([E(2, 0, 0), E(0, 2, 0)], 4, 8)
    assert E(0, 0, 4) in reached and E(0, 0, 2) not in reached


def test_malcev_containment():
    for n in (2, 3):
        r = malcev_containment(n, radius=5)
        assert r.checked > 0 and r.exceptions == []


@settings(max_examples=100)
@given(triples, st.integers(2, 4))
def test_malcev_root_is_a_root(g, n):
    e = E(*heis_pow(g, n))
    r = malcev_root(e, n)
    assert r is not None and E(*heis_pow((r.x, r.y, r.z), n)) == e


def test_counterexample():
    c = self_divisibility_counterexample()
    assert c["element"] == E(4, 0, 0) and c["in_subgroup"]
    assert c["root"] == E(2, 0, 0) and not c["root_in_subgroup"]


def test_generation_profile():
    p = steps_to_generate(2, 3)
    assert p.layers == [1, 26, 32, 4] and p.N == 3 and not p.unresolved
    assert p.factors[E(2, 0, 0)] == 1 and p.factors[E(0, 0, 1)] == 3
    assert sum(r["count"] for r in p.histogram_rows()) == sum(p.layers)


def test_abelian_power_index():
    assert abelian_power_index(Integers(), 3) == 3
    assert abelian_power_index(FGAbelian(2), 3) == 9
    assert abelian_power_index(FGAbelian(1, [6]), 4) == 8
    assert abelian_power_index((0, [5, 10]), 5) == 25
    with pytest.raises(ValueError):
        abelian_power_index(Integers(), 0)
