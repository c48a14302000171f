from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from oracles import bohr
from thicksets.groups import FGAbelian, Integers
from thicksets.rotation import (BohrSet, PreconditionError, TorsionSpec, bohr_member, bohr_sweep_rows,
                                build_dense_hom, check_hom_law, density_witness, max_subgroup_witnesses,
                                rational_images, surd_rotation, thickness_of_bohr, verify_bohr_identity,
                                verify_derived, verify_divide, verify_product)

h2 = surd_rotation(2)
X13 = BohrSet(h2, F(1, 3))
ts = st.sampled_from([F(1, 2), F(1, 3), F(1, 4), F(1, 6), F(2, 7), F(1, 10), F(5, 12)])


def test_membership_examples():
    assert bohr_member(X13, 0)
    assert bohr_member(X13, 2)  # 64 < 72 < 100 with m = 3
    assert not bohr_member(X13, 1)


@settings(max_examples=300)
@given(st.integers(-10**6, 10**6), ts, st.sampled_from([2, 3, 5, 7]))
def test_membership_matches_decimal_oracle(n, t, d):
    X = BohrSet(surd_rotation(d), t)
    assert bohr_member(X, n) == bohr(n, t, d)


@settings(max_examples=200)
@given(st.integers(-10**5, 10**5), ts)
def test_symmetry(n, t):
    X = BohrSet(h2, t)
    assert bohr_member(X, n) == bohr_member(X, -n)


def test_boundary_is_open():
    # g(1) = 1/4 sits exactly on the boundary
    h = rational_images(Integers(), [F(1, 4)])
    X = BohrSet(h, F(1, 4))
    assert not bohr_member(X, 1) and bohr_member(X, 4)


@settings(max_examples=100)
@given(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4))
def test_product_inclusion_exact(x, y):
    a, b = F(1, 6), F(1, 5)
    if bohr_member(BohrSet(h2, a), x) and bohr_member(BohrSet(h2, b), y):
        assert bohr_member(BohrSet(h2, a + b), x + y)


def test_product_identity():
    r = verify_product(h2, F(1, 6), F(1, 6), range(-2000, 2001), witness_bound=10**6)
    assert r.ok and r.checked > 0 and not r.inconclusive


def test_divide_example():
    assert bohr_member(X13, 2) and not bohr_member(X13, 4)
    assert not bohr_member(BohrSet(h2, F(1, 6)), 2)
    r = verify_divide(h2, F(1, 3), 2, range(-300, 301))
    assert r.ok


def test_derived_identity_case():
    assert verify_derived(h2, F(1, 3), F(1), range(-200, 201)).ok


def test_identity_preconditions():
    with pytest.raises(PreconditionError):
        verify_product(h2, F(1, 3), F(1, 4), range(-5, 6))
    with pytest.raises(PreconditionError):
        verify_divide(h2, F(1, 2), 2, range(-5, 6))
    with pytest.raises(PreconditionError):
        verify_derived(h2, F(1, 4), F(3), range(-5, 6))


def test_dispatcher():
    r = verify_bohr_identity("Divide", {"t": F(1, 4), "m": 3}, range(-100, 101))
    assert r.ok and r.kind == "divide"


def test_witness_table():
    w = max_subgroup_witnesses(X13, 100, 10**5)
    assert w.complete and w.entries[1] == 1 and w.verify(h2)
    for m, k in w.entries.items():
        assert not bohr(k * m, F(1, 3))


def test_witness_table_skips_kernel():
    h = rational_images(Integers(), [F(1, 5)])
    w = max_subgroup_witnesses(BohrSet(h, F(1, 3)), 12, 100)
    assert w.kernel == [5, 10] and 5 not in w.entries


def test_thickness_constants():
    r = thickness_of_bohr(F(1, 2))
    assert r.analytic == 3 and r.pigeonhole_ok
    assert thickness_of_bohr(F(1, 3)).analytic == 4
    assert thickness_of_bohr(F(1, 6)).analytic == 7
    r = thickness_of_bohr(F(1, 3), h2, window=300)
    assert r.empirical.n == r.irrational_exact == 3
    assert r.paper_constant == 2 and r.paper_constant_refuted


@settings(max_examples=30)
@given(ts)
def test_circle_configuration_is_spread(t):
    r = thickness_of_bohr(t)
    pts = r.circle_config
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            d = abs(a - b) % 1
            assert min(d, 1 - d) >= t


def test_dense_hom_torsion():
    g = build_dense_hom(TorsionSpec((2, 3, 13, 235)))
    e = lambda *c: tuple(c) + (0,) * (4 - len(c))
    assert g.value(e(0, 0, 1)) == F(1, 13)
    assert g.value(e(1, 1)) == F(-1, 6)  # 1/2 + 1/3 = 5/6 mod 1
    assert check_hom_law(g, 10**4) == []


def test_dense_hom_growth_rejected():
    with pytest.raises(PreconditionError, match="index 2"):
        build_dense_hom(TorsionSpec((2, 3, 4)))


def test_dense_hom_free_part():
    g = build_dense_hom(FGAbelian(1, [6]))
    assert check_hom_law(g, 2000) == []


def test_density_witnesses():
    g = build_dense_hom(TorsionSpec((2, 3, 13, 235)))
    w = density_witness(g, F(1, 10))
    assert w.found and w.value == F(1, 13)
    w = density_witness(h2, F(1, 10))
    assert w.element == 5
    w = density_witness(g, F(1, 1000))
    assert w.found and 0 < abs(w.value.approx()) < 1e-3


def test_sweep_rows():
    rows = list(bohr_sweep_rows(X13, range(-3, 4)))
    assert [r["member"] for r in rows] == [bohr(n, F(1, 3)) for n in range(-3, 4)]
