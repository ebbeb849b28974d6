import pytest

from bocskit.ainf import build_tables, merkulov_lambda, stasheff_check
from bocskit.quiver import (example_a2, example_dual_numbers,
                            example_jordan3, example_semisimple_pair)
from bocskit.resolution import (ResolvedSystem, differential, hodge_data,
                                is_null_homotopic)
from bocskit.strata import standard_modules


def pdelta_tables(alg, r_max=5):
    rsys = ResolvedSystem(standard_modules(alg, mode="pdelta"))
    return build_tables(rsys, r_max=r_max), rsys


@pytest.fixture(scope="module")
def e1():
    return pdelta_tables(example_dual_numbers())


@pytest.fixture(scope="module")
def e3():
    return pdelta_tables(example_jordan3())


@pytest.fixture(scope="module")
def e0():
    return pdelta_tables(example_semisimple_pair(), r_max=4)


def test_lambda2_is_composition(e1):
    tab, rsys = e1
    (y,) = tab.basis(1, 1, 1)
    gy = tab.graded_map(y)
    val = merkulov_lambda(rsys, [gy, gy])
    assert val.equals(gy.compose(gy))


def test_m2_yoneda_square_dual_numbers(e1):
    tab, _ = e1
    (y,) = tab.basis(1, 1, 1)
    coeffs = tab.m((y, y))
    assert len(coeffs) == 1
    ((cls, c),) = coeffs.items()
    assert cls.k == 2 and c != 0


def test_m2_vanishes_m3_generates_jordan3(e3):
    tab, _ = e3
    (y,) = tab.basis(1, 1, 1)
    assert tab.m((y, y)) == {}
    coeffs = tab.m((y, y, y))
    assert len(coeffs) == 1
    ((cls, c),) = coeffs.items()
    assert cls.k == 2 and c != 0
    assert tab.m((y, y, y, y)) == {}
    assert tab.m((y,) * 5) == {}


def test_m2_agrees_with_yoneda_composition(e1, e3):
    for tab, rsys in (e1, e3):
        all_cls = tab.all_classes({0, 1, 2})
        for a in all_cls:
            for b in all_cls:
                if b.j != a.i:
                    continue
                q = a.k + b.k
                if q > 2:
                    continue
                comp = tab.graded_map(a).compose(tab.graded_map(b))
                hd = hodge_data(rsys, b.i, a.j, q)
                hcoeffs, _ = hd.decompose(comp)
                expected = {cls: c for cls, c
                            in zip(tab.basis(q, b.i, a.j), hcoeffs) if c != 0}
                assert tab.m((a, b)) == expected


def test_lambda_values_are_cocycles(e1, e3):
    for tab, rsys in (e1, e3):
        (y,) = tab.basis(1, 1, 1)
        gy = tab.graded_map(y)
        for r in (2, 3, 4):
            val = merkulov_lambda(rsys, [gy] * r)
            assert differential(val).is_zero()


def test_surjectivity_criterion_matches_homotopy(e1, e3):
    for tab, rsys in (e1, e3):
        (y,) = tab.basis(1, 1, 1)
        gy = tab.graded_map(y)
        R = rsys.resolution(1)
        for r in (2, 3, 4):
            val = merkulov_lambda(rsys, [gy] * r)
            if r == 2:
                glower = gy.scale(-1)
            else:
                lower = merkulov_lambda(rsys, [gy] * (r - 1))
                glower = hodge_data(rsys, 1, 1, lower.k).G(lower)
            h = gy.component(1).mat @ glower.component(2).mat
            surjective = h.rank() == R.P(0).total
            assert surjective == (not is_null_homotopic(val)[0])


def test_strict_unit_m2(e1, e3):
    for tab, _ in (e1, e3):
        for x in tab.all_classes({0, 1, 2}):
            e_left = tab.identity_class(x.j)
            e_right = tab.identity_class(x.i)
            assert tab.m((e_left, x)) == {x: 1}
            assert tab.m((x, e_right)) == {x: 1}


def test_strict_unit_higher_products(e1, e3):
    for tab, _ in (e1, e3):
        for key, coeffs in tab.m_table.items():
            if len(key) < 3:
                continue
            if any(c == tab.identity_class(c.i) for c in key if c.k == 0):
                assert coeffs == {}


def test_semisimple_tables_empty_beyond_identities(e0):
    tab, _ = e0
    for key, coeffs in tab.m_table.items():
        if any(c.k > 0 for c in key):
            assert coeffs == {}
        ident = all(c == tab.identity_class(c.i) for c in key)
        if len(key) == 2 and ident and key[0].i == key[1].i:
            assert coeffs == {key[0]: 1}


def test_stasheff_identities(e1, e3, e0):
    for tab, _ in (e1, e3):
        for k in (1, 2, 3, 4):
            assert stasheff_check(tab, k)
    tab0, _ = e0
    assert stasheff_check(tab0, 2)


def test_bprime_truncation(e1):
    tab, _ = e1
    (y,) = tab.basis(1, 1, 1)
    (z,) = tab.basis(2, 1, 1)
    assert tab.suspension_exponent((z, y)) >= 0
    assert sum(c.k - 1 for c in (z, y)) == 1
    assert tab.bprime((z, y)) == {}
    assert tab.bprime((y, z)) == {}
    assert tab.bprime((y, y)) != {}
    assert tab.bprime((y, y)) == tab.b((y, y))


def test_suspension_sign(e3):
    tab, _ = e3
    (y,) = tab.basis(1, 1, 1)
    exp = tab.suspension_exponent((y, y, y))
    assert exp == 2 * 1 + 1 * 1
    mval = tab.m((y, y, y))
    bval = tab.b((y, y, y))
    assert bval == {cls: -c for cls, c in mval.items()}
    assert tab.b((y, y)) == tab.m((y, y))


def test_r_max_exceeded_raises(e1):
    tab, _ = e1
    (y,) = tab.basis(1, 1, 1)
    with pytest.raises(ValueError, match="r_max too small"):
        tab.m((y,) * (tab.r_max + 1))


def test_a2_delta_mode_products():
    rsys = ResolvedSystem(standard_modules(example_a2(), mode="delta"))
    tab = build_tables(rsys, r_max=3)
    (x,) = tab.basis(1, 1, 2)
    e1c = tab.identity_class(1)
    e2c = tab.identity_class(2)
    assert tab.m((e2c, x)) == {x: 1}
    assert tab.m((x, e1c)) == {x: 1}
    assert tab.m((x, x)) == {}
    assert stasheff_check(tab, 2)
    assert stasheff_check(tab, 3)
