import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from halfcyl.lie import (
    L, So12Element, WittElement, algebra_isomorphism, killing_form,
    so12_bracket, vector_field_to_so12, witt_bracket, witt_closure,
    witt_C, witt_S, witt_T,
)


# ---------------------------------------------------------------------------
# witt_bracket
# ---------------------------------------------------------------------------

def test_bracket_sl2_pair():
    assert witt_bracket(L(1), L(-1)) == WittElement({0: -2})


@pytest.mark.parametrize("m", [-5, -1, 0, 1, 2, 7])
def test_bracket_with_l0_scales(m):
    assert witt_bracket(L(0), L(m)) == WittElement({m: m})


exact_elements = st.dictionaries(
    st.integers(-6, 6),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    max_size=4,
).map(WittElement)


@given(exact_elements)
def test_bracket_antisymmetric(a):
    assert witt_bracket(a, a).is_zero


@settings(max_examples=60)
@given(exact_elements, exact_elements, exact_elements)
def test_bracket_jacobi_exact(a, b, c):
    total = (witt_bracket(a, witt_bracket(b, c))
             + witt_bracket(b, witt_bracket(c, a))
             + witt_bracket(c, witt_bracket(a, b)))
    assert total.is_zero


def test_bracket_jacobi_float_inputs():
    rng = np.random.default_rng(7)
    for _ in range(200):
        elems = []
        for _ in range(3):
            modes = rng.integers(-5, 6, size=3)
            vals = rng.normal(size=3) + 1j * rng.normal(size=3)
            elems.append(WittElement({int(m): v for m, v in zip(modes, vals)}))
        a, b, c = elems
        total = (witt_bracket(a, witt_bracket(b, c))
                 + witt_bracket(b, witt_bracket(c, a))
                 + witt_bracket(c, witt_bracket(a, b)))
        worst = max((abs(v) for v in total.coeffs.values()), default=0.0)
        assert worst < 1e-12


def test_bracket_bilinear():
    a, b = L(2), L(-3)
    lhs = witt_bracket(3 * a + WittElement({1: Fraction(1, 2)}), b)
    rhs = 3 * witt_bracket(a, b) + Fraction(1, 2) * witt_bracket(L(1), b)
    assert lhs == rhs


def test_exactness_demotion():
    assert WittElement({0: Fraction(1, 3)}).is_exact
    assert not WittElement({0: 0.5}).is_exact
    assert not (WittElement({0: 1}) + WittElement({0: 0.5})).is_exact


# ---------------------------------------------------------------------------
# witt_closure
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("l", range(1, 9))
def test_sl2_towers_close(l):
    res = witt_closure([L(-l), L(0), L(l)])
    assert res.closed and res.dimension == 3


@pytest.mark.parametrize("l", range(1, 9))
def test_sl2_structure_constants_after_basis_change(l):
    # h = 2 L_0 / l, e = L_l, f = -L_{-l} / l^2 satisfy the standard relations
    h = Fraction(2, l) * L(0)
    e = L(l)
    f = Fraction(-1, l * l) * L(-l)
    assert witt_bracket(h, e) == 2 * e
    assert witt_bracket(h, f) == -2 * f
    assert witt_bracket(e, f) == h


def test_two_dim_span_closes():
    res = witt_closure([L(0), L(2)])
    assert res.closed and res.dimension == 2


def test_divergent_pair_witness():
    res = witt_closure([L(1), L(2)])
    assert not res.closed
    assert res.witness_mode == 3


def test_closure_order_independent():
    gens = [L(-3), L(0), L(3)]
    results = [witt_closure(perm) for perm in
               (gens, gens[::-1], [gens[1], gens[2], gens[0]])]
    assert all(r.closed and r.dimension == 3 for r in results)


def test_closure_handles_combined_generators():
    # the closure of {L_0, L_1 + L_2} leaves any finite span
    res = witt_closure([L(0), L(1) + L(2)])
    assert not res.closed


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 10), min_size=3, max_size=3, unique=True),
       st.booleans())
def test_four_dim_spans_diverge(ms, flip):
    # any 4-dim span containing L_0 and two modes of distinct |mode| diverges
    a, b, c = ms
    if flip:
        a = -a
    if abs(a) == b:
        b += 1
    res = witt_closure([L(0), L(a), L(b), L(c + 10)], dim_bound=12)
    assert not res.closed
    assert res.witness_mode is not None


def test_closure_float_path():
    res = witt_closure([WittElement({-1: 1.0}), WittElement({0: 0.5}), WittElement({1: 2.0})])
    assert res.closed and res.dimension == 3
    res = witt_closure([WittElement({1: 1.0}), WittElement({2: 0.3})])
    assert not res.closed and res.witness_mode == 3


def test_closure_preconditions():
    with pytest.raises(ValueError):
        witt_closure([])
    with pytest.raises(ValueError):
        witt_closure([L(9)], mode_bound=5)
    with pytest.raises(ValueError):
        witt_closure([L(0), L(1), L(2)], dim_bound=2)


def test_closure_bound_exceeded_is_verdict_not_exception():
    res = witt_closure([L(5), L(7)], mode_bound=20)
    assert not res.closed and res.witness_mode == 12


# ---------------------------------------------------------------------------
# so(1,2)
# ---------------------------------------------------------------------------

T0 = So12Element(1, 0, 0)
T1 = So12Element(0, 1, 0)
T2 = So12Element(0, 0, 1)


@pytest.mark.parametrize("a,b,want", [
    (T0, T1, T2),
    (T0, T2, -1 * T1),
    (T1, T2, -1 * T0),
])
def test_so12_structure_constants(a, b, want):
    assert so12_bracket(a, b) == want


def test_so12_antisymmetry_and_jacobi():
    rng = np.random.default_rng(3)
    for _ in range(200):
        a, b, c = (So12Element(*rng.normal(size=3)) for _ in range(3))
        anti = so12_bracket(a, b) + so12_bracket(b, a)
        assert np.abs(anti.as_array()).max() < 1e-12
        jac = (so12_bracket(a, so12_bracket(b, c))
               + so12_bracket(b, so12_bracket(c, a))
               + so12_bracket(c, so12_bracket(a, b)))
        assert np.abs(jac.as_array()).max() < 1e-12


@pytest.mark.parametrize("target", ["sl2r", "su11"])
def test_isomorphism_is_bracket_homomorphism(target):
    rng = np.random.default_rng(11)
    for _ in range(200):
        a, b = (So12Element(*rng.normal(size=3)) for _ in range(2))
        lhs = algebra_isomorphism(target, so12_bracket(a, b))
        ma, mb = (algebra_isomorphism(target, x) for x in (a, b))
        assert np.abs(lhs - (ma @ mb - mb @ ma)).max() < 1e-12


def test_isomorphism_pinned_images():
    su_t0 = algebra_isomorphism("su11", T0)
    assert np.allclose(su_t0, -0.5j * np.diag([1.0, -1.0]))
    sl_t2 = algebra_isomorphism("sl2r", T2)
    assert np.allclose(sl_t2, 0.5 * np.diag([1.0, -1.0]))
    zero = algebra_isomorphism("su11", So12Element(0, 0, 0))
    assert np.abs(zero).max() == 0


def test_isomorphism_rejects_unknown_target():
    with pytest.raises(ValueError):
        algebra_isomorphism("so3", T0)


def test_killing_form_signature():
    basis = (T0, T1, T2)
    kform = np.array([[killing_form(a, b) for b in basis] for a in basis])
    assert np.abs(kform - 2 * np.diag([-1.0, 1.0, 1.0])).max() < 1e-12
    # matches the trace form of the 2x2 images
    for target in ("sl2r", "su11"):
        mats = [algebra_isomorphism(target, x) for x in basis]
        img = np.array([[4 * np.trace(a @ b) for b in mats] for a in mats]).real
        assert np.abs(img - kform).max() < 1e-12


# ---------------------------------------------------------------------------
# vector-field dictionary
# ---------------------------------------------------------------------------

def test_dictionary_basis_images():
    assert vector_field_to_so12(1, witt_T()) == T0
    assert vector_field_to_so12(2, Fraction(1, 2) * witt_S(2)) == T1
    assert vector_field_to_so12(3, Fraction(1, 3) * witt_C(3)) == T2


def test_dictionary_rejects_wrong_mode():
    with pytest.raises(ValueError, match="mode 2 not in l=1 span"):
        vector_field_to_so12(1, witt_S(2))


def test_dictionary_rejects_non_real():
    with pytest.raises(ValueError, match="not real"):
        vector_field_to_so12(1, L(1))


def test_dictionary_is_bracket_homomorphism():
    # the vector-field bracket on the span maps to the so(1,2) bracket
    rng = np.random.default_rng(5)
    for l in (1, 2, 3):
        basis = (witt_T(), witt_S(l), witt_C(l))
        for _ in range(30):
            ca, cb = rng.integers(-3, 4, size=3), rng.integers(-3, 4, size=3)
            v = sum((int(c) * e for c, e in zip(ca, basis)), WittElement({}))
            w = sum((int(c) * e for c, e in zip(cb, basis)), WittElement({}))
            lhs = vector_field_to_so12(l, witt_bracket(v, w))
            rhs = so12_bracket(vector_field_to_so12(l, v),
                               vector_field_to_so12(l, w))
            assert np.abs((lhs - rhs).as_array()).max() < 1e-12
