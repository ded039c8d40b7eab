import random

import pytest
from hypothesis import given, settings, strategies as st

from ainf.cochains import (
    ArityOutOfRange,
    Cochain,
    CounitalCochain,
    CurvatureMap,
    Functional,
    NonzeroDegree,
    TruncationMismatch,
    TypeMismatch,
    ad_apply,
    all_words,
    bracket_at,
    compose_at,
    gerst_bracket,
    gerst_product,
    phi_inv_apply,
    phi_inv_apply_vec,
    psi_inv_apply,
    psi_inv_apply_vec,
    square_functional,
    star,
    word_degree,
)
from ainf.core import DegreeMismatch, GradedModule, IntegersMod, ZZ
from ainf.core.sparse import add_term
from ainf.generators import random_cochain, random_functional

A = GradedModule({0: ["a"], 1: ["b"]})
R5 = IntegersMod(5)


def _sign(e):
    return -1 if e % 2 else 1


def _lin(*terms):
    """Sum of ``(coeff, dict)`` pairs, zeros dropped."""
    out = {}
    for c, d in terms:
        for k, v in d.items():
            add_term(out, k, c * v)
    return out


def _triple(rng, N=3, module=A, ring=ZZ):
    return [random_cochain(rng, module, module, rng.choice([-1, 0, 1]), N, ring, 0.4)
            for _ in range(3)]


def _coproduct(vec):
    """Full deconcatenation on a combination of words."""
    out = {}
    for w, c in vec.items():
        for i in range(len(w) + 1):
            add_term(out, (w[:i], w[i:]), c)
    return out


# -- construction ----------------------------------------------------------


def test_degree_of_entries_is_checked():
    # a degree -1 cochain sends [a] (degree 1) to degree 0, i.e. nowhere in A
    with pytest.raises(DegreeMismatch):
        Cochain(A, A, -1, 2, {1: {("a",): {"a": 1}}})
    c = Cochain(A, A, -1, 2, {2: {("a", "a"): {"a": 1}}})
    assert c(("a", "a")) == {"a": 1}


def test_components_beyond_truncation_are_rejected():
    with pytest.raises(ArityOutOfRange):
        Cochain(A, A, 0, 1, {2: {("a", "a"): {"a": 1}}})
    with pytest.raises(ArityOutOfRange):
        Cochain(A, A, 0, 0)


def test_evaluation_above_truncation_is_zero():
    c = Cochain.identity(A, 2)
    assert c(("a", "a", "a")) == {}


def test_zero_coefficients_are_dropped():
    c = Cochain(A, A, 0, 2, {1: {("a",): {"a": 0}}})
    assert c.is_zero


def test_linear_structure_requires_matching_types():
    x = Cochain.identity(A, 2)
    with pytest.raises(TruncationMismatch):
        x + Cochain.identity(A, 3)
    with pytest.raises(TypeMismatch):
        x + Cochain.zero(A, A, -1, 2)


def test_truncate_widen_restrict():
    rng = random.Random(0)
    c = random_cochain(rng, A, A, 0, 4, ZZ, 0.5)
    assert c.truncate(2).widen(4) == Cochain(A, A, 0, 4, {k: v for k, v in c.components.items()
                                                          if k <= 2})
    with pytest.raises(TruncationMismatch):
        c.widen(2)
    r = c.restrict(["a"])
    assert all(set(w) <= {"a"} for _, w, _ in r.items())


def test_counital_cochain_arity_zero():
    base = Cochain.zero(A, A, 1, 2)
    c = CounitalCochain(base, {"a": 1})
    assert c(()) == {"a": 1}
    with pytest.raises(DegreeMismatch):
        CounitalCochain(base, {"b": 1})


def test_functional_degree_is_checked():
    with pytest.raises(DegreeMismatch):
        Functional(A, -1, 2, {1: {("b",): 1}})
    xi = CurvatureMap(A, 2, {1: {("b",): 3}})
    assert xi(("b",)) == 3 and xi.degree == -2
    h = xi.to_h(A, "a")
    assert h(("b",)) == {"a": -3}
    assert CurvatureMap.from_h(h, "a") == xi


# -- Phi^{-1} ---------------------------------------------------------------


def test_phi_inverse_by_hand():
    # f of degree 0 with f[a] = [a]; on [b|a] the slot after b picks up
    # (-1)^{|f| |[b]|} = 1
    f = Cochain(A, A, 0, 2, {1: {("a",): {"a": 2}}})
    assert phi_inv_apply(f, ("b", "a")) == {("b", "a"): 2}
    # a degree 1 cochain [a] -> [b] is odd: moving it past [a] costs a
    # sign, moving it past [b] (of even degree 2) does not
    g = Cochain(A, A, 1, 2, {1: {("a",): {"b": 1}}})
    assert phi_inv_apply(g, ("b", "a")) == {("b", "b"): 1}
    assert phi_inv_apply(g, ("a", "a")) == {("b", "a"): 1, ("a", "b"): -1}


def test_phi_inverse_rejects_long_words():
    f = Cochain.identity(A, 2)
    with pytest.raises(ArityOutOfRange):
        phi_inv_apply(f, ("a", "a", "a"))


def test_gerstenhaber_product_by_hand():
    g = Cochain(A, A, -1, 2, {2: {("a", "a"): {"a": 1}}})
    f = Cochain(A, A, 0, 2, {1: {("a",): {"a": 3}}})
    # g o f on [a|a]: f in either slot, each giving 3 g[a|a]
    assert compose_at(g, f, ("a", "a")) == {"a": 6}
    assert gerst_product(g, f)(("a", "a")) == {"a": 6}


def test_bracket_of_odd_elements_has_plus_sign():
    rng = random.Random(1)
    for _ in range(10):
        x = random_cochain(rng, A, A, -1, 3, ZZ, 0.5)
        y = random_cochain(rng, A, A, -1, 3, ZZ, 0.5)
        for w in all_words(A.labels, 3):
            assert bracket_at(x, y, w) == _lin((1, compose_at(x, y, w)),
                                               (1, compose_at(y, x, w)))


@pytest.mark.parametrize("seed", range(20))
def test_pre_lie_identity(seed):
    rng = random.Random(seed)
    x, y, z = _triple(rng)
    letters = A.labels
    xy_z = gerst_product(gerst_product(x, y), z)
    x_yz = gerst_product(x, gerst_product(y, z))
    xz_y = gerst_product(gerst_product(x, z), y)
    x_zy = gerst_product(x, gerst_product(z, y))
    s = _sign(y.degree * z.degree)
    for w in all_words(letters, 3):
        left = _lin((1, xy_z(w)), (-1, x_yz(w)))
        right = _lin((s, xz_y(w)), (-s, x_zy(w)))
        assert left == right


@pytest.mark.parametrize("seed", range(20))
def test_antisymmetry_and_jacobi(seed):
    rng = random.Random(100 + seed)
    x, y, z = _triple(rng)
    dx, dy, dz = x.degree, y.degree, z.degree
    xy, yx = gerst_bracket(x, y), gerst_bracket(y, x)
    j1 = gerst_bracket(x, gerst_bracket(y, z))
    j2 = gerst_bracket(y, gerst_bracket(z, x))
    j3 = gerst_bracket(z, gerst_bracket(x, y))
    for w in all_words(A.labels, 3):
        assert _lin((1, xy(w)), (_sign(dx * dy), yx(w))) == {}
        assert _lin((_sign(dx * dz), j1(w)), (_sign(dy * dx), j2(w)),
                    (_sign(dz * dy), j3(w))) == {}


@pytest.mark.parametrize("seed", range(20))
def test_phi_inverse_is_a_lie_homomorphism(seed):
    rng = random.Random(200 + seed)
    f, g, _ = _triple(rng)
    br = gerst_bracket(f, g)
    s = _sign(f.degree * g.degree)
    for w in all_words(A.labels, 3):
        fg = phi_inv_apply_vec(f, phi_inv_apply(g, w))
        gf = phi_inv_apply_vec(g, phi_inv_apply(f, w))
        assert phi_inv_apply(br, w) == _lin((1, fg), (-s, gf))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_phi_inverse_is_a_coderivation(seed):
    rng = random.Random(seed)
    M = GradedModule({-1: ["z"], 0: ["a"], 1: ["b"]})
    f = random_cochain(rng, M, M, rng.choice([-1, 0, 1]), 3, ZZ, 0.3)
    for w in all_words(M.labels, 3):
        lhs = _coproduct(phi_inv_apply(f, w))
        rhs = {}
        for (u, v), c in _coproduct({w: 1}).items():
            if u:
                for u2, d in phi_inv_apply(f, u, check=False).items():
                    add_term(rhs, (u2, v), c * d)
            if v:
                s = _sign(f.degree * word_degree(M, u))
                for v2, d in phi_inv_apply(f, v, check=False).items():
                    add_term(rhs, (u, v2), s * c * d)
        assert lhs == rhs


# -- Psi^{-1} and star -------------------------------------------------------


def _degree_zero(rng, N=3, identity_part=True):
    g = random_cochain(rng, A, A, 0, N, ZZ, 0.4, min_arity=2)
    return Cochain.identity(A, N) + g if identity_part else g + random_cochain(
        rng, A, A, 0, N, ZZ, 0.5, max_terms=2)


def test_psi_inverse_is_a_coalgebra_morphism():
    rng = random.Random(7)
    for _ in range(15):
        g = _degree_zero(rng, identity_part=rng.random() < 0.5)
        for w in all_words(A.labels, 3, 0):
            lhs = _coproduct(psi_inv_apply(g, w))
            rhs = {}
            for (u, v), c in _coproduct({w: 1}).items():
                for u2, d in psi_inv_apply(g, u).items():
                    for v2, e in psi_inv_apply(g, v).items():
                        add_term(rhs, (u2, v2), c * d * e)
            assert lhs == rhs


def test_psi_inverse_output_arity():
    g = Cochain.identity(A, 3).scale(2)
    assert psi_inv_apply(g, ("a", "b"), k=2) == {("a", "b"): 4}
    assert psi_inv_apply(g, ("a", "b"), k=1) == {}
    with pytest.raises(NonzeroDegree):
        psi_inv_apply(Cochain.zero(A, A, 1, 3), ("a",))


def test_star_is_composition_of_coalgebra_maps():
    rng = random.Random(8)
    for _ in range(15):
        g, h = _degree_zero(rng), _degree_zero(rng)
        hg = star(h, g)
        for w in all_words(A.labels, 3):
            assert psi_inv_apply(hg, w) == psi_inv_apply_vec(h, psi_inv_apply(g, w))


def test_star_with_identity_and_associativity():
    rng = random.Random(9)
    one = Cochain.identity(A, 3)
    for _ in range(10):
        f, g, h = (_degree_zero(rng) for _ in range(3))
        assert star(f, one) == f and star(one, f) == f
        assert star(star(h, g), f) == star(h, star(g, f))


def test_star_needs_degree_zero():
    with pytest.raises(NonzeroDegree):
        star(Cochain.identity(A, 2), Cochain.zero(A, A, -1, 2))


# -- ad of a functional ------------------------------------------------------


def test_ad_by_hand():
    xi = Functional(A, -2, 3, {1: {("b",): 5}})
    # |xi| even: ad xi [b|a] = xi[b] [a] - xi[a] [b] = 5 [a]
    assert ad_apply(xi, ("b", "a")) == {("a",): 5}
    assert ad_apply(xi, ("a", "b")) == {("a",): -5}
    assert ad_apply(xi, ("b",)) == {}


def test_ad_of_an_odd_functional_picks_up_koszul_signs():
    xi = Functional(A, -1, 3, {1: {("a",): 1}})
    # xi (x) 1 gives [a][...]; 1 (x) xi moves xi past the prefix
    assert ad_apply(xi, ("a", "a")) == {("a",): 1 - _sign(1)}
    assert ad_apply(xi, ("b", "a")) == {("b",): -_sign(-1 * 2)}


def test_ad_is_a_coderivation():
    rng = random.Random(10)
    M = GradedModule({0: ["a"], 1: ["b"]})
    for _ in range(10):
        xi = random_functional(rng, M, rng.choice([-3, -2, -1]), 4, ZZ, 0.6)
        for w in all_words(M.labels, 4):
            lhs = _coproduct(ad_apply(xi, w))
            rhs = {}
            for (u, v), c in _coproduct({w: 1}).items():
                for u2, d in ad_apply(xi, u).items():
                    add_term(rhs, (u2, v), c * d)
                s = _sign(xi.degree * word_degree(M, u))
                for v2, d in ad_apply(xi, v).items():
                    add_term(rhs, (u, v2), s * c * d)
            # compare on the reduced coproduct only
            assert {k: x for k, x in lhs.items() if k[0] and k[1]} == \
                {k: x for k, x in rhs.items() if k[0] and k[1]}


def test_square_functional():
    xi = Functional(A, -2, 3, {1: {("b",): 2}})
    assert square_functional(xi, ("b", "b")) == 4
    assert square_functional(xi, ("b",)) == 0


def test_operations_over_a_finite_field():
    rng = random.Random(11)
    x = random_cochain(rng, A, A, -1, 3, R5, 0.5)
    y = random_cochain(rng, A, A, 0, 3, R5, 0.5)
    br = gerst_bracket(x, y)
    assert br.ring is R5
    for w in all_words(A.labels, 3):
        assert br(w) == _lin((1, compose_at(x, y, w)), (-1, compose_at(y, x, w)))
