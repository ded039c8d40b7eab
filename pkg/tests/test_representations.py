import random

import pytest

from ainf.ainfinity import check_morphism, check_stasheff
from ainf.cochains import TypeMismatch
from ainf.core import DegreeMismatch, GradedModule, IntegersMod, ZZ
from ainf.generators import random_scalar, random_su_algebra, truncated_polynomial
from ainf.representations import (
    AdjointFamily,
    RepMorphismFamily,
    ShamashSystem,
    adjoint_convert,
    check_rep_morphism,
    check_representation,
    check_su_representation,
    identity_rep_morphism,
    pushforward_representation,
    regular_representation,
    shamash_convert,
    star_compose,
)
from ainf.unital import koszul_build
from corpus import mutate_family, random_morphism, representation_candidate
from oracles import adjoint_to_end_morphism, endomorphism_algebra

R5 = IntegersMod(5)
Z6 = IntegersMod(6)
M2 = GradedModule({0: ["x"], 1: ["y"]})


def fixture_system(f=6, N=6, ring=ZZ):
    """``sigma^0(y) = 2x``, ``sigma^1(x) = -3y``: a Shamash system on ``f = 6``."""
    return ShamashSystem(f, M2, {0: {"y": {"x": 2}}, 1: {"x": {"y": -3}}}, N, ring)


# -- adjoint families --------------------------------------------------------


def test_adjoint_degree_is_checked():
    A = GradedModule({0: ["1"], 1: ["e"]})
    with pytest.raises(DegreeMismatch):
        AdjointFamily(A, M2, 3, {1: {((), "x"): {"x": 1}}})
    with pytest.raises(DegreeMismatch):
        AdjointFamily(A, M2, 3, {2: {((), "y"): {"x": 1}}})
    lam = AdjointFamily(A, M2, 3, {1: {((), "y"): {"x": 4}}})
    assert lam((), "y") == {"x": 4}
    assert lam.differential().image("y") == {"x": 4}


def test_adjoint_round_trip():
    rng = random.Random(0)
    for _ in range(10):
        alg, lam = representation_candidate(rng, R5, 4, su=bool(rng.random() < 0.5))
        p = adjoint_convert("to_cochain", lam)
        back = adjoint_convert("to_adjoint", p, fiber=lam.source, max_arity=lam.max_arity)
        assert back == lam


def test_arity_zero_component_is_the_differential():
    S = fixture_system()
    lam = shamash_convert("to_adjoint", S, koszul_build(6, ZZ, 6))
    p = adjoint_convert("to_cochain", lam)
    assert p["p"][0] == {(): {"x<-y": 2}}


# -- the representation equations ----------------------------------------------


def test_dg_module_is_a_representation():
    alg = truncated_polynomial(ZZ, 4)
    assert check_representation(regular_representation(alg.nu), alg.nu).valid


def test_non_differential_fails_at_arity_zero():
    A = GradedModule({0: ["1"], 1: ["e"]})
    M = GradedModule({0: ["x"], 1: ["y"], 2: ["z"]})
    lam = AdjointFamily(A, M, 3, {1: {((), "z"): {"y": 1}, ((), "y"): {"x": 1}}})
    alg = koszul_build(0, ZZ, 3)
    rep = check_representation(lam, alg.nu)
    assert not rep.valid and rep.first_arity() == 0
    assert rep.violations[0].fiber == "z"


@pytest.mark.parametrize("seed", range(10))
def test_regular_and_pushed_forward_representations(seed):
    rng = random.Random(seed)
    alg = random_su_algebra(rng, R5, 4)
    red = alg.carrier.reduced_labels
    lam = regular_representation(alg.nu)
    assert check_representation(lam, alg.nu).valid
    lam_bar = regular_representation(alg.nu, red)
    assert check_su_representation(lam_bar, alg).valid
    g = random_morphism(rng, lam_bar, red)
    lam2 = pushforward_representation(lam_bar, alg.mu_bar, g, red)
    assert check_su_representation(lam2, alg).valid
    assert check_rep_morphism(g, lam_bar, lam2, alg=alg, su=True).valid


def test_pushforward_needs_identity_first_component():
    alg = koszul_build(1, ZZ, 3)
    lam = regular_representation(alg.nu)
    with pytest.raises(TypeMismatch):
        pushforward_representation(lam, alg.nu, identity_rep_morphism(lam))


@pytest.mark.parametrize("seed", range(12))
def test_representation_matches_end_m_morphism(seed):
    # a family is a representation iff the induced cochain into End M is
    # an A-infinity morphism; End M is built here only as an oracle
    rng = random.Random(seed)
    alg, lam = representation_candidate(rng, R5, 3, su=False)
    if seed % 2:
        lam = mutate_family(rng, lam)
    E, nu_e = endomorphism_algebra(lam.source, lam.differential(), 3, R5)
    if not check_stasheff(nu_e).valid:
        pytest.skip("mutated differential does not square to zero")
    G = adjoint_to_end_morphism(lam, E)
    assert check_representation(lam, alg.nu).valid == \
        check_morphism(G, alg.nu.truncate(3), nu_e).valid


def test_mutations_are_detected():
    rng = random.Random(20)
    caught = 0
    for _ in range(20):
        alg, lam = representation_candidate(rng, R5, 4, su=True)
        bad = mutate_family(rng, lam, alg.carrier.reduced_labels)
        caught += not check_su_representation(bad, alg).valid
    assert caught >= 18


def test_augmented_reduction():
    # with h = 0 the strictly unital check is the nonunital check for mu_bar
    alg = truncated_polynomial(ZZ, 4)
    red = alg.carrier.reduced_labels
    lam = regular_representation(alg.nu, red)
    assert check_su_representation(lam, alg).valid
    assert check_representation(lam, alg.mu_bar, alphabet=red).valid


# -- morphisms and the star composite -------------------------------------------


def test_identity_and_zero_morphisms():
    rng = random.Random(1)
    alg, lam = representation_candidate(rng, ZZ, 4, su=False)
    for sign in (1, -1):
        assert check_rep_morphism(identity_rep_morphism(lam, sign), lam, lam, nu=alg.nu).valid
    zero = RepMorphismFamily(lam.algebra, lam.source, lam.source, 4, {}, ZZ)
    assert check_rep_morphism(zero, lam, lam, nu=alg.nu).valid


def test_non_equivariant_chain_map_fails_at_arity_one():
    # f = 0, sigma^1(x) = y; g^1 = diag(1, 2) commutes with the zero
    # differential but not with lambda^2
    K = koszul_build(0, ZZ, 3)
    lam = shamash_convert("to_adjoint", ShamashSystem(0, M2, {1: {"x": {"y": 1}}}, 3), K)
    assert check_su_representation(lam, K).valid
    g = RepMorphismFamily(K.module, M2, M2, 3, {1: {((), "x"): {"x": 1}, ((), "y"): {"y": 2}}})
    rep = check_rep_morphism(g, lam, lam, alg=K, su=True)
    assert not rep.valid and rep.first_arity() == 1


def test_star_of_plain_maps():
    A = GradedModule({0: ["1"], 1: ["e"]})
    a = RepMorphismFamily(A, M2, M2, 2, {1: {((), "x"): {"x": 2}, ((), "y"): {"y": 3}}})
    b = RepMorphismFamily(A, M2, M2, 2, {1: {((), "x"): {"x": 5}}})
    # degree 0 adjoints: global sign (-1)^{0 - 1}
    assert star_compose(a, b)((), "x") == {"x": -10}
    assert star_compose(a, b)((), "y") == {}


def test_star_unit():
    rng = random.Random(2)
    alg, lam = representation_candidate(rng, R5, 4, su=False)
    unit = identity_rep_morphism(lam)
    for _ in range(5):
        g = random_morphism(rng, lam, density=0.4)
        assert star_compose(g, unit) == g
        assert star_compose(unit, g) == g


def test_star_is_associative():
    rng = random.Random(3)
    alg, lam = representation_candidate(rng, R5, 4, su=False)
    f, g, h = (random_morphism(rng, lam, density=0.4) for _ in range(3))
    assert star_compose(star_compose(h, g), f) == star_compose(h, star_compose(g, f))


@pytest.mark.parametrize("seed", range(8))
def test_star_composite_of_morphisms_is_a_morphism(seed):
    rng = random.Random(seed)
    alg = random_su_algebra(rng, R5, 4)
    red = alg.carrier.reduced_labels
    lam1 = regular_representation(alg.nu, red)
    g1 = random_morphism(rng, lam1, red)
    lam2 = pushforward_representation(lam1, alg.mu_bar, g1, red)
    g2 = random_morphism(rng, lam2, red)
    lam3 = pushforward_representation(lam2, alg.mu_bar, g2, red)
    comp = star_compose(g2, g1)
    assert check_rep_morphism(comp, lam1, lam3, alg=alg, su=True).valid
    assert check_rep_morphism(-comp, lam1, lam3, alg=alg, su=True).valid


def test_star_type_errors():
    A = GradedModule({0: ["1"]})
    a = RepMorphismFamily(A, M2, M2, 2)
    b = RepMorphismFamily(A, M2, M2, 3)
    with pytest.raises(TypeMismatch):
        star_compose(a, b)
    other = GradedModule({0: ["p"]})
    with pytest.raises(TypeMismatch):
        star_compose(a, RepMorphismFamily(A, M2, other, 2))


# -- Shamash systems -------------------------------------------------------------


def test_fixture_system():
    S = fixture_system()
    assert S.relations().valid
    K = koszul_build(6, ZZ, 6)
    lam = shamash_convert("to_adjoint", S, K)
    assert check_su_representation(lam, K).valid
    back = shamash_convert("to_shamash", lam, K)
    assert back.f == 6 and back.sigma == S.sigma


def test_zero_system():
    S = ShamashSystem(0, M2, {}, 4)
    K = koszul_build(0, ZZ, 4)
    assert check_su_representation(shamash_convert("to_adjoint", S, K), K).valid


def test_invalid_system_is_rejected():
    with pytest.raises(ValueError):
        ShamashSystem(5, M2, {0: {"y": {"x": 2}}, 1: {"x": {"y": -3}}}, 4)
    with pytest.raises(DegreeMismatch):
        ShamashSystem(0, M2, {1: {"y": {"x": 1}}}, 4)


def test_perturbed_sigma_zero_fails_at_arity_one():
    K = koszul_build(6, ZZ, 6)
    lam = shamash_convert("to_adjoint", fixture_system(), K)
    bad = lam + lam.like({1: {((), "y"): {"x": 1}}})
    rep = check_su_representation(bad, K)
    assert not rep.valid and rep.first_arity() == 1


def _random_system(rng, ring, N):
    M = GradedModule({0: ["x0", "x1"], 1: ["y"]})
    a = [random_scalar(rng, ring) for _ in range(2)]
    b = [random_scalar(rng, ring) for _ in range(2)]
    s0 = {"y": {"x0": a[0], "x1": a[1]}}
    s1 = {"x0": {"y": b[0]}, "x1": {"y": b[1]}}
    # sigma^1 sigma^0 (y) = (a.b) y, while sigma^0 sigma^1 (x_i) = b_i a_j x_j
    # is a rank-one matrix; a random f often fails
    f = random_scalar(rng, ring) if rng.random() < 0.5 else -(a[0] * b[0] + a[1] * b[1])
    return ShamashSystem(f, M, {0: s0, 1: s1}, N, ring, validate=False)


@pytest.mark.parametrize("seed", range(30))
def test_shamash_relations_are_the_representation_equations(seed):
    rng = random.Random(seed)
    S = _random_system(rng, Z6, 4)
    K = koszul_build(S.f, Z6, 4)
    lam = shamash_convert("to_adjoint", S, K)
    assert S.relations().valid == check_su_representation(lam, K).valid


def test_shamash_word_must_be_powers_of_e():
    A = GradedModule({0: ["1"], 1: ["e", "g"]})
    lam = AdjointFamily(A, M2, 3, {2: {(("g",), "x"): {"y": 1}}})
    with pytest.raises(TypeMismatch):
        shamash_convert("to_shamash", lam)
