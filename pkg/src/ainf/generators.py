"""Random valid and mutated instances for property tests and the CLI corpus.

Valid structures come from a few small dg-algebras pushed forward along
random strictly unital automorphisms of the tensor coalgebra, which yields
instances with nonzero higher operations.  Mutations change one entry.
"""

from __future__ import annotations

import random
from typing import Sequence

from .ainfinity import dg_structure, pushforward
from .cochains import Cochain, Functional, all_words, word_degree
from .core.graded import GradedModule
from .core.rings import DualNumbers, DualScalar, Ring, ZZ
from .unital import SplitUnitAlgebra, SplitUnitModule, koszul_build


def random_scalar(rng: random.Random, ring: Ring, nonzero: bool = False, bound: int = 3):
    if isinstance(ring, DualNumbers):
        v = DualScalar(random_scalar(rng, ring.base, False, bound),
                       random_scalar(rng, ring.base, False, bound))
        if nonzero and not v:
            v = ring.one()
        return v
    while True:
        v = ring.coerce(rng.randint(-bound, bound))
        if v or not nonzero:
            return v


def degree_valid_slots(source: GradedModule, target: GradedModule, degree: int,
                       max_arity: int, alphabet: Sequence[str] | None = None,
                       outputs: Sequence[str] | None = None, min_arity: int = 1):
    """Every ``(word, output)`` pair a cochain of this degree may have."""
    letters = source.labels if alphabet is None else tuple(alphabet)
    outs = target.labels if outputs is None else tuple(outputs)
    by_degree: dict[int, list[str]] = {}
    for b in outs:
        by_degree.setdefault(target.degree(b) + 1, []).append(b)
    slots = []
    for w in all_words(letters, max_arity, min_arity):
        for b in by_degree.get(word_degree(source, w) + degree, ()):
            slots.append((w, b))
    return slots


def random_cochain(rng: random.Random, source: GradedModule, target: GradedModule,
                   degree: int, max_arity: int, ring: Ring = ZZ, density: float = 0.4,
                   alphabet=None, outputs=None, min_arity: int = 1,
                   max_terms: int | None = None) -> Cochain:
    slots = degree_valid_slots(source, target, degree, max_arity, alphabet, outputs, min_arity)
    comps: dict = {}
    chosen = [s for s in slots if rng.random() < density]
    if max_terms is not None and len(chosen) > max_terms:
        chosen = rng.sample(chosen, max_terms)
    for w, b in chosen:
        c = random_scalar(rng, ring, nonzero=True)
        comps.setdefault(len(w), {}).setdefault(w, {})[b] = c
    return Cochain(source, target, degree, max_arity, comps, ring)


def random_module(rng: random.Random, rank: int = 2, degrees=(-1, 0, 1, 2),
                  prefix: str = "a") -> GradedModule:
    return GradedModule.from_labels((f"{prefix}{i}", rng.choice(degrees)) for i in range(rank))


def random_functional(rng, source, degree, max_arity, ring=ZZ, density=0.5, alphabet=None):
    letters = source.labels if alphabet is None else tuple(alphabet)
    comps: dict = {}
    for w in all_words(letters, max_arity):
        if word_degree(source, w) + degree == 0 and rng.random() < density:
            comps.setdefault(len(w), {})[w] = random_scalar(rng, ring, nonzero=True)
    return Functional(source, degree, max_arity, comps, ring)


# --------------------------------------------------------------------------
# base strictly unital algebras


def _unital_product(unit, labels):
    prod = {(unit, unit): {unit: 1}}
    for a in labels:
        prod[(unit, a)] = {a: 1}
        prod[(a, unit)] = {a: 1}
    return prod


def curved_rank_two(f, ring: Ring = ZZ, max_arity: int = 4) -> SplitUnitAlgebra:
    """``k.1 (+) k.x (+) k.e``, ``|x| = 0``, ``|e| = 1``, with ``x x = -f x``
    and ``m^1(e) = f.1 + x``: a curved example with reduced rank two."""
    A = GradedModule({0: ["1", "x"], 1: ["e"]})
    prod = _unital_product("1", ["x", "e"])
    prod[("x", "x")] = {"x": -ring.coerce(f)}
    nu = dg_structure(A, {"e": {"1": f, "x": 1}}, prod, max_arity, ring)
    return SplitUnitAlgebra.from_nu(nu, SplitUnitModule(A, "1"))


def truncated_polynomial(ring: Ring = ZZ, max_arity: int = 4) -> SplitUnitAlgebra:
    """``k[x]/(x^3)`` with ``|x| = 0``; augmented."""
    A = GradedModule({0: ["1", "x", "y"]})
    prod = _unital_product("1", ["x", "y"])
    prod[("x", "x")] = {"y": 1}
    nu = dg_structure(A, None, prod, max_arity, ring)
    return SplitUnitAlgebra.from_nu(nu, SplitUnitModule(A, "1"))


def square_zero_dg(c, ring: Ring = ZZ, max_arity: int = 4) -> SplitUnitAlgebra:
    """Square-zero reduced part ``{x, e}`` with ``|x| = 0``, ``|e| = 1`` and
    ``d e = c x``; augmented."""
    A = GradedModule({0: ["1", "x"], 1: ["e"]})
    nu = dg_structure(A, {"e": {"x": c}}, _unital_product("1", ["x", "e"]), max_arity, ring)
    return SplitUnitAlgebra.from_nu(nu, SplitUnitModule(A, "1"))


def square_zero_negative(c, ring: Ring = ZZ, max_arity: int = 4) -> SplitUnitAlgebra:
    """Square-zero reduced part ``{x, z}`` with ``|x| = 0``, ``|z| = -1`` and
    ``d x = c z``.  Augmented, but ``[z]`` has degree 0, so automorphisms
    of the bar construction have many higher terms and pushforwards pick up
    curvature."""
    A = GradedModule({-1: ["z"], 0: ["1", "x"]})
    nu = dg_structure(A, {"x": {"z": c}}, _unital_product("1", ["x", "z"]), max_arity, ring)
    return SplitUnitAlgebra.from_nu(nu, SplitUnitModule(A, "1"))


def base_algebras(ring: Ring, max_arity: int, rng: random.Random):
    f = random_scalar(rng, ring)
    return [
        koszul_build(f, ring, max_arity),
        curved_rank_two(f, ring, max_arity),
        truncated_polynomial(ring, max_arity),
        square_zero_dg(random_scalar(rng, ring), ring, max_arity),
        square_zero_negative(random_scalar(rng, ring), ring, max_arity),
    ]


def random_su_automorphism(rng: random.Random, carrier: SplitUnitModule, max_arity: int,
                           ring: Ring = ZZ, density: float = 0.3, max_terms: int = 6) -> Cochain:
    """``id + (higher terms on words over A_bar)``: a strictly unital degree 0
    cochain with first component the identity."""
    A = carrier.ambient
    higher = random_cochain(rng, A, A, 0, max_arity, ring, density,
                            alphabet=carrier.reduced_labels, min_arity=2, max_terms=max_terms)
    return Cochain.identity(A, max_arity, ring) + higher


def random_su_algebra(rng: random.Random, ring: Ring = ZZ, max_arity: int = 4,
                      base: SplitUnitAlgebra | None = None) -> SplitUnitAlgebra:
    if base is None:
        base = rng.choice(base_algebras(ring, max_arity, rng))
    g = random_su_automorphism(rng, base.carrier, max_arity, ring)
    nu = pushforward(base.nu, g)
    return SplitUnitAlgebra.from_nu(nu, base.carrier)


def mutate_cochain(rng: random.Random, c: Cochain, alphabet=None, outputs=None,
                   min_arity: int = 1) -> Cochain:
    """Add a random nonzero scalar to one degree-valid entry."""
    slots = degree_valid_slots(c.source, c.target, c.degree, c.max_arity, alphabet, outputs,
                               min_arity)
    if not slots:
        return c
    w, b = rng.choice(slots)
    bump = Cochain(c.source, c.target, c.degree, c.max_arity,
                   {len(w): {w: {b: random_scalar(rng, c.ring, nonzero=True)}}}, c.ring)
    return c + bump


def mutate_su_algebra(rng: random.Random, alg: SplitUnitAlgebra) -> SplitUnitAlgebra:
    """Perturb one entry of ``mu_bar`` or ``h`` (the result stays strictly
    unital but usually stops being Maurer-Cartan)."""
    red = alg.carrier.reduced_labels
    if rng.random() < 0.5:
        mu_bar = mutate_cochain(rng, alg.mu_bar, red, red)
        return SplitUnitAlgebra(alg.carrier, mu_bar, alg.h, validate=False)
    h = mutate_cochain(rng, alg.h, red, [alg.unit])
    if h == alg.h:
        mu_bar = mutate_cochain(rng, alg.mu_bar, red, red)
        return SplitUnitAlgebra(alg.carrier, mu_bar, alg.h, validate=False)
    return SplitUnitAlgebra(alg.carrier, alg.mu_bar, h, validate=False)
