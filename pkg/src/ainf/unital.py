"""Split units, strictly unital structures and the curved bar construction.

A module with split unit is ``A = A_bar (+) k.1`` with the unit label in
degree 0.  Every cochain here is stored over the full label set of ``A``;
``Hoch(A_bar, A)`` is the subspace of cochains none of whose input words
contain the unit, and its two summands ``Hoch(A_bar, A_bar)`` and
``Hoch(A_bar, k)`` are the parts with outputs off and on the unit.

A strictly unital structure decomposes as ``nu = mu_bar + h + mu_su``;
its curved bar construction is ``(Tco(Pi A_bar), Phi^{-1}(mu_bar), xi)``
with ``xi = -s^{-1} h``.
"""

from __future__ import annotations

from typing import Sequence

from .ainfinity import MFamily, check_morphism, check_stasheff, dg_structure, m_nu_convert
from .cochains import (
    Cochain,
    CurvatureMap,
    Functional,
    TypeMismatch,
    ad_apply,
    all_words,
    bracket_at,
    compose_at,
    gerst_bracket,
    phi_inv_apply,
    phi_inv_apply_vec,
    psi_inv_apply,
    square_functional,
    star_at,
)
from .core.graded import DegreeMismatch, GradedMap, GradedModule, UnknownLabel
from .core.report import Report, Violation
from .core.rings import Ring, ZZ
from .core.sparse import add_term


class NotStrictlyUnital(ValueError):
    def __init__(self, word, detail=""):
        self.word = tuple(word)
        super().__init__(f"not strictly unital at {list(word)}" + (f": {detail}" if detail else ""))


class NotMaurerCartan(ValueError):
    def __init__(self, report: Report):
        self.report = report
        v = report.violations[0]
        super().__init__(f"Maurer-Cartan equation fails at arity {v.arity} on {list(v.word)}")


class NotAMorphism(ValueError):
    def __init__(self, report: Report):
        self.report = report
        v = report.violations[0]
        super().__init__(f"morphism equation fails at arity {v.arity} on {list(v.word)}")


class SplitUnitModule:
    """``A = A_bar (+) k.1`` with a fixed splitting."""

    def __init__(self, ambient: GradedModule, unit_label: str = "1"):
        if unit_label not in ambient:
            raise UnknownLabel(f"unit label {unit_label!r} is not in the module")
        if ambient.degree(unit_label) != 0:
            raise DegreeMismatch("the unit must sit in degree 0")
        self.ambient = ambient
        self.unit = unit_label
        self.reduced = ambient.without([unit_label])
        self.k = GradedModule({0: [unit_label]})

    @property
    def reduced_labels(self) -> tuple[str, ...]:
        return self.reduced.labels

    def inclusion(self, ring: Ring = ZZ) -> GradedMap:
        one = ring.one()
        return GradedMap(self.reduced, self.ambient, 0, {a: {a: one} for a in self.reduced.labels},
                         ring)

    def projection(self, ring: Ring = ZZ) -> GradedMap:
        one = ring.one()
        return GradedMap(self.ambient, self.reduced, 0, {a: {a: one} for a in self.reduced.labels},
                         ring)

    def __eq__(self, other):
        return (isinstance(other, SplitUnitModule) and self.ambient == other.ambient
                and self.unit == other.unit)

    __hash__ = None


def mu_su_build(carrier: SplitUnitModule, max_arity: int, ring: Ring = ZZ) -> Cochain:
    """The trivial strictly unital structure.

    It is the ``nu`` of the multiplication by the unit (``1.a = a = a.1``
    and nothing else), so its signs are the ones forced by the shift
    transports inside :func:`m_nu_convert`.
    """
    A, u = carrier.ambient, carrier.unit
    if max_arity < 2:
        return Cochain.zero(A, A, -1, max_arity, ring)
    product = {}
    for a in A.labels:
        product[(u, a)] = {a: 1}
        product[(a, u)] = {a: 1}
    return m_nu_convert("m_to_nu", MFamily(A, {2: product}, max_arity, ring))


def check_strict_unitality(nu: Cochain, carrier: SplitUnitModule) -> tuple | None:
    """The first word on which ``nu`` differs from ``mu_su`` among words
    containing the unit, or ``None``."""
    su = mu_su_build(carrier, nu.max_arity, nu.ring)
    u = carrier.unit
    for n, w, img in nu.items():
        if u in w and img != su(w):
            return w
    for n, w, img in su.items():
        if nu(w) != img:
            return w
    return None


def decompose_strictly_unital(nu: Cochain, carrier: SplitUnitModule) -> tuple[Cochain, Cochain]:
    """``nu = mu_bar + h + mu_su``; returns ``(mu_bar, h)``."""
    if nu.degree != -1 or nu.source != carrier.ambient or not nu.is_endo:
        raise TypeMismatch("nu must be a degree -1 endo cochain on the ambient module")
    bad = check_strict_unitality(nu, carrier)
    if bad is not None:
        raise NotStrictlyUnital(bad, f"arity {len(bad)}")
    reduced = nu.restrict(carrier.reduced_labels)
    return reduced.project(carrier.reduced_labels), reduced.project([carrier.unit])


def assemble(mu_bar: Cochain, h: Cochain, carrier: SplitUnitModule) -> Cochain:
    return mu_bar + h + mu_su_build(carrier, mu_bar.max_arity, mu_bar.ring)


def _check_reduced(c: Cochain, carrier: SplitUnitModule, name: str):
    if c.source != carrier.ambient or c.target != carrier.ambient:
        raise TypeMismatch(f"{name} must be stored over the ambient module")
    if c.mentions(carrier.unit):
        raise TypeMismatch(f"{name} has an input word containing the unit")


class SplitUnitAlgebra:
    """``(A, 1, mu_bar + h + mu_su)``; validated by the Maurer-Cartan equation."""

    def __init__(self, carrier: SplitUnitModule, mu_bar: Cochain, h: Cochain,
                 validate: bool = True):
        _check_reduced(mu_bar, carrier, "mu_bar")
        _check_reduced(h, carrier, "h")
        if any(set(img) - set(carrier.reduced_labels) for _, _, img in mu_bar.items()):
            raise TypeMismatch("mu_bar has outputs on the unit")
        if any(set(img) - {carrier.unit} for _, _, img in h.items()):
            raise TypeMismatch("h has outputs off the unit")
        if mu_bar.degree != -1 or h.degree != -1:
            raise DegreeMismatch("mu_bar and h have degree -1")
        self.carrier = carrier
        self.mu_bar = mu_bar
        self.h = h
        if validate:
            rep = mc_check_su(self)
            if not rep.valid:
                raise NotMaurerCartan(rep)

    @classmethod
    def raw(cls, carrier, mu_bar, h):
        return cls(carrier, mu_bar, h, validate=False)

    @classmethod
    def from_nu(cls, nu: Cochain, carrier: SplitUnitModule, validate: bool = True):
        mu_bar, h = decompose_strictly_unital(nu, carrier)
        return cls(carrier, mu_bar, h, validate)

    @property
    def max_arity(self):
        return self.mu_bar.max_arity

    @property
    def ring(self):
        return self.mu_bar.ring

    @property
    def module(self):
        return self.carrier.ambient

    @property
    def unit(self):
        return self.carrier.unit

    @property
    def mu_su(self) -> Cochain:
        return mu_su_build(self.carrier, self.max_arity, self.ring)

    @property
    def reduced_part(self) -> Cochain:
        """``mu_bar + h`` in ``Hoch(A_bar, A)``."""
        return self.mu_bar + self.h

    @property
    def nu(self) -> Cochain:
        return assemble(self.mu_bar, self.h, self.carrier)

    @property
    def xi(self) -> CurvatureMap:
        return CurvatureMap.from_h(self.h, self.unit)

    @property
    def augmented(self) -> bool:
        return self.h.is_zero

    def truncate(self, n: int) -> "SplitUnitAlgebra":
        return SplitUnitAlgebra(self.carrier, self.mu_bar.truncate(n), self.h.truncate(n),
                                validate=False)


def _as_parts(alg_or_parts):
    if isinstance(alg_or_parts, SplitUnitAlgebra):
        return alg_or_parts.carrier, alg_or_parts.mu_bar, alg_or_parts.h
    return alg_or_parts


def mc_check_su(alg, max_arity: int | None = None, verbose: bool = False) -> Report:
    """Report the Maurer-Cartan residual ``[mu_su, x] + x o x`` with
    ``x = mu_bar + h``, on every word over ``A_bar``.

    Both terms have degree -1, so ``[mu_su, x] = mu_su o x + x o mu_su``.
    """
    carrier, mu_bar, h = _as_parts(alg)
    x = mu_bar + h
    N = x.max_arity if max_arity is None else max_arity
    su = mu_su_build(carrier, x.max_arity, x.ring)
    rep = Report(N, verbose)
    for w in all_words(carrier.reduced_labels, N):
        r = compose_at(su, x, w)
        for part in (compose_at(x, su, w), compose_at(x, x, w)):
            for b, c in part.items():
                add_term(r, b, c)
        if r:
            rep.add(Violation(len(w), w, r, "maurer_cartan"))
    return rep


def two_term_form(h: Cochain, carrier: SplitUnitModule, w: Sequence[str]) -> dict:
    """``[mu_su, h]`` on a word over ``A_bar``, written out directly:
    ``c(w[:-1]) [w_n] - c(w[1:]) [w_1]`` where ``h(v) = c(v) [1]``."""
    w = tuple(w)
    out: dict = {}
    if len(w) < 2:
        return out
    u = carrier.unit
    add_term(out, w[-1], h(w[:-1]).get(u, 0))
    add_term(out, w[0], -h(w[1:]).get(u, 0))
    return out


def bracket_structure_check(mu_bar: Cochain, mu_bar2: Cochain, h: Cochain, h2: Cochain,
                            carrier: SplitUnitModule, verbose: bool = False) -> Report:
    """The four bracket identities of the decomposition, on all words."""
    su = mu_su_build(carrier, mu_bar.max_arity, mu_bar.ring)
    N = mu_bar.max_arity
    u = carrier.unit
    reduced = set(carrier.reduced_labels)
    rep = Report(N, verbose)
    for w in all_words(carrier.ambient.labels, N):
        n = len(w)
        r = bracket_at(mu_bar, su, w)
        if r:
            rep.add(Violation(n, w, r, "mu_bar_mu_su"))
        r = bracket_at(h, h2, w)
        if r:
            rep.add(Violation(n, w, r, "h_h"))
        r = bracket_at(su, h, w)
        if u in w:
            if r:
                rep.add(Violation(n, w, r, "mu_su_h_unit_word"))
        else:
            diff = dict(r)
            for b, c in two_term_form(h, carrier, w).items():
                add_term(diff, b, -c)
            if diff:
                rep.add(Violation(n, w, diff, "mu_su_h_form"))
        r = bracket_at(mu_bar2, h, w)
        bad = {b: c for b, c in r.items() if b in reduced or u in w}
        if bad:
            rep.add(Violation(n, w, bad, "mu_bar_h_target"))
    return rep


# --------------------------------------------------------------------------
# curved coalgebras


class CurvedCoalgebra:
    """The tensor coalgebra on ``Pi A_bar`` (arities ``1..N``) with the
    coderivation ``Phi^{-1}(d_cochain)`` and curvature ``xi``."""

    def __init__(self, carrier: SplitUnitModule, d_cochain: Cochain, xi: Functional):
        if xi.degree != -2:
            raise DegreeMismatch("curvature has degree -2")
        self.carrier = carrier
        self.d_cochain = d_cochain
        self.xi = xi

    @property
    def max_arity(self):
        return self.d_cochain.max_arity

    @property
    def alphabet(self):
        return self.carrier.reduced_labels

    def d(self, w) -> dict:
        return phi_inv_apply(self.d_cochain, w)

    def d_vec(self, vec) -> dict:
        return phi_inv_apply_vec(self.d_cochain, vec)

    def words(self, max_arity=None):
        return all_words(self.alphabet, self.max_arity if max_arity is None else max_arity)


def curved_bar(alg: SplitUnitAlgebra, check: bool = True) -> CurvedCoalgebra:
    if check:
        rep = mc_check_su(alg)
        if not rep.valid:
            raise NotMaurerCartan(rep)
    return CurvedCoalgebra(alg.carrier, alg.mu_bar, alg.xi)


def check_curved_coalgebra(C: CurvedCoalgebra, max_arity: int | None = None,
                           verbose: bool = False) -> Report:
    """``d^2 = ad xi`` (clause ``d2``) and ``xi d = 0`` (clause ``xi_d``)."""
    N = C.max_arity if max_arity is None else max_arity
    rep = Report(N, verbose)
    for w in C.words(N):
        once = C.d(w)
        r = C.d_vec(once)
        for v, c in ad_apply(C.xi, w).items():
            add_term(r, v, -c)
        if r:
            rep.add(Violation(len(w), w, r, "d2"))
        s = C.xi.apply(once)
        if s:
            rep.add(Violation(len(w), w, s, "xi_d"))
    return rep


class CurvedMorphism:
    """``(gamma, alpha)`` with ``gamma = Psi^{-1}(g_bar)``."""

    def __init__(self, g_bar: Cochain, alpha: Functional):
        if g_bar.degree != 0:
            raise DegreeMismatch("g_bar has degree 0")
        if alpha.degree != -1:
            raise DegreeMismatch("alpha has degree -1")
        self.g_bar = g_bar
        self.alpha = alpha

    def gamma(self, w) -> dict:
        return psi_inv_apply(self.g_bar, w)

    def gamma_vec(self, vec) -> dict:
        out: dict = {}
        for w, c in vec.items():
            for v, d in self.gamma(w).items():
                add_term(out, v, c * d)
        return out


def check_curved_morphism(m: CurvedMorphism, C: CurvedCoalgebra, D: CurvedCoalgebra,
                          max_arity: int | None = None, verbose: bool = False) -> Report:
    """``d_D gamma = gamma d_C + gamma ad alpha`` (clause ``d``) and
    ``xi_D gamma - alpha^2 = alpha d_C + xi_C`` (clause ``curvature``)."""
    N = C.max_arity if max_arity is None else max_arity
    rep = Report(N, verbose)
    for w in C.words(N):
        gw = m.gamma(w)
        r = D.d_vec(gw)
        dw = C.d(w)
        for part in (m.gamma_vec(dw), m.gamma_vec(ad_apply(m.alpha, w))):
            for v, c in part.items():
                add_term(r, v, -c)
        if r:
            rep.add(Violation(len(w), w, r, "d"))
        s = D.xi.apply(gw) - square_functional(m.alpha, w) - m.alpha.apply(dw) - C.xi(w)
        if s:
            rep.add(Violation(len(w), w, s, "curvature"))
    return rep


def g_su_build(carrier_a: SplitUnitModule, carrier_b: SplitUnitModule, max_arity: int,
               ring: Ring = ZZ) -> Cochain:
    """The unit-to-unit part of a strictly unital morphism."""
    return Cochain(carrier_a.ambient, carrier_b.ambient, 0, max_arity,
                   {1: {(carrier_a.unit,): {carrier_b.unit: ring.one()}}}, ring)


def su_morphism_assemble(g_bar: Cochain, a: Cochain, algA: SplitUnitAlgebra,
                         algB: SplitUnitAlgebra) -> Cochain:
    """``g_bar + a + g_su`` as a cochain ``Hoch(A, B)_0``."""
    A, B = algA.module, algB.module
    g = Cochain(A, B, 0, g_bar.max_arity, g_bar.components, g_bar.ring) + \
        Cochain(A, B, 0, a.max_arity, a.components, a.ring)
    return g + g_su_build(algA.carrier, algB.carrier, g_bar.max_arity, g_bar.ring)


def su_morphism_check(g_bar: Cochain, a: Cochain, algA: SplitUnitAlgebra,
                      algB: SplitUnitAlgebra, max_arity: int | None = None,
                      verbose: bool = False) -> Report:
    """``nu_B * g - g o mu_bar_A - g_su o h_A`` with ``g = g_bar + a``, on
    words over ``A_bar``."""
    for c, name in ((g_bar, "g_bar"), (a, "a")):
        if c.degree != 0:
            raise DegreeMismatch(f"{name} has degree 0")
        if c.mentions(algA.unit):
            raise TypeMismatch(f"{name} has an input word containing the unit")
    if any(set(img) - set(algB.carrier.reduced_labels) for _, _, img in g_bar.items()):
        raise TypeMismatch("g_bar has outputs on the unit")
    if any(set(img) - {algB.unit} for _, _, img in a.items()):
        raise TypeMismatch("a has outputs off the unit")
    A, B = algA.module, algB.module
    g = Cochain(A, B, 0, g_bar.max_arity, g_bar.components, g_bar.ring) + \
        Cochain(A, B, 0, a.max_arity, a.components, a.ring)
    g_su = g_su_build(algA.carrier, algB.carrier, g.max_arity, g.ring)
    nu_b = algB.nu
    N = g.max_arity if max_arity is None else max_arity
    rep = Report(N, verbose)
    for w in all_words(algA.carrier.reduced_labels, N):
        r = star_at(nu_b, g, w)
        for part in (compose_at(g, algA.mu_bar, w), compose_at(g_su, algA.h, w)):
            for b, c in part.items():
                add_term(r, b, -c)
        if r:
            rep.add(Violation(len(w), w, r, "su_morphism"))
    return rep


def su_morphism_to_curved(g_bar: Cochain, a: Cochain, algA: SplitUnitAlgebra,
                          algB: SplitUnitAlgebra, check: bool = True) -> CurvedMorphism:
    """``(Psi^{-1}(g_bar), -s^{-1} a)``; with ``check`` the morphism
    equations are verified first."""
    if check:
        rep = su_morphism_check(g_bar, a, algA, algB)
        if not rep.valid:
            raise NotAMorphism(rep)
    alpha = Functional.from_cochain(a, algB.unit, sign=-1)
    return CurvedMorphism(g_bar, alpha)


def reduced_hoch_diff(alg: SplitUnitAlgebra, f: Cochain) -> Cochain:
    """``[mu_bar + h + mu_su, f]`` for ``f`` in ``Hoch(A_bar, A)``."""
    if f.source != alg.module or f.target != alg.module:
        raise TypeMismatch("f must be an endo cochain on the ambient module")
    if f.mentions(alg.unit):
        raise TypeMismatch("f is not in the reduced subalgebra")
    if f.max_arity != alg.max_arity:
        raise TypeMismatch("truncations differ")
    return gerst_bracket(alg.nu, f)


def koszul_module(unit: str = "1", letter: str = "e") -> SplitUnitModule:
    return SplitUnitModule(GradedModule({0: [unit], 1: [letter]}), unit)


def koszul_build(f, ring: Ring = ZZ, max_arity: int = 6, unit: str = "1",
                 letter: str = "e") -> SplitUnitAlgebra:
    """The Koszul complex on ``f``: ``k.1 (+) k.e`` with ``m^1(e) = f.1`` and
    the unital product."""
    carrier = koszul_module(unit, letter)
    A = carrier.ambient
    f = ring.coerce(f)
    product = {(unit, unit): {unit: 1}, (unit, letter): {letter: 1}, (letter, unit): {letter: 1}}
    nu = dg_structure(A, {letter: {unit: f}}, product, max_arity, ring)
    return SplitUnitAlgebra.from_nu(nu, carrier)


def check_su_morphism_full(g_bar, a, algA, algB, verbose: bool = False) -> Report:
    """The plain A-infinity morphism check of the assembled cochain."""
    return check_morphism(su_morphism_assemble(g_bar, a, algA, algB), algA.nu, algB.nu,
                          verbose=verbose)


def check_stasheff_su(alg: SplitUnitAlgebra, verbose: bool = False) -> Report:
    return check_stasheff(alg.nu, verbose=verbose)

