"""Nonunital A-infinity structures, their morphisms and bar constructions.

A structure on ``A`` is a degree -1 cochain ``nu`` in ``Hoch(A, A)`` with
``nu o nu = 0``.  The check is done on the square itself, never on
``[nu, nu] / 2``, so it is valid over every base ring, ``Z/2`` included.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .cochains import (
    ArityOutOfRange,
    Cochain,
    TypeMismatch,
    all_words,
    compose_at,
    gerst_bracket,
    phi_inv_apply,
    psi_inv_apply,
    star_at,
)
from .core.graded import DegreeMismatch, GradedModule, suspend, tensor_eval
from .core.report import Report, Violation
from .core.rings import Ring, ZZ
from .core.sparse import add_term


class StasheffViolation(ValueError):
    """A validating constructor was handed a non-structure."""

    def __init__(self, report: Report):
        self.report = report
        v = report.violations[0]
        super().__init__(f"identity fails at arity {v.arity} on {list(v.word)}")


# --------------------------------------------------------------------------
# m <-> nu


class MFamily:
    """Unshifted operations ``m^n: A^{(x) n} -> A`` of degree ``n - 2``,
    stored like cochains: ``maps[n][(a_1, ..., a_n)] = {b: coeff}``."""

    def __init__(self, module: GradedModule, maps: Mapping, max_arity: int,
                 ring: Ring = ZZ):
        self.module = module
        self.max_arity = max_arity
        self.ring = ring
        clean = {}
        for n, comp in maps.items():
            n = int(n)
            if not 1 <= n <= max_arity:
                raise ArityOutOfRange(f"operation of arity {n} outside 1..{max_arity}")
            entries = {}
            for word, img in comp.items():
                word = tuple(word)
                if len(word) != n:
                    raise DegreeMismatch(f"word {list(word)} filed under arity {n}")
                d_in = sum(module.degree(a) for a in word)
                out = {}
                for b, c in img.items():
                    c = ring.coerce(c)
                    if not c:
                        continue
                    if module.degree(b) != d_in + n - 2:
                        raise DegreeMismatch(
                            f"m^{n}{list(word)} -> {b!r} does not have degree {n - 2}")
                    out[b] = c
                if out:
                    entries[word] = out
            if entries:
                clean[n] = entries
        self.maps = clean

    def __call__(self, word):
        return self.maps.get(len(word), {}).get(tuple(word), {})

    def __eq__(self, other):
        return (isinstance(other, MFamily) and self.module == other.module
                and self.maps == other.maps)

    __hash__ = None


def _suspension_maps(module: GradedModule, ring: Ring):
    shifted = suspend(module, 1)
    return shifted.suspension(ring), shifted.desuspension(ring)


def m_nu_convert(direction: str, family, ring: Ring | None = None):
    """Convert between the ``m`` and ``nu`` descriptions.

    ``nu^n = (-1)^{n(n-1)/2} s m^n (s^{-1})^{(x) n}`` and
    ``m^n = s^{-1} nu^n s^{(x) n}``; signs come from :func:`tensor_eval`.
    """
    if direction == "m_to_nu":
        if not isinstance(family, MFamily):
            raise TypeMismatch("m_to_nu expects an MFamily")
        A, ring = family.module, family.ring
        _, desusp = _suspension_maps(A, ring)
        comps: dict = {}
        for n, comp in family.maps.items():
            global_sign = -1 if (n * (n - 1) // 2) % 2 else 1
            out = {}
            for word in comp:
                # (s^{-1})^{(x) n} [a_1|...|a_n] = sign * a_1 (x) ... (x) a_n
                for unshifted, c in tensor_eval([desusp] * n, {word: ring.one()}).items():
                    for b, d in family(unshifted).items():
                        row = out.setdefault(word, {})
                        add_term(row, b, global_sign * c * d)
            comps[n] = {w: img for w, img in out.items() if img}
        return Cochain(A, A, -1, family.max_arity, comps, ring)
    if direction == "nu_to_m":
        if not isinstance(family, Cochain) or not family.is_endo or family.degree != -1:
            raise DegreeMismatch("nu_to_m expects an endo-typed cochain of degree -1")
        nu = family
        A, ring = nu.source, nu.ring
        susp, _ = _suspension_maps(A, ring)
        maps: dict = {}
        for n, comp in nu.components.items():
            out = {}
            for word in comp:
                for shifted, c in tensor_eval([susp] * n, {word: ring.one()}).items():
                    for b, d in nu(shifted).items():
                        add_term(out.setdefault(word, {}), b, c * d)
            maps[n] = {w: img for w, img in out.items() if img}
        return MFamily(A, maps, nu.max_arity, ring)
    raise ValueError(f"unknown direction {direction!r}")


def dg_structure(module: GradedModule, differential: Mapping | None, product: Mapping | None,
                 max_arity: int, ring: Ring = ZZ) -> Cochain:
    """``nu`` of a dg-algebra given ``m^1`` as ``{a: {b: c}}`` and ``m^2`` as
    ``{(a, b): {c: coeff}}``."""
    maps = {}
    if differential:
        maps[1] = {(a,): img for a, img in differential.items()}
    if product and max_arity >= 2:
        maps[2] = {tuple(k): img for k, img in product.items()}
    return m_nu_convert("m_to_nu", MFamily(module, maps, max_arity, ring))


# --------------------------------------------------------------------------
# structures and checks


def _words_for(nu: Cochain, alphabet, max_arity):
    letters = nu.source.labels if alphabet is None else tuple(alphabet)
    return all_words(letters, max_arity)


def check_stasheff(nu: Cochain, max_arity: int | None = None, verbose: bool = False,
                   alphabet: Sequence[str] | None = None) -> Report:
    """Report every word ``w`` with ``(nu o nu)(w) != 0``."""
    if not nu.is_endo or nu.degree != -1:
        raise TypeMismatch("a structure is an endo-typed cochain of degree -1")
    N = nu.max_arity if max_arity is None else max_arity
    rep = Report(N, verbose)
    for w in _words_for(nu, alphabet, N):
        r = compose_at(nu, nu, w)
        if r:
            rep.add(Violation(len(w), w, r, "stasheff"))
    return rep


def check_stasheff_by_square(nu: Cochain, max_arity: int | None = None,
                             alphabet: Sequence[str] | None = None) -> Report:
    """The same verdict read off ``Phi^{-1}(nu)^2`` on every word."""
    N = nu.max_arity if max_arity is None else max_arity
    rep = Report(N)
    for w in _words_for(nu, alphabet, N):
        once = phi_inv_apply(nu, w)
        out: dict = {}
        for v, c in once.items():
            for u, d in phi_inv_apply(nu, v).items():
                add_term(out, u, c * d)
        if out:
            rep.add(Violation(len(w), w, out, "square"))
    return rep


def check_morphism(g: Cochain, nu_a: Cochain, nu_b: Cochain, max_arity: int | None = None,
                   verbose: bool = False, alphabet: Sequence[str] | None = None) -> Report:
    """Report words where ``nu_B * g`` and ``g o nu_A`` differ."""
    if g.degree != 0 or g.source != nu_a.source or g.target != nu_b.source:
        raise TypeMismatch("a morphism is a degree 0 cochain between the structures' modules")
    N = g.max_arity if max_arity is None else max_arity
    rep = Report(N, verbose)
    letters = g.source.labels if alphabet is None else tuple(alphabet)
    for w in all_words(letters, N):
        r = star_at(nu_b, g, w)
        for b, c in compose_at(g, nu_a, w).items():
            add_term(r, b, -c)
        if r:
            rep.add(Violation(len(w), w, r, "morphism"))
    return rep


class AInfinityStructure:
    def __init__(self, module: GradedModule, nu: Cochain, validate: bool = True):
        if nu.source != module or not nu.is_endo or nu.degree != -1:
            raise TypeMismatch("nu must be a degree -1 cochain on the module")
        self.module = module
        self.nu = nu
        if validate:
            rep = check_stasheff(nu)
            if not rep.valid:
                raise StasheffViolation(rep)

    @classmethod
    def raw(cls, module, nu) -> "AInfinityStructure":
        return cls(module, nu, validate=False)

    @property
    def max_arity(self):
        return self.nu.max_arity

    @property
    def ring(self):
        return self.nu.ring


class AInfinityMorphism:
    def __init__(self, source: AInfinityStructure, target: AInfinityStructure, g: Cochain,
                 validate: bool = True):
        self.source = source
        self.target = target
        self.g = g
        if validate:
            rep = check_morphism(g, source.nu, target.nu)
            if not rep.valid:
                raise StasheffViolation(rep)

    @classmethod
    def raw(cls, source, target, g):
        return cls(source, target, g, validate=False)


class BarConstruction:
    """``(Tco(Pi A), Phi^{-1}(nu))``; with ``counital`` the empty word is the
    coaugmentation and has zero differential."""

    def __init__(self, structure: AInfinityStructure, counital: bool = False):
        self.structure = structure
        self.counital = counital

    @property
    def max_arity(self):
        return self.structure.max_arity

    def d(self, w: Sequence[str]) -> dict:
        return bar_d_apply(self, w)

    def d_vec(self, vec: Mapping) -> dict:
        out: dict = {}
        for w, c in vec.items():
            for v, e in self.d(w).items():
                add_term(out, v, c * e)
        return out


def bar_d_apply(bar: BarConstruction, w: Sequence[str]) -> dict:
    w = tuple(w)
    if not w:
        if bar.counital:
            return {}
        raise ArityOutOfRange("the empty word lives only in the counital bar construction")
    return phi_inv_apply(bar.structure.nu, w)


def hoch_diff(nu: Cochain, f: Cochain, alphabet: Sequence[str] | None = None) -> Cochain:
    """The Hochschild differential ``[nu, f]``."""
    return gerst_bracket(nu, f, alphabet)


def pushforward(nu: Cochain, g: Cochain) -> Cochain:
    """The structure ``nu_B`` on the same module making ``g`` a morphism.

    Requires ``g^1 = id``; then ``Psi^{-1}(g)`` is invertible and
    ``nu_B^n = (g o nu)^n - sum_{k<n} nu_B^k pi_k Psi^{-1}(g)``, solved
    arity by arity.
    """
    A = nu.source
    if g.source != A or g.target != A or g.degree != 0:
        raise TypeMismatch("pushforward needs a degree 0 endo cochain g")
    if g.max_arity != nu.max_arity:
        raise TypeMismatch("truncations differ")
    one = g.ring.one()
    for x in A.labels:
        if g((x,)) != {x: one}:
            raise TypeMismatch("pushforward needs g^1 = id")
    N = nu.max_arity
    comps: dict = {}
    built = Cochain(A, A, -1, N, {}, nu.ring, check=False)
    for n in range(1, N + 1):
        comp = {}
        for w in all_words(A.labels, n, n):
            r = compose_at(g, nu, w)
            for v, c in psi_inv_apply(g, w).items():
                if len(v) < n:
                    for b, d in built(v).items():
                        add_term(r, b, -(c * d))
            if r:
                comp[w] = r
        if comp:
            comps[n] = comp
        built = Cochain(A, A, -1, N, comps, nu.ring, check=False)
    return Cochain(A, A, -1, N, comps, nu.ring)


def zero_structure(module: GradedModule, max_arity: int, ring: Ring = ZZ) -> Cochain:
    return Cochain.zero(module, module, -1, max_arity, ring)
