"""Cofree comodules over bar constructions and the functor from representations.

An element of ``C (x) M`` is a dict ``{(word, m): coeff}``.  The coalgebra
``C`` is the counital tensor coalgebra on ``Pi A`` (or ``Pi A_bar``), cut at
word arity ``N - 1`` so that the coderivation only needs ``lambda^{<= N}``.
"""

from __future__ import annotations

from typing import Callable, Mapping, Sequence

from .cochains import (
    ArityOutOfRange,
    Cochain,
    Functional,
    TypeMismatch,
    all_words,
    phi_inv_apply,
)
from .core.graded import GradedModule
from .core.report import Report, Violation
from .core.rings import Ring
from .core.sparse import add_term, signed
from .representations import AdjointFamily, ShamashSystem


class HigherSigmaNonzero(ValueError):
    pass


class NotFactorizing(ValueError):
    pass


class CofreeComodule:
    """``C (x) M`` with comultiplication ``Delta_C (x) 1``."""

    def __init__(self, algebra: GradedModule, fiber: GradedModule, max_arity: int,
                 alphabet: Sequence[str] | None = None, ring: Ring | None = None):
        self.algebra = algebra
        self.fiber = fiber
        self.max_arity = max_arity
        self.alphabet = algebra.labels if alphabet is None else tuple(alphabet)
        self.ring = ring

    def basis(self):
        for w in all_words(self.alphabet, self.max_arity - 1, 0):
            for m in self.fiber.labels:
                yield w, m

    def degree(self, w: Sequence[str], m: str) -> int:
        return sum(self.algebra.degree(a) + 1 for a in w) + self.fiber.degree(m)

    def comultiply(self, w: Sequence[str], m: str) -> dict:
        """``{(u, v, m): 1}`` over the splittings ``w = uv``."""
        w = tuple(w)
        return {(w[:i], w[i:], m): 1 for i in range(len(w) + 1)}

    @staticmethod
    def counit(w: Sequence[str], m: str) -> dict:
        return {m: 1} if not w else {}


class ComoduleCoderivation:
    """``phi^{-1}(lambda) = d (x) 1 + (1 (x) lambda)(Delta_C (x) 1)``."""

    def __init__(self, comodule: CofreeComodule, reduced_map: AdjointFamily, d_cochain: Cochain):
        if reduced_map.source != comodule.fiber or reduced_map.target != comodule.fiber:
            raise TypeMismatch("the reduced map must be an endo family of the fiber")
        if d_cochain.source != comodule.algebra:
            raise TypeMismatch("coderivation and comodule use different algebras")
        self.comodule = comodule
        self.reduced_map = reduced_map
        self.d_cochain = d_cochain

    @classmethod
    def from_representation(cls, lam: AdjointFamily, nu: Cochain) -> "ComoduleCoderivation":
        C = CofreeComodule(lam.algebra, lam.source, lam.max_arity, ring=lam.ring)
        return cls(C, lam, nu)

    @classmethod
    def from_su_representation(cls, lam_bar: AdjointFamily, alg) -> "ComoduleCoderivation":
        C = CofreeComodule(lam_bar.algebra, lam_bar.source, lam_bar.max_arity,
                           alg.carrier.reduced_labels, lam_bar.ring)
        return cls(C, lam_bar, alg.mu_bar)

    def apply(self, w: Sequence[str], m: str) -> dict:
        return comod_coderivation_apply(self, (w, m))

    def apply_vec(self, vec: Mapping[tuple, object]) -> dict:
        out: dict = {}
        for (w, m), c in vec.items():
            for k, d in self.apply(w, m).items():
                add_term(out, k, c * d)
        return out

    def phi(self) -> AdjointFamily:
        return phi_reduce(self.apply, self.comodule, self.reduced_map)


def comod_coderivation_apply(coder: ComoduleCoderivation, basis_elt: tuple) -> dict:
    w, m = tuple(basis_elt[0]), basis_elt[1]
    C = coder.comodule
    if len(w) > C.max_arity - 1:
        raise ArityOutOfRange(f"comodule words stop at arity {C.max_arity - 1}")
    lam = coder.reduced_map
    out: dict = {}
    if w:
        for v, c in phi_inv_apply(coder.d_cochain, w, check=False).items():
            add_term(out, (v, m), c)
    prefix = 0
    for i in range(len(w) + 1):
        for b, c in lam(w[i:], m).items():
            add_term(out, (w[:i], b), signed(c, lam.degree * prefix))
        if i < len(w):
            prefix += C.algebra.degree(w[i]) + 1
    return out


def phi_reduce(apply: Callable, comodule: CofreeComodule, like: AdjointFamily) -> AdjointFamily:
    """``(epsilon (x) 1) D`` of any linear map ``D`` on the basis."""
    maps: dict = {}
    for w, m in comodule.basis():
        img = {b: c for (v, b), c in apply(w, m).items() if not v}
        if img:
            maps.setdefault(len(w) + 1, {})[(w, m)] = img
    return like.like(maps)


def _square_report(coder: ComoduleCoderivation, xi: Functional | None, verbose, clause):
    C = coder.comodule
    rep = Report(C.max_arity, verbose)
    for w, m in C.basis():
        r = coder.apply_vec(coder.apply(w, m))
        if xi is not None:
            for k, c in curvature_apply(xi, w, m).items():
                add_term(r, k, -c)
        if r:
            rep.add(Violation(len(w), w, r, clause, m))
    return rep


def curvature_apply(xi: Functional, w: Sequence[str], m: str) -> dict:
    """``L_xi(w (x) m) = sum_i xi(w[:i]) w[i:] (x) m``."""
    w = tuple(w)
    out: dict = {}
    for i in range(1, len(w) + 1):
        c = xi(w[:i])
        if c:
            add_term(out, (w[i:], m), c)
    return out


def check_dg_comodule(coder: ComoduleCoderivation, verbose: bool = False) -> Report:
    return _square_report(coder, None, verbose, "d2")


def check_curved_comodule(coder: ComoduleCoderivation, xi: Functional,
                          verbose: bool = False) -> Report:
    return _square_report(coder, xi, verbose, "curved_d2")


def psi_inv_comodule(g: AdjointFamily, w: Sequence[str], m: str) -> dict:
    """``psi^{-1}(g) = (1 (x) g) Delta`` for a degree 0 family."""
    w = tuple(w)
    out: dict = {}
    for i in range(len(w) + 1):
        for b, c in g(w[i:], m).items():
            add_term(out, (w[:i], b), c)
    return out


def comodule_morphism_check(g: AdjointFamily, coder_m: ComoduleCoderivation,
                            coder_n: ComoduleCoderivation, verbose: bool = False) -> Report:
    """``psi^{-1}(g) d_M = d_N psi^{-1}(g)`` on every basis element."""
    if g.degree != 0:
        raise TypeMismatch("comodule morphisms come from degree 0 families")
    C = coder_m.comodule
    rep = Report(C.max_arity, verbose)
    for w, m in C.basis():
        r: dict = {}
        for (v, b), c in coder_m.apply(w, m).items():
            for k, d in psi_inv_comodule(g, v, b).items():
                add_term(r, k, c * d)
        for (v, b), c in psi_inv_comodule(g, w, m).items():
            for k, d in coder_n.apply(v, b).items():
                add_term(r, k, -(c * d))
        if r:
            rep.add(Violation(len(w), w, r, "comodule_morphism", m))
    return rep


# --------------------------------------------------------------------------
# matrix factorizations


class MatrixFactorization:
    """``phi: M_ev -> M_odd`` and ``psi: M_odd -> M_ev`` with both composites
    ``f . id``.  The maps are stored as ``{x: {y: c}}`` since they are not
    homogeneous for the Z-grading."""

    def __init__(self, even: GradedModule, odd: GradedModule, phi: Mapping, psi: Mapping, f,
                 ring: Ring, check: bool = True):
        self.even = even
        self.odd = odd
        self.phi = {x: dict(v) for x, v in phi.items() if v}
        self.psi = {x: dict(v) for x, v in psi.items() if v}
        self.f = ring.coerce(f)
        self.ring = ring
        if check:
            bad = self.failures()
            if bad:
                raise NotFactorizing(f"composite differs from f at {bad[0]!r}")

    @staticmethod
    def _compose(outer, inner, x):
        out: dict = {}
        for y, c in inner.get(x, {}).items():
            for z, d in outer.get(y, {}).items():
                add_term(out, z, c * d)
        return out

    def failures(self) -> list[str]:
        bad = []
        for x in self.even.labels:
            if self._compose(self.psi, self.phi, x) != ({x: self.f} if self.f else {}):
                bad.append(x)
        for y in self.odd.labels:
            if self._compose(self.phi, self.psi, y) != ({y: self.f} if self.f else {}):
                bad.append(y)
        return bad


def matrix_factorization(sys: ShamashSystem) -> MatrixFactorization:
    """``phi = -sigma|_ev`` and ``psi = sigma|_odd`` for ``sigma = sigma^0 + sigma^1``.

    ``sigma^2 = -f`` because the higher relations force ``(sigma^1)^2 = 0``,
    so one sign flip makes both composites ``+f``.
    """
    for n in sys.sigma:
        if n >= 2:
            raise HigherSigmaNonzero(f"sigma^{n} is nonzero")
    M = sys.module
    even = M.restricted_to(l for l in M.labels if M.degree(l) % 2 == 0)
    odd = M.restricted_to(l for l in M.labels if M.degree(l) % 2)
    total: dict = {}
    for gm in sys.sigma.values():
        for x, img in gm.entries.items():
            for y, c in img.items():
                add_term(total.setdefault(x, {}), y, c)
    phi = {x: {y: -c for y, c in total.get(x, {}).items()} for x in even.labels}
    psi = {y: dict(total.get(y, {})) for y in odd.labels}
    return MatrixFactorization(even, odd, phi, psi, sys.f, sys.ring)
