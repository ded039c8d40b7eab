"""Representations of A-infinity algebras as adjoint families.

A representation of ``(A, nu)`` on a graded module ``M`` is stored through
its adjoints ``lambda^{n+1}: (Pi A)^{(x) n} (x) M -> M`` of degree -1, with
``lambda^1`` the differential of ``M``.  Entries are keyed by the pair
``(word, m)``.  Moving a map of degree ``p`` past a prefix word ``u`` costs
``(-1)^{p |u|}``; these are the only signs in the module.

Morphisms are adjoint families of degree 0 between two representations.
Their composition is the star composite, whose adjoint carries the global
sign ``(-1)^{|a| - 1}``; in particular the unit for it is the family with
first component ``-id`` (see :func:`identity_rep_morphism`).
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .cochains import Cochain, TypeMismatch, all_words, phi_inv_apply, word_degree
from .core.graded import DegreeMismatch, GradedMap, GradedModule, hom_label
from .core.report import Report, Violation
from .core.rings import Ring, ZZ
from .core.sparse import add_term, signed


class AdjointFamily:
    """Maps ``(Pi A)^{(x) (n-1)} (x) M -> target`` for ``1 <= n <= N``.

    ``algebra`` is the module ``A`` whose labels form the words (words may
    be restricted to a sub-alphabet such as ``A_bar``), ``source`` is the
    fiber ``M`` and ``target`` defaults to ``M``.
    """

    def __init__(self, algebra: GradedModule, source: GradedModule, max_arity: int,
                 maps: Mapping | None = None, ring: Ring = ZZ, degree: int = -1,
                 target: GradedModule | None = None, check: bool = True):
        self.algebra = algebra
        self.source = source
        self.target = source if target is None else target
        self.max_arity = max_arity
        self.ring = ring
        self.degree = degree
        clean: dict[int, dict] = {}
        for n, entries in (maps or {}).items():
            n = int(n)
            if check and not 1 <= n <= max_arity:
                raise DegreeMismatch(f"adjoint of arity {n} outside 1..{max_arity}")
            comp = {}
            for key, img in entries.items():
                word, m = tuple(key[0]), key[1]
                if check:
                    if len(word) != n - 1:
                        raise DegreeMismatch(f"lambda^{n} takes words of length {n - 1}")
                    expected = word_degree(algebra, word) + self.source.degree(m) + degree
                out = {}
                for b, c in img.items():
                    if check:
                        c = ring.coerce(c)
                        if c and self.target.degree(b) != expected:
                            raise DegreeMismatch(
                                f"({list(word)}, {m!r}) -> {b!r} breaks degree {degree}")
                    if c:
                        out[b] = c
                if out:
                    comp[(word, m)] = out
            if comp:
                clean[n] = comp
        self.maps = clean

    def __call__(self, word: Sequence[str], m: str) -> dict:
        comp = self.maps.get(len(word) + 1)
        if comp is None:
            return {}
        return comp.get((tuple(word), m), {})

    def apply(self, word: Sequence[str], vec: Mapping[str, object]) -> dict:
        """``lambda(word (x) v)`` for a linear combination ``v`` of fiber labels."""
        out: dict = {}
        for m, c in vec.items():
            for b, d in self(word, m).items():
                add_term(out, b, c * d)
        return out

    def apply_pairs(self, vec: Mapping[tuple, object]) -> dict:
        out: dict = {}
        for (w, m), c in vec.items():
            for b, d in self(w, m).items():
                add_term(out, b, c * d)
        return out

    def items(self):
        for n in sorted(self.maps):
            for (w, m), img in self.maps[n].items():
                yield n, w, m, img

    def differential(self) -> GradedMap:
        return GradedMap(self.source, self.target, self.degree,
                         {m: img for (w, m), img in self.maps.get(1, {}).items()}, self.ring)

    def like(self, maps) -> "AdjointFamily":
        return AdjointFamily(self.algebra, self.source, self.max_arity, maps, self.ring,
                             self.degree, self.target)

    def __add__(self, other: "AdjointFamily") -> "AdjointFamily":
        maps = {n: {k: dict(v) for k, v in comp.items()} for n, comp in self.maps.items()}
        for n, w, m, img in other.items():
            row = maps.setdefault(n, {}).setdefault((w, m), {})
            for b, c in img.items():
                add_term(row, b, c)
        return self.like(maps)

    def scale(self, c) -> "AdjointFamily":
        return self.like({n: {k: {b: c * d for b, d in v.items()} for k, v in comp.items()}
                          for n, comp in self.maps.items()})

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, AdjointFamily):
            return NotImplemented
        return (self.algebra == other.algebra and self.source == other.source
                and self.target == other.target and self.degree == other.degree
                and self.maps == other.maps)

    __hash__ = None

    def truncate(self, n: int) -> "AdjointFamily":
        return AdjointFamily(self.algebra, self.source, n,
                             {k: v for k, v in self.maps.items() if k <= n}, self.ring,
                             self.degree, self.target, check=False)

    def restrict(self, alphabet) -> "AdjointFamily":
        keep = set(alphabet)
        return self.like({n: {k: v for k, v in comp.items() if all(a in keep for a in k[0])}
                          for n, comp in self.maps.items()})


class RepMorphismFamily(AdjointFamily):
    """Degree 0 adjoints ``g^{n+1}: (Pi A)^{(x) n} (x) M -> N``."""

    def __init__(self, algebra, source, target, max_arity, maps=None, ring=ZZ, check=True):
        super().__init__(algebra, source, max_arity, maps, ring, 0, target, check)

    def like(self, maps):
        return RepMorphismFamily(self.algebra, self.source, self.target, self.max_arity, maps,
                                 self.ring)


def identity_rep_morphism(lam: AdjointFamily, sign: int = -1) -> RepMorphismFamily:
    """The identity morphism of ``(M, lambda)``: ``g^1 = sign * id_M``, rest 0.

    The default ``-id`` is the unit for :func:`star_compose`; ``+id`` is
    equally a morphism and is what :func:`pushforward_representation` wants.
    """
    c = lam.ring.coerce(sign)
    return RepMorphismFamily(lam.algebra, lam.source, lam.source, lam.max_arity,
                             {1: {((), m): {m: c} for m in lam.source.labels}}, lam.ring)


# --------------------------------------------------------------------------
# cochains into End M, pointwise


def adjoint_convert(direction: str, obj, fiber: GradedModule | None = None,
                    max_arity: int | None = None):
    """Between adjoint families and cochains ``p`` into ``End M``.

    ``p^n(w)`` is an element of ``Pi End M`` written in the basis of
    elementary maps ``"y<-x"`` (see :func:`hom_module`); the adjoint is
    ``lambda^{n+1}(w (x) m) = (s^{-1} p^n(w))(m)``.  ``p^n`` is stored as a
    dict ``{n: {word: {hom_label: coeff}}}`` with ``n = 0`` allowed (the
    differential).  No signs occur: both ``p`` and ``s^{-1}`` act on the left
    factor only.
    """
    if direction == "to_adjoint":
        p, algebra, ring, degree = obj["p"], obj["algebra"], obj["ring"], obj["degree"]
        M = fiber
        index = {hom_label(x, y): (x, y) for x in M.labels for y in M.labels}
        maps: dict = {}
        for n, comp in p.items():
            for w, elt in comp.items():
                for lab, c in elt.items():
                    x, y = index[lab]
                    row = maps.setdefault(int(n) + 1, {}).setdefault((tuple(w), x), {})
                    add_term(row, y, c)
        N = max_arity if max_arity is not None else max(maps, default=1)
        return AdjointFamily(algebra, M, N, maps, ring, degree)
    if direction == "to_cochain":
        lam = obj
        p: dict = {}
        for n, w, m, img in lam.items():
            elt = p.setdefault(n - 1, {}).setdefault(w, {})
            for y, c in img.items():
                add_term(elt, hom_label(m, y), c)
        return {"p": p, "algebra": lam.algebra, "ring": lam.ring, "degree": lam.degree}
    raise ValueError(f"unknown direction {direction!r}")


# --------------------------------------------------------------------------
# checks


def _fiber_words(lam: AdjointFamily, alphabet, max_arity):
    letters = lam.algebra.labels if alphabet is None else tuple(alphabet)
    N = lam.max_arity if max_arity is None else max_arity
    return N, all_words(letters, N - 1, 0)


def _staircase(lam: AdjointFamily, w: tuple, m: str, out: dict):
    """``sum_i (-1)^{|lambda| |w[:i]|} lambda(w[:i] (x) lambda(w[i:] (x) m))``."""
    prefix = 0
    for i in range(len(w) + 1):
        inner = lam(w[i:], m)
        if inner:
            for b, c in lam.apply(w[:i], inner).items():
                add_term(out, b, signed(c, lam.degree * prefix))
        if i < len(w):
            prefix += lam.algebra.degree(w[i]) + 1


def _insertion_term(lam: AdjointFamily, d: Cochain, w: tuple, m: str, out: dict):
    if not w:
        return
    for v, c in phi_inv_apply(d, w, check=False).items():
        for b, e in lam(v, m).items():
            add_term(out, b, c * e)


def check_representation(lam: AdjointFamily, nu: Cochain, max_arity: int | None = None,
                         verbose: bool = False, alphabet=None) -> Report:
    """For every word ``w`` of arity ``n <= N - 1`` and fiber label ``m``:
    ``lambda(Phi^{-1}(nu)(w) (x) m) + staircase(w, m) = 0``."""
    if nu.source != lam.algebra:
        raise TypeMismatch("representation and structure live on different modules")
    N, ws = _fiber_words(lam, alphabet, max_arity)
    rep = Report(N, verbose)
    for w in ws:
        for m in lam.source.labels:
            r: dict = {}
            _insertion_term(lam, nu, w, m, r)
            _staircase(lam, w, m, r)
            if r:
                rep.add(Violation(len(w), w, r, "representation", m))
    return rep


def check_su_representation(lam_bar: AdjointFamily, alg, max_arity: int | None = None,
                            verbose: bool = False) -> Report:
    """The strictly unital version over words in ``A_bar``: the insertion
    term uses ``mu_bar`` and the curvature adds ``s^{-1}h(w) . m``."""
    red = alg.carrier.reduced_labels
    u = alg.unit
    N, ws = _fiber_words(lam_bar, red, max_arity)
    rep = Report(N, verbose)
    for w in ws:
        for m in lam_bar.source.labels:
            r: dict = {}
            _insertion_term(lam_bar, alg.mu_bar, w, m, r)
            _staircase(lam_bar, w, m, r)
            if w:
                c = alg.h(w).get(u)
                if c:
                    add_term(r, m, c)
            if r:
                rep.add(Violation(len(w), w, r, "su_representation", m))
    return rep


def star_compose(alpha: AdjointFamily, beta: AdjointFamily) -> AdjointFamily:
    """Adjoint of ``alpha * beta``:
    ``(-1)^{|a| - 1} sum_{uv = w} (-1)^{|b||u|} a(u (x) b(v (x) m))``."""
    if alpha.source != beta.target or alpha.algebra != beta.algebra:
        raise TypeMismatch("star composition needs composable families")
    if alpha.max_arity != beta.max_arity:
        raise TypeMismatch("truncations differ")
    N = alpha.max_arity
    glob = alpha.degree - 1
    maps: dict = {}
    for w in all_words(alpha.algebra.labels, N - 1, 0):
        for m in beta.source.labels:
            out: dict = {}
            prefix = 0
            for i in range(len(w) + 1):
                inner = beta(w[i:], m)
                if inner:
                    for b, c in alpha.apply(w[:i], inner).items():
                        add_term(out, b, signed(c, beta.degree * prefix + glob))
                if i < len(w):
                    prefix += alpha.algebra.degree(w[i]) + 1
            if out:
                maps.setdefault(len(w) + 1, {})[(w, m)] = out
    fam_cls = RepMorphismFamily if alpha.degree + beta.degree == 0 else None
    if fam_cls is not None:
        return RepMorphismFamily(alpha.algebra, beta.source, alpha.target, N, maps, alpha.ring)
    return AdjointFamily(alpha.algebra, beta.source, N, maps, alpha.ring,
                         alpha.degree + beta.degree, alpha.target)


def check_rep_morphism(g: AdjointFamily, lam_m: AdjointFamily, lam_n: AdjointFamily,
                       nu: Cochain | None = None, alg=None, su: bool = False,
                       max_arity: int | None = None, verbose: bool = False) -> Report:
    """For every word ``w`` and fiber label ``m``::

        sum_i lambda_N(w[:i] (x) g(w[i:] (x) m))
          - g(Phi^{-1}(d)(w) (x) m)
          - sum_i (-1)^{|w[:i]|} g(w[:i] (x) lambda_M(w[i:] (x) m)) = 0

    with ``d = nu`` over all words, or with ``su=True`` ``d = mu_bar`` of
    ``alg`` over words in ``A_bar``.
    """
    if g.degree != 0:
        raise DegreeMismatch("morphism adjoints have degree 0")
    if su:
        d, alphabet = alg.mu_bar, alg.carrier.reduced_labels
    else:
        d, alphabet = nu, None
    N, ws = _fiber_words(g, alphabet, max_arity)
    rep = Report(N, verbose)
    for w in ws:
        for m in g.source.labels:
            r: dict = {}
            for i in range(len(w) + 1):
                inner = g(w[i:], m)
                if inner:
                    for b, c in lam_n.apply(w[:i], inner).items():
                        add_term(r, b, c)
            if w:
                for v, c in phi_inv_apply(d, w, check=False).items():
                    for b, e in g(v, m).items():
                        add_term(r, b, -(c * e))
            prefix = 0
            for i in range(len(w) + 1):
                inner = lam_m(w[i:], m)
                if inner:
                    for b, c in g.apply(w[:i], inner).items():
                        add_term(r, b, signed(-c, lam_m.degree * prefix))
                if i < len(w):
                    prefix += g.algebra.degree(w[i]) + 1
            if r:
                rep.add(Violation(len(w), w, r, "rep_morphism", m))
    return rep


# --------------------------------------------------------------------------
# constructions


def regular_representation(nu: Cochain, alphabet=None) -> AdjointFamily:
    """``M = Pi A`` with ``lambda^{n+1}(w (x) [m]) = nu^{n+1}[w|m]``.

    With ``alphabet = A_bar`` this is the strictly unital regular
    representation of a split-unit algebra.
    """
    A = nu.source
    M = A.shifted(1)
    letters = A.labels if alphabet is None else tuple(alphabet)
    maps: dict = {}
    for w in all_words(letters, nu.max_arity - 1, 0):
        for m in A.labels:
            img = nu(w + (m,))
            if img:
                maps.setdefault(len(w) + 1, {})[(w, m)] = dict(img)
    return AdjointFamily(A, M, nu.max_arity, maps, nu.ring)


def pushforward_representation(lam: AdjointFamily, d: Cochain, g: RepMorphismFamily,
                               alphabet=None) -> AdjointFamily:
    """The family ``lambda_N`` on the same fiber making ``g`` a morphism.

    Requires ``g^1 = id``; solves
    ``sum_i lambda_N(w[:i] (x) g(w[i:] (x) m)) = g(D_M(w (x) m))`` by
    induction on the arity of ``w``.
    """
    M = lam.source
    one = lam.ring.one()
    for m in M.labels:
        if g((), m) != {m: one}:
            raise TypeMismatch("pushforward needs g^1 = id")
    letters = lam.algebra.labels if alphabet is None else tuple(alphabet)
    N = lam.max_arity
    maps: dict = {}
    built = lam.like({})
    for n in range(0, N):
        comp = {}
        for w in all_words(letters, n, n):
            for m in M.labels:
                r: dict = {}
                if w:
                    for v, c in phi_inv_apply(d, w, check=False).items():
                        for b, e in g(v, m).items():
                            add_term(r, b, c * e)
                prefix = 0
                for i in range(len(w) + 1):
                    inner = lam(w[i:], m)
                    if inner:
                        for b, c in g.apply(w[:i], inner).items():
                            add_term(r, b, signed(c, lam.degree * prefix))
                    if i < len(w):
                        prefix += lam.algebra.degree(w[i]) + 1
                for i in range(len(w)):
                    inner = g(w[i:], m)
                    if inner:
                        for b, c in built.apply(w[:i], inner).items():
                            add_term(r, b, -c)
                if r:
                    comp[(w, m)] = r
        if comp:
            maps[n + 1] = comp
        built = lam.like(maps)
    return built


class ShamashSystem:
    """Endomorphisms ``sigma^n`` of degree ``2n - 1`` of ``M`` with
    ``sum_{i=0}^{n} sigma^i sigma^{n-i} = -f [n = 1]`` for ``0 <= n < N``."""

    def __init__(self, f, module: GradedModule, sigma: Mapping[int, Mapping],
                 max_arity: int, ring: Ring = ZZ, validate: bool = True):
        self.f = ring.coerce(f)
        self.module = module
        self.ring = ring
        self.max_arity = max_arity
        self.sigma: dict[int, GradedMap] = {}
        for n, entries in sigma.items():
            n = int(n)
            gm = entries if isinstance(entries, GradedMap) else \
                GradedMap(module, module, 2 * n - 1, entries, ring)
            if gm.degree != 2 * n - 1:
                raise DegreeMismatch(f"sigma^{n} must have degree {2 * n - 1}")
            if not gm.is_zero:
                self.sigma[n] = gm
        if validate:
            rep = self.relations()
            if not rep.valid:
                raise ValueError(f"Shamash relation fails at n = {rep.violations[0].arity}")

    def sigma_at(self, n: int) -> GradedMap:
        return self.sigma.get(n) or GradedMap.zero(self.module, self.module, 2 * n - 1, self.ring)

    def relations(self, verbose: bool = False) -> Report:
        rep = Report(self.max_arity, verbose)
        for n in range(self.max_arity):
            for x in self.module.labels:
                r: dict = {}
                for i in range(n + 1):
                    for b, c in self.sigma_at(i)(self.sigma_at(n - i).image(x)).items():
                        add_term(r, b, c)
                if n == 1:
                    add_term(r, x, self.f)
                if r:
                    rep.add(Violation(n, ("e",) * n, r, "shamash", x))
        return rep


def shamash_convert(direction: str, obj, alg=None, letter: str = "e"):
    """``sigma^n(x) = lambda_bar^{n+1}([e|...|e] (x) x)`` through the
    canonical ``M = k[e]^{(x) n} (x) M``."""
    if direction == "to_adjoint":
        sys: ShamashSystem = obj
        A = alg.module if alg is not None else GradedModule({0: ["1"], 1: [letter]})
        maps: dict = {}
        for n, gm in sys.sigma.items():
            if n + 1 > sys.max_arity:
                continue
            for x, img in gm.entries.items():
                maps.setdefault(n + 1, {})[((letter,) * n, x)] = dict(img)
        return AdjointFamily(A, sys.module, sys.max_arity, maps, sys.ring)
    if direction == "to_shamash":
        lam: AdjointFamily = obj
        sigma: dict = {}
        for n, w, m, img in lam.items():
            if set(w) - {letter}:
                raise TypeMismatch("a Shamash family only sees words in the letter e")
            sigma.setdefault(n - 1, {})[m] = dict(img)
        # h^1[e] = f [1]
        f = alg.h((letter,)).get(alg.unit, 0) if alg is not None else 0
        return ShamashSystem(f, lam.source, sigma, lam.max_arity, lam.ring, validate=False)
    raise ValueError(f"unknown direction {direction!r}")
