"""Hochschild cochains and the operations of the Gerstenhaber calculus.

A cochain of degree ``d`` in ``Hoch(A, B)`` is a family of maps
``(Pi A)^{(x) n} -> Pi B`` for ``1 <= n <= N``.  It is stored sparsely:
``components[n][word] = {output_label: coeff}``, where ``word`` is a tuple
of basis labels of ``A`` read as the bar word ``[a_1|...|a_n]`` and the
output label ``b`` stands for ``[b]`` in ``Pi B``.  With ``|[a]| = |a| + 1``
the degree constraint on an entry is

    |[a_1]| + ... + |[a_n]| + d = |[b]|.

Coderivations and coalgebra morphisms of ``Tco(Pi A)`` are never stored;
they are evaluated on demand through :func:`phi_inv_apply` and
:func:`psi_inv_apply`.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .core.graded import ArityMismatch, DegreeMismatch, GradedModule
from .core.rings import Ring, ZZ
from .core.sparse import add_term, signed


class CochainError(ValueError):
    pass


class TypeMismatch(CochainError):
    pass


class TruncationMismatch(CochainError):
    pass


class ArityOutOfRange(CochainError):
    pass


class NonzeroDegree(CochainError):
    pass


Word = tuple


def shifted_degree(module: GradedModule, label: str) -> int:
    return module.degree(label) + 1


def word_degree(module: GradedModule, word: Sequence[str]) -> int:
    """Degree of ``[a_1|...|a_n]`` in ``(Pi A)^{(x) n}``."""
    return sum(module.degree(a) + 1 for a in word)


def words(alphabet: Sequence[str], n: int) -> Iterator[Word]:
    return product(tuple(alphabet), repeat=n)


def all_words(alphabet: Sequence[str], max_arity: int, min_arity: int = 1) -> Iterator[Word]:
    for n in range(min_arity, max_arity + 1):
        yield from words(alphabet, n)


def _same_ring(*rings: Ring) -> Ring:
    first = rings[0]
    for r in rings[1:]:
        if r != first:
            raise TypeMismatch(f"cochains over different rings: {first.spec} and {r.spec}")
    return first


class Cochain:
    """An arity-truncated element of ``Hoch(source, target)``.

    Components of arity above ``max_arity`` are zero by convention, and
    evaluating on such a word returns zero.
    """

    __slots__ = ("source", "target", "degree", "max_arity", "ring", "components")

    def __init__(self, source: GradedModule, target: GradedModule, degree: int,
                 max_arity: int, components: Mapping | None = None, ring: Ring = ZZ,
                 check: bool = True):
        if max_arity < 1:
            raise ArityOutOfRange(f"max_arity must be positive, got {max_arity}")
        self.source = source
        self.target = target
        self.degree = degree
        self.max_arity = max_arity
        self.ring = ring
        comps: dict[int, dict[Word, dict[str, object]]] = {}
        for n, entries in (components or {}).items():
            n = int(n)
            if check and not 1 <= n <= max_arity:
                raise ArityOutOfRange(f"component of arity {n} outside 1..{max_arity}")
            comp = {}
            for word, image in entries.items():
                word = tuple(word)
                if check:
                    if len(word) != n:
                        raise ArityMismatch(f"word {word} filed under arity {n}")
                    wd = word_degree(source, word) + degree
                img = {}
                for b, c in image.items():
                    if check:
                        c = ring.coerce(c)
                        if c and shifted_degree(target, b) != wd:
                            raise DegreeMismatch(
                                f"entry {list(word)} -> {b!r} violates the degree of a "
                                f"degree {degree} cochain")
                    if c:
                        img[b] = c
                if img:
                    comp[word] = img
            if comp:
                comps[n] = comp
        self.components = comps

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, source, target, degree, max_arity, ring=ZZ) -> "Cochain":
        return cls(source, target, degree, max_arity, {}, ring, check=False)

    @classmethod
    def from_function(cls, source: GradedModule, target: GradedModule, degree: int,
                      max_arity: int, fn: Callable[[Word], Mapping[str, object]],
                      ring: Ring = ZZ, alphabet: Sequence[str] | None = None,
                      min_arity: int = 1) -> "Cochain":
        """Tabulate ``fn`` on every word over ``alphabet`` (default: all of
        ``source``), skipping words whose degree admits no output."""
        letters = tuple(source.labels if alphabet is None else alphabet)
        out_degrees = {target.degree(b) + 1 for b in target.labels}
        comps: dict[int, dict] = {}
        for n in range(min_arity, max_arity + 1):
            comp = {}
            for w in words(letters, n):
                if word_degree(source, w) + degree not in out_degrees:
                    continue
                img = {b: c for b, c in fn(w).items() if c}
                if img:
                    comp[w] = img
            if comp:
                comps[n] = comp
        return cls(source, target, degree, max_arity, comps, ring, check=False)

    @classmethod
    def arity_one(cls, gmap, max_arity: int, ring: Ring = ZZ) -> "Cochain":
        """The cochain ``s f s^{-1}`` concentrated in arity one."""
        comp = {(x,): dict(img) for x, img in gmap.entries.items()}
        return cls(gmap.source, gmap.target, gmap.degree, max_arity, {1: comp}, ring)

    @classmethod
    def identity(cls, module: GradedModule, max_arity: int, ring: Ring = ZZ) -> "Cochain":
        one = ring.one()
        return cls(module, module, 0, max_arity, {1: {(x,): {x: one} for x in module.labels}},
                   ring, check=False)

    # evaluation ---------------------------------------------------------

    def __call__(self, word: Sequence[str]) -> dict:
        comp = self.components.get(len(word))
        if comp is None:
            return {}
        return comp.get(tuple(word), {})

    def apply(self, vec: Mapping[Word, object]) -> dict:
        """Evaluate on a linear combination of words."""
        out: dict = {}
        for w, c in vec.items():
            for b, d in self(w).items():
                add_term(out, b, c * d)
        return out

    def items(self) -> Iterator[tuple[int, Word, dict]]:
        for n in sorted(self.components):
            for w, img in self.components[n].items():
                yield n, w, img

    def component(self, n: int) -> dict:
        return self.components.get(n, {})

    @property
    def is_zero(self) -> bool:
        return not self.components

    @property
    def is_endo(self) -> bool:
        return self.source == self.target

    @property
    def support_arities(self) -> list[int]:
        return sorted(self.components)

    # linear structure ---------------------------------------------------

    def _parallel(self, other: "Cochain"):
        if not isinstance(other, Cochain):
            raise TypeMismatch(f"expected a Cochain, got {type(other).__name__}")
        if self.source != other.source or self.target != other.target:
            raise TypeMismatch("cochains between different modules")
        if self.degree != other.degree:
            raise TypeMismatch(f"degrees {self.degree} and {other.degree} differ")
        if self.max_arity != other.max_arity:
            raise TruncationMismatch(f"truncations {self.max_arity} and {other.max_arity}")
        _same_ring(self.ring, other.ring)

    def _combine(self, other: "Cochain", sign: int) -> "Cochain":
        self._parallel(other)
        comps = {n: {w: dict(img) for w, img in comp.items()} for n, comp in self.components.items()}
        for n, w, img in other.items():
            row = comps.setdefault(n, {}).setdefault(w, {})
            for b, c in img.items():
                add_term(row, b, c if sign > 0 else -c)
        return Cochain(self.source, self.target, self.degree, self.max_arity, comps,
                       self.ring, check=False)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Cochain":
        comps = {n: {w: {b: c * d for b, d in img.items()} for w, img in comp.items()}
                 for n, comp in self.components.items()}
        return Cochain(self.source, self.target, self.degree, self.max_arity, comps,
                       self.ring, check=False)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.degree == other.degree and self.max_arity == other.max_arity
                and self.components == other.components)

    __hash__ = None

    def __repr__(self):
        terms = sum(len(c) for c in self.components.values())
        return (f"Cochain(degree={self.degree}, max_arity={self.max_arity}, "
                f"arities={self.support_arities}, words={terms})")

    # reshaping ----------------------------------------------------------

    def truncate(self, n: int) -> "Cochain":
        """Forget components of arity above ``n``."""
        return Cochain(self.source, self.target, self.degree, n,
                       {k: v for k, v in self.components.items() if k <= n}, self.ring,
                       check=False)

    def widen(self, n: int) -> "Cochain":
        """The same cochain viewed at a larger truncation (new arities zero)."""
        if n < self.max_arity:
            raise TruncationMismatch("widen cannot lower the truncation; use truncate")
        return Cochain(self.source, self.target, self.degree, n, self.components, self.ring,
                       check=False)

    def restrict(self, alphabet: Iterable[str]) -> "Cochain":
        """Keep only words all of whose letters lie in ``alphabet``."""
        keep = set(alphabet)
        comps = {n: {w: img for w, img in comp.items() if all(a in keep for a in w)}
                 for n, comp in self.components.items()}
        return Cochain(self.source, self.target, self.degree, self.max_arity, comps,
                       self.ring, check=False)

    def project(self, labels: Iterable[str]) -> "Cochain":
        """Keep only the output coordinates in ``labels``."""
        keep = set(labels)
        comps = {n: {w: {b: c for b, c in img.items() if b in keep} for w, img in comp.items()}
                 for n, comp in self.components.items()}
        return Cochain(self.source, self.target, self.degree, self.max_arity, comps,
                       self.ring, check=False)

    def retarget(self, target: GradedModule) -> "Cochain":
        """The same entries viewed in a target containing all output labels."""
        return Cochain(self.source, target, self.degree, self.max_arity, self.components,
                       self.ring)

    def with_ring(self, ring: Ring) -> "Cochain":
        comps = {n: {w: {b: ring.coerce(c) for b, c in img.items()} for w, img in comp.items()}
                 for n, comp in self.components.items()}
        return Cochain(self.source, self.target, self.degree, self.max_arity, comps, ring,
                       check=False)

    def map_coefficients(self, fn: Callable, ring: Ring) -> "Cochain":
        comps = {n: {w: {b: fn(c) for b, c in img.items()} for w, img in comp.items()}
                 for n, comp in self.components.items()}
        return Cochain(self.source, self.target, self.degree, self.max_arity, comps, ring)

    def mentions(self, label: str) -> bool:
        """Whether some input word contains ``label``."""
        return any(label in w for _, w, _ in self.items())


class CounitalCochain:
    """A cochain together with its arity-zero component, an element of
    ``Pi target`` of the cochain degree."""

    def __init__(self, base: Cochain, arity_zero: Mapping[str, object] | None = None):
        self.base = base
        zero = {}
        for b, c in (arity_zero or {}).items():
            c = base.ring.coerce(c)
            if not c:
                continue
            if shifted_degree(base.target, b) != base.degree:
                raise DegreeMismatch(f"arity-zero term {b!r} has the wrong degree")
            zero[b] = c
        self.arity_zero = zero

    @property
    def degree(self):
        return self.base.degree

    @property
    def max_arity(self):
        return self.base.max_arity

    def __call__(self, word):
        if len(word) == 0:
            return dict(self.arity_zero)
        return self.base(word)

    def __eq__(self, other):
        if not isinstance(other, CounitalCochain):
            return NotImplemented
        return self.base == other.base and self.arity_zero == other.arity_zero

    __hash__ = None


class Functional:
    """A family of linear functionals ``(Pi A)^{(x) n} -> k`` of fixed degree."""

    __slots__ = ("source", "degree", "max_arity", "ring", "components")

    def __init__(self, source: GradedModule, degree: int, max_arity: int,
                 components: Mapping | None = None, ring: Ring = ZZ, check: bool = True):
        self.source = source
        self.degree = degree
        self.max_arity = max_arity
        self.ring = ring
        comps: dict[int, dict[Word, object]] = {}
        for n, entries in (components or {}).items():
            comp = {}
            for w, c in entries.items():
                w = tuple(w)
                if check:
                    c = ring.coerce(c)
                    if c and word_degree(source, w) + degree != 0:
                        raise DegreeMismatch(
                            f"functional of degree {degree} is nonzero on {list(w)}")
                if c:
                    comp[w] = c
            if comp:
                comps[int(n)] = comp
        self.components = comps

    def __call__(self, word):
        comp = self.components.get(len(word))
        if comp is None:
            return self.ring.zero()
        return comp.get(tuple(word), self.ring.zero())

    def apply(self, vec: Mapping[Word, object]):
        total = self.ring.zero()
        for w, c in vec.items():
            v = self(w)
            if v:
                total = total + c * v
        return total

    def items(self):
        for n in sorted(self.components):
            for w, c in self.components[n].items():
                yield n, w, c

    @property
    def is_zero(self):
        return not self.components

    def scale(self, c):
        return type(self)._rebuild(self, {n: {w: c * v for w, v in comp.items()}
                                          for n, comp in self.components.items()})

    def _rebuild(self, comps):
        return Functional(self.source, self.degree, self.max_arity, comps, self.ring)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        return (self.source == other.source and self.degree == other.degree
                and self.components == other.components)

    __hash__ = None

    def truncate(self, n):
        f = self._rebuild({k: v for k, v in self.components.items() if k <= n})
        f.max_arity = n
        return f

    @classmethod
    def from_cochain(cls, c: Cochain, unit: str, sign: int = 1) -> "Functional":
        """``sign * s^{-1} c``: read off the coefficient of ``[unit]``."""
        comps = {}
        for n, w, img in c.items():
            if unit in img:
                comps.setdefault(n, {})[w] = img[unit] if sign > 0 else -img[unit]
        return Functional(c.source, c.degree - 1, c.max_arity, comps, c.ring)

    def to_cochain(self, target: GradedModule, unit: str, sign: int = 1) -> Cochain:
        """``sign * s phi`` as a cochain with values in ``k [unit]``."""
        comps = {}
        for n, w, c in self.items():
            comps.setdefault(n, {})[w] = {unit: c if sign > 0 else -c}
        return Cochain(self.source, target, self.degree + 1, self.max_arity, comps, self.ring)


class CurvatureMap(Functional):
    """The curvature ``xi = -s^{-1} h`` of a curved bar construction."""

    def __init__(self, source, max_arity, components=None, ring=ZZ, check=True):
        super().__init__(source, -2, max_arity, components, ring, check)

    def _rebuild(self, comps):
        return CurvatureMap(self.source, self.max_arity, comps, self.ring)

    @classmethod
    def from_h(cls, h: Cochain, unit: str) -> "CurvatureMap":
        if h.degree != -1:
            raise DegreeMismatch(f"h must have degree -1, got {h.degree}")
        f = Functional.from_cochain(h, unit, sign=-1)
        return cls(h.source, h.max_arity, f.components, h.ring, check=False)

    def to_h(self, target: GradedModule, unit: str) -> Cochain:
        return self.to_cochain(target, unit, sign=-1)

    def suspended(self, target: GradedModule, unit: str) -> Cochain:
        """``s xi``, a degree -1 cochain with values in ``k [unit]``."""
        return self.to_cochain(target, unit, sign=1)


# --------------------------------------------------------------------------
# Coderivations and the Gerstenhaber product


def _check_arity(n: int, max_arity: int, lo: int = 1):
    if not lo <= n <= max_arity:
        raise ArityOutOfRange(f"word of arity {n} outside {lo}..{max_arity}")


def phi_inv_apply(f: Cochain, w: Sequence[str], check: bool = True) -> dict:
    """The coderivation ``Phi^{-1}(f)`` on the word ``w``.

    ``sum_{j, i} (1^{(x) j} (x) f^i (x) 1^{(x) n-i-j})(w)``; moving ``f``
    past ``w[:j]`` costs ``(-1)^{|f| |w[:j]|}``.
    """
    w = tuple(w)
    n = len(w)
    if check:
        _check_arity(n, f.max_arity)
    out: dict = {}
    prefix = 0
    for j in range(n):
        for i in range(1, n - j + 1):
            img = f(w[j:j + i])
            if not img:
                continue
            flip = (f.degree * prefix) % 2
            head, tail = w[:j], w[j + i:]
            for b, c in img.items():
                add_term(out, head + (b,) + tail, -c if flip else c)
        prefix += f.source.degree(w[j]) + 1
    return out


def phi_inv_apply_vec(f: Cochain, vec: Mapping[Word, object], check: bool = True) -> dict:
    out: dict = {}
    for w, c in vec.items():
        for v, d in phi_inv_apply(f, w, check).items():
            add_term(out, v, c * d)
    return out


def compose_at(g: Cochain, f: Cochain, w: Sequence[str]) -> dict:
    """``(g o f)(w) = g(Phi^{-1}(f)(w))``."""
    return g.apply(phi_inv_apply(f, w, check=False))


def _check_product_types(g: Cochain, f: Cochain):
    if not isinstance(g, Cochain) or not isinstance(f, Cochain):
        raise TypeMismatch("Gerstenhaber product takes two cochains")
    if f.source != f.target or f.source != g.source:
        raise TypeMismatch("g o f needs f endo-typed on the source of g")
    if f.max_arity != g.max_arity:
        raise TruncationMismatch(f"truncations {g.max_arity} and {f.max_arity} differ")
    _same_ring(g.ring, f.ring)


def gerst_product(g: Cochain, f: Cochain, alphabet: Sequence[str] | None = None) -> Cochain:
    """The Gerstenhaber product ``g o f``.

    With ``alphabet`` the result is computed only on words over it (exact
    restriction, not an approximation).
    """
    _check_product_types(g, f)
    return Cochain.from_function(g.source, g.target, g.degree + f.degree, g.max_arity,
                                 lambda w: compose_at(g, f, w), g.ring, alphabet)


def gerst_bracket(x: Cochain, y: Cochain, alphabet: Sequence[str] | None = None) -> Cochain:
    """``[x, y] = x o y - (-1)^{|x||y|} y o x``."""
    if not (x.is_endo and y.is_endo and x.source == y.source):
        raise TypeMismatch("the bracket needs endo-typed cochains on one module")
    _check_product_types(x, y)
    sign = -1 if (x.degree * y.degree) % 2 else 1

    def at(w):
        out = compose_at(x, y, w)
        for b, c in compose_at(y, x, w).items():
            add_term(out, b, -c if sign > 0 else c)
        return out

    return Cochain.from_function(x.source, x.target, x.degree + y.degree, x.max_arity, at,
                                 x.ring, alphabet)


def bracket_at(x: Cochain, y: Cochain, w: Sequence[str]) -> dict:
    out = compose_at(x, y, w)
    odd = (x.degree * y.degree) % 2
    for b, c in compose_at(y, x, w).items():
        add_term(out, b, c if odd else -c)
    return out


# --------------------------------------------------------------------------
# Coalgebra morphisms and the star product


def _psi_full(g: Cochain, w: Word) -> dict:
    # suffix recursion: Psi(w[s:]) = sum_i g(w[s:s+i]) (x) Psi(w[s+i:])
    n = len(w)
    memo: dict[int, dict] = {n: {(): 1}}
    for start in range(n - 1, -1, -1):
        acc: dict = {}
        for i in range(1, n - start + 1):
            img = g(w[start:start + i])
            if not img:
                continue
            rest = memo[start + i]
            for b, c in img.items():
                for tail, d in rest.items():
                    add_term(acc, (b,) + tail, c * d)
        memo[start] = acc
    return memo[0]


def psi_inv_apply(g: Cochain, w: Sequence[str], k: int | None = None) -> dict:
    """``pi_k Psi^{-1}(g)`` on ``w``: the sum over compositions
    ``i_1 + ... + i_k = n`` of ``g^{i_1} (x) ... (x) g^{i_k}``.

    ``g`` has degree zero, so no Koszul signs arise.  With ``k=None`` all
    output arities are returned together.
    """
    if g.degree != 0:
        raise NonzeroDegree(f"Psi^-1 is defined in degree 0, got {g.degree}")
    if k is not None and k < 1:
        raise ArityOutOfRange(f"output arity must be positive, got {k}")
    w = tuple(w)
    if not w:
        return {(): 1}
    full = _psi_full(g, w)
    if k is None:
        return full
    return {v: c for v, c in full.items() if len(v) == k}


def psi_inv_apply_vec(g: Cochain, vec: Mapping[Word, object]) -> dict:
    out: dict = {}
    for w, c in vec.items():
        for v, d in psi_inv_apply(g, w).items():
            add_term(out, v, c * d)
    return out


def star_at(h: Cochain, g: Cochain, w: Sequence[str]) -> dict:
    return h.apply(psi_inv_apply(g, w))


def star(h: Cochain, g: Cochain, alphabet: Sequence[str] | None = None) -> Cochain:
    """``h * g = h Psi^{-1}(g)``."""
    if g.degree != 0:
        raise NonzeroDegree(f"h * g needs g of degree 0, got {g.degree}")
    if h.source != g.target:
        raise TypeMismatch("h * g needs h defined on the target of g")
    if h.max_arity != g.max_arity:
        raise TruncationMismatch(f"truncations {h.max_arity} and {g.max_arity} differ")
    _same_ring(h.ring, g.ring)
    return Cochain.from_function(g.source, h.target, h.degree, g.max_arity,
                                 lambda w: star_at(h, g, w), g.ring, alphabet)


# --------------------------------------------------------------------------
# ad of a functional


def ad_apply(xi: Functional, w: Sequence[str]) -> dict:
    """``((xi (x) 1) - (1 (x) xi)) Delta`` on ``w``, using ``k (x) C = C = C (x) k``.

    ``Delta`` is the reduced deconcatenation, so only proper splittings occur.
    """
    w = tuple(w)
    out: dict = {}
    prefix = 0
    for i in range(1, len(w)):
        prefix += xi.source.degree(w[i - 1]) + 1
        left = xi(w[:i])
        if left:
            add_term(out, w[i:], left)
        right = xi(w[i:])
        if right:
            add_term(out, w[:i], signed(-right, xi.degree * prefix))
    return out


def ad_xi_apply(xi: CurvatureMap, w: Sequence[str]) -> dict:
    if len(w) < 1:
        raise ArityOutOfRange("ad xi is applied to words of positive arity")
    return ad_apply(xi, w)


def ad_apply_vec(xi: Functional, vec: Mapping[Word, object]) -> dict:
    out: dict = {}
    for w, c in vec.items():
        for v, d in ad_apply(xi, w).items():
            add_term(out, v, c * d)
    return out


def square_functional(alpha: Functional, w: Sequence[str]):
    """``alpha^2 = (alpha (x) alpha) Delta`` on ``w``."""
    w = tuple(w)
    total = alpha.ring.zero()
    prefix = 0
    for i in range(1, len(w)):
        prefix += alpha.source.degree(w[i - 1]) + 1
        a, b = alpha(w[:i]), alpha(w[i:])
        if a and b:
            total = total + signed(a * b, alpha.degree * prefix)
    return total
