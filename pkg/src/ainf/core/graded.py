"""Finite-rank free graded modules, graded maps, suspension and the Koszul
sign rule.

Grading is homological throughout: differentials lower degree by one.
Basis labels are opaque strings; the degree of a label is explicit metadata
of the module and is never read off the label itself.

The sign rule used everywhere is

    (f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y)

and all diagrammatic identities in this package are evaluated as explicit
composites of :func:`tensor_eval` and :func:`transport_shift`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .rings import Ring
from .sparse import add_term, signed


class GradedError(ValueError):
    pass


class UnknownLabel(GradedError, KeyError):
    pass


class DegreeMismatch(GradedError):
    pass


class ArityMismatch(GradedError):
    pass


class ShapeMismatch(GradedError):
    pass


class GradedModule:
    """A free graded module with a finite labeled basis.

    >>> A = GradedModule({0: ["1"], 1: ["e"]})
    >>> A.degree("e")
    1
    """

    def __init__(self, basis: Mapping[int, Sequence[str]] | None = None):
        degrees: dict[int, tuple[str, ...]] = {}
        label_degree: dict[str, int] = {}
        for deg, labels in sorted((basis or {}).items(), key=lambda kv: int(kv[0])):
            deg = int(deg)
            labels = tuple(labels)
            if not labels:
                continue
            for label in labels:
                if not isinstance(label, str):
                    raise GradedError(f"basis labels must be strings, got {label!r}")
                if label in label_degree:
                    raise GradedError(f"duplicate basis label {label!r}")
                label_degree[label] = deg
            degrees[deg] = labels
        self._basis = degrees
        self._degree = label_degree
        self.labels: tuple[str, ...] = tuple(l for d in degrees for l in degrees[d])
        self._index = {l: i for i, l in enumerate(self.labels)}

    @classmethod
    def from_labels(cls, pairs: Iterable[tuple[str, int]]) -> "GradedModule":
        basis: dict[int, list[str]] = {}
        for label, deg in pairs:
            basis.setdefault(deg, []).append(label)
        return cls(basis)

    def degree(self, label: str) -> int:
        try:
            return self._degree[label]
        except KeyError:
            raise UnknownLabel(f"label {label!r} is not in the module") from None

    def index(self, label: str) -> int:
        self.degree(label)
        return self._index[label]

    @property
    def basis(self) -> dict[int, tuple[str, ...]]:
        return dict(self._basis)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._basis)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def basis_in(self, degree: int) -> tuple[str, ...]:
        return self._basis.get(degree, ())

    def __contains__(self, label) -> bool:
        return label in self._degree

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return isinstance(other, GradedModule) and self._basis == other._basis

    def __hash__(self):
        return hash(tuple(self._basis.items()))

    def __repr__(self):
        inner = ", ".join(f"{d}: {list(ls)}" for d, ls in self._basis.items())
        return f"GradedModule({{{inner}}})"

    def shifted(self, s: int) -> "GradedModule":
        return GradedModule({d + s: ls for d, ls in self._basis.items()})

    def without(self, labels: Iterable[str]) -> "GradedModule":
        drop = set(labels)
        for l in drop:
            self.degree(l)
        return GradedModule({d: [l for l in ls if l not in drop] for d, ls in self._basis.items()})

    def restricted_to(self, labels: Iterable[str]) -> "GradedModule":
        keep = set(labels)
        return GradedModule({d: [l for l in ls if l in keep] for d, ls in self._basis.items()})

    def is_submodule_of(self, other: "GradedModule") -> bool:
        return all(l in other and other.degree(l) == self.degree(l) for l in self.labels)

    def direct_sum(self, other: "GradedModule") -> "GradedModule":
        basis = {d: list(ls) for d, ls in self._basis.items()}
        for d, ls in other._basis.items():
            basis.setdefault(d, []).extend(ls)
        return GradedModule(basis)

    def element_degree(self, terms: Mapping[str, object]) -> int | None:
        """Degree of a homogeneous element; ``None`` for zero."""
        degs = {self.degree(l) for l, c in terms.items() if c}
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeMismatch(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()


ZERO_MODULE = GradedModule({})


@dataclass(frozen=True)
class GradedElement:
    """A homogeneous element of a graded module in canonical sparse form."""

    module: GradedModule
    terms: Mapping[str, object]

    def __post_init__(self):
        clean = {l: c for l, c in self.terms.items() if c}
        for l in clean:
            self.module.degree(l)
        object.__setattr__(self, "terms", clean)
        self.module.element_degree(clean)

    @property
    def degree(self) -> int | None:
        return self.module.element_degree(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms


class GradedMap:
    """A homogeneous linear map of a given degree between graded modules.

    ``entries[x]`` is the image of basis element ``x`` as a sparse
    ``{label: coeff}`` dict; the per-degree blocks are views of this sparse
    matrix.
    """

    def __init__(self, source: GradedModule, target: GradedModule, degree: int,
                 entries: Mapping[str, Mapping[str, object]] | None = None,
                 ring: Ring | None = None):
        self.source = source
        self.target = target
        self.degree = degree
        self.ring = ring
        clean: dict[str, dict[str, object]] = {}
        for x, image in (entries or {}).items():
            dx = source.degree(x)
            img = {}
            for y, c in image.items():
                if ring is not None:
                    c = ring.coerce(c)
                if not c:
                    continue
                if target.degree(y) != dx + degree:
                    raise DegreeMismatch(
                        f"{x!r} (degree {dx}) -> {y!r} (degree {target.degree(y)}) "
                        f"in a map of degree {degree}")
                img[y] = c
            if img:
                clean[x] = img
        self.entries = clean

    @classmethod
    def identity(cls, module: GradedModule, ring: Ring | None = None) -> "GradedMap":
        one = ring.one() if ring is not None else 1
        return cls(module, module, 0, {l: {l: one} for l in module.labels}, ring)

    @classmethod
    def zero(cls, source, target, degree=0, ring=None) -> "GradedMap":
        return cls(source, target, degree, {}, ring)

    def image(self, label: str) -> dict:
        self.source.degree(label)
        return self.entries.get(label, {})

    def __call__(self, terms: Mapping[str, object]) -> dict:
        out: dict = {}
        for x, c in terms.items():
            for y, d in self.image(x).items():
                add_term(out, y, c * d)
        return out

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """``self o inner``; degrees add."""
        if inner.target != self.source:
            raise ShapeMismatch("composition of maps with mismatched modules")
        entries = {x: self(img) for x, img in inner.entries.items()}
        return GradedMap(inner.source, self.target, self.degree + inner.degree, entries,
                         self.ring or inner.ring)

    __matmul__ = compose

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._check_parallel(other)
        entries = {x: dict(img) for x, img in self.entries.items()}
        for x, img in other.entries.items():
            row = entries.setdefault(x, {})
            for y, c in img.items():
                add_term(row, y, c)
        return GradedMap(self.source, self.target, self.degree, entries, self.ring)

    def __neg__(self) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree,
                         {x: {y: -c for y, c in img.items()} for x, img in self.entries.items()},
                         self.ring)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-other)

    def scale(self, c) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree,
                         {x: {y: c * d for y, d in img.items()} for x, img in self.entries.items()},
                         self.ring)

    def _check_parallel(self, other):
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise ShapeMismatch("maps are not parallel")

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.degree == other.degree and self.entries == other.entries)

    def __repr__(self):
        return f"GradedMap(degree={self.degree}, entries={self.entries})"

    def blocks(self) -> dict[int, list[tuple[int, int, object]]]:
        """Per source degree, the sparse block ``(row, col, coeff)`` into
        target degree ``source degree + degree``."""
        out: dict[int, list] = {}
        for d in sorted(self.source.support):
            cols = self.source.basis_in(d)
            rows = self.target.basis_in(d + self.degree)
            row_index = {l: i for i, l in enumerate(rows)}
            trip = []
            for j, x in enumerate(cols):
                for y, c in self.entries.get(x, {}).items():
                    trip.append((row_index[y], j, c))
            out[d] = sorted(trip, key=lambda t: (t[0], t[1]))
        return out

    @property
    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class ShiftedModule:
    """``Pi^shift`` of a module: same labels, degrees raised by ``shift``."""

    base: GradedModule
    shift: int

    @property
    def module(self) -> GradedModule:
        return self.base.shifted(self.shift)

    def suspension(self, ring: Ring | None = None) -> GradedMap:
        """The structural map ``s^shift: base -> Pi^shift base`` (identity on labels)."""
        one = ring.one() if ring is not None else 1
        return GradedMap(self.base, self.module, self.shift,
                         {l: {l: one} for l in self.base.labels}, ring)

    def desuspension(self, ring: Ring | None = None) -> GradedMap:
        one = ring.one() if ring is not None else 1
        return GradedMap(self.module, self.base, -self.shift,
                         {l: {l: one} for l in self.base.labels}, ring)


def suspend(module: GradedModule, s: int = 1) -> ShiftedModule:
    """``(Pi M)_n = M_{n-1}``, iterated ``s`` times (``s`` may be negative)."""
    if isinstance(module, ShiftedModule):
        return ShiftedModule(module.base, module.shift + s)
    return ShiftedModule(module, s)


def tensor_eval(maps: Sequence[GradedMap], terms: Mapping[tuple, object]) -> dict:
    """Apply ``maps[0] (x) ... (x) maps[k-1]`` to a sum of pure tensors.

    ``terms`` maps tuples of basis labels (one per tensor slot, slot ``i``
    in ``maps[i].source``) to coefficients.  A map of degree ``p`` moving
    past an element of degree ``q`` contributes ``(-1)^{pq}``.
    """
    k = len(maps)
    out: dict = {}
    total_degrees = set()
    for key, coeff in terms.items():
        if len(key) != k:
            raise ArityMismatch(f"pure tensor of length {len(key)} fed to {k} maps")
        if coeff:
            total_degrees.add(sum(f.source.degree(x) for f, x in zip(maps, key)))
    if len(total_degrees) > 1:
        raise DegreeMismatch(f"tensor is not homogeneous: degrees {sorted(total_degrees)}")
    for key, coeff in terms.items():
        results = [((), coeff)]
        passed = 0
        for f, x in zip(maps, key):
            # f passes the inputs already consumed to its left
            exponent = f.degree * passed
            passed += f.source.degree(x)
            image = f.image(x)
            results = [(prefix + (y,), signed(c * d, exponent))
                       for prefix, c in results for y, d in image.items()]
            if not results:
                break
        for prefix, c in results:
            add_term(out, prefix, c)
    return out


def tensor_compose(outer: Sequence[GradedMap], inner: Sequence[GradedMap],
                   key: tuple) -> dict:
    """``(outer) o (inner)`` evaluated on a pure tensor, slot by slot."""
    return tensor_eval(outer, tensor_eval(inner, {key: 1}))


def transport_shift(terms: Mapping[tuple, object], left: GradedModule, right: GradedModule,
                    side: str, inverse: bool = False) -> dict:
    """The canonical isomorphisms into ``Pi(M (x) N)``.

    ``side="left"``:  ``(Pi M) (x) N -> Pi(M (x) N)``, ``[m] (x) n |-> [m (x) n]``.
    ``side="right"``: ``M (x) (Pi N) -> Pi(M (x) N)``, ``m (x) [n] |-> (-1)^{|m|} [m (x) n]``.

    Elements of all three modules are keyed by label pairs ``(m, n)``;
    ``left`` and ``right`` are the unshifted ``M`` and ``N``.  With
    ``inverse=True`` the inverse isomorphism is applied.
    """
    if side not in ("left", "right"):
        raise ShapeMismatch(f"side must be 'left' or 'right', got {side!r}")
    out: dict = {}
    for key, coeff in terms.items():
        if not isinstance(key, tuple) or len(key) != 2:
            raise ShapeMismatch(f"expected a pair of labels, got {key!r}")
        m, n = key
        dm = left.degree(m)
        right.degree(n)
        # the sign is an involution, so the inverse carries the same sign
        add_term(out, key, signed(coeff, dm) if side == "right" else coeff)
    return out


def hom_label(source_label: str, target_label: str) -> str:
    return f"{target_label}<-{source_label}"


def hom_module(M: GradedModule, N: GradedModule) -> GradedModule:
    """``Hom(M, N)`` with basis the elementary maps ``x |-> y``, of degree
    ``|y| - |x|`` (label ``"y<-x"``)."""
    basis: dict[int, list[str]] = {}
    for x in M.labels:
        for y in N.labels:
            basis.setdefault(N.degree(y) - M.degree(x), []).append(hom_label(x, y))
    return GradedModule(basis)


def map_to_hom_element(f: GradedMap) -> dict:
    """A homogeneous map as an element of :func:`hom_module`."""
    out = {}
    for x, img in f.entries.items():
        for y, c in img.items():
            out[hom_label(x, y)] = c
    return out
