"""First-order deformations over the dual numbers ``k[t]/(t^2)``.

A deformation of ``nu`` is ``theta(nu + eta t)``, the cochain with dual-number
coefficients.  It is a structure exactly when ``[nu, eta] = 0``; gauge
equivalence moves ``eta`` by coboundaries ``[nu, alpha]``.
"""

from __future__ import annotations

from typing import Sequence

from .ainfinity import check_stasheff
from .cochains import Cochain, TypeMismatch, all_words, bracket_at, gerst_bracket, word_degree
from .core.linalg import solve
from .core.report import Report, Violation
from .core.rings import DualNumbers, DualScalar, Ring
from .unital import SplitUnitAlgebra, mc_check_su


def _dual(ring: Ring) -> DualNumbers:
    if isinstance(ring, DualNumbers):
        raise TypeMismatch("coefficients are already dual numbers")
    return DualNumbers(ring)


def theta_build(nu: Cochain, eta: Cochain) -> Cochain:
    """``nu + eta t`` as a cochain over ``k[t]/(t^2)``."""
    if (nu.source, nu.target, nu.degree, nu.max_arity) != \
            (eta.source, eta.target, eta.degree, eta.max_arity):
        raise TypeMismatch("nu and eta must have the same type and truncation")
    if nu.ring != eta.ring:
        raise TypeMismatch("nu and eta live over different rings")
    D = _dual(nu.ring)
    zero = nu.ring.zero()
    comps: dict = {}
    for n, w, img in nu.items():
        row = comps.setdefault(n, {}).setdefault(w, {})
        for b, c in img.items():
            row[b] = DualScalar(c, zero)
    for n, w, img in eta.items():
        row = comps.setdefault(n, {}).setdefault(w, {})
        for b, c in img.items():
            old = row.get(b)
            row[b] = DualScalar(old.a if old is not None else zero, c)
    return Cochain(nu.source, nu.target, nu.degree, nu.max_arity, comps, D)


def theta_split(c: Cochain) -> tuple[Cochain, Cochain]:
    """Inverse of :func:`theta_build`: the ``t^0`` and ``t^1`` parts."""
    if not isinstance(c.ring, DualNumbers):
        raise TypeMismatch("expected dual-number coefficients")
    base = c.ring.base
    return (c.map_coefficients(lambda x: x.a, base), c.map_coefficients(lambda x: x.b, base))


def augmentation(c: Cochain) -> Cochain:
    return theta_split(c)[0]


class FirstOrderDeformation:
    """``base`` is a structure ``nu`` (a cochain) or a :class:`SplitUnitAlgebra`;
    ``eta`` is the degree -1 coefficient of ``t``."""

    def __init__(self, base, eta: Cochain):
        nu = base.nu if isinstance(base, SplitUnitAlgebra) else base
        if eta.degree != -1 or eta.source != nu.source or eta.target != nu.target:
            raise TypeMismatch("eta must be a degree -1 endo cochain on the base module")
        if eta.max_arity != nu.max_arity:
            raise TypeMismatch("truncations differ")
        if isinstance(base, SplitUnitAlgebra) and eta.mentions(base.unit):
            raise TypeMismatch("a strictly unital deformation needs a reduced eta")
        self.base = base
        self.eta = eta

    @property
    def strictly_unital(self) -> bool:
        return isinstance(self.base, SplitUnitAlgebra)

    @property
    def nu(self) -> Cochain:
        return self.base.nu if self.strictly_unital else self.base

    @property
    def alphabet(self):
        return self.base.carrier.reduced_labels if self.strictly_unital else self.nu.source.labels

    def theta(self) -> Cochain:
        return theta_build(self.nu, self.eta)


def first_order_check(d: FirstOrderDeformation, route: str = "bracket",
                      verbose: bool = False) -> Report:
    """Empty iff ``[nu, eta] = 0`` (``route="bracket"``) or iff ``theta`` is a
    structure over the dual numbers (``route="dual"``); for a valid base the
    two agree word by word."""
    N = d.nu.max_arity
    if route == "dual":
        return check_stasheff(d.theta(), verbose=verbose)
    if route != "bracket":
        raise ValueError(f"unknown route {route!r}")
    rep = Report(N, verbose)
    for w in all_words(d.nu.source.labels, N):
        r = bracket_at(d.nu, d.eta, w)
        if r:
            rep.add(Violation(len(w), w, r, "cocycle"))
    return rep


def gauge_action(alpha: Cochain, d: FirstOrderDeformation) -> FirstOrderDeformation:
    """``eta + (nu o alpha - alpha o nu)``, the first-order effect of the
    automorphism ``1 + alpha t``."""
    if alpha.degree != 0:
        raise TypeMismatch("gauge parameters have degree 0")
    if d.strictly_unital and alpha.mentions(d.base.unit):
        raise TypeMismatch("a strictly unital gauge parameter must be reduced")
    return FirstOrderDeformation(d.base, d.eta + gerst_bracket(d.nu, alpha))


def su_first_order_check(alg: SplitUnitAlgebra, eta: Cochain, route: str = "reduced",
                         verbose: bool = False) -> Report:
    """Empty iff ``[mu_bar + h + mu_su, eta] = 0`` on words over ``A_bar``
    (``route="reduced"``), or iff ``mu_bar + h + eta t`` is Maurer-Cartan
    over the dual numbers (``route="dual"``)."""
    FirstOrderDeformation(alg, eta)
    if route == "dual":
        u = alg.unit
        red = alg.carrier.reduced_labels
        mu_bar = theta_build(alg.mu_bar, eta.project(red))
        h = theta_build(alg.h, eta.project([u]))
        return mc_check_su(SplitUnitAlgebra(alg.carrier, mu_bar, h, validate=False),
                           verbose=verbose)
    if route != "reduced":
        raise ValueError(f"unknown route {route!r}")
    N = alg.max_arity
    rep = Report(N, verbose)
    nu = alg.nu
    for w in all_words(alg.carrier.reduced_labels, N):
        r = bracket_at(nu, eta, w)
        if r:
            rep.add(Violation(len(w), w, r, "reduced_cocycle"))
    return rep


def coboundary_columns(nu: Cochain, alphabet: Sequence[str] | None = None,
                       word_alphabet: Sequence[str] | None = None):
    """Basis gauge parameters ``alpha`` (single entries, degree 0) and the
    columns ``[nu, alpha]`` keyed by ``(word, output)``.

    ``alphabet`` restricts the inputs of ``alpha``; ``word_alphabet`` the
    words on which the bracket is recorded.
    """
    A = nu.source
    letters = A.labels if alphabet is None else tuple(alphabet)
    N = nu.max_arity
    basis, columns = [], []
    for w in all_words(letters, N):
        for b in A.labels:
            if A.degree(b) + 1 != word_degree(A, w):
                continue
            alpha = Cochain(A, A, 0, N, {len(w): {w: {b: nu.ring.one()}}}, nu.ring)
            br = gerst_bracket(nu, alpha, word_alphabet)
            basis.append((w, b))
            columns.append({(v, c): x for _, v, img in br.items() for c, x in img.items()})
    return basis, columns


def is_coboundary(d: FirstOrderDeformation) -> tuple[str, Cochain | None]:
    """Decide whether ``eta = [nu, alpha]`` for some degree 0 ``alpha``.

    Returns ``("solved", alpha)``, ``("inconsistent", None)`` or, over ``Z``
    when only a non-integral rational solution turns up,
    ``("undecided", None)``.  In the strictly unital case ``alpha`` ranges
    over reduced cochains.
    """
    nu = d.nu
    alphabet = d.alphabet if d.strictly_unital else None
    basis, columns = coboundary_columns(nu, alphabet, alphabet)
    rhs = {(w, b): c for _, w, img in d.eta.restrict(d.alphabet).items() for b, c in img.items()}
    status, x = solve(nu.ring, columns, rhs)
    if status != "solved":
        return status, None
    comps: dict = {}
    for j, c in x.items():
        w, b = basis[j]
        if c:
            comps.setdefault(len(w), {}).setdefault(w, {})[b] = c
    A = nu.source
    return status, Cochain(A, A, 0, nu.max_arity, comps, nu.ring)
