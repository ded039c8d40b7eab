"""Exact sparse Gaussian elimination.

Only what the coboundary test needs: decide whether ``A x = b`` has a
solution and produce one.  Over ``Z`` the system is solved over ``Q``; an
integral particular solution settles the question, anything else is
reported as undecided (the rational solution set can still contain integral
points, and a lattice solver is out of scope).
"""

from __future__ import annotations

from typing import Hashable, Mapping, Sequence

from .rings import Integers, IntegersMod, NonUnit, Rationals, Ring, QQ
from .sparse import add_term

SOLVED = "solved"
INCONSISTENT = "inconsistent"
UNDECIDED = "undecided"


def _eliminate(ring: Ring, columns: Sequence[Mapping[Hashable, object]],
               rhs: Mapping[Hashable, object]):
    """Row-reduce the augmented system; returns (status, solution).

    ``columns[j]`` is column ``j`` as a sparse ``{row: coeff}`` dict.  Rows
    are processed as sparse dicts keyed by column index, with ``-1`` for
    the right-hand side.
    """
    rows: dict[Hashable, dict[int, object]] = {}
    for j, col in enumerate(columns):
        for r, c in col.items():
            c = ring.coerce(c)
            if c:
                rows.setdefault(r, {})[j] = c
    for r, c in rhs.items():
        c = ring.coerce(c)
        if c:
            rows.setdefault(r, {})[-1] = c
    pending = [rows[r] for r in sorted(rows, key=repr)]
    pivots: list[tuple[int, dict]] = []
    for row in pending:
        row = dict(row)
        for pcol, prow in pivots:
            c = row.get(pcol)
            if c:
                for k, v in prow.items():
                    add_term(row, k, -(c * v))
        cols = sorted(k for k in row if k >= 0)
        if not cols:
            if row.get(-1):
                return INCONSISTENT, None
            continue
        pcol = next((k for k in cols if ring.is_unit(row[k])), None)
        if pcol is None:
            raise NonUnit("no invertible pivot available over " + ring.spec)
        inv = ring.inv(row[pcol])
        row = {k: v * inv for k, v in row.items()}
        # keep earlier pivot rows reduced in the new pivot column
        for _, qrow in pivots:
            c = qrow.get(pcol)
            if c:
                for k, v in row.items():
                    add_term(qrow, k, -(c * v))
        pivots.append((pcol, row))
    solution = {pcol: prow.get(-1, ring.zero()) for pcol, prow in pivots}
    return SOLVED, {j: v for j, v in solution.items() if v}


def solve(ring: Ring, columns: Sequence[Mapping[Hashable, object]],
          rhs: Mapping[Hashable, object]) -> tuple[str, dict[int, object] | None]:
    """Find ``x`` with ``sum_j x_j columns[j] = rhs``.

    Returns ``(status, x)`` with status one of ``"solved"``,
    ``"inconsistent"`` or ``"undecided"`` (the last only over ``Z``).
    """
    if isinstance(ring, Integers):
        status, x = _eliminate(QQ, columns, rhs)
        if status != SOLVED:
            return status, None
        if all(v.denominator == 1 for v in x.values()):
            return SOLVED, {j: int(v) for j, v in x.items()}
        return UNDECIDED, None
    if isinstance(ring, (Rationals, IntegersMod)):
        try:
            return _eliminate(ring, columns, rhs)
        except NonUnit:
            return UNDECIDED, None
    raise NonUnit(f"linear solving is not supported over {ring.spec}")
