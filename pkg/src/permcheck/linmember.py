"""Degree-bounded ideal membership over F_p by exact linear algebra.

Whether a target polynomial lies in the span of {generator * monomial} up to
a degree bound is a linear system over F_p: rows are monomials, columns are
(generator, multiplier monomial) pairs.  No Groebner bases; absence is
certified only up to the bound used.  When the target and all generators are
homogeneous the system is restricted to the graded piece of the target's
degree, which is equivalent and much smaller.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fppoly import GRLEX, Polynomial

MAX_MATRIX_ENTRIES = 10**7


class SizeGuardError(ValueError):
    """The membership system exceeds the configured size guard."""

    def __init__(self, rows: int, cols: int, max_entries: int):
        super().__init__(
            f"membership system of {rows} rows x {cols} columns "
            f"({rows * cols} entries) exceeds the guard of {max_entries}; "
            "raise max_entries to proceed"
        )
        self.rows = rows
        self.cols = cols


@dataclass(frozen=True)
class MembershipInstance:
    target: Polynomial
    generators: tuple
    degree_bound: int

    def __post_init__(self):
        if self.target.total_degree() > self.degree_bound:
            raise ValueError("target degree exceeds the degree bound")
        for g in self.generators:
            if g.is_zero:
                raise ValueError("generators must be nonzero")


@dataclass
class LinearSystem:
    """Sparse row-major system A x = rhs over F_p.

    Row labels are monomials; column labels are (generator index, multiplier
    monomial) pairs.  matrix[i] maps column index -> nonzero coefficient.
    """

    row_labels: list
    col_labels: list
    matrix: list
    rhs: list
    p: int


def _is_homogeneous(poly: Polynomial) -> bool:
    degrees = {sum(m) for m, _ in poly.items()}
    return len(degrees) <= 1


def monomials_of_degree(v: int, d: int):
    """All exponent tuples of total degree exactly d, lexicographically."""
    if v == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(v - 1, d - first):
            yield (first,) + rest


def monomials_up_to(v: int, d: int):
    for deg in range(d + 1):
        yield from monomials_of_degree(v, deg)


def build_system(inst: MembershipInstance, max_entries: int = MAX_MATRIX_ENTRIES) -> LinearSystem:
    """Assemble the membership system; rows are restricted to monomials that
    occur in the target or in some column (absent rows are trivially zero)."""
    space = inst.target.space
    p = inst.target.char
    v = space.count
    d = inst.degree_bound
    graded = _is_homogeneous(inst.target) and all(
        _is_homogeneous(g) for g in inst.generators
    )
    target_deg = inst.target.total_degree()

    col_labels = []
    col_polys = []
    for gi, g in enumerate(inst.generators):
        dg = g.total_degree()
        if dg > d:
            continue
        if graded:
            if target_deg < dg:
                continue
            multipliers = monomials_of_degree(v, target_deg - dg)
        else:
            multipliers = monomials_up_to(v, d - dg)
        for mult in multipliers:
            col_labels.append((gi, mult))
            col_polys.append({tuple(a + b for a, b in zip(mult, m)): c for m, c in g.items()})

    row_index: dict = {}
    row_labels: list = []

    def row_of(mono):
        ri = row_index.get(mono)
        if ri is None:
            ri = len(row_labels)
            row_index[mono] = ri
            row_labels.append(mono)
        return ri

    for mono, _ in sorted(inst.target.items(), key=lambda kv: GRLEX.key(kv[0]), reverse=True):
        row_of(mono)
    cells = []
    for ci, poly in enumerate(col_polys):
        for mono, c in poly.items():
            cells.append((row_of(mono), ci, c))
    if len(row_labels) * max(len(col_labels), 1) > max_entries:
        raise SizeGuardError(len(row_labels), len(col_labels), max_entries)
    matrix = [dict() for _ in row_labels]
    for ri, ci, c in cells:
        matrix[ri][ci] = c
    rhs = [0] * len(row_labels)
    for mono, c in inst.target.items():
        rhs[row_index[mono]] = c
    return LinearSystem(row_labels, col_labels, matrix, rhs, p)


def gaussian_solve(system: LinearSystem) -> Optional[list]:
    """Any solution of the sparse system, or None if inconsistent.

    Deterministic pivoting: the next pivot is the first nonzero entry in
    row-major order among unpivoted rows; elimination clears the pivot column
    from every other row, and free variables are set to 0.
    """
    p = system.p
    rows = [dict(r) for r in system.matrix]
    rhs = list(system.rhs)
    ncols = len(system.col_labels)
    col_members = [set() for _ in range(ncols)]
    for ri, row in enumerate(rows):
        for c in row:
            col_members[c].add(ri)
    pivot_rows = set()
    pivots = []
    while True:
        pr = next((ri for ri in range(len(rows)) if ri not in pivot_rows and rows[ri]), None)
        if pr is None:
            break
        pc = min(rows[pr])
        inv = pow(rows[pr][pc], p - 2, p)
        if inv != 1:
            rows[pr] = {c: (val * inv) % p for c, val in rows[pr].items()}
            rhs[pr] = (rhs[pr] * inv) % p
        pivot_rows.add(pr)
        pivots.append((pr, pc))
        for ri in list(col_members[pc]):
            if ri == pr:
                continue
            factor = (-rows[ri][pc]) % p
            target = rows[ri]
            for c, val in rows[pr].items():
                nv = (target.get(c, 0) + factor * val) % p
                if nv:
                    if c not in target:
                        col_members[c].add(ri)
                    target[c] = nv
                else:
                    if c in target:
                        del target[c]
                        col_members[c].discard(ri)
            rhs[ri] = (rhs[ri] + factor * rhs[pr]) % p
    for ri, row in enumerate(rows):
        if not row and rhs[ri]:
            return None
    solution = [0] * ncols
    for pr, pc in pivots:
        solution[pc] = rhs[pr]
    return solution


def member_bounded(
    inst: MembershipInstance, max_entries: int = MAX_MATRIX_ENTRIES
) -> Optional[dict]:
    """Multipliers {generator index: h} with sum h_g * g = target, or None.

    A returned combination always re-multiplies exactly to the target (checked
    here, unconditionally).  None certifies non-membership only up to the
    instance's degree bound.
    """
    system = build_system(inst, max_entries=max_entries)
    solution = gaussian_solve(system)
    if solution is None:
        return None
    space = inst.target.space
    p = inst.target.char
    multiplier_terms: dict = {}
    for (gi, mult), value in zip(system.col_labels, solution):
        if value:
            multiplier_terms.setdefault(gi, []).append((mult, value))
    combination = {
        gi: Polynomial(space, p, terms) for gi, terms in multiplier_terms.items()
    }
    total = Polynomial.zero(space, p)
    for gi, h in combination.items():
        total = total + h * inst.generators[gi]
    if total != inst.target:
        raise RuntimeError("solver returned a combination that does not re-multiply to the target")
    return combination
