"""Numerical verification that cohomology only sees the Morita class.

The computable criterion is the cover-groupoid one: for an object cover U,
the canonical map G[U] -> G must induce isomorphisms on H^n. Both sides are
computed independently (the right side on the pulled-back module) and the
canonical invariant factors are compared literally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cech import BudgetExceeded
from .classify import ext_classes
from .cohomology import cohomology
from .gmodule import pullback_module
from .groupoid import cover_groupoid


@dataclass
class MoritaRow:
    degree: int
    left: object
    right: object

    @property
    def equal(self):
        return self.left == self.right


@dataclass
class MoritaReport:
    rows: list[MoritaRow] = field(default_factory=list)
    ext_left: int | None = None
    ext_right: int | None = None

    @property
    def ok(self):
        factors = all(r.equal for r in self.rows)
        exts = self.ext_left == self.ext_right
        return factors and exts

    def lines(self):
        out = []
        for r in self.rows:
            mark = "ok" if r.equal else "MISMATCH"
            out.append(f"H^{r.degree}: G -> {r.left} | G[U] -> {r.right}  [{mark}]")
        if self.ext_left is not None:
            mark = "ok" if self.ext_left == self.ext_right else "MISMATCH"
            out.append(f"ext classes: G -> {self.ext_left} | G[U] -> {self.ext_right}  [{mark}]")
        return out


def morita_compare(G, A, sets, degrees=(0, 1, 2), max_nerve=3000,
                   compare_ext=False):
    """Compare H^n(G, A) with H^n(G[U], canon* A) degree by degree."""
    cg = cover_groupoid(G, sets)
    H = cg.groupoid
    top = max(degrees) + 1
    if len(H.nerve(top)) > max_nerve:
        raise BudgetExceeded(
            f"cover groupoid nerve has {len(H.nerve(top))} tuples at level {top}",
            len(H.nerve(top)))
    pulled = pullback_module(cg.canon, A)
    report = MoritaReport()
    for n in degrees:
        report.rows.append(MoritaRow(n, cohomology(G, A, n), cohomology(H, pulled, n)))
    if compare_ext and A.all_fibers_finite:
        report.ext_left = len(ext_classes(G, A).classes)
        report.ext_right = len(ext_classes(H, pulled).classes)
    return report


@dataclass
class CoverNerveDescription:
    """G[U]_n in the (i_0, ..., i_n, g_1, ..., g_n) presentation."""

    tuples: tuple
    groupoid_count: int

    @property
    def count(self):
        return len(self.tuples)

    @property
    def consistent(self):
        return self.count == self.groupoid_count


def cover_nerve_structure(G, sets, n):
    """Enumerate G[U]_n as index-decorated base tuples and cross-check the
    count against the nerve of the cover groupoid itself."""
    sets = [frozenset(s) for s in sets]
    cg = cover_groupoid(G, sets)
    out = []
    if n == 0:
        for i, s in enumerate(sets):
            for x in sorted(s):
                out.append((i, x))
    else:
        for t in G.nerve(n):
            verts = G.vertices(t)
            choices = [[i for i, s in enumerate(sets) if v in s] for v in verts]
            stack = [()]
            for opts in choices:
                stack = [pre + (i,) for pre in stack for i in opts]
            for idx in stack:
                out.append(idx + t.arrows)
    return CoverNerveDescription(tuple(sorted(out)), len(cg.groupoid.nerve(n)))
