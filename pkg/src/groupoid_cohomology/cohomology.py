"""The groupoid cochain complex and its cohomology.

A degree-n cochain assigns to every composable tuple (g1, ..., gn) an element
of the fiber at r(g1) (for n = 0, an element of the fiber at each object).
Values are stored in the twisted convention where the differential reads

    (dc)(g1, ..., g_{n+1}) = g1 . c(g2, ..., g_{n+1})
                             + sum_{k=1}^{n} (-1)^k c(g1, ..., g_k g_{k+1}, ..., g_{n+1})
                             + (-1)^{n+1} c(g1, ..., gn)

with the degree-0 case (dc)(g) = g . c(s(g)) - c(r(g)). Every term except the
first already lives in the fiber at r(g1); the module action transports the
first one, so the whole differential is "apply each face, twist the 0-th".

Linearizing over the canonical nerve enumeration turns d into integer
matrices, and H^n comes out of Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    AbComplex,
    AbHom,
    FinAbGroup,
    IntegerMatrix,
    ShapeError,
    homology_at,
    image_membership_witness,
)
from .groupoid import face


@dataclass(frozen=True)
class Cochain:
    """A total assignment over nerve(G, degree), one fiber element per tuple."""

    degree: int
    values: tuple[tuple[int, ...], ...]


def tuple_fiber(A, t):
    """The coefficient fiber a nerve tuple takes values in: the one at its 0-th vertex."""
    return A.fiber(t.obj)


def make_cochain(G, A, n, values):
    """Build a cochain from per-tuple values, reducing into each fiber."""
    tuples = G.nerve(n)
    values = list(values)
    if len(values) != len(tuples):
        raise ShapeError(f"expected {len(tuples)} values at degree {n}")
    reduced = tuple(tuple_fiber(A, t).reduce(tuple(v)) for t, v in zip(tuples, values))
    return Cochain(n, reduced)


def zero_cochain(G, A, n):
    return Cochain(n, tuple(tuple_fiber(A, t).zero() for t in G.nerve(n)))


def cochain_add(G, A, c1, c2):
    if c1.degree != c2.degree:
        raise ShapeError("degrees differ")
    tuples = G.nerve(c1.degree)
    return Cochain(c1.degree, tuple(tuple_fiber(A, t).add(v, w)
                                    for t, v, w in zip(tuples, c1.values, c2.values)))


def cochain_sub(G, A, c1, c2):
    if c1.degree != c2.degree:
        raise ShapeError("degrees differ")
    tuples = G.nerve(c1.degree)
    return Cochain(c1.degree, tuple(tuple_fiber(A, t).sub(v, w)
                                    for t, v, w in zip(tuples, c1.values, c2.values)))


def cochain_neg(G, A, c):
    tuples = G.nerve(c.degree)
    return Cochain(c.degree, tuple(tuple_fiber(A, t).neg(v)
                                   for t, v in zip(tuples, c.values)))


def is_zero_cochain(c):
    return all(all(x == 0 for x in v) for v in c.values)


def cochain_group(G, A, n):
    """The cochain group C^n as one presented group: fibers concatenated in
    canonical nerve order (degree 0 concatenates the object fibers)."""
    orders = []
    for t in G.nerve(n):
        orders.extend(tuple_fiber(A, t).orders)
    return FinAbGroup(tuple(orders))


def _offsets(G, A, n):
    offs, pos = [], 0
    for t in G.nerve(n):
        offs.append(pos)
        pos += tuple_fiber(A, t).ngens
    return offs, pos


def flatten_cochain(G, A, c):
    out = []
    for v in c.values:
        out.extend(v)
    return tuple(out)


def unflatten_cochain(G, A, n, vector):
    tuples = G.nerve(n)
    values, pos = [], 0
    for t in tuples:
        k = tuple_fiber(A, t).ngens
        values.append(tuple(vector[pos:pos + k]))
        pos += k
    if pos != len(vector):
        raise ShapeError("vector length does not match the cochain group")
    return make_cochain(G, A, n, values)


def differential(G, A, c):
    """The coboundary of a total degree-n cochain, as a degree-(n+1) cochain."""
    n = c.degree
    index = G.nerve_index(n)
    out = []
    for t in G.nerve(n + 1):
        fib = tuple_fiber(A, t)
        first = A.act(t.arrows[0], c.values[index[face(G, 0, t)]])
        total = fib.reduce(first)
        for k in range(1, n + 2):
            term = c.values[index[face(G, k, t)]]
            total = fib.add(total, term) if k % 2 == 0 else fib.sub(total, term)
        out.append(total)
    return Cochain(n + 1, tuple(out))


def differential_matrix(G, A, n):
    """The linearized differential C^n -> C^{n+1}, one column per generator.

    Columns are the differentials of the generators; a reverse face index
    keeps each column's evaluation restricted to the tuples it feeds.
    """
    source = cochain_group(G, A, n)
    target = cochain_group(G, A, n + 1)
    src_offsets, _ = _offsets(G, A, n)
    tgt_offsets, _ = _offsets(G, A, n + 1)
    src_index = G.nerve_index(n)

    incidences = [[] for _ in G.nerve(n)]
    for ti, t in enumerate(G.nerve(n + 1)):
        for k in range(n + 2):
            s = face(G, k, t)
            sign = 1 if k % 2 == 0 else -1
            hom = A.action(t.arrows[0]) if k == 0 else None
            incidences[src_index[s]].append((ti, sign, hom))

    cols = []
    for si, s in enumerate(G.nerve(n)):
        fib = tuple_fiber(A, s)
        for j in range(fib.ngens):
            col = [0] * target.ngens
            for ti, sign, hom in incidences[si]:
                base = tgt_offsets[ti]
                if hom is None:
                    col[base + j] += sign
                else:
                    for i in range(hom.matrix.rows):
                        col[base + i] += sign * hom.matrix[i, j]
            cols.append(col)
    data = [[col[i] for col in cols] for i in range(target.ngens)]
    return AbHom(source, target, IntegerMatrix(target.ngens, source.ngens, data))


def cochain_complex(G, A, top):
    """The complex C^0 -> ... -> C^top as an AbComplex."""
    groups = tuple(cochain_group(G, A, n) for n in range(top + 1))
    maps = tuple(differential_matrix(G, A, n) for n in range(top))
    return AbComplex(groups, maps)


def cohomology(G, A, n, with_generators=False):
    """H^n(G, A) in canonical invariant-factor form.

    With with_generators=True also returns representative cocycles, one per
    canonical factor.
    """
    cx = cochain_complex(G, A, n + 1)
    if not with_generators:
        return homology_at(cx, n)
    factors, vecs = homology_at(cx, n, with_generators=True)
    gens = [unflatten_cochain(G, A, n, v) for v in vecs]
    return factors, gens


@dataclass(frozen=True)
class InvariantSections:
    """The kernel of the degree-0 differential, with explicit generators."""

    factors: object
    generators: tuple[Cochain, ...]

    @property
    def group(self):
        return self.factors.as_group()


def invariant_sections(G, A):
    """Degree-0 cocycles: sections of the fiber bundle fixed by every arrow."""
    groups = (cochain_group(G, A, 0), cochain_group(G, A, 1))
    cx = AbComplex(groups, (differential_matrix(G, A, 0),))
    factors, vecs = homology_at(cx, 0, with_generators=True)
    return InvariantSections(factors, tuple(unflatten_cochain(G, A, 0, v) for v in vecs))


def is_cocycle(G, A, c):
    """dc = 0, checked exhaustively over nerve(G, degree+1)."""
    return is_zero_cochain(differential(G, A, c))


def is_coboundary(G, A, c):
    """A witness b with db = c, or None.

    At degree 0 the only coboundary is zero (there is nothing below), in which
    case the witness is the empty degree -1 cochain.
    """
    n = c.degree
    if n == 0:
        return Cochain(-1, ()) if is_zero_cochain(c) else None
    h = differential_matrix(G, A, n - 1)
    witness = image_membership_witness(h, flatten_cochain(G, A, c))
    if witness is None:
        return None
    return unflatten_cochain(G, A, n - 1, witness)


def are_cohomologous(G, A, c1, c2):
    """c1 - c2 a coboundary; returns the witness or None."""
    return is_coboundary(G, A, cochain_sub(G, A, c1, c2))
