"""Build a few small groupoids and compute their cohomology.

Run with:  python3 demos/01_first_cohomology_computations.py
"""

from groupoid_cohomology import (
    FinAbGroup,
    constant_module,
    cohomology,
    cyclic_group,
    invariant_sections,
    pair_groupoid,
    unit_groupoid,
)
from groupoid_cohomology.groupoid import validate
from groupoid_cohomology.gmodule import GModule
from groupoid_cohomology.abelian import AbHom, IntegerMatrix

# ---------------------------------------------------------------------------
# A group is a groupoid with one object. The cyclic group of order 2:

C2 = cyclic_group(2)
print("C2 passes the axiom check:", validate(C2).ok)

# Coefficients: the constant module Z/2 with the trivial action.
Z2 = FinAbGroup((2,))
A = constant_module(C2, Z2)

for n in range(4):
    print(f"H^{n}(C2, Z/2) =", cohomology(C2, A, n))

# Z coefficients are encoded with generator order 0; the classic
# computation H^2(C3, Z) = Z/3 comes out of the same machinery.
C3 = cyclic_group(3)
Z = FinAbGroup((0,))
print("H^2(C3, Z) =", cohomology(C3, constant_module(C3, Z), 2))

# ---------------------------------------------------------------------------
# Groupoids that are not groups.

# The pair groupoid is equivalent to a point, so everything above
# degree zero dies and H^0 is a single fiber.
P2 = pair_groupoid(2)
B = constant_module(P2, FinAbGroup((6,)))
print("pair groupoid:", [str(cohomology(P2, B, n)) for n in range(3)])

# A discrete space (unit groupoid): H^0 collects one fiber per point.
U3 = unit_groupoid(3)
print("3 points with Z/4:", cohomology(U3, constant_module(U3, FinAbGroup((4,))), 0))

# ---------------------------------------------------------------------------
# A nontrivial action: C2 flipping the sign of Z/3. No section survives,
# so the invariant sections (= H^0) vanish.

Z3 = FinAbGroup((3,))
neg = GModule(C2, (Z3,),
              (AbHom.identity(Z3), AbHom(Z3, Z3, IntegerMatrix.from_rows([[-1]]))))
inv = invariant_sections(C2, neg)
print("invariant sections of the sign action:", inv.factors)
print("all of H^*(C2, Z/3 sign):", [str(cohomology(C2, neg, n)) for n in range(3)])
