"""Degree two: cocycles are the same thing as extensions.

A 2-cocycle phi on (G, A) twists the product on pairs (a, g):

    (a, g) (b, h) = (a + g.b + phi(g, h), gh)

and every extension with conjugation acting through the module arises this
way. This demo classifies the extensions of C2 by Z/2 and shows the Baer sum
realizing addition in H^2.
"""

from groupoid_cohomology import (
    FinAbGroup,
    are_equivalent,
    baer_sum,
    cocycle_from_extension,
    constant_module,
    cyclic_group,
    ext_classes,
    extension_from_cocycle,
    extension_inverse,
    is_strictly_trivial,
    make_cochain,
)

C2 = cyclic_group(2)
A = constant_module(C2, FinAbGroup((2,)))

# The nerve at level 2 is ordered (e,e), (e,s), (s,e), (s,s); the cocycle
# with phi(s, s) = 1 is the interesting one.
phi = make_cochain(C2, A, 2, [(0,), (0,), (0,), (1,)])
E = extension_from_cocycle(C2, A, phi)
print("total groupoid of the twisted extension:")
for a in E.total.arrows():
    print("   ", E.total.arrow_labels[a], "  covers", C2.arrow_labels[E.proj[a]])

# (0, s)^2 = (1, e): the total group is Z/4, so no section can split it.
print("strictly trivial?", is_strictly_trivial(E) is not None)

# Reading the cocycle back from any section lands in the same class.
back = cocycle_from_extension(E)
print("cocycle recovered from the canonical section:", back.values)

# ---------------------------------------------------------------------------
# The group of classes. H^2(C2, Z/2) = Z/2: the split class (Klein history)
# and the Z/4 class.

cls = ext_classes(C2, A)
print("H^2 =", cls.factors)
for c in cls.classes:
    split = is_strictly_trivial(c.extension) is not None
    print("class", c.coefficients, "split" if split else "non-split")

# Baer addition matches cocycle addition: the Z/4 class is 2-torsion.
double = baer_sum(E, E)
print("E + E split?", is_strictly_trivial(double) is not None)
neutral = baer_sum(E, extension_inverse(E))
print("E + (-E) split?", is_strictly_trivial(neutral) is not None)
split_class = cls.class_of_coefficients((0,)).extension
print("E + split ~ E?", are_equivalent(baer_sum(E, split_class), E) is not None)

# ---------------------------------------------------------------------------
# Coprime orders kill everything: C2 acting on Z/3 by sign has a single,
# split class, even though the action is nontrivial.
from groupoid_cohomology.gmodule import GModule
from groupoid_cohomology.abelian import AbHom, IntegerMatrix

Z3 = FinAbGroup((3,))
neg = GModule(C2, (Z3,),
              (AbHom.identity(Z3), AbHom(Z3, Z3, IntegerMatrix.from_rows([[-1]]))))
print("classes of (C2, Z/3 sign):", len(ext_classes(C2, neg).classes))
