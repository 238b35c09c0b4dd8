"""Covers of the nerve and the sigma index calculus.

A cover of a simplicial space assigns indexed pieces to every level. The
sigma construction makes it semi-simplicial: a level-n index is a typed map
on the nonempty subsets of {0..n}, and its piece is the intersection of all
the pulled-back pieces. Cohomology on the maximal (singleton) cover
reproduces groupoid cohomology on the nose, and on the single-set cover the
complexes are literally the same.
"""

from groupoid_cohomology import (
    FinAbGroup,
    MaximalSimplicialCover,
    ModuleCoefficients,
    NerveSpace,
    cech_cohomology_on_cover,
    cohomology,
    constant_module,
    cyclic_group,
    sigma_cover,
    single_set_cover,
)
from groupoid_cohomology.cech import ConstantSpace, Cover

C2 = cyclic_group(2)
A = constant_module(C2, FinAbGroup((2,)))
space = NerveSpace(C2)
coeffs = ModuleCoefficients(A)

# ---------------------------------------------------------------------------
# The index calculus on a tiny constant space: two points, each its own
# piece, the same at every level. Level 1 has three slots ({0}, {1} and
# {0,1}), so 2 * 2 * 2 = 8 candidate indices, of which only the two
# coherent ones carve out nonempty pieces.

two_points = ConstantSpace(2)
partition = Cover.from_sets([[{0}, {1}] for _ in range(3)])
fam = sigma_cover(two_points, partition, 2)
print("candidate indices at level 1:", fam.candidate_count(1))
print("nonempty ones:", len(fam.indices(1)))
for lam in fam.indices(1):
    print("   lambda =", lam, "carves out", set(fam.points_of(1, lam)))

# ---------------------------------------------------------------------------
# Cech cohomology of nerve covers agrees with groupoid cohomology.

maximal = MaximalSimplicialCover(space)
for n in range(3):
    ch = cech_cohomology_on_cover(space, coeffs, maximal, n)
    print(f"H^{n}: maximal cover -> {ch}, groupoid -> {cohomology(C2, A, n)}")

for n in range(3):
    ch = cech_cohomology_on_cover(space, coeffs, single_set_cover(space, n + 1), n)
    assert ch == cohomology(C2, A, n)
print("single-set cover agrees in degrees 0..2 as well")
