"""Degree one: cocycles are equivariant principal bundles.

A 1-cocycle phi shifts how arrows move points: the total space is one copy
of the fiber per object, translation acts freely and transitively fiberwise,
and g sends a point a over s(g) to g.a - phi(g) over r(g). Choosing one
point per object reads a cocycle back; different choices differ by a
coboundary.
"""

from groupoid_cohomology import (
    FinAbGroup,
    cocycle_from_torsor,
    constant_module,
    cyclic_group,
    is_coboundary,
    make_cochain,
    torsor_from_cocycle,
    validate_torsor,
)
from groupoid_cohomology.cohomology import are_cohomologous, cochain_sub

C2 = cyclic_group(2)
A = constant_module(C2, FinAbGroup((2,)))

# The nonzero 1-cocycle on C2 with Z/2 coefficients: phi(e) = 0, phi(s) = 1.
phi = make_cochain(C2, A, 1, [(0,), (1,)])
T = torsor_from_cocycle(C2, A, phi)
print("torsor axioms hold:", validate_torsor(T).ok)

# The flip s now acts freely: there is no invariant point, which is
# exactly why this class is nonzero in H^1.
s = 1
print("does s fix any point?", any(T.act(s, p) == p for p in range(T.n_points)))

# Round trip through a section choice.
back = cocycle_from_torsor(C2, A, T, (0,))
print("recovered cocycle:", back.values)
print("same class as phi:", are_cohomologous(C2, A, back, phi) is not None)

# Another section gives a cohomologous cocycle.
other = cocycle_from_torsor(C2, A, T, (1,))
print("section change is a coboundary:",
      is_coboundary(C2, A, cochain_sub(C2, A, back, other)) is not None)
