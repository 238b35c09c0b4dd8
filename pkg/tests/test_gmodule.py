import random

from groupoid_cohomology.abelian import AbHom, FinAbGroup, IntegerMatrix
from groupoid_cohomology.gmodule import (
    GModule,
    constant_module,
    disjoint_union_module,
    pullback_module,
    validate_module,
)
from groupoid_cohomology.groupoid import (
    cover_groupoid,
    cyclic_group,
    disjoint_union,
    identity_morphism,
    pair_groupoid,
    unit_groupoid,
)
from groupoid_cohomology.randomized import random_instance

C2 = cyclic_group(2)
Z2 = FinAbGroup((2,))
Z3 = FinAbGroup((3,))
Z4 = FinAbGroup((4,))


def negation_module():
    return GModule(C2, (Z3,),
                   (AbHom.identity(Z3), AbHom(Z3, Z3, IntegerMatrix.from_rows([[-1]]))))


def test_constant_modules_validate():
    assert validate_module(constant_module(C2, Z2)).ok
    assert validate_module(constant_module(pair_groupoid(2), FinAbGroup((0,)))).ok
    assert validate_module(constant_module(unit_groupoid(1), FinAbGroup((6,)))).ok


def test_negation_module_validates():
    assert validate_module(negation_module()).ok


def test_multiplication_by_two_fails():
    bad = GModule(C2, (Z4,),
                  (AbHom.identity(Z4), AbHom(Z4, Z4, IntegerMatrix.from_rows([[2]]))))
    rep = validate_module(bad)
    assert not rep.ok
    assert any("invertible" in f or "functoriality" in f for f in rep.failures)


def test_pullback_identity_and_constants():
    A = constant_module(C2, Z2)
    assert validate_module(pullback_module(identity_morphism(C2), A)).ok
    cg = cover_groupoid(C2, [{0}, {0}])
    pulled = pullback_module(cg.canon, A)
    rep = validate_module(pulled)
    assert rep.ok
    assert all(f.orders == (2,) for f in pulled.fibers)
    assert all(h.matrix == IntegerMatrix.identity(1) for h in pulled.actions)


def test_pullback_negation_unfolds_arrowwise():
    A = negation_module()
    cg = cover_groupoid(C2, [{0}, {0}])
    pulled = pullback_module(cg.canon, A)
    assert validate_module(pulled).ok
    assert cg.groupoid.n_arrows == 8
    H = cg.groupoid
    for a in H.arrows():
        base_arrow = cg.canon.arrow_map[a]
        expect = -1 if base_arrow == 1 else 1
        assert pulled.actions[a].apply((1,)) == ((expect) % 3,)


def test_pullback_composes():
    A = negation_module()
    cg = cover_groupoid(C2, [{0}, {0}])
    cg2 = cover_groupoid(cg.groupoid, [set(cg.groupoid.objects())])
    once = pullback_module(cg.canon.compose(cg2.canon), A)
    twice = pullback_module(cg2.canon, pullback_module(cg.canon, A))
    assert once.base is cg2.groupoid
    assert tuple(f.orders for f in once.fibers) == tuple(f.orders for f in twice.fibers)
    assert all(h1.matrix == h2.matrix for h1, h2 in zip(once.actions, twice.actions))


def test_action_inverse_matrices():
    rng = random.Random(23)
    for _ in range(10):
        G, A = random_instance(rng, max_arrows=8)
        for g in G.arrows():
            gi = G.inv[g]
            fib = A.fibers[G.tgt[g]]
            assert A.actions[g].compose(A.actions[gi]).equals(AbHom.identity(fib))
            fib2 = A.fibers[G.src[g]]
            assert A.actions[gi].compose(A.actions[g]).equals(AbHom.identity(fib2))


def test_varying_fibers_allowed():
    U2 = unit_groupoid(2)
    A = GModule(U2, (Z2, Z3), (AbHom.identity(Z2), AbHom.identity(Z3)))
    assert validate_module(A).ok


def test_disjoint_union_module():
    G, inc1, inc2 = disjoint_union(C2, unit_groupoid(1))
    A = disjoint_union_module(G, inc1, inc2,
                              constant_module(C2, Z2),
                              constant_module(unit_groupoid(1), Z3))
    assert validate_module(A).ok
    assert A.fibers[0].orders == (2,) and A.fibers[1].orders == (3,)
