"""Independent oracles for the acceptance suite.

Nothing here calls the library's differential, matrix or homology code: the
group-cohomology oracle enumerates cochains as dictionaries and applies the
alternating-sum formula written out from scratch; quotient group types are
recovered from element orders alone.
"""

from __future__ import annotations

import itertools

from groupoid_cohomology.abelian import invariant_factors_from_orders


def cyclic_table(n):
    """Cayley table of Z/n as a dict; elements are 0..n-1, unit 0."""
    return {(a, b): (a + b) % n for a in range(n) for b in range(n)}


def brute_force_group_cohomology(table, unit, act, mod, degree):
    """H^degree of a finite group acting on Z/mod, by full enumeration.

    `table` is the multiplication dict, `act[g]` the multiplier giving the
    action of g on Z/mod. Returns canonical invariant factors (via element
    orders of the quotient set Z^n / B^n, built extensionally).
    """
    elements = sorted({g for g, _ in table})
    m = mod

    def tuples(k):
        if k == 0:
            return [()]
        return list(itertools.product(elements, repeat=k))

    def coboundary(c, args):
        # (dc)(g1..gk) per the alternating-sum formula, written out directly
        k = len(args)
        if k == 1:
            (g,) = args
            return (act[g] * c[()] - c[()]) % m
        total = act[args[0]] * c[args[1:]]
        sign = -1
        for i in range(1, k):
            merged = args[:i - 1] + (table[(args[i - 1], args[i])],) + args[i + 1:]
            total += sign * c[merged]
            sign = -sign
        total += sign * c[args[:-1]]
        return total % m

    def all_cochains(k):
        doms = tuples(k)
        for values in itertools.product(range(m), repeat=len(doms)):
            yield dict(zip(doms, values))

    def is_cocycle(c, k):
        return all(coboundary(c, args) == 0 for args in tuples(k + 1))

    cocycles = [tuple(sorted(c.items())) for c in all_cochains(degree)
                if is_cocycle(c, degree)]
    if degree == 0:
        boundaries = {tuple(sorted({(): 0}.items()))}
    else:
        boundaries = set()
        for b in all_cochains(degree - 1):
            db = {args: coboundary(b, args) for args in tuples(degree)}
            boundaries.add(tuple(sorted(db.items())))

    # the quotient as a plain set with addition induced coordinatewise
    def add(c1, c2):
        return tuple((k, (v1 + v2) % m) for (k, v1), (_, v2) in zip(c1, c2))

    classes = []
    seen = set()
    for z in cocycles:
        if z in seen:
            continue
        orbit = {add(z, b) for b in boundaries}
        seen |= orbit
        classes.append(z)
    zero = tuple(sorted({args: 0 for args in tuples(degree)}.items()))

    def class_of(c):
        for rep in classes:
            if c in {add(rep, b) for b in boundaries}:
                return rep
        raise AssertionError("class escape")

    orders = []
    for rep in classes:
        k, acc = 1, rep
        while class_of(acc) != class_of(zero):
            acc = add(acc, rep)
            k += 1
        orders.append(k)
    return invariant_factors_from_orders(orders)


def periodic_resolution_cyclic(n, coeff_order, degree):
    """H^degree(Z/n, M) for M = Z (coeff_order 0) or Z/m, trivial action.

    From the standard two-periodic free resolution of Z over Z[Z/n]: the
    complex alternates multiplication by 0 and by n, so for M = Z the odd
    groups vanish and the positive even ones are Z/n; for M = Z/m both
    parities give Z/gcd(n, m). Frozen closed forms, no matrix work.
    """
    from math import gcd
    if degree == 0:
        return (0,) if coeff_order == 0 else (coeff_order,)
    if coeff_order == 0:
        return () if degree % 2 == 1 else (n,)
    g = gcd(n, coeff_order)
    return () if g == 1 else (g,)


def invariant_sections_by_enumeration(G, A):
    """Fixed sections counted extensionally: all (a_x) with g.a_{s(g)} = a_{r(g)}."""
    pools = [A.fiber(x).elements() for x in G.objects()]
    fixed = []
    for combo in itertools.product(*pools):
        good = True
        for g in G.arrows():
            if A.act(g, combo[G.src[g]]) != combo[G.tgt[g]]:
                good = False
                break
        if good:
            fixed.append(combo)
    return fixed


def section_orders(G, A, fixed):
    out = []
    for combo in fixed:
        k, acc = 1, combo
        while any(any(v) for v in acc):
            acc = tuple(A.fiber(x).add(acc[x], combo[x]) for x in G.objects())
            k += 1
        out.append(k)
    return out
