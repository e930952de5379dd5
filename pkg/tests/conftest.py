"""Shared helpers: subgroup/group enumeration, cocycle-class counting oracle,
and randomized model generation."""

import random
from fractions import Fraction
from itertools import product

from homspace.abgroups import FgAbGroup, TRIVIAL_GROUP, from_presentation, subgroup_from_generators
from homspace.groups import GluingPair, ReductiveModel, gluing_order
from homspace.intlinalg import IntMatrix, integer_kernel, solve_integer
from homspace.rootdata import SimpleType, build_datum, center, center_element_from_coords


def all_subgroups(group):
    """Every subgroup of a finite canonical group, one presentation each."""
    elements = list(group.elements())
    seen = {}
    n = len(elements)
    for mask in range(1 << n):
        gens = [elements[i] for i in range(n) if mask >> i & 1]
        closure = {group.identity().coords}
        frontier = [group.identity()]
        while frontier:
            cur = frontier.pop()
            for h in gens:
                nxt = cur + h
                if nxt.coords not in closure:
                    closure.add(nxt.coords)
                    frontier.append(nxt)
        key = frozenset(closure)
        if key not in seen:
            seen[key] = subgroup_from_generators(group, gens)
    return list(seen.values())


_FAMILY_CHOICES = [
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5), ("A", 6),
    ("B", 2), ("B", 3), ("B", 4), ("B", 5), ("B", 6),
    ("C", 3), ("C", 4), ("C", 5), ("C", 6),
    ("D", 4), ("D", 5), ("D", 6),
    ("E", 6), ("G", 2), ("F", 4),
]


def random_model(rng: random.Random, max_factors=2, max_torus=3, max_gluing_order=48, unipotent_dim=0):
    """Random reductive model with a gluing subgroup of bounded order."""
    while True:
        nfac = rng.randint(0, max_factors)
        factors = tuple(SimpleType(*rng.choice(_FAMILY_CHOICES)) for _ in range(nfac))
        datum = build_datum(factors)
        r = rng.randint(0, max_torus)
        cgroup = center(datum).group
        pairs = []
        for _ in range(rng.randint(0, 2)):
            coords = [rng.randrange(d) for d in cgroup.invariant_factors]
            torus = tuple(
                Fraction(rng.randrange(den), den) for den in [rng.choice([1, 2, 3, 4, 6]) for _ in range(r)]
            )
            pairs.append(GluingPair(center_element_from_coords(datum, coords), torus))
        model = ReductiveModel(ss=datum, torus_rank=r, gluing=tuple(pairs), unipotent_dim=unipotent_dim)
        if gluing_order(model) <= max_gluing_order:
            return model


def small_groups(max_order):
    """All finite abelian groups of order <= max_order, canonical form."""
    groups = [TRIVIAL_GROUP]
    for order in range(2, max_order + 1):
        for k in range(1, order.bit_length() + 1):
            for chain in _chains(order, k):
                groups.append(FgAbGroup(0, chain))
    return groups


def _chains(order, k, smallest=2):
    if k == 1:
        if order >= smallest:
            yield (order,)
        return
    d = smallest
    while d ** k <= order:
        if order % d == 0:
            for rest in _chains(order // d, k - 1, d):
                if rest[0] % d == 0:
                    yield (d,) + rest
        d += 1


def count_cocycle_classes(group):
    """Independent oracle: the lattice of normalized symmetric cocycle tables
    modulo coboundaries, computed with integer linear algebra only."""
    elems = list(product(*(range(d) for d in group.invariant_factors)))
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)

    def add(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, group.invariant_factors))

    # unknowns: c(a, b) for unordered pairs of nonzero elements
    pairs = [(i, j) for i in range(1, n) for j in range(i, n)]
    pos = {p: t for t, p in enumerate(pairs)}

    def var(i, j):
        if i == 0 or j == 0:
            return None
        return pos[(i, j)] if i <= j else pos[(j, i)]

    rows = set()
    for a in range(n):
        for b in range(n):
            for h in range(n):
                row = [0] * len(pairs)
                ab = index[add(elems[a], elems[b])]
                bh = index[add(elems[b], elems[h])]
                for v, sign in ((var(a, b), 1), (var(ab, h), 1), (var(b, h), -1), (var(a, bh), -1)):
                    if v is not None:
                        row[v] += sign
                if any(row):
                    rows.add(tuple(row))
    constraint = IntMatrix.from_rows(sorted(rows), cols=len(pairs))
    cocycle_basis = integer_kernel(constraint)

    # coboundaries delta g for g supported on one nonzero element
    cols = []
    for g in range(1, n):
        vec = [0] * len(pairs)
        for i in range(1, n):
            for j in range(i, n):
                val = (1 if i == g else 0) + (1 if j == g else 0) - (1 if index[add(elems[i], elems[j])] == g else 0)
                vec[pos[(i, j)]] = val
        sol = solve_integer(cocycle_basis, vec)
        assert sol is not None, "coboundaries are cocycles"
        cols.append(list(sol))

    quotient, _ = from_presentation(cocycle_basis.cols, IntMatrix.from_columns(cols, rows=cocycle_basis.cols))
    return quotient
