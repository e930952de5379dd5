"""Finitely generated abelian groups in invariant-factor normal form.

A group ``Z^r x Z/d1 x ... x Z/dk`` (with ``d1 | d2 | ... | dk``, every
``di >= 2``) is a value: two groups are equal exactly when their canonical
data agree, so isomorphism testing is ``==``.  Elements carry coordinates
over the canonical generators, free generators first; torsion coordinates
are always stored reduced into ``[0, di)``.

Homomorphisms are integer matrices over the canonical generators and are
checked for well-definedness at construction (the image of a generator of
order ``d`` must be killed by ``d``).

Subgroup, kernel, cokernel and Hom/Ext computations all reduce to Smith and
Hermite normal forms from :mod:`homspace.intlinalg`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Optional, Sequence

from .intlinalg import (
    IntMatrix,
    integer_kernel,
    inverse_unimodular,
    lattice_row_basis,
    solve_integer,
    _snf_transform,
)


@dataclass(frozen=True)
class FgAbGroup:
    free_rank: int = 0
    invariant_factors: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        prev = None
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if prev is not None and d % prev:
                raise ValueError(f"invariant factors {prev}, {d} break the divisibility chain")
            prev = d

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    @property
    def orders(self) -> tuple:
        """Per-generator orders; 0 marks an infinite-order generator."""
        return (0,) * self.free_rank + self.invariant_factors

    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def exponent(self) -> int:
        if not self.is_finite:
            raise ValueError("infinite group has no exponent")
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def reduce(self, coords: Sequence[int]) -> tuple:
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        out = list(int(c) for c in coords)
        for i, d in enumerate(self.invariant_factors):
            j = self.free_rank + i
            out[j] %= d
        return tuple(out)

    def element(self, coords: Sequence[int]) -> "AbElement":
        return AbElement(self, tuple(coords))

    def identity(self) -> "AbElement":
        return AbElement(self, (0,) * self.ngens)

    def generator(self, i: int) -> "AbElement":
        coords = [0] * self.ngens
        coords[i] = 1
        return AbElement(self, tuple(coords))

    def elements(self) -> Iterable["AbElement"]:
        """All elements, lexicographic in coordinates.  Finite groups only."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        for coords in product(*(range(d) for d in self.invariant_factors)):
            yield AbElement(self, coords)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " x ".join(parts) if parts else "0"


TRIVIAL_GROUP = FgAbGroup(0, ())
Z = FgAbGroup(1, ())


def cyclic(n: int) -> FgAbGroup:
    if n < 2:
        return TRIVIAL_GROUP if n == 1 else Z
    return FgAbGroup(0, (n,))


@dataclass(frozen=True)
class AbElement:
    group: FgAbGroup
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", self.group.reduce(self.coords))

    def __add__(self, other: "AbElement") -> "AbElement":
        if self.group != other.group:
            raise ValueError("elements of different groups")
        return AbElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AbElement":
        return AbElement(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: "AbElement") -> "AbElement":
        return self + (-other)

    def __mul__(self, n: int) -> "AbElement":
        return AbElement(self.group, tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def is_identity(self) -> bool:
        return all(c == 0 for c in self.coords)

    def order(self) -> Optional[int]:
        """Element order, None when infinite."""
        if any(self.coords[: self.group.free_rank]):
            return None
        n = 1
        for c, d in zip(self.coords[self.group.free_rank :], self.group.invariant_factors):
            n = n * (d // gcd(c, d)) // gcd(n, d // gcd(c, d))
        return n


def _relation_columns(group: FgAbGroup) -> IntMatrix:
    """Columns spanning the relation lattice of the canonical presentation."""
    n = group.ngens
    cols = []
    for i, d in enumerate(group.invariant_factors):
        col = [0] * n
        col[group.free_rank + i] = d
        cols.append(col)
    return IntMatrix.from_columns(cols, rows=n)


class AbHom:
    """Homomorphism between canonical groups, as a matrix on generator
    coordinates (columns indexed by domain generators)."""

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix):
        if matrix.rows != codomain.ngens or matrix.cols != domain.ngens:
            raise ValueError(
                f"matrix shape {matrix.rows}x{matrix.cols} does not map "
                f"{domain.ngens} generators into {codomain.ngens}"
            )
        reduced = []
        for i in range(matrix.rows):
            row = list(matrix.row(i))
            o = codomain.orders[i]
            if o:
                row = [x % o for x in row]
            reduced.append(row)
        matrix = IntMatrix.from_rows(reduced, cols=matrix.cols)
        for j, d in enumerate(domain.orders):
            if d == 0:
                continue
            for i, o in enumerate(codomain.orders):
                x = d * matrix[i, j]
                if (o == 0 and x != 0) or (o != 0 and x % o):
                    raise ValueError(
                        f"not a homomorphism: generator {j} of order {d} maps to an element not killed by {d}"
                    )
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    def __call__(self, elem: AbElement) -> AbElement:
        if elem.group != self.domain:
            raise ValueError("element not in the domain")
        return AbElement(self.codomain, self.matrix.apply(elem.coords))

    def compose(self, inner: "AbHom") -> "AbHom":
        """self after inner."""
        if inner.codomain != self.domain:
            raise ValueError("homs do not compose")
        return AbHom(inner.domain, self.codomain, self.matrix @ inner.matrix)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AbHom)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.matrix))

    def __repr__(self) -> str:
        return f"AbHom({self.domain} -> {self.codomain}, {self.matrix!r})"


def identity_hom(group: FgAbGroup) -> AbHom:
    return AbHom(group, group, IntMatrix.identity(group.ngens))


def zero_hom(domain: FgAbGroup, codomain: FgAbGroup) -> AbHom:
    return AbHom(domain, codomain, IntMatrix.zeros(codomain.ngens, domain.ngens))


def multiplication_hom(group: FgAbGroup, n: int) -> AbHom:
    m = IntMatrix.diagonal([n] * group.ngens)
    return AbHom(group, group, m)


@dataclass(frozen=True)
class SubgroupPresentation:
    """A subgroup given by generators, with its abstract type and an
    injective inclusion back into the ambient group."""

    ambient: FgAbGroup
    generators: tuple
    computed: FgAbGroup
    inclusion: AbHom

    def order(self) -> Optional[int]:
        return self.computed.order()


@dataclass(frozen=True)
class CyclicSpan:
    """Subgroup span computed over a raw cyclic decomposition (``orders``
    need not form a divisibility chain; 0 marks a free coordinate).  This is
    the engine behind :func:`subgroup_from_generators` and is used directly
    where ambient coordinates do not come in canonical order."""

    orders: tuple
    group: FgAbGroup
    inclusion_columns: IntMatrix  # ambient coords of each canonical generator
    projection: IntMatrix  # Z^s -> canonical generators, s = #input generators

    def reduce_ambient(self, coords: Sequence[int]) -> tuple:
        return tuple(c % o if o else c for c, o in zip(coords, self.orders))


def span_in_cyclics(orders: Sequence[int], generator_coords: Sequence[Sequence[int]]) -> CyclicSpan:
    orders = tuple(int(o) for o in orders)
    n = len(orders)
    s = len(generator_coords)
    gcols = IntMatrix.from_columns([list(g) for g in generator_coords], rows=n)
    rel_cols = []
    for i, o in enumerate(orders):
        if o:
            col = [0] * n
            col[i] = o
            rel_cols.append(col)
    big = gcols.hstack(IntMatrix.from_columns(rel_cols, rows=n))
    kern = integer_kernel(big)
    ker_phi = IntMatrix.from_rows([list(kern.row(i)) for i in range(s)], cols=kern.cols)

    u, d, _ = _snf_transform(ker_phi, want_u=True, want_v=False)
    limit = min(d.rows, d.cols)
    diag = [d[i, i] for i in range(limit)]
    free_pos = [i for i in range(s) if i >= limit or diag[i] == 0]
    torsion_pos = [i for i in range(limit) if diag[i] >= 2]
    group = FgAbGroup(len(free_pos), tuple(diag[i] for i in torsion_pos))
    positions = free_pos + torsion_pos
    proj = IntMatrix.from_rows([list(u.row(p)) for p in positions], cols=s)

    uinv = inverse_unimodular(u)
    incl_cols = []
    for p in positions:
        v = uinv.column(p)
        img = gcols.apply(v)
        incl_cols.append([c % o if o else c for c, o in zip(img, orders)])
    inclusion = IntMatrix.from_columns(incl_cols, rows=n)
    return CyclicSpan(orders=orders, group=group, inclusion_columns=inclusion, projection=proj)


def from_presentation(n_generators: int, relations: IntMatrix):
    """Quotient Z^n by the column span of ``relations``; returns the group in
    canonical form and the projection hom from Z^n."""
    if relations.rows != n_generators:
        raise ValueError(f"relations must have {n_generators} rows, got {relations.rows}")
    u, d, _ = _snf_transform(relations, want_u=True, want_v=False)
    limit = min(d.rows, d.cols)
    diag = [d[i, i] for i in range(limit)]
    free_pos = [i for i in range(n_generators) if i >= limit or diag[i] == 0]
    torsion_pos = [i for i in range(limit) if diag[i] >= 2]
    group = FgAbGroup(len(free_pos), tuple(diag[i] for i in torsion_pos))
    proj_rows = [list(u.row(p)) for p in free_pos + torsion_pos]
    proj = AbHom(FgAbGroup(n_generators, ()), group, IntMatrix.from_rows(proj_rows, cols=n_generators))
    return group, proj


def subgroup_from_generators(ambient: FgAbGroup, gens: Sequence[AbElement]) -> SubgroupPresentation:
    for g in gens:
        if g.group != ambient:
            raise ValueError(f"generator belongs to {g.group}, not to ambient {ambient}")
    span = span_in_cyclics(ambient.orders, [g.coords for g in gens])
    inclusion = AbHom(span.group, ambient, span.inclusion_columns)
    sub = SubgroupPresentation(
        ambient=ambient, generators=tuple(gens), computed=span.group, inclusion=inclusion
    )
    assert _hom_is_injective(inclusion), "subgroup inclusion must be injective"
    return sub


def _preimage_lattice(f: AbHom) -> IntMatrix:
    """Rows form a basis of ``{x in Z^ngens : f(x) = 0 in codomain}``."""
    big = f.matrix.hstack(_relation_columns(f.codomain))
    kern = integer_kernel(big)
    n = f.domain.ngens
    vectors = [[kern[i, j] for i in range(n)] for j in range(kern.cols)]
    vectors.extend(_relation_columns(f.domain).transpose().to_rows())
    return lattice_row_basis(vectors, n)


def _hom_is_injective(f: AbHom) -> bool:
    pre = _preimage_lattice(f)
    orders = f.domain.orders
    for i in range(pre.rows):
        row = pre.row(i)
        for c, o in zip(row, orders):
            if o == 0:
                if c != 0:
                    return False
            elif c % o:
                return False
    return True


def kernel_of(f: AbHom) -> SubgroupPresentation:
    """Kernel as a subgroup presentation of the domain."""
    pre = _preimage_lattice(f)
    gens = [AbElement(f.domain, pre.row(i)) for i in range(pre.rows)]
    gens = [g for g in gens if not g.is_identity]
    return subgroup_from_generators(f.domain, gens)


def cokernel_of(f: AbHom):
    """Cokernel in canonical form plus the projection hom from the codomain."""
    big = f.matrix.hstack(_relation_columns(f.codomain))
    group, proj0 = from_presentation(f.codomain.ngens, big)
    proj = AbHom(f.codomain, group, proj0.matrix)
    return group, proj


def image_lattice(f: AbHom) -> IntMatrix:
    """Rows span ``im(f) + relations`` inside Z^(codomain generators)."""
    vectors = [list(f.matrix.column(j)) for j in range(f.matrix.cols)]
    vectors.extend(_relation_columns(f.codomain).transpose().to_rows())
    return lattice_row_basis(vectors, f.codomain.ngens)


def is_exact_at(f: AbHom, g: AbHom) -> bool:
    """True when image(f) equals kernel(g) inside codomain(f) = domain(g)."""
    if f.codomain != g.domain:
        raise ValueError("codomain of f must equal domain of g")
    return image_lattice(f) == _preimage_lattice(g)


def is_surjective(f: AbHom) -> bool:
    group, _ = cokernel_of(f)
    return group.is_trivial


def express_in_subgroup(sub: SubgroupPresentation, elem: AbElement) -> Optional[AbElement]:
    """Coordinates of ``elem`` in the subgroup's abstract group, or None when
    the element lies outside the subgroup."""
    if elem.group != sub.ambient:
        raise ValueError("element not in the ambient group")
    big = sub.inclusion.matrix.hstack(_relation_columns(sub.ambient))
    sol = solve_integer(big, elem.coords)
    if sol is None:
        return None
    return AbElement(sub.computed, sol[: sub.computed.ngens])


def hom_group(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    """Canonical form of Hom(A, B)."""
    free = a.free_rank * b.free_rank
    cyclics = []
    for _ in range(a.free_rank):
        cyclics.extend(b.invariant_factors)
    for d in a.invariant_factors:
        for e in b.invariant_factors:
            g = gcd(d, e)
            if g > 1:
                cyclics.append(g)
    return direct_sum_canonical(free, cyclics)


def direct_sum_canonical(free_rank: int, cyclic_orders: Sequence[int]) -> FgAbGroup:
    """Canonicalize a direct sum of cyclic groups of the given orders."""
    orders = [int(c) for c in cyclic_orders if int(c) != 1]
    if any(c < 1 for c in orders):
        raise ValueError("cyclic orders must be positive")
    group, _ = from_presentation(len(orders), IntMatrix.diagonal(orders))
    return FgAbGroup(free_rank + group.free_rank, group.invariant_factors)


def ext1_z(a: FgAbGroup) -> FgAbGroup:
    """Ext^1(A, Z): the free part dies, each Z/d contributes Z/d."""
    return FgAbGroup(0, a.invariant_factors)


def torsion_subgroup(a: FgAbGroup) -> FgAbGroup:
    return FgAbGroup(0, a.invariant_factors)


@dataclass(frozen=True)
class FiniteDual:
    """Hom(G, Q/Z) for finite G, with the evaluation pairing made explicit.

    The dual is abstractly isomorphic to G but not canonically; downstream
    code must consume the pairing, never the accidental equality of canonical
    forms.  ``generator_pairings[i][j]`` is the value of dual generator i on
    source generator j.
    """

    source: FgAbGroup
    group: FgAbGroup
    generator_pairings: tuple

    def pair(self, chi: AbElement, g: AbElement) -> Fraction:
        """Evaluation <chi, g> in Q/Z, returned as a Fraction in [0, 1)."""
        if chi.group != self.group:
            raise ValueError("first argument must lie in the dual group")
        if g.group != self.source:
            raise ValueError("second argument must lie in the source group")
        total = Fraction(0)
        for i, a in enumerate(chi.coords):
            for j, c in enumerate(g.coords):
                total += a * c * self.generator_pairings[i][j]
        return total % 1


def dual_finite(group: FgAbGroup) -> FiniteDual:
    if not group.is_finite:
        raise ValueError(f"dual_finite needs a finite group, got {group}")
    k = len(group.invariant_factors)
    pairings = tuple(
        tuple(Fraction(1, group.invariant_factors[i]) if i == j else Fraction(0) for j in range(k))
        for i in range(k)
    )
    return FiniteDual(source=group, group=group, generator_pairings=pairings)
