"""Root data for products of simple types: Cartan matrices, the weight and
root lattices, P/Q with explicit Smith coordinates, and centers as duals.

Numbering is Bourbaki throughout (see docs/conventions.md for the node-by-
node tables).  The Cartan matrix convention is

    cartan[i][j] = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j),

so the i-th simple root written in fundamental-weight coordinates is the
i-th *row* of the Cartan matrix, and the root-lattice inclusion Q -> P has
the transposed Cartan matrix (columns = simple roots).

The center of the simply connected group is only ever exposed as the dual
of P/Q together with the evaluation pairing: any identification of the
center with a concrete cyclic group is non-canonical, and downstream code
consumes pairings, never a chosen isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

from .abgroups import (
    AbElement,
    AbHom,
    FgAbGroup,
    FiniteDual,
    SubgroupPresentation,
    dual_finite,
    from_presentation,
    kernel_of,
    subgroup_from_generators,
)
from .intlinalg import IntMatrix, integer_kernel, lattice_row_basis

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4, "F": 4, "G": 2}


@dataclass(frozen=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        fam, rank = self.family, self.rank
        if fam == "E":
            if rank not in (6, 7, 8):
                raise ValueError(f"E{rank} is not a simple type")
        elif fam in ("F", "G"):
            if rank != _MIN_RANK[fam]:
                raise ValueError(f"{fam}{rank} is not a simple type")
        elif fam in _MIN_RANK:
            if rank < _MIN_RANK[fam]:
                raise ValueError(
                    f"{fam}{rank} is excluded; rank bounds (A>=1, B>=2, C>=3, D>=4) keep type names unambiguous"
                )
        else:
            raise ValueError(f"unknown family {fam!r}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def parse_simple_type(text: str) -> SimpleType:
    text = text.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise ValueError(f"bad simple type literal {text!r}")
    return SimpleType(text[0], int(text[1:]))


def cartan_matrix(t: SimpleType) -> IntMatrix:
    """Bourbaki Cartan matrix of a simple type."""
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i, j, vij=-1, vji=-1):
        a[i][j] = vij
        a[j][i] = vji

    if t.family == "A":
        for i in range(n - 1):
            edge(i, i + 1)
    elif t.family == "B":
        for i in range(n - 2):
            edge(i, i + 1)
        # last root short: <alpha_{n-1}, alpha_n^vee> = -2
        edge(n - 2, n - 1, -2, -1)
    elif t.family == "C":
        for i in range(n - 2):
            edge(i, i + 1)
        # last root long
        edge(n - 2, n - 1, -1, -2)
    elif t.family == "D":
        for i in range(n - 3):
            edge(i, i + 1)
        edge(n - 3, n - 2)
        edge(n - 3, n - 1)
    elif t.family == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][:n - 1]
        for i, j in zip(chain, chain[1:]):
            edge(i, j)
        edge(1, 3)
    elif t.family == "F":
        edge(0, 1)
        edge(1, 2, -2, -1)
        edge(2, 3)
    elif t.family == "G":
        edge(0, 1, -1, -3)
    return IntMatrix.from_rows(a)


@dataclass(frozen=True)
class RootDatumSS:
    """Product of simple root systems with its P/Q data.

    ``pq_proj`` sends a weight (fundamental-weight coordinates, factors
    concatenated) to its class in P/Q over the Smith-normal-form generators.
    """

    factors: tuple
    cartan: IntMatrix
    pq_group: FgAbGroup
    pq_proj: AbHom

    @property
    def rank(self) -> int:
        return self.cartan.rows

    def node_labels(self) -> tuple:
        labels = []
        for t in self.factors:
            labels.extend(f"{t}:{i + 1}" for i in range(t.rank))
        return tuple(labels)

    def __str__(self) -> str:
        return " x ".join(str(t) for t in self.factors) if self.factors else "(trivial)"


@lru_cache(maxsize=None)
def build_datum(factors: tuple) -> RootDatumSS:
    """Assemble the root datum of a (possibly empty) product of simple types."""
    factors = tuple(factors)
    rank = sum(t.rank for t in factors)
    rows = [[0] * rank for _ in range(rank)]
    offset = 0
    for t in factors:
        block = cartan_matrix(t)
        for i in range(t.rank):
            for j in range(t.rank):
                rows[offset + i][offset + j] = block[i, j]
        offset += t.rank
    cartan = IntMatrix.from_rows(rows, cols=rank)
    pq_group, pq_proj = from_presentation(rank, cartan.transpose())
    return RootDatumSS(factors=factors, cartan=cartan, pq_group=pq_group, pq_proj=pq_proj)


@dataclass(frozen=True)
class Weight:
    """Integral weight in fundamental-weight coordinates."""

    datum: RootDatumSS
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != self.datum.rank:
            raise ValueError(f"expected {self.datum.rank} coordinates, got {len(self.coords)}")

    def __add__(self, other: "Weight") -> "Weight":
        if self.datum != other.datum:
            raise ValueError("weights of different data")
        return Weight(self.datum, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def pq_class(self) -> AbElement:
        return self.datum.pq_proj(FgAbGroup(self.datum.rank, ()).element(self.coords))


def fundamental_weight(datum: RootDatumSS, index: int) -> Weight:
    coords = [0] * datum.rank
    coords[index] = 1
    return Weight(datum, tuple(coords))


def simple_root(datum: RootDatumSS, index: int) -> Weight:
    return Weight(datum, datum.cartan.row(index))


@dataclass(frozen=True)
class CenterElement:
    """Element of Z(H_sc), stored through the pairing with P/Q: one value in
    Q/Z per Smith generator of P/Q, denominator dividing that generator's
    order."""

    datum: RootDatumSS
    values: tuple

    def __post_init__(self):
        values = tuple(Fraction(v) % 1 for v in self.values)
        object.__setattr__(self, "values", values)
        factors = self.datum.pq_group.invariant_factors
        if len(values) != len(factors):
            raise ValueError(f"expected {len(factors)} values, got {len(values)}")
        for v, d in zip(values, factors):
            if d % v.denominator:
                raise ValueError(f"value {v} has denominator not dividing the generator order {d}")

    def dual_coords(self) -> tuple:
        """Coordinates over the canonical generators of the dual of P/Q."""
        return tuple(
            int(v * d) % d for v, d in zip(self.values, self.datum.pq_group.invariant_factors)
        )


def center(datum: RootDatumSS) -> FiniteDual:
    """Center of the simply connected group, as Hom(P/Q, Q/Z) with its
    evaluation pairing against P/Q."""
    return dual_finite(datum.pq_group)


def center_element_from_coords(datum: RootDatumSS, coords: Sequence[int]) -> CenterElement:
    factors = datum.pq_group.invariant_factors
    return CenterElement(datum, tuple(Fraction(int(c) % d, d) for c, d in zip(coords, factors)))


def center_subgroup(datum: RootDatumSS, elements: Sequence[CenterElement]) -> SubgroupPresentation:
    group = center(datum).group
    gens = []
    for e in elements:
        if e.datum != datum:
            raise ValueError("center element belongs to a different root datum")
        gens.append(group.element(e.dual_coords()))
    return subgroup_from_generators(group, gens)


def full_center_subgroup(datum: RootDatumSS) -> SubgroupPresentation:
    group = center(datum).group
    return subgroup_from_generators(group, [group.generator(i) for i in range(group.ngens)])


def _check_center_subgroup(datum: RootDatumSS, sub: SubgroupPresentation):
    if sub.ambient != center(datum).group:
        raise ValueError("subgroup does not live in the center of this datum")


def restrict_weight(weight: Weight, sub: SubgroupPresentation) -> AbElement:
    """Character of the central subgroup obtained by pairing the weight's
    class in P/Q against each subgroup generator; returned over the canonical
    generators of ``dual_finite(sub.computed)``."""
    datum = weight.datum
    _check_center_subgroup(datum, sub)
    cls = weight.pq_class().coords
    d_orders = datum.pq_group.invariant_factors
    dual = dual_finite(sub.computed)
    out = []
    for p in range(sub.computed.ngens):
        a = sub.inclusion.matrix.column(p)
        value = Fraction(0)
        for ai, ci, d in zip(a, cls, d_orders):
            value += Fraction(ai * ci, d)
        value %= 1
        m = sub.computed.invariant_factors[p]
        scaled = value * m
        assert scaled.denominator == 1, "pairing must be killed by the generator order"
        out.append(int(scaled) % m)
    return dual.group.element(out)


def annihilator_in_center(datum: RootDatumSS, weights: Sequence[Weight]) -> SubgroupPresentation:
    """Subgroup of the center pairing trivially with every given weight."""
    cgroup = center(datum).group
    classes = [w.pq_class() for w in weights]
    classes = [c for c in classes if not c.is_identity]
    if not classes:
        return full_center_subgroup(datum)
    d_orders = datum.pq_group.invariant_factors
    big = lcm(*d_orders) if d_orders else 1
    rows = []
    for c in classes:
        rows.append([(ci * (big // d)) % big for ci, d in zip(c.coords, d_orders)])
    target = FgAbGroup(0, (big,) * len(classes)) if big >= 2 else FgAbGroup(0, ())
    if target.is_trivial:
        return full_center_subgroup(datum)
    psi = AbHom(cgroup, target, IntMatrix.from_rows(rows, cols=cgroup.ngens))
    return kernel_of(psi)


def character_lattice_of_quotient(datum: RootDatumSS, sub: SubgroupPresentation) -> IntMatrix:
    """Hermite basis (one weight per row) of the finite-index sublattice of P
    of weights whose restriction to the central subgroup is trivial."""
    _check_center_subgroup(datum, sub)
    rank = datum.rank
    d_orders = datum.pq_group.invariant_factors
    s = sub.computed.ngens
    if s == 0 or rank == 0:
        return IntMatrix.identity(rank)
    big = lcm(*d_orders)
    proj = sub.inclusion.matrix.transpose() @ IntMatrix.from_rows(
        [[(big // d) * x for x in datum.pq_proj.matrix.row(i)] for i, d in enumerate(d_orders)],
        cols=rank,
    )
    # lambda is in the lattice iff proj @ lambda == 0 mod big
    scaled = proj.hstack(IntMatrix.diagonal([big] * s))
    kern = integer_kernel(scaled)
    vectors = [[kern[i, j] for i in range(rank)] for j in range(kern.cols)]
    basis = lattice_row_basis(vectors, rank)
    assert basis.rows == rank, "character lattice must have finite index in P"
    return basis
