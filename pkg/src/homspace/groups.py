"""Combinatorial models of connected complex algebraic groups.

A reductive group H is presented as (Z x S_sc) / gluing, where Z is a central
torus of rank r, S_sc the simply connected semisimple part given by its root
datum, and the gluing subgroup a finite subgroup of Z(S_sc) x (Q/Z)^r given
by generators.  A connected group additionally records an informational
unipotent dimension: no invariant computed here ever sees the unipotent
part, which is why the model drops it.

The ambient simply connected overgroup G is deliberately not part of the
model: every invariant exposed downstream depends only on H, and any model
embeds into some SL_N.

The fundamental group is computed as the preimage lattice

    {(v, z) in Q^r x Z(S_sc) : (v mod Z^r, z) in gluing subgroup}

inside (1/N) Z^r x Z(S_sc), N the exponent of the torus parts, generated by
the standard basis of Z^r together with one lift of each gluing generator
(torus lifts take representatives in [0, 1), so presentations are
deterministic; the abstract group does not depend on the choice).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Optional, Sequence

from .abgroups import (
    AbHom,
    CyclicSpan,
    FgAbGroup,
    SubgroupPresentation,
    express_in_subgroup,
    span_in_cyclics,
    subgroup_from_generators,
    torsion_subgroup,
)
from .extensions import Character
from .intlinalg import IntMatrix, integer_kernel, lattice_row_basis
from .rootdata import (
    CenterElement,
    RootDatumSS,
    SimpleType,
    annihilator_in_center,
    build_datum,
    center,
    center_element_from_coords,
    Weight,
)

GLUING_ORDER_CAP = 10**6


@dataclass(frozen=True)
class GluingPair:
    """Generator of the gluing subgroup: a central element of S_sc together
    with a torsion point of the central torus."""

    center: CenterElement
    torus: tuple

    def __post_init__(self):
        torus = tuple(Fraction(v) for v in self.torus)
        for v in torus:
            if not 0 <= v < 1:
                raise ValueError(f"torus torsion point {v} must be reduced into [0, 1)")
        object.__setattr__(self, "torus", torus)


@dataclass(frozen=True)
class ReductiveModel:
    ss: RootDatumSS
    torus_rank: int
    gluing: tuple
    unipotent_dim: int = 0
    name: Optional[str] = None

    def __post_init__(self):
        if self.torus_rank < 0:
            raise ValueError("torus rank must be nonnegative")
        if self.unipotent_dim < 0:
            raise ValueError("unipotent dimension must be nonnegative")
        object.__setattr__(self, "gluing", tuple(self.gluing))
        for pair in self.gluing:
            if pair.center.datum != self.ss:
                raise ValueError("gluing element does not lie in the stated center")
            if len(pair.torus) != self.torus_rank:
                raise ValueError(
                    f"gluing torus part has {len(pair.torus)} coordinates, model has torus rank {self.torus_rank}"
                )

    def describe(self) -> str:
        return self.name or f"({self.ss}, r={self.torus_rank}, {len(self.gluing)} gluing generators)"


@dataclass(frozen=True)
class SemisimpleModel:
    """Quotient of a simply connected semisimple group by a central subgroup;
    the fundamental group is that kernel."""

    datum: RootDatumSS
    kernel: SubgroupPresentation

    def __post_init__(self):
        if self.kernel.ambient != center(self.datum).group:
            raise ValueError("kernel must be a subgroup of the center")


@dataclass(frozen=True)
class Pi1Result:
    group: FgAbGroup
    torsion: FgAbGroup
    derived_pi1: FgAbGroup


@dataclass(frozen=True)
class _GluingData:
    """Gluing subgroup resolved inside Z(S_sc) x (Z/N)^r."""

    model: ReductiveModel
    torus_exponent: int  # N
    ambient_orders: tuple  # center factors then r copies of N
    span: CyclicSpan

    @property
    def group(self) -> FgAbGroup:
        return self.span.group


@lru_cache(maxsize=None)
def _gluing(model: ReductiveModel) -> _GluingData:
    center_factors = model.ss.pq_group.invariant_factors
    n = lcm(1, *(v.denominator for pair in model.gluing for v in pair.torus))
    orders = center_factors + (n,) * model.torus_rank
    gens = []
    for pair in model.gluing:
        coords = list(pair.center.dual_coords()) + [int(v * n) for v in pair.torus]
        gens.append(coords)
    span = span_in_cyclics(orders, gens)
    data = _GluingData(model=model, torus_exponent=n, ambient_orders=orders, span=span)
    order = data.group.order()
    if order is None or order > GLUING_ORDER_CAP:
        raise ValueError(f"gluing subgroup too large (cap {GLUING_ORDER_CAP})")
    return data


def gluing_group(model: ReductiveModel) -> FgAbGroup:
    """Abstract type of the gluing subgroup."""
    return _gluing(model).group


def gluing_order(model: ReductiveModel) -> int:
    return _gluing(model).group.order()


def gluing_elements(model: ReductiveModel):
    """Materialized element table of the gluing subgroup, as gluing pairs."""
    data = _gluing(model)
    n = data.torus_exponent
    k = len(model.ss.pq_group.invariant_factors)
    incl = data.span.inclusion_columns
    out = []
    for elem in data.group.elements():
        coords = [0] * len(data.ambient_orders)
        for p, c in enumerate(elem.coords):
            col = incl.column(p)
            coords = [x + c * y for x, y in zip(coords, col)]
        coords = data.span.reduce_ambient(coords)
        ce = center_element_from_coords(model.ss, coords[:k])
        torus = tuple(Fraction(c, n) for c in coords[k:])
        out.append(GluingPair(ce, torus))
    return out


def validate(model: ReductiveModel):
    """Check the model and report human-readable certificates."""
    data = _gluing(model)
    certificates = []
    for i in range(len(model.gluing)):
        certificates.append(f"gluing generator {i} lies in the center of {model.ss}")
    certificates.append(f"gluing subgroup has order {data.group.order()}")
    certificates.append(f"gluing subgroup has exponent {data.group.exponent()}")
    certificates.append(f"unipotent dimension {model.unipotent_dim} is ignored by every invariant")
    return certificates


@lru_cache(maxsize=None)
def _pi1_span(model: ReductiveModel):
    """Fundamental group as a subgroup of Z^r (+) Z(S_sc), coordinates
    (N*v | center); returns the subgroup presentation in that ambient."""
    data = _gluing(model)
    n = data.torus_exponent
    r = model.torus_rank
    center_factors = model.ss.pq_group.invariant_factors
    k = len(center_factors)
    ambient = FgAbGroup(r, center_factors)
    gens = []
    for i in range(r):
        coords = [0] * ambient.ngens
        coords[i] = n
        gens.append(ambient.element(coords))
    for pair in model.gluing:
        torus = [int(v * n) for v in pair.torus]
        coords = torus + list(pair.center.dual_coords())
        gens.append(ambient.element(coords))
    return subgroup_from_generators(ambient, gens)


def _derived_kernel(model: ReductiveModel) -> SubgroupPresentation:
    """Kernel of the gluing subgroup's torus projection, as a subgroup of
    the center of S_sc."""
    data = _gluing(model)
    k = len(model.ss.pq_group.invariant_factors)
    r = model.torus_rank
    n = data.torus_exponent
    gamma = data.group
    incl = data.span.inclusion_columns
    # solve for elements of the gluing group with zero torus part
    torus_rows = IntMatrix.from_rows([list(incl.row(k + j)) for j in range(r)], cols=gamma.ngens)
    if r == 0 or n == 1:
        member_coords = [list(gamma.generator(p).coords) for p in range(gamma.ngens)]
    else:
        rel = IntMatrix.diagonal([n] * r)
        kern = integer_kernel(torus_rows.hstack(rel))
        vectors = [[kern[i, j] for i in range(gamma.ngens)] for j in range(kern.cols)]
        vectors.extend([d if p == q else 0 for q in range(gamma.ngens)] for p, d in enumerate(gamma.orders) if d)
        basis = lattice_row_basis(vectors, gamma.ngens)
        member_coords = [list(basis.row(i)) for i in range(basis.rows)]
    cgroup = center(model.ss).group
    gens = []
    for coords in member_coords:
        amb = [0] * len(data.ambient_orders)
        for p, c in enumerate(coords):
            col = incl.column(p)
            amb = [x + c * y for x, y in zip(amb, col)]
        amb = data.span.reduce_ambient(amb)
        assert all(t == 0 for t in amb[k:]), "derived kernel elements have no torus part"
        gens.append(cgroup.element(amb[:k]))
    return subgroup_from_generators(cgroup, gens)


def pi1(model: ReductiveModel) -> Pi1Result:
    """Fundamental group, its torsion, and the fundamental group of the
    derived subgroup (the unipotent part never contributes)."""
    lam = _pi1_span(model)
    group = lam.computed
    derived = _derived_kernel(model).computed
    result = Pi1Result(group=group, torsion=torsion_subgroup(group), derived_pi1=derived)
    assert result.torsion == result.derived_pi1, "torsion of pi1 must equal pi1 of the derived subgroup"
    return result


def derived_subgroup(model: ReductiveModel) -> SemisimpleModel:
    """Semisimple derived group: same root datum, kernel = gluing cap S_sc."""
    return SemisimpleModel(datum=model.ss, kernel=_derived_kernel(model))


def character_group(model: ReductiveModel):
    """Characters of H as a finite-index sublattice of Z^r (Hermite basis,
    one character per row) together with its abstract type."""
    _gluing(model)  # validates
    r = model.torus_rank
    if r == 0:
        return IntMatrix.identity(0), FgAbGroup(0, ())
    n = lcm(1, *(v.denominator for pair in model.gluing for v in pair.torus))
    rows = [[int(v * n) for v in pair.torus] for pair in model.gluing]
    if not rows:
        return IntMatrix.identity(r), FgAbGroup(r, ())
    cond = IntMatrix.from_rows(rows, cols=r)
    kern = integer_kernel(cond.hstack(IntMatrix.diagonal([n] * len(rows))))
    vectors = [[kern[i, j] for i in range(r)] for j in range(kern.cols)]
    basis = lattice_row_basis(vectors, r)
    assert basis.rows == r, "character lattice has finite index in Z^r"
    return basis, FgAbGroup(r, ())


def psi_character_map(model: ReductiveModel, mu: Sequence[int]) -> AbHom:
    """The homomorphism pi1(H) -> Z induced by a character: (v, z) maps to
    <mu, v>.  Rejects mu outside the character lattice."""
    mu = tuple(int(c) for c in mu)
    if len(mu) != model.torus_rank:
        raise ValueError(f"character needs {model.torus_rank} coordinates")
    for pair in model.gluing:
        val = sum(m * v for m, v in zip(mu, pair.torus))
        if val.denominator != 1:
            raise ValueError(f"not a character of the model: pairing {val} with a gluing generator is not integral")
    lam = _pi1_span(model)
    n = _gluing(model).torus_exponent
    r = model.torus_rank
    images = []
    for p in range(lam.computed.ngens):
        w = lam.inclusion.matrix.column(p)[:r]
        num = sum(m * wi for m, wi in zip(mu, w))
        assert num % n == 0, "character pairing must be integral on pi1"
        images.append(num // n)
    return AbHom(lam.computed, FgAbGroup(1, ()), IntMatrix.from_rows([images], cols=lam.computed.ngens))


def gluing_character_values(model: ReductiveModel, gamma: Character):
    """Values of a gluing-subgroup character on the model's own gluing
    generators."""
    data = _gluing(model)
    if gamma.group != data.group:
        raise ValueError(
            f"character is defined on {gamma.group}, but the gluing subgroup is {data.group}"
        )
    values = []
    for i in range(len(model.gluing)):
        coords = data.span.projection.column(i)
        values.append(gamma.evaluate(data.group.reduce(coords)))
    return values


def central_pushout(model: ReductiveModel, gamma: Character) -> ReductiveModel:
    """Model of the central extension (H~ x Gm)/gluing attached to a
    character of the gluing subgroup: one extra torus coordinate, each
    gluing generator extended by its character value."""
    values = gluing_character_values(model, gamma)
    new_pairs = tuple(
        GluingPair(pair.center, pair.torus + (values[i],)) for i, pair in enumerate(model.gluing)
    )
    return ReductiveModel(
        ss=model.ss,
        torus_rank=model.torus_rank + 1,
        gluing=new_pairs,
        unipotent_dim=model.unipotent_dim,
        name=None,
    )


def fiber_class_in_pi1(model: ReductiveModel) -> AbHom:
    """For a model with torus rank >= 1: the map Z -> pi1(H) classifying a
    loop around the last torus coordinate.  Used to certify extension
    exactness of central pushouts at the model level."""
    if model.torus_rank == 0:
        raise ValueError("model has no torus coordinate")
    lam = _pi1_span(model)
    n = _gluing(model).torus_exponent
    ambient = lam.ambient
    coords = [0] * ambient.ngens
    coords[model.torus_rank - 1] = n
    inside = express_in_subgroup(lam, ambient.element(coords))
    assert inside is not None, "integral torus loops lie in pi1"
    return AbHom(
        FgAbGroup(1, ()),
        lam.computed,
        IntMatrix.from_columns([list(inside.coords)], rows=lam.computed.ngens),
    )


def as_semisimple(model: ReductiveModel) -> SemisimpleModel:
    """Reinterpret a model with no torus and no unipotent part as a
    semisimple quotient S_sc/kernel."""
    if model.torus_rank != 0 or model.unipotent_dim != 0:
        raise ValueError("model is not semisimple: it has a torus or unipotent part")
    return SemisimpleModel(datum=model.ss, kernel=_derived_kernel(model))


def semisimple_as_reductive(sm: SemisimpleModel, name: Optional[str] = None) -> ReductiveModel:
    gens = []
    cgroup = center(sm.datum).group
    for p in range(sm.kernel.computed.ngens):
        elem = sm.kernel.inclusion(sm.kernel.computed.generator(p))
        gens.append(GluingPair(center_element_from_coords(sm.datum, elem.coords), ()))
    return ReductiveModel(ss=sm.datum, torus_rank=0, gluing=tuple(gens), unipotent_dim=0, name=name)


# ---------------------------------------------------------------------------
# presets

def _vector_rep_weights(kind: int, datum: RootDatumSS):
    """Weight basis of the standard orthogonal representation of SO(n),
    written in fundamental-weight coordinates of Spin(n)'s type."""
    m = datum.rank
    fam = datum.factors[0].family if datum.factors else None
    if kind == 3:  # Spin(3) = SL2, vector rep = adjoint
        return [Weight(datum, (2,))]
    if kind == 4:  # Spin(4) = SL2 x SL2
        return [Weight(datum, (1, 1)), Weight(datum, (-1, 1))]
    if kind == 6:  # Spin(6) = SL4, e-basis through the exterior square
        return [Weight(datum, (0, 1, 0)), Weight(datum, (1, -1, 1)), Weight(datum, (-1, 0, 1))]
    if fam == "B":
        out = []
        for i in range(m - 1):
            coords = [0] * m
            coords[i] = 1
            if i:
                coords[i - 1] = -1
            out.append(Weight(datum, coords))
        last = [0] * m
        last[m - 1] = 2
        if m >= 2:
            last[m - 2] = -1
        out.append(Weight(datum, last))
        return out
    if fam == "D":
        out = []
        for i in range(m - 2):
            coords = [0] * m
            coords[i] = 1
            if i:
                coords[i - 1] = -1
            out.append(Weight(datum, coords))
        second = [0] * m
        second[m - 1] = 1
        second[m - 2] = 1
        if m >= 3:
            second[m - 3] = -1
        out.append(Weight(datum, second))
        last = [0] * m
        last[m - 1] = 1
        last[m - 2] = -1
        out.append(Weight(datum, last))
        return out
    raise ValueError("no vector representation table for this datum")


def _spin_datum(n: int) -> RootDatumSS:
    if n == 3:
        return build_datum((SimpleType("A", 1),))
    if n == 4:
        return build_datum((SimpleType("A", 1), SimpleType("A", 1)))
    if n == 5:
        return build_datum((SimpleType("B", 2),))
    if n == 6:
        return build_datum((SimpleType("A", 3),))
    if n % 2:
        return build_datum((SimpleType("B", n // 2),))
    return build_datum((SimpleType("D", n // 2),))


def _torus_model(rank: int, name: str) -> ReductiveModel:
    return ReductiveModel(ss=build_datum(()), torus_rank=rank, gluing=(), unipotent_dim=0, name=name)


def preset(name: str) -> ReductiveModel:
    """Built-in models: SL(n), GL(n), PGL(n), SO(n), Sp(2n), Spin(n).

    Low-rank orthogonal and symplectic groups are expressed through the
    isomorphic type respecting the rank bounds (Spin(6) as A3, Sp(4) as B2,
    and so on); the SO(n) kernel inside the center of Spin(n) is computed as
    the annihilator of the vector-representation weight lattice, never
    hard-coded.
    """
    text = name.strip()
    import re

    match = re.fullmatch(r"(SL|GL|PGL|SO|Spin|Sp)\((\d+)\)", text)
    if not match:
        raise ValueError(f"unknown preset {name!r}")
    kind, num = match.group(1), int(match.group(2))
    if kind in ("SL", "GL", "PGL"):
        if num < 1:
            raise ValueError(f"bad preset rank in {name!r}")
        if num == 1:
            return _torus_model(1 if kind == "GL" else 0, text)
        datum = build_datum((SimpleType("A", num - 1),))
        cgen = center_element_from_coords(datum, (1,))
        if kind == "SL":
            return ReductiveModel(datum, 0, (), 0, name=text)
        if kind == "PGL":
            return ReductiveModel(datum, 0, (GluingPair(cgen, ()),), 0, name=text)
        return ReductiveModel(datum, 1, (GluingPair(cgen, (Fraction(1, num),)),), 0, name=text)
    if kind == "Sp":
        if num < 2 or num % 2:
            raise ValueError(f"Sp takes a positive even argument, got {name!r}")
        half = num // 2
        if half == 1:
            datum = build_datum((SimpleType("A", 1),))
        elif half == 2:
            datum = build_datum((SimpleType("B", 2),))
        else:
            datum = build_datum((SimpleType("C", half),))
        return ReductiveModel(datum, 0, (), 0, name=text)
    # orthogonal family
    if num < 2:
        raise ValueError(f"{kind}(n) needs n >= 2, got {name!r}")
    if num == 2:
        return _torus_model(1, text)
    datum = _spin_datum(num)
    if kind == "Spin":
        return ReductiveModel(datum, 0, (), 0, name=text)
    kernel = annihilator_in_center(datum, _vector_rep_weights(num if num in (3, 4, 6) else 0, datum))
    pairs = []
    for p in range(kernel.computed.ngens):
        elem = kernel.inclusion(kernel.computed.generator(p))
        pairs.append(GluingPair(center_element_from_coords(datum, elem.coords), ()))
    return ReductiveModel(datum, 0, tuple(pairs), 0, name=text)


PRESET_EXAMPLES = ("SL(3)", "GL(2)", "PGL(2)", "SO(7)", "Sp(4)", "Spin(8)")
