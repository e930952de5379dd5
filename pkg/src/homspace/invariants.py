"""Picard and Brauer invariants of homogeneous spaces G/H.

For G connected, simply connected, semisimple and H closed connected, every
invariant exposed here depends on H alone, so the ambient G is never part of
a query; reports are valid for any admissible ambient group.  The dictionary
is:

* Pic(G/H) is the character group X(H); for reductive H the analytic Picard
  group agrees, while models with a unipotent part only get the algebraic
  statement (the analytic side can genuinely differ there).
* Br(G/H) is Ext^1(pi1(H), Z), which also equals the cohomological and the
  analytic Brauer groups and the torsion of H^3(G/H, Z).
* Central Gm-extensions of H up to Baer sum are the characters of
  pi1 of the derived subgroup, and that same dual group is Pic of H.
* G/H is simply connected with pi2 = pi1(H), so H^2(G/H, Z) is the
  Z-linear dual of pi1(H).

Brauer classes are carried by character data of the torsion of pi1(H); the
geometric realizations behind them (Azumaya algebras, projective-space
fibrations) are deliberately out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abgroups import (
    AbElement,
    FgAbGroup,
    dual_finite,
    ext1_z,
    hom_group,
    subgroup_from_generators,
    Z,
)
from .extensions import (
    character_from_dual_element,
    character_to_extension,
    cocycle_class,
    cocycle_of,
    ext_group_via_characters,
)
from .groups import ReductiveModel, SemisimpleModel, character_group, pi1, validate
from .intlinalg import IntMatrix
from .rootdata import Weight, fundamental_weight, restrict_weight

TRIVIAL = FgAbGroup(0, ())


@dataclass(frozen=True)
class TopologicalInvariants:
    pi1_m: FgAbGroup
    pi2_m: FgAbGroup
    h2_m: FgAbGroup
    tors_h3_m: FgAbGroup


@dataclass(frozen=True)
class InvariantReport:
    pic_lattice: IntMatrix
    pic_group: FgAbGroup
    brauer: FgAbGroup
    e_al: FgAbGroup
    pi1_m: FgAbGroup
    pi2_m: FgAbGroup
    h2_m: FgAbGroup
    tors_h3_m: FgAbGroup
    notes: tuple

    def __post_init__(self):
        if self.brauer != self.e_al or self.brauer != self.tors_h3_m:
            raise RuntimeError(
                "internal invariant violation: Brauer, extension and Tors H^3 computations disagree"
            )
        if not self.pi1_m.is_trivial:
            raise RuntimeError("internal invariant violation: G/H must be simply connected")
        if self.h2_m != hom_group(self.pi2_m, Z):
            raise RuntimeError("internal invariant violation: H^2 must be the dual of pi2")


@dataclass(frozen=True)
class WeightBrauerRow:
    weight: Weight
    node: str
    restriction: AbElement
    brauer_class: AbElement

    @property
    def is_trivial(self) -> bool:
        return self.restriction.is_identity


def picard(model: ReductiveModel):
    """Pic(G/H) = X(H): the character lattice (Hermite basis rows inside
    Z^torus_rank) and its abstract group."""
    return character_group(model)


def brauer(model: ReductiveModel) -> FgAbGroup:
    """Br(G/H) = Ext^1(pi1(H), Z); equals the analytic Brauer group."""
    return ext1_z(pi1(model).group)


def algebraic_extension_group(model: ReductiveModel) -> FgAbGroup:
    """Classes of central Gm-extensions of H under Baer sum: the characters
    of pi1 of the derived subgroup."""
    return dual_finite(pi1(model).derived_pi1).group


def picard_of_group(model: ReductiveModel) -> FgAbGroup:
    """Pic(H), which equals Pic of the semisimple derived subgroup."""
    return dual_finite(pi1(model).derived_pi1).group


def topological_invariants(model: ReductiveModel) -> TopologicalInvariants:
    """pi1, pi2, H^2 and Tors H^3 of M = G/H."""
    fundamental = pi1(model).group
    return TopologicalInvariants(
        pi1_m=TRIVIAL,
        pi2_m=fundamental,
        h2_m=hom_group(fundamental, Z),
        tors_h3_m=ext1_z(fundamental),
    )


def invariant_report(model: ReductiveModel) -> InvariantReport:
    """All invariants of G/H for one model, with convention notes."""
    validate(model)
    lattice, pic = picard(model)
    topo = topological_invariants(model)
    notes = [
        "results hold for any admissible ambient G (connected, simply connected, semisimple)",
        "brauer group = cohomological = analytic brauer group of G/H",
    ]
    if model.unipotent_dim > 0:
        notes.append(
            "model has a unipotent part: Pic(G/H) is the algebraic Picard group only; "
            "the analytic Picard group may be larger"
        )
    else:
        notes.append("H is reductive: algebraic and analytic Picard groups of G/H agree")
    return InvariantReport(
        pic_lattice=lattice,
        pic_group=pic,
        brauer=brauer(model),
        e_al=algebraic_extension_group(model),
        pi1_m=topo.pi1_m,
        pi2_m=topo.pi2_m,
        h2_m=topo.h2_m,
        tors_h3_m=topo.tors_h3_m,
        notes=tuple(notes),
    )


def weight_brauer_table(sm: SemisimpleModel):
    """One row per fundamental weight of the simply connected cover: the
    weight's restriction to pi1(H) and the Brauer class it induces.

    The class is produced honestly through the extension chain (character to
    pullback extension to cocycle class) and lands in Ext^1(pi1(H), Z)
    realized as the dual of the kernel.  The rows always generate that full
    dual; the weights pairing trivially are exactly the characters of the
    quotient group.
    """
    datum = sm.datum
    kernel = sm.kernel
    dual = dual_finite(kernel.computed)
    rows = []
    labels = datum.node_labels()
    for i in range(datum.rank):
        w = fundamental_weight(datum, i)
        restriction = restrict_weight(w, kernel)
        chi = character_from_dual_element(restriction)
        extracted = cocycle_class(cocycle_of(character_to_extension(chi)))
        if extracted != chi:
            raise RuntimeError("internal invariant violation: extension round trip broke")
        brauer_group = ext_group_via_characters(kernel.computed)
        rows.append(
            WeightBrauerRow(
                weight=w,
                node=labels[i],
                restriction=restriction,
                brauer_class=brauer_group.element(restriction.coords),
            )
        )
    generated = subgroup_from_generators(dual.group, [r.restriction for r in rows])
    if generated.computed != dual.group:
        raise RuntimeError(
            "internal invariant violation: fundamental-weight restrictions must generate the full dual"
        )
    return rows
