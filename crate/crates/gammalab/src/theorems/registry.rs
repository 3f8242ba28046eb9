//! The built-in statement registry.
//!
//! Naming: equivalences expand into one entry per implication direction
//! (`T5.6.1` is (1)⇒(2), `T5.6.2` the converse; `T3.1.12` is (1)⇒(2) of a
//! three-way cycle). Multi-part statements expand per part (`T5.4.1` ..
//! `T5.4.5`). Where the source text admits two readings an `a` (as-stated)
//! and a `c` (corrected) entry coexist. Remaining `iff` statements are kept
//! as single biconditional entries.

use std::sync::Arc;

use super::{
    ClaimOutcome, Eval, Hypothesis as H, Instance, MapSlot, OpSlot, Shape, TheoremSpec, Variant,
    Witness, WitnessPart,
};
use crate::maps::{MapWitness, PointMap};
use crate::ops::{induced_subspace_operation, InducedOperation, SubspacePolicy};
use crate::semi::{Analysis, Analyzed};
use crate::space::{submasks, Mask};

use ClaimOutcome::{Holds, Violated};
use WitnessPart::{Point, Set};

fn violated(parts: &[(&'static str, WitnessPart)]) -> ClaimOutcome {
    Violated(Witness::of(parts))
}

/// The complete registry, in source order.
pub fn registry() -> Vec<TheoremSpec> {
    vec![
        TheoremSpec {
            id: "L2.2.1",
            statement: "x ∈ scl(A) ⇒ every semi-nbd of x meets A",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: l2_2_1,
            replay: l2_2_1_replay,
        },
        TheoremSpec {
            id: "L2.2.2",
            statement: "every semi-nbd of x meets A ⇒ x ∈ scl(A)",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: l2_2_2,
            replay: l2_2_2_replay,
        },
        TheoremSpec {
            id: "P5",
            statement: "A semi-closed ⟺ X − A semi-open",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: p5,
            replay: p5_replay,
        },
        TheoremSpec {
            id: "T3.1.12",
            statement: "f semi-open ⇒ f(int_γ(A)) ⊆ sint(f(A)) for all A",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All), H::OpMonotone(OpSlot::All), H::OpRegular(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t3_1_12,
            replay: t3_1_12_replay,
        },
        TheoremSpec {
            id: "T3.1.23",
            statement: "f(int_γ(A)) ⊆ sint(f(A)) for all A ⇒ around every γ-open-nbd U of x some semi-nbd of f(x) sits inside f(U)",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All), H::OpMonotone(OpSlot::All), H::OpRegular(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t3_1_23,
            replay: t3_1_23_replay,
        },
        TheoremSpec {
            id: "T3.1.31",
            statement: "nbd condition ⇒ f semi-open",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All), H::OpMonotone(OpSlot::All), H::OpRegular(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t3_1_31,
            replay: t3_1_31_replay,
        },
        TheoremSpec {
            id: "T3.2",
            statement: "f bijective: f semi-open ⟺ f⁻¹(scl(B)) ⊆ cl_γ(f⁻¹(B)) for all B",
            shape: Shape::Map,
            hypotheses: &[H::MapBijective(MapSlot::F), H::OpOpen(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t3_2,
            replay: t3_2_replay,
        },
        TheoremSpec {
            id: "T3.5",
            statement: "f pointwise (γ,β)-continuous ⟺ preimages of β-open sets are γ-open",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::Y)],
            variant: Variant::AsStated,
            eval: t3_5,
            replay: t3_5_replay,
        },
        TheoremSpec {
            id: "T3.6",
            statement: "(γ,β)-open ⟺ f⁻¹(cl_β(B)) ⊆ cl_γ(f⁻¹(B)) ⟺ f⁻¹(bd_β(B)) ⊆ bd_γ(f⁻¹(B))",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::Y)],
            variant: Variant::AsStated,
            eval: t3_6,
            replay: t3_6_replay,
        },
        TheoremSpec {
            id: "T3.7",
            statement: "f (γ,β)-open and (γ,β)-continuous ⇒ preimages of semi-open sets are semi-open",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::Y)],
            variant: Variant::AsStated,
            eval: t3_7,
            replay: t3_7_replay,
        },
        TheoremSpec {
            id: "T3.8.1a",
            statement: "g injective, f (γ,β)-continuous surjective, g∘f semi-open ⇒ g semi-open under the X-side operation recipe",
            shape: Shape::Chain,
            hypotheses: &[H::MapInjective(MapSlot::G), H::MapSurjective(MapSlot::F)],
            variant: Variant::AsStated,
            eval: t3_8_1a,
            replay: t3_8_1a_replay,
        },
        TheoremSpec {
            id: "T3.8.1c",
            statement: "g injective, f (γ,β)-continuous surjective, g∘f semi-open ⇒ g maps β-open sets to semi-open sets of Z",
            shape: Shape::Chain,
            hypotheses: &[H::MapInjective(MapSlot::G), H::MapSurjective(MapSlot::F)],
            variant: Variant::Corrected,
            eval: t3_8_1c,
            replay: t3_8_1c_replay,
        },
        TheoremSpec {
            id: "T3.8.2",
            statement: "g (β,α)-open, (β,α)-continuous, injective, g∘f semi-open ⇒ f semi-open",
            shape: Shape::Chain,
            hypotheses: &[H::MapInjective(MapSlot::G), H::OpOpen(OpSlot::Y)],
            variant: Variant::AsStated,
            eval: t3_8_2,
            replay: t3_8_2_replay,
        },
        TheoremSpec {
            id: "T3.9",
            statement: "B semi-open, A ⊆ B semi-open in the subspace B ⇒ A semi-open in X",
            shape: Shape::Space,
            hypotheses: &[H::OpRegular(OpSlot::All), H::SubspaceUnambiguous],
            variant: Variant::AsStated,
            eval: t3_9,
            replay: t3_9_replay,
        },
        TheoremSpec {
            id: "T3.10",
            statement: "f bijective semi-open ⇒ every restriction f|f⁻¹(V) → V over γ-open V ≠ {} is semi-open",
            shape: Shape::Map,
            hypotheses: &[H::MapBijective(MapSlot::F), H::OpRegular(OpSlot::All), H::SubspaceUnambiguous],
            variant: Variant::AsStated,
            eval: t3_10,
            replay: t3_10_replay,
        },
        TheoremSpec {
            id: "T3.11",
            statement: "f bijective: f semi-open ⟺ every γ-closed F ⊇ f⁻¹(V) admits semi-closed G ⊇ V with f⁻¹(G) ⊆ F",
            shape: Shape::Map,
            hypotheses: &[H::MapBijective(MapSlot::F)],
            variant: Variant::AsStated,
            eval: t3_11,
            replay: t3_11_replay,
        },
        TheoremSpec {
            id: "L3.12.1",
            statement: "A semi-closed ⇒ int_γ(cl_γ(A)) ⊆ A",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: l3_12_1,
            replay: l3_12_1_replay,
        },
        TheoremSpec {
            id: "L3.12.2",
            statement: "int_γ(cl_γ(A)) ⊆ A ⇒ X − A semi-open",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: l3_12_2,
            replay: l3_12_2_replay,
        },
        TheoremSpec {
            id: "L3.12.3",
            statement: "X − A semi-open ⇒ A semi-closed",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: l3_12_3,
            replay: l3_12_3_replay,
        },
        TheoremSpec {
            id: "T3.13",
            statement: "f (γ,β)-open and (γ,β)-continuous ⇒ preimages of semi-closed sets are semi-closed",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::Y)],
            variant: Variant::AsStated,
            eval: t3_13,
            replay: t3_13_replay,
        },
        TheoremSpec {
            id: "T3.14.1a",
            statement: "f surjective (γ,β)-continuous, g injective, g∘f semi-closed ⇒ g semi-closed under the Y-side operation recipe on Z",
            shape: Shape::Chain,
            hypotheses: &[H::MapSurjective(MapSlot::F), H::MapInjective(MapSlot::G)],
            variant: Variant::AsStated,
            eval: t3_14_1a,
            replay: t3_14_1a_replay,
        },
        TheoremSpec {
            id: "T3.14.1c",
            statement: "f surjective (γ,β)-continuous, g injective, g∘f semi-closed ⇒ g maps β-closed sets to semi-closed sets of Z",
            shape: Shape::Chain,
            hypotheses: &[H::MapSurjective(MapSlot::F), H::MapInjective(MapSlot::G)],
            variant: Variant::Corrected,
            eval: t3_14_1c,
            replay: t3_14_1c_replay,
        },
        TheoremSpec {
            id: "T3.14.2",
            statement: "g (β,α)-open, (β,α)-continuous, injective, g∘f semi-closed ⇒ f semi-closed",
            shape: Shape::Chain,
            hypotheses: &[H::MapInjective(MapSlot::G), H::OpOpen(OpSlot::Y)],
            variant: Variant::AsStated,
            eval: t3_14_2,
            replay: t3_14_2_replay,
        },
        TheoremSpec {
            id: "T4.1",
            statement: "f semi-closed ⟺ int(cl(f(A))) ⊆ f(cl_γ(A)) for all A",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All), H::OpMonotone(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t4_1,
            replay: t4_1_replay,
        },
        TheoremSpec {
            id: "T4.2",
            statement: "f semi-closed ⟺ scl(f(A)) ⊆ f(cl_γ(A)) for all A",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All), H::OpMonotone(OpSlot::All)],
            variant: Variant::Corrected,
            eval: t4_2,
            replay: t4_2_replay,
        },
        TheoremSpec {
            id: "T4.3",
            statement: "f surjective semi-closed ⟺ every γ-open U ⊇ f⁻¹(B) admits semi-open V ⊇ B with f⁻¹(V) ⊆ U",
            shape: Shape::Map,
            hypotheses: &[H::MapSurjective(MapSlot::F), H::OpMonotone(OpSlot::All), H::OpRegular(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t4_3,
            replay: t4_3_replay,
        },
        TheoremSpec {
            id: "T5.1.12",
            statement: "f semi-continuous ⇒ int(cl(f⁻¹(B))) ⊆ f⁻¹(cl_β(B)) for all B",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t5_1_12,
            replay: t5_1_12_replay,
        },
        TheoremSpec {
            id: "T5.1.23",
            statement: "int(cl(f⁻¹(B))) ⊆ f⁻¹(cl_β(B)) for all B ⇒ f(int(cl(A))) ⊆ cl_β(f(A)) for all A",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t5_1_23,
            replay: t5_1_23_replay,
        },
        TheoremSpec {
            id: "T5.1.31",
            statement: "f(int(cl(A))) ⊆ cl_β(f(A)) for all A ⇒ f semi-continuous",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t5_1_31,
            replay: t5_1_31_replay,
        },
        TheoremSpec {
            id: "R5.3",
            statement: "p ∈ sd(A) ⟺ p ∈ scl(A − {p})",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: r5_3,
            replay: r5_3_replay,
        },
        TheoremSpec {
            id: "T5.4.1",
            statement: "scl(A) = A ∪ sd(A)",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: t5_4_1,
            replay: t5_4_1_replay,
        },
        TheoremSpec {
            id: "T5.4.2",
            statement: "sd(A ∪ B) = sd(A) ∪ sd(B)",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: t5_4_2,
            replay: t5_4_2_replay,
        },
        TheoremSpec {
            id: "T5.4.3",
            statement: "sd(A ∪ B ∪ C) = sd(A) ∪ sd(B) ∪ sd(C) (finite families)",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: t5_4_3,
            replay: t5_4_3_replay,
        },
        TheoremSpec {
            id: "T5.4.4",
            statement: "sd(sd(A)) ⊆ sd(A)",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: t5_4_4,
            replay: t5_4_4_replay,
        },
        TheoremSpec {
            id: "T5.4.5",
            statement: "scl(sd(A)) = sd(A)",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: t5_4_5,
            replay: t5_4_5_replay,
        },
        TheoremSpec {
            id: "T5.5.1",
            statement: "f semi-continuous ⇒ scl(f⁻¹(A)) ⊆ f⁻¹(cl_β(A)) for all A",
            shape: Shape::Map,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: t5_5_1,
            replay: t5_5_1_replay,
        },
        TheoremSpec {
            id: "T5.5.2",
            statement: "scl(f⁻¹(A)) ⊆ f⁻¹(cl_β(A)) for all A ⇒ f semi-continuous",
            shape: Shape::Map,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: t5_5_2,
            replay: t5_5_2_replay,
        },
        TheoremSpec {
            id: "T5.6.1",
            statement: "f semi-continuous ⇒ f(sd(A)) ⊆ cl_β(f(A)) for all A",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t5_6_1,
            replay: t5_6_1_replay,
        },
        TheoremSpec {
            id: "T5.6.2",
            statement: "f(sd(A)) ⊆ cl_β(f(A)) for all A ⇒ f semi-continuous",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t5_6_2,
            replay: t5_6_2_replay,
        },
        TheoremSpec {
            id: "T5.7",
            statement: "f semi-continuous ⟺ every γ-open B ∋ f(x) admits semi-open A ∋ x with f(A) ⊆ B",
            shape: Shape::Map,
            hypotheses: &[H::OpRegular(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t5_7,
            replay: t5_7_replay,
        },
        TheoremSpec {
            id: "T5.8",
            statement: "f injective semi-continuous ⇒ f(sd(A)) ⊆ derived(f(A)) for all A",
            shape: Shape::Map,
            hypotheses: &[H::MapInjective(MapSlot::F), H::OpRegular(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t5_8,
            replay: t5_8_replay,
        },
        TheoremSpec {
            id: "T5.9",
            statement: "f(sd(A)) ⊆ derived(f(A)) for all A ⇒ f semi-continuous",
            shape: Shape::Map,
            hypotheses: &[H::OpOpen(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t5_9,
            replay: t5_9_replay,
        },
        TheoremSpec {
            id: "T5.10.1",
            statement: "f semi-continuous ⇒ f⁻¹(int_β(B)) ⊆ sint(f⁻¹(B)) for all B",
            shape: Shape::Map,
            hypotheses: &[H::OpRegular(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t5_10_1,
            replay: t5_10_1_replay,
        },
        TheoremSpec {
            id: "T5.10.2",
            statement: "f⁻¹(int_β(B)) ⊆ sint(f⁻¹(B)) for all B ⇒ f semi-continuous",
            shape: Shape::Map,
            hypotheses: &[H::OpRegular(OpSlot::All)],
            variant: Variant::AsStated,
            eval: t5_10_2,
            replay: t5_10_2_replay,
        },
        TheoremSpec {
            id: "aux-L2.3",
            statement: "U γ-open ⇒ U ∩ cl_γ(A) ⊆ cl_γ(U ∩ A)",
            shape: Shape::Space,
            hypotheses: &[],
            variant: Variant::AsStated,
            eval: aux_l2_3,
            replay: aux_l2_3_replay,
        },
    ]
}

// ---------------------------------------------------------------------------
// single-space claims
// ---------------------------------------------------------------------------

fn l2_2_1(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    let univ = an.universe();
    for a in 0..=univ {
        let hull = an.scl(a, e.config.closed_def);
        for x in 0..an.n() {
            if hull >> x & 1 == 0 {
                continue;
            }
            for nset in 0..=univ {
                if an.is_semi_nbd(nset, x) && nset & a == 0 {
                    return violated(&[("A", Set(a)), ("x", Point(x)), ("N", Set(nset))]);
                }
            }
        }
    }
    Holds
}

fn l2_2_1_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let (Some(a), Some(x), Some(nset)) = (w.set("A"), w.point("x"), w.set("N")) else {
        return false;
    };
    let an = &inst.space().analysis;
    an.scl(a, e.config.closed_def) >> x & 1 == 1 && an.is_semi_nbd(nset, x) && nset & a == 0
}

fn l2_2_2(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    let univ = an.universe();
    for a in 0..=univ {
        let hull = an.scl(a, e.config.closed_def);
        for x in 0..an.n() {
            if hull >> x & 1 == 1 {
                continue;
            }
            let separated = (0..=univ).any(|n| an.is_semi_nbd(n, x) && n & a == 0);
            if !separated {
                return violated(&[("A", Set(a)), ("x", Point(x))]);
            }
        }
    }
    Holds
}

fn l2_2_2_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let (Some(a), Some(x)) = (w.set("A"), w.point("x")) else {
        return false;
    };
    let an = &inst.space().analysis;
    let univ = an.universe();
    an.scl(a, e.config.closed_def) >> x & 1 == 0
        && !(0..=univ).any(|n| an.is_semi_nbd(n, x) && n & a == 0)
}

fn p5(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    let univ = an.universe();
    for a in 0..=univ {
        if an.is_semi_closed(a, e.config.closed_def) != an.is_semi_open(univ & !a) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn p5_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let an = &inst.space().analysis;
    an.is_semi_closed(a, e.config.closed_def) != an.is_semi_open(an.universe() & !a)
}

fn l3_12_1(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    for a in 0..=an.universe() {
        if an.is_semi_closed(a, e.config.closed_def) && !l3_12_interior_bound(an, a) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn l3_12_interior_bound(an: &Analysis, a: Mask) -> bool {
    let g = an.gamma();
    g.int_gamma(g.cl_gamma(a)) & !a == 0
}

fn l3_12_1_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let an = &inst.space().analysis;
    an.is_semi_closed(a, e.config.closed_def) && !l3_12_interior_bound(an, a)
}

fn l3_12_2(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    for a in 0..=an.universe() {
        if l3_12_interior_bound(an, a) && !an.is_semi_open(an.universe() & !a) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn l3_12_2_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let an = &inst.space().analysis;
    l3_12_interior_bound(an, a) && !an.is_semi_open(an.universe() & !a)
}

fn l3_12_3(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    for a in 0..=an.universe() {
        if an.is_semi_open(an.universe() & !a) && !an.is_semi_closed(a, e.config.closed_def) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn l3_12_3_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let an = &inst.space().analysis;
    an.is_semi_open(an.universe() & !a) && !an.is_semi_closed(a, e.config.closed_def)
}

fn r5_3(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    for a in 0..=an.universe() {
        for p in 0..an.n() {
            let in_sd = an.sd(a) >> p & 1 == 1;
            let in_hull = an.scl(a & !(1 << p), e.config.closed_def) >> p & 1 == 1;
            if in_sd != in_hull {
                return violated(&[("A", Set(a)), ("p", Point(p))]);
            }
        }
    }
    Holds
}

fn r5_3_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let (Some(a), Some(p)) = (w.set("A"), w.point("p")) else { return false };
    let an = &inst.space().analysis;
    (an.sd(a) >> p & 1 == 1) != (an.scl(a & !(1 << p), e.config.closed_def) >> p & 1 == 1)
}

fn t5_4_1(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    for a in 0..=an.universe() {
        if an.scl(a, e.config.closed_def) != a | an.sd(a) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn t5_4_1_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let an = &inst.space().analysis;
    an.scl(a, e.config.closed_def) != a | an.sd(a)
}

fn t5_4_2(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    for a in 0..=an.universe() {
        for b in 0..=an.universe() {
            if an.sd(a | b) != an.sd(a) | an.sd(b) {
                return violated(&[("A", Set(a)), ("B", Set(b))]);
            }
        }
    }
    Holds
}

fn t5_4_2_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let (Some(a), Some(b)) = (w.set("A"), w.set("B")) else { return false };
    let an = &inst.space().analysis;
    an.sd(a | b) != an.sd(a) | an.sd(b)
}

fn t5_4_3(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    for a in 0..=an.universe() {
        for b in 0..=an.universe() {
            for c in 0..=an.universe() {
                if an.sd(a | b | c) != an.sd(a) | an.sd(b) | an.sd(c) {
                    return violated(&[("A", Set(a)), ("B", Set(b)), ("C", Set(c))]);
                }
            }
        }
    }
    Holds
}

fn t5_4_3_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let (Some(a), Some(b), Some(c)) = (w.set("A"), w.set("B"), w.set("C")) else {
        return false;
    };
    let an = &inst.space().analysis;
    an.sd(a | b | c) != an.sd(a) | an.sd(b) | an.sd(c)
}

fn t5_4_4(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    for a in 0..=an.universe() {
        if an.sd(an.sd(a)) & !an.sd(a) != 0 {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn t5_4_4_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let an = &inst.space().analysis;
    an.sd(an.sd(a)) & !an.sd(a) != 0
}

fn t5_4_5(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    for a in 0..=an.universe() {
        if an.scl(an.sd(a), e.config.closed_def) != an.sd(a) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn t5_4_5_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let an = &inst.space().analysis;
    an.scl(an.sd(a), e.config.closed_def) != an.sd(a)
}

fn aux_l2_3(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let an = &inst.space().analysis;
    let g = an.gamma();
    for u in g.gamma_open_family().iter() {
        for a in 0..=an.universe() {
            if (u & g.cl_gamma(a)) & !g.cl_gamma(u & a) != 0 {
                return violated(&[("U", Set(u)), ("A", Set(a))]);
            }
        }
    }
    Holds
}

fn aux_l2_3_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let (Some(u), Some(a)) = (w.set("U"), w.set("A")) else { return false };
    let g = inst.space().analysis.gamma();
    g.is_gamma_open(u) && (u & g.cl_gamma(a)) & !g.cl_gamma(u & a) != 0
}

fn t3_9(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let sp = inst.space();
    let an = &sp.analysis;
    for b in an.semi_open_family().iter() {
        if b == 0 {
            continue;
        }
        let Some((sub, induced)) = induced_analysis(sp, b, e) else { continue };
        for a in submasks(b) {
            let rel = induced.trace.compress(a);
            if sub.is_semi_open(rel) && !an.is_semi_open(a) {
                return violated(&[("B", Set(b)), ("A", Set(a))]);
            }
        }
    }
    Holds
}

fn t3_9_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let (Some(b), Some(a)) = (w.set("B"), w.set("A")) else { return false };
    let sp = inst.space();
    let an = &sp.analysis;
    if b == 0 || !an.semi_open_family().contains(b) || a & !b != 0 {
        return false;
    }
    let Some((sub, induced)) = induced_analysis(sp, b, e) else { return false };
    sub.is_semi_open(induced.trace.compress(a)) && !an.is_semi_open(a)
}

/// Induced operation plus its analysis; `None` when ambiguity is enforced
/// and present.
fn induced_analysis(sp: &Arc<Analyzed>, b: Mask, e: &Eval) -> Option<(Analysis, InducedOperation)> {
    let induced = induced_subspace_operation(&sp.op, b, SubspacePolicy::Union)
        .expect("carrier is nonempty and in range");
    if e.enforce_unambiguous && induced.report.is_ambiguous() {
        return None;
    }
    let op = induced.operation.clone().expect("union policy always constructs");
    Some((Analysis::new(&op), induced))
}

// ---------------------------------------------------------------------------
// map-shaped claims
// ---------------------------------------------------------------------------

/// Property (2) of the semi-open characterisation: `f(int_γ(A)) ⊆ sint(f(A))`.
fn image_interior_bound(f: &PointMap, a: Mask) -> bool {
    let img = f.image(a);
    f.image(f.dom.analysis.gamma().int_gamma(a)) & !f.cod.analysis.sint(img) == 0
}

fn t3_1_12(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if f.semi_open_witness().is_some() {
        return Holds;
    }
    for a in 0..=f.dom.space.universe() {
        if !image_interior_bound(f, a) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn t3_1_12_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let f = inst.map();
    f.semi_open_witness().is_none() && !image_interior_bound(f, a)
}

fn interior_bound_everywhere(f: &PointMap) -> bool {
    (0..=f.dom.space.universe()).all(|a| image_interior_bound(f, a))
}

/// A γ-open-nbd of `x` is any superset of a γ-open set containing `x`.
fn gamma_open_nbd(f: &PointMap, x: usize, u: Mask) -> bool {
    f.dom
        .analysis
        .gamma()
        .gamma_open_family()
        .iter()
        .any(|o| o >> x & 1 == 1 && o & !u == 0)
}

fn nbd_condition_at(f: &PointMap, x: usize, u: Mask) -> bool {
    // some semi-nbd of f(x) inside f(U)
    f.cod.analysis.sint(f.image(u)) >> f.apply(x) & 1 == 1
}

fn t3_1_23(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if !interior_bound_everywhere(f) {
        return Holds;
    }
    for x in 0..f.dom.space.n() {
        for u in 0..=f.dom.space.universe() {
            if gamma_open_nbd(f, x, u) && !nbd_condition_at(f, x, u) {
                return violated(&[("x", Point(x)), ("U", Set(u))]);
            }
        }
    }
    Holds
}

fn t3_1_23_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let (Some(x), Some(u)) = (w.point("x"), w.set("U")) else { return false };
    let f = inst.map();
    interior_bound_everywhere(f) && gamma_open_nbd(f, x, u) && !nbd_condition_at(f, x, u)
}

fn nbd_condition_everywhere(f: &PointMap) -> bool {
    (0..f.dom.space.n()).all(|x| {
        (0..=f.dom.space.universe())
            .all(|u| !gamma_open_nbd(f, x, u) || nbd_condition_at(f, x, u))
    })
}

fn t3_1_31(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if !nbd_condition_everywhere(f) {
        return Holds;
    }
    match f.semi_open_witness() {
        Some(MapWitness::Set(u)) => violated(&[("U", Set(u))]),
        _ => Holds,
    }
}

fn t3_1_31_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(u) = w.set("U") else { return false };
    let f = inst.map();
    nbd_condition_everywhere(f)
        && f.dom.analysis.gamma().is_gamma_open(u)
        && !f.cod.analysis.is_semi_open(f.image(u))
}

/// `f⁻¹(scl(B)) ⊆ cl_γ(f⁻¹(B))` at one `B`.
fn t3_2_bound(f: &PointMap, e: &Eval, b: Mask) -> bool {
    let lhs = f.preimage(f.cod.analysis.scl(b, e.config.closed_def));
    lhs & !f.dom.analysis.gamma().cl_gamma(f.preimage(b)) == 0
}

fn t3_2(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    let semi_open = f.semi_open_witness().is_none();
    let bound_witness = (0..=f.cod.space.universe()).find(|&b| !t3_2_bound(f, e, b));
    match (semi_open, bound_witness) {
        (true, Some(b)) => violated(&[("B", Set(b))]),
        (false, None) => match f.semi_open_witness() {
            Some(MapWitness::Set(u)) => violated(&[("U", Set(u))]),
            _ => Holds,
        },
        _ => Holds,
    }
}

fn t3_2_replay(inst: &Instance, e: &Eval, _w: &Witness) -> bool {
    matches!(t3_2(inst, e), Violated(_))
}

fn t3_5(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    let pointwise = f.continuity_pointwise_witness();
    let preimage = f.continuity_preimage_witness();
    match (pointwise, preimage) {
        (None, Some(MapWitness::Set(v))) => violated(&[("V", Set(v))]),
        (Some(MapWitness::PointAndSet { x, set }), None) => {
            violated(&[("x", Point(x)), ("V", Set(set))])
        }
        _ => Holds,
    }
}

fn t3_5_replay(inst: &Instance, e: &Eval, _w: &Witness) -> bool {
    matches!(t3_5(inst, e), Violated(_))
}

fn t3_6_preimage_closure_bound(f: &PointMap, b: Mask) -> bool {
    f.preimage(f.cod.analysis.gamma().cl_gamma(b))
        & !f.dom.analysis.gamma().cl_gamma(f.preimage(b))
        == 0
}

fn t3_6_preimage_boundary_bound(f: &PointMap, b: Mask) -> bool {
    f.preimage(f.cod.analysis.gamma().bd_gamma(b))
        & !f.dom.analysis.gamma().bd_gamma(f.preimage(b))
        == 0
}

fn t3_6(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    let p1 = f.open_map_witness().is_none();
    let cl_witness = (0..=f.cod.space.universe()).find(|&b| !t3_6_preimage_closure_bound(f, b));
    let bd_witness = (0..=f.cod.space.universe()).find(|&b| !t3_6_preimage_boundary_bound(f, b));
    let p2 = cl_witness.is_none();
    let p3 = bd_witness.is_none();
    if p1 == p2 && p2 == p3 {
        return Holds;
    }
    if let Some(b) = cl_witness {
        return violated(&[("B", Set(b))]);
    }
    if let Some(b) = bd_witness {
        return violated(&[("B", Set(b))]);
    }
    match f.open_map_witness() {
        Some(MapWitness::Set(u)) => violated(&[("U", Set(u))]),
        _ => Holds,
    }
}

fn t3_6_replay(inst: &Instance, e: &Eval, _w: &Witness) -> bool {
    matches!(t3_6(inst, e), Violated(_))
}

fn t3_7(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if f.open_map_witness().is_some() || f.continuity_pointwise_witness().is_some() {
        return Holds;
    }
    for b in f.cod.analysis.semi_open_family().iter() {
        if !f.dom.analysis.is_semi_open(f.preimage(b)) {
            return violated(&[("B", Set(b))]);
        }
    }
    Holds
}

fn t3_7_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(b) = w.set("B") else { return false };
    let f = inst.map();
    f.open_map_witness().is_none()
        && f.continuity_pointwise_witness().is_none()
        && f.cod.analysis.is_semi_open(b)
        && !f.dom.analysis.is_semi_open(f.preimage(b))
}

fn t3_10(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if f.semi_open_witness().is_some() {
        return Holds;
    }
    for v in f.cod.analysis.gamma().gamma_open_family().iter() {
        if v == 0 {
            continue;
        }
        if let Some(u) = t3_10_restriction_failure(f, e, v) {
            return violated(&[("V", Set(v)), ("U", Set(u))]);
        }
    }
    Holds
}

/// Failing γ_B-open set of the restriction `f|f⁻¹(V): f⁻¹(V) → V`, reported
/// in parent coordinates of the domain.
fn t3_10_restriction_failure(f: &PointMap, e: &Eval, v: Mask) -> Option<Mask> {
    let pre = f.preimage(v);
    if pre == 0 {
        return None;
    }
    let dom_ind = induced_subspace_operation(&f.dom.op, pre, SubspacePolicy::Union).ok()?;
    let cod_ind = induced_subspace_operation(&f.cod.op, v, SubspacePolicy::Union).ok()?;
    if e.enforce_unambiguous
        && (dom_ind.report.is_ambiguous() || cod_ind.report.is_ambiguous())
    {
        return None;
    }
    let dom_sub = Analyzed::new(dom_ind.operation.clone().expect("union policy"));
    let cod_sub = Analyzed::new(cod_ind.operation.clone().expect("union policy"));
    let digits: Vec<u8> = dom_ind
        .trace
        .points
        .iter()
        .map(|&p| {
            let q = f.apply(p);
            cod_ind.trace.points.iter().position(|&c| c == q).expect("f maps f⁻¹(V) into V")
                as u8
        })
        .collect();
    let r = PointMap::new(dom_sub, cod_sub, digits).expect("restriction is total");
    match r.semi_open_witness() {
        Some(MapWitness::Set(u_rel)) => Some(dom_ind.trace.expand(u_rel)),
        _ => None,
    }
}

fn t3_10_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let (Some(v), Some(_u)) = (w.set("V"), w.set("U")) else { return false };
    let f = inst.map();
    f.semi_open_witness().is_none()
        && v != 0
        && f.cod.analysis.gamma().is_gamma_open(v)
        && t3_10_restriction_failure(f, e, v).is_some()
}

fn t3_11_transfer_condition(f: &PointMap, e: &Eval) -> Option<(Mask, Mask)> {
    // find (V, F) with no semi-closed G ⊇ V such that f⁻¹(G) ⊆ F
    let def = e.config.closed_def;
    let gx = f.dom.analysis.gamma();
    for v in 0..=f.cod.space.universe() {
        for fset in gx.gamma_closed_family(def).iter() {
            if f.preimage(v) & !fset != 0 {
                continue;
            }
            let ok = f
                .cod
                .analysis
                .semi_closed_family(def)
                .iter()
                .any(|g| v & !g == 0 && f.preimage(g) & !fset == 0);
            if !ok {
                return Some((v, fset));
            }
        }
    }
    None
}

fn t3_11(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    let semi_open = f.semi_open_witness().is_none();
    match (semi_open, t3_11_transfer_condition(f, e)) {
        (true, Some((v, fset))) => violated(&[("V", Set(v)), ("F", Set(fset))]),
        (false, None) => match f.semi_open_witness() {
            Some(MapWitness::Set(u)) => violated(&[("U", Set(u))]),
            _ => Holds,
        },
        _ => Holds,
    }
}

fn t3_11_replay(inst: &Instance, e: &Eval, _w: &Witness) -> bool {
    matches!(t3_11(inst, e), Violated(_))
}

fn t3_13(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if f.open_map_witness().is_some() || f.continuity_pointwise_witness().is_some() {
        return Holds;
    }
    for b in f.cod.analysis.semi_closed_family(e.config.closed_def).iter() {
        if !f.dom.analysis.is_semi_closed(f.preimage(b), e.config.closed_def) {
            return violated(&[("B", Set(b))]);
        }
    }
    Holds
}

fn t3_13_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(b) = w.set("B") else { return false };
    let f = inst.map();
    let def = e.config.closed_def;
    f.open_map_witness().is_none()
        && f.continuity_pointwise_witness().is_none()
        && f.cod.analysis.is_semi_closed(b, def)
        && !f.dom.analysis.is_semi_closed(f.preimage(b), def)
}

fn t4_1_bound(f: &PointMap, a: Mask) -> bool {
    let gy = f.cod.analysis.gamma();
    let img = f.image(a);
    gy.int_gamma(gy.cl_gamma(img)) & !f.image(f.dom.analysis.gamma().cl_gamma(a)) == 0
}

fn t4_1(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    let semi_closed = f.semi_closed_witness(e.config.closed_def).is_none();
    let bound_witness = (0..=f.dom.space.universe()).find(|&a| !t4_1_bound(f, a));
    match (semi_closed, bound_witness) {
        (true, Some(a)) => violated(&[("A", Set(a))]),
        (false, None) => match f.semi_closed_witness(e.config.closed_def) {
            Some(MapWitness::Set(u)) => violated(&[("F", Set(u))]),
            _ => Holds,
        },
        _ => Holds,
    }
}

fn t4_1_replay(inst: &Instance, e: &Eval, _w: &Witness) -> bool {
    matches!(t4_1(inst, e), Violated(_))
}

fn t4_2_bound(f: &PointMap, e: &Eval, a: Mask) -> bool {
    let hull = f.cod.analysis.scl(f.image(a), e.config.closed_def);
    hull & !f.image(f.dom.analysis.gamma().cl_gamma(a)) == 0
}

fn t4_2(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    let semi_closed = f.semi_closed_witness(e.config.closed_def).is_none();
    let bound_witness = (0..=f.dom.space.universe()).find(|&a| !t4_2_bound(f, e, a));
    match (semi_closed, bound_witness) {
        (true, Some(a)) => violated(&[("A", Set(a))]),
        (false, None) => match f.semi_closed_witness(e.config.closed_def) {
            Some(MapWitness::Set(u)) => violated(&[("F", Set(u))]),
            _ => Holds,
        },
        _ => Holds,
    }
}

fn t4_2_replay(inst: &Instance, e: &Eval, _w: &Witness) -> bool {
    matches!(t4_2(inst, e), Violated(_))
}

fn t4_3_extension_condition(f: &PointMap, e: &Eval) -> Option<(Mask, Mask)> {
    let gx = f.dom.analysis.gamma();
    for b in 0..=f.cod.space.universe() {
        for u in gx.gamma_open_family().iter() {
            if f.preimage(b) & !u != 0 {
                continue;
            }
            let ok = f
                .cod
                .analysis
                .semi_open_family()
                .iter()
                .any(|v| b & !v == 0 && f.preimage(v) & !u == 0);
            if !ok {
                return Some((b, u));
            }
        }
    }
    let _ = e;
    None
}

fn t4_3(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    let semi_closed = f.semi_closed_witness(e.config.closed_def).is_none();
    match (semi_closed, t4_3_extension_condition(f, e)) {
        (true, Some((b, u))) => violated(&[("B", Set(b)), ("U", Set(u))]),
        (false, None) => match f.semi_closed_witness(e.config.closed_def) {
            Some(MapWitness::Set(u)) => violated(&[("F", Set(u))]),
            _ => Holds,
        },
        _ => Holds,
    }
}

fn t4_3_replay(inst: &Instance, e: &Eval, _w: &Witness) -> bool {
    matches!(t4_3(inst, e), Violated(_))
}

fn t5_1_preimage_bound(f: &PointMap, b: Mask) -> bool {
    let gx = f.dom.analysis.gamma();
    let gy = f.cod.analysis.gamma();
    gx.int_gamma(gx.cl_gamma(f.preimage(b))) & !f.preimage(gy.cl_gamma(b)) == 0
}

fn t5_1_image_bound(f: &PointMap, a: Mask) -> bool {
    let gx = f.dom.analysis.gamma();
    let gy = f.cod.analysis.gamma();
    f.image(gx.int_gamma(gx.cl_gamma(a))) & !gy.cl_gamma(f.image(a)) == 0
}

fn t5_1_12(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if f.semi_continuity_witness().is_some() {
        return Holds;
    }
    for b in 0..=f.cod.space.universe() {
        if !t5_1_preimage_bound(f, b) {
            return violated(&[("B", Set(b))]);
        }
    }
    Holds
}

fn t5_1_12_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(b) = w.set("B") else { return false };
    let f = inst.map();
    f.semi_continuity_witness().is_none() && !t5_1_preimage_bound(f, b)
}

fn t5_1_23(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if !(0..=f.cod.space.universe()).all(|b| t5_1_preimage_bound(f, b)) {
        return Holds;
    }
    for a in 0..=f.dom.space.universe() {
        if !t5_1_image_bound(f, a) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn t5_1_23_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let f = inst.map();
    (0..=f.cod.space.universe()).all(|b| t5_1_preimage_bound(f, b)) && !t5_1_image_bound(f, a)
}

fn t5_1_31(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if !(0..=f.dom.space.universe()).all(|a| t5_1_image_bound(f, a)) {
        return Holds;
    }
    match f.semi_continuity_witness() {
        Some(MapWitness::Set(b)) => violated(&[("B", Set(b))]),
        _ => Holds,
    }
}

fn t5_1_31_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(b) = w.set("B") else { return false };
    let f = inst.map();
    (0..=f.dom.space.universe()).all(|a| t5_1_image_bound(f, a))
        && f.cod.analysis.gamma().is_gamma_open(b)
        && !f.dom.analysis.is_semi_open(f.preimage(b))
}

fn t5_5_bound(f: &PointMap, e: &Eval, a: Mask) -> bool {
    f.dom.analysis.scl(f.preimage(a), e.config.closed_def)
        & !f.preimage(f.cod.analysis.gamma().cl_gamma(a))
        == 0
}

fn t5_5_1(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if f.semi_continuity_witness().is_some() {
        return Holds;
    }
    for a in 0..=f.cod.space.universe() {
        if !t5_5_bound(f, e, a) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn t5_5_1_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let f = inst.map();
    f.semi_continuity_witness().is_none() && !t5_5_bound(f, e, a)
}

fn t5_5_2(inst: &Instance, e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if !(0..=f.cod.space.universe()).all(|a| t5_5_bound(f, e, a)) {
        return Holds;
    }
    match f.semi_continuity_witness() {
        Some(MapWitness::Set(b)) => violated(&[("B", Set(b))]),
        _ => Holds,
    }
}

fn t5_5_2_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(b) = w.set("B") else { return false };
    let f = inst.map();
    (0..=f.cod.space.universe()).all(|a| t5_5_bound(f, e, a))
        && f.cod.analysis.gamma().is_gamma_open(b)
        && !f.dom.analysis.is_semi_open(f.preimage(b))
}

fn t5_6_bound(f: &PointMap, a: Mask) -> bool {
    f.image(f.dom.analysis.sd(a)) & !f.cod.analysis.gamma().cl_gamma(f.image(a)) == 0
}

fn t5_6_1(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if f.semi_continuity_witness().is_some() {
        return Holds;
    }
    for a in 0..=f.dom.space.universe() {
        if !t5_6_bound(f, a) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn t5_6_1_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let f = inst.map();
    f.semi_continuity_witness().is_none() && !t5_6_bound(f, a)
}

fn t5_6_2(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if !(0..=f.dom.space.universe()).all(|a| t5_6_bound(f, a)) {
        return Holds;
    }
    match f.semi_continuity_witness() {
        Some(MapWitness::Set(b)) => violated(&[("B", Set(b))]),
        _ => Holds,
    }
}

fn t5_6_2_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(b) = w.set("B") else { return false };
    let f = inst.map();
    (0..=f.dom.space.universe()).all(|a| t5_6_bound(f, a))
        && f.cod.analysis.gamma().is_gamma_open(b)
        && !f.dom.analysis.is_semi_open(f.preimage(b))
}

fn t5_7_pointwise_condition(f: &PointMap) -> Option<(usize, Mask)> {
    for x in 0..f.dom.space.n() {
        for b in f.cod.analysis.gamma().gamma_open_family().iter() {
            if b >> f.apply(x) & 1 == 0 {
                continue;
            }
            let ok = f
                .dom
                .analysis
                .semi_open_family()
                .iter()
                .any(|a| a >> x & 1 == 1 && f.image(a) & !b == 0);
            if !ok {
                return Some((x, b));
            }
        }
    }
    None
}

fn t5_7(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    let semicont = f.semi_continuity_witness().is_none();
    match (semicont, t5_7_pointwise_condition(f)) {
        (true, Some((x, b))) => violated(&[("x", Point(x)), ("B", Set(b))]),
        (false, None) => match f.semi_continuity_witness() {
            Some(MapWitness::Set(b)) => violated(&[("B", Set(b))]),
            _ => Holds,
        },
        _ => Holds,
    }
}

fn t5_7_replay(inst: &Instance, e: &Eval, _w: &Witness) -> bool {
    matches!(t5_7(inst, e), Violated(_))
}

fn t5_8_bound(f: &PointMap, a: Mask) -> bool {
    f.image(f.dom.analysis.sd(a)) & !f.cod.analysis.gamma().gamma_derived(f.image(a)) == 0
}

fn t5_8(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if f.semi_continuity_witness().is_some() {
        return Holds;
    }
    for a in 0..=f.dom.space.universe() {
        if !t5_8_bound(f, a) {
            return violated(&[("A", Set(a))]);
        }
    }
    Holds
}

fn t5_8_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(a) = w.set("A") else { return false };
    let f = inst.map();
    f.semi_continuity_witness().is_none() && !t5_8_bound(f, a)
}

fn t5_9(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if !(0..=f.dom.space.universe()).all(|a| t5_8_bound(f, a)) {
        return Holds;
    }
    match f.semi_continuity_witness() {
        Some(MapWitness::Set(b)) => violated(&[("B", Set(b))]),
        _ => Holds,
    }
}

fn t5_9_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(b) = w.set("B") else { return false };
    let f = inst.map();
    (0..=f.dom.space.universe()).all(|a| t5_8_bound(f, a))
        && f.cod.analysis.gamma().is_gamma_open(b)
        && !f.dom.analysis.is_semi_open(f.preimage(b))
}

fn t5_10_bound(f: &PointMap, b: Mask) -> bool {
    f.preimage(f.cod.analysis.gamma().int_gamma(b)) & !f.dom.analysis.sint(f.preimage(b)) == 0
}

fn t5_10_1(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if f.semi_continuity_witness().is_some() {
        return Holds;
    }
    for b in 0..=f.cod.space.universe() {
        if !t5_10_bound(f, b) {
            return violated(&[("B", Set(b))]);
        }
    }
    Holds
}

fn t5_10_1_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(b) = w.set("B") else { return false };
    let f = inst.map();
    f.semi_continuity_witness().is_none() && !t5_10_bound(f, b)
}

fn t5_10_2(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    let f = inst.map();
    if !(0..=f.cod.space.universe()).all(|b| t5_10_bound(f, b)) {
        return Holds;
    }
    match f.semi_continuity_witness() {
        Some(MapWitness::Set(b)) => violated(&[("B", Set(b))]),
        _ => Holds,
    }
}

fn t5_10_2_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(b) = w.set("B") else { return false };
    let f = inst.map();
    (0..=f.cod.space.universe()).all(|b2| t5_10_bound(f, b2))
        && f.cod.analysis.gamma().is_gamma_open(b)
        && !f.dom.analysis.is_semi_open(f.preimage(b))
}

// ---------------------------------------------------------------------------
// chain-shaped claims
// ---------------------------------------------------------------------------

fn compose(inst: &Instance) -> PointMap {
    let (f, g) = inst.chain();
    PointMap::compose(g, f).expect("chain instances share the middle endpoint")
}

fn t3_8_antecedent(inst: &Instance) -> bool {
    let (f, _g) = inst.chain();
    compose(inst).semi_open_witness().is_none() && f.continuity_pointwise_witness().is_none()
}

/// `g` with the X-side operation recipe re-instantiated on its endpoints.
/// `None` when the recipe does not transfer (custom table).
fn relabelled_g(inst: &Instance) -> Option<PointMap> {
    let (f, g) = inst.chain();
    let op_y = f.dom.op.transfer(&g.dom.space)?;
    let op_z = f.dom.op.transfer(&g.cod.space)?;
    Some(
        PointMap::new(Analyzed::new(op_y), Analyzed::new(op_z), g.mapping().to_vec())
            .expect("same carrier"),
    )
}

fn t3_8_1a(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    if !t3_8_antecedent(inst) {
        return Holds;
    }
    let Some(g2) = relabelled_g(inst) else { return Holds };
    match g2.semi_open_witness() {
        Some(MapWitness::Set(v)) => violated(&[("V", Set(v))]),
        _ => Holds,
    }
}

fn t3_8_1a_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(v) = w.set("V") else { return false };
    if !t3_8_antecedent(inst) {
        return false;
    }
    let Some(g2) = relabelled_g(inst) else { return false };
    g2.dom.analysis.gamma().is_gamma_open(v) && !g2.cod.analysis.is_semi_open(g2.image(v))
}

fn t3_8_1c(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    if !t3_8_antecedent(inst) {
        return Holds;
    }
    let (_f, g) = inst.chain();
    match g.semi_open_witness() {
        Some(MapWitness::Set(v)) => violated(&[("V", Set(v))]),
        _ => Holds,
    }
}

fn t3_8_1c_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(v) = w.set("V") else { return false };
    if !t3_8_antecedent(inst) {
        return false;
    }
    let (_f, g) = inst.chain();
    g.dom.analysis.gamma().is_gamma_open(v) && !g.cod.analysis.is_semi_open(g.image(v))
}

fn t3_8_2_antecedent(inst: &Instance) -> bool {
    let (_f, g) = inst.chain();
    compose(inst).semi_open_witness().is_none()
        && g.open_map_witness().is_none()
        && g.continuity_pointwise_witness().is_none()
}

fn t3_8_2(inst: &Instance, _e: &Eval) -> ClaimOutcome {
    if !t3_8_2_antecedent(inst) {
        return Holds;
    }
    let (f, _g) = inst.chain();
    match f.semi_open_witness() {
        Some(MapWitness::Set(u)) => violated(&[("U", Set(u))]),
        _ => Holds,
    }
}

fn t3_8_2_replay(inst: &Instance, _e: &Eval, w: &Witness) -> bool {
    let Some(u) = w.set("U") else { return false };
    if !t3_8_2_antecedent(inst) {
        return false;
    }
    let (f, _g) = inst.chain();
    f.dom.analysis.gamma().is_gamma_open(u) && !f.cod.analysis.is_semi_open(f.image(u))
}

fn t3_14_antecedent(inst: &Instance, e: &Eval) -> bool {
    let (f, _g) = inst.chain();
    compose(inst).semi_closed_witness(e.config.closed_def).is_none()
        && f.continuity_pointwise_witness().is_none()
}

fn t3_14_1a(inst: &Instance, e: &Eval) -> ClaimOutcome {
    if !t3_14_antecedent(inst, e) {
        return Holds;
    }
    let (_f, g) = inst.chain();
    // conclusion label names the Y-side operation on both endpoints of g
    let Some(op_z) = g.dom.op.transfer(&g.cod.space) else { return Holds };
    let g2 = PointMap::new(g.dom.clone(), Analyzed::new(op_z), g.mapping().to_vec())
        .expect("same carrier");
    match g2.semi_closed_witness(e.config.closed_def) {
        Some(MapWitness::Set(h)) => violated(&[("H", Set(h))]),
        _ => Holds,
    }
}

fn t3_14_1a_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(h) = w.set("H") else { return false };
    if !t3_14_antecedent(inst, e) {
        return false;
    }
    let (_f, g) = inst.chain();
    let Some(op_z) = g.dom.op.transfer(&g.cod.space) else { return false };
    let g2 = PointMap::new(g.dom.clone(), Analyzed::new(op_z), g.mapping().to_vec())
        .expect("same carrier");
    let def = e.config.closed_def;
    g2.dom.analysis.gamma().is_gamma_closed(h, def)
        && !g2.cod.analysis.is_semi_closed(g2.image(h), def)
}

fn t3_14_1c(inst: &Instance, e: &Eval) -> ClaimOutcome {
    if !t3_14_antecedent(inst, e) {
        return Holds;
    }
    let (_f, g) = inst.chain();
    match g.semi_closed_witness(e.config.closed_def) {
        Some(MapWitness::Set(h)) => violated(&[("H", Set(h))]),
        _ => Holds,
    }
}

fn t3_14_1c_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(h) = w.set("H") else { return false };
    if !t3_14_antecedent(inst, e) {
        return false;
    }
    let (_f, g) = inst.chain();
    let def = e.config.closed_def;
    g.dom.analysis.gamma().is_gamma_closed(h, def)
        && !g.cod.analysis.is_semi_closed(g.image(h), def)
}

fn t3_14_2_antecedent(inst: &Instance, e: &Eval) -> bool {
    let (_f, g) = inst.chain();
    compose(inst).semi_closed_witness(e.config.closed_def).is_none()
        && g.open_map_witness().is_none()
        && g.continuity_pointwise_witness().is_none()
}

fn t3_14_2(inst: &Instance, e: &Eval) -> ClaimOutcome {
    if !t3_14_2_antecedent(inst, e) {
        return Holds;
    }
    let (f, _g) = inst.chain();
    match f.semi_closed_witness(e.config.closed_def) {
        Some(MapWitness::Set(u)) => violated(&[("F", Set(u))]),
        _ => Holds,
    }
}

fn t3_14_2_replay(inst: &Instance, e: &Eval, w: &Witness) -> bool {
    let Some(u) = w.set("F") else { return false };
    if !t3_14_2_antecedent(inst, e) {
        return false;
    }
    let (f, _g) = inst.chain();
    let def = e.config.closed_def;
    f.dom.analysis.gamma().is_gamma_closed(u, def)
        && !f.cod.analysis.is_semi_closed(f.image(u), def)
}
