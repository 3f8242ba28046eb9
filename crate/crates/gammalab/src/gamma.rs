//! First-layer structures derived from an operation: `int_γ`, `cl_γ`, the
//! γ-open family, both γ-closed families, exterior, boundary, and γ-derived
//! sets.
//!
//! Everything is tabulated per (space, operation) pair at construction time,
//! indexed by subset encoding; sweeps revisit the same structures constantly
//! and the tables make each lookup a word operation.

use crate::ops::{is_open_operation, OpenDir, Operation, OperationProfile};
use crate::space::{Family, Mask, Points};

/// The two ways a set can be called γ-closed: complement of a γ-open set, or
/// a fixed point of `cl_γ` (`cl_γ(A) ⊆ A`). The calculus computes both
/// families independently and records whether they agree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum ClosedDef {
    #[default]
    Complement,
    ClosurePoint,
}

impl ClosedDef {
    pub const BOTH: [ClosedDef; 2] = [ClosedDef::Complement, ClosedDef::ClosurePoint];

    pub fn index(self) -> usize {
        match self {
            ClosedDef::Complement => 0,
            ClosedDef::ClosurePoint => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClosedDef::Complement => "complement",
            ClosedDef::ClosurePoint => "closurepoint",
        }
    }
}

/// Tabulated γ-structures of one (space, operation) pair.
#[derive(Clone, Debug)]
pub struct GammaCalculus {
    n: usize,
    universe: Mask,
    int: Vec<Mask>,
    cl: Vec<Mask>,
    open_family: Family,
    closed_family: [Family; 2],
    derived: Vec<Mask>,
    profile: OperationProfile,
}

impl GammaCalculus {
    pub fn new(op: &Operation) -> GammaCalculus {
        let space = op.space();
        let n = space.n();
        let universe = space.universe();
        let opens = space.opens();
        let subsets = (universe as usize) + 1;

        // int_γ(A) = { x ∈ A : some open N ∋ x has N^γ ⊆ A }
        let mut int = vec![0 as Mask; subsets];
        for (m, slot) in int.iter_mut().enumerate() {
            let m = m as Mask;
            let mut acc = 0;
            for (i, &u) in opens.iter().enumerate() {
                if op.value_at(i) & !m == 0 {
                    acc |= u;
                }
            }
            *slot = acc & m;
        }

        // cl_γ(A) = { x : every open U ∋ x has U^γ ∩ A ≠ {} }
        let mut cl = vec![0 as Mask; subsets];
        for (m, slot) in cl.iter_mut().enumerate() {
            let m = m as Mask;
            let mut acc = universe;
            for (i, &u) in opens.iter().enumerate() {
                if op.value_at(i) & m == 0 {
                    acc &= !u;
                }
            }
            *slot = acc;
        }

        let mut open_family = Family(0);
        for m in 0..subsets as Mask {
            if int[m as usize] == m {
                open_family.insert(m);
            }
        }

        // complement definition and cl_γ-fixed-point definition, kept apart
        let mut by_complement = Family(0);
        let mut by_closure_point = Family(0);
        for m in 0..subsets as Mask {
            if open_family.contains(universe & !m) {
                by_complement.insert(m);
            }
            if cl[m as usize] & !m == 0 {
                by_closure_point.insert(m);
            }
        }

        // γ-derived set: points whose every γ-open neighbourhood meets A − {x}
        let mut derived = vec![0 as Mask; subsets];
        for (m, slot) in derived.iter_mut().enumerate() {
            let m = m as Mask;
            let mut acc = 0;
            'point: for x in 0..n {
                let punct = m & !(1 << x);
                for b in open_family.iter() {
                    if b >> x & 1 == 1 && b & punct == 0 {
                        continue 'point;
                    }
                }
                acc |= 1 << x;
            }
            *slot = acc;
        }

        let profile = OperationProfile {
            monotone: op.is_monotone(),
            regular: op.is_regular(),
            open_paper: is_open_operation(op, OpenDir::Paper, open_family),
            open_standard: is_open_operation(op, OpenDir::Standard, open_family),
            closed_defs_agree: by_complement == by_closure_point,
        };

        GammaCalculus {
            n,
            universe,
            int,
            cl,
            open_family,
            closed_family: [by_complement, by_closure_point],
            derived,
            profile,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> Mask {
        self.universe
    }

    pub fn int_gamma(&self, a: Mask) -> Mask {
        self.int[a as usize]
    }

    pub fn cl_gamma(&self, a: Mask) -> Mask {
        self.cl[a as usize]
    }

    pub fn ext_gamma(&self, a: Mask) -> Mask {
        self.int[(self.universe & !a) as usize]
    }

    pub fn bd_gamma(&self, a: Mask) -> Mask {
        self.universe & !(self.int_gamma(a) | self.ext_gamma(a))
    }

    pub fn gamma_derived(&self, a: Mask) -> Mask {
        self.derived[a as usize]
    }

    pub fn gamma_open_family(&self) -> Family {
        self.open_family
    }

    pub fn is_gamma_open(&self, a: Mask) -> bool {
        self.open_family.contains(a)
    }

    pub fn gamma_closed_family(&self, def: ClosedDef) -> Family {
        self.closed_family[def.index()]
    }

    pub fn is_gamma_closed(&self, a: Mask, def: ClosedDef) -> bool {
        self.closed_family[def.index()].contains(a)
    }

    /// Whether the two γ-closed definitions produced the same family here.
    pub fn closed_defs_agree(&self) -> bool {
        self.profile.closed_defs_agree
    }

    pub fn profile(&self) -> OperationProfile {
        self.profile
    }

    /// Points of `a`, convenience for witness rendering.
    pub fn points(&self, a: Mask) -> Points {
        Points(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::OpKind;
    use crate::space::FiniteSpace;
    use std::sync::Arc;

    fn sierpinski() -> Arc<FiniteSpace> {
        Arc::new(FiniteSpace::new(2, &[0, 1, 3]).unwrap())
    }

    fn calc(space: &Arc<FiniteSpace>, kind: OpKind) -> GammaCalculus {
        GammaCalculus::new(&Operation::builtin(space.clone(), kind))
    }

    #[test]
    fn interior_values_on_sierpinski() {
        let s = sierpinski();
        let cl = calc(&s, OpKind::Closure);
        assert_eq!(cl.int_gamma(0b01), 0); // every nbd of 0 blows up to X
        assert_eq!(cl.int_gamma(0b11), 0b11);
        let id = calc(&s, OpKind::Identity);
        assert_eq!(id.int_gamma(0b01), 0b01);
    }

    #[test]
    fn closure_values_on_sierpinski() {
        let s = sierpinski();
        let id = calc(&s, OpKind::Identity);
        assert_eq!(id.cl_gamma(0b10), 0b10);
        assert_eq!(id.cl_gamma(0), 0);
        let cl = calc(&s, OpKind::Closure);
        assert_eq!(cl.cl_gamma(0b10), 0b11);
    }

    #[test]
    fn open_families_on_sierpinski() {
        let s = sierpinski();
        assert_eq!(calc(&s, OpKind::Identity).gamma_open_family().to_vec(), vec![0, 1, 3]);
        assert_eq!(calc(&s, OpKind::Closure).gamma_open_family().to_vec(), vec![0, 3]);
        let d2 = Arc::new(FiniteSpace::new(2, &[0, 1, 2, 3]).unwrap());
        assert_eq!(calc(&d2, OpKind::Closure).gamma_open_family().to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn closed_families_on_sierpinski() {
        let s = sierpinski();
        let id = calc(&s, OpKind::Identity);
        assert_eq!(id.gamma_closed_family(ClosedDef::Complement).to_vec(), vec![0, 2, 3]);
        assert_eq!(id.gamma_closed_family(ClosedDef::ClosurePoint).to_vec(), vec![0, 2, 3]);
        let cl = calc(&s, OpKind::Closure);
        assert_eq!(cl.gamma_closed_family(ClosedDef::Complement).to_vec(), vec![0, 3]);
        assert!(cl.closed_defs_agree());
    }

    #[test]
    fn exterior_and_boundary() {
        let s = sierpinski();
        let id = calc(&s, OpKind::Identity);
        assert_eq!(id.ext_gamma(0b01), 0);
        assert_eq!(id.bd_gamma(0b01), 0b10);
        assert_eq!(id.ext_gamma(0b11), 0);
        let cl = calc(&s, OpKind::Closure);
        assert_eq!(cl.int_gamma(0b01), 0);
        assert_eq!(cl.ext_gamma(0b01), 0);
        assert_eq!(cl.bd_gamma(0b01), 0b11);
    }

    #[test]
    fn derived_sets_on_sierpinski() {
        let s = sierpinski();
        let id = calc(&s, OpKind::Identity);
        assert_eq!(id.gamma_derived(0b01), 0b10);
        assert_eq!(id.gamma_derived(0), 0);
        let cl = calc(&s, OpKind::Closure);
        assert_eq!(cl.gamma_derived(0b01), 0b10);
    }

    #[test]
    fn identity_reduces_to_ordinary_interior_closure() {
        for space in crate::space::enumerate_topologies(3, false).unwrap() {
            let id = calc(&space, OpKind::Identity);
            for m in 0..=space.universe() {
                assert_eq!(id.int_gamma(m), space.interior(m));
                assert_eq!(id.cl_gamma(m), space.closure(m));
            }
        }
    }

    #[test]
    fn duality_and_monotonicity_hold_for_sampled_operations() {
        for space in crate::space::enumerate_topologies(3, false).unwrap() {
            for op in crate::ops::sample_operations(&space, 12, 99) {
                let g = GammaCalculus::new(&op);
                let univ = space.universe();
                for a in 0..=univ {
                    assert_eq!(g.int_gamma(a) & !a, 0);
                    assert_eq!(a & !g.cl_gamma(a), 0);
                    assert_eq!(g.cl_gamma(a), univ & !g.int_gamma(univ & !a));
                    for b in crate::space::submasks(a) {
                        assert_eq!(g.int_gamma(b) & !g.int_gamma(a), 0);
                        assert_eq!(g.cl_gamma(b) & !g.cl_gamma(a), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_open_family_closed_under_union_when_regular() {
        for space in crate::space::enumerate_topologies(3, false).unwrap() {
            for op in crate::ops::sample_operations(&space, 12, 5) {
                let g = GammaCalculus::new(&op);
                if !g.profile().regular {
                    continue;
                }
                let fam = g.gamma_open_family();
                for a in fam.iter() {
                    for b in fam.iter() {
                        assert!(
                            fam.contains(a | b),
                            "regular op but γ-open not union-closed: {a:b} {b:b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn identity_is_monotone_regular_and_open_both_ways_everywhere() {
        for space in crate::space::enumerate_topologies(3, false).unwrap() {
            let p = calc(&space, OpKind::Identity).profile();
            assert!(p.monotone && p.regular && p.open_paper && p.open_standard);
        }
    }

    #[test]
    fn paper_direction_openness_is_vacuous() {
        // X itself is always γ-open and absorbs every U^γ, so the printed
        // inclusion direction classifies every operation as open.
        for space in crate::space::enumerate_topologies(3, false).unwrap() {
            for op in crate::ops::sample_operations(&space, 6, 3) {
                let g = GammaCalculus::new(&op);
                assert!(g.profile().open_paper);
            }
        }
    }

    #[test]
    fn cl_gamma_contained_in_every_gamma_closed_superset() {
        for space in crate::space::enumerate_topologies(3, false).unwrap() {
            for op in crate::ops::sample_operations(&space, 8, 17) {
                let g = GammaCalculus::new(&op);
                for def in ClosedDef::BOTH {
                    for f in g.gamma_closed_family(def).iter() {
                        for a in crate::space::submasks(f) {
                            assert_eq!(g.cl_gamma(a) & !f, 0);
                        }
                    }
                }
            }
        }
    }
}
