//! Second-layer structures: `γ*`-semi-open and semi-closed families,
//! semi-closure and semi-interior hulls, semi-neighbourhoods, and the
//! semi-derived set.
//!
//! The semi-closed family is computed from its own sandwich definition
//! (`int_γ(F) ⊆ A ⊆ F` for some γ-closed `F`), never by complementing the
//! semi-open family; whether the two routes agree is recorded as data so the
//! complement duality stays falsifiable.

use std::sync::Arc;

use crate::gamma::{ClosedDef, GammaCalculus};
use crate::ops::Operation;
use crate::space::{submasks, Family, FiniteSpace, Mask};

/// What produced a subset family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyRecipe {
    GammaOpen,
    GammaClosed(ClosedDef),
    SemiOpen,
    SemiClosed(ClosedDef),
    Custom,
}

impl FamilyRecipe {
    pub fn label(self) -> String {
        match self {
            FamilyRecipe::GammaOpen => "gamma-open".into(),
            FamilyRecipe::GammaClosed(d) => format!("gamma-closed[{}]", d.name()),
            FamilyRecipe::SemiOpen => "semi-open".into(),
            FamilyRecipe::SemiClosed(d) => format!("semi-closed[{}]", d.name()),
            FamilyRecipe::Custom => "custom".into(),
        }
    }
}

/// A computed family of subsets of one space together with its recipe.
#[derive(Clone, Debug)]
pub struct SubsetFamily {
    pub space: Arc<FiniteSpace>,
    pub members: Family,
    pub recipe: FamilyRecipe,
}

/// Full per-(space, operation) cache: the γ-calculus tables plus the
/// semi-layer tables.
#[derive(Clone, Debug)]
pub struct Analysis {
    gamma: GammaCalculus,
    semi_open: Family,
    /// Indexed by [`ClosedDef::index`]; computed from the sandwich definition.
    semi_closed: [Family; 2],
    /// Per definition: does the semi-closed family equal the complements of
    /// the semi-open family?
    complement_dual: [bool; 2],
    scl: [Vec<Mask>; 2],
    sint: Vec<Mask>,
    sd: Vec<Mask>,
}

impl Analysis {
    pub fn new(op: &Operation) -> Analysis {
        let gamma = GammaCalculus::new(op);
        let universe = gamma.universe();
        let subsets = universe as usize + 1;

        // A is semi-open iff O ⊆ A ⊆ cl_γ(O) for some γ-open O
        let mut semi_open = Family(0);
        for o in gamma.gamma_open_family().iter() {
            let hull = gamma.cl_gamma(o);
            for extra in submasks(hull & !o) {
                semi_open.insert(o | extra);
            }
        }

        // A is semi-closed iff int_γ(F) ⊆ A ⊆ F for some γ-closed F
        let mut semi_closed = [Family(0); 2];
        let mut complement_dual = [false; 2];
        for def in ClosedDef::BOTH {
            let mut fam = Family(0);
            for f in gamma.gamma_closed_family(def).iter() {
                let core = gamma.int_gamma(f);
                for extra in submasks(f & !core) {
                    fam.insert(core | extra);
                }
            }
            semi_closed[def.index()] = fam;
            complement_dual[def.index()] = fam == semi_open.complements(universe);
        }

        // hulls
        let mut sint = vec![0 as Mask; subsets];
        for (m, slot) in sint.iter_mut().enumerate() {
            let m = m as Mask;
            let mut acc = 0;
            for u in semi_open.iter() {
                if u & !m == 0 {
                    acc |= u;
                }
            }
            *slot = acc;
        }
        let mut scl = [vec![0 as Mask; subsets], vec![0 as Mask; subsets]];
        for def in ClosedDef::BOTH {
            let fam = semi_closed[def.index()];
            for m in 0..subsets as Mask {
                let mut acc = universe; // X is always semi-closed, so never empty
                for c in fam.iter() {
                    if m & !c == 0 {
                        acc &= c;
                    }
                }
                scl[def.index()][m as usize] = acc;
            }
        }

        // semi-derived set: every semi-open set around p meets A − {p}
        let mut sd = vec![0 as Mask; subsets];
        for (m, slot) in sd.iter_mut().enumerate() {
            let m = m as Mask;
            let mut acc = 0;
            'point: for x in 0..gamma.n() {
                let punct = m & !(1 << x);
                for u in semi_open.iter() {
                    if u >> x & 1 == 1 && u & punct == 0 {
                        continue 'point;
                    }
                }
                acc |= 1 << x;
            }
            *slot = acc;
        }

        Analysis { gamma, semi_open, semi_closed, complement_dual, scl, sint, sd }
    }

    pub fn gamma(&self) -> &GammaCalculus {
        &self.gamma
    }

    pub fn universe(&self) -> Mask {
        self.gamma.universe()
    }

    pub fn n(&self) -> usize {
        self.gamma.n()
    }

    pub fn semi_open_family(&self) -> Family {
        self.semi_open
    }

    pub fn is_semi_open(&self, a: Mask) -> bool {
        self.semi_open.contains(a)
    }

    pub fn semi_closed_family(&self, def: ClosedDef) -> Family {
        self.semi_closed[def.index()]
    }

    pub fn is_semi_closed(&self, a: Mask, def: ClosedDef) -> bool {
        self.semi_closed[def.index()].contains(a)
    }

    /// Whether the sandwich-defined semi-closed family equals the complement
    /// family of the semi-open sets.
    pub fn complement_duality(&self, def: ClosedDef) -> bool {
        self.complement_dual[def.index()]
    }

    pub fn scl(&self, a: Mask, def: ClosedDef) -> Mask {
        self.scl[def.index()][a as usize]
    }

    pub fn sint(&self, a: Mask) -> Mask {
        self.sint[a as usize]
    }

    pub fn sd(&self, a: Mask) -> Mask {
        self.sd[a as usize]
    }

    /// `a` is a semi-neighbourhood of `x`: some semi-open `U` has `x ∈ U ⊆ a`.
    pub fn is_semi_nbd(&self, a: Mask, x: usize) -> bool {
        self.sint[a as usize] >> x & 1 == 1
    }
}

/// A space with a chosen operation and the full analysis of the pair.
/// Everything downstream (map predicates, statement checking) shares these
/// through `Arc`.
#[derive(Clone, Debug)]
pub struct Analyzed {
    pub space: Arc<FiniteSpace>,
    pub op: Arc<Operation>,
    pub analysis: Analysis,
}

impl Analyzed {
    pub fn new(op: Operation) -> Arc<Analyzed> {
        let analysis = Analysis::new(&op);
        Arc::new(Analyzed { space: op.space().clone(), op: Arc::new(op), analysis })
    }

    pub fn family(&self, recipe: FamilyRecipe) -> SubsetFamily {
        let members = match recipe {
            FamilyRecipe::GammaOpen => self.analysis.gamma().gamma_open_family(),
            FamilyRecipe::GammaClosed(d) => self.analysis.gamma().gamma_closed_family(d),
            FamilyRecipe::SemiOpen => self.analysis.semi_open_family(),
            FamilyRecipe::SemiClosed(d) => self.analysis.semi_closed_family(d),
            FamilyRecipe::Custom => Family(0),
        };
        SubsetFamily { space: self.space.clone(), members, recipe }
    }
}
