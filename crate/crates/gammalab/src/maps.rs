//! Total functions between analyzed spaces and their classification:
//! semi-continuity, semi-open/semi-closed image behaviour, and the
//! two-operation continuity/openness/closedness predicates.
//!
//! Every predicate answers with an optional witness; a `Some` witness always
//! reproduces the failure when re-tested on its own.

use std::fmt;
use std::sync::Arc;

use crate::gamma::ClosedDef;
use crate::semi::Analyzed;
use crate::space::{set_text, Mask, Points};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("image point {image} of {point} outside the codomain")]
    PointOutOfRange { point: usize, image: usize },
    #[error("wrong number of images: expected {expected}, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("composition endpoints do not match")]
    EndpointMismatch,
}

/// Counterexample returned by a failed map predicate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapWitness {
    /// A set whose image/preimage misbehaves.
    Set(Mask),
    /// A point and a neighbourhood of its image with no suitable companion.
    PointAndSet { x: usize, set: Mask },
}

impl fmt::Display for MapWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MapWitness::Set(m) => write!(f, "set {}", set_text(m)),
            MapWitness::PointAndSet { x, set } => {
                write!(f, "point {x}, set {}", set_text(set))
            }
        }
    }
}

/// A total function between two analyzed spaces. The domain carries its own
/// operation and so does the codomain; nothing forces them to match.
#[derive(Clone, Debug)]
pub struct PointMap {
    pub dom: Arc<Analyzed>,
    pub cod: Arc<Analyzed>,
    f: Vec<u8>,
    injective: bool,
    surjective: bool,
}

impl PointMap {
    pub fn new(dom: Arc<Analyzed>, cod: Arc<Analyzed>, f: Vec<u8>) -> Result<PointMap, MapError> {
        if f.len() != dom.space.n() {
            return Err(MapError::WrongArity { expected: dom.space.n(), got: f.len() });
        }
        let ny = cod.space.n();
        for (p, &q) in f.iter().enumerate() {
            if q as usize >= ny {
                return Err(MapError::PointOutOfRange { point: p, image: q as usize });
            }
        }
        let image: Mask = f.iter().fold(0, |acc, &q| acc | 1 << q);
        let injective = image.count_ones() as usize == f.len();
        let surjective = image == cod.space.universe();
        Ok(PointMap { dom, cod, f, injective, surjective })
    }

    /// Decode a map from its index in the canonical enumeration of all
    /// `|cod|^|dom|` functions (point 0 is the least-significant digit).
    pub fn from_index(dom: Arc<Analyzed>, cod: Arc<Analyzed>, index: u64) -> PointMap {
        let f = digits(index, dom.space.n(), cod.space.n());
        PointMap::new(dom, cod, f).expect("digits are always in range")
    }

    pub fn mapping(&self) -> &[u8] {
        &self.f
    }

    pub fn index(&self) -> u64 {
        let ny = self.cod.space.n() as u64;
        self.f.iter().rev().fold(0, |acc, &q| acc * ny + q as u64)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.f[x] as usize
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn image(&self, a: Mask) -> Mask {
        let mut out = 0;
        for x in Points(a) {
            out |= 1 << self.f[x];
        }
        out
    }

    pub fn preimage(&self, b: Mask) -> Mask {
        let mut out = 0;
        for (x, &q) in self.f.iter().enumerate() {
            if b >> q & 1 == 1 {
                out |= 1 << x;
            }
        }
        out
    }

    /// `g ∘ f`, requiring the middle endpoints to coincide (same space and
    /// same operation table).
    pub fn compose(g: &PointMap, f: &PointMap) -> Result<PointMap, MapError> {
        if f.cod.space != g.dom.space || f.cod.op.values() != g.dom.op.values() {
            return Err(MapError::EndpointMismatch);
        }
        let h = f.f.iter().map(|&q| g.f[q as usize]).collect();
        PointMap::new(f.dom.clone(), g.cod.clone(), h)
    }

    /// Preimage of every γ-open set of the codomain is semi-open.
    pub fn semi_continuity_witness(&self) -> Option<MapWitness> {
        for b in self.cod.analysis.gamma().gamma_open_family().iter() {
            if !self.dom.analysis.is_semi_open(self.preimage(b)) {
                return Some(MapWitness::Set(b));
            }
        }
        None
    }

    /// Image of every γ-open set of the domain is semi-open.
    pub fn semi_open_witness(&self) -> Option<MapWitness> {
        for u in self.dom.analysis.gamma().gamma_open_family().iter() {
            if !self.cod.analysis.is_semi_open(self.image(u)) {
                return Some(MapWitness::Set(u));
            }
        }
        None
    }

    /// Image of every γ-closed set of the domain is semi-closed.
    pub fn semi_closed_witness(&self, def: ClosedDef) -> Option<MapWitness> {
        for u in self.dom.analysis.gamma().gamma_closed_family(def).iter() {
            if !self.cod.analysis.is_semi_closed(self.image(u), def) {
                return Some(MapWitness::Set(u));
            }
        }
        None
    }

    /// Pointwise two-operation continuity: around every point and every open
    /// neighbourhood `V` of its image there is an open `U` with
    /// `f(U^γ) ⊆ V^β`.
    pub fn continuity_pointwise_witness(&self) -> Option<MapWitness> {
        let dom_space = &self.dom.space;
        let cod_space = &self.cod.space;
        for x in 0..dom_space.n() {
            let fx = self.f[x];
            for (j, &v) in cod_space.opens().iter().enumerate() {
                if v >> fx & 1 == 0 {
                    continue;
                }
                let target = self.cod.op.value_at(j);
                let ok = dom_space.opens().iter().enumerate().any(|(i, &u)| {
                    u >> x & 1 == 1 && self.image(self.dom.op.value_at(i)) & !target == 0
                });
                if !ok {
                    return Some(MapWitness::PointAndSet { x, set: v });
                }
            }
        }
        None
    }

    /// Preimage form of two-operation continuity: `f⁻¹` of every β-open set
    /// of the codomain is γ-open in the domain.
    pub fn continuity_preimage_witness(&self) -> Option<MapWitness> {
        for v in self.cod.analysis.gamma().gamma_open_family().iter() {
            if !self.dom.analysis.gamma().is_gamma_open(self.preimage(v)) {
                return Some(MapWitness::Set(v));
            }
        }
        None
    }

    /// Image of every γ-open set of the domain is γ-open in the codomain.
    pub fn open_map_witness(&self) -> Option<MapWitness> {
        for u in self.dom.analysis.gamma().gamma_open_family().iter() {
            if !self.cod.analysis.gamma().is_gamma_open(self.image(u)) {
                return Some(MapWitness::Set(u));
            }
        }
        None
    }

    /// Image of every γ-closed set of the domain is γ-closed in the codomain.
    pub fn closed_map_witness(&self, def: ClosedDef) -> Option<MapWitness> {
        for u in self.dom.analysis.gamma().gamma_closed_family(def).iter() {
            if !self.cod.analysis.gamma().is_gamma_closed(self.image(u), def) {
                return Some(MapWitness::Set(u));
            }
        }
        None
    }

    pub fn is_semi_continuous(&self) -> bool {
        self.semi_continuity_witness().is_none()
    }

    pub fn is_semi_open_map(&self) -> bool {
        self.semi_open_witness().is_none()
    }

    pub fn is_semi_closed_map(&self, def: ClosedDef) -> bool {
        self.semi_closed_witness(def).is_none()
    }

    pub fn is_continuous_pointwise(&self) -> bool {
        self.continuity_pointwise_witness().is_none()
    }

    pub fn is_continuous_preimage(&self) -> bool {
        self.continuity_preimage_witness().is_none()
    }

    pub fn is_open_map(&self) -> bool {
        self.open_map_witness().is_none()
    }

    pub fn is_closed_map(&self, def: ClosedDef) -> bool {
        self.closed_map_witness(def).is_none()
    }
}

/// Base-`ny` digits of `index`, one per domain point.
pub fn digits(index: u64, nx: usize, ny: usize) -> Vec<u8> {
    let mut rest = index;
    let ny = ny as u64;
    (0..nx)
        .map(|_| {
            let d = (rest % ny) as u8;
            rest /= ny;
            d
        })
        .collect()
}

/// Number of total functions from an `nx`-point set to an `ny`-point set.
pub fn map_count(nx: usize, ny: usize) -> u64 {
    (ny as u64).pow(nx as u32)
}
