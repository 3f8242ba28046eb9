//! Expansive operations `γ: τ → P(X)` on the open family of a space:
//! construction (builtin kinds, explicit tables, seeded random sampling),
//! the monotone/regular/open classification, and the induced operation on a
//! subspace.

use std::fmt;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::space::{set_text, FiniteSpace, Mask, Points, SpaceError, SubspaceTrace};

/// How an operation table was produced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OpKind {
    Identity,
    Closure,
    IntCl,
    Custom,
}

impl OpKind {
    pub fn name(self) -> &'static str {
        match self {
            OpKind::Identity => "identity",
            OpKind::Closure => "closure",
            OpKind::IntCl => "intcl",
            OpKind::Custom => "custom",
        }
    }
}

/// The two readings of "open operation": for every open neighbourhood `U` of
/// a point there must be a γ-open `B` containing the point with `U^γ ⊆ B`
/// (`Paper`) or with `B ⊆ U^γ` (`Standard`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum OpenDir {
    #[default]
    Paper,
    Standard,
}

impl OpenDir {
    pub fn name(self) -> &'static str {
        match self {
            OpenDir::Paper => "paper",
            OpenDir::Standard => "standard",
        }
    }
}

/// Classification flags of one operation. Every flag is reproducible by
/// re-running its predicate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OperationProfile {
    pub monotone: bool,
    pub regular: bool,
    pub open_paper: bool,
    pub open_standard: bool,
    pub closed_defs_agree: bool,
}

impl OperationProfile {
    pub fn open(self, dir: OpenDir) -> bool {
        match dir {
            OpenDir::Paper => self.open_paper,
            OpenDir::Standard => self.open_standard,
        }
    }
}

/// Violations raised when assembling an operation table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OperationViolation {
    /// Table key is not an open set of the space.
    KeyNotOpen { key: Mask },
    /// The same open set appears twice.
    DuplicateKey { key: Mask },
    /// An open set has no table row.
    IncompleteTable { open: Mask },
    /// `U ⊆ U^γ` fails.
    NotExpansive { open: Mask, value: Mask },
    /// A value leaves the point set.
    ValueOutOfRange { open: Mask, value: Mask },
}

impl fmt::Display for OperationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OperationViolation::KeyNotOpen { key } => {
                write!(f, "table key {} is not an open set", set_text(key))
            }
            OperationViolation::DuplicateKey { key } => {
                write!(f, "duplicate table row for {}", set_text(key))
            }
            OperationViolation::IncompleteTable { open } => {
                write!(f, "incomplete operation table: no row for {}", set_text(open))
            }
            OperationViolation::NotExpansive { open, value } => write!(
                f,
                "operation must enlarge: {} maps to {}",
                set_text(open),
                set_text(value)
            ),
            OperationViolation::ValueOutOfRange { open, value } => write!(
                f,
                "value {} of {} leaves the point set",
                set_text(value),
                set_text(open)
            ),
        }
    }
}

impl std::error::Error for OperationViolation {}

/// An expansive operation on the open family of one space: a total table
/// `U ↦ U^γ` with `U ⊆ U^γ` for every open `U`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Operation {
    space: Arc<FiniteSpace>,
    /// Values aligned with `space.opens()`.
    values: Vec<Mask>,
    kind: OpKind,
}

impl Operation {
    /// One of the three builtin tables: `U ↦ U`, `U ↦ cl(U)`, `U ↦ int(cl(U))`.
    pub fn builtin(space: Arc<FiniteSpace>, kind: OpKind) -> Operation {
        let values = space
            .opens()
            .iter()
            .map(|&u| match kind {
                OpKind::Identity => u,
                OpKind::Closure => space.closure(u),
                OpKind::IntCl => space.interior(space.closure(u)),
                OpKind::Custom => unreachable!("custom tables come from from_table"),
            })
            .collect();
        Operation { space, values, kind }
    }

    pub fn identity(space: Arc<FiniteSpace>) -> Operation {
        Operation::builtin(space, OpKind::Identity)
    }

    /// Validate an explicit table. Rows may come in any order but must cover
    /// the open family exactly.
    pub fn from_table(
        space: Arc<FiniteSpace>,
        rows: &[(Mask, Mask)],
    ) -> Result<Operation, Vec<OperationViolation>> {
        let mut violations = Vec::new();
        let univ = space.universe();
        let mut values: Vec<Option<Mask>> = vec![None; space.opens().len()];
        for &(key, value) in rows {
            let Some(i) = space.open_index(key) else {
                violations.push(OperationViolation::KeyNotOpen { key });
                continue;
            };
            if values[i].is_some() {
                violations.push(OperationViolation::DuplicateKey { key });
                continue;
            }
            if value & !univ != 0 {
                violations.push(OperationViolation::ValueOutOfRange { open: key, value });
                continue;
            }
            if key & !value != 0 {
                violations.push(OperationViolation::NotExpansive { open: key, value });
                continue;
            }
            values[i] = Some(value);
        }
        for (i, v) in values.iter().enumerate() {
            if v.is_none() {
                violations.push(OperationViolation::IncompleteTable { open: space.opens()[i] });
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        let values = values.into_iter().map(Option::unwrap).collect();
        Ok(Operation { space, values, kind: OpKind::Custom })
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn kind(&self) -> OpKind {
        self.kind
    }

    /// Values aligned with `space.opens()`.
    pub fn values(&self) -> &[Mask] {
        &self.values
    }

    /// `U^γ` by position in the open family.
    pub fn value_at(&self, open_index: usize) -> Mask {
        self.values[open_index]
    }

    /// `U^γ` for an open set, or `None` when `u` is not open.
    pub fn value_of(&self, u: Mask) -> Option<Mask> {
        self.space.open_index(u).map(|i| self.values[i])
    }

    /// `U ⊆ V ⇒ U^γ ⊆ V^γ` over all open pairs.
    pub fn is_monotone(&self) -> bool {
        let opens = self.space.opens();
        for (i, &u) in opens.iter().enumerate() {
            for (j, &v) in opens.iter().enumerate() {
                if u & !v == 0 && self.values[i] & !self.values[j] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// For every point and every pair of its open neighbourhoods `U`, `V`
    /// there is an open neighbourhood `W` with `W^γ ⊆ U^γ ∩ V^γ`.
    pub fn is_regular(&self) -> bool {
        let opens = self.space.opens();
        for x in 0..self.space.n() {
            let around: Vec<usize> =
                (0..opens.len()).filter(|&i| opens[i] >> x & 1 == 1).collect();
            for &i in &around {
                for &j in &around {
                    let cap = self.values[i] & self.values[j];
                    if !around.iter().any(|&k| self.values[k] & !cap == 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Re-instantiate a builtin recipe on another space. `None` for custom
    /// tables, which have no recipe to transfer.
    pub fn transfer(&self, other: &Arc<FiniteSpace>) -> Option<Operation> {
        match self.kind {
            OpKind::Custom => None,
            kind => Some(Operation::builtin(other.clone(), kind)),
        }
    }
}

/// Open-operation check in a chosen direction, given the γ-open family of
/// the same (space, operation) pair packed as a bitset.
pub fn is_open_operation(op: &Operation, dir: OpenDir, gamma_open: crate::space::Family) -> bool {
    let opens = op.space().opens();
    for x in 0..op.space().n() {
        for (i, &u) in opens.iter().enumerate() {
            if u >> x & 1 == 0 {
                continue;
            }
            let val = op.value_at(i);
            let ok = gamma_open.iter().any(|b| {
                b >> x & 1 == 1
                    && match dir {
                        OpenDir::Paper => val & !b == 0,
                        OpenDir::Standard => b & !val == 0,
                    }
            });
            if !ok {
                return false;
            }
        }
    }
    true
}

fn mix(seed: u64, data: &[u64]) -> u64 {
    // splitmix64 fold, so per-space streams do not depend on sweep order
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &d in data {
        h ^= d;
        h = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = h;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h = z ^ (z >> 31);
    }
    h
}

/// One random table: every open set is enlarged by each outside point
/// independently with probability 1/2.
fn random_operation(space: &Arc<FiniteSpace>, rng: &mut ChaCha8Rng) -> Operation {
    let univ = space.universe();
    let values = space
        .opens()
        .iter()
        .map(|&u| {
            let mut v = u;
            for p in Points(univ & !u) {
                if rng.next_u32() & 1 == 1 {
                    v |= 1 << p;
                }
            }
            v
        })
        .collect();
    Operation { space: space.clone(), values, kind: OpKind::Custom }
}

/// The three builtin operations followed by `extra` seeded random tables.
/// The stream is keyed by the space itself, so the result is independent of
/// sweep order and worker count.
pub fn sample_operations(space: &Arc<FiniteSpace>, extra: usize, seed: u64) -> Vec<Operation> {
    let mut ops = vec![
        Operation::builtin(space.clone(), OpKind::Identity),
        Operation::builtin(space.clone(), OpKind::Closure),
        Operation::builtin(space.clone(), OpKind::IntCl),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, &[space.n() as u64, space.family_bits()]));
    for _ in 0..extra {
        ops.push(random_operation(space, &mut rng));
    }
    ops
}

/// Cap on exhaustive operation enumeration per space.
pub const MAX_EXHAUSTIVE_OPS: u64 = 1 << 14;

/// Every operation on the space, in lexicographic table order.
pub fn exhaustive_operations(space: &Arc<FiniteSpace>) -> Result<Vec<Operation>, SpaceError> {
    let univ = space.universe();
    let slack: Vec<Mask> = space.opens().iter().map(|&u| univ & !u).collect();
    let total: u64 = slack.iter().map(|s| 1u64 << s.count_ones()).product();
    if total > MAX_EXHAUSTIVE_OPS {
        return Err(SpaceError::CapExceeded {
            what: "exhaustive operation enumeration",
            limit: MAX_EXHAUSTIVE_OPS as usize,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut extras: Vec<Mask> = vec![0; slack.len()];
    loop {
        let values: Vec<Mask> = space.opens().iter().zip(&extras).map(|(&u, &e)| u | e).collect();
        let kind = builtin_kind_of(space, &values).unwrap_or(OpKind::Custom);
        out.push(Operation { space: space.clone(), values, kind });
        // odometer over the slack masks
        let mut i = 0;
        loop {
            if i == extras.len() {
                return Ok(out);
            }
            if extras[i] == slack[i] {
                extras[i] = 0;
                i += 1;
            } else {
                extras[i] = (extras[i] | !slack[i]).wrapping_add(1) & slack[i];
                break;
            }
        }
    }
}

fn builtin_kind_of(space: &Arc<FiniteSpace>, values: &[Mask]) -> Option<OpKind> {
    for kind in [OpKind::Identity, OpKind::Closure, OpKind::IntCl] {
        let same = space.opens().iter().enumerate().all(|(i, &u)| {
            let v = match kind {
                OpKind::Identity => u,
                OpKind::Closure => space.closure(u),
                OpKind::IntCl => space.interior(space.closure(u)),
                OpKind::Custom => unreachable!(),
            };
            v == values[i]
        });
        if same {
            return Some(kind);
        }
    }
    None
}

/// How to finish an induced subspace operation whose defining traces clash.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SubspacePolicy {
    /// Take the union of the clashing values (still expansive) and report.
    #[default]
    Union,
    /// Only report; do not construct the operation.
    FlagAmbiguous,
}

impl SubspacePolicy {
    pub fn name(self) -> &'static str {
        match self {
            SubspacePolicy::Union => "union",
            SubspacePolicy::FlagAmbiguous => "flag-ambiguous",
        }
    }
}

/// Ambiguity record for one induced operation: per relative open (subspace
/// coordinates) the distinct candidate values (subspace coordinates) when
/// there is more than one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AmbiguityReport {
    pub clashes: Vec<(Mask, Vec<Mask>)>,
}

impl AmbiguityReport {
    pub fn is_ambiguous(&self) -> bool {
        !self.clashes.is_empty()
    }
}

/// Result of inducing an operation on a subspace.
pub struct InducedOperation {
    pub subspace: Arc<FiniteSpace>,
    pub trace: SubspaceTrace,
    /// Present unless the policy was [`SubspacePolicy::FlagAmbiguous`] and a
    /// clash was found.
    pub operation: Option<Operation>,
    pub report: AmbiguityReport,
}

/// Induce `γ_B(U ∩ B) = γ(U) ∩ B` on the subspace with carrier `b`. For a
/// relative open with several defining traces the candidate values are
/// collected; a non-singleton set is a clash resolved per `policy`.
pub fn induced_subspace_operation(
    op: &Operation,
    b: Mask,
    policy: SubspacePolicy,
) -> Result<InducedOperation, SpaceError> {
    let (sub, trace) = op.space().subspace(b)?;
    let sub = Arc::new(sub);
    let mut values = Vec::with_capacity(sub.opens().len());
    let mut clashes = Vec::new();
    for &rel in sub.opens() {
        let slot = trace
            .traces
            .iter()
            .find(|(v, _)| *v == rel)
            .expect("every relative open has a trace");
        let mut candidates: Vec<Mask> = slot
            .1
            .iter()
            .map(|&u| {
                let parent_val = op.value_of(u).expect("trace lists opens") & b;
                trace.compress(parent_val)
            })
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        if candidates.len() > 1 {
            clashes.push((rel, candidates.clone()));
        }
        values.push(candidates.iter().fold(0, |acc, &v| acc | v));
    }
    let report = AmbiguityReport { clashes };
    let operation = match policy {
        SubspacePolicy::FlagAmbiguous if report.is_ambiguous() => None,
        _ => Some(Operation { space: sub.clone(), values, kind: OpKind::Custom }),
    };
    Ok(InducedOperation { subspace: sub, trace, operation, report })
}
