//! Instance grids and the check/search driver.
//!
//! Grids iterate in one canonical order: spaces ascending in the enumeration
//! order, then operations in their source order, then maps by index. Every
//! instance owns a global index in that order; parallel workers process
//! whole blocks and results merge by commutative addition with the first
//! counterexample chosen by minimum index, so output never depends on worker
//! count or scheduling.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use super::{
    ClaimOutcome, Config, DropSet, Eval, Hypothesis, Instance, MapSlot, OpSlot, Shape,
    TheoremSpec, Variant, Witness, WitnessPart,
};
use crate::maps::{digits, map_count, PointMap};
use crate::ops::{exhaustive_operations, sample_operations, OpKind, Operation};
use crate::semi::Analyzed;
use crate::space::{enumerate_topologies, FiniteSpace, Mask, SpaceError, MAX_POINTS};

/// Where operations come from, per space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OpSource {
    Builtins,
    Random { count: usize, seed: u64 },
    Exhaustive,
}

impl OpSource {
    pub fn describe(self) -> String {
        match self {
            OpSource::Builtins => "builtins".into(),
            OpSource::Random { count, seed } => format!("random:{count}:{seed}"),
            OpSource::Exhaustive => "exhaustive".into(),
        }
    }
}

/// Where maps come from, per ordered space pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum MapSource {
    /// All maps when both sides have at most 3 points, else 100 seeded samples.
    #[default]
    Auto,
    All,
    Sample {
        count: usize,
        seed: u64,
    },
}

impl MapSource {
    pub fn describe(self) -> String {
        match self {
            MapSource::Auto => "auto".into(),
            MapSource::All => "all".into(),
            MapSource::Sample { count, seed } => format!("sample:{count}:{seed}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckRequest {
    pub max_points: usize,
    pub op_source: OpSource,
    pub map_source: MapSource,
    pub config: Config,
}

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Tally {
    pub holds: u64,
    pub counterexamples: u64,
    pub skipped: u64,
}

impl Tally {
    fn add(&mut self, other: Tally) {
        self.holds += other.holds;
        self.counterexamples += other.counterexamples;
        self.skipped += other.skipped;
    }
}

/// Replayable description of one (space, operation) pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpaceOpRecipe {
    pub n: usize,
    pub opens: Vec<Mask>,
    pub kind: OpKind,
    pub values: Vec<Mask>,
}

impl SpaceOpRecipe {
    fn of(a: &Analyzed) -> SpaceOpRecipe {
        SpaceOpRecipe {
            n: a.space.n(),
            opens: a.space.opens().to_vec(),
            kind: a.op.kind(),
            values: a.op.values().to_vec(),
        }
    }

    pub fn build(&self) -> Arc<Analyzed> {
        let space = Arc::new(FiniteSpace::new(self.n, &self.opens).expect("recipe is valid"));
        let op = match self.kind {
            OpKind::Custom => {
                let rows: Vec<(Mask, Mask)> =
                    self.opens.iter().copied().zip(self.values.iter().copied()).collect();
                Operation::from_table(space, &rows).expect("recipe table is valid")
            }
            kind => Operation::builtin(space, kind),
        };
        Analyzed::new(op)
    }

    fn op_compact(&self) -> String {
        match self.kind {
            OpKind::Custom => {
                let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
                format!("custom:{}", vals.join(","))
            }
            kind => kind.name().to_string(),
        }
    }

    fn space_compact(&self) -> String {
        let opens: Vec<String> = self.opens.iter().map(|m| m.to_string()).collect();
        format!("{}:{}", self.n, opens.join(","))
    }
}

/// Replayable description of one instance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum InstanceRecipe {
    Space(SpaceOpRecipe),
    Map { x: SpaceOpRecipe, y: SpaceOpRecipe, f: Vec<u8> },
    Chain { x: SpaceOpRecipe, y: SpaceOpRecipe, z: SpaceOpRecipe, f: Vec<u8>, g: Vec<u8> },
}

impl InstanceRecipe {
    pub fn of(inst: &Instance) -> InstanceRecipe {
        match inst {
            Instance::Space(a) => InstanceRecipe::Space(SpaceOpRecipe::of(a)),
            Instance::Map(m) => InstanceRecipe::Map {
                x: SpaceOpRecipe::of(&m.dom),
                y: SpaceOpRecipe::of(&m.cod),
                f: m.mapping().to_vec(),
            },
            Instance::Chain { f, g } => InstanceRecipe::Chain {
                x: SpaceOpRecipe::of(&f.dom),
                y: SpaceOpRecipe::of(&f.cod),
                z: SpaceOpRecipe::of(&g.cod),
                f: f.mapping().to_vec(),
                g: g.mapping().to_vec(),
            },
        }
    }

    pub fn build(&self) -> Instance {
        match self {
            InstanceRecipe::Space(r) => Instance::Space(r.build()),
            InstanceRecipe::Map { x, y, f } => {
                let dom = x.build();
                let cod = y.build();
                Instance::Map(PointMap::new(dom, cod, f.clone()).expect("recipe map is valid"))
            }
            InstanceRecipe::Chain { x, y, z, f, g } => {
                let ax = x.build();
                let ay = y.build();
                let az = z.build();
                let fm = PointMap::new(ax, ay.clone(), f.clone()).expect("recipe map is valid");
                let gm = PointMap::new(ay, az, g.clone()).expect("recipe map is valid");
                Instance::Chain { f: fm, g: gm }
            }
        }
    }

    /// Document-format text that the `validate` command accepts back.
    pub fn render_document(&self) -> String {
        let digits_rows = |f: &[u8]| -> String {
            f.iter().enumerate().map(|(i, &q)| format!("  {i} -> {q}\n")).collect()
        };
        match self {
            InstanceRecipe::Space(r) => {
                crate::io::render_space_block("X", r.n, &r.opens)
                    + &crate::io::render_operation_block("gamma", "X", r.kind, &r.opens, &r.values)
            }
            InstanceRecipe::Map { x, y, f } => {
                let mut out = crate::io::render_space_block("X", x.n, &x.opens);
                out += &crate::io::render_operation_block("gamma", "X", x.kind, &x.opens, &x.values);
                out += &crate::io::render_space_block("Y", y.n, &y.opens);
                out += &crate::io::render_operation_block("beta", "Y", y.kind, &y.opens, &y.values);
                out += &format!(
                    "map f : X -> Y {{\n{}  gamma = gamma\n  beta = beta\n}}\n",
                    digits_rows(f)
                );
                out
            }
            InstanceRecipe::Chain { x, y, z, f, g } => {
                let mut out = crate::io::render_space_block("X", x.n, &x.opens);
                out += &crate::io::render_operation_block("gamma", "X", x.kind, &x.opens, &x.values);
                out += &crate::io::render_space_block("Y", y.n, &y.opens);
                out += &crate::io::render_operation_block("beta", "Y", y.kind, &y.opens, &y.values);
                out += &crate::io::render_space_block("Z", z.n, &z.opens);
                out +=
                    &crate::io::render_operation_block("alpha", "Z", z.kind, &z.opens, &z.values);
                out += &format!(
                    "map f : X -> Y {{\n{}  gamma = gamma\n  beta = beta\n}}\n",
                    digits_rows(f)
                );
                out += &format!(
                    "map g : Y -> Z {{\n{}  gamma = beta\n  beta = alpha\n}}\n",
                    digits_rows(g)
                );
                out
            }
        }
    }

    pub fn compact(&self) -> String {
        let join = |f: &[u8]| {
            f.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        };
        match self {
            InstanceRecipe::Space(r) => {
                format!("X={} gamma={}", r.space_compact(), r.op_compact())
            }
            InstanceRecipe::Map { x, y, f } => format!(
                "X={} gamma={} Y={} beta={} f={}",
                x.space_compact(),
                x.op_compact(),
                y.space_compact(),
                y.op_compact(),
                join(f)
            ),
            InstanceRecipe::Chain { x, y, z, f, g } => format!(
                "X={} gamma={} Y={} beta={} Z={} alpha={} f={} g={}",
                x.space_compact(),
                x.op_compact(),
                y.space_compact(),
                y.op_compact(),
                z.space_compact(),
                z.op_compact(),
                join(f),
                join(g)
            ),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerdictOutcome {
    Holds,
    Counterexample,
    Skipped,
}

impl VerdictOutcome {
    pub fn name(self) -> &'static str {
        match self {
            VerdictOutcome::Holds => "holds",
            VerdictOutcome::Counterexample => "counterexample",
            VerdictOutcome::Skipped => "hypotheses-not-met",
        }
    }
}

/// Per-instance outcome as streamed in machine mode.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub spec_id: &'static str,
    pub index: u64,
    pub outcome: VerdictOutcome,
    pub witness: Option<Witness>,
    pub recipe: InstanceRecipe,
}

impl Verdict {
    pub fn machine_line(&self) -> String {
        let mut line = format!(
            "verdict theorem={} index={} outcome={}",
            self.spec_id,
            self.index,
            self.outcome.name()
        );
        if let Some(w) = &self.witness {
            let parts: Vec<String> = w
                .parts
                .iter()
                .map(|(n, p)| match p {
                    WitnessPart::Set(m) => format!("{n}:{m}"),
                    WitnessPart::Point(x) => format!("{n}:p{x}"),
                })
                .collect();
            let _ = write!(line, " witness={}", parts.join(","));
        }
        let _ = write!(line, " instance=[{}]", self.recipe.compact());
        line
    }
}

#[derive(Clone, Debug)]
pub struct CounterexampleRecord {
    pub index: u64,
    pub recipe: InstanceRecipe,
    pub witness: Witness,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub spec_id: &'static str,
    pub statement: &'static str,
    pub variant: Variant,
    pub request: CheckRequest,
    pub total: u64,
    pub tally: Tally,
    pub first: Option<CounterexampleRecord>,
}

impl CheckReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "check {} [{}]", self.spec_id, self.variant.name());
        let _ = writeln!(out, "  statement: {}", self.statement);
        let _ = writeln!(
            out,
            "  grid: max-points={} ops={} maps={}",
            self.request.max_points,
            self.request.op_source.describe(),
            self.request.map_source.describe()
        );
        let _ = writeln!(out, "  config: {}", self.request.config);
        let _ = writeln!(
            out,
            "  instances={} holds={} counterexamples={} hypotheses-unmet={}",
            self.total, self.tally.holds, self.tally.counterexamples, self.tally.skipped
        );
        match &self.first {
            None => {
                let _ = writeln!(out, "  result: HOLDS on this grid");
            }
            Some(cex) => {
                let _ = writeln!(out, "  result: COUNTEREXAMPLE at index {}", cex.index);
                let _ = writeln!(out, "  witness: {}", cex.witness);
                for line in cex.recipe.render_document().lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
        }
        out
    }

    pub fn machine_summary(&self) -> String {
        format!(
            "summary theorem={} variant={} total={} holds={} counterexamples={} skipped={} first={} config=[{}] grid=[max-points={} ops={} maps={}]",
            self.spec_id,
            self.variant.name(),
            self.total,
            self.tally.holds,
            self.tally.counterexamples,
            self.tally.skipped,
            self.first.as_ref().map_or("-".into(), |c| c.index.to_string()),
            self.request.config,
            self.request.max_points,
            self.request.op_source.describe(),
            self.request.map_source.describe(),
        )
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Counterexample(Box<CounterexampleRecord>),
    Exhausted { visited: u64 },
    BudgetExhausted { visited: u64 },
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub spec_id: &'static str,
    pub statement: &'static str,
    pub dropped: Vec<String>,
    pub request: CheckRequest,
    pub outcome: SearchOutcome,
}

impl SearchReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let dropped =
            if self.dropped.is_empty() { "none".to_string() } else { self.dropped.join(",") };
        let _ = writeln!(out, "search {} drop={}", self.spec_id, dropped);
        let _ = writeln!(out, "  statement: {}", self.statement);
        let _ = writeln!(
            out,
            "  grid: max-points={} ops={} maps={}",
            self.request.max_points,
            self.request.op_source.describe(),
            self.request.map_source.describe()
        );
        let _ = writeln!(out, "  config: {}", self.request.config);
        match &self.outcome {
            SearchOutcome::Counterexample(cex) => {
                let _ = writeln!(out, "  result: COUNTEREXAMPLE at index {}", cex.index);
                let _ = writeln!(out, "  witness: {}", cex.witness);
                for line in cex.recipe.render_document().lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
            SearchOutcome::Exhausted { visited } => {
                let _ = writeln!(out, "  result: EXHAUSTED grid ({visited} instances, no counterexample)");
            }
            SearchOutcome::BudgetExhausted { visited } => {
                let _ = writeln!(out, "  result: BUDGET EXHAUSTED after {visited} instances, no counterexample");
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// grid construction
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct MapMeta {
    digits: Vec<u8>,
    injective: bool,
    surjective: bool,
}

struct Grid {
    shape: Shape,
    ops: Vec<Vec<Arc<Analyzed>>>,
    /// `maps[i][j]`: sampled-or-all map metadata for functions space i → space j.
    maps: Vec<Vec<Vec<MapMeta>>>,
    blocks: Vec<Block>,
    total: u64,
}

#[derive(Clone, Copy, Debug)]
struct Block {
    coords: [usize; 3],
    start: u64,
}

fn splitmix(mut h: u64) -> u64 {
    h = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = h;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn map_metas(
    dom: &Arc<FiniteSpace>,
    cod: &Arc<FiniteSpace>,
    source: MapSource,
) -> Vec<MapMeta> {
    let total = map_count(dom.n(), cod.n());
    let indices: Vec<u64> = match source {
        MapSource::All => (0..total).collect(),
        MapSource::Auto if dom.n() <= 3 && cod.n() <= 3 => (0..total).collect(),
        MapSource::Auto => sampled_indices(total, 100, 0, dom, cod),
        MapSource::Sample { count, seed } => sampled_indices(total, count, seed, dom, cod),
    };
    indices
        .into_iter()
        .map(|map_index| {
            let d = digits(map_index, dom.n(), cod.n());
            let image: Mask = d.iter().fold(0, |acc, &q| acc | 1 << q);
            MapMeta {
                injective: image.count_ones() as usize == d.len(),
                surjective: image == cod.universe(),
                digits: d,
            }
        })
        .collect()
}

fn sampled_indices(
    total: u64,
    count: usize,
    seed: u64,
    dom: &Arc<FiniteSpace>,
    cod: &Arc<FiniteSpace>,
) -> Vec<u64> {
    use rand_core::{RngCore, SeedableRng};
    let mut h = splitmix(seed ^ dom.family_bits());
    h = splitmix(h ^ cod.family_bits() ^ ((dom.n() as u64) << 8) ^ cod.n() as u64);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(h);
    let mut picks: Vec<u64> = (0..count).map(|_| rng.next_u64() % total).collect();
    picks.sort_unstable();
    picks.dedup();
    picks
}

fn build_grid(shape: Shape, req: &CheckRequest) -> Result<Grid, LabError> {
    if req.max_points == 0 || req.max_points > MAX_POINTS {
        return Err(SpaceError::CapExceeded {
            what: "check/search point bound",
            limit: MAX_POINTS,
        }
        .into());
    }
    let mut spaces: Vec<Arc<FiniteSpace>> = Vec::new();
    for n in 1..=req.max_points {
        spaces.extend(enumerate_topologies(n, false)?);
    }
    let mut ops = Vec::with_capacity(spaces.len());
    for space in &spaces {
        let list = match req.op_source {
            OpSource::Builtins => sample_operations(space, 0, 0),
            OpSource::Random { count, seed } => sample_operations(space, count, seed),
            OpSource::Exhaustive => exhaustive_operations(space)?,
        };
        ops.push(list.into_iter().map(Analyzed::new).collect::<Vec<_>>());
    }
    let maps: Vec<Vec<Vec<MapMeta>>> = match shape {
        Shape::Space => Vec::new(),
        _ => spaces
            .iter()
            .map(|d| spaces.iter().map(|c| map_metas(d, c, req.map_source)).collect())
            .collect(),
    };
    let mut blocks = Vec::new();
    let mut cursor = 0u64;
    match shape {
        Shape::Space => {
            for (i, ops_i) in ops.iter().enumerate() {
                blocks.push(Block { coords: [i, 0, 0], start: cursor });
                cursor += ops_i.len() as u64;
            }
        }
        Shape::Map => {
            for i in 0..spaces.len() {
                for j in 0..spaces.len() {
                    let len =
                        (ops[i].len() * ops[j].len()) as u64 * maps[i][j].len() as u64;
                    blocks.push(Block { coords: [i, j, 0], start: cursor });
                    cursor += len;
                }
            }
        }
        Shape::Chain => {
            for i in 0..spaces.len() {
                for j in 0..spaces.len() {
                    for k in 0..spaces.len() {
                        let len = (ops[i].len() * ops[j].len() * ops[k].len()) as u64
                            * maps[i][j].len() as u64
                            * maps[j][k].len() as u64;
                        blocks.push(Block { coords: [i, j, k], start: cursor });
                        cursor += len;
                    }
                }
            }
        }
    }
    Ok(Grid { shape, ops, maps, blocks, total: cursor })
}

// ---------------------------------------------------------------------------
// hypothesis staging
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Default)]
struct MapReq {
    injective: bool,
    surjective: bool,
}

impl MapReq {
    fn met(self, m: &MapMeta) -> bool {
        (!self.injective || m.injective) && (!self.surjective || m.surjective)
    }
}

struct Staged {
    op_hyps: Vec<Hypothesis>,
    f_req: MapReq,
    g_req: MapReq,
}

fn stage_hypotheses(spec: &TheoremSpec, drop: &DropSet) -> Staged {
    let mut op_hyps = Vec::new();
    let mut f_req = MapReq::default();
    let mut g_req = MapReq::default();
    for &h in spec.hypotheses {
        if drop.contains(h) {
            continue;
        }
        match h {
            Hypothesis::OpOpen(_)
            | Hypothesis::OpMonotone(_)
            | Hypothesis::OpRegular(_)
            | Hypothesis::ClosedDefsAgree(_) => op_hyps.push(h),
            Hypothesis::MapInjective(s) => match s {
                MapSlot::F => f_req.injective = true,
                MapSlot::G => g_req.injective = true,
            },
            Hypothesis::MapSurjective(s) => match s {
                MapSlot::F => f_req.surjective = true,
                MapSlot::G => g_req.surjective = true,
            },
            Hypothesis::MapBijective(s) => match s {
                MapSlot::F => {
                    f_req.injective = true;
                    f_req.surjective = true;
                }
                MapSlot::G => {
                    g_req.injective = true;
                    g_req.surjective = true;
                }
            },
            Hypothesis::SubspaceUnambiguous => {} // enforced in claims via Eval
        }
    }
    Staged { op_hyps, f_req, g_req }
}

fn op_hyps_met(staged: &Staged, slots: &[&Arc<Analyzed>], config: &Config) -> bool {
    staged.op_hyps.iter().all(|h| {
        let pick: Vec<&Arc<Analyzed>> = match h {
            Hypothesis::OpOpen(s)
            | Hypothesis::OpMonotone(s)
            | Hypothesis::OpRegular(s)
            | Hypothesis::ClosedDefsAgree(s) => match s {
                OpSlot::All => slots.to_vec(),
                OpSlot::X => vec![slots[0]],
                OpSlot::Y => vec![slots[1.min(slots.len() - 1)]],
                OpSlot::Z => vec![slots[2.min(slots.len() - 1)]],
            },
            _ => unreachable!("staged op hypotheses only"),
        };
        pick.iter().all(|a| {
            let p = a.analysis.gamma().profile();
            match h {
                Hypothesis::OpOpen(_) => p.open(config.open_dir),
                Hypothesis::OpMonotone(_) => p.monotone,
                Hypothesis::OpRegular(_) => p.regular,
                Hypothesis::ClosedDefsAgree(_) => p.closed_defs_agree,
                _ => unreachable!(),
            }
        })
    })
}

// ---------------------------------------------------------------------------
// block evaluation
// ---------------------------------------------------------------------------

#[derive(Default)]
struct BlockOut {
    tally: Tally,
    first: Option<(u64, CounterexampleRecord)>,
    verdicts: Option<Vec<Verdict>>,
}

struct Job<'a> {
    spec: &'a TheoremSpec,
    grid: &'a Grid,
    staged: &'a Staged,
    eval: Eval,
    /// Exclusive upper bound on global indices to visit.
    limit: u64,
    stream: bool,
}

impl Job<'_> {
    fn note(
        &self,
        out: &mut BlockOut,
        index: u64,
        outcome: VerdictOutcome,
        witness: Option<Witness>,
        inst: Option<&Instance>,
    ) {
        match outcome {
            VerdictOutcome::Holds => out.tally.holds += 1,
            VerdictOutcome::Skipped => out.tally.skipped += 1,
            VerdictOutcome::Counterexample => {
                out.tally.counterexamples += 1;
                let inst = inst.expect("counterexample carries its instance");
                let record = CounterexampleRecord {
                    index,
                    recipe: InstanceRecipe::of(inst),
                    witness: witness.clone().expect("counterexample carries a witness"),
                };
                if out.first.as_ref().is_none_or(|(i, _)| *i > index) {
                    out.first = Some((index, record));
                }
            }
        }
        if let Some(sink) = &mut out.verdicts {
            let recipe = inst.map(InstanceRecipe::of).unwrap_or_else(|| {
                // skipped instances in stream mode still describe themselves
                InstanceRecipe::Space(SpaceOpRecipe {
                    n: 0,
                    opens: vec![],
                    kind: OpKind::Custom,
                    values: vec![],
                })
            });
            sink.push(Verdict {
                spec_id: self.spec.id,
                index,
                outcome,
                witness,
                recipe,
            });
        }
    }

    fn run_block(&self, block: &Block) -> BlockOut {
        let mut out = BlockOut {
            verdicts: if self.stream { Some(Vec::new()) } else { None },
            ..Default::default()
        };
        match self.grid.shape {
            Shape::Space => self.run_space_block(block, &mut out),
            Shape::Map => self.run_map_block(block, &mut out),
            Shape::Chain => self.run_chain_block(block, &mut out),
        }
        out
    }

    fn run_space_block(&self, block: &Block, out: &mut BlockOut) {
        let [i, _, _] = block.coords;
        for (ai, a) in self.grid.ops[i].iter().enumerate() {
            let index = block.start + ai as u64;
            if index >= self.limit {
                return;
            }
            let inst = Instance::Space(a.clone());
            if !op_hyps_met(self.staged, &[a], &self.eval.config) {
                self.note(out, index, VerdictOutcome::Skipped, None, Some(&inst));
                continue;
            }
            match (self.spec.eval)(&inst, &self.eval) {
                ClaimOutcome::Holds => {
                    self.note(out, index, VerdictOutcome::Holds, None, Some(&inst))
                }
                ClaimOutcome::Violated(w) => {
                    self.note(out, index, VerdictOutcome::Counterexample, Some(w), Some(&inst))
                }
            }
        }
    }

    fn run_map_block(&self, block: &Block, out: &mut BlockOut) {
        let [i, j, _] = block.coords;
        let metas = &self.grid.maps[i][j];
        let nmaps = metas.len() as u64;
        if nmaps == 0 {
            return;
        }
        for (ai, a) in self.grid.ops[i].iter().enumerate() {
            for (bi, b) in self.grid.ops[j].iter().enumerate() {
                let base = block.start
                    + ((ai * self.grid.ops[j].len() + bi) as u64) * nmaps;
                if base >= self.limit {
                    return;
                }
                let ops_ok = op_hyps_met(self.staged, &[a, b], &self.eval.config);
                if !ops_ok && !self.stream {
                    let visible = nmaps.min(self.limit - base);
                    out.tally.skipped += visible;
                    continue;
                }
                for (mi, meta) in metas.iter().enumerate() {
                    let index = base + mi as u64;
                    if index >= self.limit {
                        return;
                    }
                    if !ops_ok || !self.staged.f_req.met(meta) {
                        if self.stream {
                            let inst = Instance::Map(
                                PointMap::new(a.clone(), b.clone(), meta.digits.clone())
                                    .expect("meta digits are valid"),
                            );
                            self.note(out, index, VerdictOutcome::Skipped, None, Some(&inst));
                        } else {
                            out.tally.skipped += 1;
                        }
                        continue;
                    }
                    let inst = Instance::Map(
                        PointMap::new(a.clone(), b.clone(), meta.digits.clone())
                            .expect("meta digits are valid"),
                    );
                    match (self.spec.eval)(&inst, &self.eval) {
                        ClaimOutcome::Holds => {
                            self.note(out, index, VerdictOutcome::Holds, None, Some(&inst))
                        }
                        ClaimOutcome::Violated(w) => self.note(
                            out,
                            index,
                            VerdictOutcome::Counterexample,
                            Some(w),
                            Some(&inst),
                        ),
                    }
                }
            }
        }
    }

    fn run_chain_block(&self, block: &Block, out: &mut BlockOut) {
        let [i, j, k] = block.coords;
        let fmetas = &self.grid.maps[i][j];
        let gmetas = &self.grid.maps[j][k];
        let (nf, ng) = (fmetas.len() as u64, gmetas.len() as u64);
        if nf == 0 || ng == 0 {
            return;
        }
        let (oj, ok_len) = (self.grid.ops[j].len(), self.grid.ops[k].len());
        for (ai, a) in self.grid.ops[i].iter().enumerate() {
            for (bi, b) in self.grid.ops[j].iter().enumerate() {
                for (ci, c) in self.grid.ops[k].iter().enumerate() {
                    let combo = ((ai * oj + bi) * ok_len + ci) as u64;
                    let base = block.start + combo * nf * ng;
                    if base >= self.limit {
                        return;
                    }
                    let ops_ok = op_hyps_met(self.staged, &[a, b, c], &self.eval.config);
                    if !ops_ok && !self.stream {
                        let visible = (nf * ng).min(self.limit - base);
                        out.tally.skipped += visible;
                        continue;
                    }
                    for (fi, fmeta) in fmetas.iter().enumerate() {
                        let fbase = base + fi as u64 * ng;
                        if fbase >= self.limit {
                            return;
                        }
                        let f_ok = ops_ok && self.staged.f_req.met(fmeta);
                        if !f_ok && !self.stream {
                            out.tally.skipped += ng.min(self.limit - fbase);
                            continue;
                        }
                        let fmap = PointMap::new(a.clone(), b.clone(), fmeta.digits.clone())
                            .expect("meta digits are valid");
                        for (gi, gmeta) in gmetas.iter().enumerate() {
                            let index = fbase + gi as u64;
                            if index >= self.limit {
                                return;
                            }
                            if !f_ok || !self.staged.g_req.met(gmeta) {
                                if self.stream {
                                    let gmap = PointMap::new(
                                        b.clone(),
                                        c.clone(),
                                        gmeta.digits.clone(),
                                    )
                                    .expect("meta digits are valid");
                                    let inst =
                                        Instance::Chain { f: fmap.clone(), g: gmap };
                                    self.note(
                                        out,
                                        index,
                                        VerdictOutcome::Skipped,
                                        None,
                                        Some(&inst),
                                    );
                                } else {
                                    out.tally.skipped += 1;
                                }
                                continue;
                            }
                            let gmap =
                                PointMap::new(b.clone(), c.clone(), gmeta.digits.clone())
                                    .expect("meta digits are valid");
                            let inst = Instance::Chain { f: fmap.clone(), g: gmap };
                            match (self.spec.eval)(&inst, &self.eval) {
                                ClaimOutcome::Holds => self.note(
                                    out,
                                    index,
                                    VerdictOutcome::Holds,
                                    None,
                                    Some(&inst),
                                ),
                                ClaimOutcome::Violated(w) => self.note(
                                    out,
                                    index,
                                    VerdictOutcome::Counterexample,
                                    Some(w),
                                    Some(&inst),
                                ),
                            }
                        }
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// drivers
// ---------------------------------------------------------------------------

const WAVE: usize = 256;

/// Full sweep of one statement over its grid. With a sink, every per-instance
/// verdict is delivered in canonical order (machine mode); block results are
/// still computed in parallel.
pub fn run_check(
    spec: &TheoremSpec,
    req: &CheckRequest,
    mut sink: Option<&mut dyn FnMut(&Verdict)>,
) -> Result<CheckReport, LabError> {
    let grid = build_grid(spec.shape, req)?;
    let staged = stage_hypotheses(spec, &DropSet::default());
    let eval = Eval::new(req.config);
    let job = Job {
        spec,
        grid: &grid,
        staged: &staged,
        eval,
        limit: u64::MAX,
        stream: sink.is_some(),
    };
    let mut tally = Tally::default();
    let mut first: Option<(u64, CounterexampleRecord)> = None;
    for wave in grid.blocks.chunks(WAVE) {
        let outs: Vec<BlockOut> = wave.par_iter().map(|b| job.run_block(b)).collect();
        for out in outs {
            tally.add(out.tally);
            if let Some((idx, rec)) = out.first {
                if first.as_ref().is_none_or(|(i, _)| *i > idx) {
                    first = Some((idx, rec));
                }
            }
            if let (Some(sink), Some(verdicts)) = (sink.as_deref_mut(), out.verdicts) {
                for v in &verdicts {
                    sink(v);
                }
            }
        }
    }
    Ok(CheckReport {
        spec_id: spec.id,
        statement: spec.statement,
        variant: spec.variant,
        request: *req,
        total: grid.total,
        tally,
        first: first.map(|(_, rec)| rec),
    })
}

/// Walk the same grid with some hypotheses not enforced, stopping at the
/// first counterexample in canonical order, at grid exhaustion, or at the
/// budget boundary.
pub fn run_search(
    spec: &TheoremSpec,
    drop: &DropSet,
    req: &CheckRequest,
    budget: Option<u64>,
) -> Result<SearchReport, LabError> {
    let grid = build_grid(spec.shape, req)?;
    let staged = stage_hypotheses(spec, drop);
    let mut eval = Eval::new(req.config);
    if drop.contains(Hypothesis::SubspaceUnambiguous) {
        eval.enforce_unambiguous = false;
    }
    let limit = budget.unwrap_or(u64::MAX);
    let job = Job { spec, grid: &grid, staged: &staged, eval, limit, stream: false };
    let mut found: Option<(u64, CounterexampleRecord)> = None;
    for wave in grid.blocks.chunks(WAVE) {
        if wave[0].start >= limit {
            break;
        }
        let outs: Vec<BlockOut> = wave.par_iter().map(|b| job.run_block(b)).collect();
        for out in outs {
            if let Some((idx, rec)) = out.first {
                if found.as_ref().is_none_or(|(i, _)| *i > idx) {
                    found = Some((idx, rec));
                }
            }
        }
        if found.is_some() {
            break;
        }
    }
    let outcome = match found {
        Some((_, rec)) => SearchOutcome::Counterexample(Box::new(rec)),
        None if grid.total > limit => SearchOutcome::BudgetExhausted { visited: limit },
        None => SearchOutcome::Exhausted { visited: grid.total },
    };
    Ok(SearchReport {
        spec_id: spec.id,
        statement: spec.statement,
        dropped: drop.names().to_vec(),
        request: *req,
        outcome,
    })
}
