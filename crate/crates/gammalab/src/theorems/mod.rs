//! The statement laboratory: a registry of checkable claims about the
//! γ-calculus, a driver that sweeps them over grids of small instances, and
//! counterexample search with hypotheses selectively dropped.
//!
//! Every claim is a total decidable predicate over one instance — a space
//! with an operation, a map between two such pairs, or a composable chain of
//! two maps. Hypotheses are drawn from a closed vocabulary so that sweeps can
//! drop them one by one and probe necessity.

mod driver;
mod registry;

pub use driver::{
    run_check, run_search, CheckReport, CheckRequest, CounterexampleRecord, InstanceRecipe,
    LabError, MapSource, OpSource, SearchOutcome, SearchReport, SpaceOpRecipe, Tally, Verdict,
    VerdictOutcome,
};
pub use registry::registry;

use std::fmt;
use std::sync::Arc;

use crate::gamma::ClosedDef;
use crate::maps::PointMap;
use crate::ops::{OpenDir, SubspacePolicy};
use crate::semi::Analyzed;
use crate::space::{set_text, Mask};

/// Which operation(s) of an instance a hypothesis constrains. Slots follow
/// the chain order: `X` is the domain of `f`, `Y` its codomain (and the
/// domain of `g`), `Z` the codomain of `g`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OpSlot {
    All,
    X,
    Y,
    Z,
}

/// Which map of an instance a hypothesis constrains.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapSlot {
    F,
    G,
}

/// The closed hypothesis vocabulary.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Hypothesis {
    /// Open operation in the configured direction.
    OpOpen(OpSlot),
    OpMonotone(OpSlot),
    OpRegular(OpSlot),
    MapInjective(MapSlot),
    MapSurjective(MapSlot),
    MapBijective(MapSlot),
    /// Binding-level: induced subspace operations must be trace-unambiguous.
    SubspaceUnambiguous,
    /// The two γ-closed definitions coincide on the instance.
    ClosedDefsAgree(OpSlot),
}

impl Hypothesis {
    /// Name used by `--drop`; scope suffixes are not part of it.
    pub fn base_name(self) -> &'static str {
        match self {
            Hypothesis::OpOpen(_) => "op-open",
            Hypothesis::OpMonotone(_) => "op-monotone",
            Hypothesis::OpRegular(_) => "op-regular",
            Hypothesis::MapInjective(_) => "map-injective",
            Hypothesis::MapSurjective(_) => "map-surjective",
            Hypothesis::MapBijective(_) => "map-bijective",
            Hypothesis::SubspaceUnambiguous => "subspace-gB-unambiguous",
            Hypothesis::ClosedDefsAgree(_) => "closed-defs-agree",
        }
    }

    pub fn label(self) -> String {
        let slot = |s: OpSlot| match s {
            OpSlot::All => "",
            OpSlot::X => "(X)",
            OpSlot::Y => "(Y)",
            OpSlot::Z => "(Z)",
        };
        match self {
            Hypothesis::OpOpen(s)
            | Hypothesis::OpMonotone(s)
            | Hypothesis::OpRegular(s)
            | Hypothesis::ClosedDefsAgree(s) => format!("{}{}", self.base_name(), slot(s)),
            Hypothesis::MapInjective(m)
            | Hypothesis::MapSurjective(m)
            | Hypothesis::MapBijective(m) => {
                let tag = match m {
                    MapSlot::F => "(f)",
                    MapSlot::G => "(g)",
                };
                format!("{}{}", self.base_name(), tag)
            }
            Hypothesis::SubspaceUnambiguous => self.base_name().to_string(),
        }
    }

    /// Instance-level evaluation. `SubspaceUnambiguous` is enforced inside
    /// claims (it constrains bindings, not instances), so it never skips a
    /// whole instance.
    pub fn holds(self, inst: &Instance, config: &Config) -> bool {
        let op_flag = |slot: OpSlot, f: &dyn Fn(&Arc<Analyzed>) -> bool| -> bool {
            inst.ops_in_slot(slot).iter().all(|a| f(a))
        };
        match self {
            Hypothesis::OpOpen(s) => {
                let dir = config.open_dir;
                op_flag(s, &|a| a.analysis.gamma().profile().open(dir))
            }
            Hypothesis::OpMonotone(s) => op_flag(s, &|a| a.analysis.gamma().profile().monotone),
            Hypothesis::OpRegular(s) => op_flag(s, &|a| a.analysis.gamma().profile().regular),
            Hypothesis::MapInjective(m) => inst.map_in_slot(m).is_injective(),
            Hypothesis::MapSurjective(m) => inst.map_in_slot(m).is_surjective(),
            Hypothesis::MapBijective(m) => inst.map_in_slot(m).is_bijective(),
            Hypothesis::SubspaceUnambiguous => true,
            Hypothesis::ClosedDefsAgree(s) => {
                op_flag(s, &|a| a.analysis.gamma().closed_defs_agree())
            }
        }
    }
}

/// Set of base names to drop during a search.
#[derive(Clone, Debug, Default)]
pub struct DropSet(Vec<String>);

impl DropSet {
    pub fn parse(names: &[String], available: &[Hypothesis]) -> Result<DropSet, String> {
        let mut out = Vec::new();
        for raw in names {
            let name = raw.trim().replace('\u{03b3}', "g");
            if name.is_empty() {
                continue;
            }
            if !available.iter().any(|h| h.base_name() == name) {
                return Err(format!(
                    "hypothesis {name:?} is not stated here; stated: {}",
                    available.iter().map(|h| h.base_name()).collect::<Vec<_>>().join(", ")
                ));
            }
            out.push(name);
        }
        Ok(DropSet(out))
    }

    pub fn contains(&self, h: Hypothesis) -> bool {
        self.0.iter().any(|n| n == h.base_name())
    }

    pub fn names(&self) -> &[String] {
        self.0.as_slice()
    }
}

/// Shape of the instances a statement quantifies over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Shape {
    /// Single space with one operation.
    Space,
    /// A map between two (space, operation) pairs.
    Map,
    /// A composable chain `f: X → Y`, `g: Y → Z`.
    Chain,
}

/// Statement flavour when the source text admits two readings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    AsStated,
    Corrected,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::AsStated => "as-stated",
            Variant::Corrected => "corrected",
        }
    }
}

/// Sweep configuration recorded with every verdict.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Config {
    pub closed_def: ClosedDef,
    pub open_dir: OpenDir,
    pub policy: SubspacePolicy,
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "closed-def={} open-dir={} gb-policy={}",
            self.closed_def.name(),
            self.open_dir.name(),
            self.policy.name()
        )
    }
}

/// Claim-evaluation context.
#[derive(Clone, Copy, Debug)]
pub struct Eval {
    pub config: Config,
    /// When false (hypothesis dropped), ambiguous induced operations are fed
    /// to claims instead of being skipped.
    pub enforce_unambiguous: bool,
}

impl Eval {
    pub fn new(config: Config) -> Eval {
        Eval { config, enforce_unambiguous: true }
    }
}

/// One element of the instance grid.
#[derive(Clone, Debug)]
pub enum Instance {
    Space(Arc<Analyzed>),
    Map(PointMap),
    Chain { f: PointMap, g: PointMap },
}

impl Instance {
    pub fn space(&self) -> &Arc<Analyzed> {
        match self {
            Instance::Space(a) => a,
            _ => panic!("instance is not space-shaped"),
        }
    }

    pub fn map(&self) -> &PointMap {
        match self {
            Instance::Map(m) => m,
            _ => panic!("instance is not map-shaped"),
        }
    }

    pub fn chain(&self) -> (&PointMap, &PointMap) {
        match self {
            Instance::Chain { f, g } => (f, g),
            _ => panic!("instance is not chain-shaped"),
        }
    }

    fn ops_in_slot(&self, slot: OpSlot) -> Vec<&Arc<Analyzed>> {
        let all: Vec<&Arc<Analyzed>> = match self {
            Instance::Space(a) => vec![a],
            Instance::Map(m) => vec![&m.dom, &m.cod],
            Instance::Chain { f, g } => vec![&f.dom, &f.cod, &g.cod],
        };
        match slot {
            OpSlot::All => all,
            OpSlot::X => vec![all[0]],
            OpSlot::Y => vec![all[1.min(all.len() - 1)]],
            OpSlot::Z => vec![all[2.min(all.len() - 1)]],
        }
    }

    fn map_in_slot(&self, slot: MapSlot) -> &PointMap {
        match (self, slot) {
            (Instance::Map(m), MapSlot::F) => m,
            (Instance::Chain { f, .. }, MapSlot::F) => f,
            (Instance::Chain { g, .. }, MapSlot::G) => g,
            _ => panic!("instance has no map slot {slot:?}"),
        }
    }
}

/// Named bindings of a counterexample.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WitnessPart {
    Set(Mask),
    Point(usize),
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Witness {
    pub parts: Vec<(&'static str, WitnessPart)>,
}

impl Witness {
    pub fn of(parts: &[(&'static str, WitnessPart)]) -> Witness {
        Witness { parts: parts.to_vec() }
    }

    pub fn set(&self, name: &str) -> Option<Mask> {
        self.parts.iter().find_map(|(n, p)| match p {
            WitnessPart::Set(m) if *n == name => Some(*m),
            _ => None,
        })
    }

    pub fn point(&self, name: &str) -> Option<usize> {
        self.parts.iter().find_map(|(n, p)| match p {
            WitnessPart::Point(x) if *n == name => Some(*x),
            _ => None,
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, part) in &self.parts {
            if !first {
                write!(f, ", ")?;
            }
            match part {
                WitnessPart::Set(m) => write!(f, "{name} = {}", set_text(*m))?,
                WitnessPart::Point(x) => write!(f, "{name} = {x}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Result of evaluating a claim on one instance (hypotheses already met).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClaimOutcome {
    Holds,
    Violated(Witness),
}

/// A registered statement: hypotheses from the closed vocabulary plus a
/// decidable claim with a witness-replay check.
pub struct TheoremSpec {
    pub id: &'static str,
    /// The claim in the artifact's own notation.
    pub statement: &'static str,
    pub shape: Shape,
    pub hypotheses: &'static [Hypothesis],
    pub variant: Variant,
    pub eval: fn(&Instance, &Eval) -> ClaimOutcome,
    /// Confirms that a stored witness still violates the claim on the given
    /// instance. For claims without quantified bindings this re-runs the
    /// full evaluation.
    pub replay: fn(&Instance, &Eval, &Witness) -> bool,
}

impl TheoremSpec {
    pub fn hypotheses_met(&self, inst: &Instance, config: &Config) -> bool {
        self.hypotheses.iter().all(|h| h.holds(inst, config))
    }
}

impl fmt::Debug for TheoremSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoremSpec")
            .field("id", &self.id)
            .field("shape", &self.shape)
            .field("variant", &self.variant)
            .finish()
    }
}

/// Registry entries whose id matches a query exactly, by dotted prefix
/// (`T5.4` selects every `T5.4.*`), or by variant suffix (`T3.8.1` selects
/// `T3.8.1a` and `T3.8.1c`). Brackets in queries are ignored so decorated
/// spellings of the same id still resolve.
pub fn resolve<'a>(specs: &'a [TheoremSpec], query: &str) -> Vec<&'a TheoremSpec> {
    let clean: String = query.chars().filter(|c| !"[]".contains(*c)).collect();
    if clean == "all" {
        return specs.iter().collect();
    }
    specs
        .iter()
        .filter(|s| {
            if s.id == clean || s.id.starts_with(&format!("{clean}.")) {
                return true;
            }
            // variant-suffix match: remainder after the query must be alphabetic
            s.id.starts_with(&clean)
                && s.id[clean.len()..].chars().all(|c| c.is_ascii_alphabetic())
                && !s.id[clean.len()..].is_empty()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{OpKind, Operation};
    use crate::space::FiniteSpace;
    use crate::theorems::driver::{run_check, CheckRequest, MapSource, OpSource};

    fn sierpinski_identity() -> Instance {
        let s = Arc::new(FiniteSpace::new(2, &[0, 1, 3]).unwrap());
        Instance::Space(crate::semi::Analyzed::new(Operation::builtin(s, OpKind::Identity)))
    }

    #[test]
    fn registry_ids_are_unique_and_resolvable() {
        let specs = registry();
        let mut ids: Vec<&str> = specs.iter().map(|s| s.id).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), before, "duplicate statement id");
        for spec in &specs {
            let found = resolve(&specs, spec.id);
            assert_eq!(found.len(), 1, "{} must resolve to itself", spec.id);
        }
    }

    #[test]
    fn registry_contains_the_semi_closure_decomposition() {
        let specs = registry();
        let spec = specs.iter().find(|s| s.id == "T5.4.1").expect("T5.4.1 registered");
        assert_eq!(spec.statement, "scl(A) = A ∪ sd(A)");
    }

    #[test]
    fn semi_open_characterisation_carries_all_three_hypotheses() {
        let specs = registry();
        let entries: Vec<_> = resolve(&specs, "T3.1");
        assert_eq!(entries.len(), 3);
        for spec in entries {
            let mut names: Vec<&str> =
                spec.hypotheses.iter().map(|h| h.base_name()).collect();
            names.sort_unstable();
            assert_eq!(names, vec!["op-monotone", "op-open", "op-regular"]);
        }
    }

    #[test]
    fn hypothesis_names_come_from_the_closed_vocabulary() {
        let vocabulary = [
            "op-open",
            "op-monotone",
            "op-regular",
            "map-injective",
            "map-surjective",
            "map-bijective",
            "subspace-gB-unambiguous",
            "closed-defs-agree",
        ];
        for spec in registry() {
            for h in spec.hypotheses {
                assert!(vocabulary.contains(&h.base_name()), "{}", h.base_name());
            }
        }
    }

    #[test]
    fn prefix_resolution_selects_direction_and_variant_groups() {
        let specs = registry();
        assert_eq!(resolve(&specs, "T5.4").len(), 5);
        assert_eq!(resolve(&specs, "T3.8").len(), 3);
        assert_eq!(resolve(&specs, "T3.8.1").len(), 2);
        assert_eq!(resolve(&specs, "P[5]").len(), 1);
        assert_eq!(resolve(&specs, "all").len(), specs.len());
        assert!(resolve(&specs, "T9").is_empty());
    }

    #[test]
    fn semi_closed_interior_bound_holds_on_sierpinski_identity() {
        // {1} is semi-closed and int(cl({1})) = {} under the identity table
        let specs = registry();
        let spec = resolve(&specs, "L3.12.1")[0];
        let inst = sierpinski_identity();
        let eval = Eval::new(Config::default());
        assert_eq!((spec.eval)(&inst, &eval), ClaimOutcome::Holds);
    }

    #[test]
    fn direction_pairs_sweep_identical_grids() {
        let req = CheckRequest {
            max_points: 2,
            op_source: OpSource::Random { count: 10, seed: 3 },
            map_source: MapSource::Auto,
            config: Config::default(),
        };
        let specs = registry();
        for group in [
            vec!["L2.2.1", "L2.2.2"],
            vec!["T5.1.12", "T5.1.23", "T5.1.31"],
            vec!["T5.5.1", "T5.5.2"],
            vec!["T5.6.1", "T5.6.2"],
            vec!["T5.10.1", "T5.10.2"],
            vec!["L3.12.1", "L3.12.2", "L3.12.3"],
        ] {
            let reports: Vec<_> = group
                .iter()
                .map(|id| run_check(resolve(&specs, id)[0], &req, None).unwrap())
                .collect();
            for pair in reports.windows(2) {
                assert_eq!(pair[0].total, pair[1].total, "{group:?}");
                assert_eq!(
                    pair[0].tally.skipped, pair[1].tally.skipped,
                    "{group:?} must skip the same instances"
                );
            }
        }
    }

    #[test]
    fn summary_mode_and_stream_mode_agree() {
        let req = CheckRequest {
            max_points: 2,
            op_source: OpSource::Random { count: 6, seed: 11 },
            map_source: MapSource::Auto,
            config: Config::default(),
        };
        let specs = registry();
        for id in ["T5.4.2", "T5.6.1", "T3.8.1a"] {
            let spec = resolve(&specs, id)[0];
            let fast = run_check(spec, &req, None).unwrap();
            let mut streamed = Vec::new();
            let mut sink = |v: &Verdict| streamed.push((v.index, v.outcome));
            let slow = run_check(spec, &req, Some(&mut sink)).unwrap();
            assert_eq!(fast.tally, slow.tally, "{id}");
            assert_eq!(fast.total, slow.total, "{id}");
            assert_eq!(streamed.len() as u64, fast.total, "{id}");
            // stream is the canonical order, gap-free
            for (k, (index, _)) in streamed.iter().enumerate() {
                assert_eq!(*index, k as u64, "{id}");
            }
            let counted = streamed
                .iter()
                .filter(|(_, o)| matches!(o, VerdictOutcome::Counterexample))
                .count() as u64;
            assert_eq!(counted, fast.tally.counterexamples, "{id}");
        }
    }

    #[test]
    fn first_counterexample_is_canonical_minimum() {
        let req = CheckRequest {
            max_points: 3,
            op_source: OpSource::Builtins,
            map_source: MapSource::Auto,
            config: Config::default(),
        };
        let specs = registry();
        let spec = resolve(&specs, "T5.4.4")[0];
        let fast = run_check(spec, &req, None).unwrap();
        let mut first_streamed = None;
        let mut sink = |v: &Verdict| {
            if matches!(v.outcome, VerdictOutcome::Counterexample) && first_streamed.is_none() {
                first_streamed = Some(v.index);
            }
        };
        let _ = run_check(spec, &req, Some(&mut sink)).unwrap();
        assert_eq!(fast.first.map(|c| c.index), first_streamed);
    }

    #[test]
    fn counterexample_recipes_rebuild_and_replay() {
        let specs = registry();
        // chain statements already fail on 2-point spaces; the smaller grid
        // keeps this test quick
        for (id, max_points) in [("T5.4.2", 3), ("T5.10.1", 3), ("T3.8.1a", 2)] {
            let req = CheckRequest {
                max_points,
                op_source: OpSource::Builtins,
                map_source: MapSource::Auto,
                config: Config::default(),
            };
            let spec = resolve(&specs, id)[0];
            let report = run_check(spec, &req, None).unwrap();
            let cex = report.first.expect("these statements fail on this grid");
            let inst = cex.recipe.build();
            assert!(
                spec.hypotheses_met(&inst, &req.config),
                "{id}: hypotheses must hold on the rebuilt witness instance"
            );
            let eval = Eval::new(req.config);
            assert!((spec.replay)(&inst, &eval, &cex.witness), "{id}");
        }
    }
}
