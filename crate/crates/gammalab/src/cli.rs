//! Command-line interface.
//!
//! Exit codes: 0 success / all claims hold, 1 a counterexample was found,
//! 2 input or usage error, 3 cap or budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::gamma::ClosedDef;
use crate::io::{self, Document};
use crate::maps::PointMap;
use crate::ops::OpenDir;
use crate::semi::Analyzed;
use crate::space::{enumerate_topologies, set_text, Mask, SpaceError, MAX_POINTS};
use crate::theorems::{
    registry, resolve, run_check, run_search, CheckRequest, Config, DropSet, LabError, MapSource,
    OpSource, SearchOutcome, TheoremSpec,
};

const EXIT_OK: u8 = 0;
const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gammalab",
    version,
    about = "Finite-topology laboratory for expansive operations on open families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ClosedDefArg {
    Complement,
    Closurepoint,
}

impl From<ClosedDefArg> for ClosedDef {
    fn from(v: ClosedDefArg) -> ClosedDef {
        match v {
            ClosedDefArg::Complement => ClosedDef::Complement,
            ClosedDefArg::Closurepoint => ClosedDef::ClosurePoint,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OpenDirArg {
    Paper,
    Standard,
}

impl From<OpenDirArg> for OpenDir {
    fn from(v: OpenDirArg) -> OpenDir {
        match v {
            OpenDirArg::Paper => OpenDir::Paper,
            OpenDirArg::Standard => OpenDir::Standard,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum WhatArg {
    Intg,
    Clg,
    Ext,
    Bd,
    Dgamma,
    Scl,
    Sint,
    Sd,
}

#[derive(Clone, Copy, Debug)]
struct OpSourceArg(OpSource);

impl FromStr for OpSourceArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "builtins" {
            return Ok(OpSourceArg(OpSource::Builtins));
        }
        if s == "exhaustive" {
            return Ok(OpSourceArg(OpSource::Exhaustive));
        }
        if let Some(rest) = s.strip_prefix("random:") {
            let mut it = rest.split(':');
            let count = it
                .next()
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| format!("bad op source {s:?}"))?;
            let seed = it
                .next()
                .and_then(|v| v.parse::<u64>().ok())
                .ok_or_else(|| format!("bad op source {s:?} (want random:K:SEED)"))?;
            if it.next().is_some() {
                return Err(format!("bad op source {s:?}"));
            }
            return Ok(OpSourceArg(OpSource::Random { count, seed }));
        }
        Err(format!("bad op source {s:?} (want builtins|random:K:SEED|exhaustive)"))
    }
}

#[derive(Clone, Copy, Debug)]
struct MapSourceArg(MapSource);

impl FromStr for MapSourceArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(MapSourceArg(MapSource::Auto));
        }
        if s == "all" {
            return Ok(MapSourceArg(MapSource::All));
        }
        if let Some(rest) = s.strip_prefix("sample:") {
            let mut it = rest.split(':');
            let count = it
                .next()
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| format!("bad map source {s:?}"))?;
            let seed = it.next().map(|v| v.parse::<u64>()).transpose().map_err(|_| {
                format!("bad map source {s:?} (want sample:K[:SEED])")
            })?;
            return Ok(MapSourceArg(MapSource::Sample { count, seed: seed.unwrap_or(0) }));
        }
        Err(format!("bad map source {s:?} (want auto|all|sample:K[:SEED])"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a document of spaces, operations, and maps.
    Validate { file: PathBuf },
    /// Stream every labelled topology on the given point count.
    Enumerate {
        #[arg(long)]
        points: usize,
        /// One representative per homeomorphism class.
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        count_only: bool,
        /// Allow the 6-point enumeration (millions of topologies).
        #[arg(long)]
        big: bool,
    },
    /// Print the derived families of one (space, operation) pair.
    Families {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        space: String,
        #[arg(long)]
        op: String,
    },
    /// Evaluate one derived-set operator on one subset.
    Compute {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        space: String,
        #[arg(long)]
        op: String,
        /// Comma-separated points, e.g. "0,2"; empty for the empty set.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        set: String,
        #[arg(long)]
        what: WhatArg,
        #[arg(long, value_enum, default_value_t = ClosedDefArg::Complement)]
        closed_def: ClosedDefArg,
    },
    /// Print the classification flags of one operation.
    ClassifyOp {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        space: String,
        #[arg(long)]
        op: String,
    },
    /// Run all map predicates on one declared map.
    ClassifyMap {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(long, value_enum, default_value_t = ClosedDefArg::Complement)]
        closed_def: ClosedDefArg,
    },
    /// Sweep a statement (or `all`) over the instance grid.
    Check {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        max_points: usize,
        #[arg(long)]
        ops: OpSourceArg,
        #[arg(long, default_value = "auto")]
        maps: MapSourceArg,
        #[arg(long, value_enum, default_value_t = ClosedDefArg::Complement)]
        closed_def: ClosedDefArg,
        #[arg(long, value_enum, default_value_t = OpenDirArg::Paper)]
        open_dir: OpenDirArg,
        /// Emit one structured record per instance verdict.
        #[arg(long)]
        machine: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Hunt for a counterexample with chosen hypotheses not enforced.
    Search {
        #[arg(long)]
        theorem: String,
        /// Comma-separated hypothesis names to drop.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        drop: Vec<String>,
        #[arg(long)]
        max_points: usize,
        /// Maximum number of instances to visit.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value = "random:32:1")]
        ops: OpSourceArg,
        #[arg(long, default_value = "auto")]
        maps: MapSourceArg,
        #[arg(long, value_enum, default_value_t = ClosedDefArg::Complement)]
        closed_def: ClosedDefArg,
        #[arg(long, value_enum, default_value_t = OpenDirArg::Paper)]
        open_dir: OpenDirArg,
        #[arg(long)]
        threads: Option<usize>,
    },
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Enumerate { points, up_to_iso, count_only, big } => {
            cmd_enumerate(points, up_to_iso, count_only, big)
        }
        Command::Families { file, space, op } => cmd_families(&file, &space, &op),
        Command::Compute { file, space, op, set, what, closed_def } => {
            cmd_compute(&file, &space, &op, &set, what, closed_def.into())
        }
        Command::ClassifyOp { file, space, op } => cmd_classify_op(&file, &space, &op),
        Command::ClassifyMap { file, map, closed_def } => {
            cmd_classify_map(&file, &map, closed_def.into())
        }
        Command::Check { theorem, max_points, ops, maps, closed_def, open_dir, machine, threads } => {
            with_threads(threads, || {
                cmd_check(
                    &theorem,
                    CheckRequest {
                        max_points,
                        op_source: ops.0,
                        map_source: maps.0,
                        config: Config {
                            closed_def: closed_def.into(),
                            open_dir: open_dir.into(),
                            policy: Default::default(),
                        },
                    },
                    machine,
                )
            })
        }
        Command::Search {
            theorem,
            drop,
            max_points,
            budget,
            ops,
            maps,
            closed_def,
            open_dir,
            threads,
        } => with_threads(threads, || {
            cmd_search(
                &theorem,
                &drop,
                CheckRequest {
                    max_points,
                    op_source: ops.0,
                    map_source: maps.0,
                    config: Config {
                        closed_def: closed_def.into(),
                        open_dir: open_dir.into(),
                        policy: Default::default(),
                    },
                },
                budget,
            )
        }),
    };
    ExitCode::from(code)
}

fn with_threads(threads: Option<usize>, body: impl FnOnce() -> u8 + Send) -> u8 {
    match threads {
        None => body(),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(body),
            Err(e) => {
                eprintln!("error: cannot build thread pool: {e}");
                EXIT_INPUT
            }
        },
    }
}

fn load_document(path: &PathBuf) -> Result<Document, u8> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(EXIT_INPUT);
        }
    };
    match io::parse_document(&text) {
        Ok(doc) => Ok(doc),
        Err(e) => {
            eprintln!("error: {e}");
            Err(EXIT_INPUT)
        }
    }
}

fn pair_from(doc: &Document, space: &str, op: &str) -> Result<Arc<Analyzed>, u8> {
    let Some(_s) = doc.space(space) else {
        eprintln!("error: unknown space {space:?}");
        return Err(EXIT_INPUT);
    };
    let Some(o) = doc.operation(op) else {
        eprintln!("error: unknown operation {op:?}");
        return Err(EXIT_INPUT);
    };
    if o.space_name != space {
        eprintln!("error: operation {op:?} is declared on space {:?}, not {space:?}", o.space_name);
        return Err(EXIT_INPUT);
    }
    Ok(Analyzed::new((*o.op).clone()))
}

fn cmd_validate(file: &PathBuf) -> u8 {
    match load_document(file) {
        Ok(doc) => {
            println!(
                "ok: {} spaces, {} operations, {} maps",
                doc.spaces.len(),
                doc.operations.len(),
                doc.maps.len()
            );
            EXIT_OK
        }
        Err(code) => code,
    }
}

fn cmd_enumerate(points: usize, up_to_iso: bool, count_only: bool, big: bool) -> u8 {
    if points > MAX_POINTS || (points == MAX_POINTS && !big) {
        eprintln!(
            "error: {}",
            SpaceError::CapExceeded { what: "enumeration point count", limit: MAX_POINTS }
        );
        if points == MAX_POINTS {
            eprintln!("hint: pass --big to enumerate on {MAX_POINTS} points");
        }
        return EXIT_CAP;
    }
    let iter = match enumerate_topologies(points, up_to_iso) {
        Ok(it) => it,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CAP;
        }
    };
    if count_only {
        println!("{}", iter.count());
    } else {
        for (i, space) in iter.enumerate() {
            print!("{}", io::render_space_block(&format!("T{i}"), points, space.opens()));
        }
    }
    EXIT_OK
}

fn cmd_families(file: &PathBuf, space: &str, op: &str) -> u8 {
    let doc = match load_document(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let pair = match pair_from(&doc, space, op) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let an = &pair.analysis;
    let g = an.gamma();
    println!("gamma-open: {}", g.gamma_open_family());
    for def in ClosedDef::BOTH {
        println!("gamma-closed[{}]: {}", def.name(), g.gamma_closed_family(def));
    }
    println!("gamma-closed-defs-agree: {}", g.closed_defs_agree());
    println!("semi-open: {}", an.semi_open_family());
    for def in ClosedDef::BOTH {
        println!("semi-closed[{}]: {}", def.name(), an.semi_closed_family(def));
        println!(
            "semi-closed-complement-dual[{}]: {}",
            def.name(),
            an.complement_duality(def)
        );
    }
    EXIT_OK
}

fn cmd_compute(
    file: &PathBuf,
    space: &str,
    op: &str,
    set: &str,
    what: WhatArg,
    def: ClosedDef,
) -> u8 {
    let doc = match load_document(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let pair = match pair_from(&doc, space, op) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let mask = match io::parse_point_set(set) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if mask & !pair.space.universe() != 0 {
        eprintln!("error: set {} leaves the space", set_text(mask));
        return EXIT_INPUT;
    }
    let an = &pair.analysis;
    let g = an.gamma();
    let result: Mask = match what {
        WhatArg::Intg => g.int_gamma(mask),
        WhatArg::Clg => g.cl_gamma(mask),
        WhatArg::Ext => g.ext_gamma(mask),
        WhatArg::Bd => g.bd_gamma(mask),
        WhatArg::Dgamma => g.gamma_derived(mask),
        WhatArg::Scl => an.scl(mask, def),
        WhatArg::Sint => an.sint(mask),
        WhatArg::Sd => an.sd(mask),
    };
    println!("{}", set_text(result));
    EXIT_OK
}

fn cmd_classify_op(file: &PathBuf, space: &str, op: &str) -> u8 {
    let doc = match load_document(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let pair = match pair_from(&doc, space, op) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let p = pair.analysis.gamma().profile();
    println!("operation {op} on {space}:");
    println!("  monotone: {}", p.monotone);
    println!("  regular: {}", p.regular);
    println!("  open[paper]: {}", p.open_paper);
    println!("  open[standard]: {}", p.open_standard);
    println!("  closed-defs-agree: {}", p.closed_defs_agree);
    EXIT_OK
}

fn cmd_classify_map(file: &PathBuf, map: &str, def: ClosedDef) -> u8 {
    let doc = match load_document(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let Some(m) = doc.map(map) else {
        eprintln!("error: unknown map {map:?}");
        return EXIT_INPUT;
    };
    let dom = match pair_from(&doc, &m.dom, &m.gamma) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let cod = match pair_from(&doc, &m.cod, &m.beta) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let pm = match PointMap::new(dom, cod, m.digits.clone()) {
        Ok(pm) => pm,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    println!("map {} : {} -> {}", m.name, m.dom, m.cod);
    println!(
        "  injective: {}  surjective: {}  bijective: {}",
        pm.is_injective(),
        pm.is_surjective(),
        pm.is_bijective()
    );
    let line = |label: &str, w: Option<crate::maps::MapWitness>| match w {
        None => println!("  {label}: true"),
        Some(w) => println!("  {label}: false  witness: {w}"),
    };
    line("gamma-semi-continuous", pm.semi_continuity_witness());
    line("gamma-semi-open", pm.semi_open_witness());
    line(
        &format!("gamma-semi-closed[{}]", def.name()),
        pm.semi_closed_witness(def),
    );
    line("gb-continuous[pointwise]", pm.continuity_pointwise_witness());
    line("gb-continuous[preimage]", pm.continuity_preimage_witness());
    line("gb-open", pm.open_map_witness());
    line(&format!("gb-closed[{}]", def.name()), pm.closed_map_witness(def));
    EXIT_OK
}

fn find_specs<'a>(all: &'a [TheoremSpec], query: &str) -> Result<Vec<&'a TheoremSpec>, u8> {
    let specs = resolve(all, query);
    if specs.is_empty() {
        eprintln!("error: no statement matches {query:?}; known ids:");
        let ids: Vec<&str> = all.iter().map(|s| s.id).collect();
        eprintln!("  {}", ids.join(" "));
        return Err(EXIT_INPUT);
    }
    Ok(specs)
}

fn lab_error_code(e: &LabError) -> u8 {
    eprintln!("error: {e}");
    EXIT_CAP
}

fn cmd_check(theorem: &str, req: CheckRequest, machine: bool) -> u8 {
    let all = registry();
    let specs = match find_specs(&all, theorem) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let mut any_cex = false;
    for spec in specs {
        let report = if machine {
            let mut emit = |v: &crate::theorems::Verdict| println!("{}", v.machine_line());
            match run_check(spec, &req, Some(&mut emit)) {
                Ok(r) => r,
                Err(e) => return lab_error_code(&e),
            }
        } else {
            match run_check(spec, &req, None) {
                Ok(r) => r,
                Err(e) => return lab_error_code(&e),
            }
        };
        if machine {
            println!("{}", report.machine_summary());
        } else {
            print!("{}", report.render_text());
        }
        any_cex |= report.tally.counterexamples > 0;
    }
    if any_cex {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    }
}

fn cmd_search(theorem: &str, drop: &[String], req: CheckRequest, budget: Option<u64>) -> u8 {
    let all = registry();
    let specs = match find_specs(&all, theorem) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let mut found = false;
    let mut budget_hit = false;
    for spec in specs {
        let drops = match DropSet::parse(drop, spec.hypotheses) {
            Ok(d) => d,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
        };
        let report = match run_search(spec, &drops, &req, budget) {
            Ok(r) => r,
            Err(e) => return lab_error_code(&e),
        };
        print!("{}", report.render_text());
        match report.outcome {
            SearchOutcome::Counterexample(_) => found = true,
            SearchOutcome::BudgetExhausted { .. } => budget_hit = true,
            SearchOutcome::Exhausted { .. } => {}
        }
    }
    if found {
        EXIT_COUNTEREXAMPLE
    } else if budget_hit {
        EXIT_CAP
    } else {
        EXIT_OK
    }
}
