//! Command line front end. Every command writes deterministic output:
//! rerunning with the same inputs produces identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use petersen_cg::catalog::{build, weight_table, FamilyMember, WeightMap};
use petersen_cg::cycle::{Cycle, GammaElement};
use petersen_cg::diagram::extract_subdiagram;
use petersen_cg::error::{Error, Result};
use petersen_cg::exchange::{apply_script, parse_script};
use petersen_cg::graph::{Graph, VertexLabel};
use petersen_cg::spatial::SpatialEmbedding;
use petersen_cg::verify::{
    analyze, check_complexity_bound, check_identity, check_mod2,
    derive_and_check_weights, derive_weight_map, random_battery,
    relabel_to_catalog, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "petersen-cg",
    version,
    about = "Linking invariants and weight calculus for spatial embeddings of the Petersen family"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize the seven-member catalog, or one member.
    Catalog { member: Option<String> },

    /// Print a member's graph in edge-list text form.
    Export { member: String },

    /// Print, re-derive, or check a member's weight table.
    Weights {
        member: String,
        /// Print the hard-coded table (the default).
        #[arg(long)]
        table: bool,
        /// Print the table derived by pullback along the construction route.
        #[arg(long, conflicts_with = "table")]
        derive: bool,
        /// Compare derived tables against the hard-coded rules.
        #[arg(long, conflicts_with_all = ["table", "derive"])]
        check: bool,
    },

    /// Analyze an embedding file and check the linking theorems.
    Verify {
        file: PathBuf,
        /// Run every check (the default).
        #[arg(long)]
        all: bool,
        /// Check only that linking numbers sum to an odd number.
        #[arg(long, conflicts_with = "all")]
        mod2: bool,
        /// Check only the weighted-sum identity.
        #[arg(long, conflicts_with_all = ["all", "mod2"])]
        identity: bool,
        /// Check only the complexity lower bound.
        #[arg(long, conflicts_with_all = ["all", "mod2", "identity"])]
        corollary: bool,
        /// Rename an isomorphic graph onto catalog labels first.
        #[arg(long)]
        relabel: bool,
    },

    /// Check both theorems on random embeddings, seeds 1..=N.
    RandomTest {
        member: String,
        #[arg(long)]
        seeds: u64,
    },

    /// Apply a triangle-star exchange script to a graph.
    Exchange {
        /// Start from a catalog member.
        #[arg(long, conflicts_with = "graph")]
        member: Option<String>,
        /// Start from a graph text file.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Script file: `DY a b c -> x` and `YD x` lines.
        #[arg(long)]
        script: PathBuf,
    },

    /// Print Gauss codes of cycle diagrams in an embedding.
    Gauss {
        file: PathBuf,
        /// One cycle as space-separated vertex names; all cycles otherwise.
        #[arg(long)]
        cycle: Option<String>,
    },
}

struct Outcome {
    text: String,
    verification_failed: bool,
}

impl Outcome {
    fn pass(text: String) -> Self {
        Outcome { text, verification_failed: false }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("CG_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("CG_THREADS must be a positive integer, got {threads:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let write_result = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.text).map_err(Error::from),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = write_result {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.verification_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Catalog { member } => catalog_cmd(cli.format, member.as_deref()),
        Command::Export { member } => {
            let m = FamilyMember::parse(member)?;
            Ok(Outcome::pass(build(m).to_text()))
        }
        Command::Weights { member, table: _, derive, check } => {
            let m = FamilyMember::parse(member)?;
            if *check {
                weights_check_cmd(cli.format, m)
            } else if *derive {
                weights_table_cmd(cli.format, m, &derive_weight_map(m)?, "derived")
            } else {
                weights_table_cmd(cli.format, m, &weight_table(m), "table")
            }
        }
        Command::Verify { file, all: _, mod2, identity, corollary, relabel } => {
            let mut emb = SpatialEmbedding::load(file)?;
            if *relabel {
                emb = relabel_to_catalog(&emb)?;
            }
            let report = analyze(&emb)?;
            let checks: &[CheckKind] = if *mod2 {
                &[CheckKind::Parity]
            } else if *identity {
                &[CheckKind::Identity]
            } else if *corollary {
                &[CheckKind::Complexity]
            } else {
                &[CheckKind::Identity, CheckKind::Parity, CheckKind::Complexity]
            };
            verify_cmd(cli.format, &report, checks, *corollary)
        }
        Command::RandomTest { member, seeds } => {
            let m = FamilyMember::parse(member)?;
            if *seeds == 0 {
                return Err(Error::Precondition("--seeds must be at least 1".into()));
            }
            let summary = random_battery(m, *seeds)?;
            let failed = !summary.failing_seeds.is_empty();
            let text = match cli.format {
                Format::Json => to_json(&summary)?,
                Format::Pretty => {
                    let histogram = |d: &BTreeMap<i64, u64>| {
                        d.iter()
                            .map(|(v, n)| format!("{v} x{n}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    };
                    let mut s = format!(
                        "{}: {}/{} seeds pass\n",
                        summary.member, summary.passes, summary.seeds
                    );
                    let _ = writeln!(
                        s,
                        "sum lk^2 distribution: {}",
                        histogram(&summary.lk_sq_distribution)
                    );
                    let _ = writeln!(
                        s,
                        "sum w*a2 distribution: {}",
                        histogram(&summary.weighted_a2_distribution)
                    );
                    if failed {
                        let _ = writeln!(s, "failing seeds: {:?}", summary.failing_seeds);
                    }
                    s
                }
            };
            Ok(Outcome { text, verification_failed: failed })
        }
        Command::Exchange { member, graph, script } => {
            let start = match (member, graph) {
                (Some(m), None) => build(FamilyMember::parse(m)?),
                (None, Some(path)) => Graph::parse_text(&std::fs::read_to_string(path)?)?,
                _ => {
                    return Err(Error::Precondition(
                        "pass exactly one of --member or --graph".into(),
                    ))
                }
            };
            let steps = parse_script(&std::fs::read_to_string(script)?)?;
            let result = apply_script(&start, &steps)?;
            let text = match cli.format {
                Format::Pretty => result.to_text(),
                Format::Json => to_json(&GraphOut::from(&result))?,
            };
            Ok(Outcome::pass(text))
        }
        Command::Gauss { file, cycle } => gauss_cmd(cli.format, file, cycle.as_deref()),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct GraphOut {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl From<&Graph> for GraphOut {
    fn from(g: &Graph) -> Self {
        GraphOut {
            vertices: g.vertices().map(|v| v.to_string()).collect(),
            edges: g
                .edges()
                .map(|e| {
                    let (a, b) = e.ends();
                    (a.to_string(), b.to_string())
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct MemberSummary {
    member: FamilyMember,
    vertices: usize,
    edges: usize,
    cycles: usize,
    cycles_by_length: BTreeMap<usize, usize>,
    disjoint_pairs: usize,
}

fn summarize(m: FamilyMember) -> MemberSummary {
    let g = build(m);
    let cycles = g.cycles();
    let mut by_len: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &cycles {
        *by_len.entry(c.len()).or_insert(0) += 1;
    }
    MemberSummary {
        member: m,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        cycles: cycles.len(),
        cycles_by_length: by_len,
        disjoint_pairs: g.disjoint_pairs().len(),
    }
}

fn catalog_cmd(format: Format, member: Option<&str>) -> Result<Outcome> {
    let members: Vec<FamilyMember> = match member {
        Some(name) => vec![FamilyMember::parse(name)?],
        None => FamilyMember::ALL.to_vec(),
    };
    let summaries: Vec<MemberSummary> =
        members.into_iter().map(summarize).collect();
    let text = match format {
        Format::Json => to_json(&summaries)?,
        Format::Pretty => {
            let mut s = String::new();
            for m in &summaries {
                let lens: Vec<String> = m
                    .cycles_by_length
                    .iter()
                    .map(|(len, n)| format!("{n}x{len}"))
                    .collect();
                let _ = writeln!(
                    s,
                    "{:<4} {} vertices, {} edges, {} cycles ({}), {} disjoint pairs",
                    m.member.to_string(),
                    m.vertices,
                    m.edges,
                    m.cycles,
                    lens.join(" "),
                    m.disjoint_pairs
                );
            }
            s
        }
    };
    Ok(Outcome::pass(text))
}

#[derive(Serialize)]
struct WeightsOut {
    member: FamilyMember,
    kind: &'static str,
    weights: Vec<WeightLine>,
}

#[derive(Serialize)]
struct WeightLine {
    cycle: Cycle,
    weight: i64,
}

fn weights_table_cmd(
    format: Format,
    m: FamilyMember,
    map: &WeightMap,
    kind: &'static str,
) -> Result<Outcome> {
    let text = match format {
        Format::Json => to_json(&WeightsOut {
            member: m,
            kind,
            weights: map
                .iter()
                .map(|(c, w)| WeightLine { cycle: c.clone(), weight: w })
                .collect(),
        })?,
        Format::Pretty => {
            let mut s = format!("{m} weight {kind} ({} cycles)\n", map.len());
            for (c, w) in map.iter() {
                let _ = writeln!(s, "{w:>3}  {c}");
            }
            s
        }
    };
    Ok(Outcome::pass(text))
}

fn weights_check_cmd(format: Format, m: FamilyMember) -> Result<Outcome> {
    let checks: Vec<_> = derive_and_check_weights()?
        .into_iter()
        .filter(|c| c.member == m)
        .collect();
    let failed = checks.iter().any(|c| !c.pass);
    let text = match format {
        Format::Json => to_json(&checks)?,
        Format::Pretty => {
            let mut s = String::new();
            for c in &checks {
                let _ = writeln!(
                    s,
                    "{}: {} via {}",
                    c.member,
                    if c.pass { "PASS" } else { "FAIL" },
                    c.route
                );
                if let Some(m) = &c.first_mismatch {
                    let _ = writeln!(s, "  first mismatch: {m}");
                }
                for (label, n) in &c.rule_coverage {
                    let _ = writeln!(s, "  {label}: {n} cycles");
                }
            }
            s
        }
    };
    Ok(Outcome { text, verification_failed: failed })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CheckKind {
    Identity,
    Parity,
    Complexity,
}

fn verify_cmd(
    format: Format,
    report: &VerificationReport,
    checks: &[CheckKind],
    corollary_explicit: bool,
) -> Result<Outcome> {
    let mut results: BTreeMap<&'static str, String> = BTreeMap::new();
    let mut failed = false;
    for check in checks {
        match check {
            CheckKind::Identity => {
                let r = check_identity(report);
                results.insert(
                    "identity",
                    r.as_ref().map(|_| "pass".to_string()).unwrap_or_else(|e| {
                        failed = true;
                        format!("fail: {e}")
                    }),
                );
            }
            CheckKind::Parity => {
                let r = check_mod2(report);
                results.insert(
                    "parity",
                    r.as_ref().map(|_| "pass".to_string()).unwrap_or_else(|e| {
                        failed = true;
                        format!("fail: {e}")
                    }),
                );
            }
            CheckKind::Complexity => {
                if !report.cal && !corollary_explicit {
                    results.insert(
                        "complexity_bound",
                        "skipped: embedding is not complexly algebraically linked"
                            .to_string(),
                    );
                } else {
                    match check_complexity_bound(report) {
                        Ok(()) => {
                            results.insert("complexity_bound", "pass".to_string());
                        }
                        Err(e @ Error::Precondition(_)) => return Err(e),
                        Err(e) => {
                            failed = true;
                            results.insert("complexity_bound", format!("fail: {e}"));
                        }
                    }
                }
            }
        }
    }

    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct VerifyOut<'a> {
                report: &'a VerificationReport,
                checks: &'a BTreeMap<&'static str, String>,
            }
            to_json(&VerifyOut { report, checks: &results })?
        }
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(s, "member: {}", report.member);
            let nonzero_pairs: Vec<_> =
                report.pairs.iter().filter(|p| p.lk != 0).collect();
            let _ = writeln!(
                s,
                "pairs: {} ({} with nonzero linking)",
                report.pairs.len(),
                nonzero_pairs.len()
            );
            for p in &nonzero_pairs {
                let _ = writeln!(s, "  lk {:>3}  {}", p.lk, p.pair);
            }
            let nonzero_terms =
                report.cycles.iter().filter(|c| c.weight * c.a2 != 0).count();
            let _ = writeln!(
                s,
                "cycles: {} ({} with nonzero weighted coefficient)",
                report.cycles.len(),
                nonzero_terms
            );
            let _ = writeln!(s, "sum lk^2: {}", report.sum_lk_sq);
            let _ = writeln!(s, "sum w*a2: {}", report.sum_weighted_a2);
            let _ = writeln!(
                s,
                "complexly linked: {}",
                if report.cal { "yes" } else { "no" }
            );
            if report.cal {
                for w in &report.witnesses {
                    let _ = writeln!(
                        s,
                        "  witness {}  weight {:>2}  a2 {:>2}",
                        w.cycle, w.weight, w.a2
                    );
                }
            }
            for (name, outcome) in &results {
                let _ = writeln!(s, "check {name}: {outcome}");
            }
            s
        }
    };
    Ok(Outcome { text, verification_failed: failed })
}

fn gauss_cmd(format: Format, file: &Path, cycle: Option<&str>) -> Result<Outcome> {
    let emb = SpatialEmbedding::load(file)?;
    let crossings = emb.project()?;
    let cycles: Vec<Cycle> = match cycle {
        Some(names) => {
            let labels = names
                .split_whitespace()
                .map(VertexLabel::new)
                .collect::<Result<Vec<_>>>()?;
            let c = Cycle::new(labels)?;
            if !c.is_valid_in(emb.graph()) {
                return Err(Error::UnknownCycle(c.to_string()));
            }
            vec![c]
        }
        None => emb.graph().cycles(),
    };
    #[derive(Serialize)]
    struct GaussLine {
        cycle: Cycle,
        code: String,
    }
    let mut lines = Vec::new();
    for c in cycles {
        let d = extract_subdiagram(&emb, &crossings, &GammaElement::Cycle(c.clone()))?;
        lines.push(GaussLine { cycle: c, code: d.gauss_code() });
    }
    let text = match format {
        Format::Json => to_json(&lines)?,
        Format::Pretty => {
            let mut s = String::new();
            for l in &lines {
                let code = if l.code.is_empty() { "(no crossings)" } else { &l.code };
                let _ = writeln!(s, "{}  {}", l.cycle, code);
            }
            s
        }
    };
    Ok(Outcome::pass(text))
}
