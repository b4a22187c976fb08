//! Command-line front end: analyze poset files, build composed Boolean
//! realizers, verify realizer files, generate test posets, and evaluate
//! the counting lower bound.
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 input error.

mod format;

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bdim::blocks::{build_block_realizer, build_general_realizer, BlockInput};
use bdim::components::{build_component_realizer, min_orders_lower_bound, ComponentInput};
use bdim::decomp::{
    block_decomposition, block_tree, components, dot_block_tree, dot_cover_graph, dot_root_digraph,
    root_digraph,
};
use bdim::oracles::exact_dimension;
use bdim::realizer::{verify, BooleanRealizer, TruthFn, VerificationReport};
use bdim::{gen, Poset};

use format::{parse_poset, write_poset, RealizerFile};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Verification(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<bdim::Error> for CliError {
    fn from(e: bdim::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "bdim",
    version,
    about = "Boolean realizers of posets: build, verify, analyze"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Compose realizers of the connected components.
    Components,
    /// Compose realizers of the blocks of the cover graph.
    Blocks,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GenKind {
    /// The standard example S_n (dimension n).
    Standard,
    /// Random poset whose cover graph is a forest.
    Forest,
    /// Random height-2 poset on 2n points.
    Pn,
    /// Random connected poset glued from small pieces at cut vertices.
    BlockGlue,
}

#[derive(Subcommand)]
enum Cmd {
    /// Components, blocks, roots, Z-parts, exact dimension for small inputs.
    Analyze {
        poset: PathBuf,
        /// Dimension search budget (exact dimension reported for n <= 10).
        #[arg(long, default_value_t = 8)]
        dmax: usize,
        /// Directory for DOT exports of the cover graph, root digraph and
        /// block tree.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a composed Boolean realizer and verify it before writing.
    Build {
        poset: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Budget for the per-part exact-dimension search supplying inner
        /// realizers.
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// Write the realizer JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the JSON run report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Verify a realizer file against a poset file.
    Verify {
        poset: PathBuf,
        realizer: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a poset file.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Parameter n (elements, or pairs for pn/standard).
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Number of glued pieces for block-glue.
        #[arg(long, default_value_t = 5)]
        t: usize,
        /// Piece size cap for block-glue.
        #[arg(long, default_value_t = 8)]
        max_block: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least s with s*log2((2n)!) + 2^s >= n^2.
    Bound {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Serialize, Default)]
struct VerifySummary {
    pairs_checked: usize,
    mismatches: usize,
    collisions: usize,
    pass: bool,
}

impl VerifySummary {
    fn of(rep: &VerificationReport) -> Self {
        VerifySummary {
            pairs_checked: rep.pairs_checked,
            mismatches: rep.mismatches.len(),
            collisions: rep.collisions.len(),
            pass: rep.passed(),
        }
    }
}

/// Structured outcome of one command invocation.
#[derive(Serialize, Default)]
struct RunReport {
    command: String,
    n: usize,
    components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inner_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    realizer_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    size_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound_slack: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family_sizes: Option<Vec<(String, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerifySummary>,
    elapsed_ms: u128,
    pass: bool,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn emit_report(report: &RunReport, out: Option<&Path>) -> Result<(), CliError> {
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(report)
            .map_err(|e| CliError::Input(format!("report serialization: {e}")))?;
        write_file(path, &json)?;
    }
    Ok(())
}

fn family_sizes(truth: &TruthFn) -> Option<Vec<(String, usize)>> {
    match truth {
        TruthFn::Component(c) => Some(vec![
            ("F1".into(), 2),
            ("F2".into(), 4 * c.r),
            ("F3".into(), c.d),
        ]),
        TruthFn::Block(b) => Some(
            b.layout()
                .families
                .iter()
                .map(|f| (f.name.clone(), f.len))
                .collect(),
        ),
        _ => None,
    }
}

fn cmd_analyze(
    poset: &Path,
    dmax: usize,
    dot: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let start = Instant::now();
    let p = parse_poset(&read_file(poset)?)?;
    let comps = components(&p);
    println!("n = {}", p.n());
    println!("components = {}", comps.len());
    let mut report = RunReport {
        command: "analyze".into(),
        n: p.n(),
        components: comps.len(),
        pass: true,
        ..Default::default()
    };
    if comps.len() == 1 {
        let bd = block_decomposition(&p)?;
        println!("blocks = {}", bd.block_count());
        for i in 0..bd.block_count() {
            let root = bd.roots[i]
                .map(|r| r.to_string())
                .unwrap_or_else(|| "-".into());
            println!(
                "  block {i}: X = {:?}, root = {root}, Z = {:?}",
                bd.blocks[i], bd.zparts[i]
            );
        }
        report.blocks = Some(bd.block_count());
        if let Some(dir) = dot {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
            let rd = root_digraph(&p, &bd);
            let tree = block_tree(&bd);
            write_file(&dir.join("cover.dot"), &dot_cover_graph(&p))?;
            write_file(&dir.join("roots.dot"), &dot_root_digraph(&rd))?;
            write_file(&dir.join("blocktree.dot"), &dot_block_tree(&tree))?;
        }
    } else if let Some(dir) = dot {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
        write_file(&dir.join("cover.dot"), &dot_cover_graph(&p))?;
    }
    if p.n() <= 10 {
        match exact_dimension(&p, dmax) {
            Some(d) => {
                println!("exact dimension = {d}");
                report.exact_dimension = Some(d);
            }
            None => println!("exact dimension > {dmax}"),
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    emit_report(&report, out)?;
    println!("pass");
    Ok(())
}

fn cmd_build(
    poset: &Path,
    method: Method,
    dmax: usize,
    out: Option<&Path>,
    report_path: Option<&Path>,
) -> Result<(), CliError> {
    let start = Instant::now();
    let p = parse_poset(&read_file(poset)?)?;
    let comps = components(&p);
    let mut report = RunReport {
        command: "build".into(),
        n: p.n(),
        components: comps.len(),
        ..Default::default()
    };
    let (built, d): (BooleanRealizer, usize) = match method {
        Method::Components => {
            let input = ComponentInput::auto(p.clone(), dmax)?;
            let d = input.d;
            report.inner_size = Some(d);
            report.size_bound = Some(2 + d + 4 * (1 << d));
            (build_component_realizer(&input)?, d)
        }
        Method::Blocks => {
            let input = BlockInput::auto(p.clone(), dmax)?;
            let d = input.d;
            report.blocks = Some(input.decomp.block_count());
            report.inner_size = Some(d);
            if comps.len() == 1 {
                report.size_bound = Some(17 + d + 18 * (1 << d));
                (build_block_realizer(&input)?, d)
            } else {
                report.size_bound = Some(19 + d + 18 * (1 << d));
                (build_general_realizer(&input)?, d)
            }
        }
    };
    let _ = d;
    report.realizer_size = Some(built.size());
    report.bound_slack = report.size_bound.map(|b| b - built.size());
    report.family_sizes = family_sizes(&built.truth);

    let rep = verify(&p, &built);
    report.verification = Some(VerifySummary::of(&rep));
    report.pass = rep.passed();
    report.elapsed_ms = start.elapsed().as_millis();
    println!(
        "orders = {} (bound {}), pairs checked = {}",
        built.size(),
        report.size_bound.unwrap(),
        rep.pairs_checked
    );
    emit_report(&report, report_path)?;
    if !rep.passed() {
        // Never write an unverified realizer.
        return Err(CliError::Verification(format!(
            "{} mismatches, {} collisions",
            rep.mismatches.len(),
            rep.collisions.len()
        )));
    }
    if let Some(path) = out {
        let file = RealizerFile::from_realizer(p.n(), &built);
        let json = serde_json::to_string_pretty(&file)
            .map_err(|e| CliError::Input(format!("realizer serialization: {e}")))?;
        write_file(path, &json)?;
        println!("wrote {}", path.display());
    }
    println!("pass");
    Ok(())
}

fn cmd_verify(poset: &Path, realizer: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let start = Instant::now();
    let p = parse_poset(&read_file(poset)?)?;
    let file: RealizerFile = serde_json::from_str(&read_file(realizer)?)
        .map_err(|e| CliError::Input(format!("realizer JSON: {e}")))?;
    if file.n != p.n() {
        return Err(CliError::Input(format!(
            "realizer is for n = {}, poset has n = {}",
            file.n,
            p.n()
        )));
    }
    let r = file.into_realizer()?;
    let rep = verify(&p, &r);
    let mut report = RunReport {
        command: "verify".into(),
        n: p.n(),
        components: components(&p).len(),
        realizer_size: Some(r.size()),
        verification: Some(VerifySummary::of(&rep)),
        pass: rep.passed(),
        ..Default::default()
    };
    report.elapsed_ms = start.elapsed().as_millis();
    emit_report(&report, out)?;
    for m in rep.mismatches.iter().take(5) {
        println!(
            "mismatch: pair ({}, {}) is {} in the poset, answered {}",
            m.x, m.y, m.in_poset, m.answered
        );
    }
    for c in rep.collisions.iter().take(5) {
        println!(
            "collision: pairs {:?} and {:?} share a bit string but disagree",
            c.first, c.second
        );
    }
    if !rep.passed() {
        return Err(CliError::Verification(format!(
            "{} mismatches, {} collisions over {} pairs",
            rep.mismatches.len(),
            rep.collisions.len(),
            rep.pairs_checked
        )));
    }
    println!("pass ({} pairs)", rep.pairs_checked);
    Ok(())
}

fn cmd_gen(
    kind: GenKind,
    n: usize,
    t: usize,
    max_block: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mut rng = gen::rng(seed);
    let (p, desc) = match kind {
        GenKind::Standard => {
            if n < 2 {
                return Err(CliError::Input("standard example needs --n >= 2".into()));
            }
            (
                Poset::standard_example(n),
                format!("standard example S_{n}"),
            )
        }
        GenKind::Forest => (
            gen::random_forest_poset(n.max(1), 0.12, &mut rng),
            format!("random forest poset, n = {n}, seed = {seed}"),
        ),
        GenKind::Pn => (
            gen::sample_pn(n.max(1), &mut rng),
            format!("random height-2 poset, n = {n}, seed = {seed}"),
        ),
        GenKind::BlockGlue => {
            if max_block < 2 {
                return Err(CliError::Input("--max-block must be at least 2".into()));
            }
            (
                gen::random_block_glued(t.max(1), max_block, &mut rng),
                format!(
                    "random block-glued poset, t = {t}, max piece = {max_block}, seed = {seed}"
                ),
            )
        }
    };
    let text = write_poset(&p, &desc);
    match out {
        Some(path) => {
            write_file(path, &text)?;
            println!("wrote {} (n = {})", path.display(), p.n());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_bound(n: u64) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Input("--n must be positive".into()));
    }
    println!("{}", min_orders_lower_bound(n));
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Analyze {
            poset,
            dmax,
            dot,
            out,
        } => cmd_analyze(&poset, dmax, dot.as_deref(), out.as_deref()),
        Cmd::Build {
            poset,
            method,
            dmax,
            out,
            report,
        } => cmd_build(&poset, method, dmax, out.as_deref(), report.as_deref()),
        Cmd::Verify {
            poset,
            realizer,
            out,
        } => cmd_verify(&poset, &realizer, out.as_deref()),
        Cmd::Gen {
            kind,
            n,
            t,
            max_block,
            seed,
            out,
        } => cmd_gen(kind, n, t, max_block, seed, out.as_deref()),
        Cmd::Bound { n } => cmd_bound(n),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("{e}");
            let code = match e {
                CliError::Verification(_) => 1,
                CliError::Input(_) => 2,
            };
            std::process::exit(code);
        }
    }
}
