//! Command-line front end: `oracle`, `compile`, `ajl`, `exact`, `verify`.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::ajl_quantum::{run_ajl, run_exact, write_ajl_csv, AnyonModel, GateLibrary};
use crate::ajl_representation::{classical_ajl, AJLParams, ThetaFamily};
use crate::anyon_models::{
    fib_single_qubit_generators, fib_two_qubit_generators, ising_generators_n3, FibFRData,
};
use crate::braid_compiler::controlled::{block_error, controlled_target, COMPUTATIONAL_DIM};
use crate::braid_compiler::{
    compile, controlled_letters, leakage, named_target, published, read_matrix_file, two_qubit_matrix,
    verify_known_weaves, BraidCache, Mode, SearchConfig,
};
use crate::error::{Error, Result};
use crate::kauffman_oracle::{bracket, jones};
use crate::knot_theory::{named_knot, verify_braid_relations, ClosedKnot, Closure, TEST_KNOTS};
use crate::linalg::{leading_block, unitarity_error};

/// Directory holding `braids.tsv` when `--cache` is not given.
pub const CACHE_DIR_ENV: &str = "TQC_CACHE_DIR";
const DEFAULT_CACHE_DIR: &str = ".tqc-cache";

/// Weave length and diagonal-pool radius of the gate library used by `ajl`.
pub const LIBRARY_DEPTH: usize = 22;
pub const LIBRARY_POOL_RADIUS: f64 = 0.0025;

#[derive(Debug, Parser)]
#[command(name = "tqc", version, about = "Fibonacci anyon braiding, braid compilation and Jones polynomial evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bracket and Jones polynomials, with a table of values at t = e^{2πi/k}.
    Oracle(OracleArgs),
    /// Search for a braid or weave approximating a single-qubit gate.
    Compile(CompileArgs),
    /// Quantum AJL estimates of the Jones polynomial over a range of k.
    Ajl(AjlArgs),
    /// Exact magnitude at k=5 (Fibonacci) or k=4 (Ising) from a 4-strand plat.
    Exact(ExactArgs),
    /// Run the identity, consistency and published-weave checks.
    Verify,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["knot", "knot_file"])))]
pub struct KnotSource {
    /// Built-in knot: unknot, hopf+, hopf-, trefoilL, trefoilR, fig8.
    #[arg(long)]
    pub knot: Option<String>,
    /// Braidword file: header `n=<strands> closure=<trace|plat>`, then letters.
    #[arg(long)]
    pub knot_file: Option<PathBuf>,
    /// Closure for a built-in knot (a file carries its own).
    #[arg(long, default_value = "trace")]
    pub closure: Closure,
}

impl KnotSource {
    pub fn load(&self) -> Result<ClosedKnot> {
        match (&self.knot, &self.knot_file) {
            (Some(name), None) => named_knot(name, self.closure),
            (None, Some(path)) => std::fs::read_to_string(path)?.parse(),
            _ => Err(Error::Parse("give exactly one of --knot and --knot-file".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: KnotSource,
    /// Levels for the value table, e.g. `3:13`, `5` or `4,7`.
    #[arg(long, default_value = "3:13")]
    pub k: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// hadamard, phase, not, inot, identity, or a file of four `Re Im` lines.
    #[arg(long)]
    pub target: String,
    #[arg(long, default_value = "weave")]
    pub mode: Mode,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_length: u64,
    /// Cache file; defaults to `$TQC_CACHE_DIR/braids.tsv`.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Reuse a cached word for this target if its distance is at most this.
    #[arg(long)]
    pub accept: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AjlArgs {
    #[command(flatten)]
    pub source: KnotSource,
    #[arg(long, default_value = "4:13")]
    pub k: String,
    /// Hadamard-test shots per component.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub iters: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub source: KnotSource,
    #[arg(long, default_value = "fib")]
    pub model: AnyonModel,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub iters: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `a:b` (inclusive), a single value, or a comma list; every `k ≥ 3`.
pub fn parse_k_range(s: &str) -> Result<Vec<u32>> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("bad k '{t}': {e}")));
    let ks: Vec<u32> = if let Some((a, b)) = s.split_once(':') {
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_>>()?
    };
    if ks.is_empty() || ks.iter().any(|&k| k < 3) {
        return Err(Error::Parse(format!("k range '{s}' must be non-empty with every k ≥ 3")));
    }
    Ok(ks)
}

pub fn default_cache_path() -> PathBuf {
    let dir = std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
    dir.join("braids.tsv")
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout()),
    })
}

pub const ORACLE_CSV_HEADER: [&str; 5] = ["k", "Re_jones", "Im_jones", "Re_path", "Im_path"];

pub fn cmd_oracle(args: &OracleArgs) -> Result<()> {
    let knot = args.source.load()?;
    let ks = parse_k_range(&args.k)?;
    let j = jones(&knot)?;
    let mut summary = String::new();
    summary.push_str(&format!("bracket: {}\n", bracket(&knot)?));
    summary.push_str(&format!("jones:   {}\n", j.to_t_string()));
    let mut w = csv::Writer::from_writer(output(&args.out)?);
    w.write_record(ORACLE_CSV_HEADER)?;
    for k in ks {
        let v = j.eval(k);
        let p = classical_ajl(&knot, k)?;
        w.write_record([k.to_string(), format!("{:.17e}", v.re), format!("{:.17e}", v.im), format!("{:.17e}", p.re), format!("{:.17e}", p.im)])?;
    }
    w.flush()?;
    drop(w);
    if args.out.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(())
}

pub fn cmd_compile(args: &CompileArgs) -> Result<()> {
    let (name, target) = match named_target(&args.target) {
        Some(m) => (args.target.clone(), m),
        None => {
            let path = Path::new(&args.target);
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            (stem, read_matrix_file(path)?)
        }
    };
    let cfg = SearchConfig::new(args.mode, args.max_length as usize);
    let cache = BraidCache::new(args.cache.clone().unwrap_or_else(default_cache_path));
    let tags = format!("mode={},max_length={}", args.mode, args.max_length);
    let w = compile(&name, &target, &cfg, Some(&cache), &tags, args.accept.unwrap_or(-1.0))?;
    let letters: Vec<String> = w.word.letters().iter().map(i32::to_string).collect();
    println!("target:   {}", w.target_name);
    println!("mode:     {}", w.mode);
    println!("word:     {}", letters.join(" "));
    println!("braids:   {}", w.elementary().len());
    println!("distance: {:.6e}", w.distance);
    println!("phase:    {:.12} {:+.12}i", w.phase.re, w.phase.im);
    Ok(())
}

pub fn load_library(cache: Option<&Path>) -> Result<GateLibrary> {
    let path = cache.map(Path::to_path_buf).unwrap_or_else(default_cache_path);
    GateLibrary::load_or_build(&BraidCache::new(path), LIBRARY_DEPTH, LIBRARY_POOL_RADIUS)
}

pub fn cmd_ajl(args: &AjlArgs) -> Result<()> {
    let knot = args.source.load()?;
    let ks = parse_k_range(&args.k)?;
    let lib = load_library(args.cache.as_deref())?;
    let rows = run_ajl(&knot, &ks, args.iters, args.seed, &lib)?;
    write_ajl_csv(output(&args.out)?, &rows)?;
    if args.out.is_some() {
        let inside = rows.iter().filter(|r| r.inside_ci()).count();
        let worst = rows.iter().map(|r| (r.limit - r.exact).norm()).fold(0.0, f64::max);
        println!(
            "{} points, {inside} inside the 95% interval, largest limit deviation {worst:.4}, {} elementary braids",
            rows.len(),
            rows.iter().map(|r| r.ops).sum::<u64>()
        );
    }
    Ok(())
}

pub const EXACT_CSV_HEADER: [&str; 10] =
    ["model", "k", "iters", "zeros", "p_hat", "magnitude", "lower", "upper", "limit", "exact"];

pub fn cmd_exact(args: &ExactArgs) -> Result<()> {
    let knot = args.source.load()?;
    let r = run_exact(&knot, args.model, args.iters, args.seed)?;
    let exact = classical_ajl(&knot, args.model.k())?.norm();
    let model = match args.model {
        AnyonModel::Fibonacci => "fib",
        AnyonModel::Ising => "ising",
    };
    let mut w = csv::Writer::from_writer(output(&args.out)?);
    w.write_record(EXACT_CSV_HEADER)?;
    w.write_record([
        model.to_string(),
        args.model.k().to_string(),
        r.iterations.to_string(),
        r.zeros.to_string(),
        format!("{:.17e}", r.interval.p_hat),
        format!("{:.17e}", r.magnitude),
        format!("{:.17e}", r.lower),
        format!("{:.17e}", r.upper),
        format!("{:.17e}", r.limit),
        format!("{:.17e}", exact),
    ])?;
    w.flush()?;
    if args.out.is_some() {
        println!("|V| = {:.4} ({:.4}, {:.4}), exact {exact:.4}", r.magnitude, r.lower, r.upper);
    }
    Ok(())
}

/// One line of the `verify` report.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: String) -> Check {
    Check { name: name.to_string(), pass, detail }
}

/// Identity, consistency and published-weave checks.
pub fn verify_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let fr = FibFRData::default();
    out.push(check("pentagon", fr.pentagon_residual() < 1e-12, format!("{:.1e}", fr.pentagon_residual())));
    out.push(check("hexagon", fr.hexagon_residual() < 1e-12, format!("{:.1e}", fr.hexagon_residual())));

    let families: Vec<(String, Vec<crate::linalg::CMat>)> = vec![
        ("fibonacci 1-qubit".into(), fib_single_qubit_generators().to_vec()),
        ("fibonacci 2-qubit".into(), fib_two_qubit_generators()),
        ("ising n=3".into(), ising_generators_n3().to_vec()),
    ];
    let mut thetas = Vec::new();
    for k in 3..=13 {
        for n in 2..=4 {
            thetas.push((format!("theta n={n} k={k}"), ThetaFamily::new(AJLParams::new(n, k)?).fwd));
        }
    }
    let mut worst_u: f64 = 0.0;
    let mut relations = true;
    for (_, gens) in families.iter().chain(&thetas) {
        worst_u = gens.iter().map(unitarity_error).fold(worst_u, f64::max);
        relations &= verify_braid_relations(gens, 1e-12)?;
    }
    out.push(check("unitarity", worst_u < 1e-12, format!("{worst_u:.1e}")));
    out.push(check("braid relations", relations, format!("{} families", families.len() + thetas.len())));

    let mut worst_ajl: f64 = 0.0;
    for name in TEST_KNOTS {
        for c in [Closure::Trace, Closure::Plat] {
            let knot = named_knot(name, c)?;
            let j = jones(&knot)?;
            for k in 3..=13 {
                worst_ajl = worst_ajl.max((classical_ajl(&knot, k)? - j.eval(k)).norm());
            }
        }
    }
    out.push(check("path model = oracle", worst_ajl < 1e-10, format!("{worst_ajl:.1e}")));

    for kw in verify_known_weaves() {
        out.push(check(
            &format!("weave {}", kw.name),
            kw.agrees,
            format!("{:.6} (stated {})", kw.distance, kw.stated),
        ));
    }
    let m = two_qubit_matrix(&controlled_letters(&published::not(), &[])?);
    let lk = leakage(&m, COMPUTATIONAL_DIM);
    let err = block_error(&leading_block(&m, COMPUTATIONAL_DIM), &controlled_target(&named_target("inot").unwrap()));
    out.push(check(
        "controlled-iNOT",
        (0.00035..=0.0014).contains(&err) && (3e-6..=1.2e-5).contains(&lk),
        format!("error {err:.6}, leakage {lk:.2e}"),
    ));
    Ok(out)
}

pub fn cmd_verify() -> Result<bool> {
    let checks = verify_suite()?;
    for c in &checks {
        println!("{} {:<26} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Ok(checks.iter().all(|c| c.pass))
}

/// Runs a parsed command; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Oracle(a) => cmd_oracle(a).map(|_| true),
        Command::Compile(a) => cmd_compile(a).map(|_| true),
        Command::Ajl(a) => cmd_ajl(a).map(|_| true),
        Command::Exact(a) => cmd_exact(a).map(|_| true),
        Command::Verify => cmd_verify(),
    }
}
