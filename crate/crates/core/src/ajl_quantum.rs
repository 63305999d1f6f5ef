//! The AJL algorithm on the simulated register, and the exact magnitude
//! algorithm on a single four-anyon qubit.
//!
//! Each AJL generator block is compiled once into a weave. A knot's braid
//! becomes the concatenation of those weaves, woven into a controlled gate
//! whose diagonal elements are read out with Hadamard tests.

use std::collections::{BTreeMap, HashMap};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::function::erf::erf_inv;

use crate::ajl_representation::{classical_ajl, enumerate_paths, theta_generator, AJLParams};
use crate::anyon_models::{ising_generators_n4, PHI};
use crate::braid_compiler::{
    controlled_letters, named_target, published, search_with_pool, BraidCache, CacheRecord, CompiledWeave,
    DiagonalPool, Mode, SearchConfig,
};
use crate::error::{Error, Result};
use crate::kauffman_oracle::writhe_factor;
use crate::knot_theory::{writhe, BraidWord, ClosedKnot, Closure};
use crate::linalg::{c, diag, expi, restrict, CMat, Complex64};
use crate::tqc_simulator::{Outcome, QCState};

/// Levels covered by the gate library.
pub const K_RANGE: std::ops::RangeInclusive<u32> = 4..=13;

/// 95% coefficients of the empirical `c/√N` convergence of the Hadamard
/// test: stochastic trace over sampled bases, and a single element.
pub const CI95_TRACE: f64 = 2.23;
pub const CI95_ELEMENT: f64 = 1.95;

// ---------------------------------------------------------------- Wilson

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WilsonInterval {
    pub p_hat: f64,
    pub n: u64,
    pub alpha: f64,
    pub z: f64,
    pub center: f64,
    pub spread: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(p_hat: f64, n: u64, alpha: f64) -> WilsonInterval {
    let z = std::f64::consts::SQRT_2 * erf_inv(1.0 - alpha);
    let nf = n as f64;
    let denom = 1.0 + z * z / nf;
    let center = (p_hat + z * z / (2.0 * nf)) / denom;
    let spread = (p_hat * (1.0 - p_hat) / nf + z * z / (4.0 * nf * nf)).sqrt() / denom;
    WilsonInterval { p_hat, n, alpha, z, center, spread, lower: center - z * spread, upper: center + z * spread }
}

// ---------------------------------------------------------- gate library

/// `Θ₁(2,k)` (diagonal), or the endpoint-2 block of `Θ₂(3,k)`. These two
/// 2×2 unitaries cover every generator on the blocks measured here.
pub fn theta_block(j: usize, k: u32) -> Result<CMat> {
    match j {
        1 => Ok(theta_generator(&enumerate_paths(AJLParams::new(2, k)?), 1, false)),
        2 => {
            let b = enumerate_paths(AJLParams::new(3, k)?);
            Ok(restrict(&theta_generator(&b, 2, false), &b.block(2)))
        }
        _ => Err(Error::Unsupported(format!("no compiled block for generator {j}"))),
    }
}

fn block_name(j: usize, k: u32) -> String {
    format!("theta{j}_k{k}")
}

const POOL_NAME: &str = "diagonal";

/// Compiled weaves for the Hadamard test and every AJL block with
/// `k ∈ 4..=13`, plus a pool of near-diagonal words for phase gates.
#[derive(Clone, Debug)]
pub struct GateLibrary {
    pub depth: usize,
    pub hadamard: CompiledWeave,
    pub phase: CompiledWeave,
    pub not: CompiledWeave,
    blocks: HashMap<(usize, u32), CompiledWeave>,
    pool: DiagonalPool,
}

impl GateLibrary {
    /// Weave-mode search to `depth` letters; diagonal targets are answered
    /// from words within `pool_radius` of the diagonal.
    pub fn build(depth: usize, pool_radius: f64) -> Result<Self> {
        let cfg = SearchConfig::new(Mode::Weave, depth);
        let mut names = vec!["hadamard".to_string(), "phase".to_string()];
        let mut targets = vec![named_target("hadamard").unwrap(), named_target("phase").unwrap()];
        for k in K_RANGE {
            names.push(block_name(2, k));
            targets.push(theta_block(2, k)?);
        }
        let (hits, pool) = search_with_pool(&targets, &cfg, pool_radius);
        let mut weaves = Vec::new();
        for ((name, t), h) in names.iter().zip(&targets).zip(hits) {
            weaves.push(CompiledWeave::from_letters(name, t, Mode::Weave, h.letters)?);
        }
        let mut lib = Self::assemble(depth, weaves, pool)?;
        for k in K_RANGE {
            let t = theta_block(1, k)?;
            let w = lib.diagonal_weave(&block_name(1, k), &t)?;
            lib.blocks.insert((1, k), w);
        }
        Ok(lib)
    }

    fn assemble(depth: usize, weaves: Vec<CompiledWeave>, pool: DiagonalPool) -> Result<Self> {
        let mut by_name: BTreeMap<String, CompiledWeave> =
            weaves.into_iter().map(|w| (w.target_name.clone(), w)).collect();
        let mut take = |n: &str| by_name.remove(n).ok_or_else(|| Error::MissingGate(n.to_string()));
        let hadamard = take("hadamard")?;
        let phase = take("phase")?;
        let mut blocks = HashMap::new();
        for k in K_RANGE {
            blocks.insert((2, k), take(&block_name(2, k))?);
            if let Ok(w) = take(&block_name(1, k)) {
                blocks.insert((1, k), w);
            }
        }
        let not = CompiledWeave::from_letters("inot", &named_target("inot").unwrap(), Mode::Braid, published::not())?;
        Ok(Self { depth, hadamard, phase, not, blocks, pool })
    }

    fn tags(depth: usize, radius: f64) -> String {
        format!("depth={depth},radius={radius}")
    }

    /// Loads the library from the cache, or builds it and appends every
    /// compiled word to the cache.
    pub fn load_or_build(cache: &BraidCache, depth: usize, pool_radius: f64) -> Result<Self> {
        let tags = Self::tags(depth, pool_radius);
        let records: Vec<CacheRecord> = cache.load()?.into_iter().filter(|r| r.tags == tags).collect();
        let mut weaves = Vec::new();
        let mut pool = DiagonalPool { radius: pool_radius, entries: Vec::new() };
        for r in records {
            if r.weave.target_name == POOL_NAME {
                let m = r.weave.matrix();
                let a = m[(0, 0)] / m.determinant().sqrt();
                pool.entries.push((r.weave.word.letters().to_vec(), a));
            } else {
                weaves.push(r.weave);
            }
        }
        if !pool.entries.is_empty() {
            if let Ok(lib) = Self::assemble(depth, weaves, pool) {
                if lib.blocks.len() == 2 * K_RANGE.count() {
                    return Ok(lib);
                }
            }
        }
        let lib = Self::build(depth, pool_radius)?;
        let mut records: Vec<CacheRecord> = [&lib.hadamard, &lib.phase]
            .into_iter()
            .chain(lib.blocks.values())
            .map(|w| CacheRecord { tags: tags.clone(), weave: w.clone() })
            .collect();
        for (letters, a) in &lib.pool.entries {
            let weave = CompiledWeave {
                word: BraidWord::new(3, letters.clone())?,
                mode: Mode::Weave,
                target_name: POOL_NAME.to_string(),
                distance: std::f64::consts::SQRT_2 * (1.0 - a.norm()).max(0.0).sqrt(),
                phase: a / a.norm(),
            };
            records.push(CacheRecord { tags: tags.clone(), weave });
        }
        cache.append_all(&records)?;
        Ok(lib)
    }

    pub fn block(&self, j: usize, k: u32) -> Result<&CompiledWeave> {
        self.blocks.get(&(j, k)).ok_or_else(|| Error::MissingGate(block_name(j, k)))
    }

    pub fn pool_size(&self) -> usize {
        self.pool.entries.len()
    }

    fn diagonal_weave(&self, name: &str, target: &CMat) -> Result<CompiledWeave> {
        let hit = self.pool.best(target).ok_or_else(|| Error::MissingGate(name.to_string()))?;
        CompiledWeave::from_letters(name, target, Mode::Weave, hit.letters)
    }

    /// Weave for `diag(1, e^{iθ})`.
    pub fn phase_gate(&self, theta: f64) -> Result<CompiledWeave> {
        self.diagonal_weave(&format!("rz({theta:.6})"), &diag(&[c(1.0, 0.0), expi(theta)]))
    }

    fn standard(&self) -> StandardGates {
        StandardGates {
            hadamard: self.hadamard.elementary(),
            phase: self.phase.elementary(),
            not: self.not.elementary(),
        }
    }
}

// -------------------------------------------------------- Hadamard test

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Real,
    Imaginary,
}

/// What sits between the Hadamard gates.
#[derive(Clone, Debug, PartialEq)]
pub enum ControlledOp {
    /// Two-qubit word; qubit 1 controls, qubit 2 holds the basis state.
    Word(Vec<i32>),
    /// Single-qubit phase weave on the control qubit alone.
    Scalar(Vec<i32>),
}

/// Elementary letters of the fixed single-qubit gates.
#[derive(Clone, Debug)]
pub struct StandardGates {
    pub hadamard: Vec<i32>,
    /// `diag(1, −i)` up to phase.
    pub phase: Vec<i32>,
    /// `NOT` up to phase.
    pub not: Vec<i32>,
}

#[derive(Clone, Debug)]
pub struct HadamardTestPlan {
    pub component: Component,
    pub op: ControlledOp,
    /// `0` or `1`; `|1⟩` is prepared by a NOT applied before everything else.
    pub target_basis: u8,
    pub iterations: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ShotTally {
    pub plus: u64,
    pub minus: u64,
    pub errors: u64,
    pub ops: u64,
}

impl ShotTally {
    /// Mean of ±1 over non-error shots.
    pub fn mean(&self) -> f64 {
        let n = self.plus + self.minus;
        if n == 0 {
            0.0
        } else {
            (self.plus as f64 - self.minus as f64) / n as f64
        }
    }

    fn add(&mut self, o: &ShotTally) {
        self.plus += o.plus;
        self.minus += o.minus;
        self.errors += o.errors;
        self.ops += o.ops;
    }
}

/// A prepared circuit and its elementary braid count per shot.
#[derive(Clone, Debug)]
pub struct PreparedTest {
    pub state: QCState,
    pub ops: u64,
}

impl PreparedTest {
    /// Conditional mean of the ±1 outcome read from the state vector.
    pub fn limit(&self) -> f64 {
        let p = self.state.peek_distribution();
        let half = p.len() / 2;
        let p0: f64 = p[..half].iter().sum();
        let p1: f64 = p[half..].iter().sum();
        (p0 - p1) / (p0 + p1)
    }

    /// One shot on a fresh copy of the register.
    pub fn shot(&self, seed: u64, tally: &mut ShotTally) {
        let mut s = self.state.clone();
        s.reseed(seed);
        match s.measure() {
            Outcome::Bits(b) if b.starts_with('0') => tally.plus += 1,
            Outcome::Bits(_) => tally.minus += 1,
            Outcome::Error => tally.errors += 1,
        }
        tally.ops += self.ops;
    }
}

/// Builds the circuit `H · op · [S†] · H · [NOT]` (the last-listed word
/// acts first).
pub fn prepare_test(gates: &StandardGates, op: &ControlledOp, component: Component, target_basis: u8) -> Result<PreparedTest> {
    let len = |w: &[i32]| w.len() as u64;
    let (mut s, op_len) = match op {
        ControlledOp::Word(w) => (QCState::initialise(2, 0)?, len(w)),
        ControlledOp::Scalar(w) => (QCState::initialise(1, 0)?, len(w)),
    };
    let mut ops = 2 * len(&gates.hadamard) + op_len;
    s.braid_one(&gates.hadamard, 1)?;
    match op {
        ControlledOp::Word(w) => {
            s.braid_two(w, 1)?;
        }
        ControlledOp::Scalar(w) => s.braid_one(w, 1)?,
    }
    if component == Component::Imaginary {
        s.braid_one(&gates.phase, 1)?;
        ops += len(&gates.phase);
    }
    s.braid_one(&gates.hadamard, 1)?;
    if target_basis == 1 {
        if matches!(op, ControlledOp::Scalar(_)) {
            return Err(Error::Unsupported("scalar test has no target qubit".into()));
        }
        s.braid_one(&gates.not, 2)?;
        ops += len(&gates.not);
    }
    Ok(PreparedTest { state: s, ops })
}

/// Runs a Hadamard test shot by shot; shot `i` measures with a seed drawn
/// from a ChaCha stream keyed by `seed`.
pub fn hadamard_test(plan: &HadamardTestPlan, gates: &StandardGates, seed: u64) -> Result<ShotTally> {
    let prep = prepare_test(gates, &plan.op, plan.component, plan.target_basis)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = ShotTally::default();
    for _ in 0..plan.iterations {
        prep.shot(rng.next_u64(), &mut tally);
    }
    Ok(tally)
}

// ------------------------------------------------------------------ AJL

/// How measured bases are sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weighting {
    /// Proportional to the endpoint weight `λ_l`.
    Markov,
    /// Uniform, giving `tr(Φ)/dim`.
    Uniform,
}

/// One measured basis state of the AJL matrix.
#[derive(Clone, Debug)]
pub struct MeasuredBasis {
    pub path: String,
    pub op: ControlledOp,
    pub target_basis: u8,
    pub weight: f64,
}

/// Everything needed to estimate one Jones value.
#[derive(Clone, Debug)]
pub struct AjlCircuit {
    pub k: u32,
    pub n: usize,
    pub closure: Closure,
    pub bases: Vec<MeasuredBasis>,
    /// `d^{n-1}` (trace) or `d^{n/2-1}` (plat) times the writhe factor.
    pub scale: Complex64,
    /// `d^{n-1}` or `d^{n/2-1}` alone.
    pub d_power: f64,
    pub ci_coefficient: f64,
    prepared: BTreeMap<(usize, Component), PreparedTest>,
}

/// Compiles a knot into its Hadamard-test circuits at level `k`.
pub fn build_ajl_circuit(knot: &ClosedKnot, k: u32, lib: &GateLibrary, weighting: Weighting) -> Result<AjlCircuit> {
    let n = knot.strands();
    let params = AJLParams::new(n, k)?;
    match (knot.closure, n) {
        (Closure::Trace, 2 | 3) | (Closure::Plat, 4) if K_RANGE.contains(&k) => {}
        _ => {
            return Err(Error::Unsupported(format!(
                "quantum AJL runs trace closures on 2-3 strands and plat closures on 4, with k in 4..=13 (got {} n={n} k={k})",
                knot.closure
            )))
        }
    }
    let basis = enumerate_paths(params);
    let d = params.d();
    // Generators 1 and 3 act on the measured 2×2 block as block 1, generator
    // 2 as block 2.
    let mut q = Vec::new();
    let mut phase = c(1.0, 0.0);
    for &g in knot.braid.letters() {
        let j = if g.abs() == 2 { 2 } else { 1 };
        let w = lib.block(j, k)?;
        let w = if g > 0 { w.clone() } else { w.inverse(&format!("{}_inverse", w.target_name)) };
        phase *= w.phase;
        q.extend(w.elementary());
    }
    let correction = lib.phase_gate(-phase.arg())?;
    let word = controlled_letters(&q, &correction.elementary())?;

    let mut bases = Vec::new();
    let (d_power, ci_coefficient) = match knot.closure {
        Closure::Plat => {
            bases.push(MeasuredBasis { path: "1010".into(), op: ControlledOp::Word(word), target_basis: 0, weight: 1.0 });
            (d.powi(n as i32 / 2 - 1), CI95_ELEMENT)
        }
        Closure::Trace => {
            for (i, path) in basis.paths.iter().enumerate() {
                let weight = match weighting {
                    Weighting::Markov => basis.weight(i),
                    Weighting::Uniform => 1.0,
                };
                let op = match (n, path.as_str()) {
                    (2, "10") | (3, "101") => (ControlledOp::Word(word.clone()), 0),
                    (2, "11") | (3, "110") => (ControlledOp::Word(word.clone()), 1),
                    (3, "111") => {
                        let x = crate::ajl_representation::ThetaFamily::new(params).word(knot.braid.letters());
                        let s = x[(i, i)];
                        (ControlledOp::Scalar(lib.phase_gate(s.arg())?.elementary()), 0)
                    }
                    _ => return Err(Error::Unsupported(format!("no circuit for path {path}"))),
                };
                bases.push(MeasuredBasis { path: path.clone(), op: op.0, target_basis: op.1, weight });
            }
            (d.powi(n as i32 - 1), CI95_TRACE)
        }
    };
    let gates = lib.standard();
    let mut prepared = BTreeMap::new();
    for (i, b) in bases.iter().enumerate() {
        for comp in [Component::Real, Component::Imaginary] {
            prepared.insert((i, comp), prepare_test(&gates, &b.op, comp, b.target_basis)?);
        }
    }
    Ok(AjlCircuit {
        k,
        n,
        closure: knot.closure,
        bases,
        scale: writhe_factor(writhe(knot), k) * d_power,
        d_power,
        ci_coefficient,
        prepared,
    })
}

/// Estimate of the (normalised) trace and its bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceEstimate {
    pub value: Complex64,
    pub real: ShotTally,
    pub imag: ShotTally,
}

impl AjlCircuit {
    fn weights(&self) -> Vec<f64> {
        self.bases.iter().map(|b| b.weight).collect()
    }

    /// Infinite-shot value of the weighted trace, read from the state.
    pub fn limit_trace(&self) -> Complex64 {
        let total: f64 = self.weights().iter().sum();
        let mut z = c(0.0, 0.0);
        for (i, b) in self.bases.iter().enumerate() {
            let re = self.prepared[&(i, Component::Real)].limit();
            let im = self.prepared[&(i, Component::Imaginary)].limit();
            z += c(re, im) * (b.weight / total);
        }
        z
    }

    /// Weighted trace from `iterations` shots per component; each shot
    /// samples a basis by weight. `stream` separates independent estimates
    /// drawn from one master seed.
    pub fn estimate_trace(&self, iterations: u64, seed: u64, stream: u64) -> Result<TraceEstimate> {
        let pick = WeightedIndex::new(self.weights()).map_err(|e| Error::Unsupported(e.to_string()))?;
        let run = |comp: Component, sub: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream.wrapping_mul(2).wrapping_add(sub));
            let mut tally = ShotTally::default();
            for _ in 0..iterations {
                let b = pick.sample(&mut rng);
                self.prepared[&(b, comp)].shot(rng.next_u64(), &mut tally);
            }
            tally
        };
        let real = run(Component::Real, 0);
        let imag = run(Component::Imaginary, 1);
        Ok(TraceEstimate { value: c(real.mean(), imag.mean()), real, imag })
    }

    /// Complex 95% radius for `iterations` shots per component.
    pub fn ci_halfwidth(&self, iterations: u64) -> f64 {
        self.ci_coefficient / (iterations as f64).sqrt() * self.d_power
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AJLResult {
    pub k: u32,
    pub n: usize,
    pub closure: Closure,
    pub estimate: Complex64,
    pub limit: Complex64,
    pub exact: Complex64,
    pub ci_halfwidth: f64,
    /// Elementary braiding operations over all shots.
    pub ops: u64,
    /// Shots that ended outside the computational space.
    pub error_shots: u64,
}

impl AJLResult {
    pub fn inside_ci(&self) -> bool {
        (self.estimate - self.exact).norm() <= self.ci_halfwidth
    }
}

/// Jones values of `knot` at `t = e^{2πi/k}` for each `k`, from
/// `iterations` Hadamard-test shots per component.
pub fn run_ajl(knot: &ClosedKnot, ks: &[u32], iterations: u64, seed: u64, lib: &GateLibrary) -> Result<Vec<AJLResult>> {
    ks.par_iter()
        .map(|&k| {
            let circ = build_ajl_circuit(knot, k, lib, Weighting::Markov)?;
            let est = circ.estimate_trace(iterations, seed, k as u64)?;
            let mut tally = est.real;
            tally.add(&est.imag);
            Ok(AJLResult {
                k,
                n: circ.n,
                closure: circ.closure,
                estimate: est.value * circ.scale,
                limit: circ.limit_trace() * circ.scale,
                exact: classical_ajl(knot, k)?,
                ci_halfwidth: circ.ci_halfwidth(iterations),
                ops: tally.ops,
                error_shots: tally.errors,
            })
        })
        .collect()
}

pub const AJL_CSV_HEADER: [&str; 9] =
    ["k", "Re_est", "Im_est", "Re_lim", "Im_lim", "Re_exact", "Im_exact", "ci_halfwidth", "ops"];

pub fn write_ajl_csv<W: std::io::Write>(out: W, rows: &[AJLResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(AJL_CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.k.to_string(),
            format!("{:.17e}", r.estimate.re),
            format!("{:.17e}", r.estimate.im),
            format!("{:.17e}", r.limit.re),
            format!("{:.17e}", r.limit.im),
            format!("{:.17e}", r.exact.re),
            format!("{:.17e}", r.exact.im),
            format!("{:.17e}", r.ci_halfwidth),
            r.ops.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One parsed CSV row: `k`, the seven reals, and `ops`.
#[derive(Clone, Debug, PartialEq)]
pub struct AjlCsvRow {
    pub k: u32,
    pub estimate: Complex64,
    pub limit: Complex64,
    pub exact: Complex64,
    pub ci_halfwidth: f64,
    pub ops: u64,
}

pub fn read_ajl_csv<R: std::io::Read>(input: R) -> Result<Vec<AjlCsvRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != AJL_CSV_HEADER {
        return Err(Error::Parse(format!("unexpected AJL CSV header {header:?}")));
    }
    r.records()
        .map(|rec| {
            let rec = rec?;
            let f = |i: usize| rec[i].parse::<f64>().map_err(|e| Error::Parse(format!("{}: {e}", &rec[i])));
            Ok(AjlCsvRow {
                k: rec[0].parse().map_err(|e| Error::Parse(format!("k: {e}")))?,
                estimate: c(f(1)?, f(2)?),
                limit: c(f(3)?, f(4)?),
                exact: c(f(5)?, f(6)?),
                ci_halfwidth: f(7)?,
                ops: rec[8].parse().map_err(|e| Error::Parse(format!("ops: {e}")))?,
            })
        })
        .collect()
}

// ---------------------------------------------------------------- exact

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnyonModel {
    Fibonacci,
    Ising,
}

impl std::str::FromStr for AnyonModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fib" | "fibonacci" => Ok(Self::Fibonacci),
            "ising" => Ok(Self::Ising),
            o => Err(Error::Parse(format!("unknown anyon model '{o}'"))),
        }
    }
}

impl AnyonModel {
    pub fn k(self) -> u32 {
        match self {
            Self::Fibonacci => 5,
            Self::Ising => 4,
        }
    }

    /// Quantum dimension, the loop value at this level.
    pub fn d(self) -> f64 {
        match self {
            Self::Fibonacci => PHI,
            Self::Ising => std::f64::consts::SQRT_2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult {
    pub magnitude: f64,
    pub lower: f64,
    pub upper: f64,
    pub interval: WilsonInterval,
    /// Magnitude from the exact `|0⟩` probability.
    pub limit: f64,
    pub zeros: u64,
    pub iterations: u64,
}

/// Register with the knot's plat braid applied verbatim to one qubit of
/// four anyons.
pub fn exact_register(knot: &ClosedKnot, model: AnyonModel) -> Result<QCState> {
    if knot.closure != Closure::Plat || knot.strands() != 4 {
        return Err(Error::Unsupported("the exact algorithm needs a 4-strand plat closure".into()));
    }
    let mut s = QCState::initialise(1, 0)?;
    match model {
        // On four anyons of total charge 0 the third exchange equals the first.
        AnyonModel::Fibonacci => {
            let letters: Vec<i32> = knot.braid.letters().iter().map(|&g| if g.abs() == 3 { g.signum() } else { g }).collect();
            s.braid_one(&letters, 1)?;
        }
        AnyonModel::Ising => s.braid_one_with(&ising_generators_n4(), knot.braid.letters(), 1)?,
    }
    Ok(s)
}

/// `|V| = d·√Pr(|0⟩)` from `iterations` shots, with Wilson 95% bounds
/// pushed through the same map.
pub fn run_exact(knot: &ClosedKnot, model: AnyonModel, iterations: u64, seed: u64) -> Result<ExactResult> {
    let reg = exact_register(knot, model)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zeros = 0;
    for _ in 0..iterations {
        let mut s = reg.clone();
        s.reseed(rng.next_u64());
        if s.measure() == Outcome::Bits("0".into()) {
            zeros += 1;
        }
    }
    let d = model.d();
    let p_hat = zeros as f64 / iterations as f64;
    let interval = wilson_interval(p_hat, iterations, 0.05);
    Ok(ExactResult {
        magnitude: d * p_hat.sqrt(),
        lower: d * interval.lower.max(0.0).sqrt(),
        upper: d * interval.upper.max(0.0).sqrt(),
        interval,
        limit: d * reg.peek_distribution()[0].sqrt(),
        zeros,
        iterations,
    })
}
