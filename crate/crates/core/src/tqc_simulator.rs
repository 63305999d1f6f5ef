//! Qubit-register simulator driven by braidwords.
//!
//! The register keeps the initial state `|0…0⟩` and an accumulated operator.
//! Each applied word is right-multiplied into the operator, so the word
//! applied last acts on the state first. Qubit 1 is the most significant
//! bit of a basis index.

use std::io::Write;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::anyon_models::{fib_single_qubit_generators, word_matrix};
use crate::braid_compiler::{leakage, two_qubit_matrix};
use crate::error::{Error, Result};
use crate::linalg::{identity, kron, leading_block, CMat, Complex64};

/// Dense simulation stops here (a 4096×4096 operator is about 256 MB).
pub const MAX_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Bits(String),
    /// The state left the computational space.
    Error,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Bits(b) => f.write_str(b),
            Outcome::Error => f.write_str("ERROR"),
        }
    }
}

/// One line of the optional run trace.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceEntry {
    pub kind: &'static str,
    pub pos: usize,
    pub length: usize,
    pub leakage: f64,
}

#[derive(Clone, Debug)]
pub struct QCState {
    qubits: usize,
    state: DVector<Complex64>,
    braid_matrix: CMat,
    seed: u64,
    rng: ChaCha8Rng,
    trace: Option<Vec<TraceEntry>>,
}

impl QCState {
    pub fn initialise(qubits: usize, seed: u64) -> Result<Self> {
        if qubits == 0 || qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(qubits));
        }
        let dim = 1usize << qubits;
        let mut state = DVector::from_element(dim, Complex64::new(0.0, 0.0));
        state[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            qubits,
            state,
            braid_matrix: identity(dim),
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            trace: None,
        })
    }

    /// Records one [`TraceEntry`] per applied word from now on.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn trace_log(&self) -> &[TraceEntry] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Restarts the measurement RNG from a new seed.
    pub fn reseed(&mut self, seed: u64) {
        self.seed = seed;
        self.rng = ChaCha8Rng::seed_from_u64(seed);
    }

    pub fn braid_matrix(&self) -> &CMat {
        &self.braid_matrix
    }

    pub fn initial_state(&self) -> &DVector<Complex64> {
        &self.state
    }

    /// `braid_matrix · state`.
    pub fn amplitudes(&self) -> DVector<Complex64> {
        &self.braid_matrix * &self.state
    }

    fn log(&mut self, kind: &'static str, pos: usize, length: usize, leakage: f64) {
        if let Some(t) = &mut self.trace {
            t.push(TraceEntry { kind, pos, length, leakage });
        }
    }

    /// Tensors `gate` (acting on `width` qubits starting at `pos`) with
    /// identities and right-multiplies it into the operator.
    pub fn apply_gate(&mut self, gate: &CMat, pos: usize, width: usize) -> Result<()> {
        if pos == 0 || pos + width - 1 > self.qubits {
            return Err(Error::BadPosition { pos, qubits: self.qubits });
        }
        if gate.nrows() != 1 << width {
            return Err(Error::DimensionMismatch);
        }
        let full = kron(&kron(&identity(1 << (pos - 1)), gate), &identity(1 << (self.qubits + 1 - pos - width)));
        self.braid_matrix = &self.braid_matrix * full;
        Ok(())
    }

    /// Single-qubit Fibonacci braid on qubit `pos`.
    pub fn braid_one(&mut self, letters: &[i32], pos: usize) -> Result<()> {
        self.braid_one_with(&fib_single_qubit_generators(), letters, pos)
    }

    /// Single-qubit braid with any 2×2 generator set.
    pub fn braid_one_with(&mut self, gens: &[CMat], letters: &[i32], pos: usize) -> Result<()> {
        if let Some(&g) = letters.iter().find(|g| g.unsigned_abs() as usize > gens.len() || **g == 0) {
            return Err(Error::InvalidLetter { letter: g, strands: gens.len() + 1 });
        }
        let m = word_matrix(gens, letters);
        self.apply_gate(&m, pos, 1)?;
        self.log("one", pos, letters.len(), 0.0);
        Ok(())
    }

    /// Two-qubit braid over `σ₁..σ₅` on qubits `pos` (control) and `pos+1`.
    /// The 13×13 product is truncated to its computational block; returns
    /// the leakage of that block.
    pub fn braid_two(&mut self, letters: &[i32], pos: usize) -> Result<f64> {
        if let Some(&g) = letters.iter().find(|g| !(1..=5).contains(&g.unsigned_abs())) {
            return Err(Error::InvalidLetter { letter: g, strands: 6 });
        }
        if pos == 0 || pos + 1 > self.qubits {
            return Err(Error::BadPosition { pos, qubits: self.qubits });
        }
        let full = two_qubit_matrix(letters);
        let lk = leakage(&full, 4);
        self.apply_gate(&leading_block(&full, 4), pos, 2)?;
        self.log("two", pos, letters.len(), lk);
        Ok(lk)
    }

    /// Exact SWAP of qubits `pos` and `pos+1`.
    pub fn apply_swap(&mut self, pos: usize) -> Result<()> {
        let mut swap = CMat::zeros(4, 4);
        for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(r, c)] = Complex64::new(1.0, 0.0);
        }
        self.apply_gate(&swap, pos, 2)?;
        self.log("swap", pos, 0, 0.0);
        Ok(())
    }

    /// Outcome probabilities `|amplitude|²`; their deficit from 1 is the
    /// error probability.
    pub fn peek_distribution(&self) -> Vec<f64> {
        self.amplitudes().iter().map(|a| a.norm_sqr()).collect()
    }

    /// Samples a basis state by walking the cumulative distribution. The
    /// register cannot be reused afterwards.
    pub fn measure(mut self) -> Outcome {
        let u: f64 = self.rng.random();
        let mut acc = 0.0;
        for (i, p) in self.peek_distribution().into_iter().enumerate() {
            acc += p;
            if u < acc {
                return Outcome::Bits(format!("{:0width$b}", i, width = self.qubits));
            }
        }
        Outcome::Error
    }
}

/// Shot CSV: `shot,outcome`.
pub fn write_shots_csv<W: Write>(out: W, outcomes: &[Outcome]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["shot", "outcome"])?;
    for (i, o) in outcomes.iter().enumerate() {
        w.write_record([i.to_string(), o.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_shots_csv<R: std::io::Read>(input: R) -> Result<Vec<Outcome>> {
    let mut r = csv::Reader::from_reader(input);
    r.records()
        .map(|rec| {
            let rec = rec?;
            Ok(match &rec[1] {
                "ERROR" => Outcome::Error,
                b => Outcome::Bits(b.to_string()),
            })
        })
        .collect()
}

/// Run-trace lines: `kind,pos,length,leakage`.
pub fn write_trace<W: Write>(mut out: W, entries: &[TraceEntry]) -> Result<()> {
    writeln!(out, "kind,pos,length,leakage")?;
    for e in entries {
        writeln!(out, "{},{},{},{:e}", e.kind, e.pos, e.length, e.leakage)?;
    }
    Ok(())
}
