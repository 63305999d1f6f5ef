//! Compiling single-qubit gates into Fibonacci braids and weaves, and
//! assembling controlled two-qubit gates from them.

pub mod cache;
pub mod controlled;
pub mod enumerate;
pub mod published;
pub mod search;

use std::f64::consts::SQRT_2;
use std::path::Path;

pub use cache::{BraidCache, CacheRecord};
pub use controlled::{build_controlled, controlled_letters, leakage, two_qubit_matrix};
pub use enumerate::{count_words, enumerate_words, Mode, PruneRules};
pub use search::{search_many, search_with_pool, DiagonalPool, SearchConfig, SearchHit};

use crate::anyon_models::{fib_single_qubit_generators, word_matrix};
use crate::error::{Error, Result};
use crate::knot_theory::BraidWord;
use crate::linalg::{c, diag, from_rows, is_unitary, op_norm, trace, CMat, Complex64};

const INPUT_UNITARY_TOL: f64 = 1e-9;

fn check_2x2_unitary(u: &CMat) -> Result<()> {
    if u.shape() != (2, 2) {
        return Err(Error::DimensionMismatch);
    }
    if !is_unitary(u, INPUT_UNITARY_TOL) {
        return Err(Error::NotUnitary(crate::linalg::unitarity_error(u)));
    }
    Ok(())
}

/// `√2·√(1 − |tr(UV†)|/2)`: the operator-norm distance after the best
/// global phase is removed.
pub fn phase_distance(u: &CMat, v: &CMat) -> Result<f64> {
    check_2x2_unitary(u)?;
    check_2x2_unitary(v)?;
    Ok(dot_to_distance(trace(&(u * v.adjoint())).norm() / 2.0))
}

pub(crate) fn dot_to_distance(overlap: f64) -> f64 {
    SQRT_2 * (1.0 - overlap).max(0.0).sqrt()
}

/// `min(‖A − B‖, ‖A + B‖)` over SU(2) representatives of `u` and `v`.
pub fn su2_operator_distance(u: &CMat, v: &CMat) -> f64 {
    let su = |m: &CMat| m.map(|x| x / m.determinant().sqrt());
    let (a, b) = (su(u), su(v));
    op_norm(&(&a - &b)).min(op_norm(&(&a + &b)))
}

/// 2×2 Fibonacci matrix of a signed elementary letter.
pub fn fib_letter_matrix(g: i32) -> CMat {
    word_matrix(&fib_single_qubit_generators(), &[g])
}

/// Named single-qubit targets: `hadamard`, `phase` (`diag(1, −i)`), `not`,
/// `inot`, `identity`.
pub fn named_target(name: &str) -> Option<CMat> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    Some(match name {
        "hadamard" | "h" => from_rows(&[&[o * h, o * h], &[o * h, -o * h]]),
        "phase" | "sdg" => diag(&[o, -i]),
        "not" | "x" => from_rows(&[&[z, o], &[o, z]]),
        "inot" => from_rows(&[&[z, i], &[i, z]]),
        "identity" | "id" => diag(&[o, o]),
        _ => return None,
    })
}

/// Reads a 2×2 matrix from four lines of `Re Im`, row-major.
pub fn read_matrix_file(path: &Path) -> Result<CMat> {
    let text = std::fs::read_to_string(path)?;
    let vals: Vec<Complex64> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let p: Vec<f64> = l
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("{t}: {e}"))))
                .collect::<Result<_>>()?;
            match p[..] {
                [re, im] => Ok(c(re, im)),
                _ => Err(Error::Parse(format!("expected 'Re Im', got '{l}'"))),
            }
        })
        .collect::<Result<_>>()?;
    if vals.len() != 4 {
        return Err(Error::Parse(format!("matrix file needs 4 entries, found {}", vals.len())));
    }
    let m = from_rows(&[&vals[..2], &vals[2..]]);
    check_2x2_unitary(&m)?;
    Ok(m)
}

/// A word approximating a named target: `matrix ≈ phase · target`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompiledWeave {
    /// Three-strand word in mode units (weave letters are full twists).
    pub word: BraidWord,
    pub mode: Mode,
    pub target_name: String,
    /// √2-normalised phase-invariant distance.
    pub distance: f64,
    pub phase: Complex64,
}

impl CompiledWeave {
    /// Scores a given word against a target.
    pub fn from_letters(target_name: &str, target: &CMat, mode: Mode, letters: Vec<i32>) -> Result<Self> {
        check_2x2_unitary(target)?;
        let word = BraidWord::new(3, letters)?;
        let m = word_matrix(&fib_single_qubit_generators(), &expand_mode(mode, word.letters()));
        let t = trace(&(&m * target.adjoint()));
        let phase = if t.norm() > 0.0 { t / t.norm() } else { c(1.0, 0.0) };
        Ok(Self { distance: phase_distance(&m, target)?, word, mode, target_name: target_name.to_string(), phase })
    }

    /// Elementary braid letters.
    pub fn elementary(&self) -> Vec<i32> {
        expand_mode(self.mode, self.word.letters())
    }

    pub fn matrix(&self) -> CMat {
        word_matrix(&fib_single_qubit_generators(), &self.elementary())
    }

    /// Word for the inverse target: reversed and negated, same distance.
    pub fn inverse(&self, target_name: &str) -> Self {
        Self {
            word: self.word.inverse(),
            mode: self.mode,
            target_name: target_name.to_string(),
            distance: self.distance,
            phase: self.phase.conj(),
        }
    }
}

/// Doubles every letter in weave mode.
pub fn expand_mode(mode: Mode, letters: &[i32]) -> Vec<i32> {
    match mode {
        Mode::Braid => letters.to_vec(),
        Mode::Weave => letters.iter().flat_map(|&g| [g, g]).collect(),
    }
}

/// Best retained word for one target.
pub fn search(target_name: &str, target: &CMat, cfg: &SearchConfig) -> Result<CompiledWeave> {
    check_2x2_unitary(target)?;
    let hit = search_many(std::slice::from_ref(target), cfg).remove(0);
    CompiledWeave::from_letters(target_name, target, cfg.mode, hit.letters)
}

/// Cached search: returns a cached word within `accept` if there is one,
/// otherwise searches and appends the result.
pub fn compile(
    target_name: &str,
    target: &CMat,
    cfg: &SearchConfig,
    cache: Option<&BraidCache>,
    tags: &str,
    accept: f64,
) -> Result<CompiledWeave> {
    if let Some(cache) = cache {
        if let Some(w) = cache.lookup(target_name, accept)? {
            return Ok(w);
        }
    }
    let w = search(target_name, target, cfg)?;
    if let Some(cache) = cache {
        cache.append(&CacheRecord { tags: tags.to_string(), weave: w.clone() })?;
    }
    Ok(w)
}

#[derive(Clone, Debug)]
pub struct KnownWeave {
    pub name: &'static str,
    pub elementary_length: usize,
    pub distance: f64,
    pub stated: f64,
    /// Within ±20% of the stated error.
    pub agrees: bool,
}

/// Multiplies out the published words and compares with their stated
/// errors.
pub fn verify_known_weaves() -> Vec<KnownWeave> {
    let rows: [(&str, Vec<i32>, &str, f64); 5] = [
        ("hadamard", published::hadamard(), "hadamard", 0.003),
        ("phase", published::phase(), "phase", 0.0045),
        ("injection", published::injection(), "identity", 0.0015),
        ("injection_inverse", BraidWord::new(3, published::injection()).unwrap().inverse().letters().to_vec(), "identity", 0.0015),
        ("not", published::not(), "inot", 0.00086),
    ];
    rows.into_iter()
        .map(|(name, letters, target, stated)| {
            let t = named_target(target).expect("known target");
            let m = word_matrix(&fib_single_qubit_generators(), &letters);
            let distance = phase_distance(&m, &t).expect("unitary");
            KnownWeave {
                name,
                elementary_length: letters.len(),
                distance,
                stated,
                agrees: (distance - stated).abs() <= 0.2 * stated,
            }
        })
        .collect()
}
