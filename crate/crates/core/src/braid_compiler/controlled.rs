//! Two-qubit controlled gates built by weaving the control pair through
//! the target qubit.
//!
//! Two-qubit letters `σ₁..σ₅` act on six effective strands: anyons 1-3 of
//! the target qubit and anyons 1-3 of the control qubit. The control pair
//! sits on strands 4 and 5. A single-qubit letter that exchanges the warp
//! with a neighbour becomes two letters that carry the whole pair past that
//! neighbour: `σ_{p-1}σ_p` when the pair at strands `(p, p+1)` moves left,
//! `σ_{p+1}σ_p` when it moves right (same sign as the original letter).

use super::{published, CompiledWeave};
use crate::anyon_models::fib_two_qubit_letter;
use crate::error::{Error, Result};
use crate::knot_theory::BraidWord;
use crate::linalg::{identity, kron, leading_block, min_singular, op_norm, trace, CMat, Complex64};

/// Computational states of two qubits come first in the 13-state basis.
pub const COMPUTATIONAL_DIM: usize = 4;

/// Translates single-qubit elementary letters into two-qubit letters.
/// `pair` is the left strand of the control pair, `warp` the warp position
/// (1..3) in the single-qubit frame. Returns the letters and the final
/// `(pair, warp)`.
pub fn translate(letters: &[i32], mut pair: i32, mut warp: i32) -> Result<(Vec<i32>, i32, i32)> {
    let mut out = Vec::with_capacity(2 * letters.len());
    for &g in letters {
        let (i, e) = (g.abs(), g.signum());
        if i == warp - 1 {
            out.extend([e * (pair - 1), e * pair]);
            pair -= 1;
            warp -= 1;
        } else if i == warp {
            out.extend([e * (pair + 1), e * pair]);
            pair += 1;
            warp += 1;
        } else {
            return Err(Error::NotAWeave(format!("letter {g} does not move the warp at {warp}")));
        }
        if !(1..=5).contains(&pair) {
            return Err(Error::NotAWeave(format!("control pair pushed off the register at {g}")));
        }
    }
    Ok((out, pair, warp))
}

/// Whether the letters move only the middle strand and return it there.
pub fn is_weave(letters: &[i32]) -> bool {
    let mut warp = 2;
    for &g in letters {
        match g.abs() {
            i if i == warp - 1 => warp -= 1,
            i if i == warp => warp += 1,
            _ => return false,
        }
    }
    warp == 2
}

/// Controlled-`Q` on the two-qubit register from elementary weave letters:
/// injection, `Q` with the control pair as the warp, inverse injection, then
/// `correction` (single-qubit letters) on the control qubit.
pub fn controlled_letters(q: &[i32], correction: &[i32]) -> Result<Vec<i32>> {
    if !is_weave(q) {
        return Err(Error::NotAWeave("controlled word must start and end with the warp in the middle".into()));
    }
    let inj = published::injection();
    let (mut word, pair, _) = translate(&inj, 4, 3)?;
    let (body, pair, _) = translate(q, pair, 2)?;
    word.extend(body);
    let back: Vec<i32> = inj.iter().rev().map(|g| -g).collect();
    let (tail, pair, _) = translate(&back, pair, 1)?;
    debug_assert_eq!(pair, 4);
    word.extend(tail);
    word.extend(correction.iter().map(|g| g + 3 * g.signum()));
    Ok(word)
}

/// Controlled version of a compiled weave with an optional phase
/// correction on the control qubit.
pub fn build_controlled(q: &CompiledWeave, correction: Option<&CompiledWeave>) -> Result<BraidWord> {
    let corr = correction.map(CompiledWeave::elementary).unwrap_or_default();
    BraidWord::new(6, controlled_letters(&q.elementary(), &corr)?)
}

/// 13×13 matrix of a two-qubit word (right multiplication).
pub fn two_qubit_matrix(letters: &[i32]) -> CMat {
    letters.iter().fold(identity(13), |m, &g| m * fib_two_qubit_letter(g))
}

/// `1 − σ_min²` of the leading `dim × dim` block.
pub fn leakage(m: &CMat, dim: usize) -> f64 {
    let s = min_singular(&leading_block(m, dim));
    1.0 - s * s
}

/// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U`, control first.
pub fn controlled_target(u: &CMat) -> CMat {
    let p0 = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]));
    let p1 = identity(2) - &p0;
    kron(&p0, &identity(2)) + kron(&p1, u)
}

/// Operator-norm error of a block against a target after removing the best
/// global phase.
pub fn block_error(block: &CMat, target: &CMat) -> f64 {
    let t = trace(&(block * target.adjoint()));
    let phase = if t.norm() > 0.0 { t / t.norm() } else { Complex64::new(1.0, 0.0) };
    op_norm(&(block - target.map(|v| v * phase)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_rows;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn controlled_not() {
        let word = controlled_letters(&published::not(), &[]).unwrap();
        assert_eq!(word.len(), 280);
        let m = two_qubit_matrix(&word);
        let lk = leakage(&m, COMPUTATIONAL_DIM);
        assert!((5e-6..7e-6).contains(&lk), "leakage {lk}");
        let inot = from_rows(&[&[c(0.0, 0.0), c(0.0, 1.0)], &[c(0.0, 1.0), c(0.0, 0.0)]]);
        let err = block_error(&leading_block(&m, 4), &controlled_target(&inot));
        assert!((err - 0.0007).abs() < 0.0001, "error {err}");
    }

    #[test]
    fn empty_weave_is_nearly_identity() {
        let word = controlled_letters(&[], &[]).unwrap();
        let m = two_qubit_matrix(&word);
        assert!(leakage(&m, 4) <= 1e-5);
        assert!(block_error(&leading_block(&m, 4), &identity(4)) < 0.01);
    }

    #[test]
    fn rejects_non_weaves() {
        assert!(!is_weave(&[1]));
        assert!(is_weave(&[1, 1, -2, -2]));
        assert!(controlled_letters(&[2], &[]).is_err());
        assert!(translate(&[1], 4, 3).is_err());
    }

    #[test]
    fn only_the_middle_exchange_leaks() {
        for g in 1..=5 {
            let lk = leakage(fib_two_qubit_letter(g), 4);
            if g == 3 {
                assert!(lk > 1e-3);
            } else {
                assert!(lk < 1e-12);
            }
        }
    }
}
