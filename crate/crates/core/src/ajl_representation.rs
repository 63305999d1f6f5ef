//! Path-model representation of the Temperley-Lieb algebra and the unitary
//! braid images built from it.
//!
//! Basis states are walks of `n` steps on the line graph with vertices
//! `1..k-1`, starting at vertex 1. Bit `1` steps right, bit `0` steps left.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kauffman_oracle::{root_a, writhe_factor};
use crate::knot_theory::{writhe, ClosedKnot, Closure};
use crate::linalg::{identity, CMat, Complex64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AJLParams {
    pub n: usize,
    pub k: u32,
}

impl AJLParams {
    pub fn new(n: usize, k: u32) -> Result<Self> {
        if n == 0 || k < 3 {
            return Err(Error::Unsupported(format!("path model needs n ≥ 1, k ≥ 3 (n={n}, k={k})")));
        }
        Ok(Self { n, k })
    }

    pub fn a(&self) -> Complex64 {
        root_a(self.k)
    }

    /// `t = e^{2πi/k}`.
    pub fn t(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI / self.k as f64)
    }

    /// Loop value `d = 2cos(π/k)`.
    pub fn d(&self) -> f64 {
        2.0 * (PI / self.k as f64).cos()
    }

    /// Vertex weight `λ_l = sin(πl/k)`; zero at `l = 0` and `l = k`.
    pub fn lambda(&self, l: usize) -> f64 {
        if l == 0 || l == self.k as usize {
            0.0
        } else {
            (PI * l as f64 / self.k as f64).sin()
        }
    }
}

#[derive(Clone, Debug)]
pub struct PathBasis {
    pub params: AJLParams,
    /// Bitstrings sorted by endpoint, then lexicographically.
    pub paths: Vec<String>,
    pub endpoints: Vec<usize>,
    index: HashMap<String, usize>,
}

impl PathBasis {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn index_of(&self, path: &str) -> Option<usize> {
        self.index.get(path).copied()
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.params.lambda(self.endpoints[i])
    }

    /// Indices of the paths ending at vertex `l`.
    pub fn block(&self, l: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.endpoints[i] == l).collect()
    }

    /// Distinct endpoints in basis order.
    pub fn block_endpoints(&self) -> Vec<usize> {
        let mut v = self.endpoints.clone();
        v.dedup();
        v
    }
}

/// Vertex reached after following `bits` from vertex 1, or `None` if the
/// walk leaves `1..k-1`.
fn walk(bits: &[u8], k: u32) -> Option<usize> {
    let mut v = 1i64;
    for &b in bits {
        v += if b == b'1' { 1 } else { -1 };
        if v < 1 || v > k as i64 - 1 {
            return None;
        }
    }
    Some(v as usize)
}

pub fn enumerate_paths(params: AJLParams) -> PathBasis {
    let mut found: Vec<(usize, String)> = Vec::new();
    let mut frontier = vec![String::new()];
    for _ in 0..params.n {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for p in frontier {
            for step in ['0', '1'] {
                let mut q = p.clone();
                q.push(step);
                if walk(q.as_bytes(), params.k).is_some() {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    for p in frontier {
        let end = walk(p.as_bytes(), params.k).expect("kept paths stay on the graph");
        found.push((end, p));
    }
    found.sort();
    let index = found.iter().enumerate().map(|(i, (_, p))| (p.clone(), i)).collect();
    PathBasis {
        params,
        endpoints: found.iter().map(|(e, _)| *e).collect(),
        paths: found.into_iter().map(|(_, p)| p).collect(),
        index,
    }
}

/// Matrix of the cup-cap `E_j` (1-based `j`) on the path basis.
///
/// With `l` the vertex before steps `j, j+1`: `00` and `11` are killed;
/// `01` maps to `(λ_{l-1}/λ_l)|p⟩ + (√(λ_{l-1}λ_{l+1})/λ_l)|…10…⟩` and
/// `10` to `(√(λ_{l-1}λ_{l+1})/λ_l)|…01…⟩ + (λ_{l+1}/λ_l)|p⟩`.
pub fn phi_generator(basis: &PathBasis, j: usize) -> CMat {
    let p = basis.params;
    assert!(j >= 1 && j < p.n, "generator index {j} out of range for n={}", p.n);
    let dim = basis.len();
    let mut m = CMat::zeros(dim, dim);
    for (col, path) in basis.paths.iter().enumerate() {
        let b = path.as_bytes();
        let l = walk(&b[..j - 1], p.k).expect("prefix of a valid path");
        let (lm, l0, lp) = (p.lambda(l - 1), p.lambda(l), p.lambda(l + 1));
        let cross = (lm * lp).sqrt() / l0;
        let (diag_coef, swapped) = match (b[j - 1], b[j]) {
            (b'0', b'1') => (lm / l0, "10"),
            (b'1', b'0') => (lp / l0, "01"),
            _ => continue,
        };
        m[(col, col)] += diag_coef;
        let mut q = path.clone();
        q.replace_range(j - 1..j + 1, swapped);
        match basis.index_of(&q) {
            Some(row) => m[(row, col)] += cross,
            None => debug_assert!(cross.abs() < 1e-12, "dropped nonzero path amplitude"),
        }
    }
    m
}

/// Unitary image of `b_j` (`A Φ_j + A^{-1} I`) or of `b_j^{-1}`
/// (`A^{-1} Φ_j + A I`).
pub fn theta_generator(basis: &PathBasis, j: usize, inverse: bool) -> CMat {
    let a = basis.params.a();
    let (x, y) = if inverse { (a.inv(), a) } else { (a, a.inv()) };
    phi_generator(basis, j).map(|v| v * x) + identity(basis.len()) * y
}

/// All generator images `Θ_j` and their inverses for a basis.
#[derive(Clone, Debug)]
pub struct ThetaFamily {
    pub basis: PathBasis,
    pub fwd: Vec<CMat>,
    pub inv: Vec<CMat>,
}

impl ThetaFamily {
    pub fn new(params: AJLParams) -> Self {
        let basis = enumerate_paths(params);
        let fwd = (1..params.n).map(|j| theta_generator(&basis, j, false)).collect();
        let inv = (1..params.n).map(|j| theta_generator(&basis, j, true)).collect();
        Self { basis, fwd, inv }
    }

    pub fn letter(&self, g: i32) -> &CMat {
        let i = g.unsigned_abs() as usize - 1;
        if g > 0 {
            &self.fwd[i]
        } else {
            &self.inv[i]
        }
    }

    /// Right-multiplied product over the letters.
    pub fn word(&self, letters: &[i32]) -> CMat {
        letters.iter().fold(identity(self.basis.len()), |m, &g| m * self.letter(g))
    }
}

/// `(1/N) Σ_p λ_{l(p)} ⟨p|X|p⟩`, `N = Σ_p λ_{l(p)}`.
pub fn markov_trace(basis: &PathBasis, x: &CMat) -> Complex64 {
    let mut num = Complex64::new(0.0, 0.0);
    let mut norm = 0.0;
    for i in 0..basis.len() {
        let w = basis.weight(i);
        num += x[(i, i)] * w;
        norm += w;
    }
    num / norm
}

/// The plat-closure reference state `1010…10`.
pub fn alpha_path(n: usize) -> String {
    "10".repeat(n / 2)
}

/// Bracket of the closure at `A = i e^{-πi/2k}` from the path model:
/// `d^{n-1}·Tr(X)` for trace closures, `d^{n/2-1}·⟨α|X|α⟩` for plat ones.
pub fn classical_bracket(knot: &ClosedKnot, k: u32) -> Result<Complex64> {
    let n = knot.strands();
    let fam = ThetaFamily::new(AJLParams::new(n, k)?);
    let x = fam.word(knot.braid.letters());
    let d = fam.basis.params.d();
    Ok(match knot.closure {
        Closure::Trace => markov_trace(&fam.basis, &x) * d.powi(n as i32 - 1),
        Closure::Plat => {
            let a = fam
                .basis
                .index_of(&alpha_path(n))
                .ok_or_else(|| Error::Unsupported(format!("no plat state for n={n}, k={k}")))?;
            x[(a, a)] * d.powi(n as i32 / 2 - 1)
        }
    })
}

/// Jones value at `t = e^{2πi/k}` via the path model.
pub fn classical_ajl(knot: &ClosedKnot, k: u32) -> Result<Complex64> {
    Ok(classical_bracket(knot, k)? * writhe_factor(writhe(knot), k))
}

/// CSV of a matrix (`row,col,re,im`).
pub fn matrix_csv(m: &CMat) -> String {
    crate::anyon_models::generator_csv(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon_models::{fib_single_qubit_generators, ising_generators_n3, ising_generators_n4};
    use crate::kauffman_oracle::jones;
    use crate::knot_theory::{named_knot, verify_braid_relations, TEST_KNOTS};
    use crate::linalg::{c, diag, expi, from_rows, max_abs_diff, restrict, unitarity_error};

    fn basis(n: usize, k: u32) -> PathBasis {
        enumerate_paths(AJLParams::new(n, k).unwrap())
    }

    #[test]
    fn constants() {
        for k in 3..=13 {
            let p = AJLParams::new(2, k).unwrap();
            let a = p.a();
            let d = -a * a - a.inv() * a.inv();
            assert!((d - p.d()).norm() < 1e-12);
            assert!((a.powi(-4) - p.t()).norm() < 1e-12);
            // t^{1/2} = A^{-2} = -e^{πi/k}
            assert!((a.powi(-2) + expi(PI / k as f64)).norm() < 1e-12);
        }
    }

    #[test]
    fn path_enumeration() {
        assert_eq!(basis(2, 4).paths, vec!["10", "11"]);
        assert_eq!(basis(2, 3).paths, vec!["10"]);
        let b = basis(4, 7);
        assert_eq!(b.len(), 6);
        assert_eq!(b.block_endpoints(), vec![1, 3, 5]);
        assert_eq!(b.block(1).len(), 2);
        assert_eq!(b.block(3).len(), 3);
        assert_eq!(b.paths[..2], ["1010".to_string(), "1100".to_string()]);
        assert_eq!(basis(4, 5).len(), basis(4, 5).block(1).len() + basis(4, 5).block(3).len());
        for k in 7..12 {
            assert_eq!(basis(5, k).len(), basis(5, 13).len());
        }
    }

    #[test]
    fn worked_example() {
        let b = basis(2, 4);
        let phi = phi_generator(&b, 1);
        let s2 = 2f64.sqrt();
        assert!(max_abs_diff(&phi, &diag(&[c(s2, 0.0), c(0.0, 0.0)])) < 1e-15);
        let theta = theta_generator(&b, 1, false);
        let want = diag(&[c(1.0, 0.0), c(0.0, -1.0)]) * expi(PI / 8.0);
        assert!(max_abs_diff(&theta, &want) < 1e-12);
        let hopf = &theta * &theta;
        assert!(markov_trace(&b, &hopf).norm() < 1e-12);
        assert!((markov_trace(&b, &identity(2)) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn temperley_lieb_relations() {
        for k in 3..=9 {
            for n in 2..=5 {
                let b = basis(n, k);
                let p = b.params;
                let phis: Vec<CMat> = (1..n).map(|j| phi_generator(&b, j)).collect();
                for (j, e) in phis.iter().enumerate() {
                    assert!(max_abs_diff(&(e * e), &e.map(|v| v * p.d())) < 1e-12);
                    if j + 1 < phis.len() {
                        let f = &phis[j + 1];
                        assert!(max_abs_diff(&(e * f * e), e) < 1e-12);
                        assert!(max_abs_diff(&(f * e * f), f) < 1e-12);
                    }
                    for i in 0..b.len() {
                        for jj in 0..b.len() {
                            if b.endpoints[i] != b.endpoints[jj] {
                                assert_eq!(e[(i, jj)].norm(), 0.0);
                            }
                        }
                    }
                }
                // Markov property on the last generator.
                if n >= 2 {
                    let x = &phis[0];
                    let last = &phis[n - 2];
                    if n > 2 {
                        let lhs = markov_trace(&b, &(x * last));
                        let rhs = markov_trace(&b, x) / p.d();
                        assert!((lhs - rhs).norm() < 1e-12, "n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn thetas_are_unitary_braid_representations() {
        for k in 3..=13 {
            for n in 2..=4 {
                let fam = ThetaFamily::new(AJLParams::new(n, k).unwrap());
                for (f, i) in fam.fwd.iter().zip(&fam.inv) {
                    assert!(unitarity_error(f) < 1e-12);
                    assert!(max_abs_diff(&(f * i), &identity(fam.basis.len())) < 1e-12);
                }
                assert!(verify_braid_relations(&fam.fwd, 1e-12).unwrap());
            }
        }
    }

    #[test]
    fn redundant_blocks() {
        for k in 4..=13 {
            let t = |n, j| theta_generator(&basis(n, k), j, false);
            let first = |m: &CMat| restrict(m, &[0, 1]);
            let t12 = t(2, 1);
            let t13 = t(3, 1);
            assert!(max_abs_diff(&first(&t13), &t12) < 1e-12);
            assert!(max_abs_diff(&first(&t(4, 1)), &t12) < 1e-12);
            assert!(max_abs_diff(&first(&t(4, 2)), &first(&t(3, 2))) < 1e-12);
            assert!(max_abs_diff(&first(&t(4, 3)), &first(&t(4, 1))) < 1e-12);
        }
    }

    #[test]
    fn exact_three_strand_level_four() {
        let t1 = theta_generator(&basis(3, 4), 1, false);
        let want = diag(&[c(1.0, 0.0), c(0.0, -1.0)]) * expi(PI / 8.0);
        assert!(max_abs_diff(&t1, &want) < 1e-12);
        let t2 = theta_generator(&basis(3, 4), 2, false);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (a, b) = (expi(-PI / 8.0) * h, expi(3.0 * PI / 8.0) * h);
        assert!(max_abs_diff(&t2, &from_rows(&[&[a, b], &[b, a]])) < 1e-12);
    }

    #[test]
    fn fibonacci_and_ising_correspondence() {
        let fib = fib_single_qubit_generators();
        let b45 = basis(4, 5);
        for j in 1..=3 {
            let t = restrict(&theta_generator(&b45, j, false), &b45.block(1));
            let s = if j == 2 { &fib[1] } else { &fib[0] };
            assert!(max_abs_diff(&t, &s.map(|v| -v)) < 1e-12, "j={j}");
        }
        let ising = ising_generators_n3();
        for j in 1..=2 {
            let t = theta_generator(&basis(3, 4), j, false);
            assert!(max_abs_diff(&t, &ising[j - 1].adjoint()) < 1e-12);
        }
        let ising4 = ising_generators_n4();
        let b44 = basis(4, 4);
        for j in 1..=3 {
            let t = restrict(&theta_generator(&b44, j, false), &b44.block(1));
            assert!(max_abs_diff(&t, &ising4[j - 1].adjoint()) < 1e-12);
        }
    }

    #[test]
    fn matches_oracle() {
        for name in TEST_KNOTS {
            for c in [Closure::Trace, Closure::Plat] {
                let knot = named_knot(name, c).unwrap();
                let j = jones(&knot).unwrap();
                for k in 3..=13 {
                    let v = classical_ajl(&knot, k).unwrap();
                    assert!((v - j.eval(k)).norm() < 1e-10, "{name} {c} k={k}");
                }
            }
        }
    }

    #[test]
    fn level_three_is_trivial() {
        for name in TEST_KNOTS {
            let v = classical_ajl(&named_knot(name, Closure::Trace).unwrap(), 3).unwrap();
            assert!((v - 1.0).norm() < 1e-12);
        }
        let hopf = ClosedKnot::trace(2, vec![1, 1]).unwrap();
        assert!(classical_ajl(&hopf, 4).unwrap().norm() < 1e-12);
    }
}
