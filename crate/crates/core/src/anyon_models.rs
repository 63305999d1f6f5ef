//! Fibonacci and Ising anyon data and the braid generators built from it.
//!
//! Fusion-tree states are bitstrings of intermediate charges. With anyons
//! `1..m` all of type τ, site `s` holds the charge obtained after fusing
//! anyons `1..s+2` left to right; the virtual site before site 0 is anyon 1
//! itself (charge 1).

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{c, diag, expi, from_rows, CMat, Complex64};

/// Golden ratio.
pub const PHI: f64 = 1.618_033_988_749_895;

/// Fibonacci fusion: `0⊗x = x`, `1⊗1 = 0⊕1`. A vertex is allowed unless
/// exactly one of its three labels is τ.
pub fn fib_admissible(a: u8, b: u8, c: u8) -> bool {
    a + b + c != 1
}

/// F and R coefficients of the Fibonacci model.
#[derive(Clone, Debug)]
pub struct FibFRData {
    /// `F(1111)`, rows indexed by the left-associated intermediate charge.
    pub f1111: [[f64; 2]; 2],
    /// `R^{11}_0`, `R^{11}_1`.
    pub r: [Complex64; 2],
}

impl Default for FibFRData {
    fn default() -> Self {
        let (p, s) = (1.0 / PHI, 1.0 / PHI.sqrt());
        Self {
            f1111: [[p, s], [s, -p]],
            r: [expi(-4.0 * PI / 5.0), expi(3.0 * PI / 5.0)],
        }
    }
}

impl FibFRData {
    /// `F(abcd)^i_j`: `i` is the charge of `a⊗b` in `(a⊗b)⊗c → d`, `j` that
    /// of `b⊗c` in `a⊗(b⊗c) → d`. Forbidden channels give exactly 0 and
    /// forced ones exactly 1.
    pub fn f(&self, a: u8, b: u8, cc: u8, d: u8, i: u8, j: u8) -> f64 {
        let ok = fib_admissible(a, b, i)
            && fib_admissible(i, cc, d)
            && fib_admissible(b, cc, j)
            && fib_admissible(a, j, d);
        if !ok {
            0.0
        } else if (a, b, cc, d) == (1, 1, 1, 1) {
            self.f1111[i as usize][j as usize]
        } else {
            1.0
        }
    }

    /// `R^{11}_c`, or its conjugate for the inverse exchange.
    pub fn r(&self, charge: u8, inverse: bool) -> Complex64 {
        let r = self.r[charge as usize];
        if inverse {
            r.conj()
        } else {
            r
        }
    }

    /// Largest residual of
    /// `F(11c1)^d_a F(a111)^c_b = Σ_e F(111d)^c_e F(1e11)^d_b F(111b)^e_a`
    /// over all sixteen label assignments.
    pub fn pentagon_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, b, cc, d) in labels4() {
            let lhs = self.f(1, 1, cc, 1, d, a) * self.f(a, 1, 1, 1, cc, b);
            let rhs: f64 = (0..2)
                .map(|e| self.f(1, 1, 1, d, cc, e) * self.f(1, e, 1, 1, d, b) * self.f(1, 1, 1, b, e, a))
                .sum();
            worst = worst.max((lhs - rhs).abs());
        }
        worst
    }

    /// Residual of both hexagon equations with all external labels τ:
    /// `R_c F_{ca} R_a = Σ_b F_{cb} R^{1b}_1 F_{ba}` and its mirror with
    /// inverse exchanges. Fusion with the vacuum carries no phase.
    pub fn hexagon_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for inverse in [false, true] {
            let r1b = |b: u8| if b == 0 { c(1.0, 0.0) } else { self.r(1, inverse) };
            for a in 0..2u8 {
                for cc in 0..2u8 {
                    let f = |x: u8, y: u8| self.f(1, 1, 1, 1, x, y);
                    let lhs = self.r(cc, inverse) * f(cc, a) * self.r(a, inverse);
                    let rhs: Complex64 = (0..2).map(|b| r1b(b) * f(cc, b) * f(b, a)).sum();
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
        worst
    }
}

fn labels4() -> impl Iterator<Item = (u8, u8, u8, u8)> {
    (0..16u8).map(|m| (m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1))
}

/// One elementary move on a fusion-tree site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Re-associate the two anyons entering `site` so the site holds their
    /// joint charge instead.
    F(usize),
    /// Undo [`Move::F`] on the same site.
    FInv(usize),
    /// Exchange the two anyons whose joint charge sits at `site`.
    R(usize),
    RInv(usize),
}

impl Move {
    fn inverse(self) -> Move {
        match self {
            Move::F(s) => Move::FInv(s),
            Move::FInv(s) => Move::F(s),
            Move::R(s) => Move::RInv(s),
            Move::RInv(s) => Move::R(s),
        }
    }
}

pub type Superposition = BTreeMap<Vec<u8>, Complex64>;

/// Applies one move to a superposition of fusion-tree bitstrings.
pub fn apply_move(data: &FibFRData, state: &Superposition, mv: Move) -> Result<Superposition> {
    let mut out = Superposition::new();
    for (bits, &amp) in state {
        let site = match mv {
            Move::F(s) | Move::FInv(s) | Move::R(s) | Move::RInv(s) => s,
        };
        if site >= bits.len() {
            return Err(Error::Parse(format!("fusion site {site} outside tree of {}", bits.len())));
        }
        match mv {
            Move::R(s) | Move::RInv(s) => {
                let r = data.r(bits[s], matches!(mv, Move::RInv(_)));
                *out.entry(bits.clone()).or_default() += amp * r;
            }
            Move::F(s) | Move::FInv(s) => {
                let left = if s == 0 { 1 } else { bits[s - 1] };
                let right = *bits.get(s + 1).ok_or_else(|| {
                    Error::Parse(format!("F move on site {s} has no outer charge"))
                })?;
                for j in 0..2u8 {
                    // F is real orthogonal, so its inverse is the transpose.
                    let coef = match mv {
                        Move::F(_) => data.f(left, 1, 1, right, bits[s], j),
                        _ => data.f(left, 1, 1, right, j, bits[s]),
                    };
                    if coef != 0.0 {
                        let mut t = bits.clone();
                        t[s] = j;
                        *out.entry(t).or_default() += amp * coef;
                    }
                }
            }
        }
    }
    out.retain(|_, a| a.norm() > 0.0);
    Ok(out)
}

pub fn apply_moves(data: &FibFRData, bits: &[u8], moves: &[Move]) -> Result<Superposition> {
    let mut st = Superposition::new();
    st.insert(bits.to_vec(), c(1.0, 0.0));
    for &m in moves {
        st = apply_move(data, &st, m)?;
    }
    Ok(st)
}

/// Matrix of a move sequence over an ordered basis; column `j` is the image
/// of basis state `j`.
pub fn moves_matrix(data: &FibFRData, basis: &[Vec<u8>], moves: &[Move]) -> Result<CMat> {
    let n = basis.len();
    let mut m = CMat::zeros(n, n);
    for (j, b) in basis.iter().enumerate() {
        for (t, amp) in apply_moves(data, b, moves)? {
            let i = basis
                .iter()
                .position(|x| *x == t)
                .ok_or_else(|| Error::Parse(format!("move left the basis: {t:?}")))?;
            m[(i, j)] += amp;
        }
    }
    Ok(m)
}

fn inverse_moves(moves: &[Move]) -> Vec<Move> {
    moves.iter().rev().map(|m| m.inverse()).collect()
}

/// Exchange of the two anyons fused at `site`: re-associate so the site
/// holds their joint charge, braid, re-associate back.
fn exchange(site: usize) -> [Move; 3] {
    [Move::F(site), Move::R(site), Move::FInv(site)]
}

pub fn bits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

/// Three-anyon basis: `|0⟩ = 01`, `|1⟩ = 11`, then the non-computational
/// `|N⟩ = 10` (total charge 0).
pub const SINGLE_QUBIT_BASIS: [&str; 3] = ["01", "11", "10"];

/// Eight-anyon zero-charge basis over sites `abcdefg`: the computational
/// states `|00⟩, |01⟩, |10⟩, |11⟩` first, then the nine leakage states.
/// The first ket digit is the qubit made of anyons 5..8.
pub const TWO_QUBIT_BASIS: [&str; 13] = [
    "0101010", "1101010", "0101110", "1101110", "1011010", "1011110", "1010110", "0111010",
    "0111110", "0110110", "1111010", "1111110", "1110110",
];

/// Move recipes for the five two-qubit generators. Anyons 4 and 8 are never
/// braided; `σ₃` carries anyon 5 past anyon 3 in front of anyon 4.
pub fn two_qubit_recipe(generator: usize) -> Vec<Move> {
    match generator {
        1 => vec![Move::R(0)],
        2 => exchange(0).to_vec(),
        3 => {
            let mut v = exchange(1).to_vec();
            v.extend(exchange(2));
            v.extend([Move::F(1), Move::RInv(1), Move::FInv(1)]);
            v
        }
        4 => exchange(3).to_vec(),
        5 => exchange(4).to_vec(),
        _ => panic!("two-qubit generator index {generator} out of range"),
    }
}

fn single_qubit_recipe(generator: usize) -> Vec<Move> {
    match generator {
        1 => vec![Move::R(0)],
        2 => exchange(0).to_vec(),
        _ => panic!("single-qubit generator index {generator} out of range"),
    }
}

fn build(basis: &[&str], recipe: &[Move], inverse: bool) -> CMat {
    let basis: Vec<Vec<u8>> = basis.iter().map(|s| bits(s)).collect();
    let moves = if inverse { inverse_moves(recipe) } else { recipe.to_vec() };
    moves_matrix(&FibFRData::default(), &basis, &moves).expect("recipes stay inside the basis")
}

/// Single-qubit Fibonacci generators including the leakage state `|N⟩`.
pub fn fib_single_qubit_generators_3x3() -> [CMat; 2] {
    [1, 2].map(|g| build(&SINGLE_QUBIT_BASIS, &single_qubit_recipe(g), false))
}

/// Single-qubit Fibonacci generators on `{|0⟩, |1⟩}`.
pub fn fib_single_qubit_generators() -> [CMat; 2] {
    fib_single_qubit_generators_3x3().map(|m| m.view((0, 0), (2, 2)).into_owned())
}

/// Four anyons of total charge 0 (sites `abc`, basis `010`, `110`). The
/// third exchange acts like the first.
pub fn fib_four_anyon_generators() -> [CMat; 3] {
    let basis = ["010", "110"];
    [
        build(&basis, &[Move::R(0)], false),
        build(&basis, &exchange(0), false),
        build(&basis, &exchange(1), false),
    ]
}

struct TwoQubitGens {
    fwd: Vec<CMat>,
    inv: Vec<CMat>,
}

fn two_qubit_cache() -> &'static TwoQubitGens {
    static CACHE: OnceLock<TwoQubitGens> = OnceLock::new();
    CACHE.get_or_init(|| TwoQubitGens {
        fwd: (1..=5).map(|g| build(&TWO_QUBIT_BASIS, &two_qubit_recipe(g), false)).collect(),
        inv: (1..=5).map(|g| build(&TWO_QUBIT_BASIS, &two_qubit_recipe(g), true)).collect(),
    })
}

/// The 13×13 generators `σ₁..σ₅`.
pub fn fib_two_qubit_generators() -> Vec<CMat> {
    two_qubit_cache().fwd.clone()
}

/// 13×13 matrix of a signed two-qubit letter `±1..±5`.
pub fn fib_two_qubit_letter(g: i32) -> &'static CMat {
    let cache = two_qubit_cache();
    let i = g.unsigned_abs() as usize - 1;
    if g > 0 {
        &cache.fwd[i]
    } else {
        &cache.inv[i]
    }
}

/// Ising data: `F = H`, `R = e^{-πi/8} diag(1, i)`.
#[derive(Clone, Debug)]
pub struct IsingFRData {
    pub f: CMat,
    pub r: CMat,
}

impl Default for IsingFRData {
    fn default() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let f = from_rows(&[&[c(h, 0.0), c(h, 0.0)], &[c(h, 0.0), c(-h, 0.0)]]);
        let r = diag(&[c(1.0, 0.0), c(0.0, 1.0)]) * expi(-PI / 8.0);
        Self { f, r }
    }
}

/// Ising generators on three anyons: `σ₁ = R`, `σ₂ = F R F`.
pub fn ising_generators_n3() -> [CMat; 2] {
    let d = IsingFRData::default();
    [d.r.clone(), &d.f * &d.r * &d.f]
}

/// Ising generators on four anyons of total charge 0; `σ₃ = σ₁`.
pub fn ising_generators_n4() -> [CMat; 3] {
    let [s1, s2] = ising_generators_n3();
    [s1.clone(), s2, s1]
}

/// Folds a word over `±1..±m` by right multiplication.
pub fn word_matrix(gens: &[CMat], letters: &[i32]) -> CMat {
    let n = gens[0].nrows();
    let inv: Vec<CMat> = gens.iter().map(|g| g.adjoint()).collect();
    let mut m = CMat::identity(n, n);
    for &g in letters {
        let i = g.unsigned_abs() as usize - 1;
        m = if g > 0 { &m * &gens[i] } else { &m * &inv[i] };
    }
    m
}

/// CSV dump (`row,col,re,im`) of a generator in frozen basis order.
pub fn generator_csv(m: &CMat) -> String {
    let mut s = String::from("row,col,re,im\n");
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            s.push_str(&format!("{i},{j},{:.17e},{:.17e}\n", m[(i, j)].re, m[(i, j)].im));
        }
    }
    s
}
