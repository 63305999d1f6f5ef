//! Exhaustive multi-target search over pruned words.
//!
//! Words are multiplied out incrementally as SU(2) pairs `(a, b)` standing
//! for `[[a, b], [-b̄, ā]]`. For SU(2) matrices `|tr(UV†)|/2` is the
//! absolute real part of `a_U ā_V + b_U b̄_V`, so each target costs one
//! complex dot product per visited word.

use rayon::prelude::*;

use super::enumerate::{Automaton, Mode, PruneRules, LETTERS};
use super::{dot_to_distance, fib_letter_matrix};
use crate::linalg::{CMat, Complex64};

/// Dot products closer than this count as ties.
const TIE_EPS: f64 = 1e-13;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Su2 {
    a: Complex64,
    b: Complex64,
}

impl Su2 {
    const ONE: Su2 = Su2 { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0) };

    /// Projects a 2×2 unitary onto SU(2) (the sign choice is irrelevant).
    pub(crate) fn from_unitary(u: &CMat) -> Self {
        let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
        let s = det.sqrt();
        Su2 { a: u[(0, 0)] / s, b: u[(0, 1)] / s }
    }

    #[inline]
    fn mul(self, o: Su2) -> Su2 {
        Su2 { a: self.a * o.a - self.b * o.b.conj(), b: self.a * o.b + self.b * o.a.conj() }
    }

    #[inline]
    fn overlap(self, t: Su2) -> f64 {
        (self.a.re * t.a.re + self.a.im * t.a.im + self.b.re * t.b.re + self.b.im * t.b.im).abs()
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_length: usize,
    pub mode: Mode,
    pub rules: PruneRules,
}

impl SearchConfig {
    /// Default pruning for the mode.
    pub fn new(mode: Mode, max_length: usize) -> Self {
        Self { max_length: max_length.max(1), mode, rules: PruneRules::for_mode(mode) }
    }

    pub fn unpruned(mode: Mode, max_length: usize) -> Self {
        Self { max_length: max_length.max(1), mode, rules: PruneRules::none() }
    }
}

/// Best word for one target.
#[derive(Clone, Debug)]
pub struct SearchHit {
    /// Letters in mode units.
    pub letters: Vec<i32>,
    pub distance: f64,
    /// Best distance over words of exactly each length `0..=max_length`.
    pub best_by_length: Vec<f64>,
}

#[derive(Clone, Debug)]
struct Best {
    overlap: f64,
    word: Vec<i32>,
}

fn rank_key(w: &[i32]) -> (usize, Vec<usize>) {
    (w.len(), w.iter().map(|g| LETTERS.iter().position(|x| x == g).unwrap()).collect())
}

impl Best {
    fn none() -> Self {
        Self { overlap: -1.0, word: Vec::new() }
    }

    fn beaten_by(&self, overlap: f64, word: &[i32]) -> bool {
        if overlap > self.overlap + TIE_EPS {
            true
        } else if overlap >= self.overlap - TIE_EPS {
            rank_key(word) < rank_key(&self.word)
        } else {
            false
        }
    }

    fn merge(self, other: Best) -> Best {
        if self.beaten_by(other.overlap, &other.word) {
            other
        } else {
            self
        }
    }
}

struct Partial {
    best: Vec<Best>,
    by_len: Vec<Vec<f64>>,
}

impl Partial {
    fn new(targets: usize, max_len: usize) -> Self {
        Self { best: vec![Best::none(); targets], by_len: vec![vec![-1.0; max_len + 1]; targets] }
    }

    fn merge(mut self, o: Partial) -> Partial {
        self.best = self.best.into_iter().zip(o.best).map(|(a, b)| a.merge(b)).collect();
        for (a, b) in self.by_len.iter_mut().zip(&o.by_len) {
            for (x, y) in a.iter_mut().zip(b) {
                *x = x.max(*y);
            }
        }
        self
    }
}

struct Walker<'a> {
    gens: [Su2; 4],
    pool_radius_sq: f64,
    pool: Vec<(Vec<i32>, Complex64)>,
    auto: &'a Automaton,
    targets: &'a [Su2],
    max_len: usize,
    word: Vec<i32>,
    out: Partial,
}

impl Walker<'_> {
    fn record(&mut self, m: Su2) {
        let len = self.word.len();
        if m.b.norm_sqr() < self.pool_radius_sq {
            self.pool.push((self.word.clone(), m.a));
        }
        for (t, target) in self.targets.iter().enumerate() {
            let ov = m.overlap(*target);
            let bl = &mut self.out.by_len[t][len];
            if ov > *bl {
                *bl = ov;
            }
            if ov >= self.out.best[t].overlap - TIE_EPS && self.out.best[t].beaten_by(ov, &self.word) {
                self.out.best[t] = Best { overlap: ov, word: self.word.clone() };
            }
        }
    }

    fn visit(&mut self, m: Su2, state: u32) {
        self.record(m);
        if self.word.len() == self.max_len {
            return;
        }
        for i in 0..4 {
            if let Some(s) = self.auto.next[state as usize][i] {
                self.word.push(LETTERS[i]);
                self.visit(m.mul(self.gens[i]), s);
                self.word.pop();
            }
        }
    }
}

/// SU(2) images of the four letters of a mode.
pub(crate) fn letter_images(mode: Mode) -> [Su2; 4] {
    LETTERS.map(|g| {
        let m = fib_letter_matrix(g);
        let m = if mode == Mode::Weave { &m * &m } else { m };
        Su2::from_unitary(&m)
    })
}

/// Words whose SU(2) image is within a radius of the diagonal subgroup,
/// kept for answering diagonal (phase-gate) targets without another pass.
#[derive(Clone, Debug, Default)]
pub struct DiagonalPool {
    pub radius: f64,
    /// Letters and the diagonal entry `a` of the SU(2) image.
    pub entries: Vec<(Vec<i32>, Complex64)>,
}

impl DiagonalPool {
    /// Best pool word for a diagonal target. A word at distance `D` from a
    /// diagonal target has off-diagonal modulus at most `D`, so the answer
    /// is the global optimum whenever its distance is at most `radius`.
    pub fn best(&self, target: &CMat) -> Option<SearchHit> {
        if target[(0, 1)].norm() > 1e-12 || target[(1, 0)].norm() > 1e-12 {
            return None;
        }
        let t = Su2::from_unitary(target);
        let mut best = Best::none();
        for (w, a) in &self.entries {
            let ov = Su2 { a: *a, b: Complex64::new(0.0, 0.0) }.overlap(t);
            if best.beaten_by(ov, w) {
                best = Best { overlap: ov, word: w.clone() };
            }
        }
        if best.overlap < 0.0 {
            return None;
        }
        Some(SearchHit { letters: best.word, distance: dot_to_distance(best.overlap), best_by_length: Vec::new() })
    }
}

/// Searches every retained word up to `cfg.max_length` for all targets at
/// once. The word tree is split by first letter and searched in parallel.
pub fn search_many(targets: &[CMat], cfg: &SearchConfig) -> Vec<SearchHit> {
    search_with_pool(targets, cfg, 0.0).0
}

/// As [`search_many`], also collecting every word within `pool_radius` of
/// the diagonal subgroup (off-diagonal modulus below the radius).
pub fn search_with_pool(targets: &[CMat], cfg: &SearchConfig, pool_radius: f64) -> (Vec<SearchHit>, DiagonalPool) {
    let gens = letter_images(cfg.mode);
    let auto = Automaton::new(&cfg.rules);
    let tq: Vec<Su2> = targets.iter().map(Su2::from_unitary).collect();
    let walker = |prefix: Option<usize>| {
        let mut w = Walker {
            gens,
            pool_radius_sq: pool_radius * pool_radius,
            pool: Vec::new(),
            auto: &auto,
            targets: &tq,
            max_len: cfg.max_length,
            word: Vec::with_capacity(cfg.max_length),
            out: Partial::new(tq.len(), cfg.max_length),
        };
        match prefix {
            None => w.record(Su2::ONE),
            Some(i) => {
                if let Some(s) = auto.next[0][i] {
                    w.word.push(LETTERS[i]);
                    w.visit(gens[i], s);
                }
            }
        }
        (w.out, w.pool)
    };
    let (root, mut pool) = walker(None);
    let parts: Vec<(Partial, Vec<(Vec<i32>, Complex64)>)> = (0..4usize).into_par_iter().map(|i| walker(Some(i))).collect();
    let mut total = root;
    for (p, entries) in parts {
        total = total.merge(p);
        pool.extend(entries);
    }
    let hits = total
        .best
        .into_iter()
        .zip(total.by_len)
        .map(|(b, by_len)| SearchHit {
            letters: b.word,
            distance: dot_to_distance(b.overlap),
            best_by_length: by_len.into_iter().map(dot_to_distance).collect(),
        })
        .collect();
    (hits, DiagonalPool { radius: pool_radius, entries: pool })
}
