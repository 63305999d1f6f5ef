//! Word enumeration with pruning of letters that cannot yield new matrices.

use std::collections::{BTreeSet, HashMap};

/// Braid mode: letters are single exchanges `σ_i^{±1}`. Weave mode: letters
/// are full twists `σ_i^{±2}` of the middle strand with a neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Braid,
    Weave,
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "braid" => Ok(Mode::Braid),
            "weave" => Ok(Mode::Weave),
            o => Err(crate::Error::Parse(format!("unknown mode '{o}'"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Braid => "braid",
            Mode::Weave => "weave",
        })
    }
}

/// The four letters in enumeration order. This order also defines the
/// shortlex order used to pick which of two equal patterns is rejected.
pub const LETTERS: [i32; 4] = [1, 2, -1, -2];

fn rank(g: i32) -> usize {
    LETTERS.iter().position(|&x| x == g).expect("letter in alphabet")
}

fn shortlex_less(a: &[i32], b: &[i32]) -> bool {
    (a.len(), a.iter().map(|&g| rank(g)).collect::<Vec<_>>())
        < (b.len(), b.iter().map(|&g| rank(g)).collect::<Vec<_>>())
}

/// Rejection rules for one mode.
#[derive(Clone, Debug)]
pub struct PruneRules {
    /// Words containing `g, -g` are rejected.
    pub cancel: bool,
    /// Runs of this many identical letters are rejected (0 disables).
    pub max_run: usize,
    /// Rejected subwords; each equals a shortlex-smaller word of the same
    /// or shorter length, so removing them never loses a matrix.
    pub patterns: Vec<Vec<i32>>,
}

impl PruneRules {
    pub fn none() -> Self {
        Self { cancel: false, max_run: 0, patterns: Vec::new() }
    }

    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            // σ^6 = σ^{-4}, so six in a row is never needed.
            Mode::Braid => Self { cancel: true, max_run: 6, patterns: braid_patterns() },
            // A run of three full twists is σ^6 again.
            Mode::Weave => Self { cancel: true, max_run: 3, patterns: Vec::new() },
        }
    }

    /// Longest suffix the rules ever inspect.
    pub fn window(&self) -> usize {
        let p = self.patterns.iter().map(Vec::len).max().unwrap_or(0);
        p.max(self.max_run).max(2)
    }

    /// Whether appending `g` to a word ending in `suffix` (which already
    /// passed) keeps it acceptable.
    pub fn accepts(&self, suffix: &[i32], g: i32) -> bool {
        if self.cancel && suffix.last() == Some(&-g) {
            return false;
        }
        if self.max_run > 0 && suffix.len() + 1 >= self.max_run {
            let tail = &suffix[suffix.len() + 1 - self.max_run..];
            if tail.iter().all(|&x| x == g) {
                return false;
            }
        }
        self.patterns.iter().any(|p| {
            let k = p.len();
            k <= suffix.len() + 1 && p[k - 1] == g && suffix[suffix.len() + 1 - k..] == p[..k - 1]
        }) == false
    }

    /// Whole-word check used by brute-force oracles.
    pub fn accepts_word(&self, w: &[i32]) -> bool {
        (0..w.len()).all(|i| self.accepts(&w[..i], w[i]))
    }
}

fn inv(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|g| -g).collect()
}

fn mirror(w: &[i32]) -> Vec<i32> {
    w.iter().map(|&g| g.signum() * (3 - g.abs())).collect()
}

fn negate(w: &[i32]) -> Vec<i32> {
    w.iter().map(|g| -g).collect()
}

/// Length-3 identities of the three-strand braid group: the braid relation
/// `σ₁σ₂σ₁ = σ₂σ₁σ₂` and `σ₂σ₁σ₂⁻¹ = σ₁⁻¹σ₂σ₁`, closed under inversion,
/// exchanging `σ₁ ↔ σ₂` and inverting every letter.
pub fn triplet_identities() -> Vec<(Vec<i32>, Vec<i32>)> {
    let base = [(vec![1, 2, 1], vec![2, 1, 2]), (vec![2, 1, -2], vec![-1, 2, 1])];
    let mut seen: BTreeSet<(Vec<i32>, Vec<i32>)> = BTreeSet::new();
    let mut todo: Vec<(Vec<i32>, Vec<i32>)> = base.to_vec();
    while let Some((a, b)) = todo.pop() {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if !seen.insert(key) {
            continue;
        }
        for f in [inv, mirror, negate] {
            todo.push((f(&a), f(&b)));
        }
    }
    seen.into_iter().collect()
}

/// Rejected braid patterns: the shortlex-larger side of every triplet
/// identity, plus four-letter words `Tx` / `xT` whose kept triplet `T`
/// equals a triplet that cancels against `x`.
pub fn braid_patterns() -> Vec<Vec<i32>> {
    let mut out: BTreeSet<Vec<i32>> = BTreeSet::new();
    for (a, b) in triplet_identities() {
        let (keep, drop) = if shortlex_less(&a, &b) { (a, b) } else { (b, a) };
        for x in LETTERS {
            if drop[2] == -x {
                out.insert([keep.clone(), vec![x]].concat());
            }
            if drop[0] == -x {
                out.insert([vec![x], keep.clone()].concat());
            }
        }
        out.insert(drop);
    }
    // Drop patterns already implied by a shorter rejected subword or by a
    // cancellation, so the list stays minimal.
    let triplets: Vec<Vec<i32>> = out.iter().filter(|p| p.len() == 3).cloned().collect();
    out.into_iter()
        .filter(|p| {
            p.len() == 3
                || !(p.windows(2).any(|w| w[0] == -w[1]) || triplets.iter().any(|t| p.windows(3).any(|w| w == &t[..])))
        })
        .collect()
}

/// All accepted words of exactly `length` letters, built by extending the
/// accepted words one letter shorter.
pub fn enumerate_words(rules: &PruneRules, length: usize) -> Vec<Vec<i32>> {
    let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..length {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for w in &layer {
            for g in LETTERS {
                if rules.accepts(w, g) {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    layer
}

/// The rules compiled into a finite automaton over the last few letters.
/// State 0 is the empty word; `next[state][i]` follows `LETTERS[i]`.
#[derive(Clone, Debug)]
pub struct Automaton {
    pub next: Vec<[Option<u32>; 4]>,
}

impl Automaton {
    pub fn new(rules: &PruneRules) -> Self {
        let keep = rules.window().saturating_sub(1).max(1);
        let mut ids: HashMap<Vec<i32>, u32> = HashMap::from([(Vec::new(), 0)]);
        let mut suffixes: Vec<Vec<i32>> = vec![Vec::new()];
        let mut next = Vec::new();
        let mut s = 0;
        while s < suffixes.len() {
            let mut row = [None; 4];
            for (i, g) in LETTERS.into_iter().enumerate() {
                if rules.accepts(&suffixes[s], g) {
                    let mut t = suffixes[s].clone();
                    t.push(g);
                    if t.len() > keep {
                        t.remove(0);
                    }
                    let id = *ids.entry(t.clone()).or_insert_with(|| {
                        suffixes.push(t);
                        suffixes.len() as u32 - 1
                    });
                    row[i] = Some(id);
                }
            }
            next.push(row);
            s += 1;
        }
        Self { next }
    }
}

/// Number of accepted words of each length `0..=max_len`, by dynamic
/// programming over automaton states.
pub fn count_words(rules: &PruneRules, max_len: usize) -> Vec<u64> {
    let auto = Automaton::new(rules);
    let mut ways = vec![0u64; auto.next.len()];
    ways[0] = 1;
    let mut counts = vec![1u64];
    for _ in 0..max_len {
        let mut nw = vec![0u64; ways.len()];
        for (s, &n) in ways.iter().enumerate() {
            if n > 0 {
                for t in auto.next[s].iter().flatten() {
                    nw[*t as usize] += n;
                }
            }
        }
        counts.push(nw.iter().sum());
        ways = nw;
    }
    counts
}
