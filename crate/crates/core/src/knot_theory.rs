//! Braid words, closures and writhe.
//!
//! A letter `g > 0` is the generator `b_g` crossing strands `g` and `g+1`,
//! `g < 0` its inverse. Words are read left to right in time order; matrix
//! images fold by right multiplication, `M(w) = M(w_1) M(w_2) ... M(w_m)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, CMat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidLetter { letter: g, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    /// Reverses the order and negates every letter.
    pub fn inverse(&self) -> Self {
        Self { strands: self.strands, letters: invert_letters(&self.letters) }
    }

    /// Cancels adjacent `(g, -g)` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        Self { strands: self.strands, letters: free_reduce_letters(&self.letters) }
    }
}

pub fn invert_letters(letters: &[i32]) -> Vec<i32> {
    letters.iter().rev().map(|g| -g).collect()
}

pub fn free_reduce_letters(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &g in letters {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Closure {
    Trace,
    Plat,
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Closure::Trace => "trace",
            Closure::Plat => "plat",
        })
    }
}

impl FromStr for Closure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trace" => Ok(Closure::Trace),
            "plat" => Ok(Closure::Plat),
            other => Err(Error::Parse(format!("unknown closure '{other}'"))),
        }
    }
}

/// A braid together with the way its ends are joined.
///
/// Each closed component is oriented by entering the braid upward at its
/// lowest-numbered bottom endpoint. Components listed in `reversed` (indexed
/// in that same order) are traversed the other way instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedKnot {
    pub braid: BraidWord,
    pub closure: Closure,
    pub reversed: Vec<usize>,
}

impl ClosedKnot {
    pub fn new(braid: BraidWord, closure: Closure) -> Result<Self> {
        if closure == Closure::Plat && braid.strands() % 2 != 0 {
            return Err(Error::OddPlatStrands(braid.strands()));
        }
        Ok(Self { braid, closure, reversed: Vec::new() })
    }

    pub fn trace(strands: usize, letters: Vec<i32>) -> Result<Self> {
        Self::new(BraidWord::new(strands, letters)?, Closure::Trace)
    }

    pub fn plat(strands: usize, letters: Vec<i32>) -> Result<Self> {
        Self::new(BraidWord::new(strands, letters)?, Closure::Plat)
    }

    pub fn strands(&self) -> usize {
        self.braid.strands()
    }

    /// Direction (+1 up, -1 down) of every braid strand, indexed by the
    /// strand's bottom position, plus the component each strand belongs to.
    pub fn orientation(&self) -> (Vec<i32>, Vec<usize>) {
        let n = self.strands();
        // top[s]: final position of the strand starting at bottom s.
        let mut pos: Vec<usize> = (0..n).collect();
        for &g in self.braid.letters() {
            let i = g.unsigned_abs() as usize - 1;
            pos.swap(i, i + 1);
        }
        // pos[p] = strand occupying position p at the top.
        let mut top = vec![0; n];
        for (p, &s) in pos.iter().enumerate() {
            top[s] = p;
        }
        let mut dir = vec![0i32; n];
        let mut comp = vec![usize::MAX; n];
        let mut ncomp = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let sign = if self.reversed.contains(&ncomp) { -1 } else { 1 };
            let (mut s, mut up) = (start, true);
            while comp[s] == usize::MAX {
                comp[s] = ncomp;
                dir[s] = if up { sign } else { -sign };
                match (self.closure, up) {
                    (Closure::Trace, _) => s = top[s],
                    (Closure::Plat, true) => {
                        s = pos[top[s] ^ 1];
                        up = false;
                    }
                    (Closure::Plat, false) => {
                        s ^= 1;
                        up = true;
                    }
                }
            }
            ncomp += 1;
        }
        (dir, comp)
    }

    pub fn components(&self) -> usize {
        self.orientation().1.into_iter().max().map_or(0, |m| m + 1)
    }
}

/// Writhe of the oriented closure, by following strands through each
/// crossing. For trace closures this equals minus the exponent sum.
pub fn writhe(k: &ClosedKnot) -> i32 {
    let (dir, _) = k.orientation();
    let mut at: Vec<usize> = (0..k.strands()).collect();
    let mut w = 0;
    for &g in k.braid.letters() {
        let i = g.unsigned_abs() as usize - 1;
        let (a, b) = (at[i], at[i + 1]);
        w -= g.signum() * dir[a] * dir[b];
        at.swap(i, i + 1);
    }
    w
}

/// Yang-Baxter and far-commutativity check on an indexed generator family.
pub fn verify_braid_relations(gens: &[CMat], tol: f64) -> Result<bool> {
    let Some(first) = gens.first() else {
        return Ok(true);
    };
    if gens.iter().any(|g| g.shape() != first.shape() || !g.is_square()) {
        return Err(Error::DimensionMismatch);
    }
    for i in 0..gens.len() {
        if i + 1 < gens.len() {
            let (a, b) = (&gens[i], &gens[i + 1]);
            if max_abs_diff(&(a * b * a), &(b * a * b)) > tol {
                return Ok(false);
            }
        }
        for j in i + 2..gens.len() {
            let (a, b) = (&gens[i], &gens[j]);
            if max_abs_diff(&(a * b), &(b * a)) > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Built-in knots: `(name, trace strands, trace word, plat word on 4 strands)`.
pub const KNOT_TABLE: &[(&str, usize, &[i32], &[i32])] = &[
    ("unknot", 1, &[], &[]),
    ("hopf+", 2, &[-1, -1], &[2, 2]),
    ("hopf-", 2, &[1, 1], &[-2, -2]),
    ("trefoilL", 2, &[1, 1, 1], &[-2, 1, -2]),
    ("trefoilR", 2, &[-1, -1, -1], &[2, -1, 2]),
    ("fig8", 3, &[-2, 1, -2, 1], &[-2, -2, 1, -2]),
];

/// Looks up a built-in knot. The plat unknot uses two strands.
pub fn named_knot(name: &str, closure: Closure) -> Result<ClosedKnot> {
    let (_, n, tr, pl) = KNOT_TABLE
        .iter()
        .find(|(n, ..)| *n == name)
        .ok_or_else(|| Error::Parse(format!("unknown knot '{name}'")))?;
    match closure {
        Closure::Trace => ClosedKnot::trace(*n, tr.to_vec()),
        Closure::Plat if name == "unknot" => ClosedKnot::plat(2, Vec::new()),
        Closure::Plat => ClosedKnot::plat(4, pl.to_vec()),
    }
}

/// The five knots used throughout the test suites.
pub const TEST_KNOTS: [&str; 5] = ["hopf+", "hopf-", "trefoilL", "trefoilR", "fig8"];

impl fmt::Display for ClosedKnot {
    /// `n=<strands> closure=<trace|plat>` then the letters on one line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} closure={}", self.strands(), self.closure)?;
        let body: Vec<String> = self.braid.letters().iter().map(i32::to_string).collect();
        writeln!(f, "{}", body.join(" "))
    }
}

impl FromStr for ClosedKnot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty braid file".into()))?;
        let (mut n, mut closure) = (None, None);
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("n", v)) => {
                    n = Some(v.parse::<usize>().map_err(|e| Error::Parse(format!("n: {e}")))?)
                }
                Some(("closure", v)) => closure = Some(v.parse::<Closure>()?),
                _ => return Err(Error::Parse(format!("bad header field '{field}'"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("header lacks n=".into()))?;
        let closure = closure.ok_or_else(|| Error::Parse("header lacks closure=".into()))?;
        let letters = lines
            .flat_map(str::split_whitespace)
            .map(|t| t.parse::<i32>().map_err(|e| Error::Parse(format!("letter '{t}': {e}"))))
            .collect::<Result<Vec<_>>>()?;
        ClosedKnot::new(BraidWord::new(n, letters)?, closure)
    }
}
