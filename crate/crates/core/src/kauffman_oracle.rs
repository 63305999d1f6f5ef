//! Exact Kauffman bracket and Jones polynomial of braid closures.
//!
//! Everything is kept as an integer Laurent polynomial in `A`; the variable
//! `t = A^{-4}` only appears when printing or evaluating.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::knot_theory::{writhe, ClosedKnot, Closure};
use crate::linalg::{expi, Complex64};

pub const DEFAULT_CROSSING_LIMIT: usize = 24;

/// Integer Laurent polynomial in `A`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coef: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(coef, exp);
        p
    }

    pub fn from_terms(terms: &[(i32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    /// The loop value `d = -A^2 - A^{-2}`.
    pub fn loop_value() -> Self {
        Self::from_terms(&[(2, -1), (-2, -1)])
    }

    fn add_term(&mut self, coef: i64, exp: i32) {
        if coef == 0 {
            return;
        }
        let e = self.terms.entry(exp).or_insert(0);
        *e += coef;
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiplies by `A^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + shift, c)).collect() }
    }

    /// Evaluates at a complex value of `A` given as `A = e^{iθ}`.
    pub fn eval_on_circle(&self, theta: f64) -> Complex64 {
        self.terms().map(|(e, c)| expi(theta * e as f64) * c as f64).sum()
    }

    /// Sorted `exp:coef` list, the form the CLI prints.
    pub fn exp_coef_list(&self) -> String {
        let v: Vec<String> = self.terms().map(|(e, c)| format!("{e}:{c}")).collect();
        v.join(" ")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ca * cb, ea + eb);
            }
        }
        out
    }
}

/// Appends `c·body` with the sign handling of a running sum.
fn push_term(out: &mut String, first: bool, c: i64, body: &str) {
    if first {
        if c < 0 {
            out.push('-');
        }
    } else {
        out.push_str(if c < 0 { " - " } else { " + " });
    }
    let a = c.abs();
    if body.is_empty() {
        out.push_str(&a.to_string());
    } else if a == 1 {
        out.push_str(body);
    } else {
        out.push_str(&format!("{a}{body}"));
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `A^7 - A^3 - A^-5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let body = match *e {
                0 => String::new(),
                1 => "A".to_string(),
                e => format!("A^{e}"),
            };
            push_term(&mut s, i == 0, *c, &body);
        }
        f.write_str(&s)
    }
}

/// Normalised bracket `f_K(A) = (-A^3)^{-w} <K>`, i.e. the Jones polynomial
/// written in `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesValue {
    pub poly_in_a: LaurentPoly,
}

impl JonesValue {
    /// Value at `t = e^{2πi/k}` on the branch `A = i e^{-πi/2k}`.
    pub fn eval(&self, k: u32) -> Complex64 {
        eval_at_root(&self.poly_in_a, k)
    }

    /// Human form in `t`, highest power first, e.g. `-t^{5/2} - t^{1/2}`.
    pub fn to_t_string(&self) -> String {
        if self.poly_in_a.is_zero() {
            return "0".into();
        }
        // t = A^{-4}: increasing A-exponent is decreasing t-power.
        let mut s = String::new();
        for (i, (e, c)) in self.poly_in_a.terms().enumerate() {
            push_term(&mut s, i == 0, c, &t_power(-e));
        }
        s
    }
}

/// `t^{q/4}` with the exponent reduced to lowest terms.
fn t_power(quarters: i32) -> String {
    if quarters == 0 {
        return String::new();
    }
    let g = gcd(quarters.unsigned_abs(), 4) as i32;
    let (num, den) = (quarters / g, 4 / g);
    match (num, den) {
        (1, 1) => "t".into(),
        (n, 1) => format!("t^{n}"),
        (n, d) => format!("t^{{{n}/{d}}}"),
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Argument of the bracket variable at level `k`: `A = i e^{-πi/2k}`.
pub fn root_angle(k: u32) -> f64 {
    PI / 2.0 - PI / (2.0 * k as f64)
}

/// The bracket variable `A = i e^{-πi/2k}`. With this choice
/// `t^{1/2} = A^{-2} = -e^{πi/k}`, not the principal root.
pub fn root_a(k: u32) -> Complex64 {
    expi(root_angle(k))
}

/// Writhe normalisation `(-A^3)^{-w}`, which is `(-t^{-3/4})^{-w}` on the
/// branch fixed by [`root_a`]. Shared by every Jones evaluation.
pub fn writhe_factor(w: i32, k: u32) -> Complex64 {
    let sign = if w % 2 == 0 { 1.0 } else { -1.0 };
    expi(-3.0 * w as f64 * root_angle(k)) * sign
}

pub fn eval_at_root(p: &LaurentPoly, k: u32) -> Complex64 {
    assert!(k >= 3, "level k must be at least 3");
    p.eval_on_circle(root_angle(k))
}

/// Kauffman bracket with the default crossing limit.
pub fn bracket(k: &ClosedKnot) -> Result<LaurentPoly> {
    bracket_with_limit(k, DEFAULT_CROSSING_LIMIT)
}

/// Kauffman bracket of the closure, normalised so the unknot is 1.
///
/// Crossings are resolved bottom to top while tracking the planar pairing
/// of the `2n` open ends (bottom row `0..n`, current top row `n..2n`).
/// States with the same pairing are merged, so the cost is linear in the
/// number of crossings for a fixed strand count.
///
/// A positive letter contributes `A·(cup-cap) + A^{-1}·(identity)`, a
/// negative one the same with `A` and `A^{-1}` exchanged.
pub fn bracket_with_limit(k: &ClosedKnot, limit: usize) -> Result<LaurentPoly> {
    let crossings = k.braid.len();
    if crossings > limit {
        return Err(Error::CrossingLimit { crossings, limit });
    }
    let n = k.strands();
    let d = LaurentPoly::loop_value();
    let start: Vec<u8> = (0..2 * n).map(|p| ((p + n) % (2 * n)) as u8).collect();
    let mut states: HashMap<Vec<u8>, LaurentPoly> = HashMap::new();
    states.insert(start, LaurentPoly::one());
    for &g in k.braid.letters() {
        let i = g.unsigned_abs() as usize - 1;
        let (cup_exp, id_exp) = if g > 0 { (1, -1) } else { (-1, 1) };
        let mut next: HashMap<Vec<u8>, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for (m, coef) in states {
            let keep = coef.shift(id_exp);
            accumulate(&mut next, m.clone(), keep);
            let (p, q) = (n + i, n + i + 1);
            let mut m2 = m;
            let mut c2 = coef.shift(cup_exp);
            let (x, y) = (m2[p] as usize, m2[q] as usize);
            if x == q {
                c2 = &c2 * &d;
            } else {
                m2[x] = y as u8;
                m2[y] = x as u8;
                m2[p] = q as u8;
                m2[q] = p as u8;
            }
            accumulate(&mut next, m2, c2);
        }
        states = next;
    }
    let mut total = LaurentPoly::zero();
    for (m, coef) in states {
        let loops = count_loops(&m, n, k.closure);
        total = &total + &(&coef * &d.pow(loops - 1));
    }
    Ok(total)
}

fn accumulate(map: &mut HashMap<Vec<u8>, LaurentPoly>, key: Vec<u8>, val: LaurentPoly) {
    match map.get_mut(&key) {
        Some(v) => *v = &*v + &val,
        None => {
            map.insert(key, val);
        }
    }
}

/// Closed loops formed by a pairing of the `2n` ends plus the closure arcs.
fn count_loops(m: &[u8], n: usize, closure: Closure) -> u32 {
    let arc = |p: usize| -> usize {
        match closure {
            Closure::Trace => (p + n) % (2 * n),
            Closure::Plat => {
                if p < n {
                    p ^ 1
                } else {
                    n + ((p - n) ^ 1)
                }
            }
        }
    };
    let mut seen = vec![false; 2 * n];
    let mut loops = 0;
    for s in 0..2 * n {
        if seen[s] {
            continue;
        }
        loops += 1;
        let mut p = s;
        loop {
            seen[p] = true;
            let q = m[p] as usize;
            seen[q] = true;
            p = arc(q);
            if p == s {
                break;
            }
        }
    }
    loops
}

pub fn jones(k: &ClosedKnot) -> Result<JonesValue> {
    let b = bracket(k)?;
    let w = writhe(k);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(JonesValue { poly_in_a: &b.shift(-3 * w) * &LaurentPoly::monomial(sign, 0) })
}
