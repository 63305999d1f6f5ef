//! Hand-checked Fibonacci words from the literature, as
//! `(generator, power)` syllables expanded to elementary letters.

type Syllables = &'static [(i32, i32)];

const HADAMARD: Syllables = &[
    (2, -4), (1, -4), (2, 2), (1, 4), (2, 2), (1, -2), (2, -4),
    (1, -2), (2, -2), (1, -2), (2, -2), (1, 2), (2, -2),
];
const PHASE: Syllables = &[
    (2, 2), (1, -4), (2, -2), (1, 2), (2, 2), (1, 4), (2, -4),
    (1, -4), (2, 2), (1, -2), (2, 4), (1, 2), (2, 2),
];
const INJECTION: Syllables = &[
    (2, 3), (1, -2), (2, -4), (1, 2), (2, 4), (1, 2), (2, -2), (1, -2), (2, -4),
    (1, -4), (2, -2), (1, 4), (2, 2), (1, -2), (2, 2), (1, 2), (2, -2), (1, 3),
];
const NOT: Syllables = &[
    (1, -2), (2, -4), (1, 4), (2, -2), (1, 2), (2, 2), (1, -2), (2, 4), (1, -2),
    (2, 4), (1, 2), (2, -4), (1, 2), (2, -2), (1, 2), (2, -2), (1, -2),
];

pub fn expand(syllables: &[(i32, i32)]) -> Vec<i32> {
    syllables
        .iter()
        .flat_map(|&(g, p)| std::iter::repeat_n(g * p.signum(), p.unsigned_abs() as usize))
        .collect()
}

/// Approximates the Hadamard gate (error about 0.003).
pub fn hadamard() -> Vec<i32> {
    expand(HADAMARD)
}

/// Approximates `diag(1, −i)` (error about 0.0045).
pub fn phase() -> Vec<i32> {
    expand(PHASE)
}

/// Approximates the identity while moving the warp from the middle to the
/// right edge and back in from the left (error about 0.0015).
pub fn injection() -> Vec<i32> {
    expand(INJECTION)
}

/// Approximates `i·X` (error about 0.00086).
pub fn not() -> Vec<i32> {
    expand(NOT)
}
