//! Reduced binary quadratic forms and the class numbers they count.

use std::collections::{BTreeSet, HashMap};

use num_integer::Roots;
use serde::Serialize;

/// `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `(a, b, c) -> (-a, b, -c)`.
    pub fn negate(&self) -> Self {
        Self::new(-self.a, self.b, -self.c)
    }
}

fn divisors(n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out
}

/// Reduced positive-definite forms of discriminant `delta < 0`:
/// `|b| <= a <= c`, with `b >= 0` whenever `|b| = a` or `a = c`.
pub fn reduced_forms_imaginary(delta: i64) -> Vec<QuadraticForm> {
    assert!(delta < 0);
    let n = -delta;
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a..=a {
            let num = b * b - delta;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            out.push(QuadraticForm::new(a, b, c));
        }
        a += 1;
    }
    out
}

/// Reduced indefinite form of non-square discriminant `d`: `0 < b < √d` and
/// `√d − b < 2|a| < √d + b`, tested with integers only.
fn is_reduced_indefinite(f: &QuadraticForm, d: i64) -> bool {
    let two_a = 2 * f.a.abs();
    let b = f.b;
    if b <= 0 || b * b >= d {
        return false;
    }
    let lower = (two_a + b) * (two_a + b) > d;
    let upper = two_a - b <= 0 || (two_a - b) * (two_a - b) < d;
    lower && upper
}

/// All reduced indefinite forms of discriminant `d > 0` (non-square).
pub fn reduced_forms_indefinite(d: i64) -> Vec<QuadraticForm> {
    assert!(d > 0);
    let r = d.sqrt();
    let mut out = BTreeSet::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= r {
        if b * b < d {
            let n = (d - b * b) / 4;
            for a in divisors(n) {
                for f in [QuadraticForm::new(a, b, -n / a), QuadraticForm::new(-a, b, n / a)] {
                    if is_reduced_indefinite(&f, d) {
                        out.insert(f);
                    }
                }
            }
        }
        b += 2;
    }
    out.into_iter().collect()
}

/// The reduction step `(a, b, c) -> (c, b', (b'^2 - d)/(4c))` with `b' ≡ -b mod 2|c|`
/// and `√d − 2|c| < b' < √d`.
pub fn rho(f: &QuadraticForm, d: i64) -> QuadraticForm {
    let r = d.sqrt();
    let m = 2 * f.c.abs();
    let lo = r - m + 1;
    let b_prime = lo + (-f.b - lo).rem_euclid(m);
    QuadraticForm::new(f.c, b_prime, (b_prime * b_prime - d) / (4 * f.c))
}

/// Cycles of reduced forms under [`rho`], each listed from its smallest form.
pub fn reduction_cycles(d: i64) -> Vec<Vec<QuadraticForm>> {
    let forms = reduced_forms_indefinite(d);
    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for f in &forms {
        if seen.contains(f) {
            continue;
        }
        let mut cycle = vec![*f];
        seen.insert(*f);
        let mut g = rho(f, d);
        while g != *f {
            debug_assert!(is_reduced_indefinite(&g, d), "rho left the reduced set");
            seen.insert(g);
            cycle.push(g);
            g = rho(&g, d);
        }
        cycles.push(cycle);
    }
    cycles
}

/// Number of orbits of the cycles under `(a, b, c) -> (-a, b, -c)`.
pub fn cycles_modulo_negation(cycles: &[Vec<QuadraticForm>]) -> usize {
    let index: HashMap<QuadraticForm, usize> = cycles.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |f| (*f, i))).collect();
    let mut visited = vec![false; cycles.len()];
    let mut orbits = 0;
    for i in 0..cycles.len() {
        if visited[i] {
            continue;
        }
        orbits += 1;
        visited[i] = true;
        let j = index[&cycles[i][0].negate()];
        visited[j] = true;
    }
    orbits
}
