//! Kronecker symbols and the real characters attached to quadratic discriminants.

use num_integer::Integer;

use super::ExactError;

/// Jacobi symbol `(a/n)` for odd `n > 0`.
fn jacobi(a: i64, n: i64) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(delta/2)`.
fn kronecker_two(delta: i64) -> i8 {
    match delta.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// The Kronecker symbol `(delta/n)`, extended to all integers `n`.
///
/// `(delta/-1)` is `-1` for negative `delta` and `+1` otherwise, and
/// `(delta/0)` is `1` exactly when `|delta| = 1`.
pub fn kronecker(delta: i64, n: i64) -> i8 {
    if n == 0 {
        return if delta.abs() == 1 { 1 } else { 0 };
    }
    let mut result = if n < 0 && delta < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs() as i64;
    let twos = m.trailing_zeros();
    if twos > 0 {
        let t = kronecker_two(delta);
        if t == 0 {
            return 0;
        }
        if twos % 2 == 1 {
            result *= t;
        }
        m >>= twos;
    }
    result * jacobi(delta, m)
}

/// Square-free test by trial division.
pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// True for discriminants of quadratic fields (positive or negative), and never for 1.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// The real primitive character `n -> (D/n)` of conductor `|D|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KroneckerCharacter {
    discriminant: i64,
}

impl KroneckerCharacter {
    /// Character of a fundamental discriminant; `1` gives the trivial character.
    pub fn new(discriminant: i64) -> Result<Self, ExactError> {
        if discriminant == 1 || is_fundamental_discriminant(discriminant) {
            Ok(Self { discriminant })
        } else {
            Err(ExactError::NotFundamental(discriminant))
        }
    }

    pub fn trivial() -> Self {
        Self { discriminant: 1 }
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// Period (= conductor) of the character.
    pub fn modulus(&self) -> u64 {
        self.discriminant.unsigned_abs()
    }

    pub fn is_trivial(&self) -> bool {
        self.discriminant == 1
    }

    /// `chi(-1)`: `+1` for even characters (real quadratic), `-1` for odd ones.
    pub fn parity(&self) -> i8 {
        if self.discriminant < 0 {
            -1
        } else {
            1
        }
    }

    pub fn value(&self, n: i64) -> i8 {
        if self.is_trivial() {
            return 1;
        }
        if n.gcd(&self.discriminant) != 1 {
            return 0;
        }
        kronecker(self.discriminant, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Euler's criterion for an odd prime modulus.
    fn legendre_by_power(a: i64, p: i64) -> i8 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        let mut r = 1i64;
        let mut b = a;
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        if r == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn spot_values() {
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(5, 5), 0);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, -1), -1);
        assert_eq!(kronecker(5, -1), 1);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(5, 0), 0);
    }

    #[test]
    fn agrees_with_euler_criterion_at_odd_primes() {
        let primes = [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
        for &p in &primes {
            for d in -60i64..60 {
                assert_eq!(kronecker(d, p), legendre_by_power(d, p), "({d}/{p})");
            }
        }
    }

    #[test]
    fn completely_multiplicative_in_n() {
        for d in [-24i64, -7, -3, 5, 8, 12, 13, 21, 40] {
            for m in -30i64..30 {
                for n in -30i64..30 {
                    assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
                }
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        let positive: Vec<i64> = (1..45).filter(|&d| is_fundamental_discriminant(d)).collect();
        assert_eq!(positive, vec![5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44]);
        let negative: Vec<i64> = (-24..0).rev().filter(|&d| is_fundamental_discriminant(d)).collect();
        assert_eq!(negative, vec![-3, -4, -7, -8, -11, -15, -19, -20, -23, -24]);
        assert!(KroneckerCharacter::new(9).is_err());
        assert!(KroneckerCharacter::new(1).unwrap().is_trivial());
    }

    #[test]
    fn character_is_periodic_and_vanishes_on_common_factors() {
        for d in [-39i64, -3, 5, 8, 13, 24, 40] {
            let chi = KroneckerCharacter::new(d).unwrap();
            let f = chi.modulus() as i64;
            for n in -50..50 {
                assert_eq!(chi.value(n), chi.value(n + f));
                assert_eq!(chi.value(n) == 0, n.gcd(&d) != 1);
            }
            assert_eq!(chi.value(-1), chi.parity());
        }
    }
}
