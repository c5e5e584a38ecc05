//! Naive reference implementations: straight iteration of the Fibonacci
//! recurrence and brute-force order search. These are the ground truth the
//! test suites compare the fast paths against, so they deliberately share
//! no code with them.

use crate::error::{Error, Result};
use crate::modarith::{check_modulus, gcd};

/// Steps a sequence search may take before it is declared runaway: 6·n².
/// The Pisano period never exceeds 6n, so this cap is never hit by a
/// correct implementation.
fn step_cap(n: u64) -> u64 {
    6u64.saturating_mul(n).saturating_mul(n)
}

/// (F_k, F_{k+1}) modulo m by k single steps of the recurrence.
pub fn naive_fib_pair(k: u64, m: u64) -> Result<(u64, u64)> {
    let m = check_modulus(m)?;
    let (mut a, mut b) = (0u64, 1 % m);
    for _ in 0..k {
        (a, b) = (b, (a + b) % m);
    }
    Ok((a, b))
}

/// Least m ≥ 1 with n | F_m, found by walking the sequence.
pub fn naive_kappa(n: u64) -> Result<u64> {
    let n = check_modulus(n)?;
    let cap = step_cap(n);
    let (mut a, mut b) = (0u64, 1 % n);
    for m in 1..=cap {
        (a, b) = (b, (a + b) % n);
        if a == 0 {
            return Ok(m);
        }
    }
    Err(Error::internal(format!(
        "entry-point search for {n} ran past {cap} steps"
    )))
}

/// Least m ≥ 1 with F_m ≡ 0 and F_{m+1} ≡ 1 (mod n), by walking the sequence.
pub fn naive_pisano(n: u64) -> Result<u64> {
    let n = check_modulus(n)?;
    let cap = step_cap(n);
    let one = 1 % n;
    let (mut a, mut b) = (0u64, one);
    for m in 1..=cap {
        (a, b) = (b, (a + b) % n);
        if a == 0 && b == one {
            return Ok(m);
        }
    }
    Err(Error::internal(format!("period search for {n} ran past {cap} steps")))
}

/// Multiplicative order of z modulo n by repeated multiplication.
pub fn naive_order(z: u64, n: u64) -> Result<u64> {
    let n = check_modulus(n)?;
    let z = z % n;
    if gcd(z, n) != 1 {
        return Err(Error::domain(format!("{z} is not a unit modulo {n}")));
    }
    let one = 1 % n;
    let mut x = z;
    for t in 1..=n {
        if x == one {
            return Ok(t);
        }
        x = (x as u128 * z as u128 % n as u128) as u64;
    }
    Err(Error::internal(format!("order search for {z} mod {n} did not close")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_fib_pair_known_values() {
        assert_eq!(naive_fib_pair(10, 1000).unwrap(), (55, 89));
        assert_eq!(naive_fib_pair(0, 9).unwrap(), (0, 1));
        assert_eq!(naive_fib_pair(7, 1).unwrap(), (0, 0));
    }

    #[test]
    fn naive_kappa_known_values() {
        assert_eq!(naive_kappa(144).unwrap(), 12); // F_12 = 144
        assert_eq!(naive_kappa(1).unwrap(), 1);
        assert_eq!(naive_kappa(8).unwrap(), 6); // F_6 = 8
        assert_eq!(naive_kappa(10).unwrap(), 15);
    }

    #[test]
    fn naive_pisano_known_values() {
        assert_eq!(naive_pisano(10).unwrap(), 60);
        assert_eq!(naive_pisano(12).unwrap(), 24);
        assert_eq!(naive_pisano(1).unwrap(), 1);
        assert_eq!(naive_pisano(2).unwrap(), 3);
    }

    #[test]
    fn naive_order_known_values() {
        assert_eq!(naive_order(2, 7).unwrap(), 3);
        assert_eq!(naive_order(3, 10).unwrap(), 4);
        assert_eq!(naive_order(1, 5).unwrap(), 1);
        assert_eq!(naive_order(4, 1).unwrap(), 1);
        assert!(matches!(naive_order(6, 9), Err(Error::Domain(_))));
    }
}
