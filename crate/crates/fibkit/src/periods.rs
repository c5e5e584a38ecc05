//! Entry points κ(n) and Pisano periods π(n), computed structurally: divisor
//! search at primes, valuation-guided lifting at prime powers, and lcm
//! composition across coprime parts — never by walking the sequence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibcore::fib_pair_raw;
use crate::modarith::{
    self, carmichael_prime_power, check_modulus, gcd, lcm_checked, powmod, Factorization,
    LegendreSymbol, MODULUS_CAP,
};

/// κ, π, and the multiplicative order ω tying them together: π = κ·ω, where
/// ω is the order of F_{κ(n)+1} modulo n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodRecord {
    pub n: u64,
    pub kappa: u64,
    pub omega: u64,
    pub pi: u64,
}

/// Entry point κ(p) of a prime: the least m ≥ 1 with p | F_m.
///
/// p always divides F_{p - (p|5)}, so κ(p) divides that index; the ascending
/// divisor walk therefore finds the minimum without touching any other index.
pub fn kappa_prime(p: u64) -> Result<u64> {
    let ell = modarith::legendre5(p)?; // also enforces primality
    let index = match ell {
        LegendreSymbol::PlusOne => p - 1,
        LegendreSymbol::MinusOne => p + 1,
        LegendreSymbol::Zero => p,
    };
    for d in modarith::divisors_ascending(&modarith::factorize(index)?)? {
        if fib_pair_raw(d, p).0 == 0 {
            return Ok(d);
        }
    }
    Err(Error::internal(format!("no entry point found for prime {p}")))
}

/// Entry point κ(p^e), by lifting κ(p) one factor of p at a time.
///
/// Whenever F_κ still misses a power of p, the entry point of the next level
/// is exactly p·κ; the loop re-reads the residue after every lift instead of
/// assuming the valuation grows by one per step, because it does not always
/// (ν₂(F_6) = 3, so the chain for 2 goes 3, 6, 6, 12, 24, …).
pub fn kappa_prime_power(p: u64, e: u32) -> Result<u64> {
    if e == 0 {
        return Err(Error::domain("kappa_prime_power needs an exponent of at least 1"));
    }
    let target = checked_prime_power(p, e)?;
    let mut kappa = kappa_prime(p)?;
    loop {
        if fib_pair_raw(kappa, target).0 == 0 {
            return Ok(kappa);
        }
        kappa = kappa
            .checked_mul(p)
            .ok_or_else(|| Error::capacity("entry point", kappa as u128 * p as u128, u64::MAX as u128))?;
    }
}

/// p^e, rejected with a capacity error once it leaves modulus range.
fn checked_prime_power(p: u64, e: u32) -> Result<u64> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc *= p as u128;
        if acc >= MODULUS_CAP as u128 {
            return Err(Error::capacity("prime power", acc, MODULUS_CAP as u128));
        }
    }
    Ok(acc as u64)
}

/// Entry point κ(n) for any n ≥ 1: the lcm of κ over the prime powers of n.
pub fn kappa(n: u64) -> Result<u64> {
    kappa_factored(&modarith::factorize(n)?)
}

pub(crate) fn kappa_factored(f: &Factorization) -> Result<u64> {
    let mut acc = 1u64;
    for &(p, e) in f.factors() {
        acc = lcm_checked(acc, kappa_prime_power(p, e)?, "entry point")?;
    }
    Ok(acc)
}

/// Multiplicative order of z modulo n, given a verified multiple of it.
///
/// `exponent_multiple` must satisfy z^multiple ≡ 1 (mod n); the order is
/// found by stripping prime factors from the multiple for as long as the
/// power stays at 1.
pub fn order_mod(z: u64, n: u64, exponent_multiple: u64) -> Result<u64> {
    let n = check_modulus(n)?;
    if n == 1 {
        return Ok(1);
    }
    let z = z % n;
    if gcd(z, n) != 1 {
        return Err(Error::domain(format!("{z} is not a unit modulo {n}")));
    }
    if exponent_multiple == 0 {
        return Err(Error::domain("exponent multiple must be positive"));
    }
    if powmod(z, exponent_multiple, n) != 1 {
        return Err(Error::contract(format!(
            "{z}^{exponent_multiple} is not 1 modulo {n}, so it is no multiple of the order"
        )));
    }
    let factors = modarith::factorize(exponent_multiple)?;
    Ok(order_from_multiple(z, n, exponent_multiple, factors.factors()))
}

/// Order extraction once the multiple and its factorization are in hand.
fn order_from_multiple(z: u64, n: u64, multiple: u64, factors: &[(u64, u32)]) -> u64 {
    let mut t = multiple;
    for &(q, _) in factors {
        while t.is_multiple_of(q) && powmod(z, t / q, n) == 1 {
            t /= q;
        }
    }
    t
}

/// Full period record for n: κ(n), the order ω of F_{κ+1}, and π = κ·ω.
///
/// ```
/// let rec = fibkit::pisano(144)?;
/// assert_eq!((rec.kappa, rec.omega, rec.pi), (12, 2, 24));
/// # Ok::<(), fibkit::Error>(())
/// ```
pub fn pisano(n: u64) -> Result<PeriodRecord> {
    pisano_factored(&modarith::factorize(n)?)
}

pub(crate) fn pisano_factored(f: &Factorization) -> Result<PeriodRecord> {
    if f.n() == 1 {
        return Ok(PeriodRecord {
            n: 1,
            kappa: 1,
            omega: 1,
            pi: 1,
        });
    }
    if let [(p, e)] = f.factors() {
        return pisano_prime_power(*p, *e);
    }
    let mut kappa_acc = 1u64;
    let mut pi_acc = 1u64;
    for &(p, e) in f.factors() {
        let rec = pisano_prime_power(p, e)?;
        kappa_acc = lcm_checked(kappa_acc, rec.kappa, "entry point")?;
        pi_acc = lcm_checked(pi_acc, rec.pi, "period")?;
    }
    if !pi_acc.is_multiple_of(kappa_acc) {
        return Err(Error::internal(format!(
            "period {pi_acc} of {} is not a multiple of its entry point {kappa_acc}",
            f.n()
        )));
    }
    Ok(PeriodRecord {
        n: f.n(),
        kappa: kappa_acc,
        omega: pi_acc / kappa_acc,
        pi: pi_acc,
    })
}

/// π(p^e) = κ(p^e) · ord(F_{κ+1}), computed right at the modulus p^e.
pub(crate) fn pisano_prime_power(p: u64, e: u32) -> Result<PeriodRecord> {
    let kappa = kappa_prime_power(p, e)?;
    let m = checked_prime_power(p, e)?;
    let f_next = fib_pair_raw(kappa, m).1; // F_{κ+1} mod p^e
    let (multiple, multiple_factors) = carmichael_factored(p, e)?;
    if powmod(f_next, multiple, m) != 1 {
        return Err(Error::internal(format!(
            "F_{{κ+1}} = {f_next} is not a unit modulo {m}"
        )));
    }
    let omega = order_from_multiple(f_next, m, multiple, &multiple_factors);
    let pi = kappa
        .checked_mul(omega)
        .ok_or_else(|| Error::capacity("period", kappa as u128 * omega as u128, u64::MAX as u128))?;
    Ok(PeriodRecord {
        n: m,
        kappa,
        omega,
        pi,
    })
}

/// λ(p^e) together with its factorization, without factoring λ itself:
/// the prime factors are p (for e ≥ 2) plus the factors of p - 1.
fn carmichael_factored(p: u64, e: u32) -> Result<(u64, Vec<(u64, u32)>)> {
    let lam = carmichael_prime_power(p, e);
    if p == 2 {
        let factors = if lam == 1 { vec![] } else { vec![(2u64, lam.trailing_zeros())] };
        return Ok((lam, factors));
    }
    let mut factors = modarith::factorize(p - 1)?.factors().to_vec();
    if e >= 2 {
        factors.push((p, e - 1)); // p exceeds every factor of p - 1, so order holds
    }
    Ok((lam, factors))
}

/// Period record of p² for a prime p, with the dichotomy π(p²) ∈ {π(p), p·π(p)}
/// enforced: any other outcome is reported as a contract violation.
pub fn pisano_prime_square(p: u64) -> Result<PeriodRecord> {
    if !modarith::is_prime(p) {
        return Err(Error::domain(format!("pisano_prime_square expects a prime, got {p}")));
    }
    let base = pisano_prime_power(p, 1)?;
    let square = pisano_prime_power(p, 2)?;
    let lifted = base
        .pi
        .checked_mul(p)
        .ok_or_else(|| Error::capacity("period", base.pi as u128 * p as u128, u64::MAX as u128))?;
    if square.pi != base.pi && square.pi != lifted {
        return Err(Error::contract(format!(
            "period of {p}² is {}, neither π({p}) = {} nor {p}·π({p}) = {lifted}",
            square.pi, base.pi
        )));
    }
    Ok(square)
}
