//! Modular arithmetic over `u64` with 128-bit intermediates: exact products
//! and powers, deterministic primality, factorization, divisor enumeration,
//! and the totient-style functions the period machinery needs.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard exclusive upper bound for every modulus this crate accepts.
///
/// Keeping moduli below 2^63 leaves headroom for `a + m - b` style sums in
/// plain `u64` while products always go through `u128`.
pub const MODULUS_CAP: u64 = 1 << 63;

/// Most divisors `divisors_ascending` will ever materialize.
pub const DIVISOR_COUNT_CAP: u64 = 1 << 20;

/// Trial division handles every prime below this before rho takes over.
const TRIAL_DIVISION_BOUND: u32 = 100_000;

/// A value reduced modulo a validated modulus (`0 <= value < modulus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

/// Legendre symbol value of a prime with respect to 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum LegendreSymbol {
    MinusOne,
    Zero,
    PlusOne,
}

impl LegendreSymbol {
    /// The symbol as the integer -1, 0, or +1.
    #[must_use]
    pub fn value(self) -> i64 {
        match self {
            LegendreSymbol::MinusOne => -1,
            LegendreSymbol::Zero => 0,
            LegendreSymbol::PlusOne => 1,
        }
    }
}

impl From<LegendreSymbol> for i8 {
    fn from(s: LegendreSymbol) -> i8 {
        s.value() as i8
    }
}

impl TryFrom<i8> for LegendreSymbol {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            -1 => Ok(LegendreSymbol::MinusOne),
            0 => Ok(LegendreSymbol::Zero),
            1 => Ok(LegendreSymbol::PlusOne),
            other => Err(format!("legendre symbol must be -1, 0, or 1, got {other}")),
        }
    }
}

impl std::fmt::Display for LegendreSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Validates a modulus: positive and below [`MODULUS_CAP`].
pub fn check_modulus(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    if m >= MODULUS_CAP {
        return Err(Error::capacity("modulus", m as u128, MODULUS_CAP as u128));
    }
    Ok(m)
}

// Unchecked cores, for hot loops that validated their modulus once at entry.
// All assume operands already reduced and m < MODULUS_CAP.

pub(crate) fn addmod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b; // < 2^64 because both operands are < 2^63
    if s >= m {
        s - m
    } else {
        s
    }
}

pub(crate) fn submod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + m - b;
    if s >= m {
        s - m
    } else {
        s
    }
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// (a * b) mod m, exact for every pair of operands via a 128-bit product.
pub fn mul_mod(a: u64, b: u64, m: u64) -> Result<Residue> {
    let m = check_modulus(m)?;
    Ok(Residue {
        value: mulmod(a % m, b % m, m),
        modulus: m,
    })
}

/// base^exp mod m by binary exponentiation.
pub fn pow_mod(base: u64, exp: u64, m: u64) -> Result<Residue> {
    let m = check_modulus(m)?;
    Ok(Residue {
        value: powmod(base, exp, m),
        modulus: m,
    })
}

/// Legendre symbol (p | 5) for a prime p, read off the residue of p mod 5.
///
/// Zero only for p = 5; +1 for p ≡ ±1 (mod 5); -1 for p ≡ ±2 (mod 5).
pub fn legendre5(p: u64) -> Result<LegendreSymbol> {
    if !is_prime(p) {
        return Err(Error::domain(format!("legendre5 expects a prime, got {p}")));
    }
    Ok(match p % 5 {
        0 => LegendreSymbol::Zero,
        1 | 4 => LegendreSymbol::PlusOne,
        _ => LegendreSymbol::MinusOne,
    })
}

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin primality test, exact for every `u64`.
///
/// The fixed witness set is known to be sound for all n < 3.3e24, which
/// covers the full 64-bit range with room to spare.
#[must_use]
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Greatest common divisor.
#[must_use]
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// lcm(a, b) for positive operands, with a named capacity error on overflow.
pub(crate) fn lcm_checked(a: u64, b: u64, what: &'static str) -> Result<u64> {
    let g = gcd(a, b);
    (a / g)
        .checked_mul(b)
        .ok_or_else(|| Error::capacity(what, (a / g) as u128 * b as u128, u64::MAX as u128))
}

fn small_primes() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::with_capacity(9592);
        for p in 2..n {
            if composite[p] {
                continue;
            }
            primes.push(p as u32);
            let mut q = p * p;
            while q < n {
                composite[q] = true;
                q += p;
            }
        }
        primes
    })
}

/// A number together with its prime factorization (primes ascending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored number itself.
    #[must_use]
    pub fn n(&self) -> u64 {
        self.n
    }

    /// (prime, exponent) pairs in ascending prime order.
    #[must_use]
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The factorization of n², by doubling every exponent.
    pub fn squared(&self) -> Result<Factorization> {
        let n2 = self
            .n
            .checked_mul(self.n)
            .filter(|&v| v < MODULUS_CAP)
            .ok_or_else(|| {
                Error::capacity("squared value", self.n as u128 * self.n as u128, MODULUS_CAP as u128)
            })?;
        Ok(Factorization {
            n: n2,
            factors: self.factors.iter().map(|&(p, e)| (p, 2 * e)).collect(),
        })
    }
}

/// Factors n by trial division below 100000, then rho splitting.
///
/// The rho stage restarts deterministically: the polynomial constant starts
/// at 1 and increments every time a cycle closes without finding a factor,
/// so identical inputs always factor along the identical path.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize expects a positive input"));
    }
    if n >= MODULUS_CAP {
        return Err(Error::capacity("factorization input", n as u128, MODULUS_CAP as u128));
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rest > 1 {
        // Whatever survived trial division has no factor below 100000.
        let mut pending = vec![rest];
        let mut large = Vec::new();
        while let Some(v) = pending.pop() {
            if is_prime(v) {
                large.push(v);
                continue;
            }
            let d = rho_split(v);
            pending.push(d);
            pending.push(v / d);
        }
        large.sort_unstable();
        for p in large {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    Ok(Factorization { n, factors })
}

/// Splits an odd composite with no small factors into one nontrivial divisor.
fn rho_split(n: u64) -> u64 {
    debug_assert!(n > 1 && n % 2 == 1 && !is_prime(n));
    let mut c: u64 = 1;
    loop {
        if let Some(d) = rho_round(n, c) {
            return d;
        }
        c += 1;
    }
}

/// One Brent-cycle round of rho with polynomial x² + c; None if the cycle
/// closed without yielding a proper factor.
fn rho_round(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| addmod(mulmod(x, x, n), c % n, n);
    let mut y: u64 = 2;
    let mut x = y;
    let mut ys = y;
    let mut q: u64 = 1;
    let mut g: u64 = 1;
    let mut r: u64 = 1;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let lim = 128.min(r - k);
            for _ in 0..lim {
                y = f(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += lim;
        }
        r <<= 1;
    }
    if g == n {
        // The batched gcd jumped past the factor; replay one step at a time.
        g = 1;
        while g == 1 {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

/// Every divisor of the factored number, strictly ascending.
pub fn divisors_ascending(f: &Factorization) -> Result<Vec<u64>> {
    let mut count: u64 = 1;
    for &(_, e) in f.factors() {
        count = count.saturating_mul(e as u64 + 1);
    }
    if count > DIVISOR_COUNT_CAP {
        return Err(Error::capacity("divisor count", count as u128, DIVISOR_COUNT_CAP as u128));
    }
    let mut divisors = vec![1u64];
    for &(p, e) in f.factors() {
        let existing = divisors.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p; // every divisor fits: it divides n
            for i in 0..existing {
                divisors.push(divisors[i] * pk);
            }
        }
    }
    divisors.sort_unstable();
    Ok(divisors)
}

/// Carmichael's function λ from a factorization.
///
/// λ(2) = 1, λ(4) = 2, λ(2^k) = 2^(k-2) for k ≥ 3, λ(p^k) = p^(k-1)(p-1)
/// for odd p, and λ of a product of coprime prime powers is the lcm.
#[must_use]
pub fn carmichael(f: &Factorization) -> u64 {
    let mut acc = 1u64;
    for &(p, e) in f.factors() {
        let lam = carmichael_prime_power(p, e);
        // Every partial lcm divides λ(n) ≤ n, so this cannot overflow.
        acc = acc / gcd(acc, lam) * lam;
    }
    acc
}

/// λ(p^e) for a single prime power.
pub(crate) fn carmichael_prime_power(p: u64, e: u32) -> u64 {
    if p == 2 {
        match e {
            1 => 1,
            2 => 2,
            _ => 1u64 << (e - 2),
        }
    } else {
        p.pow(e - 1) * (p - 1)
    }
}

/// Euler's totient from a factorization.
#[must_use]
pub fn euler_phi(f: &Factorization) -> u64 {
    f.factors().iter().map(|&(p, e)| p.pow(e - 1) * (p - 1)).product()
}

/// ν_p(x): the exponent of the prime p in x ≥ 1.
pub fn valuation(x: u64, p: u64) -> Result<u32> {
    if x == 0 {
        return Err(Error::domain("valuation of zero is undefined"));
    }
    if !is_prime(p) {
        return Err(Error::domain(format!("valuation base {p} must be prime")));
    }
    let mut x = x;
    let mut e = 0;
    while x.is_multiple_of(p) {
        x /= p;
        e += 1;
    }
    Ok(e)
}
