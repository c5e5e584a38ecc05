//! Fibonacci evaluation modulo n: fast doubling for single indices,
//! prime-power valuations of Fibonacci numbers, and the binomial
//! index-multiplication expansion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{self, addmod, check_modulus, mulmod, submod, Residue, MODULUS_CAP};

/// Largest expansion order `siebeck_mod` accepts.
pub const SIEBECK_ORDER_CAP: u64 = 300;

/// Consecutive Fibonacci values (F_k, F_{k+1}) reduced modulo `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibPair {
    pub index: u64,
    pub modulus: u64,
    pub f: u64,
    pub f_next: u64,
}

impl FibPair {
    /// The pair one index later, by a single modular addition.
    #[must_use]
    pub fn step(&self) -> FibPair {
        FibPair {
            index: self.index + 1,
            modulus: self.modulus,
            f: self.f_next,
            f_next: addmod(self.f, self.f_next, self.modulus),
        }
    }
}

/// (F_k mod m, F_{k+1} mod m) for a modulus already validated by the caller.
///
/// Fast doubling over the bits of k, most significant first:
/// F_{2t} = F_t (2 F_{t+1} - F_t) and F_{2t+1} = F_t² + F_{t+1}².
pub(crate) fn fib_pair_raw(k: u64, m: u64) -> (u64, u64) {
    let mut f = 0u64; // F_0
    let mut g = 1 % m; // F_1
    for i in (0..u64::BITS - k.leading_zeros()).rev() {
        let doubled = mulmod(f, submod(addmod(g, g, m), f, m), m);
        let doubled_next = addmod(mulmod(f, f, m), mulmod(g, g, m), m);
        if (k >> i) & 1 == 1 {
            f = doubled_next;
            g = addmod(doubled, doubled_next, m);
        } else {
            f = doubled;
            g = doubled_next;
        }
    }
    (f, g)
}

/// (F_k, F_{k+1}) modulo m in O(log k) multiplications.
pub fn fib_pair_mod(k: u64, m: u64) -> Result<FibPair> {
    let m = check_modulus(m)?;
    let (f, f_next) = fib_pair_raw(k, m);
    Ok(FibPair {
        index: k,
        modulus: m,
        f,
        f_next,
    })
}

/// F_k mod m.
pub fn fib_mod(k: u64, m: u64) -> Result<Residue> {
    let m = check_modulus(m)?;
    Ok(Residue {
        value: fib_pair_raw(k, m).0,
        modulus: m,
    })
}

/// ν_p(F_k): how many times the prime p divides F_k.
///
/// Evaluates F_k modulo p, p², p³, … until a nonzero residue appears, then
/// counts that residue's trailing zero digits in base p.
pub fn fib_valuation(k: u64, p: u64) -> Result<u32> {
    if k == 0 {
        return Err(Error::domain("fib_valuation needs a positive index"));
    }
    if !modarith::is_prime(p) {
        return Err(Error::domain(format!("fib_valuation base {p} must be prime")));
    }
    let mut pe = p;
    loop {
        let r = fib_pair_raw(k, pe).0;
        if r != 0 {
            return modarith::valuation(r, p);
        }
        let next = pe as u128 * p as u128;
        if next >= MODULUS_CAP as u128 {
            return Err(Error::capacity(
                "prime-power modulus in fib_valuation",
                next,
                MODULUS_CAP as u128,
            ));
        }
        pe = next as u64;
    }
}

/// F_{m·n} mod `modulus` via the index-multiplication expansion
/// Σ_{j=0..n} C(n,j) · F_j · F_m^j · F_{m-1}^(n-j).
///
/// The binomial row is built modulo `modulus` with the additive Pascal
/// recurrence, so no division is ever needed.
pub fn siebeck_mod(m: u64, n: u64, modulus: u64) -> Result<Residue> {
    let md = check_modulus(modulus)?;
    if m == 0 || n == 0 {
        return Err(Error::domain("siebeck_mod needs m >= 1 and n >= 1"));
    }
    if n > SIEBECK_ORDER_CAP {
        return Err(Error::capacity("expansion order", n as u128, SIEBECK_ORDER_CAP as u128));
    }
    let n = n as usize;
    let (f_prev, f_m) = fib_pair_raw(m - 1, md); // (F_{m-1}, F_m)

    // Row n of Pascal's triangle, reduced modulo md.
    let mut binom = vec![0u64; n + 1];
    binom[0] = 1 % md;
    for i in 1..=n {
        for j in (1..=i).rev() {
            binom[j] = addmod(binom[j], binom[j - 1], md);
        }
    }

    // F_0..F_n and the ascending power tables.
    let mut fib = vec![0u64; n + 1];
    if n >= 1 {
        fib[1] = 1 % md;
    }
    for j in 2..=n {
        fib[j] = addmod(fib[j - 1], fib[j - 2], md);
    }
    let mut pow_m = vec![1 % md; n + 1];
    let mut pow_prev = vec![1 % md; n + 1];
    for j in 1..=n {
        pow_m[j] = mulmod(pow_m[j - 1], f_m, md);
        pow_prev[j] = mulmod(pow_prev[j - 1], f_prev, md);
    }

    let mut acc = 0u64;
    for j in 0..=n {
        let term = mulmod(mulmod(binom[j], fib[j], md), mulmod(pow_m[j], pow_prev[n - j], md), md);
        acc = addmod(acc, term, md);
    }
    Ok(Residue {
        value: acc,
        modulus: md,
    })
}
