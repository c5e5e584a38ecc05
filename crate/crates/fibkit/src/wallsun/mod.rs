//! Wall-Sun-Sun prime testing and the equivalences behind it.
//!
//! A prime p is Wall-Sun-Sun when p² divides F_{p−(p|5)}. Three checkable
//! criteria pin down the *absence* of that event at a given prime — the
//! squared-modulus divisibility itself, the p-adic valuation of F at the
//! entry point, and the growth of the Pisano period from p to p² — and
//! [`equivalence_report`] evaluates all three independently so a
//! disagreement (a bug, or a falsified equivalence) is surfaced rather
//! than assumed away.

pub mod checkpoint;
pub mod scan;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibcore::{fib_pair_raw, fib_valuation};
use crate::modarith::{self, LegendreSymbol, Residue, MODULUS_CAP};
use crate::periods;

/// Exclusive cap on primes accepted by the per-prime checks and the
/// scanner: p below 2^31 keeps p² inside modulus range.
pub const SCAN_PRIME_CAP: u64 = 1 << 31;

/// Everything `wss_check` learns about one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WssReport {
    pub p: u64,
    pub legendre: LegendreSymbol,
    /// The probed index p − (p|5); p always divides F at this index.
    pub index: u64,
    /// F_index reduced modulo p².
    pub f_mod_p2: Residue,
    /// f_mod_p2 divided exactly by p, as a residue modulo p.
    pub alpha: Residue,
    pub is_wss: bool,
}

impl WssReport {
    /// Distance of alpha from 0 modulo p, counted from either side:
    /// min(α, p − α). Zero exactly for a Wall-Sun-Sun prime.
    #[must_use]
    pub fn near_miss_distance(&self) -> u64 {
        let a = self.alpha.value;
        if a == 0 {
            0
        } else {
            a.min(self.p - a)
        }
    }
}

/// A prime whose alpha residue came unusually close to zero, kept with the
/// evidence needed to reproduce the observation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearMiss {
    pub p: u64,
    pub alpha: u64,
    pub distance: u64,
}

/// Tests p for the Wall-Sun-Sun property by computing F_{p−(p|5)} mod p².
pub fn wss_check(p: u64) -> Result<WssReport> {
    if !modarith::is_prime(p) {
        return Err(Error::domain(format!("wss_check expects a prime, got {p}")));
    }
    if p >= SCAN_PRIME_CAP {
        return Err(Error::capacity("prime to check", p as u128, SCAN_PRIME_CAP as u128));
    }
    wss_check_unchecked(p)
}

/// The check itself, for callers that already know p is a prime below
/// [`SCAN_PRIME_CAP`] (the scanner gets primality from its sieve).
pub(crate) fn wss_check_unchecked(p: u64) -> Result<WssReport> {
    let legendre = match p % 5 {
        0 => LegendreSymbol::Zero,
        1 | 4 => LegendreSymbol::PlusOne,
        _ => LegendreSymbol::MinusOne,
    };
    let index = match legendre {
        LegendreSymbol::PlusOne => p - 1,
        LegendreSymbol::MinusOne => p + 1,
        LegendreSymbol::Zero => p,
    };
    let p2 = p * p;
    let f = fib_pair_raw(index, p2).0;
    if !f.is_multiple_of(p) {
        // p | F_{p−(p|5)} is a theorem; landing here means p was not prime.
        return Err(Error::internal(format!(
            "F_{index} = {f} (mod {p2}) is not divisible by {p}"
        )));
    }
    let alpha = f / p;
    Ok(WssReport {
        p,
        legendre,
        index,
        f_mod_p2: Residue { value: f, modulus: p2 },
        alpha: Residue { value: alpha, modulus: p },
        is_wss: alpha == 0,
    })
}

/// True iff the power of p in F_{κ(p)} is exactly 1 — the valuation form
/// of "p is not Wall-Sun-Sun".
pub fn valuation_criterion(p: u64) -> Result<bool> {
    if p >= SCAN_PRIME_CAP {
        return Err(Error::capacity("prime to check", p as u128, SCAN_PRIME_CAP as u128));
    }
    Ok(fib_valuation(periods::kappa_prime(p)?, p)? == 1)
}

/// True iff π(p²) = p·π(p) — the period-growth form of "p is not
/// Wall-Sun-Sun". The only other value the dichotomy allows is π(p) itself,
/// which happens exactly at a Wall-Sun-Sun prime.
pub fn period_growth_criterion(p: u64) -> Result<bool> {
    if p >= SCAN_PRIME_CAP {
        return Err(Error::capacity("prime to check", p as u128, SCAN_PRIME_CAP as u128));
    }
    let base = periods::pisano(p)?;
    let square = periods::pisano_prime_square(p)?;
    Ok(square.pi == p * base.pi)
}

/// The three "not Wall-Sun-Sun" criteria for one prime, each computed from
/// scratch. They are provably equivalent, so `agree` should always be true;
/// a false value is evidence of a defect (or a falsified equivalence) and
/// is reported, never suppressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub p: u64,
    /// p² does not divide F_{p−(p|5)}.
    pub square_criterion: bool,
    /// The power of p in F_{κ(p)} is exactly 1.
    pub valuation_criterion: bool,
    /// π(p²) = p·π(p).
    pub period_criterion: bool,
    pub agree: bool,
}

/// Evaluates all three criteria independently at p.
pub fn equivalence_report(p: u64) -> Result<EquivalenceReport> {
    let square_criterion = !wss_check(p)?.is_wss;
    let valuation = valuation_criterion(p)?;
    let period = period_growth_criterion(p)?;
    Ok(EquivalenceReport {
        p,
        square_criterion,
        valuation_criterion: valuation,
        period_criterion: period,
        agree: square_criterion == valuation && valuation == period,
    })
}

/// [`equivalence_report`] for every prime p ≤ limit, ascending.
///
/// `jobs` is the worker count; 0 means all available cores. The report list
/// is ordered by p and independent of scheduling.
pub fn equivalence_scan(limit: u64, jobs: usize) -> Result<Vec<EquivalenceReport>> {
    use rayon::prelude::*;

    if limit >= SCAN_PRIME_CAP {
        return Err(Error::capacity("scan limit", limit as u128, SCAN_PRIME_CAP as u128));
    }
    let primes = crate::sieve::primes_below(limit.saturating_add(1));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::internal(format!("worker pool construction failed: {e}")))?;
    pool.install(|| primes.par_iter().map(|&p| equivalence_report(p)).collect())
}

/// The residue pair (α₁, β₁) defined by one full period at modulus p²:
/// F_{π(p)} ≡ α₁·p and F_{π(p)+1} ≡ β₁·p + 1 (mod p²).
///
/// Scaling by r is linear in both coordinates: F_{rπ(p)} ≡ (r·α₁ mod p)·p
/// and F_{rπ(p)+1} ≡ (r·β₁ mod p)·p + 1, which the residue-linearity
/// verification suite exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PisanoResidues {
    pub p: u64,
    pub alpha1: Residue,
    pub beta1: Residue,
}

/// Reads (α₁, β₁) off fib_pair_mod(π(p), p²).
pub fn pisano_residues(p: u64) -> Result<PisanoResidues> {
    if !modarith::is_prime(p) {
        return Err(Error::domain(format!("pisano_residues expects a prime, got {p}")));
    }
    let square = p as u128 * p as u128;
    if square >= MODULUS_CAP as u128 {
        return Err(Error::capacity("squared modulus", square, MODULUS_CAP as u128));
    }
    let p2 = p * p;
    let pi = periods::pisano(p)?.pi;
    let (f, f_next) = fib_pair_raw(pi, p2);
    if f % p != 0 || f_next % p != 1 {
        return Err(Error::internal(format!(
            "pair at index π({p}) = {pi} is ({f}, {f_next}) mod {p2}, not of the form (α₁p, β₁p + 1)"
        )));
    }
    Ok(PisanoResidues {
        p,
        alpha1: Residue { value: f / p, modulus: p },
        beta1: Residue { value: f_next / p, modulus: p },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wss_check_known_primes() {
        let r = wss_check(5).unwrap();
        assert_eq!(r.legendre, LegendreSymbol::Zero);
        assert_eq!(r.index, 5);
        assert_eq!(r.f_mod_p2.value, 5); // F_5 = 5, far from 0 mod 25
        assert_eq!(r.alpha.value, 1);
        assert!(!r.is_wss);

        let r = wss_check(11).unwrap();
        assert_eq!(r.legendre, LegendreSymbol::PlusOne);
        assert_eq!(r.index, 10);
        assert_eq!(r.f_mod_p2.value, 55); // F_10 = 55 = 5·11
        assert_eq!(r.alpha.value, 5);
        assert!(!r.is_wss);

        let r = wss_check(2).unwrap();
        assert_eq!(r.legendre, LegendreSymbol::MinusOne);
        assert_eq!(r.index, 3);
        assert_eq!(r.f_mod_p2.value, 2);
        assert_eq!(r.alpha.value, 1);
        assert!(!r.is_wss);
    }

    #[test]
    fn wss_check_rejects_bad_inputs() {
        assert!(matches!(wss_check(10), Err(Error::Domain(_))));
        assert!(matches!(wss_check(2_147_483_659), Err(Error::Capacity { .. })));
    }

    #[test]
    fn near_miss_distance_is_symmetric() {
        // p = 17: F_18 = 2584 = 152·17 = 17² · 8 + 272 → α = 152 mod 17 = 16.
        let r = wss_check(17).unwrap();
        assert_eq!(r.alpha.value % 17, r.alpha.value); // reduced
        assert_eq!(r.near_miss_distance(), (17 - r.alpha.value).min(r.alpha.value));
        assert_eq!(r.near_miss_distance(), 1);
    }

    #[test]
    fn criteria_hold_at_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 999_983] {
            assert!(valuation_criterion(p).unwrap(), "valuation at {p}");
            assert!(period_growth_criterion(p).unwrap(), "period growth at {p}");
            let report = equivalence_report(p).unwrap();
            assert!(report.square_criterion, "square criterion at {p}");
            assert!(report.agree, "agreement at {p}");
        }
    }

    #[test]
    fn equivalence_scan_orders_by_prime() {
        let reports = equivalence_scan(100, 1).unwrap();
        assert_eq!(reports.len(), 25);
        assert!(reports.windows(2).all(|w| w[0].p < w[1].p));
        assert!(reports.iter().all(|r| r.agree));
    }

    #[test]
    fn pisano_residue_pairs_match_direct_computation() {
        // (α₁, β₁) read straight off F_{π(p)}, F_{π(p)+1} modulo p².
        let cases = [(2u64, 1u64, 1u64), (3, 1, 2), (5, 3, 4), (11, 5, 8), (13, 7, 10)];
        for (p, a1, b1) in cases {
            let r = pisano_residues(p).unwrap();
            assert_eq!((r.alpha1.value, r.beta1.value), (a1, b1), "p = {p}");
            assert_eq!(r.alpha1.modulus, p);
        }
        assert!(matches!(pisano_residues(6), Err(Error::Domain(_))));
    }
}
