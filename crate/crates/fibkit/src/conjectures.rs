//! Desk-scale sweeps over period behavior at squared and lifted moduli:
//! which n satisfy π(n²) = π(n), whether n | π(n²) ever fails, whether the
//! bounds π(n) ≤ π(n²) ≤ n·π(n) ever break, and whether π(p^e) lifts by a
//! factor of p per exponent step. Each scan returns findings — witnesses of
//! the interesting event — rather than erroring, because the events are the
//! subject of study, not failures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{self, euler_phi, lcm_checked, MODULUS_CAP};
use crate::periods;

/// What a finding witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingKind {
    /// π(n²) = π(n): the squared modulus kept the period.
    FixedPoint,
    /// n does not divide π(n²).
    DivisibilityFailure,
    /// One of π(n) ≤ π(n²), π(n²) ≤ n·π(n), or π(n) | π(n²) failed.
    BoundViolation,
    /// π(p^e) ≠ p^(e−1)·π(p).
    LiftingFailure,
}

impl std::fmt::Display for FindingKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FindingKind::FixedPoint => "fixed_point",
            FindingKind::DivisibilityFailure => "divisibility_failure",
            FindingKind::BoundViolation => "bound_violation",
            FindingKind::LiftingFailure => "lifting_failure",
        };
        f.write_str(s)
    }
}

/// One witnessed event, reproducible from `n` alone.
///
/// `expected`/`actual` depend on the kind: for a fixed point they are π(n)
/// and π(n²) (equal by definition of the finding); for a divisibility
/// failure, 0 and π(n²) mod n; for a bound violation, the violated bound
/// and π(n²) (or 0 and π(n²) mod π(n) for the divisibility strengthening);
/// for a lifting failure at n = p^e, p^(e−1)·π(p) and π(p^e).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureFinding {
    pub n: u64,
    pub kind: FindingKind,
    pub expected: u64,
    pub actual: u64,
}

/// Comma-separated row form used by all finding output.
impl ConjectureFinding {
    #[must_use]
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.n, self.kind, self.expected, self.actual)
    }
}

fn check_square_range(limit: u64) -> Result<()> {
    if (limit as u128) * (limit as u128) >= MODULUS_CAP as u128 {
        return Err(Error::capacity(
            "squared scan limit",
            limit as u128 * limit as u128,
            MODULUS_CAP as u128,
        ));
    }
    Ok(())
}

/// All n with 2 ≤ n ≤ limit and π(n²) = π(n), each reported as a finding.
///
/// n = 1 satisfies the equation trivially (π(1) = π(1) = 1) and is excluded;
/// the interesting claim is that 6 and 12 are the only solutions above it.
pub fn fixed_point_scan(limit: u64) -> Result<Vec<ConjectureFinding>> {
    check_square_range(limit)?;
    let mut findings = Vec::new();
    for n in 2..=limit {
        let f = modarith::factorize(n)?;
        let pi_n = periods::pisano_factored(&f)?.pi;
        let pi_n2 = periods::pisano_factored(&f.squared()?)?.pi;
        if pi_n2 == pi_n {
            findings.push(ConjectureFinding {
                n,
                kind: FindingKind::FixedPoint,
                expected: pi_n,
                actual: pi_n2,
            });
        }
    }
    Ok(findings)
}

/// All n ≤ limit where n fails to divide π(n²); expected to be empty.
pub fn divisibility_scan(limit: u64) -> Result<Vec<ConjectureFinding>> {
    check_square_range(limit)?;
    let mut findings = Vec::new();
    for n in 1..=limit {
        let f = modarith::factorize(n)?;
        let pi_n2 = periods::pisano_factored(&f.squared()?)?.pi;
        if pi_n2 % n != 0 {
            findings.push(ConjectureFinding {
                n,
                kind: FindingKind::DivisibilityFailure,
                expected: 0,
                actual: pi_n2 % n,
            });
        }
    }
    Ok(findings)
}

/// All n ≤ limit violating π(n) ≤ π(n²) ≤ n·π(n), or the sharper
/// observation that π(n) divides π(n²); expected to be empty.
pub fn bounds_scan(limit: u64) -> Result<Vec<ConjectureFinding>> {
    check_square_range(limit)?;
    let mut findings = Vec::new();
    for n in 1..=limit {
        let f = modarith::factorize(n)?;
        let pi_n = periods::pisano_factored(&f)?.pi;
        let pi_n2 = periods::pisano_factored(&f.squared()?)?.pi;
        if pi_n2 < pi_n {
            findings.push(ConjectureFinding {
                n,
                kind: FindingKind::BoundViolation,
                expected: pi_n,
                actual: pi_n2,
            });
        }
        let upper = n
            .checked_mul(pi_n)
            .ok_or_else(|| Error::capacity("period bound", n as u128 * pi_n as u128, u64::MAX as u128))?;
        if pi_n2 > upper {
            findings.push(ConjectureFinding {
                n,
                kind: FindingKind::BoundViolation,
                expected: upper,
                actual: pi_n2,
            });
        }
        if pi_n2 % pi_n != 0 {
            findings.push(ConjectureFinding {
                n,
                kind: FindingKind::BoundViolation,
                expected: 0,
                actual: pi_n2 % pi_n,
            });
        }
    }
    Ok(findings)
}

/// Checks π(p^e) = p^(e−1)·π(p) for every prime p ≤ prime_limit and every
/// 2 ≤ e ≤ max_exponent, both sides computed independently; a finding at
/// e = 2 is exactly a Wall-Sun-Sun event at p.
pub fn lifting_scan(prime_limit: u64, max_exponent: u32) -> Result<Vec<ConjectureFinding>> {
    if max_exponent < 2 {
        return Err(Error::domain("lifting scan needs max_exponent of at least 2"));
    }
    let mut findings = Vec::new();
    for p in crate::sieve::primes_below(prime_limit.saturating_add(1)) {
        let pi_p = periods::pisano(p)?.pi;
        let mut pe = p;
        let mut scale = 1u64; // p^(e−1)
        for _ in 2..=max_exponent {
            pe = pe
                .checked_mul(p)
                .filter(|&v| v < MODULUS_CAP)
                .ok_or_else(|| Error::capacity("lifted modulus", pe as u128 * p as u128, MODULUS_CAP as u128))?;
            scale = scale
                .checked_mul(p)
                .ok_or_else(|| Error::capacity("period scale", scale as u128 * p as u128, u64::MAX as u128))?;
            let expected = scale
                .checked_mul(pi_p)
                .ok_or_else(|| Error::capacity("lifted period", scale as u128 * pi_p as u128, u64::MAX as u128))?;
            let actual = periods::pisano(pe)?.pi;
            if actual != expected {
                findings.push(ConjectureFinding {
                    n: pe,
                    kind: FindingKind::LiftingFailure,
                    expected,
                    actual,
                });
            }
        }
    }
    Ok(findings)
}

/// One row of the φ/π comparison: both functions evaluated on a coprime
/// product, next to their compositions from the factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiAnalogyRow {
    pub m: u64,
    pub n: u64,
    /// φ(m)·φ(n), which multiplicativity says equals φ(mn).
    pub phi_product: u64,
    pub phi_mn: u64,
    /// lcm(π(m), π(n)), which the period composition says equals π(mn).
    pub pi_lcm: u64,
    pub pi_mn: u64,
}

/// Evaluates φ(mn) = φ(m)φ(n) and π(mn) = lcm(π(m), π(n)) on every coprime
/// pair m ≤ n with mn ≤ limit, returning the comparison table.
///
/// Both identities are theorems; a mismatch is reported as a contract
/// violation because it can only mean a defect in the period machinery.
pub fn phi_analogy_report(limit: u64) -> Result<Vec<PhiAnalogyRow>> {
    if limit == 0 {
        return Err(Error::domain("phi analogy limit must be positive"));
    }
    if limit >= MODULUS_CAP {
        return Err(Error::capacity("phi analogy limit", limit as u128, MODULUS_CAP as u128));
    }
    let mut rows = Vec::new();
    for m in 1..=limit {
        if m * m > limit {
            break;
        }
        for n in m..=limit / m {
            if modarith::gcd(m, n) != 1 {
                continue;
            }
            let fm = modarith::factorize(m)?;
            let fn_ = modarith::factorize(n)?;
            let fmn = modarith::factorize(m * n)?;
            let phi_product = euler_phi(&fm) * euler_phi(&fn_);
            let phi_mn = euler_phi(&fmn);
            let pi_lcm = lcm_checked(
                periods::pisano_factored(&fm)?.pi,
                periods::pisano_factored(&fn_)?.pi,
                "period lcm",
            )?;
            let pi_mn = periods::pisano_factored(&fmn)?.pi;
            if phi_product != phi_mn || pi_lcm != pi_mn {
                return Err(Error::contract(format!(
                    "composition mismatch at coprime pair ({m}, {n}): φ product {phi_product} vs \
                     φ({}) = {phi_mn}; period lcm {pi_lcm} vs π({}) = {pi_mn}",
                    m * n,
                    m * n
                )));
            }
            rows.push(PhiAnalogyRow { m, n, phi_product, phi_mn, pi_lcm, pi_mn });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points_up_to_twenty() {
        let found: Vec<u64> = fixed_point_scan(20).unwrap().iter().map(|f| f.n).collect();
        assert_eq!(found, vec![6, 12]);
    }

    #[test]
    fn no_fixed_points_below_six() {
        assert!(fixed_point_scan(5).unwrap().is_empty());
    }

    #[test]
    fn fixed_point_findings_carry_period_values() {
        let findings = fixed_point_scan(12).unwrap();
        assert_eq!(findings[0], ConjectureFinding {
            n: 6,
            kind: FindingKind::FixedPoint,
            expected: 24,
            actual: 24,
        });
        assert_eq!(findings[0].csv_row(), "6,fixed_point,24,24");
        assert_eq!(findings[1].n, 12);
    }

    #[test]
    fn divisibility_clean_to_a_thousand() {
        assert!(divisibility_scan(1_000).unwrap().is_empty());
    }

    #[test]
    fn bounds_clean_to_a_thousand() {
        assert!(bounds_scan(1_000).unwrap().is_empty());
    }

    #[test]
    fn lifting_clean_for_small_primes() {
        assert!(lifting_scan(100, 4).unwrap().is_empty());
        assert!(matches!(lifting_scan(100, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn lifting_rejects_overflowing_towers() {
        assert!(matches!(lifting_scan(3, 63), Err(Error::Capacity { .. })));
    }

    #[test]
    fn phi_analogy_rows_for_known_pairs() {
        let rows = phi_analogy_report(36).unwrap();
        let r = rows.iter().find(|r| (r.m, r.n) == (4, 9)).unwrap();
        assert_eq!((r.phi_product, r.phi_mn), (12, 12));
        assert_eq!((r.pi_lcm, r.pi_mn), (24, 24));
        let r = rows.iter().find(|r| (r.m, r.n) == (5, 6)).unwrap();
        assert_eq!((r.pi_lcm, r.pi_mn), (120, 120));
        // The unit row pairs (1, k); spot-check one.
        let r = rows.iter().find(|r| (r.m, r.n) == (1, 10)).unwrap();
        assert_eq!((r.phi_product, r.phi_mn, r.pi_lcm, r.pi_mn), (4, 4, 60, 60));
    }

    #[test]
    fn scans_reject_oversized_limits() {
        assert!(matches!(fixed_point_scan(4_000_000_000), Err(Error::Capacity { .. })));
        assert!(matches!(divisibility_scan(4_000_000_000), Err(Error::Capacity { .. })));
    }
}
