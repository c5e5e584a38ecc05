//! Executable verification suites for the identities the period machinery
//! rests on. Each suite sweeps its documented range, counts every checked
//! case, and records a violation witness for anything that fails — an
//! all-green run is a desk-scale certificate, a red one is evidence.

use crate::error::Result;
use crate::fibcore::fib_pair_raw;
use crate::modarith::{addmod, powmod, MODULUS_CAP};
use crate::oracle;
use crate::periods;
use crate::sieve::primes_below;
use crate::wallsun;

/// How far the suites sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    /// Reduced ranges for a fast signal (seconds).
    Quick,
    /// The full documented desk-scale ranges.
    Full,
}

struct Bounds {
    entry_divisibility_n: u64,
    power_divisibility_n: u64,
    power_congruence_n: u64,
    decomposition_n: u64,
    dichotomy_p: u64,
}

impl VerifyLevel {
    fn bounds(self) -> Bounds {
        match self {
            VerifyLevel::Quick => Bounds {
                entry_divisibility_n: 300,
                power_divisibility_n: 120,
                power_congruence_n: 60,
                decomposition_n: 2_000,
                dichotomy_p: 10_000,
            },
            VerifyLevel::Full => Bounds {
                entry_divisibility_n: 2_000,
                power_divisibility_n: 500,
                power_congruence_n: 200,
                decomposition_n: 20_000,
                dichotomy_p: 100_000,
            },
        }
    }
}

/// Result of one suite: how many cases ran and what, if anything, failed.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: u64,
    pub violations: Vec<String>,
}

impl SuiteReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A defect that breaks an identity tends to break it everywhere, so keep
/// only this many witnesses per suite.
const MAX_RECORDED_VIOLATIONS: usize = 32;

struct Recorder {
    name: &'static str,
    cases: u64,
    violations: Vec<String>,
    suppressed: u64,
}

impl Recorder {
    fn new(name: &'static str) -> Self {
        Recorder { name, cases: 0, violations: Vec::new(), suppressed: 0 }
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            return;
        }
        if self.violations.len() < MAX_RECORDED_VIOLATIONS {
            self.violations.push(witness());
        } else {
            self.suppressed += 1;
        }
    }

    fn finish(mut self) -> SuiteReport {
        if self.suppressed > 0 {
            self.violations.push(format!("... and {} more violations", self.suppressed));
        }
        SuiteReport { name: self.name, cases: self.cases, violations: self.violations }
    }
}

/// n | F_m exactly when κ(n) | m, swept over m ≤ 3κ(n) for each n.
fn entry_point_divisibility(max_n: u64) -> Result<SuiteReport> {
    let mut rec = Recorder::new("entry-point-divisibility");
    for n in 1..=max_n {
        let kappa = periods::kappa(n)?;
        let (mut f, mut f_next) = (0u64, 1 % n);
        for m in 1..=3 * kappa {
            (f, f_next) = (f_next, addmod(f, f_next, n));
            let divides = f == 0;
            let should = m % kappa == 0;
            rec.case(divides == should, || {
                format!("n={n} m={m}: F_m ≡ {f} (mod {n}) but κ(n)={kappa}")
            });
        }
    }
    Ok(rec.finish())
}

/// With l the largest power of n dividing F_{κ(n)}: any index m that n
/// divides into is divisible by n to the full power l. Checked at modulus
/// n^(l+1) for m ≤ 4κ(n).
fn entry_point_power_divisibility(max_n: u64) -> Result<SuiteReport> {
    let mut rec = Recorder::new("entry-point-power-divisibility");
    for n in 2..=max_n {
        let kappa = periods::kappa(n)?;
        // Find l and keep the working modulus n^(l+1).
        let mut l = 0u32;
        let mut working = n;
        loop {
            if fib_pair_raw(kappa, working).0 != 0 {
                break;
            }
            l += 1;
            working = match working.checked_mul(n).filter(|&w| w < MODULUS_CAP) {
                Some(w) => w,
                None => break, // cannot widen further; l is already certain
            };
        }
        let nl = n.pow(l);
        let (mut f, mut f_next) = (0u64, 1 % working);
        for m in 1..=4 * kappa {
            (f, f_next) = (f_next, addmod(f, f_next, working));
            if f % n == 0 {
                rec.case(f % nl == 0, || {
                    format!("n={n} m={m}: n | F_m yet F_m ≡ {f} (mod {working}), not divisible by {n}^{l}")
                });
            }
        }
    }
    Ok(rec.finish())
}

/// For primes p with p ∤ F_p: p | F_{pm} forces p | F_m.
fn prime_index_extraction() -> Result<SuiteReport> {
    let mut rec = Recorder::new("prime-index-extraction");
    for p in primes_below(51) {
        if fib_pair_raw(p, p).0 == 0 {
            continue; // p = 5, the excluded self-dividing prime
        }
        for m in 1..=60u64 {
            if fib_pair_raw(p * m, p).0 == 0 {
                rec.case(fib_pair_raw(m, p).0 == 0, || {
                    format!("p={p} m={m}: p divides F_pm but not F_m")
                });
            } else {
                rec.cases += 1;
            }
        }
    }
    Ok(rec.finish())
}

/// F_{mκ(n)+1} ≡ F_{κ(n)+1}^m at modulus n², for n ≤ max_n, m ≤ 40.
fn power_congruence(max_n: u64) -> Result<SuiteReport> {
    let mut rec = Recorder::new("power-congruence");
    for n in 1..=max_n {
        let n2 = n * n;
        let kappa = periods::kappa(n)?;
        let base = fib_pair_raw(kappa, n2).1;
        for m in 1..=40u64 {
            let direct = fib_pair_raw(m * kappa + 1, n2).0;
            let powered = powmod(base, m, n2);
            rec.case(direct == powered, || {
                format!("n={n} m={m}: F_{{mκ+1}} ≡ {direct} but F_{{κ+1}}^m ≡ {powered} (mod {n2})")
            });
        }
    }
    Ok(rec.finish())
}

/// π = κ·ω and both κ and π match the walking oracle, for n ≤ max_n.
fn period_order_decomposition(max_n: u64) -> Result<SuiteReport> {
    let mut rec = Recorder::new("period-order-decomposition");
    for n in 1..=max_n {
        let record = periods::pisano(n)?;
        let naive_pi = oracle::naive_pisano(n)?;
        let naive_kappa = oracle::naive_kappa(n)?;
        let ok = record.pi == naive_pi
            && record.kappa == naive_kappa
            && record.pi == record.kappa * record.omega;
        rec.case(ok, || {
            format!(
                "n={n}: structural (κ={}, ω={}, π={}) vs oracle (κ={naive_kappa}, π={naive_pi})",
                record.kappa, record.omega, record.pi
            )
        });
    }
    Ok(rec.finish())
}

/// The residue pair scales linearly along multiples of the period:
/// F_{rπ(p)} ≡ (r·α₁)p and F_{rπ(p)+1} ≡ (r·β₁)p + 1 modulo p².
fn residue_linearity() -> Result<SuiteReport> {
    let mut rec = Recorder::new("residue-linearity");
    for p in primes_below(100) {
        let pr = wallsun::pisano_residues(p)?;
        let pi = periods::pisano(p)?.pi;
        let p2 = p * p;
        for r in 1..=2 * p {
            let (f, f_next) = fib_pair_raw(r * pi, p2);
            let want_f = (r % p) * pr.alpha1.value % p * p;
            let want_next = (r % p) * pr.beta1.value % p * p + 1;
            rec.case(f == want_f && f_next == want_next, || {
                format!(
                    "p={p} r={r}: pair at rπ is ({f}, {f_next}) mod {p2}, expected ({want_f}, {want_next})"
                )
            });
        }
    }
    Ok(rec.finish())
}

/// π(p²) is π(p) or p·π(p) — and in the swept range always the latter;
/// hitting the former would be a Wall-Sun-Sun event and is reported.
fn square_period_dichotomy(max_p: u64) -> Result<SuiteReport> {
    let mut rec = Recorder::new("square-period-dichotomy");
    for p in primes_below(max_p) {
        let base = periods::pisano(p)?.pi;
        let square = periods::pisano_prime_square(p)?.pi;
        rec.case(square == p * base, || {
            format!("p={p}: π(p²) = {square} = π(p) — Wall-Sun-Sun event")
        });
    }
    Ok(rec.finish())
}

/// The least index m with p² | F_m has p as a proper divisor: p | m, p < m.
fn square_entry_witness() -> Result<SuiteReport> {
    let mut rec = Recorder::new("square-entry-witness");
    for p in primes_below(51) {
        let kappa2 = periods::kappa_prime_power(p, 2)?;
        rec.case(kappa2 % p == 0 && kappa2 > p, || {
            format!("p={p}: κ(p²) = {kappa2} is not a proper multiple of p")
        });
    }
    Ok(rec.finish())
}

/// Runs every suite at the given level, in a fixed order.
pub fn run_suites(level: VerifyLevel) -> Result<Vec<SuiteReport>> {
    let b = level.bounds();
    Ok(vec![
        entry_point_divisibility(b.entry_divisibility_n)?,
        entry_point_power_divisibility(b.power_divisibility_n)?,
        prime_index_extraction()?,
        power_congruence(b.power_congruence_n)?,
        period_order_decomposition(b.decomposition_n)?,
        residue_linearity()?,
        square_period_dichotomy(b.dichotomy_p)?,
        square_entry_witness()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_level_is_all_green() {
        let reports = run_suites(VerifyLevel::Quick).unwrap();
        assert_eq!(reports.len(), 8);
        let names: Vec<&str> = reports.iter().map(|r| r.name).collect();
        assert_eq!(
            names,
            vec![
                "entry-point-divisibility",
                "entry-point-power-divisibility",
                "prime-index-extraction",
                "power-congruence",
                "period-order-decomposition",
                "residue-linearity",
                "square-period-dichotomy",
                "square-entry-witness",
            ]
        );
        for r in &reports {
            assert!(r.cases > 0, "suite {} ran nothing", r.name);
            assert!(r.passed(), "suite {} violations: {:?}", r.name, r.violations);
        }
    }
}
