//! Fibonacci arithmetic modulo machine-size integers.
//!
//! The crate computes entry points κ(n) (least m with n | F_m), Pisano
//! periods π(n), and the multiplicative orders tying them together — all
//! structurally, via factorization and lcm composition, never by walking
//! the sequence — plus Wall-Sun-Sun prime testing through three
//! independently computed criteria, a resumable parallel range scanner,
//! desk-scale conjecture sweeps, and executable verification suites for
//! the identities everything rests on. A deliberately naive [`oracle`]
//! module provides ground truth the fast paths are tested against.
//!
//! All moduli live below 2^63 so products fit in `u128` exactly; every
//! public operation returns [`Result`] and reports domain, capacity, and
//! contract violations as typed errors instead of panicking.
//!
//! ```
//! let rec = fibkit::pisano(10)?;
//! assert_eq!((rec.kappa, rec.omega, rec.pi), (15, 4, 60));
//!
//! let report = fibkit::wss_check(11)?;
//! assert!(!report.is_wss);
//! assert_eq!(report.near_miss_distance(), 5);
//! # Ok::<(), fibkit::Error>(())
//! ```

pub mod conjectures;
pub mod error;
pub mod fibcore;
pub mod modarith;
pub mod oracle;
pub mod periods;
pub mod sieve;
pub mod verify;
pub mod wallsun;

pub use error::{Error, Result};
pub use fibcore::{fib_mod, fib_pair_mod, fib_valuation, siebeck_mod, FibPair};
pub use modarith::{
    carmichael, divisors_ascending, euler_phi, factorize, gcd, is_prime, legendre5, mul_mod,
    pow_mod, valuation, Factorization, LegendreSymbol, Residue, MODULUS_CAP,
};
pub use periods::{
    kappa, kappa_prime, kappa_prime_power, order_mod, pisano, pisano_prime_square, PeriodRecord,
};
pub use wallsun::{
    equivalence_report, equivalence_scan, period_growth_criterion, pisano_residues,
    valuation_criterion, wss_check, EquivalenceReport, NearMiss, PisanoResidues, WssReport,
    SCAN_PRIME_CAP,
};
