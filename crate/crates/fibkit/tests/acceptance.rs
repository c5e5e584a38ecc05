//! End-to-end acceptance checks, one test per criterion. Each prints a
//! single verdict line (visible with `--nocapture`, and always on failure)
//! before asserting, so a run reads as a criterion-by-criterion report.

use std::sync::OnceLock;

use fibkit::conjectures;
use fibkit::oracle;
use fibkit::verify::{run_suites, SuiteReport, VerifyLevel};
use fibkit::wallsun::scan::{render_report, scan, ScanOptions};

fn full_suites() -> &'static [SuiteReport] {
    static SUITES: OnceLock<Vec<SuiteReport>> = OnceLock::new();
    SUITES.get_or_init(|| run_suites(VerifyLevel::Full).expect("verification suites must run"))
}

fn suite(name: &str) -> &'static SuiteReport {
    full_suites()
        .iter()
        .find(|r| r.name == name)
        .unwrap_or_else(|| panic!("no suite named {name}"))
}

fn verdict(label: &str, ok: bool, detail: &str) {
    println!("criterion {label}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {label} failed: {detail}");
}

#[test]
fn criterion_01_entry_point_and_period_match_walking_oracle_to_20000() {
    let mut mismatches = Vec::new();
    for n in 1..=20_000u64 {
        let rec = fibkit::pisano(n).unwrap();
        let kappa = fibkit::kappa(n).unwrap();
        if kappa != oracle::naive_kappa(n).unwrap() || rec.pi != oracle::naive_pisano(n).unwrap() {
            mismatches.push(n);
        }
    }
    verdict(
        "01 oracle equivalence of kappa and pi to 20000",
        mismatches.is_empty(),
        &format!("mismatches at {mismatches:?}"),
    );
}

#[test]
fn criterion_02_power_congruence_at_squared_moduli() {
    let s = suite("power-congruence");
    verdict(
        "02 power congruence for n <= 200, m <= 40",
        s.passed() && s.cases == 200 * 40,
        &format!("{} cases, violations {:?}", s.cases, s.violations),
    );
}

#[test]
fn criterion_03_period_decomposes_as_kappa_times_omega() {
    let s = suite("period-order-decomposition");
    verdict(
        "03 pi = kappa * omega and oracle match to 20000",
        s.passed() && s.cases == 20_000,
        &format!("{} cases, violations {:?}", s.cases, s.violations),
    );
}

#[test]
fn criterion_04_residue_pairs_scale_linearly() {
    let s = suite("residue-linearity");
    verdict(
        "04 residue linearity for primes < 100, r <= 2p",
        s.passed(),
        &format!("violations {:?}", s.violations),
    );
}

#[test]
fn criterion_05_square_period_dichotomy_below_100000() {
    let s = suite("square-period-dichotomy");
    verdict(
        "05 pi(p^2) = p*pi(p) for all primes < 100000",
        s.passed() && s.cases == 9_592,
        &format!("{} cases, violations {:?}", s.cases, s.violations),
    );
}

#[test]
fn criterion_06_three_criteria_agree_for_primes_below_one_million() {
    let reports = fibkit::equivalence_scan(999_999, 0).unwrap();
    let disagreements: Vec<u64> = reports.iter().filter(|r| !r.agree).map(|r| r.p).collect();
    verdict(
        "06 criterion equivalence for primes < 10^6",
        reports.len() == 78_498 && disagreements.is_empty(),
        &format!("{} primes, disagreements at {disagreements:?}", reports.len()),
    );
}

#[test]
fn criterion_07_square_entry_point_is_proper_multiple_of_p() {
    let s = suite("square-entry-witness");
    verdict(
        "07 kappa(p^2) a proper multiple of p for primes <= 50",
        s.passed() && s.cases == 15,
        &format!("{} cases, violations {:?}", s.cases, s.violations),
    );
}

#[test]
fn criterion_08_product_index_evaluator_matches_direct_computation() {
    let mut bad = Vec::new();
    for modulus in (20..=1000u64).step_by(20) {
        for m in 1..=30u64 {
            for n in 1..=30u64 {
                let via_expansion = fibkit::siebeck_mod(m, n, modulus).unwrap().value;
                let direct = fibkit::fib_mod(m * n, modulus).unwrap().value;
                if via_expansion != direct {
                    bad.push((m, n, modulus));
                }
            }
        }
    }
    verdict(
        "08 product-index evaluator vs direct for m, n <= 30 over 50 moduli",
        bad.is_empty(),
        &format!("disagreements at {bad:?}"),
    );
}

#[test]
fn criterion_09_period_fixed_points_to_100000_are_6_and_12() {
    let ns: Vec<u64> = conjectures::fixed_point_scan(100_000).unwrap().iter().map(|f| f.n).collect();
    verdict(
        "09 fixed points of squaring to 10^5 are exactly {6, 12}",
        ns == vec![6, 12],
        &format!("found {ns:?}"),
    );
}

#[test]
fn criterion_10_period_of_square_is_divisible_by_n_to_100000() {
    let findings = conjectures::divisibility_scan(100_000).unwrap();
    verdict(
        "10 n | pi(n^2) clean to 10^5",
        findings.is_empty(),
        &format!("findings {findings:?}"),
    );
}

#[test]
fn criterion_11_period_bounds_hold_to_10000() {
    let findings = conjectures::bounds_scan(10_000).unwrap();
    verdict(
        "11 pi(n) <= pi(n^2) <= n*pi(n) clean to 10^4",
        findings.is_empty(),
        &format!("findings {findings:?}"),
    );
}

#[test]
fn criterion_12_scan_to_100_million_is_clean_deterministic_and_resumable() {
    let base = ScanOptions::new(2, 99_999_999);

    let mut single = base.clone();
    single.jobs = 1;
    let reference = scan(&single).unwrap();
    let clean = reference.wss_found.is_empty() && reference.primes_checked == 5_761_455;

    let mut deterministic = true;
    for jobs in [2usize, 8] {
        let mut o = base.clone();
        o.jobs = jobs;
        let other = scan(&o).unwrap();
        deterministic &= other == reference && render_report(&other) == render_report(&reference);
    }

    let dir = tempfile::tempdir().unwrap();
    let mut first_leg = base.clone();
    first_leg.checkpoint_path = Some(dir.path().join("scan.toml"));
    first_leg.stop_after_segments = Some(40);
    let partial = scan(&first_leg).unwrap();
    let mut second_leg = first_leg.clone();
    second_leg.stop_after_segments = None;
    second_leg.resume = true;
    let resumed = scan(&second_leg).unwrap();
    let resumable = !partial.complete
        && resumed == reference
        && render_report(&resumed) == render_report(&reference);

    verdict(
        "12 scan to 10^8 clean, worker-count deterministic, resumable",
        clean && deterministic && resumable,
        &format!(
            "clean={clean} deterministic={deterministic} resumable={resumable} \
             (primes={}, wss={:?})",
            reference.primes_checked, reference.wss_found
        ),
    );
}

#[test]
fn criterion_13_index_divisibility_suites_pass_at_documented_bounds() {
    let names = [
        "entry-point-divisibility",
        "entry-point-power-divisibility",
        "prime-index-extraction",
    ];
    let mut ok = true;
    let mut detail = String::new();
    for name in names {
        let s = suite(name);
        ok &= s.passed();
        detail.push_str(&format!("{name}: {} cases, {} violations; ", s.cases, s.violations.len()));
    }
    verdict("13 index divisibility suites at documented bounds", ok, &detail);
}
