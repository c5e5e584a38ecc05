//! Prime enumeration: a plain sieve for small bounds and a windowed sieve
//! that lets the scanner walk an arbitrary range in fixed-size blocks.

/// All primes strictly below `limit`, ascending.
#[must_use]
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit <= 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for p in 2..n {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut q = p * p;
        while q < n {
            composite[q] = true;
            q += p;
        }
    }
    primes
}

/// Primes in the half-open window `[lo, hi)`, ascending.
///
/// `base` must contain every prime up to the square root of `hi - 1`; the
/// window is marked against those and whatever survives is prime. The base
/// primes themselves are kept when they fall inside the window.
#[must_use]
pub(crate) fn segment_primes(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    if hi <= lo || hi <= 2 {
        return Vec::new();
    }
    let lo = lo.max(2);
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p * p >= hi {
            break;
        }
        // First multiple of p in the window, but never p itself.
        let first = lo.div_ceil(p).max(2) * p;
        let mut q = first;
        while q < hi {
            composite[(q - lo) as usize] = true;
            q += p;
        }
    }
    (0..len)
        .filter(|&i| !composite[i])
        .map(|i| lo + i as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_below_small_bounds() {
        assert_eq!(primes_below(0), Vec::<u64>::new());
        assert_eq!(primes_below(2), Vec::<u64>::new());
        assert_eq!(primes_below(3), vec![2]);
        assert_eq!(primes_below(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_below(100).len(), 25);
    }

    #[test]
    fn primes_below_million_count() {
        assert_eq!(primes_below(1_000_000).len(), 78_498);
    }

    #[test]
    fn segments_agree_with_plain_sieve() {
        let all = primes_below(10_000);
        let base = primes_below(101); // covers sqrt of every window below 10^4
        let mut collected = Vec::new();
        for lo in (0..10_000).step_by(1_000) {
            collected.extend(segment_primes(lo, lo + 1_000, &base));
        }
        assert_eq!(collected, all);
    }

    #[test]
    fn segment_keeps_base_primes_in_window() {
        let base = primes_below(100);
        assert_eq!(segment_primes(2, 12, &base), vec![2, 3, 5, 7, 11]);
        assert_eq!(segment_primes(0, 5, &base), vec![2, 3]);
        assert_eq!(segment_primes(7, 8, &base), vec![7]);
    }

    #[test]
    fn segment_high_window() {
        let base = primes_below(1_001);
        let window = segment_primes(999_900, 1_000_000, &base);
        assert_eq!(
            window,
            vec![999_907, 999_917, 999_931, 999_953, 999_959, 999_961, 999_979, 999_983]
        );
        assert!(segment_primes(1_000_000, 1_000_000, &base).is_empty());
    }
}
