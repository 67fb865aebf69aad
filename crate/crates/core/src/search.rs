//! Tuple quantification engine shared by every law checker.
//!
//! A law over `K` free variables is checked by walking `{0..n}^K`. Below the
//! exhaustive cap the walk is complete; above it a fixed-seed sample is drawn.
//! Either way the reported counterexample is the first failing tuple in
//! lexicographic (exhaustive) or draw (sampled) order, independent of how
//! rayon schedules the work.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Default cap on the universe size for exhaustive suites.
pub const DEFAULT_MAX_EXHAUSTIVE: usize = 4096;
/// Environment variable overriding [`DEFAULT_MAX_EXHAUSTIVE`].
pub const MAX_SIZE_ENV: &str = "MCALG_MAX_SIZE";
/// Seed used for sampled suites.
pub const SAMPLE_SEED: u64 = 0x6d63_616c_6721;
/// Number of tuples drawn per law in sampled mode.
pub const SAMPLE_COUNT: usize = 200_000;

/// How a suite covered its quantifier domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

impl Coverage {
    /// Coverage for a universe of `n` elements under the process-wide cap.
    pub fn for_size(n: usize) -> Self {
        if n <= max_exhaustive() {
            Coverage::Exhaustive
        } else {
            Coverage::Sampled {
                seed: SAMPLE_SEED,
                samples: SAMPLE_COUNT,
            }
        }
    }
}

static MAX_EXHAUSTIVE: OnceLock<usize> = OnceLock::new();

/// Current exhaustive-suite cap (`MCALG_MAX_SIZE`, else 4096).
pub fn max_exhaustive() -> usize {
    *MAX_EXHAUSTIVE.get_or_init(|| {
        std::env::var(MAX_SIZE_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_EXHAUSTIVE)
    })
}

/// First tuple in `{0..n}^K` for which `holds` is false.
pub fn first_failure<const K: usize, F>(n: usize, coverage: Coverage, holds: F) -> Option<[usize; K]>
where
    F: Fn([usize; K]) -> bool + Sync,
{
    if n == 0 || K == 0 {
        if K == 0 && n > 0 && !holds([0; K]) {
            return Some([0; K]);
        }
        return None;
    }
    match coverage {
        Coverage::Exhaustive => (0..n).into_par_iter().find_map_first(|head| {
            let mut t = [0usize; K];
            t[0] = head;
            loop {
                if !holds(t) {
                    return Some(t);
                }
                if !advance(&mut t[1..], n) {
                    return None;
                }
            }
        }),
        Coverage::Sampled { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<[usize; K]> = (0..samples)
                .map(|_| std::array::from_fn(|_| rng.gen_range(0..n)))
                .collect();
            draws.into_par_iter().find_first(|t| !holds(*t))
        }
    }
}

/// Odometer step over `{0..n}^len`; false once it wraps.
fn advance(t: &mut [usize], n: usize) -> bool {
    for slot in t.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_lexicographically_first_counterexample() {
        let w = first_failure::<3, _>(5, Coverage::Exhaustive, |[a, b, c]| a + b + c < 6);
        assert_eq!(w, Some([0, 2, 4]));
    }

    #[test]
    fn passes_when_law_holds() {
        assert_eq!(first_failure::<2, _>(7, Coverage::Exhaustive, |[a, b]| a * b == b * a), None);
    }

    #[test]
    fn sampled_mode_is_deterministic() {
        let cov = Coverage::Sampled { seed: 7, samples: 1000 };
        let a = first_failure::<2, _>(50, cov, |[x, y]| x != y);
        let b = first_failure::<2, _>(50, cov, |[x, y]| x != y);
        assert_eq!(a, b);
        assert!(a.is_some());
    }

    #[test]
    fn empty_domain_has_no_counterexample() {
        assert_eq!(first_failure::<2, _>(0, Coverage::Exhaustive, |_| false), None);
    }
}
