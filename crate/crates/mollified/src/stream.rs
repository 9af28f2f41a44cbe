//! Deterministic random streams.
//!
//! Every randomized computation draws from a ChaCha12 generator keyed by a
//! master seed. Independent subtasks (simulation runs, parallel sweep
//! cells) get their own stream number, so results do not depend on
//! scheduling order.

use rand_chacha::ChaCha12Rng;
use rand_core::{Rng, SeedableRng};

/// Seed used when the caller provides none.
pub const DEFAULT_SEED: u64 = 271_828;

/// Environment variable consulted for a seed override.
pub const SEED_ENV_VAR: &str = "MOLLIFIED_SEED";

/// Generator for a top-level task.
pub fn master_rng(seed: u64) -> ChaCha12Rng {
    task_rng(seed, 0)
}

/// Generator for subtask `task` under the given master seed. Streams with
/// distinct task numbers never overlap.
pub fn task_rng(seed: u64, task: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(task);
    rng
}

/// Uniform draw on the open interval (0, 1) with 53-bit resolution.
pub fn unit_open<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
        if u > 0.0 {
            return u;
        }
    }
}

/// Binomial draw by cdf inversion.
///
/// The walk runs over at most n+1 states; p > 1/2 is reflected so the
/// accumulated mass starts at the heavy end. When (1-p)^n underflows the
/// term recurrence starts from the log-domain pmf instead.
pub fn binomial<R: Rng>(rng: &mut R, n: u32, p: f64) -> u32 {
    debug_assert!((0.0..=1.0).contains(&p), "p={p}");
    if p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    if p > 0.5 {
        return n - binomial_inner(rng, n, 1.0 - p);
    }
    binomial_inner(rng, n, p)
}

fn binomial_inner<R: Rng>(rng: &mut R, n: u32, p: f64) -> u32 {
    let u = unit_open(rng);
    let ln_pmf0 = n as f64 * (-p).ln_1p();
    let ratio = p / (1.0 - p);
    if ln_pmf0 > -700.0 {
        let mut pmf = ln_pmf0.exp();
        let mut cdf = pmf;
        let mut k = 0u32;
        while cdf < u && k < n {
            pmf *= ratio * (n - k) as f64 / (k + 1) as f64;
            cdf += pmf;
            k += 1;
        }
        k
    } else {
        // start the walk where the pmf first becomes representable
        let mut k = 0u32;
        let mut ln_pmf = ln_pmf0;
        while ln_pmf < -700.0 && k < n {
            ln_pmf += ratio.ln() + (((n - k) as f64) / ((k + 1) as f64)).ln();
            k += 1;
        }
        let mut pmf = ln_pmf.exp();
        let mut cdf = pmf;
        while cdf < u && k < n {
            pmf *= ratio * (n - k) as f64 / (k + 1) as f64;
            cdf += pmf;
            k += 1;
        }
        k
    }
}
