//! Seeded sampling. Streams are split by (seed, task), so parallel
//! workers draw non-overlapping sequences and rerunning any task gives
//! the same numbers.

use mollified::stream::{master_rng, task_rng, DEFAULT_SEED};
use mollified::{Mollifier, MollifiedUniform};

fn main() -> mollified::Result<()> {
    let dist = MollifiedUniform::new(Mollifier::logistic(0.1)?);

    let mut rng = master_rng(DEFAULT_SEED);
    let draws = dist.sample(100_000, &mut rng);

    let mean = draws.iter().sum::<f64>() / draws.len() as f64;
    let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws.len() - 1) as f64;
    println!("100k draws: mean = {mean:.5} (exact 0.5)");
    println!("            var  = {var:.5} (exact {})", dist.variance());

    // empirical cdf against the exact one at a few quantiles
    let mut sorted = draws.clone();
    sorted.sort_by(f64::total_cmp);
    for q in [0.05, 0.25, 0.5, 0.75, 0.95] {
        let x = sorted[(q * sorted.len() as f64) as usize];
        println!("empirical {q} quantile {x:>8.4}, exact cdf there = {:.4}", dist.cdf(x));
    }
    println!();

    // same task index, same stream
    let a: Vec<f64> = dist.sample(3, &mut task_rng(DEFAULT_SEED, 42));
    let b: Vec<f64> = dist.sample(3, &mut task_rng(DEFAULT_SEED, 42));
    let c: Vec<f64> = dist.sample(3, &mut task_rng(DEFAULT_SEED, 43));
    println!("task 42, twice: {a:?}");
    println!("                {b:?}");
    println!("task 43:        {c:?}");
    assert_eq!(a, b);
    assert_ne!(a, c);
    Ok(())
}
