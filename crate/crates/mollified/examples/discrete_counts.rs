//! The discrete mollified uniform: a uniform count on {1, ..., m} plus
//! an independent symmetric Skellam perturbation.
//!
//! The Skellam rate lambda controls the smoothing. Two closed forms pin
//! the kurtosis behavior: kurtosis equals 3 at lambda = (m^4 - 1)/240,
//! and the maximum over lambda sits at (m^4 + 5 m^2 - 6)/120.

use mollified::discrete::{kurtosis_argmax, pmf_table};
use mollified::DiscreteMollifiedUniform;

fn main() -> mollified::Result<()> {
    let m = 10;

    for lambda in [0.1, 0.5] {
        let dist = DiscreteMollifiedUniform::new(m, lambda)?;
        let rows = pmf_table(&dist)?;
        let mass: f64 = rows.iter().map(|r| r.probability).sum();
        let inside: f64 = rows
            .iter()
            .filter(|r| (1..=m as i64).contains(&r.y))
            .map(|r| r.probability)
            .sum();
        println!(
            "m={m} lambda={lambda}: {} support points tabulated, mass {mass:.12}, on 1..=m {inside:.4}",
            rows.len()
        );
    }

    println!();
    let mesokurtic = (f64::from(m).powi(4) - 1.0) / 240.0;
    let dist = DiscreteMollifiedUniform::new(m, mesokurtic)?;
    println!("lambda = (m^4-1)/240 = {mesokurtic} gives kurtosis {}", dist.kurtosis());

    let (lambda_star, kappa_max) = kurtosis_argmax(m)?;
    println!("maximal kurtosis {kappa_max} at lambda = {lambda_star}");
    let just_below = DiscreteMollifiedUniform::new(m, lambda_star * 0.99)?.kurtosis();
    let just_above = DiscreteMollifiedUniform::new(m, lambda_star * 1.01)?.kurtosis();
    println!("  1% off the argmax: {just_below} and {just_above}");
    Ok(())
}
