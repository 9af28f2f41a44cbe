//! How the mollifier's variance moves the kurtosis of the smoothed
//! uniform between the uniform's 9/5 and the mollifier's own kurtosis.
//!
//! A normal mollifier never reaches 3 (the sum stays platykurtic), a
//! Laplace mollifier crosses it exactly once, which makes the family a
//! convenient dial for producing platykurtic, mesokurtic, or leptokurtic
//! smoothed variates.

use mollified::{kurtosis_curve, kurtosis_from_mollifier_variance, Mollifier};

fn main() -> mollified::Result<()> {
    println!("limits: v -> 0 gives {}", kurtosis_from_mollifier_variance(0.0, 3.0));
    println!(
        "        v -> inf approaches kappa(L), e.g. {} for Laplace at v = 1e6",
        kurtosis_from_mollifier_variance(1e6, 6.0)
    );
    println!();

    let grid: Vec<f64> = (0..=60).map(|k| 10f64.powf(-4.0 + k as f64 / 12.0)).collect();

    for family in [
        Mollifier::normal(1.0)?,
        Mollifier::logistic(1.0)?,
        Mollifier::laplace(1.0)?,
    ] {
        let rows = kurtosis_curve(&family, &grid)?;
        let max = rows.iter().map(|r| r.kurtosis).fold(f64::MIN, f64::max);
        let crossings = rows
            .windows(2)
            .filter(|w| (w[0].kurtosis - 3.0).signum() != (w[1].kurtosis - 3.0).signum())
            .count();
        println!(
            "{:<8} max kurtosis on grid = {max:.6}, crossings of 3 = {crossings}",
            family.family_name()
        );
    }

    println!();
    println!("family,variance,kurtosis");
    for v in [0.0, 0.001, 0.01, 0.1, 1.0] {
        println!("laplace,{v},{}", kurtosis_from_mollifier_variance(v, 6.0));
    }
    Ok(())
}
