//! Evaluate the continuous mollified uniform for each mollifier family:
//! density, distribution function, quantiles, and the first moments.

use mollified::{Mollifier, MollifiedUniform};

fn main() -> mollified::Result<()> {
    let dists = [
        MollifiedUniform::new(Mollifier::normal(0.1)?),
        MollifiedUniform::new(Mollifier::logistic(0.1)?),
        MollifiedUniform::new(Mollifier::laplace(0.1)?),
    ];

    for dist in &dists {
        let name = dist.mollifier().family_name();
        println!("{name} mollifier, scale 0.1");
        println!("  pdf(0.5)  = {}", dist.pdf(0.5));
        println!("  cdf(0.0)  = {}", dist.cdf(0.0));
        println!("  cdf(0.5)  = {}", dist.cdf(0.5));
        println!("  qf(0.975) = {}", dist.qf(0.975)?);
        println!("  variance  = {}", dist.variance());
        println!("  kurtosis  = {}", dist.kurtosis());

        // the density is symmetric about 1/2, so cdf(x) + cdf(1-x) = 1
        let x = -0.2;
        println!(
            "  symmetry check: cdf({x}) + cdf({}) = {}",
            1.0 - x,
            dist.cdf(x) + dist.cdf(1.0 - x)
        );
        println!();
    }

    // smoothing adds the mollifier's variance to the uniform's 1/12
    let logistic = &dists[1];
    let c: f64 = 0.1;
    let expected = 1.0 / 12.0 + std::f64::consts::PI.powi(2) * c * c / 3.0;
    println!("logistic variance identity: {} vs {expected}", logistic.variance());
    Ok(())
}
