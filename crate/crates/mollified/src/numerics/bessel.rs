//! Exponentially scaled modified Bessel function of the first kind.

use crate::error::{Error, Result};

/// e^{-z} I_order(z) for z >= 0.
///
/// Relative error stays below 1e-12 for order <= 200 and z <= 1e4 wherever
/// the result is representable. Small z uses the power series with the
/// leading factor taken in log space; larger z uses Miller's downward
/// recurrence normalized by e^{-z}(I_0 + 2 sum I_k) = 1, so nothing here
/// can overflow.
pub fn bessel_i_scaled(order: u32, z: f64) -> Result<f64> {
    if !z.is_finite() || z < 0.0 {
        return Err(Error::domain("z", format!("must be finite and >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(if order == 0 { 1.0 } else { 0.0 });
    }
    if z <= 30.0 {
        Ok(series(order, z))
    } else {
        Ok(miller(order, z))
    }
}

fn series(order: u32, z: f64) -> f64 {
    // e^{-z} (z/2)^n / n! * sum_j t_j, t_0 = 1,
    // t_{j+1} = t_j (z/2)^2 / ((j+1)(j+1+n))
    let n = order as f64;
    let half = z / 2.0;
    let ln_prefactor = n * half.ln() - libm::lgamma(n + 1.0) - z;
    let q = half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..500 {
        let jf = j as f64;
        term *= q / ((jf + 1.0) * (jf + 1.0 + n));
        sum += term;
        if term < sum * 1e-18 {
            break;
        }
    }
    (ln_prefactor + sum.ln()).exp()
}

fn miller(order: u32, z: f64) -> f64 {
    // start high enough that the downward recurrence has forgotten the
    // arbitrary seed by the time it reaches `order`
    let start = (order as usize + 30).max((z + 30.0 * z.sqrt() + 100.0) as usize);
    let mut above = 0.0_f64; // f_{k+1}
    let mut here = 1e-250_f64; // f_k
    let mut target = 0.0;
    let mut norm = 0.0; // accumulates f_0 + 2 sum_{k>=1} f_k
    let mut k = start;
    loop {
        if k == order as usize {
            target = here;
        }
        if k == 0 {
            norm += here;
            break;
        }
        norm += 2.0 * here;
        let below = above + (2.0 * k as f64 / z) * here;
        above = here;
        here = below;
        k -= 1;
        if here.abs() > 1e250 {
            above /= 1e250;
            here /= 1e250;
            norm /= 1e250;
            target /= 1e250;
        }
    }
    target / norm
}
