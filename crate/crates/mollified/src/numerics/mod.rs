//! Shared special functions and numerical kernels.

mod bernoulli;
mod bessel;
mod linalg;
mod quadrature;

pub use bernoulli::{bernoulli_number, bernoulli_number_abs_f64, bernoulli_number_f64};
pub use bessel::bessel_i_scaled;
pub use linalg::{durbin_levinson, solve_dense};
pub use quadrature::{integrate, QuadratureResult};

/// ln(1 + e^x) without overflow for large x and without loss for very
/// negative x.
pub fn log1p_exp(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// ln(1 - e^{-t}) for t > 0. The expm1 form keeps precision when t is
/// tiny, the ln_1p form when e^{-t} is tiny; ln 2 is the classic
/// crossover where both are safe.
pub fn ln1m_exp(t: f64) -> f64 {
    if t > std::f64::consts::LN_2 {
        (-(-t).exp()).ln_1p()
    } else {
        (-(-t).exp_m1()).ln()
    }
}

/// Standard normal cdf via the complementary error function.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Standard normal density.
pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Dot product with Neumaier accumulation plus the exact product low
/// parts recovered through fused multiply-add. Worth its cost where a
/// residual smaller than the summands' rounding is needed.
pub fn compensated_dot(xs: &[f64], ys: &[f64]) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (&x, &y) in xs.iter().zip(ys) {
        let p = x * y;
        comp += x.mul_add(y, -p);
        let t = sum + p;
        if sum.abs() >= p.abs() {
            comp += (sum - t) + p;
        } else {
            comp += (p - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// ln C(n, k) via log-gamma.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    libm::lgamma((n + 1) as f64) - libm::lgamma((k + 1) as f64) - libm::lgamma((n - k + 1) as f64)
}

/// Exact binomial coefficient. Callers stay within n <= 61 where the
/// result fits u128 with room to spare.
pub fn binomial_exact(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc
}

/// Compensated (Neumaier) summation.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
