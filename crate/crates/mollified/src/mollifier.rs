//! Centered symmetric mollifiers: the smoothing distributions added to a
//! uniform variate.

use rand_core::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{bernoulli_number_abs_f64, binomial_exact, std_normal_cdf, std_normal_pdf};
use crate::stream::unit_open;

/// The three mollifier families, each with its scale parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "scale", rename_all = "lowercase")]
pub enum Mollifier {
    /// N(0, sigma^2)
    Normal(f64),
    /// Logistic with scale c
    Logistic(f64),
    /// Laplace with scale b
    Laplace(f64),
}

impl Mollifier {
    pub fn normal(sigma: f64) -> Result<Self> {
        validate_scale("sigma", sigma)?;
        Ok(Mollifier::Normal(sigma))
    }

    pub fn logistic(c: f64) -> Result<Self> {
        validate_scale("c", c)?;
        Ok(Mollifier::Logistic(c))
    }

    pub fn laplace(b: f64) -> Result<Self> {
        validate_scale("b", b)?;
        Ok(Mollifier::Laplace(b))
    }

    pub fn scale(&self) -> f64 {
        match *self {
            Mollifier::Normal(s) | Mollifier::Logistic(s) | Mollifier::Laplace(s) => s,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Mollifier::Normal(_) => "normal",
            Mollifier::Logistic(_) => "logistic",
            Mollifier::Laplace(_) => "laplace",
        }
    }

    /// Density at x.
    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            Mollifier::Normal(s) => std_normal_pdf(x / s) / s,
            Mollifier::Logistic(c) => {
                // e^{-|x|/c} / (c (1 + e^{-|x|/c})^2), even in x
                let e = (-x.abs() / c).exp();
                e / (c * (1.0 + e) * (1.0 + e))
            }
            Mollifier::Laplace(b) => (-x.abs() / b).exp() / (2.0 * b),
        }
    }

    /// Distribution function at x; accepts +-infinity.
    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Mollifier::Normal(s) => std_normal_cdf(x / s),
            Mollifier::Logistic(c) => {
                if x.is_infinite() {
                    return if x > 0.0 { 1.0 } else { 0.0 };
                }
                1.0 / (1.0 + (-x / c).exp())
            }
            Mollifier::Laplace(b) => {
                if x <= 0.0 {
                    0.5 * (x / b).exp()
                } else {
                    1.0 - 0.5 * (-x / b).exp()
                }
            }
        }
    }

    /// E[L^k] for even k <= 60. Odd orders are rejected; they vanish by
    /// symmetry and are available through [`Mollifier::moment`].
    pub fn even_moment(&self, k: u32) -> Result<f64> {
        if !k.is_multiple_of(2) {
            return Err(Error::domain("k", format!("must be even, got {k}")));
        }
        if k > 60 {
            return Err(Error::domain("k", format!("must be <= 60, got {k}")));
        }
        if k == 0 {
            return Ok(1.0);
        }
        let s = self.scale();
        Ok(match self {
            // sigma^k (k-1)!!
            Mollifier::Normal(_) => s.powi(k as i32) * double_factorial_odd(k - 1),
            // (2^k - 2) |B_k| pi^k c^k
            Mollifier::Logistic(_) => {
                let two_k = (1u128 << k) as f64 - 2.0;
                two_k
                    * bernoulli_number_abs_f64(k)?
                    * std::f64::consts::PI.powi(k as i32)
                    * s.powi(k as i32)
            }
            // b^k k!
            Mollifier::Laplace(_) => s.powi(k as i32) * factorial(k),
        })
    }

    /// E[L^k] for any k <= 60; odd orders are exactly 0.
    pub fn moment(&self, k: u32) -> Result<f64> {
        if !k.is_multiple_of(2) {
            if k > 60 {
                return Err(Error::domain("k", format!("must be <= 60, got {k}")));
            }
            return Ok(0.0);
        }
        self.even_moment(k)
    }

    /// (Var(L), kappa(L)).
    pub fn variance_and_kurtosis(&self) -> (f64, f64) {
        match *self {
            Mollifier::Normal(s) => (s * s, 3.0),
            Mollifier::Logistic(c) => {
                (std::f64::consts::PI.powi(2) * c * c / 3.0, 21.0 / 5.0)
            }
            Mollifier::Laplace(b) => (2.0 * b * b, 6.0),
        }
    }

    /// One draw. Logistic and Laplace invert the cdf; Normal uses
    /// Box-Muller on two fresh uniforms.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            Mollifier::Normal(s) => {
                let u1 = unit_open(rng);
                let u2 = unit_open(rng);
                s * (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            }
            Mollifier::Logistic(c) => {
                let u = unit_open(rng);
                c * (u / (1.0 - u)).ln()
            }
            Mollifier::Laplace(b) => {
                let u = unit_open(rng);
                if u < 0.5 {
                    b * (2.0 * u).ln()
                } else {
                    -b * (2.0 * (1.0 - u)).ln()
                }
            }
        }
    }
}

fn validate_scale(param: &'static str, scale: f64) -> Result<()> {
    if scale <= 0.0 || !scale.is_finite() {
        return Err(Error::domain(
            param,
            format!("scale must be finite and > 0, got {scale}"),
        ));
    }
    Ok(())
}

fn factorial(k: u32) -> f64 {
    (1..=k as u64).map(|i| i as f64).product()
}

fn double_factorial_odd(k: u32) -> f64 {
    // (k)!! for odd k: k (k-2) ... 1
    let mut acc = 1.0;
    let mut i = k as i64;
    while i > 1 {
        acc *= i as f64;
        i -= 2;
    }
    acc
}

/// Exact binomial coefficient as f64; n stays <= 30 so this is lossless.
pub(crate) fn binomial_f64(n: u32, k: u32) -> f64 {
    binomial_exact(n, k) as f64
}
