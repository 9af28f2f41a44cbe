//! The mollified discrete uniform: a uniform variable on {1..m} smoothed
//! by a symmetric Skellam variable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{bessel_i_scaled, binomial_exact, compensated_sum};

/// Symmetric Skellam distribution Sk(lambda, lambda): the difference of
/// two independent Poisson(lambda) variates. Variance 2 lambda, kurtosis
/// 3 + 1/(2 lambda).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Skellam {
    lambda: f64,
}

impl Skellam {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::domain(
                "lambda",
                format!("must be finite and > 0, got {lambda}"),
            ));
        }
        Ok(Skellam { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// P(Z = k) = e^{-2 lambda} I_{|k|}(2 lambda).
    pub fn pmf(&self, k: i64) -> f64 {
        let order = k.unsigned_abs().min(u32::MAX as u64) as u32;
        bessel_i_scaled(order, 2.0 * self.lambda).expect("2 lambda > 0")
    }

    /// Truncation point: mass outside [-K, K] is below 1e-13.
    pub fn truncation(&self) -> i64 {
        (2.0 * self.lambda + 12.0 * (2.0 * self.lambda).sqrt() + 30.0).ceil() as i64
    }

    /// P(Z <= k), summed upward from the truncation point.
    pub fn cdf(&self, k: i64) -> Result<f64> {
        let trunc = self.truncation();
        if trunc > 100_000_000 {
            return Err(Error::numerical(
                "skellam_cdf",
                format!("truncation budget exceeded at lambda = {}", self.lambda),
            ));
        }
        if k < -trunc {
            return Ok(0.0);
        }
        if k >= trunc {
            return Ok(1.0);
        }
        let sum = compensated_sum((-trunc..=k).map(|j| self.pmf(j)));
        Ok(sum.clamp(0.0, 1.0))
    }
}

/// Distribution of Y = V + Z with V uniform on {1..m} independent of
/// Z ~ Sk(lambda, lambda). Symmetric about (m+1)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMollifiedUniform {
    m: u32,
    skellam: Skellam,
}

impl DiscreteMollifiedUniform {
    pub fn new(m: u32, lambda: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::domain("m", format!("must be >= 2, got {m}")));
        }
        Ok(DiscreteMollifiedUniform {
            m,
            skellam: Skellam::new(lambda)?,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn lambda(&self) -> f64 {
        self.skellam.lambda
    }

    pub fn mean(&self) -> f64 {
        (self.m as f64 + 1.0) / 2.0
    }

    /// P(Y = y) = (1/m) (P(Z <= y-1) - P(Z <= y-m-1)).
    pub fn pmf(&self, y: i64) -> Result<f64> {
        let m = self.m as i64;
        let hi = self.skellam.cdf(y - 1)?;
        let lo = self.skellam.cdf(y - m - 1)?;
        Ok(((hi - lo) / self.m as f64).max(0.0))
    }

    /// P(Y <= y) = (1/m) sum_{k=1..m} P(Z <= y-k).
    pub fn cdf(&self, y: i64) -> Result<f64> {
        let m = self.m as i64;
        let mut terms = Vec::with_capacity(self.m as usize);
        for k in 1..=m {
            terms.push(self.skellam.cdf(y - k)?);
        }
        Ok((compensated_sum(terms) / self.m as f64).clamp(0.0, 1.0))
    }

    /// Central moment E[(Y - (m+1)/2)^n] for even n <= 8; odd orders are
    /// exactly 0. Expands over the centered uniform's moments and the
    /// Skellam moments, all of which are closed forms.
    pub fn central_moment(&self, n: u32) -> f64 {
        assert!(n <= 8, "central_moment supports n <= 8, got {n}");
        if n % 2 == 1 {
            return 0.0;
        }
        let mut acc = 0.0;
        for k in (0..=n).step_by(2) {
            acc += binomial_exact(n, k) as f64
                * uniform_central_moment(self.m, n - k)
                * skellam_even_moment(self.skellam.lambda, k);
        }
        acc
    }

    pub fn variance(&self) -> f64 {
        let m = self.m as f64;
        (m * m - 1.0) / 12.0 + 2.0 * self.skellam.lambda
    }

    /// Kurtosis in closed form:
    /// ((3m^4-10m^2+7)/240 + (m^2-1) Var(Z)/2 + Var(Z)^2 kappa(Z))
    ///   / ((m^2-1)/12 + Var(Z))^2.
    pub fn kurtosis(&self) -> f64 {
        kurtosis_closed_form(self.m, self.skellam.lambda)
    }
}

fn kurtosis_closed_form(m: u32, lambda: f64) -> f64 {
    let m2 = (m as f64) * (m as f64);
    let vz = 2.0 * lambda;
    let kz = 3.0 + 1.0 / (2.0 * lambda);
    let num = (3.0 * m2 * m2 - 10.0 * m2 + 7.0) / 240.0 + (m2 - 1.0) * vz / 2.0 + vz * vz * kz;
    let den = (m2 - 1.0) / 12.0 + vz;
    num / (den * den)
}

/// Kurtosis excess kappa - 3 = (2 lambda - (m^4-1)/120) / D^2 with
/// D = (m^2-1)/12 + 2 lambda. Algebraically identical to
/// `kurtosis - 3` but free of the cancellation that floors a direct
/// maximization near the flat optimum.
fn kurtosis_excess(m: u32, lambda: f64) -> f64 {
    let m2 = (m as f64) * (m as f64);
    let d = (m2 - 1.0) / 12.0 + 2.0 * lambda;
    (2.0 * lambda - (m2 * m2 - 1.0) / 120.0) / (d * d)
}

/// Raw moment E[V^n] of the uniform distribution on {1..m}, by exact
/// integer power sums. Requires n <= 12.
pub fn uniform_raw_moment(m: u32, n: u32) -> f64 {
    assert!(m >= 2, "m must be >= 2");
    assert!(n <= 12, "uniform_raw_moment supports n <= 12, got {n}");
    let sum: u128 = (1..=m as u128).map(|k| k.pow(n)).sum();
    sum as f64 / m as f64
}

/// Central moment E[(V - (m+1)/2)^n] of the uniform on {1..m}, exact via
/// integer sums over the doubled lattice. Odd orders return 0.
pub fn uniform_central_moment(m: u32, n: u32) -> f64 {
    assert!(n <= 12, "uniform_central_moment supports n <= 12, got {n}");
    if n % 2 == 1 {
        return 0.0;
    }
    if n == 0 {
        return 1.0;
    }
    // V - (m+1)/2 = (2k - m - 1)/2 over k = 1..m
    let sum: i128 = (1..=m as i128).map(|k| (2 * k - m as i128 - 1).pow(n)).sum();
    sum as f64 / (m as f64 * 2.0f64.powi(n as i32))
}

/// E[Z^k] for even k <= 8 with Z ~ Sk(lambda, lambda); every even
/// cumulant equals 2 lambda, which collapses the moment expansion to the
/// polynomials below.
fn skellam_even_moment(lambda: f64, k: u32) -> f64 {
    let l = lambda;
    match k {
        0 => 1.0,
        2 => 2.0 * l,
        4 => 2.0 * l + 12.0 * l * l,
        6 => 2.0 * l + 60.0 * l * l + 120.0 * l * l * l,
        8 => 2.0 * l + 252.0 * l * l + 1680.0 * l * l * l + 1680.0 * l * l * l * l,
        _ => unreachable!("even k <= 8"),
    }
}

/// Kurtosis of the bare discrete uniform on {1..m}: the lambda -> 0 limit
/// (3/5)(3 - 4/(m^2-1)).
pub fn discrete_uniform_kurtosis(m: u32) -> f64 {
    let m2 = (m as f64) * (m as f64);
    0.6 * (3.0 - 4.0 / (m2 - 1.0))
}

/// Numerically locate the kurtosis-maximizing lambda and the maximum.
///
/// A coarse logarithmic scan brackets the peak of the kurtosis excess,
/// golden-section search refines it. The excess form keeps the objective
/// well conditioned near its flat maximum.
pub fn kurtosis_argmax(m: u32) -> Result<(f64, f64)> {
    if m < 2 {
        return Err(Error::domain("m", format!("must be >= 2, got {m}")));
    }
    // coarse scan over lambda in [1e-4, m^4], log-spaced
    let lo_exp = -4.0f64;
    let hi_exp = 4.0 * (m as f64).log10();
    let points = 400;
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    let grid: Vec<f64> = (0..=points)
        .map(|i| 10f64.powf(lo_exp + (hi_exp - lo_exp) * i as f64 / points as f64))
        .collect();
    for (i, &l) in grid.iter().enumerate() {
        let v = kurtosis_excess(m, l);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let mut a = grid[best_i.saturating_sub(1)];
    let mut b = grid[(best_i + 1).min(points)];
    if best_i == 0 || best_i == points {
        return Err(Error::numerical(
            "kurtosis_argmax",
            format!("peak at scan boundary for m = {m}"),
        ));
    }
    // golden-section search on the bracketed interval
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = kurtosis_excess(m, x1);
    let mut f2 = kurtosis_excess(m, x2);
    for _ in 0..200 {
        if (b - a) <= 1e-12 * b.abs() {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = kurtosis_excess(m, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = kurtosis_excess(m, x1);
        }
    }
    let lambda_star = 0.5 * (a + b);
    Ok((lambda_star, 3.0 + kurtosis_excess(m, lambda_star)))
}

/// Rows of a pmf table over [-10, m+10], the export range used for
/// plotting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PmfRow {
    pub y: i64,
    pub probability: f64,
}

pub fn pmf_table(dist: &DiscreteMollifiedUniform) -> Result<Vec<PmfRow>> {
    let m = dist.m() as i64;
    (-10..=m + 10)
        .map(|y| {
            Ok(PmfRow {
                y,
                probability: dist.pmf(y)?,
            })
        })
        .collect()
}
