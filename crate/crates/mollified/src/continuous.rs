//! The mollified uniform distribution: a uniform(0,1) variate plus an
//! independent centered mollifier.

use rand_core::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mollifier::{binomial_f64, Mollifier};
use crate::numerics::{std_normal_cdf, std_normal_pdf};
use crate::softclip::SoftClip;
use crate::stream::unit_open;

/// Distribution of X = U + L with U ~ uniform(0,1) independent of the
/// mollifier L. Symmetric about 1/2; variance 1/12 + Var(L).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MollifiedUniform {
    mollifier: Mollifier,
}

impl MollifiedUniform {
    pub fn new(mollifier: Mollifier) -> Self {
        MollifiedUniform { mollifier }
    }

    pub fn mollifier(&self) -> &Mollifier {
        &self.mollifier
    }

    /// Density f(x) = F_L(x) - F_L(x-1).
    ///
    /// f(x) = f(1 - x), so evaluation reflects onto x <= 1/2 where both
    /// mollifier cdf arguments sit in the left tail and their difference
    /// never cancels against saturated values near 1.
    pub fn pdf(&self, x: f64) -> f64 {
        let x = if x > 0.5 { 1.0 - x } else { x };
        match self.mollifier {
            Mollifier::Logistic(c) => SoftClip::from_validated(c).derivative(x),
            ref m => (m.cdf(x) - m.cdf(x - 1.0)).max(0.0),
        }
    }

    /// Distribution function.
    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_infinite() {
            return if x > 0.0 { 1.0 } else { 0.0 };
        }
        match self.mollifier {
            Mollifier::Logistic(c) => SoftClip::from_validated(c).sc(x),
            // F(x) = 1 - F(1 - x); the left half keeps every term small
            // and same-signed, the reflected right half then inherits its
            // accuracy instead of cancelling near saturation
            Mollifier::Normal(_) | Mollifier::Laplace(_) if x > 0.5 => {
                (1.0 - self.cdf(1.0 - x)).clamp(0.0, 1.0)
            }
            Mollifier::Normal(s) => {
                // s [A(x/s) - A((x-1)/s)] with A(u) = phi(u) + u Phi(u)
                let u = x / s;
                if u <= -40.0 {
                    return 0.0;
                }
                (s * (antiderivative(u) - antiderivative((x - 1.0) / s))).clamp(0.0, 1.0)
            }
            Mollifier::Laplace(b) => {
                // integral of the Laplace cdf over (x-1, x], split at the
                // kink of F_L
                let edge = 0.5 * b * (-(-1.0 / b).exp_m1());
                if x <= 0.0 {
                    edge * (x / b).exp()
                } else {
                    x + 0.5 * b * ((-x / b).exp() - ((x - 1.0) / b).exp())
                }
            }
        }
    }

    /// Quantile function on (0, 1). The logistic case has a closed form;
    /// the other families invert the cdf by bisection-safeguarded Newton
    /// on ln cdf, converged to relative precision 1e-15 in x.
    pub fn qf(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain("q", format!("must lie in (0, 1), got {q}")));
        }
        if q == 0.5 {
            return Ok(0.5);
        }
        if let Mollifier::Logistic(c) = self.mollifier {
            return SoftClip::from_validated(c).sc_inv(q);
        }
        if q > 0.5 {
            // solve on the left half only; 1 - q is exact here
            return Ok(1.0 - self.qf(1.0 - q)?);
        }
        // bracket by doubling outward from the unit interval
        let mut lo = -1.0;
        let mut hi = 2.0;
        while self.cdf(lo) >= q {
            lo = lo * 2.0 - 1.0;
            if lo < -1e9 {
                return Err(Error::numerical("qf", format!("failed to bracket q={q}")));
            }
        }
        while self.cdf(hi) <= q {
            hi = hi * 2.0 + 1.0;
            if hi > 1e9 {
                return Err(Error::numerical("qf", format!("failed to bracket q={q}")));
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..200 {
            let cx = self.cdf(x);
            if cx == q {
                return Ok(x);
            }
            if cx > q {
                hi = x;
            } else {
                lo = x;
            }
            let d = self.pdf(x);
            // Newton on ln cdf: one step crosses many e-folds of tail
            // error, where a step on the cdf itself gains a single e-fold
            let next = if d > 0.0 && cx > 0.0 {
                let newton = x - (cx.ln() - q.ln()) * cx / d;
                if newton > lo && newton < hi {
                    newton
                } else {
                    0.5 * (lo + hi)
                }
            } else {
                0.5 * (lo + hi)
            };
            // converge in x, not in cdf error: tail quantiles have tiny
            // density and a loose cdf target would leave x off by orders
            let eps = 1e-15 * (1.0 + x.abs());
            if (next - x).abs() <= eps || hi - lo <= eps {
                return Ok(next);
            }
            x = next;
        }
        Err(Error::NonConvergence {
            context: "qf",
            budget: 200,
            last: vec![x],
        })
    }

    /// Raw moment E[X^n] = sum_k C(n,k) E[L^k] / (n-k+1); every term is
    /// non-negative. Requires n <= 30.
    pub fn raw_moment(&self, n: u32) -> f64 {
        assert!(n <= 30, "raw_moment supports n <= 30, got {n}");
        let mut acc = 0.0;
        for k in (0..=n).step_by(2) {
            let lk = self.mollifier.even_moment(k).expect("even k <= 30");
            acc += binomial_f64(n, k) * lk / (n - k + 1) as f64;
        }
        acc
    }

    /// Central moment about the mean 1/2. Odd orders return exactly 0.
    ///
    /// Evaluated as sum_k C(n,k) E[(U - 1/2)^{n-k}] E[L^k], whose terms
    /// are all non-negative; an equivalence test pins it to the
    /// alternating expansion over raw moments.
    pub fn central_moment(&self, n: u32) -> f64 {
        assert!(n <= 30, "central_moment supports n <= 30, got {n}");
        if n % 2 == 1 {
            return 0.0;
        }
        let mut acc = 0.0;
        for k in (0..=n).step_by(2) {
            let j = n - k; // even
            let centered_uniform = 0.5f64.powi(j as i32) / (j + 1) as f64;
            let lk = self.mollifier.even_moment(k).expect("even k <= 30");
            acc += binomial_f64(n, k) * centered_uniform * lk;
        }
        acc
    }

    /// Variance 1/12 + Var(L).
    pub fn variance(&self) -> f64 {
        1.0 / 12.0 + self.mollifier.variance_and_kurtosis().0
    }

    /// Kurtosis (1/80 + V/2 + V^2 kappa(L)) / (1/12 + V)^2 with
    /// V = Var(L). Tends to 9/5 as V -> 0 and to kappa(L) as V -> inf.
    pub fn kurtosis(&self) -> f64 {
        let (v, kappa_l) = self.mollifier.variance_and_kurtosis();
        kurtosis_from_mollifier_variance(v, kappa_l)
    }

    /// `count` draws of U + L.
    pub fn sample<R: Rng>(&self, count: usize, rng: &mut R) -> Vec<f64> {
        assert!(count >= 1, "count must be >= 1");
        (0..count)
            .map(|_| unit_open(rng) + self.mollifier.sample(rng))
            .collect()
    }
}

fn antiderivative(u: f64) -> f64 {
    // A(u) = phi(u) + u Phi(u), an antiderivative of the normal cdf
    std_normal_pdf(u) + u * std_normal_cdf(u)
}

/// Kurtosis of the mollified uniform given the mollifier's variance and
/// kurtosis. Accepts v = 0, where the exact uniform value 9/5 beats the
/// rounded quotient by an ulp.
pub fn kurtosis_from_mollifier_variance(v: f64, kappa_l: f64) -> f64 {
    if v == 0.0 {
        return 1.8;
    }
    (1.0 / 80.0 + v / 2.0 + v * v * kappa_l) / (1.0 / 12.0 + v).powi(2)
}

/// One row of a kurtosis-against-variance table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KurtosisCurveRow {
    pub family: &'static str,
    pub variance: f64,
    pub kurtosis: f64,
}

/// Kurtosis of the mollified uniform along a grid of mollifier variances.
/// The family fixes kappa(L); a variance of exactly 0 yields the uniform
/// limit row.
pub fn kurtosis_curve(family: &Mollifier, variance_grid: &[f64]) -> Result<Vec<KurtosisCurveRow>> {
    let (_, kappa_l) = family.variance_and_kurtosis();
    let name = family.family_name();
    let mut rows = Vec::with_capacity(variance_grid.len());
    for &v in variance_grid {
        if v < 0.0 || !v.is_finite() {
            return Err(Error::domain(
                "variance_grid",
                format!("entries must be finite and >= 0, got {v}"),
            ));
        }
        rows.push(KurtosisCurveRow {
            family: name,
            variance: v,
            kurtosis: kurtosis_from_mollifier_variance(v, kappa_l),
        });
    }
    Ok(rows)
}
