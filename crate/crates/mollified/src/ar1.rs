//! Bounded-count Markov chain with an autoregressive mean: given the
//! current count y out of n, the next count is Bin(n, sc_c(a + b y / n)).
//! The soft clip keeps the success probability valid for every state, so
//! the chain is well defined for any finite slope b. The state space is
//! finite, which makes the stationary law and its correlation structure
//! exactly computable.

use rand_core::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{compensated_dot, compensated_sum, durbin_levinson, ln_binomial, solve_dense};
use crate::softclip::SoftClip;
use crate::stream::binomial;

/// Chain on {0, ..., n} with transition Bin(n, sc_c(a + b y / n)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ar1ScModel {
    n: u32,
    a: f64,
    b: f64,
    clip: SoftClip,
}

impl Ar1ScModel {
    pub fn new(n: u32, a: f64, b: f64, c: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("n", "binomial size must be >= 1".to_string()));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::domain("a/b", format!("must be finite, got a={a}, b={b}")));
        }
        Ok(Ar1ScModel {
            n,
            a,
            b,
            clip: SoftClip::new(c)?,
        })
    }

    /// Chooses the intercept a = (1 - b) t so the linear recursion
    /// E[Y'/n] = a + b E[Y/n] has fixed point t.
    pub fn with_target_mean(n: u32, b: f64, c: f64, target: f64) -> Result<Self> {
        if !(target > 0.0 && target < 1.0) {
            return Err(Error::domain(
                "target",
                format!("normalized target mean must lie in (0, 1), got {target}"),
            ));
        }
        Ar1ScModel::new(n, (1.0 - b) * target, b, c)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Success probability used when the chain sits at state y.
    pub fn step_prob(&self, y: u32) -> f64 {
        self.clip.sc(self.a + self.b * y as f64 / self.n as f64)
    }

    /// Row-stochastic transition matrix over states 0..=n.
    pub fn transition_matrix(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.n as u64;
        let size = self.n as usize + 1;
        let mut p = Vec::with_capacity(size);
        for y in 0..size {
            let eta = self.a + self.b * y as f64 / self.n as f64;
            let pi = self.clip.sc(eta);
            let one_minus = self.clip.sc(1.0 - eta);
            let ln_pi = pi.ln();
            let ln_1m = one_minus.ln();
            let row: Vec<f64> = (0..size)
                .map(|k| {
                    let mut ln = ln_binomial(n, k as u64);
                    if k > 0 {
                        ln += k as f64 * ln_pi;
                    }
                    if k < size - 1 {
                        ln += (n - k as u64) as f64 * ln_1m;
                    }
                    ln.exp()
                })
                .collect();
            let mass = compensated_sum(row.iter().copied());
            if (mass - 1.0).abs() > 1e-12 {
                return Err(Error::numerical(
                    "transition_matrix",
                    format!("row {y} sums to {mass}"),
                ));
            }
            p.push(row);
        }
        Ok(p)
    }

    pub fn stationary_distribution(&self) -> Result<Vec<f64>> {
        stationary_distribution(&self.transition_matrix()?)
    }

    /// Exact stationary moments and correlations up to `max_lag`.
    pub fn stationary_analysis(&self, max_lag: usize) -> Result<StationaryAnalysis> {
        assert!(max_lag >= 1, "max_lag must be >= 1");
        let p = self.transition_matrix()?;
        let pi = stationary_distribution(&p)?;
        let size = pi.len();
        let mean = compensated_sum(pi.iter().enumerate().map(|(k, &w)| k as f64 * w));
        let centered: Vec<f64> = (0..size).map(|k| k as f64 - mean).collect();
        let variance = compensated_sum(
            pi.iter()
                .zip(&centered)
                .map(|(&w, &v)| w * v * v),
        );
        if variance <= 0.0 {
            return Err(Error::numerical(
                "stationary_analysis",
                format!("degenerate stationary variance {variance}"),
            ));
        }
        // u[k] after h steps is E[Y_h - mean | Y_0 = k]
        let mut acf = Vec::with_capacity(max_lag + 1);
        acf.push(1.0);
        let mut u = centered.clone();
        for _ in 1..=max_lag {
            let next: Vec<f64> = p
                .iter()
                .map(|row| compensated_sum(row.iter().zip(&u).map(|(&pr, &uv)| pr * uv)))
                .collect();
            u = next;
            let cov = compensated_sum(
                pi.iter()
                    .zip(&centered)
                    .zip(&u)
                    .map(|((&w, &v), &uv)| w * v * uv),
            );
            acf.push(cov / variance);
        }
        let pacf = durbin_levinson(&acf, max_lag)?;
        Ok(StationaryAnalysis {
            mean,
            variance,
            acf,
            pacf,
        })
    }

    /// Sample a path of `length` states starting from `y0`.
    pub fn simulate_path<R: Rng>(&self, length: usize, y0: u32, rng: &mut R) -> Result<Vec<u32>> {
        if y0 > self.n {
            return Err(Error::domain(
                "y0",
                format!("initial state {y0} outside 0..={}", self.n),
            ));
        }
        if length < 1 {
            return Err(Error::domain("length", "must be >= 1".to_string()));
        }
        let mut path = Vec::with_capacity(length);
        path.push(y0);
        let mut y = y0;
        for _ in 1..length {
            y = binomial(rng, self.n, self.step_prob(y));
            path.push(y);
        }
        Ok(path)
    }
}

/// Stationary law of a row-stochastic matrix, solved as the unique
/// probability vector with pi P = pi.
pub fn stationary_distribution(p: &[Vec<f64>]) -> Result<Vec<f64>> {
    let size = p.len();
    if size == 0 {
        return Err(Error::domain("p", "matrix must be non-empty".to_string()));
    }
    for (i, row) in p.iter().enumerate() {
        if row.len() != size {
            return Err(Error::domain(
                "p",
                format!("row {i} has length {}, expected {size}", row.len()),
            ));
        }
        if row.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
            return Err(Error::domain("p", format!("row {i} has entries outside [0, 1]")));
        }
        let mass: f64 = compensated_sum(row.iter().copied());
        if (mass - 1.0).abs() > 1e-9 {
            return Err(Error::domain("p", format!("row {i} sums to {mass}, not 1")));
        }
    }
    // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1
    let mut a = vec![vec![0.0; size]; size];
    for i in 0..size {
        for j in 0..size {
            a[i][j] = p[j][i] - if i == j { 1.0 } else { 0.0 };
        }
    }
    for v in a[size - 1].iter_mut() {
        *v = 1.0;
    }
    let mut rhs = vec![0.0; size];
    rhs[size - 1] = 1.0;
    let mut pi = solve_dense(a.clone(), rhs.clone())?;
    // one round of iterative refinement with an extended-precision
    // residual recovers the digits the elimination loses when the chain
    // mixes slowly
    for i in 0..size {
        rhs[i] -= compensated_dot(&a[i], &pi);
    }
    let correction = solve_dense(a, rhs)?;
    for (v, d) in pi.iter_mut().zip(&correction) {
        *v += d;
    }
    for v in pi.iter_mut() {
        if *v < 0.0 {
            if *v < -1e-12 {
                return Err(Error::numerical(
                    "stationary_distribution",
                    format!("solution has negative mass {v}"),
                ));
            }
            *v = 0.0;
        }
    }
    let total = compensated_sum(pi.iter().copied());
    for v in pi.iter_mut() {
        *v /= total;
    }
    // residual check against the original balance equations
    for k in 0..size {
        let flow = compensated_sum((0..size).map(|y| pi[y] * p[y][k]));
        if (flow - pi[k]).abs() > 1e-12 {
            return Err(Error::numerical(
                "stationary_distribution",
                format!("balance residual {} at state {k}", flow - pi[k]),
            ));
        }
    }
    Ok(pi)
}

/// Stationary mean, variance, and correlation structure. `acf[h]` is the
/// lag-h autocorrelation (so `acf[0]` is 1); `pacf[h - 1]` is the lag-h
/// partial autocorrelation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryAnalysis {
    pub mean: f64,
    pub variance: f64,
    pub acf: Vec<f64>,
    pub pacf: Vec<f64>,
}

/// One sweep point: a slope/smoothness combination and the stationary
/// quantities the sweep tracks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub c: f64,
    pub b: f64,
    pub mean_norm: f64,
    pub pacf1: f64,
    pub pacf2: f64,
}

/// The slope grid -0.9, -0.8, ..., 0.9.
pub fn default_b_grid() -> Vec<f64> {
    (-9..=9).map(|i| i as f64 / 10.0).collect()
}

/// Evaluate the chain across all (c, b) pairs, holding the linear
/// fixed-point mean at `target`. Rows come back in (c outer, b inner)
/// order regardless of how the work is scheduled.
pub fn sweep(n: u32, c_values: &[f64], b_values: &[f64], target: f64) -> Result<Vec<SweepRow>> {
    if c_values.is_empty() || b_values.is_empty() {
        return Err(Error::domain("sweep", "c and b grids must be non-empty".to_string()));
    }
    let grid: Vec<(f64, f64)> = c_values
        .iter()
        .flat_map(|&c| b_values.iter().map(move |&b| (c, b)))
        .collect();
    grid.into_par_iter()
        .map(|(c, b)| {
            let model = Ar1ScModel::with_target_mean(n, b, c, target)?;
            let analysis = model.stationary_analysis(2)?;
            Ok(SweepRow {
                c,
                b,
                mean_norm: analysis.mean / n as f64,
                pacf1: analysis.pacf[0],
                pacf2: analysis.pacf[1],
            })
        })
        .collect()
}
