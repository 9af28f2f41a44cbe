//! Soft clipping: a smooth, strictly increasing surrogate for the clipped
//! identity, together with its exact inverse.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ln1m_exp, log1p_exp};

/// min{1, max{0, x}}.
pub fn crelu(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Soft clipping with sharpness scale c > 0. Output lies in the open
/// interval (0, 1); as c shrinks the function approaches [`crelu`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SoftClip {
    c: f64,
}

impl SoftClip {
    pub fn new(c: f64) -> Result<Self> {
        if c <= 0.0 || !c.is_finite() {
            return Err(Error::domain("c", format!("must be finite and > 0, got {c}")));
        }
        Ok(SoftClip { c })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    // for callers that already validated c > 0 through their own types
    pub(crate) const fn from_validated(c: f64) -> Self {
        SoftClip { c }
    }

    /// sc_c(x) = c ln((e^{x/c} + 1)/(e^{(x-1)/c} + 1}), evaluated as
    /// crelu(x) plus two softplus corrections so nothing overflows.
    pub fn sc(&self, x: f64) -> f64 {
        let c = self.c;
        crelu(x) + c * log1p_exp(-(x / c).abs()) - c * log1p_exp(-((1.0 - x) / c).abs())
    }

    /// Inverse of [`SoftClip::sc`] on (0, 1):
    /// q + c ln(1 - e^{-q/c}) - c ln(1 - e^{-(1-q)/c}).
    pub fn sc_inv(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain("q", format!("must lie in (0, 1), got {q}")));
        }
        let c = self.c;
        Ok(q + c * ln1m_exp(q / c) - c * ln1m_exp((1.0 - q) / c))
    }

    /// d/dx sc_c(x): the difference of logistic cdfs at x and x-1, written
    /// as a product so nearby terms never cancel.
    pub fn derivative(&self, x: f64) -> f64 {
        let c = self.c;
        sigmoid(x / c) * sigmoid((1.0 - x) / c) * (-(-1.0 / c).exp_m1())
    }

    /// Second derivative, the difference of the two logistic densities.
    pub fn second_derivative(&self, x: f64) -> f64 {
        let c = self.c;
        logistic_pdf(x, c) - logistic_pdf(x - 1.0, c)
    }
}

fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

fn logistic_pdf(x: f64, c: f64) -> f64 {
    let e = (-x.abs() / c).exp();
    e / (c * (1.0 + e) * (1.0 + e))
}
