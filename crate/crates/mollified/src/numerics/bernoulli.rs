//! Bernoulli numbers by exact rational recurrence.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MAX_INDEX: usize = 60;

fn table() -> &'static Vec<BigRational> {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j, with B_0 = 1
        let mut b: Vec<BigRational> = Vec::with_capacity(MAX_INDEX + 1);
        b.push(BigRational::one());
        for n in 1..=MAX_INDEX {
            let mut acc = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                let c = big_binomial(n + 1, j);
                acc += BigRational::from_integer(c) * bj;
            }
            let div = BigRational::from_integer(BigInt::from(n as i64 + 1));
            b.push(-acc / div);
        }
        b
    })
}

fn big_binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact Bernoulli number B_k for even k in {2, 4, ..., 60}.
pub fn bernoulli_number(even_index: u32) -> Result<&'static BigRational> {
    if even_index == 0 || !even_index.is_multiple_of(2) || even_index as usize > MAX_INDEX {
        return Err(Error::domain(
            "even_index",
            format!("must be even in 2..=60, got {even_index}"),
        ));
    }
    Ok(&table()[even_index as usize])
}

/// B_k rounded to f64.
pub fn bernoulli_number_f64(even_index: u32) -> Result<f64> {
    let b = bernoulli_number(even_index)?;
    b.to_f64().ok_or_else(|| {
        Error::numerical("bernoulli_number_f64", format!("B_{even_index} not representable"))
    })
}

/// |B_k| as f64, the form used in the logistic moment expansion.
pub fn bernoulli_number_abs_f64(even_index: u32) -> Result<f64> {
    let b = bernoulli_number(even_index)?;
    b.abs()
        .to_f64()
        .ok_or_else(|| Error::numerical("bernoulli_number_abs_f64", "not representable".to_string()))
}
