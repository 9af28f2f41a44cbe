//! Small dense linear algebra: the Durbin-Levinson recursion and a direct
//! solver sized for finite-state chains.

use crate::error::{Error, Result};

/// Partial autocorrelations from autocorrelations via Durbin-Levinson.
///
/// `acf[0]` must be 1; returns pacf values for lags 1..=max_lag.
pub fn durbin_levinson(acf: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    if max_lag == 0 {
        return Err(Error::domain("max_lag", "must be >= 1".to_string()));
    }
    if acf.len() <= max_lag {
        return Err(Error::domain(
            "acf",
            format!("need at least {} values, got {}", max_lag + 1, acf.len()),
        ));
    }
    if (acf[0] - 1.0).abs() > 1e-12 {
        return Err(Error::domain("acf", format!("acf[0] must be 1, got {}", acf[0])));
    }
    if acf.iter().any(|r| r.abs() > 1.0 + 1e-12) {
        return Err(Error::domain("acf", "autocorrelations must lie in [-1, 1]".to_string()));
    }

    let mut pacf = Vec::with_capacity(max_lag);
    let mut phi: Vec<f64> = Vec::new(); // current AR coefficients
    let mut var: f64 = 1.0; // innovation variance ratio
    for h in 1..=max_lag {
        let mut num = acf[h];
        for (j, &p) in phi.iter().enumerate() {
            num -= p * acf[h - 1 - j];
        }
        if var.abs() < 1e-14 {
            return Err(Error::numerical(
                "durbin_levinson",
                format!("degenerate recursion at lag {h} (innovation variance {var:e})"),
            ));
        }
        let k = num / var;
        let mut next = Vec::with_capacity(h);
        for j in 0..h - 1 {
            next.push(phi[j] - k * phi[h - 2 - j]);
        }
        next.push(k);
        phi = next;
        var *= 1.0 - k * k;
        pacf.push(k);
    }
    Ok(pacf)
}

/// Solve A x = b by Gaussian elimination with partial pivoting.
/// A is given as rows and consumed.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = a.len();
    if n == 0 || b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::domain("matrix", "need square A with matching rhs".to_string()));
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        if a[pivot][col].abs() < 1e-300 {
            return Err(Error::numerical(
                "solve_dense",
                format!("singular matrix at column {col}"),
            ));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = 1.0 / a[col][col];
        for row in col + 1..n {
            let f = a[row][col] * inv;
            if f == 0.0 {
                continue;
            }
            let (head, tail) = a.split_at_mut(row);
            let (pivot_row, work) = (&head[col], &mut tail[0]);
            for (w, p) in work[col..].iter_mut().zip(&pivot_row[col..]) {
                *w -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Ok(x)
}
