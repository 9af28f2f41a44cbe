//! Plain-text table builders for the quantities the library computes.
//! Numbers are printed in shortest form that parses back to the exact
//! same double, so emitted files are stable golden artifacts.

use crate::ar1::SweepRow;
use crate::continuous::KurtosisCurveRow;
use crate::discrete::PmfRow;
use crate::glm::RunRecord;

/// Shortest round-trip decimal; exponent notation outside the range
/// where plain decimals stay readable.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.abs() >= 1e-4 && x.abs() < 1e15 {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn kurtosis_curve_csv(rows: &[KurtosisCurveRow]) -> String {
    let mut out = String::from("family,variance,kurtosis\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            r.family,
            fmt_float(r.variance),
            fmt_float(r.kurtosis)
        ));
    }
    out
}

pub fn pmf_table_csv(rows: &[PmfRow]) -> String {
    let mut out = String::from("y,probability\n");
    for r in rows {
        out.push_str(&format!("{},{}\n", r.y, fmt_float(r.probability)));
    }
    out
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("c,b,mean_norm,pacf1,pacf2\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_float(r.c),
            fmt_float(r.b),
            fmt_float(r.mean_norm),
            fmt_float(r.pacf1),
            fmt_float(r.pacf2)
        ));
    }
    out
}

pub fn study_runs_csv(rows: &[RunRecord]) -> String {
    let mut out = String::from("run,alpha_hat,beta_hat,violations\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.run,
            fmt_float(r.alpha_hat),
            fmt_float(r.beta_hat),
            r.violations
        ));
    }
    out
}

pub fn samples_csv(samples: &[f64]) -> String {
    let mut out = String::from("value\n");
    for &s in samples {
        out.push_str(&fmt_float(s));
        out.push('\n');
    }
    out
}
