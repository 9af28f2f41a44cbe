//! Adaptive Gauss-Kronrod quadrature, used as the independent oracle for
//! densities and moments.

use crate::error::{Error, Result};

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
}

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Nodes are symmetric; only the non-negative half is stored, descending.
const XGK: [f64; 8] = [
    0.99145537112081264,
    0.94910791234275852,
    0.86486442335976907,
    0.74153118559939444,
    0.58608723546769113,
    0.40584515137739717,
    0.20778495500789847,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529225,
    0.063092092629978553,
    0.10479001032225018,
    0.14065325971552592,
    0.1690047266392679,
    0.19035057806478541,
    0.20443294007529889,
    0.20948214108472783,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.12948496616886969,
    0.27970539148927667,
    0.38183005050511894,
    0.41795918367346939,
];

const MAX_PANELS: usize = 4000;

/// Integrate f over [lower, upper] to absolute tolerance `tol`.
///
/// Either endpoint may be infinite; infinite ranges are mapped onto finite
/// ones by rational substitutions before subdividing. Fails if the panel
/// budget is exhausted before the summed error estimate drops below `tol`.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    lower: f64,
    upper: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain("tol", format!("must be > 0, got {tol}")));
    }
    if lower >= upper {
        return Err(Error::domain(
            "bounds",
            format!("need lower < upper, got [{lower}, {upper}]"),
        ));
    }
    match (lower.is_infinite(), upper.is_infinite()) {
        (false, false) => adaptive(&f, lower, upper, tol),
        (true, true) => {
            // x = t/(1-t^2), t in (-1, 1)
            let g = |t: f64| {
                let d = 1.0 - t * t;
                f(t / d) * (1.0 + t * t) / (d * d)
            };
            adaptive(&g, -1.0, 1.0, tol)
        }
        (false, true) => {
            // x = a + t/(1-t), t in (0, 1)
            let g = |t: f64| {
                let d = 1.0 - t;
                f(lower + t / d) / (d * d)
            };
            adaptive(&g, 0.0, 1.0, tol)
        }
        (true, false) => {
            // mirror of the semi-infinite case
            let g = |t: f64| {
                let d = 1.0 - t;
                f(upper - t / d) / (d * d)
            };
            adaptive(&g, 0.0, 1.0, tol)
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    let first = kronrod_panel(f, a, b);
    let mut panels = vec![first];
    for _ in 0..MAX_PANELS {
        let total_err: f64 = panels.iter().map(|p| p.error).sum();
        if total_err <= tol {
            let value: f64 = panels.iter().map(|p| p.value).sum();
            return Ok(QuadratureResult {
                value,
                abs_error_estimate: total_err,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("panel list never empty");
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // interval no longer splittable at double precision
            return Err(Error::numerical(
                "integrate",
                format!("panel [{a}, {b}] collapsed before reaching tolerance {tol}"),
            ));
        }
        panels.push(kronrod_panel(f, a, mid));
        panels.push(kronrod_panel(f, mid, b));
    }
    Err(Error::NonConvergence {
        context: "integrate",
        budget: MAX_PANELS,
        last: vec![panels.iter().map(|p| p.value).sum(), panels.iter().map(|p| p.error).sum()],
    })
}

fn kronrod_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);

    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();

    let mut evals = [0.0f64; 8];
    evals[7] = fc;
    for i in 0..7 {
        let off = half * XGK[i];
        let flo = f(center - off);
        let fhi = f(center + off);
        let pair = flo + fhi;
        kronrod += WGK[i] * pair;
        resabs += WGK[i] * (flo.abs() + fhi.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
        evals[i] = pair;
    }

    // QUADPACK-style error estimate: scale |K - G| by the smoothness proxy
    // resasc = integral of |f - K/2|
    let mean = kronrod * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for i in 0..7 {
        // evals[i] holds the node pair sum; reconstruct |f - mean| pairwise
        // bound: |flo - mean| + |fhi - mean| >= |pair - 2 mean|
        resasc += WGK[i] * (evals[i] - 2.0 * mean).abs();
    }
    resasc *= half.abs();
    resabs *= half.abs();

    let value = kronrod * half;
    let raw = ((kronrod - gauss) * half).abs();
    let mut error = raw;
    if resasc != 0.0 && raw != 0.0 {
        error = resasc * 1.0f64.min((200.0 * raw / resasc).powf(1.5));
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if floor > f64::MIN_POSITIVE {
        error = error.max(floor);
    }

    Panel {
        a,
        b,
        value,
        error,
    }
}
