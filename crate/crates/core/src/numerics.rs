//! Small numerical kernels: adaptive Gauss-Kronrod quadrature and least squares.

use crate::error::{Error, Result};

// 15-point Kronrod nodes on [-1, 1] (non-negative half) with the embedded
// 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_2,
    0.063_092_092_629_979_0,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 2000;

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Globally adaptive: the interval with the largest error estimate is bisected
/// until the summed estimate meets `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut parts: Vec<(f64, f64, f64, f64)> = (0..4)
        .map(|i| {
            let lo = a + (b - a) * i as f64 / 4.0;
            let hi = if i == 3 { b } else { a + (b - a) * (i + 1) as f64 / 4.0 };
            let (v, e) = kronrod(&f, lo, hi);
            (lo, hi, v, e)
        })
        .collect();
    loop {
        let total: f64 = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if !total.is_finite() || !err.is_finite() {
            return Err(Error::numeric(
                "quadrature produced a non-finite value",
                format!("range [{a}, {b}]"),
            ));
        }
        if err <= tol {
            return Ok(total);
        }
        if parts.len() >= MAX_INTERVALS {
            return Err(Error::numeric(
                "quadrature failed to converge",
                format!("range [{a}, {b}], error estimate {err:e} > {tol:e}"),
            ));
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Interval exhausted at machine precision; accept what we have.
            return Ok(total);
        }
        let (v1, e1) = kronrod(&f, lo, mid);
        let (v2, e2) = kronrod(&f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// Integrates `f(x, y)` over the rectangle `[x0, x1] x [y0, y1]` by nesting the
/// one-dimensional rule.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    (x0, x1): (f64, f64),
    (y0, y1): (f64, f64),
    tol: f64,
) -> Result<f64> {
    let inner_tol = tol / (4.0 * (x1 - x0).abs().max(1.0));
    // Inner failures surface as NaN, which the outer rule turns into an error.
    integrate(
        |x| integrate(|y| f(x, y), y0, y1, inner_tol).unwrap_or(f64::NAN),
        x0,
        x1,
        tol,
    )
}

/// Ordinary least-squares fit `y = a + b x`; returns the slope and its
/// standard error. Fewer than three points give an infinite standard error.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return (0.0, f64::INFINITY);
    }
    let nf = n as f64;
    let mx = xs[..n].iter().sum::<f64>() / nf;
    let my = ys[..n].iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..n {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if sxx == 0.0 {
        return (0.0, f64::INFINITY);
    }
    let slope = sxy / sxx;
    if n < 3 {
        return (slope, f64::INFINITY);
    }
    let intercept = my - slope * mx;
    let ssr: f64 = (0..n)
        .map(|i| {
            let r = ys[i] - intercept - slope * xs[i];
            r * r
        })
        .sum();
    (slope, (ssr / (nf - 2.0) / sxx).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let v = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn handles_kinks() {
        let v = integrate(|x: f64| x.abs(), -1.0, 3.0, 1e-10).unwrap();
        assert!((v - 5.0).abs() < 1e-9);
    }

    #[test]
    fn gaussian_by_nested_rule() {
        let v = integrate_2d(|x, y| (-(x * x + y * y)).exp(), (-3.0, 3.0), (-3.0, 3.0), 1e-10).unwrap();
        // (sqrt(pi) erf(3))^2
        let exact = std::f64::consts::PI * 0.999_977_909_503_001_4f64.powi(2);
        assert!((v - exact).abs() < 1e-9, "{v}");
    }

    #[test]
    fn slope_of_a_line() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 + 0.5 * x).collect();
        let (b, se) = ols_slope(&xs, &ys);
        assert!((b - 0.5).abs() < 1e-12);
        assert!(se < 1e-10);
    }
}
