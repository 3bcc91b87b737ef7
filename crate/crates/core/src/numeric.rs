//! Adaptive numerical integration and finite differences.
//!
//! These routines are deliberately independent of every closed-form
//! expression in the crate: the test suites use them to arbitrate the
//! analytic formulas, and a handful of operations without closed forms
//! (TTT transform, non-integer Rényi orders) evaluate through them.

use crate::error::{Error, Result};

/// Outcome of an adaptive quadrature run.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    /// Estimated value of the integral.
    pub value: f64,
    /// Accumulated absolute error estimate (Kronrod minus Gauss).
    pub abs_error_estimate: f64,
    /// Number of interval bisections performed.
    pub subdivisions: usize,
}

/// Hard cap on interval bisections before giving up.
const MAX_SUBDIVISIONS: usize = 10_000;

/// Integrate `f` over `[a, b]` to absolute tolerance `tol` by adaptive
/// bisection of a 7-15 Gauss–Kronrod rule. `b` may be `f64::INFINITY`,
/// in which case the tail is folded in with the substitution
/// `x = a + t/(1−t)` on `t ∈ [0, 1)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain(format!("tolerance must be > 0, got {tol}")));
    }
    if b.is_infinite() {
        let g = |t: f64| {
            let u = 1.0 - t;
            if u <= 0.0 {
                return 0.0;
            }
            let fx = f(a + t / u);
            if fx == 0.0 {
                0.0
            } else {
                fx / (u * u)
            }
        };
        return integrate_finite(&g, 0.0, 1.0, tol);
    }
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::domain(format!(
            "bad integration interval [{a}, {b}]"
        )));
    }
    integrate_finite(&f, a, b, tol)
}

/// Globally adaptive bisection: the panel with the worst error estimate is
/// split until the summed estimate meets `tol` or the cap is hit.
fn integrate_finite<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }
    impl Panel {
        fn key(&self) -> f64 {
            if self.err.is_nan() {
                f64::INFINITY
            } else {
                self.err
            }
        }
    }

    let make = |a: f64, b: f64| {
        let (value, err) = gk15(f, a, b);
        Panel { a, b, value, err }
    };

    let mut active = vec![make(a, b)];
    // panels narrowed to the f64 resolution limit; no further splitting
    let mut settled: Vec<Panel> = Vec::new();
    let mut subdivisions = 0usize;

    loop {
        let active_err: f64 = active.iter().map(|p| p.key()).sum();
        let settled_err: f64 = settled.iter().map(|p| p.err).sum();
        // For large-magnitude integrals an absolute tolerance below
        // machine-relative precision is unreachable; floor it there.
        let scale: f64 = active
            .iter()
            .chain(settled.iter())
            .map(|p| p.value.abs())
            .sum();
        if active_err + settled_err <= tol.max(1e-14 * scale) || active.is_empty() {
            break;
        }
        if subdivisions >= MAX_SUBDIVISIONS {
            return Err(Error::Quadrature(format!(
                "subdivision cap {MAX_SUBDIVISIONS} exceeded on [{a}, {b}] \
                 (err estimate {:.3e})",
                active_err + settled_err
            )));
        }
        let worst = active
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| x.key().total_cmp(&y.key()))
            .map(|(i, _)| i)
            .expect("non-empty active list");
        let panel = active.swap_remove(worst);
        let mid = 0.5 * (panel.a + panel.b);
        if !(mid > panel.a && mid < panel.b) {
            if panel.err.is_nan() {
                return Err(Error::Quadrature(format!(
                    "integrand not finite near x = {mid}"
                )));
            }
            settled.push(panel);
            continue;
        }
        subdivisions += 1;
        active.push(make(panel.a, mid));
        active.push(make(mid, panel.b));
    }

    let value =
        active.iter().map(|p| p.value).sum::<f64>() + settled.iter().map(|p| p.value).sum::<f64>();
    let abs_error_estimate =
        active.iter().map(|p| p.key()).sum::<f64>() + settled.iter().map(|p| p.err).sum::<f64>();
    Ok(QuadratureResult {
        value,
        abs_error_estimate,
        subdivisions,
    })
}

// 7-point Gauss / 15-point Kronrod nodes and weights (positive half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_67,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss–Kronrod 7-15 panel; returns (Kronrod value, |K15 − G7|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

/// Central finite difference (f(x+h) − f(x−h)) / 2h.
pub fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_tail_to_one() {
        let r = integrate(|x| (-x).exp(), 0.0, f64::INFINITY, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "got {}", r.value);
    }

    #[test]
    fn polynomial_exact() {
        // K15 integrates degree-22 polynomials exactly; a cubic is trivial.
        let r = integrate(|x| x * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((r.value - 4.0).abs() < 1e-12);
        assert_eq!(r.subdivisions, 0);
    }

    #[test]
    fn mixture_first_moment() {
        // ∫₀^∞ x · (1/3) e^{−x}(x + x²) dx = (Γ(3) + Γ(4))/3 = 8/3
        let r = integrate(
            |x| x * (1.0 / 3.0) * (-x).exp() * (x + x * x),
            0.0,
            f64::INFINITY,
            1e-10,
        )
        .unwrap();
        assert!((r.value - 8.0 / 3.0).abs() < 1e-8, "got {}", r.value);
    }

    #[test]
    fn linearity() {
        let f = |x: f64| (-x).exp();
        let g = |x: f64| x * (-x).exp();
        let fv = integrate(f, 0.0, 10.0, 1e-12).unwrap();
        let gv = integrate(g, 0.0, 10.0, 1e-12).unwrap();
        let combo = integrate(|x| 3.0 * f(x) + 0.5 * g(x), 0.0, 10.0, 1e-12).unwrap();
        let expected = 3.0 * fv.value + 0.5 * gv.value;
        let budget = 3.0 * fv.abs_error_estimate
            + 0.5 * gv.abs_error_estimate
            + combo.abs_error_estimate
            + 1e-12;
        assert!((combo.value - expected).abs() <= budget);
    }

    #[test]
    fn interval_splitting_is_additive() {
        let f = |x: f64| (x.sin() + 2.0) / (1.0 + x * x);
        let whole = integrate(f, 0.0, 5.0, 1e-11).unwrap();
        let left = integrate(f, 0.0, 1.7, 1e-11).unwrap();
        let right = integrate(f, 1.7, 5.0, 1e-11).unwrap();
        let budget = 2.0
            * (whole.abs_error_estimate + left.abs_error_estimate + right.abs_error_estimate)
            + 1e-12;
        assert!((whole.value - (left.value + right.value)).abs() <= budget);
    }

    #[test]
    fn central_diff_square() {
        let d = central_diff(|x| x * x, 3.0, 1e-5);
        assert!((d - 6.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
        assert!(integrate(|x| x, 1.0, 0.0, 1e-8).is_err());
        assert!(integrate(|x| x, f64::NAN, 1.0, 1e-8).is_err());
    }
}
