//! The SSD lifetime distribution: a two-parameter convex mixture of
//! gamma(2, θ) and gamma(α+2, θ) with mixing weight
//! p = θ^α / (θ^α + Γ(α+2)), giving the density
//!
//! ```text
//! f(x; α, θ) = θ^{α+2} / (θ^α + Γ(α+2)) · e^{−θx} (x + x^{α+1}),  x > 0
//! ```
//!
//! α = 0 collapses both components to gamma(2, θ) (the length-biased
//! exponential). All closed forms are evaluated through the mixture
//! representation in log space, so large shape extensions and deep tails
//! stay finite; the quadrature routines in [`crate::numeric`] provide the
//! independent cross-check used throughout the test suites.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::numeric;
use crate::specfun::{self, ln_add_exp};

/// Parameters of the SSD distribution: shape extension `alpha ≥ 0` and
/// rate `theta > 0`. Immutable after construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsdParams {
    alpha: f64,
    theta: f64,
}

/// A labelled series of (x, y) points with strictly increasing x, ready for
/// plotting or text emission.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

impl CurveSeries {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Result<Self> {
        for w in points.windows(2) {
            if w[1].0.partial_cmp(&w[0].0) != Some(std::cmp::Ordering::Greater) {
                return Err(Error::domain(format!(
                    "curve x values must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some(bad) = points.iter().find(|(_, y)| !y.is_finite()) {
            return Err(Error::domain(format!(
                "curve y values must be finite, got {} at x = {}",
                bad.1, bad.0
            )));
        }
        Ok(CurveSeries {
            label: label.into(),
            points,
        })
    }
}

impl SsdParams {
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::domain(format!(
                "alpha must be a nonnegative real, got {alpha}"
            )));
        }
        if !(theta.is_finite() && theta > 0.0) {
            return Err(Error::domain(format!(
                "theta must be a positive real, got {theta}"
            )));
        }
        Ok(SsdParams { alpha, theta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// ln(θ^α + Γ(α+2)), the normalizer shared by every closed form.
    fn ln_normalizer(&self) -> f64 {
        ln_add_exp(
            self.alpha * self.theta.ln(),
            specfun::lgamma(self.alpha + 2.0),
        )
    }

    /// Weight p of the gamma(2, θ) component: p = θ^α / (θ^α + Γ(α+2)).
    pub fn mixing_weight(&self) -> f64 {
        (self.alpha * self.theta.ln() - self.ln_normalizer()).exp()
    }

    fn ln_mixing_weights(&self) -> (f64, f64) {
        let ln_norm = self.ln_normalizer();
        (
            self.alpha * self.theta.ln() - ln_norm,
            specfun::lgamma(self.alpha + 2.0) - ln_norm,
        )
    }

    /// ln f(x) for x > 0; −∞ at x = 0.
    pub(crate) fn ln_pdf(&self, x: f64) -> f64 {
        if x == 0.0 {
            return f64::NEG_INFINITY;
        }
        let ln_x = x.ln();
        // ln(x + x^{α+1}) = ln x + ln(1 + x^α), via a softplus in α·ln x
        let ln_poly = ln_x + softplus(self.alpha * ln_x);
        (self.alpha + 2.0) * self.theta.ln() - self.ln_normalizer() - self.theta * x + ln_poly
    }

    /// Probability density at `x ≥ 0`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_nonneg(x, "pdf")?;
        Ok(self.ln_pdf(x).exp())
    }

    pub(crate) fn cdf_raw(&self, x: f64) -> f64 {
        let z = self.theta * x;
        let p = self.mixing_weight();
        p * specfun::reg_lower(2.0, z) + (1.0 - p) * specfun::reg_lower(self.alpha + 2.0, z)
    }

    /// Distribution function F(x) = p·P(2, θx) + (1−p)·P(α+2, θx).
    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_nonneg(x, "cdf")?;
        Ok(self.cdf_raw(x))
    }

    pub(crate) fn survival_raw(&self, x: f64) -> f64 {
        let z = self.theta * x;
        let p = self.mixing_weight();
        p * specfun::reg_upper(2.0, z) + (1.0 - p) * specfun::reg_upper(self.alpha + 2.0, z)
    }

    /// Survival function S(x) = 1 − F(x), evaluated without cancellation.
    pub fn survival(&self, x: f64) -> Result<f64> {
        check_nonneg(x, "survival")?;
        Ok(self.survival_raw(x))
    }

    /// ln S(x); stays finite far beyond the point where S underflows.
    fn ln_survival(&self, x: f64) -> f64 {
        let z = self.theta * x;
        let (ln_p, ln_q) = self.ln_mixing_weights();
        ln_add_exp(
            ln_p + specfun::ln_reg_upper(2.0, z),
            ln_q + specfun::ln_reg_upper(self.alpha + 2.0, z),
        )
    }

    /// Hazard rate h(x) = f(x)/S(x) for x > 0, evaluated in log space.
    pub fn hazard(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x <= 0.0 {
            return Err(Error::domain(format!("hazard requires x > 0, got {x}")));
        }
        Ok((self.ln_pdf(x) - self.ln_survival(x)).exp())
    }

    /// Slope of the hazard at the origin. For α > 0 this is
    /// θ^{α+2} / (θ^α + Γ(α+2)); at α = 0 the second component's linear term
    /// also contributes and the slope doubles to θ².
    pub fn hazard_slope_at_zero(&self) -> f64 {
        let base = ((self.alpha + 2.0) * self.theta.ln() - self.ln_normalizer()).exp();
        if self.alpha == 0.0 {
            2.0 * base
        } else {
            base
        }
    }

    /// ln ∫ₓ^∞ t f(t) dt via the component tail means
    /// p·(2/θ)·Q(3, θx) + (1−p)·((α+2)/θ)·Q(α+3, θx).
    fn ln_tail_partial_mean(&self, q: f64) -> f64 {
        let z = self.theta * q;
        let (ln_p, ln_1mp) = self.ln_mixing_weights();
        let ln_theta = self.theta.ln();
        ln_add_exp(
            ln_p + 2.0_f64.ln() - ln_theta + specfun::ln_reg_upper(3.0, z),
            ln_1mp + (self.alpha + 2.0).ln() - ln_theta
                + specfun::ln_reg_upper(self.alpha + 3.0, z),
        )
    }

    /// Upper partial mean ∫_q^∞ x f(x) dx; equals the mean at q = 0.
    pub fn tail_partial_mean(&self, q: f64) -> Result<f64> {
        check_nonneg(q, "tail_partial_mean")?;
        Ok(self.ln_tail_partial_mean(q).exp())
    }

    /// Mean residual life m(x) = E[X − x | X > x].
    pub fn mean_residual_life(&self, x: f64) -> Result<f64> {
        check_nonneg(x, "mean_residual_life")?;
        Ok((self.ln_tail_partial_mean(x) - self.ln_survival(x)).exp() - x)
    }

    /// r-th raw moment E[X^r] = [θ^α Γ(r+2) + Γ(α+r+2)] / (θ^r (θ^α + Γ(α+2))).
    /// `r = 0` returns the total mass 1.
    pub fn raw_moment(&self, r: u32) -> f64 {
        if r == 0 {
            return 1.0;
        }
        let r = f64::from(r);
        let ln_num = ln_add_exp(
            self.alpha * self.theta.ln() + specfun::lgamma(r + 2.0),
            specfun::lgamma(self.alpha + r + 2.0),
        );
        (ln_num - r * self.theta.ln() - self.ln_normalizer()).exp()
    }

    pub fn mean(&self) -> f64 {
        self.raw_moment(1)
    }

    /// Variance μ'₂ − (μ'₁)².
    pub fn variance(&self) -> f64 {
        let m1 = self.raw_moment(1);
        self.raw_moment(2) - m1 * m1
    }

    /// Moment generating function
    /// M(t) = p (θ/(θ−t))² + (1−p) (θ/(θ−t))^{α+2}, defined for t < θ.
    pub fn mgf(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t >= self.theta {
            return Err(Error::domain(format!(
                "mgf diverges for t >= theta (t = {t}, theta = {})",
                self.theta
            )));
        }
        let p = self.mixing_weight();
        let ln_ratio = self.theta.ln() - (self.theta - t).ln();
        Ok(p * (2.0 * ln_ratio).exp() + (1.0 - p) * ((self.alpha + 2.0) * ln_ratio).exp())
    }

    /// Characteristic function φ(t) = p z² + (1−p) z^{α+2} with z = θ/(θ−it).
    pub fn characteristic_function(&self, t: f64) -> Complex64 {
        let p = self.mixing_weight();
        // |z| = θ/√(θ²+t²), arg z = atan2(t, θ)
        let ln_mag =
            0.5 * ((self.theta * self.theta).ln() - (self.theta * self.theta + t * t).ln());
        let angle = t.atan2(self.theta);
        let pow = |s: f64| Complex64::from_polar((s * ln_mag).exp(), s * angle);
        p * pow(2.0) + (1.0 - p) * pow(self.alpha + 2.0)
    }

    /// Inverse cdf: the x with F(x) = u, for u ∈ (0, 1). Brackets by
    /// doubling from the mean, bisects, then polishes with Newton steps
    /// until |F(x) − u| ≤ 1e−10.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if u.is_nan() || u <= 0.0 || u >= 1.0 {
            return Err(Error::domain(format!(
                "quantile requires u in (0, 1), got {u}"
            )));
        }
        let mut lo = 0.0;
        let mut hi = self.mean();
        let mut guard = 0;
        while self.cdf_raw(hi) < u {
            lo = hi;
            hi *= 2.0;
            guard += 1;
            if guard > 1100 {
                return Err(Error::NonConvergence(format!(
                    "quantile bracket expansion failed at u = {u}"
                )));
            }
        }
        while hi - lo > 1e-8 * hi.max(1.0) {
            let mid = 0.5 * (lo + hi);
            if self.cdf_raw(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..64 {
            let resid = self.cdf_raw(x) - u;
            if resid.abs() <= 1e-10 {
                return Ok(x);
            }
            let dens = self.ln_pdf(x).exp();
            if dens.is_nan() || dens <= 0.0 {
                break;
            }
            let next = x - resid / dens;
            if next > lo && next < hi {
                x = next;
            } else if resid > 0.0 {
                hi = x;
                x = 0.5 * (lo + x);
            } else {
                lo = x;
                x = 0.5 * (x + hi);
            }
        }
        // Bisection fallback to the required residual tolerance.
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let resid = self.cdf_raw(mid) - u;
            if resid.abs() <= 1e-10 {
                return Ok(mid);
            }
            if resid < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Err(Error::NonConvergence(format!(
            "quantile iteration stalled at u = {u}"
        )))
    }

    /// Rényi entropy of the stated order (> 0, ≠ 1). Integer orders ≥ 2 with
    /// integer α use the binomial closed form
    /// (1−γ)⁻¹ ln[ θ^{γ(α+2)}/(θ^α+Γ(α+2))^γ · Σ_k C(γ,k) Γ(αk+γ+1)/(γθ)^{αk+γ+1} ];
    /// everything else integrates f^γ adaptively. The two routes agree where
    /// both apply.
    pub fn renyi_entropy(&self, order: f64) -> Result<f64> {
        if order.is_nan() || order <= 0.0 {
            return Err(Error::domain(format!(
                "renyi_entropy requires order > 0, got {order}"
            )));
        }
        if order == 1.0 {
            return Err(Error::domain(
                "order 1 is the Shannon limit, which this operation does not evaluate",
            ));
        }
        let ln_integral = if order >= 2.0 && order.fract() == 0.0 && self.alpha.fract() == 0.0 {
            self.ln_density_power_integral_closed(order as u32)
        } else {
            let r = numeric::integrate(
                |x| (order * self.ln_pdf(x)).exp(),
                0.0,
                f64::INFINITY,
                1e-12,
            )?;
            r.value.ln()
        };
        Ok(ln_integral / (1.0 - order))
    }

    /// ln ∫ f^γ dx for integer γ ≥ 2 and integer α, by binomial expansion of
    /// (x + x^{α+1})^γ.
    fn ln_density_power_integral_closed(&self, gamma_order: u32) -> f64 {
        let g = f64::from(gamma_order);
        let ln_gt = (g * self.theta).ln();
        let mut ln_sum = f64::NEG_INFINITY;
        for k in 0..=gamma_order {
            let kf = f64::from(k);
            let exponent = self.alpha * kf + g;
            let term = binomial(gamma_order, k).ln() + specfun::lgamma(exponent + 1.0)
                - (exponent + 1.0) * ln_gt;
            ln_sum = ln_add_exp(ln_sum, term);
        }
        g * ((self.alpha + 2.0) * self.theta.ln() - self.ln_normalizer()) + ln_sum
    }

    /// Lorenz curve L(p) = (1/μ) ∫₀^{F⁻¹(p)} x f(x) dx, for p ∈ (0, 1].
    pub fn lorenz(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p <= 0.0 || p > 1.0 {
            return Err(Error::domain(format!(
                "lorenz requires p in (0, 1], got {p}"
            )));
        }
        if p == 1.0 {
            return Ok(1.0);
        }
        let q = self.quantile(p)?;
        Ok(self.lower_partial_mean(q) / self.mean())
    }

    /// ∫₀^q x f(x) dx via the regularized lower component means.
    fn lower_partial_mean(&self, q: f64) -> f64 {
        let z = self.theta * q;
        let w = self.mixing_weight();
        (w * 2.0 * specfun::reg_lower(3.0, z)
            + (1.0 - w) * (self.alpha + 2.0) * specfun::reg_lower(self.alpha + 3.0, z))
            / self.theta
    }

    /// Bonferroni curve B(p) = L(p)/p, for p ∈ (0, 1).
    pub fn bonferroni(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p <= 0.0 || p >= 1.0 {
            return Err(Error::domain(format!(
                "bonferroni requires p in (0, 1), got {p}"
            )));
        }
        Ok(self.lorenz(p)? / p)
    }

    /// Density of the k-th order statistic of a sample of size n:
    /// n!/((k−1)!(n−k)!) Σ_{l=0}^{n−k} C(n−k, l) (−1)^l F^{k+l−1}(y) f(y).
    pub fn order_stat_pdf(&self, y: f64, k: u32, n: u32) -> Result<f64> {
        check_order_stat_rank(k, n)?;
        check_nonneg(y, "order_stat_pdf")?;
        let f = self.ln_pdf(y).exp();
        let big_f = self.cdf_raw(y);
        let coef = (specfun::lgamma(f64::from(n) + 1.0)
            - specfun::lgamma(f64::from(k))
            - specfun::lgamma(f64::from(n - k) + 1.0))
        .exp();
        let mut sum = 0.0;
        for l in 0..=(n - k) {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binomial(n - k, l) * big_f.powi((k + l) as i32 - 1);
        }
        Ok(coef * sum * f)
    }

    /// Distribution function of the k-th order statistic:
    /// Σ_{j=k}^n C(n, j) F^j(y) (1−F(y))^{n−j}.
    pub fn order_stat_cdf(&self, y: f64, k: u32, n: u32) -> Result<f64> {
        check_order_stat_rank(k, n)?;
        check_nonneg(y, "order_stat_cdf")?;
        let big_f = self.cdf_raw(y);
        let mut sum = 0.0;
        for j in k..=n {
            sum += binomial(n, j) * big_f.powi(j as i32) * (1.0 - big_f).powi((n - j) as i32);
        }
        Ok(sum.clamp(0.0, 1.0))
    }

    /// Scaled total-time-on-test transform
    /// φ(u) = (1/μ) ∫₀^{F⁻¹(u)} S(t) dt, with φ(0) = 0 and φ(1) = 1.
    pub fn ttt_transform(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::domain(format!(
                "ttt_transform requires u in [0, 1], got {u}"
            )));
        }
        if u == 0.0 {
            return Ok(0.0);
        }
        if u == 1.0 {
            return Ok(1.0);
        }
        let q = self.quantile(u)?;
        let integral = numeric::integrate(|t| self.survival_raw(t), 0.0, q, 1e-10)?;
        Ok(integral.value / self.mean())
    }

    /// Draw `n` observations by mixture composition: a Bernoulli(p) pick of
    /// the gamma(2, θ) or gamma(α+2, θ) component. Deterministic per seed.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Dataset> {
        if n == 0 {
            return Err(Error::domain("sample size must be at least 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = self.mixing_weight();
        let scale = 1.0 / self.theta;
        let first = Gamma::new(2.0, scale)
            .map_err(|e| Error::domain(format!("gamma sampler rejected parameters: {e}")))?;
        let second = Gamma::new(self.alpha + 2.0, scale)
            .map_err(|e| Error::domain(format!("gamma sampler rejected parameters: {e}")))?;
        let values: Vec<f64> = (0..n)
            .map(|_| {
                if rng.random::<f64>() < p {
                    first.sample(&mut rng)
                } else {
                    second.sample(&mut rng)
                }
            })
            .collect();
        Dataset::new(
            values,
            format!(
                "ssd sample (alpha={}, theta={}, seed={seed}, n={n})",
                self.alpha, self.theta
            ),
        )
    }
}

/// ln(1 + e^a) without overflow.
fn softplus(a: f64) -> f64 {
    if a > 0.0 {
        a + (-a).exp().ln_1p()
    } else {
        a.exp().ln_1p()
    }
}

fn check_nonneg(x: f64, op: &str) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!("{op} requires x >= 0, got {x}")));
    }
    Ok(())
}

fn check_order_stat_rank(k: u32, n: u32) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::domain(format!(
            "order statistic rank must satisfy 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

/// Exact binomial coefficient as f64 (multiplicative form; fine for the
/// small n used by order statistics and entropy expansions).
pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k.min(n));
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * f64::from(n - i) / f64::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values below were frozen from an independent high-precision
    // evaluation (30-digit arithmetic) of the defining integrals.
    const PDF_1_A1_T1: f64 = 0.245_252_960_780_961_54; // 2/(3e)
    const CDF_1_A1_T1: f64 = 0.141_614_637_266_634_6;
    const SURV_1_A1_T1: f64 = 0.858_385_362_733_365_4;
    const MRL_2_A1_T1: f64 = 1.692_307_692_307_692_3; // 22/13
    const TAIL_MEAN_2_A1_T1: f64 = 2.165_364_531_785_803;
    const RENYI_2_A1_T1: f64 = 1.637_608_789_400_796_7; // ln(36/7)
    const ORDER_MIN_CDF_1: f64 = 0.367_519_835_178_617_3; // 1 − S(1)³

    fn params(alpha: f64, theta: f64) -> SsdParams {
        SsdParams::new(alpha, theta).unwrap()
    }

    fn quad_inf<F: Fn(f64) -> f64>(f: F) -> f64 {
        numeric::integrate(f, 0.0, f64::INFINITY, 1e-11)
            .unwrap()
            .value
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(SsdParams::new(-0.1, 1.0).is_err());
        assert!(SsdParams::new(1.0, 0.0).is_err());
        assert!(SsdParams::new(1.0, -2.0).is_err());
        assert!(SsdParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn mixing_weight_examples() {
        assert!((params(1.0, 1.0).mixing_weight() - 1.0 / 3.0).abs() < 1e-15);
        assert!((params(0.0, 1.0).mixing_weight() - 0.5).abs() < 1e-15);
        assert!((params(2.0, 2.0).mixing_weight() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn pdf_decomposes_into_weighted_components() {
        // f = p·gamma(2,θ) + (1−p)·gamma(α+2,θ) pointwise.
        let p = params(1.0, 1.0);
        let w = p.mixing_weight();
        let gamma_pdf = |x: f64, shape: f64, rate: f64| {
            (shape * rate.ln() - specfun::lgamma(shape) + (shape - 1.0) * x.ln() - rate * x).exp()
        };
        for i in 1..=10 {
            let x = 0.4 * i as f64;
            let mixture = w * gamma_pdf(x, 2.0, 1.0) + (1.0 - w) * gamma_pdf(x, 3.0, 1.0);
            assert!(
                (p.pdf(x).unwrap() - mixture).abs() < 1e-12,
                "decomposition failed at x = {x}"
            );
        }
    }

    #[test]
    fn pdf_examples() {
        assert!((params(1.0, 1.0).pdf(1.0).unwrap() - PDF_1_A1_T1).abs() < 1e-13);
        // α = 0 collapse: pdf = θ² x e^{−θx}
        assert!((params(0.0, 1.0).pdf(1.0).unwrap() - (-1.0_f64).exp()).abs() < 1e-13);
        assert_eq!(params(3.0, 2.0).pdf(0.0).unwrap(), 0.0);
        assert!(params(1.0, 1.0).pdf(-0.5).is_err());
    }

    #[test]
    fn pdf_normalizes() {
        for &(a, t) in &[(0.0, 1.0), (0.5, 0.2), (2.0, 2.7713), (10.0, 5.0)] {
            let p = params(a, t);
            let total = quad_inf(|x| p.ln_pdf(x).exp());
            assert!(
                (total - 1.0).abs() < 1e-8,
                "normalization failed for ({a}, {t}): {total}"
            );
        }
    }

    #[test]
    fn cdf_examples() {
        let p = params(1.0, 1.0);
        assert!((p.cdf(1.0).unwrap() - CDF_1_A1_T1).abs() < 1e-12);
        assert_eq!(p.cdf(0.0).unwrap(), 0.0);
        assert!((p.cdf(50.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(p.cdf(-1.0).is_err());
        // agreement with quadrature of the density
        let by_quad = numeric::integrate(|x| p.ln_pdf(x).exp(), 0.0, 1.0, 1e-11)
            .unwrap()
            .value;
        assert!((p.cdf(1.0).unwrap() - by_quad).abs() < 1e-8);
    }

    #[test]
    fn cdf_matches_pdf_by_finite_difference() {
        for &(a, t) in &[(0.0, 1.0), (1.0, 1.0), (5.0, 2.7713)] {
            let p = params(a, t);
            for i in 1..=50 {
                let x = 0.12 * i as f64;
                let fd = numeric::central_diff(|v| p.cdf_raw(v), x, 1e-6);
                assert!(
                    (fd - p.pdf(x).unwrap()).abs() < 1e-6,
                    "dF/dx != f at ({a}, {t}), x = {x}"
                );
            }
        }
    }

    #[test]
    fn survival_examples() {
        let p = params(1.0, 1.0);
        assert_eq!(p.survival(0.0).unwrap(), 1.0);
        assert!((p.survival(1.0).unwrap() - SURV_1_A1_T1).abs() < 1e-12);
        for i in 0..50 {
            let x = 0.2 * i as f64;
            let total = p.survival(x).unwrap() + p.cdf(x).unwrap();
            assert!((total - 1.0).abs() < 1e-12, "S + F != 1 at x = {x}");
        }
    }

    #[test]
    fn hazard_examples() {
        let p = params(1.0, 1.0);
        // h(0⁺) → 0 because f(0) = 0
        assert!(p.hazard(1e-12).unwrap() < 1e-11);
        // frozen ratio; analytically 2/7 at this parameter point
        assert!((p.hazard(1.0).unwrap() - PDF_1_A1_T1 / SURV_1_A1_T1).abs() < 1e-12);
        assert!((p.hazard(1.0).unwrap() - 2.0 / 7.0).abs() < 1e-12);
        assert!(p.hazard(0.0).is_err());
        assert!(p.hazard(-1.0).is_err());
    }

    #[test]
    fn hazard_slope_at_zero_by_finite_difference() {
        // slope θ^{α+2}/(θ^α + Γ(α+2)) for α > 0; (α=1, θ=1) gives 1/3
        let p = params(1.0, 1.0);
        assert!((p.hazard_slope_at_zero() - 1.0 / 3.0).abs() < 1e-15);
        let eps = 1e-9;
        for &(a, t) in &[(1.0, 1.0), (2.0, 0.2), (5.0, 2.7713), (0.5, 1.0)] {
            let p = params(a, t);
            let fd = p.hazard(eps).unwrap() / eps;
            let exact = p.hazard_slope_at_zero();
            assert!(
                ((fd - exact) / exact).abs() < 1e-4,
                "h'(0) mismatch at ({a}, {t}): fd {fd} vs {exact}"
            );
        }
        // α = 0 collapses to gamma(2, θ) whose hazard slope is θ².
        let p0 = params(0.0, 1.5);
        assert!((p0.hazard_slope_at_zero() - 2.25).abs() < 1e-12);
        let fd = p0.hazard(eps).unwrap() / eps;
        assert!(((fd - 2.25) / 2.25).abs() < 1e-6);
    }

    #[test]
    fn hazard_is_increasing_and_tail_stable() {
        for &(a, t) in &[(0.0, 1.0), (1.0, 1.0), (5.0, 1.0), (2.0, 5.0), (10.0, 1.0)] {
            let p = params(a, t);
            let mut prev = 0.0;
            for i in 0..200 {
                let x = 1e-2 / t * (50.0 / 1e-2_f64).powf(i as f64 / 199.0);
                let h = p.hazard(x).unwrap();
                assert!(h.is_finite() && h > 0.0);
                assert!(h + 1e-12 >= prev, "hazard decreased at ({a}, {t}), x = {x}");
                prev = h;
            }
            // deep tail: survival underflow must not poison the ratio
            let deep = p.hazard(1000.0 / t).unwrap();
            assert!(deep.is_finite() && deep > 0.0);
        }
    }

    #[test]
    fn hazard_dips_when_both_shapes_are_large() {
        // The mixture hazard is NOT globally monotone: with a wide shape gap
        // and a fast first component, survivors migrate to the second
        // component and the hazard sags before climbing again. Verified
        // against 40-digit reference arithmetic.
        let p = params(5.0, 5.0);
        let h_before = p.hazard(0.37).unwrap();
        let h_after = p.hazard(0.42).unwrap();
        assert!(
            h_after < h_before,
            "expected a hazard dip near x = 0.4: {h_before} then {h_after}"
        );
    }

    #[test]
    fn mean_residual_life_examples() {
        let p = params(1.0, 1.0);
        assert!((p.mean_residual_life(0.0).unwrap() - 8.0 / 3.0).abs() < 1e-12);
        assert!((p.mean_residual_life(2.0).unwrap() - MRL_2_A1_T1).abs() < 1e-10);
        // oracle: (1/S(2)) ∫₂^∞ t f dt − 2
        let tail = numeric::integrate(|x| x * p.ln_pdf(x).exp(), 2.0, f64::INFINITY, 1e-11)
            .unwrap()
            .value;
        let oracle = tail / p.survival(2.0).unwrap() - 2.0;
        assert!((p.mean_residual_life(2.0).unwrap() - oracle).abs() < 1e-6);
        for i in 1..=10 {
            let x = i as f64;
            assert!(p.mean_residual_life(x).unwrap() >= 0.0);
        }
    }

    #[test]
    fn mean_identity_and_duality() {
        for &(a, t) in &[(0.0, 1.0), (1.0, 1.0), (2.0, 0.2), (5.0, 2.7713)] {
            let p = params(a, t);
            assert!(
                (p.mean_residual_life(0.0).unwrap() - p.raw_moment(1)).abs() < 1e-10,
                "m(0) != mean for ({a}, {t})"
            );
            // m'(x) = m(x) h(x) − 1
            for i in 1..=20 {
                let x = 0.4 * i as f64 / t;
                let md = numeric::central_diff(|v| p.mean_residual_life(v).unwrap(), x, 1e-5);
                let rhs = p.mean_residual_life(x).unwrap() * p.hazard(x).unwrap() - 1.0;
                assert!(
                    (md - rhs).abs() < 1e-4,
                    "MRL-hazard duality failed at ({a}, {t}), x = {x}: {md} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn raw_moment_examples() {
        let p = params(1.0, 1.0);
        assert_eq!(p.raw_moment(0), 1.0);
        assert!((p.raw_moment(1) - 8.0 / 3.0).abs() < 1e-12);
        assert!((p.raw_moment(2) - 10.0).abs() < 1e-12);
        for &(a, t) in &[(0.5, 1.0), (2.0, 2.0)] {
            let p = params(a, t);
            for r in 1..=4u32 {
                let oracle = quad_inf(|x| x.powi(r as i32) * p.ln_pdf(x).exp());
                let got = p.raw_moment(r);
                assert!(
                    ((got - oracle) / oracle).abs() < 1e-6,
                    "moment r = {r} mismatch for ({a}, {t})"
                );
            }
        }
    }

    #[test]
    fn variance_examples() {
        assert!((params(1.0, 1.0).variance() - 26.0 / 9.0).abs() < 1e-12);
        assert!((params(0.0, 1.0).variance() - 2.0).abs() < 1e-12);
        let p = params(2.0, 1.5);
        let mu = p.mean();
        let oracle = quad_inf(|x| (x - mu) * (x - mu) * p.ln_pdf(x).exp());
        assert!(((p.variance() - oracle) / oracle).abs() < 1e-6);
        assert!(p.variance() > 0.0);
    }

    #[test]
    fn mgf_examples() {
        let p = params(1.0, 2.0);
        assert!((p.mgf(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((p.mgf(1.0).unwrap() - 6.0).abs() < 1e-12);
        assert!(p.mgf(2.0).is_err());
        assert!(p.mgf(5.0).is_err());
        let p = params(2.0, 1.5);
        let t = 0.3;
        // integrand assembled in log space so the tail stays 0·0, not ∞·0
        let oracle = quad_inf(|x| (t * x + p.ln_pdf(x)).exp());
        assert!(((p.mgf(t).unwrap() - oracle) / oracle).abs() < 1e-8);
    }

    #[test]
    fn mgf_equals_component_mixture() {
        // p (θ/(θ−t))² + (1−p)(θ/(θ−t))^{α+2}, 20 (t, α, θ) triples
        let mut count = 0;
        for &a in &[0.0, 0.5, 1.0, 3.0, 10.0] {
            for &t in &[0.7, 2.0] {
                for &frac in &[-1.0, 0.45] {
                    let tt = frac * t / 2.0;
                    let p = params(a, t);
                    let w = p.mixing_weight();
                    let ratio = t / (t - tt);
                    let expected = w * ratio.powi(2) + (1.0 - w) * ratio.powf(a + 2.0);
                    assert!(
                        (p.mgf(tt).unwrap() - expected).abs() <= 1e-12 * expected,
                        "mixture identity failed at ({a}, {t}, {tt})"
                    );
                    count += 1;
                }
            }
        }
        assert_eq!(count, 20);
    }

    #[test]
    fn characteristic_function_examples() {
        let p = params(1.0, 2.0);
        let phi0 = p.characteristic_function(0.0);
        assert_eq!(phi0, Complex64::new(1.0, 0.0));
        for &t in &[-5.0, -1.0, -0.5, 0.5, 1.0, 5.0] {
            assert!(p.characteristic_function(t).norm() <= 1.0 + 1e-12);
        }
        let t = 1.0;
        let re = quad_inf(|x| (t * x).cos() * p.ln_pdf(x).exp());
        let im = quad_inf(|x| (t * x).sin() * p.ln_pdf(x).exp());
        let phi = p.characteristic_function(t);
        assert!((phi.re - re).abs() < 1e-8, "re {} vs {}", phi.re, re);
        assert!((phi.im - im).abs() < 1e-8, "im {} vs {}", phi.im, im);
    }

    #[test]
    fn quantile_round_trips() {
        let p = params(1.0, 1.0);
        assert!((p.quantile(CDF_1_A1_T1).unwrap() - 1.0).abs() < 1e-8);
        for &x in &[0.5, 1.0, 2.0, 5.0] {
            let u = p.cdf(x).unwrap();
            assert!(
                (p.quantile(u).unwrap() - x).abs() < 1e-7,
                "round trip failed at x = {x}"
            );
        }
        let tiny = p.quantile(1e-9).unwrap();
        assert!(tiny > 0.0);
        assert!((p.cdf(tiny).unwrap() - 1e-9).abs() <= 1e-10);
        assert!(p.quantile(0.0).is_err());
        assert!(p.quantile(1.0).is_err());
        assert!(p.quantile(-0.2).is_err());
    }

    #[test]
    fn renyi_entropy_examples() {
        let p = params(1.0, 1.0);
        assert!((p.renyi_entropy(2.0).unwrap() - RENYI_2_A1_T1).abs() < 1e-9);
        assert!(p.renyi_entropy(1.0).is_err());
        assert!(p.renyi_entropy(0.0).is_err());
        assert!(p.renyi_entropy(-2.0).is_err());
    }

    #[test]
    fn renyi_closed_form_agrees_with_quadrature() {
        for &g in &[2.0, 3.0] {
            for &a in &[1.0, 2.0] {
                for &t in &[0.5, 1.0, 2.0] {
                    let p = params(a, t);
                    let closed = p.renyi_entropy(g).unwrap();
                    let integral = quad_inf(|x| (g * p.ln_pdf(x)).exp());
                    let by_quad = integral.ln() / (1.0 - g);
                    assert!(
                        (closed - by_quad).abs() < 1e-6,
                        "paths disagree at γ = {g}, ({a}, {t}): {closed} vs {by_quad}"
                    );
                }
            }
        }
    }

    #[test]
    fn renyi_scaling_shifts_entropy() {
        // If Y = X/c, the order-γ entropy drops by ln c; check via quadrature
        // of the scaled density g(y) = c f(cy).
        let p = params(1.0, 1.0);
        let g = 2.0;
        let c = 2.5_f64;
        let scaled_integral = quad_inf(|y| (g * ((c).ln() + p.ln_pdf(c * y))).exp());
        let scaled_entropy = scaled_integral.ln() / (1.0 - g);
        let expected = p.renyi_entropy(g).unwrap() - c.ln();
        assert!((scaled_entropy - expected).abs() < 1e-7);
    }

    #[test]
    fn lorenz_and_bonferroni() {
        let p = params(1.0, 1.0);
        assert_eq!(p.lorenz(1.0).unwrap(), 1.0);
        // oracle: (1/μ) ∫₀^q x f dx at q = F⁻¹(0.5)
        let q = p.quantile(0.5).unwrap();
        let oracle = numeric::integrate(|x| x * p.ln_pdf(x).exp(), 0.0, q, 1e-11)
            .unwrap()
            .value
            / p.mean();
        let l_half = p.lorenz(0.5).unwrap();
        assert!((l_half - oracle).abs() < 1e-6);
        assert!((p.bonferroni(0.5).unwrap() - 2.0 * l_half).abs() < 1e-12);
        for i in 1..=9 {
            let pp = 0.1 * i as f64;
            let l = p.lorenz(pp).unwrap();
            assert!(l <= pp + 1e-12, "L(p) > p at p = {pp}");
            assert!((p.bonferroni(pp).unwrap() * pp - l).abs() < 1e-12);
            assert!(p.bonferroni(pp).unwrap() <= 1.0 + 1e-12);
        }
        assert!((p.bonferroni(0.999).unwrap() - 1.0).abs() < 0.01);
        assert!(p.lorenz(0.0).is_err());
        assert!(p.lorenz(1.2).is_err());
        assert!(p.bonferroni(1.0).is_err());
    }

    #[test]
    fn lorenz_is_convex() {
        let p = params(2.0, 1.5);
        let grid: Vec<f64> = (1..=19).map(|i| 0.05 * i as f64).collect();
        let vals: Vec<f64> = grid.iter().map(|&u| p.lorenz(u).unwrap()).collect();
        for w in vals.windows(3) {
            let second = w[2] - 2.0 * w[1] + w[0];
            assert!(second >= -1e-8, "Lorenz second difference {second} < 0");
        }
        for w in vals.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
    }

    #[test]
    fn tail_partial_mean_examples() {
        let p = params(1.0, 1.0);
        assert!((p.tail_partial_mean(0.0).unwrap() - 8.0 / 3.0).abs() < 1e-12);
        assert!((p.tail_partial_mean(2.0).unwrap() - TAIL_MEAN_2_A1_T1).abs() < 1e-10);
        let oracle = numeric::integrate(|x| x * p.ln_pdf(x).exp(), 2.0, f64::INFINITY, 1e-11)
            .unwrap()
            .value;
        assert!((p.tail_partial_mean(2.0).unwrap() - oracle).abs() < 1e-8);
        let mut prev = f64::INFINITY;
        for i in 0..=20 {
            let q = 0.5 * i as f64;
            let v = p.tail_partial_mean(q).unwrap();
            assert!(v <= prev + 1e-14, "tail mean increased at q = {q}");
            prev = v;
        }
        assert!(p.tail_partial_mean(-1.0).is_err());
    }

    #[test]
    fn order_statistics() {
        let p = params(1.0, 1.0);
        // single observation: both reduce to the parent distribution
        for &y in &[0.3, 1.0, 4.0] {
            assert!((p.order_stat_pdf(y, 1, 1).unwrap() - p.pdf(y).unwrap()).abs() < 1e-13);
            assert!((p.order_stat_cdf(y, 1, 1).unwrap() - p.cdf(y).unwrap()).abs() < 1e-13);
        }
        // maximum of three: n F^{n−1} f
        let y = 1.0;
        let expected = 3.0 * p.cdf(y).unwrap().powi(2) * p.pdf(y).unwrap();
        assert!((p.order_stat_pdf(y, 3, 3).unwrap() - expected).abs() < 1e-12);
        // minimum of three: 1 − (1 − F)³
        let min_cdf = p.order_stat_cdf(1.0, 1, 3).unwrap();
        assert!((min_cdf - ORDER_MIN_CDF_1).abs() < 1e-12);
        assert!((min_cdf - (1.0 - SURV_1_A1_T1.powi(3))).abs() < 1e-12);
        // each order-statistic density integrates to one
        for k in 1..=3u32 {
            let total = quad_inf(|v| p.order_stat_pdf(v, k, 3).unwrap());
            assert!(
                (total - 1.0).abs() < 1e-6,
                "order stat ({k}, 3) normalization: {total}"
            );
        }
        // cdf equals the integral of the density
        let by_quad = numeric::integrate(|v| p.order_stat_pdf(v, 2, 3).unwrap(), 0.0, 2.0, 1e-10)
            .unwrap()
            .value;
        assert!((p.order_stat_cdf(2.0, 2, 3).unwrap() - by_quad).abs() < 1e-6);
        assert!(p.order_stat_pdf(1.0, 0, 3).is_err());
        assert!(p.order_stat_pdf(1.0, 4, 3).is_err());
    }

    #[test]
    fn ttt_transform_shape() {
        let p = params(1.0, 1.0);
        assert_eq!(p.ttt_transform(0.0).unwrap(), 0.0);
        assert!((p.ttt_transform(1.0).unwrap() - 1.0).abs() < 1e-6);
        // nondecreasing, and concave where the hazard increases
        let vals: Vec<f64> = (0..=10)
            .map(|i| p.ttt_transform(0.1 * i as f64).unwrap())
            .collect();
        for w in vals.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
        for w in vals.windows(3) {
            let second = w[2] - 2.0 * w[1] + w[0];
            assert!(second <= 1e-8, "TTT second difference {second} > 0");
        }
        assert!(p.ttt_transform(-0.1).is_err());
        assert!(p.ttt_transform(1.1).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = params(1.0, 1.0);
        let a = p.sample(100, 42).unwrap();
        let b = p.sample(100, 42).unwrap();
        assert_eq!(a.values(), b.values());
        let c = p.sample(100, 43).unwrap();
        assert_ne!(a.values(), c.values());
        assert!(p.sample(0, 1).is_err());
    }

    #[test]
    fn sample_mean_matches_theory() {
        let p = params(1.0, 1.0);
        let data = p.sample(10_000, 7).unwrap();
        let sigma = (26.0 / 9.0_f64).sqrt();
        let bound = 3.0 * sigma / (10_000.0_f64).sqrt();
        assert!(
            (data.mean() - 8.0 / 3.0).abs() < bound,
            "sample mean {} departs from 8/3 by more than {bound}",
            data.mean()
        );
    }

    #[test]
    fn alpha_zero_collapses_to_gamma_two() {
        // E[X^r] of gamma(2, θ) = Γ(2+r)/(Γ(2) θ^r)
        fn gamma2_moment(r: u32, theta: f64) -> f64 {
            (specfun::lgamma(2.0 + f64::from(r)) - f64::from(r) * theta.ln()).exp()
        }
        let t = 1.7_f64;
        let p = params(0.0, t);
        for i in 1..=30 {
            let x = 0.25 * i as f64;
            let gamma2_pdf = t * t * x * (-t * x).exp();
            let gamma2_cdf = specfun::reg_lower(2.0, t * x);
            assert!((p.pdf(x).unwrap() - gamma2_pdf).abs() < 1e-12);
            assert!((p.cdf(x).unwrap() - gamma2_cdf).abs() < 1e-12);
        }
        assert!((p.mean() - 2.0 / t).abs() < 1e-12);
        assert!((p.variance() - 2.0 / (t * t)).abs() < 1e-12);
        for r in 1..=4u32 {
            assert!((p.raw_moment(r) - gamma2_moment(r, t)).abs() < 1e-12 * gamma2_moment(r, t));
        }
    }

    #[test]
    fn curve_series_validation() {
        assert!(CurveSeries::new("ok", vec![(0.0, 1.0), (1.0, 2.0)]).is_ok());
        assert!(CurveSeries::new("bad-x", vec![(1.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(CurveSeries::new("bad-y", vec![(0.0, f64::NAN)]).is_err());
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(10, 5), 252.0);
    }
}
