//! Maximum-likelihood estimation for the SSD distribution and the
//! structurally identical Shukla/Rama-Kamlesh mixtures.
//!
//! All three families share one density shape,
//!
//! ```text
//! f(x; α, θ) = θ^a e^{−θx} (x^{b−1} + x^{a−1}) / (θ^{a−b} + Γ(a)),   a = α + shift
//! ```
//!
//! with base shape `b ∈ {1, 2}` (so Γ(b) = 1). The score in θ only touches
//! the data through Σxᵢ; the score in α needs one pass per evaluation.
//! Fitting proceeds in two stages: a profile search over integer α (each θ
//! solved by safeguarded Newton on the monotone θ-score), then a damped
//! two-dimensional Newton–Raphson on the full score with a numeric Hessian
//! and step-halving, constrained to α ≥ α_min by projection.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::specfun::{self, ln_add_exp};
use crate::ssd::SsdParams;

/// How the shape extension α was optimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMode {
    /// Best integer α from the profile search.
    ProfileInteger,
    /// Interior optimum of the continuous score equations.
    Continuous,
}

impl std::fmt::Display for FitMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FitMode::ProfileInteger => write!(f, "profile-integer"),
            FitMode::Continuous => write!(f, "continuous"),
        }
    }
}

/// Outcome of a maximum-likelihood fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Family name (`ssd`, `sd`, `rkd`).
    pub model: String,
    /// Named parameter estimates, in declaration order.
    pub estimates: Vec<(String, f64)>,
    pub loglik: f64,
    pub neg2_loglik: f64,
    pub iterations: usize,
    pub converged: bool,
    pub mode: FitMode,
    /// Max-norm of the (projected) score at the returned estimates.
    pub gradient_norm: f64,
}

impl FitResult {
    /// Look up an estimate by parameter name.
    pub fn param(&self, name: &str) -> Option<f64> {
        self.estimates
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    /// Shape-extension estimate; panics for models without one.
    pub fn alpha(&self) -> f64 {
        self.param("alpha").expect("fit carries an alpha estimate")
    }

    /// Rate estimate; panics for models without one.
    pub fn theta(&self) -> f64 {
        self.param("theta").expect("fit carries a theta estimate")
    }
}

/// Default upper bound of the integer-α profile search.
pub const DEFAULT_ALPHA_MAX: u32 = 50;

const MAX_NEWTON_ITER: usize = 200;
const MAX_HALVINGS: usize = 30;

/// A two-component gamma mixture with tied rate θ: gamma(b, θ) carrying
/// weight θ^{a−b}/(θ^{a−b} + Γ(a)) against gamma(a, θ), a = α + shift.
#[derive(Debug, Clone, Copy)]
pub struct GammaMixtureFamily {
    name: &'static str,
    base_shape: f64,
    shift: f64,
    alpha_min: f64,
}

impl GammaMixtureFamily {
    /// gamma(2, θ) ⊕ gamma(α+2, θ): the SSD distribution.
    pub fn ssd() -> Self {
        GammaMixtureFamily {
            name: "ssd",
            base_shape: 2.0,
            shift: 2.0,
            alpha_min: 0.0,
        }
    }

    /// exponential(θ) ⊕ gamma(α+1, θ): the Shukla distribution.
    pub fn shukla() -> Self {
        GammaMixtureFamily {
            name: "sd",
            base_shape: 1.0,
            shift: 1.0,
            alpha_min: 0.0,
        }
    }

    /// exponential(θ) ⊕ gamma(α, θ): the Rama-Kamlesh distribution.
    pub fn rama_kamlesh() -> Self {
        GammaMixtureFamily {
            name: "rkd",
            base_shape: 1.0,
            shift: 0.0,
            alpha_min: 1e-6,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn alpha_min(&self) -> f64 {
        self.alpha_min
    }

    fn extended_shape(&self, alpha: f64) -> f64 {
        alpha + self.shift
    }

    /// ln(θ^{a−b} + Γ(a)).
    fn ln_normalizer(&self, alpha: f64, theta: f64) -> f64 {
        let a = self.extended_shape(alpha);
        ln_add_exp((a - self.base_shape) * theta.ln(), specfun::lgamma(a))
    }

    /// Weight of the gamma(b, θ) component.
    pub fn mixing_weight(&self, alpha: f64, theta: f64) -> f64 {
        let a = self.extended_shape(alpha);
        ((a - self.base_shape) * theta.ln() - self.ln_normalizer(alpha, theta)).exp()
    }

    /// ln f(x) at a single observation.
    pub fn ln_pdf(&self, alpha: f64, theta: f64, x: f64) -> f64 {
        if x == 0.0 {
            return if self.base_shape == 1.0 {
                // the exponential component keeps the density positive at 0
                self.extended_shape(alpha) * theta.ln() - self.ln_normalizer(alpha, theta)
            } else {
                f64::NEG_INFINITY
            };
        }
        let a = self.extended_shape(alpha);
        let ln_x = x.ln();
        let ln_poly = (self.base_shape - 1.0) * ln_x + softplus((a - self.base_shape) * ln_x);
        a * theta.ln() - self.ln_normalizer(alpha, theta) - theta * x + ln_poly
    }

    /// Distribution function via the regularized component mixture.
    pub fn cdf(&self, alpha: f64, theta: f64, x: f64) -> f64 {
        let a = self.extended_shape(alpha);
        let w = self.mixing_weight(alpha, theta);
        let z = theta * x;
        w * specfun::reg_lower(self.base_shape, z) + (1.0 - w) * specfun::reg_lower(a, z)
    }

    /// Mean of the mixture: [w·b + (1−w)·a] / θ.
    pub fn mean(&self, alpha: f64, theta: f64) -> f64 {
        let a = self.extended_shape(alpha);
        let w = self.mixing_weight(alpha, theta);
        (w * self.base_shape + (1.0 - w) * a) / theta
    }

    /// Log-likelihood
    /// n·a·lnθ − n·ln(θ^{a−b} + Γ(a)) − θΣxᵢ + Σ ln(xᵢ^{b−1} + xᵢ^{a−1}).
    pub fn log_likelihood(&self, alpha: f64, theta: f64, data: &Dataset) -> f64 {
        let a = self.extended_shape(alpha);
        let n = data.n() as f64;
        let c = a - self.base_shape;
        let mut data_term = 0.0;
        for &x in data.values() {
            let ln_x = x.ln();
            data_term += (self.base_shape - 1.0) * ln_x + softplus(c * ln_x);
        }
        n * a * theta.ln() - n * self.ln_normalizer(alpha, theta) - theta * data.sum() + data_term
    }

    /// Score vector (∂ℓ/∂θ, ∂ℓ/∂α):
    ///
    /// ```text
    /// ∂ℓ/∂θ = n·a/θ − n(a−b) θ^{a−b−1}/(θ^{a−b}+Γ(a)) − Σxᵢ
    /// ∂ℓ/∂α = n·lnθ − n [θ^{a−b} lnθ + Γ(a)ψ(a)]/(θ^{a−b}+Γ(a))
    ///         + Σ xᵢ^{a−1} ln xᵢ / (xᵢ^{b−1} + xᵢ^{a−1})
    /// ```
    pub fn score(&self, alpha: f64, theta: f64, data: &Dataset) -> (f64, f64) {
        let a = self.extended_shape(alpha);
        let n = data.n() as f64;
        let c = a - self.base_shape;
        let w = self.mixing_weight(alpha, theta);
        let d_theta = n * a / theta - n * c * w / theta - data.sum();
        let mut data_term = 0.0;
        for &x in data.values() {
            let ln_x = x.ln();
            data_term += ln_x * sigmoid(c * ln_x);
        }
        let d_alpha =
            n * theta.ln() - n * (w * theta.ln() + (1.0 - w) * specfun::digamma_raw(a)) + data_term;
        (d_theta, d_alpha)
    }

    /// ∂²ℓ/∂θ² in closed form (the θ-score is monotone decreasing).
    fn d_score_theta(&self, alpha: f64, theta: f64, n: f64) -> f64 {
        let a = self.extended_shape(alpha);
        let c = a - self.base_shape;
        let w = self.mixing_weight(alpha, theta);
        -n / (theta * theta) * (a - c * w + c * c * w * (1.0 - w))
    }

    /// Rate matching the sample mean at fixed α (method of moments), used as
    /// the starting point for the θ-score solve.
    fn moment_theta(&self, alpha: f64, sample_mean: f64) -> f64 {
        // mean(θ) is continuous, → ∞ as θ → 0 and → 0 as θ → ∞
        let mut lo = 1e-8_f64;
        let mut hi = 1e8_f64;
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if self.mean(alpha, mid) > sample_mean {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi / lo < 1.0 + 1e-12 {
                break;
            }
        }
        (lo * hi).sqrt()
    }

    /// Solve ∂ℓ/∂θ = 0 at fixed α by Newton with a bisection safeguard.
    /// Returns (θ̂, iterations).
    fn solve_theta(&self, alpha: f64, data: &Dataset) -> Result<(f64, usize)> {
        let n = data.n() as f64;
        let tol = 1e-8 * n;
        let g = |theta: f64| self.score(alpha, theta, data).0;

        let mut lo = self.moment_theta(alpha, data.mean());
        let mut hi = lo;
        let mut guard = 0;
        while g(lo) < 0.0 {
            lo /= 2.0;
            guard += 1;
            if guard > 200 {
                return Err(Error::NonConvergence(format!(
                    "no lower bracket for the theta score at alpha = {alpha}"
                )));
            }
        }
        guard = 0;
        while g(hi) > 0.0 {
            hi *= 2.0;
            guard += 1;
            if guard > 200 {
                return Err(Error::NonConvergence(format!(
                    "no upper bracket for the theta score at alpha = {alpha}"
                )));
            }
        }

        let mut theta = 0.5 * (lo + hi);
        for iter in 1..=MAX_NEWTON_ITER {
            let val = g(theta);
            if val.abs() < tol {
                return Ok((theta, iter));
            }
            if val > 0.0 {
                lo = theta;
            } else {
                hi = theta;
            }
            let step = val / self.d_score_theta(alpha, theta, n);
            let next = theta - step;
            theta = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
        }
        Err(Error::NonConvergence(format!(
            "theta solve stalled at alpha = {alpha} (theta = {theta}, score = {})",
            g(theta)
        )))
    }

    /// Profile fit: for each integer α in [⌈α_min⌉, alpha_max] solve the
    /// θ-score, then keep the α with the largest log-likelihood. Integers
    /// whose θ-solve fails are skipped.
    pub fn fit_profile(&self, data: &Dataset, alpha_max: u32) -> Result<FitResult> {
        check_data(data)?;
        let alpha_start = self.alpha_min.ceil() as u32;
        let mut best: Option<(f64, f64, f64)> = None; // (alpha, theta, loglik)
        let mut iterations = 0;
        let mut failures = Vec::new();
        for ai in alpha_start..=alpha_max.max(alpha_start) {
            let alpha = f64::from(ai);
            match self.solve_theta(alpha, data) {
                Ok((theta, iters)) => {
                    iterations += iters;
                    let ll = self.log_likelihood(alpha, theta, data);
                    if best.is_none_or(|(_, _, b)| ll > b) {
                        best = Some((alpha, theta, ll));
                    }
                }
                Err(e) => failures.push(format!("alpha = {alpha}: {e}")),
            }
        }
        let (alpha, theta, loglik) = best.ok_or_else(|| {
            Error::NonConvergence(format!(
                "profile search failed for every alpha: {}",
                failures.join("; ")
            ))
        })?;
        let grad = self.score(alpha, theta, data).0.abs();
        Ok(FitResult {
            model: self.name.to_string(),
            estimates: vec![("alpha".into(), alpha), ("theta".into(), theta)],
            loglik,
            neg2_loglik: -2.0 * loglik,
            iterations,
            converged: true,
            mode: FitMode::ProfileInteger,
            gradient_norm: grad,
        })
    }

    /// Continuous fit: damped 2-D Newton–Raphson on the score, Hessian by
    /// central differences of the analytic score, step-halving on the
    /// log-likelihood, initialized from the profile winner unless `init` is
    /// given. Convergence: projected max-norm of the score below 1e−6·n.
    pub fn fit_continuous(&self, data: &Dataset, init: Option<(f64, f64)>) -> Result<FitResult> {
        check_data(data)?;
        let n = data.n() as f64;
        let tol = 1e-6 * n;

        let (mut alpha, mut theta, mut profile_iters) = match init {
            Some((a, t)) => {
                if !(a >= self.alpha_min && t > 0.0) {
                    return Err(Error::domain(format!(
                        "initial point (alpha = {a}, theta = {t}) outside the parameter domain"
                    )));
                }
                (a, t, 0)
            }
            None => {
                let profile = self.fit_profile(data, DEFAULT_ALPHA_MAX)?;
                (profile.alpha(), profile.theta(), profile.iterations)
            }
        };

        let mut loglik = self.log_likelihood(alpha, theta, data);
        let mut converged = false;
        let mut gradient_norm = f64::INFINITY;
        let mut iterations = 0;

        for _ in 0..MAX_NEWTON_ITER {
            iterations += 1;
            let (s_t, s_a) = self.score(alpha, theta, data);
            gradient_norm = projected_grad_norm(self, alpha, s_t, s_a);
            if gradient_norm < tol {
                converged = true;
                break;
            }

            let (dt, da) = self
                .newton_step(alpha, theta, s_t, s_a, data)
                .unwrap_or_else(|| self.coordinate_step(alpha, theta, data));

            // Step-halving keeps the log-likelihood from decreasing and the
            // iterate inside the domain.
            let mut scale = 1.0;
            let mut accepted = false;
            for _ in 0..MAX_HALVINGS {
                let cand_alpha = (alpha + scale * da).max(self.alpha_min);
                let cand_theta = theta + scale * dt;
                if cand_theta > 0.0 {
                    let cand_ll = self.log_likelihood(cand_alpha, cand_theta, data);
                    if cand_ll.is_finite() && cand_ll >= loglik - 1e-12 {
                        if cand_alpha == alpha && cand_theta == theta {
                            break;
                        }
                        alpha = cand_alpha;
                        theta = cand_theta;
                        loglik = cand_ll;
                        accepted = true;
                        break;
                    }
                }
                scale *= 0.5;
            }
            if !accepted {
                // No admissible ascent direction left at this scale.
                let (s_t, s_a) = self.score(alpha, theta, data);
                gradient_norm = projected_grad_norm(self, alpha, s_t, s_a);
                converged = gradient_norm < tol;
                break;
            }
        }

        profile_iters += iterations;
        Ok(FitResult {
            model: self.name.to_string(),
            estimates: vec![("alpha".into(), alpha), ("theta".into(), theta)],
            loglik,
            neg2_loglik: -2.0 * loglik,
            iterations: profile_iters,
            converged,
            mode: FitMode::Continuous,
            gradient_norm,
        })
    }

    /// Full Newton step from the finite-difference Jacobian of the score.
    /// `None` when the Hessian is singular or not a descent-of-gradient
    /// direction worth taking.
    fn newton_step(
        &self,
        alpha: f64,
        theta: f64,
        s_t: f64,
        s_a: f64,
        data: &Dataset,
    ) -> Option<(f64, f64)> {
        let h_t = 1e-5 * theta.max(1e-3);
        let h_a = 1e-5 * alpha.abs().max(1.0);
        // keep finite-difference probes where Γ(α + shift) is defined
        let a_lo = (alpha - h_a).max(self.eval_floor());
        let a_hi = alpha + h_a;

        let (st_p, sa_p) = self.score(alpha, theta + h_t, data);
        let (st_m, sa_m) = self.score(alpha, theta - h_t, data);
        let (st_ap, sa_ap) = self.score(a_hi, theta, data);
        let (st_am, sa_am) = self.score(a_lo, theta, data);

        let h11 = (st_p - st_m) / (2.0 * h_t);
        let h21 = (sa_p - sa_m) / (2.0 * h_t);
        let h12 = (st_ap - st_am) / (a_hi - a_lo);
        let h22 = (sa_ap - sa_am) / (a_hi - a_lo);

        let det = h11 * h22 - h12 * h21;
        if !det.is_finite() || det.abs() < 1e-12 * (h11.abs() * h22.abs()).max(1e-300) {
            return None;
        }
        // solve H [dt, da]^T = -[s_t, s_a]^T
        let dt = (-s_t * h22 + s_a * h12) / det;
        let da = (-s_a * h11 + s_t * h21) / det;
        if dt.is_finite() && da.is_finite() {
            Some((dt, da))
        } else {
            None
        }
    }

    /// Coordinate-wise fallback: exact θ-solve at fixed α, then a damped
    /// 1-D move along the α-score.
    fn coordinate_step(&self, alpha: f64, theta: f64, data: &Dataset) -> (f64, f64) {
        let theta_target = self
            .solve_theta(alpha, data)
            .map(|(t, _)| t)
            .unwrap_or(theta);
        let (_, s_a) = self.score(alpha, theta_target, data);
        let h_a = 1e-5 * alpha.abs().max(1.0);
        let a_lo = (alpha - h_a).max(self.eval_floor());
        let a_hi = alpha + h_a;
        let d_sa = (self.score(a_hi, theta_target, data).1
            - self.score(a_lo, theta_target, data).1)
            / (a_hi - a_lo);
        let da = if d_sa < 0.0 && d_sa.is_finite() {
            -s_a / d_sa
        } else {
            s_a.signum() * 0.5
        };
        (theta_target - theta, da)
    }

    /// Lowest α at which the family may be *evaluated* (finite-difference
    /// probes may dip slightly below the fitting bound).
    fn eval_floor(&self) -> f64 {
        if self.shift >= 1.0 {
            // extended shape stays positive well below alpha_min
            self.alpha_min - 0.5
        } else {
            0.5e-6
        }
    }
}

/// Max-norm of the score with the α component projected out when it pushes
/// against the lower bound (the Karush–Kuhn–Tucker condition at α = α_min).
fn projected_grad_norm(family: &GammaMixtureFamily, alpha: f64, s_t: f64, s_a: f64) -> f64 {
    let s_a_eff = if alpha <= family.alpha_min && s_a < 0.0 {
        0.0
    } else {
        s_a
    };
    s_t.abs().max(s_a_eff.abs())
}

fn check_data(data: &Dataset) -> Result<()> {
    if data.n() < 2 {
        return Err(Error::domain(format!(
            "fitting requires at least 2 observations, got {}",
            data.n()
        )));
    }
    Ok(())
}

fn softplus(a: f64) -> f64 {
    if a > 0.0 {
        a + (-a).exp().ln_1p()
    } else {
        a.exp().ln_1p()
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

// ---------------------------------------------------------------------------
// SSD-facing wrappers
// ---------------------------------------------------------------------------

/// SSD log-likelihood
/// n(α+2)logθ − n log(θ^α + Γ(α+2)) − θΣxᵢ + Σ log(xᵢ + xᵢ^{α+1}).
pub fn log_likelihood(params: &SsdParams, data: &Dataset) -> f64 {
    GammaMixtureFamily::ssd().log_likelihood(params.alpha(), params.theta(), data)
}

/// SSD score vector (∂ℓ/∂θ, ∂ℓ/∂α).
pub fn score(params: &SsdParams, data: &Dataset) -> (f64, f64) {
    GammaMixtureFamily::ssd().score(params.alpha(), params.theta(), data)
}

/// Integer-α profile fit of the SSD distribution.
pub fn fit_profile(data: &Dataset, alpha_max: u32) -> Result<FitResult> {
    GammaMixtureFamily::ssd().fit_profile(data, alpha_max)
}

/// Continuous fit of the SSD distribution, seeded from the profile winner
/// unless `init` is supplied.
pub fn fit_continuous(data: &Dataset, init: Option<SsdParams>) -> Result<FitResult> {
    GammaMixtureFamily::ssd().fit_continuous(data, init.map(|p| (p.alpha(), p.theta())))
}
