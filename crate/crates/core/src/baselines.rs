//! The comparison lifetime models: exponential, Lindley, length-biased
//! exponential (gamma(2, θ)), gamma, Shukla, and Rama-Kamlesh — plus the SSD
//! distribution itself — behind one model interface used by the
//! goodness-of-fit harness.
//!
//! The Shukla and Rama-Kamlesh densities are tied-rate gamma mixtures of the
//! same shape as SSD and reuse its fitting machinery:
//!
//! ```text
//! SD:  θ^{α+1} (1 + x^α)    e^{−θx} / (θ^α     + Γ(α+1))   — exp(θ) ⊕ gamma(α+1, θ)
//! RKD: θ^{α}   (1 + x^{α−1}) e^{−θx} / (θ^{α−1} + Γ(α))     — exp(θ) ⊕ gamma(α, θ)
//! ```

use std::str::FromStr;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::fit::{FitMode, FitResult, GammaMixtureFamily};
use crate::specfun;

/// Identifier of a supported lifetime model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Ssd,
    Sd,
    Rkd,
    Gamma,
    Lbed,
    Lindley,
    Exponential,
}

impl Model {
    /// All seven models, in the order the comparison tables list them.
    pub const ALL: [Model; 7] = [
        Model::Ssd,
        Model::Sd,
        Model::Rkd,
        Model::Gamma,
        Model::Lbed,
        Model::Lindley,
        Model::Exponential,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Model::Ssd => "ssd",
            Model::Sd => "sd",
            Model::Rkd => "rkd",
            Model::Gamma => "gamma",
            Model::Lbed => "lbed",
            Model::Lindley => "lindley",
            Model::Exponential => "exponential",
        }
    }

    /// Number of free parameters.
    pub fn param_count(&self) -> usize {
        match self {
            Model::Ssd | Model::Sd | Model::Rkd | Model::Gamma => 2,
            Model::Lbed | Model::Lindley | Model::Exponential => 1,
        }
    }

    /// Canonical parameter names, in declaration order.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Model::Ssd | Model::Sd | Model::Rkd => &["alpha", "theta"],
            Model::Gamma => &["shape", "rate"],
            Model::Lbed | Model::Lindley | Model::Exponential => &["theta"],
        }
    }

    fn mixture_family(&self) -> Option<GammaMixtureFamily> {
        match self {
            Model::Ssd => Some(GammaMixtureFamily::ssd()),
            Model::Sd => Some(GammaMixtureFamily::shukla()),
            Model::Rkd => Some(GammaMixtureFamily::rama_kamlesh()),
            _ => None,
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ssd" => Ok(Model::Ssd),
            "sd" | "shukla" => Ok(Model::Sd),
            "rkd" | "rama-kamlesh" => Ok(Model::Rkd),
            "gamma" => Ok(Model::Gamma),
            "lbed" => Ok(Model::Lbed),
            "lindley" => Ok(Model::Lindley),
            "exponential" | "exp" => Ok(Model::Exponential),
            other => Err(Error::UnknownModel(other.to_string())),
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A model with concrete parameter values, ready for evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    model: Model,
    values: Vec<f64>,
}

impl ModelSpec {
    /// Validate parameter values given in the model's canonical order.
    pub fn new(model: Model, values: &[f64]) -> Result<Self> {
        if values.len() != model.param_count() {
            return Err(Error::domain(format!(
                "{} takes {} parameter(s), got {}",
                model.name(),
                model.param_count(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "{} parameters must be finite, got {values:?}",
                model.name()
            )));
        }
        let ok = match model {
            Model::Exponential | Model::Lindley | Model::Lbed => values[0] > 0.0,
            Model::Gamma => values[0] > 0.0 && values[1] > 0.0,
            Model::Ssd | Model::Sd => values[0] >= 0.0 && values[1] > 0.0,
            Model::Rkd => values[0] > 0.0 && values[1] > 0.0,
        };
        if !ok {
            return Err(Error::domain(format!(
                "invalid {} parameters {values:?}",
                model.name()
            )));
        }
        let spec = ModelSpec {
            model,
            values: values.to_vec(),
        };
        // The RKD density is assembled from its source's mixture description;
        // certify normalization whenever assertions are on.
        #[cfg(debug_assertions)]
        if model == Model::Rkd {
            let total = crate::numeric::integrate(|x| spec.pdf_raw(x), 0.0, f64::INFINITY, 1e-10)
                .map(|r| r.value)
                .unwrap_or(f64::NAN);
            debug_assert!(
                (total - 1.0).abs() < 1e-8,
                "rkd pdf failed normalization: {total}"
            );
        }
        Ok(spec)
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// (name, value) pairs in canonical order.
    pub fn params(&self) -> Vec<(String, f64)> {
        self.model
            .param_names()
            .iter()
            .zip(&self.values)
            .map(|(n, v)| (n.to_string(), *v))
            .collect()
    }

    pub(crate) fn pdf_raw(&self, x: f64) -> f64 {
        let v = &self.values;
        match self.model {
            Model::Exponential => v[0] * (-v[0] * x).exp(),
            Model::Lindley => {
                let t = v[0];
                t * t / (1.0 + t) * (1.0 + x) * (-t * x).exp()
            }
            Model::Lbed => {
                let t = v[0];
                t * t * x * (-t * x).exp()
            }
            Model::Gamma => {
                let (k, t) = (v[0], v[1]);
                if x == 0.0 {
                    return if k < 1.0 {
                        f64::INFINITY
                    } else if k > 1.0 {
                        0.0
                    } else {
                        t
                    };
                }
                (k * t.ln() + (k - 1.0) * x.ln() - t * x - specfun::lgamma(k)).exp()
            }
            Model::Ssd | Model::Sd | Model::Rkd => {
                let fam = self.model.mixture_family().expect("mixture model");
                fam.ln_pdf(v[0], v[1], x).exp()
            }
        }
    }

    /// Density at `x ≥ 0`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::domain(format!("pdf requires x >= 0, got {x}")));
        }
        Ok(self.pdf_raw(x))
    }

    pub(crate) fn cdf_raw(&self, x: f64) -> f64 {
        let v = &self.values;
        match self.model {
            Model::Exponential => -(-v[0] * x).exp_m1(),
            Model::Lindley => {
                let t = v[0];
                1.0 - (1.0 + t * x / (1.0 + t)) * (-t * x).exp()
            }
            Model::Lbed => specfun::reg_lower(2.0, v[0] * x),
            Model::Gamma => specfun::reg_lower(v[0], v[1] * x),
            Model::Ssd | Model::Sd | Model::Rkd => {
                let fam = self.model.mixture_family().expect("mixture model");
                fam.cdf(v[0], v[1], x)
            }
        }
    }

    /// Distribution function at `x ≥ 0`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::domain(format!("cdf requires x >= 0, got {x}")));
        }
        Ok(self.cdf_raw(x))
    }

    /// Log-likelihood of the dataset under this model.
    pub fn log_likelihood(&self, data: &Dataset) -> f64 {
        let v = &self.values;
        let n = data.n() as f64;
        let sum_ln: f64 = data.values().iter().map(|x| x.ln()).sum();
        match self.model {
            Model::Exponential => n * v[0].ln() - v[0] * data.sum(),
            Model::Lindley => {
                let t = v[0];
                let sum_ln1p: f64 = data.values().iter().map(|x| x.ln_1p()).sum();
                2.0 * n * t.ln() - n * (1.0 + t).ln() + sum_ln1p - t * data.sum()
            }
            Model::Lbed => 2.0 * n * v[0].ln() + sum_ln - v[0] * data.sum(),
            Model::Gamma => {
                let (k, t) = (v[0], v[1]);
                n * k * t.ln() - n * specfun::lgamma(k) + (k - 1.0) * sum_ln - t * data.sum()
            }
            Model::Ssd | Model::Sd | Model::Rkd => {
                let fam = self.model.mixture_family().expect("mixture model");
                fam.log_likelihood(v[0], v[1], data)
            }
        }
    }
}

/// Maximum-likelihood fit of any supported model.
///
/// Exponential, LBED, and Lindley use their closed-form estimators; gamma
/// solves the digamma score by Newton; the mixture families run the profile
/// or continuous machinery according to `mode`.
pub fn fit_model(model: Model, data: &Dataset, mode: FitMode, alpha_max: u32) -> Result<FitResult> {
    if data.n() < 2 {
        return Err(Error::domain(format!(
            "fitting requires at least 2 observations, got {}",
            data.n()
        )));
    }
    let n = data.n() as f64;
    match model {
        Model::Exponential => {
            let theta = 1.0 / data.mean();
            let spec = ModelSpec::new(model, &[theta])?;
            Ok(closed_form_result(
                model,
                vec![("theta".into(), theta)],
                spec.log_likelihood(data),
                (n / theta - data.sum()).abs(),
            ))
        }
        Model::Lbed => {
            let theta = 2.0 / data.mean();
            let spec = ModelSpec::new(model, &[theta])?;
            Ok(closed_form_result(
                model,
                vec![("theta".into(), theta)],
                spec.log_likelihood(data),
                (2.0 * n / theta - data.sum()).abs(),
            ))
        }
        Model::Lindley => {
            // root of 2/θ − 1/(1+θ) = x̄
            let m = data.mean();
            let theta = (-(m - 1.0) + ((m - 1.0) * (m - 1.0) + 8.0 * m).sqrt()) / (2.0 * m);
            let spec = ModelSpec::new(model, &[theta])?;
            let grad = (2.0 * n / theta - n / (1.0 + theta) - data.sum()).abs();
            Ok(closed_form_result(
                model,
                vec![("theta".into(), theta)],
                spec.log_likelihood(data),
                grad,
            ))
        }
        Model::Gamma => fit_gamma(data),
        Model::Ssd | Model::Sd | Model::Rkd => {
            let fam = model.mixture_family().expect("mixture model");
            match mode {
                FitMode::ProfileInteger => fam.fit_profile(data, alpha_max),
                FitMode::Continuous => fam.fit_continuous(data, None),
            }
        }
    }
}

fn closed_form_result(
    model: Model,
    estimates: Vec<(String, f64)>,
    loglik: f64,
    gradient_norm: f64,
) -> FitResult {
    FitResult {
        model: model.name().to_string(),
        estimates,
        loglik,
        neg2_loglik: -2.0 * loglik,
        iterations: 0,
        converged: true,
        mode: FitMode::Continuous,
        gradient_norm,
    }
}

/// Gamma MLE: Newton on ln k − ψ(k) = ln x̄ − mean(ln x), then rate = k/x̄.
fn fit_gamma(data: &Dataset) -> Result<FitResult> {
    let n = data.n() as f64;
    let mean = data.mean();
    let mean_ln: f64 = data.values().iter().map(|x| x.ln()).sum::<f64>() / n;
    let target = mean.ln() - mean_ln;
    if target.is_nan() || target <= 0.0 {
        return Err(Error::NonConvergence(format!(
            "gamma score target ln(x̄) − mean(ln x) = {target} must be positive \
             (degenerate sample)"
        )));
    }

    // method-of-moments start
    let var: f64 = data
        .values()
        .iter()
        .map(|&x| (x - mean) * (x - mean))
        .sum::<f64>()
        / n;
    let mut k = if var > 0.0 { mean * mean / var } else { 1.0 };
    k = k.clamp(1e-3, 1e6);

    let mut iterations = 0;
    let mut converged = false;
    for _ in 0..200 {
        iterations += 1;
        let f = k.ln() - specfun::digamma_raw(k) - target;
        let fp = 1.0 / k - specfun::trigamma_raw(k);
        if fp.abs() < 1e-300 {
            break;
        }
        let step = f / fp;
        let mut next = k - step;
        if next <= 0.0 {
            next = k / 2.0;
        }
        let delta = (next - k).abs();
        k = next;
        if delta < 1e-12 * k.max(1.0) {
            converged = true;
            break;
        }
    }
    if !converged || !k.is_finite() || k <= 0.0 {
        return Err(Error::NonConvergence(format!(
            "gamma shape iteration stalled at k = {k} after {iterations} iterations"
        )));
    }
    let rate = k / mean;
    let spec = ModelSpec::new(Model::Gamma, &[k, rate])?;
    let grad = n * (k.ln() - specfun::digamma_raw(k) - target).abs();
    Ok(FitResult {
        model: Model::Gamma.name().to_string(),
        estimates: vec![("shape".into(), k), ("rate".into(), rate)],
        loglik: spec.log_likelihood(data),
        neg2_loglik: -2.0 * spec.log_likelihood(data),
        iterations,
        converged: true,
        mode: FitMode::Continuous,
        gradient_norm: grad,
    })
}
