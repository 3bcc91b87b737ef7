//! Goodness-of-fit statistics and the ranked model-comparison report:
//! exact one-sample Kolmogorov–Smirnov, asymptotic K-S p-values,
//! AIC/BIC/AICc, and the empirical scaled TTT curve.

use crate::baselines::{fit_model, Model, ModelSpec};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::fit::{FitMode, DEFAULT_ALPHA_MAX};
use crate::ssd::CurveSeries;

/// One comparison-table row. Metric fields are `None` when the fit failed;
/// the failure message then sits in `error`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelRow {
    pub model: Model,
    pub params: Vec<(String, f64)>,
    pub neg2_loglik: Option<f64>,
    pub aic: Option<f64>,
    pub bic: Option<f64>,
    pub aicc: Option<f64>,
    pub ks: Option<f64>,
    pub pvalue: Option<f64>,
    pub converged: bool,
    pub error: Option<String>,
}

/// A full comparison table plus the AIC ranking of the successful rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelReport {
    pub dataset_label: String,
    pub n: usize,
    pub mean: f64,
    /// Rows in the requested model order, one per model.
    pub rows: Vec<ModelRow>,
    /// Successful models sorted by (AIC, −2 log L, table order) ascending.
    pub ranking: Vec<Model>,
}

/// Knobs for [`compare_models`].
#[derive(Debug, Clone, Copy)]
pub struct CompareOptions {
    pub mode: FitMode,
    pub alpha_max: u32,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            mode: FitMode::Continuous,
            alpha_max: DEFAULT_ALPHA_MAX,
        }
    }
}

/// AIC = −2logL + 2k, BIC = −2logL + k·ln n, AICc = AIC + (2k² + 2k)/(n−k−1).
/// AICc requires n > k + 1.
pub fn information_criteria(neg2_loglik: f64, k: usize, n: usize) -> Result<(f64, f64, f64)> {
    if n <= k + 1 {
        return Err(Error::domain(format!(
            "AICc undefined for n = {n}, k = {k} (needs n > k + 1)"
        )));
    }
    let kf = k as f64;
    let nf = n as f64;
    let aic = neg2_loglik + 2.0 * kf;
    let bic = neg2_loglik + kf * nf.ln();
    let aicc = aic + (2.0 * kf * kf + 2.0 * kf) / (nf - kf - 1.0);
    Ok((aic, bic, aicc))
}

/// Exact one-sample Kolmogorov–Smirnov statistic
/// D = maxᵢ max(i/n − F(x₍ᵢ₎), F(x₍ᵢ₎) − (i−1)/n) over the sorted sample.
pub fn ks_statistic<F: Fn(f64) -> f64>(data: &Dataset, cdf: F) -> f64 {
    let n = data.n() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in data.values().iter().enumerate() {
        let f = cdf(x);
        let upper = (i + 1) as f64 / n - f;
        let lower = f - i as f64 / n;
        d = d.max(upper).max(lower);
    }
    d
}

/// Asymptotic Kolmogorov p-value P(D > d) = 2 Σ_{j≥1} (−1)^{j−1} e^{−2j²nd²},
/// truncated when terms drop below 1e−12 and clamped to [0, 1]. Below
/// λ = √n·d = 0.2 the tail mass is under 1e−12 and the value is 1.
pub fn ks_pvalue(d: f64, n: usize) -> f64 {
    if d <= 0.0 {
        return 1.0;
    }
    if d >= 1.0 {
        return 0.0;
    }
    let lambda_sq = n as f64 * d * d;
    if lambda_sq < 0.04 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=1000u64 {
        let term = (-2.0 * (j * j) as f64 * lambda_sq).exp();
        sum += if j % 2 == 1 { term } else { -term };
        if term < 1e-12 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Fit every requested model, compute all criteria at the fitted parameters,
/// and rank by AIC. Individual fit failures become error rows; the table is
/// always produced.
pub fn compare_models(
    data: &Dataset,
    models: &[Model],
    options: &CompareOptions,
) -> Result<ModelReport> {
    if models.is_empty() {
        return Err(Error::domain("compare_models needs at least one model"));
    }
    let n = data.n();
    let mut rows = Vec::with_capacity(models.len());
    for &model in models {
        let row = match fit_row(model, data, options) {
            Ok(row) => row,
            Err(e) => ModelRow {
                model,
                params: Vec::new(),
                neg2_loglik: None,
                aic: None,
                bic: None,
                aicc: None,
                ks: None,
                pvalue: None,
                converged: false,
                error: Some(e.to_string()),
            },
        };
        rows.push(row);
    }

    let mut order: Vec<(usize, &ModelRow)> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.aic.is_some())
        .collect();
    order.sort_by(|(ia, a), (ib, b)| {
        let key_a = (a.aic.unwrap(), a.neg2_loglik.unwrap());
        let key_b = (b.aic.unwrap(), b.neg2_loglik.unwrap());
        key_a
            .partial_cmp(&key_b)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(ia.cmp(ib))
    });
    let ranking = order.into_iter().map(|(_, r)| r.model).collect();

    Ok(ModelReport {
        dataset_label: data.label().to_string(),
        n,
        mean: data.mean(),
        rows,
        ranking,
    })
}

fn fit_row(model: Model, data: &Dataset, options: &CompareOptions) -> Result<ModelRow> {
    let fit = fit_model(model, data, options.mode, options.alpha_max)?;
    let values: Vec<f64> = fit.estimates.iter().map(|(_, v)| *v).collect();
    let spec = ModelSpec::new(model, &values)?;
    let (aic, bic, aicc) = information_criteria(fit.neg2_loglik, model.param_count(), data.n())?;
    let d = ks_statistic(data, |x| spec.cdf_raw(x));
    Ok(ModelRow {
        model,
        params: fit.estimates.clone(),
        neg2_loglik: Some(fit.neg2_loglik),
        aic: Some(aic),
        bic: Some(bic),
        aicc: Some(aicc),
        ks: Some(d),
        pvalue: Some(ks_pvalue(d, data.n())),
        converged: fit.converged,
        error: None,
    })
}

/// Empirical scaled TTT curve: points
/// (i/n, (Σ_{j≤i} x₍ⱼ₎ + (n−i)·x₍ᵢ₎)/Σx) for i = 0..n, starting at (0, 0).
pub fn empirical_ttt(data: &Dataset) -> Result<CurveSeries> {
    if data.n() < 2 {
        return Err(Error::domain(format!(
            "empirical TTT needs at least 2 observations, got {}",
            data.n()
        )));
    }
    let n = data.n();
    let total = data.sum();
    let mut points = Vec::with_capacity(n + 1);
    points.push((0.0, 0.0));
    let mut partial = 0.0;
    for (i, &x) in data.values().iter().enumerate() {
        partial += x;
        let scaled = (partial + (n - i - 1) as f64 * x) / total;
        points.push(((i + 1) as f64 / n as f64, scaled));
    }
    CurveSeries::new(format!("ttt:{}", data.label()), points)
}
