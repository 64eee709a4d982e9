//! Series templates and coefficient extraction from sampled Q(t).
//!
//! The predicted expansion mixes integer interior powers t^n with boundary
//! powers t^((1+j-s)/2); the threshold case s = 1 swaps the boundary family
//! for log(1/t) companions. Extraction is weighted linear least squares on
//! unit-normalized basis columns; raw power bases over two decades are
//! catastrophically ill-conditioned, so the condition estimate refers to the
//! scaled matrix.

use crate::error::{Error, Result};
use crate::heat::QSample;
use crate::linalg::svd_least_squares;
use crate::special::AlphaPair;

/// Where an exponent came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrigin {
    /// Interior power t^n.
    Interior(u32),
    /// Boundary power t^((1+j-s)/2).
    Boundary(u32),
    Custom,
}

/// One basis column: t^exponent, times log(1/t) when `with_log` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisTerm {
    pub exponent: f64,
    pub with_log: bool,
    pub origin: TermOrigin,
}

impl BasisTerm {
    pub fn eval(&self, t: f64) -> f64 {
        let p = t.powf(self.exponent);
        if self.with_log {
            p * (1.0 / t).ln()
        } else {
            p
        }
    }
}

/// Sorted exponent basis for a fit.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTemplate {
    pub terms: Vec<BasisTerm>,
}

impl SeriesTemplate {
    pub fn has_log(&self) -> bool {
        self.terms.iter().any(|b| b.with_log)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

const EXPONENT_SEPARATION: f64 = 1e-6;

fn sort_and_check(mut terms: Vec<BasisTerm>) -> Result<SeriesTemplate> {
    terms.sort_by(|a, b| {
        (a.exponent, !a.with_log as u8)
            .partial_cmp(&(b.exponent, !b.with_log as u8))
            .unwrap()
    });
    for w in terms.windows(2) {
        if (w[0].exponent - w[1].exponent).abs() < EXPONENT_SEPARATION
            && w[0].with_log == w[1].with_log
        {
            return Err(Error::ExponentCollision { e1: w[0].exponent, e2: w[1].exponent });
        }
    }
    Ok(SeriesTemplate { terms })
}

/// Generic template {t^n : n <= N} + {t^((1+j-s)/2) : j <= J}.
/// Refuses integer s (use [`build_log_template`] at s = 1) and near-collisions.
pub fn build_template(ap: &AlphaPair, j_max: u32, n_max: u32) -> Result<SeriesTemplate> {
    let s = ap.sum();
    if !ap.is_generic() {
        return Err(Error::IntegerSum { s });
    }
    if j_max > 6 || n_max > 6 {
        return Err(Error::Domain(format!("J = {j_max}, N = {n_max} must be <= 6")));
    }
    let mut terms = Vec::new();
    for n in 0..=n_max {
        terms.push(BasisTerm { exponent: n as f64, with_log: false, origin: TermOrigin::Interior(n) });
    }
    for j in 0..=j_max {
        terms.push(BasisTerm {
            exponent: (1.0 + j as f64 - s) / 2.0,
            with_log: false,
            origin: TermOrigin::Boundary(j),
        });
    }
    sort_and_check(terms)
}

/// Log-case template: half-powers t^(k/2) with log(1/t) companions up to
/// order N <= 2. N = 0 gives {log(1/t), 1}.
pub fn build_log_template(n_max: u32) -> Result<SeriesTemplate> {
    if n_max > 2 {
        return Err(Error::Domain(format!("log template order N = {n_max} must be <= 2")));
    }
    let mut terms = Vec::new();
    for k in 0..=n_max {
        let e = k as f64 / 2.0;
        terms.push(BasisTerm { exponent: e, with_log: true, origin: TermOrigin::Boundary(k) });
        terms.push(BasisTerm { exponent: e, with_log: false, origin: TermOrigin::Interior(k) });
    }
    sort_and_check(terms)
}

/// Custom template from raw exponents (plain powers, no log columns).
pub fn template_from_exponents(exponents: &[f64]) -> Result<SeriesTemplate> {
    let terms = exponents
        .iter()
        .map(|&e| BasisTerm { exponent: e, with_log: false, origin: TermOrigin::Custom })
        .collect();
    sort_and_check(terms)
}

/// Weighted least-squares fit of samples against a template.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub template: SeriesTemplate,
    /// One coefficient per basis term, template order.
    pub coefficients: Vec<f64>,
    /// Covariance-based one-sigma uncertainty per coefficient.
    pub uncertainties: Vec<f64>,
    /// Weighted residual 2-norm.
    pub residual_norm: f64,
    /// sigma_max / sigma_min of the unit-normalized design matrix.
    pub condition_estimate: f64,
    pub ill_conditioned: bool,
    pub n_samples: usize,
}

impl FitResult {
    /// Coefficient of the term matching (exponent, with_log).
    pub fn coefficient(&self, exponent: f64, with_log: bool) -> Result<f64> {
        for (b, &c) in self.template.terms.iter().zip(&self.coefficients) {
            if (b.exponent - exponent).abs() < 1e-9 && b.with_log == with_log {
                return Ok(c);
            }
        }
        Err(Error::ExponentMismatch { exponent })
    }
}

/// Deterministic weighted linear least squares of `samples` on `tmpl`.
///
/// Weights are 1/max(err_i, floor); samples are sorted by t internally so
/// the result is invariant under input shuffling.
pub fn fit_series(samples: &[QSample], tmpl: &SeriesTemplate) -> Result<FitResult> {
    let m = tmpl.len();
    let n = samples.len();
    if m == 0 {
        return Err(Error::Domain("empty template".into()));
    }
    if n < m + 2 {
        return Err(Error::Underdetermined { samples: n, basis: m });
    }
    let mut rows: Vec<QSample> = samples.to_vec();
    rows.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap());
    for w in rows.windows(2) {
        if w[0].t == w[1].t {
            return Err(Error::Domain(format!("duplicate sample time t = {}", w[0].t)));
        }
    }
    if rows[0].t <= 0.0 {
        return Err(Error::Domain("sample times must be positive".into()));
    }

    let vmax = rows.iter().map(|r| r.value.abs()).fold(0.0_f64, f64::max);
    let floor = (1e-15 * vmax).max(f64::MIN_POSITIVE);
    let weights: Vec<f64> = rows.iter().map(|r| 1.0 / r.err.max(floor)).collect();

    // weighted design columns, then unit-normalized
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut norms = Vec::with_capacity(m);
    for term in &tmpl.terms {
        let mut col: Vec<f64> = rows.iter().zip(&weights).map(|(r, w)| term.eval(r.t) * w).collect();
        let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::RankDeficient { sigma_min: 0.0 });
        }
        col.iter_mut().for_each(|v| *v /= norm);
        cols.push(col);
        norms.push(norm);
    }
    let b: Vec<f64> = rows.iter().zip(&weights).map(|(r, w)| r.value * w).collect();

    let svd = svd_least_squares(&cols, &b);
    let sigma_max = svd.sigma.iter().cloned().fold(0.0_f64, f64::max);
    let sigma_min = svd.sigma.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = sigma_max / sigma_min.max(1e-300);

    // covariance of the scaled solution: V diag(sigma^-2) V^T * s^2
    let dof = (n - m).max(1) as f64;
    let s2 = svd.residual_norm.powi(2) / dof;
    let mut uncertainties = Vec::with_capacity(m);
    for (r, norm) in norms.iter().enumerate() {
        let mut var = 0.0;
        for j in 0..m {
            if svd.sigma[j] > sigma_max * 1e-15 {
                var += svd.v[j][r] * svd.v[j][r] / (svd.sigma[j] * svd.sigma[j]);
            }
        }
        uncertainties.push((var * s2).sqrt() / norm);
    }
    let coefficients: Vec<f64> = svd.x.iter().zip(&norms).map(|(x, nm)| x / nm).collect();

    Ok(FitResult {
        template: tmpl.clone(),
        coefficients,
        uncertainties,
        residual_norm: svd.residual_norm,
        condition_estimate: condition,
        ill_conditioned: condition > 1e12,
        n_samples: n,
    })
}

/// A predicted coefficient to compare a fit against.
#[derive(Debug, Clone, Copy)]
pub struct PredictedCoeff {
    pub exponent: f64,
    pub with_log: bool,
    pub value: f64,
    pub rel_tol: f64,
}

#[derive(Debug, Clone)]
pub struct CompareRow {
    pub exponent: f64,
    pub with_log: bool,
    pub fitted: f64,
    pub predicted: f64,
    pub rel_err: f64,
    pub rel_tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
    pub all_pass: bool,
}

impl CompareReport {
    /// Human-readable table, one line per coefficient.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let basis = if r.with_log {
                format!("t^{}*log(1/t)", r.exponent)
            } else {
                format!("t^{}", r.exponent)
            };
            out.push_str(&format!(
                "{:<18} fitted {:+.10e}  predicted {:+.10e}  rel err {:.3e} (tol {:.1e}) {}
",
                basis,
                r.fitted,
                r.predicted,
                r.rel_err,
                r.rel_tol,
                if r.pass { "ok" } else { "FAIL" }
            ));
        }
        out
    }

    /// CSV rows mirroring [`CompareReport::text`].
    pub fn csv(&self) -> String {
        let mut out = String::from("exponent,log,fitted,predicted,rel_err,rel_tol,pass
");
        for r in &self.rows {
            out.push_str(&format!(
                "{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{}
",
                r.exponent, r.with_log, r.fitted, r.predicted, r.rel_err, r.rel_tol, r.pass
            ));
        }
        out
    }
}

/// Per-coefficient relative error table with pass/fail at the configured
/// tolerances. Every predicted exponent must exist in the fitted template.
pub fn compare(fit: &FitResult, predicted: &[PredictedCoeff]) -> Result<CompareReport> {
    let mut rows = Vec::with_capacity(predicted.len());
    for p in predicted {
        let fitted = fit.coefficient(p.exponent, p.with_log)?;
        let rel_err = (fitted - p.value).abs() / p.value.abs().max(1e-300);
        rows.push(CompareRow {
            exponent: p.exponent,
            with_log: p.with_log,
            fitted,
            predicted: p.value,
            rel_err,
            rel_tol: p.rel_tol,
            pass: rel_err <= p.rel_tol,
        });
    }
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(CompareReport { rows, all_pass })
}
