//! Numerical heat content Q(t) for singular data on the interval (with
//! cutoffs), the half-line, and the ball in R^3.
//!
//! Q = intint p(x1,x2;t) w1(x1) w2(x2) dx1 dx2 with weights
//! w_i = chi_i(dist) * dist^{-alpha_i}. Cutoff supports confine the interval
//! integrand to the four corner blocks of [0,a]^2; reflection symmetry of
//! the kernel collapses them to two distinct blocks. The ball reduces to the
//! interval kernel radially:
//!   Q_ball = 4 pi intint p_[0,a](r1,r2;t) (a-r1)^{-a1} (a-r2)^{-a2} r1 r2,
//! an identity checked against an independent eigenfunction-series oracle in
//! the verification suite before use.

use crate::error::{Error, Result};
use crate::exec::{par_map, ExecMode};
use crate::kernels::{image_count, IntervalImages, IntervalSine};
use crate::quad::{integrate_2d, QuadPoint};
use crate::special::AlphaPair;

/// C-infinity bump equal to 1 on [0, eps_in] and 0 on [eps_out, inf).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffFunction {
    pub eps_in: f64,
    pub eps_out: f64,
}

/// chi(x) = h(eps_out - x) / (h(eps_out - x) + h(x - eps_in)),
/// h(u) = exp(-1/u) for u > 0 else 0.
pub fn bump_cutoff(eps_in: f64, eps_out: f64) -> Result<CutoffFunction> {
    if !(0.0 < eps_in && eps_in < eps_out) {
        return Err(Error::Domain(format!(
            "cutoff needs 0 < eps_in < eps_out, got ({eps_in}, {eps_out})"
        )));
    }
    Ok(CutoffFunction { eps_in, eps_out })
}

impl CutoffFunction {
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.eps_in {
            1.0
        } else if x >= self.eps_out {
            0.0
        } else {
            let hu = (-1.0 / (self.eps_out - x)).exp();
            let hl = (-1.0 / (x - self.eps_in)).exp();
            hu / (hu + hl)
        }
    }
}

/// One heat-content evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QSample {
    pub t: f64,
    pub value: f64,
    pub err: f64,
}

// ---------------------------------------------------------------------------
// integrand plumbing
// ---------------------------------------------------------------------------

/// Distance from the physical origin of the block, exact when the segment
/// starts there.
#[inline]
fn dist_from_zero(p: &QuadPoint) -> f64 {
    if p.a == 0.0 {
        p.from_a
    } else {
        p.x
    }
}

/// Distance to `end`, exact when the segment finishes there.
#[inline]
fn dist_to_end(p: &QuadPoint, end: f64) -> f64 {
    if p.b == end {
        p.to_b
    } else {
        end - p.x
    }
}

/// kernel * x^{-a1} * y^{-a2} * scale, assembled in log space for deep-tail
/// nodes where the bare powers overflow. Contributions there are far below
/// tolerance for alpha <= 1.9; the clamp only guards against inf.
#[inline]
fn weighted(kernel: f64, x: f64, y: f64, a1: f64, a2: f64, scale: f64) -> f64 {
    if kernel == 0.0 || scale == 0.0 {
        return 0.0;
    }
    let lw = -a1 * x.ln() - a2 * y.ln();
    if lw < 600.0 {
        kernel * scale * x.powf(-a1) * y.powf(-a2)
    } else {
        let l = kernel.abs().ln() + lw + scale.ln();
        kernel.signum() * l.min(690.0).exp()
    }
}

/// Interior split points for the inner axis: the kernel ridge at y = x with
/// half-width covering the Gaussian to ~1e-18, plus the cutoff join.
fn ridge_splits(x: f64, t: f64, join: Option<f64>, range: f64) -> Vec<f64> {
    let half = 13.0 * t.sqrt();
    let mut s = Vec::with_capacity(4);
    if let Some(j) = join {
        s.push(j);
    }
    if half < 0.5 * range {
        s.extend_from_slice(&[x - half, x, x + half]);
    }
    s
}

/// Kernel representation for the Q evaluators.
///
/// Singular weights probe the kernel at boundary distances down to ~1e-276,
/// so the evaluation must keep *relative* accuracy in the boundary-vanishing
/// factor. The image sum does this through its expm1 corner bracket only
/// while every other image underflows, i.e. while exp(-a^2/(4t)) == 0 in
/// f64; past that point the sine series takes over, where each term
/// vanishes through an exactly-computed sine factor. The sine series is
/// short there (N ~ a sqrt(|log eps|/t)/pi <= ~100).
enum IntervalKernel {
    Images(IntervalImages),
    Sine(SineWithCache),
}

/// Sine kernel plus a one-slot cache of the left-point mode factors: the
/// iterated 2-D quadrature holds the outer point fixed through each inner
/// sweep, so the left factors are recomputed only when the outer point moves.
struct SineWithCache {
    sine: IntervalSine,
    cache: std::cell::RefCell<((u64, u64), Vec<f64>)>,
}

impl SineWithCache {
    fn new(sine: IntervalSine) -> Self {
        SineWithCache {
            sine,
            cache: std::cell::RefCell::new(((u64::MAX, u64::MAX), Vec::new())),
        }
    }

    #[inline]
    fn eval_pair(&self, x1: f64, d1: f64, x2: f64, d2: f64) -> f64 {
        let key = (x1.to_bits(), d1.to_bits());
        {
            let c = self.cache.borrow();
            if c.0 == key {
                return self.sine.eval_with(&c.1, x2, d2);
            }
        }
        let half = self.sine.half_modes(x1, d1);
        let v = self.sine.eval_with(&half, x2, d2);
        *self.cache.borrow_mut() = (key, half);
        v
    }
}

const IMAGE_SAFE_EXPONENT: f64 = 650.0;

impl IntervalKernel {
    fn new(a: f64, t: f64) -> Result<Self> {
        if a * a / (4.0 * t) >= IMAGE_SAFE_EXPONENT {
            // relative to the kernel scale (4 pi t)^{-1/2}
            let tol = 1e-15 / (4.0 * std::f64::consts::PI * t).sqrt();
            let ic = image_count(a, t, tol)?;
            if ic.capped {
                return Err(Error::ToleranceUnachievable { requested: tol, bound: f64::NAN });
            }
            Ok(IntervalKernel::Images(IntervalImages::new(a, t, ic.count)))
        } else {
            Ok(IntervalKernel::Sine(SineWithCache::new(IntervalSine::new(a, t, 1e-16))))
        }
    }

    /// p(x1, x2) for collar coordinates measured from the same endpoint,
    /// both <= a/2.
    #[inline]
    fn eval_near(&self, a: f64, x1: f64, x2: f64) -> f64 {
        match self {
            IntervalKernel::Images(k) => k.eval(x1, x2),
            IntervalKernel::Sine(k) => k.eval_pair(x1, a - x1, x2, a - x2),
        }
    }

    /// p(x1, a - y2) for collar coordinates measured from opposite endpoints.
    #[inline]
    fn eval_cross(&self, a: f64, x1: f64, y2: f64) -> f64 {
        match self {
            IntervalKernel::Images(k) => k.eval_cross(x1, y2),
            IntervalKernel::Sine(k) => k.eval_pair(x1, a - x1, a - y2, y2),
        }
    }

    /// p(r1, r2) with both boundary distances supplied exactly.
    #[inline]
    fn eval_ball(&self, r1: f64, d1: f64, r2: f64, d2: f64) -> f64 {
        match self {
            IntervalKernel::Images(k) => k.eval_with_dists(r1, d1, r2, d2),
            IntervalKernel::Sine(k) => k.eval_pair(r1, d1, r2, d2),
        }
    }
}

/// Weight descriptor for one factor.
#[derive(Debug, Clone, Copy)]
struct SingularWeight {
    alpha: f64,
    chi: CutoffFunction,
}

/// Canonical argument order: the kernel is symmetric, so swapping the two
/// weight factors relabels the integration variables and leaves the value
/// identical; sorting makes the identity exact in floating point.
fn canonical(w1: SingularWeight, w2: SingularWeight) -> (SingularWeight, SingularWeight) {
    let key = |w: &SingularWeight| (w.alpha, w.chi.eps_in, w.chi.eps_out);
    if key(&w2) < key(&w1) {
        (w2, w1)
    } else {
        (w1, w2)
    }
}

fn check_support(chi: &CutoffFunction, a: f64) -> Result<()> {
    if chi.eps_out >= 0.5 * a {
        return Err(Error::Domain(format!(
            "cutoff support [0, {}) must lie inside [0, {})",
            chi.eps_out,
            0.5 * a
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// evaluators
// ---------------------------------------------------------------------------

/// Half-line heat content
/// intint_{R+^2} p_{R+}(x1,x2;t) chi1(x1) x1^{-a1} chi2(x2) x2^{-a2}.
///
/// This is the single half-line integral; the interval reduction carries an
/// extra factor 2.
pub fn q_halfline(
    ap: &AlphaPair,
    chi1: &CutoffFunction,
    chi2: &CutoffFunction,
    t: f64,
    tol: f64,
) -> Result<QSample> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t = {t} must be positive")));
    }
    let (w1, w2) = canonical(
        SingularWeight { alpha: ap.alpha1(), chi: *chi1 },
        SingularWeight { alpha: ap.alpha2(), chi: *chi2 },
    );
    let norm = 1.0 / (4.0 * std::f64::consts::PI * t).sqrt();
    let f = |px: &QuadPoint, py: &QuadPoint| {
        let x = dist_from_zero(px);
        let y = dist_from_zero(py);
        let c = w1.chi.eval(x) * w2.chi.eval(y);
        if c == 0.0 {
            return 0.0;
        }
        let d = x - y;
        let k = norm * (-d * d / (4.0 * t)).exp() * (-(-x * y / t).exp_m1());
        weighted(k, x, y, w1.alpha, w2.alpha, c)
    };
    let est = integrate_2d(
        f,
        (0.0, w1.chi.eps_out),
        (0.0, w2.chi.eps_out),
        tol,
        &[w1.chi.eps_in],
        |x| ridge_splits(x, t, Some(w2.chi.eps_in), w2.chi.eps_out),
    )?;
    Ok(QSample { t, value: est.value, err: est.err })
}

/// Interval heat content with cutoff weights at both ends,
/// intint_{[0,a]^2} p_[0,a](x1,x2;t) chi1(d(x1)) d(x1)^{-a1}
///                                   chi2(d(x2)) d(x2)^{-a2},
/// d(x) = min(x, a-x). Cutoff supports must lie inside [0, a/2).
pub fn q_interval(
    ap: &AlphaPair,
    chi1: &CutoffFunction,
    chi2: &CutoffFunction,
    a: f64,
    t: f64,
    tol: f64,
) -> Result<QSample> {
    if !(a > 0.0 && t > 0.0) {
        return Err(Error::Domain(format!("need a > 0, t > 0 (a={a}, t={t})")));
    }
    check_support(chi1, a)?;
    check_support(chi2, a)?;
    let (w1, w2) = canonical(
        SingularWeight { alpha: ap.alpha1(), chi: *chi1 },
        SingularWeight { alpha: ap.alpha2(), chi: *chi2 },
    );
    let kern = IntervalKernel::new(a, t)?;

    // near-near block: both points in the collar of the same endpoint
    let f_near = |px: &QuadPoint, py: &QuadPoint| {
        let x = dist_from_zero(px);
        let y = dist_from_zero(py);
        let c = w1.chi.eval(x) * w2.chi.eval(y);
        if c == 0.0 {
            return 0.0;
        }
        weighted(kern.eval_near(a, x, y), x, y, w1.alpha, w2.alpha, c)
    };
    let near = integrate_2d(
        f_near,
        (0.0, w1.chi.eps_out),
        (0.0, w2.chi.eps_out),
        tol / 4.0,
        &[w1.chi.eps_in],
        |x| ridge_splits(x, t, Some(w2.chi.eps_in), w2.chi.eps_out),
    )?;

    // near-far block: points in collars of opposite endpoints; the kernel
    // argument a - y folds the far collar back to [0, eps_out)
    let f_cross = |px: &QuadPoint, py: &QuadPoint| {
        let x = dist_from_zero(px);
        let y = dist_from_zero(py);
        let c = w1.chi.eval(x) * w2.chi.eval(y);
        if c == 0.0 {
            return 0.0;
        }
        weighted(kern.eval_cross(a, x, y), x, y, w1.alpha, w2.alpha, c)
    };
    let cross = integrate_2d(
        f_cross,
        (0.0, w1.chi.eps_out),
        (0.0, w2.chi.eps_out),
        tol / 4.0,
        &[w1.chi.eps_in],
        |_| vec![w2.chi.eps_in],
    )?;

    // p(a-x1, a-x2) = p(x1, x2) and p(a-x1, x2) = p(x1, a-x2): the two far
    // blocks equal the two computed ones.
    Ok(QSample {
        t,
        value: 2.0 * (near.value + cross.value),
        err: 2.0 * (near.err + cross.err),
    })
}

/// Ball heat content via the radial reduction to the interval kernel.
/// Integrability at r = a holds for alpha_i < 2.
pub fn q_ball(ap: &AlphaPair, a: f64, t: f64, tol: f64) -> Result<QSample> {
    if !(a > 0.0 && t > 0.0) {
        return Err(Error::Domain(format!("need a > 0, t > 0 (a={a}, t={t})")));
    }
    let (a1, a2) = if ap.alpha1() <= ap.alpha2() {
        (ap.alpha1(), ap.alpha2())
    } else {
        (ap.alpha2(), ap.alpha1())
    };
    let kern = IntervalKernel::new(a, t)?;
    let four_pi = 4.0 * std::f64::consts::PI;
    let f = |px: &QuadPoint, py: &QuadPoint| {
        let d1 = dist_to_end(px, a);
        let d2 = dist_to_end(py, a);
        let k = kern.eval_ball(px.x, d1, py.x, d2) * px.x * py.x;
        weighted(k, d1, d2, a1, a2, four_pi)
    };
    let est = integrate_2d(f, (0.0, a), (0.0, a), tol, &[], |r| {
        ridge_splits(r, t, None, a)
    })?;
    Ok(QSample { t, value: est.value, err: est.err })
}

// ---------------------------------------------------------------------------
// grid evaluation
// ---------------------------------------------------------------------------

/// A configured heat-content evaluation, mappable over a t-grid.
#[derive(Debug, Clone)]
pub enum QConfig {
    Interval { ap: AlphaPair, chi1: CutoffFunction, chi2: CutoffFunction, a: f64, tol: f64 },
    HalfLine { ap: AlphaPair, chi1: CutoffFunction, chi2: CutoffFunction, tol: f64 },
    Ball { ap: AlphaPair, a: f64, tol: f64 },
}

impl QConfig {
    pub fn eval(&self, t: f64) -> Result<QSample> {
        match self {
            QConfig::Interval { ap, chi1, chi2, a, tol } => q_interval(ap, chi1, chi2, *a, t, *tol),
            QConfig::HalfLine { ap, chi1, chi2, tol } => q_halfline(ap, chi1, chi2, t, *tol),
            QConfig::Ball { ap, a, tol } => q_ball(ap, *a, t, *tol),
        }
    }
}

/// Evaluate Q over a t-grid. Evaluations are pure and run in parallel under
/// the default mode; output order always follows the input order.
pub fn q_grid_with_mode(cfg: &QConfig, ts: &[f64], mode: ExecMode) -> Result<Vec<QSample>> {
    if let Some(bad) = ts.iter().find(|&&t| !(t > 0.0)) {
        return Err(Error::Domain(format!("grid times must be positive, got {bad}")));
    }
    let results = par_map(mode, ts, |&t| cfg.eval(t));
    let mut samples = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(s) => samples.push(s),
            Err(e) => failures.push((i, Box::new(e))),
        }
    }
    if failures.is_empty() {
        Ok(samples)
    } else {
        Err(Error::Grid(failures))
    }
}

pub fn q_grid(cfg: &QConfig, ts: &[f64]) -> Result<Vec<QSample>> {
    q_grid_with_mode(cfg, ts, ExecMode::Parallel)
}

/// Log-spaced grid of `pts` points on [tmin, tmax].
pub fn log_grid(tmin: f64, tmax: f64, pts: usize) -> Result<Vec<f64>> {
    if !(tmin > 0.0 && tmax > tmin) || pts < 2 {
        return Err(Error::Domain(format!(
            "log grid needs 0 < tmin < tmax and >= 2 points (got {tmin}, {tmax}, {pts})"
        )));
    }
    let (l0, l1) = (tmin.ln(), tmax.ln());
    Ok((0..pts)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (pts - 1) as f64).exp())
        .collect())
}
