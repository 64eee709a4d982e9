//! Double-exponential (tanh-sinh) quadrature on finite intervals.
//!
//! The transformation x = (1 + tanh((pi/2) sinh(t)))/2 maps the real line to
//! (0,1) and clusters nodes double-exponentially at both endpoints, which
//! makes algebraic endpoint singularities of exponent > -1 integrable at
//! machine accuracy. Nodes store their distance to *each* endpoint
//! separately: `1 - x` computed from x loses all precision once x is within
//! 1e-16 of 1, and integrands such as (1-x)^(s-2) need that distance to full
//! relative accuracy.
//!
//! Levels are nested: level L uses step h = 2^(1-L) in t-space, so doubling
//! the level roughly squares the accuracy for integrands that are analytic
//! away from the endpoints.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::OnceLock;

pub const MIN_LEVEL: u32 = 1;
pub const MAX_LEVEL: u32 = 12;

/// t-space truncation; z = (pi/2) sinh(6) keeps the complementary distance
/// above ~3e-276, so no node degenerates to an endpoint in f64.
const T_MAX: f64 = 6.0;

/// One tanh-sinh node: abscissa, its distance to 1 at full relative
/// accuracy, weight, and the signed t-space index.
#[derive(Debug, Clone, Copy)]
struct DeNode {
    x: f64,
    xc: f64,
    w: f64,
    k: i64,
}

/// Complete node set at one level, including nodes so close to 1 that the
/// abscissa itself rounds to 1.0 in f64 (their position survives in `xc`).
/// All integration routines run on this set.
#[derive(Debug, Clone)]
struct FullRule {
    nodes: Vec<DeNode>,
}

/// Tanh-sinh nodes and weights for the open interval (0,1).
///
/// This is the classical rule surface: abscissae strictly inside (0,1) and
/// strictly increasing. Nodes whose abscissa is not representable below 1.0
/// in f64 are omitted here (they carry ~1e-15 of the unit mass); the
/// integrators use the complete internal set, which reaches distances
/// ~1e-276 from either endpoint through the stored complements.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub level: u32,
    /// Abscissae in (0,1), strictly increasing.
    pub nodes: Vec<f64>,
    /// Distance of each abscissa to 1, to full relative accuracy.
    pub complements: Vec<f64>,
    /// Positive weights, same length as `nodes`.
    pub weights: Vec<f64>,
}

fn build_full(level: u32) -> FullRule {
    let h = 2f64.powi(1 - level as i32);
    let kmax = (T_MAX / h).floor() as i64;
    let mut nodes: Vec<DeNode> = Vec::with_capacity(2 * kmax as usize + 1);
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let z = std::f64::consts::FRAC_PI_2 * t.sinh();
        // x = 1/(1+e^{-2z}), complement = 1/(1+e^{2z}); both exact to 1 ulp.
        let x = 1.0 / (1.0 + (-2.0 * z).exp());
        let xc = 1.0 / (1.0 + (2.0 * z).exp());
        let w = h * std::f64::consts::PI * t.cosh() * x * xc;
        if w > 0.0 && x > 0.0 && xc > 0.0 {
            nodes.push(DeNode { x, xc, w, k });
        }
    }
    nodes.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(b.xc.partial_cmp(&a.xc).unwrap()));
    FullRule { nodes }
}

fn full_rules() -> &'static Vec<FullRule> {
    static RULES: OnceLock<Vec<FullRule>> = OnceLock::new();
    RULES.get_or_init(|| (MIN_LEVEL..=MAX_LEVEL).map(build_full).collect())
}

fn full_rule(level: u32) -> &'static FullRule {
    &full_rules()[(level - MIN_LEVEL) as usize]
}

fn public_rules() -> &'static Vec<QuadratureRule> {
    static RULES: OnceLock<Vec<QuadratureRule>> = OnceLock::new();
    RULES.get_or_init(|| {
        full_rules()
            .iter()
            .enumerate()
            .map(|(i, full)| {
                let mut kept: Vec<&DeNode> = Vec::with_capacity(full.nodes.len());
                for n in &full.nodes {
                    if n.x <= 0.0 || n.x >= 1.0 || n.xc <= 1e-15 {
                        continue;
                    }
                    if kept.last().is_none_or(|l| n.x > l.x) {
                        kept.push(n);
                    }
                }
                QuadratureRule {
                    level: MIN_LEVEL + i as u32,
                    nodes: kept.iter().map(|n| n.x).collect(),
                    complements: kept.iter().map(|n| n.xc).collect(),
                    weights: kept.iter().map(|n| n.w).collect(),
                }
            })
            .collect()
    })
}

/// Tanh-sinh rule for (0,1) at the given level, 1..=12.
pub fn de_rule(level: u32) -> Result<&'static QuadratureRule> {
    if !(MIN_LEVEL..=MAX_LEVEL).contains(&level) {
        return Err(Error::Domain(format!(
            "quadrature level {level} outside {MIN_LEVEL}..={MAX_LEVEL}"
        )));
    }
    Ok(&public_rules()[(level - MIN_LEVEL) as usize])
}

/// One abscissa mapped into a segment [a, b].
///
/// `from_a` and `to_b` carry the distances to the segment ends at full
/// relative accuracy; integrands with endpoint singularities must use them
/// instead of re-deriving distances from `x`.
#[derive(Debug, Clone, Copy)]
pub struct QuadPoint {
    pub x: f64,
    pub from_a: f64,
    pub to_b: f64,
    pub a: f64,
    pub b: f64,
}

/// Integral value with an error estimate (level-to-level difference).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err: f64,
    pub evaluations: usize,
}

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

fn sum_level<F: Fn(&QuadPoint) -> f64>(f: &F, a: f64, b: f64, level: u32) -> (f64, usize) {
    let rule = full_rule(level);
    let len = b - a;
    let mut acc = Kahan::default();
    for n in &rule.nodes {
        let p = QuadPoint {
            x: a + len * n.x,
            from_a: len * n.x,
            to_b: len * n.xc,
            a,
            b,
        };
        let v = f(&p);
        if v != 0.0 {
            acc.add(n.w * v);
        }
    }
    (acc.sum * len, rule.nodes.len())
}

/// Convergence: the level difference must drop below the requested absolute
/// tolerance or below the f64 noise floor relative to the value.
fn converged(diff: f64, value: f64, tol: f64) -> bool {
    diff <= tol || diff <= 5e-14 * value.abs()
}

const START_LEVEL: u32 = 3;

/// Adaptive tanh-sinh integration of `f` over (a, b).
///
/// `f` receives a [`QuadPoint`]; singular factors must be formed from
/// `from_a` / `to_b`. The error estimate is the last level-to-level
/// difference. Integrands may have algebraic endpoint singularities of
/// exponent > -1.
pub fn integrate_1d<F: Fn(&QuadPoint) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) || b <= a {
        return Err(Error::Domain(format!("bad interval [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let mut evals = 0usize;
    let (mut prev, n0) = sum_level(&f, a, b, START_LEVEL);
    evals += n0;
    let mut last_diff = f64::INFINITY;
    for level in (START_LEVEL + 1)..=MAX_LEVEL {
        let (cur, n) = sum_level(&f, a, b, level);
        evals += n;
        last_diff = (cur - prev).abs();
        if converged(last_diff, cur, tol) {
            return Ok(Estimate { value: cur, err: last_diff, evaluations: evals });
        }
        prev = cur;
    }
    Err(Error::QuadNoConverge { value: prev, err: last_diff, evaluations: evals })
}

/// Fixed-level tanh-sinh sum over (a, b); no error control.
pub fn integrate_fixed<F: Fn(&QuadPoint) -> f64>(f: F, a: f64, b: f64, level: u32) -> Result<f64> {
    if !(MIN_LEVEL..=MAX_LEVEL).contains(&level) {
        return Err(Error::Domain(format!("quadrature level {level} outside range")));
    }
    Ok(sum_level(&f, a, b, level).0)
}

/// Clip interior split points into (a, b), sort, dedupe, and produce segments.
fn make_segments(a: f64, b: f64, splits: &[f64]) -> Vec<(f64, f64)> {
    let len = b - a;
    let margin = 1e-9 * len;
    let mut pts: Vec<f64> = splits
        .iter()
        .copied()
        .filter(|&s| s > a + margin && s < b - margin)
        .collect();
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup_by(|x, y| (*x - *y).abs() < margin);
    let mut segs = Vec::with_capacity(pts.len() + 1);
    let mut lo = a;
    for s in pts {
        segs.push((lo, s));
        lo = s;
    }
    segs.push((lo, b));
    segs
}

/// Integrate over (a, b) split at the given interior points, summing
/// per-segment estimates. Each segment gets an equal share of `tol`.
pub fn integrate_split<F: Fn(&QuadPoint) -> f64>(
    f: F,
    a: f64,
    b: f64,
    splits: &[f64],
    tol: f64,
) -> Result<Estimate> {
    let segs = make_segments(a, b, splits);
    let tol_seg = tol / segs.len() as f64;
    let mut value = Kahan::default();
    let mut err = 0.0;
    let mut evals = 0usize;
    for &(sa, sb) in &segs {
        // Recover the best estimate on stagnation; the caller's error budget
        // decides whether the total is acceptable.
        let est = match integrate_1d(&f, sa, sb, tol_seg) {
            Ok(e) => e,
            Err(Error::QuadNoConverge { value, err, evaluations }) => {
                Estimate { value, err, evaluations }
            }
            Err(e) => return Err(e),
        };
        value.add(est.value);
        err += est.err;
        evals += est.evaluations;
    }
    Ok(Estimate { value: value.sum, err, evaluations: evals })
}

const OUTER_START: u32 = 3;
const OUTER_MAX: u32 = 10;

/// Iterated tanh-sinh integration over a rectangle with per-axis level
/// escalation.
///
/// `outer_splits` are interior break points for the outer (x) axis;
/// `inner_splits(x)` returns interior break points for the inner (y) axis at
/// that x. Splitting the inner axis at a kernel ridge keeps node counts
/// bounded as the ridge width shrinks. Inner integrals are memoized across
/// outer levels (the node sets are nested).
pub fn integrate_2d<F, S>(
    f: F,
    x_range: (f64, f64),
    y_range: (f64, f64),
    tol: f64,
    outer_splits: &[f64],
    inner_splits: S,
) -> Result<Estimate>
where
    F: Fn(&QuadPoint, &QuadPoint) -> f64,
    S: Fn(f64) -> Vec<f64>,
{
    let (xa, xb) = x_range;
    let (ya, yb) = y_range;
    if !(xb > xa && yb > ya) {
        return Err(Error::Domain("empty rectangle".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let xsegs = make_segments(xa, xb, outer_splits);
    let outer_measure: f64 = xsegs.iter().map(|s| s.1 - s.0).sum();
    let tol_inner = tol / (4.0 * outer_measure);

    // (segment index, t-space id) -> inner integral value and error
    let mut cache: HashMap<(usize, i64), (f64, f64)> = HashMap::new();
    let mut evals = 0usize;
    let mut prev: Option<f64> = None;
    let mut last = (0.0, f64::INFINITY);

    for level in OUTER_START..=OUTER_MAX {
        let rule = full_rule(level);
        let mut sum = Kahan::default();
        let mut inner_err = Kahan::default();
        for (si, &(sa, sb)) in xsegs.iter().enumerate() {
            let len = sb - sa;
            for node in &rule.nodes {
                let key = (si, node.k << (MAX_LEVEL - level));
                let (g, gerr) = match cache.get(&key) {
                    Some(&v) => v,
                    None => {
                        let xp = QuadPoint {
                            x: sa + len * node.x,
                            from_a: len * node.x,
                            to_b: len * node.xc,
                            a: sa,
                            b: sb,
                        };
                        let est = integrate_split(
                            |yp: &QuadPoint| f(&xp, yp),
                            ya,
                            yb,
                            &inner_splits(xp.x),
                            tol_inner,
                        )?;
                        evals += est.evaluations;
                        cache.insert(key, (est.value, est.err));
                        (est.value, est.err)
                    }
                };
                let w = node.w * len;
                sum.add(w * g);
                inner_err.add(w * gerr);
            }
        }
        let value = sum.sum;
        if let Some(p) = prev {
            let diff = (value - p).abs();
            let total_err = diff + inner_err.sum.abs();
            last = (value, total_err);
            if converged(total_err, value, tol) {
                return Ok(Estimate { value, err: total_err, evaluations: evals });
            }
        }
        prev = Some(value);
    }
    Err(Error::QuadNoConverge { value: last.0, err: last.1, evaluations: evals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_invariants() {
        for level in MIN_LEVEL..=MAX_LEVEL {
            let r = de_rule(level).unwrap();
            assert_eq!(r.nodes.len(), r.weights.len());
            assert_eq!(r.nodes.len(), r.complements.len());
            for i in 0..r.nodes.len() {
                assert!(r.nodes[i] > 0.0 && r.nodes[i] < 1.0);
                assert!(r.weights[i] > 0.0);
                assert!(r.complements[i] > 0.0);
                if i > 0 {
                    assert!(r.nodes[i] > r.nodes[i - 1], "nodes not increasing at level {level}");
                }
            }
        }
        assert!(de_rule(0).is_err());
        assert!(de_rule(13).is_err());
    }

    #[test]
    fn exact_on_constants() {
        for level in 4..=MAX_LEVEL {
            let v = integrate_fixed(|_| 1.0, 0.0, 1.0, level).unwrap();
            assert!((v - 1.0).abs() <= 1e-14, "level {level}: {v}");
        }
    }

    #[test]
    fn inverse_sqrt_singularity() {
        // int_0^1 x^{-1/2} dx = 2
        let v = integrate_fixed(|p| p.from_a.powf(-0.5), 0.0, 1.0, 8).unwrap();
        assert!((v - 2.0).abs() <= 1e-12, "{v}");
        let est = integrate_1d(|p| p.from_a.powf(-0.5), 0.0, 1.0, 1e-12).unwrap();
        assert!((est.value - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn beta_function_both_endpoints() {
        // int_0^1 x^{-0.9} (1-x)^{-0.9} dx = B(0.1, 0.1), oracle: Gamma identity
        let beta_01_01 = 19.71463948905016166317;
        let est = integrate_1d(
            |p| p.from_a.powf(-0.9) * p.to_b.powf(-0.9),
            0.0,
            1.0,
            1e-10,
        )
        .unwrap();
        assert!(
            (est.value - beta_01_01).abs() <= 1e-10 * beta_01_01,
            "value {} err {}",
            est.value,
            est.err
        );
    }

    #[test]
    fn zero_integrand() {
        let est = integrate_1d(|_| 0.0, 0.0, 1.0, 1e-12).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn closed_form_power() {
        // int_0^1 x^{-0.5} dx = 1/(1-0.5) = 2 through the adaptive path
        let est = integrate_1d(|p| p.from_a.powf(-0.5), 0.0, 1.0, 1e-11).unwrap();
        assert!((est.value - 2.0).abs() <= 1e-11);
        assert!(est.err <= 1e-11);
    }

    #[test]
    fn monotone_error_decay() {
        // |I(level+1) - I(level)| decays for x^{-a} (1-x)^{-b}
        for &al in &[0.0, 0.5, 0.9] {
            for &be in &[0.0, 0.5, 0.9] {
                let f = |p: &QuadPoint| p.from_a.powf(-al) * p.to_b.powf(-be);
                let exact_done = |d: f64| d < 1e-14;
                let mut prev_diff = f64::INFINITY;
                let mut prev = integrate_fixed(f, 0.0, 1.0, 3).unwrap();
                for level in 4..=9 {
                    let cur = integrate_fixed(f, 0.0, 1.0, level).unwrap();
                    let diff = (cur - prev).abs();
                    if exact_done(prev_diff) {
                        break; // roundoff plateau
                    }
                    assert!(
                        diff <= prev_diff,
                        "alpha={al} beta={be} level={level}: {diff} > {prev_diff}"
                    );
                    prev_diff = diff;
                    prev = cur;
                }
            }
        }
    }

    #[test]
    fn two_d_unit_square() {
        let est = integrate_2d(|_, _| 1.0, (0.0, 1.0), (0.0, 1.0), 1e-12, &[], |_| vec![])
            .unwrap();
        assert!((est.value - 1.0).abs() <= 1e-13, "{}", est.value);
    }

    #[test]
    fn two_d_product_singularities() {
        // x^{-0.3} y^{-0.4} over the unit square = (1/0.7)(1/0.6)
        let exact = (1.0 / 0.7) * (1.0 / 0.6);
        let est = integrate_2d(
            |px, py| px.from_a.powf(-0.3) * py.from_a.powf(-0.4),
            (0.0, 1.0),
            (0.0, 1.0),
            1e-11,
            &[],
            |_| vec![],
        )
        .unwrap();
        assert!((est.value - exact).abs() <= 1e-10, "{} vs {exact}", est.value);
    }

    #[test]
    fn two_d_matches_product_of_one_d() {
        let fx = |p: &QuadPoint| p.from_a.powf(-0.25) * (1.0 + p.x).ln();
        let fy = |p: &QuadPoint| p.to_b.powf(-0.5) * (2.0 - p.x);
        let ix = integrate_1d(fx, 0.0, 1.0, 1e-13).unwrap().value;
        let iy = integrate_1d(fy, 0.0, 1.0, 1e-13).unwrap().value;
        let i2 = integrate_2d(
            |px, py| fx(px) * fy(py),
            (0.0, 1.0),
            (0.0, 1.0),
            1e-12,
            &[],
            |_| vec![],
        )
        .unwrap();
        assert!(
            (i2.value - ix * iy).abs() <= 1e-12 * (ix * iy).abs(),
            "{} vs {}",
            i2.value,
            ix * iy
        );
    }

    #[test]
    fn split_points_respected() {
        // integrand with a kink; splitting at it restores fast convergence
        let f = |p: &QuadPoint| (p.x - 0.3).abs();
        let est = integrate_split(f, 0.0, 1.0, &[0.3], 1e-13).unwrap();
        let exact = 0.3f64.powi(2) / 2.0 + 0.7f64.powi(2) / 2.0;
        assert!((est.value - exact).abs() <= 1e-13);
    }
}
