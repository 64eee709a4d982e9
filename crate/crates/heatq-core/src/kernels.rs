//! Exact Dirichlet heat kernels on the four model 1-D domains.
//!
//! Full line, half line and left ray have closed forms. The interval kernel
//! is the method-of-images sum
//!   p(x1,x2;t) = sum_n [G(x1-x2-2na) - G(x1+x2-2na)],  G the Gaussian,
//! truncated with a certified Gaussian-tail bound. For t > a^2 the images
//! converge slowly and the sine eigenfunction series is used instead.

use crate::error::{Error, Result};

/// Which exactly solvable 1-D domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain1D {
    FullLine,
    HalfLine,
    /// (-inf, a]
    LeftRay { a: f64 },
    /// [0, a]
    Interval { a: f64 },
}

impl Domain1D {
    fn check(&self) -> Result<()> {
        match *self {
            Domain1D::LeftRay { a } | Domain1D::Interval { a } if !(a > 0.0) => {
                Err(Error::Domain(format!("domain length a = {a} must be positive")))
            }
            _ => Ok(()),
        }
    }

    fn contains(&self, x: f64) -> bool {
        match *self {
            Domain1D::FullLine => x.is_finite(),
            Domain1D::HalfLine => x >= 0.0,
            Domain1D::LeftRay { a } => x <= a,
            Domain1D::Interval { a } => (0.0..=a).contains(&x),
        }
    }
}

/// A kernel value with the number of images (or series terms) used and the
/// bound on the truncated tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub value: f64,
    pub images_used: usize,
    pub truncation_bound: f64,
}

/// Result of the image-count computation; `capped` flags an unachievable
/// tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImageCount {
    pub count: usize,
    pub capped: bool,
}

const IMAGE_CAP: usize = 64;

/// Gaussian-tail bound on the images beyond |n| = N: every argument there
/// has magnitude >= (2N)a (since |x1-x2| <= a and 0 <= x1+x2 <= 2a), and the
/// per-step ratio between consecutive image Gaussians is
/// exp(-(2N+1)a^2/t), so
///   tail(N) <= 4 G(2Na) / (1 - exp(-(2N+1)a^2/t)).
fn image_tail_bound(n: usize, a: f64, t: f64) -> f64 {
    let norm = 1.0 / (4.0 * std::f64::consts::PI * t).sqrt();
    let lead = 4.0 * norm * (-(2.0 * n as f64 * a).powi(2) / (4.0 * t)).exp();
    let ratio = (-(2.0 * n as f64 + 1.0) * a * a / t).exp();
    lead / (1.0 - ratio)
}

/// Smallest image half-width N with certified tail <= tol; capped at 64.
pub fn image_count(a: f64, t: f64, tol: f64) -> Result<ImageCount> {
    if !(a > 0.0 && t > 0.0 && tol > 0.0) {
        return Err(Error::Domain(format!("image_count needs a, t, tol > 0 (a={a}, t={t}, tol={tol})")));
    }
    for n in 1..=IMAGE_CAP {
        if image_tail_bound(n, a, t) <= tol {
            return Ok(ImageCount { count: n, capped: false });
        }
    }
    Ok(ImageCount { count: IMAGE_CAP, capped: true })
}

/// 1 - e^{-u} - e^{-w} with expm1 taken on the smaller exponent, so the
/// bilinear vanishing of the interval kernel at either boundary corner
/// survives in floating point.
fn corner_bracket(u: f64, w: f64) -> f64 {
    if u <= w {
        -(-u).exp_m1() - (-w).exp()
    } else {
        -(-w).exp_m1() - (-u).exp()
    }
}

/// Precomputed interval kernel evaluator (image form).
#[derive(Debug, Clone, Copy)]
pub(crate) struct IntervalImages {
    a: f64,
    t: f64,
    norm: f64,
    inv4t: f64,
    n: usize,
    pub(crate) truncation_bound: f64,
}

impl IntervalImages {
    pub(crate) fn new(a: f64, t: f64, n: usize) -> Self {
        IntervalImages {
            a,
            t,
            norm: 1.0 / (4.0 * std::f64::consts::PI * t).sqrt(),
            inv4t: 1.0 / (4.0 * t),
            n,
            truncation_bound: image_tail_bound(n, a, t),
        }
    }

    #[inline]
    fn gauss(&self, z: f64) -> f64 {
        self.norm * (-z * z * self.inv4t).exp()
    }

    /// p_[0,a](x1, a - y2;t) for collar coordinates x1, y2 measured from
    /// opposite endpoints; the bracket factor that controls the boundary
    /// vanishing is built from the exact y2.
    pub(crate) fn eval_cross(&self, x1: f64, y2: f64) -> f64 {
        let x2 = self.a - y2;
        let d = x1 - x2;
        let u = x1 * x2 / self.t;
        let w = (self.a - x1) * y2 / self.t;
        let mut sum = self.gauss(d) * corner_bracket(u, w);
        let mut comp = 0.0;
        let sigma = x1 + x2;
        let add = |v: f64, sum: &mut f64, comp: &mut f64| {
            let y = v - *comp;
            let t = *sum + y;
            *comp = (t - *sum) - y;
            *sum = t;
        };
        for n in 1..=self.n {
            let shift = 2.0 * n as f64 * self.a;
            add(self.gauss(d - shift), &mut sum, &mut comp);
            add(self.gauss(d + shift), &mut sum, &mut comp);
            add(-self.gauss(sigma + shift), &mut sum, &mut comp);
            if n >= 2 {
                add(-self.gauss(sigma - shift), &mut sum, &mut comp);
            }
        }
        sum
    }

    /// p_[0,a](x1,x2;t). The n = 0 and n = 1 reflections are folded into the
    /// corner bracket so the value vanishes bilinearly at both corners
    /// without cancellation; remaining images are exponentially small and
    /// added pairwise with compensated summation.
    pub(crate) fn eval(&self, x1: f64, x2: f64) -> f64 {
        self.eval_with_dists(x1, self.a - x1, x2, self.a - x2)
    }

    /// Same kernel with the distances to the far endpoint supplied exactly;
    /// required when x is so close to `a` that `a - x` has no relative
    /// accuracy left.
    pub(crate) fn eval_with_dists(&self, x1: f64, dist1: f64, x2: f64, dist2: f64) -> f64 {
        let d = x1 - x2;
        let u = x1 * x2 / self.t;
        let w = dist1 * dist2 / self.t;
        let mut sum = self.gauss(d) * corner_bracket(u, w);
        let mut comp = 0.0;
        let sigma = x1 + x2;
        let add = |v: f64, sum: &mut f64, comp: &mut f64| {
            let y = v - *comp;
            let t = *sum + y;
            *comp = (t - *sum) - y;
            *sum = t;
        };
        for n in 1..=self.n {
            let shift = 2.0 * n as f64 * self.a;
            add(self.gauss(d - shift), &mut sum, &mut comp);
            add(self.gauss(d + shift), &mut sum, &mut comp);
            // sigma images for n in {0, 1} live in the corner bracket
            add(-self.gauss(sigma + shift), &mut sum, &mut comp);
            if n >= 2 {
                add(-self.gauss(sigma - shift), &mut sum, &mut comp);
            }
        }
        sum
    }
}

/// Sine eigenfunction series for the interval:
///   p = (2/a) sum_n e^{-(n pi/a)^2 t} sin(n pi x1/a) sin(n pi x2/a).
/// Every term vanishes at the boundary through its sine factor, so when the
/// factor is evaluated from the boundary distance the kernel keeps full
/// relative accuracy arbitrarily close to either endpoint. That property is
/// what the singular-weight integrals need; the image sum loses it once the
/// far-boundary images stop underflowing.
#[derive(Debug, Clone)]
pub(crate) struct IntervalSine {
    a: f64,
    pub(crate) n_terms: usize,
    pub(crate) truncation_bound: f64,
    /// (2/a) e^{-(n pi/a)^2 t}, n = 1..
    coef: Vec<f64>,
}

impl IntervalSine {
    pub(crate) fn new(a: f64, t: f64, tol: f64) -> Self {
        // N <= 1 + ceil(a sqrt(|log tol| / t) / pi) keeps the first omitted
        // term below tol; the geometric ratio supplies the full tail bound.
        let n = 1 + (a * ((1.0 / tol).ln() / t).sqrt() / std::f64::consts::PI).ceil() as usize;
        let lam = (std::f64::consts::PI / a).powi(2) * t;
        let first = (-(lam) * ((n + 1) * (n + 1)) as f64).exp();
        let ratio = (-lam * (2 * n + 3) as f64).exp();
        let coef = (1..=n).map(|m| 2.0 / a * (-lam * (m * m) as f64).exp()).collect();
        IntervalSine {
            a,
            n_terms: n,
            truncation_bound: 2.0 / a * first / (1.0 - ratio),
            coef,
        }
    }

    /// sin(n pi x / a) from whichever boundary distance is smaller:
    /// sin(n pi (a-u)/a) = (-1)^(n+1) sin(n pi u / a).
    #[inline]
    fn mode(&self, n: usize, x: f64, dist_a: f64) -> f64 {
        let k = n as f64 * std::f64::consts::PI / self.a;
        if x <= 0.5 * self.a {
            (k * x).sin()
        } else {
            let s = (k * dist_a).sin();
            if n % 2 == 1 {
                s
            } else {
                -s
            }
        }
    }

    /// Mode factors at one point, scaled by the series coefficients.
    pub(crate) fn half_modes(&self, x: f64, dist_a: f64) -> Vec<f64> {
        (1..=self.n_terms).map(|n| self.coef[n - 1] * self.mode(n, x, dist_a)).collect()
    }

    /// Contract precomputed left factors against the modes of (x, dist_a).
    pub(crate) fn eval_with(&self, half: &[f64], x: f64, dist_a: f64) -> f64 {
        let mut sum = 0.0;
        for (n, h) in half.iter().enumerate() {
            sum += h * self.mode(n + 1, x, dist_a);
        }
        sum
    }

    pub(crate) fn eval(&self, x1: f64, x2: f64) -> f64 {
        let mut sum = 0.0;
        for n in 1..=self.n_terms {
            sum += self.coef[n - 1]
                * self.mode(n, x1, self.a - x1)
                * self.mode(n, x2, self.a - x2);
        }
        sum
    }
}

/// Dirichlet heat kernel on `dom` at (x1, x2), time t, with certified
/// truncation error <= tol where truncation occurs.
pub fn kernel(dom: Domain1D, x1: f64, x2: f64, t: f64, tol: f64) -> Result<KernelEval> {
    dom.check()?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("time t = {t} must be positive")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    if !dom.contains(x1) || !dom.contains(x2) {
        return Err(Error::Domain(format!(
            "point ({x1}, {x2}) outside the closure of {dom:?}"
        )));
    }
    let norm = 1.0 / (4.0 * std::f64::consts::PI * t).sqrt();
    let gauss = |z: f64| norm * (-z * z / (4.0 * t)).exp();
    match dom {
        Domain1D::FullLine => Ok(KernelEval {
            value: gauss(x1 - x2),
            images_used: 1,
            truncation_bound: 0.0,
        }),
        // factorized form of the difference of Gaussians; exact zero on the
        // boundary and no cancellation near the corner
        Domain1D::HalfLine => Ok(KernelEval {
            value: gauss(x1 - x2) * (-(-x1 * x2 / t).exp_m1()),
            images_used: 2,
            truncation_bound: 0.0,
        }),
        Domain1D::LeftRay { a } => Ok(KernelEval {
            value: gauss(x1 - x2) * (-(-(a - x1) * (a - x2) / t).exp_m1()),
            images_used: 2,
            truncation_bound: 0.0,
        }),
        Domain1D::Interval { a } => {
            if t > a * a {
                let series = IntervalSine::new(a, t, tol);
                return Ok(KernelEval {
                    value: series.eval(x1, x2),
                    images_used: series.n_terms,
                    truncation_bound: series.truncation_bound,
                });
            }
            let ic = image_count(a, t, tol)?;
            if ic.capped {
                return Err(Error::ToleranceUnachievable {
                    requested: tol,
                    bound: image_tail_bound(ic.count, a, t),
                });
            }
            let imgs = IntervalImages::new(a, t, ic.count);
            Ok(KernelEval {
                value: imgs.eval(x1, x2),
                images_used: 2 * ic.count + 1,
                truncation_bound: imgs.truncation_bound,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-14;

    fn k(dom: Domain1D, x1: f64, x2: f64, t: f64) -> f64 {
        kernel(dom, x1, x2, t, TOL).unwrap().value
    }

    #[test]
    fn full_line_at_origin() {
        // (4 pi t)^{-1/2} at t = 1/4 equals pi^{-1/2}
        let v = k(Domain1D::FullLine, 0.0, 0.0, 0.25);
        assert!((v - 0.5641895835477563).abs() < 1e-15, "{v}");
    }

    #[test]
    fn half_line_dirichlet_zero() {
        for x2 in [0.1, 0.5, 2.0] {
            assert_eq!(k(Domain1D::HalfLine, 0.0, x2, 0.3), 0.0);
        }
    }

    #[test]
    fn interval_reflection_symmetry() {
        let dom = Domain1D::Interval { a: 1.0 };
        let lhs = k(dom, 0.3, 0.4, 0.01);
        let rhs = k(dom, 0.7, 0.6, 0.01);
        assert!((lhs - rhs).abs() <= 1e-14 * lhs.abs().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn factorized_equals_difference_form() {
        // the single-reflection kernel in product form
        for &(x1, x2, t) in &[(0.3, 0.4, 0.05), (0.01, 0.02, 0.001), (1.5, 2.5, 0.7)] {
            let norm = 1.0 / (4.0 * std::f64::consts::PI * t).sqrt();
            let diff =
                norm * ((-(x1 - x2) * (x1 - x2) / (4.0 * t)).exp() - (-(x1 + x2) * (x1 + x2) / (4.0 * t)).exp());
            let fact = k(Domain1D::HalfLine, x1, x2, t);
            assert!((diff - fact).abs() <= 1e-14 * fact.abs().max(1e-30), "{diff} vs {fact}");
        }
    }

    #[test]
    fn left_ray_matches_reflected_half_line() {
        // p_(-inf,a](x1,x2) = p_R+(a-x1, a-x2)
        let a = 2.0;
        for &(x1, x2, t) in &[(0.5, 1.0, 0.3), (1.9, 1.95, 0.01)] {
            let lr = k(Domain1D::LeftRay { a }, x1, x2, t);
            let hl = k(Domain1D::HalfLine, a - x1, a - x2, t);
            assert!((lr - hl).abs() <= 1e-15 * hl.abs().max(1e-30));
        }
    }

    #[test]
    fn image_count_examples() {
        let ic = image_count(1.0, 0.01, 1e-15).unwrap();
        assert!(!ic.capped);
        assert!(ic.count <= 9, "expected single digits, got {}", ic.count);

        // t -> 0 drives the count to 1
        let ic = image_count(1.0, 1e-4, 1e-15).unwrap();
        assert_eq!(ic.count, 1);

        // unachievable tolerance
        let ic = image_count(1.0, 10.0, 1e-300).unwrap();
        assert!(ic.capped);
    }

    #[test]
    fn interval_truncation_bound_respected() {
        let ev = kernel(Domain1D::Interval { a: 1.0 }, 0.3, 0.4, 0.05, 1e-13).unwrap();
        assert!(ev.truncation_bound <= 1e-13);
        assert!(ev.value > 0.0);
    }

    #[test]
    fn interval_sine_path_matches_images_at_crossover() {
        // just below t = a^2 images are still accurate; compare to the series
        let a = 1.0;
        let t = 0.999;
        let imgs = IntervalImages::new(a, t, image_count(a, t, 1e-15).unwrap().count);
        let sine = IntervalSine::new(a, t, 1e-15);
        // the image sum cancels from the kernel scale (4 pi t)^{-1/2}, so
        // agreement is absolute at that scale
        let scale = 1.0 / (4.0 * std::f64::consts::PI * t).sqrt();
        for &(x1, x2) in &[(0.2, 0.7), (0.5, 0.5), (0.05, 0.9)] {
            let a_val = imgs.eval(x1, x2);
            let b_val = sine.eval(x1, x2);
            assert!(
                (a_val - b_val).abs() <= 1e-14 * scale,
                "({x1},{x2}): {a_val} vs {b_val}"
            );
        }
    }

    #[test]
    fn domain_errors() {
        assert!(kernel(Domain1D::HalfLine, -0.1, 0.5, 0.1, TOL).is_err());
        assert!(kernel(Domain1D::Interval { a: 1.0 }, 0.5, 1.1, 0.1, TOL).is_err());
        assert!(kernel(Domain1D::Interval { a: -1.0 }, 0.0, 0.0, 0.1, TOL).is_err());
        assert!(kernel(Domain1D::FullLine, 0.0, 0.0, -0.1, TOL).is_err());
    }

    #[test]
    fn interval_boundary_values_negligible() {
        let dom = Domain1D::Interval { a: 1.0 };
        for &(x1, x2, t) in &[(0.0, 0.5, 0.01), (1.0, 0.3, 0.05), (0.0, 0.0, 0.1)] {
            let v = k(dom, x1, x2, t);
            assert!(v.abs() < 1e-15, "p({x1},{x2};{t}) = {v}");
        }
    }
}
