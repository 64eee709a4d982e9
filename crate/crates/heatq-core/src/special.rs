//! Closed-form coefficient engine: Gamma, the boundary coefficient
//! c_{a1,a2} with analytic continuation, ball constants b0..b3, and the
//! log-case q-integral.
//!
//! c_{a1,a2} = 2^{-s} pi^{-1/2} Gamma((2-s)/2)
//!             * int_0^1 (r^{-a1} + r^{-a2}) ((1-r)^{s-2} - (1+r)^{s-2}) dr,
//! s = a1 + a2. The integral converges only for s > 1; for s <= 1 the value
//! is the analytic continuation, computed by subtracting the Taylor
//! polynomial of g(r) = r^{-a1} + r^{-a2} about r = 1 from the singular
//! branch and integrating the subtracted terms in closed form.

use crate::error::{Error, Result};
use crate::quad::{integrate_1d, integrate_split, QuadPoint};

const FRAC_1_SQRT_PI: f64 = 0.5641895835477562869480795; // 1/sqrt(pi)
pub const EULER_GAMMA: f64 = 0.5772156649015328606065121;

/// Guard radius around poles of the continued coefficient; evaluation is
/// refused inside it rather than extrapolated.
pub const POLE_GUARD: f64 = 1e-8;

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

// Lanczos g=7, n=9 (GSL coefficient set).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

fn lanczos(x: f64) -> f64 {
    // valid for x >= 0.5; relative error ~1e-15 for x <= ~20
    let z = x - 1.0;
    let mut t = LANCZOS_P[0];
    for (i, p) in LANCZOS_P.iter().enumerate().skip(1) {
        t += p / (z + i as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * w.powf(z + 0.5) * (-w).exp() * t
}

/// Gamma function, relative error <= 1e-13 for |x| <= 30.
///
/// Reflection handles x < 0.5; arguments above 15 descend by the recurrence
/// Gamma(x) = (x-1) Gamma(x-1) to keep the power-term rounding small.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite {x}")));
    }
    if x <= 0.0 && (x - x.round()).abs() < f64::EPSILON * x.abs().max(1.0) {
        return Err(Error::GammaPole { x });
    }
    if x < 0.5 {
        // Gamma(x) = pi / (sin(pi x) Gamma(1-x)); sin(pi x) via the reduced
        // argument so that accuracy survives large negative x.
        let n = x.floor();
        let frac = x - n; // in [0,1)
        let sin_pi = if n as i64 % 2 == 0 {
            (std::f64::consts::PI * frac).sin()
        } else {
            -(std::f64::consts::PI * frac).sin()
        };
        return Ok(std::f64::consts::PI / (sin_pi * gamma_fn(1.0 - x)?));
    }
    let mut factor = 1.0;
    let mut y = x;
    while y > 15.0 {
        y -= 1.0;
        factor *= y;
    }
    Ok(factor * lanczos(y))
}

// ---------------------------------------------------------------------------
// AlphaPair and friends
// ---------------------------------------------------------------------------

/// The singularity exponents (alpha1, alpha2), both < 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaPair {
    alpha1: f64,
    alpha2: f64,
}

impl AlphaPair {
    pub fn new(alpha1: f64, alpha2: f64) -> Result<Self> {
        if !(alpha1.is_finite() && alpha2.is_finite()) {
            return Err(Error::Domain("alpha exponents must be finite".into()));
        }
        if alpha1 >= 2.0 || alpha2 >= 2.0 {
            return Err(Error::Domain(format!(
                "alpha1 = {alpha1}, alpha2 = {alpha2}: both must be < 2"
            )));
        }
        Ok(AlphaPair { alpha1, alpha2 })
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    /// s = alpha1 + alpha2.
    pub fn sum(&self) -> f64 {
        self.alpha1 + self.alpha2
    }

    /// The generic series requires s strictly away from the integers.
    pub fn is_generic(&self) -> bool {
        let s = self.sum();
        (s - s.round()).abs() > POLE_GUARD
    }

    /// Threshold case s = 1 where the boundary contribution is logarithmic.
    pub fn is_log_case(&self) -> bool {
        (self.sum() - 1.0).abs() <= 1e-12
    }

    /// Pair with both entries shifted down.
    pub fn shifted(&self, k1: u32, k2: u32) -> AlphaPair {
        AlphaPair { alpha1: self.alpha1 - k1 as f64, alpha2: self.alpha2 - k2 as f64 }
    }

    pub fn swapped(&self) -> AlphaPair {
        AlphaPair { alpha1: self.alpha2, alpha2: self.alpha1 }
    }
}

// ---------------------------------------------------------------------------
// c coefficient
// ---------------------------------------------------------------------------

/// binomial(-alpha, k)
fn binom_neg(alpha: f64, k: u32) -> f64 {
    let mut v = 1.0;
    for j in 0..k {
        v *= (-alpha - j as f64) / (j + 1) as f64;
    }
    v
}

/// (1-r)^(s-2) - (1+r)^(s-2) without cancellation for small r.
///
/// For r < 1/2 the difference is written e^B expm1(A - B) with
/// A - B = -2 (s-2) atanh(r); for r >= 1/2 the two branches differ in
/// magnitude and direct evaluation is stable. `one_minus_r` must come from
/// the quadrature node's complement.
fn branch_difference(r: f64, one_minus_r: f64, s: f64) -> f64 {
    if r < 0.5 {
        let b = (s - 2.0) * r.ln_1p();
        b.exp() * (-2.0 * (s - 2.0) * r.atanh()).exp_m1()
    } else {
        one_minus_r.powf(s - 2.0) - (1.0 + r).powf(s - 2.0)
    }
}

/// g(r) = r^{-a1} + r^{-a2} paired with the branch difference, grouped as
/// r^{1-a} * (difference / r) so the product cannot overflow for a < 2.
/// Segment-exact distances are used at whichever endpoint the segment
/// touches; elsewhere plain coordinates carry full relative accuracy.
fn eq2_integrand(p: &QuadPoint, a1: f64, a2: f64, s: f64) -> f64 {
    let r = if p.a == 0.0 { p.from_a } else { p.x };
    let one_minus_r = if p.b == 1.0 { p.to_b } else { 1.0 - p.x };
    let d = branch_difference(r, one_minus_r, s);
    if r < 0.5 {
        (r.powf(1.0 - a1) + r.powf(1.0 - a2)) * (d / r)
    } else {
        (r.powf(-a1) + r.powf(-a2)) * d
    }
}

fn check_alpha_domain(ap: &AlphaPair) -> Result<()> {
    if ap.alpha1 >= 2.0 || ap.alpha2 >= 2.0 {
        return Err(Error::Domain(format!(
            "alpha1 = {}, alpha2 = {}: both must be < 2",
            ap.alpha1, ap.alpha2
        )));
    }
    Ok(())
}

fn prefactor(s: f64) -> Result<f64> {
    Ok(2f64.powf(-s) * FRAC_1_SQRT_PI * gamma_fn((2.0 - s) / 2.0)?)
}

/// Direct quadrature of the defining integral; converges for 1 < s < 4 only.
pub fn c_coef_direct(ap: &AlphaPair) -> Result<f64> {
    check_alpha_domain(ap)?;
    let (a1, a2) = (ap.alpha1, ap.alpha2);
    let s = a1 + a2;
    if s <= 1.0 {
        return Err(Error::Domain(format!(
            "direct integral diverges for s = {s} <= 1; use the continuation"
        )));
    }
    if (s - 2.0).abs() < POLE_GUARD {
        return Err(Error::CoefficientPole { s, pole: 2.0 });
    }
    let est = integrate_split(|p| eq2_integrand(p, a1, a2, s), 0.0, 1.0, &[0.5], 1e-12)?;
    Ok(prefactor(s)? * est.value)
}

/// The Taylor order needed so the subtracted remainder integrand vanishes at
/// r = 1: K = max(0, ceil(1-s) + 1).
fn taylor_order(s: f64) -> u32 {
    let k = (1.0 - s).ceil() as i64 + 1;
    k.max(0) as u32
}

/// The subtracted remainder against the singular branch, with u = 1 - r:
///   R_K(r) (1-r)^(s-2) = u^(K+s-1) * sum_{m>=0} (-1)^(K+1+m) g_{K+1+m} u^m.
/// Folding the singular factor into the tail series keeps every term finite
/// and decaying (K + s - 1 >= 1 by the choice of K); naive subtraction would
/// leave absolute roundoff that (1-r)^(s-2) amplifies without bound.
fn remainder_integrand(a1: f64, a2: f64, s: f64, k_order: u32, u: f64) -> f64 {
    let mut t1 = binom_neg(a1, k_order + 1);
    let mut t2 = binom_neg(a2, k_order + 1);
    let mut sign = if (k_order + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut um = 1.0;
    let mut total = sign * (t1 + t2);
    let mut k = k_order + 1;
    loop {
        k += 1;
        let kf = k as f64;
        t1 *= (-a1 - kf + 1.0) / kf;
        t2 *= (-a2 - kf + 1.0) / kf;
        sign = -sign;
        um *= u;
        let term = sign * (t1 + t2) * um;
        total += term;
        if term.abs() <= 1e-18 * (total.abs() + 1e-300) && k > k_order + 9 {
            break;
        }
        if k > 400 {
            break;
        }
    }
    u.powf(s - 1.0 + k_order as f64) * total
}

fn c_integral_continued(a1: f64, a2: f64) -> Result<f64> {
    let s = a1 + a2;
    let k_order = taylor_order(s);
    // guard the genuine poles of the subtracted closed forms: s = 1 (k = 0)
    // and s = 1 - k for k >= 2 (the k = 1 pole cancels identically because
    // g'(1) = -s).
    if (s - 1.0).abs() < POLE_GUARD {
        return Err(Error::CoefficientPole { s, pole: 1.0 });
    }
    for k in 2..=k_order {
        let pole = 1.0 - k as f64;
        if (s - pole).abs() < POLE_GUARD {
            return Err(Error::CoefficientPole { s, pole });
        }
    }

    // [0, 1/2]: full integrand, regular at the split point.
    let left = integrate_1d(|p| eq2_integrand(p, a1, a2, s), 0.0, 0.5, 1e-13)?;

    // [1/2, 1]: smooth (1+r)^(s-2) branch.
    let smooth = integrate_1d(
        |p| ((p.x).powf(-a1) + (p.x).powf(-a2)) * (1.0 + p.x).powf(s - 2.0),
        0.5,
        1.0,
        1e-13,
    )?;

    // [1/2, 1]: singular branch with Taylor subtraction. Subtracted terms in
    // closed form: (-1)^k g_k (1/2)^(s-1+k) / (s-1+k); the k = 1 term is
    // (1/2)^s exactly.
    let mut closed = 0.0;
    for k in 0..=k_order {
        if k == 1 {
            closed += 2f64.powf(-s);
        } else {
            let gk = binom_neg(a1, k) + binom_neg(a2, k);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            closed += sign * gk * 2f64.powf(1.0 - s - k as f64) / (s - 1.0 + k as f64);
        }
    }
    let remainder =
        integrate_1d(|p| remainder_integrand(a1, a2, s, k_order, p.to_b), 0.5, 1.0, 1e-13)?;

    Ok(left.value + closed + remainder.value - smooth.value)
}

/// The boundary coefficient c_{a1,a2} by analytic continuation; agrees with
/// the direct integral wherever both exist. Symmetric in (a1, a2) exactly:
/// the pair is put in canonical order before evaluation.
pub fn c_coef(ap: &AlphaPair) -> Result<f64> {
    check_alpha_domain(ap)?;
    let (a1, a2) = if ap.alpha1 >= ap.alpha2 {
        (ap.alpha1, ap.alpha2)
    } else {
        (ap.alpha2, ap.alpha1)
    };
    let s = a1 + a2;
    if (s - 2.0).abs() < POLE_GUARD {
        return Err(Error::CoefficientPole { s, pole: 2.0 });
    }
    Ok(prefactor(s)? * c_integral_continued(a1, a2)?)
}

/// c at raw exponents; convenience for shifted evaluations.
pub fn c_at(alpha1: f64, alpha2: f64) -> Result<f64> {
    c_coef(&AlphaPair::new(alpha1, alpha2)?)
}

// ---------------------------------------------------------------------------
// Ball coefficients
// ---------------------------------------------------------------------------

/// The closed-form constants b0..b3 of the ball expansion; b1 = b3 = 0.
/// `radius_power[j]` is the exponent of the radius multiplying b_j.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallCoeffs {
    pub b: [f64; 4],
    pub radius_power: [f64; 4],
}

impl BallCoeffs {
    /// b_j * a^(3-j-s), the coefficient of t^(j/2).
    pub fn scaled(&self, j: usize, radius: f64) -> f64 {
        self.b[j] * radius.powf(self.radius_power[j])
    }
}

pub fn ball_b_coeffs(ap: &AlphaPair) -> Result<BallCoeffs> {
    check_alpha_domain(ap)?;
    let s = ap.sum();
    for pole in [-1.0, 0.0, 1.0, 2.0, 3.0] {
        if (s - pole).abs() < POLE_GUARD {
            return Err(Error::CoefficientPole { s, pole });
        }
    }
    let pi = std::f64::consts::PI;
    let b0 = -8.0 * pi / ((s - 1.0) * (s - 2.0) * (s - 3.0));
    let b2 = 8.0 * pi * ap.alpha1 * ap.alpha2 / ((s + 1.0) * s * (s - 1.0));
    Ok(BallCoeffs {
        b: [b0, 0.0, b2, 0.0],
        radius_power: [3.0 - s, 2.0 - s, 1.0 - s, -s],
    })
}

// ---------------------------------------------------------------------------
// Log-case q-integral and constant
// ---------------------------------------------------------------------------

/// Braced part of the q-integrand. Expands through O(q^2) for small q where
/// the three terms cancel to that order.
pub(crate) fn log_case_braces(alpha: f64, q: f64, one_minus_q: f64) -> f64 {
    if q < 1e-6 {
        // {..} = q^2 (2 a^2 + 2(a-1)^2 + 1) + O(q^3)
        return q * q * (2.0 * alpha * alpha + 2.0 * (alpha - 1.0) * (alpha - 1.0) + 1.0);
    }
    let ratio_up = (1.0 + q) / one_minus_q;
    ratio_up.powf(alpha - 1.0) + ratio_up.powf(-alpha) - 2.0 * one_minus_q / (1.0 + q * q).sqrt()
}

fn q_integrand(alpha: f64, q: f64, one_minus_q: f64) -> f64 {
    log_case_braces(alpha, q, one_minus_q) / q
}

/// Upper-panel integrand after q = 1 - u^2, including the jacobian 2u.
/// Powers of u are grouped into single powf calls with exponents in (-1, 5)
/// so nothing overflows at the deepest nodes.
fn q_integrand_usub(alpha: f64, u: f64) -> f64 {
    let q = 1.0 - u * u;
    let two_minus = 2.0 - u * u;
    let one_plus_q2 = 1.0 + q * q;
    let t1 = two_minus.powf(alpha - 1.0) * u.powf(3.0 - 2.0 * alpha);
    let t2 = u.powf(2.0 * alpha + 1.0) * two_minus.powf(-alpha);
    let t3 = -2.0 * u * u * u / one_plus_q2.sqrt();
    2.0 / q * (t1 + t2 + t3)
}

/// I(alpha) = int_0^1 q^{-1} {((1+q)/(1-q))^{alpha-1}
///            + ((1-q)/(1+q))^{alpha} - 2(1-q)(1+q^2)^{-1/2}} dq,
/// for -1 < alpha < 2. Symmetric under alpha <-> 1 - alpha. The 1e-10
/// accuracy target holds comfortably for alpha in [-0.9, 1.9]; within 0.1
/// of either domain end the endpoint exponent approaches -1 and the node
/// truncation starts to show.
///
/// This is the polar-coordinate constant written in q = tan(phi): the
/// (cos phi sin phi)^{-1} d(phi) measure is exactly dq/q after the
/// substitution, the sec^2 jacobian cancelling against (1+q^2)/q. The
/// log-case heat content pins the constant numerically, which fixes the
/// measure unambiguously.
pub fn q_integral(alpha1: f64) -> Result<f64> {
    if !(alpha1 > -1.0 && alpha1 < 2.0) {
        return Err(Error::Domain(format!("q_integral needs -1 < alpha < 2, got {alpha1}")));
    }
    // exact symmetry: evaluate at the canonical representative
    let alpha = if alpha1 <= 0.5 { 1.0 - alpha1 } else { alpha1 };
    // 1 - q is exact to 1 ulp for q <= 1/2
    let lower = integrate_1d(|p| q_integrand(alpha, p.from_a, 1.0 - p.from_a), 0.0, 0.5, 1e-12)?;
    // q = 1 - u^2 weakens the endpoint singularity before the DE rule.
    let upper = integrate_1d(|p| q_integrand_usub(alpha, p.from_a), 0.0, 0.5f64.sqrt(), 1e-12)?;
    Ok(lower.value + upper.value)
}

/// The t-independent constant of the log-case expansion:
/// gamma + 4 log(sqrt(2)-1) + 4 log 2 + chi_integral + I(alpha1).
///
/// `chi_integral` is the externally assembled cutoff term; pairing it with
/// log(eps^2/t) makes the split of the constant eps-independent.
pub fn log_case_constant(alpha1: f64, chi_integral: f64) -> Result<f64> {
    let base = EULER_GAMMA
        + 4.0 * (std::f64::consts::SQRT_2 - 1.0).ln()
        + 4.0 * std::f64::consts::LN_2;
    Ok(base + chi_integral + q_integral(alpha1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_PI: f64 = 1.7724538509055160272982;
    // mpmath at the exact f64 value of the literal -0.9999
    const GAMMA_NEG_09999: f64 = -10000.42292552527794969;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn gamma_basics() {
        assert!(rel(gamma_fn(1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(gamma_fn(0.5).unwrap(), SQRT_PI) < 1e-13);
        assert!(rel(gamma_fn(2.5).unwrap(), 1.329340388179137020474) < 1e-13);
    }

    #[test]
    fn gamma_reference_values() {
        // mpmath, 22 digits
        let refs = [
            (0.5, 1.772453850905516027298),
            (2.5, 1.329340388179137020474),
            (-0.5, -3.544907701811032054596),
            (-2.5, -0.9453087204829418812257),
            (10.3, 716430.6890623752445476),
            (-7.7, 0.0001820741668415261742726),
            (29.5, 1.634812519827426644438e30),
            (-29.5, 6.51418220326723240769e-32),
            (0.001, 999.423772484595466115),
            (15.2, 149037380723.3863968746),
            (-0.9999, GAMMA_NEG_09999),
            (4.0, 6.0),
            (7.5, 1871.254305797788346476),
            (-15.5, 6.053166840058603108473e-13),
            (1.4616321449683623, 0.8856031944108887002788),
        ];
        for (x, want) in refs {
            let got = gamma_fn(x).unwrap();
            assert!(rel(got, want) < 1e-13, "Gamma({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn gamma_poles() {
        for x in [0.0, -1.0, -2.0, -7.0] {
            assert!(matches!(gamma_fn(x), Err(Error::GammaPole { .. })), "x = {x}");
        }
    }

    #[test]
    fn alpha_pair_validity() {
        assert!(AlphaPair::new(2.0, 0.5).is_err());
        assert!(AlphaPair::new(0.5, 2.3).is_err());
        let ap = AlphaPair::new(0.5, 0.5).unwrap();
        assert!(ap.is_log_case());
        assert!(!ap.is_generic());
        let ap = AlphaPair::new(1.3, -0.3).unwrap();
        assert!(ap.is_log_case());
        let ap = AlphaPair::new(1.8, 1.4).unwrap();
        assert!(ap.is_generic() && !ap.is_log_case());
    }

    #[test]
    fn c_symmetric_exactly() {
        let a = c_coef(&AlphaPair::new(0.4, 0.9).unwrap()).unwrap();
        let b = c_coef(&AlphaPair::new(0.9, 0.4).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn c_direct_against_oracle() {
        // 50-digit adaptive quadrature of the defining integral (mpmath)
        let want = 2.223575406091060117595;
        let got = c_coef_direct(&AlphaPair::new(0.7, 0.8).unwrap()).unwrap();
        assert!(rel(got, want) < 1e-10, "{got} vs {want}");
        let got_cont = c_coef(&AlphaPair::new(0.7, 0.8).unwrap()).unwrap();
        assert!(rel(got_cont, want) < 1e-11, "{got_cont} vs {want}");
    }

    #[test]
    fn c_smooth_case_anchor() {
        // continuation at (0,0); the t^(1/2) slope of the smooth interval
        // heat content independently pins this to -2/sqrt(pi)
        let got = c_coef(&AlphaPair::new(0.0, 0.0).unwrap()).unwrap();
        assert!(rel(got, -2.0 / SQRT_PI) < 1e-12, "{got}");
    }

    #[test]
    fn c_continuation_anchors() {
        // Beta/2F1 closed-form continuation (mpmath, 60 digits)
        let refs = [
            (0.4, 0.9, 3.550104125657247088323),
            (1.8, 1.4, 3.616671875964986600013),
            (0.8, 1.4, 1.471584577337200120042),
            (1.8, 0.4, 3.116866152120338745047),
            (0.8, 0.4, 5.175759466860412434927),
            (-0.3, 0.8, -1.769986474070439320561),
            (0.7, -0.2, -1.850412402932816624035),
            (-1.3, 0.8, 1.156259211167351471809),
            (0.7, -1.2, 0.7115441299491390533035),
            (-0.3, -0.2, -1.074483942308999240741),
            (0.75, 0.75, 2.221634820242593514784),
        ];
        for (a1, a2, want) in refs {
            let got = c_coef(&AlphaPair::new(a1, a2).unwrap()).unwrap();
            assert!(rel(got, want) < 1e-10, "c({a1},{a2}) = {got}, want {want}");
        }
    }

    #[test]
    fn c_continuation_matches_direct() {
        // overlap region: both paths defined
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            (z ^ (z >> 31)) as f64 / u64::MAX as f64
        };
        for _ in 0..12 {
            let s = 1.05 + 0.85 * rng();
            let (lo, hi) = (s - 1.95, 1.95);
            let a1 = lo + (hi - lo) * rng();
            let ap = AlphaPair::new(a1, s - a1).unwrap();
            let d = c_coef_direct(&ap).unwrap();
            let c = c_coef(&ap).unwrap();
            assert!(rel(c, d) < 1e-9, "({}, {}): {c} vs {d}", ap.alpha1(), ap.alpha2());
        }
    }

    #[test]
    fn c_pole_guards() {
        // s = 2: Gamma pole
        assert!(matches!(
            c_coef(&AlphaPair::new(1.0, 1.0).unwrap()),
            Err(Error::CoefficientPole { pole, .. }) if pole == 2.0
        ));
        // s = 1: log case
        assert!(matches!(
            c_coef(&AlphaPair::new(0.5, 0.5).unwrap()),
            Err(Error::CoefficientPole { pole, .. }) if pole == 1.0
        ));
        // s = -1: generic pole of the k = 2 subtraction term
        assert!(matches!(
            c_coef(&AlphaPair::new(-0.5, -0.5).unwrap()),
            Err(Error::CoefficientPole { pole, .. }) if pole == -1.0
        ));
        // domain violation
        assert!(c_at(2.0, 0.0).is_err());
    }

    #[test]
    fn ball_coeffs_closed_forms() {
        let ap = AlphaPair::new(1.8, 1.4).unwrap();
        let bc = ball_b_coeffs(&ap).unwrap();
        assert_eq!(bc.b[1], 0.0);
        assert_eq!(bc.b[3], 0.0);
        // -8 pi / (2.2 * 1.2 * 0.2) and 8 pi 2.52 / (4.2 * 3.2 * 2.2)
        assert!(rel(bc.b[0], -47.59988869075444300701) < 1e-14, "{}", bc.b[0]);
        assert!(rel(bc.b[2], 2.141994991083949935315) < 1e-14, "{}", bc.b[2]);
        // closed-form round trip
        let s = ap.sum();
        let prod = bc.b[0] * (s - 1.0) * (s - 2.0) * (s - 3.0);
        assert!(rel(prod, -8.0 * std::f64::consts::PI) < 1e-15);
        // radius powers
        assert!((bc.radius_power[0] - (3.0 - s)).abs() < 1e-15);
        // denominator zeros refused
        for (x, y) in [(0.5, 0.5), (1.0, 1.0), (1.5, 1.5), (0.0, 0.0), (-0.5, -0.5)] {
            assert!(ball_b_coeffs(&AlphaPair::new(x, y).unwrap()).is_err(), "s = {}", x + y);
        }
    }

    #[test]
    fn q_integrand_removable_at_zero() {
        for alpha in [0.5, 1.3, -0.3, 1.9] {
            let v = q_integrand(alpha, 1e-9, 1.0 - 1e-9);
            assert!(v.abs() < 1e-8, "alpha {alpha}: {v}");
        }
    }

    #[test]
    fn q_integral_oracle_values() {
        // adaptive quadrature with q = 1 - u^2 endpoint substitution (mpmath)
        let refs = [
            (0.5, 0.3839016944883788624678),
            (0.3, 0.4377999944824595910679),
            (0.8, 0.5077260987556763298611),
            (1.3, 1.537577482717659233789),
            (-0.3, 1.537577482717659233789),
        ];
        for (alpha, want) in refs {
            let got = q_integral(alpha).unwrap();
            assert!(rel(got, want) < 1e-10, "I({alpha}) = {got}, want {want}");
        }
    }

    #[test]
    fn q_integral_symmetry_exact() {
        for alpha in [0.3, 0.8, 1.3] {
            assert_eq!(q_integral(alpha).unwrap(), q_integral(1.0 - alpha).unwrap());
        }
        assert!(q_integral(-1.0).is_err());
        assert!(q_integral(2.0).is_err());
    }

    #[test]
    fn log_constant_assembly() {
        // chi = 0: base constants plus the frozen I(0.5)
        let want = -0.175689960936858002655 + 0.3839016944883788624678;
        let got = log_case_constant(0.5, 0.0).unwrap();
        assert!(rel(got, want) < 1e-10, "{got} vs {want}");
        // alpha and 1-alpha give the identical constant
        assert_eq!(log_case_constant(0.3, 1.25).unwrap(), log_case_constant(0.7, 1.25).unwrap());
    }
}
