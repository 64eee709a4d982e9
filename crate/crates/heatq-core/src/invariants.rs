//! Universal epsilon constants, boundary invariants beta_0..beta_2, and the
//! linear-relation solver that re-derives the epsilon table from the product
//! and warped-product identities.
//!
//! The fifteen constants eps^0..eps^14 multiply the local boundary
//! invariants in the first three boundary coefficients. Six of them are
//! pinned to shifted c-values by index shifting; the rest follow from the
//! universal-example relations. Both the direct table and the least-squares
//! solution of the full relation system are provided as independent routes.

use crate::error::{Error, Result};
use crate::linalg::svd_least_squares;
use crate::special::AlphaPair;

/// Provider of c_{a1,a2} at shifted exponents.
pub type CoeffProvider<'a> = &'a dyn Fn(f64, f64) -> Result<f64>;

/// The fifteen universal constants at a fixed AlphaPair.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonTable {
    pub ap: AlphaPair,
    pub eps: [f64; 15],
}

/// Index permutation realizing the alpha1 <-> alpha2 symmetry:
/// eps^i at (a1,a2) equals eps^sigma(i) at (a2,a1).
pub const SWAP_PERMUTATION: [usize; 15] = [0, 3, 2, 1, 7, 8, 6, 4, 5, 9, 10, 11, 12, 13, 14];

/// Shifted c-values entering the table: c(a1-k1, a2-k2) for k1+k2 <= 2.
struct ShiftedC {
    c00: f64, // c(a1, a2)
    c10: f64, // c(a1-1, a2)
    c01: f64, // c(a1, a2-1)
    c20: f64, // c(a1-2, a2)
    c02: f64, // c(a1, a2-2)
    c11: f64, // c(a1-1, a2-1)
}

fn shifted(ap: &AlphaPair, c: CoeffProvider) -> Result<ShiftedC> {
    let (a1, a2) = (ap.alpha1(), ap.alpha2());
    Ok(ShiftedC {
        c00: c(a1, a2)?,
        c10: c(a1 - 1.0, a2)?,
        c01: c(a1, a2 - 1.0)?,
        c20: c(a1 - 2.0, a2)?,
        c02: c(a1, a2 - 2.0)?,
        c11: c(a1 - 1.0, a2 - 1.0)?,
    })
}

/// The epsilon table traced through the index-shift and universal-example
/// identities.
pub fn epsilon_table(ap: &AlphaPair, c: CoeffProvider) -> Result<EpsilonTable> {
    let sc = shifted(ap, c)?;
    let mut eps = [0.0_f64; 15];
    eps[0] = sc.c00;
    eps[1] = sc.c10;
    eps[3] = sc.c01;
    eps[2] = -(eps[1] + eps[3]) / 2.0;
    eps[4] = sc.c20;
    eps[7] = sc.c02;
    eps[6] = sc.c00;
    eps[14] = sc.c11;
    eps[12] = -sc.c00;
    eps[5] = -(sc.c20 + sc.c11) / 2.0;
    eps[8] = -(sc.c11 + sc.c02) / 2.0;
    eps[9] = -sc.c20 / 4.0 - sc.c02 / 4.0 + sc.c00 / 2.0;
    eps[11] = eps[9];
    eps[10] = sc.c20 / 8.0 + sc.c02 / 8.0 + sc.c11 / 4.0 - sc.c00 / 4.0;
    eps[13] = 0.0;
    Ok(EpsilonTable { ap: *ap, eps })
}

/// Residual report from the relation solver.
#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Residual of each encoded relation at the solution, labeled.
    pub residuals: Vec<(&'static str, f64)>,
    pub max_residual: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

/// Unknown ordering in the linear system.
const UNKNOWNS: [usize; 9] = [2, 5, 6, 8, 9, 10, 11, 12, 13];

/// Assemble and solve the relation system over the nine non-shifted
/// constants. Knowns eps^{0,1,3,4,7,14} are fixed to shifted c-values; the
/// ten equations are the three product identities, the first-order identity
/// at three shifts, and the four warped-product identities. The system is
/// consistent and of full rank; the least-squares solution must agree with
/// [`epsilon_table`].
pub fn solve_epsilon(ap: &AlphaPair, c: CoeffProvider) -> Result<(EpsilonTable, SolveReport)> {
    let sc = shifted(ap, c)?;
    let idx = |e: usize| UNKNOWNS.iter().position(|&u| u == e).unwrap();

    // rows: coefficients over UNKNOWNS, rhs
    let mut rows: Vec<(&'static str, [f64; 9], f64)> = Vec::with_capacity(10);
    let mut row = |label: &'static str, entries: &[(usize, f64)], rhs: f64| {
        let mut coeffs = [0.0; 9];
        for &(e, v) in entries {
            coeffs[idx(e)] = v;
        }
        rows.push((label, coeffs, rhs));
    };

    // product identities
    row("product: eps6 = eps0", &[(6, 1.0)], sc.c00);
    row("product: eps13 = 0", &[(13, 1.0)], 0.0);
    row("product: eps12 = -eps0", &[(12, 1.0)], -sc.c00);
    // first-order identity at (a1,a2) and its two down-shifts
    row("first-order at (a1,a2)", &[(2, 1.0)], -(sc.c10 + sc.c01) / 2.0);
    row("first-order at (a1-1,a2)", &[(5, 1.0)], -(sc.c20 + sc.c11) / 2.0);
    row("first-order at (a1,a2-1)", &[(8, 1.0)], -(sc.c11 + sc.c02) / 2.0);
    // warped-product identities
    row("warped (c): eps6 + eps12 = 0", &[(6, -0.25), (12, -0.25)], 0.0);
    row(
        "warped (d): eps9 from eps4, eps6, eps7",
        &[(6, 0.5), (9, -1.0)],
        (sc.c20 + sc.c02) / 4.0,
    );
    row(
        "warped (e): eps10 closure",
        &[(5, 0.5), (6, 0.25), (8, 0.5), (10, 1.0)],
        -(sc.c20 + sc.c02) / 8.0 - sc.c11 / 4.0,
    );
    row("warped (f): eps11 = eps9", &[(9, -1.0), (11, 1.0)], 0.0);

    let n = rows.len();
    let cols: Vec<Vec<f64>> = (0..9).map(|j| rows.iter().map(|r| r.1[j]).collect()).collect();
    let b: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let svd = svd_least_squares(&cols, &b);
    let sigma_max = svd.sigma.iter().cloned().fold(0.0_f64, f64::max);
    let sigma_min = svd.sigma.iter().cloned().fold(f64::INFINITY, f64::min);
    if sigma_min < 1e-10 * sigma_max {
        return Err(Error::RankDeficient { sigma_min });
    }

    let mut eps = [0.0_f64; 15];
    eps[0] = sc.c00;
    eps[1] = sc.c10;
    eps[3] = sc.c01;
    eps[4] = sc.c20;
    eps[7] = sc.c02;
    eps[14] = sc.c11;
    for (j, &e) in UNKNOWNS.iter().enumerate() {
        eps[e] = svd.x[j];
    }

    let mut residuals = Vec::with_capacity(n);
    let mut max_residual = 0.0_f64;
    for (label, coeffs, rhs) in &rows {
        let lhs: f64 = coeffs.iter().zip(&UNKNOWNS).map(|(cf, &e)| cf * eps[e]).sum();
        let r = (lhs - rhs).abs();
        max_residual = max_residual.max(r);
        residuals.push((*label, r));
    }

    Ok((
        EpsilonTable { ap: *ap, eps },
        SolveReport { residuals, max_residual, sigma_min, sigma_max },
    ))
}

/// Homogeneous (boundary-constant) geometric data for the beta assembly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryGeometry {
    /// Boundary measure.
    pub area: f64,
    /// (psi^0, psi^1, psi^2) jets of the two data factors.
    pub psi1_jet: [f64; 3],
    pub psi2_jet: [f64; 3],
    /// Trace of the second fundamental form L_aa.
    pub l_trace: f64,
    /// L_aa L_bb.
    pub l_trace_sq: f64,
    /// L_ab L_ab.
    pub l_sq: f64,
    pub ric_mm: f64,
    pub e_val: f64,
    pub tau: f64,
    /// <psi1^0_{:a}, psi2^0_{:a}> tangential pairing.
    pub grad_pairing: f64,
    /// Ambient dimension, when declared; enables the curvature inequality.
    pub dim: Option<u32>,
}

impl BoundaryGeometry {
    pub fn validate(&self) -> Result<()> {
        if !(self.area > 0.0) {
            return Err(Error::Domain(format!("boundary area {} must be positive", self.area)));
        }
        let all = [
            self.l_trace,
            self.l_trace_sq,
            self.l_sq,
            self.ric_mm,
            self.e_val,
            self.tau,
            self.grad_pairing,
        ];
        if all.iter().chain(self.psi1_jet.iter()).chain(self.psi2_jet.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Domain("geometry fields must be finite".into()));
        }
        // Cauchy-Schwarz on the shape-operator eigenvalues
        if self.l_trace_sq < self.l_sq - 1e-12 {
            return Err(Error::Domain("L_aa L_bb >= L_ab L_ab violated".into()));
        }
        if let Some(m) = self.dim {
            if m >= 2 && self.l_sq < self.l_trace * self.l_trace / (m - 1) as f64 - 1e-12 {
                return Err(Error::Domain("L_ab L_ab >= (L_aa)^2/(m-1) violated".into()));
            }
        }
        Ok(())
    }
}

/// The first three boundary coefficients with their exponents (1+j-s)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaTriple {
    pub beta: [f64; 3],
    pub exponents: [f64; 3],
}

/// Assemble beta_0..beta_2 from homogeneous boundary data and the epsilon
/// table.
pub fn beta_boundary(geom: &BoundaryGeometry, tab: &EpsilonTable) -> Result<BetaTriple> {
    geom.validate()?;
    let e = &tab.eps;
    let [p10, p11, p12] = geom.psi1_jet;
    let [p20, p21, p22] = geom.psi2_jet;
    let beta0 = geom.area * e[0] * p10 * p20;
    let beta1 = geom.area * (e[1] * p11 * p20 + e[2] * geom.l_trace * p10 * p20 + e[3] * p10 * p21);
    let beta2 = geom.area
        * (e[4] * p12 * p20
            + e[5] * geom.l_trace * p11 * p20
            + e[6] * geom.e_val * p10 * p20
            + e[7] * p10 * p22
            + e[8] * geom.l_trace * p10 * p21
            + e[9] * geom.ric_mm * p10 * p20
            + e[10] * geom.l_trace_sq * p10 * p20
            + e[11] * geom.l_sq * p10 * p20
            + e[12] * geom.grad_pairing
            + e[13] * geom.tau * p10 * p20
            + e[14] * p11 * p21);
    let s = tab.ap.sum();
    Ok(BetaTriple {
        beta: [beta0, beta1, beta2],
        exponents: [(1.0 - s) / 2.0, (2.0 - s) / 2.0, (3.0 - s) / 2.0],
    })
}

/// Sphere of radius a bounding the ball in R^3, with exact data delta^-alpha.
pub fn ball_geometry(a: f64) -> Result<BoundaryGeometry> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("radius a = {a} must be positive")));
    }
    Ok(BoundaryGeometry {
        area: 4.0 * std::f64::consts::PI * a * a,
        psi1_jet: [1.0, 0.0, 0.0],
        psi2_jet: [1.0, 0.0, 0.0],
        l_trace: 2.0 / a,
        l_trace_sq: 4.0 / (a * a),
        l_sq: 2.0 / (a * a),
        ric_mm: 0.0,
        e_val: 0.0,
        tau: 0.0,
        grad_pairing: 0.0,
        dim: Some(3),
    })
}

/// Two-point boundary of the flat interval; boundary measure 2.
pub fn interval_geometry() -> BoundaryGeometry {
    BoundaryGeometry {
        area: 2.0,
        psi1_jet: [1.0, 0.0, 0.0],
        psi2_jet: [1.0, 0.0, 0.0],
        l_trace: 0.0,
        l_trace_sq: 0.0,
        l_sq: 0.0,
        ric_mm: 0.0,
        e_val: 0.0,
        tau: 0.0,
        grad_pairing: 0.0,
        dim: Some(1),
    }
}
