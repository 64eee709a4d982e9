//! Error type shared by all modules.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Gamma evaluated at zero or a negative integer.
    GammaPole { x: f64 },
    /// c_{a1,a2} requested within the guard band of a pole in alpha1+alpha2.
    CoefficientPole { s: f64, pole: f64 },
    /// Input outside the admissible parameter range.
    Domain(String),
    /// Quadrature did not reach the requested tolerance before the level cap.
    QuadNoConverge { value: f64, err: f64, evaluations: usize },
    /// The image count needed to meet `tol` exceeds the configured cap.
    ToleranceUnachievable { requested: f64, bound: f64 },
    /// A series template would contain (near-)coincident exponents.
    ExponentCollision { e1: f64, e2: f64 },
    /// Generic series template requested at integer alpha1+alpha2.
    IntegerSum { s: f64 },
    /// Fewer samples than basis columns plus margin.
    Underdetermined { samples: usize, basis: usize },
    /// Fit/prediction exponent sets do not align.
    ExponentMismatch { exponent: f64 },
    /// Least-squares system lost rank.
    RankDeficient { sigma_min: f64 },
    /// Per-index failures from a grid evaluation.
    Grid(Vec<(usize, Box<Error>)>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GammaPole { x } => write!(f, "gamma pole at x = {x}"),
            Error::CoefficientPole { s, pole } => {
                write!(f, "c coefficient pole: alpha1+alpha2 = {s} is within guard of {pole}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::QuadNoConverge { value, err, evaluations } => write!(
                f,
                "quadrature stagnated: value {value:.17e}, err {err:.3e} after {evaluations} evaluations"
            ),
            Error::ToleranceUnachievable { requested, bound } => {
                write!(f, "tolerance {requested:.3e} unachievable (best bound {bound:.3e})")
            }
            Error::ExponentCollision { e1, e2 } => {
                write!(f, "exponents {e1} and {e2} are too close to separate")
            }
            Error::IntegerSum { s } => write!(
                f,
                "alpha1+alpha2 = {s} is an integer; generic series undefined (use the log template for s = 1)"
            ),
            Error::Underdetermined { samples, basis } => {
                write!(f, "{samples} samples cannot determine {basis} basis coefficients")
            }
            Error::ExponentMismatch { exponent } => {
                write!(f, "no fitted coefficient for predicted exponent {exponent}")
            }
            Error::RankDeficient { sigma_min } => {
                write!(f, "least-squares system rank deficient (sigma_min = {sigma_min:.3e})")
            }
            Error::Grid(fails) => {
                write!(f, "{} grid evaluations failed (first at index {})", fails.len(), fails[0].0)
            }
        }
    }
}

impl std::error::Error for Error {}
