//! Shared domain types: conjugate exponents, weighted systems, sign-case
//! labels and inequality reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Relative tolerance for algebraic identities (conjugacy, Q-sum, the
/// Euler-Lagrange identity, equality at the extremal point).
pub const IDENTITY_TOL: f64 = 1e-12;

/// Relative tolerance for inequality verdicts. p-th powers amplify
/// rounding by roughly a factor p, so this is looser than `IDENTITY_TOL`.
pub const VERDICT_TOL: f64 = 1e-9;

/// Largest supported exponent; keeps `x^p` finite for moduli up to 1e4.
pub const MAX_EXPONENT: f64 = 64.0;

/// A Hölder exponent `p > 1` together with its conjugate `q = p/(p-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exponent {
    p: f64,
    q: f64,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        conjugate_exponent(p)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `1/(p-1)`, the exponent applied to the weights `mu_i`.
    pub fn weight_power(&self) -> f64 {
        1.0 / (self.p - 1.0)
    }

    /// The conjugate exponent, as an `Exponent` in its own right.
    pub fn dual(&self) -> Result<Self> {
        conjugate_exponent(self.q)
    }
}

/// Builds the exponent pair `(p, q)` with `1/p + 1/q = 1`.
pub fn conjugate_exponent(p: f64) -> Result<Exponent> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::domain(format!("exponent must satisfy p > 1, got {p}")));
    }
    if p > MAX_EXPONENT {
        return Err(Error::domain(format!(
            "exponent {p} exceeds the supported range (1, {MAX_EXPONENT}]"
        )));
    }
    Ok(Exponent { p, q: p / (p - 1.0) })
}

/// `x^e` for `x >= 0`, exact at zero.
#[inline]
pub fn pow_nonneg(x: f64, e: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        if e == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        x.powf(e)
    }
}

/// Elementwise modulus. All bounds are evaluated on these.
pub fn moduli(x: &[Complex]) -> Vec<f64> {
    x.iter().map(|z| z.norm()).collect()
}

/// Sign pattern of the weights and target constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    /// All `mu_i > 0`, `lambda > 0`.
    CaseI,
    /// `mu_1 > 0`, `mu_i < 0` for `i >= 2`, `lambda > 0`.
    CaseII,
    /// `mu_1 < 0`, `mu_i > 0` for `i >= 2`, `lambda < 0`.
    CaseIII,
    Unclassified,
}

impl CaseLabel {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" | "casei" | "case_i" => Some(CaseLabel::CaseI),
            "ii" | "2" | "caseii" | "case_ii" => Some(CaseLabel::CaseII),
            "iii" | "3" | "caseiii" | "case_iii" => Some(CaseLabel::CaseIII),
            _ => None,
        }
    }
}

/// Classifies `(mu, lambda)` by sign pattern.
///
/// Patterns not covered by the three cases (all negative weights, several
/// negative weights with `lambda > 0`, ...) come back as `Unclassified`.
/// Cases II and III need both a positive and a negative weight, so a single
/// term is only ever `CaseI` or `Unclassified`.
pub fn classify_case(mu: &[f64], lambda: f64) -> Result<CaseLabel> {
    if mu.is_empty() {
        return Err(Error::domain("weight list is empty"));
    }
    if mu.iter().any(|&m| m == 0.0 || m.is_nan()) {
        return Err(Error::domain("every weight mu_i must be nonzero"));
    }
    if lambda == 0.0 || lambda.is_nan() {
        return Err(Error::domain("lambda must be nonzero"));
    }
    let (first, rest) = (mu[0], &mu[1..]);
    let label = if lambda > 0.0 && mu.iter().all(|&m| m > 0.0) {
        CaseLabel::CaseI
    } else if rest.is_empty() {
        CaseLabel::Unclassified
    } else if lambda > 0.0 && first > 0.0 && rest.iter().all(|&m| m < 0.0) {
        CaseLabel::CaseII
    } else if lambda < 0.0 && first < 0.0 && rest.iter().all(|&m| m > 0.0) {
        CaseLabel::CaseIII
    } else {
        CaseLabel::Unclassified
    };
    Ok(label)
}

/// Exponent, coefficients `a_i`, weights `mu_i` and optionally points `x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSystem {
    pub exponent: Exponent,
    pub a: Vec<Complex>,
    pub mu: Vec<f64>,
    pub x: Option<Vec<Complex>>,
}

impl WeightedSystem {
    pub fn new(exponent: Exponent, a: Vec<Complex>, mu: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::domain("system needs at least one term"));
        }
        if a.len() != mu.len() {
            return Err(Error::domain(format!(
                "length mismatch: {} coefficients, {} weights",
                a.len(),
                mu.len()
            )));
        }
        if let Some(i) = mu.iter().position(|&m| m == 0.0 || !m.is_finite()) {
            return Err(Error::domain(format!("weight mu_{} must be finite and nonzero", i + 1)));
        }
        if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::domain("coefficients must be finite"));
        }
        Ok(WeightedSystem { exponent, a, mu, x: None })
    }

    /// Convenience constructor for real data.
    pub fn real(p: f64, a: &[f64], mu: &[f64], x: Option<&[f64]>) -> Result<Self> {
        let sys = WeightedSystem::new(Exponent::new(p)?, to_complex(a), mu.to_vec())?;
        match x {
            Some(x) => sys.with_points(to_complex(x)),
            None => Ok(sys),
        }
    }

    pub fn with_points(mut self, x: Vec<Complex>) -> Result<Self> {
        if x.len() != self.a.len() {
            return Err(Error::domain(format!(
                "length mismatch: {} points, {} coefficients",
                x.len(),
                self.a.len()
            )));
        }
        if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::domain("points must be finite"));
        }
        self.x = Some(x);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn p(&self) -> f64 {
        self.exponent.p()
    }

    pub fn points(&self) -> Result<&[Complex]> {
        self.x
            .as_deref()
            .ok_or_else(|| Error::domain("this operation needs the points x_i"))
    }
}

pub fn to_complex(v: &[f64]) -> Vec<Complex> {
    v.iter().map(|&r| Complex::new(r, 0.0)).collect()
}

/// Which way the checked inequality points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// `lhs >= rhs`
    #[serde(rename = "geq")]
    AtLeast,
    /// `lhs <= rhs`
    #[serde(rename = "leq")]
    AtMost,
}

/// Both sides of a checked inequality and the verdict.
///
/// `margin` is the signed slack in the direction of the inequality:
/// `lhs - rhs` for `>=` and `rhs - lhs` for `<=`. It is negative exactly when
/// the inequality is violated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    pub tolerance_used: f64,
    pub direction: Direction,
    /// Whether the constant is admissible, so the bound is certified.
    pub guaranteed: bool,
}

impl InequalityReport {
    pub fn evaluate(lhs: f64, rhs: f64, direction: Direction, tolerance: f64) -> Self {
        let margin = match direction {
            Direction::AtLeast => lhs - rhs,
            Direction::AtMost => rhs - lhs,
        };
        let scale = 1f64.max(lhs.abs()).max(rhs.abs());
        InequalityReport {
            lhs,
            rhs,
            margin,
            holds: margin >= -tolerance * scale,
            tolerance_used: tolerance,
            direction,
            guaranteed: false,
        }
    }

    pub fn guaranteed(mut self, guaranteed: bool) -> Self {
        self.guaranteed = guaranteed;
        self
    }

    /// Margin divided by `max(1, |lhs|, |rhs|)`.
    pub fn relative_margin(&self) -> f64 {
        self.margin / 1f64.max(self.lhs.abs()).max(self.rhs.abs())
    }
}
