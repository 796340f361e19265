//! Superquadratic refinements of the power-sum bound.
//!
//! `f(x) = x^p` on `[0, inf)` is superquadratic for `p >= 2` and subquadratic
//! for `1 < p <= 2`, which sharpens Jensen's inequality by a remainder
//! `sum alpha_i f(|x_i - mean|)`. Applied with the weights `Q_i` of the sharp
//! constant this splits `sum x_i^p / mu_i` into a main term plus a
//! nonnegative correction; at `p = 2` the split is exact.

use serde::Serialize;

use crate::domain::{pow_nonneg, Exponent, WeightedSystem, IDENTITY_TOL};
use crate::error::{Error, Result};

/// The canonical witness slope `C_f(x) = p x^(p-1)` for `f(x) = x^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperquadraticWitness {
    exponent: Exponent,
}

impl SuperquadraticWitness {
    pub fn new(p: f64) -> Result<Self> {
        Ok(SuperquadraticWitness { exponent: Exponent::new(p)? })
    }

    pub fn p(&self) -> f64 {
        self.exponent.p()
    }

    pub fn slope(&self, x: f64) -> f64 {
        self.p() * pow_nonneg(x, self.p() - 1.0)
    }

    /// `f(y) - f(x) - C_f(x)(y - x) - f(|y - x|)`.
    pub fn margin(&self, x: f64, y: f64) -> f64 {
        let p = self.p();
        pow_nonneg(y, p) - pow_nonneg(x, p) - self.slope(x) * (y - x) - pow_nonneg((y - x).abs(), p)
    }

    /// Magnitude of the largest term in [`margin`](Self::margin); the natural
    /// scale for judging it against rounding.
    pub fn scale(&self, x: f64, y: f64) -> f64 {
        let p = self.p();
        pow_nonneg(y, p)
            .max(pow_nonneg(x, p))
            .max((self.slope(x) * (y - x)).abs())
            .max(pow_nonneg((y - x).abs(), p))
    }
}

/// Margin of the superquadratic inequality for `x^p` at `(x, y)`.
///
/// Nonnegative for `p >= 2`, nonpositive for `1 < p <= 2`, zero at `p = 2`.
pub fn superquadratic_check(p: f64, x: f64, y: f64) -> Result<f64> {
    if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::domain(format!("points must be finite and nonnegative, got x = {x}, y = {y}")));
    }
    Ok(SuperquadraticWitness::new(p)?.margin(x, y))
}

/// Both sides of the refined discrete Jensen inequality
/// `(sum a_i x_i)^p <= sum a_i x_i^p - sum a_i |x_i - sum a_j x_j|^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JensenRefinement {
    pub lhs: f64,
    pub rhs: f64,
    pub remainder: f64,
    /// `sum alpha_i x_i^p`, the plain Jensen upper side.
    pub mean_of_powers: f64,
}

impl JensenRefinement {
    /// Signed slack in the direction that holds for this `p`
    /// (`rhs - lhs` when `p >= 2`, `lhs - rhs` below).
    pub fn slack(&self, p: f64) -> f64 {
        if p >= 2.0 {
            self.rhs - self.lhs
        } else {
            self.lhs - self.rhs
        }
    }
}

pub fn jensen_refinement(p: f64, alpha: &[f64], x: &[f64]) -> Result<JensenRefinement> {
    let exp = Exponent::new(p)?;
    if alpha.is_empty() || alpha.len() != x.len() {
        return Err(Error::domain("alpha and x must be nonempty and of equal length"));
    }
    if alpha.iter().any(|&a| !(a >= 0.0)) || x.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
        return Err(Error::domain("weights and points must be nonnegative"));
    }
    let total: f64 = alpha.iter().sum();
    if (total - 1.0).abs() > IDENTITY_TOL {
        return Err(Error::domain(format!("weights must sum to 1, got {total}")));
    }
    let p = exp.p();
    let mean: f64 = alpha.iter().zip(x).map(|(a, v)| a * v).sum();
    let mean_of_powers: f64 = alpha.iter().zip(x).map(|(a, &v)| a * pow_nonneg(v, p)).sum();
    let remainder: f64 = alpha
        .iter()
        .zip(x)
        .map(|(a, &v)| a * pow_nonneg((v - mean).abs(), p))
        .sum();
    Ok(JensenRefinement {
        lhs: pow_nonneg(mean, p),
        rhs: mean_of_powers - remainder,
        remainder,
        mean_of_powers,
    })
}

/// Decomposition `sum x_i^p / mu_i  vs  main_term + correction`.
///
/// For `p >= 2` the left side dominates `total`; for `1 < p <= 2` it lies
/// between `main_term` and `total` (see [`subquadratic_gap`]).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinedBound {
    /// `sum x_i^p / mu_i`
    pub lhs: f64,
    /// `(sum a_i x_i)^p / S^(p-1)`, the sharp-constant bound.
    pub main_term: f64,
    /// `sum_i Q_i |A_i - sum_j a_j x_j|^p`, always nonnegative.
    /// Terms with `a_i = 0` enter through their limit `x_i^p / mu_i`.
    pub correction: f64,
    pub total: f64,
    /// `A_i = S x_i / (a_i mu_i)^(1/(p-1))`, reported as zero for vanishing
    /// `a_i`, whose correction term is `x_i^p / mu_i`.
    #[serde(rename = "A")]
    pub a_values: Vec<f64>,
    /// `sum a_i x_i`, which equals the `Q`-weighted mean of the `A_i`.
    pub weighted_mean: f64,
}

impl RefinedBound {
    /// `lhs - total`; nonnegative when `p >= 2`.
    pub fn slack(&self) -> f64 {
        self.lhs - self.total
    }
}

struct RealSystem<'a> {
    exp: Exponent,
    a: Vec<f64>,
    mu: &'a [f64],
    x: Vec<f64>,
}

fn real_nonneg(sys: &WeightedSystem) -> Result<RealSystem<'_>> {
    let x = sys.points()?;
    let as_real = |v: &[crate::domain::Complex], what: &str| -> Result<Vec<f64>> {
        v.iter()
            .map(|z| {
                if z.im == 0.0 && z.re >= 0.0 {
                    Ok(z.re)
                } else {
                    Err(Error::domain(format!("{what} must be nonnegative reals, got {z}")))
                }
            })
            .collect()
    };
    if let Some(i) = sys.mu.iter().position(|&m| !(m > 0.0)) {
        return Err(Error::domain(format!("mu_{} must be positive", i + 1)));
    }
    Ok(RealSystem {
        exp: sys.exponent,
        a: as_real(&sys.a, "coefficients")?,
        mu: &sys.mu,
        x: as_real(x, "points")?,
    })
}

/// Refined lower bound for nonnegative real data and positive weights.
pub fn refined_bound(sys: &WeightedSystem) -> Result<RefinedBound> {
    let RealSystem { exp, a, mu, x } = real_nonneg(sys)?;
    let (p, w, q) = (exp.p(), exp.weight_power(), exp.q());
    let terms: Vec<f64> = mu.iter().zip(&a).map(|(&m, &ai)| pow_nonneg(m, w) * pow_nonneg(ai, q)).collect();
    let s: f64 = terms.iter().sum();
    if s == 0.0 {
        return Err(Error::degenerate("all coefficients are zero"));
    }
    let s_p = s.powf(p);
    let mean: f64 = a.iter().zip(&x).map(|(ai, xi)| ai * xi).sum();
    let a_values: Vec<f64> = a
        .iter()
        .zip(mu)
        .zip(&x)
        .map(|((&ai, &m), &xi)| if ai == 0.0 { 0.0 } else { s * xi / pow_nonneg(ai * m, w) })
        .collect();
    // a vanishing coefficient contributes its a_i -> 0 limit, x_i^p / mu_i
    let correction: f64 = terms
        .iter()
        .zip(&a_values)
        .zip(a.iter().zip(&x).zip(mu))
        .map(|((&t, &big_a), ((&ai, &xi), &m))| {
            if ai == 0.0 {
                pow_nonneg(xi, p) / m
            } else {
                t / s_p * pow_nonneg((big_a - mean).abs(), p)
            }
        })
        .sum();
    let lhs: f64 = x.iter().zip(mu).map(|(&xi, &m)| pow_nonneg(xi, p) / m).sum();
    let main_term = pow_nonneg(mean, p) / s.powf(p - 1.0);
    Ok(RefinedBound {
        lhs,
        main_term,
        correction,
        total: main_term + correction,
        a_values,
        weighted_mean: mean,
    })
}

/// Two-term refinement written out directly, independent of [`refined_bound`].
#[allow(clippy::too_many_arguments)]
pub fn two_term_refined_bound(x: f64, y: f64, a: f64, b: f64, mu: f64, nu: f64, p: f64) -> Result<RefinedBound> {
    let exp = Exponent::new(p)?;
    if [x, y, a, b].iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
        return Err(Error::domain("x, y, a, b must be finite and nonnegative"));
    }
    if !(mu > 0.0 && nu > 0.0) {
        return Err(Error::domain("mu and nu must be positive"));
    }
    let (w, q) = (exp.weight_power(), exp.q());
    let first = mu.powf(w) * pow_nonneg(a, q);
    let second = nu.powf(w) * pow_nonneg(b, q);
    let s = first + second;
    if s == 0.0 {
        return Err(Error::degenerate("a and b are both zero"));
    }
    let combo = a * x + b * y;
    let scaled_mean = combo / s;
    // weight * |(1/(c m))^(1/(p-1)) v - (ax + by)/S|^p, or v^p / m when c = 0
    let piece = |weight: f64, c: f64, m: f64, v: f64| -> (f64, f64) {
        if c == 0.0 {
            return (pow_nonneg(v, p) / m, 0.0);
        }
        let u = v / (c * m).powf(w);
        (weight * pow_nonneg((u - scaled_mean).abs(), p), s * u)
    };
    let (cx, big_ax) = piece(first, a, mu, x);
    let (cy, big_ay) = piece(second, b, nu, y);
    let main_term = pow_nonneg(combo, p) / s.powf(p - 1.0);
    let correction = cx + cy;
    Ok(RefinedBound {
        lhs: pow_nonneg(x, p) / mu + pow_nonneg(y, p) / nu,
        main_term,
        correction,
        total: main_term + correction,
        a_values: vec![big_ax, big_ay],
        weighted_mean: combo,
    })
}

/// Both sides of the two-term Euler-Lagrange type identity
/// `x^2/mu + y^2/nu = (ax + by)^2/(mu a^2 + nu b^2) + (nu b x - a mu y)^2/(mu nu (mu a^2 + nu b^2))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Largest absolute term on either side.
    pub scale: f64,
}

impl IdentityCheck {
    pub fn agree(&self) -> bool {
        self.relative_error() <= IDENTITY_TOL
    }

    pub fn relative_error(&self) -> f64 {
        if self.scale == 0.0 {
            (self.lhs - self.rhs).abs()
        } else {
            (self.lhs - self.rhs).abs() / self.scale
        }
    }
}

pub fn euler_lagrange_identity(x: f64, y: f64, a: f64, b: f64, mu: f64, nu: f64) -> Result<IdentityCheck> {
    if mu == 0.0 || nu == 0.0 {
        return Err(Error::domain("mu and nu must be nonzero"));
    }
    let denom = mu * a * a + nu * b * b;
    if denom == 0.0 {
        return Err(Error::domain("mu a^2 + nu b^2 must be nonzero"));
    }
    let l1 = x * x / mu;
    let l2 = y * y / nu;
    let combo = a * x + b * y;
    let r1 = combo * combo / denom;
    let cross = nu * b * x - a * mu * y;
    let r2 = cross * cross / (mu * nu * denom);
    let scale = [l1, l2, r1, r2].iter().fold(0f64, |m, v| m.max(v.abs()));
    Ok(IdentityCheck { lhs: l1 + l2, rhs: r1 + r2, scale })
}

/// `0 <= gap <= upper` for `1 < p <= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapBound {
    /// `sum x_i^p / mu_i - main_term`
    pub gap: f64,
    /// The superquadratic correction term.
    pub upper: f64,
}

pub fn subquadratic_gap(sys: &WeightedSystem) -> Result<GapBound> {
    let p = sys.p();
    if p > 2.0 {
        return Err(Error::domain(format!("the gap bound needs 1 < p <= 2, got {p}")));
    }
    let r = refined_bound(sys)?;
    Ok(GapBound { gap: r.lhs - r.main_term, upper: r.correction })
}
