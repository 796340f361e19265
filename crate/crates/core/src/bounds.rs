//! Sharp constants for weighted power sums.
//!
//! For weights `mu_i` and coefficients `a_i` the inequality
//!
//! ```text
//!     sum |x_i|^p / mu_i  >=  |sum a_i x_i|^p / lambda
//! ```
//!
//! holds for every complex `x` exactly when `lambda >= lambda_bar`, with
//! `lambda_bar = (sum mu_i^(1/(p-1)) |a_i|^q)^(p-1)`. Mixed-sign weights give
//! the reversed inequality under the dual admissibility condition; those are
//! reduced to the positive case by the substitution in [`case_ii_transform`].

use serde::Serialize;

use crate::domain::{
    classify_case, moduli, pow_nonneg, CaseLabel, Complex, Direction, Exponent, InequalityReport,
    WeightedSystem, IDENTITY_TOL, VERDICT_TOL,
};
use crate::error::{Error, Result};

/// Output of the sharp-constant machinery for a positive-weight system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub lambda_bar: f64,
    #[serde(rename = "Q")]
    pub q_weights: Vec<f64>,
    pub x_star: Vec<f64>,
    pub case: CaseLabel,
}

impl BoundCertificate {
    pub fn new(mu: &[f64], a: &[Complex], exp: Exponent) -> Result<Self> {
        Ok(BoundCertificate {
            lambda_bar: sharp_lambda(mu, a, exp)?,
            q_weights: q_weights(mu, a, exp)?,
            x_star: extremal_point(mu, a, exp)?,
            case: CaseLabel::CaseI,
        })
    }
}

/// Per-term contributions `|mu_i|^(1/(p-1)) |a_i|^q`.
fn weighted_terms(mu: &[f64], a_abs: &[f64], exp: Exponent) -> Vec<f64> {
    let w = exp.weight_power();
    mu.iter()
        .zip(a_abs)
        .map(|(&m, &a)| pow_nonneg(m.abs(), w) * pow_nonneg(a, exp.q()))
        .collect()
}

fn validate_positive(mu: &[f64], a: &[Complex]) -> Result<()> {
    if mu.is_empty() || mu.len() != a.len() {
        return Err(Error::domain(format!(
            "need matching nonempty mu and a, got {} and {}",
            mu.len(),
            a.len()
        )));
    }
    if let Some(i) = mu.iter().position(|&m| !(m > 0.0) || !m.is_finite()) {
        return Err(Error::domain(format!("mu_{} = {} must be positive", i + 1, mu[i])));
    }
    Ok(())
}

/// `S = sum mu_i^(1/(p-1)) |a_i|^q` for positive weights.
fn positive_sum(mu: &[f64], a: &[Complex], exp: Exponent) -> Result<(f64, Vec<f64>)> {
    validate_positive(mu, a)?;
    let terms = weighted_terms(mu, &moduli(a), exp);
    let s: f64 = terms.iter().sum();
    if s == 0.0 {
        return Err(Error::degenerate("all coefficients are zero, the bound is vacuous"));
    }
    Ok((s, terms))
}

/// Smallest `lambda` for which the positive-weight inequality holds for all `x`.
pub fn sharp_lambda(mu: &[f64], a: &[Complex], exp: Exponent) -> Result<f64> {
    let (s, _) = positive_sum(mu, a, exp)?;
    Ok(s.powf(exp.p() - 1.0))
}

/// Convex-combination weights `Q_i = mu_i^(1/(p-1)) |a_i|^q / S^p`.
/// They sum to `1 / lambda_bar`.
pub fn q_weights(mu: &[f64], a: &[Complex], exp: Exponent) -> Result<Vec<f64>> {
    let (s, terms) = positive_sum(mu, a, exp)?;
    let denom = s.powf(exp.p());
    Ok(terms.into_iter().map(|t| t / denom).collect())
}

/// A point on the equality ray, `x_i = (|a_i| mu_i)^(1/(p-1))`.
pub fn extremal_point(mu: &[f64], a: &[Complex], exp: Exponent) -> Result<Vec<f64>> {
    positive_sum(mu, a, exp)?;
    let w = exp.weight_power();
    Ok(mu
        .iter()
        .zip(moduli(a))
        .map(|(&m, a)| pow_nonneg(a * m, w))
        .collect())
}

/// `lambda >= lambda_bar`, compared as `lambda^(1/(p-1)) >= S` with a
/// relative slack of `IDENTITY_TOL` in favour of admissibility.
pub fn admissible_case_i(mu: &[f64], a: &[Complex], exp: Exponent, lambda: f64) -> Result<bool> {
    validate_positive(mu, a)?;
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("case I needs lambda > 0, got {lambda}")));
    }
    let s: f64 = weighted_terms(mu, &moduli(a), exp).iter().sum();
    Ok(lambda.powf(exp.weight_power()) >= s * (1.0 - IDENTITY_TOL))
}

fn weighted_power_sum(x: &[Complex], mu: &[f64], p: f64) -> f64 {
    x.iter().zip(mu).map(|(z, &m)| pow_nonneg(z.norm(), p) / m).sum()
}

fn combination(a: &[Complex], x: &[Complex]) -> Complex {
    a.iter().zip(x).map(|(a, x)| a * x).sum()
}

fn require_case(sys: &WeightedSystem, lambda: f64, want: CaseLabel) -> Result<()> {
    let got = classify_case(&sys.mu, lambda)?;
    if got != want {
        return Err(Error::domain(format!(
            "sign pattern of mu = {:?}, lambda = {lambda} is {got:?}, expected {want:?}",
            sys.mu
        )));
    }
    Ok(())
}

pub fn check_case_i(sys: &WeightedSystem, lambda: f64) -> Result<InequalityReport> {
    check_case_i_with(sys, lambda, VERDICT_TOL)
}

/// Evaluates `sum |x_i|^p/mu_i >= |sum a_i x_i|^p / lambda` for positive weights.
pub fn check_case_i_with(sys: &WeightedSystem, lambda: f64, tol: f64) -> Result<InequalityReport> {
    require_case(sys, lambda, CaseLabel::CaseI)?;
    let x = sys.points()?;
    let p = sys.p();
    let lhs = weighted_power_sum(x, &sys.mu, p);
    let rhs = pow_nonneg(combination(&sys.a, x).norm(), p) / lambda;
    let guaranteed = admissible_case_i(&sys.mu, &sys.a, sys.exponent, lambda)?;
    Ok(InequalityReport::evaluate(lhs, rhs, Direction::AtLeast, tol).guaranteed(guaranteed))
}

/// Right side of the mixed-sign admissibility condition,
/// `|mu_1|^(1/(p-1)) |a_1|^q - sum_{i>=2} |mu_i|^(1/(p-1)) |a_i|^q`.
/// No admissible `lambda` exists when this is `<= 0`.
pub fn mixed_sign_bound(mu: &[f64], a: &[Complex], exp: Exponent) -> f64 {
    let terms = weighted_terms(mu, &moduli(a), exp);
    terms[0] - terms[1..].iter().sum::<f64>()
}

fn admissible_mixed(mu: &[f64], a: &[Complex], exp: Exponent, lambda: f64) -> bool {
    let bound = mixed_sign_bound(mu, a, exp);
    bound > 0.0 && lambda.abs().powf(exp.weight_power()) <= bound * (1.0 + IDENTITY_TOL)
}

fn validate_mixed(mu: &[f64], a: &[Complex], lambda: f64, want: CaseLabel) -> Result<()> {
    if mu.len() != a.len() {
        return Err(Error::domain("mu and a must have equal length"));
    }
    if mu.len() < 2 {
        return Err(Error::domain("mixed-sign cases need at least two terms"));
    }
    let got = classify_case(mu, lambda)?;
    if got != want {
        return Err(Error::domain(format!(
            "sign pattern of mu = {mu:?}, lambda = {lambda} is {got:?}, expected {want:?}"
        )));
    }
    Ok(())
}

/// Largest admissible `lambda` for a case II system, if any.
pub fn case_ii_lambda_max(mu: &[f64], a: &[Complex], exp: Exponent) -> Option<f64> {
    let bound = mixed_sign_bound(mu, a, exp);
    (bound > 0.0).then(|| bound.powf(exp.p() - 1.0))
}

pub fn admissible_case_ii(mu: &[f64], a: &[Complex], exp: Exponent, lambda: f64) -> Result<bool> {
    validate_mixed(mu, a, lambda, CaseLabel::CaseII)?;
    Ok(admissible_mixed(mu, a, exp, lambda))
}

pub fn admissible_case_iii(mu: &[f64], a: &[Complex], exp: Exponent, lambda: f64) -> Result<bool> {
    validate_mixed(mu, a, lambda, CaseLabel::CaseIII)?;
    Ok(admissible_mixed(mu, a, exp, lambda))
}

pub fn check_case_ii(sys: &WeightedSystem, lambda: f64) -> Result<InequalityReport> {
    check_case_ii_with(sys, lambda, VERDICT_TOL)
}

/// Evaluates the reversed inequality `sum |x_i|^p/mu_i <= |sum a_i x_i|^p / lambda`
/// for `mu_1 > 0`, `mu_i < 0` (i >= 2), `lambda > 0`.
pub fn check_case_ii_with(sys: &WeightedSystem, lambda: f64, tol: f64) -> Result<InequalityReport> {
    validate_mixed(&sys.mu, &sys.a, lambda, CaseLabel::CaseII)?;
    if sys.a[0] == Complex::new(0.0, 0.0) {
        return Err(Error::domain("case II needs a_1 != 0"));
    }
    let x = sys.points()?;
    let p = sys.p();
    let lhs = weighted_power_sum(x, &sys.mu, p);
    let rhs = pow_nonneg(combination(&sys.a, x).norm(), p) / lambda;
    let guaranteed = admissible_mixed(&sys.mu, &sys.a, sys.exponent, lambda);
    Ok(InequalityReport::evaluate(lhs, rhs, Direction::AtMost, tol).guaranteed(guaranteed))
}

pub fn check_case_iii(sys: &WeightedSystem, lambda: f64) -> Result<InequalityReport> {
    check_case_iii_with(sys, lambda, VERDICT_TOL)
}

/// Evaluates `sum |x_i|^p/mu_i >= |sum a_i x_i|^p / lambda` for `mu_1 < 0`,
/// `mu_i > 0` (i >= 2), `lambda < 0`. This is case II with every weight negated.
pub fn check_case_iii_with(sys: &WeightedSystem, lambda: f64, tol: f64) -> Result<InequalityReport> {
    validate_mixed(&sys.mu, &sys.a, lambda, CaseLabel::CaseIII)?;
    let x = sys.points()?;
    let p = sys.p();
    let lhs = weighted_power_sum(x, &sys.mu, p);
    let rhs = pow_nonneg(combination(&sys.a, x).norm(), p) / lambda;
    let guaranteed = admissible_mixed(&sys.mu, &sys.a, sys.exponent, lambda);
    Ok(InequalityReport::evaluate(lhs, rhs, Direction::AtLeast, tol).guaranteed(guaranteed))
}

/// Smallest `|sum w_i|` over all phases of complex numbers with `|w_i| = r_i`.
pub fn min_combination_modulus(r: &[f64]) -> f64 {
    let total: f64 = r.iter().sum();
    let largest = r.iter().copied().fold(0.0, f64::max);
    (2.0 * largest - total).max(0.0)
}

/// Checks the inequality of the system's case at the least favourable phases
/// for the given moduli of `a_i` and `x_i`.
///
/// Case I is tightest when every `a_i x_i` is aligned; cases II and III are
/// tightest when `|sum a_i x_i|` is as small as the moduli allow. The verdict
/// therefore covers every complex system with the same moduli.
pub fn check_worst_phase(sys: &WeightedSystem, lambda: f64, tol: f64) -> Result<(CaseLabel, InequalityReport)> {
    let case = classify_case(&sys.mu, lambda)?;
    let x = sys.points()?;
    let p = sys.p();
    let products: Vec<f64> = sys.a.iter().zip(x).map(|(a, x)| a.norm() * x.norm()).collect();
    let lhs = weighted_power_sum(x, &sys.mu, p);
    let report = match case {
        CaseLabel::CaseI => {
            let rhs = pow_nonneg(products.iter().sum(), p) / lambda;
            let ok = admissible_case_i(&sys.mu, &sys.a, sys.exponent, lambda)?;
            InequalityReport::evaluate(lhs, rhs, Direction::AtLeast, tol).guaranteed(ok)
        }
        CaseLabel::CaseII | CaseLabel::CaseIII => {
            validate_mixed(&sys.mu, &sys.a, lambda, case)?;
            let rhs = pow_nonneg(min_combination_modulus(&products), p) / lambda;
            let dir = if case == CaseLabel::CaseII { Direction::AtMost } else { Direction::AtLeast };
            let ok = admissible_mixed(&sys.mu, &sys.a, sys.exponent, lambda);
            InequalityReport::evaluate(lhs, rhs, dir, tol).guaranteed(ok)
        }
        CaseLabel::Unclassified => {
            return Err(Error::domain("sign pattern is not covered by any case"));
        }
    };
    Ok((case, report))
}

/// Result of checking a system under an explicit or inferred case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseCheck {
    pub case: CaseLabel,
    pub admissible: bool,
    #[serde(flatten)]
    pub report: InequalityReport,
}

/// Classifies the system (unless `forced`) and runs the matching check.
pub fn check(sys: &WeightedSystem, lambda: f64, forced: Option<CaseLabel>, tol: f64) -> Result<CaseCheck> {
    let case = match forced {
        Some(c) => c,
        None => classify_case(&sys.mu, lambda)?,
    };
    let report = match case {
        CaseLabel::CaseI => check_case_i_with(sys, lambda, tol)?,
        CaseLabel::CaseII => check_case_ii_with(sys, lambda, tol)?,
        CaseLabel::CaseIII => check_case_iii_with(sys, lambda, tol)?,
        CaseLabel::Unclassified => {
            return Err(Error::domain(format!(
                "sign pattern mu = {:?}, lambda = {lambda} is not covered by any case",
                sys.mu
            )))
        }
    };
    Ok(CaseCheck { case, admissible: report.guaranteed, report })
}

/// Substitution data turning a case II system into a positive-weight one:
/// `Lambda = |mu_1|`, `nu = (|lambda|, |mu_2|, ..)`, `z = (sum a_i x_i, x_2, ..)`,
/// `C = (1/a_1, -a_2/a_1, ..)`, so that `x_1 = sum C_i z_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseTransform {
    pub big_lambda: f64,
    pub nu: Vec<f64>,
    pub z: Vec<Complex>,
    pub c: Vec<Complex>,
}

impl CaseTransform {
    /// `sum C_i z_i`, which reproduces the original `x_1`.
    pub fn first_point(&self) -> Complex {
        combination(&self.c, &self.z)
    }

    /// The transformed positive-weight system, with `x = z`.
    pub fn case_i_system(&self, exp: Exponent) -> Result<WeightedSystem> {
        WeightedSystem::new(exp, self.c.clone(), self.nu.clone())?.with_points(self.z.clone())
    }

    /// Admissibility of target `Lambda` for the transformed system. Equivalent
    /// to the mixed-sign condition on the original system.
    pub fn admissible(&self, exp: Exponent) -> Result<bool> {
        admissible_case_i(&self.nu, &self.c, exp, self.big_lambda)
    }
}

pub fn case_ii_transform(sys: &WeightedSystem, lambda: f64) -> Result<CaseTransform> {
    validate_mixed(&sys.mu, &sys.a, lambda, CaseLabel::CaseII)?;
    let a1 = sys.a[0];
    if a1 == Complex::new(0.0, 0.0) {
        return Err(Error::domain("case II substitution divides by a_1, which is zero"));
    }
    let x = sys.points()?;
    let mut nu = Vec::with_capacity(sys.len());
    nu.push(lambda.abs());
    nu.extend(sys.mu[1..].iter().map(|m| m.abs()));
    let mut z = Vec::with_capacity(sys.len());
    z.push(combination(&sys.a, x));
    z.extend_from_slice(&x[1..]);
    let mut c = Vec::with_capacity(sys.len());
    c.push(1.0 / a1);
    c.extend(sys.a[1..].iter().map(|ai| -ai / a1));
    Ok(CaseTransform { big_lambda: sys.mu[0].abs(), nu, z, c })
}

/// Two-term form: `|x|^p/mu + |y|^p/nu >= |a x + b y|^p / lambda`.
///
/// Positive weights map to case I. `(mu < 0, nu > 0, lambda < 0)` is case III
/// in the given order, and `(mu > 0, nu < 0, lambda < 0)` is case III with the
/// two terms swapped.
pub fn check_two_term(
    xy: [Complex; 2],
    ab: [Complex; 2],
    mu_nu: [f64; 2],
    lambda: f64,
    exp: Exponent,
) -> Result<(CaseLabel, InequalityReport)> {
    let swap = mu_nu[0] > 0.0 && mu_nu[1] < 0.0 && lambda < 0.0;
    let (x, a, mu) = if swap {
        (vec![xy[1], xy[0]], vec![ab[1], ab[0]], vec![mu_nu[1], mu_nu[0]])
    } else {
        (xy.to_vec(), ab.to_vec(), mu_nu.to_vec())
    };
    let sys = WeightedSystem::new(exp, a, mu)?.with_points(x)?;
    let out = check(&sys, lambda, None, VERDICT_TOL)?;
    Ok((out.case, out.report))
}

/// Parameter pack that specialises the two-term inequality to Bohr's inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BohrParams {
    pub s: f64,
    pub t: f64,
    pub p: f64,
    pub a: f64,
    pub b: f64,
    pub mu: f64,
    pub nu: f64,
    pub lambda: f64,
}

impl BohrParams {
    pub fn system(&self) -> Result<WeightedSystem> {
        WeightedSystem::real(self.p, &[self.a, self.b], &[self.mu, self.nu], None)
    }

    /// Sharp constant of the mapped system.
    pub fn sharp_lambda(&self) -> Result<f64> {
        let sys = self.system()?;
        sharp_lambda(&sys.mu, &sys.a, sys.exponent)
    }

    pub fn matches_sharp(&self) -> Result<bool> {
        let sharp = self.sharp_lambda()?;
        Ok((self.lambda - sharp).abs() <= IDENTITY_TOL * sharp.abs().max(self.lambda.abs()))
    }
}

fn validate_bohr(s: f64, p: f64) -> Result<()> {
    if !(s > 1.0 && s <= 2.0) {
        return Err(Error::domain(format!("Bohr parameter s must lie in (1, 2], got {s}")));
    }
    Exponent::new(p).map(|_| ())
}

pub fn bohr_params(s: f64, p: f64) -> Result<BohrParams> {
    validate_bohr(s, p)?;
    let t = s / (s - 1.0);
    Ok(BohrParams {
        s,
        t,
        p,
        a: s - 1.0,
        b: 1.0,
        mu: 1.0 / s,
        nu: 1.0 / t,
        lambda: (s - 1.0) * s.powf(p - 2.0),
    })
}

/// Both links of
/// `s x^p + t y^p >= ((s-1)x + y)^p / ((s-1) s^(p-2)) >= ((s-1)x + y)^p / 2^(p-2)`.
pub fn bohr_chain_check(s: f64, p: f64, x: f64, y: f64) -> Result<(InequalityReport, InequalityReport)> {
    let params = bohr_params(s, p)?;
    if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::domain("Bohr chain needs finite x, y >= 0"));
    }
    let left = s * pow_nonneg(x, p) + params.t * pow_nonneg(y, p);
    let combo = pow_nonneg((s - 1.0) * x + y, p);
    let middle = combo / params.lambda;
    let right = combo / 2f64.powf(p - 2.0);
    let first = InequalityReport::evaluate(left, middle, Direction::AtLeast, VERDICT_TOL).guaranteed(true);
    let second = InequalityReport::evaluate(middle, right, Direction::AtLeast, VERDICT_TOL).guaranteed(true);
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::to_complex;

    fn e(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    fn c(v: &[f64]) -> Vec<Complex> {
        to_complex(v)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn sharp_lambda_examples() {
        assert!(close(sharp_lambda(&[1.0, 1.0], &c(&[1.0, 1.0]), e(2.0)).unwrap(), 2.0, 1e-15));
        assert!(close(sharp_lambda(&[0.5, 0.5], &c(&[1.0, 1.0]), e(2.0)).unwrap(), 1.0, 1e-15));
        assert!(close(sharp_lambda(&[3.0], &c(&[2.0]), e(3.0)).unwrap(), 24.0, 1e-14));
    }

    #[test]
    fn sharp_lambda_errors() {
        assert!(matches!(sharp_lambda(&[1.0, -1.0], &c(&[1.0, 1.0]), e(2.0)), Err(Error::Domain(_))));
        assert!(matches!(sharp_lambda(&[1.0, 1.0], &c(&[0.0, 0.0]), e(2.0)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn sharp_lambda_uses_moduli() {
        let a = vec![Complex::new(3.0, 4.0), Complex::new(0.0, -1.0)];
        let real = sharp_lambda(&[1.0, 2.0], &c(&[5.0, 1.0]), e(2.5)).unwrap();
        assert!(close(sharp_lambda(&[1.0, 2.0], &a, e(2.5)).unwrap(), real, 1e-15));
    }

    #[test]
    fn q_weights_examples() {
        assert_eq!(q_weights(&[1.0, 1.0], &c(&[1.0, 1.0]), e(2.0)).unwrap(), vec![0.25, 0.25]);
        assert_eq!(q_weights(&[1.0], &c(&[1.0]), e(2.0)).unwrap(), vec![1.0]);
        assert_eq!(q_weights(&[1.0, 1.0], &c(&[1.0, 0.0]), e(2.0)).unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn extremal_point_examples() {
        assert_eq!(extremal_point(&[1.0, 1.0], &c(&[1.0, 1.0]), e(2.0)).unwrap(), vec![1.0, 1.0]);
        assert_eq!(extremal_point(&[1.0, 1.0], &c(&[2.0, 1.0]), e(2.0)).unwrap(), vec![2.0, 1.0]);
        assert_eq!(extremal_point(&[4.0], &c(&[1.0]), e(2.0)).unwrap(), vec![4.0]);
        // zero coefficient sits at the origin of its coordinate
        assert_eq!(extremal_point(&[1.0, 1.0], &c(&[1.0, 0.0]), e(3.0)).unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn extremal_point_is_an_equality_case() {
        let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[1.0, 1.0], Some(&[2.0, 1.0])).unwrap();
        let r = check_case_i(&sys, 5.0).unwrap();
        assert!(close(r.lhs, 5.0, 1e-15) && close(r.rhs, 5.0, 1e-15));
        assert!(r.margin.abs() <= 1e-12 * r.lhs);
    }

    #[test]
    fn check_case_i_examples() {
        let sys = WeightedSystem::real(2.0, &[1.0, 1.0], &[1.0, 1.0], Some(&[3.0, 4.0])).unwrap();
        let r = check_case_i(&sys, 2.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (25.0, 24.5));
        assert!(r.holds && r.guaranteed);

        let sys = WeightedSystem::real(2.0, &[1.0, 1.0], &[1.0, 1.0], Some(&[1.0, 1.0])).unwrap();
        let r = check_case_i(&sys, 2.0).unwrap();
        assert_eq!((r.lhs, r.rhs, r.margin), (2.0, 2.0, 0.0));
        assert!(r.holds);

        let sys = WeightedSystem::real(3.0, &[1.0, 2.0], &[1.0, 5.0], Some(&[0.0, 0.0])).unwrap();
        let r = check_case_i(&sys, 10.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.holds);
    }

    #[test]
    fn check_case_i_rejects_wrong_signs() {
        let sys = WeightedSystem::real(2.0, &[1.0, 1.0], &[1.0, -1.0], Some(&[1.0, 1.0])).unwrap();
        assert!(check_case_i(&sys, 2.0).is_err());
        let sys = WeightedSystem::real(2.0, &[1.0, 1.0], &[1.0, 1.0], Some(&[1.0, 1.0])).unwrap();
        assert!(check_case_i(&sys, -2.0).is_err());
    }

    #[test]
    fn inadmissible_lambda_still_reports() {
        let sys = WeightedSystem::real(2.0, &[1.0, 1.0], &[1.0, 1.0], Some(&[1.0, 1.0])).unwrap();
        let r = check_case_i(&sys, 1.9).unwrap();
        assert!(!r.guaranteed);
        assert!(!r.holds);
    }

    #[test]
    fn admissible_case_i_examples() {
        let (mu, a) = ([1.0, 1.0], c(&[1.0, 1.0]));
        assert!(admissible_case_i(&mu, &a, e(2.0), 2.0).unwrap());
        assert!(!admissible_case_i(&mu, &a, e(2.0), 1.999).unwrap());
        assert!(admissible_case_i(&mu, &a, e(2.0), 100.0).unwrap());
        assert!(admissible_case_i(&mu, &a, e(2.0), 0.0).is_err());
    }

    #[test]
    fn check_case_ii_examples() {
        // literal x = [2, 1]: sum a x = 5
        let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[1.0, -1.0], Some(&[2.0, 1.0])).unwrap();
        let r = check_case_ii(&sys, 3.0).unwrap();
        assert_eq!(r.lhs, 3.0);
        assert!(close(r.rhs, 25.0 / 3.0, 1e-15));
        assert!(r.holds && r.guaranteed);

        // the equality configuration: a_1 x_1 and a_2 x_2 in opposition
        let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[1.0, -1.0], Some(&[2.0, -1.0])).unwrap();
        let r = check_case_ii(&sys, 3.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (3.0, 3.0));
        assert!(r.margin.abs() <= 1e-12);

        let sys = WeightedSystem::real(2.0, &[1.0, 1.0], &[1.0, -1.0], Some(&[1.0, 0.0])).unwrap();
        let r = check_case_ii(&sys, 0.5).unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 2.0));
        assert!(r.holds && !r.guaranteed);

        let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[1.0, -1.0], Some(&[0.0, 0.0])).unwrap();
        let r = check_case_ii(&sys, 3.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.holds);
    }

    #[test]
    fn check_case_ii_errors() {
        let sys = WeightedSystem::real(2.0, &[0.0, 1.0], &[1.0, -1.0], Some(&[1.0, 1.0])).unwrap();
        assert!(check_case_ii(&sys, 1.0).is_err());
        let sys = WeightedSystem::real(2.0, &[1.0], &[1.0], Some(&[1.0])).unwrap();
        assert!(check_case_ii(&sys, 1.0).is_err());
        let sys = WeightedSystem::real(2.0, &[1.0, 1.0], &[1.0, 1.0], Some(&[1.0, 1.0])).unwrap();
        assert!(check_case_ii(&sys, 1.0).is_err());
    }

    #[test]
    fn admissible_case_ii_examples() {
        let mu = [1.0, -1.0];
        assert!(admissible_case_ii(&mu, &c(&[2.0, 1.0]), e(2.0), 3.0).unwrap());
        assert!(!admissible_case_ii(&mu, &c(&[2.0, 1.0]), e(2.0), 3.01).unwrap());
        for lambda in [1e-6, 0.5, 1.0, 7.0] {
            assert!(!admissible_case_ii(&mu, &c(&[1.0, 1.0]), e(2.0), lambda).unwrap());
        }
        assert_eq!(case_ii_lambda_max(&mu, &c(&[2.0, 1.0]), e(2.0)), Some(3.0));
        assert_eq!(case_ii_lambda_max(&mu, &c(&[1.0, 1.0]), e(2.0)), None);
    }

    #[test]
    fn check_case_iii_examples() {
        let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[-1.0, 1.0], Some(&[2.0, -1.0])).unwrap();
        let r = check_case_iii(&sys, -3.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (-3.0, -3.0));
        assert!(r.holds && r.guaranteed && r.margin.abs() <= 1e-12);

        let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[-1.0, 1.0], Some(&[1.0, 1.0])).unwrap();
        let r = check_case_iii(&sys, -3.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, -3.0));
        assert!(r.holds);

        let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[-1.0, 1.0], Some(&[0.0, 0.0])).unwrap();
        let r = check_case_iii(&sys, -3.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(admissible_case_iii(&[-1.0, 1.0], &c(&[2.0, 1.0]), e(2.0), -3.0).unwrap());
    }

    #[test]
    fn worst_phase_boundary() {
        // moduli x = [2, 1] at the least favourable phase give equality
        let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[1.0, -1.0], Some(&[2.0, 1.0])).unwrap();
        let (case, r) = check_worst_phase(&sys, 3.0, VERDICT_TOL).unwrap();
        assert_eq!(case, CaseLabel::CaseII);
        assert_eq!((r.lhs, r.rhs), (3.0, 3.0));
        let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[-1.0, 1.0], Some(&[2.0, 1.0])).unwrap();
        let (_, r) = check_worst_phase(&sys, -3.0, VERDICT_TOL).unwrap();
        assert_eq!((r.lhs, r.rhs), (-3.0, -3.0));
    }

    #[test]
    fn min_combination_modulus_cases() {
        assert_eq!(min_combination_modulus(&[4.0, 1.0]), 3.0);
        assert_eq!(min_combination_modulus(&[1.0, 1.0, 1.0]), 0.0);
        assert_eq!(min_combination_modulus(&[]), 0.0);
        assert_eq!(min_combination_modulus(&[2.0]), 2.0);
    }

    #[test]
    fn case_ii_transform_examples() {
        let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[1.0, -1.0], Some(&[2.0, 1.0])).unwrap();
        let t = case_ii_transform(&sys, 3.0).unwrap();
        assert_eq!(t.big_lambda, 1.0);
        assert_eq!(t.nu, vec![3.0, 1.0]);
        assert_eq!(t.z, c(&[5.0, 1.0]));
        assert_eq!(t.c, c(&[0.5, -0.5]));
        assert_eq!(t.first_point(), Complex::new(2.0, 0.0));

        let sys = WeightedSystem::real(2.0, &[1.0, 1.0], &[1.0, -1.0], Some(&[1.0, 0.0])).unwrap();
        let t = case_ii_transform(&sys, 1.0).unwrap();
        assert_eq!(t.big_lambda, 1.0);
        assert_eq!(t.nu, vec![1.0, 1.0]);
        assert_eq!(t.z, c(&[1.0, 0.0]));
        assert_eq!(t.c, c(&[1.0, -1.0]));
    }

    #[test]
    fn case_ii_transform_preserves_admissibility() {
        let exp = e(2.0);
        let mu = [1.0, -1.0];
        let a = c(&[2.0, 1.0]);
        for lambda in [0.5, 2.9, 3.0, 3.01, 5.0] {
            let sys = WeightedSystem::new(exp, a.clone(), mu.to_vec()).unwrap().with_points(c(&[2.0, 1.0])).unwrap();
            let t = case_ii_transform(&sys, lambda).unwrap();
            assert_eq!(t.admissible(exp).unwrap(), admissible_case_ii(&mu, &a, exp, lambda).unwrap(), "lambda = {lambda}");
        }
    }

    #[test]
    fn case_ii_transform_rejects_zero_lead() {
        let sys = WeightedSystem::real(2.0, &[0.0, 1.0], &[1.0, -1.0], Some(&[2.0, 1.0])).unwrap();
        assert!(case_ii_transform(&sys, 1.0).is_err());
    }

    #[test]
    fn two_term_mappings() {
        let exp = e(2.0);
        let one = Complex::new(1.0, 0.0);
        let (case, r) = check_two_term([one, one], [one, one], [1.0, 1.0], 2.0, exp).unwrap();
        assert_eq!(case, CaseLabel::CaseI);
        assert!(r.holds && r.guaranteed);
        // mu < 0, nu > 0, lambda < 0: |lambda| <= |mu| a^2 - nu b^2 = 4 - 1
        let two = Complex::new(2.0, 0.0);
        let (case, r) = check_two_term([two, -one], [two, one], [-1.0, 1.0], -3.0, exp).unwrap();
        assert_eq!(case, CaseLabel::CaseIII);
        assert!(r.holds && r.guaranteed && r.margin.abs() < 1e-12);
        // mu > 0, nu < 0, lambda < 0: |lambda| <= -mu a^2 + |nu| b^2 = -1 + 4
        let (case, r) = check_two_term([-one, two], [one, two], [1.0, -1.0], -3.0, exp).unwrap();
        assert_eq!(case, CaseLabel::CaseIII);
        assert!(r.holds && r.guaranteed && r.margin.abs() < 1e-12);
        assert!(check_two_term([one, one], [one, one], [-1.0, -1.0], -1.0, exp).is_err());
    }

    #[test]
    fn bohr_params_examples() {
        let b = bohr_params(2.0, 2.0).unwrap();
        assert_eq!((b.a, b.b, b.mu, b.nu, b.lambda), (1.0, 1.0, 0.5, 0.5, 1.0));
        assert!(b.matches_sharp().unwrap());
        assert_eq!(bohr_params(2.0, 3.0).unwrap().lambda, 2.0);
        let b = bohr_params(1.5, 2.0).unwrap();
        assert!(close(b.t, 3.0, 1e-15));
        assert_eq!((b.a, b.b, b.lambda), (0.5, 1.0, 0.5));
        assert!(close(b.mu, 2.0 / 3.0, 1e-15) && close(b.nu, 1.0 / 3.0, 1e-15));
        let sys = b.system().unwrap();
        assert!(admissible_case_i(&sys.mu, &sys.a, sys.exponent, b.lambda).unwrap());
    }

    #[test]
    fn bohr_params_errors() {
        assert!(bohr_params(1.0, 2.0).is_err());
        assert!(bohr_params(2.5, 2.0).is_err());
        assert!(bohr_params(1.5, 1.0).is_err());
    }

    #[test]
    fn bohr_chain_examples() {
        let (first, second) = bohr_chain_check(2.0, 2.0, 1.0, 1.0).unwrap();
        assert_eq!((first.lhs, first.rhs, second.lhs, second.rhs), (4.0, 4.0, 4.0, 4.0));
        assert!(first.holds && second.holds);
        let (first, second) = bohr_chain_check(2.0, 3.0, 1.0, 1.0).unwrap();
        assert_eq!((first.lhs, first.rhs, second.rhs), (4.0, 4.0, 4.0));
        assert!(first.holds && second.holds);
        let (first, second) = bohr_chain_check(1.5, 2.0, 0.0, 0.0).unwrap();
        assert_eq!((first.lhs, first.rhs, second.rhs), (0.0, 0.0, 0.0));
        assert!(bohr_chain_check(1.5, 2.0, -1.0, 0.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn instance() -> impl Strategy<Value = (f64, Vec<f64>, Vec<f64>)> {
            (1usize..7).prop_flat_map(|n| {
                (
                    prop::sample::select(vec![1.5, 2.0, 2.5, 3.0, 5.0]),
                    prop::collection::vec(0.1f64..10.0, n),
                    prop::collection::vec(0.01f64..10.0, n),
                )
            })
        }

        proptest! {
            #[test]
            fn extremal_point_is_sharp((p, mu, a) in instance()) {
                let exp = e(p);
                let a = c(&a);
                let lambda = sharp_lambda(&mu, &a, exp).unwrap();
                let x = extremal_point(&mu, &a, exp).unwrap();
                let sys = WeightedSystem::new(exp, a.clone(), mu.clone()).unwrap().with_points(c(&x)).unwrap();
                let r = check_case_i(&sys, lambda).unwrap();
                prop_assert!(r.margin.abs() <= 1e-12 * r.lhs, "margin {} lhs {}", r.margin, r.lhs);
                let below = check_case_i(&sys, lambda * (1.0 - 1e-3)).unwrap();
                prop_assert!(!below.holds);
            }

            #[test]
            fn q_weights_sum_to_reciprocal((p, mu, a) in instance()) {
                let exp = e(p);
                let a = c(&a);
                let lambda = sharp_lambda(&mu, &a, exp).unwrap();
                let sum: f64 = q_weights(&mu, &a, exp).unwrap().iter().sum();
                prop_assert!((sum * lambda - 1.0).abs() <= 1e-12);
            }

            #[test]
            fn sharp_lambda_is_homogeneous((p, mu, a) in instance(), k in prop_oneof![-5.0f64..-0.1, 0.1f64..5.0]) {
                let exp = e(p);
                let base = sharp_lambda(&mu, &c(&a), exp).unwrap();
                let scaled: Vec<f64> = a.iter().map(|v| v * k).collect();
                let got = sharp_lambda(&mu, &c(&scaled), exp).unwrap();
                prop_assert!((got - k.abs().powf(p) * base).abs() <= 1e-12 * got);
            }

            #[test]
            fn verdict_is_scale_invariant((p, mu, a) in instance(), t in 0.01f64..100.0, seed in 0.0f64..10.0, factor in 0.5f64..1.5) {
                let exp = e(p);
                let ac = c(&a);
                let lambda = sharp_lambda(&mu, &ac, exp).unwrap() * factor;
                let x: Vec<f64> = (0..mu.len()).map(|i| ((i as f64 + 1.0) * seed).sin().abs() * 5.0).collect();
                let tx: Vec<f64> = x.iter().map(|v| v * t).collect();
                let s1 = WeightedSystem::new(exp, ac.clone(), mu.clone()).unwrap().with_points(c(&x)).unwrap();
                let s2 = WeightedSystem::new(exp, ac, mu.clone()).unwrap().with_points(c(&tx)).unwrap();
                let r1 = check_case_i_with(&s1, lambda, 0.0).unwrap();
                let r2 = check_case_i_with(&s2, lambda, 0.0).unwrap();
                // verdicts agree away from the rounding band around equality
                if r1.relative_margin().abs() > 1e-9 {
                    prop_assert_eq!(r1.holds, r2.holds);
                }
            }

            #[test]
            fn aligned_phases_maximise_the_ratio((p, mu, a) in instance(), phases in prop::collection::vec(0.0f64..6.3, 6)) {
                let exp = e(p);
                let ac = c(&a);
                let x = extremal_point(&mu, &ac, exp).unwrap();
                let rotated: Vec<Complex> = x.iter().zip(&phases).map(|(&v, &t)| Complex::from_polar(v, t)).collect();
                let aligned = WeightedSystem::new(exp, ac.clone(), mu.clone()).unwrap().with_points(c(&x)).unwrap();
                let turned = WeightedSystem::new(exp, ac, mu.clone()).unwrap().with_points(rotated).unwrap();
                let ra = check_case_i(&aligned, 1.0).unwrap();
                let rt = check_case_i(&turned, 1.0).unwrap();
                prop_assert!((ra.lhs - rt.lhs).abs() <= 1e-12 * ra.lhs);
                prop_assert!(rt.rhs <= ra.rhs * (1.0 + 1e-12));
            }

            #[test]
            fn transform_matches_direct_check(
                n in 2usize..5,
                vals in prop::collection::vec((0.1f64..10.0, 0.1f64..10.0, -10.0f64..10.0, -10.0f64..10.0), 5),
                u in 0.05f64..1.0,
            ) {
                let exp = e(2.5);
                let mut mu: Vec<f64> = vals[..n].iter().map(|v| -v.0).collect();
                mu[0] = -mu[0] * 50.0;
                let a: Vec<Complex> = vals[..n].iter().map(|v| Complex::new(v.1, v.3 * 0.1)).collect();
                let x: Vec<Complex> = vals[..n].iter().map(|v| Complex::new(v.2, v.3)).collect();
                if let Some(max) = case_ii_lambda_max(&mu, &a, exp) {
                    let lambda = max * u;
                    let sys = WeightedSystem::new(exp, a.clone(), mu.clone()).unwrap().with_points(x).unwrap();
                    let t = case_ii_transform(&sys, lambda).unwrap();
                    prop_assert!(t.admissible(exp).unwrap());
                    let direct = check_case_ii(&sys, lambda).unwrap();
                    let via = check_case_i(&t.case_i_system(exp).unwrap(), t.big_lambda).unwrap();
                    prop_assert!(direct.holds && via.holds);
                    prop_assert!((direct.margin - via.margin).abs() <= 1e-9 * direct.lhs.abs().max(direct.rhs.abs()).max(1.0));
                    let x1 = sys.x.as_ref().unwrap()[0];
                    let scale: f64 = t.c.iter().zip(&t.z).map(|(c, z)| c.norm() * z.norm()).sum();
                    prop_assert!((t.first_point() - x1).norm() <= 1e-12 * scale.max(x1.norm()));
                }
            }

            #[test]
            fn bohr_lambda_is_the_sharp_constant(s in 1.001f64..=2.0, p in 1.05f64..6.0) {
                let b = bohr_params(s, p).unwrap();
                prop_assert!(b.matches_sharp().unwrap());
            }
        }
    }
}
