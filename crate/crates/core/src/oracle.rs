//! Brute-force verification that never consults the closed forms it checks.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`): the campaign seed
//! is expanded with `SeedableRng::seed_from_u64` and trial `k` reads stream `k`,
//! so every trial is reproducible on its own and independent of scheduling.
//! Trials run in parallel and are merged in trial order, which makes parallel
//! and serial runs bit-identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, case_ii_lambda_max, sharp_lambda};
use crate::domain::{moduli, pow_nonneg, CaseLabel, Complex, Exponent, WeightedSystem, VERDICT_TOL};
use crate::error::{Error, Result};
use crate::superquad::{subquadratic_gap, refined_bound};

/// Relative margin below which a guaranteed inequality counts as violated.
pub const VIOLATION_THRESHOLD: f64 = VERDICT_TOL;

/// Sampling ranges for random instances.
const MU_RANGE: (f64, f64) = (0.1, 10.0);
const COEFF_RANGE: (f64, f64) = (0.0, 10.0);
const POINT_RANGE: (f64, f64) = (0.0, 10.0);

/// Number of best random starts handed to local refinement.
const ELITE: usize = 4;

/// Cap on stored violations; the count is always exact.
const MAX_RECORDED: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SearchConfig {
    pub seed: u64,
    /// Random restarts, or instances per fuzz campaign.
    pub trials: usize,
    /// Local refinement budget per start (sweeps for the sharpness search,
    /// single moves for the adversarial fuzz climb).
    pub local_steps: usize,
    /// Factor applied to the step size after an unproductive sweep.
    pub step_decay: f64,
    /// Per-coordinate `[lo, hi]` bounds for `x`; `None` means `[0, 10]` each.
    #[serde(rename = "box")]
    pub bounds: Option<Vec<(f64, f64)>>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, trials: 1000, local_steps: 400, step_decay: 0.5, bounds: None }
    }
}

impl SearchConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_local_steps(mut self, steps: usize) -> Self {
        self.local_steps = steps;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::domain("trials must be positive"));
        }
        if !(self.step_decay > 0.0 && self.step_decay < 1.0) {
            return Err(Error::domain(format!("step_decay must lie in (0, 1), got {}", self.step_decay)));
        }
        if let Some(b) = &self.bounds {
            if b.iter().any(|&(lo, hi)| !(lo >= 0.0 && hi > lo && hi.is_finite())) {
                return Err(Error::domain("box bounds need 0 <= lo < hi < inf"));
            }
        }
        Ok(())
    }

    fn bounds_for(&self, n: usize) -> Result<Vec<(f64, f64)>> {
        match &self.bounds {
            None => Ok(vec![POINT_RANGE; n]),
            Some(b) if b.len() == n => Ok(b.clone()),
            Some(b) => Err(Error::domain(format!("box has {} coordinates, system has {n}", b.len()))),
        }
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Ratio `(sum |a_i| x_i)^p / sum x_i^p / mu_i` over nonnegative `x`.
///
/// Phases of complex `x_i` can always be chosen to align `a_i x_i`, so the
/// supremum over complex points equals the supremum of this ratio.
fn ratio(a_abs: &[f64], mu: &[f64], p: f64, x: &[f64]) -> f64 {
    let num: f64 = a_abs.iter().zip(x).map(|(a, x)| a * x).sum();
    let den: f64 = x.iter().zip(mu).map(|(&x, m)| pow_nonneg(x, p) / m).sum();
    if den == 0.0 {
        0.0
    } else {
        pow_nonneg(num, p) / den
    }
}

/// Result of a ratio maximisation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessResult {
    pub best_ratio: f64,
    pub x_best: Vec<f64>,
}

fn validate_case_i(mu: &[f64], a: &[Complex]) -> Result<()> {
    if mu.is_empty() || mu.len() != a.len() {
        return Err(Error::domain("mu and a must be nonempty and of equal length"));
    }
    if mu.iter().any(|&m| !(m > 0.0) || !m.is_finite()) {
        return Err(Error::domain("the search needs positive weights"));
    }
    if a.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::degenerate("all coefficients are zero"));
    }
    Ok(())
}

/// Coordinate-wise multiplicative pattern search maximising `ratio`.
fn refine(a_abs: &[f64], mu: &[f64], p: f64, bounds: &[(f64, f64)], cfg: &SearchConfig, start: Vec<f64>) -> (f64, Vec<f64>) {
    let n = start.len();
    let mut x = start;
    let mut best = ratio(a_abs, mu, p, &x);
    let mut delta = 0.5;
    for _ in 0..cfg.local_steps {
        let before = x.clone();
        let mut improved = false;
        for i in 0..n {
            let (lo, hi) = bounds[i];
            let current = x[i];
            let moves = if current == 0.0 {
                [delta * hi, delta * hi * 0.5]
            } else {
                [current * (1.0 + delta), current * (1.0 - delta)]
            };
            for candidate in moves {
                let candidate = candidate.clamp(lo, hi);
                if candidate == current {
                    continue;
                }
                x[i] = candidate;
                let r = ratio(a_abs, mu, p, &x);
                if r > best {
                    best = r;
                    improved = true;
                    break;
                }
                x[i] = current;
            }
        }
        if improved {
            // extrapolate along the sweep's net move
            let jump: Vec<f64> = x
                .iter()
                .zip(&before)
                .zip(bounds)
                .map(|((&now, &then), &(lo, hi))| (2.0 * now - then).clamp(lo, hi))
                .collect();
            let r = ratio(a_abs, mu, p, &jump);
            if r > best {
                best = r;
                x = jump;
            }
        } else {
            delta *= cfg.step_decay;
            if delta < 1e-15 {
                break;
            }
        }
    }
    for _ in 0..cfg.local_steps {
        let before = best;
        for (i, &range) in bounds.iter().enumerate() {
            best = line_maximise(a_abs, mu, p, range, &mut x, i, best);
        }
        if best - before <= 1e-16 * best {
            break;
        }
    }
    (best, x)
}

/// Golden-section search over `ln x_i`, keeping the better of the result and
/// the current value.
fn line_maximise(a_abs: &[f64], mu: &[f64], p: f64, (lo, hi): (f64, f64), x: &mut [f64], i: usize, best: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let current = x[i];
    let eval = |t: f64, x: &mut [f64]| {
        x[i] = t.exp().clamp(lo, hi);
        ratio(a_abs, mu, p, x)
    };
    let (mut l, mut r) = ((lo.max(hi * 1e-15)).ln(), hi.ln());
    let mut m1 = r - INV_PHI * (r - l);
    let mut m2 = l + INV_PHI * (r - l);
    let (mut f1, mut f2) = (eval(m1, x), eval(m2, x));
    for _ in 0..80 {
        if f1 < f2 {
            l = m1;
            m1 = m2;
            f1 = f2;
            m2 = l + INV_PHI * (r - l);
            f2 = eval(m2, x);
        } else {
            r = m2;
            m2 = m1;
            f2 = f1;
            m1 = r - INV_PHI * (r - l);
            f1 = eval(m1, x);
        }
    }
    let (t, f) = if f1 >= f2 { (m1, f1) } else { (m2, f2) };
    if f > best {
        x[i] = t.exp().clamp(lo, hi);
        f
    } else {
        x[i] = current;
        best
    }
}

fn uniform_box(rng: &mut ChaCha8Rng, bounds: &[(f64, f64)]) -> Vec<f64> {
    bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect()
}

/// Maximises `|sum a_i x_i|^p / sum |x_i|^p / mu_i` by seeded random restarts
/// followed by local refinement of the best few starts. The returned point is
/// scaled so its largest coordinate is 1.
pub fn sharpness_search(mu: &[f64], a: &[Complex], exp: Exponent, cfg: &SearchConfig) -> Result<SharpnessResult> {
    validate_case_i(mu, a)?;
    cfg.validate()?;
    let bounds = cfg.bounds_for(mu.len())?;
    let a_abs = moduli(a);
    let p = exp.p();

    let starts: Vec<(f64, Vec<f64>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let x = uniform_box(&mut trial_rng(cfg.seed, t), &bounds);
            (ratio(&a_abs, mu, p, &x), x)
        })
        .collect();

    let mut order: Vec<usize> = (0..starts.len()).collect();
    order.sort_by(|&i, &j| starts[j].0.total_cmp(&starts[i].0).then(i.cmp(&j)));
    order.truncate(ELITE);

    let refined: Vec<(f64, Vec<f64>)> = order
        .par_iter()
        .map(|&i| refine(&a_abs, mu, p, &bounds, cfg, starts[i].1.clone()))
        .collect();

    let (best_ratio, x_best) = refined
        .into_iter()
        .reduce(|best, next| if next.0 > best.0 { next } else { best })
        .expect("at least one start");
    let top = x_best.iter().copied().fold(0.0, f64::max);
    let x_best = if top > 0.0 { x_best.iter().map(|v| v / top).collect() } else { x_best };
    Ok(SharpnessResult { best_ratio, x_best })
}

/// Searches for a point where the sharp inequality is an equality and
/// returns it scaled so its largest coordinate is 1.
pub fn equality_probe(mu: &[f64], a: &[Complex], exp: Exponent, cfg: &SearchConfig) -> Result<Vec<f64>> {
    let lambda_bar = sharp_lambda(mu, a, exp)?;
    let found = sharpness_search(mu, a, exp, cfg)?;
    let deficit = 1.0 - found.best_ratio / lambda_bar;
    if deficit.abs() > 1e-11 {
        return Err(Error::Convergence(format!(
            "best ratio {} is {deficit:e} away from lambda_bar {lambda_bar}",
            found.best_ratio
        )));
    }
    let top = found.x_best.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return Err(Error::Convergence("search collapsed to the origin".into()));
    }
    Ok(found.x_best.iter().map(|v| v / top).collect())
}

/// One random instance, as recorded in a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    pub p: f64,
    pub mu: Vec<f64>,
    pub a: Vec<Complex>,
    pub x: Vec<Complex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub trial: usize,
    pub check: &'static str,
    pub input: Instance,
    /// Relative margin, `margin / max(1, |lhs|, |rhs|)`.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub instances_tested: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    /// Smallest relative margin seen.
    pub worst_margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_ratio_found: Option<f64>,
}

impl CampaignReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }

    fn merge(results: Vec<TrialOutcome>) -> Self {
        let mut report = CampaignReport {
            instances_tested: results.len(),
            violation_count: 0,
            violations: Vec::new(),
            worst_margin: f64::INFINITY,
            best_ratio_found: None,
        };
        for outcome in results {
            report.worst_margin = report.worst_margin.min(outcome.worst_margin);
            if let Some(r) = outcome.ratio {
                report.best_ratio_found = Some(report.best_ratio_found.map_or(r, |b: f64| b.max(r)));
            }
            for v in outcome.violations {
                report.violation_count += 1;
                if report.violations.len() < MAX_RECORDED {
                    report.violations.push(v);
                }
            }
        }
        report
    }
}

struct TrialOutcome {
    worst_margin: f64,
    ratio: Option<f64>,
    violations: Vec<Violation>,
}

impl TrialOutcome {
    fn new() -> Self {
        TrialOutcome { worst_margin: f64::INFINITY, ratio: None, violations: Vec::new() }
    }

    fn record(&mut self, trial: usize, check: &'static str, margin: f64, input: impl FnOnce() -> Instance) {
        self.worst_margin = self.worst_margin.min(margin);
        if margin < -VIOLATION_THRESHOLD || margin.is_nan() {
            self.violations.push(Violation { trial, check, input: input(), margin });
        }
    }
}

fn random_modulus(rng: &mut ChaCha8Rng, range: (f64, f64)) -> f64 {
    rng.gen_range(range.0..=range.1)
}

/// Random complex numbers with given modulus range; half the draws keep
/// every phase at zero.
fn random_points(rng: &mut ChaCha8Rng, n: usize, range: (f64, f64)) -> Vec<Complex> {
    let phased = rng.gen_bool(0.5);
    (0..n)
        .map(|_| {
            let r = random_modulus(rng, range);
            if phased {
                Complex::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
            } else {
                Complex::new(r, 0.0)
            }
        })
        .collect()
}

/// Where `lambda` is placed relative to the admissible boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaPlacement {
    /// At the boundary and at a random strictly admissible value.
    Admissible,
    /// `factor` times the boundary value only. Factors that leave the
    /// admissible set turn the campaign into a counterexample hunt.
    Scaled(f64),
}

struct CaseInstance {
    mu: Vec<f64>,
    a: Vec<Complex>,
    boundary: f64,
}

fn sample_case(rng: &mut ChaCha8Rng, case: CaseLabel, n: usize, exp: Exponent) -> Option<CaseInstance> {
    // rejection sampling for the mixed cases; the cap is never hit for n <= 6
    for _ in 0..100_000 {
        let mut mu: Vec<f64> = (0..n).map(|_| random_modulus(rng, MU_RANGE)).collect();
        let a = random_points(rng, n, COEFF_RANGE);
        match case {
            CaseLabel::CaseI => {
                if let Ok(boundary) = sharp_lambda(&mu, &a, exp) {
                    return Some(CaseInstance { mu, a, boundary });
                }
            }
            CaseLabel::CaseII | CaseLabel::CaseIII => {
                let sign = if case == CaseLabel::CaseII { 1.0 } else { -1.0 };
                mu[0] *= sign;
                mu[1..].iter_mut().for_each(|m| *m *= -sign);
                if let Some(max) = case_ii_lambda_max(&mu, &a, exp) {
                    return Some(CaseInstance { mu, a, boundary: sign * max });
                }
            }
            CaseLabel::Unclassified => return None,
        }
    }
    None
}

fn case_margin(case: CaseLabel, sys: &WeightedSystem, lambda: f64) -> Result<(f64, f64)> {
    let r = match case {
        CaseLabel::CaseI => bounds::check_case_i(sys, lambda)?,
        CaseLabel::CaseII => bounds::check_case_ii(sys, lambda)?,
        CaseLabel::CaseIII => bounds::check_case_iii(sys, lambda)?,
        CaseLabel::Unclassified => return Err(Error::domain("unclassified case")),
    };
    let ratio = if r.lhs != 0.0 { r.rhs / r.lhs } else { 0.0 };
    Ok((r.relative_margin(), ratio))
}

/// Local search over moduli and phases of `x` that drives the margin down.
fn adversarial_climb(
    case: CaseLabel,
    sys: &mut WeightedSystem,
    lambda: f64,
    steps: usize,
    decay: f64,
) -> Result<(f64, f64)> {
    let n = sys.len();
    let (mut best, mut best_ratio) = case_margin(case, sys, lambda)?;
    let mut delta = 0.25;
    let mut improved_in_sweep = false;
    for k in 0..steps {
        let i = k % n;
        let current = sys.x.as_ref().expect("points")[i];
        let rot = Complex::from_polar(1.0, delta * std::f64::consts::PI);
        let candidates = [
            current * (1.0 + delta),
            current * (1.0 - delta),
            current * rot,
            current * rot.conj(),
        ];
        for cand in candidates {
            sys.x.as_mut().expect("points")[i] = cand;
            let (m, r) = case_margin(case, sys, lambda)?;
            if m < best {
                best = m;
                best_ratio = r;
                improved_in_sweep = true;
                break;
            }
            sys.x.as_mut().expect("points")[i] = current;
        }
        if i == n - 1 {
            if !improved_in_sweep {
                delta *= decay;
            }
            improved_in_sweep = false;
        }
    }
    Ok((best, best_ratio))
}

/// Random instances of one sign case, checked at the admissible boundary and
/// strictly inside it, each followed by an adversarial local search on `x`.
pub fn fuzz_case(case: CaseLabel, n: usize, exp: Exponent, cfg: &SearchConfig) -> Result<CampaignReport> {
    fuzz_case_with(case, n, exp, cfg, LambdaPlacement::Admissible)
}

pub fn fuzz_case_with(
    case: CaseLabel,
    n: usize,
    exp: Exponent,
    cfg: &SearchConfig,
    placement: LambdaPlacement,
) -> Result<CampaignReport> {
    cfg.validate()?;
    match case {
        CaseLabel::CaseI if n >= 1 => {}
        CaseLabel::CaseII | CaseLabel::CaseIII if n >= 2 => {}
        CaseLabel::Unclassified => return Err(Error::domain("cannot fuzz an unclassified case")),
        _ => return Err(Error::domain(format!("{case:?} needs more than {n} term(s)"))),
    }
    if let LambdaPlacement::Scaled(f) = placement {
        if !(f > 0.0) || !f.is_finite() {
            return Err(Error::domain("lambda scale factor must be positive"));
        }
    }
    let results: Result<Vec<TrialOutcome>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, trial);
            let inst = sample_case(&mut rng, case, n, exp)
                .ok_or_else(|| Error::Convergence("could not sample an admissible instance".into()))?;
            let x = random_points(&mut rng, n, POINT_RANGE);
            let lambdas = match placement {
                LambdaPlacement::Admissible => {
                    let inside = match case {
                        CaseLabel::CaseI => inst.boundary * (1.0 + rng.gen_range(1e-3..=1.0)),
                        _ => inst.boundary * rng.gen_range(1e-3..=0.999),
                    };
                    vec![inst.boundary, inside]
                }
                LambdaPlacement::Scaled(f) => vec![inst.boundary * f],
            };
            let mut outcome = TrialOutcome::new();
            for lambda in lambdas {
                let mut sys = WeightedSystem::new(exp, inst.a.clone(), inst.mu.clone())?.with_points(x.clone())?;
                let (margin, ratio) = adversarial_climb(case, &mut sys, lambda, cfg.local_steps, cfg.step_decay)?;
                if case == CaseLabel::CaseI {
                    outcome.ratio = Some(outcome.ratio.map_or(ratio, |r: f64| r.max(ratio)));
                }
                outcome.record(trial, "sign_case", margin, || Instance {
                    p: exp.p(),
                    mu: inst.mu.clone(),
                    a: inst.a.clone(),
                    x: sys.x.clone().unwrap_or_default(),
                    lambda: Some(lambda),
                });
            }
            Ok(outcome)
        })
        .collect();
    Ok(CampaignReport::merge(results?))
}

/// Random nonnegative instances for the superquadratic refinement.
///
/// For `p >= 2`: `main_term <= total <= lhs`, and at `p = 2` the identity
/// `lhs = total` to within `1e-12`. For `1 < p <= 2`: `0 <= gap <= upper`.
pub fn fuzz_refinement(n: usize, p: f64, cfg: &SearchConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    Exponent::new(p)?;
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let results: Result<Vec<TrialOutcome>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, trial);
            let mu: Vec<f64> = (0..n).map(|_| random_modulus(&mut rng, MU_RANGE)).collect();
            let mut a: Vec<f64> = (0..n).map(|_| random_modulus(&mut rng, COEFF_RANGE)).collect();
            let x: Vec<f64> = (0..n).map(|_| random_modulus(&mut rng, POINT_RANGE)).collect();
            if n > 1 && trial % 16 == 15 {
                a[rng.gen_range(0..n)] = 0.0;
            }
            let sys = WeightedSystem::real(p, &a, &mu, Some(&x))?;
            let instance = || Instance {
                p,
                mu: mu.clone(),
                a: crate::domain::to_complex(&a),
                x: crate::domain::to_complex(&x),
                lambda: None,
            };
            let mut outcome = TrialOutcome::new();
            let r = refined_bound(&sys)?;
            let scale = 1f64.max(r.lhs).max(r.total);
            if p >= 2.0 {
                outcome.record(trial, "total_below_lhs", (r.lhs - r.total) / scale, instance);
                outcome.record(trial, "main_below_total", (r.total - r.main_term) / scale, instance);
            }
            if p == 2.0 {
                let err = (r.lhs - r.total).abs() / r.lhs.max(f64::MIN_POSITIVE);
                // the identity is held to the algebraic tolerance, not the verdict one
                let margin = if err <= crate::domain::IDENTITY_TOL { 0.0 } else { -err.max(2.0 * VIOLATION_THRESHOLD) };
                outcome.record(trial, "identity", margin, instance);
            }
            if p <= 2.0 {
                let g = subquadratic_gap(&sys)?;
                outcome.record(trial, "gap_nonnegative", g.gap / scale, instance);
                outcome.record(trial, "gap_below_upper", (g.upper - g.gap) / scale, instance);
            }
            Ok(outcome)
        })
        .collect();
    Ok(CampaignReport::merge(results?))
}

/// A sharpness run packaged as a campaign: a violation is a ratio above the
/// closed-form constant.
pub fn sharpness_campaign(mu: &[f64], a: &[Complex], exp: Exponent, cfg: &SearchConfig) -> Result<(SharpnessResult, CampaignReport)> {
    let found = sharpness_search(mu, a, exp, cfg)?;
    let lambda_bar = sharp_lambda(mu, a, exp)?;
    let margin = (lambda_bar - found.best_ratio) / lambda_bar;
    let mut outcome = TrialOutcome::new();
    outcome.ratio = Some(found.best_ratio);
    outcome.record(0, "ratio_below_lambda_bar", margin, || Instance {
        p: exp.p(),
        mu: mu.to_vec(),
        a: a.to_vec(),
        x: crate::domain::to_complex(&found.x_best),
        lambda: Some(lambda_bar),
    });
    let mut report = CampaignReport::merge(vec![outcome]);
    report.instances_tested = cfg.trials;
    Ok((found, report))
}
