//! Seeded, randomized checks of the radius theorems against exact Robertson
//! samples, with JSON reports.
//!
//! Every harness declares the numerical slack it tolerates (`slack`); a run
//! passes when `min_margin > -slack`. Trials are evaluated in parallel and
//! merged by (smallest margin, smallest trial index), so reports do not
//! depend on thread count or scheduling.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Angle, DiscPoint};
use crate::error::{Error, Result};
use crate::extremal::{caratheodory_disc, p_lambda, q_lambda};
use crate::radii::{r2_value, radius_r1, DEFAULT_R1_TOL};
use crate::samples::{
    eval_caratheodory, rng_from_seed, sample_measure, tilt, HerglotzMeasure, RobertsonSample, DEFAULT_QUAD_TOL,
    MAX_ATOMS,
};
use crate::subordination::{check_membership, curve_radius, q_of_f_on_circle, BoundaryCurve, DEFAULT_CURVE_N};

pub const SCHEMA_VERSION: &str = "v1";

/// Slack for strict half-plane and disc inequalities.
pub const HALF_PLANE_SLACK: f64 = 1e-9;
/// Residual bound for finite-difference identities.
pub const IDENTITY_TOL: f64 = 1e-6;
pub const IDENTITY_FD_STEP: f64 = 1e-5;
pub const NUNOKAWA_SLACK: f64 = 1e-12;

pub const DEFAULT_SAFETY: f64 = 0.999;
/// Angles per circle for the spirallikeness and starlikeness harnesses.
pub const CIRCLE_POINTS: usize = 256;
const LEMMA1_ANGLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Lemma1,
    Theorem1,
    Corollary1,
    Theorem2,
    DifferentialIdentity,
    NunokawaBound,
}

/// Where the smallest margin occurred.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: Option<u64>,
    pub measure: Option<HerglotzMeasure>,
    pub z_re: f64,
    pub z_im: f64,
}

impl Witness {
    fn point(z: Complex64) -> Self {
        Witness { trial: None, measure: None, z_re: z.re, z_im: z.im }
    }

    fn trial(trial: u64, measure: &HerglotzMeasure, z: Complex64) -> Self {
        Witness { trial: Some(trial), measure: Some(measure.clone()), z_re: z.re, z_im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub claim: Claim,
    pub lambda: f64,
    pub trials: u64,
    pub seed: u64,
    /// Circle radius tested, where the claim has one.
    pub radius: Option<f64>,
    pub slack: f64,
    pub min_margin: f64,
    pub worst_witness: Option<Witness>,
    /// Smallest signed distance to the `Q_λ` image curve (`corollary1` runs only).
    pub subordination_margin: Option<f64>,
    pub passed: bool,
}

impl VerificationReport {
    fn new(claim: Claim, lambda: f64, trials: u64, seed: u64, radius: Option<f64>, slack: f64, min: TrialMin) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION.to_string(),
            claim,
            lambda,
            trials,
            seed,
            radius,
            slack,
            min_margin: min.margin,
            worst_witness: min.witness,
            subordination_margin: None,
            passed: min.margin > -slack,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

#[derive(Debug, Clone)]
struct TrialMin {
    margin: f64,
    witness: Option<Witness>,
}

impl TrialMin {
    fn empty() -> Self {
        TrialMin { margin: f64::INFINITY, witness: None }
    }

    /// Keeps the earlier entry on ties, so folding in trial order breaks ties
    /// by smallest trial index.
    fn merge(self, other: TrialMin) -> TrialMin {
        if other.margin < self.margin {
            other
        } else {
            self
        }
    }
}

/// The measures drawn for a seeded run: trial `i` uses an atom count in
/// `1..=MAX_ATOMS` and a sub-seed, both taken in order from one ChaCha8
/// stream seeded with `seed`.
pub fn trial_measures(seed: u64, trials: u64) -> Result<Vec<HerglotzMeasure>> {
    let mut master = rng_from_seed(seed);
    (0..trials)
        .map(|_| {
            let n_atoms = master.random_range(1..=MAX_ATOMS);
            let sub_seed = master.next_u64();
            sample_measure(sub_seed, n_atoms)
        })
        .collect()
}

fn check_trials(trials: u64) -> Result<()> {
    if trials < 1 {
        return Err(Error::Argument("trials must be >= 1".into()));
    }
    Ok(())
}

fn check_safety(safety: f64) -> Result<()> {
    if !(safety > 0.0 && safety < 1.0) {
        return Err(Error::Argument(format!("safety = {safety} must be in (0, 1)")));
    }
    Ok(())
}

fn run_trials<F>(measures: &[HerglotzMeasure], per_trial: F) -> Result<TrialMin>
where
    F: Fn(u64, &HerglotzMeasure) -> Result<TrialMin> + Sync,
{
    let results: Vec<TrialMin> =
        measures.par_iter().enumerate().map(|(i, m)| per_trial(i as u64, m)).collect::<Result<_>>()?;
    Ok(results.into_iter().fold(TrialMin::empty(), TrialMin::merge))
}

/// Smallest `B(r) - |p(z) - A(r)|` for `p = tilt(λ, h_m)` over
/// `r ∈ {0.1, …, 0.9}` and 64 angles per circle, with the point attaining it.
pub fn lemma1_margin(a: Angle, m: &HerglotzMeasure) -> Result<(f64, Complex64)> {
    let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for i in 1..=9 {
        let r = i as f64 / 10.0;
        let disc = caratheodory_disc(a, r)?;
        for j in 0..LEMMA1_ANGLES {
            let z = DiscPoint::from_polar(r, TAU * j as f64 / LEMMA1_ANGLES as f64)?;
            let p = tilt(a, eval_caratheodory(m, z));
            let margin = disc.margin(p);
            if margin < best.0 {
                best = (margin, z.value());
            }
        }
    }
    Ok(best)
}

/// `|p(z) - A(r)| ≤ B(r)` on `|z| = r` for random members of the tilted
/// Carathéodory class.
pub fn verify_lemma1(a: Angle, trials: u64, seed: u64) -> Result<VerificationReport> {
    check_trials(trials)?;
    let measures = trial_measures(seed, trials)?;
    let min = run_trials(&measures, |i, m| {
        let (margin, z) = lemma1_margin(a, m)?;
        Ok(TrialMin { margin, witness: Some(Witness::trial(i, m, z)) })
    })?;
    Ok(VerificationReport::new(Claim::Lemma1, a.radians(), trials, seed, None, HALF_PLANE_SLACK, min))
}

/// Smallest `Re(rotation · Q_f)` on a circle.
fn q_half_plane_min(values: &[(f64, Complex64)], rotation: Complex64, rho: f64) -> (f64, Complex64) {
    values
        .iter()
        .map(|&(t, q)| ((rotation * q).re, Complex64::from_polar(rho, t)))
        .fold((f64::INFINITY, Complex64::new(0.0, 0.0)), |acc, x| if x.0 < acc.0 { x } else { acc })
}

/// λ-spirallikeness on `|z| = safety · R₁(λ)`: `Re(e^{-iλ} Q_f) > 0`.
///
/// With `subordination` set, additionally checks that `Q_f` of the same circle
/// lies inside the `Q_λ` image curve (the subordination form of the claim); the
/// report's claim is then `Corollary1`.
pub fn verify_theorem1(
    a: Angle,
    trials: u64,
    seed: u64,
    safety: f64,
    subordination: bool,
) -> Result<VerificationReport> {
    check_trials(trials)?;
    check_safety(safety)?;
    let r1 = radius_r1(a, DEFAULT_R1_TOL)?.value;
    let rho = safety * r1;
    let rotation = a.rotation().conj();
    let curve = if subordination {
        Some(BoundaryCurve::q_lambda_image(a, curve_radius(a, rho), DEFAULT_CURVE_N)?)
    } else {
        None
    };
    let measures = trial_measures(seed, trials)?;

    let results: Vec<(TrialMin, f64)> = measures
        .par_iter()
        .enumerate()
        .map(|(i, m)| {
            let f = RobertsonSample::new(a, m.clone());
            let values = q_of_f_on_circle(&f, rho, CIRCLE_POINTS, DEFAULT_QUAD_TOL)?;
            let (margin, z) = q_half_plane_min(&values, rotation, rho);
            let sub = match &curve {
                Some(c) => check_membership(&values, c)?.margin,
                None => f64::INFINITY,
            };
            Ok((TrialMin { margin, witness: Some(Witness::trial(i as u64, m, z)) }, sub))
        })
        .collect::<Result<_>>()?;

    let sub_margin = results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let min = results.into_iter().map(|r| r.0).fold(TrialMin::empty(), TrialMin::merge);
    let claim = if subordination { Claim::Corollary1 } else { Claim::Theorem1 };
    let mut report = VerificationReport::new(claim, a.radians(), trials, seed, Some(rho), HALF_PLANE_SLACK, min);
    if subordination {
        report.subordination_margin = Some(sub_margin);
        report.passed &= sub_margin > 0.0;
    }
    Ok(report)
}

/// Starlikeness on `|z| = radius`: smallest `Re Q_f` over the trials.
fn starlike_run(a: Angle, trials: u64, seed: u64, radius: f64, angles: usize) -> Result<TrialMin> {
    let measures = trial_measures(seed, trials)?;
    run_trials(&measures, |i, m| {
        let f = RobertsonSample::new(a, m.clone());
        let values = q_of_f_on_circle(&f, radius, angles, DEFAULT_QUAD_TOL)?;
        let (margin, z) = q_half_plane_min(&values, Complex64::new(1.0, 0.0), radius);
        Ok(TrialMin { margin, witness: Some(Witness::trial(i, m, z)) })
    })
}

/// Starlikeness on `|z| = safety · R₂(λ)`: `Re Q_f > 0`.
pub fn verify_theorem2(a: Angle, trials: u64, seed: u64, safety: f64) -> Result<VerificationReport> {
    check_trials(trials)?;
    check_safety(safety)?;
    let rho = safety * r2_value(a);
    let min = starlike_run(a, trials, seed, rho, CIRCLE_POINTS)?;
    Ok(VerificationReport::new(Claim::Theorem2, a.radians(), trials, seed, Some(rho), HALF_PLANE_SLACK, min))
}

/// Result of searching for a starlikeness violation beyond `R₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsificationReport {
    pub schema: String,
    pub claim: Claim,
    pub lambda: f64,
    pub radius: f64,
    pub seed: u64,
    pub searched: u64,
    /// `"found"` or `"none found"`; the latter is not a proof of anything.
    pub outcome: String,
    pub min_margin: f64,
    pub witness: Option<Witness>,
}

/// Searches seeded samples for a point of `|z| = safety · 1` with
/// `Re Q_f < -HALF_PLANE_SLACK`, i.e. a failure of starlikeness outside the
/// guaranteed radius.
pub fn falsify_theorem2(a: Angle, trials: u64, seed: u64, safety: f64) -> Result<FalsificationReport> {
    check_trials(trials)?;
    check_safety(safety)?;
    let radius = safety;
    let min = starlike_run(a, trials, seed, radius, 4 * CIRCLE_POINTS)?;
    let found = min.margin < -HALF_PLANE_SLACK;
    Ok(FalsificationReport {
        schema: SCHEMA_VERSION.to_string(),
        claim: Claim::Theorem2,
        lambda: a.radians(),
        radius,
        seed,
        searched: trials,
        outcome: if found { "found" } else { "none found" }.to_string(),
        min_margin: min.margin,
        witness: min.witness,
    })
}

/// `|Q_λ + z Q_λ'/Q_λ - P_λ|` with `Q_λ'` by a central difference of step `h`.
pub fn differential_identity_residual(a: Angle, z: DiscPoint, h: f64) -> Result<f64> {
    let zv = z.value();
    let step = Complex64::new(h, 0.0);
    let qp = q_lambda(a, DiscPoint::new(zv + step)?);
    let qm = q_lambda(a, DiscPoint::new(zv - step)?);
    let dq = (qp - qm) / (2.0 * h);
    let q = q_lambda(a, z);
    Ok((q + zv * dq / q - p_lambda(a, z)).norm())
}

/// Residual of `Q_λ + z Q_λ'/Q_λ = P_λ` on a polar `grid_n × grid_n` grid of
/// `|z| ≤ 0.9`. `min_margin = IDENTITY_TOL - max residual`.
pub fn verify_differential_identity(a: Angle, grid_n: usize) -> Result<VerificationReport> {
    if grid_n < 16 {
        return Err(Error::Argument(format!("grid_n = {grid_n} < 16")));
    }
    let mut worst = (0.0f64, Complex64::new(0.0, 0.0));
    for i in 0..grid_n {
        let r = 0.9 * i as f64 / (grid_n - 1) as f64;
        for j in 0..grid_n {
            let z = DiscPoint::from_polar(r, TAU * j as f64 / grid_n as f64)?;
            let res = differential_identity_residual(a, z, IDENTITY_FD_STEP)?;
            if res > worst.0 {
                worst = (res, z.value());
            }
        }
    }
    let min = TrialMin { margin: IDENTITY_TOL - worst.0, witness: Some(Witness::point(worst.1)) };
    let mut report = VerificationReport::new(
        Claim::DifferentialIdentity,
        a.radians(),
        (grid_n * grid_n) as u64,
        0,
        Some(0.9),
        0.0,
        min,
    );
    report.passed = report.min_margin > 0.0;
    Ok(report)
}

/// `|a + (a + 1/a)/2| = |3a + 1/a| / 2 ≥ √3` on a grid of non-zero reals.
///
/// The witness is the grid point with the smallest margin (stored as
/// `z_re`); over `a > 0` the exact minimizer is `1/√3`. The report's
/// `lambda` is 0: the bound does not depend on the tilt.
pub fn verify_nunokawa_bound(a_grid: &[f64]) -> Result<VerificationReport> {
    if a_grid.is_empty() {
        return Err(Error::Argument("verify_nunokawa_bound: empty grid".into()));
    }
    if let Some(x) = a_grid.iter().find(|x| **x == 0.0 || !x.is_finite()) {
        return Err(Error::Argument(format!("verify_nunokawa_bound: a = {x} is not a nonzero real")));
    }
    let sqrt3 = 3f64.sqrt();
    let (margin, arg) = a_grid
        .iter()
        .map(|&x| ((3.0 * x + 1.0 / x).abs() / 2.0 - sqrt3, x))
        .fold((f64::INFINITY, 0.0), |acc, v| if v.0 < acc.0 { v } else { acc });
    let min = TrialMin { margin, witness: Some(Witness::point(Complex64::new(arg, 0.0))) };
    Ok(VerificationReport::new(Claim::NunokawaBound, 0.0, a_grid.len() as u64, 0, None, NUNOKAWA_SLACK, min))
}
