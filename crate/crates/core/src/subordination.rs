//! Boundary maximization of `|P_λ⁻¹(Q_λ(r e^{iθ}))| / r` and numerical
//! subordination tests.
//!
//! `Q_λ(r·) ≺ P_λ(r·)` on the unit disc exactly when the Schwarz-type map
//! `z ↦ P_λ⁻¹(Q_λ(rz)) / r` sends the disc into itself, which by the maximum
//! principle is the statement `psi(λ, r) < 1`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{Angle, DiscPoint};
use crate::error::{Error, Result};
use crate::extremal::{f_lambda_zero_radius, p_lambda_inverse, q_lambda};
use crate::optimize::golden_section_max;
use crate::samples::{RobertsonSample, DEFAULT_QUAD_TOL};

pub const DEFAULT_GRID_N: usize = 2048;
pub const MIN_GRID_N: usize = 64;

/// Distance from the unit circle of the curve used to approximate `Q_λ(𝔻)`.
pub const CURVE_DELTA: f64 = 1e-3;
pub const DEFAULT_CURVE_N: usize = 4096;

/// Number of boundary points of `|z| = ρ` tested by [`check_q_subordination`].
pub const SUBORDINATION_TEST_POINTS: usize = 256;

/// Points closer than this to a boundary curve are reported as indeterminate.
pub const NEAR_CURVE_TOL: f64 = 1e-10;

/// How many grid local maxima are refined by golden-section search.
const MAX_REFINED_PEAKS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubordinationVerdict {
    pub holds: bool,
    /// Argument in `[0, 2π)` of the boundary point with the smallest margin.
    pub witness_theta: f64,
    /// Signed distance to failure; positive iff `holds`.
    pub margin: f64,
}

impl SubordinationVerdict {
    fn from_margin(margin: f64, witness_theta: f64) -> Self {
        SubordinationVerdict { holds: margin > 0.0, witness_theta, margin }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiValue {
    pub value: f64,
    pub witness_theta: f64,
}

/// `|P_λ⁻¹(Q_λ(r e^{iθ}))| / r`; `+∞` at a pole of the inverse map.
fn psi_integrand(a: Angle, r: f64, theta: f64) -> f64 {
    let z = DiscPoint::new_unchecked(Complex64::from_polar(r, theta));
    match p_lambda_inverse(a, q_lambda(a, z)) {
        Ok(w) => w.norm() / r,
        Err(_) => f64::INFINITY,
    }
}

/// Points of `[0, 2π)` clustered around `θ = 0` on the scale `width`:
/// `θ = width · sinh(u)` for `u` uniform on `[-U, U)`, `width · sinh(U) = π`.
/// Consecutive points are spaced proportionally to `|1 - (1 - width) e^{iθ}|`,
/// the distance to the boundary singularity of `Q_λ` at `z = 1`.
pub fn graded_thetas(n: usize, width: f64) -> Vec<f64> {
    let big_u = (PI / width).asinh();
    let step = 2.0 * big_u / n as f64;
    let mut thetas: Vec<f64> = (0..n)
        .map(|k| {
            let theta = width * (-big_u + step * k as f64).sinh();
            if theta < 0.0 {
                theta + TAU
            } else {
                theta
            }
        })
        .filter(|t| (0.0..TAU).contains(t))
        .collect();
    thetas.sort_by(f64::total_cmp);
    thetas.dedup();
    thetas
}

fn psi_grid(r: f64, grid_n: usize) -> Vec<f64> {
    let mut thetas: Vec<f64> = (0..grid_n).map(|j| TAU * j as f64 / grid_n as f64).collect();
    // Near r = 1 the integrand develops structure at θ ≈ 0 on the scale 1 - r.
    thetas.extend(graded_thetas(grid_n / 4, 1.0 - r));
    thetas.sort_by(f64::total_cmp);
    thetas.dedup();
    thetas
}

/// `ψ_λ(r) = max_θ |P_λ⁻¹(Q_λ(r e^{iθ}))| / r`.
///
/// Dense scan over `grid_n` equispaced angles (plus a cluster near `θ = 0`),
/// then golden-section refinement of the largest grid peaks to bracket width
/// `refine_tol`. `ψ(λ, 0)` is the analytic limit `1/2`.
pub fn psi(a: Angle, r: f64, grid_n: usize, refine_tol: f64) -> Result<PsiValue> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("psi: r = {r} not in [0, 1)")));
    }
    if grid_n < MIN_GRID_N {
        return Err(Error::Argument(format!("psi: grid_n = {grid_n} < {MIN_GRID_N}")));
    }
    if !(refine_tol > 0.0) {
        return Err(Error::Argument(format!("psi: refine_tol = {refine_tol} must be > 0")));
    }
    if r == 0.0 {
        return Ok(PsiValue { value: 0.5, witness_theta: 0.0 });
    }

    let thetas = psi_grid(r, grid_n);
    let values: Vec<f64> = thetas.iter().map(|&t| psi_integrand(a, r, t)).collect();
    let n = thetas.len();

    if let Some(j) = values.iter().position(|v| v.is_infinite()) {
        return Ok(PsiValue { value: f64::INFINITY, witness_theta: thetas[j] });
    }

    let mut peaks: Vec<usize> = (0..n)
        .filter(|&j| {
            let prev = values[(j + n - 1) % n];
            let next = values[(j + 1) % n];
            values[j] >= prev && values[j] >= next
        })
        .collect();
    peaks.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    peaks.truncate(MAX_REFINED_PEAKS);

    let mut candidates: Vec<(f64, f64)> = Vec::with_capacity(peaks.len() + 1);
    for &j in &peaks {
        let mut lo = thetas[(j + n - 1) % n];
        let mut hi = thetas[(j + 1) % n];
        if lo > thetas[j] {
            lo -= TAU;
        }
        if hi < thetas[j] {
            hi += TAU;
        }
        let (t, v) = golden_section_max(|t| psi_integrand(a, r, t), lo, hi, refine_tol);
        let (t, v) = if v >= values[j] { (t, v) } else { (thetas[j], values[j]) };
        candidates.push((t.rem_euclid(TAU), v));
    }

    let best = candidates.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let witness_theta =
        candidates.iter().filter(|c| c.1 >= best - refine_tol).map(|c| c.0).fold(f64::INFINITY, f64::min);
    Ok(PsiValue { value: best, witness_theta })
}

/// Half-plane criterion for subordination to `P_λ`: margin is
/// `min Re(e^{-iλ} w)` over `values`, which are assumed to be equispaced
/// samples of a circle `|z| = ρ` starting at `θ = 0`.
pub fn is_subordinate_to_halfplane(values: &[Complex64], a: Angle) -> Result<SubordinationVerdict> {
    if values.is_empty() {
        return Err(Error::Argument("is_subordinate_to_halfplane: no samples".into()));
    }
    let rot = a.rotation().conj();
    let (idx, margin) =
        values
            .iter()
            .map(|w| (rot * w).re)
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, m)| if m < acc.1 { (i, m) } else { acc });
    Ok(SubordinationVerdict::from_margin(margin, TAU * idx as f64 / values.len() as f64))
}

/// A closed curve sampled at strictly increasing parameters in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    samples: Vec<(f64, Complex64)>,
    closed: bool,
}

impl BoundaryCurve {
    pub fn new(samples: Vec<(f64, Complex64)>, closed: bool) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::Argument("a boundary curve needs at least 3 samples".into()));
        }
        if samples.iter().any(|(t, w)| !(0.0..TAU).contains(t) || !w.re.is_finite() || !w.im.is_finite()) {
            return Err(Error::Argument("curve parameters must lie in [0, 2pi) with finite values".into()));
        }
        if samples.windows(2).any(|p| p[1].0 <= p[0].0) {
            return Err(Error::Argument("curve parameters must be strictly increasing".into()));
        }
        Ok(BoundaryCurve { samples, closed })
    }

    pub fn from_fn<F: FnMut(f64) -> Complex64>(thetas: &[f64], mut f: F) -> Result<Self> {
        Self::new(thetas.iter().map(|&t| (t, f(t))).collect(), true)
    }

    pub fn uniform<F: FnMut(f64) -> Complex64>(n: usize, f: F) -> Result<Self> {
        let thetas: Vec<f64> = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
        Self::from_fn(&thetas, f)
    }

    /// `Q_λ(ρ e^{iθ})` sampled on angles graded towards the boundary
    /// singularity at `θ = 0`.
    pub fn q_lambda_image(a: Angle, rho: f64, n: usize) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::Domain(format!("curve radius {rho} not in (0, 1)")));
        }
        let thetas = graded_thetas(n, 1.0 - rho);
        Self::from_fn(&thetas, |t| q_lambda(a, DiscPoint::new_unchecked(Complex64::from_polar(rho, t))))
    }

    pub fn samples(&self) -> &[(f64, Complex64)] {
        &self.samples
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let n = self.samples.len();
        (0..n).map(move |i| (self.samples[i].1, self.samples[(i + 1) % n].1))
    }

    /// Winding number about `point` and the distance from `point` to the
    /// polygon through the samples.
    pub fn locate(&self, point: Complex64) -> (i64, f64) {
        let mut turn = 0.0;
        let mut dist = f64::INFINITY;
        for (p, q) in self.segments() {
            let u = p - point;
            let v = q - point;
            turn += (u.re * v.im - u.im * v.re).atan2(u.re * v.re + u.im * v.im);
            dist = dist.min(segment_distance(point, p, q));
        }
        ((turn / TAU).round() as i64, dist)
    }

    pub fn winding_number(&self, point: Complex64) -> i64 {
        self.locate(point).0
    }
}

fn segment_distance(x: Complex64, p: Complex64, q: Complex64) -> f64 {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (x - p).norm();
    }
    let t = (((x - p) * d.conj()).re / len2).clamp(0.0, 1.0);
    (x - (p + d * t)).norm()
}

/// True iff the curve winds around `point` (winding number ≠ 0).
///
/// For the image of a circle under a function analytic on the closed disc it
/// bounds, the winding number counts the solutions of `Q(z) = point` inside,
/// so non-zero winding is exactly membership even where the image is covered
/// more than once.
pub fn region_membership(point: Complex64, boundary: &BoundaryCurve, near_tol: f64) -> Result<bool> {
    if !boundary.closed {
        return Err(Error::Argument("region_membership needs a closed curve".into()));
    }
    let (winding, distance) = boundary.locate(point);
    if distance <= near_tol {
        return Err(Error::Indeterminate { point, distance });
    }
    Ok(winding != 0)
}

/// Radius of the circle whose `Q_λ` image approximates `Q_λ(𝔻)` when testing
/// points of `Q_f(|z| = ρ)`.
///
/// Normally `1 - CURVE_DELTA`, pushed outward to `(1 + ρ)/2` when `ρ` comes
/// within `CURVE_DELTA` of it. When `Q_λ` has poles in the disc (zeros of
/// `f_λ`, see [`f_lambda_zero_radius`]) the circle is pulled inside the first
/// pole, to `(ρ + r_pole)/2`, so that the winding number keeps counting
/// preimages.
pub fn curve_radius(a: Angle, rho: f64) -> f64 {
    let r = (1.0 - CURVE_DELTA).max(0.5 * (1.0 + rho));
    match f_lambda_zero_radius(a) {
        Some(pole) if pole <= r => 0.5 * (rho + pole),
        _ => r,
    }
}

/// Tests boundary values `(θ, w)` for membership in the region enclosed by
/// `curve`. Margin is the smallest distance to the curve, negated for points
/// outside it.
pub fn check_membership(values: &[(f64, Complex64)], curve: &BoundaryCurve) -> Result<SubordinationVerdict> {
    if values.is_empty() {
        return Err(Error::Argument("check_membership: no points".into()));
    }
    let mut margin = f64::INFINITY;
    let mut witness = 0.0;
    for &(theta, w) in values {
        let (winding, distance) = curve.locate(w);
        if distance <= NEAR_CURVE_TOL {
            return Err(Error::Indeterminate { point: w, distance });
        }
        let signed = if winding != 0 { distance } else { -distance };
        if signed < margin {
            margin = signed;
            witness = theta;
        }
    }
    Ok(SubordinationVerdict::from_margin(margin, witness))
}

/// `Q_f(ρ e^{iθ_j})` at `SUBORDINATION_TEST_POINTS` equispaced angles.
pub fn q_of_f_on_circle(f: &RobertsonSample, rho: f64, n: usize, tol: f64) -> Result<Vec<(f64, Complex64)>> {
    (0..n)
        .map(|j| {
            let theta = TAU * j as f64 / n as f64;
            let z = DiscPoint::from_polar(rho, theta)?;
            Ok((theta, f.q_of_f(z, tol)?))
        })
        .collect()
}

/// Numerical test of `Q_f(ρ·) ≺ Q_λ`: every sampled value of `Q_f` on
/// `|z| = ρ` must lie inside the image of the circle of radius
/// [`curve_radius`]`(ρ)` under `Q_λ`, sampled at `curve_n` points.
///
/// This approximates subordination; it becomes exact only as the curve
/// radius tends to 1 (or to the first pole of `Q_λ`). The caller is
/// responsible for `ρ < R₁(λ)`.
pub fn check_q_subordination(f: &RobertsonSample, a: Angle, rho: f64, curve_n: usize) -> Result<SubordinationVerdict> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Domain(format!("check_q_subordination: rho = {rho} not in (0, 1)")));
    }
    let curve = BoundaryCurve::q_lambda_image(a, curve_radius(a, rho), curve_n)?;
    let values = q_of_f_on_circle(f, rho, SUBORDINATION_TEST_POINTS, DEFAULT_QUAD_TOL)?;
    check_membership(&values, &curve)
}
