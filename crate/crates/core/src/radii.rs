//! Radii of λ-spirallikeness (`R₁`) and starlikeness (`R₂`) for the
//! Robertson class.

use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::Angle;
use crate::error::{Error, Result};
use crate::extremal::p_lambda_inverse;
use crate::optimize::bisect_threshold;
use crate::subordination::{psi, DEFAULT_GRID_N};
use num_complex::Complex64;

pub const DEFAULT_R1_TOL: f64 = 1e-10;

/// `√3 - 1`, the smallest value of `R₂` over all tilts.
pub const MIN_R2: f64 = 0.732_050_807_568_877_2;

/// Radius of close-to-convexity of the convex functions.
/// Reference value only; not computed here.
pub const CLOSE_TO_CONVEX_RADIUS_REFERENCE: f64 = 0.990_975_24;

/// Radius of convexity of the starlike functions, `√2/2`. Reference value only.
pub const CONVEXITY_RADIUS_REFERENCE: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusKind {
    R1,
    R2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub kind: RadiusKind,
    pub lambda: f64,
    pub value: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub iterations: u32,
    pub tol: f64,
}

/// `R₁(λ) = sup{r < 1 : ψ_λ(r) < 1}` by bisection on the increasing
/// function `ψ_λ`.
///
/// If `ψ_λ(1 - tol) < 1` the radius is reported as 1 with bracket
/// `[1 - tol, 1]`. The inner maximization runs at `refine_tol = tol / 100`.
pub fn radius_r1(a: Angle, tol: f64) -> Result<RadiusReport> {
    if !(tol > 0.0 && tol < 0.5) {
        return Err(Error::Argument(format!("radius_r1: tol = {tol} must be in (0, 0.5)")));
    }
    // ψ is even in λ; fixing the sign makes R₁(λ) = R₁(-λ) bit-for-bit.
    let a_abs = a.abs();
    let refine_tol = tol / 100.0;
    let below_one = |r: f64| -> Result<bool> { Ok(psi(a_abs, r, DEFAULT_GRID_N, refine_tol)?.value < 1.0) };

    let top = 1.0 - tol;
    if below_one(top)? {
        return Ok(RadiusReport {
            kind: RadiusKind::R1,
            lambda: a.radians(),
            value: 1.0,
            bracket_lo: top,
            bracket_hi: 1.0,
            iterations: 0,
            tol,
        });
    }
    if !below_one(0.0)? {
        return Err(Error::Internal("psi(0) >= 1: bisection is not bracketed".into()));
    }
    let b = bisect_threshold(below_one, 0.0, top, tol)?;
    Ok(RadiusReport {
        kind: RadiusKind::R1,
        lambda: a.radians(),
        value: 0.5 * (b.lo + b.hi),
        bracket_lo: b.lo,
        bracket_hi: b.hi,
        iterations: b.iterations,
        tol,
    })
}

/// `R₂(λ) = 2 / √(4 + 2√3 |sin 2λ|)`.
pub fn r2_value(a: Angle) -> f64 {
    2.0 / (4.0 + 2.0 * 3f64.sqrt() * (2.0 * a.radians()).sin().abs()).sqrt()
}

pub fn radius_r2(a: Angle) -> RadiusReport {
    let value = r2_value(a);
    RadiusReport {
        kind: RadiusKind::R2,
        lambda: a.radians(),
        value,
        bracket_lo: value,
        bracket_hi: value,
        iterations: 0,
        tol: 0.0,
    }
}

/// The minimum of `R₂` over the tilt range: `(π/4, √3 - 1)`, also attained at
/// `-π/4`.
pub fn min_radius_r2() -> (f64, f64) {
    (FRAC_PI_4, 3f64.sqrt() - 1.0)
}

/// Minimizes `R₂` over `n` equispaced tilts strictly inside `(-π/2, π/2)`.
/// Returns the first minimizing tilt and the minimum.
pub fn grid_min_radius_r2(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::Argument("grid_min_radius_r2: need at least 2 points".into()));
    }
    let half = std::f64::consts::FRAC_PI_2;
    let mut best = (0.0, f64::INFINITY);
    for k in 0..n {
        let l = -half + std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
        let v = r2_value(Angle::new(l)?);
        if v < best.1 {
            best = (l, v);
        }
    }
    Ok(best)
}

/// `min_t |P_λ⁻¹(it)| - R₂(λ)` over a grid of `|t| ≥ √3`.
///
/// On the imaginary axis `|P_λ⁻¹(it)|² = (t² + 1)/(t² + 1 + 2t sin 2λ)`, whose
/// minimum over `|t| ≥ √3` is `R₂(λ)²`, attained at `t = sign(sin 2λ) √3`.
/// A non-negative margin means `P_λ(|z| < R₂)` misses the part of the
/// imaginary axis with `|t| ≥ √3`.
pub fn omega_avoidance_margin(a: Angle, t_grid: &[f64]) -> Result<f64> {
    if t_grid.is_empty() {
        return Err(Error::Argument("omega_avoidance_margin: empty t grid".into()));
    }
    let sqrt3 = 3f64.sqrt();
    if let Some(t) = t_grid.iter().find(|t| !(t.abs() >= sqrt3)) {
        return Err(Error::Argument(format!("omega_avoidance_margin: |t| = {} < sqrt(3)", t.abs())));
    }
    let r2 = r2_value(a);
    let mut margin = f64::INFINITY;
    for &t in t_grid {
        let z = p_lambda_inverse(a, Complex64::new(0.0, t))?;
        margin = margin.min(z.norm() - r2);
    }
    Ok(margin)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusRow {
    pub lambda: f64,
    pub r1: f64,
    pub r2: f64,
}

/// `(λ, R₁, R₂)` for every tilt, in input order. Rows are computed in
/// parallel.
pub fn radius_table(lambda_grid: &[Angle], tol: f64) -> Result<Vec<RadiusRow>> {
    if lambda_grid.is_empty() {
        return Err(Error::Argument("radius_table: empty lambda grid".into()));
    }
    lambda_grid
        .par_iter()
        .map(|&a| Ok(RadiusRow { lambda: a.radians(), r1: radius_r1(a, tol)?.value, r2: r2_value(a) }))
        .collect()
}
