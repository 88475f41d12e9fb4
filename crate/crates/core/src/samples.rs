//! Exact members of the tilted Carathéodory class and the Robertson class
//! built from finite-atom Herglotz measures.
//!
//! A probability measure with atoms `(w_k, x_k)`, `|x_k| = 1`, gives the
//! Carathéodory function `h(z) = Σ w_k (1 + x_k z)/(1 - x_k z)`. Tilting it,
//! `p = e^{iλ}(cos λ · h - i sin λ) = 1 + c Σ w_k x_k z/(1 - x_k z)` with
//! `c = 2 e^{iλ} cos λ`, and integrating `(p - 1)/z` gives
//!
//! ```text
//! f'(z) = Π_k (1 - x_k z)^{-c w_k}
//! ```
//!
//! so `1 + z f''/f' = p` holds exactly.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{principal_log, Angle, DiscPoint};
use crate::error::{Error, Result};
use crate::extremal::{log_derivative_quotient_series, SERIES_THRESHOLD};
use crate::quadrature;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default quadrature tolerance for [`RobertsonSample::f_value`].
pub const DEFAULT_QUAD_TOL: f64 = 1e-12;

/// Largest atom count drawn by the verification harnesses.
pub const MAX_ATOMS: usize = 8;

/// Seedable generator used for every random draw in this crate.
pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    #[serde(rename = "w")]
    pub weight: f64,
    /// Argument of the atom's unit-circle point.
    pub theta: f64,
}

impl Atom {
    #[inline]
    pub fn point(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }
}

/// Probability measure on the unit circle with finitely many atoms.
///
/// JSON form: `{"atoms": [{"w": 0.25, "theta": 1.5}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure")]
pub struct HerglotzMeasure {
    atoms: Vec<Atom>,
}

#[derive(Deserialize)]
struct RawMeasure {
    atoms: Vec<Atom>,
}

impl TryFrom<RawMeasure> for HerglotzMeasure {
    type Error = Error;
    fn try_from(raw: RawMeasure) -> Result<Self> {
        HerglotzMeasure::new(raw.atoms)
    }
}

impl HerglotzMeasure {
    const WEIGHT_SUM_TOL: f64 = 1e-14;

    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Argument("a Herglotz measure needs at least one atom".into()));
        }
        if let Some(a) = atoms.iter().find(|a| !(a.weight >= 0.0) || !a.theta.is_finite()) {
            return Err(Error::Argument(format!("invalid atom {a:?}")));
        }
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        if (total - 1.0).abs() > Self::WEIGHT_SUM_TOL {
            return Err(Error::Argument(format!("atom weights sum to {total}, expected 1")));
        }
        Ok(HerglotzMeasure { atoms })
    }

    /// Unit point mass at `e^{iθ}`.
    pub fn point_mass(theta: f64) -> Self {
        HerglotzMeasure { atoms: vec![Atom { weight: 1.0, theta }] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measure serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Argument(format!("bad measure JSON: {e}")))
    }
}

/// Draws a measure with `n_atoms` atoms: weights uniform on the simplex
/// (normalized unit exponentials), points uniform on the circle.
pub fn sample_measure(seed: u64, n_atoms: usize) -> Result<HerglotzMeasure> {
    let mut rng = rng_from_seed(seed);
    sample_measure_with(&mut rng, n_atoms)
}

pub fn sample_measure_with<R: Rng>(rng: &mut R, n_atoms: usize) -> Result<HerglotzMeasure> {
    if n_atoms < 1 {
        return Err(Error::Argument("n_atoms must be >= 1".into()));
    }
    let mut atoms: Vec<Atom> = (0..n_atoms)
        .map(|_| {
            let u: f64 = rng.random();
            let theta = TAU * rng.random::<f64>();
            Atom { weight: -(1.0 - u).ln(), theta }
        })
        .collect();
    let total: f64 = atoms.iter().map(|a| a.weight).sum();
    if total > 0.0 {
        atoms.iter_mut().for_each(|a| a.weight /= total);
    } else {
        atoms.iter_mut().for_each(|a| a.weight = 1.0 / n_atoms as f64);
    }
    // Renormalizing can leave the sum a couple of ulps off 1; fold the
    // residue into the largest weight.
    let residue = 1.0 - atoms.iter().map(|a| a.weight).sum::<f64>();
    if let Some(big) = atoms.iter_mut().max_by(|a, b| a.weight.total_cmp(&b.weight)) {
        big.weight += residue;
    }
    HerglotzMeasure::new(atoms)
}

/// `Σ w_k (1 + x_k z)/(1 - x_k z)`.
pub fn eval_caratheodory(m: &HerglotzMeasure, z: DiscPoint) -> Complex64 {
    let z = z.value();
    m.atoms
        .iter()
        .map(|a| {
            let xz = a.point() * z;
            a.weight * (ONE + xz) / (ONE - xz)
        })
        .sum()
}

/// Maps a value of a normalized Carathéodory function into the tilted class:
/// `e^{iλ}(cos λ · h - i sin λ)`.
pub fn tilt(a: Angle, h_value: Complex64) -> Complex64 {
    let (s, c) = a.radians().sin_cos();
    a.rotation() * (c * h_value - Complex64::new(0.0, s))
}

/// A Robertson function `f` with `1 + z f''/f' = tilt(λ, h_m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobertsonSample {
    pub lambda: Angle,
    pub measure: HerglotzMeasure,
}

impl RobertsonSample {
    pub fn new(lambda: Angle, measure: HerglotzMeasure) -> Self {
        RobertsonSample { lambda, measure }
    }

    /// The extremal function `f_λ`: point mass at `x = 1`.
    pub fn extremal(lambda: Angle) -> Self {
        Self::new(lambda, HerglotzMeasure::point_mass(0.0))
    }

    /// `2 e^{iλ} cos λ`
    #[inline]
    fn tilt_factor(&self) -> Complex64 {
        self.lambda.kernel_exponent()
    }

    fn f_prime_raw(&self, z: Complex64) -> Complex64 {
        // Π (1 - x_k z)^{-c w_k} = exp(-c Σ w_k Log(1 - x_k z)), principal
        // branch per factor.
        let c = self.tilt_factor();
        let log_sum: Complex64 = self.measure.atoms.iter().map(|a| a.weight * principal_log(ONE - a.point() * z)).sum();
        (-c * log_sum).exp()
    }

    /// `f'(z) = Π (1 - x_k z)^{-2 e^{iλ} cos λ · w_k}`.
    pub fn f_prime(&self, z: DiscPoint) -> Complex64 {
        self.f_prime_raw(z.value())
    }

    /// `∫_0^1 f'(t z) dt`, so that `f(z) = z · mean_derivative(z)`.
    fn mean_derivative(&self, z: Complex64, tol: f64) -> Result<Complex64> {
        let q = quadrature::integrate(|t| self.f_prime_raw(t * z), 0.0, 1.0, tol)?;
        Ok(q.value)
    }

    /// `f(z)` by adaptive Gauss–Legendre quadrature of `f'` along `[0, z]`.
    pub fn f_value(&self, z: DiscPoint, tol: f64) -> Result<Complex64> {
        let zv = z.value();
        if zv == Complex64::new(0.0, 0.0) {
            return Ok(zv);
        }
        Ok(zv * self.mean_derivative(zv, tol)?)
    }

    /// `Q_f(z) = z f'(z)/f(z)`.
    ///
    /// Computed as `f'(z) / ∫_0^1 f'(tz) dt`, which has no cancellation away
    /// from the origin; inside `SERIES_THRESHOLD` the Taylor expansion is used.
    pub fn q_of_f(&self, z: DiscPoint, tol: f64) -> Result<Complex64> {
        let zv = z.value();
        if zv.norm() < SERIES_THRESHOLD {
            return Ok(log_derivative_quotient_series(self.log_f_prime_coefficients(), zv));
        }
        Ok(self.f_prime_raw(zv) / self.mean_derivative(zv, tol)?)
    }

    /// Coefficients `s_n` of `log f'(z) = Σ s_n z^n`:
    /// `s_n = c Σ_k w_k x_k^n / n`.
    fn log_f_prime_coefficients(&self) -> [Complex64; 3] {
        let c = self.tilt_factor();
        let mut s = [Complex64::new(0.0, 0.0); 3];
        for a in &self.measure.atoms {
            let x = a.point();
            let mut xn = ONE;
            for (n, sn) in s.iter_mut().enumerate() {
                xn *= x;
                *sn += c * a.weight * xn / (n + 1) as f64;
            }
        }
        s
    }

    /// `P_f(z) = 1 + z f''(z)/f'(z) = 1 + z Σ c w_k x_k/(1 - x_k z)`.
    pub fn p_of_f(&self, z: DiscPoint) -> Complex64 {
        let zv = z.value();
        let c = self.tilt_factor();
        let sum: Complex64 = self
            .measure
            .atoms
            .iter()
            .map(|a| {
                let x = a.point();
                a.weight * x / (ONE - x * zv)
            })
            .sum();
        ONE + zv * c * sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{f_lambda, f_lambda_prime, p_lambda, q_lambda};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn ang(l: f64) -> Angle {
        Angle::new(l).unwrap()
    }

    fn dp(re: f64, im: f64) -> DiscPoint {
        DiscPoint::new(Complex64::new(re, im)).unwrap()
    }

    fn close(a: Complex64, b: Complex64, eps: f64) {
        assert!((a - b).norm() <= eps, "{a} vs {b} (|diff| = {:e})", (a - b).norm());
    }

    #[test]
    fn sample_measure_contract() {
        let m = sample_measure(5, 1).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert_eq!(m.atoms()[0].weight, 1.0);

        assert_eq!(sample_measure(99, 6).unwrap(), sample_measure(99, 6).unwrap());
        assert_ne!(sample_measure(99, 6).unwrap(), sample_measure(100, 6).unwrap());

        for seed in 0..50 {
            let m = sample_measure(seed, 3).unwrap();
            let total: f64 = m.atoms().iter().map(|a| a.weight).sum();
            assert!((total - 1.0).abs() <= 1e-14);
            assert!(m.atoms().iter().all(|a| a.weight >= 0.0));
        }
        assert!(sample_measure(1, 0).is_err());
    }

    #[test]
    fn measure_validation_and_json() {
        assert!(HerglotzMeasure::new(vec![]).is_err());
        assert!(HerglotzMeasure::new(vec![Atom { weight: 0.5, theta: 0.0 }]).is_err());
        assert!(
            HerglotzMeasure::new(vec![Atom { weight: 1.5, theta: 0.0 }, Atom { weight: -0.5, theta: 1.0 }]).is_err()
        );

        let m = sample_measure(3, 4).unwrap();
        let s = m.to_json();
        assert!(s.starts_with("{\"atoms\":[{\"w\":"));
        assert_eq!(HerglotzMeasure::from_json(&s).unwrap(), m);
        assert!(HerglotzMeasure::from_json(r#"{"atoms":[{"w":0.3,"theta":0}]}"#).is_err());
    }

    #[test]
    fn eval_caratheodory_values() {
        let one_atom = HerglotzMeasure::point_mass(0.0);
        let z = dp(0.3, -0.4);
        close(eval_caratheodory(&one_atom, z), p_lambda(ang(0.0), z), 1e-15);

        let m = sample_measure(11, 5).unwrap();
        close(eval_caratheodory(&m, DiscPoint::origin()), ONE, 1e-15);

        let two =
            HerglotzMeasure::new(vec![Atom { weight: 0.5, theta: 0.0 }, Atom { weight: 0.5, theta: PI }]).unwrap();
        close(eval_caratheodory(&two, dp(0.5, 0.0)), Complex64::new(5.0 / 3.0, 0.0), 1e-15);
    }

    #[test]
    fn tilt_values() {
        for l in [-1.0, 0.0, 0.6] {
            close(tilt(ang(l), ONE), ONE, 1e-15);
        }
        let h = Complex64::new(0.7, -2.0);
        close(tilt(ang(0.0), h), h, 1e-15);

        let a = ang(PI / 4.0);
        let p = tilt(a, Complex64::new(2.0, 0.0));
        let expected = a.rotation() * Complex64::new(2f64.sqrt(), -1.0 / 2f64.sqrt());
        close(p, expected, 1e-15);
        assert_abs_diff_eq!((a.rotation().conj() * p).re, 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn extremal_sample_matches_closed_forms() {
        for l in [-1.2, -0.4, 0.0, 0.5, 1.4] {
            let a = ang(l);
            let s = RobertsonSample::extremal(a);
            for z in [dp(0.4, 0.1), dp(-0.7, 0.3), dp(0.0, -0.85)] {
                close(s.f_prime(z), f_lambda_prime(a, z), 1e-13);
                close(s.p_of_f(z), p_lambda(a, z), 1e-13);
                close(s.f_value(z, 1e-12).unwrap(), f_lambda(a, z), 1e-11);
                close(s.q_of_f(z, 1e-12).unwrap(), q_lambda(a, z), 1e-11);
            }
        }
    }

    #[test]
    fn normalizations_at_origin() {
        let s = RobertsonSample::new(ang(0.8), sample_measure(17, 4).unwrap());
        let o = DiscPoint::origin();
        assert_eq!(s.f_prime(o), ONE);
        assert_eq!(s.f_value(o, 1e-12).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(s.q_of_f(o, 1e-12).unwrap(), ONE);
        close(s.p_of_f(o), ONE, 1e-15);
    }

    #[test]
    fn f_prime_matches_exponentiated_integral() {
        // log f'(z) = ∫_0^1 (p(tz) - 1)/t dt, integrated with a composite
        // Simpson rule independent of the adaptive integrator.
        let s = RobertsonSample::new(ang(0.7), sample_measure(42, 3).unwrap());
        let z = Complex64::new(0.0, 0.4);
        let g = |t: f64| -> Complex64 {
            if t == 0.0 {
                let c = s.lambda.kernel_exponent();
                let first: Complex64 = s.measure.atoms().iter().map(|a| a.weight * a.point()).sum();
                return c * first * z;
            }
            (s.p_of_f(DiscPoint::new(t * z).unwrap()) - ONE) / t
        };
        let n = 2000;
        let h = 1.0 / n as f64;
        let mut acc = g(0.0) + g(1.0);
        for i in 1..n {
            acc += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let log_fp = acc * h / 3.0;
        close(s.f_prime(DiscPoint::new(z).unwrap()), log_fp.exp(), 1e-12);
    }

    #[test]
    fn f_value_is_stable_under_tighter_tolerance() {
        let s = RobertsonSample::new(ang(-0.3), sample_measure(8, 6).unwrap());
        let z = dp(0.5, 0.0);
        let tol = 1e-10;
        let a = s.f_value(z, tol).unwrap();
        let b = s.f_value(z, tol / 10.0).unwrap();
        assert!((a - b).norm() <= 10.0 * tol);
    }

    #[test]
    fn q_of_f_series_is_continuous() {
        let s = RobertsonSample::new(ang(0.9), sample_measure(23, 5).unwrap());
        for theta in [0.0, 2.0, -1.0] {
            let inner = s.q_of_f(DiscPoint::from_polar(SERIES_THRESHOLD * (1.0 - 1e-9), theta).unwrap(), 1e-13);
            let outer = s.q_of_f(DiscPoint::from_polar(SERIES_THRESHOLD * (1.0 + 1e-9), theta).unwrap(), 1e-13);
            close(inner.unwrap(), outer.unwrap(), 1e-11);
        }
    }

    #[test]
    fn convex_functions_are_starlike() {
        for seed in 0..20 {
            let s = RobertsonSample::new(ang(0.0), sample_measure(seed, 3).unwrap());
            let z = DiscPoint::from_polar(0.7, PI / 3.0).unwrap();
            assert!(s.q_of_f(z, 1e-12).unwrap().re > 0.0);
        }
    }

    #[test]
    fn p_of_f_lies_in_tilted_half_plane() {
        for seed in 0..20 {
            let a = ang(-1.1 + 0.1 * seed as f64);
            let s = RobertsonSample::new(a, sample_measure(seed, 1 + (seed as usize % 8)).unwrap());
            for k in 0..16 {
                let z = DiscPoint::from_polar(0.95, k as f64 * 0.39).unwrap();
                assert!((a.rotation().conj() * s.p_of_f(z)).re > 0.0);
            }
        }
    }
}
