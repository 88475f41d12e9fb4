//! Closed-form extremal functions of the Robertson class.
//!
//! With `m = 1 + e^{2iλ} = 2 e^{iλ} cos λ` the extremal function is
//!
//! ```text
//! f_λ(z) = ((1 - z)^{1 - m} - 1) / (m - 1),    f_λ'(z) = (1 - z)^{-m}
//! ```
//!
//! and since `1 - m = -e^{2iλ}` and `m - 1 = e^{2iλ}` the denominator never
//! vanishes. From it come `Q_λ = z f_λ'/f_λ`, the tilted half-plane map
//! `P_λ(z) = (1 + e^{2iλ} z)/(1 - z)` and its Möbius inverse.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{principal_power_unchecked, Angle, DiscPoint};
use crate::error::{Error, Result};

/// Below this modulus `q_lambda` switches to its Taylor expansion.
pub const SERIES_THRESHOLD: f64 = 1e-4;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `f_λ(z)`.
pub fn f_lambda(a: Angle, z: DiscPoint) -> Complex64 {
    let z = z.value();
    let e2 = a.rotation2();
    (principal_power_unchecked(ONE - z, -e2) - ONE) / e2
}

/// `f_λ'(z) = (1 - z)^{-(1 + e^{2iλ})}`.
pub fn f_lambda_prime(a: Angle, z: DiscPoint) -> Complex64 {
    principal_power_unchecked(ONE - z.value(), -a.kernel_exponent())
}

/// `Q_λ(z) = z f_λ'(z) / f_λ(z) = e^{2iλ} z / (1 - z - (1 - z)^{1 + e^{2iλ}})`.
///
/// The removable singularity at the origin is handled by a four-term Taylor
/// expansion for `|z| < SERIES_THRESHOLD`.
pub fn q_lambda(a: Angle, z: DiscPoint) -> Complex64 {
    let z = z.value();
    let m = a.kernel_exponent();
    if z.norm() < SERIES_THRESHOLD {
        // log f_λ' = -m log(1 - z) = m (z + z²/2 + z³/3 + ...)
        return log_derivative_quotient_series([m, m / 2.0, m / 3.0], z);
    }
    let w = ONE - z;
    a.rotation2() * z / (w - principal_power_unchecked(w, m))
}

/// Taylor expansion of `z g'(z) / g(z)` through `z³` for a normalized `g`
/// (`g(0) = 0`, `g'(0) = 1`) whose derivative satisfies
/// `log g'(z) = s[0] z + s[1] z² + s[2] z³ + O(z⁴)`.
pub(crate) fn log_derivative_quotient_series(s: [Complex64; 3], z: Complex64) -> Complex64 {
    let [s1, s2, s3] = s;
    // Coefficients of g' = exp(s1 z + s2 z² + s3 z³ + ...).
    let a1 = s1;
    let a2 = s2 + s1 * s1 / 2.0;
    let a3 = s3 + s1 * s2 + s1 * s1 * s1 / 6.0;
    // g(z)/z has coefficients a_n / (n + 1).
    let b1 = a1 / 2.0;
    let b2 = a2 / 3.0;
    let b3 = a3 / 4.0;
    let q1 = a1 - b1;
    let q2 = a2 - b1 * q1 - b2;
    let q3 = a3 - b1 * q2 - b2 * q1 - b3;
    ONE + z * (q1 + z * (q2 + z * q3))
}

/// Zeros of `f_λ` in the punctured unit disc, i.e. the poles of `Q_λ`.
///
/// `f_λ(z) = 0` means `Log(1 - z) = -2πik e^{-2iλ}` for an integer `k ≠ 0`.
/// The principal logarithm of `1 - z` with `z` in the disc has imaginary part
/// in `(-π/2, π/2)`, which requires `|k cos 2λ| < 1/4`: such zeros exist only
/// for tilts near `±π/4`. At most 64 values of `|k|` are enumerated.
pub fn f_lambda_zeros(a: Angle) -> Vec<Complex64> {
    let cos2 = (2.0 * a.radians()).cos();
    let k_max = if cos2 == 0.0 { 64 } else { ((0.25 / cos2.abs()).ceil() as i64).min(64) };
    let e = a.rotation2().conj();
    (1..=k_max)
        .flat_map(|k| [k, -k])
        .filter_map(|k| {
            let log = Complex64::new(0.0, -2.0 * std::f64::consts::PI * k as f64) * e;
            if log.im.abs() >= std::f64::consts::FRAC_PI_2 {
                return None;
            }
            let z = ONE - log.exp();
            (z.norm() < 1.0).then_some(z)
        })
        .collect()
}

/// Smallest modulus among [`f_lambda_zeros`]; `None` when `f_λ` vanishes
/// only at the origin.
pub fn f_lambda_zero_radius(a: Angle) -> Option<f64> {
    f_lambda_zeros(a).iter().map(|z| z.norm()).min_by(f64::total_cmp)
}

/// `P_λ(z) = (1 + e^{2iλ} z) / (1 - z)`.
pub fn p_lambda(a: Angle, z: DiscPoint) -> Complex64 {
    let z = z.value();
    (ONE + a.rotation2() * z) / (ONE - z)
}

/// Inverse of [`p_lambda`]: `(w - 1) / (w + e^{2iλ})`.
///
/// The result lies in the unit disc exactly when `Re(e^{-iλ} w) > 0`.
pub fn p_lambda_inverse(a: Angle, w: Complex64) -> Result<Complex64> {
    let denom = w + a.rotation2();
    if denom.re == 0.0 && denom.im == 0.0 {
        return Err(Error::Pole(format!("p_lambda_inverse: w = -e^(2i*{}) is the pole", a.radians())));
    }
    Ok((w - ONE) / denom)
}

/// Disc `|p(z) - center| <= radius` containing `p(|z| = r)` for every `p` of
/// the tilted Carathéodory class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaratheodoryDisc {
    pub center: Complex64,
    pub radius: f64,
}

impl CaratheodoryDisc {
    /// `radius - |w - center|`; non-negative iff `w` lies in the closed disc.
    pub fn margin(&self, w: Complex64) -> f64 {
        self.radius - (w - self.center).norm()
    }
}

pub fn caratheodory_disc(a: Angle, r: f64) -> Result<CaratheodoryDisc> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("caratheodory_disc: r = {r} not in [0, 1)")));
    }
    let r2 = r * r;
    let denom = 1.0 - r2;
    Ok(CaratheodoryDisc { center: (ONE + r2 * a.rotation2()) / denom, radius: 2.0 * r * a.radians().cos() / denom })
}
