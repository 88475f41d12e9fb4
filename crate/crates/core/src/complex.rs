//! Angle and disc-point newtypes plus principal-branch complex powers.
//!
//! Every power evaluated by this crate has a base of the form `1 - x z` with
//! `|x| = 1` and `|z| < 1`. Such a base has positive real part, so it stays
//! a fixed distance away from the branch cut of the principal logarithm on
//! the negative real axis and the principal branch is analytic along every
//! path this crate uses.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tilt parameter λ, restricted to the open interval (−π/2, π/2).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda.abs() >= FRAC_PI_2 {
            return Err(Error::Domain(format!("lambda = {lambda} must satisfy -pi/2 < lambda < pi/2")));
        }
        Ok(Angle(lambda))
    }

    pub fn from_degrees(degrees: f64) -> Result<Self> {
        Self::new(degrees.to_radians())
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn neg(self) -> Angle {
        Angle(-self.0)
    }

    #[inline]
    pub fn abs(self) -> Angle {
        Angle(self.0.abs())
    }

    /// e^{iλ}
    #[inline]
    pub fn rotation(self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }

    /// e^{2iλ}
    #[inline]
    pub fn rotation2(self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * self.0)
    }

    /// 1 + e^{2iλ}, which equals 2 e^{iλ} cos λ.
    #[inline]
    pub fn kernel_exponent(self) -> Complex64 {
        Complex64::new(1.0, 0.0) + self.rotation2()
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Angle::new(v).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<f64> for Angle {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Angle::new(v)
    }
}

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() >= 1.0 {
            return Err(Error::Domain(format!("|z| = {} is not < 1", z.norm())));
        }
        Ok(DiscPoint(z))
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(r, theta))
    }

    /// Caller guarantees `|z| < 1`.
    #[inline]
    pub(crate) fn new_unchecked(z: Complex64) -> Self {
        debug_assert!(z.norm() < 1.0);
        DiscPoint(z)
    }

    pub fn origin() -> Self {
        DiscPoint(Complex64::new(0.0, 0.0))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl TryFrom<Complex64> for DiscPoint {
    type Error = Error;
    fn try_from(z: Complex64) -> Result<Self> {
        DiscPoint::new(z)
    }
}

/// Principal logarithm, imaginary part in (−π, π].
#[inline]
pub fn principal_log(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), z.im.atan2(z.re))
}

/// `base^exponent` on the principal branch: `exp(exponent · Log(base))`.
pub fn principal_power(base: Complex64, exponent: Complex64) -> Result<Complex64> {
    if base.re == 0.0 && base.im == 0.0 {
        return Err(Error::Domain("principal_power: base is zero (z = 1 lies outside the open disc)".into()));
    }
    Ok(principal_power_unchecked(base, exponent))
}

/// [`principal_power`] for callers that already guarantee `base != 0`.
#[inline]
pub(crate) fn principal_power_unchecked(base: Complex64, exponent: Complex64) -> Complex64 {
    (exponent * principal_log(base)).exp()
}
