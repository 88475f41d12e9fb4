//! Radii of λ-spirallikeness and starlikeness for λ-Robertson functions.
//!
//! A normalized analytic `f` on the unit disc is *λ-Robertson* when
//! `1 + z f''/f'` has positive real part after rotation by `e^{-iλ}`. This
//! crate evaluates the extremal function of that class and its companions
//! `Q_λ = z f_λ'/f_λ` and `P_λ = 1 + z f_λ''/f_λ'`, computes
//!
//! * `R₁(λ)`, the largest radius on which `Q_λ(r·) ≺ P_λ(r·)`, by bisection on
//!   the boundary maximum `ψ_λ(r)` ([`radii::radius_r1`]);
//! * `R₂(λ) = 2/√(4 + 2√3|sin 2λ|)`, the guaranteed radius of starlikeness
//!   ([`radii::radius_r2`]);
//!
//! and checks the associated inequalities on randomly drawn exact class
//! members ([`verify`]).
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`complex`] | `Angle`, `DiscPoint`, principal-branch powers |
//! | [`extremal`] | `f_λ`, `Q_λ`, `P_λ`, `P_λ⁻¹`, Carathéodory discs |
//! | [`subordination`] | `ψ_λ`, half-plane and winding-number membership |
//! | [`radii`] | `R₁`, `R₂`, Ω-avoidance margin, radius tables |
//! | [`samples`] | finite-atom Herglotz measures and Robertson samples |
//! | [`verify`] | seeded verification harnesses and reports |
//!
//! All functions are pure and thread-safe.

pub mod complex;
pub mod error;
pub mod extremal;
pub mod optimize;
pub mod quadrature;
pub mod radii;
pub mod samples;
pub mod subordination;
pub mod verify;

pub use complex::{principal_power, Angle, DiscPoint};
pub use error::{Error, Result};
pub use extremal::{caratheodory_disc, f_lambda, p_lambda, p_lambda_inverse, q_lambda, CaratheodoryDisc};
pub use num_complex::Complex64;
pub use radii::{
    min_radius_r2, omega_avoidance_margin, radius_r1, radius_r2, radius_table, RadiusKind, RadiusReport, RadiusRow,
};
pub use samples::{eval_caratheodory, sample_measure, tilt, Atom, HerglotzMeasure, RobertsonSample};
pub use subordination::{
    check_q_subordination, is_subordinate_to_halfplane, psi, region_membership, BoundaryCurve, PsiValue,
    SubordinationVerdict,
};
pub use verify::{Claim, FalsificationReport, VerificationReport};
