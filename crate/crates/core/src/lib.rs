//! Certified enclosures of sin and cos on (0, pi/2), computed without the
//! Pythagorean identity.
//!
//! The kernel starts from two-sided polynomial bounds at a tiny angle and
//! reaches the requested angle purely through the half-angle doubling step
//! cos 2x = 1 - 2 sin^2 x, sin 2x = 2 sin x cos x, evaluated in outward-rounded
//! interval arithmetic over arbitrary-precision fixed-point numbers. On top of
//! the kernel sits a verification layer: the defect cos^2 + sin^2 - 1 is
//! enclosed numerically, its doubling recursion is checked in exact rational
//! arithmetic, the super-exponentially decaying bound chain that forces the
//! defect to zero is certified level by level, and a small exact field
//! Q(sqrt2, sqrt3) reproduces the identities at the constructible angles
//! 15, 30, 45, 60, 75 degrees with zero rounding error.
//!
//! An independent Taylor-series oracle (used by tests and by degree-to-radian
//! conversion only) provides reference enclosures and a certified pi.

pub mod error;
pub mod fixed;
pub mod interval;
pub mod kernel;
pub mod oracle;
pub mod qfield;
pub mod verify;

pub use error::Error;
pub use fixed::{parse_rational, FixedPoint, Rational, Rounding};
pub use interval::Interval;
pub use kernel::{
    base_enclosure, chord_length, complement, double_step, isosceles_split_residuals, sin_cos,
    Angle, AnglePair, DoublingPlan,
};
pub use oracle::{oracle_cos, oracle_sin, pi_enclosure, OracleConfig};
pub use qfield::{exact_cos, exact_identity_suite, exact_sin, ExactAngle, QNum};
pub use verify::{
    bound_chain, cos_addition_residual, decay_table, defect_recursion_residual,
    half_angle_sq_diff_residual, product_bounds, product_trace, pythagoras_defect,
    subtraction_residuals, BoundReport, DecayRow, DefectTrace, LevelRecord,
};
