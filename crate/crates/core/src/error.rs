use thiserror::Error;

/// Errors shared by the kernel, the verification layer and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The angle lies outside the open interval the operation is defined on.
    #[error("angle {angle} is outside the open interval {domain}")]
    AngleOutOfDomain { angle: String, domain: &'static str },

    /// An argument violated a structural precondition (zero denominator,
    /// level count out of range, and so on).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The computed enclosure came out wider than the precision contract
    /// allows; the depth/guard-bit policy did not absorb the rounding error.
    #[error("enclosure width exceeds 2^-{precision_bits} (depth {depth}, working bits {working_frac_bits})")]
    PrecisionNotReached {
        precision_bits: u32,
        depth: u32,
        working_frac_bits: u32,
    },

    /// The oracle's series did not reach the requested tail bound within its
    /// term budget.
    #[error("oracle series needs more than {max_terms} terms for {precision_bits} bits")]
    OracleBudgetExceeded { max_terms: u32, precision_bits: u32 },
}
