use thiserror::Error;

/// Errors produced by the distortion toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the 2^62 cap")]
    ModulusTooLarge(u64),
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("curve is singular (4*a4^3 + 27*a6^2 = 0 mod {p})")]
    SingularCurve { p: u64 },
    #[error("curves in characteristic {0} are not supported")]
    UnsupportedCharacteristic(u64),
    #[error("point ({x},{y}) is not on the curve")]
    PointNotOnCurve { x: u64, y: u64 },
    #[error("curve is supersingular (p = {p} divides t = {t})")]
    SupersingularCurve { p: u64, t: i64 },
    #[error("curve over F_{0} is too large for the point counter")]
    CurveTooLarge(u64),
    #[error("point counting failed to isolate the group order")]
    CountingFailed,
    #[error("bad reduction at {p}: {reason}")]
    BadReduction { p: u64, reason: String },
    #[error("E[{ell}] is not rational: {reason}")]
    TorsionNotRational { ell: u64, reason: String },
    #[error("gave up sampling torsion points after {0} trials")]
    SamplingExhausted(usize),
    #[error("point is not in E[{ell}]")]
    NotInTorsion { ell: u64 },
    #[error("Miller evaluation hit a zero or pole of a line function")]
    DivisorCollision,
    #[error("pairing argument is not {ell}-torsion")]
    NotTorsion { ell: u64 },
    #[error("endomorphism {label} is incompatible with this curve: {reason}")]
    IncompatibleCurve { label: String, reason: String },
    #[error("unknown endomorphism label {0:?}")]
    UnknownEndomorphism(String),
    #[error("endomorphism {label} produced a point off the curve")]
    ImageOffCurve { label: String },
    #[error("t^2 - 4q = {0} is not negative")]
    NotImaginary(i128),
    #[error("inconsistent order data: {0}")]
    InconsistentInput(String),
    #[error("predicted {predicted} but the census shows {observed}")]
    PredicateViolated { predicted: String, observed: String },
    #[error("map does not distort <P>: e(P, phi(P)) = 1")]
    NotADistortionMap,
    #[error("invalid DDH instance: {0}")]
    InstanceInvalid(String),
    #[error("catalog: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
