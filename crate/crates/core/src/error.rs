use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constant term {modulus:e} is at or below the reciprocal floor {floor:e}")]
    ConstantTermTooSmall { modulus: f64, floor: f64 },

    #[error("evaluation radius {radius} exceeds the cap {cap}")]
    RadiusExceeded { radius: f64, cap: f64 },

    #[error("tail ratio estimate {ratio} is not below 1/r at r = {radius}; tail bound not computable")]
    DivergentTail { ratio: f64, radius: f64 },

    #[error("dilatation is not bounded by 1 on the sampling ring (max modulus {max_modulus})")]
    DilatationNotBounded { max_modulus: f64 },

    #[error("{what} is not normalized: {detail}")]
    NotNormalized { what: &'static str, detail: String },

    #[error("convolver must satisfy c0 = 0, c1 = 1 (got c0 = {c0}, c1 = {c1})")]
    NotNormalizedConvolver { c0: Complex64, c1: Complex64 },

    #[error("denominator vanishes at z = {at}")]
    DenominatorVanishes { at: Complex64 },

    #[error("derivative vanishes at z = {at}")]
    DerivativeVanishes { at: Complex64 },

    #[error("parameter {name} = {value} outside {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("projection onto the direction normal is constant within the dead-band")]
    DegenerateProjection,

    #[error("{name} must have unit modulus (got |{name}| = {modulus})")]
    NotUnitModulus { name: &'static str, modulus: f64 },

    #[error("invalid sampling grid: {0}")]
    InvalidGrid(String),

    #[error("a series needs at least one coefficient")]
    EmptySeries,

    #[error("non-finite coefficient at index {index}")]
    NonFinite { index: usize },
}
