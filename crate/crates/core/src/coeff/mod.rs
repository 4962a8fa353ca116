//! Exact coefficients: the field ℚ(i)(s) with `s = q^{1/2}`.
//!
//! Half-integer powers of `q`, the divisor `q − q^{-1}` and the imaginary unit
//! all live here. `ln q` never does: limits of `x(q)/ln q` are computed by
//! [`Scalar::limit_div_lnq`] and returned as plain Gaussian rationals.

mod gaussian;
mod poly;
mod scalar;

pub use gaussian::GaussianRational;
pub use poly::Poly;
pub use scalar::Scalar;
#[allow(unused_imports)]
pub(crate) use scalar::fmt_q_power;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = 1")]
    Pole,
    #[error("limit of x/ln q diverges: x does not vanish at q = 1")]
    Divergent,
}
