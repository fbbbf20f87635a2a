//! Exact arithmetic: Z[√2], Q(√2) and quadratic surds over Q(√2).

pub(crate) mod eval;
mod qrt2;
mod surd;
mod zrt2;
pub(crate) use zrt2::serialize_bigint;

pub use qrt2::QRt2;
pub use surd::{quad_root, Surd, SurdLiteral};
pub use zrt2::ZRt2;
