pub mod best;
pub mod cli;
pub mod error;
pub mod field;
pub mod expansion;
pub mod hecke;
pub mod rosen;
pub mod uniform;

pub use error::{Error, Result};
pub use field::{QRt2, Surd, SurdLiteral, ZRt2};
pub use hecke::{H4Fraction, Mat2};
