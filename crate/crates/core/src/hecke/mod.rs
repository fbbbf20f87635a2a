//! The Hecke group H4, its cusp set Q(H4) = √2·Q and Ford circles.

mod fraction;
mod group;

pub use fraction::{denominator_ladder, ford_tangent, Family, H4Fraction};
pub use group::{a_matrix, generators, j_matrix, membership, translation, Generators, Mat2, ProjValue};
