//! H4-expansions: digits, the matrices `G_n`, tails `α_n` and reversals `α*_n`.

mod engine;
mod stream;

pub use engine::{
    detect_period, next_digit, normalize_alpha, shift_stream, ConvergentState, Expansion, Termination,
    DEFAULT_PERIOD_CAP,
};
pub(crate) use engine::ord_sign;
pub use stream::{periodic_fixed_point, pop_digit, positive_fixed_point, push_digit, word_matrix, DigitStream, Rule};
