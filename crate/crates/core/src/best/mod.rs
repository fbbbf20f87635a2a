//! H4-best approximations: the successor chain, the characterization set
//! and a brute-force oracle straight from the definition.

mod chain;
mod oracle;

pub use chain::{
    best_approximations, best_by_characterization, successor, BestApprox, BestApproxIter, ChainWalker, Limit, Link, Side, Successor,
};
pub use oracle::{legendre_classify, oracle_best_approximations, oracle_min_error_below, LegendreClass};
