//! Reproducible random inputs.
//!
//! The generator is ChaCha8 seeded with `seed_from_u64(seed)`. Each integer
//! is `next_u64() % (2·bound + 1) − bound`, drawn in the order
//! `P.a, P.b, Q.a, Q.b, D.a, D.b, S.a, S.b`. Draws that are invalid
//! (`S = 0`, `D ≤ 0`), negative, or in Q(√2) are skipped.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::expansion::DigitStream;
use crate::field::{Surd, ZRt2};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_SIZE: usize = 100;
pub const DEFAULT_COEFF_BOUND: i64 = 6;

fn draw(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let span = (2 * bound + 1) as u64;
    (rng.next_u64() % span) as i64 - bound
}

pub fn make_corpus(seed: u64, size: usize, coeff_bound: i64) -> Vec<Surd> {
    assert!(coeff_bound >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let mut z = || ZRt2::new(draw(&mut rng, coeff_bound), draw(&mut rng, coeff_bound));
        let (p, q, d, s) = (z(), z(), z(), z());
        let Ok(x) = Surd::new(p, q, d, s) else { continue };
        if x.is_degenerate() || x.sign() <= 0 {
            continue;
        }
        out.push(x);
    }
    out
}

/// Random eventually periodic digit streams: preperiod length `0..=3`,
/// period length `1..=6`, rejecting the tails `1^∞` and `3^∞`.
pub fn make_periodic_streams(seed: u64, size: usize) -> Vec<DigitStream> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let pre_len = (rng.next_u64() % 4) as usize;
        let per_len = 1 + (rng.next_u64() % 6) as usize;
        let mut digit = || 1 + (rng.next_u64() % 3) as u8;
        let pre: Vec<u8> = (0..pre_len).map(|_| digit()).collect();
        let per: Vec<u8> = (0..per_len).map(|_| digit()).collect();
        if let Ok(s) = DigitStream::periodic(pre, per) {
            out.push(s);
        }
    }
    out
}
