//! Streams showing the constants `1/(√2+1)`, `1` and `1/2` in the
//! approximation bounds cannot be improved.
//!
//! Stream A has `d_n = 3, 2, 1` on `[4^i, 2·4^i)`, `[2·4^i, 3·4^i)`,
//! `[3·4^i, 4^{i+1})`; stream B has `d_n = 3` exactly at `n = 3^i`.
//! Along the given index sequences `w_n|w_n α − v_n| = 1/(1/α*_n + 1/α_n)`
//! tends to the targets. The tails are not quadratic, so `α_n` is enclosed
//! between the endpoints of a deep prefix of the tail.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{word_matrix, Rule};
use crate::field::QRt2;
use crate::hecke::ProjValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OptStream {
    A,
    B,
}

impl OptStream {
    pub fn parse(s: &str) -> Option<OptStream> {
        match s {
            "A" | "a" => Some(OptStream::A),
            "B" | "b" => Some(OptStream::B),
            _ => None,
        }
    }

    pub fn rule(self) -> Rule {
        match self {
            OptStream::A => Rule::FourBlocks,
            OptStream::B => Rule::ThreePowers,
        }
    }
}

struct Series {
    name: &'static str,
    index: fn(u32) -> usize,
    target: fn() -> QRt2,
    /// Expected position of `α_n`: `(lower, upper)` as open bounds.
    tail_window: fn() -> (Option<QRt2>, Option<QRt2>),
}

fn series(stream: OptStream) -> Vec<Series> {
    match stream {
        OptStream::A => vec![
            Series {
                name: "n_i = 3·4^i − 2",
                index: |i| 3 * 4usize.pow(i) - 2,
                target: || QRt2::sqrt2() - QRt2::one(),
                tail_window: || (Some(QRt2::inv_sqrt2()), Some(QRt2::one())),
            },
            Series {
                name: "n'_i = 2·4^i − 1",
                index: |i| 2 * 4usize.pow(i) - 1,
                target: QRt2::one,
                tail_window: || (Some(QRt2::inv_sqrt2()), Some(QRt2::one())),
            },
        ],
        OptStream::B => vec![Series {
            name: "n_i = 2·3^i",
            index: |i| 2 * 3usize.pow(i),
            target: || QRt2::rational(1, 2),
            tail_window: || (Some(QRt2::one()), None),
        }],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimalityPoint {
    pub series: &'static str,
    pub i: u32,
    pub n: usize,
    /// Exact enclosure of `w_n|w_n α − v_n|`.
    pub lo: QRt2,
    pub hi: QRt2,
    pub target: QRt2,
    /// Largest distance from the enclosure to the target.
    pub distance: f64,
    /// Digits of the tail used for the enclosure.
    pub lookahead: usize,
    /// `α*_n > 1` and `α_n` inside the window the construction predicts.
    pub conditions_hold: bool,
}

/// `1/(1/s + 1/a) = as/(a + s)`, increasing in `a`.
fn scaled(s: &QRt2, a: &ProjValue) -> QRt2 {
    match a {
        ProjValue::Infinity => s.clone(),
        ProjValue::Finite(a) => &(a * s) / &(a + s),
    }
}

fn proj_gt(x: &ProjValue, y: &ProjValue) -> bool {
    match (x, y) {
        (ProjValue::Infinity, _) => !matches!(y, ProjValue::Infinity),
        (ProjValue::Finite(_), ProjValue::Infinity) => false,
        (ProjValue::Finite(a), ProjValue::Finite(b)) => a > b,
    }
}

/// Enclosure width below which the lookahead stops growing.
const WIDTH: f64 = 1e-12;

/// Checker values for `i = 1 ..= i_max`. `digit_budget` bounds `n` plus
/// the lookahead.
pub fn optimality_check(stream: OptStream, i_max: u32, digit_budget: usize) -> Result<Vec<OptimalityPoint>> {
    let rule = stream.rule();
    let mut out = Vec::new();
    for s in series(stream) {
        for i in 1..=i_max {
            let n = (s.index)(i);
            if n >= digit_budget {
                return Err(Error::CapExceeded(digit_budget));
            }
            let prefix: Vec<u8> = (1..=n).map(|k| rule.digit(k)).collect();
            let g = word_matrix(&prefix);
            let star = QRt2::ratio(&g.w, &g.u);
            let mut look = n.max(64);
            let (lo_a, hi_a) = loop {
                let look_now = look.min(digit_budget - n);
                let tail: Vec<u8> = (n + 1..=n + look_now).map(|k| rule.digit(k)).collect();
                let w = word_matrix(&tail);
                let (x, y) = (w.at_zero(), w.at_infinity());
                let (lo, hi) = if proj_gt(&x, &y) { (y, x) } else { (x, y) };
                let width = (scaled(&star, &hi) - scaled(&star, &lo)).to_f64();
                if width < WIDTH || look_now < look {
                    look = look_now;
                    break (lo, hi);
                }
                look *= 2;
            };
            let (lo, hi) = (scaled(&star, &lo_a), scaled(&star, &hi_a));
            let target = (s.target)();
            let distance = (&lo - &target).to_f64().abs().max((&hi - &target).to_f64().abs());
            let (win_lo, win_hi) = (s.tail_window)();
            let above = win_lo.is_none_or(|b| lo_a.cmp_q(&b) == Ordering::Greater);
            let below = win_hi.is_none_or(|b| matches!(&hi_a, ProjValue::Finite(h) if h < &b));
            let conditions_hold = star > QRt2::one() && above && below;
            out.push(OptimalityPoint { series: s.name, i, n, lo, hi, target, distance, lookahead: look, conditions_hold });
        }
    }
    Ok(out)
}
