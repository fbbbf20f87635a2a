use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{quad_root, Surd};
use crate::hecke::{a_matrix, Mat2};

/// Digit rules that are not eventually periodic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `3` on `[4^i, 2·4^i)`, `2` on `[2·4^i, 3·4^i)`, `1` on `[3·4^i, 4^{i+1})`.
    FourBlocks,
    /// `3` at `n = 3^i`, `2` elsewhere.
    ThreePowers,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::FourBlocks => "four-blocks",
            Rule::ThreePowers => "three-powers",
        }
    }

    pub fn parse(s: &str) -> Option<Rule> {
        match s {
            "four-blocks" | "A" | "a" => Some(Rule::FourBlocks),
            "three-powers" | "B" | "b" => Some(Rule::ThreePowers),
            _ => None,
        }
    }

    /// Digit at position `n ≥ 1`.
    pub fn digit(self, n: usize) -> u8 {
        assert!(n >= 1);
        match self {
            Rule::FourBlocks => {
                let mut b = 1usize;
                while b * 4 <= n {
                    b *= 4;
                }
                if n < 2 * b {
                    3
                } else if n < 3 * b {
                    2
                } else {
                    1
                }
            }
            Rule::ThreePowers => {
                let mut m = n;
                while m % 3 == 0 {
                    m /= 3;
                }
                if m == 1 {
                    3
                } else {
                    2
                }
            }
        }
    }

    /// Position and value of the first digit other than 2 strictly after `n`.
    pub fn next_non_two(self, n: usize) -> (usize, u8) {
        match self {
            Rule::FourBlocks => {
                // runs of 2 are followed by runs of 1
                let mut k = n + 1;
                loop {
                    let d = self.digit(k);
                    if d != 2 {
                        return (k, d);
                    }
                    let mut b = 1usize;
                    while b * 4 <= k {
                        b *= 4;
                    }
                    k = 3 * b;
                }
            }
            Rule::ThreePowers => {
                let mut p = 1usize;
                while p <= n {
                    p *= 3;
                }
                (p, 3)
            }
        }
    }
}

/// An H4-expansion digit sequence `d_1 d_2 …`, `d_n ∈ {1, 2, 3}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DigitStream {
    /// A finite word: the expansion of an element of Q(H4).
    Finite { digits: Vec<u8> },
    EventuallyPeriodic { preperiod: Vec<u8>, period: Vec<u8> },
    Generated { rule: Rule },
}

fn check_digits(ds: &[u8]) -> Result<()> {
    match ds.iter().find(|d| !(1..=3).contains(*d)) {
        Some(d) => Err(Error::Validation(format!("digit {d} is not in 1..=3"))),
        None => Ok(()),
    }
}

impl DigitStream {
    /// Normalized eventually periodic stream: primitive period, shortest
    /// preperiod. Periods `3` and `1` are rejected; they end the expansion
    /// of a point of Q(H4) (or of ∞, 0).
    pub fn periodic(preperiod: Vec<u8>, period: Vec<u8>) -> Result<DigitStream> {
        check_digits(&preperiod)?;
        check_digits(&period)?;
        if period.is_empty() {
            return Err(Error::Validation("empty period".into()));
        }
        let k = period.len();
        let prim = (1..=k)
            .find(|&l| k % l == 0 && (0..k).all(|i| period[i] == period[i % l]))
            .unwrap_or(k);
        let mut period: Vec<u8> = period[..prim].to_vec();
        if period.len() == 1 && period[0] != 2 {
            return Err(Error::InputInQH4(format!("tail {}^∞", period[0])));
        }
        let mut pre = preperiod;
        while let Some(&last) = pre.last() {
            if last != *period.last().unwrap() {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        Ok(DigitStream::EventuallyPeriodic { preperiod: pre, period })
    }

    pub fn generated(rule: Rule) -> DigitStream {
        DigitStream::Generated { rule }
    }

    /// Digit at position `n ≥ 1`, or `None` past the end of a finite word.
    pub fn digit(&self, n: usize) -> Option<u8> {
        assert!(n >= 1, "digits are indexed from 1");
        match self {
            DigitStream::Finite { digits } => digits.get(n - 1).copied(),
            DigitStream::EventuallyPeriodic { preperiod, period } => {
                let i = n - 1;
                if i < preperiod.len() {
                    Some(preperiod[i])
                } else {
                    Some(period[(i - preperiod.len()) % period.len()])
                }
            }
            DigitStream::Generated { rule } => Some(rule.digit(n)),
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (1..=n).map_while(|k| self.digit(k)).collect()
    }

    /// Sign of `α_n − 1`, decided by the first digit other than 2 after `n`:
    /// every `A_d` is increasing on `[0, ∞]` and `1 = [2^∞]`.
    pub fn compare_tail_to_one(&self, n: usize, cap: usize) -> Result<i8> {
        let from_digit = |d: u8| if d == 1 { -1 } else { 1 };
        match self {
            DigitStream::Generated { rule } => Ok(from_digit(rule.next_non_two(n).1)),
            DigitStream::EventuallyPeriodic { preperiod, period } => {
                for k in n + 1..=n.max(preperiod.len()) + period.len() {
                    let d = self.digit(k).unwrap();
                    if d != 2 {
                        return Ok(from_digit(d));
                    }
                }
                Ok(0)
            }
            DigitStream::Finite { digits } => {
                for k in n + 1..=digits.len().min(n + cap) {
                    let d = digits[k - 1];
                    if d != 2 {
                        return Ok(from_digit(d));
                    }
                }
                Err(Error::Undecidable { offset: n, cap })
            }
        }
    }

    /// The exact value of an eventually periodic stream.
    pub fn to_surd(&self) -> Result<Surd> {
        let DigitStream::EventuallyPeriodic { preperiod, period } = self else {
            return Err(Error::NonPeriodicInput);
        };
        let x = periodic_fixed_point(period)?;
        word_matrix(preperiod).apply(&x)
    }
}

/// `A_{d_1} ⋯ A_{d_k}`
pub fn word_matrix(word: &[u8]) -> Mat2 {
    let mut g = Mat2::identity();
    for &d in word {
        push_digit(&mut g, d);
    }
    g
}

/// `G ← G·A_d`, with the multiplications by √2 done by coordinate swaps.
pub fn push_digit(g: &mut Mat2, d: u8) {
    match d {
        1 => {
            g.t = &g.t + &g.v.mul_sqrt2();
            g.u = &g.u + &g.w.mul_sqrt2();
        }
        2 => {
            let t = &g.t.mul_sqrt2() + &g.v;
            let v = &g.t + &g.v.mul_sqrt2();
            let u = &g.u.mul_sqrt2() + &g.w;
            let w = &g.u + &g.w.mul_sqrt2();
            *g = Mat2::new(t, v, u, w);
        }
        3 => {
            g.v = &g.t.mul_sqrt2() + &g.v;
            g.w = &g.u.mul_sqrt2() + &g.w;
        }
        _ => panic!("digit {d} out of range"),
    }
}

/// `A_d⁻¹·x` on surds.
pub fn pop_digit(x: &Surd, d: u8) -> Result<Surd> {
    a_matrix(d).inverse()?.apply(x)
}

/// The positive fixed point of `P = [[t, v], [u, w]]`, i.e. the positive
/// root of `u x² + (w − t) x − v = 0`.
pub fn positive_fixed_point(p: &Mat2) -> Result<Surd> {
    quad_root(&p.u, &(&p.w - &p.t), &-&p.v, true)
}

/// `[(period)^∞]`
pub fn periodic_fixed_point(period: &[u8]) -> Result<Surd> {
    if period.iter().all(|&d| d == 2) {
        return Ok(Surd::one());
    }
    if period.iter().all(|&d| d == 3) || period.iter().all(|&d| d == 1) {
        return Err(Error::InputInQH4(format!("tail {}^∞", period[0])));
    }
    positive_fixed_point(&word_matrix(period))
}

pub(crate) fn word_string(ds: &[u8]) -> String {
    ds.iter().map(|d| char::from(b'0' + d)).collect()
}

impl fmt::Display for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitStream::Finite { digits } => write!(f, "[{}]", word_string(digits)),
            DigitStream::EventuallyPeriodic { preperiod, period } => {
                write!(f, "[{}({})^∞]", word_string(preperiod), word_string(period))
            }
            DigitStream::Generated { rule } => write!(f, "stream:{}", rule.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{QRt2, ZRt2};

    #[test]
    fn four_block_rule() {
        let got: Vec<u8> = (1..=16).map(|n| Rule::FourBlocks.digit(n)).collect();
        assert_eq!(got, vec![3, 2, 1, 3, 3, 3, 3, 2, 2, 2, 2, 1, 1, 1, 1, 3]);
        assert_eq!(Rule::FourBlocks.next_non_two(7), (12, 1));
        assert_eq!(Rule::FourBlocks.next_non_two(15), (16, 3));
    }

    #[test]
    fn three_power_rule() {
        let got: Vec<u8> = (1..=10).map(|n| Rule::ThreePowers.digit(n)).collect();
        assert_eq!(got, vec![3, 2, 3, 2, 2, 2, 2, 2, 3, 2]);
        assert_eq!(Rule::ThreePowers.next_non_two(9), (27, 3));
        assert_eq!(Rule::ThreePowers.digit(6), 2);
    }

    #[test]
    fn periodic_normalization() {
        let s = DigitStream::periodic(vec![1, 3, 2], vec![3, 2, 3, 2]).unwrap();
        assert_eq!(s, DigitStream::EventuallyPeriodic { preperiod: vec![1], period: vec![3, 2] });
        assert!(DigitStream::periodic(vec![], vec![3, 3]).is_err());
    }

    #[test]
    fn sqrt17_period_value() {
        let s = DigitStream::periodic(vec![], vec![3, 2, 3, 1, 2, 1]).unwrap();
        let a = s.to_surd().unwrap();
        let want = Surd::new(ZRt2::int(3), ZRt2::one(), ZRt2::int(17), ZRt2::sqrt2_times(2)).unwrap();
        assert_eq!(a.try_cmp(&want).unwrap(), std::cmp::Ordering::Equal);
        let one = DigitStream::periodic(vec![], vec![2]).unwrap().to_surd().unwrap();
        assert_eq!(one.as_qrt2(), Some(&QRt2::one()));
    }

    #[test]
    fn tail_comparisons() {
        let s = DigitStream::periodic(vec![2, 2, 1], vec![2]).unwrap();
        assert_eq!(s.compare_tail_to_one(0, 10).unwrap(), -1);
        assert_eq!(s.compare_tail_to_one(3, 10).unwrap(), 0);
        let t = DigitStream::periodic(vec![], vec![3, 2]).unwrap();
        assert_eq!(t.compare_tail_to_one(1, 10).unwrap(), 1);
    }
}
