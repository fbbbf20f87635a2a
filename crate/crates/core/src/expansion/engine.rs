use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::stream::{push_digit, DigitStream};
use crate::error::{Error, Result};
use crate::field::{QRt2, Surd};
use crate::hecke::{a_matrix, translation, Mat2, ProjValue};

pub const DEFAULT_PERIOD_CAP: usize = 10_000;

/// How a finite expansion ends, with the two infinite spellings of the
/// endpoint: `prefix · extra · repeat^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Termination {
    pub prefix: Vec<u8>,
    pub completions: Vec<(Vec<u8>, u8)>,
}

/// One step of the digit map: the digit `d` with `x ∈ A_d·(0, ∞)` and the
/// tail `A_d⁻¹·x`.
///
/// Fails with `Terminated` on the boundary points `1/√2`, `√2` and on
/// `x ≤ 0`; the digit count in the error is 0, callers add their offset.
pub fn next_digit(x: &Surd) -> Result<(u8, Surd)> {
    if x.sign() <= 0 {
        return Err(Error::Terminated { digits: 0 });
    }
    let lo = x.cmp_q(&QRt2::inv_sqrt2());
    let hi = x.cmp_q(&QRt2::sqrt2());
    let d = match (lo, hi) {
        (Ordering::Less, _) => 1,
        (Ordering::Greater, Ordering::Less) => 2,
        (_, Ordering::Greater) => 3,
        _ => return Err(Error::Terminated { digits: 0 }),
    };
    let tail = a_matrix(d).inverse()?.apply(x)?;
    Ok((d, tail))
}

fn boundary_completions(x: &Surd) -> Vec<(Vec<u8>, u8)> {
    if x.cmp_q(&QRt2::inv_sqrt2()) == Ordering::Equal {
        vec![(vec![1], 3), (vec![2], 1)]
    } else if x.cmp_q(&QRt2::sqrt2()) == Ordering::Equal {
        vec![(vec![2], 3), (vec![3], 1)]
    } else {
        vec![(vec![], 1)]
    }
}

/// `(k, T^k, T^k·α)` with `T^k·α ∈ (0, √2)`. Best approximations of `α`
/// are those of the representative translated back by `p ↦ p − k√2·q`.
pub fn normalize_alpha(alpha: &Surd) -> Result<(BigInt, Mat2, Surd)> {
    // k = −⌊α/√2⌋
    let scaled = alpha.mul_q(&QRt2::inv_sqrt2());
    let k = -scaled.floor();
    let shift = translation(&k);
    let rep = shift.apply(alpha)?;
    if rep.sign() == 0 {
        return Err(Error::InputInQH4(alpha.to_string()));
    }
    Ok((k, shift, rep))
}

enum Source {
    Surd {
        tails: Vec<Surd>,
        seen: HashMap<Surd, usize>,
        /// `(j, L)` once `α_{j+L} = α_j` was observed.
        period: Option<(usize, usize)>,
        end: Option<Termination>,
    },
    Stream(DigitStream),
}

/// The H4-expansion of a positive real, computed lazily.
///
/// Backed either by an exact surd (digits from the digit map, tails exact)
/// or by a digit stream (tails only through digit comparisons, or exactly
/// when the stream is eventually periodic).
pub struct Expansion {
    digits: Vec<u8>,
    src: Source,
    cap: usize,
    stream_tails: HashMap<usize, Surd>,
}

impl Expansion {
    pub fn of_surd(alpha: Surd) -> Result<Expansion> {
        if alpha.sign() <= 0 {
            return Err(Error::Domain(format!("expansion needs α > 0, got {alpha}")));
        }
        let mut seen = HashMap::new();
        seen.insert(alpha.clone(), 0);
        Ok(Expansion {
            digits: Vec::new(),
            src: Source::Surd { tails: vec![alpha], seen, period: None, end: None },
            cap: DEFAULT_PERIOD_CAP,
            stream_tails: HashMap::new(),
        })
    }

    pub fn of_stream(stream: DigitStream) -> Expansion {
        Expansion { digits: Vec::new(), src: Source::Stream(stream), cap: DEFAULT_PERIOD_CAP, stream_tails: HashMap::new() }
    }

    /// Bound on tail states remembered for period detection.
    pub fn with_cap(mut self, cap: usize) -> Expansion {
        self.cap = cap;
        self
    }

    pub fn stream(&self) -> Option<&DigitStream> {
        match &self.src {
            Source::Stream(s) => Some(s),
            Source::Surd { .. } => None,
        }
    }

    pub fn alpha(&self) -> Option<&Surd> {
        match &self.src {
            Source::Surd { tails, .. } => Some(&tails[0]),
            Source::Stream(_) => None,
        }
    }

    fn step_surd(&mut self) -> Result<()> {
        let n = self.digits.len();
        let Source::Surd { tails, seen, period, end } = &mut self.src else { unreachable!() };
        if let Some((j, l)) = *period {
            let k = n + 1;
            self.digits.push(self.digits[j + (k - j - 1) % l]);
            return Ok(());
        }
        if end.is_some() {
            return Err(Error::Terminated { digits: n });
        }
        let x = &tails[n];
        match next_digit(x) {
            Ok((d, tail)) => {
                self.digits.push(d);
                if n < self.cap {
                    if let Some(&j) = seen.get(&tail) {
                        *period = Some((j, n + 1 - j));
                        seen.clear();
                    } else {
                        seen.insert(tail.clone(), n + 1);
                    }
                }
                tails.push(tail);
                Ok(())
            }
            Err(Error::Terminated { .. }) => {
                *end = Some(Termination { prefix: self.digits.clone(), completions: boundary_completions(x) });
                Err(Error::Terminated { digits: n })
            }
            Err(e) => Err(e),
        }
    }

    /// Makes `d_1 … d_n` available.
    pub fn ensure(&mut self, n: usize) -> Result<()> {
        while self.digits.len() < n {
            match &self.src {
                Source::Stream(s) => {
                    let k = self.digits.len() + 1;
                    match s.digit(k) {
                        Some(d) => self.digits.push(d),
                        None => return Err(Error::Terminated { digits: k - 1 }),
                    }
                }
                Source::Surd { .. } => self.step_surd()?,
            }
        }
        Ok(())
    }

    /// `d_n`, `n ≥ 1`.
    pub fn digit(&mut self, n: usize) -> Result<u8> {
        self.ensure(n)?;
        Ok(self.digits[n - 1])
    }

    pub fn digits(&mut self, n: usize) -> Result<&[u8]> {
        self.ensure(n)?;
        Ok(&self.digits[..n])
    }

    /// Digits computed so far.
    pub fn known_digits(&self) -> &[u8] {
        &self.digits
    }

    /// Set once a surd expansion has hit a point of Q(H4).
    pub fn termination(&self) -> Option<&Termination> {
        match &self.src {
            Source::Surd { end, .. } => end.as_ref(),
            Source::Stream(_) => None,
        }
    }

    /// The exact tail `α_n`, when available.
    pub fn tail(&mut self, n: usize) -> Result<Option<Surd>> {
        match &self.src {
            Source::Stream(s @ DigitStream::EventuallyPeriodic { preperiod, period }) => {
                let key = if n < preperiod.len() { n } else { preperiod.len() + (n - preperiod.len()) % period.len() };
                if let Some(t) = self.stream_tails.get(&key) {
                    return Ok(Some(t.clone()));
                }
                let t = shift_stream(s, key)?.to_surd()?;
                self.stream_tails.insert(key, t.clone());
                Ok(Some(t))
            }
            Source::Stream(_) => Ok(None),
            Source::Surd { .. } => {
                if n > 0 {
                    self.ensure(n)?;
                }
                let Source::Surd { tails, period, .. } = &self.src else { unreachable!() };
                if n < tails.len() {
                    return Ok(Some(tails[n].clone()));
                }
                let (j, l) = period.expect("tails beyond the computed range imply a period");
                Ok(Some(tails[j + (n - j) % l].clone()))
            }
        }
    }

    /// Sign of `α_n − 1`.
    pub fn tail_cmp_one(&mut self, n: usize) -> Result<i8> {
        if let Source::Stream(s) = &self.src {
            return s.compare_tail_to_one(n, self.cap);
        }
        let t = self.tail(n)?.expect("surd tails are exact");
        Ok(ord_sign(t.cmp_q(&QRt2::one())))
    }

    /// `m(α)`: the number of leading digits 3.
    pub fn leading_threes(&mut self) -> Result<usize> {
        let mut m = 0;
        while self.digit(m + 1)? == 3 {
            m += 1;
        }
        Ok(m)
    }

    /// The eventually periodic stream of a quadratic surd, found by exact
    /// repetition of a tail within the cap.
    pub fn detect_period(&mut self) -> Result<DigitStream> {
        if let Source::Stream(s) = &self.src {
            return match s {
                DigitStream::EventuallyPeriodic { .. } => Ok(s.clone()),
                _ => Err(Error::NonPeriodicInput),
            };
        }
        loop {
            if let Source::Surd { period: Some((j, l)), .. } = &self.src {
                let (j, l) = (*j, *l);
                self.ensure(j + l)?;
                return DigitStream::periodic(self.digits[..j].to_vec(), self.digits[j..j + l].to_vec());
            }
            let n = self.digits.len();
            if n >= self.cap {
                return Err(Error::CapExceeded(self.cap));
            }
            self.step_surd()?;
        }
    }

    /// States `G_0 … G_{n_max}`.
    pub fn convergents(&mut self, n_max: usize) -> Result<Vec<ConvergentState>> {
        self.ensure(n_max)?;
        let mut out = Vec::with_capacity(n_max + 1);
        let mut g = Mat2::identity();
        out.push(ConvergentState { n: 0, g: g.clone(), digit: None });
        for n in 1..=n_max {
            let d = self.digits[n - 1];
            push_digit(&mut g, d);
            out.push(ConvergentState { n, g: g.clone(), digit: Some(d) });
        }
        Ok(out)
    }
}

/// The stream with its first `n` digits removed.
pub fn shift_stream(s: &DigitStream, n: usize) -> Result<DigitStream> {
    match s {
        DigitStream::EventuallyPeriodic { preperiod, period } => {
            if n <= preperiod.len() {
                DigitStream::periodic(preperiod[n..].to_vec(), period.clone())
            } else {
                let mut p = period.clone();
                p.rotate_left((n - preperiod.len()) % period.len());
                DigitStream::periodic(vec![], p)
            }
        }
        DigitStream::Finite { digits } => Ok(DigitStream::Finite { digits: digits[n.min(digits.len())..].to_vec() }),
        DigitStream::Generated { .. } => Err(Error::NonPeriodicInput),
    }
}

pub(crate) fn ord_sign(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// `G_n` together with the digit that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergentState {
    pub n: usize,
    pub g: Mat2,
    pub digit: Option<u8>,
}

impl ConvergentState {
    /// `α*_n = w_n/u_n`; ∞ while `u_n = 0`.
    pub fn alpha_star(&self) -> ProjValue {
        ProjValue::from_pair(&self.g.w, &self.g.u)
    }

    /// Sign of `α*_n − 1`; never 0 since `u_n ≠ w_n`.
    pub fn alpha_star_vs_one(&self) -> i8 {
        ord_sign(self.alpha_star().cmp_q(&QRt2::one()))
    }

    /// `t_n/u_n`
    pub fn right(&self) -> ProjValue {
        self.g.at_infinity()
    }

    /// `v_n/w_n`
    pub fn left(&self) -> ProjValue {
        self.g.at_zero()
    }
}

/// `detect_period` on a surd.
pub fn detect_period(alpha: &Surd, cap: usize) -> Result<DigitStream> {
    Expansion::of_surd(alpha.clone())?.with_cap(cap).detect_period()
}
