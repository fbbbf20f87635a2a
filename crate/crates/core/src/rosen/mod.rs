//! Rosen and dual Rosen continued fractions for λ = √2.
//!
//! Each expansion is computed twice: by iterating its map on an exact surd,
//! and by regrouping the H4-expansion into blocks of the letters
//! `A1·J, A2, A3` (Rosen) or `J·A1, A2, A3` (dual).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{push_digit, ConvergentState, Expansion};
use crate::field::serialize_bigint;
use crate::field::{QRt2, Surd, ZRt2};
use crate::hecke::{a_matrix, j_matrix, H4Fraction, Mat2};

/// One partial quotient `ε/a` of `⟦a_0; ε_1/a_1, ε_2/a_2, …⟧`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RosenDigit {
    pub eps: i8,
    #[serde(serialize_with = "serialize_bigint")]
    pub a: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    Rosen,
    DualRosen,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RosenExpansion {
    pub kind: Kind,
    #[serde(serialize_with = "serialize_bigint")]
    pub a0: BigInt,
    /// `digits[i − 1] = (ε_i, a_i)`
    pub digits: Vec<RosenDigit>,
}

impl RosenExpansion {
    /// `r_i/s_i` for `i = 0 ..= digits.len()`.
    pub fn convergents(&self) -> Result<Vec<H4Fraction>> {
        let mut out = Vec::with_capacity(self.digits.len() + 1);
        let (mut r2, mut s2) = (ZRt2::one(), ZRt2::zero());
        let (mut r1, mut s1) = (ZRt2::sqrt2_times(self.a0.clone()), ZRt2::one());
        out.push(H4Fraction::from_pair(&r1, &s1)?);
        for d in &self.digits {
            let a = ZRt2::sqrt2_times(d.a.clone());
            let e = ZRt2::int(d.eps);
            let r = &(&a * &r1) + &(&e * &r2);
            let s = &(&a * &s1) + &(&e * &s2);
            out.push(H4Fraction::from_pair(&r, &s)?);
            (r2, s2, r1, s1) = (r1, s1, r, s);
        }
        Ok(out)
    }

    /// Checks the uniqueness rules for `i ≥ 1`: `a_i = 1 ⇒ ε_{i+1} = +1`
    /// (Rosen), `ε_i = −1 ⇒ a_i ≥ 2` (dual).
    pub fn satisfies_uniqueness(&self) -> bool {
        let positive = self.digits.iter().all(|d| d.a >= BigInt::one());
        match self.kind {
            Kind::Rosen => positive && self.digits.windows(2).all(|w| !w[0].a.is_one() || w[1].eps == 1),
            Kind::DualRosen => positive && self.digits.iter().all(|d| d.eps == 1 || d.a >= BigInt::from(2)),
        }
    }
}

/// One step of the Rosen map: `a = ⌊x/√2 + 1/2⌋`, `ε = sign(x − a√2)`,
/// `x ↦ 1/|x − a√2|`.
fn rosen_step(x: &Surd) -> Result<(BigInt, i8, Surd)> {
    let a = x.mul_q(&QRt2::inv_sqrt2()).add_q(&QRt2::rational(1, 2)).floor();
    finish_step(x, a)
}

/// One step of the dual map: `ã = ⌊(x − 1)/√2⌋ + 1` on `x ≥ 1`, so that
/// `(ã − 1)√2 + 1 ≤ x < ã√2 + 1`.
fn dual_step(x: &Surd) -> Result<(BigInt, i8, Surd)> {
    let a = x.add_q(&QRt2::int(-1)).mul_q(&QRt2::inv_sqrt2()).floor() + 1;
    finish_step(x, a)
}

fn finish_step(x: &Surd, a: BigInt) -> Result<(BigInt, i8, Surd)> {
    let r = x.add_q(&QRt2::from_zrt2(ZRt2::sqrt2_times(-a.clone())));
    let eps = r.sign();
    if eps == 0 {
        return Err(Error::InputInQH4(x.to_string()));
    }
    Ok((a, eps, r.abs().recip()?))
}

/// Rosen digits by the map, `count` partial quotients after `a_0`.
pub fn rosen_digits(alpha: &Surd, count: usize) -> Result<RosenExpansion> {
    let mut digits = Vec::with_capacity(count);
    let (a0, mut eps, mut x) = rosen_step(alpha)?;
    for _ in 0..count {
        let (a, e, nx) = rosen_step(&x)?;
        digits.push(RosenDigit { eps, a });
        eps = e;
        x = nx;
    }
    Ok(RosenExpansion { kind: Kind::Rosen, a0, digits })
}

/// Dual Rosen digits by the map. For `0 < α < 1` the expansion starts
/// `⟦0; +1/ã_1, …⟧` with the tail `1/α`.
pub fn dual_rosen_digits(alpha: &Surd, count: usize) -> Result<RosenExpansion> {
    if alpha.sign() <= 0 {
        return Err(Error::Validation(format!("dual Rosen expansion needs α > 0, got {alpha}")));
    }
    let mut digits = Vec::with_capacity(count);
    let (a0, mut eps, mut x) = if alpha.cmp_q(&QRt2::one()) == Ordering::Less {
        (BigInt::zero(), 1, alpha.recip()?)
    } else {
        dual_step(alpha)?
    };
    for _ in 0..count {
        let (a, e, nx) = dual_step(&x)?;
        digits.push(RosenDigit { eps, a });
        eps = e;
        x = nx;
    }
    Ok(RosenExpansion { kind: Kind::DualRosen, a0, digits })
}

/// Letters of the regrouped H4-expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Letter {
    /// `A1·J`
    A1J,
    /// `J·A1`
    JA1,
    A2,
    A3,
}

impl Letter {
    pub fn matrix(self) -> Mat2 {
        match self {
            Letter::A1J => &a_matrix(1) * &j_matrix(),
            Letter::JA1 => &j_matrix() * &a_matrix(1),
            Letter::A2 => a_matrix(2),
            Letter::A3 => a_matrix(3),
        }
    }
}

/// Signs `sign(α*_k − 1)`, `k = 0 ..= n`, read off the digits.
fn star_signs(exp: &mut Expansion, n: usize) -> Result<Vec<i8>> {
    let mut out = vec![1i8];
    for k in 1..=n {
        let s = match exp.digit(k)? {
            3 => 1,
            1 => -1,
            _ => out[k - 1],
        };
        out.push(s);
    }
    Ok(out)
}

/// `M_n = G_n` when `α*_n > 1`, else `G_n·J`.
pub fn select_m(state: &ConvergentState) -> Mat2 {
    if state.alpha_star_vs_one() > 0 {
        state.g.clone()
    } else {
        &state.g * &j_matrix()
    }
}

/// `N_n = G_n` when `α_n > 1`, or `α_n = 1` and `α*_n > 1`; else `G_n·J`.
pub fn select_n(state: &ConvergentState, tail_sign: i8) -> Mat2 {
    let star = state.alpha_star_vs_one();
    if tail_sign > 0 || (tail_sign == 0 && star > 0) {
        state.g.clone()
    } else {
        &state.g * &j_matrix()
    }
}

/// Rosen letter `ℓ_n` with `M_{n+1} = M_n·ℓ_n`, from the interval of
/// `α'_n = M_n⁻¹·α`.
fn rosen_letter(star: i8, next_digit: u8) -> Letter {
    match (star > 0, next_digit) {
        (_, 2) => Letter::A2,
        (true, 1) | (false, 3) => Letter::A1J,
        _ => Letter::A3,
    }
}

/// Dual letter with `N_{n+1} = N_n·ℓ_n`, from the interval of
/// `α̃'_n = N_n⁻¹·α ≥ 1`: `[1, √2)`, `(√2, √2+1)` or `[√2+1, ∞)`.
fn dual_letter(exp: &mut Expansion, n: usize, star: i8) -> Result<Letter> {
    let tail = exp.tail_cmp_one(n)?;
    let direct = tail > 0 || (tail == 0 && star > 0);
    let d = exp.digit(n + 1)?;
    if d == 2 {
        return Ok(Letter::A2);
    }
    let next = exp.tail_cmp_one(n + 1)?;
    Ok(match (direct, d) {
        // α_n = α_{n+1} + √2
        (true, 3) => {
            if next >= 0 {
                Letter::A3
            } else {
                Letter::JA1
            }
        }
        // α_n < 1/√2 and 1/α_n > √2 + 1 iff α_{n+1} ≤ 1
        (false, 1) => {
            if next <= 0 {
                Letter::A3
            } else {
                Letter::JA1
            }
        }
        _ => return Err(Error::Domain(format!("inconsistent dual letter at n = {n}"))),
    })
}

pub fn rosen_letters(exp: &mut Expansion, n: usize) -> Result<Vec<Letter>> {
    let stars = star_signs(exp, n)?;
    (0..n).map(|k| Ok(rosen_letter(stars[k], exp.digit(k + 1)?))).collect()
}

pub fn dual_letters(exp: &mut Expansion, n: usize) -> Result<Vec<Letter>> {
    let stars = star_signs(exp, n)?;
    (0..n).map(|k| dual_letter(exp, k, stars[k])).collect()
}

/// Rosen digits read off the H4-expansion: the letter word splits into
/// blocks `A3^{a_0} A1J` (`ε_1 = +1`) or `A3^{a_0−1} A2` (`ε_1 = −1`),
/// then `A3^{a_i−1} A1J` or `A3^{a_i−2} A2`.
pub fn rosen_digits_from_expansion(exp: &mut Expansion, count: usize) -> Result<RosenExpansion> {
    let mut stars = vec![1i8];
    let mut n = 0usize;
    let mut blocks: Vec<(BigInt, i8)> = Vec::new();
    while blocks.len() < count + 2 {
        let mut k = BigInt::zero();
        loop {
            let d = exp.digit(n + 1)?;
            let letter = rosen_letter(stars[n], d);
            stars.push(match d {
                3 => 1,
                1 => -1,
                _ => stars[n],
            });
            n += 1;
            match letter {
                Letter::A3 => k += 1,
                Letter::A1J => {
                    blocks.push((k, 1));
                    break;
                }
                _ => {
                    blocks.push((k, -1));
                    break;
                }
            }
        }
    }
    let a0 = match blocks[0] {
        (ref k, 1) => k.clone(),
        (ref k, _) => k + 1,
    };
    let digits = (1..=count)
        .map(|i| {
            let eps = blocks[i - 1].1;
            let (k, next_eps) = &blocks[i];
            let a = if *next_eps == 1 { k + 1 } else { k + 2 };
            RosenDigit { eps, a }
        })
        .collect();
    Ok(RosenExpansion { kind: Kind::Rosen, a0, digits })
}

/// Dual digits read off the H4-expansion: blocks `A3^{ã_0−1} L(ε̃_1)` and
/// `A3^{ã_i−1−[ε̃_i = −1]} L(ε̃_{i+1})` with `L(−1) = A2`, `L(+1) = J·A1`.
/// When `α < 1` the word starts after `N_0 = J` and `ã_0 = 0`, `ε̃_1 = +1`.
pub fn dual_rosen_digits_from_expansion(exp: &mut Expansion, count: usize) -> Result<RosenExpansion> {
    let below_one = exp.tail_cmp_one(0)? < 0;
    let mut stars = vec![1i8];
    let mut n = 0usize;
    let mut blocks: Vec<(BigInt, i8)> = Vec::new();
    let need = if below_one { count } else { count + 1 };
    while blocks.len() < need {
        let mut k = BigInt::zero();
        loop {
            let letter = dual_letter(exp, n, stars[n])?;
            let d = exp.digit(n + 1)?;
            stars.push(match d {
                3 => 1,
                1 => -1,
                _ => stars[n],
            });
            n += 1;
            match letter {
                Letter::A3 => k += 1,
                Letter::JA1 => {
                    blocks.push((k, 1));
                    break;
                }
                _ => {
                    blocks.push((k, -1));
                    break;
                }
            }
        }
    }
    let (a0, mut eps, rest) = if below_one {
        (BigInt::zero(), 1i8, &blocks[..])
    } else {
        (&blocks[0].0 + 1, blocks[0].1, &blocks[1..])
    };
    let mut digits = Vec::with_capacity(count);
    for (k, next_eps) in rest.iter().take(count) {
        let a = if eps == -1 { k + 2 } else { k + 1 };
        digits.push(RosenDigit { eps, a });
        eps = *next_eps;
    }
    Ok(RosenExpansion { kind: Kind::DualRosen, a0, digits })
}

/// Distinct values of `M_n·∞` (Rosen) or `N_n·∞` (dual), `n ≥ m + 1`, for
/// all `n` with `min(u_n, w_n) ≤ q_max`, sorted by denominator.
pub fn selector_convergents(exp: &mut Expansion, kind: Kind, q_max: u64) -> Result<Vec<H4Fraction>> {
    let m = exp.leading_threes()?;
    let bound = ZRt2::int(q_max);
    let mut g = Mat2::identity();
    let mut out: Vec<H4Fraction> = Vec::new();
    let mut n = 0;
    loop {
        n += 1;
        push_digit(&mut g, exp.digit(n)?);
        if n < m + 1 {
            continue;
        }
        if g.u.clone().min(g.w.clone()) > bound {
            break;
        }
        let st = ConvergentState { n, g: g.clone(), digit: None };
        let sel = match kind {
            Kind::Rosen => select_m(&st),
            Kind::DualRosen => select_n(&st, exp.tail_cmp_one(n)?),
        };
        let f = H4Fraction::from_pair(&sel.t, &sel.u)?;
        if f.q <= bound && !out.contains(&f) {
            out.push(f);
        }
    }
    out.sort_by(|a, b| a.q.cmp(&b.q));
    Ok(out)
}

/// Convergents `i ≥ 0` of the map-based expansion with denominator at
/// most `q_max`.
pub fn convergents_up_to(alpha: &Surd, kind: Kind, q_max: u64) -> Result<Vec<H4Fraction>> {
    let bound = ZRt2::int(q_max);
    let mut count = 8;
    loop {
        let e = match kind {
            Kind::Rosen => rosen_digits(alpha, count)?,
            Kind::DualRosen => dual_rosen_digits(alpha, count)?,
        };
        let mut cs = e.convergents()?;
        if cs.last().is_some_and(|f| f.q > bound) {
            cs.retain(|f| f.q <= bound);
            return Ok(cs);
        }
        count *= 2;
    }
}

/// Which way the open case of the dual inclusion went for one input:
/// whether `r_0/s_0` is among the `N_n·∞`, and whether `α` lies in
/// `(m√2 + 1/√2, m√2 + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualInclusionReport {
    pub r0: H4Fraction,
    pub r0_among_dual_selectors: bool,
    pub alpha_in_window: bool,
    /// Every `N_n·∞` is a dual convergent (`i ≥ 1`) or `r_0/s_0`.
    pub inclusion_holds: bool,
}

pub fn dual_inclusion_report(alpha: &Surd, q_max: u64) -> Result<DualInclusionReport> {
    let mut exp = Expansion::of_surd(alpha.clone())?;
    let m = exp.leading_threes()?;
    let r0 = H4Fraction::sqrt2_multiple(rosen_digits(alpha, 0)?.a0);
    let sel = selector_convergents(&mut exp, Kind::DualRosen, q_max)?;
    let dual = convergents_up_to(alpha, Kind::DualRosen, q_max)?;
    let mw = QRt2::from_zrt2(ZRt2::sqrt2_times(m as i64));
    let lo = &mw + &QRt2::inv_sqrt2();
    let hi = &mw + &QRt2::one();
    let alpha_in_window = alpha.cmp_q(&lo) == Ordering::Greater && alpha.cmp_q(&hi) == Ordering::Less;
    Ok(DualInclusionReport {
        r0_among_dual_selectors: sel.contains(&r0),
        inclusion_holds: sel.iter().all(|f| *f == r0 || dual[1..].contains(f)),
        r0,
        alpha_in_window,
    })
}
