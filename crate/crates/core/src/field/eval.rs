//! Fixed-point decimal evaluation of exact values.
//!
//! Used for rendering, floor estimates and numeric cross-checks. Nothing in
//! the comparison paths depends on it: every decision is made exactly and
//! these estimates are corrected by exact comparisons where they are used.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{QRt2, ZRt2};

/// Decimal digits needed to write `|x|`.
pub(crate) fn dec_digits(x: &BigInt) -> u64 {
    x.bits() * 30103 / 100000 + 1
}

pub(crate) fn pow10(l: u64) -> BigInt {
    BigInt::from(10).pow(l as u32)
}

/// `⌊√2·10^l⌋`
pub(crate) fn sqrt2_fixed(l: u64) -> BigInt {
    (BigInt::from(2) * pow10(2 * l)).sqrt()
}

/// `x·10^l`, truncated.
pub(crate) fn zrt2_fixed(x: &ZRt2, l: u64) -> BigInt {
    &x.a * pow10(l) + &x.b * sqrt2_fixed(l)
}

pub(crate) fn qrt2_fixed(x: &QRt2, l: u64) -> BigInt {
    zrt2_fixed(x.num(), l) / x.den()
}

/// Working scale giving at least `digits` correct places for values built
/// from the given integers.
pub(crate) fn working_scale<'a>(digits: u64, ints: impl IntoIterator<Item = &'a BigInt>) -> u64 {
    let widest = ints.into_iter().map(dec_digits).max().unwrap_or(1);
    digits + 2 * widest + 20
}

/// Renders a fixed-point integer at scale `10^l` with `digits` decimals,
/// rounded half away from zero.
pub(crate) fn render_fixed(v: &BigInt, l: u64, digits: u64) -> String {
    let neg = v.is_negative();
    let mag = v.abs();
    let drop = l - digits;
    let half = pow10(drop) / 2;
    let rounded: BigInt = (mag + half) / pow10(drop);
    let s = rounded.to_string();
    let d = digits as usize;
    let (int_part, frac_part) = if s.len() > d {
        (s[..s.len() - d].to_string(), s[s.len() - d..].to_string())
    } else {
        ("0".to_string(), format!("{}{}", "0".repeat(d - s.len()), s))
    };
    let sign = if neg && !rounded_is_zero(&int_part, &frac_part) { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

fn rounded_is_zero(i: &str, f: &str) -> bool {
    i.chars().chain(f.chars()).all(|c| c == '0')
}

pub(crate) fn fixed_to_f64(v: &BigInt, l: u64) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    format!("{v}e-{l}").parse::<f64>().unwrap_or(f64::NAN)
}

pub(crate) fn zrt2_to_f64(x: &ZRt2) -> f64 {
    let l = working_scale(20, [&x.a, &x.b]);
    fixed_to_f64(&zrt2_fixed(x, l), l)
}

pub(crate) fn qrt2_to_f64(x: &QRt2) -> f64 {
    let l = working_scale(20, [&x.num().a, &x.num().b, x.den()]);
    fixed_to_f64(&qrt2_fixed(x, l), l)
}

pub(crate) fn qrt2_floor_estimate(x: &QRt2) -> BigInt {
    let l = working_scale(4, [&x.num().a, &x.num().b, x.den()]);
    let v = qrt2_fixed(x, l);
    let p = pow10(l);
    // floor division toward -inf
    let q = &v / &p;
    if v.is_negative() && !(&v % &p).is_zero() {
        q - 1
    } else {
        q
    }
}
