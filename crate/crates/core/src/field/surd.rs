//! Quadratic surds over Q(√2).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::eval;
use super::{QRt2, ZRt2};
use crate::error::{Error, Result};

/// Largest prime tried when pulling square factors out of a radicand.
const SQUARE_FACTOR_TRIAL_LIMIT: u64 = 20_000;

/// A real number `x + y·√d` with `x, y ∈ Q(√2)` and `d ∈ Z[√2]`, `d > 0`.
///
/// Canonical form: when `y ≠ 0` the radicand `d` is not a square in Z[√2]
/// and carries no removable integer square factor below the trial limit;
/// when `y = 0` the radicand is stored as 1. Equality and hashing are
/// structural, which coincides with value equality for surds sharing a
/// radicand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    x: QRt2,
    y: QRt2,
    d: ZRt2,
}

/// The `(P + Q√D)/S` literal used on the command line and in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurdLiteral {
    #[serde(rename = "P")]
    pub p: ZRt2,
    #[serde(rename = "Q")]
    pub q: ZRt2,
    #[serde(rename = "D")]
    pub d: ZRt2,
    #[serde(rename = "S")]
    pub s: ZRt2,
}

impl Surd {
    /// `(p + q·√d) / s`.
    pub fn new(p: ZRt2, q: ZRt2, d: ZRt2, s: ZRt2) -> Result<Surd> {
        if s.is_zero() {
            return Err(Error::Validation("surd denominator S is zero".into()));
        }
        if !d.is_positive() {
            return Err(Error::Validation(format!("radicand D = {d} is not positive")));
        }
        let x = QRt2::ratio(&p, &s);
        let y = QRt2::ratio(&q, &s);
        Ok(Surd::from_parts(x, y, d))
    }

    pub fn from_literal(lit: &SurdLiteral) -> Result<Surd> {
        Surd::new(lit.p.clone(), lit.q.clone(), lit.d.clone(), lit.s.clone())
    }

    /// Builds and canonicalizes `x + y√d`; `d` must be positive.
    pub(crate) fn from_parts(x: QRt2, y: QRt2, d: ZRt2) -> Surd {
        debug_assert!(d.is_positive());
        if y.is_zero() {
            return Surd { x, y, d: ZRt2::one() };
        }
        if let Some(r) = d.sqrt_exact() {
            let x = &x + &(&y * &QRt2::from_zrt2(r));
            return Surd { x, y: QRt2::zero(), d: ZRt2::one() };
        }
        let (k, d) = extract_square_content(&d);
        let y = y.scale_int(&k);
        Surd { x, y, d }
    }

    pub fn from_qrt2(x: QRt2) -> Surd {
        Surd { x, y: QRt2::zero(), d: ZRt2::one() }
    }

    pub fn int(v: i64) -> Surd {
        Surd::from_qrt2(QRt2::int(v))
    }

    pub fn zero() -> Surd {
        Surd::int(0)
    }

    pub fn one() -> Surd {
        Surd::int(1)
    }

    /// Rational part `x`.
    pub fn rational_part(&self) -> &QRt2 {
        &self.x
    }

    /// Coefficient `y` of `√d`.
    pub fn radical_coeff(&self) -> &QRt2 {
        &self.y
    }

    pub fn radicand(&self) -> &ZRt2 {
        &self.d
    }

    /// True when the value lies in Q(√2).
    pub fn is_degenerate(&self) -> bool {
        self.y.is_zero()
    }

    pub fn as_qrt2(&self) -> Option<&QRt2> {
        self.is_degenerate().then_some(&self.x)
    }

    /// True when the value is in √2·Q (zero included), i.e. in Q(H4) ∪ {0}.
    pub fn in_q_h4(&self) -> bool {
        self.is_degenerate() && self.x.is_sqrt2_rational()
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> i8 {
        sign_of(&self.x, &self.y, &self.d)
    }

    /// The literal `(P + Q√D)/S` with an integer `S > 0`.
    pub fn to_literal(&self) -> SurdLiteral {
        let s = self.x.den().lcm(self.y.den());
        let p = self.x.num().scale(&(&s / self.x.den()));
        let q = self.y.num().scale(&(&s / self.y.den()));
        SurdLiteral { p, q, d: self.d.clone(), s: ZRt2::int(s) }
    }

    /// Brings two surds onto a common radicand.
    fn align(&self, other: &Surd) -> Result<(Surd, Surd)> {
        if self.d == other.d {
            return Ok((self.clone(), other.clone()));
        }
        if self.is_degenerate() {
            return Ok((Surd { x: self.x.clone(), y: QRt2::zero(), d: other.d.clone() }, other.clone()));
        }
        if other.is_degenerate() {
            return Ok((self.clone(), Surd { x: other.x.clone(), y: QRt2::zero(), d: self.d.clone() }));
        }
        // √d1 = s/√d2 = (s/d2)·√d2 whenever d1·d2 = s²
        match (&self.d * &other.d).sqrt_exact() {
            Some(s) => {
                let factor = QRt2::ratio(&s, &other.d);
                let y = &self.y * &factor;
                Ok((Surd { x: self.x.clone(), y, d: other.d.clone() }, other.clone()))
            }
            None => Err(Error::MixedRadicands {
                left: self.d.to_string(),
                right: other.d.to_string(),
            }),
        }
    }

    /// Re-expresses `self` over the radicand of `other` when both span the
    /// same quadratic extension.
    pub fn rebased_like(&self, other: &Surd) -> Result<Surd> {
        Ok(self.align(other)?.0)
    }

    fn finish(x: QRt2, y: QRt2, d: ZRt2) -> Surd {
        if y.is_zero() {
            Surd { x, y, d: ZRt2::one() }
        } else {
            Surd { x, y, d }
        }
    }

    pub fn try_add(&self, other: &Surd) -> Result<Surd> {
        let (a, b) = self.align(other)?;
        Ok(Surd::finish(&a.x + &b.x, &a.y + &b.y, a.d))
    }

    pub fn try_sub(&self, other: &Surd) -> Result<Surd> {
        let (a, b) = self.align(other)?;
        Ok(Surd::finish(&a.x - &b.x, &a.y - &b.y, a.d))
    }

    pub fn try_mul(&self, other: &Surd) -> Result<Surd> {
        let (a, b) = self.align(other)?;
        let dq = QRt2::from_zrt2(a.d.clone());
        let x = &(&a.x * &b.x) + &(&(&a.y * &b.y) * &dq);
        let y = &(&a.x * &b.y) + &(&a.y * &b.x);
        Ok(Surd::finish(x, y, a.d))
    }

    pub fn try_div(&self, other: &Surd) -> Result<Surd> {
        let (a, b) = self.align(other)?;
        let dq = QRt2::from_zrt2(a.d.clone());
        // (x1 + y1√d)(x2 − y2√d) / (x2² − y2²d)
        let den = &(&b.x * &b.x) - &(&(&b.y * &b.y) * &dq);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let x = &(&a.x * &b.x) - &(&(&a.y * &b.y) * &dq);
        let y = &(&a.y * &b.x) - &(&a.x * &b.y);
        Ok(Surd::finish(&x / &den, &y / &den, a.d))
    }

    pub fn neg(&self) -> Surd {
        Surd { x: -&self.x, y: -&self.y, d: self.d.clone() }
    }

    pub fn abs(&self) -> Surd {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Surd> {
        Surd::one().try_div(self)
    }

    pub fn add_q(&self, c: &QRt2) -> Surd {
        Surd { x: &self.x + c, y: self.y.clone(), d: self.d.clone() }
    }

    pub fn mul_q(&self, c: &QRt2) -> Surd {
        Surd::finish(&self.x * c, &self.y * c, self.d.clone())
    }

    pub fn mul_z(&self, c: &ZRt2) -> Surd {
        self.mul_q(&QRt2::from_zrt2(c.clone()))
    }

    /// Exact comparison of values.
    pub fn try_cmp(&self, other: &Surd) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign().cmp(&0))
    }

    /// Exact comparison against an element of Q(√2); never fails.
    pub fn cmp_q(&self, c: &QRt2) -> Ordering {
        sign_of(&(&self.x - c), &self.y, &self.d).cmp(&0)
    }

    pub fn cmp_z(&self, c: &ZRt2) -> Ordering {
        self.cmp_q(&QRt2::from_zrt2(c.clone()))
    }

    /// Image under `z ↦ (a z + b)/(c z + e)`.
    pub fn mobius(&self, a: &ZRt2, b: &ZRt2, c: &ZRt2, e: &ZRt2) -> Result<Surd> {
        let num = self.mul_z(a).add_q(&QRt2::from_zrt2(b.clone()));
        let den = self.mul_z(c).add_q(&QRt2::from_zrt2(e.clone()));
        if den.sign() == 0 {
            return Err(Error::PoleAtValue);
        }
        num.try_div(&den)
    }

    /// `⌊value⌋`, decided exactly.
    pub fn floor(&self) -> BigInt {
        let mut k = self.floor_estimate();
        while self.cmp_q(&QRt2::int(k.clone())) == Ordering::Less {
            k -= 1;
        }
        while self.cmp_q(&QRt2::int(&k + 1)) != Ordering::Less {
            k += 1;
        }
        k
    }

    fn coefficient_ints(&self) -> Vec<&BigInt> {
        vec![
            &self.x.num().a,
            &self.x.num().b,
            self.x.den(),
            &self.y.num().a,
            &self.y.num().b,
            self.y.den(),
            &self.d.a,
            &self.d.b,
        ]
    }

    fn fixed(&self, l: u64) -> BigInt {
        let xv = eval::qrt2_fixed(&self.x, l);
        if self.y.is_zero() {
            return xv;
        }
        let d_fixed = eval::zrt2_fixed(&self.d, l);
        let sqrt_d = (d_fixed * eval::pow10(l)).sqrt();
        let yv = eval::zrt2_fixed(self.y.num(), l) * sqrt_d / eval::pow10(l) / self.y.den();
        xv + yv
    }

    fn floor_estimate(&self) -> BigInt {
        let l = eval::working_scale(4, self.coefficient_ints());
        let v = self.fixed(l);
        let p = eval::pow10(l);
        let q = &v / &p;
        if v.is_negative() && !(&v % &p).is_zero() {
            q - 1
        } else {
            q
        }
    }

    /// Decimal rendering with `digits` places after the point.
    pub fn to_decimal(&self, digits: u64) -> String {
        let l = eval::working_scale(digits, self.coefficient_ints());
        eval::render_fixed(&self.fixed(l), l, digits)
    }

    pub fn to_f64(&self) -> f64 {
        let l = eval::working_scale(24, self.coefficient_ints());
        eval::fixed_to_f64(&self.fixed(l), l)
    }
}

/// Sign of `x + y√d`, `d > 0`, from the signs of `x`, `y` and `x² − y²d`.
fn sign_of(x: &QRt2, y: &QRt2, d: &ZRt2) -> i8 {
    let sx = x.sign();
    let sy = y.sign();
    if sy == 0 {
        return sx;
    }
    if sx == 0 || sx == sy {
        return if sx == 0 { sy } else { sx };
    }
    let diff = &(x * x) - &(&(y * y) * &QRt2::from_zrt2(d.clone()));
    match diff.sign() {
        1 => sx,
        -1 => sy,
        _ => 0,
    }
}

/// Splits `d = k²·d'` for integer square factors of the content of `d`.
fn extract_square_content(d: &ZRt2) -> (BigInt, ZRt2) {
    let mut c = d.content();
    let mut k = BigInt::one();
    let mut p = 2u64;
    while p <= SQUARE_FACTOR_TRIAL_LIMIT {
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        if p2 > c {
            break;
        }
        while (&c % &p2).is_zero() {
            c /= &p2;
            k *= &pb;
        }
        while (&c % &pb).is_zero() {
            c /= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = c.sqrt();
    if r > BigInt::one() && &r * &r == c {
        k *= r;
    }
    let kk = &k * &k;
    (k, d.div_int_exact(&kk))
}

/// The root of `A x² + B x + C = 0` with `+√disc` (`positive_branch`) or
/// `−√disc` in the quadratic formula.
pub fn quad_root(a: &ZRt2, b: &ZRt2, c: &ZRt2, positive_branch: bool) -> Result<Surd> {
    if a.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let disc = b * b - (&ZRt2::int(4) * a) * c;
    if !disc.is_positive() {
        return Err(Error::NegativeDiscriminant(disc.to_string()));
    }
    let q = if positive_branch { ZRt2::one() } else { -ZRt2::one() };
    Surd::new(-b, q, disc, &ZRt2::int(2) * a)
}

/// Serialized as the literal `{P, Q: [0, 0], D: [1, 0], S}`.
impl Serialize for QRt2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Surd::from_qrt2(self.clone()).to_literal().serialize(s)
    }
}

/// Serialized as its `{P, Q, D, S}` literal.
impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_literal().serialize(s)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let lit = self.to_literal();
        write!(f, "({} + ({})·√({}))/{}", lit.p, lit.q, lit.d, lit.s)
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt17_alpha() -> Surd {
        Surd::new(ZRt2::int(3), ZRt2::int(1), ZRt2::int(17), ZRt2::sqrt2_times(2)).unwrap()
    }

    #[test]
    fn compare_against_sqrt2_multiples() {
        let a = sqrt17_alpha();
        let r2 = Surd::from_qrt2(QRt2::sqrt2());
        let two_r2 = Surd::from_qrt2(QRt2::from_zrt2(ZRt2::sqrt2_times(2)));
        assert_eq!(a.try_cmp(&r2).unwrap(), Ordering::Greater);
        assert_eq!(a.try_cmp(&two_r2).unwrap(), Ordering::Less);
        assert_eq!(Surd::one().try_cmp(&Surd::one()).unwrap(), Ordering::Equal);
    }

    #[test]
    fn decimal_rendering() {
        // (3+√17)/(2√2) = 2.518398145491146...
        assert_eq!(sqrt17_alpha().to_decimal(12), "2.518398145491");
        assert_eq!(Surd::from_qrt2(QRt2::sqrt2()).to_decimal(10), "1.4142135624");
    }

    #[test]
    fn mixed_radicands_rejected() {
        let a = Surd::new(ZRt2::zero(), ZRt2::one(), ZRt2::int(3), ZRt2::one()).unwrap();
        let b = Surd::new(ZRt2::zero(), ZRt2::one(), ZRt2::int(5), ZRt2::one()).unwrap();
        assert!(matches!(a.try_cmp(&b), Err(Error::MixedRadicands { .. })));
    }

    #[test]
    fn radicands_differing_by_a_square_are_aligned() {
        // √3 vs √(3(1+√2)²) = (1+√2)√3
        let a = Surd::new(ZRt2::zero(), ZRt2::one(), ZRt2::int(3), ZRt2::one()).unwrap();
        let d2 = ZRt2::int(3) * ZRt2::new(3, 2);
        let b = Surd::new(ZRt2::zero(), ZRt2::one(), d2, ZRt2::one()).unwrap();
        let expect = a.mul_z(&ZRt2::new(1, 1));
        assert_eq!(b.try_cmp(&expect).unwrap(), Ordering::Equal);
    }

    #[test]
    fn square_radicands_collapse() {
        let s = Surd::new(ZRt2::int(1), ZRt2::int(1), ZRt2::new(3, 2), ZRt2::one()).unwrap();
        assert!(s.is_degenerate());
        assert_eq!(s.as_qrt2().unwrap(), &QRt2::from_zrt2(ZRt2::new(2, 1)));
        let t = Surd::new(ZRt2::zero(), ZRt2::one(), ZRt2::int(12), ZRt2::one()).unwrap();
        assert_eq!(t.radicand(), &ZRt2::int(3));
        assert_eq!(t.radical_coeff(), &QRt2::int(2));
    }

    #[test]
    fn quad_root_examples() {
        let one = quad_root(&ZRt2::one(), &ZRt2::zero(), &ZRt2::int(-1), true).unwrap();
        assert_eq!(one, Surd::one());
        let r = quad_root(&ZRt2::one(), &ZRt2::new(0, -1), &ZRt2::int(-1), true).unwrap();
        assert_eq!(r.to_decimal(3), "1.932");
        let check = r.try_mul(&r).unwrap().try_sub(&r.mul_z(&ZRt2::sqrt2())).unwrap().add_q(&QRt2::int(-1));
        assert_eq!(check.sign(), 0);
        let low = quad_root(&ZRt2::one(), &ZRt2::int(-3), &ZRt2::int(2), false).unwrap();
        assert_eq!(low, Surd::one());
        assert!(matches!(
            quad_root(&ZRt2::one(), &ZRt2::zero(), &ZRt2::one(), true),
            Err(Error::NegativeDiscriminant(_))
        ));
        assert!(matches!(
            quad_root(&ZRt2::zero(), &ZRt2::one(), &ZRt2::one(), true),
            Err(Error::ZeroLeadingCoefficient)
        ));
    }

    #[test]
    fn mobius_pole() {
        // z ↦ 1/(z − 1) at z = 1
        let r = Surd::one().mobius(&ZRt2::zero(), &ZRt2::one(), &ZRt2::one(), &ZRt2::int(-1));
        assert!(matches!(r, Err(Error::PoleAtValue)));
    }

    #[test]
    fn floor_exact() {
        assert_eq!(sqrt17_alpha().floor(), BigInt::from(2));
        assert_eq!(sqrt17_alpha().neg().floor(), BigInt::from(-3));
    }

    #[test]
    fn literal_roundtrip() {
        let a = sqrt17_alpha();
        let lit = a.to_literal();
        assert_eq!(Surd::from_literal(&lit).unwrap(), a);
        let json = serde_json::to_string(&lit).unwrap();
        let back: SurdLiteral = serde_json::from_str(&json).unwrap();
        assert_eq!(Surd::from_literal(&back).unwrap(), a);
    }
}
