use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{QRt2, Surd, ZRt2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `a / (√2·c)` with `a` odd.
    OddOverSqrt2,
    /// `√2·a / c` with `c` odd.
    Sqrt2OverOdd,
}

/// An element of Q(H4) = √2·Q in its unique reduced form `p/q`, `q > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFraction")]
pub struct H4Fraction {
    pub p: ZRt2,
    pub q: ZRt2,
    pub family: Family,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFraction {
    p: ZRt2,
    q: ZRt2,
    family: Family,
}

impl TryFrom<RawFraction> for H4Fraction {
    type Error = Error;
    fn try_from(r: RawFraction) -> Result<H4Fraction> {
        if r.q.is_zero() {
            return Err(Error::Validation("fraction denominator is zero".into()));
        }
        let f = H4Fraction::from_pair(&r.p, &r.q)?;
        if f.p != r.p || f.q != r.q || f.family != r.family {
            return Err(Error::Validation(format!("{}/{} is not in canonical form", r.p, r.q)));
        }
        Ok(f)
    }
}

impl H4Fraction {
    /// The fraction `√2·m/n`.
    pub fn canonicalize(m: &BigInt, n: &BigInt) -> Result<H4Fraction> {
        if n.is_zero() {
            return Err(Error::Validation("zero denominator".into()));
        }
        let g = m.gcd(n);
        let (mut m, mut n) = (m / &g, n / &g);
        if n.is_negative() {
            m = -m;
            n = -n;
        }
        if n.is_odd() {
            Ok(H4Fraction { p: ZRt2::sqrt2_times(m), q: ZRt2::int(n), family: Family::Sqrt2OverOdd })
        } else {
            let c = &n / 2;
            Ok(H4Fraction { p: ZRt2::int(m), q: ZRt2::sqrt2_times(c), family: Family::OddOverSqrt2 })
        }
    }

    pub fn from_value(x: &QRt2) -> Result<H4Fraction> {
        if !x.is_sqrt2_rational() {
            return Err(Error::NotInQH4(x.to_string()));
        }
        H4Fraction::canonicalize(&x.num().b, x.den())
    }

    /// Canonical form of `p/q`; fails unless the ratio lies in √2·Q.
    pub fn from_pair(p: &ZRt2, q: &ZRt2) -> Result<H4Fraction> {
        if q.is_zero() {
            return Err(Error::Validation("zero denominator".into()));
        }
        H4Fraction::from_value(&QRt2::ratio(p, q))
    }

    pub fn from_surd(x: &Surd) -> Result<H4Fraction> {
        match x.as_qrt2() {
            Some(q) => H4Fraction::from_value(q),
            None => Err(Error::NotInQH4(x.to_string())),
        }
    }

    /// `a√2` for an integer `a`.
    pub fn sqrt2_multiple(a: impl Into<BigInt>) -> H4Fraction {
        H4Fraction::canonicalize(&a.into(), &BigInt::one()).expect("denominator 1")
    }

    pub fn value(&self) -> QRt2 {
        QRt2::ratio(&self.p, &self.q)
    }

    /// `|qα − p|`, exact.
    pub fn error(&self, alpha: &Surd) -> Surd {
        alpha.mul_z(&self.q).add_q(&QRt2::from_zrt2(-&self.p)).abs()
    }

    /// `|α − p/q|`, exact.
    pub fn distance(&self, alpha: &Surd) -> Surd {
        alpha.add_q(&-self.value()).abs()
    }

    /// Order by value.
    pub fn cmp_value(&self, other: &H4Fraction) -> Ordering {
        (&self.p * &other.q).cmp(&(&other.p * &self.q))
    }
}

impl fmt::Display for H4Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.q;
        if q.is_one() || (q.a.is_zero() && q.b.is_one()) {
            write!(f, "{}/{}", self.p, q)
        } else if q.a.is_zero() {
            write!(f, "{}/({})", self.p, q)
        } else {
            write!(f, "{}/{}", self.p, q)
        }
    }
}

/// Ford circles at `x` and `y` are tangent iff `|ps − rq| = 1`.
pub fn ford_tangent(x: &H4Fraction, y: &H4Fraction) -> bool {
    (&x.p * &y.q - &y.p * &x.q).abs().is_one()
}

/// All canonical denominators with value at most `q_max`, ascending:
/// odd integers `c ≤ q_max` and `√2·c` with `2c² ≤ q_max²`.
pub fn denominator_ladder(q_max: u64) -> Vec<ZRt2> {
    let mut out: Vec<ZRt2> = Vec::new();
    let mut c = 1u64;
    while c <= q_max {
        out.push(ZRt2::int(c));
        c += 2;
    }
    let qq = (q_max as u128) * (q_max as u128);
    let mut c = 1u64;
    while 2 * (c as u128) * (c as u128) <= qq {
        out.push(ZRt2::sqrt2_times(c));
        c += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(m: i64, n: i64) -> H4Fraction {
        H4Fraction::canonicalize(&BigInt::from(m), &BigInt::from(n)).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let f = frac(1, 2);
        assert_eq!((f.p.clone(), f.q.clone()), (ZRt2::one(), ZRt2::sqrt2()));
        assert_eq!(f.family, Family::OddOverSqrt2);
        let f = frac(2, 1);
        assert_eq!((f.p.clone(), f.q.clone()), (ZRt2::sqrt2_times(2), ZRt2::one()));
        assert_eq!(f.family, Family::Sqrt2OverOdd);
        let f = frac(0, 1);
        assert_eq!((f.p, f.q), (ZRt2::zero(), ZRt2::one()));
        assert_eq!(frac(-6, -4), frac(3, 2));
        assert!(H4Fraction::from_value(&QRt2::one()).is_err());
    }

    #[test]
    fn fraction_display_forms() {
        let x = H4Fraction::from_pair(&ZRt2::int(7), &ZRt2::sqrt2_times(2)).unwrap();
        assert_eq!(x.to_string(), "7/(2√2)");
        assert_eq!(frac(2, 1).to_string(), "2√2/1");
        assert_eq!(frac(1, 2).to_string(), "1/√2");
    }

    #[test]
    fn tangency() {
        let zero = frac(0, 1);
        assert!(ford_tangent(&zero, &frac(1, 2)));
        assert!(!ford_tangent(&zero, &frac(1, 1)));
    }

    #[test]
    fn ladder_prefix() {
        let l = denominator_ladder(5);
        let want = [ZRt2::int(1), ZRt2::sqrt2(), ZRt2::sqrt2_times(2), ZRt2::int(3), ZRt2::sqrt2_times(3), ZRt2::int(5)];
        assert_eq!(l, want);
    }

    #[test]
    fn json_round_trip() {
        let x = frac(7, 4);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"p":[7,0],"q":[0,2],"family":"OddOverSqrt2"}"#);
        let back: H4Fraction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<H4Fraction>(r#"{"p":[14,0],"q":[0,4],"family":"OddOverSqrt2"}"#).is_err());
    }
}
