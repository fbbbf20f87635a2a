//! The ring Z[√2] with exact sign and order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An element `a + b√2` of Z[√2].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZRt2 {
    pub a: BigInt,
    pub b: BigInt,
}

fn int_sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl ZRt2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        ZRt2 { a: a.into(), b: b.into() }
    }

    pub fn int(a: impl Into<BigInt>) -> Self {
        ZRt2 { a: a.into(), b: BigInt::zero() }
    }

    /// `c·√2`
    pub fn sqrt2_times(c: impl Into<BigInt>) -> Self {
        ZRt2 { a: BigInt::zero(), b: c.into() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn sqrt2() -> Self {
        Self::sqrt2_times(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        ZRt2 { a: self.a.clone(), b: -&self.b }
    }

    /// `a² − 2b²`, the field norm.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(2) * &self.b * &self.b
    }

    /// Exact sign of `a + b√2` as -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        let sa = int_sign(&self.a);
        let sb = int_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // opposite signs: the larger of a² and 2b² wins
        let lhs = &self.a * &self.a;
        let rhs = BigInt::from(2) * &self.b * &self.b;
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_odd_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_odd()
    }

    /// True for elements of √2·Z (including 0).
    pub fn is_sqrt2_multiple(&self) -> bool {
        self.a.is_zero()
    }

    /// `self·√2`
    pub fn mul_sqrt2(&self) -> Self {
        ZRt2 { a: &self.b * 2, b: self.a.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ZRt2 { a: &self.a * k, b: &self.b * k }
    }

    /// gcd of the two integer coordinates.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b)
    }

    /// Divides both coordinates by an integer that is known to divide them.
    pub fn div_int_exact(&self, k: &BigInt) -> Self {
        debug_assert!((&self.a % k).is_zero() && (&self.b % k).is_zero());
        ZRt2 { a: &self.a / k, b: &self.b / k }
    }

    /// `self / other` when the quotient lies in Z[√2].
    pub fn div_exact(&self, other: &ZRt2) -> Option<ZRt2> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm();
        let prod = self * &other.conj();
        if (&prod.a % &n).is_zero() && (&prod.b % &n).is_zero() {
            Some(ZRt2 { a: prod.a / &n, b: prod.b / &n })
        } else {
            None
        }
    }

    /// The positive square root in Z[√2], if there is one.
    ///
    /// Z[√2] is integrally closed, so this also decides squareness in Q(√2)
    /// for integral elements.
    pub fn sqrt_exact(&self) -> Option<ZRt2> {
        if self.is_zero() {
            return Some(ZRt2::zero());
        }
        if !self.is_positive() {
            return None;
        }
        let nrm = self.norm();
        if nrm.is_negative() {
            return None;
        }
        let n = nrm.sqrt();
        if &n * &n != nrm {
            return None;
        }
        let two = BigInt::from(2);
        let four = BigInt::from(4);
        for n_signed in [n.clone(), -n] {
            // x² − 2y² = n_signed, x² + 2y² = a
            let x2 = &self.a + &n_signed;
            let y2 = &self.a - &n_signed;
            if x2.is_negative() || y2.is_negative() {
                continue;
            }
            if !(&x2 % &two).is_zero() || !(&y2 % &four).is_zero() {
                continue;
            }
            let x2 = x2 / &two;
            let y2 = y2 / &four;
            let x = x2.sqrt();
            let y = y2.sqrt();
            if &x * &x != x2 || &y * &y != y2 {
                continue;
            }
            for (sx, sy) in [(1, 1), (1, -1), (-1, 1)] {
                let cand = ZRt2::new(&x * sx, &y * sy);
                if cand.is_positive() && &(&cand * &cand) == self {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Double-precision value; diagnostics only.
    pub fn to_f64(&self) -> f64 {
        crate::field::eval::zrt2_to_f64(self)
    }

    pub fn pow(&self, e: u32) -> ZRt2 {
        let mut acc = ZRt2::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for ZRt2 {
    fn from(v: i64) -> Self {
        ZRt2::int(v)
    }
}

impl From<BigInt> for ZRt2 {
    fn from(v: BigInt) -> Self {
        ZRt2::int(v)
    }
}

impl Ord for ZRt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl PartialOrd for ZRt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a ZRt2> for &'a ZRt2 {
    type Output = ZRt2;
    fn add(self, rhs: &ZRt2) -> ZRt2 {
        ZRt2 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a ZRt2> for &'a ZRt2 {
    type Output = ZRt2;
    fn sub(self, rhs: &ZRt2) -> ZRt2 {
        ZRt2 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a ZRt2> for &'a ZRt2 {
    type Output = ZRt2;
    fn mul(self, rhs: &ZRt2) -> ZRt2 {
        let two = BigInt::from(2);
        ZRt2 {
            a: &self.a * &rhs.a + two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &ZRt2 {
    type Output = ZRt2;
    fn neg(self) -> ZRt2 {
        ZRt2 { a: -&self.a, b: -&self.b }
    }
}

impl Neg for ZRt2 {
    type Output = ZRt2;
    fn neg(self) -> ZRt2 {
        ZRt2 { a: -self.a, b: -self.b }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ZRt2> for ZRt2 {
            type Output = ZRt2;
            fn $m(self, rhs: ZRt2) -> ZRt2 {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ZRt2> for ZRt2 {
            type Output = ZRt2;
            fn $m(self, rhs: &ZRt2) -> ZRt2 {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ZRt2> for &'a ZRt2 {
            type Output = ZRt2;
            fn $m(self, rhs: ZRt2) -> ZRt2 {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&ZRt2> for ZRt2 {
    fn add_assign(&mut self, rhs: &ZRt2) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl fmt::Display for ZRt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rt = |b: &BigInt| -> String {
            if b.is_one() {
                "√2".to_string()
            } else if *b == -BigInt::one() {
                "-√2".to_string()
            } else {
                format!("{b}√2")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}", rt(&self.b)),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}", self.a, rt(&-&self.b))
                } else {
                    write!(f, "{}+{}", self.a, rt(&self.b))
                }
            }
        }
    }
}

impl fmt::Debug for ZRt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZRt2({self})")
    }
}

/// Writes an integer as a JSON number when it fits in i64, else as a string.
pub(crate) fn serialize_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(x) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.serialize_str(&x.to_string()),
    }
}

/// JSON pair `[a, b]`; integers beyond i64 are written as strings.
impl Serialize for ZRt2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        for x in [&self.a, &self.b] {
            match i64::try_from(x) {
                Ok(v) => t.serialize_element(&v)?,
                Err(_) => t.serialize_element(&x.to_string())?,
            }
        }
        t.end()
    }
}

impl<'de> Deserialize<'de> for ZRt2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum IntLit {
            Num(i64),
            Str(String),
        }
        let pair: [IntLit; 2] = Deserialize::deserialize(d)?;
        let conv = |x: &IntLit| -> Result<BigInt, D::Error> {
            match x {
                IntLit::Num(v) => Ok(BigInt::from(*v)),
                IntLit::Str(s) => s
                    .parse::<BigInt>()
                    .map_err(|e| serde::de::Error::custom(format!("bad integer {s:?}: {e}"))),
            }
        };
        Ok(ZRt2 { a: conv(&pair[0])?, b: conv(&pair[1])? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_examples() {
        assert_eq!(ZRt2::new(0, 0).sign(), 0);
        assert_eq!(ZRt2::new(1, -1).sign(), -1);
        assert_eq!(ZRt2::new(-2, 3).sign(), 1);
        assert_eq!(ZRt2::new(-3, 2).sign(), -1);
        assert_eq!(ZRt2::new(3, -2).sign(), 1);
    }

    #[test]
    fn norm_and_conj() {
        let x = ZRt2::new(3, 2);
        assert_eq!(x.norm(), BigInt::from(1));
        assert_eq!(&x * &x.conj(), ZRt2::int(1));
    }

    #[test]
    fn exact_sqrt() {
        let x = ZRt2::new(1, 1);
        let sq = &x * &x;
        assert_eq!(sq.sqrt_exact(), Some(x));
        assert_eq!(ZRt2::int(2).sqrt_exact(), Some(ZRt2::sqrt2()));
        assert_eq!(ZRt2::int(17).sqrt_exact(), None);
        assert_eq!(ZRt2::new(6, 0).sqrt_exact(), None);
        // (1-√2)² = 3-2√2 > 0, root is √2-1
        assert_eq!(ZRt2::new(3, -2).sqrt_exact(), Some(ZRt2::new(-1, 1)));
    }

    #[test]
    fn exact_division() {
        let x = ZRt2::new(5, 3);
        let y = ZRt2::new(1, 1);
        assert_eq!((&x * &y).div_exact(&y), Some(x));
        assert_eq!(ZRt2::int(1).div_exact(&ZRt2::int(2)), None);
    }

    #[test]
    fn display() {
        assert_eq!(ZRt2::new(3, 0).to_string(), "3");
        assert_eq!(ZRt2::new(0, 2).to_string(), "2√2");
        assert_eq!(ZRt2::new(1, -1).to_string(), "1-√2");
        assert_eq!(ZRt2::new(0, -1).to_string(), "-√2");
    }
}
