//! The field Q(√2) as normalized fractions over Z[√2].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ZRt2;

/// `num / den` with `den > 0` and `gcd(num.a, num.b, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRt2 {
    num: ZRt2,
    den: BigInt,
}

impl QRt2 {
    /// Panics if `den` is zero.
    pub fn new(num: ZRt2, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut q = QRt2 { num, den };
        q.normalize();
        q
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.num = -&self.num;
            self.den = -&self.den;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let g = self.num.content().gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_int_exact(&g);
            self.den = &self.den / &g;
        }
    }

    pub fn from_zrt2(x: ZRt2) -> Self {
        QRt2 { num: x, den: BigInt::one() }
    }

    pub fn int(v: impl Into<BigInt>) -> Self {
        Self::from_zrt2(ZRt2::int(v))
    }

    pub fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Self::new(ZRt2::int(n), d.into())
    }

    /// `x / y` for ring elements; panics if `y = 0`.
    pub fn ratio(x: &ZRt2, y: &ZRt2) -> Self {
        assert!(!y.is_zero(), "division by zero in Q(√2)");
        let n = y.norm();
        QRt2::new(x * &y.conj(), n)
    }

    pub fn zero() -> Self {
        Self::from_zrt2(ZRt2::zero())
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn sqrt2() -> Self {
        Self::from_zrt2(ZRt2::sqrt2())
    }

    /// `1/√2`
    pub fn inv_sqrt2() -> Self {
        QRt2::new(ZRt2::sqrt2(), BigInt::from(2))
    }

    pub fn num(&self) -> &ZRt2 {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn sign(&self) -> i8 {
        self.num.sign()
    }

    pub fn abs(&self) -> Self {
        QRt2 { num: self.num.abs(), den: self.den.clone() }
    }

    pub fn conj(&self) -> Self {
        QRt2 { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn recip(&self) -> Self {
        QRt2::ratio(&ZRt2::int(self.den.clone()), &self.num)
    }

    /// True when the value is a rational number.
    pub fn is_rational(&self) -> bool {
        self.num.b.is_zero()
    }

    /// True when the value lies in √2·Q, i.e. in Q(H4) ∪ {0}.
    pub fn is_sqrt2_rational(&self) -> bool {
        self.num.a.is_zero()
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        QRt2::new(self.num.scale(k), self.den.clone())
    }

    /// Largest integer `k` with `k ≤ self`.
    pub fn floor(&self) -> BigInt {
        let approx = crate::field::eval::qrt2_floor_estimate(self);
        let mut k = approx;
        while QRt2::int(k.clone()) > *self {
            k -= 1;
        }
        while QRt2::int(&k + 1) <= *self {
            k += 1;
        }
        k
    }

    pub fn to_f64(&self) -> f64 {
        crate::field::eval::qrt2_to_f64(self)
    }
}

impl From<ZRt2> for QRt2 {
    fn from(x: ZRt2) -> Self {
        QRt2::from_zrt2(x)
    }
}

impl From<i64> for QRt2 {
    fn from(v: i64) -> Self {
        QRt2::int(v)
    }
}

impl Ord for QRt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are positive
        let l = self.num.scale(&other.den);
        let r = other.num.scale(&self.den);
        l.cmp(&r)
    }
}

impl PartialOrd for QRt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a QRt2> for &'a QRt2 {
    type Output = QRt2;
    fn add(self, rhs: &QRt2) -> QRt2 {
        if self.den == rhs.den {
            return QRt2::new(&self.num + &rhs.num, self.den.clone());
        }
        QRt2::new(self.num.scale(&rhs.den) + rhs.num.scale(&self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a QRt2> for &'a QRt2 {
    type Output = QRt2;
    fn sub(self, rhs: &QRt2) -> QRt2 {
        if self.den == rhs.den {
            return QRt2::new(&self.num - &rhs.num, self.den.clone());
        }
        QRt2::new(self.num.scale(&rhs.den) - rhs.num.scale(&self.den), &self.den * &rhs.den)
    }
}

impl<'a> Mul<&'a QRt2> for &'a QRt2 {
    type Output = QRt2;
    fn mul(self, rhs: &QRt2) -> QRt2 {
        QRt2::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a QRt2> for &'a QRt2 {
    type Output = QRt2;
    fn div(self, rhs: &QRt2) -> QRt2 {
        assert!(!rhs.is_zero(), "division by zero in Q(√2)");
        QRt2::ratio(&self.num.scale(&rhs.den), &rhs.num.scale(&self.den))
    }
}

impl Neg for &QRt2 {
    type Output = QRt2;
    fn neg(self) -> QRt2 {
        QRt2 { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QRt2 {
    type Output = QRt2;
    fn neg(self) -> QRt2 {
        QRt2 { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QRt2> for QRt2 {
            type Output = QRt2;
            fn $m(self, rhs: QRt2) -> QRt2 {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QRt2> for QRt2 {
            type Output = QRt2;
            fn $m(self, rhs: &QRt2) -> QRt2 {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<QRt2> for &'a QRt2 {
            type Output = QRt2;
            fn $m(self, rhs: QRt2) -> QRt2 {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for QRt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.a.is_zero() || self.num.b.is_zero() {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRt2({self})")
    }
}
