use std::fmt;
use std::ops::Mul;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{QRt2, Surd, ZRt2};

/// A 2×2 matrix `[[t, v], [u, w]]` over Z[√2] acting by Möbius maps.
///
/// Column `(t, u)` is the image of ∞ and column `(v, w)` the image of 0.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    pub t: ZRt2,
    pub v: ZRt2,
    pub u: ZRt2,
    pub w: ZRt2,
}

/// A point of the projective line over Q(√2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjValue {
    Finite(QRt2),
    Infinity,
}

impl ProjValue {
    pub fn from_pair(num: &ZRt2, den: &ZRt2) -> ProjValue {
        if den.is_zero() {
            ProjValue::Infinity
        } else {
            ProjValue::Finite(QRt2::ratio(num, den))
        }
    }

    pub fn finite(&self) -> Option<&QRt2> {
        match self {
            ProjValue::Finite(q) => Some(q),
            ProjValue::Infinity => None,
        }
    }

    /// Sign of `self − c`, with ∞ above everything.
    pub fn cmp_q(&self, c: &QRt2) -> std::cmp::Ordering {
        match self {
            ProjValue::Finite(q) => q.cmp(c),
            ProjValue::Infinity => std::cmp::Ordering::Greater,
        }
    }
}

impl fmt::Display for ProjValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjValue::Finite(q) => write!(f, "{q}"),
            ProjValue::Infinity => write!(f, "∞"),
        }
    }
}

impl Mat2 {
    pub fn new(t: ZRt2, v: ZRt2, u: ZRt2, w: ZRt2) -> Self {
        Mat2 { t, v, u, w }
    }

    /// Shorthand from `(a, b)` coordinate pairs, row-major.
    pub fn from_pairs(e: [(i64, i64); 4]) -> Self {
        let z = |p: (i64, i64)| ZRt2::new(p.0, p.1);
        Mat2::new(z(e[0]), z(e[1]), z(e[2]), z(e[3]))
    }

    pub fn identity() -> Self {
        Mat2::new(ZRt2::one(), ZRt2::zero(), ZRt2::zero(), ZRt2::one())
    }

    pub fn det(&self) -> ZRt2 {
        &self.t * &self.w - &self.v * &self.u
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        let adj = Mat2::new(self.w.clone(), -&self.v, -&self.u, self.t.clone());
        if det.is_one() {
            Ok(adj)
        } else if (-&det).is_one() {
            Ok(adj.negated())
        } else {
            Err(Error::Domain(format!("matrix has determinant {det}, not ±1")))
        }
    }

    pub fn negated(&self) -> Mat2 {
        Mat2::new(-&self.t, -&self.v, -&self.u, -&self.w)
    }

    pub fn pow(&self, e: u32) -> Mat2 {
        let mut acc = Mat2::identity();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// True for ±I, the identity of PSL₂.
    pub fn is_projective_identity(&self) -> bool {
        self.v.is_zero() && self.u.is_zero() && self.t == self.w && (self.t.is_one() || (-&self.t).is_one())
    }

    /// Image of the projective point `(p : q)` as a pair.
    pub fn apply_pair(&self, p: &ZRt2, q: &ZRt2) -> (ZRt2, ZRt2) {
        (&self.t * p + &self.v * q, &self.u * p + &self.w * q)
    }

    /// `M·∞ = t/u`
    pub fn at_infinity(&self) -> ProjValue {
        ProjValue::from_pair(&self.t, &self.u)
    }

    /// `M·0 = v/w`
    pub fn at_zero(&self) -> ProjValue {
        ProjValue::from_pair(&self.v, &self.w)
    }

    pub fn apply_q(&self, x: &ProjValue) -> ProjValue {
        match x {
            ProjValue::Infinity => self.at_infinity(),
            ProjValue::Finite(q) => {
                let (n, d) = self.apply_pair(&q.num().clone(), &ZRt2::int(q.den().clone()));
                ProjValue::from_pair(&n, &d)
            }
        }
    }

    /// Exact Möbius image of a surd.
    pub fn apply(&self, x: &Surd) -> Result<Surd> {
        x.mobius(&self.t, &self.v, &self.u, &self.w)
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, r: &Mat2) -> Mat2 {
        Mat2 {
            t: &self.t * &r.t + &self.v * &r.u,
            v: &self.t * &r.v + &self.v * &r.w,
            u: &self.u * &r.t + &self.w * &r.u,
            w: &self.u * &r.v + &self.w * &r.w,
        }
    }
}

impl Mul<Mat2> for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        &self * &r
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.t, self.v, self.u, self.w)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2{self}")
    }
}

/// The named matrices of H4 together with the auxiliary involutions `H`, `J`.
///
/// `H` and `J` have determinant −1 and are not group elements; they only
/// appear as conjugators.
#[derive(Clone, Debug)]
pub struct Generators {
    pub t: Mat2,
    pub s: Mat2,
    pub r: Mat2,
    pub a1: Mat2,
    pub a2: Mat2,
    pub a3: Mat2,
    pub h: Mat2,
    pub j: Mat2,
}

pub fn generators() -> Generators {
    Generators {
        t: Mat2::from_pairs([(1, 0), (0, 1), (0, 0), (1, 0)]),
        s: Mat2::from_pairs([(0, 0), (-1, 0), (1, 0), (0, 0)]),
        r: Mat2::from_pairs([(0, 0), (1, 0), (-1, 0), (0, 1)]),
        a1: a_matrix(1),
        a2: a_matrix(2),
        a3: a_matrix(3),
        h: Mat2::from_pairs([(-1, 0), (0, 0), (0, 0), (1, 0)]),
        j: j_matrix(),
    }
}

/// The digit matrix `A_d`, `d ∈ {1, 2, 3}`.
pub fn a_matrix(d: u8) -> Mat2 {
    match d {
        1 => Mat2::from_pairs([(1, 0), (0, 0), (0, 1), (1, 0)]),
        2 => Mat2::from_pairs([(0, 1), (1, 0), (1, 0), (0, 1)]),
        3 => Mat2::from_pairs([(1, 0), (0, 1), (0, 0), (1, 0)]),
        _ => panic!("digit {d} out of range"),
    }
}

pub fn j_matrix() -> Mat2 {
    Mat2::from_pairs([(0, 0), (1, 0), (1, 0), (0, 0)])
}

/// Membership in H4: determinant 1 and one of the two parity patterns
/// `[[odd, √2ℤ], [√2ℤ, odd]]` or `[[√2ℤ, odd], [odd, √2ℤ]]`.
pub fn membership(m: &Mat2) -> bool {
    if !m.det().is_one() {
        return false;
    }
    let odd = |x: &ZRt2| x.is_odd_integer();
    let r2 = |x: &ZRt2| x.is_sqrt2_multiple();
    (odd(&m.t) && odd(&m.w) && r2(&m.v) && r2(&m.u)) || (r2(&m.t) && r2(&m.w) && odd(&m.v) && odd(&m.u))
}

/// `T^k = [[1, k√2], [0, 1]]`.
pub fn translation(k: &num_bigint::BigInt) -> Mat2 {
    Mat2::new(ZRt2::one(), ZRt2::sqrt2_times(k.clone()), ZRt2::zero(), ZRt2::one())
}
