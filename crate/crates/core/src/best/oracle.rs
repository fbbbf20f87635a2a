use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::chain::{BestApproxIter, Limit};
use crate::error::{Error, Result};
use crate::field::{QRt2, Surd, ZRt2};
use crate::hecke::{denominator_ladder, H4Fraction};

/// The admissible numerator nearest to `qα` for the canonical denominator
/// `q`, with its error `|qα − p|`, or `None` when that numerator does not
/// give a reduced fraction (its reduced form has a smaller denominator and
/// a smaller error, so nothing over `q` can be a best approximation).
fn nearest_at(alpha: &Surd, q: &ZRt2) -> Option<(H4Fraction, Surd)> {
    let x = alpha.mul_z(q);
    let p = if q.is_integer() {
        // numerators √2·a
        let a = x.mul_q(&QRt2::inv_sqrt2()).floor();
        let mid = QRt2::from_zrt2(ZRt2::sqrt2_times(&a * 2 + 1)) * QRt2::rational(1, 2);
        let a = if x.cmp_q(&mid) == Ordering::Greater { a + 1 } else { a };
        if !a.gcd(&q.a).is_one() {
            return None;
        }
        ZRt2::sqrt2_times(a)
    } else {
        // odd numerators
        let k = x.add_q(&QRt2::int(-1)).floor().div_floor(&BigInt::from(2));
        let lo: BigInt = &k * 2 + 1;
        let p = if x.cmp_q(&QRt2::int(&lo + 1)) == Ordering::Greater { lo + 2 } else { lo };
        if !p.gcd(&q.b).is_one() {
            return None;
        }
        ZRt2::int(p)
    };
    let f = H4Fraction::from_pair(&p, q).ok()?;
    debug_assert_eq!(&f.q, q);
    let err = f.error(alpha);
    Some((f, err))
}

/// H4-best approximations with denominator at most `q_max`, straight from
/// the definition: scan canonical denominators in increasing order and keep
/// each fraction whose error beats every error seen so far.
///
/// The per-denominator work runs in parallel; the record scan is
/// sequential over the sorted ladder, so the output is deterministic.
pub fn oracle_best_approximations(alpha: &Surd, q_max: u64) -> Result<Vec<H4Fraction>> {
    if alpha.in_q_h4() {
        return Err(Error::InputInQH4(alpha.to_string()));
    }
    let ladder = denominator_ladder(q_max);
    let cands: Vec<Option<(H4Fraction, Surd)>> = ladder.par_iter().map(|q| nearest_at(alpha, q)).collect();
    let mut best: Option<Surd> = None;
    let mut out = Vec::new();
    for (f, err) in cands.into_iter().flatten() {
        let better = match &best {
            None => true,
            Some(b) => err.try_cmp(b)? == Ordering::Less,
        };
        if better {
            best = Some(err);
            out.push(f);
        }
    }
    Ok(out)
}

/// Minimum of `|qα − p|` over all canonical fractions with `q < bound`.
pub fn oracle_min_error_below(alpha: &Surd, bound: &ZRt2) -> Result<Option<Surd>> {
    let mut best: Option<Surd> = None;
    let q_max = bound.to_f64().ceil() as u64;
    for q in denominator_ladder(q_max).into_iter().filter(|q| q < bound) {
        if let Some((_, err)) = nearest_at(alpha, &q) {
            if best.as_ref().map_or(Ok(true), |b| err.try_cmp(b).map(|o| o == Ordering::Less))? {
                best = Some(err);
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LegendreClass {
    BestBySufficient,
    BestButNotSufficient,
    NotBest,
}

/// Classifies `p/q` against the sufficient condition `|α − p/q| < 1/(2q²)`
/// and against membership in the best-approximation sequence.
pub fn legendre_classify(alpha: &Surd, frac: &H4Fraction) -> Result<LegendreClass> {
    let dist = frac.distance(alpha);
    let q2 = QRt2::from_zrt2(&frac.q * &frac.q);
    let half_bound = (QRt2::int(2) * q2.clone()).recip();
    let sufficient = dist.cmp_q(&half_bound) == Ordering::Less;
    let q_bound = frac.q.to_f64().ceil() as u64 + 1;
    let member = BestApproxIter::of_surd(alpha)?.collect_until(Limit::MaxQ(q_bound))?.iter().any(|b| &b.frac == frac);
    if sufficient && !member {
        return Err(Error::Domain(format!("{frac} satisfies the sufficient bound but is not a best approximation")));
    }
    if member && dist.cmp_q(&q2.recip()) != Ordering::Less {
        return Err(Error::Domain(format!("best approximation {frac} violates |α − p/q| < 1/q²")));
    }
    Ok(match (sufficient, member) {
        (true, _) => LegendreClass::BestBySufficient,
        (false, true) => LegendreClass::BestButNotSufficient,
        (false, false) => LegendreClass::NotBest,
    })
}
