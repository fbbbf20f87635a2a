use std::cmp::Ordering;

use serde::Serialize;

use super::k_one;
use crate::best::{BestApprox, BestApproxIter};
use crate::error::{Error, Result};
use crate::field::{Surd, ZRt2};
use crate::hecke::H4Fraction;

/// The best approximation `p_{i−1}/q_{i−1}` with `q_{i−1} ≤ N < q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirichletWitness {
    pub n: u64,
    pub frac: H4Fraction,
    pub next_q: ZRt2,
    /// `N·|qα − p|`
    pub scaled_error: Surd,
    /// `q ≤ N` and `N·|qα − p| < (√2 + 1)/2`, decided exactly
    pub holds: bool,
}

fn witness(alpha: &Surd, n: u64, cur: &BestApprox, next: &BestApprox) -> DirichletWitness {
    let scaled_error = cur.frac.error(alpha).mul_z(&ZRt2::int(n));
    let holds = cur.frac.q <= ZRt2::int(n) && scaled_error.cmp_q(&k_one()) == Ordering::Less;
    DirichletWitness { n, frac: cur.frac.clone(), next_q: next.frac.q.clone(), scaled_error, holds }
}

/// Witnesses for every integer `N` in `1 ..= n_max`.
pub fn dirichlet_sweep(alpha: &Surd, n_max: u64) -> Result<Vec<DirichletWitness>> {
    if n_max == 0 {
        return Err(Error::Validation("N must be at least 1".into()));
    }
    let mut it = BestApproxIter::of_surd(alpha)?;
    let mut cur = it.next().transpose()?.ok_or_else(|| Error::Domain("no best approximation".into()))?;
    let mut next = it.next().transpose()?.ok_or_else(|| Error::Domain("no second best approximation".into()))?;
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        while next.frac.q <= ZRt2::int(n) {
            cur = next;
            next = it.next().transpose()?.ok_or_else(|| Error::Domain("best approximations ended".into()))?;
        }
        out.push(witness(alpha, n, &cur, &next));
    }
    Ok(out)
}

pub fn dirichlet_witness(alpha: &Surd, n: u64) -> Result<DirichletWitness> {
    Ok(dirichlet_sweep(alpha, n)?.pop().expect("n ≥ 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::QRt2;

    #[test]
    fn sqrt17_example_at_five() {
        let a = Surd::new(ZRt2::int(3), ZRt2::one(), ZRt2::int(17), ZRt2::sqrt2_times(2)).unwrap();
        let w = dirichlet_witness(&a, 5).unwrap();
        assert_eq!(w.frac.to_string(), "7/(2√2)");
        assert!(w.holds);
        assert!((w.frac.error(&a).to_f64() - 0.123).abs() < 1e-3);
    }

    #[test]
    fn one_at_one() {
        let w = dirichlet_witness(&Surd::one(), 1).unwrap();
        assert_eq!(w.frac, H4Fraction::sqrt2_multiple(1));
        assert_eq!(w.scaled_error, Surd::from_qrt2(QRt2::sqrt2() - QRt2::one()));
        assert!(w.holds);
    }
}
