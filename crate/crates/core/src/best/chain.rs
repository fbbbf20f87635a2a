use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{normalize_alpha, ord_sign, push_digit, Expansion};
use crate::field::{QRt2, Surd, ZRt2};
use crate::hecke::{H4Fraction, Mat2, ProjValue};
use crate::rosen::dual_rosen_digits_from_expansion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// The right endpoint `t_n/u_n`.
    TU,
    /// The left endpoint `v_n/w_n`.
    VW,
}

impl Side {
    /// The digit that keeps this endpoint fixed.
    fn sticky_digit(self) -> u8 {
        match self {
            Side::TU => 3,
            Side::VW => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BestApprox {
    pub frac: H4Fraction,
    pub side: Side,
    /// All `n ≥ m + 1` at which this fraction is the `side` endpoint.
    pub n_first: usize,
    pub n_last: usize,
    pub is_rosen: bool,
    pub is_dual: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    /// Stop after the last fraction with denominator at most this value.
    MaxQ(u64),
    Count(usize),
}

/// Where the chain goes after the endpoint at its maximal index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Successor {
    VwSame,
    TuNext,
    VwNext,
    TuSame,
}

/// Successor of a best approximation `p/q` sitting at its maximal index
/// `n`, from the signs of `α*_n − 1` and `α_n − 1`.
///
/// For a `t_n/u_n` endpoint maximality means `α_n < √2`; for `v_n/w_n` it
/// means `α_n > 1/√2`.
pub fn successor(side: Side, star_sign: i8, tail_sign: i8) -> Result<Successor> {
    match (side, star_sign > 0, tail_sign) {
        (Side::TU, true, -1) => Ok(Successor::VwSame),
        (Side::TU, true, _) => Ok(Successor::TuNext),
        (Side::TU, false, 1) => Ok(Successor::VwNext),
        (Side::VW, false, 1) => Ok(Successor::TuSame),
        (Side::VW, false, _) => Ok(Successor::VwNext),
        (Side::VW, true, -1) => Ok(Successor::TuNext),
        _ => Err(Error::Domain(format!(
            "no successor for {side:?} endpoint with sign(α*−1) = {star_sign}, sign(α_n−1) = {tail_sign}"
        ))),
    }
}

/// One link of the chain: a best approximation located by its index range,
/// with the transition to the next one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Link {
    pub side: Side,
    pub n_first: usize,
    pub n_last: usize,
    pub successor: Successor,
    /// `sign(α*_n − 1)` and `sign(α_n − 1)` at `n = n_last`
    pub star_sign: i8,
    pub tail_sign: i8,
    pub is_rosen: bool,
    /// Membership among the `N_n·∞`, `n ≥ m + 1`.
    pub is_dual_selector: bool,
}

/// The index bookkeeping of the chain, driven by digits and tail signs
/// only. Cheap enough for tens of thousands of links.
pub struct ChainWalker {
    /// `sign(α*_k − 1)` for `k = 0, 1, …`
    star: Vec<i8>,
    m: usize,
    next: Option<(Side, usize)>,
}

impl ChainWalker {
    pub fn new(exp: &mut Expansion) -> Result<ChainWalker> {
        let m = exp.leading_threes()?;
        let start = match exp.digit(m + 1)? {
            1 => (Side::VW, m + 1),
            _ => (Side::TU, m + 1),
        };
        Ok(ChainWalker { star: vec![1], m, next: Some(start) })
    }

    /// `m(α)`
    pub fn leading_threes(&self) -> usize {
        self.m
    }

    pub fn star_sign(&mut self, exp: &mut Expansion, k: usize) -> Result<i8> {
        while self.star.len() <= k {
            let j = self.star.len();
            let s = match exp.digit(j)? {
                3 => 1,
                1 => -1,
                _ => self.star[j - 1],
            };
            self.star.push(s);
        }
        Ok(self.star[k])
    }

    fn flags(&mut self, exp: &mut Expansion, side: Side, first: usize, last: usize) -> Result<(bool, bool)> {
        let (mut rosen, mut dual) = (false, false);
        for k in first..=last {
            let s = self.star_sign(exp, k)?;
            let a = exp.tail_cmp_one(k)?;
            let dual_tu = a > 0 || (a == 0 && s > 0);
            match side {
                Side::TU => {
                    rosen |= s > 0;
                    dual |= dual_tu;
                }
                Side::VW => {
                    rosen |= s < 0;
                    dual |= !dual_tu;
                }
            }
        }
        Ok((rosen, dual))
    }

    pub fn step(&mut self, exp: &mut Expansion) -> Result<Option<Link>> {
        let Some((side, entry)) = self.next else { return Ok(None) };
        let sticky = side.sticky_digit();
        let mut first = entry;
        while first > self.m + 1 && exp.digit(first)? == sticky {
            first -= 1;
        }
        let mut last = entry;
        while exp.digit(last + 1)? == sticky {
            last += 1;
        }
        let (is_rosen, is_dual_selector) = self.flags(exp, side, first, last)?;
        let star_sign = self.star_sign(exp, last)?;
        let tail_sign = exp.tail_cmp_one(last)?;
        let successor = successor(side, star_sign, tail_sign)?;
        self.next = Some(match successor {
            Successor::VwSame => (Side::VW, last),
            Successor::TuSame => (Side::TU, last),
            Successor::TuNext => (Side::TU, last + 1),
            Successor::VwNext => (Side::VW, last + 1),
        });
        Ok(Some(Link { side, n_first: first, n_last: last, successor, star_sign, tail_sign, is_rosen, is_dual_selector }))
    }
}

/// Lazy enumeration of the H4-best approximations in order of denominator.
pub struct BestApproxIter {
    exp: Expansion,
    walker: ChainWalker,
    g: Mat2,
    g_index: usize,
    shift: Option<BigInt>,
    /// `r̃_0/s̃_0 = ã_0√2`, which the selectors `N_n`, `n ≥ m + 1`, may skip
    dual_r0: H4Fraction,
    last_link: Option<Link>,
}

impl BestApproxIter {
    pub fn new(mut exp: Expansion) -> Result<BestApproxIter> {
        let walker = ChainWalker::new(&mut exp)?;
        let dual_r0 = H4Fraction::sqrt2_multiple(dual_rosen_digits_from_expansion(&mut exp, 0)?.a0);
        Ok(BestApproxIter { exp, walker, g: Mat2::identity(), g_index: 0, shift: None, dual_r0, last_link: None })
    }

    /// Best approximations of any real surd not in Q(H4). Values `α ≤ 0`
    /// are translated into `(0, √2)` and the results translated back; the
    /// Rosen and dual flags then refer to the translate.
    pub fn of_surd(alpha: &Surd) -> Result<BestApproxIter> {
        if alpha.in_q_h4() {
            return Err(Error::InputInQH4(alpha.to_string()));
        }
        if alpha.sign() > 0 {
            return BestApproxIter::new(Expansion::of_surd(alpha.clone())?);
        }
        let (k, _, rep) = normalize_alpha(alpha)?;
        let mut it = BestApproxIter::new(Expansion::of_surd(rep)?)?;
        it.shift = Some(k);
        Ok(it)
    }

    /// `m(α)`
    pub fn leading_threes(&self) -> usize {
        self.walker.leading_threes()
    }

    pub fn expansion(&mut self) -> &mut Expansion {
        &mut self.exp
    }

    /// The link behind the most recent item.
    pub fn last_link(&self) -> Option<&Link> {
        self.last_link.as_ref()
    }

    /// `G_n` for the most recent item's `n_last`.
    pub fn current_matrix(&self) -> &Mat2 {
        &self.g
    }

    fn g_at(&mut self, n: usize) -> Result<&Mat2> {
        assert!(n >= self.g_index, "the chain never moves backwards");
        while self.g_index < n {
            let d = self.exp.digit(self.g_index + 1)?;
            push_digit(&mut self.g, d);
            self.g_index += 1;
        }
        Ok(&self.g)
    }

    fn step(&mut self) -> Result<Option<BestApprox>> {
        let Some(link) = self.walker.step(&mut self.exp)? else { return Ok(None) };
        let g = self.g_at(link.n_last)?.clone();
        let (p, q) = match link.side {
            Side::TU => (g.t, g.u),
            Side::VW => (g.v, g.w),
        };
        let is_dual = link.is_dual_selector || (q.is_one() && H4Fraction::from_pair(&p, &q)? == self.dual_r0);
        let p = match &self.shift {
            Some(k) => &p - &(&ZRt2::sqrt2_times(k.clone()) * &q),
            None => p,
        };
        let frac = H4Fraction::from_pair(&p, &q)?;
        self.last_link = Some(link);
        Ok(Some(BestApprox {
            frac,
            side: link.side,
            n_first: link.n_first,
            n_last: link.n_last,
            is_rosen: link.is_rosen,
            is_dual,
        }))
    }

    /// Collects fractions up to the limit.
    pub fn collect_until(&mut self, limit: Limit) -> Result<Vec<BestApprox>> {
        let mut out = Vec::new();
        loop {
            if let Limit::Count(c) = limit {
                if out.len() >= c {
                    break;
                }
            }
            let Some(b) = self.step()? else { break };
            if let Limit::MaxQ(qm) = limit {
                if b.frac.q > ZRt2::int(qm) {
                    break;
                }
            }
            out.push(b);
        }
        Ok(out)
    }
}

impl Iterator for BestApproxIter {
    type Item = Result<BestApprox>;
    fn next(&mut self) -> Option<Result<BestApprox>> {
        self.step().transpose()
    }
}

pub fn best_approximations(alpha: &Surd, limit: Limit) -> Result<Vec<BestApprox>> {
    BestApproxIter::of_surd(alpha)?.collect_until(limit)
}

/// The characterization as a set: `t_n/u_n` when `α_n > 1` or `α*_n > 1`
/// and `v_n/w_n` when `α_n < 1` or `α*_n < 1`, over `n ≥ m + 1`,
/// deduplicated and sorted by denominator. Needs `α > 0`.
pub fn best_by_characterization(alpha: &Surd, q_max: u64) -> Result<Vec<H4Fraction>> {
    let mut exp = Expansion::of_surd(alpha.clone())?;
    let m = exp.leading_threes()?;
    let cs_bound = ZRt2::int(q_max);
    let mut g = Mat2::identity();
    let mut out: Vec<H4Fraction> = Vec::new();
    let mut n = 0;
    loop {
        n += 1;
        push_digit(&mut g, exp.digit(n)?);
        if n < m + 1 {
            continue;
        }
        if g.u.clone().min(g.w.clone()) > cs_bound {
            break;
        }
        let star = ord_sign(ProjValue::from_pair(&g.w, &g.u).cmp_q(&QRt2::one()));
        let a = exp.tail_cmp_one(n)?;
        if a > 0 || star > 0 {
            out.push(H4Fraction::from_pair(&g.t, &g.u)?);
        }
        if a < 0 || star < 0 {
            out.push(H4Fraction::from_pair(&g.v, &g.w)?);
        }
    }
    out.retain(|f| f.q <= cs_bound);
    out.sort_by(|a, b| a.q.cmp(&b.q).then(a.cmp_value(b)));
    out.dedup();
    Ok(out)
}
