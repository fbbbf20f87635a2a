//! Uniform approximation: the sequence `q_{i+1}|q_i α − p_i|` over
//! consecutive best approximations and its limsup `K(α)`.

mod dirichlet;
mod optimality;

use std::cmp::Ordering;

use serde::Serialize;

use crate::best::{successor, BestApproxIter, ChainWalker, Side, Successor};
use crate::error::{Error, Result};
use crate::expansion::{normalize_alpha, periodic_fixed_point, DigitStream, Expansion};
use crate::field::{QRt2, Surd};
use crate::hecke::H4Fraction;

pub use dirichlet::{dirichlet_sweep, dirichlet_witness, DirichletWitness};
pub use optimality::{optimality_check, OptStream, OptimalityPoint};

/// `K(1) = (√2 + 1)/2`, the largest value of `K`.
pub fn k_one() -> QRt2 {
    (QRt2::sqrt2() + QRt2::one()) * QRt2::rational(1, 2)
}

/// Which closed form gives `q_{i+1}|q_i α − p_i|`, from the side of
/// `p_i/q_i` and where the chain goes next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    B1,
    B2,
    B3,
    MirrorB1,
    MirrorB2,
    MirrorB3,
}

impl Case {
    pub fn of(side: Side, next: Successor) -> Result<Case> {
        Ok(match (side, next) {
            (Side::TU, Successor::VwSame) => Case::B1,
            (Side::TU, Successor::TuNext) => Case::B2,
            (Side::TU, Successor::VwNext) => Case::B3,
            (Side::VW, Successor::TuSame) => Case::MirrorB1,
            (Side::VW, Successor::VwNext) => Case::MirrorB2,
            (Side::VW, Successor::TuNext) => Case::MirrorB3,
            _ => return Err(Error::Domain(format!("no transition {side:?} → {next:?}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Case::B1 => "b1",
            Case::B2 => "b2",
            Case::B3 => "b3",
            Case::MirrorB1 => "mirror-b1",
            Case::MirrorB2 => "mirror-b2",
            Case::MirrorB3 => "mirror-b3",
        }
    }

    /// The value at `α_n = a`, `α*_n = s`. With `|u_n α − t_n| = 1/(u_n a + w_n)`
    /// and `|w_n α − v_n| = a/(u_n a + w_n)`, the next denominator divided
    /// by `u_n` is `s`, `√2 + s` or `1 + √2 s`.
    pub fn eval(self, a: &Surd, s: &Surd) -> Result<Surd> {
        let den = a.try_add(s)?;
        let sqrt2_s = s.mul_q(&QRt2::sqrt2());
        let num = match self {
            Case::B1 => s.clone(),
            Case::B2 => s.add_q(&QRt2::sqrt2()),
            Case::B3 => sqrt2_s.add_q(&QRt2::one()),
            Case::MirrorB1 => a.clone(),
            Case::MirrorB2 => a.try_mul(&sqrt2_s.add_q(&QRt2::one()))?,
            Case::MirrorB3 => a.try_mul(&s.add_q(&QRt2::sqrt2()))?,
        };
        num.try_div(&den)
    }

    pub fn eval_f64(self, a: f64, s: f64) -> f64 {
        let r2 = std::f64::consts::SQRT_2;
        // α*_n is finite from the first digit other than 3 on
        debug_assert!(s.is_finite());
        let num = match self {
            Case::B1 => s,
            Case::B2 => r2 + s,
            Case::B3 => 1.0 + r2 * s,
            Case::MirrorB1 => a,
            Case::MirrorB2 => a * (1.0 + r2 * s),
            Case::MirrorB3 => a * (r2 + s),
        };
        num / (a + s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformRecord {
    /// 1-based: this is `q_{i+1}|q_i α − p_i|`.
    pub i: usize,
    /// The maximal index `n` of `p_i/q_i`.
    pub n: usize,
    pub case: Case,
    pub value: Surd,
    pub frac: H4Fraction,
    pub next: H4Fraction,
}

/// The first `count` records, each from its closed form and checked
/// against `q_{i+1}·|q_i α − p_i|` computed directly.
pub fn uniform_sequence(alpha: &Surd, count: usize) -> Result<Vec<UniformRecord>> {
    let mut it = BestApproxIter::of_surd(alpha)?;
    let mut pending: Option<(usize, Case, Surd, H4Fraction)> = None;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let Some(b) = it.next().transpose()? else { break };
        let link = *it.last_link().expect("a link backs every item");
        if let Some((n, case, value, frac)) = pending.take() {
            let direct = frac.error(alpha).mul_z(&b.frac.q);
            if direct.try_cmp(&value)? != Ordering::Equal {
                return Err(Error::Domain(format!("case {} disagrees with the direct value at {frac}", case.name())));
            }
            out.push(UniformRecord { i: out.len() + 1, n, case, value, frac, next: b.frac.clone() });
        }
        let g = it.current_matrix().clone();
        let a = it.expansion().tail(link.n_last)?.expect("surd tails are exact");
        let s = Surd::from_qrt2(QRt2::ratio(&g.w, &g.u));
        let case = Case::of(link.side, link.successor)?;
        pending = Some((link.n_last, case, case.eval(&a, &s)?, b.frac));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KMethod {
    ExactPeriodic,
    NumericLimsup,
}

/// The limit of the records along one residue class of `n` modulo the
/// period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseLimit {
    pub phase: usize,
    pub side: Side,
    pub case: Case,
    pub alpha_n: Surd,
    /// `lim α*_n` along the phase
    pub alpha_star: Surd,
    pub value: Surd,
}

#[derive(Clone, Debug, Serialize)]
pub struct KResult {
    pub method: KMethod,
    pub value: Option<Surd>,
    pub approx: f64,
    /// Only exact results are certified.
    pub certified: bool,
    /// `1/2 ≤ K ≤ K(1)`
    pub within_bounds: bool,
    pub phases: Vec<PhaseLimit>,
    pub records: usize,
    pub window: usize,
}

/// Exact `K(α)` for an eventually periodic expansion.
///
/// Past the preperiod, `α_n` depends only on `n mod L` and `α*_n`
/// converges along each residue class to the fixed point of the reversed
/// period. Each class where a best approximation sits at its maximal index
/// contributes the limit of its closed form; `K` is the largest of these.
pub fn k_exact(stream: &DigitStream) -> Result<KResult> {
    let DigitStream::EventuallyPeriodic { preperiod, period } = stream else {
        return Err(Error::NonPeriodicInput);
    };
    let (p, l) = (preperiod.len(), period.len());
    let mut exp = Expansion::of_stream(stream.clone());
    let mut walker = ChainWalker::new(&mut exp)?;
    let mut phases = Vec::new();
    for j in 1..=l {
        let n = p + l + j;
        let star = walker.star_sign(&mut exp, n)?;
        let tail = exp.tail_cmp_one(n)?;
        let next = exp.digit(n + 1)?;
        let mut ahead = period.clone();
        ahead.rotate_left(j % l);
        let behind: Vec<u8> = (0..l).map(|k| period[(j + l - 1 - k) % l]).collect();
        let alpha_n = periodic_fixed_point(&ahead)?;
        let alpha_star = periodic_fixed_point(&behind)?.rebased_like(&alpha_n)?;
        for side in [Side::TU, Side::VW] {
            let (best, sticky) = match side {
                Side::TU => (tail > 0 || star > 0, 3),
                Side::VW => (tail < 0 || star < 0, 1),
            };
            if !best || next == sticky {
                continue;
            }
            let case = Case::of(side, successor(side, star, tail)?)?;
            let value = case.eval(&alpha_n, &alpha_star)?;
            phases.push(PhaseLimit { phase: j, side, case, alpha_n: alpha_n.clone(), alpha_star: alpha_star.clone(), value });
        }
    }
    let mut k: Option<Surd> = None;
    for ph in &phases {
        if k.as_ref().map_or(Ok(true), |k| ph.value.try_cmp(k).map(|o| o == Ordering::Greater))? {
            k = Some(ph.value.clone());
        }
    }
    let k = k.ok_or_else(|| Error::Domain("no best approximation in the period".into()))?;
    let within_bounds = k.cmp_q(&QRt2::rational(1, 2)) != Ordering::Less && k.cmp_q(&k_one()) != Ordering::Greater;
    Ok(KResult {
        method: KMethod::ExactPeriodic,
        approx: k.to_f64(),
        value: Some(k),
        certified: true,
        within_bounds,
        phases,
        records: 0,
        window: 0,
    })
}

/// Exact `K(α)` for a quadratic surd, through its period. `K` is invariant
/// under `α ↦ α + √2`, so `α ≤ 0` is first translated.
pub fn k_of_surd(alpha: &Surd, cap: usize) -> Result<KResult> {
    if alpha.in_q_h4() {
        return Err(Error::InputInQH4(alpha.to_string()));
    }
    let rep = if alpha.sign() > 0 { alpha.clone() } else { normalize_alpha(alpha)?.2 };
    let stream = Expansion::of_surd(rep)?.with_cap(cap).detect_period()?;
    k_exact(&stream)
}

fn mobius_f64(d: u8, x: f64) -> f64 {
    let r2 = std::f64::consts::SQRT_2;
    let (t, v, u, w) = match d {
        1 => (1.0, 0.0, r2, 1.0),
        2 => (r2, 1.0, 1.0, r2),
        _ => (1.0, r2, 0.0, 1.0),
    };
    if x.is_infinite() {
        return t / u;
    }
    (t * x + v) / (u * x + w)
}

/// Digits looked ahead when evaluating a tail in floating point.
pub const NUMERIC_TAIL_DEPTH: usize = 256;

/// Sup of the last `window` of `records` values, in floating point. Not a
/// certified limsup.
pub fn k_numeric(exp: &mut Expansion, records: usize, window: usize) -> Result<KResult> {
    if records == 0 || window == 0 {
        return Err(Error::Validation("records and window must be positive".into()));
    }
    let mut walker = ChainWalker::new(exp)?;
    let mut star = f64::INFINITY;
    let mut star_n = 0;
    let mut values = Vec::with_capacity(records);
    while values.len() < records {
        let Some(link) = walker.step(exp)? else { break };
        while star_n < link.n_last {
            star_n += 1;
            star = mobius_f64(exp.digit(star_n)?, star);
        }
        let mut a = 1.0;
        for k in (link.n_last + 1..=link.n_last + NUMERIC_TAIL_DEPTH).rev() {
            a = mobius_f64(exp.digit(k)?, a);
        }
        values.push(Case::of(link.side, link.successor)?.eval_f64(a, star));
    }
    let from = values.len().saturating_sub(window);
    let sup = values[from..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(KResult {
        method: KMethod::NumericLimsup,
        value: None,
        approx: sup,
        certified: false,
        within_bounds: (0.5..=k_one().to_f64() + 1e-12).contains(&sup),
        phases: Vec::new(),
        records: values.len(),
        window: window.min(values.len()),
    })
}
