use std::cmp::Ordering;

use hecke4::cli::corpus::{make_corpus, make_periodic_streams};
use hecke4::expansion::{DigitStream, Expansion};
use hecke4::field::{QRt2, Surd, ZRt2};
use hecke4::hecke::{denominator_ladder, H4Fraction};
use hecke4::uniform::*;

#[test]
fn k_exact_matches_numeric_on_periodic_streams() {
    for s in make_periodic_streams(1, 20) {
        let DigitStream::EventuallyPeriodic { period, .. } = &s else { unreachable!() };
        let k = k_exact(&s).unwrap();
        assert!(k.certified && k.within_bounds, "{s}");
        let v = k.value.clone().unwrap();
        assert_eq!(v.cmp_q(&QRt2::rational(1, 2)), Ordering::Greater, "{s}");
        assert_ne!(v.cmp_q(&k_one()), Ordering::Greater, "{s}");

        let records = 1000 * period.len();
        let n = k_numeric(&mut Expansion::of_stream(s.clone()), records, records / 2).unwrap();
        assert!(!n.certified);
        assert!((k.approx - n.approx).abs() < 1e-9, "{s}: exact {} numeric {}", k.approx, n.approx);
    }
}

#[test]
fn k_of_surd_and_stream_agree() {
    for s in make_periodic_streams(5, 6) {
        let alpha = s.to_surd().unwrap();
        let a = k_exact(&s).unwrap().value.unwrap();
        let b = k_of_surd(&alpha, 1000).unwrap().value.unwrap();
        assert_eq!(a, b, "{s}");
    }
}

#[test]
fn k_numeric_reports_for_generated_streams() {
    for rule in ["four-blocks", "three-powers"] {
        let s = DigitStream::generated(hecke4::expansion::Rule::parse(rule).unwrap());
        assert!(k_exact(&s).is_err());
        let n = k_numeric(&mut Expansion::of_stream(s), 400, 200).unwrap();
        assert!(!n.certified);
        // four-blocks has ever longer runs of 2, so its sup reaches K(1)
        assert!(n.approx > 0.5 && n.approx <= k_one().to_f64() + 1e-12, "{rule}: {}", n.approx);
    }
}

#[test]
fn uniform_records_in_band_on_corpus() {
    let half = QRt2::rational(1, 2);
    for a in make_corpus(3, 15, 6) {
        let recs = uniform_sequence(&a, 30).unwrap();
        assert_eq!(recs.len(), 30);
        for r in &recs {
            assert_eq!(r.value.cmp_q(&half), Ordering::Greater, "{a} record {}", r.i);
            assert_eq!(r.value.cmp_q(&k_one()), Ordering::Less, "{a} record {}", r.i);
            let direct = r.frac.error(&a).abs().mul_z(&r.next.q);
            assert_eq!(direct, r.value);
        }
    }
}

/// `q|q − p|` for the H4-fractions with denominator `q` next to 1.
fn near_one(q: &ZRt2) -> Vec<QRt2> {
    let one = Surd::one();
    let mut out = Vec::new();
    let (lo, hi) = if q.is_integer() {
        let k = QRt2::from_zrt2(q.clone()) * QRt2::inv_sqrt2();
        (ZRt2::sqrt2_times(k.floor()), ZRt2::sqrt2_times(k.floor() + 1))
    } else {
        let k = (QRt2::from_zrt2(q.clone()) - QRt2::one()).floor() / 2;
        (ZRt2::int(&k * 2 + 1), ZRt2::int(&k * 2 + 3))
    };
    for p in [lo, hi] {
        if let Ok(f) = H4Fraction::from_pair(&p, q) {
            if &f.q == q {
                out.push(f.error(&one).abs().as_qrt2().unwrap().clone() * QRt2::from_zrt2(q.clone()));
            }
        }
    }
    out
}

#[test]
fn liminf_at_one_is_near_half() {
    let half = QRt2::rational(1, 2);
    let mut tail_min: Option<QRt2> = None;
    for q in denominator_ladder(1000) {
        let q_sq = QRt2::from_zrt2(&q * &q);
        let floor = &half - &(QRt2::int(4) * q_sq).recip();
        for v in near_one(&q) {
            assert!(v > floor, "q = {q}: q|q − p| = {}", v.to_f64());
            if q.to_f64() >= 100.0 && tail_min.as_ref().map_or(true, |m| &v < m) {
                tail_min = Some(v);
            }
        }
    }
    let m = tail_min.unwrap();
    assert!(m < half, "the infimum is approached from below");
    assert!((m.to_f64() - 0.5).abs() < 1e-4, "{}", m.to_f64());
}

#[test]
fn dirichlet_constant_is_sharp_at_one() {
    let ws = dirichlet_sweep(&Surd::one(), 2000).unwrap();
    assert!(ws.iter().all(|w| w.holds));
    let sup = ws.iter().map(|w| w.scaled_error.to_f64()).fold(0.0, f64::max);
    // records approach (√2 + 1)/2 from below
    assert!(sup > 1.2 && sup < k_one().to_f64(), "{sup}");
}

#[test]
fn dirichlet_sweep_on_corpus() {
    for a in make_corpus(1, 20, 6) {
        let ws = dirichlet_sweep(&a, 300).unwrap();
        assert_eq!(ws.len(), 300);
        for w in &ws {
            assert!(w.holds, "{a} at N = {}", w.n);
            assert!(w.frac.q <= ZRt2::int(w.n) && w.next_q > ZRt2::int(w.n));
        }
    }
}

#[test]
fn optimality_streams_converge() {
    for s in [OptStream::A, OptStream::B] {
        let pts = optimality_check(s, 5, 100_000).unwrap();
        assert!(!pts.is_empty());
        for series in pts.iter().map(|p| p.series).collect::<std::collections::BTreeSet<_>>() {
            let run: Vec<&OptimalityPoint> = pts.iter().filter(|p| p.series == series).collect();
            assert!(run.iter().all(|p| p.conditions_hold && p.lo <= p.hi), "{series}");
            for w in run.windows(2) {
                assert!(w[1].distance <= w[0].distance, "{series}: not monotone at i = {}", w[1].i);
            }
            assert!(run.last().unwrap().distance < 1e-3, "{series}");
        }
    }
}
