use std::cmp::Ordering;

use hecke4::best::{best_approximations, Limit};
use hecke4::expansion::{word_matrix, DigitStream, Expansion};
use hecke4::field::{QRt2, Surd, SurdLiteral, ZRt2};
use hecke4::hecke::{ford_tangent, j_matrix, membership, H4Fraction, Mat2};
use proptest::prelude::*;

fn zrt2() -> impl Strategy<Value = ZRt2> {
    (-1000i64..1000, -1000i64..1000).prop_map(|(a, b)| ZRt2::new(a, b))
}

fn qrt2() -> impl Strategy<Value = QRt2> {
    (zrt2(), 1i64..500).prop_map(|(n, d)| QRt2::new(n, d.into()))
}

/// Positive quadratic surds `(P + Q√D)/S` outside Q(H4) with small
/// coefficients.
fn surd() -> impl Strategy<Value = Surd> {
    (-20i64..20, -20i64..20, 1i64..20, 0i64..20, 2i64..30, 0i64..10, 1i64..20)
        .prop_filter_map("degenerate or non-positive", |(p, pb, q, qb, d, db, s)| {
            let d = ZRt2::new(d, db.min(d / 2));
            let x = Surd::new(ZRt2::new(p, pb), ZRt2::new(q, qb), d, ZRt2::int(s)).ok()?;
            (x.sign() > 0 && !x.in_q_h4()).then_some(x)
        })
}

fn word() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1u8..=3, 0..12)
}

fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn zrt2_ring_laws(x in zrt2(), y in zrt2(), z in zrt2()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(&x * &x.conj(), ZRt2::int(x.norm()));
    }

    #[test]
    fn zrt2_order_matches_f64(x in zrt2(), y in zrt2()) {
        let (a, b) = (x.to_f64(), y.to_f64());
        if (a - b).abs() > 1e-6 {
            prop_assert_eq!(x.cmp(&y), a.partial_cmp(&b).unwrap());
        }
        prop_assert_eq!(x.sign() as f64, if a.abs() < 1e-300 { 0.0 } else { a.signum() });
    }

    #[test]
    fn qrt2_field_laws(x in qrt2(), y in qrt2()) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.recip()).is_one());
        prop_assert_eq!(&(&x * &y) / &x, y.clone());
        let f = x.floor();
        prop_assert!(QRt2::from(ZRt2::from(f.clone())) <= x);
        prop_assert!(x < QRt2::from(ZRt2::from(f + 1)));
    }

    #[test]
    fn surd_literal_round_trip(x in surd()) {
        let lit = x.to_literal();
        prop_assert_eq!(Surd::from_literal(&lit).unwrap(), x.clone());
        let json = serde_json::to_string(&x).unwrap();
        let back: SurdLiteral = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(Surd::from_literal(&back).unwrap(), x.clone());
        let dec: f64 = x.to_decimal(30).parse().unwrap();
        prop_assert!(approx_eq(dec, x.to_f64()));
    }

    #[test]
    fn surd_arithmetic_matches_f64(x in surd(), c in qrt2()) {
        let (a, b) = (x.to_f64(), c.to_f64());
        prop_assert!(approx_eq(x.add_q(&c).to_f64(), a + b));
        prop_assert!(approx_eq(x.mul_q(&c).to_f64(), a * b));
        prop_assert!(approx_eq(x.recip().unwrap().to_f64(), 1.0 / a));
        if (a - b).abs() > 1e-9 {
            prop_assert_eq!(x.cmp_q(&c), a.partial_cmp(&b).unwrap());
        }
        let sq = x.try_mul(&x).unwrap();
        prop_assert!(approx_eq(sq.to_f64(), a * a));
        prop_assert_eq!(sq.try_cmp(&x.try_mul(&x).unwrap()).unwrap(), Ordering::Equal);
    }

    #[test]
    fn words_lie_in_h4(w in word()) {
        let g = word_matrix(&w);
        prop_assert!(g.det().is_one());
        prop_assert!(membership(&g));
        let rev: Vec<u8> = w.iter().rev().copied().collect();
        let j = j_matrix();
        let t = Mat2::new(g.t.clone(), g.u.clone(), g.v.clone(), g.w.clone());
        prop_assert_eq!(word_matrix(&rev), &(&j * &t) * &j);
        // the columns t/u and v/w are Ford-tangent
        if !g.u.is_zero() && !g.w.is_zero() {
            let x = H4Fraction::from_pair(&g.t, &g.u).unwrap();
            let y = H4Fraction::from_pair(&g.v, &g.w).unwrap();
            prop_assert!(ford_tangent(&x, &y), "{} {}", x, y);
        }
    }

    #[test]
    fn periodic_streams_round_trip(pre in prop::collection::vec(1u8..=3, 0..3), per in prop::collection::vec(1u8..=3, 1..5)) {
        let Ok(s) = DigitStream::periodic(pre, per) else { return Ok(()) };
        let x = s.to_surd().unwrap();
        let mut e = Expansion::of_surd(x).unwrap();
        let want = s.prefix(24);
        prop_assert_eq!(e.digits(24).unwrap(), &want[..]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn best_approximations_improve(x in surd()) {
        let best = best_approximations(&x, Limit::MaxQ(2000)).unwrap();
        prop_assert!(!best.is_empty());
        for w in best.windows(2) {
            prop_assert!(w[0].frac.q < w[1].frac.q);
            let (e0, e1) = (w[0].frac.error(&x).abs(), w[1].frac.error(&x).abs());
            prop_assert_eq!(e1.try_cmp(&e0).unwrap(), Ordering::Less);
        }
        for b in &best {
            // |α − p/q| < 1/q²
            let q2 = QRt2::from(&b.frac.q * &b.frac.q);
            prop_assert_eq!(b.frac.distance(&x).cmp_q(&q2.recip()), Ordering::Less);
            let f: H4Fraction = serde_json::from_value(serde_json::to_value(&b.frac).unwrap()).unwrap();
            prop_assert_eq!(&f, &b.frac);
        }
    }
}
