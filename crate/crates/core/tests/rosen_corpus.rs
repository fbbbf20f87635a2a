use hecke4::best::{best_approximations, Limit};
use hecke4::cli::corpus::make_corpus;
use hecke4::expansion::Expansion;
use hecke4::field::Surd;
use hecke4::hecke::{H4Fraction, Mat2};
use hecke4::rosen::*;

fn corpus() -> Vec<Surd> {
    make_corpus(1, 100, 6)
}

fn same_projectively(a: &Mat2, b: &Mat2) -> bool {
    a == b || *a == b.negated()
}

#[test]
fn digits_agree_with_regrouped_expansion() {
    for (i, a) in corpus().iter().enumerate() {
        let mut e = Expansion::of_surd(a.clone()).unwrap();
        let r = rosen_digits(a, 40).unwrap();
        let d = dual_rosen_digits(a, 40).unwrap();
        assert_eq!(r, rosen_digits_from_expansion(&mut e, 40).unwrap(), "#{i} {a}");
        assert_eq!(d, dual_rosen_digits_from_expansion(&mut e, 40).unwrap(), "#{i} {a}");
        assert!(r.satisfies_uniqueness() && d.satisfies_uniqueness(), "#{i} {a}");
    }
}

#[test]
fn letters_step_the_selectors() {
    for (i, a) in corpus().iter().enumerate().take(40) {
        let mut e = Expansion::of_surd(a.clone()).unwrap();
        let n = 30;
        let states = e.convergents(n + 1).unwrap();
        let rl = rosen_letters(&mut e, n).unwrap();
        let dl = dual_letters(&mut e, n).unwrap();
        let tails: Vec<i8> = (0..=n).map(|k| e.tail_cmp_one(k).unwrap()).collect();
        for k in 0..n {
            let m = &select_m(&states[k]) * &rl[k].matrix();
            assert!(same_projectively(&m, &select_m(&states[k + 1])), "#{i} M at n = {k}");
            let nn = &select_n(&states[k], tails[k]) * &dl[k].matrix();
            assert!(same_projectively(&nn, &select_n(&states[k + 1], tails[k + 1])), "#{i} N at n = {k}");
        }
    }
}

#[test]
fn rosen_selectors_are_the_convergents() {
    for (i, a) in corpus().iter().enumerate() {
        let mut e = Expansion::of_surd(a.clone()).unwrap();
        let direct = convergents_up_to(a, Kind::Rosen, 1000).unwrap();
        assert_eq!(direct, selector_convergents(&mut e, Kind::Rosen, 1000).unwrap(), "#{i} {a}");
    }
}

#[test]
fn best_is_union_of_convergents() {
    for (i, a) in corpus().iter().enumerate() {
        let rosen = convergents_up_to(a, Kind::Rosen, 1000).unwrap();
        let dual = convergents_up_to(a, Kind::DualRosen, 1000).unwrap();
        let mut union: Vec<H4Fraction> = rosen.iter().chain(dual.iter().skip(1)).cloned().collect();
        union.sort_by(|x, y| x.q.cmp(&y.q));
        union.dedup();
        let best = best_approximations(a, Limit::MaxQ(1000)).unwrap();
        let fracs: Vec<H4Fraction> = best.iter().map(|b| b.frac.clone()).collect();
        assert_eq!(fracs, union, "#{i} {a}");
        for b in &best {
            assert_eq!(b.is_rosen, rosen.contains(&b.frac), "#{i} {}", b.frac);
            assert_eq!(b.is_dual, dual.contains(&b.frac), "#{i} {}", b.frac);
        }
    }
}

#[test]
fn dual_inclusion_cases() {
    // [r0 among selectors][α in window]
    let mut cases = [[0usize; 2]; 2];
    for (i, a) in corpus().iter().enumerate() {
        let rep = dual_inclusion_report(a, 1000).unwrap();
        assert!(rep.inclusion_holds, "#{i} {a}: {rep:?}");
        cases[rep.r0_among_dual_selectors as usize][rep.alpha_in_window as usize] += 1;
    }
    assert_eq!(cases, [[21, 20], [59, 0]]);
}
