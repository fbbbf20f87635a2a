use std::fmt::Write as _;

use serde_json::json;

use super::corpus::make_corpus;
use super::parse::{parse_zrt2, AlphaInput};
use super::render::{alpha_json, dec, dec_q, fraction_json, num_den, to_csv, to_json, yes_no};
use super::Format;
use crate::best::{best_approximations, legendre_classify, oracle_best_approximations, BestApprox, BestApproxIter, Limit};
use crate::error::{Error, Result};
use crate::expansion::{normalize_alpha, DigitStream, Expansion};
use crate::field::Surd;
use crate::hecke::H4Fraction;
use crate::rosen::{dual_rosen_digits, dual_rosen_digits_from_expansion, rosen_digits, rosen_digits_from_expansion, Kind, RosenExpansion};
use crate::uniform::{
    dirichlet_sweep, k_exact, k_numeric, k_of_surd, optimality_check, uniform_sequence, KMethod, KResult, OptStream,
};

fn need_positive(x: &Surd, what: &str) -> Result<()> {
    if x.sign() <= 0 {
        return Err(Error::Validation(format!("{what} needs α > 0, got {x}")));
    }
    Ok(())
}

fn exact_of(a: &AlphaInput) -> Result<Option<Surd>> {
    match a {
        AlphaInput::Surd(x) => Ok(Some(x.clone())),
        AlphaInput::Stream(s @ DigitStream::EventuallyPeriodic { .. }) => s.to_surd().map(Some),
        AlphaInput::Stream(_) => Ok(None),
    }
}

fn surd_only(a: &AlphaInput, what: &str) -> Result<Surd> {
    exact_of(a)?.ok_or_else(|| Error::Validation(format!("{what} needs an exact surd, not a generated stream")))
}

fn expansion_of(a: &AlphaInput, cap: usize) -> Result<Expansion> {
    Ok(match a {
        AlphaInput::Surd(x) => {
            need_positive(x, "the H4-expansion")?;
            Expansion::of_surd(x.clone())?.with_cap(cap)
        }
        AlphaInput::Stream(s) => Expansion::of_stream(s.clone()).with_cap(cap),
    })
}

pub fn expand(alpha: &AlphaInput, digits: usize, format: Format, cap: usize) -> Result<String> {
    if digits > cap {
        return Err(Error::CapExceeded(cap));
    }
    let mut exp = expansion_of(alpha, cap)?;
    let ended = match exp.ensure(digits) {
        Ok(()) => false,
        Err(Error::Terminated { .. }) => true,
        Err(e) => return Err(e),
    };
    let ds: Vec<u8> = exp.known_digits().iter().take(digits).copied().collect();
    let term = if ended { exp.termination().cloned() } else { None };
    match format {
        Format::Text => {
            let mut s = ds.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
            s.push('\n');
            if let Some(t) = &term {
                let spell: Vec<String> = t
                    .completions
                    .iter()
                    .map(|(extra, r)| format!("[{}{}({r})^∞]", word(&t.prefix), word(extra)))
                    .collect();
                let _ = writeln!(s, "terminates after {} digits: α lies in Q(H4), α = {}", ds.len(), spell.join(" = "));
            }
            Ok(s)
        }
        Format::Json => to_json(&json!({
            "alpha": alpha_json(alpha),
            "digits": ds,
            "terminated": term.is_some(),
            "termination": term,
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = ds.iter().enumerate().map(|(i, d)| vec![(i + 1).to_string(), d.to_string()]).collect();
            to_csv(&["n", "digit"], &rows)
        }
    }
}

fn word(ds: &[u8]) -> String {
    ds.iter().map(|d| char::from(b'0' + d)).collect()
}

fn sign_char(e: i8) -> char {
    if e > 0 {
        '+'
    } else {
        '-'
    }
}

fn rosen_text(r: &RosenExpansion) -> String {
    let parts: Vec<String> = r.digits.iter().map(|d| format!("{}1/{}", sign_char(d.eps), d.a)).collect();
    format!("⟦{}; {}⟧", r.a0, parts.join(", "))
}

pub fn rosen(alpha: &AlphaInput, kind: Kind, digits: usize, format: Format, cap: usize) -> Result<String> {
    if digits > cap {
        return Err(Error::CapExceeded(cap));
    }
    let r = match (exact_of(alpha)?, kind) {
        (Some(x), Kind::Rosen) => rosen_digits(&x, digits)?,
        (Some(x), Kind::DualRosen) => dual_rosen_digits(&x, digits)?,
        (None, Kind::Rosen) => rosen_digits_from_expansion(&mut expansion_of(alpha, cap)?, digits)?,
        (None, Kind::DualRosen) => dual_rosen_digits_from_expansion(&mut expansion_of(alpha, cap)?, digits)?,
    };
    let conv = r.convergents()?;
    match format {
        Format::Text => {
            let mut s = format!("{}\nconvergents:\n", rosen_text(&r));
            for (i, f) in conv.iter().enumerate() {
                let _ = writeln!(s, "{i}  {f}  {}", dec_q(&f.value()));
            }
            Ok(s)
        }
        Format::Json => {
            let cs: Vec<_> = conv.iter().enumerate().map(|(i, f)| json!({"i": i, "convergent": fraction_json(f)})).collect();
            to_json(&json!({
                "alpha": alpha_json(alpha),
                "kind": r.kind,
                "a0": r.a0.to_string(),
                "digits": r.digits,
                "convergents": cs,
            }))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = conv
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let (eps, a) = match i {
                        0 => (String::new(), r.a0.to_string()),
                        _ => (r.digits[i - 1].eps.to_string(), r.digits[i - 1].a.to_string()),
                    };
                    vec![i.to_string(), eps, a, f.p.to_string(), f.q.to_string(), dec_q(&f.value())]
                })
                .collect();
            to_csv(&["i", "eps", "a", "p", "q", "value_decimal"], &rows)
        }
    }
}

fn flags(b: &BestApprox) -> String {
    match (b.is_rosen, b.is_dual) {
        (true, true) => "rosen,dual".into(),
        (true, false) => "rosen".into(),
        (false, true) => "dual".into(),
        (false, false) => "-".into(),
    }
}

pub fn best(alpha: &AlphaInput, limit: Limit, format: Format, cap: usize) -> Result<String> {
    let list = match alpha {
        AlphaInput::Surd(x) => best_approximations(x, limit)?,
        AlphaInput::Stream(s) => BestApproxIter::new(Expansion::of_stream(s.clone()).with_cap(cap))?.collect_until(limit)?,
    };
    let exact = exact_of(alpha)?;
    let err = |b: &BestApprox| exact.as_ref().map(|x| b.frac.error(x));
    match format {
        Format::Text => {
            let mut s = String::new();
            for (i, b) in list.iter().enumerate() {
                let _ = write!(s, "{}  {}  {}  {:?}  n={}..{}  {}", i + 1, b.frac, dec_q(&b.frac.value()), b.side, b.n_first, b.n_last, flags(b));
                if let Some(e) = err(b) {
                    let _ = write!(s, "  |qα−p|={}", dec(&e));
                }
                s.push('\n');
            }
            Ok(s)
        }
        Format::Json => {
            let items: Vec<_> = list
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let e = err(b);
                    json!({
                        "i": i + 1,
                        "approximation": fraction_json(&b.frac),
                        "side": b.side,
                        "n_first": b.n_first,
                        "n_last": b.n_last,
                        "is_rosen": b.is_rosen,
                        "is_dual": b.is_dual,
                        "error": e,
                        "error_decimal": e.as_ref().map(dec),
                    })
                })
                .collect();
            to_json(&json!({"alpha": alpha_json(alpha), "best_approximations": items}))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = list
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    vec![
                        (i + 1).to_string(),
                        b.frac.p.to_string(),
                        b.frac.q.to_string(),
                        dec_q(&b.frac.value()),
                        format!("{:?}", b.side),
                        b.is_rosen.to_string(),
                        b.is_dual.to_string(),
                        err(b).map(|e| dec(&e)).unwrap_or_default(),
                    ]
                })
                .collect();
            to_csv(&["i", "p", "q", "value_decimal", "side", "is_rosen", "is_dual", "error_decimal"], &rows)
        }
    }
}

pub fn oracle(alpha: &AlphaInput, max_q: u64, format: Format, cap: usize) -> Result<String> {
    if max_q as usize > cap {
        return Err(Error::CapExceeded(cap));
    }
    let x = surd_only(alpha, "the oracle")?;
    let list = oracle_best_approximations(&x, max_q)?;
    let fast: Vec<H4Fraction> = best_approximations(&x, Limit::MaxQ(max_q))?.into_iter().map(|b| b.frac).collect();
    let agrees = fast == list;
    match format {
        Format::Text => {
            let mut s = String::new();
            for (i, f) in list.iter().enumerate() {
                let _ = writeln!(s, "{}  {f}  {}", i + 1, dec_q(&f.value()));
            }
            let _ = writeln!(s, "chain enumeration agrees: {}", yes_no(agrees));
            Ok(s)
        }
        Format::Json => {
            let items: Vec<_> = list.iter().enumerate().map(|(i, f)| json!({"i": i + 1, "approximation": fraction_json(f)})).collect();
            to_json(&json!({"alpha": alpha_json(alpha), "max_q": max_q, "best_approximations": items, "chain_agrees": agrees}))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                list.iter().enumerate().map(|(i, f)| vec![(i + 1).to_string(), f.p.to_string(), f.q.to_string(), dec_q(&f.value())]).collect();
            to_csv(&["i", "p", "q", "value_decimal"], &rows)
        }
    }
}

pub fn legendre(alpha: &AlphaInput, p: &str, q: &str, format: Format) -> Result<String> {
    let x = surd_only(alpha, "the Legendre check")?;
    let (p, q) = (parse_zrt2(p)?, parse_zrt2(q)?);
    let f = H4Fraction::from_pair(&p, &q)?;
    let class = legendre_classify(&x, &f)?;
    let dist = f.distance(&x);
    let name = format!("{class:?}");
    match format {
        Format::Text => Ok(format!("{f}  {name}\n|α − p/q| = {}\n", dec(&dist))),
        Format::Json => to_json(&json!({
            "alpha": alpha_json(alpha),
            "fraction": fraction_json(&f),
            "class": class,
            "distance": dist,
            "distance_decimal": dec(&dist),
        })),
        Format::Csv => to_csv(&["p", "q", "class", "distance_decimal"], &[vec![f.p.to_string(), f.q.to_string(), name, dec(&dist)]]),
    }
}

pub enum KMode {
    Exact,
    Numeric { records: usize, window: usize },
}

fn method_name(m: KMethod) -> &'static str {
    match m {
        KMethod::ExactPeriodic => "exact-periodic",
        KMethod::NumericLimsup => "numeric-limsup",
    }
}

pub fn k(alpha: &AlphaInput, mode: KMode, list: usize, format: Format, cap: usize) -> Result<String> {
    let res: KResult = match mode {
        KMode::Exact => match alpha {
            AlphaInput::Surd(x) => k_of_surd(x, cap)?,
            AlphaInput::Stream(s) => k_exact(s)?,
        },
        KMode::Numeric { records, window } => {
            let mut exp = match alpha {
                AlphaInput::Surd(x) if x.sign() <= 0 => {
                    if x.in_q_h4() {
                        return Err(Error::InputInQH4(x.to_string()));
                    }
                    Expansion::of_surd(normalize_alpha(x)?.2)?.with_cap(cap)
                }
                _ => expansion_of(alpha, cap)?,
            };
            k_numeric(&mut exp, records, window)?
        }
    };
    let records = if list > 0 { uniform_sequence(&surd_only(alpha, "listing uniform records")?, list)? } else { Vec::new() };
    let value_dec = res.value.as_ref().map(dec).unwrap_or_else(|| format!("{:.15}", res.approx));
    let nd = res.value.as_ref().map(num_den);
    match format {
        Format::Text => {
            let mut s = String::new();
            match &res.value {
                Some(v) => {
                    let (n, d) = nd.clone().expect("exact value");
                    let _ = writeln!(s, "K = {v}");
                    let _ = writeln!(s, "numerator: {n}\ndenominator: {d}");
                }
                None => {
                    let _ = writeln!(s, "K ≈ {} (not certified; sup of the last {} of {} records)", res.approx, res.window, res.records);
                }
            }
            let _ = writeln!(s, "decimal: {value_dec}\nmethod: {}\nwithin [1/2, (√2+1)/2]: {}", method_name(res.method), yes_no(res.within_bounds));
            for ph in &res.phases {
                let _ = writeln!(s, "phase {}: {:?} {}  {}", ph.phase, ph.side, ph.case.name(), dec(&ph.value));
            }
            for r in &records {
                let _ = writeln!(s, "record {}: {} at n={}  {}  {} → {}", r.i, r.case.name(), r.n, dec(&r.value), r.frac, r.next);
            }
            Ok(s)
        }
        Format::Json => {
            let phases: Vec<_> = res
                .phases
                .iter()
                .map(|ph| {
                    json!({
                        "phase": ph.phase, "side": ph.side, "case": ph.case,
                        "alpha_n": ph.alpha_n, "alpha_star": ph.alpha_star,
                        "value": ph.value, "value_decimal": dec(&ph.value),
                    })
                })
                .collect();
            let recs: Vec<_> = records
                .iter()
                .map(|r| {
                    json!({
                        "i": r.i, "n": r.n, "case": r.case, "value": r.value, "value_decimal": dec(&r.value),
                        "approximation": fraction_json(&r.frac), "next": fraction_json(&r.next),
                    })
                })
                .collect();
            to_json(&json!({
                "alpha": alpha_json(alpha),
                "method": res.method,
                "value": res.value,
                "value_decimal": value_dec,
                "numerator": nd.as_ref().map(|x| x.0.clone()),
                "denominator": nd.as_ref().map(|x| x.1.clone()),
                "certified": res.certified,
                "within_bounds": res.within_bounds,
                "phases": phases,
                "records": res.records,
                "window": res.window,
                "uniform_records": recs,
            }))
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = Vec::new();
            if records.is_empty() {
                for ph in &res.phases {
                    let (n, d) = num_den(&ph.value);
                    rows.push(vec![ph.phase.to_string(), dec(&ph.value), ph.case.name().into(), n, d]);
                }
            }
            for r in &records {
                let (n, d) = num_den(&r.value);
                rows.push(vec![r.i.to_string(), dec(&r.value), r.case.name().into(), n, d]);
            }
            let (n, d) = nd.unwrap_or_default();
            rows.push(vec!["K".into(), value_dec, method_name(res.method).into(), n, d]);
            to_csv(&["i", "value_decimal", "case", "exact_num", "exact_den"], &rows)
        }
    }
}

pub fn dirichlet(alpha: &AlphaInput, n_max: u64, format: Format) -> Result<String> {
    let x = surd_only(alpha, "the Dirichlet sweep")?;
    let ws = dirichlet_sweep(&x, n_max)?;
    let all = ws.iter().all(|w| w.holds);
    match format {
        Format::Text => {
            let mut s = String::new();
            for w in &ws {
                let _ = writeln!(s, "N={}  {}  N·|qα−p|={}  {}", w.n, w.frac, dec(&w.scaled_error), if w.holds { "holds" } else { "FAILS" });
            }
            let _ = writeln!(s, "all witnesses hold: {}", yes_no(all));
            Ok(s)
        }
        Format::Json => {
            let items: Vec<_> = ws
                .iter()
                .map(|w| {
                    json!({
                        "n": w.n, "witness": fraction_json(&w.frac), "next_q": w.next_q,
                        "scaled_error": w.scaled_error, "scaled_error_decimal": dec(&w.scaled_error), "holds": w.holds,
                    })
                })
                .collect();
            to_json(&json!({"alpha": alpha_json(alpha), "n_max": n_max, "all_hold": all, "witnesses": items}))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = ws
                .iter()
                .map(|w| {
                    let (n, d) = num_den(&w.scaled_error);
                    vec![w.n.to_string(), dec(&w.scaled_error), "dirichlet".into(), n, d, w.frac.to_string(), w.holds.to_string()]
                })
                .collect();
            to_csv(&["i", "value_decimal", "case", "exact_num", "exact_den", "witness", "holds"], &rows)
        }
    }
}

pub fn optimality(stream: OptStream, i_max: u32, format: Format, cap: usize) -> Result<String> {
    let pts = optimality_check(stream, i_max, cap)?;
    match format {
        Format::Text => {
            let mut s = String::new();
            for p in &pts {
                let _ = writeln!(
                    s,
                    "{}  i={} n={}  [{}, {}]  target {}  distance {:.3e}  lookahead {}  conditions {}",
                    p.series,
                    p.i,
                    p.n,
                    dec_q(&p.lo),
                    dec_q(&p.hi),
                    dec_q(&p.target),
                    p.distance,
                    p.lookahead,
                    yes_no(p.conditions_hold)
                );
            }
            Ok(s)
        }
        Format::Json => to_json(&json!({"stream": stream, "i_max": i_max, "points": pts.iter().map(|p| json!({
            "series": p.series, "i": p.i, "n": p.n, "lo": p.lo, "hi": p.hi, "target": p.target,
            "lo_decimal": dec_q(&p.lo), "hi_decimal": dec_q(&p.hi), "distance": p.distance,
            "lookahead": p.lookahead, "conditions_hold": p.conditions_hold,
        })).collect::<Vec<_>>()})),
        Format::Csv => {
            let rows: Vec<Vec<String>> = pts
                .iter()
                .map(|p| {
                    vec![
                        p.i.to_string(),
                        dec_q(&p.lo),
                        p.series.to_string(),
                        p.lo.num().to_string(),
                        p.lo.den().to_string(),
                        dec_q(&p.hi),
                        dec_q(&p.target),
                        format!("{:e}", p.distance),
                        p.conditions_hold.to_string(),
                    ]
                })
                .collect();
            to_csv(&["i", "value_decimal", "case", "exact_num", "exact_den", "hi_decimal", "target_decimal", "distance", "conditions_hold"], &rows)
        }
    }
}

pub fn corpus(seed: u64, size: usize, bound: i64, format: Format) -> Result<String> {
    let xs = make_corpus(seed, size, bound);
    match format {
        Format::Text => {
            let mut s = String::new();
            for (i, x) in xs.iter().enumerate() {
                let lit = serde_json::to_string(x).map_err(|e| Error::Domain(e.to_string()))?;
                let _ = writeln!(s, "{}  {lit}  {}", i + 1, dec(x));
            }
            Ok(s)
        }
        Format::Json => {
            let items: Vec<_> = xs.iter().enumerate().map(|(i, x)| json!({"i": i + 1, "alpha": x, "value_decimal": dec(x)})).collect();
            to_json(&json!({"seed": seed, "size": size, "coeff_bound": bound, "prng": "chacha8", "corpus": items}))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = xs
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let l = x.to_literal();
                    vec![(i + 1).to_string(), l.p.to_string(), l.q.to_string(), l.d.to_string(), l.s.to_string(), dec(x)]
                })
                .collect();
            to_csv(&["i", "P", "Q", "D", "S", "value_decimal"], &rows)
        }
    }
}
