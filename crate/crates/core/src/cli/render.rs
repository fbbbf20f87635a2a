use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expansion::DigitStream;
use crate::field::{QRt2, Surd};
use crate::hecke::H4Fraction;

use super::parse::AlphaInput;

/// Places after the decimal point in advisory renderings.
pub const DECIMALS: u64 = 30;

pub fn dec(x: &Surd) -> String {
    x.to_decimal(DECIMALS)
}

pub fn dec_q(x: &QRt2) -> String {
    Surd::from_qrt2(x.clone()).to_decimal(DECIMALS)
}

/// `P + Q√D` and `S` of the literal `(P + Q√D)/S`.
pub fn num_den(x: &Surd) -> (String, String) {
    let lit = x.to_literal();
    let num = if lit.q.is_zero() { lit.p.to_string() } else { format!("{} + ({})·√({})", lit.p, lit.q, lit.d) };
    (num, lit.s.to_string())
}

/// A spec that `parse_alpha` reads back to the same input.
pub fn stream_spec(s: &DigitStream) -> String {
    let word = |ds: &[u8]| ds.iter().map(|d| char::from(b'0' + d)).collect::<String>();
    match s {
        DigitStream::Generated { rule } => format!("stream:{}", rule.name()),
        DigitStream::EventuallyPeriodic { preperiod, period } => format!("stream:{}({})", word(preperiod), word(period)),
        DigitStream::Finite { digits } => format!("[{}]", word(digits)),
    }
}

pub fn alpha_json(a: &AlphaInput) -> Value {
    match a {
        AlphaInput::Surd(x) => json!(x),
        AlphaInput::Stream(s) => json!(stream_spec(s)),
    }
}

pub fn fraction_json(f: &H4Fraction) -> Value {
    json!({
        "fraction": f,
        "display": f.to_string(),
        "value_decimal": dec_q(&f.value()),
    })
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string(v).map_err(|e| Error::Domain(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Domain(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Domain(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Domain(e.to_string()))
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
