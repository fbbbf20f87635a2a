//! `--alpha` specs: a JSON surd literal, a preset name, or `stream:…`.

use crate::error::{Error, Result};
use crate::expansion::{DigitStream, Rule};
use crate::field::{Surd, SurdLiteral, ZRt2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaInput {
    Surd(Surd),
    Stream(DigitStream),
}

pub const PRESETS: [&str; 2] = ["one", "paper-example"];

/// `(3 + √17)/(2√2)`
pub fn sqrt17_example() -> Surd {
    Surd::new(ZRt2::int(3), ZRt2::one(), ZRt2::int(17), ZRt2::sqrt2_times(2)).expect("valid literal")
}

/// Accepts
/// - `{"P":[pa,pb],"Q":[qa,qb],"D":[da,db],"S":[sa,sb]}`,
/// - `one`, `paper-example`,
/// - `stream:four-blocks`, `stream:three-powers`, or `stream:<pre>(<period>)`
///   with digits in `1..=3`, e.g. `stream:(323121)`.
pub fn parse_alpha(spec: &str) -> Result<AlphaInput> {
    let lead = spec.len() - spec.trim_start().len();
    let body = spec.trim();
    match body {
        "one" => return Ok(AlphaInput::Surd(Surd::one())),
        "paper-example" => return Ok(AlphaInput::Surd(sqrt17_example())),
        _ => {}
    }
    if let Some(rest) = body.strip_prefix("stream:") {
        return parse_stream(rest, lead + "stream:".len()).map(AlphaInput::Stream);
    }
    if body.starts_with('{') {
        let lit: SurdLiteral = serde_json::from_str(body).map_err(|e| Error::Parse {
            position: lead + json_offset(body, e.line(), e.column()),
            message: e.to_string(),
        })?;
        return Surd::from_literal(&lit).map(AlphaInput::Surd);
    }
    Err(Error::Parse {
        position: lead,
        message: format!("expected a JSON surd literal, one of {PRESETS:?}, or stream:<rule>"),
    })
}

/// Parses `spec` and requires a surd.
pub fn parse_surd(spec: &str) -> Result<Surd> {
    match parse_alpha(spec)? {
        AlphaInput::Surd(x) => Ok(x),
        AlphaInput::Stream(s) => match s {
            DigitStream::EventuallyPeriodic { .. } => s.to_surd(),
            _ => Err(Error::Validation(format!("{s} has no exact value; this command needs a surd"))),
        },
    }
}

/// Byte offset of a 1-based (line, column) position.
fn json_offset(s: &str, line: usize, column: usize) -> usize {
    let before: usize = s.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + column.saturating_sub(1)
}

fn parse_stream(s: &str, offset: usize) -> Result<DigitStream> {
    if let Some(rule) = Rule::parse(s) {
        return Ok(DigitStream::generated(rule));
    }
    let open = s.find('(').ok_or_else(|| Error::Parse {
        position: offset,
        message: "expected four-blocks, three-powers or <pre>(<period>)".into(),
    })?;
    if !s.ends_with(')') {
        return Err(Error::Parse { position: offset + s.len(), message: "expected ')' at the end".into() });
    }
    let digits = |part: &str, at: usize| -> Result<Vec<u8>> {
        part.char_indices()
            .map(|(i, c)| match c {
                '1'..='3' => Ok(c as u8 - b'0'),
                _ => Err(Error::Parse { position: at + i, message: format!("'{c}' is not a digit 1, 2 or 3") }),
            })
            .collect()
    };
    let pre = digits(&s[..open], offset)?;
    let per = digits(&s[open + 1..s.len() - 1], offset + open + 1)?;
    DigitStream::periodic(pre, per)
}

/// `a,b` for `a + b√2`.
pub fn parse_zrt2(s: &str) -> Result<ZRt2> {
    let bad = |position: usize| Error::Parse { position, message: format!("expected a,b for a + b√2, got {s:?}") };
    let (a, b) = s.split_once(',').ok_or_else(|| bad(0))?;
    let a = a.trim().parse::<num_bigint::BigInt>().map_err(|_| bad(0))?;
    let b = b.trim().parse::<num_bigint::BigInt>().map_err(|_| bad(s.find(',').unwrap_or(0) + 1))?;
    Ok(ZRt2::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        assert_eq!(parse_alpha("one").unwrap(), AlphaInput::Surd(Surd::one()));
        let lit = r#"{"P":[3,0],"Q":[1,0],"D":[17,0],"S":[0,2]}"#;
        assert_eq!(parse_alpha(lit).unwrap(), parse_alpha("paper-example").unwrap());
        let one = r#"{"P":[1,0],"Q":[0,0],"D":[1,0],"S":[1,0]}"#;
        assert_eq!(parse_surd(one).unwrap(), Surd::one());
    }

    #[test]
    fn streams() {
        assert_eq!(parse_alpha("stream:three-powers").unwrap(), AlphaInput::Stream(DigitStream::generated(Rule::ThreePowers)));
        let p = parse_alpha("stream:(323121)").unwrap();
        assert_eq!(p, AlphaInput::Stream(DigitStream::periodic(vec![], vec![3, 2, 3, 1, 2, 1]).unwrap()));
        assert_eq!(parse_surd("stream:(2)").unwrap(), Surd::one());
    }

    #[test]
    fn rejects() {
        assert!(matches!(parse_alpha("stream:1(24)"), Err(Error::Parse { position: 10, .. })));
        assert!(matches!(parse_alpha("two"), Err(Error::Parse { .. })));
        assert!(matches!(parse_alpha(r#"{"P":[1,0],"Q":[1,0],"D":[0,0],"S":[1,0]}"#), Err(Error::Validation(_))));
        assert!(matches!(parse_alpha(r#"{"P":[1,0],"Q":[1,0],"D":[2,0],"S":[0,0]}"#), Err(Error::Validation(_))));
        assert!(matches!(parse_alpha(r#"{"P":[1,0],"Q":[1,0]}"#), Err(Error::Parse { .. })));
        assert!(matches!(parse_alpha(r#"{"P":[1,0],"Q":[1,0],"D":[2,0],"S":[1,0],"X":1}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn zrt2_pairs() {
        assert_eq!(parse_zrt2("3, -2").unwrap(), ZRt2::new(3, -2));
        assert!(parse_zrt2("3").is_err());
    }
}
