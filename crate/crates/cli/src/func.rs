//! Concrete syntax for continuous functions on a spectrum.
//!
//! ```text
//! poly: 1 + x^2/t           any field expression in the spectral variable x
//! table: {p0: 1, p2: t}     values per point id, unlisted points are 0
//! indicator: {points: [p1], includes_zero: false}
//! ```
//!
//! The braces after `table:` and `indicator:` are JSON; keys and scalar
//! values may be left unquoted.

use std::collections::BTreeMap;

use nacalc::field::expr::{parse_expr, Expr};
use nacalc::measure::{CFunc, CFuncRepr, Clopen};
use nacalc::spectral::{PointRef, Spectrum};
use nacalc::{Error, FieldElem, Result};
use serde::{Deserialize, Serialize};

/// A parsed function that still needs a spectrum to become a [`CFunc`].
#[derive(Clone, Debug, PartialEq)]
pub enum FuncExpr {
    Poly(Expr),
    Table(BTreeMap<String, FieldElem>),
    Indicator(Clopen),
    Repr(CFuncRepr),
}

impl FuncExpr {
    pub fn resolve(&self, sigma: &Spectrum) -> Result<CFunc> {
        match self {
            FuncExpr::Poly(e) => CFunc::from_fn(sigma, |p, x| match p {
                PointRef::Zero => e.eval(Some(&FieldElem::zero())),
                PointRef::Point(_) => e.eval(Some(x)),
            }),
            FuncExpr::Table(values) => CFuncRepr::Table {
                at_zero: FieldElem::zero(),
                values: values.clone(),
            }
            .resolve(sigma),
            FuncExpr::Indicator(c) => {
                c.validate(sigma)?;
                Ok(CFunc::indicator(c, sigma))
            }
            FuncExpr::Repr(r) => r.resolve(sigma),
        }
    }
}

/// Parses the text form without looking at a spectrum, so syntax errors can
/// be reported before anything runs.
pub fn parse_func_syntax(text: &str) -> Result<FuncExpr> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    let (head, body) = trimmed.split_once(':').ok_or_else(|| Error::Parse {
        pos: offset,
        msg: "expected `poly:`, `table:` or `indicator:`".into(),
    })?;
    let body_pos = offset + head.len() + 1;
    let shift = |e: Error| match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + body_pos,
            msg,
        },
        other => other,
    };
    match head.trim() {
        "poly" => parse_expr(body, true).map(FuncExpr::Poly).map_err(shift),
        "table" => parse_relaxed_json(body)
            .map(FuncExpr::Table)
            .map_err(|msg| Error::Parse { pos: body_pos, msg }),
        "indicator" => parse_relaxed_json(body)
            .map(FuncExpr::Indicator)
            .map_err(|msg| Error::Parse { pos: body_pos, msg }),
        other => Err(Error::Parse {
            pos: offset,
            msg: format!("unknown function form `{other}`"),
        }),
    }
}

pub fn parse_func_expr(text: &str, sigma: &Spectrum) -> Result<CFunc> {
    parse_func_syntax(text)?.resolve(sigma)
}

/// A function in a scenario file: the text form, or a JSON table/poly object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FuncSpec {
    Text(String),
    Repr(CFuncRepr),
}

impl FuncSpec {
    pub fn parse(&self) -> Result<FuncExpr> {
        match self {
            FuncSpec::Text(s) => parse_func_syntax(s),
            FuncSpec::Repr(r) => Ok(FuncExpr::Repr(r.clone())),
        }
    }
}

fn parse_relaxed_json<T: for<'de> Deserialize<'de>>(text: &str) -> std::result::Result<T, String> {
    serde_json::from_str(&quote_bare_tokens(text)).map_err(|e| e.to_string())
}

/// Wraps every unquoted scalar in double quotes, leaving `true`, `false` and
/// `null` alone. Scalars run up to the next structural character.
fn quote_bare_tokens(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 16);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '{' | '}' | '[' | ']' | ':' | ',' => {
                out.push(c);
                chars.next();
            }
            '"' => {
                out.push(c);
                chars.next();
                let mut escaped = false;
                for c in chars.by_ref() {
                    out.push(c);
                    if escaped {
                        escaped = false;
                    } else if c == '\\' {
                        escaped = true;
                    } else if c == '"' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                out.push(c);
                chars.next();
            }
            _ => {
                let mut token = String::new();
                while let Some(&c) = chars.peek() {
                    if matches!(c, '{' | '}' | '[' | ']' | ':' | ',' | '"') {
                        break;
                    }
                    token.push(c);
                    chars.next();
                }
                let trimmed = token.trim_end();
                if matches!(trimmed, "true" | "false" | "null") {
                    out.push_str(trimmed);
                } else {
                    out.push('"');
                    out.push_str(trimmed);
                    out.push('"');
                }
                out.push_str(&token[trimmed.len()..]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nacalc::{OpSY, OrthoSystem};
    use std::sync::Arc;

    fn fe(s: &str) -> FieldElem {
        s.parse().unwrap()
    }

    fn sigma(values: &[&str]) -> Spectrum {
        let lambda: Vec<FieldElem> = values.iter().map(|s| fe(s)).collect();
        let t = OpSY::diagonal(Arc::new(OrthoSystem::standard(lambda.len())), lambda).unwrap();
        Spectrum::of(&t).unwrap()
    }

    #[test]
    fn relaxed_json_quotes_scalars() {
        assert_eq!(
            quote_bare_tokens("{points:[p1, p2], includes_zero:false}"),
            r#"{"points":["p1", "p2"], "includes_zero":false}"#
        );
        assert_eq!(
            quote_bare_tokens(r#"{"p1": (1+t)/2 , p2:"t"}"#),
            r#"{"p1": "(1+t)/2" , "p2":"t"}"#
        );
    }

    #[test]
    fn poly_x_is_identity_function() {
        let s = sigma(&["t", "1+t", "t"]);
        assert_eq!(parse_func_expr("poly: x", &s).unwrap(), CFunc::identity(&s));
        assert_eq!(
            parse_func_expr("poly: 1", &s).unwrap(),
            CFunc::constant(FieldElem::one())
        );
        let f = parse_func_expr("poly: x^2 - t*x", &s).unwrap();
        for p in s.refs() {
            let x = s.value(p);
            assert_eq!(f.eval(p), &(&x.square() - &(&fe("t") * &x)));
        }
    }

    #[test]
    fn poly_division_by_zero_at_origin() {
        let s = sigma(&["t"]);
        assert_eq!(parse_func_expr("poly: 1/x", &s), Err(Error::DivisionByZero));
    }

    #[test]
    fn indicator_matches_table() {
        let s = sigma(&["t", "t^2"]);
        let c = Clopen::singleton(PointRef::Point(1));
        let eta = parse_func_expr("indicator: {points:[p1], includes_zero:false}", &s).unwrap();
        assert_eq!(eta, CFunc::indicator(&c, &s));
        assert_eq!(parse_func_expr("table: {p1: 1}", &s).unwrap(), eta);
    }

    #[test]
    fn table_rejects_unknown_points() {
        let s = sigma(&["t"]);
        assert_eq!(
            parse_func_expr("table: {p3: 1}", &s),
            Err(Error::UnknownPoint("p3".into()))
        );
        let f = parse_func_expr("table: {zero: t, p1: 1/t}", &s).unwrap();
        assert_eq!(f.eval(PointRef::Zero), &fe("t"));
        assert_eq!(f.eval(PointRef::Point(1)), &fe("1/t"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_func_syntax("poly: 1 +"), Err(Error::Parse { pos, .. }) if pos >= 6));
        assert!(matches!(
            parse_func_syntax("cubic: x"),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(parse_func_syntax("x^2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_func_syntax("table: {p1: "), Err(Error::Parse { .. })));
    }
}
