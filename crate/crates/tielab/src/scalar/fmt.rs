//! Rendering (plain text, LaTeX, JSON) and JSON parsing for tower values.
//! The plain form is whatever `Display` prints; the JSON form round-trips.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::coeff::Coeff;
use crate::scalar::poly::{exponent_text, Exp, LaurentPoly};
use crate::scalar::quadext::QuadExt;
use crate::scalar::ratfunc::RatFunc;
use crate::scalar::varset::VarSet;

/// Any value the tower can hand to the CLI.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarValue<C: Coeff> {
    Poly(LaurentPoly<C>),
    Rat(RatFunc<C>),
    Quad(QuadExt<C>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Plain,
    Latex,
    Json,
}

impl RenderFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Self::Plain),
            "latex" => Ok(Self::Latex),
            "json" => Ok(Self::Json),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

impl<C: Coeff> ScalarValue<C> {
    pub fn render(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Plain => self.plain(),
            RenderFormat::Latex => self.latex(),
            RenderFormat::Json => self.json().to_string(),
        }
    }

    pub fn plain(&self) -> String {
        match self {
            ScalarValue::Poly(p) => p.to_string(),
            ScalarValue::Rat(r) => r.to_string(),
            ScalarValue::Quad(q) => q.to_string(),
        }
    }

    pub fn latex(&self) -> String {
        match self {
            ScalarValue::Poly(p) => latex_poly(p),
            ScalarValue::Rat(r) => latex_rat(r),
            ScalarValue::Quad(q) => {
                if q.im().is_zero() {
                    latex_rat(q.re())
                } else if q.re().is_zero() {
                    format!(
                        "\\left({}\\right)\\sqrt{{{}}}",
                        latex_rat(q.im()),
                        latex_rat(q.rad())
                    )
                } else {
                    format!(
                        "{} + \\left({}\\right)\\sqrt{{{}}}",
                        latex_rat(q.re()),
                        latex_rat(q.im()),
                        latex_rat(q.rad())
                    )
                }
            }
        }
    }

    pub fn json(&self) -> Value {
        match self {
            ScalarValue::Poly(p) => poly_json(p),
            ScalarValue::Rat(r) => rat_json(r),
            ScalarValue::Quad(q) => json!({
                "re": rat_json(q.re()),
                "im": rat_json(q.im()),
                "rad": rat_json(q.rad()),
            }),
        }
    }

    /// Inverse of `json`, dispatching on object shape.
    pub fn parse_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("scalar JSON must be an object".into()))?;
        if obj.contains_key("terms") {
            Ok(ScalarValue::Poly(poly_from_json(v)?))
        } else if obj.contains_key("num") {
            Ok(ScalarValue::Rat(rat_from_json(v)?))
        } else if obj.contains_key("re") {
            let re = rat_from_json(&obj["re"])?;
            let im = rat_from_json(
                obj.get("im")
                    .ok_or_else(|| Error::Parse("missing `im`".into()))?,
            )?;
            let rad = rat_from_json(
                obj.get("rad")
                    .ok_or_else(|| Error::Parse("missing `rad`".into()))?,
            )?;
            Ok(ScalarValue::Quad(QuadExt::new(re, im, rad)))
        } else {
            Err(Error::Parse("unrecognized scalar JSON shape".into()))
        }
    }
}

fn poly_json<C: Coeff>(p: &LaurentPoly<C>) -> Value {
    let vars = p.vars();
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| {
            json!({
                "coeff": c.coeff_string(),
                "exp": e.iter().collect::<Vec<&i32>>(),
            })
        })
        .collect();
    let mut obj = json!({
        "vars": vars.names(),
        "terms": terms,
    });
    if (0..vars.len()).any(|i| vars.is_quarter(i)) {
        obj["quarter"] = json!((0..vars.len())
            .map(|i| vars.is_quarter(i))
            .collect::<Vec<bool>>());
    }
    obj
}

fn rat_json<C: Coeff>(r: &RatFunc<C>) -> Value {
    json!({
        "num": poly_json(r.num()),
        "den": poly_json(r.den()),
    })
}

fn poly_from_json<C: Coeff>(v: &Value) -> Result<LaurentPoly<C>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("polynomial JSON must be an object".into()))?;
    let names: Vec<String> = obj
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `vars`".into()))?
        .iter()
        .map(|n| {
            n.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse("variable names must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let quarter: Vec<bool> = match obj.get("quarter") {
        None => vec![false; names.len()],
        Some(q) => q
            .as_array()
            .ok_or_else(|| Error::Parse("`quarter` must be an array".into()))?
            .iter()
            .map(|b| {
                b.as_bool()
                    .ok_or_else(|| Error::Parse("`quarter` must be booleans".into()))
            })
            .collect::<Result<_>>()?,
    };
    if quarter.len() != names.len() {
        return Err(Error::Parse("`quarter` length must match `vars`".into()));
    }
    let vars = VarSet::with_flags(names.into_iter().zip(quarter));
    let mut terms: Vec<(Exp, C)> = Vec::new();
    for t in obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `terms`".into()))?
    {
        let coeff = C::parse_coeff(
            t.get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term missing string `coeff`".into()))?,
        )?;
        let exp: Exp = t
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("term missing `exp`".into()))?
            .iter()
            .map(|x| {
                x.as_i64()
                    .map(|v| v as i32)
                    .ok_or_else(|| Error::Parse("exponents must be integers".into()))
            })
            .collect::<Result<_>>()?;
        if exp.len() != vars.len() {
            return Err(Error::Parse(
                "exponent vector length must match `vars`".into(),
            ));
        }
        terms.push((exp, coeff));
    }
    Ok(LaurentPoly::from_terms(&vars, terms))
}

fn rat_from_json<C: Coeff>(v: &Value) -> Result<RatFunc<C>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("rational-function JSON must be an object".into()))?;
    let num = poly_from_json(
        obj.get("num")
            .ok_or_else(|| Error::Parse("missing `num`".into()))?,
    )?;
    let den = poly_from_json(
        obj.get("den")
            .ok_or_else(|| Error::Parse("missing `den`".into()))?,
    )?;
    RatFunc::new(num, den)
}

fn latex_poly<C: Coeff>(p: &LaurentPoly<C>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.vars();
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (k, (e, c)) in terms.iter().rev().enumerate() {
        let cs = c.coeff_string();
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) if !cs.starts_with("zeta") => (true, rest.to_string()),
            _ => (false, cs),
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut pieces: Vec<String> = Vec::new();
        for (i, &units) in e.iter().enumerate() {
            if units == 0 {
                continue;
            }
            let name = vars.name(i);
            match exponent_text(units, vars.is_quarter(i)) {
                None => pieces.push(name.to_string()),
                Some(suffix) => {
                    // `^e` or `^(p/q)` -> `^{e}` / `^{p/q}`
                    let body = suffix
                        .trim_start_matches('^')
                        .trim_start_matches('(')
                        .trim_end_matches(')');
                    pieces.push(format!("{name}^{{{body}}}"));
                }
            }
        }
        let coeff_part = if mag.contains(['+', '-', ',']) {
            Some(format!("\\left({mag}\\right)"))
        } else if mag == "1" && !pieces.is_empty() {
            None
        } else if let Some((p, q)) = mag.split_once('/') {
            Some(format!("\\tfrac{{{p}}}{{{q}}}"))
        } else {
            Some(mag)
        };
        let body: Vec<String> = coeff_part.into_iter().chain(pieces).collect();
        out.push_str(&body.join(" "));
    }
    out
}

fn latex_rat<C: Coeff>(r: &RatFunc<C>) -> String {
    if r.den().is_one() {
        latex_poly(r.num())
    } else {
        format!(
            "\\frac{{{}}}{{{}}}",
            latex_poly(r.num()),
            latex_poly(r.den())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;
    use std::sync::Arc;

    type Q = BigRational;

    fn sample_poly() -> LaurentPoly<Q> {
        let vs = VarSet::new(["A", "B", "z"]);
        let a = LaurentPoly::var(&vs, "A").unwrap();
        let b = LaurentPoly::var(&vs, "B").unwrap();
        let z = LaurentPoly::var(&vs, "z").unwrap();
        // z A^2 + 2 A B + z B^2
        &(&(&a * &a) * &z) + &(&(&a * &b).scale(&Q::from_i64(2)) + &(&(&b * &b) * &z))
    }

    #[test]
    fn plain_rendering() {
        assert_eq!(sample_poly().to_string(), "A^2*z + 2*A*B + B^2*z");
    }

    #[test]
    fn latex_rendering() {
        assert_eq!(
            ScalarValue::Poly(sample_poly()).latex(),
            "A^{2} z + 2 A B + B^{2} z"
        );
        let vs = VarSet::with_flags([("t", true)]);
        let p: LaurentPoly<Q> = LaurentPoly::monomial_units(&vs, 0, -3);
        assert_eq!(ScalarValue::Poly(p).latex(), "t^{-3/4}");
    }

    #[test]
    fn json_round_trip_poly() {
        let val = ScalarValue::Poly(sample_poly());
        let j = val.json();
        let back: ScalarValue<Q> = ScalarValue::parse_json(&j).unwrap();
        assert_eq!(val, back);
    }

    #[test]
    fn json_round_trip_quarters_and_ratfunc() {
        let vs = VarSet::with_flags([("t", true), ("u", false)]);
        let t: LaurentPoly<Q> = LaurentPoly::monomial_units(&vs, 0, -3);
        let u = LaurentPoly::var(&vs, "u").unwrap();
        let r = RatFunc::new(t, &u + &LaurentPoly::one(&vs)).unwrap();
        let val = ScalarValue::Rat(r);
        let back: ScalarValue<Q> = ScalarValue::parse_json(&val.json()).unwrap();
        assert_eq!(val, back);
    }

    #[test]
    fn json_round_trip_quadext() {
        let vs: Arc<VarSet> = VarSet::new(["u", "z"]);
        let u = RatFunc::<Q>::var(&vs, "u").unwrap();
        let z = RatFunc::<Q>::var(&vs, "z").unwrap();
        let q = QuadExt::new(u.clone(), z.clone(), u.add(&z));
        let val = ScalarValue::Quad(q);
        let back: ScalarValue<Q> = ScalarValue::parse_json(&val.json()).unwrap();
        assert_eq!(val, back);
    }

    #[test]
    fn json_rejects_malformed() {
        let bad = serde_json::json!({"vars": ["u"], "terms": [{"coeff": "1", "exp": [1, 2]}]});
        assert!(ScalarValue::<Q>::parse_json(&bad).is_err());
        let bad = serde_json::json!({"what": 1});
        assert!(ScalarValue::<Q>::parse_json(&bad).is_err());
    }
}
