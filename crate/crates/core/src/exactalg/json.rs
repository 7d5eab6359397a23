//! JSON encodings of the algebra types.

use serde_json::{json, Map, Value};

use super::linear::{LinearFactorProduct, LinearForm};
use super::matrix::RFMatrix;
use super::poly::Polynomial;
use super::ratfun::RationalFunction;
use super::rational::Rational;
use super::var::{Monomial, VarId, NSLOTS};
use crate::error::{Error, Result};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Variable list `t1..tk, z1..zn, h` extended by any other variable that
/// occurs in `polys`.
pub fn var_list(k: usize, n: usize, polys: &[&Polynomial]) -> Vec<VarId> {
    let mut used = [false; NSLOTS];
    for i in 1..=k {
        used[VarId::t(i).slot()] = true;
    }
    for i in 1..=n {
        used[VarId::z(i).slot()] = true;
    }
    used[VarId::H.slot()] = true;
    for p in polys {
        for v in p.variables() {
            used[v.slot()] = true;
        }
    }
    (0..NSLOTS).filter(|&s| used[s]).map(VarId::from_slot).collect()
}

/// Largest `t` and `z` indices occurring in `p`.
pub fn infer_kn(polys: &[&Polynomial]) -> (usize, usize) {
    let (mut k, mut n) = (0, 0);
    for p in polys {
        for v in p.variables() {
            match v {
                VarId::T(i) => k = k.max(i as usize),
                VarId::Z(i) => n = n.max(i as usize),
                _ => {}
            }
        }
    }
    (k, n)
}

/// `{ "vars": [...], "terms": [{ "coeff": "p/q", "exps": [...] }] }` with
/// terms in graded order.
pub fn poly_to_json_with(p: &Polynomial, vars: &[VarId]) -> Value {
    let terms: Vec<Value> = p
        .display_terms()
        .into_iter()
        .map(|(m, c)| {
            let exps: Vec<u8> = vars.iter().map(|v| m.exp(*v)).collect();
            json!({ "coeff": c.to_string(), "exps": exps })
        })
        .collect();
    json!({
        "vars": vars.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "terms": terms,
    })
}

pub fn poly_to_json(p: &Polynomial, k: usize, n: usize) -> Value {
    poly_to_json_with(p, &var_list(k, n, &[p]))
}

pub fn poly_from_json(v: &Value) -> Result<Polynomial> {
    let vars: Vec<VarId> = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("polynomial: missing `vars`"))?
        .iter()
        .map(|x| x.as_str().ok_or_else(|| perr("polynomial: variable names must be strings"))?.parse())
        .collect::<Result<_>>()?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("polynomial: missing `terms`"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c: Rational = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| perr("term: missing `coeff`"))?
            .parse()?;
        let exps = t.get("exps").and_then(Value::as_array).ok_or_else(|| perr("term: missing `exps`"))?;
        if exps.len() != vars.len() {
            return Err(perr("term: `exps` length differs from `vars`"));
        }
        let mut e = [0u8; NSLOTS];
        for (v, x) in vars.iter().zip(exps) {
            let x = x.as_u64().filter(|&x| x <= 255).ok_or_else(|| perr("term: bad exponent"))?;
            e[v.slot()] = x as u8;
        }
        out.push((Monomial::from_exps(e), c));
    }
    Ok(Polynomial::from_terms(out))
}

pub fn rf_to_json(r: &RationalFunction, k: usize, n: usize) -> Value {
    let vars = var_list(k, n, &[r.num(), r.den()]);
    json!({ "num": poly_to_json_with(r.num(), &vars), "den": poly_to_json_with(r.den(), &vars) })
}

pub fn rf_from_json(v: &Value) -> Result<RationalFunction> {
    let num = poly_from_json(v.get("num").ok_or_else(|| perr("rational function: missing `num`"))?)?;
    let den = poly_from_json(v.get("den").ok_or_else(|| perr("rational function: missing `den`"))?)?;
    RationalFunction::new(num, den)
}

/// `{ "labels": [...], "rows": [[RationalFunction...]...] }`.
pub fn matrix_to_json(m: &RFMatrix, labels: &[String], n: usize) -> Value {
    let rows: Vec<Vec<Value>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| rf_to_json(m.get(i, j), 0, n)).collect()).collect();
    json!({ "labels": labels, "rows": rows })
}

pub fn matrix_from_json(v: &Value) -> Result<RFMatrix> {
    let rows = v.get("rows").and_then(Value::as_array).ok_or_else(|| perr("matrix: missing `rows`"))?;
    let rows = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| perr("matrix: rows must be arrays"))?.iter().map(rf_from_json).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    RFMatrix::from_rows(rows)
}

pub fn form_to_json(l: &LinearForm) -> Value {
    let mut coeffs = Map::new();
    for (v, c) in l.coeffs() {
        coeffs.insert(v.to_string(), Value::String(c.to_string()));
    }
    json!({ "coeffs": coeffs, "constant": l.constant().to_string() })
}

pub fn form_from_json(v: &Value) -> Result<LinearForm> {
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_object)
        .ok_or_else(|| perr("linear form: missing `coeffs`"))?
        .iter()
        .map(|(name, c)| {
            let c: Rational = c.as_str().ok_or_else(|| perr("linear form: coefficient must be a string"))?.parse()?;
            Ok((name.parse::<VarId>()?, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let constant: Rational = v
        .get("constant")
        .and_then(Value::as_str)
        .ok_or_else(|| perr("linear form: missing `constant`"))?
        .parse()?;
    Ok(LinearForm::new(coeffs, constant))
}

pub fn lfp_to_json(p: &LinearFactorProduct) -> Value {
    let factors: Vec<Value> = p
        .factors()
        .iter()
        .map(|(f, e)| json!({ "form": form_to_json(f), "exp": e }))
        .collect();
    json!({ "scalar": p.scalar().to_string(), "factors": factors, "text": p.to_string() })
}

pub fn lfp_from_json(v: &Value) -> Result<LinearFactorProduct> {
    let scalar: Rational = v
        .get("scalar")
        .and_then(Value::as_str)
        .ok_or_else(|| perr("product: missing `scalar`"))?
        .parse()?;
    let mut p = LinearFactorProduct::scalar_only(scalar);
    for f in v.get("factors").and_then(Value::as_array).ok_or_else(|| perr("product: missing `factors`"))? {
        let form = form_from_json(f.get("form").ok_or_else(|| perr("factor: missing `form`"))?)?;
        let e = f
            .get("exp")
            .and_then(Value::as_i64)
            .filter(|e| *e != 0 && e.abs() < i32::MAX as i64)
            .ok_or_else(|| perr("factor: bad `exp`"))?;
        if form.is_constant() && form.constant().is_zero() && e < 0 {
            return Err(perr("factor: zero in denominator"));
        }
        p.push(&form, e as i32);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::{parse_poly, parse_rf};

    #[test]
    fn polynomial_round_trip_and_order() {
        let p = parse_poly("z2 - t1 + 3/2*h^2").unwrap();
        let j = poly_to_json(&p, 1, 2);
        assert_eq!(j["vars"], json!(["t1", "z1", "z2", "h"]));
        assert_eq!(j["terms"][0]["coeff"], json!("3/2"));
        assert_eq!(poly_from_json(&j).unwrap(), p);
    }

    #[test]
    fn rational_function_round_trip() {
        let r = parse_rf("(zeta + h)/(h - zeta)").unwrap();
        assert_eq!(rf_from_json(&rf_to_json(&r, 0, 0)).unwrap(), r);
    }
}
